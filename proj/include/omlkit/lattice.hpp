#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/greechie.hpp"
#include "omlkit/indexset.hpp"

namespace omlkit {

using Elem = int;

enum class ElemKind { Zero, One, Atom, AtomComp, PairJoin };

struct ElementInfo {
    ElemKind kind = ElemKind::Zero;
    int atom = 0;              // Atom / AtomComp
    int block = -1;            // PairJoin: 0-based block index
    std::vector<int> atoms;    // PairJoin: the two atoms, in block order
    std::string name;
};

/// Outcome of the exhaustive law check: one entry per law, with the first
/// counterexample when a law fails.
struct LawReport {
    struct Entry {
        std::string law;
        bool pass = true;
        std::string counterexample;  // empty when pass
    };
    std::vector<Entry> entries;

    bool ok() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    std::string summary() const {
        std::string s;
        for (const auto& e : entries) {
            s += e.law;
            s += e.pass ? ": pass" : ": FAIL " + e.counterexample;
            s += '\n';
        }
        return s;
    }
    const Entry* first_failure() const {
        for (const auto& e : entries)
            if (!e.pass) return &e;
        return nullptr;
    }
};

class LatticeError : public std::runtime_error {
public:
    LatticeError(const std::string& what, LawReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const LawReport& report() const { return report_; }

private:
    LawReport report_;
};

/// Finite orthomodular lattice obtained by pasting the Boolean blocks of a
/// Greechie diagram. Immutable once built; all queries are table lookups.
///
/// Element order: 0, I, atoms (by index), atom complements (by index), then
/// proper 2-element joins of 4-blocks (by block, then by position).
class Lattice {
public:
    /// Pastes the diagram and, unless verify is false, runs the full law
    /// check (lattice axioms, ortholattice axioms, orthomodularity) and
    /// throws LatticeError on any violation.
    static Lattice build(const GreechieDiagram& d, bool verify = true) {
        Lattice L(d);
        if (verify) {
            LawReport rep = L.verify_laws();
            if (!rep.ok()) {
                const auto* f = rep.first_failure();
                throw LatticeError("diagram does not paste to an OML: " + f->law + " fails (" +
                                       f->counterexample + ")",
                                   rep);
            }
        }
        return L;
    }

    int size() const { return n_; }
    int atom_count() const { return diagram_.atom_count; }
    const GreechieDiagram& diagram() const { return diagram_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem atom(int k) const { return 1 + k; }
    Elem atom_comp(int k) const { return 1 + diagram_.atom_count + k; }

    bool leq(Elem x, Elem y) const { return up_[static_cast<size_t>(x)].test(y); }
    Elem meet(Elem x, Elem y) const { return meet_[idx(x, y)]; }
    Elem join(Elem x, Elem y) const { return join_[idx(x, y)]; }
    Elem ortho(Elem x) const { return ortho_[static_cast<size_t>(x)]; }

    /// Sasaki implication a -> b = a' u (a n b).
    Elem sasaki_imp(Elem a, Elem b) const { return imp_[idx(a, b)]; }

    /// a C b, in the a = (a n b) u (a n b') form.
    bool commutes(Elem a, Elem b) const {
        return a == join(meet(a, b), meet(a, ortho(b)));
    }

    const ElementInfo& info(Elem x) const { return elems_[static_cast<size_t>(x)]; }
    const std::string& name(Elem x) const { return elems_[static_cast<size_t>(x)].name; }

    std::optional<Elem> find(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    /// All ordered pairs with neither x <= y nor y <= x, in index order.
    std::vector<std::pair<Elem, Elem>> incomparable_pairs() const {
        std::vector<std::pair<Elem, Elem>> out;
        for (Elem x = 0; x < n_; ++x)
            for (Elem y = 0; y < n_; ++y)
                if (x != y && !leq(x, y) && !leq(y, x)) out.emplace_back(x, y);
        return out;
    }

    /// Exhaustive verification of the structure: partial-order axioms,
    /// existence and uniqueness of meets/joins, the lattice axioms, the
    /// ortholattice axioms, order/meet/join agreement, the orthomodularity
    /// criterion (a<->b = 1 iff a = b), and agreement of the two commutation
    /// forms. Reports every law; counterexamples use element names.
    LawReport verify_laws() const {
        LawReport rep;
        auto add = [&](const std::string& law, bool pass, const std::string& cex) {
            rep.entries.push_back({law, pass, pass ? std::string() : cex});
        };
        auto pr = [&](Elem a, Elem b) { return name(a) + ", " + name(b); };

        {  // reflexivity / antisymmetry / transitivity of <=
            bool ok = true;
            std::string cex;
            for (Elem x = 0; x < n_ && ok; ++x)
                if (!leq(x, x)) { ok = false; cex = name(x); }
            add("order: reflexive", ok, cex);
            ok = true; cex.clear();
            for (Elem x = 0; x < n_ && ok; ++x)
                for (Elem y = 0; y < n_ && ok; ++y)
                    if (x != y && leq(x, y) && leq(y, x)) { ok = false; cex = pr(x, y); }
            add("order: antisymmetric", ok, cex);
            ok = true; cex.clear();
            for (Elem x = 0; x < n_ && ok; ++x) {
                // transitive iff up(y) subset of up(x) for every y above x
                up_[static_cast<size_t>(x)].for_each([&](int y) {
                    if (ok && !up_[static_cast<size_t>(y)].subset_of(up_[static_cast<size_t>(x)])) {
                        ok = false;
                        cex = pr(x, y);
                    }
                });
            }
            add("order: transitive", ok, cex);
        }
        {  // unique least upper / greatest lower bounds
            add("lattice: unique joins", !join_failure_, join_failure_ ? pr(join_fail_pair_.first, join_fail_pair_.second) : "");
            add("lattice: unique meets", !meet_failure_, meet_failure_ ? pr(meet_fail_pair_.first, meet_fail_pair_.second) : "");
        }
        {  // commutativity + absorption
            bool okc = true, oka = true;
            std::string cc, ca;
            for (Elem a = 0; a < n_; ++a)
                for (Elem b = 0; b < n_; ++b) {
                    if (okc && (meet(a, b) != meet(b, a) || join(a, b) != join(b, a))) {
                        okc = false;
                        cc = pr(a, b);
                    }
                    if (oka && (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a)) {
                        oka = false;
                        ca = pr(a, b);
                    }
                }
            add("lattice: commutative", okc, cc);
            add("lattice: absorption", oka, ca);
        }
        {  // associativity
            bool ok = true;
            std::string cex;
            for (Elem a = 0; a < n_ && ok; ++a)
                for (Elem b = a; b < n_ && ok; ++b)
                    for (Elem c = b; c < n_ && ok; ++c)
                        if (join(join(a, b), c) != join(a, join(b, c)) ||
                            meet(meet(a, b), c) != meet(a, meet(b, c))) {
                            ok = false;
                            cex = name(a) + ", " + name(b) + ", " + name(c);
                        }
            add("lattice: associative", ok, cex);
        }
        {  // order agrees with meet and join (both definitional forms)
            bool ok = true;
            std::string cex;
            for (Elem a = 0; a < n_ && ok; ++a)
                for (Elem b = 0; b < n_ && ok; ++b) {
                    bool le = leq(a, b);
                    if (le != (meet(a, b) == a) || le != (join(a, b) == b)) {
                        ok = false;
                        cex = pr(a, b);
                    }
                }
            add("order: a<=b iff a=a^b iff b=avb", ok, cex);
        }
        {  // ortholattice axioms
            bool ok = true;
            std::string cex;
            for (Elem a = 0; a < n_ && ok; ++a)
                if (join(a, ortho(a)) != one() || meet(a, ortho(a)) != zero()) {
                    ok = false;
                    cex = name(a);
                }
            add("OL: a v a' = I and a ^ a' = 0", ok, cex);
            ok = true; cex.clear();
            for (Elem a = 0; a < n_ && ok; ++a)
                if (ortho(ortho(a)) != a) { ok = false; cex = name(a); }
            add("OL: a'' = a", ok, cex);
            ok = true; cex.clear();
            for (Elem a = 0; a < n_ && ok; ++a)
                for (Elem b = 0; b < n_ && ok; ++b)
                    if (leq(a, b) && !leq(ortho(b), ortho(a))) { ok = false; cex = pr(a, b); }
            add("OL: a<=b implies b'<=a'", ok, cex);
        }
        {  // orthomodularity: a<->b = 1 iff a = b
            bool ok = true;
            std::string cex;
            for (Elem a = 0; a < n_ && ok; ++a)
                for (Elem b = 0; b < n_ && ok; ++b) {
                    bool biimp = sasaki_imp(a, b) == one() && sasaki_imp(b, a) == one();
                    if (biimp != (a == b)) { ok = false; cex = pr(a, b); }
                }
            add("OML: a<->b=1 iff a=b", ok, cex);
        }
        {  // the two commutation forms coincide
            bool ok = true;
            std::string cex;
            for (Elem a = 0; a < n_ && ok; ++a)
                for (Elem b = 0; b < n_ && ok; ++b) {
                    bool f1 = commutes(a, b);
                    bool f2 = leq(meet(a, join(ortho(a), b)), b);
                    if (f1 != f2) { ok = false; cex = pr(a, b); }
                }
            add("commutes: eq-form agrees with leq-form", ok, cex);
        }
        return rep;
    }

private:
    explicit Lattice(const GreechieDiagram& d) : diagram_(d) {
        build_elements();
        build_order();
        build_tables();
    }

    size_t idx(Elem x, Elem y) const {
        return static_cast<size_t>(x) * static_cast<size_t>(n_) + static_cast<size_t>(y);
    }

    void build_elements() {
        const int na = diagram_.atom_count;
        elems_.push_back({ElemKind::Zero, 0, -1, {}, "0"});
        elems_.push_back({ElemKind::One, 0, -1, {}, "I"});
        for (int k = 1; k <= na; ++k)
            elems_.push_back({ElemKind::Atom, k, -1, {}, std::string("a") + atom_to_char(k)});
        for (int k = 1; k <= na; ++k)
            elems_.push_back(
                {ElemKind::AtomComp, k, -1, {}, std::string("a") + atom_to_char(k) + "'"});
        for (size_t bi = 0; bi < diagram_.blocks.size(); ++bi) {
            const auto& blk = diagram_.blocks[bi];
            if (blk.size() != 4) continue;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    ElementInfo e;
                    e.kind = ElemKind::PairJoin;
                    e.block = static_cast<int>(bi);
                    e.atoms = {blk[static_cast<size_t>(i)], blk[static_cast<size_t>(j)]};
                    e.name = "B" + std::to_string(bi + 1) + ":{" +
                             atom_to_char(e.atoms[0]) + atom_to_char(e.atoms[1]) + "}";
                    pair_elem_[{static_cast<int>(bi), (1 << i) | (1 << j)}] =
                        static_cast<Elem>(elems_.size());
                    elems_.push_back(std::move(e));
                }
        }
        n_ = static_cast<int>(elems_.size());
        for (Elem x = 0; x < n_; ++x) by_name_[elems_[static_cast<size_t>(x)].name] = x;
    }

    /// Element represented by the subset `mask` of block `bi`'s atoms.
    Elem block_subset_elem(int bi, unsigned mask) const {
        const auto& blk = diagram_.blocks[static_cast<size_t>(bi)];
        const int s = static_cast<int>(blk.size());
        const int pc = __builtin_popcount(mask);
        if (pc == 0) return zero();
        if (pc == s) return one();
        if (pc == 1) return atom(blk[static_cast<size_t>(__builtin_ctz(mask))]);
        if (pc == s - 1) {
            unsigned missing = (~mask) & ((1u << s) - 1);
            return atom_comp(blk[static_cast<size_t>(__builtin_ctz(missing))]);
        }
        // 4-block proper pair
        return pair_elem_.at({bi, static_cast<int>(mask)});
    }

    void build_order() {
        up_.assign(static_cast<size_t>(n_), IndexSet(n_));
        // within-block Boolean order: subset inclusion
        for (size_t bi = 0; bi < diagram_.blocks.size(); ++bi) {
            const int s = static_cast<int>(diagram_.blocks[bi].size());
            const unsigned full = (1u << s) - 1;
            for (unsigned S = 0; S <= full; ++S)
                for (unsigned T = 0; T <= full; ++T)
                    if ((S & ~T) == 0)
                        up_[static_cast<size_t>(block_subset_elem(static_cast<int>(bi), S))].set(
                            block_subset_elem(static_cast<int>(bi), T));
        }
        for (Elem x = 0; x < n_; ++x) {
            up_[static_cast<size_t>(x)].set(x);
            up_[static_cast<size_t>(x)].set(one());
            up_[0].set(x);
        }
        // transitive closure
        for (Elem k = 0; k < n_; ++k)
            for (Elem i = 0; i < n_; ++i)
                if (up_[static_cast<size_t>(i)].test(k))
                    up_[static_cast<size_t>(i)] |= up_[static_cast<size_t>(k)];
        down_.assign(static_cast<size_t>(n_), IndexSet(n_));
        for (Elem x = 0; x < n_; ++x)
            up_[static_cast<size_t>(x)].for_each(
                [&](int y) { down_[static_cast<size_t>(y)].set(x); });
    }

    void build_tables() {
        ortho_.resize(static_cast<size_t>(n_));
        for (Elem x = 0; x < n_; ++x) {
            const auto& e = elems_[static_cast<size_t>(x)];
            switch (e.kind) {
                case ElemKind::Zero: ortho_[static_cast<size_t>(x)] = one(); break;
                case ElemKind::One: ortho_[static_cast<size_t>(x)] = zero(); break;
                case ElemKind::Atom: ortho_[static_cast<size_t>(x)] = atom_comp(e.atom); break;
                case ElemKind::AtomComp: ortho_[static_cast<size_t>(x)] = atom(e.atom); break;
                case ElemKind::PairJoin: {
                    const auto& blk = diagram_.blocks[static_cast<size_t>(e.block)];
                    unsigned mask = 0;
                    for (int i = 0; i < 4; ++i)
                        if (blk[static_cast<size_t>(i)] == e.atoms[0] ||
                            blk[static_cast<size_t>(i)] == e.atoms[1])
                            mask |= 1u << i;
                    ortho_[static_cast<size_t>(x)] =
                        pair_elem_.at({e.block, static_cast<int>(0xF & ~mask)});
                    break;
                }
            }
        }

        meet_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
        join_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
        for (Elem x = 0; x < n_; ++x)
            for (Elem y = x; y < n_; ++y) {
                Elem j = bound(x, y, /*upper=*/true);
                Elem m = bound(x, y, /*upper=*/false);
                join_[idx(x, y)] = join_[idx(y, x)] = j;
                meet_[idx(x, y)] = meet_[idx(y, x)] = m;
            }

        imp_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b)
                imp_[idx(a, b)] = join(ortho(a), meet(a, b));
    }

    /// Least upper (greatest lower) bound of {x, y}. When no least element
    /// exists the structure is not a lattice: the first offending pair is
    /// recorded and the lowest-index minimal bound is used so that the law
    /// check can still run over total tables.
    Elem bound(Elem x, Elem y, bool upper) {
        const auto& dir = upper ? up_ : down_;
        IndexSet cand = dir[static_cast<size_t>(x)] & dir[static_cast<size_t>(y)];
        Elem least = -1;
        cand.for_each([&](int z) {
            if (least == -1 && cand.subset_of(dir[static_cast<size_t>(z)])) least = z;
        });
        if (least != -1) return least;
        // minimal (maximal) elements of the bound set; pick the first
        Elem pick = -1;
        const auto& rev = upper ? down_ : up_;
        cand.for_each([&](int z) {
            if (pick != -1) return;
            IndexSet below = rev[static_cast<size_t>(z)] & cand;
            if (below.count() == 1) pick = z;
        });
        if (upper && !join_failure_) {
            join_failure_ = true;
            join_fail_pair_ = {x, y};
        }
        if (!upper && !meet_failure_) {
            meet_failure_ = true;
            meet_fail_pair_ = {x, y};
        }
        return pick == -1 ? cand.first() : pick;
    }

    GreechieDiagram diagram_;
    int n_ = 0;
    std::vector<ElementInfo> elems_;
    std::map<std::string, Elem> by_name_;
    std::map<std::pair<int, int>, Elem> pair_elem_;  // (block, atom-mask) -> elem
    std::vector<IndexSet> up_, down_;
    std::vector<Elem> ortho_;
    std::vector<Elem> meet_, join_, imp_;
    bool join_failure_ = false, meet_failure_ = false;
    std::pair<Elem, Elem> join_fail_pair_{0, 0}, meet_fail_pair_{0, 0};
};

}  // namespace omlkit
