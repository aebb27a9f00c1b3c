#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/eqn.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"

namespace omlkit {

class MgeError : public std::runtime_error {
public:
    explicit MgeError(const std::string& what) : std::runtime_error(what) {}
};

/// Condensed state equation: meets written '+', joins written as
/// juxtaposition, orthogonality hypotheses implicit. Terms hold variable
/// ids; `var_atoms` maps a variable id back to the source atom.
struct CondensedStateEquation {
    std::vector<std::vector<int>> lhs, rhs;  // terms of variable ids
    std::vector<int> var_atoms;              // variable id -> atom index

    char letter(int var) const { return kVarAlphabet[static_cast<size_t>(var)]; }

    std::string side_text(const std::vector<std::vector<int>>& side) const {
        std::string s;
        for (size_t i = 0; i < side.size(); ++i) {
            if (i) s += '+';
            for (int v : side[i]) s += letter(v);
        }
        return s;
    }
    std::string text() const { return side_text(lhs) + " = " + side_text(rhs); }

    /// A weakened block may contribute a single shared atom; such groups are
    /// kept but worth flagging to the caller.
    bool has_singleton_term() const {
        for (const auto& t : lhs)
            if (t.size() == 1) return true;
        for (const auto& t : rhs)
            if (t.size() == 1) return true;
        return false;
    }

    bool balanced() const {
        if (lhs.size() != rhs.size()) return false;
        std::map<int, int> diff;
        for (const auto& t : lhs)
            for (int v : t) ++diff[v];
        for (const auto& t : rhs)
            for (int v : t) --diff[v];
        for (const auto& [v, d] : diff)
            if (d != 0) return false;
        return true;
    }
};

struct MgeResult {
    std::string lattice_id;  // source diagram in line notation
    Elem x = -1, y = -1;
    PairKind kind = PairKind::Incomparable;
    std::vector<int> weakened, kept;  // 0-based block indices
    CondensedStateEquation condensed;
    Equation mge;
    std::vector<Elem> witness;  // per MGE variable, atoms of the source lattice
};

/// Weakens block equalities to <= one at a time, in the given order,
/// keeping a relaxation only when the optimum stays exactly 1. The base
/// problem must solve to 1. Returns (weakened, kept) block index sets.
inline std::pair<std::vector<int>, std::vector<int>> minimize_constraints(
    const Lattice& L, LpProblem& problem,
    const std::vector<int>* order = nullptr) {
    {
        LpOutcome base = solve(problem);
        if (!base.optimal() || base.value != 1)
            throw std::logic_error("constraint weakening requires a base optimum of exactly 1");
    }
    const int row0 = pair_problem_block_row0(problem, L);
    const int nblocks = static_cast<int>(L.diagram().blocks.size());
    std::vector<int> idx(static_cast<size_t>(nblocks));
    std::iota(idx.begin(), idx.end(), 0);
    if (order) idx = *order;

    std::vector<int> weakened, kept;
    for (int b : idx) {
        Constraint& c = problem.constraints[static_cast<size_t>(row0 + b)];
        c.rel = Rel::Le;
        LpOutcome out = solve(problem);
        if (out.optimal() && out.value == 1) {
            weakened.push_back(b);
        } else {
            c.rel = Rel::Eq;
            kept.push_back(b);
        }
    }
    std::sort(weakened.begin(), weakened.end());
    std::sort(kept.begin(), kept.end());
    return {weakened, kept};
}

namespace detail {

/// Atoms forced to 0 by m(x) = 1: for an atom, the other atoms of every
/// block containing it; for a complement k', the atom k itself; for a
/// 4-block pair join, the rest of its block.
inline std::set<int> forced_zero_atoms(const Lattice& L, Elem x) {
    std::set<int> zeros;
    const ElementInfo& info = L.info(x);
    switch (info.kind) {
        case ElemKind::Atom:
            for (const auto& blk : L.diagram().blocks)
                if (std::find(blk.begin(), blk.end(), info.atom) != blk.end())
                    for (int a : blk)
                        if (a != info.atom) zeros.insert(a);
            break;
        case ElemKind::AtomComp:
            zeros.insert(info.atom);
            break;
        case ElemKind::PairJoin:
            for (int a : L.diagram().blocks[static_cast<size_t>(info.block)])
                if (a != info.atoms[0] && a != info.atoms[1]) zeros.insert(a);
            break;
        default:
            throw MgeError("witness element " + L.name(x) + " carries no atom information");
    }
    return zeros;
}

}  // namespace detail

/// Balances a condensed state equation in place: while some variable occurs
/// more often on one side, the lexicographically smallest term containing it
/// on the deficient side is repeated; then term counts are equalized the same
/// way. Bounded; failure to balance raises MgeError.
inline void balance_condensed(CondensedStateEquation& c) {
    auto term_text = [&](const std::vector<int>& t) {
        std::string s;
        for (int v : t) s += c.letter(v);
        return s;
    };
    auto duplicate_for = [&](std::vector<std::vector<int>>& side, int var) {
        const std::vector<int>* best = nullptr;
        for (const auto& t : side)
            if (std::find(t.begin(), t.end(), var) != t.end())
                if (!best || term_text(t) < term_text(*best)) best = &t;
        if (!best) return false;
        side.push_back(*best);
        return true;
    };
    auto duplicate_smallest = [&](std::vector<std::vector<int>>& side) {
        const std::vector<int>* best = nullptr;
        for (const auto& t : side)
            if (!best || term_text(t) < term_text(*best)) best = &t;
        side.push_back(*best);
    };

    const int nvars = static_cast<int>(c.var_atoms.size());
    size_t total = 0;
    for (const auto& t : c.lhs) total += t.size();
    for (const auto& t : c.rhs) total += t.size();
    const size_t bound = 2 * total + static_cast<size_t>(nvars) + 4;

    for (size_t iter = 0; iter < bound; ++iter) {
        std::vector<int> cl(static_cast<size_t>(nvars), 0), cr(static_cast<size_t>(nvars), 0);
        for (const auto& t : c.lhs)
            for (int v : t) ++cl[static_cast<size_t>(v)];
        for (const auto& t : c.rhs)
            for (int v : t) ++cr[static_cast<size_t>(v)];
        int var = -1;
        for (int v = 0; v < nvars; ++v)
            if (cl[static_cast<size_t>(v)] != cr[static_cast<size_t>(v)]) {
                var = v;
                break;
            }
        if (var >= 0) {
            bool lhs_deficient = cl[static_cast<size_t>(var)] < cr[static_cast<size_t>(var)];
            if (!duplicate_for(lhs_deficient ? c.lhs : c.rhs, var))
                throw MgeError("cannot balance variable '" + std::string(1, c.letter(var)) +
                               "': it is absent from the deficient side");
            continue;
        }
        if (c.lhs.size() == c.rhs.size()) return;
        duplicate_smallest(c.lhs.size() < c.rhs.size() ? c.lhs : c.rhs);
    }
    throw MgeError("balancing did not reach a fixpoint within " + std::to_string(bound) +
                   " repetitions: " + c.text());
}

/// Builds the condensed state equation from the weakened problem: zeros are
/// propagated from m(x)=1, each kept block contributes its surviving atoms
/// (in block order) to the left side, each weakened block contributes its
/// atoms that also occur on the left (blocks with none are dropped), atoms
/// are renamed to variables in first-occurrence order, and the result is
/// balanced.
inline CondensedStateEquation build_condensed(const Lattice& L, Elem x, Elem /*y*/,
                                              const std::vector<int>& kept,
                                              const std::vector<int>& weakened) {
    const auto& blocks = L.diagram().blocks;
    std::set<int> zeros = detail::forced_zero_atoms(L, x);

    std::vector<std::vector<int>> lhs_atoms;
    std::set<int> lhs_atom_set;
    for (int b : kept) {
        std::vector<int> group;
        for (int a : blocks[static_cast<size_t>(b)])
            if (!zeros.count(a)) group.push_back(a);
        if (group.empty())
            throw MgeError("degenerate construction: kept block " + std::to_string(b + 1) +
                           " has no surviving atoms");
        for (int a : group) lhs_atom_set.insert(a);
        lhs_atoms.push_back(std::move(group));
    }
    if (lhs_atoms.empty()) throw MgeError("degenerate construction: empty left-hand side");

    std::vector<std::vector<int>> rhs_atoms;
    for (int b : weakened) {
        std::vector<int> group;
        for (int a : blocks[static_cast<size_t>(b)])
            if (lhs_atom_set.count(a)) group.push_back(a);
        if (!group.empty()) rhs_atoms.push_back(std::move(group));
    }
    if (rhs_atoms.empty()) throw MgeError("degenerate construction: empty right-hand side");

    CondensedStateEquation c;
    std::map<int, int> var_of;
    auto rename = [&](const std::vector<std::vector<int>>& side) {
        std::vector<std::vector<int>> out;
        for (const auto& g : side) {
            std::vector<int> term;
            for (int a : g) {
                auto it = var_of.find(a);
                if (it == var_of.end()) {
                    if (c.var_atoms.size() >= 25)
                        throw MgeError("variable alphabet exhausted (more than 25 atoms)");
                    it = var_of.emplace(a, static_cast<int>(c.var_atoms.size())).first;
                    c.var_atoms.push_back(a);
                }
                term.push_back(it->second);
            }
            out.push_back(std::move(term));
        }
        return out;
    };
    c.lhs = rename(lhs_atoms);
    c.rhs = rename(rhs_atoms);
    balance_condensed(c);
    return c;
}

/// Expands a condensed state equation into the full MGE: terms become joins,
/// sides become meets, and every within-term variable pair contributes an
/// orthogonality hypothesis (deduplicated, first occurrence order).
inline Equation mge_from_condensed(const CondensedStateEquation& c) {
    if (!c.balanced()) throw MgeError("condensed state equation is not balanced");
    Equation e;
    for (size_t v = 0; v < c.var_atoms.size(); ++v) e.variables.push_back(c.letter(static_cast<int>(v)));

    std::set<std::pair<int, int>> seen;
    auto add_hyps = [&](const std::vector<std::vector<int>>& side) {
        for (const auto& t : side)
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j) {
                    auto key = std::minmax(t[i], t[j]);
                    if (seen.insert(key).second) e.hypotheses.emplace_back(t[i], t[j]);
                }
    };
    auto side_term = [&](const std::vector<std::vector<int>>& side) {
        int acc = -1;
        for (const auto& t : side) {
            int g = -1;
            for (int v : t) g = g == -1 ? e.var_node(v) : e.join(g, e.var_node(v));
            acc = acc == -1 ? g : e.meet(acc, g);
        }
        return acc;
    };
    add_hyps(c.lhs);
    add_hyps(c.rhs);
    e.lhs = side_term(c.lhs);
    e.rhs = side_term(c.rhs);
    e.is_equality = true;
    return e;
}

/// End-to-end MGE generation for a lattice refuting a strong set of states.
/// `block_order` permutes the relaxation order (default: input block order).
inline MgeResult generate_mge(const Lattice& L, const std::vector<int>* block_order = nullptr) {
    StrongSetVerdict v = strong_state_verdict(L);
    if (v.kind == StrongSetVerdict::Kind::Admits)
        throw std::invalid_argument("lattice admits a strong set of states; nothing to generate");
    if (v.kind == StrongSetVerdict::Kind::Stateless)
        throw std::invalid_argument("lattice has no states at all; no witness pair to weaken");
    if (v.refute.infeasible)
        throw MgeError("witness pair is refuted by infeasibility, not by a forced minimum of 1");

    MgeResult r;
    r.lattice_id = serialize_diagram(L.diagram());
    r.x = v.refute.x;
    r.y = v.refute.y;
    r.kind = v.refute.kind;
    LpProblem problem = v.refute.problem;
    std::tie(r.weakened, r.kept) = minimize_constraints(L, problem, block_order);
    r.condensed = build_condensed(L, r.x, r.y, r.kept, r.weakened);
    r.mge = mge_from_condensed(r.condensed);
    for (int a : r.condensed.var_atoms) r.witness.push_back(L.atom(a));

    auto [hyps, rel] = evaluate_at(L, r.mge, r.witness);
    if (!hyps || rel)
        throw std::logic_error("generated MGE is not falsified by its own witness assignment");
    return r;
}

}  // namespace omlkit
