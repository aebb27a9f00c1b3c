#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/lattice.hpp"
#include "omlkit/simplex.hpp"

namespace omlkit {

/// A state given by its atom values; values on all other elements follow
/// from m(a') = 1 - m(a) and additivity inside blocks.
struct StateVector {
    std::vector<Rational> atom_value;  // index 1..atom_count (slot 0 unused)

    Rational value(const Lattice& L, Elem e) const {
        const ElementInfo& info = L.info(e);
        switch (info.kind) {
            case ElemKind::Zero: return 0;
            case ElemKind::One: return 1;
            case ElemKind::Atom: return atom_value[static_cast<size_t>(info.atom)];
            case ElemKind::AtomComp:
                return Rational(1) - atom_value[static_cast<size_t>(info.atom)];
            case ElemKind::PairJoin:
                return atom_value[static_cast<size_t>(info.atoms[0])] +
                       atom_value[static_cast<size_t>(info.atoms[1])];
        }
        return 0;
    }
};

/// Exhaustively checks the state laws on the full element set: m(1)=1,
/// additivity on orthogonal pairs, m(a)+m(a')=1, monotonicity, range, and
/// the two n=2 sum/meet properties. Returns the first violation, if any.
inline std::optional<std::string> state_law_violation(const Lattice& L, const StateVector& m) {
    const int n = L.size();
    if (m.value(L, L.one()) != 1) return "m(I) != 1";
    for (Elem a = 0; a < n; ++a) {
        Rational va = m.value(L, a);
        if (va < 0 || va > 1) return "m(" + L.name(a) + ") outside [0,1]";
        if (va + m.value(L, L.ortho(a)) != 1) return "m(" + L.name(a) + ") + m(" + L.name(a) + "') != 1";
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Rational va = m.value(L, a), vb = m.value(L, b);
            if (L.leq(a, b) && va > vb)
                return "monotonicity fails at " + L.name(a) + " <= " + L.name(b);
            if (L.leq(a, L.ortho(b)) && m.value(L, L.join(a, b)) != va + vb)
                return "additivity fails at " + L.name(a) + " _|_ " + L.name(b);
            if ((va == 1 && vb == 1) != (va + vb == 2))
                return "sum criterion fails at " + L.name(a) + ", " + L.name(b);
            if (m.value(L, L.meet(a, b)) == 1 && (va != 1 || vb != 1))
                return "meet criterion fails at " + L.name(a) + ", " + L.name(b);
        }
    return std::nullopt;
}

namespace detail {

inline std::string atom_var(int k) { return std::string("m") + atom_to_char(k); }
inline std::string comp_var(int k) { return atom_var(k) + "'"; }

/// m(e) as a linear form over problem variables, introducing the coupling
/// equality m(k) + m(k') = 1 when a complement variable first appears.
inline std::vector<std::pair<int, Rational>> element_form(const Lattice& L, Elem e,
                                                          LpProblem& p,
                                                          std::vector<Constraint>& couplings) {
    const ElementInfo& info = L.info(e);
    switch (info.kind) {
        case ElemKind::Atom:
            return {{p.add_var(atom_var(info.atom)), Rational(1)}};
        case ElemKind::AtomComp: {
            int before = static_cast<int>(p.var_names.size());
            int cv = p.add_var(comp_var(info.atom));
            if (cv == before) {  // newly created: add the coupling equality
                Constraint c;
                c.lhs = {{p.find_var(atom_var(info.atom)), Rational(1)}, {cv, Rational(1)}};
                c.rel = Rel::Eq;
                c.rhs = 1;
                couplings.push_back(c);
            }
            return {{cv, Rational(1)}};
        }
        case ElemKind::PairJoin:
            return {{p.find_var(atom_var(info.atoms[0])), Rational(1)},
                    {p.find_var(atom_var(info.atoms[1])), Rational(1)}};
        default:
            throw std::invalid_argument("element " + L.name(e) +
                                        " carries no state information (use a nontrivial element)");
    }
}

}  // namespace detail

/// The per-block equalities: for each block, the sum of its atoms' state
/// values is 1. Variables are the atoms, in atom order; rows in block order.
inline LpProblem block_constraints(const Lattice& L) {
    LpProblem p;
    for (int k = 1; k <= L.atom_count(); ++k) p.add_var(detail::atom_var(k));
    for (const auto& blk : L.diagram().blocks) {
        Constraint c;
        for (int a : blk) c.lhs.emplace_back(p.find_var(detail::atom_var(a)), Rational(1));
        c.rel = Rel::Eq;
        c.rhs = 1;
        p.constraints.push_back(std::move(c));
    }
    return p;
}

/// The pair problem for x not<= y: minimize m(y) subject to m(x) = 1 and the
/// block equalities. Complement variables are introduced on demand together
/// with their coupling equalities. Block rows come last, in block order.
inline LpProblem pair_problem(const Lattice& L, Elem x, Elem y) {
    if (L.leq(x, y))
        throw std::invalid_argument("pair (" + L.name(x) + ", " + L.name(y) +
                                    ") has x <= y and carries no information");
    LpProblem blocks = block_constraints(L);
    LpProblem p;
    p.var_names = blocks.var_names;

    std::vector<Constraint> couplings;
    Constraint fix;
    fix.lhs = detail::element_form(L, x, p, couplings);
    fix.rel = Rel::Eq;
    fix.rhs = 1;
    p.objective = detail::element_form(L, y, p, couplings);

    p.constraints.push_back(std::move(fix));
    for (auto& c : couplings) p.constraints.push_back(std::move(c));
    for (auto& c : blocks.constraints) p.constraints.push_back(std::move(c));
    return p;
}

/// Index of the first block row inside a pair problem (the rows before it
/// are the m(x)=1 row and any coupling equalities).
inline int pair_problem_block_row0(const LpProblem& p, const Lattice& L) {
    return static_cast<int>(p.constraints.size()) -
           static_cast<int>(L.diagram().blocks.size());
}

enum class PairKind { Incomparable, ComparableReversed };

struct RefuteInfo {
    Elem x = -1, y = -1;
    PairKind kind = PairKind::Incomparable;
    bool infeasible = false;  // refuted because no state has m(x)=1 at all
    LpProblem problem;
};

struct StrongSetVerdict {
    enum class Kind { Admits, Refutes, Stateless } kind = Kind::Admits;
    // Admits: one separating state per scanned pair, in scan order.
    std::vector<std::pair<Elem, Elem>> pairs;
    std::vector<StateVector> states;
    // Refutes: the first witness pair in scan order (+ the rest with all_pairs).
    RefuteInfo refute;
    std::vector<RefuteInfo> all_refuting;

    bool admits() const { return kind == Kind::Admits; }
};

inline StateVector state_from_point(const Lattice& L, const LpProblem& p,
                                    const std::vector<Rational>& point) {
    StateVector m;
    m.atom_value.assign(static_cast<size_t>(L.atom_count()) + 1, Rational(0));
    for (int k = 1; k <= L.atom_count(); ++k)
        m.atom_value[static_cast<size_t>(k)] =
            point[static_cast<size_t>(p.find_var(detail::atom_var(k)))];
    return m;
}

/// Scans every ordered pair of nontrivial elements with x not<= y in index
/// order and solves the pair problem. A pair whose minimum is exactly 1 (or
/// whose problem is infeasible) refutes a strong set of states; if all pairs
/// come in below 1 the collected optimal states are a strong set. Pairs
/// through 0 and I are separated by the same states and are not scanned.
inline StrongSetVerdict strong_state_verdict(const Lattice& L, bool all_pairs = false) {
    StrongSetVerdict v;
    {
        LpProblem base = block_constraints(L);
        if (!solve(base).optimal()) {
            v.kind = StrongSetVerdict::Kind::Stateless;
            return v;
        }
    }
    for (Elem x = 2; x < L.size(); ++x) {
        for (Elem y = 2; y < L.size(); ++y) {
            if (x == y || L.leq(x, y)) continue;
            LpProblem p = pair_problem(L, x, y);
            LpOutcome out = solve(p);
            bool refuted = !out.optimal() || out.value == 1;
            if (refuted) {
                RefuteInfo r;
                r.x = x;
                r.y = y;
                r.kind = L.leq(y, x) ? PairKind::ComparableReversed : PairKind::Incomparable;
                r.infeasible = !out.optimal();
                r.problem = std::move(p);
                if (v.kind != StrongSetVerdict::Kind::Refutes) {
                    v.kind = StrongSetVerdict::Kind::Refutes;
                    v.refute = r;
                }
                v.all_refuting.push_back(std::move(r));
                if (!all_pairs) return v;
            } else if (v.kind != StrongSetVerdict::Kind::Refutes) {
                v.pairs.emplace_back(x, y);
                v.states.push_back(state_from_point(L, p, out.point));
            }
        }
    }
    if (v.kind == StrongSetVerdict::Kind::Refutes) {
        v.pairs.clear();
        v.states.clear();
    }
    return v;
}

}  // namespace omlkit
