#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "omlkit/eqn.hpp"
#include "omlkit/indexset.hpp"
#include "omlkit/lattice.hpp"

namespace omlkit {

/// Stage-k valuation family: for each ordered pair (a1, x), the set of
/// values the k-conjunct Godowski chain E_k(a1, ..., x) can take.
struct ValuationFamily {
    int stage = 2;
    int n = 0;                   // lattice size
    std::vector<IndexSet> sets;  // indexed a1 * n + x

    const IndexSet& at(Elem a1, Elem x) const {
        return sets[static_cast<size_t>(a1) * static_cast<size_t>(n) + static_cast<size_t>(x)];
    }
    IndexSet& at(Elem a1, Elem x) {
        return sets[static_cast<size_t>(a1) * static_cast<size_t>(n) + static_cast<size_t>(x)];
    }
    bool operator==(const ValuationFamily& o) const { return n == o.n && sets == o.sets; }
};

struct NGoVerdict {
    enum class Kind { FailsAt, PassesAll, Inconclusive } kind = Kind::Inconclusive;
    int n = 0;             // FailsAt: first failing n; Inconclusive: the cutoff
    int converged_at = 0;  // PassesAll: stage k with V_{k+1} = V_k
    // FailsAt data: the failing pair, the offending chain value, and a
    // reconstructed chain a_1..a_n falsifying the implicational n-Go.
    Elem a1 = -1, an = -1, value = -1;
    std::vector<Elem> chain;
};

struct NgoScanResult {
    NGoVerdict verdict;
    std::vector<ValuationFamily> history;  // V_2, V_3, ... as computed
    std::vector<uint64_t> stage_ops;       // meet/imp evaluations per computed stage
};

/// V_2(a1, a3) = { (a1->a2) ^ (a2->a3) : a2 }.
inline ValuationFamily godp_initial_family(const Lattice& L, uint64_t* ops = nullptr) {
    const int n = L.size();
    ValuationFamily f;
    f.stage = 2;
    f.n = n;
    f.sets.assign(static_cast<size_t>(n) * static_cast<size_t>(n), IndexSet(n));
    uint64_t cnt = 0;
    for (Elem a1 = 0; a1 < n; ++a1)
        for (Elem a3 = 0; a3 < n; ++a3) {
            IndexSet& s = f.at(a1, a3);
            for (Elem a2 = 0; a2 < n; ++a2) {
                s.set(L.meet(L.sasaki_imp(a1, a2), L.sasaki_imp(a2, a3)));
                ++cnt;
            }
        }
    if (ops) *ops += cnt;
    return f;
}

/// V_{k+1}(a1, y) = { v ^ (x->y) : x in L, v in V_k(a1, x) }.
inline ValuationFamily godp_step(const Lattice& L, const ValuationFamily& prev,
                                 uint64_t* ops = nullptr) {
    const int n = L.size();
    ValuationFamily f;
    f.stage = prev.stage + 1;
    f.n = n;
    f.sets.assign(static_cast<size_t>(n) * static_cast<size_t>(n), IndexSet(n));
    uint64_t cnt = 0;
    for (Elem a1 = 0; a1 < n; ++a1)
        for (Elem x = 0; x < n; ++x) {
            const IndexSet& src = prev.at(a1, x);
            if (src.empty()) continue;
            for (Elem y = 0; y < n; ++y) {
                Elem step = L.sasaki_imp(x, y);
                IndexSet& dst = f.at(a1, y);
                src.for_each([&](int v) {
                    dst.set(L.meet(v, step));
                    ++cnt;
                });
            }
        }
    if (ops) *ops += cnt;
    return f;
}

namespace detail {

/// Answer predicate over V_k for n = k+1: every v in V_k(a1, an) must give
/// v ^ (an->a1) <= a1->an. Returns the first violation, if any.
inline bool godp_answer(const Lattice& L, const ValuationFamily& f, Elem* fail_a1,
                        Elem* fail_an, Elem* fail_v, uint64_t* ops) {
    const int n = L.size();
    for (Elem a1 = 0; a1 < n; ++a1)
        for (Elem an = 0; an < n; ++an) {
            Elem wrap = L.sasaki_imp(an, a1);
            Elem target = L.sasaki_imp(a1, an);
            bool bad = false;
            f.at(a1, an).for_each([&](int v) {
                if (bad) return;
                ++*ops;
                if (!L.leq(L.meet(v, wrap), target)) {
                    bad = true;
                    *fail_a1 = a1;
                    *fail_an = an;
                    *fail_v = v;
                }
            });
            if (bad) return false;
        }
    return true;
}

}  // namespace detail

/// Recovers a chain a_1..a_n falsifying the implicational n-Go from the
/// valuation family history, by searching each stage for a predecessor.
/// The returned chain is verified against the eqn module; an inconsistency
/// is a defect and raises logic_error.
inline std::vector<Elem> reconstruct_witness(const Lattice& L,
                                             const std::vector<ValuationFamily>& history,
                                             Elem a1, Elem an, Elem value) {
    const int n = L.size();
    const int k = history.back().stage;  // failing stage; n-Go index is k+1
    std::vector<Elem> chain(static_cast<size_t>(k) + 1, -1);
    chain.front() = a1;
    chain.back() = an;
    Elem cur = value;
    Elem y = an;
    for (int s = k; s >= 3; --s) {
        const ValuationFamily& below = history[static_cast<size_t>(s) - 3];
        bool found = false;
        for (Elem x = 0; x < n && !found; ++x) {
            Elem step = L.sasaki_imp(x, y);
            below.at(a1, x).for_each([&](int v) {
                if (found) return;
                if (L.meet(v, step) == cur) {
                    found = true;
                    chain[static_cast<size_t>(s) - 1] = x;
                    cur = v;
                }
            });
            if (found) y = chain[static_cast<size_t>(s) - 1];
        }
        if (!found) throw std::logic_error("witness reconstruction lost the trail");
    }
    // ground stage: V_2 value is (a1->a2) ^ (a2->a3)
    {
        bool found = false;
        for (Elem a2 = 0; a2 < n && !found; ++a2)
            if (L.meet(L.sasaki_imp(a1, a2), L.sasaki_imp(a2, y)) == cur) {
                chain[1] = a2;
                found = true;
            }
        if (!found) throw std::logic_error("witness reconstruction lost the ground stage");
    }
    if (k + 1 <= 25) {  // the equation generator is capped at 25 variables
        auto [hyps, rel] = evaluate_at(L, generate_ngo_implicational(k + 1), chain);
        if (!hyps || rel)
            throw std::logic_error("reconstructed chain does not falsify the implicational n-Go");
    }
    return chain;
}

/// Decides the first n at which n-Go fails, or certifies that every n-Go
/// holds (valuation family converged), up to the cutoff.
inline NgoScanResult ngo_scan(const Lattice& L, int cutoff = 100) {
    NgoScanResult res;
    if (cutoff < 3) {
        res.verdict.kind = NGoVerdict::Kind::Inconclusive;
        res.verdict.n = cutoff;
        return res;
    }
    uint64_t ops = 0;
    res.history.push_back(godp_initial_family(L, &ops));
    res.stage_ops.push_back(ops);
    for (;;) {
        const ValuationFamily& vk = res.history.back();
        const int n_test = vk.stage + 1;
        Elem a1 = -1, an = -1, val = -1;
        uint64_t answer_ops = 0;
        if (!detail::godp_answer(L, vk, &a1, &an, &val, &answer_ops)) {
            res.stage_ops.back() += answer_ops;
            res.verdict.kind = NGoVerdict::Kind::FailsAt;
            res.verdict.n = n_test;
            res.verdict.a1 = a1;
            res.verdict.an = an;
            res.verdict.value = val;
            res.verdict.chain = reconstruct_witness(L, res.history, a1, an, val);
            return res;
        }
        res.stage_ops.back() += answer_ops;
        if (n_test + 1 > cutoff) {
            res.verdict.kind = NGoVerdict::Kind::Inconclusive;
            res.verdict.n = cutoff;
            return res;
        }
        ops = 0;
        ValuationFamily next = godp_step(L, vk, &ops);
        res.stage_ops.push_back(ops);
        if (next == vk) {
            res.verdict.kind = NGoVerdict::Kind::PassesAll;
            res.verdict.converged_at = vk.stage;
            return res;
        }
        res.history.push_back(std::move(next));
    }
}

}  // namespace omlkit
