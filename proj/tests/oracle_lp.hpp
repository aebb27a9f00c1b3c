#pragma once

// Test-only brute-force LP oracle: enumerates every subset of active
// constraints (equality rows are always active; inequality rows and the
// x_i >= 0 bounds are optional), solves each resulting linear system by
// rational Gauss-Jordan elimination, keeps uniquely-determined feasible
// points, and minimizes the objective over them. Every polyhedron here is
// pointed (x >= 0), so a nonempty feasible set has a vertex and a bounded
// problem attains its optimum at one. Only for bounded desk-size problems;
// independent of the simplex implementation.

#include <optional>
#include <stdexcept>
#include <vector>

#include "omlkit/simplex.hpp"

namespace oracle {

using omlkit::LpProblem;
using omlkit::Rational;
using omlkit::Rel;

struct OracleResult {
    bool feasible = false;
    Rational best;  // min objective over vertices, when feasible
};

/// Unique solution of a (possibly overdetermined) m x n system, or nullopt
/// when the system is inconsistent or underdetermined.
inline std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b, int n) {
    const size_t m = a.size();
    size_t r = 0;
    std::vector<size_t> pivot_row(static_cast<size_t>(n));
    for (int col = 0; col < n; ++col) {
        size_t piv = r;
        while (piv < m && a[piv][static_cast<size_t>(col)] == 0) ++piv;
        if (piv == m) return std::nullopt;  // free column: not a single point
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Rational inv = a[r][static_cast<size_t>(col)];
        for (int c = col; c < n; ++c) a[r][static_cast<size_t>(c)] /= inv;
        b[r] /= inv;
        for (size_t row = 0; row < m; ++row) {
            if (row == r) continue;
            Rational f = a[row][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < n; ++c)
                a[row][static_cast<size_t>(c)] -= f * a[r][static_cast<size_t>(c)];
            b[row] -= f * b[r];
        }
        pivot_row[static_cast<size_t>(col)] = r;
        ++r;
        if (r == m && col + 1 < n) return std::nullopt;
    }
    for (size_t row = r; row < m; ++row)
        if (b[row] != 0) return std::nullopt;  // inconsistent
    std::vector<Rational> x(static_cast<size_t>(n));
    for (int col = 0; col < n; ++col)
        x[static_cast<size_t>(col)] = b[pivot_row[static_cast<size_t>(col)]];
    return x;
}

inline OracleResult enumerate_vertices(const LpProblem& p) {
    const int n = static_cast<int>(p.var_names.size());
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<bool> is_eq;
    for (const auto& c : p.constraints) {
        std::vector<Rational> row(static_cast<size_t>(n), Rational(0));
        for (const auto& [v, coef] : c.lhs) row[static_cast<size_t>(v)] += coef;
        rows.push_back(std::move(row));
        rhs.push_back(c.rhs);
        is_eq.push_back(c.rel == Rel::Eq);
    }
    std::vector<int> optional_ids;  // >=0: inequality row id; <0: bound on var -1-id
    for (size_t i = 0; i < rows.size(); ++i)
        if (!is_eq[i]) optional_ids.push_back(static_cast<int>(i));
    for (int v = 0; v < n; ++v) optional_ids.push_back(-1 - v);
    if (optional_ids.size() > 22)
        throw std::invalid_argument("oracle is for desk-size problems only");

    OracleResult res;
    for (uint64_t mask = 0; mask < (uint64_t{1} << optional_ids.size()); ++mask) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (size_t i = 0; i < rows.size(); ++i)
            if (is_eq[i]) {
                a.push_back(rows[i]);
                b.push_back(rhs[i]);
            }
        for (size_t i = 0; i < optional_ids.size(); ++i) {
            if (!((mask >> i) & 1)) continue;
            int id = optional_ids[i];
            if (id >= 0) {
                a.push_back(rows[static_cast<size_t>(id)]);
                b.push_back(rhs[static_cast<size_t>(id)]);
            } else {
                std::vector<Rational> row(static_cast<size_t>(n), Rational(0));
                row[static_cast<size_t>(-1 - id)] = 1;
                a.push_back(std::move(row));
                b.push_back(0);
            }
        }
        if (static_cast<int>(a.size()) < n) continue;
        auto x = solve_unique(a, b, n);
        if (!x) continue;
        bool ok = true;
        for (const auto& xi : *x)
            if (xi < 0) ok = false;
        for (size_t i = 0; ok && i < rows.size(); ++i) {
            Rational lhs = 0;
            for (int v = 0; v < n; ++v)
                lhs += rows[i][static_cast<size_t>(v)] * (*x)[static_cast<size_t>(v)];
            if (is_eq[i] ? lhs != rhs[i] : lhs > rhs[i]) ok = false;
        }
        if (!ok) continue;
        Rational obj = 0;
        for (const auto& [v, coef] : p.objective) obj += coef * (*x)[static_cast<size_t>(v)];
        if (!res.feasible || obj < res.best) {
            res.feasible = true;
            res.best = obj;
        }
    }
    return res;
}

}  // namespace oracle
