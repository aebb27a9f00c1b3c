#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace omlkit {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

enum class Rel { Eq, Le };

/// One linear constraint: sum of coeff*var (by variable index) REL rhs.
struct Constraint {
    std::vector<std::pair<int, Rational>> lhs;
    Rel rel = Rel::Eq;
    Rational rhs = 0;
};

/// Minimize a linear objective subject to =/<= constraints; every variable
/// is implicitly nonnegative.
struct LpProblem {
    std::vector<std::string> var_names;
    std::vector<std::pair<int, Rational>> objective;  // minimized
    std::vector<Constraint> constraints;

    int add_var(const std::string& name) {
        for (size_t i = 0; i < var_names.size(); ++i)
            if (var_names[i] == name) return static_cast<int>(i);
        var_names.push_back(name);
        return static_cast<int>(var_names.size()) - 1;
    }
    int find_var(const std::string& name) const {
        for (size_t i = 0; i < var_names.size(); ++i)
            if (var_names[i] == name) return static_cast<int>(i);
        return -1;
    }
};

struct LpOutcome {
    enum class Status { Optimal, Infeasible, Unbounded } status = Status::Optimal;
    Rational value;
    std::vector<Rational> point;  // by variable index; empty unless Optimal
    uint64_t pivots = 0;

    bool optimal() const { return status == Status::Optimal; }
};

/// Emits the problem in the lp_solve-style listing used for state problems:
/// `min: <objective>;` then one constraint per line.
inline std::string print_problem(const LpProblem& p) {
    auto linear = [&](const std::vector<std::pair<int, Rational>>& terms) {
        std::string s;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) s += " + ";
            if (terms[i].second != 1) s += to_string(terms[i].second) + " ";
            s += p.var_names[static_cast<size_t>(terms[i].first)];
        }
        return s;
    };
    std::string out = "min: " + linear(p.objective) + ";\n";
    for (const auto& c : p.constraints) {
        out += linear(c.lhs);
        out += c.rel == Rel::Eq ? " = " : " <= ";
        out += to_string(c.rhs) + ";\n";
    }
    return out;
}

namespace detail {

/// Dense exact-arithmetic tableau; Bland's rule in both phases.
class SimplexTableau {
public:
    SimplexTableau(const LpProblem& p, uint64_t pivot_limit) : pivot_limit_(pivot_limit) {
        n_struct_ = static_cast<int>(p.var_names.size());
        const int m = static_cast<int>(p.constraints.size());

        int n_slack = 0;
        for (const auto& c : p.constraints)
            if (c.rel == Rel::Le) ++n_slack;
        // column layout: structural | slack | artificial
        int slack0 = n_struct_;
        art0_ = n_struct_ + n_slack;
        int next_slack = slack0;

        std::vector<std::vector<Rational>> rows;
        std::vector<int> slack_col(static_cast<size_t>(m), -1);
        for (int i = 0; i < m; ++i) {
            const auto& c = p.constraints[static_cast<size_t>(i)];
            std::vector<Rational> row(static_cast<size_t>(art0_) + 1, Rational(0));
            for (const auto& [v, coef] : c.lhs) row[static_cast<size_t>(v)] += coef;
            row.back() = c.rhs;
            if (c.rel == Rel::Le) {
                slack_col[static_cast<size_t>(i)] = next_slack;
                row[static_cast<size_t>(next_slack++)] = 1;
            }
            if (row.back() < 0)
                for (auto& x : row) x = -x;
            rows.push_back(std::move(row));
        }

        // artificials where no slack can serve as the initial basic variable
        int n_art = 0;
        for (int i = 0; i < m; ++i) {
            int sc = slack_col[static_cast<size_t>(i)];
            if (sc >= 0 && rows[static_cast<size_t>(i)][static_cast<size_t>(sc)] == 1) continue;
            ++n_art;
        }
        total_cols_ = art0_ + n_art;
        tab_.assign(static_cast<size_t>(m) + 2,
                    std::vector<Rational>(static_cast<size_t>(total_cols_) + 1, Rational(0)));
        basis_.resize(static_cast<size_t>(m));
        int next_art = art0_;
        for (int i = 0; i < m; ++i) {
            auto& dst = tab_[static_cast<size_t>(i)];
            const auto& src = rows[static_cast<size_t>(i)];
            for (int j = 0; j < art0_; ++j) dst[static_cast<size_t>(j)] = src[static_cast<size_t>(j)];
            dst.back() = src.back();
            int sc = slack_col[static_cast<size_t>(i)];
            if (sc >= 0 && src[static_cast<size_t>(sc)] == 1) {
                basis_[static_cast<size_t>(i)] = sc;
            } else {
                basis_[static_cast<size_t>(i)] = next_art;
                dst[static_cast<size_t>(next_art++)] = 1;
            }
        }
        m_ = m;

        // phase-2 objective row (original costs), already reduced: initial
        // basics are slacks/artificials with zero cost
        auto& p2 = tab_[static_cast<size_t>(m_)];
        for (const auto& [v, coef] : p.objective) p2[static_cast<size_t>(v)] += coef;
        // phase-1 objective row: sum of artificials, reduced over basics
        auto& p1 = tab_[static_cast<size_t>(m_) + 1];
        for (int j = art0_; j < total_cols_; ++j) p1[static_cast<size_t>(j)] = 1;
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<size_t>(i)] >= art0_)
                sub_row(p1, tab_[static_cast<size_t>(i)], Rational(1));
    }

    LpOutcome run(const LpProblem& p) {
        LpOutcome out;
        if (!iterate(/*phase1=*/true)) throw std::logic_error("phase 1 cannot be unbounded");
        out.pivots = pivots_;
        if (-tab_[static_cast<size_t>(m_) + 1].back() > 0) {
            out.status = LpOutcome::Status::Infeasible;
            return out;
        }
        expel_artificials();
        if (!iterate(/*phase1=*/false)) {
            out.status = LpOutcome::Status::Unbounded;
            out.pivots = pivots_;
            return out;
        }
        out.pivots = pivots_;
        out.status = LpOutcome::Status::Optimal;
        out.value = -tab_[static_cast<size_t>(m_)].back();
        out.point.assign(static_cast<size_t>(n_struct_), Rational(0));
        for (int i = 0; i < m_; ++i) {
            if (dead_row_[static_cast<size_t>(i)]) continue;
            int b = basis_[static_cast<size_t>(i)];
            if (b < n_struct_) out.point[static_cast<size_t>(b)] = tab_[static_cast<size_t>(i)].back();
        }
        verify(p, out);
        return out;
    }

private:
    // factor is taken by value: callers pass entries of dst itself
    static void sub_row(std::vector<Rational>& dst, const std::vector<Rational>& src,
                        Rational factor) {
        if (factor == 0) return;
        for (size_t j = 0; j < dst.size(); ++j)
            if (src[j] != 0) dst[j] -= factor * src[j];
    }

    void pivot(int r, int c) {
        auto& prow = tab_[static_cast<size_t>(r)];
        Rational inv = prow[static_cast<size_t>(c)];
        for (auto& x : prow) x /= inv;
        for (size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            sub_row(tab_[i], prow, tab_[i][static_cast<size_t>(c)]);
        }
        basis_[static_cast<size_t>(r)] = c;
        if (++pivots_ > pivot_limit_)
            throw std::logic_error("simplex exceeded the pivot ceiling (cycling?)");
    }

    /// Bland's rule; returns false on unbounded.
    bool iterate(bool phase1) {
        if (dead_row_.empty()) dead_row_.assign(static_cast<size_t>(m_), false);
        const auto& obj = tab_[static_cast<size_t>(m_) + (phase1 ? 1 : 0)];
        const int cols = phase1 ? total_cols_ : art0_;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols; ++j)
                if (obj[static_cast<size_t>(j)] < 0) {
                    enter = j;
                    break;
                }
            if (enter == -1) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (dead_row_[static_cast<size_t>(i)]) continue;
                const Rational& a = tab_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
                if (a <= 0) continue;
                Rational ratio = tab_[static_cast<size_t>(i)].back() / a;
                if (leave == -1 || ratio < best ||
                    (ratio == best &&
                     basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == -1) return false;
            pivot(leave, enter);
        }
    }

    /// After phase 1, remove artificial variables from the basis: pivot them
    /// out where possible, otherwise the row is redundant and is retired.
    void expel_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<size_t>(i)] < art0_) continue;
            int col = -1;
            for (int j = 0; j < art0_; ++j)
                if (tab_[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0)
                pivot(i, col);
            else
                dead_row_[static_cast<size_t>(i)] = true;
        }
    }

    /// Exactness guarantee: the reported point must satisfy every constraint
    /// and reproduce the reported value. Violations are defects.
    static void verify(const LpProblem& p, const LpOutcome& out) {
        Rational obj = 0;
        for (const auto& [v, coef] : p.objective) obj += coef * out.point[static_cast<size_t>(v)];
        if (obj != out.value) throw std::logic_error("LP objective/point mismatch");
        for (const auto& c : p.constraints) {
            Rational lhs = 0;
            for (const auto& [v, coef] : c.lhs) lhs += coef * out.point[static_cast<size_t>(v)];
            bool ok = c.rel == Rel::Eq ? lhs == c.rhs : lhs <= c.rhs;
            if (!ok) throw std::logic_error("LP point violates a constraint");
        }
        for (const auto& x : out.point)
            if (x < 0) throw std::logic_error("LP point violates nonnegativity");
    }

    int n_struct_ = 0, art0_ = 0, total_cols_ = 0, m_ = 0;
    std::vector<std::vector<Rational>> tab_;  // m rows + phase-2 row + phase-1 row
    std::vector<int> basis_;
    std::vector<bool> dead_row_;
    uint64_t pivots_ = 0, pivot_limit_;
};

}  // namespace detail

/// Two-phase exact simplex. Terminates on every input (Bland's rule).
inline LpOutcome solve(const LpProblem& p, uint64_t pivot_limit = 200000) {
    for (const auto& c : p.constraints)
        for (const auto& [v, coef] : c.lhs)
            if (v < 0 || v >= static_cast<int>(p.var_names.size()))
                throw std::invalid_argument("constraint references an undeclared variable");
    detail::SimplexTableau t(p, pivot_limit);
    return t.run(p);
}

}  // namespace omlkit
