#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"

namespace omlkit {

// Variable alphabet for generated equations; 'v' is the join operator and is
// excluded from variable names.
inline constexpr const char* kVarAlphabet = "abcdefghijklmnopqrstuwxyz";

enum class TermOp { Var, Zero, One, Comp, Meet, Join, Imp };

struct Term {
    TermOp op = TermOp::Var;
    int var = -1;      // Var: index into Equation::variables
    int a = -1, b = -1;  // children (Comp uses a only)
};

/// A lattice equation: optional orthogonality hypotheses x _|_ y over
/// variables, and a relation `lhs = rhs` or `lhs =< rhs` between terms.
/// Terms live in a node pool; `lhs`/`rhs` are node ids.
struct Equation {
    std::vector<char> variables;                  // first-appearance order
    std::vector<std::pair<int, int>> hypotheses;  // variable index pairs
    bool is_equality = true;                      // false: lhs =< rhs
    int lhs = -1, rhs = -1;
    std::vector<Term> nodes;

    int add(Term t) {
        nodes.push_back(t);
        return static_cast<int>(nodes.size()) - 1;
    }
    int var_node(int v) { return add({TermOp::Var, v, -1, -1}); }
    int comp(int a) { return add({TermOp::Comp, -1, a, -1}); }
    int meet(int a, int b) { return add({TermOp::Meet, -1, a, b}); }
    int join(int a, int b) { return add({TermOp::Join, -1, a, b}); }
    int imp(int a, int b) { return add({TermOp::Imp, -1, a, b}); }
};

inline bool terms_equal(const Equation& ea, int na, const Equation& eb, int nb) {
    const Term& ta = ea.nodes[static_cast<size_t>(na)];
    const Term& tb = eb.nodes[static_cast<size_t>(nb)];
    if (ta.op != tb.op) return false;
    switch (ta.op) {
        case TermOp::Var: return ta.var == tb.var;
        case TermOp::Zero:
        case TermOp::One: return true;
        case TermOp::Comp: return terms_equal(ea, ta.a, eb, tb.a);
        default:
            return terms_equal(ea, ta.a, eb, tb.a) && terms_equal(ea, ta.b, eb, tb.b);
    }
}

/// Structural equality (same variables, hypotheses, relation, term shape).
inline bool equations_equal(const Equation& a, const Equation& b) {
    return a.variables == b.variables && a.hypotheses == b.hypotheses &&
           a.is_equality == b.is_equality && terms_equal(a, a.lhs, b, b.lhs) &&
           terms_equal(a, a.rhs, b, b.rhs);
}

namespace detail {

class EqnParser {
public:
    explicit EqnParser(const std::string& text) : s_(text) {}

    Equation parse() {
        // hypotheses are present iff a '|=' separator occurs
        if (s_.find("|=") != std::string::npos) {
            for (;;) {
                int x = parse_hyp_var();
                expect_word("_|_");
                int y = parse_hyp_var();
                eq_.hypotheses.emplace_back(x, y);
                skip_ws();
                if (peek() == '&') {
                    ++pos_;
                    continue;
                }
                expect_word("|=");
                break;
            }
        }
        eq_.lhs = parse_term();
        skip_ws();
        if (match_word("=<")) {
            eq_.is_equality = false;
        } else if (peek() == '=') {
            ++pos_;
            eq_.is_equality = true;
        } else {
            fail("expected '=' or '=<'");
        }
        eq_.rhs = parse_term();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return std::move(eq_);
    }

private:
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool match_word(const std::string& w) {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect_word(const std::string& w) {
        if (!match_word(w)) fail("expected '" + w + "'");
    }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("equation syntax error at position " + std::to_string(pos_) + ": " +
                         why);
    }

    int variable_index(char c) {
        if (c == 'v') fail("'v' is the join operator and cannot name a variable");
        for (size_t i = 0; i < eq_.variables.size(); ++i)
            if (eq_.variables[i] == c) return static_cast<int>(i);
        eq_.variables.push_back(c);
        return static_cast<int>(eq_.variables.size()) - 1;
    }

    int parse_hyp_var() {
        char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c)))
            fail("hypothesis must relate two variables");
        ++pos_;
        return variable_index(c);
    }

    // precedence: ' > ^ > v > ->   ('->' is right-associative)
    int parse_term() { return parse_imp(); }
    int parse_imp() {
        int l = parse_join();
        if (match_word("->")) {
            int r = parse_imp();
            return eq_.imp(l, r);
        }
        return l;
    }
    int parse_join() {
        int l = parse_meet();
        while (peek() == 'v') {
            ++pos_;
            l = eq_.join(l, parse_meet());
        }
        return l;
    }
    int parse_meet() {
        int l = parse_post();
        while (peek() == '^') {
            ++pos_;
            l = eq_.meet(l, parse_post());
        }
        return l;
    }
    int parse_post() {
        int t = parse_primary();
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '\'') {
                ++pos_;
                t = eq_.comp(t);
            } else {
                break;
            }
        }
        return t;
    }
    int parse_primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            int t = parse_term();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return t;
        }
        if (c == '0') {
            ++pos_;
            return eq_.add({TermOp::Zero, -1, -1, -1});
        }
        if (c == '1') {
            ++pos_;
            return eq_.add({TermOp::One, -1, -1, -1});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            return eq_.var_node(variable_index(c));
        }
        fail("expected a variable, constant, or '('");
    }

    const std::string& s_;
    size_t pos_ = 0;
    Equation eq_;
};

inline int term_prec(TermOp op) {
    switch (op) {
        case TermOp::Imp: return 1;
        case TermOp::Join: return 2;
        case TermOp::Meet: return 3;
        default: return 4;
    }
}

inline void print_term(const Equation& e, int node, int parent_prec, bool right_child,
                       std::string& out) {
    const Term& t = e.nodes[static_cast<size_t>(node)];
    switch (t.op) {
        case TermOp::Var: out += e.variables[static_cast<size_t>(t.var)]; return;
        case TermOp::Zero: out += '0'; return;
        case TermOp::One: out += '1'; return;
        case TermOp::Comp: {
            print_term(e, t.a, term_prec(TermOp::Comp), false, out);
            out += '\'';
            return;
        }
        default: break;
    }
    int prec = term_prec(t.op);
    // '->' associates right; '^'/'v' associate left
    bool need_paren =
        prec < parent_prec ||
        (prec == parent_prec && (t.op == TermOp::Imp ? !right_child : right_child));
    if (need_paren) out += '(';
    const char* sym = t.op == TermOp::Meet ? " ^ " : t.op == TermOp::Join ? " v " : " -> ";
    print_term(e, t.a, prec, false, out);
    out += sym;
    print_term(e, t.b, prec, true, out);
    if (need_paren) out += ')';
}

}  // namespace detail

inline Equation parse_equation(const std::string& text) {
    return detail::EqnParser(text).parse();
}

inline std::string print_equation(const Equation& e) {
    std::string out;
    for (size_t i = 0; i < e.hypotheses.size(); ++i) {
        if (i) out += " & ";
        out += e.variables[static_cast<size_t>(e.hypotheses[i].first)];
        out += " _|_ ";
        out += e.variables[static_cast<size_t>(e.hypotheses[i].second)];
    }
    if (!e.hypotheses.empty()) out += " |= ";
    detail::print_term(e, e.lhs, 0, false, out);
    out += e.is_equality ? " = " : " =< ";
    detail::print_term(e, e.rhs, 0, false, out);
    return out;
}

namespace detail {

/// Godowski identity a_1 ==g a_n: (a1->a2) ^ (a2->a3) ^ ... ^ (an->a1),
/// built over the given variable index sequence.
inline int godowski_chain(Equation& e, const std::vector<int>& vars) {
    int acc = -1;
    for (size_t i = 0; i + 1 < vars.size(); ++i) {
        int step = e.imp(e.var_node(vars[i]), e.var_node(vars[i + 1]));
        acc = acc == -1 ? step : e.meet(acc, step);
    }
    int wrap = e.imp(e.var_node(vars.back()), e.var_node(vars.front()));
    return e.meet(acc, wrap);
}

inline Equation ngo_base(int n) {
    if (n < 3) throw std::invalid_argument("n-Go requires n >= 3");
    if (n > 25) throw std::invalid_argument("n-Go generator is limited to 25 variables");
    Equation e;
    for (int i = 0; i < n; ++i) e.variables.push_back(kVarAlphabet[i]);
    return e;
}

}  // namespace detail

/// n-Go in identity form: a1 ==g an = an ==g a1.
inline Equation generate_ngo(int n) {
    Equation e = detail::ngo_base(n);
    std::vector<int> fwd, rev;
    for (int i = 0; i < n; ++i) fwd.push_back(i);
    for (int i = n - 1; i >= 0; --i) rev.push_back(i);
    e.lhs = detail::godowski_chain(e, fwd);
    e.rhs = detail::godowski_chain(e, rev);
    e.is_equality = true;
    return e;
}

/// n-Go in implicational form: (a1->a2) ^ ... ^ (an->a1) =< a1->an.
inline Equation generate_ngo_implicational(int n) {
    Equation e = detail::ngo_base(n);
    std::vector<int> fwd;
    for (int i = 0; i < n; ++i) fwd.push_back(i);
    e.lhs = detail::godowski_chain(e, fwd);
    e.rhs = e.imp(e.var_node(0), e.var_node(n - 1));
    e.is_equality = false;
    return e;
}

/// The E2-derived condition that holds in all OMLs:
/// a _|_ b & c _|_ d & a _|_ c |= (a v b) ^ (c v d) =< b v d v (a v c)'.
inline Equation mayet_e2_condition() {
    Equation e;
    e.variables = {'a', 'b', 'c', 'd'};
    e.hypotheses = {{0, 1}, {2, 3}, {0, 2}};
    e.lhs = e.meet(e.join(e.var_node(0), e.var_node(1)), e.join(e.var_node(2), e.var_node(3)));
    e.rhs = e.join(e.join(e.var_node(1), e.var_node(3)),
                   e.comp(e.join(e.var_node(0), e.var_node(2))));
    e.is_equality = false;
    return e;
}

struct CheckResult {
    bool holds = true;
    std::vector<Elem> witness;     // per variable, when !holds
    uint64_t assignments_tried = 0;  // relation evaluations + hypothesis prunes
};

class VariableCapError : public std::runtime_error {
public:
    explicit VariableCapError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Elem eval_term(const Lattice& L, const Equation& e, int node,
                      const std::vector<Elem>& asg) {
    const Term& t = e.nodes[static_cast<size_t>(node)];
    switch (t.op) {
        case TermOp::Var: return asg[static_cast<size_t>(t.var)];
        case TermOp::Zero: return L.zero();
        case TermOp::One: return L.one();
        case TermOp::Comp: return L.ortho(eval_term(L, e, t.a, asg));
        case TermOp::Meet: return L.meet(eval_term(L, e, t.a, asg), eval_term(L, e, t.b, asg));
        case TermOp::Join: return L.join(eval_term(L, e, t.a, asg), eval_term(L, e, t.b, asg));
        case TermOp::Imp:
            return L.sasaki_imp(eval_term(L, e, t.a, asg), eval_term(L, e, t.b, asg));
    }
    return L.zero();
}

inline bool eval_relation(const Lattice& L, const Equation& e, const std::vector<Elem>& asg) {
    Elem l = eval_term(L, e, e.lhs, asg);
    Elem r = eval_term(L, e, e.rhs, asg);
    return e.is_equality ? l == r : L.leq(l, r);
}

inline bool hyp_holds(const Lattice& L, const std::pair<int, int>& h,
                      const std::vector<Elem>& asg) {
    // x _|_ y means x <= y'
    return L.leq(asg[static_cast<size_t>(h.first)],
                 L.ortho(asg[static_cast<size_t>(h.second)]));
}

}  // namespace detail

/// Evaluates hypotheses and relation at a single full assignment.
inline std::pair<bool, bool> evaluate_at(const Lattice& L, const Equation& e,
                                         const std::vector<Elem>& assignment) {
    if (assignment.size() != e.variables.size())
        throw std::invalid_argument("assignment does not cover all variables");
    bool hyps = true;
    for (const auto& h : e.hypotheses)
        if (!detail::hyp_holds(L, h, assignment)) {
            hyps = false;
            break;
        }
    return {hyps, detail::eval_relation(L, e, assignment)};
}

/// Exhaustive check over all |L|^vars assignments. Hypotheses are evaluated
/// as soon as their variables are assigned and prune the search. Assignments
/// enumerate in lexicographic element-index order (last variable fastest), so
/// the first witness is deterministic.
inline CheckResult check_equation(const Lattice& L, const Equation& e, int var_cap = 10) {
    const int nv = static_cast<int>(e.variables.size());
    if (nv > var_cap)
        throw VariableCapError(
            "equation has " + std::to_string(nv) + " variables, above the cap of " +
            std::to_string(var_cap) +
            "; cost is |L|^vars -- raise --var-cap only if that is affordable");

    // hypotheses that become decidable once `depth` variables are assigned
    std::vector<std::vector<std::pair<int, int>>> due(static_cast<size_t>(nv) + 1);
    for (const auto& h : e.hypotheses) {
        int d = std::max(h.first, h.second) + 1;
        due[static_cast<size_t>(d)].push_back(h);
    }

    CheckResult res;
    std::vector<Elem> asg(static_cast<size_t>(nv), 0);
    const int n = L.size();

    // iterative depth-first enumeration
    std::vector<int> next(static_cast<size_t>(nv) + 1, 0);
    int depth = 0;
    if (nv == 0) {
        ++res.assignments_tried;
        if (!detail::eval_relation(L, e, asg)) res.holds = false;
        return res;
    }
    while (depth >= 0) {
        if (next[static_cast<size_t>(depth)] >= n) {
            next[static_cast<size_t>(depth)] = 0;
            --depth;
            continue;
        }
        asg[static_cast<size_t>(depth)] = next[static_cast<size_t>(depth)]++;
        bool pruned = false;
        for (const auto& h : due[static_cast<size_t>(depth) + 1])
            if (!detail::hyp_holds(L, h, asg)) {
                pruned = true;
                break;
            }
        if (pruned) {
            ++res.assignments_tried;
            continue;
        }
        if (depth + 1 == nv) {
            ++res.assignments_tried;
            if (!detail::eval_relation(L, e, asg)) {
                res.holds = false;
                res.witness = asg;
                return res;
            }
        } else {
            ++depth;
        }
    }
    return res;
}

}  // namespace omlkit
