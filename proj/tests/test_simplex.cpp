#include <catch_amalgamated.hpp>

#include <random>

#include "omlkit/simplex.hpp"
#include "oracle_lp.hpp"

using namespace omlkit;

namespace {

LpProblem make_problem(std::vector<std::string> vars,
                       std::vector<std::pair<std::string, Rational>> objective,
                       std::vector<std::tuple<std::vector<std::pair<std::string, Rational>>, Rel,
                                              Rational>> constraints) {
    LpProblem p;
    for (auto& v : vars) p.add_var(v);
    for (auto& [v, c] : objective) p.objective.emplace_back(p.find_var(v), c);
    for (auto& [lhs, rel, rhs] : constraints) {
        Constraint c;
        for (auto& [v, coef] : lhs) c.lhs.emplace_back(p.find_var(v), coef);
        c.rel = rel;
        c.rhs = rhs;
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}  // namespace

TEST_CASE("solve: tiny problems") {
    SECTION("min m subject to m = 1") {
        LpProblem p = make_problem({"m"}, {{"m", 1}}, {{{{"m", 1}}, Rel::Eq, 1}});
        LpOutcome out = solve(p);
        REQUIRE(out.optimal());
        CHECK(out.value == 1);
        CHECK(out.point[0] == 1);
    }
    SECTION("min y subject to x + y = 1, x = 1") {
        LpProblem p = make_problem({"x", "y"}, {{"y", 1}},
                                   {{{{"x", 1}, {"y", 1}}, Rel::Eq, 1}, {{{"x", 1}}, Rel::Eq, 1}});
        LpOutcome out = solve(p);
        REQUIRE(out.optimal());
        CHECK(out.value == 0);
    }
    SECTION("infeasible") {
        LpProblem p = make_problem(
            {"x"}, {{"x", 1}}, {{{{"x", 1}}, Rel::Eq, 1}, {{{"x", 1}}, Rel::Eq, 2}});
        CHECK(solve(p).status == LpOutcome::Status::Infeasible);
    }
    SECTION("infeasible through nonnegativity") {
        LpProblem p = make_problem({"x", "y"}, {{"x", 1}},
                                   {{{{"x", 1}, {"y", 1}}, Rel::Le, -1}});
        CHECK(solve(p).status == LpOutcome::Status::Infeasible);
    }
    SECTION("unbounded") {
        LpProblem p = make_problem({"x", "y"}, {{"x", -1}}, {{{{"y", 1}}, Rel::Eq, 1}});
        CHECK(solve(p).status == LpOutcome::Status::Unbounded);
    }
    SECTION("exact fractional optimum") {
        // min x + y s.t. 2x + y = 1, x + 3y = 1  ->  x = 2/5, y = 1/5
        LpProblem p = make_problem({"x", "y"}, {{"x", 1}, {"y", 1}},
                                   {{{{"x", 2}, {"y", 1}}, Rel::Eq, 1},
                                    {{{"x", 1}, {"y", 3}}, Rel::Eq, 1}});
        LpOutcome out = solve(p);
        REQUIRE(out.optimal());
        CHECK(out.value == Rational(3, 5));
        CHECK(out.point[0] == Rational(2, 5));
        CHECK(out.point[1] == Rational(1, 5));
    }
}

TEST_CASE("print_problem formats the lp_solve-style listing") {
    LpProblem p = make_problem({"m7'", "m1"}, {{"m7'", 1}}, {{{{"m1", 1}}, Rel::Eq, 1}});
    CHECK(print_problem(p) == "min: m7';\nm1 = 1;\n");
    LpProblem q = make_problem({"x"}, {{"x", 1}}, {});
    CHECK(print_problem(q) == "min: x;\n");
    LpProblem r = make_problem({"x", "y"}, {{"x", 1}},
                               {{{{"x", 1}, {"y", 2}}, Rel::Le, Rational(1, 2)}});
    CHECK(print_problem(r) == "min: x;\nx + 2 y <= 1/2;\n");
}

TEST_CASE("solving twice yields identical rationals") {
    LpProblem p = make_problem({"a", "b", "c"}, {{"c", 1}},
                               {{{{"a", 1}, {"b", 1}, {"c", 1}}, Rel::Eq, 1},
                                {{{"a", 1}, {"b", 2}}, Rel::Le, Rational(2, 3)}});
    LpOutcome o1 = solve(p), o2 = solve(p);
    REQUIRE(o1.optimal());
    CHECK(o1.value == o2.value);
    CHECK(o1.point == o2.point);
}

TEST_CASE("fixture suite agrees with the vertex-enumeration oracle") {
    std::vector<LpProblem> fixtures;
    fixtures.push_back(make_problem({"m"}, {{"m", 1}}, {{{{"m", 1}}, Rel::Eq, 1}}));
    fixtures.push_back(make_problem({"x", "y"}, {{"y", 1}},
                                    {{{{"x", 1}, {"y", 1}}, Rel::Eq, 1}, {{{"x", 1}}, Rel::Eq, 1}}));
    fixtures.push_back(make_problem(
        {"x", "y"}, {{"x", -1}, {"y", -1}},
        {{{{"x", 1}, {"y", 2}}, Rel::Le, 4}, {{{"x", 3}, {"y", 1}}, Rel::Le, 6}}));
    fixtures.push_back(make_problem({"x", "y", "z"}, {{"z", 1}},
                                    {{{{"x", 1}, {"y", 1}, {"z", 1}}, Rel::Eq, 1},
                                     {{{"x", 1}, {"y", 1}}, Rel::Le, Rational(1, 3)}}));
    fixtures.push_back(make_problem(
        {"a", "b", "c", "d"}, {{"a", 1}, {"d", 2}},
        {{{{"a", 1}, {"b", 1}}, Rel::Eq, 1},
         {{{"c", 1}, {"d", 1}}, Rel::Eq, 1},
         {{{"b", 1}, {"c", 1}}, Rel::Le, 1}}));
    // degenerate: redundant equalities
    fixtures.push_back(make_problem({"x", "y"}, {{"x", 1}},
                                    {{{{"x", 1}, {"y", 1}}, Rel::Eq, 1},
                                     {{{"x", 2}, {"y", 2}}, Rel::Eq, 2}}));
    // infeasible corner
    fixtures.push_back(make_problem({"x", "y"}, {{"x", 1}},
                                    {{{{"x", 1}, {"y", 1}}, Rel::Le, 1},
                                     {{{"x", 1}, {"y", 1}}, Rel::Eq, 2},
                                     {{{"x", 1}}, Rel::Le, Rational(1, 2)},
                                     {{{"y", 1}}, Rel::Le, Rational(1, 2)}}));
    // fractional data
    fixtures.push_back(make_problem(
        {"x", "y", "z"}, {{"x", Rational(1, 3)}, {"y", Rational(1, 7)}, {"z", 1}},
        {{{{"x", 1}, {"y", 1}, {"z", 1}}, Rel::Eq, 1},
         {{{"x", 1}, {"y", -1}}, Rel::Le, Rational(1, 5)}}));

    std::mt19937 rng(23);
    auto rnd = [&](int lo, int hi) {
        return Rational(lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)));
    };
    for (int trial = 0; trial < 30; ++trial) {
        // random bounded problems: a simplex-style equality keeps things finite
        int nv = 2 + static_cast<int>(rng() % 4);
        LpProblem p;
        for (int v = 0; v < nv; ++v) p.add_var("x" + std::to_string(v));
        Constraint simplex_row;
        for (int v = 0; v < nv; ++v) simplex_row.lhs.emplace_back(v, 1);
        simplex_row.rel = Rel::Eq;
        simplex_row.rhs = rnd(1, 3);
        p.constraints.push_back(simplex_row);
        int extra = static_cast<int>(rng() % 3);
        for (int c = 0; c < extra; ++c) {
            Constraint con;
            for (int v = 0; v < nv; ++v)
                if (rng() % 2) con.lhs.emplace_back(v, rnd(-2, 3));
            if (con.lhs.empty()) con.lhs.emplace_back(0, 1);
            con.rel = Rel::Le;
            con.rhs = rnd(0, 4);
            p.constraints.push_back(con);
        }
        for (int v = 0; v < nv; ++v)
            if (rng() % 2) p.objective.emplace_back(v, rnd(-3, 3));
        if (p.objective.empty()) p.objective.emplace_back(0, 1);
        fixtures.push_back(p);
    }

    REQUIRE(fixtures.size() >= 10);
    for (size_t i = 0; i < fixtures.size(); ++i) {
        INFO("fixture " << i << "\n" << print_problem(fixtures[i]));
        LpOutcome out = solve(fixtures[i]);
        oracle::OracleResult oc = oracle::enumerate_vertices(fixtures[i]);
        if (oc.feasible) {
            REQUIRE(out.optimal());
            CHECK(out.value == oc.best);
        } else {
            CHECK(out.status == LpOutcome::Status::Infeasible);
        }
        // Bland's rule stays under the pivot ceiling by a wide margin
        CHECK(out.pivots < 10000);
    }
}
