#include <catch_amalgamated.hpp>

#include "omlkit/godp.hpp"

using namespace omlkit;

static const char* kPeterson = "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.";

static Lattice make(const std::string& line) { return Lattice::build(parse_diagram(line)); }

/// First n in {3..max_n} at which n-Go fails by brute force, or 0.
static int brute_first_failing_n(const Lattice& L, int max_n, bool implicational) {
    for (int n = 3; n <= max_n; ++n) {
        Equation e = implicational ? generate_ngo_implicational(n) : generate_ngo(n);
        if (!check_equation(L, e).holds) return n;
    }
    return 0;
}

TEST_CASE("Peterson fails first at 4-Go") {
    Lattice L = make(kPeterson);
    // brute-force oracle: 3-Go holds, 4-Go fails (both forms agree)
    CHECK(check_equation(L, generate_ngo(3)).holds);
    CHECK(check_equation(L, generate_ngo_implicational(3)).holds);
    CHECK(!check_equation(L, generate_ngo_implicational(4)).holds);

    NgoScanResult res = ngo_scan(L);
    REQUIRE(res.verdict.kind == NGoVerdict::Kind::FailsAt);
    CHECK(res.verdict.n == 4);

    SECTION("reconstructed chain falsifies the implicational 4-Go") {
        REQUIRE(res.verdict.chain.size() == 4);
        for (Elem e : res.verdict.chain) {
            CHECK(e >= 0);
            CHECK(e < L.size());
        }
        auto [hyps, rel] = evaluate_at(L, generate_ngo_implicational(4), res.verdict.chain);
        CHECK(hyps);
        CHECK(!rel);
    }
}

TEST_CASE("Boolean lattices pass all n-Go with early convergence") {
    Lattice L = make("123.");
    NgoScanResult res = ngo_scan(L);
    REQUIRE(res.verdict.kind == NGoVerdict::Kind::PassesAll);
    CHECK(res.verdict.converged_at < 10);
    // convergence is a fixpoint: one extra stage leaves the family unchanged
    const ValuationFamily& final_family = res.history.back();
    CHECK(godp_step(L, final_family) == final_family);
    // and the brute force agrees at n = 3, 4
    CHECK(check_equation(L, generate_ngo(3)).holds);
    CHECK(check_equation(L, generate_ngo(4)).holds);
}

TEST_CASE("scan verdict matches brute force on the corpus (n = 3, 4, 5)") {
    auto ds = read_diagram_file(std::string(OMLKIT_FIXTURE_DIR) + "/corpus.gre");
    for (const auto& nd : ds) {
        Lattice L = Lattice::build(nd.diagram);
        if (L.size() > 40) continue;
        NgoScanResult res = ngo_scan(L);
        int brute_id = brute_first_failing_n(L, 5, /*implicational=*/false);
        int brute_imp = brute_first_failing_n(L, 5, /*implicational=*/true);
        INFO("line " << nd.line << " size " << L.size());
        CHECK(brute_id == brute_imp);  // the two n-Go forms are equivalent
        if (res.verdict.kind == NGoVerdict::Kind::FailsAt && res.verdict.n <= 5) {
            CHECK(res.verdict.n == brute_imp);
        } else {
            CHECK(brute_imp == 0);
            // certified pass: no n-Go may fail, in particular 3..5
            if (res.verdict.kind == NGoVerdict::Kind::PassesAll) {
                CHECK(check_equation(L, generate_ngo(3)).holds);
                CHECK(check_equation(L, generate_ngo(4)).holds);
            }
        }
    }
}

TEST_CASE("n-Go monotonicity: a failure at n implies failure at n+1") {
    Lattice L = make(kPeterson);
    REQUIRE(!check_equation(L, generate_ngo_implicational(4)).holds);
    CHECK(!check_equation(L, generate_ngo_implicational(5)).holds);
    CHECK(!check_equation(L, generate_ngo(4)).holds);
    CHECK(!check_equation(L, generate_ngo(5)).holds);
}

TEST_CASE("cutoff reports inconclusive") {
    Lattice L = make(kPeterson);
    // scanning with cutoff 3 only tests 3-Go, which Peterson passes
    NgoScanResult res = ngo_scan(L, 3);
    CHECK((res.verdict.kind == NGoVerdict::Kind::Inconclusive ||
           res.verdict.kind == NGoVerdict::Kind::PassesAll));
    if (res.verdict.kind == NGoVerdict::Kind::Inconclusive) CHECK(res.verdict.n == 3);
}

TEST_CASE("stage op counters stay within the quartic envelope") {
    for (const char* line : {"123.", "123,345.", "123,345,567."}) {
        Lattice L = make(line);
        NgoScanResult res = ngo_scan(L);
        uint64_t n4 = static_cast<uint64_t>(L.size()) * static_cast<uint64_t>(L.size()) *
                      static_cast<uint64_t>(L.size()) * static_cast<uint64_t>(L.size());
        for (uint64_t ops : res.stage_ops) CHECK(ops <= 3 * n4);
    }
}
