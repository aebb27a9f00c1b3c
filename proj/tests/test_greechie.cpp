#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "omlkit/greechie.hpp"

using namespace omlkit;

static const char* kPeterson = "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.";

TEST_CASE("parse_diagram: Peterson line") {
    GreechieDiagram d = parse_diagram(kPeterson);
    CHECK(d.atom_count == 15);
    CHECK(d.blocks.size() == 10);
    CHECK(d.blocks[0] == std::vector<int>{1, 2, 3});
    CHECK(d.blocks[4] == std::vector<int>{9, 10, 11});
    CHECK(d.blocks[9] == std::vector<int>{13, 14, 15});
}

TEST_CASE("parse_diagram: single block") {
    GreechieDiagram d = parse_diagram("123.");
    CHECK(d.atom_count == 3);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0] == std::vector<int>{1, 2, 3});
}

TEST_CASE("parse_diagram: 3-loop parses structurally") {
    // loop rejection is the lattice module's job
    GreechieDiagram d = parse_diagram("123,345,561.");
    CHECK(d.atom_count == 6);
    CHECK(d.blocks.size() == 3);
}

TEST_CASE("parse_diagram: error cases") {
    CHECK_THROWS_AS(parse_diagram("123"), ParseError);          // unterminated
    CHECK_THROWS_AS(parse_diagram("12#."), ParseError);         // illegal character
    CHECK_THROWS_AS(parse_diagram("12."), ParseError);          // block too small
    CHECK_THROWS_AS(parse_diagram("12345."), ParseError);       // block too large
    CHECK_THROWS_AS(parse_diagram("112."), ParseError);         // repeated atom in block
    CHECK_THROWS_AS(parse_diagram("123,124."), ParseError);     // blocks share two atoms
    CHECK_THROWS_AS(parse_diagram("123,123."), ParseError);     // duplicate block
    CHECK_THROWS_AS(parse_diagram("124."), ParseError);         // atom 3 unused
    CHECK_THROWS_AS(parse_diagram("   "), ParseError);          // empty
}

TEST_CASE("serialize_diagram") {
    CHECK(serialize_diagram(parse_diagram(kPeterson)) == kPeterson);
    CHECK(serialize_diagram(parse_diagram("123.")) == "123.");
    GreechieDiagram d;  // atoms 10, 11, 12 in one block
    d.atom_count = 12;
    d.blocks = {{10, 11, 12}};
    CHECK(serialize_diagram(d) == "ABC.");

    GreechieDiagram big;  // beyond the 61-atom alphabet
    big.atom_count = 62;
    big.blocks = {{60, 61, 62}};
    CHECK_THROWS_AS(serialize_diagram(big), std::invalid_argument);
}

TEST_CASE("parse/serialize round-trips random diagrams") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        // random chains/stars never violate the intersection invariant
        int nblocks = 1 + static_cast<int>(rng() % 5);
        GreechieDiagram d;
        int next_atom = 1;
        int hub = 0;
        for (int b = 0; b < nblocks; ++b) {
            int size = 3 + static_cast<int>(rng() % 2);
            std::vector<int> blk;
            if (b > 0) blk.push_back(hub);
            while (static_cast<int>(blk.size()) < size) blk.push_back(next_atom++);
            hub = blk.back();
            d.blocks.push_back(blk);
            d.atom_count = std::max(d.atom_count, hub);
        }
        GreechieDiagram back = parse_diagram(serialize_diagram(d));
        CHECK(back == d);
        // invariants of every successfully parsed diagram
        for (const auto& blk : back.blocks) CHECK((blk.size() == 3 || blk.size() == 4));
        for (size_t i = 0; i < back.blocks.size(); ++i)
            for (size_t j = i + 1; j < back.blocks.size(); ++j) {
                int shared = 0;
                for (int a : back.blocks[i])
                    for (int b2 : back.blocks[j])
                        if (a == b2) ++shared;
                CHECK(shared <= 1);
            }
    }
}

TEST_CASE("read_diagram_stream: comments, blanks, line numbers") {
    std::istringstream in("# comment\n\n123.\n  # indented comment\n123,345.\n");
    auto ds = read_diagram_stream(in);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].line == 3);
    CHECK(ds[1].line == 5);
    CHECK(ds[0].diagram.atom_count == 3);
}

TEST_CASE("read_diagram_stream: strict mode names the bad line") {
    std::istringstream in("123.\n12.\n123,345.\n");
    try {
        read_diagram_stream(in);
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(std::string(pe.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("read_diagram_stream: lenient mode skips and warns") {
    std::istringstream in("123.\n12.\n123,345.\n");
    std::ostringstream warn;
    auto ds = read_diagram_stream(in, /*lenient=*/true, &warn);
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].line == 1);
    CHECK(ds[1].line == 3);
    CHECK(warn.str().find("line 2") != std::string::npos);
}

TEST_CASE("read_diagram_file: fixture files") {
    auto ds = read_diagram_file(std::string(OMLKIT_FIXTURE_DIR) + "/peterson.gre");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].diagram.atom_count == 15);
}
