#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace omlkit {

/// Raised for malformed diagram lines, equation text, and element names.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Atom alphabet: '1'-'9' -> 1..9, 'A'-'Z' -> 10..35, 'a'-'z' -> 36..61.
inline constexpr int kMaxAtoms = 61;

/// Atom index for an alphabet character, or 0 when the character is illegal.
inline int atom_from_char(char c) {
    if (c >= '1' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    if (c >= 'a' && c <= 'z') return c - 'a' + 36;
    return 0;
}

inline char atom_to_char(int k) {
    if (k >= 1 && k <= 9) return static_cast<char>('0' + k);
    if (k >= 10 && k <= 35) return static_cast<char>('A' + k - 10);
    if (k >= 36 && k <= kMaxAtoms) return static_cast<char>('a' + k - 36);
    throw std::invalid_argument("atom index out of range: " + std::to_string(k));
}

/// A hypergraph of atoms and blocks, the combinatorial input for pasting.
/// Atom and block order is preserved exactly as written.
struct GreechieDiagram {
    int atom_count = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const GreechieDiagram&) const = default;
};

/// Parses one diagram line, e.g. "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF."
///
/// Enforced invariants: blocks of size 3 or 4, no repeated atom inside a
/// block, any two blocks share at most one atom, and every atom index up to
/// the highest mentioned occurs in some block.
inline GreechieDiagram parse_diagram(const std::string& line) {
    // Surrounding whitespace is tolerated; the payload must end with '.'.
    size_t b = line.find_first_not_of(" \t\r\n");
    size_t e = line.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) throw ParseError("empty diagram line");
    std::string s = line.substr(b, e - b + 1);
    if (s.back() != '.') throw ParseError("diagram line not terminated by '.'");
    s.pop_back();
    if (s.empty()) throw ParseError("diagram line has no blocks");

    GreechieDiagram d;
    std::vector<int> block;
    auto flush_block = [&]() {
        if (block.size() != 3 && block.size() != 4)
            throw ParseError("block size " + std::to_string(block.size()) +
                             " not supported (must be 3 or 4)");
        d.blocks.push_back(block);
        block.clear();
    };
    for (char c : s) {
        if (c == ',') {
            flush_block();
            continue;
        }
        int k = atom_from_char(c);
        if (k == 0) throw ParseError(std::string("illegal atom character '") + c + "'");
        if (std::find(block.begin(), block.end(), k) != block.end())
            throw ParseError(std::string("atom '") + c + "' repeated inside a block");
        block.push_back(k);
        d.atom_count = std::max(d.atom_count, k);
    }
    flush_block();

    // Pairwise intersection at most one atom (this also rejects duplicate
    // blocks, which would share their full atom set).
    for (size_t i = 0; i < d.blocks.size(); ++i) {
        for (size_t j = i + 1; j < d.blocks.size(); ++j) {
            int shared = 0;
            for (int a : d.blocks[i])
                if (std::find(d.blocks[j].begin(), d.blocks[j].end(), a) != d.blocks[j].end())
                    ++shared;
            if (shared >= 2)
                throw ParseError("blocks " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " share " + std::to_string(shared) +
                                 " atoms (at most one allowed)");
        }
    }

    std::vector<bool> seen(static_cast<size_t>(d.atom_count) + 1, false);
    for (const auto& blk : d.blocks)
        for (int a : blk) seen[static_cast<size_t>(a)] = true;
    for (int a = 1; a <= d.atom_count; ++a)
        if (!seen[static_cast<size_t>(a)])
            throw ParseError(std::string("atom '") + atom_to_char(a) +
                             "' is never used but smaller than the highest atom");

    return d;
}

/// Emits the diagram in the same compact notation parse_diagram accepts.
inline std::string serialize_diagram(const GreechieDiagram& d) {
    if (d.atom_count > kMaxAtoms)
        throw std::invalid_argument("diagram exceeds the 61-atom alphabet");
    std::string out;
    for (size_t i = 0; i < d.blocks.size(); ++i) {
        if (i) out += ',';
        for (int a : d.blocks[i]) out += atom_to_char(a);
    }
    out += '.';
    return out;
}

struct NumberedDiagram {
    int line = 0;  // 1-based source line
    GreechieDiagram diagram;
};

/// Reads one diagram per line; '#' lines and blank lines are ignored.
/// In strict mode (default) a malformed line aborts the read; with
/// lenient=true it is skipped and a warning is written to `warnings`.
inline std::vector<NumberedDiagram> read_diagram_stream(std::istream& in, bool lenient = false,
                                                        std::ostream* warnings = nullptr) {
    std::vector<NumberedDiagram> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos || line[b] == '#') continue;
        try {
            out.push_back({lineno, parse_diagram(line)});
        } catch (const ParseError& pe) {
            if (!lenient)
                throw ParseError("line " + std::to_string(lineno) + ": " + pe.what());
            if (warnings)
                *warnings << "warning: skipping line " << lineno << ": " << pe.what() << "\n";
        }
    }
    return out;
}

inline std::vector<NumberedDiagram> read_diagram_file(const std::string& path, bool lenient = false,
                                                      std::ostream* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open diagram file: " + path);
    return read_diagram_stream(in, lenient, warnings);
}

}  // namespace omlkit
