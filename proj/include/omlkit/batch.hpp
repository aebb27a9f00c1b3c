#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "omlkit/eqn.hpp"
#include "omlkit/godp.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/mgegen.hpp"
#include "omlkit/states.hpp"

namespace omlkit {

using json = nlohmann::json;

struct RunConfig {
    enum class Cmd { Parse, Check, Ngo, States, LpDump, Mge } cmd = Cmd::Parse;
    std::string input_path;
    std::string eq_text;        // check: --eq
    std::string eq_file;        // check: --eq-file
    int cutoff = 100;           // ngo
    int var_cap = 10;           // check
    bool no_verify = false;
    bool all_pairs = false;     // states
    bool json_output = false;
    std::string pair;           // lp-dump: "a1,a7'"
    std::optional<unsigned> seed_order;  // mge: permute block relaxation order
};

namespace detail {

struct LatticeLines {
    std::vector<std::string> out;  // verdict lines, "L<line>: ..." (text mode)
    std::vector<std::string> err;
    std::vector<json> records;     // json-lines mode
};

inline std::string pair_text(const Lattice& L, Elem x, Elem y) {
    return "(" + L.name(x) + ", " + L.name(y) + ")";
}

inline const char* kind_text(PairKind k) {
    return k == PairKind::Incomparable ? "incomparable" : "comparable";
}

inline std::string blocks_text(const Lattice& L, const std::vector<int>& idxs) {
    std::string s;
    for (size_t i = 0; i < idxs.size(); ++i) {
        if (i) s += ',';
        for (int a : L.diagram().blocks[static_cast<size_t>(idxs[i])]) s += atom_to_char(a);
    }
    return s;
}

inline std::pair<Elem, Elem> parse_pair_names(const Lattice& L, const std::string& spec) {
    size_t comma = spec.find(',');
    if (comma == std::string::npos)
        throw ParseError("--pair expects two comma-separated element names, e.g. a1,a7'");
    std::string xs = spec.substr(0, comma), ys = spec.substr(comma + 1);
    auto x = L.find(xs), y = L.find(ys);
    if (!x) throw ParseError("unknown element name '" + xs + "'");
    if (!y) throw ParseError("unknown element name '" + ys + "'");
    return {*x, *y};
}

inline LatticeLines process_lattice(const RunConfig& cfg, const NumberedDiagram& nd,
                                    const Equation* eq) {
    LatticeLines out;
    const std::string key = "L" + std::to_string(nd.line);
    json rec;
    rec["lattice"] = nd.line;
    auto emit = [&](const std::string& text) { out.out.push_back(key + ": " + text); };

    try {
        if (cfg.cmd == RunConfig::Cmd::Parse) {
            // structural validation only (construction happens on demand)
            rec["status"] = "ok";
            rec["atoms"] = nd.diagram.atom_count;
            rec["blocks"] = nd.diagram.blocks.size();
            emit("ok atoms=" + std::to_string(nd.diagram.atom_count) +
                 " blocks=" + std::to_string(nd.diagram.blocks.size()));
            out.records.push_back(rec);
            return out;
        }

        Lattice L = Lattice::build(nd.diagram, !cfg.no_verify);
        switch (cfg.cmd) {
            case RunConfig::Cmd::Check: {
                CheckResult res = check_equation(L, *eq, cfg.var_cap);
                rec["assignments"] = res.assignments_tried;
                if (res.holds) {
                    rec["status"] = "holds";
                    emit("holds (assignments=" + std::to_string(res.assignments_tried) + ")");
                } else {
                    rec["status"] = "fails";
                    json w = json::object();
                    std::string wtext;
                    for (size_t i = 0; i < res.witness.size(); ++i) {
                        std::string var(1, eq->variables[i]);
                        w[var] = L.name(res.witness[i]);
                        if (i) wtext += ' ';
                        wtext += var + "=" + L.name(res.witness[i]);
                    }
                    rec["witness"] = w;
                    emit("fails (assignments=" + std::to_string(res.assignments_tried) +
                         ") witness: " + wtext);
                }
                break;
            }
            case RunConfig::Cmd::Ngo: {
                NgoScanResult res = ngo_scan(L, cfg.cutoff);
                switch (res.verdict.kind) {
                    case NGoVerdict::Kind::FailsAt:
                        rec["status"] = "fails";
                        rec["n"] = res.verdict.n;
                        emit("fails n=" + std::to_string(res.verdict.n));
                        break;
                    case NGoVerdict::Kind::PassesAll:
                        rec["status"] = "passes";
                        rec["converged"] = res.verdict.converged_at;
                        emit("passes (converged k=" + std::to_string(res.verdict.converged_at) +
                             ")");
                        break;
                    case NGoVerdict::Kind::Inconclusive:
                        rec["status"] = "inconclusive";
                        rec["cutoff"] = res.verdict.n;
                        emit("inconclusive (cutoff=" + std::to_string(res.verdict.n) + ")");
                        break;
                }
                break;
            }
            case RunConfig::Cmd::States: {
                StrongSetVerdict v = strong_state_verdict(L, cfg.all_pairs);
                if (v.kind == StrongSetVerdict::Kind::Admits) {
                    rec["status"] = "admits";
                    emit("admits");
                } else if (v.kind == StrongSetVerdict::Kind::Stateless) {
                    rec["status"] = "stateless";
                    emit("stateless");
                } else {
                    rec["status"] = "refutes";
                    rec["pair"] = {L.name(v.refute.x), L.name(v.refute.y)};
                    rec["kind"] = kind_text(v.refute.kind);
                    emit("refutes pair=(" + L.name(v.refute.x) + "," + L.name(v.refute.y) +
                         ") kind=" + kind_text(v.refute.kind));
                    if (cfg.all_pairs) {
                        json arr = json::array();
                        for (const auto& r : v.all_refuting) {
                            arr.push_back({L.name(r.x), L.name(r.y)});
                            out.err.push_back(key + ": refuting pair " + pair_text(L, r.x, r.y) +
                                              " kind=" + kind_text(r.kind));
                        }
                        rec["all_refuting"] = arr;
                    }
                }
                break;
            }
            case RunConfig::Cmd::LpDump: {
                auto [x, y] = parse_pair_names(L, cfg.pair);
                LpProblem p = pair_problem(L, x, y);
                std::string text = print_problem(p);
                rec["pair"] = {L.name(x), L.name(y)};
                rec["lp"] = text;
                out.out.push_back("# " + key + " pair=(" + L.name(x) + "," + L.name(y) + ")");
                std::istringstream is(text);
                std::string line;
                while (std::getline(is, line)) out.out.push_back(line);
                break;
            }
            case RunConfig::Cmd::Mge: {
                std::optional<std::vector<int>> order;
                if (cfg.seed_order) {
                    order.emplace(L.diagram().blocks.size());
                    std::iota(order->begin(), order->end(), 0);
                    std::mt19937 rng(*cfg.seed_order);
                    std::shuffle(order->begin(), order->end(), rng);
                }
                MgeResult r = generate_mge(L, order ? &*order : nullptr);
                rec["status"] = "mge";
                rec["pair"] = {L.name(r.x), L.name(r.y)};
                rec["kind"] = kind_text(r.kind);
                rec["weakened"] = blocks_text(L, r.weakened);
                rec["kept"] = blocks_text(L, r.kept);
                rec["condensed"] = r.condensed.text();
                rec["mge"] = print_equation(r.mge);
                json w = json::object();
                std::string wtext;
                for (size_t i = 0; i < r.witness.size(); ++i) {
                    std::string var(1, r.mge.variables[i]);
                    w[var] = L.name(r.witness[i]);
                    if (i) wtext += ' ';
                    wtext += var + "=" + L.name(r.witness[i]);
                }
                rec["witness"] = w;
                emit("mge pair=(" + L.name(r.x) + "," + L.name(r.y) +
                     ") kind=" + kind_text(r.kind));
                emit("weakened: " + blocks_text(L, r.weakened));
                emit("kept: " + blocks_text(L, r.kept));
                emit("condensed: " + r.condensed.text());
                emit("mge: " + print_equation(r.mge));
                emit("witness: " + wtext);
                if (r.condensed.has_singleton_term()) {
                    rec["singleton_terms"] = true;
                    emit("note: condensed equation contains single-atom terms");
                }
                break;
            }
            default: break;
        }
    } catch (const std::invalid_argument& ex) {
        // precondition violations are per-lattice verdicts
        rec["status"] = "error";
        rec["message"] = ex.what();
        out.out.push_back(key + ": error: " + std::string(ex.what()));
    } catch (const std::logic_error&) {
        throw;  // defects abort the run with exit code 2
    } catch (const std::exception& ex) {
        rec["status"] = "error";
        rec["message"] = ex.what();
        out.out.push_back(key + ": error: " + std::string(ex.what()));
    }
    out.records.push_back(rec);
    return out;
}

}  // namespace detail

/// Runs one subcommand over a diagram file: one verdict line per lattice on
/// `out` (JSON-lines with json_output), diagnostics on `err`. Lattices are
/// processed by a bounded worker pool; output is emitted in input order.
/// Exit status: 0 all lattices processed, 1 usage/parse error, 2 defect.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<NumberedDiagram> diagrams;
    Equation eq;
    try {
        diagrams = read_diagram_file(cfg.input_path);
        if (cfg.cmd == RunConfig::Cmd::Check) {
            if (cfg.eq_text.empty() == cfg.eq_file.empty()) {
                err << "error: check requires exactly one of --eq or --eq-file\n";
                return 1;
            }
            std::string text = cfg.eq_text;
            if (!cfg.eq_file.empty()) {
                std::ifstream in(cfg.eq_file);
                if (!in) {
                    err << "error: cannot open equation file: " << cfg.eq_file << "\n";
                    return 1;
                }
                std::string line;
                while (std::getline(in, line)) {
                    size_t b = line.find_first_not_of(" \t\r\n");
                    if (b == std::string::npos || line[b] == '#') continue;
                    text += line;
                    text += ' ';
                }
            }
            eq = parse_equation(text);
        }
        if (cfg.cmd == RunConfig::Cmd::LpDump && cfg.pair.empty()) {
            err << "error: lp-dump requires --pair X,Y\n";
            return 1;
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }

    std::vector<detail::LatticeLines> results(diagrams.size());
    std::atomic<size_t> cursor{0};
    std::atomic<bool> defect{false};
    std::string defect_what;
    std::mutex defect_mu;
    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= diagrams.size() || defect.load()) return;
            try {
                results[i] = detail::process_lattice(cfg, diagrams[i], &eq);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lk(defect_mu);
                defect = true;
                defect_what = ex.what();
                return;
            }
        }
    };
    size_t nthreads = std::min<size_t>(
        diagrams.size(), std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (defect.load()) {
        err << "internal error: " << defect_what << "\n";
        return 2;
    }

    for (const auto& r : results) {
        if (cfg.json_output) {
            for (const auto& rec : r.records) out << rec.dump() << "\n";
        } else {
            for (const auto& line : r.out) out << line << "\n";
        }
        for (const auto& line : r.err) err << line << "\n";
    }
    return 0;
}

}  // namespace omlkit
