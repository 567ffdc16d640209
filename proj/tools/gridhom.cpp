// gridhom: grid homology of MOY graphs from graph grid diagrams.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridhom/combinators.hpp"
#include "gridhom/homology.hpp"
#include "gridhom/moves.hpp"

using namespace gridhom;
using nlohmann::json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBalance = 3;
constexpr int kExitInternal = 4;
constexpr int kExitVerifyFailed = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SyntaxError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string half_a(long long a2) {
    if (a2 % 2 == 0) return std::to_string(a2 / 2);
    return std::to_string(a2) + "/2";
}

void print_poly(std::ostream& out, const PoincarePolynomial& p) {
    if (p.is_zero()) {
        out << "  (zero)\n";
        return;
    }
    for (const auto& [k, v] : p.coeffs)
        out << "  M=" << k.first << "\tA=" << half_a(k.second) << "\tdim=" << v << "\n";
    out << "  total dim " << p.total_dim() << "\n";
}

json poly_json(const PoincarePolynomial& p) {
    json arr = json::array();
    for (const auto& [k, v] : p.coeffs)
        arr.push_back({{"maslov", k.first}, {"alex2", k.second}, {"dim", v}});
    return arr;
}

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string lhs, rhs;
};

void report_checks(const std::string& theorem, const std::vector<VerifyCheck>& checks,
                   bool as_json) {
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    if (as_json) {
        json j{{"schema", 1}, {"command", "verify"}, {"theorem", theorem}, {"pass", all}};
        j["checks"] = json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
            if (!c.lhs.empty()) std::cout << "  lhs: " << c.lhs << "\n";
            if (!c.rhs.empty()) std::cout << "  rhs: " << c.rhs << "\n";
        }
        std::cout << (all ? "PASS" : "FAIL") << " " << theorem << " (" << checks.size()
                  << " checks)\n";
    }
    if (!all) std::exit(kExitVerifyFailed);
}

// Normalizes two diagrams into a good pair with the corner vertices used by
// the block constructions, padding the smaller one.
GoodPair load_good_pair(const WeightedDiagram& a, const WeightedDiagram& b) {
    int n = std::max(a.diagram.n(), b.diagram.n());
    auto d1 = pad_to_good(a, n, CornerStar::BottomRight);
    auto d2 = pad_to_good(b, n, CornerStar::TopLeft);
    return GoodPair::make(std::move(d1), std::move(d2));
}

int corner_vertex_br(const WeightedDiagram& wd) {
    for (std::size_t v = 0; v < wd.skeleton.vertices.size(); ++v) {
        const OMark& o = wd.diagram.o_marks()[wd.skeleton.vertices[v]];
        if (o.row == 0 && o.col == wd.diagram.n() - 1) return (int)v;
    }
    throw VertexNotAtCorner("no vertex at the bottom-right corner");
}

int cmd_compute(const std::string& path, bool tilde, bool euler, bool raw, bool as_json,
                bool check_oracle, int threads) {
    auto wd = read_weighted_diagram(read_file(path));
    auto cx = tilde_complex(wd, threads);
    auto tilde_h = homology(cx, threads);
    if (check_oracle && oracle_homology(wd) != tilde_h)
        throw InternalError("main pipeline disagrees with the dense oracle");
    auto weights = wd.plain_o_weights();
    auto hat = hat_from_tilde(tilde_h, weights);
    if (!raw) {
        hat = normalize_ashift(hat);
        tilde_h = normalize_ashift(tilde_h);
    }
    std::string chi = laurent_to_string(euler_characteristic_chain(cx));
    if (as_json) {
        json j{{"schema", 1},
               {"command", "compute"},
               {"input", path},
               {"n", wd.diagram.n()},
               {"vertices", wd.skeleton.vertices.size()},
               {"edges", wd.skeleton.edges.size()},
               {"normalized", !raw},
               {"hat", poly_json(hat)},
               {"euler", chi}};
        if (tilde) j["tilde"] = poly_json(tilde_h);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "input: " << path << "\n";
    std::cout << "n=" << wd.diagram.n() << "  vertices=" << wd.skeleton.vertices.size()
              << "  edges=" << wd.skeleton.edges.size() << "\n";
    std::cout << "hat homology" << (raw ? " (raw gradings)" : " (A-shift normalized)") << ":\n";
    print_poly(std::cout, hat);
    if (tilde) {
        std::cout << "tilde homology:\n";
        print_poly(std::cout, tilde_h);
    }
    if (euler) std::cout << "euler characteristic: " << chi << "\n";
    return 0;
}

int cmd_trace(const std::string& path, bool as_json) {
    auto wd = read_weighted_diagram(read_file(path));
    const auto& sk = wd.skeleton;
    const auto& os = wd.diagram.o_marks();
    if (as_json) {
        json j{{"schema", 1}, {"command", "trace"}, {"input", path}, {"n", wd.diagram.n()}};
        j["vertices"] = json::array();
        for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
            const OMark& o = os[sk.vertices[v]];
            j["vertices"].push_back({{"row", o.row},
                                     {"col", o.col},
                                     {"weight", wd.vertex_weight((int)v)},
                                     {"out", sk.out_edges[v]},
                                     {"in", sk.in_edges[v]}});
        }
        j["edges"] = json::array();
        for (std::size_t e = 0; e < sk.edges.size(); ++e)
            j["edges"].push_back({{"from", sk.edges[e].from},
                                  {"to", sk.edges[e].to},
                                  {"weight", wd.edge_weights[e]},
                                  {"interior_x", sk.edges[e].xs.size()},
                                  {"interior_o", sk.edges[e].os.size()}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "input: " << path << "\n";
    std::cout << sk.vertices.size() << " vertices, " << sk.edges.size()
              << " edges (weight entry order below)\n";
    for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
        const OMark& o = os[sk.vertices[v]];
        long long in = 0, out = 0;
        for (int e : sk.in_edges[v]) in += wd.edge_weights[e];
        for (int e : sk.out_edges[v]) out += wd.edge_weights[e];
        std::cout << "vertex " << v << " at (" << o.row << "," << o.col << ")  in-sum=" << in
                  << " out-sum=" << out << "\n";
    }
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        std::cout << "edge " << e << ": v" << sk.edges[e].from << " -> v" << sk.edges[e].to
                  << "  weight=" << wd.edge_weights[e] << "  interior: " << sk.edges[e].xs.size()
                  << " X, " << sk.edges[e].os.size() << " O\n";
    }
    return 0;
}

int cmd_moves(const std::string& path, const std::string& log_path, const std::string& out_path) {
    auto wd = read_weighted_diagram(read_file(path));
    auto log = moves_from_json(read_file(log_path));
    for (std::size_t i = 0; i < log.size(); ++i) {
        try {
            wd = apply_move(wd, log[i]);
        } catch (const Error& e) {
            throw IllegalMove("step " + std::to_string(i) + ": " + e.what());
        }
    }
    std::string text = serialize(wd.diagram, &wd.edge_weights);
    if (out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw SyntaxError("cannot write '" + out_path + "'");
        out << text;
    }
    return 0;
}

int cmd_verify(const std::string& theorem, const std::vector<std::string>& files,
               std::uint64_t seed, int walks, int steps, int nmax, bool as_json, int threads) {
    std::vector<VerifyCheck> checks;
    auto load = [&](const std::string& p) { return read_weighted_diagram(read_file(p)); };

    if (theorem == "cut-edge" || theorem == "sink-source") {
        if (files.empty()) throw SyntaxError("verify " + theorem + " needs diagram files");
        for (const auto& f : files) {
            auto wd = load(f);
            if (theorem == "sink-source" && !wd.skeleton.has_sink_or_source())
                throw ValidationError(f + ": traced graph has no sink or source");
            auto hat = hat_homology(wd, threads);
            checks.push_back({f + " hat=0", hat.is_zero(), hat.to_string(), "0"});
        }
    } else if (theorem == "wedge" || theorem == "connected-sum" || theorem == "disjoint") {
        if (files.size() != 2) throw SyntaxError("verify " + theorem + " needs two diagram files");
        auto a = load(files[0]), b = load(files[1]);
        auto ha = hat_homology(a, threads), hb = hat_homology(b, threads);
        PoincarePolynomial got, want;
        if (theorem == "wedge") {
            got = hat_homology(wedge(load_good_pair(a, b)), threads);
            want = tensor(ha, hb);
        } else if (theorem == "connected-sum") {
            auto gp = load_good_pair(a, b);
            long long w = gp.d1.vertex_weight(corner_vertex_br(gp.d1));
            got = hat_homology(connected_sum(gp), threads);
            want = tensor_w(tensor(ha, hb), w);
        } else {
            got = hat_homology(disjoint_union(a, b), threads);
            want = tensor_w(tensor(ha, hb), 0);
        }
        checks.push_back({theorem + "(" + files[0] + ", " + files[1] + ")",
                          equal_up_to_ashift(got, want), normalize_ashift(got).to_string(),
                          normalize_ashift(want).to_string()});
    } else if (theorem == "kunneth") {
        if (files.size() != 2) throw SyntaxError("verify kunneth needs two knot files");
        auto a = load(files[0]), b = load(files[1]);
        if (a.skeleton.vertices.size() != 1 || b.skeleton.vertices.size() != 1)
            throw ValidationError("kunneth expects one-vertex knot diagrams");
        auto ha = hat_homology(a, threads), hb = hat_homology(b, threads);
        auto got = hat_homology(splice_vertices(a, 0, b, 0), threads);
        auto product = tensor(ha, hb);
        auto want = tensor_w(product, a.vertex_weight(0));
        checks.push_back({"product dim = " + std::to_string(ha.total_dim()) + "*" +
                              std::to_string(hb.total_dim()),
                          product.total_dim() == ha.total_dim() * hb.total_dim(),
                          std::to_string(product.total_dim()), ""});
        checks.push_back({"connected sum = product x W(" + std::to_string(a.vertex_weight(0)) + ")",
                          equal_up_to_ashift(got, want), normalize_ashift(got).to_string(),
                          normalize_ashift(want).to_string()});
    } else if (theorem == "cn-acyclic") {
        for (int n = 2; n <= nmax; ++n) {
            auto h = homology(cn_complex(build_cn_fixture(n), threads), threads);
            checks.push_back({"H(C_" + std::to_string(n) + ")=0", h.is_zero(), h.to_string(), "0"});
        }
    } else if (theorem == "move-invariance") {
        if (files.size() != 1) throw SyntaxError("verify move-invariance needs one diagram file");
        auto wd = load(files[0]);
        auto base = normalize_ashift(hat_homology(wd, threads));
        for (int w = 0; w < walks; ++w) {
            auto r = random_move_walk(wd, steps, seed + w, nmax);
            auto got = normalize_ashift(hat_homology(r.diagram, threads));
            checks.push_back({"walk " + std::to_string(w) + " (" + std::to_string(r.log.size()) +
                                  " moves, n=" + std::to_string(r.diagram.diagram.n()) + ")",
                              got == base, got.to_string(), base.to_string()});
        }
    } else {
        throw SyntaxError("unknown theorem '" + theorem + "'");
    }
    report_checks(theorem, checks, as_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid homology of MOY graphs from graph grid diagrams"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores, or GRIDHOM_THREADS)");

    auto* compute = app.add_subcommand("compute", "compute hat/tilde homology of a diagram file");
    std::string c_path;
    bool c_hat = false, c_tilde = false, c_euler = false, c_raw = false, c_json = false,
         c_oracle = false;
    compute->add_option("file", c_path)->required();
    compute->add_flag("--hat", c_hat, "print the hat homology (the default)");
    compute->add_flag("--tilde", c_tilde, "also print the tilde homology");
    compute->add_flag("--euler", c_euler, "print the graded Euler characteristic");
    compute->add_flag("--raw", c_raw, "skip the Alexander-shift normalization");
    compute->add_flag("--json", c_json, "emit a JSON report");
    compute->add_flag("--check-oracle", c_oracle, "cross-check against the dense oracle (n <= 7)");

    auto* verify = app.add_subcommand("verify", "verify a structural theorem numerically");
    std::string v_theorem;
    std::vector<std::string> v_files;
    std::uint64_t v_seed = 1;
    int v_walks = 5, v_steps = 20, v_nmax = 6;
    bool v_json = false;
    verify
        ->add_option("theorem", v_theorem,
                     "one of: cut-edge sink-source wedge connected-sum disjoint kunneth "
                     "cn-acyclic move-invariance")
        ->required();
    verify->add_option("files", v_files, "input diagram files");
    verify->add_option("--seed", v_seed, "random seed for walks");
    verify->add_option("--walks", v_walks, "number of random walks");
    verify->add_option("--steps", v_steps, "moves per walk");
    verify->add_option("--n-max", v_nmax, "size cap (walks) or largest fixture (cn-acyclic)");
    verify->add_flag("--json", v_json, "emit a JSON report");

    auto* trace = app.add_subcommand("trace", "print vertices, edges and the weight entry order");
    std::string t_path;
    bool t_json = false;
    trace->add_option("file", t_path)->required();
    trace->add_flag("--json", t_json, "emit a JSON report");

    auto* moves = app.add_subcommand("moves", "apply a JSON move log to a diagram");
    std::string m_path, m_log, m_out = "-";
    moves->add_option("file", m_path)->required();
    moves->add_option("--log", m_log, "JSON move log")->required();
    moves->add_option("-o,--output", m_out, "output file ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        int rc = 0;
        if (*compute) rc = cmd_compute(c_path, c_tilde, c_euler, c_raw, c_json, c_oracle, threads);
        (void)c_hat;  // hat output is on in every mode
        if (*verify) rc = cmd_verify(v_theorem, v_files, v_seed, v_walks, v_steps, v_nmax, v_json, threads);
        if (*trace) rc = cmd_trace(t_path, t_json);
        if (*moves) rc = cmd_moves(m_path, m_log, m_out);
        auto t1 = std::chrono::steady_clock::now();
        std::cerr << "elapsed: "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " ms\n";
        return rc;
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BalanceError& e) {
        std::cerr << "balance error: " << e.what() << "\n";
        return kExitBalance;
    } catch (const WeightMismatch& e) {
        std::cerr << "balance error: " << e.what() << "\n";
        return kExitBalance;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const TraceError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const TooLarge& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NotGood& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const VertexNotAtCorner& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IllegalMove& e) {
        std::cerr << "illegal move: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PatternNotFound& e) {
        std::cerr << "illegal move: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
