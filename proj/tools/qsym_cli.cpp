// qsym: exact certification of (absence of) quantum symmetry for finite
// graphs, plus the combinatorial checks around the affine polar families.
//
// Exit codes: 0 success / certificate valid; 2 flip not in span at the given
// budget; 3 budget exhausted or interrupted (resumable checkpoint written);
// 1 usage error or invalid certificate.

#include "qsym/qsym.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace qsym;

namespace {

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

struct GraphSpec {
    std::string family;
    int n = 0, m = 0, q = 0, k = 0;
    std::string graph6_path;
    bool take_complement = false;
};

Graph load_graph6_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open graph6 file: " + path);
    std::string line;
    std::getline(in, line);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return parse_graph6(line);
}

Graph build_graph(const GraphSpec& spec) {
    Graph g;
    if (!spec.graph6_path.empty()) {
        g = load_graph6_file(spec.graph6_path);
    } else if (spec.family == "pentagon") {
        g = pentagon_graph();
    } else if (spec.family == "complete") {
        g = complete_graph(spec.n);
    } else if (spec.family == "union") {
        g = disjoint_union_complete(spec.m, spec.n);
    } else if (spec.family == "hamming") {
        g = hamming_graph(spec.m);
    } else if (spec.family == "cycle") {
        g = cycle_graph(spec.n);
    } else if (spec.family == "o6minus") {
        g = build_orthogonal_polar(spec.q);
    } else if (spec.family == "voplus") {
        g = build_affine_polar(Sign::plus, spec.k);
    } else if (spec.family == "vominus") {
        g = build_affine_polar(Sign::minus, spec.k);
    } else {
        throw Error("unknown or missing graph family '" + spec.family + "'");
    }
    if (spec.take_complement) g = complement(g);
    if (!g.is_valid_simple()) throw Error("constructed graph is not simple/symmetric");
    return g;
}

void add_graph_flags(CLI::App* cmd, GraphSpec& spec) {
    cmd->add_option("--family", spec.family,
                    "graph family: pentagon|complete|union|hamming|cycle|o6minus|voplus|vominus");
    cmd->add_option("--n", spec.n, "vertex/order parameter");
    cmd->add_option("--m", spec.m, "second parameter (union copies, hamming side)");
    cmd->add_option("--q", spec.q, "prime field size for o6minus");
    cmd->add_option("--k", spec.k, "pair count for voplus/vominus, tuple arity for orbits");
    cmd->add_option("--graph6", spec.graph6_path, "path to a graph6 file to ingest");
    cmd->add_flag("--complement", spec.take_complement, "use the complement of the graph");
}

/// Flat key=value config file; command-line flags win. Environment only for
/// cache dir and thread count.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("config line without '=': " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("QSYM_CACHE_DIR")) return env;
    return "";
}

int run(int argc, char** argv) {
    CLI::App app{"exact quantum-symmetry certification for finite graphs"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file (flags win)");

    // graph build | info
    auto* graph_cmd = app.add_subcommand("graph", "construct or inspect graphs");
    graph_cmd->require_subcommand(1);
    GraphSpec build_spec;
    std::string build_out, build_json;
    auto* graph_build = graph_cmd->add_subcommand("build", "construct a graph, emit graph6");
    add_graph_flags(graph_build, build_spec);
    graph_build->add_option("--out", build_out, "write graph6 to this file (default stdout)");
    graph_build->add_option("--json", build_json, "also write adjacency-list JSON here");
    GraphSpec info_spec;
    auto* graph_info = graph_cmd->add_subcommand("info", "print order, degrees, hash");
    add_graph_flags(graph_info, info_spec);

    // srg
    GraphSpec srg_spec;
    auto* srg_cmd = app.add_subcommand("srg", "verify strong regularity, print (v,k,lambda,mu)");
    add_graph_flags(srg_cmd, srg_spec);

    // qparams
    GraphSpec qp_spec;
    auto* qp_cmd = app.add_subcommand("qparams", "3-point parameters (q0,q1,q2,q3)");
    add_graph_flags(qp_cmd, qp_spec);

    // orbits
    GraphSpec orb_spec;
    int orb_k = 4;
    std::string orb_cache;
    auto* orb_cmd = app.add_subcommand("orbits", "count Aut(X)-orbits on vertex k-tuples");
    add_graph_flags(orb_cmd, orb_spec);
    orb_cmd->add_option("--tuple-k", orb_k, "tuple arity, 1..4 (default 4)");
    orb_cmd->add_option("--cache-dir", orb_cache, "orbit cache directory");

    // diagrams
    int dia_internal = 1;
    long dia_edges = 6;
    auto* dia_cmd = app.add_subcommand("diagrams", "list the 4-box diagram catalog");
    dia_cmd->add_option("--max-internal", dia_internal, "internal vertex budget");
    dia_cmd->add_option("--max-edges", dia_edges, "edge budget");

    // table
    GraphSpec tbl_spec;
    std::string tbl_out, tbl_json, tbl_cache;
    auto* tbl_cmd = app.add_subcommand("table", "build the 4-box multiplicity table");
    add_graph_flags(tbl_cmd, tbl_spec);
    tbl_cmd->add_option("--out", tbl_out, "table file (default <cache>/table-<hash>.bin)");
    tbl_cmd->add_option("--json", tbl_json, "also export JSON here");
    tbl_cmd->add_option("--cache-dir", tbl_cache, "cache directory");

    // certify
    GraphSpec cert_spec;
    CertifyOptions cert_opt;
    std::string cert_out = "certificate.json";
    std::string cert_cache;
    long wall_secs = -1;
    bool to_saturation = false;
    auto* cert_cmd = app.add_subcommand("certify", "search for a flip certificate");
    add_graph_flags(cert_cmd, cert_spec);
    cert_cmd->add_option("--out", cert_out, "certificate output path");
    cert_cmd->add_option("--max-internal", cert_opt.max_internal, "diagram internal-vertex budget");
    cert_cmd->add_option("--max-edges", cert_opt.max_edges, "diagram edge budget");
    cert_cmd->add_option("--max-products", cert_opt.max_products, "product candidate budget");
    cert_cmd->add_option("--wall-clock", wall_secs, "wall-clock budget in seconds");
    cert_cmd->add_option("--cache-dir", cert_cache, "cache + checkpoint directory");
    cert_cmd->add_option("--threads", cert_opt.threads, "worker threads");
    cert_cmd->add_flag("--saturate", to_saturation, "keep going until rank = omega_4");

    // verify
    GraphSpec ver_spec;
    std::string ver_cert;
    int ver_threads = default_thread_count();
    auto* ver_cmd = app.add_subcommand("verify", "re-verify a certificate from scratch");
    add_graph_flags(ver_cmd, ver_spec);
    ver_cmd->add_option("--cert", ver_cert, "certificate JSON path")->required();
    ver_cmd->add_option("--threads", ver_threads, "worker threads");

    // recursion
    int rec_k = 4;
    auto* rec_cmd = app.add_subcommand("recursion", "check the Cayley-set recursions up to k");
    rec_cmd->add_option("--k", rec_k, "check levels 1..k (default 4)");

    // qgraph-check
    int qg_k = 2;
    auto* qg_cmd = app.add_subcommand("qgraph-check", "quantum-graph layer checks, JSON report");
    qg_cmd->add_option("--k", qg_k, "largest k for the matrix checks (<= 2 recursion, <= 3 Schur)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        auto config = read_config(config_path);
        auto cfg = [&](const std::string& key, const std::string& fallback) {
            auto it = config.find(key);
            return it == config.end() ? fallback : it->second;
        };

        if (graph_build->parsed()) {
            Graph g = build_graph(build_spec);
            std::string enc = emit_graph6(g);
            if (build_out.empty()) {
                std::cout << enc << "\n";
            } else {
                std::ofstream f(build_out, std::ios::binary);
                f << enc << "\n";
            }
            if (!build_json.empty()) {
                std::ofstream f(build_json);
                f << g.to_adjacency_json().dump(1) << "\n";
            }
            return 0;
        }
        if (graph_info->parsed()) {
            Graph g = build_graph(info_spec);
            int deg = -1;
            bool reg = g.is_regular(&deg);
            std::cout << "n: " << g.n() << "\nedges: " << g.edge_count() << "\nregular: "
                      << (reg ? std::to_string(deg) : std::string("no")) << "\nconnected: "
                      << (g.is_connected() ? "yes" : "no") << "\nprovenance: " << g.provenance()
                      << "\nsha256: " << g.sha256() << "\n";
            return 0;
        }
        if (srg_cmd->parsed()) {
            Graph g = build_graph(srg_spec);
            try {
                auto p = verify_srg(g);
                std::cout << "SRG(" << p.v << "," << p.k << "," << p.lambda << "," << p.mu << ")\n";
                return 0;
            } catch (const NotStronglyRegular& e) {
                std::cout << "not strongly regular: " << e.what() << " (witness " << e.u << "," << e.v
                          << ")\n";
                return 1;
            }
        }
        if (qp_cmd->parsed()) {
            Graph g = build_graph(qp_spec);
            try {
                auto p = three_point_parameters(g);
                std::cout << "(q0,q1,q2,q3) = (";
                for (int i = 0; i < 4; ++i)
                    std::cout << (p.q[i] ? std::to_string(*p.q[i]) : std::string("unrealizable"))
                              << (i < 3 ? "," : ")\n");
                return 0;
            } catch (const NotThreePointRegular& e) {
                std::cout << "not 3-point regular: " << e.what() << "\n";
                return 1;
            }
        }
        if (orb_cmd->parsed()) {
            Graph g = build_graph(orb_spec);
            PermGroup aut = automorphism_group(g);
            std::string cache = orb_cache.empty() ? cfg("cache_dir", default_cache_dir()) : orb_cache;
            OrbitIndex oi;
            bool loaded = false;
            std::string path;
            if (!cache.empty()) {
                std::filesystem::create_directories(cache);
                path = cache + "/orbits-" + g.sha256().substr(0, 12) + "-k" + std::to_string(orb_k) + ".json";
                try {
                    oi = OrbitIndex::load(path, g);
                    loaded = true;
                } catch (...) {
                }
            }
            if (!loaded) {
                oi = OrbitIndex::build(g, aut, orb_k);
                if (!path.empty()) oi.save(path);
            }
            std::cerr << "group order: " << aut.order().get_str() << "\n";
            std::cout << oi.orbit_count() << "\n";
            return 0;
        }
        if (dia_cmd->parsed()) {
            DiagramEnumerator en(4, dia_internal, dia_edges);
            long count = 0;
            while (auto d = en.next()) {
                std::cout << encode_diagram(*d) << "\n";
                ++count;
            }
            std::cerr << count << " diagrams\n";
            return 0;
        }
        if (tbl_cmd->parsed()) {
            Graph g = build_graph(tbl_spec);
            std::string cache = tbl_cache.empty() ? cfg("cache_dir", default_cache_dir()) : tbl_cache;
            if (cache.empty()) cache = ".";
            std::filesystem::create_directories(cache);
            PermGroup aut = automorphism_group(g);
            OrbitIndex oi = OrbitIndex::build(g, aut, 4);
            std::signal(SIGINT, handle_sigint);
            std::string out = tbl_out.empty() ? cache + "/table-" + g.sha256().substr(0, 12) + ".bin" : tbl_out;
            MultiplicityTable t = build_multiplicity_table_resumable(
                g, oi, out, default_thread_count(), [] { return g_interrupted.load(); });
            std::cerr << "table: " << t.orbit_count << " rows -> " << out << "\n";
            if (!tbl_json.empty()) {
                std::ofstream f(tbl_json);
                f << multiplicity_table_to_json(t).dump(1) << "\n";
            }
            return 0;
        }
        if (cert_cmd->parsed()) {
            Graph g = build_graph(cert_spec);
            cert_opt.cache_dir = cert_cache.empty() ? cfg("cache_dir", default_cache_dir()) : cert_cache;
            if (const char* env = std::getenv("QSYM_THREADS")) cert_opt.threads = std::atoi(env);
            if (cert_opt.threads <= 0) cert_opt.threads = default_thread_count();
            if (wall_secs >= 0) cert_opt.wall_clock_ms = wall_secs * 1000;
            cert_opt.run_to_saturation = to_saturation;
            cert_opt.progress = &std::cerr;
            cert_opt.interrupted = [] { return g_interrupted.load(); };
            std::signal(SIGINT, handle_sigint);
            auto out = certify_no_quantum_symmetry(g, cert_opt);
            std::cerr << "rank " << out.rank << "/" << out.omega4 << ", " << out.accepted
                      << " elements from " << out.candidates << " candidates\n";
            switch (out.status) {
                case CertifyStatus::found: {
                    std::ofstream f(cert_out);
                    f << certificate_to_json(*out.certificate).dump(1) << "\n";
                    std::cerr << "certificate -> " << cert_out << "\n";
                    return 0;
                }
                case CertifyStatus::not_in_span_at_budget:
                    std::cerr << "flip not in span at this budget\n";
                    return 2;
                case CertifyStatus::budget_exceeded:
                    std::cerr << "budget exhausted; resumable checkpoint: " << out.checkpoint_path
                              << "\n";
                    return 3;
            }
            return 1;
        }
        if (ver_cmd->parsed()) {
            Graph g = build_graph(ver_spec);
            std::ifstream f(ver_cert);
            if (!f) throw Error("cannot open certificate: " + ver_cert);
            nlohmann::json j;
            f >> j;
            Certificate cert = certificate_from_json(j);
            auto vr = verify_certificate(g, cert, ver_threads);
            if (vr.valid) {
                std::cout << "valid: " << vr.message << "\n";
                return 0;
            }
            std::cout << "INVALID: " << vr.message;
            if (vr.witness_orbit >= 0) std::cout << " (witness orbit " << vr.witness_orbit << ")";
            std::cout << "\n";
            return 1;
        }
        if (rec_cmd->parsed()) {
            bool all = true;
            for (int k = 1; k <= rec_k; ++k) {
                auto rep = cayley_recursion_check(k);
                std::cout << "k=" << k << ": " << (rep.pass ? "pass" : "FAIL") << " " << rep.detail
                          << "\n";
                all = all && rep.pass;
            }
            return all ? 0 : 1;
        }
        if (qg_cmd->parsed()) {
            nlohmann::ordered_json rep;
            rep["weyl_relations_k2_exhaustive"] = [&] {
                WeylSystem w = build_weyl_system(2);
                for (uint32_t a = 0; a < 16; ++a)
                    for (uint32_t b = 0; b < 16; ++b)
                        if (!check_weyl_relation(w, a, b)) return false;
                return true;
            }();
            auto schur = nlohmann::ordered_json::object();
            for (int k = 1; k <= std::min(qg_k + 1, 3); ++k) {
                schur["k" + std::to_string(k) + "+"] = check_idempotent_schur(quantum_adjacency(k, Sign::plus));
                schur["k" + std::to_string(k) + "-"] = check_idempotent_schur(quantum_adjacency(k, Sign::minus));
            }
            rep["idempotent_schur"] = schur;
            auto recur = nlohmann::ordered_json::object();
            for (int k = 1; k <= std::min(qg_k, 2); ++k)
                recur["k" + std::to_string(k)] = adjacency_recursion_check(k);
            rep["adjacency_recursion"] = recur;
            auto dims = nlohmann::ordered_json::object();
            bool dims_ok = true;
            for (int k = 1; k <= 4; ++k) {
                long s = space_dimension(k, Sign::plus), a = space_dimension(k, Sign::minus);
                dims["k" + std::to_string(k)] = {{"dim_S_s", s},
                                                 {"Yh", cayley_Yh(k).members.size()},
                                                 {"dim_S_a", a},
                                                 {"Ye", cayley_Ye(k).members.size()}};
                dims_ok = dims_ok && s == long(cayley_Yh(k).members.size()) &&
                          a == long(cayley_Ye(k).members.size());
            }
            rep["space_dimensions"] = dims;
            auto spaces = nlohmann::ordered_json::object();
            for (int k = 1; k <= std::min(qg_k + 1, 3); ++k)
                spaces["k" + std::to_string(k)] = symmetric_space_recursion_check(k);
            rep["space_recursion"] = spaces;
            std::cout << rep.dump(1) << "\n";
            bool all = rep["weyl_relations_k2_exhaustive"].get<bool>() && dims_ok;
            for (auto& [k, v] : rep["idempotent_schur"].items()) all = all && v.get<bool>();
            for (auto& [k, v] : rep["adjacency_recursion"].items()) all = all && v.get<bool>();
            for (auto& [k, v] : rep["space_recursion"].items()) all = all && v.get<bool>();
            return all ? 0 : 1;
        }
        return 1;
    } catch (const ResourceBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
