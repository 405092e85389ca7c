// Command-line front end: catalog construction, degree certificates, theorem
// verification, and Cabello-inequality tooling.
//
// Exit codes: 0 success (degree: certificate exact); 1 usage error;
// 2 unknown target or unreadable input; 3 certificate not exact;
// 4 verification failure; 5 internal invariant violation.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hexatlas/io.hpp"
#include "hexatlas/targets.hpp"
#include "hexatlas/verify.hpp"

namespace {

using namespace hexatlas;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInexact = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitInternal = 5;

struct GlobalOpts {
    std::string out_dir;
    std::uint64_t seed = 1;
    std::int64_t budget = 200000;
    int rank_limit = 30;
    std::string format = "json";
};

fs::path resolve_out_dir(const GlobalOpts& g) {
    if (!g.out_dir.empty()) return g.out_dir;
    if (const char* env = std::getenv("HEXATLAS_OUT")) return env;
    return "out";
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

io::RunManifest make_manifest(const std::string& command,
                              const std::vector<std::string>& params,
                              std::uint64_t seed) {
    io::RunManifest m;
    m.command = command;
    m.parameters = params;
    m.seed = seed;
    return m;
}

void finish_run(io::RunManifest m, const fs::path& out, const Timer& t) {
    m.wall_ms = t.ms();
    const std::string text = io::manifest_json(m);
    fs::create_directories(out);
    std::ofstream f(out / "manifest.json", std::ios::binary);
    f << text;
}

// lines-file: one context per non-empty, non-# line, observables separated
// by spaces or commas
Configuration config_from_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path.string());
    std::vector<Context> ctxs;
    std::string line;
    while (std::getline(f, line)) {
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        Context ctx;
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            ctx.obs.push_back(Observable::parse(tok));
        }
        if (!ctx.obs.empty()) ctxs.push_back(ctx);
    }
    if (ctxs.empty()) throw std::invalid_argument("no contexts in " + path.string());
    return build_configuration(ctxs, path.filename().string());
}

ResolvedTarget resolve_any(const std::string& name) {
    if (name.find('/') != std::string::npos || name.find('.') != std::string::npos ||
        fs::exists(name)) {
        ResolvedTarget t;
        t.name = name;
        t.config = config_from_file(name);
        return t;
    }
    return resolve_target(name, default_bundle());
}

int matched_hexagon(const ResolvedTarget& t, const DegreeCertificate& cert,
                    std::vector<LineId>& violated_lines_out) {
    if (t.space == nullptr || t.config.source_lines.empty()) return -1;
    for (auto r : cert.violated)
        violated_lines_out.push_back(t.config.source_lines[r]);
    std::sort(violated_lines_out.begin(), violated_lines_out.end());
    const auto& b = default_bundle();
    if (t.space != &b.w3) return -1;
    for (std::size_t i = 0; i < b.hexagons.classical().size(); ++i) {
        const auto& h = b.hexagons.classical()[i];
        LineSet shared;
        std::set_intersection(h.lines.begin(), h.lines.end(), t.config.source_lines.begin(),
                              t.config.source_lines.end(), std::back_inserter(shared));
        if (shared == violated_lines_out) return static_cast<int>(i);
    }
    return -1;
}

int cmd_space(int n, const GlobalOpts& g) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("space catalogs are built for 2 <= n <= 4");
    Timer timer;
    auto m = make_manifest("space", {std::to_string(n)}, g.seed);
    const fs::path out = resolve_out_dir(g);
    const SymplecticSpace w = SymplecticSpace::build(n);
    io::write_output(m, out, "points.csv", io::points_csv(w));
    io::write_output(m, out, "lines.csv", io::lines_csv(w));
    if (n == 3) {
        io::write_output(m, out, "planes.csv", io::planes_csv(w));
        const auto& b = default_bundle();
        const auto all = b.all_doilies();
        io::write_output(m, out, "doilies.csv", io::doilies_csv(w, all));
        io::write_output(m, out, "doilies.json", io::doilies_provenance_json(w, all));
        const auto quads = all_quadrics(w);
        io::write_output(m, out, "quadrics.csv", io::quadrics_csv(quads));
    }
    io::write_output(m, out, "summary.json", io::space_summary_json(w));
    std::cout << io::space_summary_json(w);
    finish_run(std::move(m), out, timer);
    return kExitOk;
}

int cmd_degree(const std::string& target, const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("degree", {target}, g.seed);
    const fs::path out = resolve_out_dir(g);
    ResolvedTarget t = resolve_any(target);
    t.certify.rank_limit = g.rank_limit;
    t.certify.seed = g.seed;
    t.certify.budget = g.budget;
    const DegreeCertificate cert = certify_degree(t.config, t.certify);
    std::vector<LineId> vlines;
    const int hex = matched_hexagon(t, cert, vlines);
    const std::string text = io::certificate_json(cert, vlines, hex);
    io::write_output(m, out, "certificate.json", text);
    if (g.format == "csv")
        std::cout << "config,upper,lower,exact\n"
                  << cert.config_id << ',' << cert.upper << ',' << cert.lower << ','
                  << (cert.exact ? 1 : 0) << "\n";
    else
        std::cout << text;
    finish_run(std::move(m), out, timer);
    return cert.exact ? kExitOk : kExitInexact;
}

int cmd_verify(const std::string& suite, const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("verify", {suite}, g.seed);
    const fs::path out = resolve_out_dir(g);
    const auto report = verify::run_suite(suite, default_bundle());
    std::ostringstream text;
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << report.suite << "/" << c.name
                  << ": " << c.detail << "\n";
        text << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
    io::write_output(m, out, "verify_" + suite + ".txt", text.str());
    io::write_output(m, out, "verify_" + suite + ".json", verify::report_json(report));
    io::write_output(m, out, "verify_" + suite + ".csv", verify::report_csv(report));
    finish_run(std::move(m), out, timer);
    return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int resolve_degree_for_bounds(const ResolvedTarget& t, int supplied, const GlobalOpts& g) {
    if (supplied >= 0) return supplied;
    CertifyOptions opt = t.certify;
    opt.rank_limit = g.rank_limit;
    opt.seed = g.seed;
    opt.budget = g.budget;
    const auto cert = certify_degree(t.config, opt);
    if (!cert.exact)
        throw std::invalid_argument(
            "degree of " + t.name + " is not certified exactly; pass --degree");
    return cert.upper;
}

int cmd_cabello_emit(const std::string& target, const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("cabello emit", {target}, g.seed);
    const fs::path out = resolve_out_dir(g);
    ResolvedTarget t = resolve_any(target);
    std::string cfg = t.name;
    for (char& ch : cfg)
        if (ch == ':' || ch == '/') ch = '_';
    for (int r = 0; r < t.config.num_contexts(); ++r) {
        std::vector<Observable> ctx;
        for (auto j : t.config.rows[static_cast<std::size_t>(r)])
            ctx.push_back(t.config.points[j]);
        const long line_id = t.config.source_lines.empty()
                                 ? r
                                 : t.config.source_lines[static_cast<std::size_t>(r)];
        io::write_output(m, out, cfg + "_" + std::to_string(line_id) + ".qasm",
                         emit_qasm(build_context_circuit(ctx)));
    }
    std::cout << "wrote " << t.config.num_contexts() << " circuits to " << out << "\n";
    finish_run(std::move(m), out, timer);
    return kExitOk;
}

State parse_state(const std::string& bits, int n) {
    if (bits.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("--state must have one bit per data qubit");
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const char ch = bits[static_cast<std::size_t>(i)];
        if (ch != '0' && ch != '1') throw std::invalid_argument("--state must be bits");
        if (ch == '1') idx |= 1ull << i;  // leftmost bit = data qubit 1 = wire q[0]
    }
    return basis_state(n, idx);
}

int cmd_cabello_simulate(const std::string& target, bool exact, int shots,
                         const std::string& state_bits, int degree,
                         const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("cabello simulate", {target}, g.seed);
    const fs::path out = resolve_out_dir(g);
    ResolvedTarget t = resolve_any(target);
    const int d = resolve_degree_for_bounds(t, degree, g);
    SimulateOptions opt;
    opt.exact = exact;
    opt.shots = shots;
    opt.seed = g.seed;
    if (!state_bits.empty()) {
        int n = 0;
        for (const auto& o : t.config.points) n = std::max(n, o.qubits());
        opt.initial_data = parse_state(state_bits, n);
    }
    const auto rep = estimate_chi(t.config, d, opt);
    io::write_output(m, out, "report.json", io::cabello_report_json(rep));
    io::write_output(m, out, "report.csv", io::cabello_report_csv(rep));
    if (g.format == "csv")
        std::cout << io::cabello_report_csv(rep);
    else
        std::cout << "chi = " << rep.chi << "  N = " << rep.qm_bound
                  << "  HV = " << rep.hv_bound << "\n";
    finish_run(std::move(m), out, timer);
    return kExitOk;
}

int cmd_cabello_score(const std::string& target, const std::string& counts_dir,
                      int degree, const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("cabello score", {target, counts_dir}, g.seed);
    const fs::path out = resolve_out_dir(g);
    ResolvedTarget t = resolve_any(target);
    const int d = resolve_degree_for_bounds(t, degree, g);
    // one histogram per context, keyed by line id
    std::map<long, CountsHistogram> by_line;
    for (const auto& entry : fs::directory_iterator(counts_dir)) {
        if (entry.path().extension() != ".json") continue;
        const auto file = io::parse_counts_json(io::read_file(entry.path()));
        by_line[file.line_id] = file.counts;
    }
    std::vector<CountsHistogram> counts;
    for (int r = 0; r < t.config.num_contexts(); ++r) {
        const long line_id = t.config.source_lines.empty()
                                 ? r
                                 : t.config.source_lines[static_cast<std::size_t>(r)];
        const auto it = by_line.find(line_id);
        if (it == by_line.end())
            throw std::invalid_argument("missing counts for context/line " +
                                        std::to_string(line_id));
        counts.push_back(it->second);
    }
    const auto rep = score_counts(t.config, d, counts);
    io::write_output(m, out, "report.json", io::cabello_report_json(rep));
    io::write_output(m, out, "report.csv", io::cabello_report_csv(rep));
    if (g.format == "csv")
        std::cout << io::cabello_report_csv(rep);
    else
        std::cout << "chi = " << rep.chi << "  N = " << rep.qm_bound
                  << "  HV = " << rep.hv_bound << "\n";
    finish_run(std::move(m), out, timer);
    return kExitOk;
}

int cmd_hexagon(const std::string& kind, int id, const GlobalOpts& g) {
    Timer timer;
    auto m = make_manifest("hexagon", {kind, std::to_string(id)}, g.seed);
    const fs::path out = resolve_out_dir(g);
    const auto& b = default_bundle();
    const auto& list =
        kind == "classical" ? b.hexagons.classical() : b.hexagons.skew();
    if (id < 0 || id >= static_cast<int>(list.size()))
        throw std::invalid_argument("hexagon id out of range");
    const auto& h = list[static_cast<std::size_t>(id)];
    io::write_output(m, out, "hexagon.json", io::hexagon_json(b.w3, h));
    io::write_output(m, out, "hexagon.dot", io::hexagon_dot(b.w3, h));
    std::cout << "wrote hexagon.json and hexagon.dot to " << out << "\n";
    finish_run(std::move(m), out, timer);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-geometry catalogs and contextuality degrees for "
                 "multi-qubit Pauli observables"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--out", g.out_dir, "output directory (default $HEXATLAS_OUT or ./out)");
    app.add_option("--seed", g.seed, "seed for randomized procedures");
    app.add_option("--budget", g.budget, "local-search budget");
    app.add_option("--rank-limit", g.rank_limit, "max rank for exact enumeration");
    app.add_option("--format", g.format, "output format (json or csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* space = app.add_subcommand("space", "build and export the W(2n-1,2) catalogs");
    int space_n = 3;
    space->add_option("n", space_n, "qubit count (2..4)")->required();

    auto* degree = app.add_subcommand("degree", "certify the degree of contextuality");
    std::string degree_target;
    degree
        ->add_option("target", degree_target,
                     "named target (doily, grid, pentagram, w52, elliptic:<OBS>, "
                     "hyperbolic:<OBS>, hexcomp:<id>) or a contexts file")
        ->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a theorem verification suite");
    std::string suite = "all";
    verify_cmd->add_option("suite", suite, "suite name or 'all'");

    auto* hexagon = app.add_subcommand("hexagon", "export a hexagon copy (JSON + DOT)");
    std::string hex_kind = "classical";
    int hex_id = 0;
    hexagon->add_option("--kind", hex_kind, "classical or skew")
        ->check(CLI::IsMember({"classical", "skew"}));
    hexagon->add_option("--id", hex_id, "catalog index");

    auto* cabello = app.add_subcommand("cabello", "Cabello-inequality tooling");
    cabello->require_subcommand(1);
    auto* emit = cabello->add_subcommand("emit", "write one QASM file per context");
    std::string emit_target;
    emit->add_option("target", emit_target)->required();
    auto* sim = cabello->add_subcommand("simulate", "simulate chi for a target");
    std::string sim_target, sim_state;
    bool sim_exact = false;
    int sim_shots = 0, sim_degree = -1;
    sim->add_option("target", sim_target)->required();
    sim->add_flag("--exact", sim_exact, "exact statevector expectations");
    sim->add_option("--shots", sim_shots, "sampled shots per context");
    sim->add_option("--state", sim_state, "initial data-register basis state, e.g. 010");
    sim->add_option("--degree", sim_degree, "degree d for the HV bound");
    auto* score = cabello->add_subcommand("score", "score externally produced counts");
    std::string score_target, score_dir;
    int score_degree = -1;
    score->add_option("target", score_target)->required();
    score->add_option("counts", score_dir, "directory of per-context counts JSON")
        ->required();
    score->add_option("--degree", score_degree, "degree d for the HV bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help or the usage error
        return rc == 0 ? 0 : 1;
    }

    try {
        if (space->parsed()) return cmd_space(space_n, g);
        if (degree->parsed()) return cmd_degree(degree_target, g);
        if (verify_cmd->parsed()) return cmd_verify(suite, g);
        if (hexagon->parsed()) return cmd_hexagon(hex_kind, hex_id, g);
        if (cabello->parsed()) {
            if (emit->parsed()) return cmd_cabello_emit(emit_target, g);
            if (sim->parsed()) {
                if (!sim_exact && sim_shots <= 0)
                    throw std::invalid_argument("pass --exact or --shots K");
                return cmd_cabello_simulate(sim_target, sim_exact, sim_shots, sim_state,
                                            sim_degree, g);
            }
            if (score->parsed())
                return cmd_cabello_score(score_target, score_dir, score_degree, g);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
