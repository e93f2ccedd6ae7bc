// Command-line front end: model ingestion, the Manhattan and DownTown
// builders, stationary solvers, Monte Carlo simulation, and the oracle
// verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "mtm/distributions.hpp"
#include "mtm/downtown.hpp"
#include "mtm/export.hpp"
#include "mtm/manhattan.hpp"
#include "mtm/model_json.hpp"
#include "mtm/oracle.hpp"
#include "mtm/simulate.hpp"
#include "mtm/verify.hpp"

namespace {

using namespace mtm;

struct Shared {
    std::string mode = "exact";
    std::string out;
    std::string format = "csv";

    ExportFormat fmt() const { return format == "json" ? ExportFormat::json : ExportFormat::csv; }
    bool exact() const { return mode == "exact"; }
};

void add_shared(CLI::App* cmd, Shared& sh) {
    cmd->add_option("--mode", sh.mode, "numeric mode")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--out", sh.out, "output path (default stdout)");
    cmd->add_option("--format", sh.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

class Output {
  public:
    explicit Output(const Shared& sh) {
        if (!sh.out.empty()) {
            file_.open(sh.out);
            if (!file_) fail(Errc::invalid_argument, "cannot open " + sh.out);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int thread_cap(int requested) {
    if (const char* env = std::getenv("MTM_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) return std::min(requested, cap);
    }
    return requested;
}

template <class S>
StationaryVector<S> solve_pi(const MTModel<S>& m, const KernelChain<S>& k) {
    auto sol = stationary_kernel(k);
    if (!sol.unique)
        std::cerr << "note: reducible kernel, using the first terminal-component vector\n";
    return lift_sigma_to_pi(m, k, sol.sigma());
}

template <class S>
int run_generic_typed(const MTModel<S>& m, bool want_sigma, bool want_spatial, int dest,
                      const Shared& sh) {
    Output out(sh);
    auto k = build_kernel(m);
    if (want_sigma) {
        auto sol = stationary_kernel(k);
        std::vector<S> sigma(m.ts().point_count(), S(0));
        for (int i = 0; i < k.size(); ++i) sigma[k.states[i]] = sol.sigma().values[i];
        export_spatial(out.stream(), m.ts(), sigma, sh.fmt());
        return 0;
    }
    auto pi = solve_pi(m, k);
    if (dest >= 0) {
        export_destination(out.stream(), m.ts(), destination(m, pi, dest), sh.fmt());
        return 0;
    }
    (void)want_spatial;
    export_spatial(out.stream(), m.ts(), spatial(m, pi), sh.fmt());
    return 0;
}

int run_generic(const std::string& model_path, bool want_sigma, bool want_spatial, int dest,
                const Shared& sh) {
    auto m = load_model_file(model_path);
    if (sh.exact()) return run_generic_typed(m, want_sigma, want_spatial, dest, sh);
    return run_generic_typed(to_float(m), want_sigma, want_spatial, dest, sh);
}

int run_manhattan(int n, const std::string& convention, const std::string& eval, int dest_i,
                  int dest_j, bool density, double length, const Shared& sh) {
    Output out(sh);
    std::ostream& os = out.stream();
    const bool both = eval == "both";
    const bool closed = eval == "closed-form" || convention == "A";

    if (density) {
        std::vector<double> values(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                values[static_cast<std::size_t>(i) * n + j] =
                    density_spatial(length, i * length / n, j * length / n);
        export_grid_samples(os, n, values, sh.fmt());
        return 0;
    }

    auto print_cell = [&](const Rational& v) {
        return sh.exact() ? v.get_str() : num::traits<double>::str(v.get_d());
    };

    if (dest_i >= 0) {
        GridCoord at{dest_i, dest_j};
        if (both || closed) {
            os << (sh.fmt() == ExportFormat::csv ? "" : "[\n");
            if (sh.fmt() == ExportFormat::csv) {
                os << "# conditioned_on," << dest_i << ',' << dest_j << '\n';
                os << "i,j,probability\n";
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        os << i << ',' << j << ','
                           << print_cell(manhattan_dest_closed(n, at, {i, j})) << '\n';
            } else {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        os << "  {\"i\": " << i << ", \"j\": " << j << ", \"probability\": \""
                           << print_cell(manhattan_dest_closed(n, at, {i, j})) << "\"}"
                           << (i == n - 1 && j == n - 1 ? "" : ",") << '\n';
                os << "]\n";
            }
            return 0;
        }
        auto m = build_manhattan<Rational>(n);
        auto d = destination_simple_uniform<Rational>(m.ts(), manhattan_cell(n, dest_i, dest_j));
        if (sh.exact())
            export_destination(os, m.ts(), d, sh.fmt());
        else {
            DestinationDistribution<double> df;
            df.at = d.at;
            for (const auto& v : d.prob) df.prob.push_back(v.get_d());
            export_destination(os, m.ts(), df, sh.fmt());
        }
        return 0;
    }

    // spatial heatmap
    if (sh.fmt() == ExportFormat::csv) {
        if (both)
            os << "i,j,closed_form,exact\n";
        else
            os << "i,j,probability\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                os << i << ',' << j << ',';
                if (both)
                    os << print_cell(manhattan_spatial_closed(n, {i, j})) << ','
                       << print_cell(manhattan_spatial_exact(n, {i, j}));
                else
                    os << print_cell(closed ? manhattan_spatial_closed(n, {i, j})
                                            : manhattan_spatial_exact(n, {i, j}));
                os << '\n';
            }
    } else {
        os << "[\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                os << "  {\"i\": " << i << ", \"j\": " << j;
                if (both)
                    os << ", \"closed_form\": \"" << print_cell(manhattan_spatial_closed(n, {i, j}))
                       << "\", \"exact\": \"" << print_cell(manhattan_spatial_exact(n, {i, j}))
                       << "\"}";
                else
                    os << ", \"probability\": \""
                       << print_cell(closed ? manhattan_spatial_closed(n, {i, j})
                                            : manhattan_spatial_exact(n, {i, j}))
                       << "\"}";
                os << (i == n - 1 && j == n - 1 ? "" : ",") << '\n';
            }
        os << "]\n";
    }
    return 0;
}

std::vector<Rational> parse_slowness(const std::string& spec, int m) {
    auto bad = [&] { fail(Errc::invalid_argument, "bad slowness spec: " + spec); };
    auto colon = spec.find(':');
    if (colon == std::string::npos) bad();
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    std::vector<Rational> slk(m);
    if (kind == "const") {
        Rational v = num::parse_rational(rest);
        for (auto& s : slk) s = v;
    } else if (kind == "linear") {
        auto comma = rest.find(',');
        if (comma == std::string::npos) bad();
        Rational a = num::parse_rational(rest.substr(0, comma));
        Rational b = num::parse_rational(rest.substr(comma + 1));
        for (int k = 1; k <= m; ++k) slk[k - 1] = a + b * k;
    } else if (kind == "table") {
        std::ifstream in(rest);
        if (!in) fail(Errc::invalid_argument, "cannot open " + rest);
        for (int k = 0; k < m; ++k) {
            std::string token;
            if (!(in >> token)) fail(Errc::invalid_argument, "slowness table too short");
            slk[k] = num::parse_rational(token);
        }
    } else {
        bad();
    }
    return slk;
}

int run_downtown(int n, int m, const std::string& slowness, const std::string& wait,
                 const std::string& crc, const std::string& errata_path, const Shared& sh) {
    DownTownParams params;
    params.n = n;
    params.m = m;
    params.slk = parse_slowness(slowness, m);
    params.wait = num::parse_rational(wait);
    params.crc = num::parse_rational(crc);
    auto dt = build_downtown(params);

    Output out(sh);
    auto values = spatial_balanced<Rational>(dt.rs);
    export_downtown_spatial(out.stream(), dt, values, sh.fmt());

    if (!errata_path.empty()) {
        auto rep = downtown_errata(dt);
        std::ofstream ef(errata_path);
        if (!ef) fail(Errc::invalid_argument, "cannot open " + errata_path);
        ef << downtown_errata_json(dt, rep);
        std::cerr << "errata: " << rep.sigma_equal << "/" << rep.sigma_checked
                  << " sigma formulas equal, " << rep.cells_equal << "/" << rep.cells_checked
                  << " covered cells equal\n";
    }
    return 0;
}

int run_simulate(const std::string& model_path, int manhattan_n, std::int64_t agents,
                 std::int64_t steps, std::int64_t warmup, std::uint64_t seed, int threads,
                 bool fixed_start, const Shared& sh) {
    MTModel<double> m = manhattan_n > 0 ? build_manhattan<double>(manhattan_n)
                                        : to_float(load_model_file(model_path));
    auto k = build_kernel(m);
    auto pi = solve_pi(m, k);

    SimConfig cfg;
    cfg.agents = agents;
    cfg.steps = steps;
    cfg.warmup = warmup;
    cfg.seed = seed;
    cfg.stationary_start = !fixed_start;
    cfg.threads = thread_cap(threads);
    auto hist = simulate(m, &pi.values, cfg);

    Output out(sh);
    export_histogram(out.stream(), m.ts(), hist, sh.fmt());

    auto cmp = compare(hist, spatial(m, pi));
    std::cerr << "samples=" << hist.total << " tv=" << cmp.tv << " l1=" << cmp.l1
              << " chi2_pvalue=" << cmp.chi2_pvalue << '\n';
    return 0;
}

int run_verify(const std::string& suite, int max_n, std::uint64_t seed) {
    std::vector<Check> checks;
    if (suite == "core")
        checks = verify_core(50, 20, seed);
    else if (suite == "manhattan")
        checks = verify_manhattan(max_n > 0 ? max_n : 5);
    else if (suite == "modular")
        checks = verify_modular(20, 10, seed);
    else
        checks = verify_downtown(max_n > 0 ? max_n : 2);

    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    int failed = 0;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name;
        for (std::size_t i = c.name.size(); i < width + 2; ++i) std::cout << ' ';
        std::cout << c.detail << '\n';
        if (!c.pass) ++failed;
    }
    if (failed) {
        std::cout << failed << " check(s) failed:\n";
        int listed = 0;
        for (const auto& c : checks) {
            if (c.pass) continue;
            std::cout << "  " << c.name << ": " << c.detail << '\n';
            if (++listed == 10) break;
        }
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov trace mobility models: exact stationary analysis and simulation"};
    app.require_subcommand(1);

    Shared sh;

    auto* generic = app.add_subcommand("generic", "analyze a JSON trace model");
    std::string model_path;
    bool want_spatial = false, want_sigma = false;
    int dest = -1;
    generic->add_option("--model", model_path, "model JSON path")->required();
    generic->add_flag("--spatial", want_spatial, "export the spatial distribution (default)");
    generic->add_flag("--sigma", want_sigma, "export the kernel stationary vector");
    generic->add_option("--dest", dest, "export the destination distribution at a point");
    add_shared(generic, sh);

    auto* manhattan = app.add_subcommand("manhattan", "one-corner grid model heatmaps");
    int n = 2;
    std::string convention = "B", eval;
    std::vector<int> dest_cell;
    bool density = false;
    double length = 1.0;
    manhattan->add_option("--n", n, "grid side")->required()->check(CLI::Range(2, 4000));
    manhattan->add_option("--convention", convention, "counting convention")
        ->check(CLI::IsMember({"A", "B"}));
    manhattan->add_flag_callback("--closed-form", [&] { eval = "closed-form"; },
                                 "use the closed forms (convention A)");
    manhattan->add_flag_callback("--exact", [&] { eval = "exact"; },
                                 "use the chain-exact values (convention B)");
    manhattan->add_flag_callback("--both", [&] { eval = "both"; }, "emit both columns");
    manhattan->add_option("--dest", dest_cell, "conditioning cell i,j for destinations")
        ->expected(2);
    manhattan->add_flag("--density", density, "sample the continuum spatial density");
    manhattan->add_option("--L", length, "physical side length for densities");
    add_shared(manhattan, sh);

    auto* downtown = app.add_subcommand("downtown", "city route system spatial distribution");
    int dn = 2, dm = 1;
    std::string slowness = "const:1", wait = "1", crc = "1", errata_path;
    downtown->add_option("--n", dn, "last street index (even)")->required();
    downtown->add_option("--m", dm, "cells per stripe per block")->required();
    downtown->add_option("--slowness", slowness, "const:<v> | linear:<a>,<b> | table:<file>");
    downtown->add_option("--wait", wait, "parking cell slowness");
    downtown->add_option("--crc", crc, "cross-way cell slowness");
    downtown->add_option("--errata-report", errata_path, "write formula comparison JSON here");
    add_shared(downtown, sh);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo agent simulation");
    std::string sim_model;
    int sim_manhattan = 0, threads = 1;
    std::int64_t agents = 1, steps = 1000, warmup = 0;
    std::uint64_t seed = 0;
    bool fixed_start = false;
    simulate_cmd->add_option("--model", sim_model, "model JSON path");
    simulate_cmd->add_option("--manhattan", sim_manhattan, "build the n-grid model instead");
    simulate_cmd->add_option("--agents", agents, "agent count");
    simulate_cmd->add_option("--steps", steps, "steps per agent");
    simulate_cmd->add_option("--warmup", warmup, "discarded steps per agent");
    simulate_cmd->add_option("--seed", seed, "RNG seed (default 0, never wall clock)");
    simulate_cmd->add_option("--threads", threads, "worker threads (capped by MTM_THREADS)");
    simulate_cmd->add_flag("--fixed-start", fixed_start, "start at state <0,1> instead of pi");
    add_shared(simulate_cmd, sh);

    auto* verify = app.add_subcommand("verify", "run oracle verification suites");
    std::string suite;
    int max_n = 0;
    std::uint64_t vseed = 0;
    verify->add_option("--suite", suite, "core | manhattan | modular | downtown")
        ->required()
        ->check(CLI::IsMember({"core", "manhattan", "modular", "downtown"}));
    verify->add_option("--max-n", max_n, "size bound for the suite");
    verify->add_option("--seed", vseed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generic->parsed()) return run_generic(model_path, want_sigma, want_spatial, dest, sh);
        if (manhattan->parsed()) {
            int di = dest_cell.size() == 2 ? dest_cell[0] : -1;
            int dj = dest_cell.size() == 2 ? dest_cell[1] : 0;
            return run_manhattan(n, convention, eval, di, dj, density, length, sh);
        }
        if (downtown->parsed())
            return run_downtown(dn, dm, slowness, wait, crc, errata_path, sh);
        if (simulate_cmd->parsed()) {
            if (sim_model.empty() && sim_manhattan == 0)
                fail(Errc::invalid_argument, "simulate needs --model or --manhattan");
            return run_simulate(sim_model, sim_manhattan, agents, steps, warmup, seed, threads,
                                fixed_start, sh);
        }
        if (verify->parsed()) return run_verify(suite, max_n, vseed);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
