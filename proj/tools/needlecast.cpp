#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "needlecast/convergence.hpp"
#include "needlecast/limit_law.hpp"
#include "needlecast/monte_carlo.hpp"
#include "needlecast/output_record.hpp"
#include "needlecast/quadrature.hpp"
#include "needlecast/unconditional_law.hpp"

namespace nc = needlecast;

namespace {

struct Options {
    double a = 2.0;
    double b = 2.0;
    double lambda = -1.0;  // < 0: derive from a
    double mu = -1.0;      // < 0: derive from b
    std::int64_t n = 1;
    std::vector<std::int64_t> n_list = {5, 20, 80, 320};
    int k = 4;
    std::int64_t throws = 1000000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int grid = 201;
    int streams = 0;
    std::string format = "csv";
    std::string out;
    bool timing = false;
};

void add_lattice_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--a", o.a, "Cell width, >= 2 (default 2)");
    cmd->add_option("--b", o.b, "Cell height, >= 2 (default 2)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Write to this path instead of stdout");
    cmd->add_flag("--timing", o.timing,
                  "Include wall-clock runtime in the record metadata (off by "
                  "default so repeated runs stay byte-identical)");
}

void add_tol_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "Absolute quadrature tolerance")
        ->envname("NEEDLECAST_TOL")
        ->check(CLI::Range(1e-13, 1.0));
}

void add_seed_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "RNG seed")->envname("NEEDLECAST_SEED");
}

nc::LatticeParams make_lattice(const Options& o) { return {o.a, o.b}; }

std::vector<std::pair<std::string, nc::Value>> lattice_fields(
    const nc::LatticeParams& lat) {
    return {{"a", lat.a()},
            {"b", lat.b()},
            {"lambda", lat.lambda()},
            {"mu", lat.mu()}};
}

nc::OutputRecord run_pmf(const Options& o) {
    const nc::LatticeParams lat = make_lattice(o);
    const nc::IntersectionPmf p = nc::pmf(nc::ClusterSpec(o.n), lat, o.tol);
    nc::OutputRecord rec;
    rec.command = "pmf";
    rec.lattice = lattice_fields(lat);
    rec.params = {{"n", o.n}, {"tol", o.tol}};
    rec.columns = {"i", "p"};
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        rec.rows.push_back({static_cast<std::int64_t>(i), p.probs[i]});
    }
    rec.meta = {{"evals", p.evals}};
    return rec;
}

nc::OutputRecord run_cdf(const Options& o) {
    const nc::LatticeParams lat = make_lattice(o);
    const nc::FiniteCdf fn = nc::cdf(nc::ClusterSpec(o.n), lat, o.tol);
    nc::OutputRecord rec;
    rec.command = "cdf";
    rec.lattice = lattice_fields(lat);
    rec.params = {{"n", o.n},
                  {"tol", o.tol},
                  {"grid", static_cast<std::int64_t>(o.grid)}};
    rec.columns = {"x", "F_n"};
    for (int g = 0; g < o.grid; ++g) {
        const double x = o.grid == 1 ? 0.0 : 2.0 * g / (o.grid - 1);
        rec.rows.push_back({x, fn(x)});
    }
    rec.meta = {{"evals", fn.evals}};
    return rec;
}

nc::OutputRecord run_limit(const Options& o) {
    const double lambda = o.lambda >= 0.0 ? o.lambda : 1.0 / o.a;
    const double mu = o.mu >= 0.0 ? o.mu : 1.0 / o.b;
    const nc::LimitLaw law(lambda, mu);
    nc::OutputRecord rec;
    rec.command = "limit";
    rec.lattice = {{"a", lambda > 0.0 ? 1.0 / lambda : std::numeric_limits<double>::infinity()},
                   {"b", mu > 0.0 ? 1.0 / mu : std::numeric_limits<double>::infinity()},
                   {"lambda", lambda},
                   {"mu", mu}};
    rec.params = {{"grid", static_cast<std::int64_t>(o.grid)},
                  {"k", static_cast<std::int64_t>(o.k)},
                  {"tol", o.tol},
                  {"atom", nc::limit_atom(law)},
                  {"regime", std::string(law.extrapolated() ? "extrapolated"
                                                            : "standard")}};
    for (int k = 1; k <= o.k; ++k) {
        rec.params.emplace_back("moment_" + std::to_string(k),
                                nc::limit_moment(law, k, o.tol));
    }
    rec.columns = {"x", "F"};
    for (int g = 0; g < o.grid; ++g) {
        const double x = o.grid == 1 ? 0.0 : static_cast<double>(g) / (o.grid - 1);
        rec.rows.push_back({x, nc::limit_cdf(law, x)});
    }
    return rec;
}

nc::OutputRecord run_simulate(const Options& o) {
    const nc::LatticeParams lat = make_lattice(o);
    const nc::ThrowConfig cfg{nc::ClusterSpec(o.n), lat, o.throws, o.seed,
                              o.streams};
    const nc::EmpiricalSummary emp = nc::simulate(cfg);
    nc::OutputRecord rec;
    rec.command = "simulate";
    rec.lattice = lattice_fields(lat);
    rec.params = {{"n", o.n},
                  {"throws", o.throws},
                  {"seed", static_cast<std::int64_t>(o.seed)},
                  {"streams", static_cast<std::int64_t>(o.streams)}};
    for (int k = 1; k <= 4; ++k) {
        rec.params.emplace_back("moment_" + std::to_string(k),
                                emp.moments[k - 1]);
    }
    rec.columns = {"i", "count", "frequency", "standard_error"};
    for (std::size_t i = 0; i < emp.histogram.size(); ++i) {
        rec.rows.push_back({static_cast<std::int64_t>(i), emp.histogram[i],
                            emp.frequency[i], emp.standard_error[i]});
    }
    return rec;
}

nc::OutputRecord run_converge(const Options& o) {
    const nc::LatticeParams lat = make_lattice(o);
    const nc::ConvergenceReport report =
        nc::convergence_report(lat, o.n_list, o.k, o.tol);
    nc::OutputRecord rec;
    rec.command = "converge";
    rec.lattice = lattice_fields(lat);
    rec.params = {{"k", static_cast<std::int64_t>(o.k)}, {"tol", o.tol}};
    rec.columns = {"n", "sup_distance", "atom_gap"};
    for (int k = 1; k <= o.k; ++k) {
        rec.columns.push_back("moment_gap_" + std::to_string(k));
    }
    for (const nc::ConvergenceRow& row : report.rows) {
        std::vector<nc::Value> cells = {row.n, row.sup_distance, row.atom_gap};
        for (const double g : row.moment_gaps) cells.emplace_back(g);
        rec.rows.push_back(std::move(cells));
    }
    return rec;
}

// Analytic-vs-empirical cross-check: every pmf entry above 1e-4 must sit
// within 4 standard errors of its empirical frequency, the empirical mean
// must match 2(lambda+mu)/pi, and a chi-square test must not reject.
nc::OutputRecord run_verify(const Options& o, int& failures) {
    struct Case {
        double a;
        double b;
        std::int64_t n;
    };
    const Case cases[] = {{2, 2, 1}, {2, 2, 3}, {3, 5, 1}, {3, 5, 3}};

    nc::OutputRecord rec;
    rec.command = "verify";
    rec.params = {{"throws", o.throws},
                  {"seed", static_cast<std::int64_t>(o.seed)},
                  {"tol", o.tol}};
    rec.columns = {"case", "check", "observed", "reference", "bound", "pass"};

    std::uint64_t case_seed = o.seed;
    for (const Case& cs : cases) {
        const nc::LatticeParams lat(cs.a, cs.b);
        const nc::ClusterSpec spec(cs.n);
        const std::string label = "a=" + nc::format_value(nc::Value(cs.a)) +
                                  ",b=" + nc::format_value(nc::Value(cs.b)) +
                                  ",n=" + std::to_string(cs.n);
        const nc::IntersectionPmf p = nc::pmf(spec, lat, o.tol);
        const nc::EmpiricalSummary emp =
            nc::simulate({spec, lat, o.throws, case_seed++, o.streams});

        const auto check = [&](const std::string& name, double observed,
                               double reference, double bound) {
            const bool pass = std::abs(observed - reference) <= bound;
            if (!pass) ++failures;
            rec.rows.push_back({label, name, observed, reference, bound,
                                static_cast<std::int64_t>(pass)});
        };

        const auto throws_d = static_cast<double>(o.throws);
        for (std::size_t i = 0; i < p.probs.size(); ++i) {
            if (p.probs[i] <= 1e-4) continue;
            const double se =
                std::sqrt(p.probs[i] * (1.0 - p.probs[i]) / throws_d);
            check("freq[" + std::to_string(i) + "]", emp.frequency[i],
                  p.probs[i], 4.0 * se);
        }

        const double mean_ref =
            2.0 * (lat.lambda() + lat.mu()) / std::numbers::pi;
        const double sd = std::sqrt(
            std::max(0.0, emp.moments[1] - emp.moments[0] * emp.moments[0]));
        check("mean", emp.moments[0], mean_ref,
              4.0 * sd / std::sqrt(throws_d));

        const nc::GofResult gof =
            nc::chi_square_gof(emp.histogram, emp.throws, p.probs);
        const bool gof_pass = gof.p_value >= 1e-4;
        if (!gof_pass) ++failures;
        rec.rows.push_back({label, "chi_square_p", gof.p_value, 1e-4, 1.0,
                            static_cast<std::int64_t>(gof_pass)});
    }
    rec.meta = {{"failures", static_cast<std::int64_t>(failures)}};
    return rec;
}

void emit(nc::OutputRecord rec, const Options& o, double runtime_s) {
    rec.meta.emplace_back("version", std::string(nc::kToolVersion));
    if (o.timing) rec.meta.emplace_back("runtime_s", runtime_s);
    const std::string text =
        o.format == "json" ? nc::to_json(rec) : nc::to_csv(rec);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + o.out);
        file << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intersection-count laws for a needle cluster on a rectangle "
                 "lattice"};
    app.require_subcommand(1);
    Options o;

    CLI::App* pmf_cmd =
        app.add_subcommand("pmf", "Exact pmf of the intersection count");
    add_lattice_flags(pmf_cmd, o);
    pmf_cmd->add_option("--n", o.n, "Needle count")->check(CLI::PositiveNumber);
    add_tol_flag(pmf_cmd, o);
    add_output_flags(pmf_cmd, o);

    CLI::App* cdf_cmd =
        app.add_subcommand("cdf", "Step CDF of X_n = count/n on a grid");
    add_lattice_flags(cdf_cmd, o);
    cdf_cmd->add_option("--n", o.n, "Needle count")->check(CLI::PositiveNumber);
    cdf_cmd->add_option("--grid", o.grid, "Grid points on [0, 2]")
        ->check(CLI::PositiveNumber);
    add_tol_flag(cdf_cmd, o);
    add_output_flags(cdf_cmd, o);

    CLI::App* limit_cmd = app.add_subcommand(
        "limit", "Limit law: CDF curve on [0, 1], atom, moments");
    add_lattice_flags(limit_cmd, o);
    limit_cmd->add_option("--lambda", o.lambda, "Override lambda (else 1/a)")
        ->check(CLI::Range(0.0, 0.5));
    limit_cmd->add_option("--mu", o.mu, "Override mu (else 1/b)")
        ->check(CLI::Range(0.0, 0.5));
    limit_cmd->add_option("--grid", o.grid, "Grid points on [0, 1]")
        ->check(CLI::PositiveNumber);
    limit_cmd->add_option("--k", o.k, "Highest moment order")
        ->check(CLI::Range(1, nc::kMaxMomentOrder));
    add_tol_flag(limit_cmd, o);
    add_output_flags(limit_cmd, o);

    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo throws of the cluster");
    add_lattice_flags(sim_cmd, o);
    sim_cmd->add_option("--n", o.n, "Needle count")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--throws", o.throws, "Number of throws")
        ->check(CLI::PositiveNumber);
    add_seed_flag(sim_cmd, o);
    sim_cmd->add_option("--streams", o.streams,
                        "Worker count (0 = NEEDLECAST_THREADS or hardware); "
                        "results do not depend on it");
    add_output_flags(sim_cmd, o);

    CLI::App* conv_cmd = app.add_subcommand(
        "converge", "Distance of F_n to the limit law across n");
    add_lattice_flags(conv_cmd, o);
    conv_cmd->add_option("--n", o.n_list, "Cluster sizes, strictly increasing")
        ->expected(1, 64);
    conv_cmd->add_option("--k", o.k, "Highest moment order")
        ->check(CLI::Range(1, nc::kMaxMomentOrder));
    add_tol_flag(conv_cmd, o);
    add_output_flags(conv_cmd, o);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Cross-check quadrature against Monte Carlo; exit 1 on any "
                  "4-sigma violation");
    verify_cmd->add_option("--throws", o.throws, "Throws per case")
        ->check(CLI::PositiveNumber);
    add_seed_flag(verify_cmd, o);
    verify_cmd->add_option("--streams", o.streams, "Worker count");
    add_tol_flag(verify_cmd, o);
    add_output_flags(verify_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        nc::OutputRecord rec;
        int verify_failures = 0;
        if (pmf_cmd->parsed()) {
            rec = run_pmf(o);
        } else if (cdf_cmd->parsed()) {
            rec = run_cdf(o);
        } else if (limit_cmd->parsed()) {
            rec = run_limit(o);
        } else if (sim_cmd->parsed()) {
            rec = run_simulate(o);
        } else if (conv_cmd->parsed()) {
            rec = run_converge(o);
        } else {
            rec = run_verify(o, verify_failures);
        }
        const double runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        emit(std::move(rec), o, runtime_s);
        std::cerr << "needlecast: " << (verify_failures ? "FAIL" : "ok") << " ("
                  << runtime_s << " s)\n";
        return verify_failures ? 1 : 0;
    } catch (const std::domain_error& e) {
        std::cerr << "needlecast: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "needlecast: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "needlecast: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "needlecast: " << e.what() << '\n';
        return 1;
    }
}
