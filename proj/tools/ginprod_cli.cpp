// Command-line front end: exact determinant evaluations, reference-table
// reproduction, Monte Carlo estimation, asymptotics, and density grids,
// with table / JSON-lines / CSV output and machine-rerunnable metadata on
// every row.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ginprod/ginprod.hpp"
#include "json.hpp"

using namespace ginprod;
using nlohmann::json;

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_tolerance = 1,
    exit_numerical = 2,
    exit_bad_args = 3,
};

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

int default_precision() {
    if (const char* env = std::getenv("REALSPEC_PRECISION")) {
        int p = std::atoi(env);
        if (p >= 30) return p;
    }
    return 60;
}

std::string data_dir_default() {
#ifdef GINPROD_DATA_DIR
    return GINPROD_DATA_DIR;
#else
    return "data";
#endif
}

struct Emitter {
    std::string format = "table";
    std::ostream* out = &std::cout;

    void rows(const std::vector<json>& rs) const {
        if (rs.empty()) return;
        if (format == "json") {
            for (const auto& r : rs) *out << r.dump() << "\n";
            return;
        }
        std::vector<std::string> keys;
        for (auto it = rs.front().begin(); it != rs.front().end(); ++it) keys.push_back(it.key());
        auto cell = [](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_null()) return "-";
            return v.dump();
        };
        if (format == "csv") {
            for (std::size_t i = 0; i < keys.size(); ++i)
                *out << keys[i] << (i + 1 < keys.size() ? "," : "\n");
            for (const auto& r : rs) {
                for (std::size_t i = 0; i < keys.size(); ++i)
                    *out << cell(r.at(keys[i])) << (i + 1 < keys.size() ? "," : "\n");
            }
            return;
        }
        // table: aligned columns
        std::vector<std::size_t> width(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) width[i] = keys[i].size();
        std::vector<std::vector<std::string>> cells;
        for (const auto& r : rs) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < keys.size(); ++i) {
                line.push_back(cell(r.at(keys[i])));
                width[i] = std::max(width[i], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        for (std::size_t i = 0; i < keys.size(); ++i)
            *out << keys[i] << std::string(width[i] - keys[i].size() + 2, ' ');
        *out << "\n";
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < keys.size(); ++i)
                *out << line[i] << std::string(width[i] - line[i].size() + 2, ' ');
            *out << "\n";
        }
    }
};

json load_reference(const std::string& dir) {
    std::ifstream in(dir + "/paper_values.json");
    if (!in.good()) throw domain_error("cannot open reference data at " + dir + "/paper_values.json");
    json j;
    in >> j;
    return j;
}

Real pi_rational_value(long long p, int t, int q, int digits) {
    return ldexp2(Real::from_long(p, digits) * pow_long(Real::pi(digits), t), -q);
}

std::string form_string(long long p, int t, int q) {
    PiRationalForm f{p, t, q};
    return f.str();
}

int run_exact(int N, int m, int precision, const Emitter& em) {
    auto t0 = Clock::now();
    auto r = p_all_real_exact({N, m}, precision);
    json row;
    row["command"] = "exact";
    row["version"] = kVersion;
    row["N"] = N;
    row["m"] = m;
    row["method"] = method_name(r.method);
    row["value"] = r.value.str(precision);
    row["log_value"] = r.log_value.str(precision);
    row["error"] = r.error_estimate.str(3);
    row["recognized_form"] = r.recognized_form ? json(r.recognized_form->str()) : json(nullptr);
    row["seed"] = nullptr;
    row["precision"] = precision;
    row["walltime_ms"] = elapsed_ms(t0);
    em.rows({row});
    return exit_ok;
}

int run_table(const std::string& which, int precision, double tolerance,
              const std::string& data_dir, const Emitter& em) {
    json ref = load_reference(data_dir);
    std::vector<json> rows;
    bool breach = false;

    if (which == "table1") {
        for (const auto& r : ref["n2_decimal_table"]["rows"]) {
            int m = r["m"];
            auto t0 = Clock::now();
            auto p = p_all_real_exact({2, m}, precision);
            Real refv = Real::from_string(r["decimals"].get<std::string>(), precision);
            Real d = p.value - refv;
            // reference digits are truncated: computed - reference must sit
            // in [-tol, 1e-10 + tol)
            bool ok = d >= Real::from_double(-tolerance, 60) &&
                      d < Real::from_double(1e-10 + tolerance, 60);
            breach |= !ok;
            json row;
            row["command"] = "table:table1";
            row["m"] = m;
            row["computed"] = p.value.str(14);
            row["reference"] = r["decimals"].get<std::string>();
            row["diff"] = d.str(3);
            row["ok"] = ok;
            row["precision"] = precision;
            row["walltime_ms"] = elapsed_ms(t0);
            rows.push_back(row);
        }
    } else if (which == "eqAA") {
        for (const auto& r : ref["closed_forms_m2"]["rows"]) {
            int N = r["N"];
            long long pp = r["p"].get<long long>();
            int t = r["pi_power"], q = r["two_power"];
            auto t0 = Clock::now();
            auto p = p_all_real_exact({N, 2}, precision);
            Real expect = pi_rational_value(pp, t, q, precision + 10);
            Real rel = abs(p.value - expect) / expect;
            bool value_ok = rel <= Real::from_double(tolerance, 60);
            bool recog_ok = p.recognized_form && p.recognized_form->p == pp &&
                            p.recognized_form->pi_power == t && p.recognized_form->two_power == q;
            breach |= !(value_ok && recog_ok);
            json row;
            row["command"] = "table:eqAA";
            row["N"] = N;
            row["closed_form"] = form_string(pp, t, q);
            row["computed"] = p.value.str(22);
            row["rel_diff"] = rel.str(3);
            row["recognized"] = p.recognized_form ? json(p.recognized_form->str()) : json(nullptr);
            row["status"] = r["status"].get<std::string>();
            row["ok"] = value_ok && recog_ok;
            row["precision"] = precision;
            row["walltime_ms"] = elapsed_ms(t0);
            rows.push_back(row);
        }
    } else if (which == "m2matrix") {
        for (const auto& r : ref["m2_entry_matrix_n6"]["rows"]) {
            int j = r["j"], k = r["k"];
            auto t0 = Clock::now();
            auto e = alpha_entry(2, j, k, precision);
            Real expect = pi_rational_value(r["p"].get<long long>(), 2,
                                            r["two_power"].get<int>(), precision + 10);
            Real rel = abs(e.value - expect) / expect;
            bool ok = rel <= Real::from_double(tolerance, 60);
            breach |= !ok;
            json row;
            row["command"] = "table:m2matrix";
            row["j"] = j;
            row["k"] = k;
            row["entry_form"] = form_string(r["p"].get<long long>(), 2, r["two_power"].get<int>());
            row["computed"] = e.value.str(30);
            row["rel_diff"] = rel.str(3);
            row["status"] = "conjectured";
            row["corrected_exponent"] = r.contains("as_printed_two_power")
                                            ? json(r["as_printed_two_power"].get<int>())
                                            : json(nullptr);
            row["ok"] = ok;
            row["precision"] = precision;
            row["walltime_ms"] = elapsed_ms(t0);
            rows.push_back(row);
        }
    } else {
        throw domain_error("table: unknown selection '" + which + "'");
    }
    em.rows(rows);
    return breach ? exit_tolerance : exit_ok;
}

int run_mc(int N, int m, long trials, std::uint64_t seed, int workers, double schur_tol,
           int precision, const Emitter& em) {
    auto t0 = Clock::now();
    MCConfig cfg;
    cfg.spec = {N, m};
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.schur_tolerance = schur_tol;
    auto r = estimate_p(cfg);

    bool have_exact = N <= 8;
    Real exact(40);
    if (have_exact) exact = p_all_real_exact({N, m}, 30).value;

    bool breach = false;
    std::vector<json> rows;
    long wall = elapsed_ms(t0);
    for (auto& [k, c] : r.counts) {
        json row;
        row["command"] = "mc";
        row["method"] = "monte_carlo";
        row["N"] = N;
        row["m"] = m;
        row["k"] = k;
        row["count"] = c;
        row["p_hat"] = r.p_hat[k];
        row["std_err"] = r.std_err[k];
        row["trials"] = r.trials;
        row["discarded"] = r.discarded;
        row["seed"] = seed;
        row["workers"] = workers;
        row["schur_tolerance"] = schur_tol;
        row["precision"] = precision;
        row["walltime_ms"] = wall;
        if (have_exact && k == N) {
            double ex = exact.to_double();
            double sig = r.std_err[k] > 0 ? std::fabs(r.p_hat[k] - ex) / r.std_err[k] : 0.0;
            row["exact"] = ex;
            row["sigmas_from_exact"] = sig;
            if (sig > 4.0) breach = true;
        } else {
            row["exact"] = nullptr;
            row["sigmas_from_exact"] = nullptr;
        }
        rows.push_back(row);
    }
    em.rows(rows);
    return breach ? exit_tolerance : exit_ok;
}

int run_asym(int N, int m, int precision, const Emitter& em) {
    auto t0 = Clock::now();
    Real b = decay_base(m, precision);
    Real pred = log_p_asymptotic({N, m}, precision);
    json row;
    row["command"] = "asym";
    row["method"] = "asymptotic";
    row["N"] = N;
    row["m"] = m;
    row["decay_base"] = b.str(precision);
    row["log_decay_base"] = log(b).str(20);
    row["asymptotic_log_p"] = pred.str(20);
    if (N <= 8) {
        auto ex = p_all_real_exact({N, m}, 30);
        row["exact_log_p"] = ex.log_value.str(20);
        row["log_ratio"] = (ex.log_value / pred).str(10);
    } else {
        row["exact_log_p"] = nullptr;
        row["log_ratio"] = nullptr;
    }
    row["precision"] = precision;
    row["walltime_ms"] = elapsed_ms(t0);
    em.rows({row});
    return exit_ok;
}

int run_density(int m, int grid, int precision, const Emitter& em) {
    auto em_measure = equilibrium_measure(m, grid, precision);
    std::vector<json> rows;
    for (auto& [x, rho] : em_measure.density_samples) {
        json row;
        row["command"] = "density";
        row["m"] = m;
        row["grid"] = grid;
        row["x"] = x.str(17);
        row["rho"] = rho.str(precision);
        row["precision"] = precision;
        rows.push_back(row);
    }
    if (em.format == "csv") {
        // compact two-column form for plotting
        *em.out << "x,rho\n";
        for (auto& [x, rho] : em_measure.density_samples)
            *em.out << x.str(17) << "," << rho.str(precision) << "\n";
    } else {
        em.rows(rows);
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"real-eigenvalue probabilities for products of standard Gaussian matrices"};
    app.require_subcommand(1);

    int N = 2, m = 2;
    int precision = default_precision();
    long trials = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    double schur_tol = 1e-9;
    double tolerance = 5e-11;
    std::string format = "table";
    std::string data_dir = data_dir_default();
    std::string which = "table1";
    std::string out_path;
    int grid = 101;

    auto add_common = [&](CLI::App* sub, bool with_nm) {
        if (with_nm) {
            sub->add_option("-N,--dimension", N, "matrix dimension N");
            sub->add_option("-m,--factors", m, "number of Gaussian factors m");
        }
        sub->add_option("--precision", precision, "working precision in decimal digits (>= 30)");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", out_path, "write output to this file instead of stdout");
    };

    auto* cmd_exact = app.add_subcommand("exact", "exact determinant evaluation of p_{N,N}");
    add_common(cmd_exact, true);

    auto* cmd_table = app.add_subcommand("table", "reproduce a reference table");
    cmd_table->add_option("which", which, "one of table1, eqAA, m2matrix")
        ->check(CLI::IsMember({"table1", "eqAA", "m2matrix"}));
    cmd_table->add_option("--tolerance", tolerance, "per-cell tolerance for the comparison");
    cmd_table->add_option("--data", data_dir, "directory holding paper_values.json");
    add_common(cmd_table, false);

    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo histogram of real-eigenvalue counts");
    add_common(cmd_mc, true);
    cmd_mc->add_option("-t,--trials", trials, "number of trials");
    cmd_mc->add_option("-s,--seed", seed, "random seed");
    cmd_mc->add_option("--workers", workers, "worker threads");
    cmd_mc->add_option("--schur-tolerance", schur_tol, "2x2 block discriminant tolerance");

    auto* cmd_asym = app.add_subcommand("asym", "large-N decay base and log-probability");
    add_common(cmd_asym, true);

    auto* cmd_density = app.add_subcommand("density", "equilibrium density samples");
    add_common(cmd_density, true);
    cmd_density->add_option("--grid", grid, "number of grid points on (-1, 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? exit_ok : exit_bad_args;
    }

    std::ofstream file_out;
    Emitter em;
    em.format = format;
    if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out.good()) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return exit_bad_args;
        }
        em.out = &file_out;
    }

    try {
        if (app.got_subcommand(cmd_exact)) return run_exact(N, m, precision, em);
        if (app.got_subcommand(cmd_table))
            return run_table(which, std::max(precision, 60), tolerance, data_dir, em);
        if (app.got_subcommand(cmd_mc))
            return run_mc(N, m, trials, seed, workers, schur_tol, precision, em);
        if (app.got_subcommand(cmd_asym)) return run_asym(N, m, precision, em);
        if (app.got_subcommand(cmd_density)) return run_density(m, grid, precision, em);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_args;
    } catch (const error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_bad_args;
}
