// plw: recurrence coefficients, ladder quantities and identity checks for
// the weight x^lambda exp(-x^2 - t/x).
//
// Exit status: 0 pass, 1 identity failure, 2 configuration error,
// 3 numeric failure.

#include "plw/errors.hpp"
#include "plw/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace plw;

namespace {

enum Exit { kPass = 0, kIdentityFailure = 1, kConfigFailure = 2, kNumericFailure = 3 };

struct CliState {
    RunConfig config;
    std::string t_grid;
    std::vector<std::string> suites;
    std::string format = "csv";
    std::optional<int> corrupt_beta;
    bool print_config = false;
    bool write_moments = false;
};

void add_common(CLI::App* sub, CliState& s, int default_nmax) {
    s.config.n_max = default_nmax;
    sub->add_option("--lambda", s.config.lambda, "exponent lambda >= 0 (decimal)")->capture_default_str();
    sub->add_option("--t", s.config.t, "perturbation t > 0 (decimal)")->capture_default_str();
    sub->add_option("--t-grid", s.t_grid, "grid start:stop:count[:linear|log]; overrides --t");
    sub->add_option("--nmax", s.config.n_max, "highest degree N");
    sub->add_option("--digits", s.config.target_digits, "target significant digits")->capture_default_str();
    sub->add_option("--format", s.format, "csv or json")->capture_default_str();
    sub->add_option("--out", s.config.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--print-config", s.print_config, "print the canonical run configuration");
}

std::string point_name(const char* stem, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%03zu", stem, index);
    return buf;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw ConfigError("failed writing " + path.string());
}

std::vector<Parameters> grid_parameters(const RunConfig& config) {
    const NumericPolicy policy = config.policy();
    const Real lambda = config.lambda_value(policy.precision_bits);
    std::vector<Parameters> out;
    for (const Real& t : config.t_values(policy.precision_bits)) out.push_back(Parameters::make(lambda, t, policy));
    return out;
}

// Runs `work` for every grid point in parallel; rethrows the first failure.
template <class Result, class Work>
std::vector<Result> for_each_point(const std::vector<Parameters>& points, const Work& work) {
    std::vector<std::optional<Result>> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.size()); ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            results[k].emplace(work(points[k]));
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<Result> out;
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

int cmd_compute(const CliState& s) {
    const RunConfig& config = s.config;
    const auto points = grid_parameters(config);
    const auto runs = for_each_point<PipelineResult>(points, [&](const Parameters& p) {
        return run_pipeline(p, config.n_max);
    });
    fs::create_directories(config.out_dir);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string stem = point_name("point", i);
        fs::path path;
        if (config.format == OutputFormat::Csv) {
            std::ostringstream os;
            write_pipeline_csv(os, runs[i]);
            path = fs::path(config.out_dir) / (stem + ".csv");
            write_file(path, os.str());
        } else {
            path = fs::path(config.out_dir) / (stem + ".json");
            write_file(path, pipeline_to_json(runs[i]).dump(2) + "\n");
        }
        std::cout << path.string() << '\n';
        if (s.write_moments) {
            const fs::path mpath = fs::path(config.out_dir) / (point_name("moments", i) + ".json");
            write_file(mpath, moments_to_json(runs[i].moments).dump(2) + "\n");
            std::cout << mpath.string() << '\n';
        }
        if (!runs[i].ladder.r_fallback().empty())
            std::cerr << "warning: " << stem << ": r_n taken from quadrature at "
                      << runs[i].ladder.r_fallback().size() << " index(es) (closed-form denominator near zero)\n";
    }
    return kPass;
}

int cmd_verify(const CliState& s) {
    const RunConfig& config = s.config;
    const auto points = grid_parameters(config);
    VerifyOptions options;
    options.suites = config.effective_suites();
    options.richardson = config.richardson;
    options.corrupt_beta = config.corrupt_beta;
    if (config.h) options.h = parse_decimal(*config.h, config.policy().precision_bits, "h");

    const auto reports = for_each_point<ResidualReport>(points, [&](const Parameters& p) {
        return verify_point(p, config.n_max, options);
    });
    ResidualReport merged(config.policy());
    for (const auto& r : reports) merged.append(r);

    fs::create_directories(config.out_dir);
    fs::path path;
    if (config.format == OutputFormat::Csv) {
        std::ostringstream os;
        merged.write_csv(os);
        path = fs::path(config.out_dir) / "verify.csv";
        write_file(path, os.str());
    } else {
        path = fs::path(config.out_dir) / "verify.json";
        write_file(path, merged.to_json().dump(2) + "\n");
    }

    std::cout << "identity              count  failed  max residual\n";
    for (const auto& row : merged.summary()) {
        char line[128];
        std::snprintf(line, sizeof line, "%-20s %6zu  %6zu  ", row.identity.c_str(), row.count, row.failed);
        std::cout << line << row.max_residual.to_string(3) << '\n';
    }
    std::cout << merged.entries().size() << " checks, " << merged.failures() << " failed; report: " << path.string()
              << '\n';
    return merged.all_pass() ? kPass : kIdentityFailure;
}

int cmd_asym(const CliState& s) {
    const RunConfig& config = s.config;
    if (config.n_max < 64) throw ConfigError("asym needs nmax >= 64");
    const auto points = grid_parameters(config);
    const auto samples = default_asym_samples(config.n_max);
    struct Point {
        PipelineResult run;
        AsymptoticRun fits;
    };
    const auto results = for_each_point<Point>(points, [&](const Parameters& p) {
        PipelineResult run = run_pipeline(p, config.n_max);
        AsymptoticRun fits = fit_asymptotics(run.recurrence, samples);
        return Point{std::move(run), std::move(fits)};
    });

    fs::create_directories(config.out_dir);
    const int digits = config.target_digits;
    bool pass = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& [run, fits] = results[i];
        const std::string stem = point_name("asym", i);
        for (const DecayFit* fit : {&fits.alpha, &fits.beta}) {
            std::ostringstream os;
            write_decay_csv(os, *fit, fits.model, digits);
            write_file(fs::path(config.out_dir) / (stem + "_" + to_string(fit->which) + ".csv"), os.str());
            for (const auto& w : fit->warnings) std::cerr << "warning: " << to_string(fit->which) << ": " << w << '\n';
        }
        nlohmann::ordered_json doc;
        doc["model"] = model_to_json(fits.model, digits);
        doc["alpha"] = fit_to_json(fits.alpha, kDefaultSlopeBand, digits);
        doc["beta"] = fit_to_json(fits.beta, kDefaultSlopeBand, digits);
        write_file(fs::path(config.out_dir) / (stem + ".json"), doc.dump(2) + "\n");

        std::cout << "lambda = " << fits.model.lambda.to_string(6) << ", t = " << fits.model.t.to_string(6) << '\n';
        for (int j = 0; j <= 4; ++j)
            std::cout << "  a" << j << " = " << fits.model.alpha_coefficient(j).to_string(digits) << '\n';
        for (int j = -1; j <= 3; ++j)
            std::cout << "  b" << j << " = " << fits.model.beta_coefficient(j).to_string(digits) << '\n';
        for (const DecayFit* fit : {&fits.alpha, &fits.beta}) {
            const bool ok = fit->within(kDefaultSlopeBand);
            pass = pass && ok;
            char line[160];
            std::snprintf(line, sizeof line, "  %-5s slope %.4f over n in [%d, %d], expected %.1f +- %.1f: %s\n",
                          to_string(fit->which), fit->slope, fit->n_min, fit->n_max, fit->expected_slope(),
                          kDefaultSlopeBand, ok ? "pass" : "FAIL");
            std::cout << line;
        }
    }
    return pass ? kPass : kIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal polynomials for the weight x^lambda exp(-x^2 - t/x)"};
    app.require_subcommand(1);
    CliState compute_state;
    CliState verify_state;
    CliState asym_state;

    auto* compute = app.add_subcommand("compute", "write recurrence and ladder tables for each t");
    add_common(compute, compute_state, 50);
    compute->add_flag("--moments", compute_state.write_moments, "also write the moment tables as JSON");

    auto* verify = app.add_subcommand("verify", "check the identity suites and write a residual report");
    // --h is the step option, so help is long-form only here
    verify->set_help_flag("--help", "Print this help message and exit");
    add_common(verify, verify_state, 50);
    verify->add_option("--suite", verify_state.suites,
                       "difference, diffdiff, compat, ladder, asym, pearson (repeatable; default all but asym)");
    verify->add_option("--h", verify_state.config.h, "finite-difference step in t (default 10^-(digits/3))");
    verify->add_flag("--richardson", verify_state.config.richardson, "one Richardson step with h/2");
    verify->add_option("--corrupt-beta", verify_state.corrupt_beta)->group("");

    auto* asym = app.add_subcommand("asym", "fit the large-n remainder of the expansions");
    add_common(asym, asym_state, 256);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigFailure;
    }

    CliState& s = compute->parsed() ? compute_state : verify->parsed() ? verify_state : asym_state;
    try {
        if (!s.t_grid.empty()) s.config.t_grid = TGridSpec::parse(s.t_grid);
        for (const auto& name : s.suites) s.config.suites.push_back(parse_suite(name));
        s.config.format = parse_format(s.format);
        s.config.corrupt_beta = s.corrupt_beta;
        s.config.validate();
        if (s.print_config) std::cout << s.config.serialize();
        if (compute->parsed()) return cmd_compute(s);
        if (verify->parsed()) return cmd_verify(s);
        return cmd_asym(s);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigFailure;
    }
}
