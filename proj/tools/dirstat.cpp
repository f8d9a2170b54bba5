// dirstat: batch front end for the directional-statistics library.
//
// Exit codes:
//   0 success
//   1 usage error (bad flag, bad parameter value, dimension mismatch)
//   2 input parse error
//   3 degenerate data (R̄ = 0 or R̄ = 1)
//   4 numeric non-convergence or overflow
//   5 missing or corrupt data bundle
//   6 file I/O failure
//   7 internal error
// Failures print one line to stderr: error: code=<name> exit=<n> message="..."

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirstat/analysis/commands.hpp"
#include "dirstat/analysis/hospers.hpp"
#include "dirstat/analysis/report.hpp"
#include "dirstat/errors.hpp"

namespace {

using namespace dirstat;
using namespace dirstat::analysis;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kDegenerate = 3,
    kNonConvergence = 4,
    kMissingData = 5,
    kIo = 6,
    kInternal = 7,
};

std::vector<double> parse_vector(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(field, &used);
        } catch (const std::exception&) {
            throw DomainError(std::string(what) + ": not a number: '" + field + "'");
        }
        if (field.find_first_not_of(" \t", used) != std::string::npos) {
            throw DomainError(std::string(what) + ": not a number: '" + field + "'");
        }
        out.push_back(value);
    }
    if (out.empty()) throw DomainError(std::string(what) + " is empty");
    return out;
}

std::optional<std::vector<double>> optional_vector(const std::string& text, const char* what) {
    if (text.empty()) return std::nullopt;
    return parse_vector(text, what);
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + "\"";
}

int fail(const char* code, int exit_code, const std::string& message) {
    std::cerr << "error: code=" << code << " exit=" << exit_code << " message=" << quoted(message) << '\n';
    return exit_code;
}

struct Globals {
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    bool no_timestamp = false;
    std::string format = "kv";
    std::string report_path;
    std::string input_format = "auto";
    bool up_positive = false;
};

void emit(const Globals& g, const CommandOutput& result) {
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
    Report report;
    if (!g.no_timestamp) report.add("generated_at", utc_timestamp());
    report.merge(result.report);
    const ReportFormat format = parse_report_format(g.format);
    if (g.report_path.empty()) {
        report.write(std::cout, format);
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write report to stdout");
        return;
    }
    std::ofstream out(g.report_path);
    if (!out) throw IoError("cannot write " + g.report_path);
    report.write(out, format);
    out.flush();
    if (!out) throw IoError("write failed: " + g.report_path);
}

int run(int argc, char** argv) {
    CLI::App app{"Directional statistics on spheres, axes and rotations", "dirstat"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI configuration file; command-line flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Globals g;
    app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
    app.add_option("--tolerance", g.tolerance, "Root-finder residual tolerance")->capture_default_str();
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit the generated_at line");
    app.add_option("--format", g.format, "Report format: kv or json")
        ->check(CLI::IsMember({"kv", "json"}))
        ->capture_default_str();
    app.add_option("--report", g.report_path, "Write the report here instead of stdout");
    app.add_option("--input-format", g.input_format, "auto, csv-xyz or csv-decinc")
        ->check(CLI::IsMember({"auto", "csv-xyz", "csv-decinc"}))
        ->capture_default_str();
    app.add_flag("--up-positive", g.up_positive, "Inclination is positive upward (default: downward)");

    // summary
    std::string input;
    std::string pole;
    auto* summary = app.add_subcommand("summary", "Mean vector, mean direction and mean resultant length");
    summary->add_option("-i,--input", input, "CSV file")->required();
    summary->add_option("--pole", pole, "Reference direction for the sufficient statistic, e.g. 0,0,1");

    // fit
    FitConfig fit;
    std::string mu;
    std::string equation = "stationary";
    auto* fit_cmd = app.add_subcommand("fit", "Estimate mean direction and concentration");
    fit_cmd->add_option("-i,--input", input, "CSV file")->required();
    fit_cmd->add_option("--method", fit.method, "mle, sme, known-pole, known-axis or axial")
        ->check(CLI::IsMember({"mle", "sme", "known-pole", "known-axis", "axial"}))
        ->capture_default_str();
    fit_cmd->add_option("--mu", mu, "Known mean direction for sme");
    fit_cmd->add_option("--pole", pole, "Known pole or axis (default: north pole)");
    fit_cmd->add_option("--equation", equation, "Known-axis equation: stationary or scaled-argument")
        ->check(CLI::IsMember({"stationary", "scaled-argument"}))
        ->capture_default_str();

    // test-mean
    TestMeanConfig test;
    std::string mu0;
    auto* test_cmd = app.add_subcommand("test-mean", "Likelihood-ratio test of a hypothesized mean direction");
    test_cmd->add_option("-i,--input", input, "CSV file")->required();
    test_cmd->add_option("--mu0", mu0, "Hypothesized mean direction, e.g. \" -0.9724,-0.2334,0\"")->required();
    test_cmd->add_option("--level", test.level, "Test level")->capture_default_str();
    test_cmd->add_option("--bootstrap", test.bootstrap_replicates, "Parametric bootstrap replicates (0: off)")
        ->capture_default_str();
    test_cmd->add_option("--threads", test.threads, "Bootstrap worker threads (0: all cores)")->capture_default_str();

    // project
    ProjectConfig project;
    std::string center;
    auto* project_cmd = app.add_subcommand("project", "Lambert equal-area projection table and SVG plot");
    project_cmd->add_option("-i,--input", input, "CSV file")->required();
    project_cmd->add_option("--center", center, "Projection center (default: sample mean direction)");
    project_cmd->add_option("--table", project.table_path, "Projected (u, v) CSV")->capture_default_str();
    project_cmd->add_option("--plot", project.plot_path, "SVG plot")->capture_default_str();

    // wrapped-pdf
    WrappedPdfConfig wrapped;
    std::string sigma2_list = "0.1,1.0,2.0";
    auto* wrapped_cmd = app.add_subcommand("wrapped-pdf", "Tabulate wrapped-normal colatitude curves on S_2");
    wrapped_cmd->add_option("--sigma2", sigma2_list, "Comma-separated tangent variances")->capture_default_str();
    wrapped_cmd->add_option("--grid", wrapped.grid_points, "Table rows per curve")->capture_default_str();
    wrapped_cmd->add_option("--mode-grid", wrapped.mode_grid_points, "Grid for mode diagnostics")
        ->capture_default_str();
    wrapped_cmd->add_option("--density", wrapped.density, "curve or marginal")
        ->check(CLI::IsMember({"curve", "marginal"}))
        ->capture_default_str();
    wrapped_cmd->add_option("--output-dir", wrapped.output_dir, "Directory for the tables")->capture_default_str();

    // sample
    SampleConfig sample;
    auto* sample_cmd = app.add_subcommand("sample", "Draw a seeded sample and write it as csv-xyz");
    sample_cmd->add_option("--distribution", sample.distribution, "vmf, uniform or wrapped-normal")
        ->check(CLI::IsMember({"vmf", "uniform", "wrapped-normal"}))
        ->capture_default_str();
    sample_cmd->add_option("-n,--n", sample.n, "Sample size")->capture_default_str();
    sample_cmd->add_option("--dimension", sample.dimension, "Ambient dimension q")->capture_default_str();
    sample_cmd->add_option("--kappa", sample.kappa, "vMF concentration")->capture_default_str();
    sample_cmd->add_option("--mu", mu, "Mean direction / base point (default: north pole)");
    sample_cmd->add_option("--sigma2", sample.sigma2, "Wrapped-normal tangent variance")->capture_default_str();
    sample_cmd->add_option("--method", sample.method, "vMF sampler: auto, inverse-cdf or rejection")
        ->check(CLI::IsMember({"auto", "inverse-cdf", "rejection"}))
        ->capture_default_str();
    sample_cmd->add_option("-o,--output", sample.output_path, "Output CSV")->capture_default_str();

    // reproduce-hospers
    HospersOptions hospers;
    std::string plot_path;
    std::string table_path;
    auto* hospers_cmd = app.add_subcommand("reproduce-hospers", "Reanalysis of the bundled Hospers datasets");
    hospers_cmd->add_option("--data-dir", hospers.bundle_dir, "Data bundle directory")->capture_default_str();
    hospers_cmd->add_option("--plot", plot_path, "Write the Data-1 Lambert SVG here");
    hospers_cmd->add_option("--table", table_path, "Write the Data-1 projected (u, v) CSV here");
    hospers_cmd->add_option("--bootstrap", hospers.bootstrap_replicates, "Bootstrap replicates for the reversal test")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("usage", kUsage, e.what());
    }

    const InputSpec in{input, parse_input_format(g.input_format), g.up_positive};
    if (*summary) {
        emit(g, cmd_summary({in, optional_vector(pole, "pole")}));
    } else if (*fit_cmd) {
        fit.input = in;
        fit.mu = optional_vector(mu, "mu");
        fit.pole = optional_vector(pole, "pole");
        fit.equation = equation == "stationary" ? estimation::KnownAxisEquation::Stationary
                                                : estimation::KnownAxisEquation::ScaledArgument;
        fit.tolerance = g.tolerance;
        emit(g, cmd_fit(fit));
    } else if (*test_cmd) {
        test.input = in;
        test.mu0 = parse_vector(mu0, "mu0");
        test.seed = g.seed;
        emit(g, cmd_test_mean(test));
    } else if (*project_cmd) {
        project.input = in;
        project.center = optional_vector(center, "center");
        emit(g, cmd_project(project));
    } else if (*wrapped_cmd) {
        wrapped.sigma2 = parse_vector(sigma2_list, "sigma2");
        emit(g, cmd_wrapped_pdf(wrapped));
    } else if (*sample_cmd) {
        sample.mu = optional_vector(mu, "mu");
        sample.seed = g.seed;
        emit(g, cmd_sample(sample));
    } else if (*hospers_cmd) {
        hospers.seed = g.seed;
        if (!plot_path.empty()) hospers.plot_path = plot_path;
        if (!table_path.empty()) hospers.table_path = table_path;
        emit(g, cmd_reproduce_hospers(hospers));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dirstat::ParseError& e) {
        return fail("parse_error", kParse, e.what());
    } catch (const dirstat::DegenerateSampleError& e) {
        return fail("degenerate_data", kDegenerate, e.what());
    } catch (const dirstat::ConvergenceError& e) {
        return fail("non_convergence", kNonConvergence, e.what());
    } catch (const dirstat::OverflowError& e) {
        return fail("overflow", kNonConvergence, e.what());
    } catch (const dirstat::MissingDataError& e) {
        return fail("missing_data", kMissingData, e.what());
    } catch (const dirstat::IoError& e) {
        return fail("io_error", kIo, e.what());
    } catch (const dirstat::DomainError& e) {
        return fail("invalid_argument", kUsage, e.what());
    } catch (const dirstat::DimensionMismatch& e) {
        return fail("dimension_mismatch", kUsage, e.what());
    } catch (const std::exception& e) {
        return fail("internal", kInternal, e.what());
    }
}
