#pragma once

// Batch commands behind the `dirstat` executable. Each takes a validated
// configuration, runs the library operation, writes any side files, and
// returns the key-value report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirstat/analysis/hospers.hpp"
#include "dirstat/analysis/ingest.hpp"
#include "dirstat/analysis/report.hpp"
#include "dirstat/estimation.hpp"

namespace dirstat::analysis {

struct CommandOutput {
    Report report;
    std::vector<std::string> warnings;
};

struct InputSpec {
    std::string path;
    InputFormat format = InputFormat::Auto;
    bool up_positive = false;
};

struct SummaryConfig {
    InputSpec input;
    std::optional<std::vector<double>> pole;  ///< adds the sufficient statistic Σ μᵀyᵢ
};

struct FitConfig {
    InputSpec input;
    std::string method = "mle";  ///< mle | sme | known-pole | known-axis | axial
    std::optional<std::vector<double>> mu;  ///< sme: known mean direction (default: sample mean direction)
    std::optional<std::vector<double>> pole;  ///< known-pole / known-axis / axial (default: north pole)
    estimation::KnownAxisEquation equation = estimation::KnownAxisEquation::Stationary;
    double tolerance = 1e-10;
};

struct TestMeanConfig {
    InputSpec input;
    std::vector<double> mu0;
    double level = 0.05;
    std::size_t bootstrap_replicates = 0;
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

struct ProjectConfig {
    InputSpec input;
    std::optional<std::vector<double>> center;  ///< default: sample mean direction
    std::string table_path = "projection.csv";
    std::string plot_path = "projection.svg";
};

struct WrappedPdfConfig {
    std::vector<double> sigma2 = {0.1, 1.0, 2.0};
    int grid_points = 500;  ///< table rows, at θᵢ = π (i + ½) / grid_points
    int mode_grid_points = 10000;
    std::string density = "curve";  ///< curve | marginal
    std::string output_dir = ".";
};

struct SampleConfig {
    std::string distribution = "vmf";  ///< vmf | uniform | wrapped-normal
    std::size_t n = 100;
    int dimension = 3;  ///< ambient q
    double kappa = 1.0;
    std::optional<std::vector<double>> mu;  ///< default: north pole
    double sigma2 = 1.0;
    std::string method = "auto";  ///< auto | inverse-cdf | rejection
    std::string output_path = "sample.csv";
    std::uint64_t seed = 0;
};

[[nodiscard]] CommandOutput cmd_summary(const SummaryConfig& config);
[[nodiscard]] CommandOutput cmd_fit(const FitConfig& config);
[[nodiscard]] CommandOutput cmd_test_mean(const TestMeanConfig& config);
[[nodiscard]] CommandOutput cmd_project(const ProjectConfig& config);
[[nodiscard]] CommandOutput cmd_wrapped_pdf(const WrappedPdfConfig& config);
[[nodiscard]] CommandOutput cmd_sample(const SampleConfig& config);
[[nodiscard]] CommandOutput cmd_reproduce_hospers(const HospersOptions& options);

/// File name used by wrapped-pdf for one σ² value.
[[nodiscard]] std::string wrapped_pdf_file_name(double sigma2);

}  // namespace dirstat::analysis
