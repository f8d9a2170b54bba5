#pragma once

// The bundled Hospers remanent-magnetism data and the scripted reanalysis.
//
// The bundle directory holds MANIFEST.json with a provenance field
// ("transcribed" or "surrogate") and, per file, its format, row count and
// SHA-256. A surrogate bundle runs in summary-statistic mode: every check is
// still computed from the files, but the files are only guaranteed to
// reproduce the printed aggregates.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dirstat/analysis/ingest.hpp"
#include "dirstat/analysis/report.hpp"

namespace dirstat::analysis {

/// Printed aggregates of the two datasets.
namespace hospers {
inline constexpr std::size_t kData1Size = 9;
inline constexpr double kData1Kappa = 39.53;
inline constexpr double kHighlyConcentrated = 20.0;
inline constexpr std::size_t kData2Size = 45;
inline constexpr double kData2Kappa = 7.51;
inline const Eigen::Vector3d kData2MeanDirection{-0.9545, -0.2978, 0.0172};
inline const Eigen::Vector3d kPresentField{0.9724, 0.2334, 0.0};
inline const Eigen::Vector3d kReversedField{-0.9724, -0.2334, 0.0};
inline constexpr double kAngleToReversedDeg = 3.9;
inline constexpr double kKappaTolerance = 0.01;
inline constexpr double kComponentTolerance = 0.0005;
inline constexpr double kAngleToleranceDeg = 0.05;
inline constexpr double kLevel = 0.05;
}  // namespace hospers

struct BundleFile {
    std::string name;
    std::string path;  ///< relative to the bundle directory
    InputFormat format = InputFormat::CsvXyz;
    std::size_t rows = 0;
    std::string sha256;
};

struct BundleManifest {
    std::string provenance;
    std::string source;
    std::vector<BundleFile> files;

    [[nodiscard]] const BundleFile& file(std::string_view name) const;
    [[nodiscard]] bool surrogate() const { return provenance == "surrogate"; }
};

[[nodiscard]] std::string default_bundle_dir();

[[nodiscard]] std::string sha256_hex(std::string_view bytes);
/// Throws IoError when the file cannot be read.
[[nodiscard]] std::string sha256_file(const std::string& path);

/// Throws MissingDataError when the manifest is absent or malformed.
[[nodiscard]] BundleManifest load_manifest(const std::string& bundle_dir);

/// Reads one bundle file after checking its checksum and row count (MissingDataError on mismatch).
[[nodiscard]] Dataset load_bundle_file(const std::string& bundle_dir, const BundleManifest& manifest,
                                       std::string_view name);

void write_manifest(const std::string& bundle_dir, const BundleManifest& manifest);

struct ValueCheck {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  ///< |value - target| ≤ tolerance, or value > target for threshold checks
    bool threshold = false;
    bool pass = false;
};

struct HospersOptions {
    std::string bundle_dir = default_bundle_dir();
    std::optional<std::string> plot_path;   ///< Data-1 Lambert SVG
    std::optional<std::string> table_path;  ///< Data-1 projected (u, v)
    std::uint64_t seed = 0;
    std::size_t bootstrap_replicates = 999;
};

struct HospersResult {
    Report report;
    std::vector<ValueCheck> checks;
    std::vector<geometry::PlanarPoint> data1_projection;

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const ValueCheck& check(std::string_view name) const;
};

[[nodiscard]] HospersResult reproduce_hospers(const HospersOptions& options = {});

}  // namespace dirstat::analysis
