#pragma once

// CSV ingestion of direction data.
//
// A header row is required. Recognized layouts:
//   x,y,z          cartesian on S_2
//   x1,...,xq      cartesian on S_{q-1}
//   dec,inc        declination/inclination in degrees
// optionally followed by a trailing `site` column. Blank lines and lines
// starting with '#' are skipped.
//
// Declination/inclination use the north-east-down convention with
// inclination positive downward:
//   x = cos(inc) cos(dec), y = cos(inc) sin(dec), z = -sin(inc).
// `up_positive` flips the sign of inclination before conversion.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "dirstat/geometry.hpp"

namespace dirstat::analysis {

using geometry::UnitVector;

enum class InputFormat { Auto, CsvXyz, CsvDecInc };

/// "auto", "csv-xyz" or "csv-decinc"; throws DomainError otherwise.
[[nodiscard]] InputFormat parse_input_format(std::string_view name);
[[nodiscard]] std::string_view to_string(InputFormat f);

struct CartesianRecord {
    Eigen::VectorXd coords;
};

struct AngularRecord {
    double declination_deg = 0.0;
    double inclination_deg = 0.0;
};

struct DirectionRecord {
    std::variant<CartesianRecord, AngularRecord> value;
    std::optional<std::string> site;
    std::size_t line = 0;

    [[nodiscard]] UnitVector to_unit_vector(bool up_positive = false) const;
};

[[nodiscard]] UnitVector from_dec_inc(double declination_deg, double inclination_deg, bool up_positive = false);

struct DecInc {
    double declination_deg = 0.0;  ///< [0, 360)
    double inclination_deg = 0.0;
};

/// Inverse of from_dec_inc for points of S_2.
[[nodiscard]] DecInc to_dec_inc(const UnitVector& v, bool up_positive = false);

struct IngestOptions {
    InputFormat format = InputFormat::Auto;
    bool up_positive = false;
    double normalization_warning = 1e-6;
};

struct Dataset {
    std::vector<DirectionRecord> records;
    std::vector<UnitVector> directions;
    std::vector<std::string> warnings;
    InputFormat format = InputFormat::Auto;

    [[nodiscard]] bool has_sites() const;
};

/// Throws IoError if the file cannot be read, ParseError on malformed content.
[[nodiscard]] Dataset ingest(const std::string& path, const IngestOptions& options = {});
[[nodiscard]] Dataset ingest_stream(std::istream& in, const IngestOptions& options = {});

/// Header `x,y,z` (or x1..xq), 17 significant digits.
void write_csv_xyz(std::ostream& out, std::span<const UnitVector> sample);
/// Header `dec,inc`, 17 significant digits; S_2 only.
void write_csv_decinc(std::ostream& out, std::span<const UnitVector> sample, bool up_positive = false);

}  // namespace dirstat::analysis
