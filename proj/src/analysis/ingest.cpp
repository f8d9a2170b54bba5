#include "dirstat/analysis/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "dirstat/errors.hpp"

namespace dirstat::analysis {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& field, std::size_t line, const std::string& column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw ParseError("column '" + column + "': not a number: '" + field + "'", line);
    }
    if (!std::isfinite(value)) throw ParseError("column '" + column + "': non-finite value", line);
    return value;
}

struct Layout {
    InputFormat format = InputFormat::CsvXyz;
    std::vector<std::string> columns;
    bool site = false;
};

Layout read_header(const std::vector<std::string>& fields, std::size_t line, InputFormat requested) {
    std::vector<std::string> names;
    for (const std::string& f : fields) names.push_back(lower(f));
    Layout layout;
    if (!names.empty() && names.back() == "site") {
        layout.site = true;
        names.pop_back();
    }
    const auto is = [&](std::initializer_list<const char*> expected) {
        return std::equal(names.begin(), names.end(), expected.begin(), expected.end(),
                          [](const std::string& a, const char* b) { return a == b; });
    };
    bool indexed = names.size() >= 2;
    for (std::size_t i = 0; indexed && i < names.size(); ++i) indexed = names[i] == "x" + std::to_string(i + 1);

    if (is({"x", "y", "z"}) || indexed) {
        layout.format = InputFormat::CsvXyz;
    } else if (is({"dec", "inc"})) {
        layout.format = InputFormat::CsvDecInc;
    } else {
        throw ParseError("header must be x,y,z or x1..xq or dec,inc (optionally followed by site)", line);
    }
    if (requested != InputFormat::Auto && requested != layout.format) {
        throw ParseError("header does not match the requested format " + std::string(to_string(requested)), line);
    }
    layout.columns = names;
    return layout;
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
    if (name == "auto") return InputFormat::Auto;
    if (name == "csv-xyz") return InputFormat::CsvXyz;
    if (name == "csv-decinc") return InputFormat::CsvDecInc;
    throw DomainError("unknown input format: " + std::string(name));
}

std::string_view to_string(InputFormat f) {
    switch (f) {
        case InputFormat::Auto: return "auto";
        case InputFormat::CsvXyz: return "csv-xyz";
        case InputFormat::CsvDecInc: return "csv-decinc";
    }
    return "unknown";
}

UnitVector from_dec_inc(double declination_deg, double inclination_deg, bool up_positive) {
    const double dec = declination_deg * kDegree;
    const double inc = (up_positive ? -inclination_deg : inclination_deg) * kDegree;
    Eigen::VectorXd v(3);
    v << std::cos(inc) * std::cos(dec), std::cos(inc) * std::sin(dec), -std::sin(inc);
    return UnitVector(v);
}

DecInc to_dec_inc(const UnitVector& v, bool up_positive) {
    if (v.ambient_dim() != 3) throw DimensionMismatch("declination/inclination needs a point of S_2");
    double inc = std::asin(std::clamp(-v[2], -1.0, 1.0)) / kDegree;
    double dec = std::atan2(v[1], v[0]) / kDegree;
    if (dec < 0.0) dec += 360.0;
    if (dec >= 360.0) dec -= 360.0;
    if (up_positive) inc = -inc;
    return {dec, inc};
}

UnitVector DirectionRecord::to_unit_vector(bool up_positive) const {
    if (const auto* c = std::get_if<CartesianRecord>(&value)) return UnitVector(c->coords);
    const auto& a = std::get<AngularRecord>(value);
    return from_dec_inc(a.declination_deg, a.inclination_deg, up_positive);
}

bool Dataset::has_sites() const {
    return std::any_of(records.begin(), records.end(), [](const DirectionRecord& r) { return r.site.has_value(); });
}

Dataset ingest(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    return ingest_stream(in, options);
}

Dataset ingest_stream(std::istream& in, const IngestOptions& options) {
    Dataset data;
    std::optional<Layout> layout;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (line == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
        const std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const std::vector<std::string> fields = split_fields(text);
        if (!layout) {
            layout = read_header(fields, line, options.format);
            data.format = layout->format;
            continue;
        }
        const std::size_t expected = layout->columns.size() + (layout->site ? 1 : 0);
        if (fields.size() != expected) {
            throw ParseError("expected " + std::to_string(expected) + " fields, found " + std::to_string(fields.size()),
                             line);
        }
        DirectionRecord record;
        record.line = line;
        if (layout->site) record.site = fields.back();

        if (layout->format == InputFormat::CsvXyz) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(layout->columns.size()));
            for (std::size_t i = 0; i < layout->columns.size(); ++i) {
                v(static_cast<Eigen::Index>(i)) = parse_number(fields[i], line, layout->columns[i]);
            }
            const double norm = v.norm();
            if (!(norm > 0.0)) throw ParseError("zero vector", line);
            if (std::abs(norm - 1.0) > options.normalization_warning) {
                std::ostringstream msg;
                msg << "line " << line << ": vector norm " << std::setprecision(9) << norm << " normalized to 1";
                data.warnings.push_back(msg.str());
            }
            record.value = CartesianRecord{v};
        } else {
            const double dec = parse_number(fields[0], line, "dec");
            const double inc = parse_number(fields[1], line, "inc");
            if (inc < -90.0 || inc > 90.0) throw ParseError("inclination outside [-90, 90]", line);
            record.value = AngularRecord{dec, inc};
        }
        data.directions.push_back(record.to_unit_vector(options.up_positive));
        data.records.push_back(std::move(record));
    }
    if (in.bad()) throw IoError("read error");
    if (!layout) throw ParseError("empty file: no header row", line == 0 ? 1 : line);
    if (data.records.empty()) throw ParseError("no data rows", line);
    return data;
}

void write_csv_xyz(std::ostream& out, std::span<const UnitVector> sample) {
    if (sample.empty()) throw DomainError("nothing to write");
    const int q = sample.front().ambient_dim();
    if (q == 3) {
        out << "x,y,z\n";
    } else {
        for (int i = 0; i < q; ++i) out << (i ? "," : "") << 'x' << i + 1;
        out << '\n';
    }
    out << std::setprecision(17);
    for (const UnitVector& v : sample) {
        if (v.ambient_dim() != q) throw DimensionMismatch("sample mixes dimensions");
        for (int i = 0; i < q; ++i) out << (i ? "," : "") << v[i];
        out << '\n';
    }
}

void write_csv_decinc(std::ostream& out, std::span<const UnitVector> sample, bool up_positive) {
    out << "dec,inc\n" << std::setprecision(17);
    for (const UnitVector& v : sample) {
        const DecInc a = to_dec_inc(v, up_positive);
        out << a.declination_deg << ',' << a.inclination_deg << '\n';
    }
}

}  // namespace dirstat::analysis
