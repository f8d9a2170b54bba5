#pragma once

// Flat key-value reports. The text form is one `key = value` line per entry,
// in insertion order; reals are printed to 6 significant figures and vectors
// as comma-separated components. The JSON form carries the same entries.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace dirstat::analysis {

enum class ReportFormat { KeyValue, Json };

/// "kv" or "json"; throws DomainError otherwise.
[[nodiscard]] ReportFormat parse_report_format(std::string_view name);

class Report {
public:
    using Value = std::variant<std::string, double, std::int64_t, bool, std::vector<double>>;

    struct Entry {
        std::string key;
        Value value;
    };

    Report& add(std::string key, std::string value);
    Report& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    Report& add(std::string key, double value);
    Report& add(std::string key, std::int64_t value);
    Report& add(std::string key, int value) { return add(std::move(key), static_cast<std::int64_t>(value)); }
    Report& add(std::string key, std::size_t value) { return add(std::move(key), static_cast<std::int64_t>(value)); }
    Report& add(std::string key, bool value);
    Report& add(std::string key, const Eigen::VectorXd& value);
    Report& add(std::string key, std::vector<double> value);

    /// Appends every entry of `other` with `prefix` prepended to its key.
    Report& merge(const Report& other, std::string_view prefix = {});

    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    /// Throws std::out_of_range for an unknown key.
    [[nodiscard]] const Value& at(std::string_view key) const;
    [[nodiscard]] bool contains(std::string_view key) const;

    void write(std::ostream& out, ReportFormat format = ReportFormat::KeyValue) const;
    [[nodiscard]] std::string str(ReportFormat format = ReportFormat::KeyValue) const;

private:
    Report& push(std::string key, Value value);
    std::vector<Entry> entries_;
};

/// 6-significant-figure rendering used by the text form.
[[nodiscard]] std::string format_real(double value);

/// UTC time as 2026-01-01T00:00:00Z.
[[nodiscard]] std::string utc_timestamp();

}  // namespace dirstat::analysis
