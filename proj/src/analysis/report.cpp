#include "dirstat/analysis/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dirstat/errors.hpp"

namespace dirstat::analysis {

namespace {

bool valid_key(std::string_view key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

double rounded(double value) {
    if (!std::isfinite(value)) return value;
    return std::stod(format_real(value));
}

nlohmann::ordered_json to_json(const Report::Value& value) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_real(v);
                return rounded(v);
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (double x : v) arr.push_back(std::isfinite(x) ? nlohmann::ordered_json(rounded(x)) : nlohmann::ordered_json(format_real(x)));
                return arr;
            } else {
                return v;
            }
        },
        value);
}

std::string to_text(const Report::Value& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                std::string out;
                for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
                return out;
            }
        },
        value);
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "kv") return ReportFormat::KeyValue;
    if (name == "json") return ReportFormat::Json;
    throw DomainError("unknown report format: " + std::string(name));
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

Report& Report::push(std::string key, Value value) {
    if (!valid_key(key)) throw std::invalid_argument("report keys must be snake_case: " + key);
    if (contains(key)) throw std::logic_error("duplicate report key: " + key);
    entries_.push_back({std::move(key), std::move(value)});
    return *this;
}

Report& Report::add(std::string key, std::string value) { return push(std::move(key), std::move(value)); }
Report& Report::add(std::string key, double value) { return push(std::move(key), value); }
Report& Report::add(std::string key, std::int64_t value) { return push(std::move(key), value); }
Report& Report::add(std::string key, bool value) { return push(std::move(key), value); }
Report& Report::add(std::string key, std::vector<double> value) { return push(std::move(key), std::move(value)); }

Report& Report::add(std::string key, const Eigen::VectorXd& value) {
    return push(std::move(key), std::vector<double>(value.data(), value.data() + value.size()));
}

Report& Report::merge(const Report& other, std::string_view prefix) {
    for (const Entry& e : other.entries_) push(std::string(prefix) + e.key, e.value);
    return *this;
}

const Report::Value& Report::at(std::string_view key) const {
    for (const Entry& e : entries_) {
        if (e.key == key) return e.value;
    }
    throw std::out_of_range("no report key: " + std::string(key));
}

bool Report::contains(std::string_view key) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.key == key; });
}

void Report::write(std::ostream& out, ReportFormat format) const {
    if (format == ReportFormat::KeyValue) {
        for (const Entry& e : entries_) out << e.key << " = " << to_text(e.value) << '\n';
        return;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const Entry& e : entries_) doc[e.key] = to_json(e.value);
    out << doc.dump(2) << '\n';
}

std::string Report::str(ReportFormat format) const {
    std::ostringstream out;
    write(out, format);
    return out.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace dirstat::analysis
