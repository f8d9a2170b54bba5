#include "dirstat/analysis/hospers.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

#include "dirstat/analysis/plot.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/estimation.hpp"

#ifndef DIRSTAT_DATA_DIR
#define DIRSTAT_DATA_DIR "data"
#endif

namespace dirstat::analysis {

namespace {

namespace fs = std::filesystem;

constexpr double kDegree = std::numbers::pi / 180.0;
constexpr const char* kManifestName = "MANIFEST.json";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ValueCheck within(std::string name, double value, double target, double tolerance) {
    return {std::move(name), value, target, tolerance, false, std::abs(value - target) <= tolerance};
}

ValueCheck above(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, 0.0, true, value > threshold};
}

std::string describe(const ValueCheck& c) {
    std::string text = c.pass ? "pass" : "fail";
    text += " (value=" + format_real(c.value);
    if (c.threshold) {
        text += " required>" + format_real(c.target) + ")";
    } else {
        text += " target=" + format_real(c.target) + " tolerance=" + format_real(c.tolerance) + ")";
    }
    return text;
}

}  // namespace

const BundleFile& BundleManifest::file(std::string_view name) const {
    for (const BundleFile& f : files) {
        if (f.name == name) return f;
    }
    throw MissingDataError("manifest has no entry '" + std::string(name) + "'");
}

std::string default_bundle_dir() { return (fs::path(DIRSTAT_DATA_DIR) / "hospers").string(); }

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

BundleManifest load_manifest(const std::string& bundle_dir) {
    const fs::path path = fs::path(bundle_dir) / kManifestName;
    if (!fs::exists(path)) throw MissingDataError("data bundle manifest not found: " + path.string());
    try {
        const nlohmann::json doc = nlohmann::json::parse(read_file(path.string()));
        BundleManifest m;
        m.provenance = doc.at("provenance").get<std::string>();
        m.source = doc.value("source", "");
        for (const auto& f : doc.at("files")) {
            m.files.push_back({f.at("name").get<std::string>(), f.at("path").get<std::string>(),
                               parse_input_format(f.at("format").get<std::string>()), f.at("rows").get<std::size_t>(),
                               f.at("sha256").get<std::string>()});
        }
        if (m.provenance != "surrogate" && m.provenance != "transcribed") {
            throw MissingDataError("unknown provenance '" + m.provenance + "'");
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw MissingDataError("malformed manifest " + path.string() + ": " + e.what());
    } catch (const DomainError& e) {
        throw MissingDataError("malformed manifest " + path.string() + ": " + e.what());
    }
}

Dataset load_bundle_file(const std::string& bundle_dir, const BundleManifest& manifest, std::string_view name) {
    const BundleFile& entry = manifest.file(name);
    const fs::path path = fs::path(bundle_dir) / entry.path;
    if (!fs::exists(path)) throw MissingDataError("bundled data file not found: " + path.string());
    const std::string bytes = read_file(path.string());
    if (sha256_hex(bytes) != entry.sha256) throw MissingDataError("checksum mismatch for " + path.string());
    std::istringstream in(bytes);
    Dataset data = ingest_stream(in, {entry.format, false, 1e-6});
    if (data.directions.size() != entry.rows) throw MissingDataError("row count mismatch for " + path.string());
    return data;
}

void write_manifest(const std::string& bundle_dir, const BundleManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["provenance"] = manifest.provenance;
    doc["source"] = manifest.source;
    doc["files"] = nlohmann::ordered_json::array();
    for (const BundleFile& f : manifest.files) {
        doc["files"].push_back({{"name", f.name},
                                {"path", f.path},
                                {"format", std::string(to_string(f.format))},
                                {"rows", f.rows},
                                {"sha256", f.sha256}});
    }
    const fs::path path = fs::path(bundle_dir) / kManifestName;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

bool HospersResult::all_pass() const {
    for (const ValueCheck& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

const ValueCheck& HospersResult::check(std::string_view name) const {
    for (const ValueCheck& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no check named " + std::string(name));
}

HospersResult reproduce_hospers(const HospersOptions& options) {
    const BundleManifest manifest = load_manifest(options.bundle_dir);
    const Dataset data1 = load_bundle_file(options.bundle_dir, manifest, "data1");
    const Dataset data2 = load_bundle_file(options.bundle_dir, manifest, "data2");

    HospersResult result;
    Report& r = result.report;
    r.add("mode", manifest.surrogate() ? "summary-statistic" : "raw");
    r.add("provenance", manifest.provenance);

    const estimation::FitResult fit1 = estimation::fit_mle(data1.directions);
    result.data1_projection = project_sample(data1.directions, fit1.mu_hat);
    std::size_t inside = 0;
    double max_radius = 0.0;
    for (const auto& p : result.data1_projection) {
        const double radius = std::hypot(p.u, p.v);
        max_radius = std::max(max_radius, radius);
        if (radius <= 2.0) ++inside;
    }
    r.add("data1_n", data1.directions.size());
    r.add("data1_kappa_hat", fit1.kappa_hat);
    r.add("data1_mu_hat", fit1.mu_hat.coords());
    r.add("data1_projected_points", inside);
    r.add("data1_max_projected_radius", max_radius);
    if (options.table_path) {
        std::ofstream out(*options.table_path);
        if (!out) throw IoError("cannot write " + *options.table_path);
        write_projection_table(out, result.data1_projection);
        r.add("data1_table", *options.table_path);
    }
    if (options.plot_path) {
        std::ofstream out(*options.plot_path);
        if (!out) throw IoError("cannot write " + *options.plot_path);
        write_projection_svg(out, result.data1_projection, {"Remanent magnetism Data 1", 480});
        r.add("data1_plot", *options.plot_path);
    }

    const estimation::FitResult fit2 = estimation::fit_mle(data2.directions);
    const geometry::UnitVector h0(Eigen::VectorXd(hospers::kReversedField));
    estimation::MeanTestOptions test_options;
    test_options.level = hospers::kLevel;
    test_options.bootstrap_replicates = options.bootstrap_replicates;
    test_options.seed = options.seed;
    const estimation::MeanDirectionTest test = estimation::test_mean_direction(data2.directions, h0, test_options);
    const double angle_deg = test.angle_to_null / kDegree;
    r.add("data2_n", data2.directions.size());
    r.add("data2_kappa_hat", fit2.kappa_hat);
    r.add("data2_mu_hat", fit2.mu_hat.coords());
    r.add("data2_angle_to_h0_deg", angle_deg);
    r.add("data2_lr_statistic", test.statistic);
    r.add("data2_degrees_of_freedom", test.degrees_of_freedom);
    r.add("data2_p_value", test.p_value);
    if (test.bootstrap_p_value) {
        r.add("data2_bootstrap_replicates", test.bootstrap_replicates);
        r.add("data2_bootstrap_p_value", *test.bootstrap_p_value);
    }
    r.add("data2_decision", test.reject ? "reject" : "accept");

    auto& checks = result.checks;
    checks.push_back(within("data1_kappa_hat", fit1.kappa_hat, hospers::kData1Kappa, hospers::kKappaTolerance));
    checks.push_back(above("data1_highly_concentrated", fit1.kappa_hat, hospers::kHighlyConcentrated));
    checks.push_back(within("data1_projected_points", static_cast<double>(inside),
                            static_cast<double>(hospers::kData1Size), 0.0));
    checks.push_back(within("data2_kappa_hat", fit2.kappa_hat, hospers::kData2Kappa, hospers::kKappaTolerance));
    const char* axes[] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
        checks.push_back(within(std::string("data2_mu_hat_") + axes[i], fit2.mu_hat[i],
                                hospers::kData2MeanDirection(i), hospers::kComponentTolerance));
    }
    checks.push_back(within("data2_angle_to_h0_deg", angle_deg, hospers::kAngleToReversedDeg,
                            hospers::kAngleToleranceDeg));
    checks.push_back(above("data2_reversal_test_accept", test.p_value, hospers::kLevel));

    std::size_t passed = 0;
    for (const ValueCheck& c : checks) {
        r.add("check_" + c.name, describe(c));
        passed += c.pass ? 1 : 0;
    }
    r.add("checks_passed", passed);
    r.add("checks_failed", checks.size() - passed);
    return result;
}

}  // namespace dirstat::analysis
