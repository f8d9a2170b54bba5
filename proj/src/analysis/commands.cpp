#include "dirstat/analysis/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "dirstat/analysis/plot.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/random.hpp"
#include "dirstat/sampling.hpp"
#include "dirstat/wrapped_tangent.hpp"

namespace dirstat::analysis {

namespace {

namespace fs = std::filesystem;
using geometry::UnitVector;

constexpr double kDegree = std::numbers::pi / 180.0;

UnitVector to_unit(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw DomainError(std::string(what) + " is empty");
    return UnitVector(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

UnitVector require_dim(UnitVector v, int q, const char* what) {
    if (v.ambient_dim() != q) {
        throw DimensionMismatch(std::string(what) + " has " + std::to_string(v.ambient_dim()) +
                                " components but the data have " + std::to_string(q));
    }
    return v;
}

Dataset load(const InputSpec& in) { return ingest(in.path, {in.format, in.up_positive, 1e-6}); }

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void add_input(Report& r, const char* command, const InputSpec& in, const Dataset& data) {
    r.add("command", command);
    r.add("input", in.path);
    r.add("input_format", std::string(to_string(data.format)));
    r.add("n", data.directions.size());
    r.add("dimension", data.directions.front().ambient_dim());
    r.add("input_warnings", data.warnings.size());
}

estimation::FitMethod parse_method(const std::string& m) {
    if (m == "mle") return estimation::FitMethod::MLE;
    if (m == "sme") return estimation::FitMethod::SME;
    if (m == "known-pole") return estimation::FitMethod::FisherKnownPole;
    if (m == "known-axis") return estimation::FitMethod::FisherKnownAxis;
    if (m == "axial") return estimation::FitMethod::AxialMLE;
    throw DomainError("unknown fit method: " + m);
}

}  // namespace

CommandOutput cmd_summary(const SummaryConfig& config) {
    const Dataset data = load(config.input);
    const int q = data.directions.front().ambient_dim();
    std::optional<UnitVector> pole;
    if (config.pole) pole = require_dim(to_unit(*config.pole, "pole"), q, "pole");
    const estimation::SampleSummary s = estimation::summarize(data.directions, pole);

    CommandOutput out{{}, data.warnings};
    Report& r = out.report;
    add_input(r, "summary", config.input, data);
    r.add("mean_vector", s.mean_vector);
    r.add("mean_resultant_length", s.mean_resultant_length);
    if (s.mean_direction) {
        r.add("mean_direction", s.mean_direction->coords());
        if (q == 3) {
            const geometry::PolarAngles a = geometry::to_polar(*s.mean_direction);
            r.add("mean_colatitude_deg", a.theta / kDegree);
            r.add("mean_longitude_deg", a.phi / kDegree);
            const DecInc di = to_dec_inc(*s.mean_direction, config.input.up_positive);
            r.add("mean_declination_deg", di.declination_deg);
            r.add("mean_inclination_deg", di.inclination_deg);
        }
    } else {
        r.add("mean_direction", "undefined");
    }
    if (s.suff_stat_x) {
        r.add("pole", pole->coords());
        r.add("suff_stat_x", *s.suff_stat_x);
    }
    if (data.has_sites()) {
        std::vector<std::string> sites;
        for (const auto& rec : data.records) {
            if (rec.site && std::find(sites.begin(), sites.end(), *rec.site) == sites.end()) sites.push_back(*rec.site);
        }
        r.add("sites", sites.size());
    }
    return out;
}

CommandOutput cmd_fit(const FitConfig& config) {
    const estimation::FitMethod method = parse_method(config.method);
    if (!(config.tolerance > 0.0)) throw DomainError("tolerance must be positive");
    const Dataset data = load(config.input);
    const int q = data.directions.front().ambient_dim();
    const auto pole = [&] {
        return config.pole ? require_dim(to_unit(*config.pole, "pole"), q, "pole") : geometry::north_pole(q);
    };

    CommandOutput out{{}, data.warnings};
    Report& r = out.report;
    add_input(r, "fit", config.input, data);
    r.add("method", std::string(estimation::to_string(method)));

    special::RootOptions root;
    root.tolerance = config.tolerance;
    estimation::FitResult fit = [&]() -> estimation::FitResult {
        switch (method) {
            case estimation::FitMethod::MLE: return estimation::fit_mle(data.directions, root);
            case estimation::FitMethod::SME: {
                const UnitVector mu = config.mu ? require_dim(to_unit(*config.mu, "mu"), q, "mu")
                                                : estimation::summarize(data.directions).direction();
                r.add("mu_source", config.mu ? "given" : "sample-mean");
                return estimation::fit_sme(data.directions, mu);
            }
            case estimation::FitMethod::FisherKnownPole: {
                const UnitVector p = pole();
                r.add("suff_stat_x", *estimation::summarize(data.directions, p).suff_stat_x);
                return estimation::fit_known_pole(data.directions, p);
            }
            case estimation::FitMethod::FisherKnownAxis: {
                const geometry::AxialDirection axis(pole());
                r.add("suff_stat_x", *estimation::summarize(data.directions, axis.representative()).suff_stat_x);
                r.add("equation", config.equation == estimation::KnownAxisEquation::Stationary ? "stationary"
                                                                                              : "scaled-argument");
                return estimation::fit_known_axis(data.directions, axis, config.equation);
            }
            case estimation::FitMethod::AxialMLE: {
                const geometry::AxialDirection axis(pole());
                const estimation::AxialFitResult a = estimation::fit_axial_mle(data.directions, axis);
                r.add("lambda_hat", a.lambda_hat);
                return a.base;
            }
        }
        throw DomainError("unknown fit method");
    }();

    r.add("kappa_hat", fit.kappa_hat);
    r.add("mu_hat", fit.mu_hat.coords());
    r.add("mean_resultant_length", estimation::summarize(data.directions).mean_resultant_length);
    r.add("iterations", fit.diagnostics.iterations);
    r.add("residual", fit.diagnostics.residual);
    if (method == estimation::FitMethod::AxialMLE) r.add("sign_tie", fit.diagnostics.sign_tie);
    return out;
}

CommandOutput cmd_test_mean(const TestMeanConfig& config) {
    const Dataset data = load(config.input);
    const int q = data.directions.front().ambient_dim();
    const UnitVector mu0 = require_dim(to_unit(config.mu0, "mu0"), q, "mu0");
    estimation::MeanTestOptions options;
    options.level = config.level;
    options.bootstrap_replicates = config.bootstrap_replicates;
    options.seed = config.seed;
    options.threads = config.threads;
    const estimation::MeanDirectionTest t = estimation::test_mean_direction(data.directions, mu0, options);

    CommandOutput out{{}, data.warnings};
    Report& r = out.report;
    add_input(r, "test-mean", config.input, data);
    r.add("method", "likelihood-ratio");
    r.add("mu0", mu0.coords());
    r.add("mu_hat", estimation::summarize(data.directions).direction().coords());
    r.add("kappa_hat", t.kappa_hat);
    r.add("kappa_null", t.kappa_null);
    r.add("angle_to_mu0_deg", t.angle_to_null / kDegree);
    r.add("statistic", t.statistic);
    r.add("degrees_of_freedom", t.degrees_of_freedom);
    r.add("p_value", t.p_value);
    r.add("level", t.level);
    if (t.bootstrap_p_value) {
        r.add("bootstrap_replicates", t.bootstrap_replicates);
        r.add("bootstrap_seed", static_cast<std::int64_t>(config.seed));
        r.add("bootstrap_p_value", *t.bootstrap_p_value);
        r.add("bootstrap_decision", *t.bootstrap_reject ? "reject" : "accept");
    }
    r.add("decision", t.reject ? "reject" : "accept");
    return out;
}

CommandOutput cmd_project(const ProjectConfig& config) {
    const Dataset data = load(config.input);
    const int q = data.directions.front().ambient_dim();
    if (q != 3) throw DimensionMismatch("project needs data on S_2");
    const UnitVector center = config.center ? require_dim(to_unit(*config.center, "center"), q, "center")
                                            : estimation::summarize(data.directions).direction();
    const std::vector<PlanarPoint> points = project_sample(data.directions, center);
    {
        std::ofstream table = open_output(config.table_path);
        std::vector<std::optional<std::string>> sites;
        if (data.has_sites()) {
            for (const auto& rec : data.records) sites.push_back(rec.site);
        }
        write_projection_table(table, points, sites);
    }
    {
        std::ofstream plot = open_output(config.plot_path);
        write_projection_svg(plot, points, {"Lambert equal-area projection", 480});
    }
    double max_radius = 0.0;
    std::size_t inside = 0;
    for (const PlanarPoint& p : points) {
        const double radius = std::hypot(p.u, p.v);
        max_radius = std::max(max_radius, radius);
        inside += radius <= 2.0 ? 1 : 0;
    }
    CommandOutput out{{}, data.warnings};
    Report& r = out.report;
    add_input(r, "project", config.input, data);
    r.add("center", center.coords());
    r.add("projected_points", points.size());
    r.add("points_within_radius_2", inside);
    r.add("max_radius", max_radius);
    r.add("table", config.table_path);
    r.add("plot", config.plot_path);
    return out;
}

std::string wrapped_pdf_file_name(double sigma2) { return "wrapped_pdf_sigma2_" + format_real(sigma2) + ".csv"; }

CommandOutput cmd_wrapped_pdf(const WrappedPdfConfig& config) {
    if (config.sigma2.empty()) throw DomainError("wrapped-pdf needs at least one sigma2 value");
    if (config.grid_points < 2 || config.mode_grid_points < 16) throw DomainError("grid is too small");
    if (config.density != "curve" && config.density != "marginal") {
        throw DomainError("density must be 'curve' or 'marginal'");
    }
    for (double s2 : config.sigma2) {
        if (!(s2 > 0.0) || !std::isfinite(s2)) throw DomainError("sigma2 values must be positive");
    }
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create " + config.output_dir);

    CommandOutput out;
    Report& r = out.report;
    r.add("command", "wrapped-pdf");
    r.add("dimension", 3);
    r.add("density", config.density);
    r.add("grid_points", config.grid_points);
    r.add("curves", config.sigma2.size());
    const bool marginal = config.density == "marginal";
    char buf[64];
    for (std::size_t c = 0; c < config.sigma2.size(); ++c) {
        const double s2 = config.sigma2[c];
        const std::string path = (fs::path(config.output_dir) / wrapped_pdf_file_name(s2)).string();
        {
            std::ofstream table = open_output(path);
            table << "theta,density\n";
            for (int i = 0; i < config.grid_points; ++i) {
                const double theta = std::numbers::pi * (i + 0.5) / config.grid_points;
                const double value = marginal ? wrapped::wrapped_colatitude_marginal(s2, theta)
                                              : wrapped::wrapped_colatitude_density(s2, theta);
                std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", theta, value);
                table << buf;
            }
        }
        const wrapped::ModeReport modes = wrapped::mode_count(s2, config.mode_grid_points);
        const std::string key = "curve_" + std::to_string(c + 1) + "_";
        std::vector<double> masses;
        std::vector<double> peaks;
        for (const auto& region : modes.regions) {
            masses.push_back(region.mass);
            peaks.push_back(region.peak_theta);
        }
        r.add(key + "sigma2", s2);
        r.add(key + "table", path);
        r.add(key + "mode_count", modes.count());
        r.add(key + "dominant_modes", modes.dominant_count());
        r.add(key + "interior_minima", modes.interior_minima.size());
        r.add(key + "interior_minimum_theta", modes.interior_minima);
        r.add(key + "interior_maxima", modes.interior_maxima.size());
        r.add(key + "interior_maximum_theta", modes.interior_maxima);
        r.add(key + "mode_peak_theta", peaks);
        r.add(key + "mode_mass", masses);
        r.add(key + "left_divergent", modes.left_divergent);
        r.add(key + "right_divergent", modes.right_divergent);
        r.add(key + "unimodal_interior", modes.unimodal_interior());
    }
    return out;
}

CommandOutput cmd_sample(const SampleConfig& config) {
    if (config.n == 0) throw DomainError("n must be positive");
    if (config.dimension < 2) throw DomainError("dimension must be >= 2");
    const int q = config.dimension;
    const UnitVector mu = config.mu ? require_dim(to_unit(*config.mu, "mu"), q, "mu") : geometry::north_pole(q);
    sampling::SeededStream stream(config.seed, 0);

    CommandOutput out;
    Report& r = out.report;
    r.add("command", "sample");
    r.add("distribution", config.distribution);
    r.add("n", config.n);
    r.add("dimension", q);
    r.add("seed", static_cast<std::int64_t>(config.seed));

    std::vector<UnitVector> xs;
    if (config.distribution == "vmf") {
        sampling::VmfMethod method = sampling::VmfMethod::Auto;
        if (config.method == "inverse-cdf") {
            method = sampling::VmfMethod::InverseCdf;
        } else if (config.method == "rejection") {
            method = sampling::VmfMethod::Rejection;
        } else if (config.method != "auto") {
            throw DomainError("unknown sampling method: " + config.method);
        }
        sampling::SamplerStats stats;
        xs = sampling::sample_vmf(dist::VmfParams(mu, config.kappa), config.n, stream, method, &stats);
        r.add("kappa", config.kappa);
        r.add("mu", mu.coords());
        r.add("method", config.method);
        r.add("acceptance_rate", stats.acceptance_rate());
    } else if (config.distribution == "uniform") {
        xs = sampling::sample_uniform_sphere(q - 1, config.n, stream);
    } else if (config.distribution == "wrapped-normal") {
        xs = sampling::sample_wrapped_sphere(wrapped::WrappedSpec::normal(q, config.sigma2).with_base(mu), config.n,
                                             stream);
        r.add("sigma2", config.sigma2);
        r.add("mu", mu.coords());
    } else {
        throw DomainError("unknown distribution: " + config.distribution);
    }
    std::ofstream file = open_output(config.output_path);
    write_csv_xyz(file, xs);
    file.flush();
    if (!file) throw IoError("write failed: " + config.output_path);
    r.add("output", config.output_path);
    return out;
}

CommandOutput cmd_reproduce_hospers(const HospersOptions& options) {
    HospersResult result = reproduce_hospers(options);
    CommandOutput out;
    out.report.add("command", "reproduce-hospers");
    out.report.merge(result.report);
    return out;
}

}  // namespace dirstat::analysis
