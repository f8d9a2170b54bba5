// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dirstat/analysis/commands.hpp"
#include "dirstat/analysis/hospers.hpp"
#include "dirstat/distributions.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/estimation.hpp"
#include "dirstat/geometry.hpp"
#include "dirstat/sampling.hpp"
#include "dirstat/special_functions.hpp"
#include "dirstat/wrapped_tangent.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dirstat;
using geometry::UnitVector;
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

const std::string kBundle = std::string(DIRSTAT_TEST_DATA_DIR) + "/hospers";
const std::string kCli = DIRSTAT_CLI_PATH;

// Pinned tolerances and budgets.
constexpr double kNormTol = 1e-6;
constexpr double kCapNormTol = 1e-4;
constexpr double kCapEpsilon = 1e-4;
constexpr double kIdentityTol = 1e-10;
constexpr double kCaseGapFinal = 1e-8;
constexpr double kRecoveryRelTol = 0.05;
constexpr double kRecoveryAngleDeg = 1.0;
constexpr double kKsLevel = 0.01;
constexpr double kDominantMass = 0.01;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

class Notes {
public:
    void check(bool ok, const std::string& what) {
        pass_ = pass_ && ok;
        if (!ok) failed_.push_back(what);
    }
    void note(const std::string& text) { notes_.push_back(text); }
    [[nodiscard]] Outcome outcome() const {
        Outcome o{pass_, ""};
        std::vector<std::string> parts = notes_;
        if (!failed_.empty()) {
            std::string f = "failed:";
            for (const auto& s : failed_) f += " " + s;
            parts.push_back(f);
        }
        for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
        return o;
    }

private:
    bool pass_ = true;
    std::vector<std::string> notes_;
    std::vector<std::string> failed_;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

double integrate_suff_range(const std::function<double(double)>& f, double lo, double hi) {
    double total = 0.0;
    for (double a = lo; a < hi; a += 1.0) total += oracle::gauss_legendre(f, a, std::min(a + 1.0, hi), 4);
    return total;
}

Outcome hospers_data2() {
    analysis::HospersOptions options;
    options.bundle_dir = kBundle;
    options.bootstrap_replicates = 0;
    const auto result = analysis::reproduce_hospers(options);
    Notes n;
    for (const char* name : {"data2_kappa_hat", "data2_mu_hat_x", "data2_mu_hat_y", "data2_mu_hat_z",
                             "data2_angle_to_h0_deg", "data2_reversal_test_accept"}) {
        const auto& c = result.check(name);
        n.note(std::string(name) + "=" + fmt(c.value));
        n.check(c.pass, name);
    }
    return n.outcome();
}

Outcome hospers_data1() {
    analysis::HospersOptions options;
    options.bundle_dir = kBundle;
    options.bootstrap_replicates = 0;
    const auto result = analysis::reproduce_hospers(options);
    Notes n;
    const auto manifest = analysis::load_manifest(kBundle);
    n.note("provenance=" + manifest.provenance);
    const auto& k = result.check("data1_kappa_hat");
    n.note("kappa_hat=" + fmt(k.value));
    n.check(k.pass, "data1_kappa_hat");
    n.check(result.check("data1_highly_concentrated").pass, "data1_highly_concentrated");
    n.note("projected=" + std::to_string(result.data1_projection.size()));
    n.check(result.data1_projection.size() == analysis::hospers::kData1Size, "projection_size");
    n.check(result.check("data1_projected_points").pass, "data1_projected_points");
    return n.outcome();
}

Outcome normalization_suite() {
    Notes n;
    double worst = 0.0;
    int count = 0;
    const auto expect_one = [&](double total, double tol, const std::string& what) {
        worst = std::max(worst, std::abs(total - 1.0));
        ++count;
        n.check(std::abs(total - 1.0) <= tol, what + "=" + fmt(total, 12));
    };

    for (double k : {0.0, 0.5, 7.51, 39.53}) {
        const dist::VmfParams s2(UnitVector{0.3, -0.4, 0.8}, k), s1(UnitVector{0.6, 0.8}, k);
        expect_one(oracle::sphere_integral(
                       [&](double x, double y, double z) {
                           return std::exp(dist::vmf_log_density(s2, UnitVector{x, y, z}).value);
                       },
                       48),
                   kNormTol, "vmf_s2_k" + fmt(k));
        expect_one(oracle::gauss_legendre(
                       [&](double t) {
                           return std::exp(dist::vmf_log_density(s1, UnitVector{std::cos(t), std::sin(t)}).value);
                       },
                       0.0, 2.0 * kPi, 128),
                   kNormTol, "vmf_s1_k" + fmt(k));
        expect_one(oracle::gauss_legendre([&](double t) { return dist::fisher_colatitude_density(k, t).value; }, 0.0,
                                          kPi, 128),
                   kNormTol, "colatitude_k" + fmt(k));
    }
    for (int N = 1; N <= 6; ++N) {
        for (double k : {0.0, 1.0, 5.0}) {
            const std::string tag = "_N" + std::to_string(N) + "_k" + fmt(k);
            expect_one(integrate_suff_range([&](double x) { return dist::suff_stat_density(x, N, k).value; }, -N, N),
                       kNormTol, "g" + tag);
            expect_one(
                integrate_suff_range([&](double x) { return dist::axial_suff_stat_density(x, N, k).value; }, 0.0, N),
                kNormTol, "axial" + tag);
        }
    }
    for (const dist::FiducialSpec& s : {dist::FiducialSpec{10, 0.05, 1.0, 0.7}, dist::FiducialSpec{10, 0.3, 1.0, -2.0},
                                        dist::FiducialSpec{45, 0.87, 1.0, 3.0}}) {
        expect_one(oracle::gauss_legendre([&](double t) { return dist::fiducial_conditional_density(s, t).value; },
                                          -kPi, kPi, 256),
                   kNormTol, "fiducial_nR" + fmt(s.n * s.rbar));
    }
    Eigen::Matrix3d full;
    full << 1.0, 0.4, -0.2, 0.4, 2.0, 0.3, -0.2, 0.3, 0.5;
    int idx = 0;
    for (const Eigen::Matrix3d& a : {Eigen::Matrix3d(Eigen::Vector3d(0.0, 0.0, 3.0).asDiagonal()),
                                     Eigen::Matrix3d(Eigen::Vector3d(-1.0, 0.5, 2.0).asDiagonal()), full}) {
        const dist::BinghamParams p(a);
        const double z = dist::bingham_normalizer(p);
        expect_one(oracle::sphere_integral(
                       [&](double x, double y, double w) {
                           return std::exp(dist::bingham_log_density(p, UnitVector{x, y, w}, z).value);
                       },
                       48),
                   kNormTol, "bingham_" + std::to_string(idx++));
    }
    double cap_worst = 0.0;
    for (double s2 : {0.1, 1.0, 2.0}) {
        const auto spec = wrapped::WrappedSpec::normal(3, s2);
        const double total = 2.0 * kPi * oracle::gauss_legendre(
                                             [&](double t) {
                                                 const UnitVector y{std::sin(t), 0.0, std::cos(t)};
                                                 return wrapped::wrapped_sphere_density(spec, y).value() * std::sin(t);
                                             },
                                             kCapEpsilon, kPi - kCapEpsilon, 256);
        cap_worst = std::max(cap_worst, std::abs(total - 1.0));
        n.check(std::abs(total - 1.0) <= kCapNormTol, "wrapped_s2_sigma2_" + fmt(s2) + "=" + fmt(total, 12));
    }
    n.note(std::to_string(count) + " densities, max |total-1|=" + fmt(worst, 3));
    n.note("wrapped S_2 with caps max |total-1|=" + fmt(cap_worst, 3));
    return n.outcome();
}

Outcome exact_identities() {
    Notes n;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double k = 0.01 * std::pow(70000.0, i / 999.0);
        worst = std::max(worst, std::abs(special::mean_resultant_fn(2, k) - (1.0 / std::tanh(k) - 1.0 / k)));
    }
    n.note("A_2 max dev=" + fmt(worst, 3));
    n.check(worst <= kIdentityTol, "A_2");

    bool p1 = true;
    for (double x = -1.0; x <= 1.0; x += 0.125) p1 = p1 && dist::suff_stat_polynomial(x, 1) == 1.0;
    n.check(p1, "P(x,1)=1");
    n.check(dist::suff_stat_polynomial(0.0, 2) == 2.0, "P(0,2)=2");
    // Density of the sum of two independent cos θ ~ U(-1, 1) at 0: ∫ ½·½ dt over [-1, 1].
    const double conv = oracle::gauss_legendre([](double) { return 0.25; }, -1.0, 1.0, 4);
    const double g2 = dist::suff_stat_density(0.0, 2, 0.0).value;
    n.note("g_2(0)=" + fmt(g2, 12) + " oracle=" + fmt(conv, 12));
    n.check(std::abs(g2 - 0.5) <= kIdentityTol && std::abs(g2 - conv) <= kIdentityTol, "g_2(0)");

    double fold_worst = 0.0;
    for (double s2 : {0.1, 1.0, 2.0, 5.0}) {
        const double sd = std::sqrt(s2);
        const wrapped::LineDensity g = [&](double t) { return std::exp(-t * t / (2.0 * s2)) / (sd * std::sqrt(2.0 * kPi)); };
        for (int i = 0; i <= 200; ++i) {
            const double t = kPi * i / 200.0;
            const double oracle_value = oracle::wrapped_normal_lattice(t, s2);
            fold_worst = std::max(fold_worst, std::abs(wrapped::wrapped_circle_arc_density(g, t) - oracle_value));
            fold_worst = std::max(fold_worst, std::abs(wrapped::wrapped_circle_density(g, t) - 2.0 * oracle_value));
        }
    }
    n.note("fold max dev=" + fmt(fold_worst, 3));
    n.check(fold_worst <= kIdentityTol, "fold");

    bool same = true;
    for (int N : {1, 5, 45, 500}) {
        for (double r : {0.05, 0.3, 0.8, 0.95, 0.999}) {
            same = same && estimation::fit_fisher_known_pole(r * N, N).value == special::inverse_mean_resultant(2, r);
        }
    }
    n.check(same, "known_pole_root");
    return n.outcome();
}

Outcome estimator_convergence() {
    Notes n;
    std::vector<double> gaps;
    for (int N : {5, 10, 50, 500}) {
        const double x = 0.8 * N;
        const double axis = estimation::fit_fisher_known_axis(x, N).value;
        const double pole = estimation::fit_fisher_known_pole(x, N).value;
        const double scaled = estimation::fit_fisher_known_axis(x, N, estimation::KnownAxisEquation::ScaledArgument).value;
        gaps.push_back(std::abs(axis - pole));
        n.note("n=" + std::to_string(N) + " gap=" + fmt(gaps.back(), 3) +
               " scaled_argument_gap=" + fmt(std::abs(scaled - pole), 3));
    }
    bool monotone = true;
    // Strictly shrinking while positive; a gap that has reached exactly 0 must stay there.
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        monotone = monotone && (gaps[i - 1] > 0.0 ? gaps[i] < gaps[i - 1] : gaps[i] == 0.0);
    }
    n.check(monotone, "monotone");
    n.check(gaps.back() <= kCaseGapFinal, "final_gap");
    return n.outcome();
}

Outcome monte_carlo_recovery() {
    Notes n;
    const double kappa = 5.0;
    const UnitVector mu{0.2, -0.5, 0.8};
    const dist::VmfParams params(mu, kappa);
    sampling::SeededStream root(kSeed);
    sampling::SeededStream stream = root.substream(0);
    const auto sample = sampling::sample_vmf(params, 10000, stream);
    const auto mle = estimation::fit_mle(sample);
    const auto sme = estimation::fit_sme(sample, mu);
    const double angle = geometry::angle_between(mle.mu_hat, mu) / kDeg;
    n.note("kappa_mle=" + fmt(mle.kappa_hat) + " kappa_sme=" + fmt(sme.kappa_hat) + " angle_deg=" + fmt(angle));
    n.check(std::abs(mle.kappa_hat - kappa) <= kRecoveryRelTol * kappa, "mle");
    n.check(std::abs(sme.kappa_hat - kappa) <= kRecoveryRelTol * kappa, "sme");
    n.check(angle <= kRecoveryAngleDeg, "angle");

    double se_mle = 0.0, se_sme = 0.0;
    const int reps = 200;
    for (int r = 1; r <= reps; ++r) {
        sampling::SeededStream s = root.substream(static_cast<std::uint64_t>(r));
        const auto x = sampling::sample_vmf(params, 10000, s);
        se_mle += std::pow(estimation::fit_mle(x).kappa_hat - kappa, 2);
        se_sme += std::pow(estimation::fit_sme(x, mu).kappa_hat - kappa, 2);
    }
    n.note("mse_mle=" + fmt(se_mle / reps, 4) + " mse_sme=" + fmt(se_sme / reps, 4) +
           " sme/mle ratio=" + fmt(se_sme / se_mle, 4) + " (recorded, not gated)");
    return n.outcome();
}

Outcome gaussian_limit() {
    Notes n;
    const double kappa = 400.0;
    sampling::SeededStream stream(kSeed, 7);
    const auto s = sampling::sample_vmf(dist::VmfParams(geometry::north_pole(3), kappa), 100000, stream);
    std::vector<double> a, b;
    a.reserve(s.size());
    b.reserve(s.size());
    for (const auto& v : s) {
        const auto polar = geometry::to_polar(v);
        a.push_back(std::sqrt(kappa) * polar.theta * std::cos(polar.phi));
        b.push_back(std::sqrt(kappa) * polar.theta * std::sin(polar.phi));
    }
    const auto ka = oracle::ks_one_sample(a, oracle::normal_cdf), kb = oracle::ks_one_sample(b, oracle::normal_cdf);
    n.note("p_cos=" + fmt(ka.p_value, 4) + " p_sin=" + fmt(kb.p_value, 4));
    n.check(ka.p_value > kKsLevel, "ks_cos");
    n.check(kb.p_value > kKsLevel, "ks_sin");
    return n.outcome();
}

Outcome wrapped_claims() {
    Notes n;
    for (double s2 : {1.0, 2.0}) {
        const auto m = wrapped::mode_count(s2);
        n.note("sigma2=" + fmt(s2) + " interior_minima=" + std::to_string(m.interior_minima.size()) +
               " regions=" + std::to_string(m.count()));
        n.check(!m.interior_minima.empty() && m.count() > 1, "nonunimodal_sigma2_" + fmt(s2));
    }
    const auto m = wrapped::mode_count(0.1);
    double front = 0.0;
    for (const auto& r : m.regions) front = std::max(front, r.mass);
    n.note("sigma2=0.1 dominant_regions=" + std::to_string(m.dominant_count(kDominantMass)) +
           " largest_mass=" + fmt(front, 8));
    n.check(m.dominant_count(kDominantMass) == 1, "single_dominant_sigma2_0.1");

    const fs::path dir = fs::temp_directory_path() / "dirstat_acceptance_wrapped";
    fs::remove_all(dir);
    fs::create_directories(dir);
    analysis::WrappedPdfConfig config;
    config.output_dir = dir.string();
    const auto out = analysis::cmd_wrapped_pdf(config);
    int tables = 0;
    for (double s2 : config.sigma2) {
        std::ifstream in(dir / analysis::wrapped_pdf_file_name(s2));
        std::string line;
        int rows = -1;
        while (std::getline(in, line)) ++rows;
        if (rows == config.grid_points) ++tables;
    }
    n.note("tables=" + std::to_string(tables));
    n.check(tables == 3, "wrapped_pdf_tables");
    fs::remove_all(dir);
    return n.outcome();
}

int run_cli(const fs::path& dir, const std::string& args, const std::string& report) {
    const std::string cmd = "cd '" + dir.string() + "' && '" + kCli + "' --no-timestamp --seed 77 --report '" +
                            report + "' " + args + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    Notes n;
    const std::string data2 = "'" + kBundle + "/data2.csv'", data1 = "'" + kBundle + "/data1.csv'";
    const std::vector<std::pair<std::string, std::string>> suite = {
        {"summary.txt", "summary -i " + data2},
        {"fit.txt", "fit -i " + data2},
        {"fit_sme.txt", "fit --method sme -i " + data2},
        {"fit_axis.txt", "fit --method known-axis -i " + data1},
        {"test.txt", "test-mean -i " + data2 + " --mu0 \" -0.9724,-0.2334,0\" --bootstrap 199"},
        {"project.txt", "project -i " + data1},
        {"wrapped.txt", "wrapped-pdf"},
        {"sample.txt", "sample -n 2000 --kappa 5"},
        {"sample_wrapped.txt", "sample --distribution wrapped-normal -n 500 -o wrapped_sample.csv"},
        {"hospers.txt", "reproduce-hospers --data-dir '" + kBundle + "' --bootstrap 199"},
    };
    std::vector<fs::path> dirs;
    for (const char* name : {"run_a", "run_b"}) {
        const fs::path d = fs::temp_directory_path() / ("dirstat_acceptance_" + std::string(name));
        fs::remove_all(d);
        fs::create_directories(d);
        for (const auto& [report, args] : suite) {
            const int code = run_cli(d, args, report);
            n.check(code == 0, std::string(name) + ":" + report + " exit " + std::to_string(code));
        }
        dirs.push_back(d);
    }
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
        ++files;
        if (slurp(entry.path()) != slurp(dirs[1] / entry.path().filename())) {
            ++differing;
            n.check(false, "differs:" + entry.path().filename().string());
        }
    }
    n.note(std::to_string(files) + " files compared, " + std::to_string(differing) + " differ");
    n.check(files >= suite.size(), "file_count");
    for (const auto& d : dirs) fs::remove_all(d);
    return n.outcome();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "hospers-data2", 1.0, hospers_data2},
        {2, "hospers-data1", 1.0, hospers_data1},
        {3, "normalization-suite", 60.0, normalization_suite},
        {4, "exact-identities", 10.0, exact_identities},
        {5, "estimator-convergence", 1.0, estimator_convergence},
        {6, "monte-carlo-recovery", 60.0, monte_carlo_recovery},
        {7, "large-kappa-gaussian-limit", 30.0, gaussian_limit},
        {8, "wrapped-tangent-modes", 5.0, wrapped_claims},
        {9, "determinism", 120.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) {
            o.pass = false;
            o.detail += "; over runtime budget";
        }
        if (!o.pass) ++failures;
        std::printf("%s criterion %d %s (%.2f s, budget %.0f s): %s\n", o.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), seconds, c.budget_seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
