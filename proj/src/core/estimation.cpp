#include "dirstat/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "dirstat/distributions.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/random.hpp"
#include "dirstat/sampling.hpp"

namespace dirstat::estimation {

namespace {

// R̄ closer than this to 0 or 1 is treated as exactly degenerate.
constexpr double kDegenerateGap = 1e-12;

int common_dimension(std::span<const UnitVector> sample) {
    if (sample.empty()) throw DomainError("sample is empty");
    const int q = sample.front().ambient_dim();
    for (const UnitVector& v : sample) {
        if (v.ambient_dim() != q) throw DimensionMismatch("sample mixes vectors of different dimension");
    }
    return q;
}

double projected_sum(std::span<const UnitVector> sample, const UnitVector& direction) {
    double x = 0.0;
    for (const UnitVector& v : sample) x += direction.dot(v);
    return x;
}

void require_sphere_s2(std::span<const UnitVector> sample) {
    if (common_dimension(sample) != 3) throw DimensionMismatch("Fisher's known-pole/axis estimators are for S_2");
}

}  // namespace

const UnitVector& SampleSummary::direction() const {
    if (!mean_direction) throw DegenerateSampleError("mean resultant length is zero: mean direction is undefined");
    return *mean_direction;
}

SampleSummary summarize(std::span<const UnitVector> sample, const std::optional<UnitVector>& reference) {
    const int q = common_dimension(sample);
    if (reference && reference->ambient_dim() != q) throw DimensionMismatch("reference direction dimension differs");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(q);
    for (const UnitVector& v : sample) sum += v.coords();

    SampleSummary s;
    s.n = sample.size();
    s.mean_vector = sum / static_cast<double>(s.n);
    s.mean_resultant_length = std::min(1.0, s.mean_vector.norm());
    if (s.mean_resultant_length > kDegenerateGap) s.mean_direction = UnitVector(s.mean_vector);
    if (reference) s.suff_stat_x = projected_sum(sample, *reference);
    return s;
}

std::string_view to_string(FitMethod m) {
    switch (m) {
        case FitMethod::MLE: return "mle";
        case FitMethod::SME: return "sme";
        case FitMethod::FisherKnownPole: return "fisher-known-pole";
        case FitMethod::FisherKnownAxis: return "fisher-known-axis";
        case FitMethod::AxialMLE: return "axial-mle";
    }
    return "unknown";
}

FitResult fit_mle(std::span<const UnitVector> sample, const special::RootOptions& options) {
    const SampleSummary s = summarize(sample);
    const UnitVector& direction = s.direction();
    if (s.mean_resultant_length >= 1.0 - kDegenerateGap) {
        throw DegenerateSampleError("mean resultant length is 1: concentration is infinite");
    }
    const special::RootResult root =
        special::inverse_mean_resultant_solve(direction.sphere_dim(), s.mean_resultant_length, options);
    return {direction, root.value, FitMethod::MLE, {root.iterations, root.residual, false}};
}

FitResult fit_sme(std::span<const UnitVector> sample, const UnitVector& mu_known) {
    const int q = common_dimension(sample);
    if (mu_known.ambient_dim() != q) throw DimensionMismatch("known mean direction dimension differs");
    double sum_cos = 0.0;
    double sum_sin2 = 0.0;
    for (const UnitVector& v : sample) {
        const double c = std::clamp(mu_known.dot(v), -1.0, 1.0);
        sum_cos += c;
        sum_sin2 += (1.0 - c) * (1.0 + c);
    }
    if (sum_sin2 <= kDegenerateGap * static_cast<double>(sample.size())) {
        throw DegenerateSampleError("all observations lie at +-mu: score-matching denominator is zero");
    }
    const double kappa = std::max(0.0, (q - 1) * sum_cos / sum_sin2);
    return {mu_known, kappa, FitMethod::SME, {0, 0.0, false}};
}

special::RootResult fit_fisher_known_pole(double x, int n, const special::RootOptions& options) {
    if (n < 1) throw DomainError("sample size must be >= 1");
    if (!(std::abs(x) <= n)) throw DomainError("|x| must not exceed n");
    if (x <= 0.0) return {0.0, 0, 0.0};
    const double ratio = x / n;
    if (ratio >= 1.0 - kDegenerateGap) throw DegenerateSampleError("x = n: concentration is infinite");
    return special::inverse_mean_resultant_solve(2, ratio, options);
}

special::RootResult fit_fisher_known_axis(double x, int n, KnownAxisEquation equation,
                                          const special::RootOptions& options) {
    if (n < 1) throw DomainError("sample size must be >= 1");
    if (!(std::abs(x) <= n)) throw DomainError("|x| must not exceed n");
    const double ax = std::abs(x);
    const double ratio = ax / n;
    if (ratio >= 1.0 - kDegenerateGap) throw DegenerateSampleError("|x| = n: concentration is infinite");
    const double slope = equation == KnownAxisEquation::Stationary ? ax : ratio;
    // h(κ) ≈ κ (1/3 - ratio·slope) near 0: a positive root exists iff ratio·slope > 1/3.
    if (ratio * slope <= 1.0 / 3.0) return {0.0, 0, 0.0};
    const auto h = [&](double kappa) { return special::langevin(kappa) - ratio * std::tanh(slope * kappa); };

    double lo = 1e-6;
    while (h(lo) >= 0.0) lo *= 1e-3;
    double hi = 2.0 * lo;
    while (h(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw ConvergenceError("cannot bracket the known-axis root");
    }
    std::uintmax_t iterations = static_cast<std::uintmax_t>(options.max_iterations);
    const auto bracket = boost::math::tools::toms748_solve(h, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                           iterations);
    const double kappa = 0.5 * (bracket.first + bracket.second);
    const double residual = std::abs(h(kappa));
    if (residual > options.tolerance) throw ConvergenceError("known-axis root did not meet its tolerance");
    return {kappa, static_cast<int>(iterations), residual};
}

FitResult fit_known_pole(std::span<const UnitVector> sample, const UnitVector& pole) {
    require_sphere_s2(sample);
    const special::RootResult root =
        fit_fisher_known_pole(projected_sum(sample, pole), static_cast<int>(sample.size()));
    return {pole, root.value, FitMethod::FisherKnownPole, {root.iterations, root.residual, false}};
}

FitResult fit_known_axis(std::span<const UnitVector> sample, const AxialDirection& axis, KnownAxisEquation equation) {
    require_sphere_s2(sample);
    const UnitVector& nu = axis.representative();
    const special::RootResult root =
        fit_fisher_known_axis(projected_sum(sample, nu), static_cast<int>(sample.size()), equation);
    return {nu, root.value, FitMethod::FisherKnownAxis, {root.iterations, root.residual, false}};
}

AxialFitResult fit_axial_mle(std::span<const UnitVector> sample, const AxialDirection& axis) {
    const int q = common_dimension(sample);
    const UnitVector& nu = axis.representative();
    if (nu.ambient_dim() != q) throw DimensionMismatch("axis dimension differs from the sample");
    const double x = projected_sum(sample, nu);
    const int n = static_cast<int>(sample.size());
    const bool tie = x == 0.0;
    const int lambda = x < 0.0 ? -1 : 1;
    special::RootResult root;
    if (q == 3) {
        root = fit_fisher_known_pole(std::abs(x), n);
    } else {
        const double ratio = std::abs(x) / n;
        if (ratio >= 1.0 - kDegenerateGap) throw DegenerateSampleError("|x| = n: concentration is infinite");
        root = special::inverse_mean_resultant_solve(q - 1, ratio);
    }
    FitResult base{lambda > 0 ? nu : -nu, root.value, FitMethod::AxialMLE, {root.iterations, root.residual, tie}};
    return {base, lambda};
}

double mean_direction_lr_statistic(std::size_t n, const Eigen::VectorXd& mean_vector, const UnitVector& mu0) {
    if (mean_vector.size() != mu0.ambient_dim()) throw DimensionMismatch("mean vector and mu0 differ in dimension");
    const int p = mu0.sphere_dim();
    const double rbar = mean_vector.norm();
    const double kappa_hat = special::inverse_mean_resultant(p, rbar);
    const double c0 = mu0.coords().dot(mean_vector);
    const double kappa_null = c0 > 0.0 ? special::inverse_mean_resultant(p, c0) : 0.0;
    const double full = special::vmf_log_normalizer(p, kappa_hat) + kappa_hat * rbar;
    const double null = special::vmf_log_normalizer(p, kappa_null) + kappa_null * c0;
    return std::max(0.0, 2.0 * static_cast<double>(n) * (full - null));
}

MeanDirectionTest test_mean_direction(std::span<const UnitVector> sample, const UnitVector& mu0,
                                      const MeanTestOptions& options) {
    if (sample.size() < 2) throw DomainError("mean-direction test needs n >= 2");
    if (!(options.level > 0.0 && options.level < 1.0)) throw DomainError("test level must lie in (0, 1)");
    const SampleSummary s = summarize(sample);
    const UnitVector& direction = s.direction();
    if (mu0.ambient_dim() != direction.ambient_dim()) throw DimensionMismatch("mu0 dimension differs from the sample");
    if (s.mean_resultant_length >= 1.0 - kDegenerateGap) {
        throw DegenerateSampleError("mean resultant length is 1: concentration is infinite");
    }
    const int p = direction.sphere_dim();

    MeanDirectionTest t;
    t.level = options.level;
    t.degrees_of_freedom = p;
    t.statistic = mean_direction_lr_statistic(s.n, s.mean_vector, mu0);
    t.p_value = boost::math::gamma_q(0.5 * p, 0.5 * t.statistic);
    t.reject = t.p_value < options.level;
    t.kappa_hat = special::inverse_mean_resultant(p, s.mean_resultant_length);
    const double c0 = mu0.coords().dot(s.mean_vector);
    t.kappa_null = c0 > 0.0 ? special::inverse_mean_resultant(p, c0) : 0.0;
    t.angle_to_null = geometry::angle_between(direction, mu0);

    if (options.bootstrap_replicates > 0) {
        const std::size_t replicates = options.bootstrap_replicates;
        const dist::VmfParams null_model(mu0, t.kappa_null);
        std::vector<double> stats(replicates, 0.0);
        // Replicate b always draws from stream (seed, b), so the result does
        // not depend on how replicates are split across threads.
        const auto run = [&](std::size_t b) {
            sampling::SeededStream stream(options.seed, b);
            const auto draws = sampling::sample_vmf(null_model, s.n, stream);
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(mu0.ambient_dim());
            for (const UnitVector& v : draws) mean += v.coords();
            mean /= static_cast<double>(s.n);
            stats[b] = mean_direction_lr_statistic(s.n, mean, mu0);
        };
        unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, replicates));
        if (threads <= 1) {
            for (std::size_t b = 0; b < replicates; ++b) run(b);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t b = next++; b < replicates; b = next++) run(b);
                });
            }
        }
        const auto exceed = std::count_if(stats.begin(), stats.end(), [&](double v) { return v >= t.statistic; });
        t.bootstrap_replicates = replicates;
        t.bootstrap_p_value = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(replicates));
        t.bootstrap_reject = *t.bootstrap_p_value < options.level;
    }
    return t;
}

}  // namespace dirstat::estimation
