#include "dirstat/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dirstat/errors.hpp"

namespace dirstat::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogMax = 709.782712893384;  // log(DBL_MAX)

void check_order_and_argument(double nu, double x) {
    if (!(nu >= -0.5) || !std::isfinite(nu)) {
        throw DomainError("Bessel order must satisfy nu >= -1/2");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("Bessel argument must be finite and nonnegative");
    }
}

bool is_half_integer(double nu) {
    const double twice = 2.0 * nu;
    return twice == std::floor(twice) && std::fmod(twice, 2.0) != 0.0;
}

// Ascending series, returned as log(I_ν(x)) - x. Terms are positive, so the
// only hazard is overflow of the running sum, handled by rescaling.
double scaled_series(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (int k = 1; k < 1000000; ++k) {
        term *= q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
        sum += term;
        if (sum > 1e280) {
            sum *= 1e-280;
            term *= 1e-280;
            log_scale += 280.0 * std::numbers::ln10;
        }
        if (term < 0.25 * kEps * sum && static_cast<double>(k) > 0.5 * x) {
            break;
        }
    }
    return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + std::log(sum) + log_scale - x;
}

// Large-argument (Hankel) expansion of I_ν(x) e^{-x} √(2πx), summed until
// the terms stop decreasing. Accurate to double precision for x ≥ max(30, ν²).
double hankel_sum(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term) && k > 1) {
            break;
        }
        term = next;
        sum += term;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Closed hyperbolic form for ν = n + 1/2, written as the terminating
// expansion  √(2πx) I_ν(x) = e^x S(-1/x) - (-1)^n e^{-x} S(1/x).
double scaled_half_integer(double nu, double x) {
    const double log_prefactor = -0.5 * std::log(2.0 * std::numbers::pi * x);
    if (nu == 0.5) {
        return log_prefactor + std::log(-std::expm1(-2.0 * x));
    }
    if (nu == -0.5) {
        return log_prefactor + std::log1p(std::exp(-2.0 * x));
    }
    const int n = static_cast<int>(std::lround(nu - 0.5));
    const double mu = 4.0 * nu * nu;
    double coeff = 1.0;
    double minus_sum = 1.0;
    double plus_sum = 1.0;
    double inv_pow = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double odd = 2.0 * k - 1.0;
        coeff *= (mu - odd * odd) / (8.0 * k);
        inv_pow /= x;
        const double term = coeff * inv_pow;
        minus_sum += (k % 2 == 0) ? term : -term;
        plus_sum += term;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return log_prefactor + std::log(minus_sum - sign * std::exp(-2.0 * x) * plus_sum);
}

}  // namespace

double log_bessel_i_scaled(double nu, double x) {
    check_order_and_argument(nu, x);
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu < 0.0 ? kInf : -kInf;
    }
    if (is_half_integer(nu) && (std::abs(nu) == 0.5 || (nu <= 10.5 && x >= nu + 10.0))) {
        return scaled_half_integer(nu, x);
    }
    if (x >= 30.0 && x >= nu * nu) {
        return std::log(hankel_sum(nu, x)) - 0.5 * std::log(2.0 * std::numbers::pi * x);
    }
    return scaled_series(nu, x);
}

double log_bessel_i(double nu, double x) {
    return log_bessel_i_scaled(nu, x) + x;
}

double bessel_i(double nu, double x) {
    const double scaled = log_bessel_i_scaled(nu, x);
    if (scaled + x > kLogMax) {
        throw OverflowError("bessel_i overflows double; use log_bessel_i");
    }
    if (!std::isfinite(scaled)) {
        return std::exp(scaled);
    }
    if (x > 700.0) {
        return std::exp(scaled + x);
    }
    return std::exp(scaled) * std::exp(x);
}

double langevin(double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa < 1e-4) {
        const double k2 = kappa * kappa;
        return kappa / 3.0 - kappa * k2 / 45.0;
    }
    if (kappa < 1.0) {
        // κ cosh κ - sinh κ = Σ_{n≥1} 2n κ^{2n+1} / (2n+1)!, all terms positive.
        const double k2 = kappa * kappa;
        double power_over_factorial = kappa;  // κ^{2n+1}/(2n+1)! at n = 0
        double numerator = 0.0;
        for (int n = 1; n < 30; ++n) {
            power_over_factorial *= k2 / ((2.0 * n) * (2.0 * n + 1.0));
            const double term = 2.0 * n * power_over_factorial;
            numerator += term;
            if (term < kEps * numerator) break;
        }
        return numerator / (kappa * std::sinh(kappa));
    }
    return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}

double mean_resultant_ratio(int p, double kappa) {
    if (p < 1) throw DomainError("sphere dimension p must be >= 1");
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0) return 0.0;
    const double nu = 0.5 * (p - 1);
    return std::exp(log_bessel_i_scaled(nu + 1.0, kappa) - log_bessel_i_scaled(nu, kappa));
}

double mean_resultant_fn(int p, double kappa) {
    if (p == 2) return langevin(kappa);
    return mean_resultant_ratio(p, kappa);
}

double mean_resultant_derivative(int p, double kappa) {
    if (kappa == 0.0) return 1.0 / (p + 1.0);
    const double a = mean_resultant_fn(p, kappa);
    return 1.0 - a * a - (static_cast<double>(p) / kappa) * a;
}

RootResult inverse_mean_resultant_solve(int p, double rbar, const RootOptions& options) {
    if (p < 1) throw DomainError("sphere dimension p must be >= 1");
    if (!(rbar >= 0.0)) throw DomainError("mean resultant length must be in [0, 1)");
    if (rbar >= 1.0) {
        throw DegenerateSampleError("mean resultant length is 1: concentration is infinite");
    }
    if (rbar == 0.0) return {0.0, 0, 0.0};

    const double approx = rbar * p / (1.0 - rbar * rbar);
    double lo = 0.1 * approx;
    double hi = 10.0 * approx;
    while (mean_resultant_fn(p, lo) > rbar) lo *= 0.1;
    while (mean_resultant_fn(p, hi) < rbar) {
        hi *= 10.0;
        if (!std::isfinite(hi)) throw ConvergenceError("cannot bracket root of A_p(kappa) = rbar");
    }

    const double q = p + 1.0;
    double kappa = rbar * (q - rbar * rbar) / (1.0 - rbar * rbar);
    if (!(kappa > lo && kappa < hi)) kappa = 0.5 * (lo + hi);

    RootResult result;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const double f = mean_resultant_fn(p, kappa) - rbar;
        result = {kappa, it, std::abs(f)};
        if (f == 0.0) return result;
        if (f < 0.0) lo = kappa; else hi = kappa;

        const double slope = mean_resultant_derivative(p, kappa);
        double next = kappa - f / slope;
        if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - kappa);
        kappa = next;
        if (step <= 4.0 * kEps * kappa || hi - lo <= 4.0 * kEps * kappa) {
            const double fk = std::abs(mean_resultant_fn(p, kappa) - rbar);
            result = {kappa, it, fk};
            if (fk <= options.tolerance) return result;
        }
    }
    if (result.residual <= options.tolerance) return result;
    throw ConvergenceError("inverse_mean_resultant did not converge");
}

double inverse_mean_resultant(int p, double rbar, const RootOptions& options) {
    return inverse_mean_resultant_solve(p, rbar, options).value;
}

double log_sphere_area(int p) {
    if (p < 1) throw DomainError("sphere dimension p must be >= 1");
    const double half_q = 0.5 * (p + 1);
    return std::numbers::ln2 + half_q * std::log(std::numbers::pi) - std::lgamma(half_q);
}

double vmf_log_normalizer(int p, double kappa) {
    if (p < 1) throw DomainError("sphere dimension p must be >= 1");
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0) return -log_sphere_area(p);
    const double nu = 0.5 * (p - 1);
    return nu * std::log(kappa) - 0.5 * (p + 1) * std::log(2.0 * std::numbers::pi) - log_bessel_i(nu, kappa);
}

double log_sinh(double x) {
    if (!(x >= 0.0)) throw DomainError("log_sinh requires x >= 0");
    if (x <= 20.0) return std::log(std::sinh(x));
    return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double log_cos_marginal_normalizer(double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0) return -std::numbers::ln2;
    if (kappa < 1.0) return std::log(kappa / (2.0 * std::sinh(kappa)));
    return std::log(kappa) - std::numbers::ln2 - log_sinh(kappa);
}

double cos_marginal_normalizer(double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0) return 0.5;
    if (kappa < 1.0) return kappa / (2.0 * std::sinh(kappa));
    return std::exp(log_cos_marginal_normalizer(kappa));
}

}  // namespace dirstat::special
