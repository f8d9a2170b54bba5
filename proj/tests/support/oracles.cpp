#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

Extended bessel_i_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? Extended(1) : Extended(0);
    const Extended half = Extended(x) / 2;
    const Extended half2 = half * half;
    Extended term = boost::multiprecision::pow(half, Extended(nu)) / boost::math::tgamma(Extended(nu) + 1);
    Extended sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= half2 / (Extended(k) * (Extended(k) + nu));
        sum += term;
        if (k >= 30 && k > x && term < sum * Extended("1e-45")) break;
    }
    return sum;
}

double log_bessel_i_series(double nu, double x) { return static_cast<double>(log(bessel_i_series(nu, x))); }

double langevin_extended(double kappa) {
    const Extended k = kappa;
    const Extended e2 = exp(-2 * k);
    return static_cast<double>((1 + e2) / (1 - e2) - 1 / k);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw std::invalid_argument("bisect: no sign change");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * h, a + (i + 1) * h);
    }
    return sum;
}

double sphere_integral(const std::function<double(double, double, double)>& f, int panels) {
    const auto ring = [&](double z) {
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return gauss_legendre([&](double phi) { return f(s * std::cos(phi), s * std::sin(phi), z); }, 0.0,
                              2.0 * std::numbers::pi, panels);
    };
    return gauss_legendre(ring, -1.0, 1.0, panels);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    const double sn = std::sqrt(n);
    return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double chi_squared_p_value(const std::vector<double>& observed, const std::vector<double>& expected, int fitted) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    }
    const double df = static_cast<double>(observed.size()) - 1.0 - fitted;
    return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

double wrapped_normal_lattice(double theta, double sigma2) {
    double sum = 0.0;
    for (int k = -50; k <= 50; ++k) {
        const double t = theta + 2.0 * std::numbers::pi * k;
        sum += std::exp(-t * t / (2.0 * sigma2));
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * sigma2);
}

}  // namespace oracle
