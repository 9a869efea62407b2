#include "gcnm/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gcnm/errors.hpp"

namespace gcnm::specfun {

namespace {

constexpr double kMaxArg = 700.0;      // Ei overflows double near 716
constexpr double kSeriesCross = 4.0;   // negative-axis series/CF crossover
constexpr long double kEpsLd = std::numeric_limits<long double>::epsilon();

// Sum_{k>=1} z^k / (k k!) in extended precision. For z > 0 all terms are
// positive; for z < 0 the series alternates and sum_abs tracks the
// cancellation incurred.
struct SeriesSum {
    long double sum = 0.0L;
    long double sum_abs = 0.0L;
    int terms = 0;
};

SeriesSum ei_power_series(long double z) {
    SeriesSum s;
    long double term = 1.0L;
    for (int k = 1; k < 1000; ++k) {
        term *= z / k;
        const long double add = term / k;
        s.sum += add;
        s.sum_abs += std::fabs(add);
        s.terms = k;
        if (std::fabs(add) < kEpsLd * s.sum_abs && k > 3) break;
    }
    return s;
}

}  // namespace

double expint_e1_scaled(double z) {
    // Even contraction of the Laplace continued fraction, modified Lentz:
    //   e^z E1(z) = 1/(z+1 - 1^2/(z+3 - 2^2/(z+5 - ...)))
    // Converges quickly for z >~ 1.
    const double tiny = 1e-300;
    double f = tiny, c = f, d = 0.0;
    double a = 1.0, b = z + 1.0;
    for (int j = 1; j <= 300; ++j) {
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) return f;
        a = -static_cast<double>(j) * j;
        b += 2.0;
    }
    throw numerical_error("expint_e1_scaled: continued fraction stalled at z=" + std::to_string(z));
}

SpecFunResult expint_ei(double z) {
    if (z == 0.0) throw std::domain_error("expint_ei: z = 0 is a logarithmic singularity");
    if (!std::isfinite(z)) throw std::domain_error("expint_ei: non-finite argument");
    if (std::fabs(z) > kMaxArg)
        throw std::overflow_error("expint_ei: |z| > 700 overflows double range");

    if (z > 0.0 || -z <= kSeriesCross) {
        // Power series around 0. On the positive axis every term is positive,
        // so it stays accurate for arbitrarily large admitted z; on the
        // negative axis it is used only up to the crossover where the
        // alternating cancellation is still covered by long double headroom.
        const SeriesSum s = ei_power_series(static_cast<long double>(z));
        const long double base = euler_gamma + std::log(std::fabs(static_cast<long double>(z)));
        const long double v = base + s.sum;
        const double rounding = static_cast<double>(
            kEpsLd * (std::fabs(base) + s.sum_abs) * (s.terms + 2));
        return {static_cast<double>(v),
                rounding + std::numeric_limits<double>::epsilon() * std::fabs(static_cast<double>(v))};
    }

    // z < -4: Ei(z) = -E1(-z) via the scaled continued fraction.
    const double w = -z;
    const double v = -std::exp(-w) * expint_e1_scaled(w);
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(v)};
}

SpecFunResult shi(double z) {
    if (!std::isfinite(z)) throw std::domain_error("shi: non-finite argument");
    if (std::fabs(z) > 50.0)
        throw std::overflow_error("shi: |z| > 50 outside admitted range");
    if (z == 0.0) return {0.0, 0.0};

    // Shi(z) = sum_{k>=0} z^{2k+1} / ((2k+1) (2k+1)!). Same-sign terms.
    const long double za = std::fabs(static_cast<long double>(z));
    const long double z2 = za * za;
    long double term = za;  // z^{2k+1} / (2k+1)!
    long double sum = za;   // k = 0 contribution (term/1)
    int k = 0;
    while (++k < 200) {
        term *= z2 / ((2 * k) * (2 * k + 1));
        const long double add = term / (2 * k + 1);
        sum += add;
        if (add < kEpsLd * sum) break;
    }
    const double v = static_cast<double>(z > 0 ? sum : -sum);
    return {v, static_cast<double>(kEpsLd * sum * (k + 2)) +
                   std::numeric_limits<double>::epsilon() * std::fabs(v)};
}

SpecFunResult chi(double z) {
    if (!(z > 0.0)) throw std::domain_error("chi: requires z > 0");
    if (z > 50.0) throw std::overflow_error("chi: z > 50 outside admitted range");

    // Chi(z) = euler_gamma + ln z + sum_{k>=1} z^{2k} / ((2k) (2k)!).
    const long double zl = static_cast<long double>(z);
    const long double z2 = zl * zl;
    long double term = 1.0L;  // z^{2k} / (2k)!
    long double sum = 0.0L;
    int k = 0;
    while (++k < 200) {
        term *= z2 / ((2 * k - 1) * (2 * k));
        const long double add = term / (2 * k);
        sum += add;
        if (add < kEpsLd * (sum + 1.0L)) break;
    }
    const long double base = euler_gamma + std::log(zl);
    const double v = static_cast<double>(base + sum);
    return {v, static_cast<double>(kEpsLd * (std::fabs(base) + sum) * (k + 2)) +
                   std::numeric_limits<double>::epsilon() * std::fabs(v)};
}

}  // namespace gcnm::specfun
