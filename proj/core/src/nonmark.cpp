#include "gcnm/nonmark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gcnm/specfun.hpp"

namespace gcnm::nonmark {

const char* to_string(ChannelKind c) {
    switch (c) {
        case ChannelKind::qbm_exact: return "qbm_exact";
        case ChannelKind::qbm_rwa: return "qbm_rwa";
        case ChannelKind::pd: return "pd";
    }
    return "?";
}

double np_from_spectrum(const gchannel::ZSpectrum& spec) {
    const double lp = spec.lambda_plus, lm = spec.lambda_minus;
    const double nu = std::fabs(lp) + std::fabs(lm);
    if (nu == 0.0) return 0.0;
    const double mu = 0.5 * ((std::fabs(lp) - lp) + (std::fabs(lm) - lm));
    return mu / nu;
}

PunctualNM np_qbm_exact(const coeffs::CoefficientTable& table, double tau) {
    const double g = table.gamma_at(tau);
    const double d = table.delta_at(tau);
    const double p = table.pi_at(tau);
    const double r = std::sqrt(d * d + g * g + p * p);
    const double v = r == 0.0 ? 0.0 : std::clamp(0.5 * (1.0 - d / r), 0.0, 1.0);
    return {tau, v, ChannelKind::qbm_exact};
}

PunctualNM np_rwa(const coeffs::CoefficientTable& table, double tau) {
    const double g = table.gamma_at(tau);
    const double d = table.delta_at(tau);
    // |d+g| + |d-g| = 2 max(|d|, |g|); the max form keeps the value exactly
    // binary wherever |d| >= |g|
    const double den = std::max(std::fabs(d), std::fabs(g));
    const double v = den == 0.0 ? 0.0 : std::clamp(0.5 * (1.0 - d / den), 0.0, 1.0);
    return {tau, v, ChannelKind::qbm_rwa};
}

PunctualNM np_pd(const coeffs::CoefficientTable& table, double tau) {
    const double g = table.gamma_at(tau);
    // the formula is undefined at gamma = 0; the boundary set is treated as
    // Markovian
    const double v = std::fabs(g) < 1e-12 ? 0.0 : (g > 0.0 ? 0.0 : 1.0);
    return {tau, v, ChannelKind::pd};
}

double np_asymptotic(double x, double theta) {
    if (!(x > 0.0)) throw std::domain_error("np_asymptotic: requires x > 0");
    if (!(theta > 0.0)) throw std::domain_error("np_asymptotic: requires theta > 0");
    const double z = 1.0 / x;
    if (z > 700.0) throw std::overflow_error("np_asymptotic: 1/x > 700 overflows Ei");
    // K = Ei(1/x) - e^{2/x} Ei(-1/x); both contributions are positive.
    const double K = specfun::expint_ei(z).value + std::exp(z) * specfun::expint_e1_scaled(z);
    const double tx = theta * x;
    if (K < 1e8) {
        return 0.5 - M_PI * tx /
                         std::sqrt(4.0 * tx * tx * (K * K + M_PI * M_PI) + M_PI * M_PI);
    }
    // avoid K^2 overflow: divide through by 2 tx K
    const double w = 1.0 / K;
    const double corr = w * w * M_PI * M_PI * (1.0 + 1.0 / (4.0 * tx * tx));
    return 0.5 - 0.5 * M_PI * w / std::sqrt(1.0 + corr);
}

namespace {

double punctual(const coeffs::CoefficientTable& table, ChannelKind c, double tau) {
    switch (c) {
        case ChannelKind::qbm_exact: return np_qbm_exact(table, tau).value;
        case ChannelKind::qbm_rwa: return np_rwa(table, tau).value;
        case ChannelKind::pd: return np_pd(table, tau).value;
    }
    return 0.0;
}

}  // namespace

double np_integrated(const coeffs::CoefficientTable& table, ChannelKind channel, double tau_a,
                     double tau_b) {
    if (!(tau_a < tau_b)) throw std::out_of_range("np_integrated: requires tau_a < tau_b");
    if (tau_a < 0.0 || tau_b > table.tau_max() * (1.0 + 1e-12))
        throw std::out_of_range("np_integrated: interval outside table range");
    // trapezoid over the grid nodes inside the interval, plus the interpolated
    // end segments
    const double h = table.step();
    const std::size_t k0 = static_cast<std::size_t>(std::ceil(tau_a / h));
    const std::size_t k1 = std::min(static_cast<std::size_t>(std::floor(tau_b / h)),
                                    table.size() - 1);
    double num = 0.0, den = 0.0;
    auto accum = [&](double ta, double va, double tb, double vb) {
        const double w = tb - ta;
        num += 0.5 * w * (va + vb);
        den += 0.5 * w * ((va > 0.0 ? 1.0 : 0.0) + (vb > 0.0 ? 1.0 : 0.0));
    };
    double t_prev = tau_a, v_prev = punctual(table, channel, tau_a);
    for (std::size_t k = k0; k <= k1; ++k) {
        const double t = table.tau[k];
        if (t <= t_prev) continue;
        const double v = punctual(table, channel, t);
        accum(t_prev, v_prev, t, v);
        t_prev = t;
        v_prev = v;
    }
    if (t_prev < tau_b) accum(t_prev, v_prev, tau_b, punctual(table, channel, tau_b));
    return den == 0.0 ? 0.0 : num / den;
}

double gaussian_fidelity(const gchannel::GaussianState& a, const gchannel::GaussianState& b) {
    using gchannel::Mat2;
    using gchannel::Vec2;
    if (a.mean == b.mean && a.cov == b.cov) return 1.0;
    const Mat2 s = a.cov + b.cov;
    const double det_s = s.determinant();
    const double lam =
        std::max(0.0, 4.0 * (a.cov.determinant() - 0.25) * (b.cov.determinant() - 0.25));
    const double denom = std::sqrt(det_s + lam) - std::sqrt(lam);
    const Vec2 d = gchannel::symplectic_form() * (a.mean - b.mean);
    // d^T s^{-1} d via the 2x2 adjugate
    const double q = (s(1, 1) * d(0) * d(0) - 2.0 * s(0, 1) * d(0) * d(1) +
                      s(0, 0) * d(1) * d(1)) /
                     det_s;
    const double f = std::exp(-0.5 * q) / denom;
    return std::clamp(f, 0.0, 1.0);
}

double gaussian_distance(const gchannel::GaussianState& a, const gchannel::GaussianState& b,
                         DistanceKind kind) {
    const double f = gaussian_fidelity(a, b);
    switch (kind) {
        case DistanceKind::bures: return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(f))));
        case DistanceKind::root_infidelity: return std::sqrt(std::max(0.0, 1.0 - f));
    }
    return 0.0;
}

WitnessResult distance_witness(const gchannel::QbmChannel& channel,
                               const std::vector<StatePair>& pairs,
                               const std::vector<double>& tau_grid, DistanceKind kind) {
    if (pairs.empty()) throw std::invalid_argument("distance_witness: empty pair list");
    if (tau_grid.size() < 3)
        throw std::invalid_argument("distance_witness: need at least 3 grid points");
    for (const auto& [s1, s2] : pairs) {
        s1.validate();
        s2.validate();
    }
    const std::size_t n = tau_grid.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (!(tau_grid[k] < tau_grid[k + 1]))
            throw std::invalid_argument("distance_witness: tau grid must be ascending");

    std::vector<std::vector<double>> dist(pairs.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const gchannel::ChannelMap m = channel.map(tau_grid[k]);  // range-checks
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            const gchannel::GaussianState r1 = gchannel::evolve(m, pairs[j].first);
            const gchannel::GaussianState r2 = gchannel::evolve(m, pairs[j].second);
            dist[j][k] = gaussian_distance(r1, r2, kind);
        }
    }

    WitnessResult out;
    out.tau = tau_grid;
    out.distance.resize(n);
    out.derivative.resize(n);
    out.witness.resize(n);
    std::vector<std::vector<double>> ders(pairs.size(), std::vector<double>(n));
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const std::vector<double>& dj = dist[j];
        for (std::size_t k = 0; k < n; ++k) {
            if (k == 0)
                ders[j][k] = (dj[1] - dj[0]) / (tau_grid[1] - tau_grid[0]);
            else if (k + 1 == n)
                ders[j][k] = (dj[n - 1] - dj[n - 2]) / (tau_grid[n - 1] - tau_grid[n - 2]);
            else
                ders[j][k] = (dj[k + 1] - dj[k - 1]) / (tau_grid[k + 1] - tau_grid[k - 1]);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        double dmin = dist[0][k], gmin = ders[0][k];
        for (std::size_t j = 1; j < pairs.size(); ++j) {
            dmin = std::min(dmin, dist[j][k]);
            gmin = std::min(gmin, ders[j][k]);
        }
        out.distance[k] = dmin;
        out.derivative[k] = gmin;
        out.witness[k] = std::max(0.0, gmin);
    }
    return out;
}

}  // namespace gcnm::nonmark
