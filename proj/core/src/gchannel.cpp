#include "gcnm/gchannel.hpp"

#include <cmath>
#include <stdexcept>

#include "gcnm/errors.hpp"

namespace gcnm::gchannel {

Mat2 symplectic_form() {
    Mat2 o;
    o << 0.0, 1.0, -1.0, 0.0;
    return o;
}

Mat2 rotation(double tau, double x) {
    if (!(x > 0.0)) throw std::domain_error("rotation: requires x > 0");
    const double phi = tau / x;  // w_0 tau
    const double c = std::cos(phi), s = std::sin(phi);
    Mat2 r;
    r << c, s, -s, c;
    return r;
}

bool GaussianState::physical(double tol) const {
    if (std::fabs(cov(0, 1) - cov(1, 0)) > tol * std::max(1.0, cov.norm())) return false;
    return cov.determinant() >= 0.25 - tol && cov(0, 0) > 0.0 && cov(1, 1) > 0.0;
}

void GaussianState::validate() const {
    if (!physical())
        throw std::invalid_argument("GaussianState: unphysical covariance (needs det >= 1/4)");
}

GaussianState vacuum_state() { return {}; }

GaussianState coherent_state(double mx, double mp) {
    GaussianState s;
    s.mean << mx, mp;
    return s;
}

GaussianState thermal_state(double n) {
    if (n < 0.0) throw std::invalid_argument("thermal_state: n must be >= 0");
    GaussianState s;
    s.cov = (n + 0.5) * Mat2::Identity();
    return s;
}

GaussianState squeezed_state(double r) {
    GaussianState s;
    s.cov << 0.5 * std::exp(-2.0 * r), 0.0, 0.0, 0.5 * std::exp(2.0 * r);
    return s;
}

GaussianState evolve(const ChannelMap& map, const GaussianState& in) {
    in.validate();
    GaussianState out;
    out.mean = map.X * in.mean;
    Mat2 c = map.X * in.cov * map.X.transpose() + map.Y;
    out.cov = 0.5 * (c + c.transpose());
    return out;
}

std::complex<double> char_function(const GaussianState& state, const Vec2& lambda) {
    const Mat2 omega = symplectic_form();
    const double quad = lambda.dot(state.cov * lambda);
    const double phase = state.mean.dot(omega.transpose() * lambda);
    return std::exp(std::complex<double>(-0.5 * quad, phase));
}

ZSpectrum z_eigenvalues(const ZMatrix& z) {
    const Mat2c& m = z.m;
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("z_eigenvalues: matrix is not Hermitian within tolerance");
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    const double tr = a + d;
    const double disc = std::hypot(a - d, 2.0 * off);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

ZMatrix z_matrix_firstorder(const coeffs::CoefficientTable& table, double tau) {
    const double g = table.gamma_at(tau);
    const double d = table.delta_at(tau);
    const double p = table.pi_at(tau);
    ZMatrix z;
    z.m(0, 0) = 2.0 * d;
    z.m(0, 1) = std::complex<double>(-p, -g);
    z.m(1, 0) = std::complex<double>(-p, g);
    z.m(1, 1) = 0.0;
    z.scale = 1.0;
    z.rescaled = true;
    return z;
}

QbmChannel::QbmChannel(coeffs::CoefficientTable table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    const double h = table_.step();
    const double x = table_.params.x;

    double gmax = 0.0;
    for (double g : table_.gamma_cum) gmax = std::max(gmax, std::fabs(g));
    if (gmax > 600.0)
        throw numerical_error("QbmChannel: |Gamma| exceeds exp-representable range");

    std::vector<double> fxx(n), fxy(n), fyy(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2 r = rotation(table_.tau[k], x);
        Mat2 m;
        m << table_.delta[k], -0.5 * table_.pi[k], -0.5 * table_.pi[k], 0.0;
        Mat2 a = r.transpose() * m * r;
        a = 0.5 * (a + a.transpose());  // only the symmetric part feeds a covariance
        const double w = std::exp(table_.gamma_cum[k]);
        fxx[k] = w * a(0, 0);
        fxy[k] = w * a(0, 1);
        fyy[k] = w * a(1, 1);
    }
    kxx_ = coeffs::cumulative_integral(fxx, h);
    kxy_ = coeffs::cumulative_integral(fxy, h);
    kyy_ = coeffs::cumulative_integral(fyy, h);
}

Mat2 QbmChannel::wbar(double tau) const {
    if (!(tau >= 0.0) || tau > table_.tau_max() * (1.0 + 1e-12))
        throw std::out_of_range("wbar: tau outside table range");
    tau = std::min(tau, table_.tau_max());
    if (tau == 0.0) return Mat2::Zero();
    const double h = table_.step();
    const double kxy = coeffs::interp_cubic(kxy_, h, tau);
    Mat2 k;
    k << coeffs::interp_cubic(kxx_, h, tau), kxy, kxy, coeffs::interp_cubic(kyy_, h, tau);
    const Mat2 r = rotation(tau, table_.params.x);
    Mat2 w = std::exp(-table_.gamma_cum_at(tau)) * (r * k * r.transpose());
    return 0.5 * (w + w.transpose());
}

ChannelMap QbmChannel::map(double tau) const {
    ChannelMap m;
    m.Y = 2.0 * wbar(tau);  // range-checks tau
    m.X = std::exp(-0.5 * table_.gamma_cum_at(tau)) * rotation(tau, table_.params.x);
    return m;
}

ChannelMap QbmChannel::intermediate_map(double tau, double eps) const {
    const double dg = coeffs::gamma_increment(table_, tau, eps);  // Gamma(tau+eps, tau)
    const Mat2 reps = rotation(eps, table_.params.x);
    ChannelMap m;
    m.X = std::exp(-0.5 * dg) * reps;
    m.Y = 2.0 * wbar(tau + eps) - std::exp(-dg) * reps * (2.0 * wbar(tau)) * reps.transpose();
    return m;
}

ZMatrix QbmChannel::z_matrix(double tau, double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("z_matrix: requires eps > 0");
    const double dg = coeffs::gamma_increment(table_, tau, eps);
    const Mat2 reps = rotation(eps, table_.params.x);
    const Mat2 yre =
        2.0 * wbar(tau + eps) - 2.0 * std::exp(-dg) * reps * wbar(tau) * reps.transpose();
    const Mat2 yim = -0.5 * (1.0 - std::exp(-dg)) * symplectic_form();
    ZMatrix z;
    z.m = yre.cast<std::complex<double>>() +
          std::complex<double>(0.0, 1.0) * yim.cast<std::complex<double>>();
    z.scale = eps;
    z.rescaled = false;
    return z;
}

ZMatrix QbmChannel::z_matrix_firstorder(double tau) const {
    return gchannel::z_matrix_firstorder(table_, tau);
}

}  // namespace gcnm::gchannel
