#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gcnm/coeffs.hpp"

namespace gcnm::gchannel {

using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2d;

/// The single-mode symplectic form: [[0, 1], [-1, 0]].
Mat2 symplectic_form();

/// Rotation R(tau) with angle w_0 tau = tau/x; orthogonal, det 1, R^-1 = R^T.
Mat2 rotation(double tau, double x);

/// Mean vector <x,p> and covariance matrix of one bosonic mode.  Vacuum has
/// cov = I/2; physical iff cov + (i/2) Omega >= 0, i.e. det cov >= 1/4.
struct GaussianState {
    Vec2 mean = Vec2::Zero();
    Mat2 cov = 0.5 * Mat2::Identity();

    bool physical(double tol = 1e-9) const;
    void validate() const;  // throws std::invalid_argument if unphysical
};

GaussianState vacuum_state();
GaussianState coherent_state(double mx, double mp);
GaussianState thermal_state(double n);          // cov = (n + 1/2) I
GaussianState squeezed_state(double r);         // cov = diag(e^{-2r}, e^{2r})/2

/// A Gaussian channel in (X, Y) form: sigma -> X sigma X^T + Y, mean -> X mean.
struct ChannelMap {
    Mat2 X = Mat2::Identity();
    Mat2 Y = Mat2::Zero();
};

/// Applies the map to a (validated) input state; output covariance is
/// re-symmetrized.
GaussianState evolve(const ChannelMap& map, const GaussianState& in);

/// Symmetrically ordered characteristic function
///   chi(L) = exp(-1/2 L^T cov L + i mean^T Omega^T L),
/// the quadratic-form convention under which the covariance update above and
/// the characteristic-function evolution law coincide.
std::complex<double> char_function(const GaussianState& state, const Vec2& lambda);

/// Hermitian 2x2 matrix whose negative eigenvalues certify divisibility
/// violation.  scale is the epsilon that was used; rescaled marks the
/// first-order-in-epsilon form (already divided by epsilon).
struct ZMatrix {
    Mat2c m = Mat2c::Zero();
    double scale = 0.0;
    bool rescaled = false;
};

struct ZSpectrum {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
};

/// Closed-form eigenvalues of a Hermitian 2x2 matrix (trace/determinant).
/// Throws std::invalid_argument if the input is non-Hermitian beyond 1e-12.
ZSpectrum z_eigenvalues(const ZMatrix& z);

/// First-order-in-epsilon Z, rescaled by epsilon:
///   [[2 delta, -pi - i gamma], [-pi + i gamma, 0]]
/// with the coefficients read off the table at tau.
ZMatrix z_matrix_firstorder(const coeffs::CoefficientTable& table, double tau);

/// The exact QBM channel built on a coefficient table.  Precomputes the
/// rotating-frame noise integral
///   K(tau) = int_0^tau e^{Gamma(s)} R^T(s) M(s) R(s) ds,
///   M(s) = [[delta(s), -pi(s)/2], [-pi(s)/2, 0]]
/// on the shared grid, from which Wbar(tau) = e^{-Gamma} R K R^T.
class QbmChannel {
  public:
    explicit QbmChannel(coeffs::CoefficientTable table);

    const coeffs::CoefficientTable& table() const { return table_; }

    Mat2 wbar(double tau) const;
    ChannelMap map(double tau) const;                          // X = e^{-Gamma/2} R, Y = 2 Wbar
    ChannelMap intermediate_map(double tau, double eps) const;  // map(tau -> tau+eps)
    ZMatrix z_matrix(double tau, double eps) const;             // finite-eps validator form
    ZMatrix z_matrix_firstorder(double tau) const;

  private:
    coeffs::CoefficientTable table_;
    std::vector<double> kxx_, kxy_, kyy_;
};

}  // namespace gcnm::gchannel
