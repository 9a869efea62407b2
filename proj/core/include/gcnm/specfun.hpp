#pragma once

namespace gcnm::specfun {

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

/// Value plus an a-posteriori absolute error estimate, so that callers can
/// budget tolerances explicitly.
struct SpecFunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// Exponential integral Ei(z), principal value for z > 0.
/// Admitted range |z| <= 700 (Ei overflows double shortly above); z = 0 is a
/// logarithmic singularity. Relative accuracy <= 1e-12 for |z| in [1e-3, 50].
SpecFunResult expint_ei(double z);

/// Hyperbolic sine integral Shi(z) = int_0^z sinh(t)/t dt. Odd in z.
/// Admitted range |z| <= 50.
SpecFunResult shi(double z);

/// Hyperbolic cosine integral Chi(z) = euler_gamma + ln z + int_0^z (cosh t - 1)/t dt.
/// Requires z > 0; admitted range z <= 50.
SpecFunResult chi(double z);

/// e^z * E1(z) for z > 0, evaluated without forming e^z. Used where
/// Ei(-z) = -E1(z) would underflow or the Shi/Chi difference cancels.
double expint_e1_scaled(double z);

}  // namespace gcnm::specfun
