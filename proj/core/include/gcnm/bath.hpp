#pragma once

namespace gcnm::bath {

/// Ohmic-family spectral density J_s(w) = w^s e^{-w} in units of the cutoff
/// (w_c = 1). s = 1 is Ohmic, s < 1 sub-Ohmic, s > 1 super-Ohmic.
struct SpectralDensity {
    double s = 1.0;
};

enum class KernelMethod { closed_form, quadrature };

struct KernelSample {
    double value = 0.0;
    KernelMethod method = KernelMethod::closed_form;
};

/// J_s(w) itself. Requires w >= 0.
double j_eval(const SpectralDensity& sd, double omega);

/// int_0^inf dw J_s(w) sin(w u).  Closed form for s = 1: 2u/(1+u^2)^2.
KernelSample kernel_sin(const SpectralDensity& sd, double u);
KernelSample kernel_sin(const SpectralDensity& sd, double u, KernelMethod method);

/// int_0^inf dw J_s(w) (2*theta/w) cos(w u), the high-temperature thermal
/// kernel.  Closed form for s = 1: 2*theta/(1+u^2).
KernelSample kernel_cos_thermal(const SpectralDensity& sd, double u, double theta);
KernelSample kernel_cos_thermal(const SpectralDensity& sd, double u, double theta,
                                KernelMethod method);

}  // namespace gcnm::bath
