#include "gcnm/bath.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcnm/errors.hpp"
#include "gcnm/quadrature.hpp"

namespace gcnm::bath {

namespace {

// e^{-40} ~ 4e-18 makes the truncated tail negligible at the 1e-10 tolerance.
constexpr double kOmegaCut = 40.0;
constexpr double kQuadTol = 1e-10;

void check_sd(const SpectralDensity& sd) {
    if (!(sd.s > 0.0)) throw std::domain_error("SpectralDensity: requires s > 0");
}

// Break points at the zeros of the trig factor so each adaptive piece sees
// at most one sign change.
std::vector<double> trig_breaks(double u) {
    std::vector<double> breaks;
    if (u > 0.0) {
        const double step = M_PI / u;
        if (step < kOmegaCut) {
            breaks.reserve(static_cast<std::size_t>(kOmegaCut / step) + 1);
            for (double w = step; w < kOmegaCut; w += step) breaks.push_back(w);
        }
    }
    return breaks;
}

double integrate_kernel(const std::function<double(double)>& f, double u,
                        const char* name, double u_arg, double s_arg) {
    quad::QuadResult r = quad::integrate_piecewise(f, 0.0, kOmegaCut, trig_breaks(u), kQuadTol);
    if (!r.converged)
        throw numerical_error(std::string(name) + ": quadrature did not converge (u=" +
                              std::to_string(u_arg) + ", s=" + std::to_string(s_arg) +
                              ", est_error=" + std::to_string(r.est_error) + ")");
    return r.value;
}

}  // namespace

double j_eval(const SpectralDensity& sd, double omega) {
    check_sd(sd);
    if (!(omega >= 0.0)) throw std::domain_error("j_eval: requires omega >= 0");
    if (omega == 0.0) return 0.0;
    return std::pow(omega, sd.s) * std::exp(-omega);
}

KernelSample kernel_sin(const SpectralDensity& sd, double u, KernelMethod method) {
    check_sd(sd);
    if (!(u >= 0.0)) throw std::domain_error("kernel_sin: requires u >= 0");
    if (method == KernelMethod::closed_form) {
        if (sd.s != 1.0)
            throw std::invalid_argument("kernel_sin: closed form only available for s = 1");
        const double d = 1.0 + u * u;
        return {2.0 * u / (d * d), KernelMethod::closed_form};
    }
    const double s = sd.s;
    auto f = [s, u](double w) { return std::pow(w, s) * std::exp(-w) * std::sin(w * u); };
    return {integrate_kernel(f, u, "kernel_sin", u, s), KernelMethod::quadrature};
}

KernelSample kernel_sin(const SpectralDensity& sd, double u) {
    return kernel_sin(sd, u, sd.s == 1.0 ? KernelMethod::closed_form : KernelMethod::quadrature);
}

KernelSample kernel_cos_thermal(const SpectralDensity& sd, double u, double theta,
                                KernelMethod method) {
    check_sd(sd);
    if (!(u >= 0.0)) throw std::domain_error("kernel_cos_thermal: requires u >= 0");
    if (!(theta > 0.0)) throw std::domain_error("kernel_cos_thermal: requires theta > 0");
    if (method == KernelMethod::closed_form) {
        if (sd.s != 1.0)
            throw std::invalid_argument("kernel_cos_thermal: closed form only available for s = 1");
        return {2.0 * theta / (1.0 + u * u), KernelMethod::closed_form};
    }
    const double s = sd.s;
    // Integrand ~ w^{s-1} at the origin (integrable for s > 0).  For s < 1
    // substitute w = v^2 on [0,1] to remove the algebraic singularity.
    double head = 0.0;
    double lo = 0.0;
    if (s < 1.0) {
        auto g = [s, u](double v) {
            const double w = v * v;
            return 2.0 * std::pow(v, 2.0 * s - 1.0) * std::exp(-w) * std::cos(w * u);
        };
        quad::QuadResult r = quad::integrate_adaptive(g, 0.0, 1.0, kQuadTol * 0.5);
        if (!r.converged)
            throw numerical_error("kernel_cos_thermal: head quadrature did not converge (u=" +
                                  std::to_string(u) + ", s=" + std::to_string(s) + ")");
        head = r.value;
        lo = 1.0;
    }
    auto f = [s, u](double w) { return std::pow(w, s - 1.0) * std::exp(-w) * std::cos(w * u); };
    std::vector<double> breaks = trig_breaks(u);
    std::erase_if(breaks, [lo](double w) { return w <= lo; });
    quad::QuadResult r = quad::integrate_piecewise(f, lo, kOmegaCut, breaks, kQuadTol * 0.5);
    if (!r.converged)
        throw numerical_error("kernel_cos_thermal: quadrature did not converge (u=" +
                              std::to_string(u) + ", s=" + std::to_string(s) +
                              ", est_error=" + std::to_string(r.est_error) + ")");
    return {2.0 * theta * (head + r.value), KernelMethod::quadrature};
}

KernelSample kernel_cos_thermal(const SpectralDensity& sd, double u, double theta) {
    return kernel_cos_thermal(sd, u, theta,
                              sd.s == 1.0 ? KernelMethod::closed_form : KernelMethod::quadrature);
}

}  // namespace gcnm::bath
