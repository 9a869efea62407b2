#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gcnm/bath.hpp"

namespace gcnm::coeffs {

/// Dimensionless simulation parameters (w_c = hbar = k_B = 1, tau = w_c t).
///   x     = w_c / w_0, the non-Markovianity parameter (so w_0 = 1/x),
///   theta = k_B T / (hbar w_c),
///   alpha = system-bath coupling.
/// n_grid = 0 lets build_table pick a grid (about 400 points per oscillation
/// period, clamped to resolve the kernel decay scale).
struct ChannelParams {
    double x = 0.1;
    double theta = 100.0;
    double alpha = 0.1;
    bath::SpectralDensity sd{};
    double tau_max = 50.0;
    int n_grid = 0;
};

/// Master-equation coefficients sampled on a shared uniform tau grid:
/// damping gamma, direct diffusion delta, anomalous diffusion pi, and the
/// cumulative damping Gamma(tau) = 2 int_0^tau gamma.  The grid is the single
/// numerical backbone every downstream quantity interpolates from.
struct CoefficientTable {
    std::vector<double> tau;
    std::vector<double> gamma;
    std::vector<double> delta;
    std::vector<double> pi;
    std::vector<double> gamma_cum;  // Gamma(tau)
    ChannelParams params;
    std::vector<std::string> warnings;

    double step() const { return tau.size() > 1 ? tau[1] - tau[0] : 0.0; }
    double tau_max() const { return tau.empty() ? 0.0 : tau.back(); }
    std::size_t size() const { return tau.size(); }

    double gamma_at(double t) const;
    double delta_at(double t) const;
    double pi_at(double t) const;
    double gamma_cum_at(double t) const;
};

struct AsymptoticCoefficients {
    double gamma_as = 0.0;
    double delta_as = 0.0;
    double pi_as = 0.0;
};

/// Validates params; returns human-readable warnings (e.g. x below the
/// high-temperature validity threshold 0.1).  Throws std::invalid_argument
/// on hard violations, including a grid too coarse for the oscillation
/// period 2*pi*x (fewer than 20 points per period).
std::vector<std::string> validate(const ChannelParams& p);

/// Builds the coefficient table by cumulative composite integration of the
/// kernel samples on the shared grid.
CoefficientTable build_table(const ChannelParams& p);

/// tau -> infinity limits for the Ohmic (s = 1), high-temperature case.
AsymptoticCoefficients asymptotic_coeffs(const ChannelParams& p);

/// Gamma(tau+eps) - Gamma(tau) by cubic interpolation on the cumulative table.
double gamma_increment(const CoefficientTable& table, double tau, double eps);

/// CSV dump with header exactly "tau,gamma,Delta,Pi,Gamma".
void dump_table_csv(const CoefficientTable& table, std::ostream& os);

/// Cubic interpolation on a uniform grid (4-point Lagrange stencil); shared
/// by the table accessors and the channel machinery.
double interp_cubic(const std::vector<double>& y, double h, double t);

/// Cumulative integral on a uniform grid: 4-point Newton-Cotes (local cubic)
/// per interval, O(h^4), with a value at every node.  Shared composite rule
/// of all table quantities.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

}  // namespace gcnm::coeffs
