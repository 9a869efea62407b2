#pragma once

#include <utility>
#include <vector>

#include "gcnm/gchannel.hpp"

namespace gcnm::nonmark {

enum class ChannelKind { qbm_exact, qbm_rwa, pd };

const char* to_string(ChannelKind c);

/// Punctual non-Markovianity at one time; value in [0, 1], zero iff the
/// negative part of the Z spectrum vanishes.
struct PunctualNM {
    double tau = 0.0;
    double value = 0.0;
    ChannelKind channel = ChannelKind::qbm_exact;
};

/// mu/nu of a Z spectrum: mu = sum of negative-part magnitudes, nu = sum of
/// absolute values.  Returns 0 when nu = 0 (instantaneously unitary step).
double np_from_spectrum(const gchannel::ZSpectrum& spec);

/// Exact QBM channel: 1/2 [1 - delta / sqrt(delta^2 + gamma^2 + pi^2)].
PunctualNM np_qbm_exact(const coeffs::CoefficientTable& table, double tau);

/// Rotating-wave form: 1/2 [1 - 2 delta / (|delta+gamma| + |delta-gamma|)];
/// binary 0/1 wherever |delta| > |gamma|.
PunctualNM np_rwa(const coeffs::CoefficientTable& table, double tau);

/// Pure damping: 0 if gamma > 0, 1 if gamma < 0, 0 at |gamma| < 1e-12.
PunctualNM np_pd(const coeffs::CoefficientTable& table, double tau);

/// tau -> infinity limit of the exact QBM measure (Ohmic, high temperature):
///   1/2 - pi theta x / sqrt(4 theta^2 x^2 [(Ei(1/x) - e^{2/x} Ei(-1/x))^2 + pi^2] + pi^2).
double np_asymptotic(double x, double theta);

/// Time-averaged measure over [tau_a, tau_b]:
/// int N_p dtau / int f(N_p) dtau with f the 0/1 indicator; 0 when the
/// denominator vanishes (never non-Markovian on the interval).
double np_integrated(const coeffs::CoefficientTable& table, ChannelKind channel, double tau_a,
                     double tau_b);

/// Uhlmann fidelity between single-mode Gaussian states (vacuum cov = I/2
/// convention).  F = 1 iff the states coincide.
double gaussian_fidelity(const gchannel::GaussianState& a, const gchannel::GaussianState& b);

/// Contractive distances derived from the fidelity.
enum class DistanceKind { bures, root_infidelity };

double gaussian_distance(const gchannel::GaussianState& a, const gchannel::GaussianState& b,
                         DistanceKind kind = DistanceKind::bures);

using StatePair = std::pair<gchannel::GaussianState, gchannel::GaussianState>;

/// Distance-based witness on a tau grid: distance[k] and derivative[k] are
/// the minima over the supplied pairs, witness[k] = max(0, derivative[k]).
struct WitnessResult {
    std::vector<double> tau;
    std::vector<double> distance;
    std::vector<double> derivative;
    std::vector<double> witness;
};

WitnessResult distance_witness(const gchannel::QbmChannel& channel,
                               const std::vector<StatePair>& pairs,
                               const std::vector<double>& tau_grid,
                               DistanceKind kind = DistanceKind::bures);

}  // namespace gcnm::nonmark
