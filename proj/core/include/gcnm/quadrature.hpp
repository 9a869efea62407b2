#pragma once

#include <functional>
#include <vector>

namespace gcnm::quad {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) with interval bisection down to abs_tol.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_intervals = 4000);

/// Same rule, but the caller supplies interior break points (e.g. the zeros
/// of an oscillatory factor); each piece is refined independently and the
/// tolerance is split across pieces.
QuadResult integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                               const std::vector<double>& breaks, double abs_tol);

}  // namespace gcnm::quad
