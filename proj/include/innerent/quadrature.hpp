#pragma once

#include <functional>

namespace innerent {

/// Controls for the radial/conical integrals and the radial-limit schedule.
struct QuadratureConfig {
    double t_max = 60.0;            ///< hyperbolic-length cutoff of the radial integrals
    double abs_tol = 1e-8;          ///< absolute tolerance of the adaptive quadrature
    double divergence_cap = 1e4;    ///< running integral above this is reported diverged
    int max_subdivisions = 4000;    ///< interval budget per adaptive integral
    int radial_depth = 40;          ///< radial schedule r_n = 1 - 2^{-n}, n <= depth
    double radial_tol = 1e-6;       ///< relative stabilization tolerance of that schedule
};

void validate(const QuadratureConfig& cfg);

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool capped = false;     ///< |running value| exceeded the cap; value is partial
    bool converged = false;  ///< error <= abs_tol
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// The interval is first cut into `initial_panels` equal pieces; afterwards the
/// piece with the largest error estimate is bisected until the summed error is
/// below abs_tol, the interval budget is spent, or |value| exceeds cap.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_intervals, double cap = 0.0,
                                  int initial_panels = 1);

}  // namespace innerent
