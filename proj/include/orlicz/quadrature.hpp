#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace orlicz {

using Point = std::array<double, 2>;

enum class QuadStatus { converged, max_evals };

struct QuadResult {
  double value = 0;
  double err_estimate = 0;
  long evaluations = 0;
  QuadStatus status = QuadStatus::converged;
};

inline constexpr long kQuadEvalCap = 10'000'000;

/// Globally adaptive Gauss-Kronrod 7/15 bisection on [a,b]. Stops once the
/// summed interval error drops below max(tol, rel|value|) or the hard
/// evaluation cap is hit (status then carries the partial value). Accepted
/// intervals are summed in left-to-right order, so results are deterministic.
QuadResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                              double tol, long eval_cap = kQuadEvalCap, double rel = 1e-13);

/// Surface integral over the unit sphere. n=1: g(+e1)+g(-e1) exactly.
/// n=2: 512-node periodic trapezoid on the circle.
double integrate_sphere(const std::function<double(const Point&)>& g, int n);

inline constexpr int kCircleNodes = 512;

/// ∫₀^{r_max} g(r) dr/r through the substitution v = r^{1-s}, which turns the
/// A-composition integrands that appear here into Lipschitz ones near 0.
QuadResult integrate_radial_singular(const std::function<double(double)>& g, double s,
                                     double r_max, double tol);

/// Same substitution, callback sees both r and v = r^{1-s}; r may underflow
/// to exactly 0 for s close to 1, in which case v still carries the scale.
QuadResult integrate_radial_substituted(const std::function<double(double, double)>& g,
                                        double s, double r_max, double tol,
                                        double r_min = 0.0, double rel = 1e-13);

struct DivergenceProbe {
  std::vector<std::pair<double, double>> truncated;  // (r_min, integral over [r_min, r_max])
  bool diverged = false;
};

/// Truncated-lower-limit refinement of ∫ g dr/r: r_min shrinks by 10x per
/// row; reported divergent when the value keeps growing by more than 10x.
DivergenceProbe probe_radial_divergence(const std::function<double(double)>& g, double s,
                                        double r_max, double tol);

}  // namespace orlicz
