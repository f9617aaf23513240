#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace orlicz {

// Saturation thresholds. Unbounded ratios are reported as an explicit +inf
// set when a value crosses these caps; we never let a double overflow decide.
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kRatioCap = 1e12;
inline constexpr double kClassifyZero = 1e-10;
inline constexpr double kClassifyInf = 1e10;

/// A convex function A(t)=∫₀ᵗ a with nondecreasing density a, a(0)=0,
/// superlinear at 0 and at infinity. Instances are immutable closures and
/// safe to call from any thread.
struct YoungFunction {
  std::string label;
  std::function<double(double)> eval;         // A(t)
  std::function<double(double)> density;      // a(t)
  std::function<double(double)> log_eval;     // log A(t), stable where A underflows
  std::function<double(double)> log_density;  // log a(t)

  double operator()(double t) const { return eval(t); }
};

// Catalog. Labels (shared with the CLI): power:p, powerraw:p, powerlog:p,
// llogl, exppower:q, flatzero.
YoungFunction make_power(double p);           // t^p / p, p > 1
YoungFunction make_power_raw(double p);       // t^p
YoungFunction make_power_log(double p);       // t^p log(1+t), p >= 1
YoungFunction make_llogl();                   // (1+t)log(1+t) - t
YoungFunction make_exp_power(double q);       // exp(t^q) - 1 - t^q, q >= 1
YoungFunction make_flat_zero();               // exp(-1/t) up to t0, quadratic beyond

YoungFunction young_from_label(const std::string& label);
std::vector<std::string> young_catalog_labels();

/// Legendre transform sup{τt - A(τ)}. The maximizer solves a(τ)=t; it is
/// found by doubling/halving brackets and bisection to 1e-10 relative width.
/// Returns a full YoungFunction (its density is the argmax map).
YoungFunction conjugate(const YoungFunction& f);

/// conj(f)(tau) + f(t) - tau*t. Nonnegative up to roundoff.
double young_inequality_margin(const YoungFunction& f, double tau, double t);

enum class Delta2Regime { global, near_zero };

struct Delta2Report {
  double sup_ratio = 0;  // sup A(2t)/A(t); +inf when it crosses kRatioCap
  double argmax_t = 0;
  Delta2Regime regime = Delta2Regime::global;
  std::string grid;  // description of the sampled range
};

/// Doubling-ratio diagnostic on a geometric grid: t in [1e-8,1e8] (global)
/// or [1e-8,1e-1] (near_zero). Ratios are formed in the log domain.
Delta2Report delta2_ratio(const YoungFunction& f, Delta2Regime regime);

enum class GrowthClass { zero, finite, infinite };

enum class MatuszewskaStatus { ok, underflow };

struct MatuszewskaResult {
  double value = 0;       // 0 / finite / +inf per classification
  double log_value = 0;   // finite log of the running max where meaningful
  GrowthClass classification = GrowthClass::finite;
  MatuszewskaStatus status = MatuszewskaStatus::ok;
  std::string diagnostic;
};

/// limsup_{δ→0} A(tδ)/A(δ) estimated as the running max of
/// exp(log A(tδ) - log A(δ)) over the tail half of `deltas`
/// (strictly decreasing, last <= 1e-6). Classified zero/finite/infinite
/// with thresholds kClassifyZero / kClassifyInf.
MatuszewskaResult matuszewska(const YoungFunction& f, double t,
                              const std::vector<double>& deltas);

std::vector<double> default_matuszewska_deltas();

struct IndexBounds {
  double p_minus = 0;
  double p_plus = 0;  // +inf when capped or divergent toward a grid boundary
  double argmin_t = 0;
  double argmax_t = 0;
};

/// inf and sup of t·a(t)/A(t) over a geometric grid t in [1e-8,1e8].
/// The sup saturates to +inf when a ratio crosses kRatioCap, and also when
/// the ratio keeps growing by >= 5x per decade into the boundary where the
/// grid max sits (the grid cannot witness a finite sup there).
IndexBounds index_bounds(const YoungFunction& f);

struct SandwichMargins {
  double lhs = 0;  // t a(t) - A(t)
  double rhs = 0;  // A(2t) - t a(t)
};

SandwichMargins sandwich_check(const YoungFunction& f, double t);

}  // namespace orlicz
