#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace orlicz {

/// Streaming log-sum-exp: accumulates log(sum_i exp(l_i)) without leaving
/// the log domain.
struct LogSumExp {
  double max_log = -std::numeric_limits<double>::infinity();
  double sum = 0;

  void add(double l) {
    if (l == -std::numeric_limits<double>::infinity()) return;
    if (l > max_log) {
      sum = sum * std::exp(max_log - l) + 1.0;
      max_log = l;
    } else {
      sum += std::exp(l - max_log);
    }
  }
  double result() const {
    if (sum <= 0) return -std::numeric_limits<double>::infinity();
    return max_log + std::log(sum);
  }
};

/// log of ∫₀^V exp(log_g(v)) dv. Dyadic panels [V2^{-j-1}, V2^{-j}] are
/// swept from the upper end with a 15-node rule per panel, everything kept
/// in the log domain; the sweep stops once a panel falls drop_log below the
/// running maximum. Integrands must be nonnegative (true log values).
double log_integral_dyadic(const std::function<double(double)>& log_g, double V,
                           int max_panels = 1200, double drop_log = 46.0);

/// Fritsch-Carlson monotone cubic interpolation on strictly increasing
/// abscissae; linear continuation with the end slopes outside the range.
class MonotoneCubicInterpolant {
 public:
  MonotoneCubicInterpolant() = default;
  MonotoneCubicInterpolant(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;
};

/// Radical-inverse (Halton) sequence, bases 2,3,5,7 by dimension.
double halton(long index, int base);

}  // namespace orlicz
