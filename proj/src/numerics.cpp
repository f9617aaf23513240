#include "orlicz/numerics.hpp"

#include <stdexcept>

#include "orlicz/detail/gauss_kronrod.hpp"

namespace orlicz {

double log_integral_dyadic(const std::function<double(double)>& log_g, double V,
                           int max_panels, double drop_log) {
  if (!(V > 0)) return -std::numeric_limits<double>::infinity();
  LogSumExp acc;
  double hi = V;
  for (int j = 0; j < max_panels; ++j) {
    double lo = 0.5 * hi;
    if (lo <= 0 || lo == hi) break;
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    LogSumExp panel;
    for (int k = 0; k < 8; ++k) {
      double lw = std::log(detail::kWgk15[k] * h);
      panel.add(log_g(c - h * detail::kXgk15[k]) + lw);
      if (k < 7) panel.add(log_g(c + h * detail::kXgk15[k]) + lw);
    }
    double pl = panel.result();
    acc.add(pl);
    if (pl < acc.result() - drop_log) break;
    hi = lo;
  }
  return acc.result();
}

MonotoneCubicInterpolant::MonotoneCubicInterpolant(std::vector<double> x,
                                                   std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("interpolant needs >= 2 matching nodes");
  std::vector<double> h(n - 1), d(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0)) throw std::invalid_argument("interpolant abscissae must increase");
    d[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0) {
      m_[k] = 0.0;
    } else {
      double w1 = 2 * h[k] + h[k - 1];
      double w2 = h[k] + 2 * h[k - 1];
      m_[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
    }
  }
}

double MonotoneCubicInterpolant::operator()(double x) const {
  const size_t n = x_.size();
  if (x <= x_.front()) return y_.front() + m_.front() * (x - x_.front());
  if (x >= x_.back()) return y_.back() + m_.back() * (x - x_.back());
  size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  double h = x_[lo + 1] - x_[lo];
  double t = (x - x_[lo]) / h;
  double t2 = t * t, t3 = t2 * t;
  return y_[lo] * (2 * t3 - 3 * t2 + 1) + h * m_[lo] * (t3 - 2 * t2 + t) +
         y_[lo + 1] * (-2 * t3 + 3 * t2) + h * m_[lo + 1] * (t3 - t2);
}

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  for (long i = index + 1; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

}  // namespace orlicz
