#include "orlicz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "orlicz/detail/gauss_kronrod.hpp"

namespace orlicz {

namespace {

using detail::kWg7 ;
using detail::kWgk15;
using detail::kXgk15;

struct Interval {
  double a, b, val, err;
};

void gk15(const std::function<double(double)>& g, double a, double b, double& val,
          double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = g(c - h * kXgk15[j]);
    fv[14 - j] = g(c + h * kXgk15[j]);
  }
  fv[7] = g(c);
  double resk = kWgk15[7] * fv[7];
  double resg = kWg7[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    resk += kWgk15[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) resg += kWg7[j / 2] * (fv[j] + fv[14 - j]);
  }
  val = resk * h;
  err = std::abs((resk - resg) * h);
}

struct WorstFirst {
  bool operator()(const Interval& u, const Interval& v) const {
    if (u.err != v.err) return u.err < v.err;
    return u.a > v.a;  // deterministic tie break
  }
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                              double tol, long eval_cap, double rel) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive: requires a < b");
  rel = std::max(rel, 1e-14);
  QuadResult result;

  std::priority_queue<Interval, std::vector<Interval>, WorstFirst> queue;
  Interval root{a, b, 0, 0};
  gk15(g, a, b, root.val, root.err);
  result.evaluations = 15;
  queue.push(root);

  double total_val = root.val, total_err = root.err;
  std::vector<Interval> done;
  auto target = [&] { return std::max(tol, rel * std::abs(total_val)); };

  while (total_err > target() && !queue.empty()) {
    if (result.evaluations + 30 > eval_cap) {
      result.status = QuadStatus::max_evals;
      break;
    }
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // cannot split further
      done.push_back(worst);
      continue;
    }
    Interval left{worst.a, mid, 0, 0}, right{mid, worst.b, 0, 0};
    gk15(g, left.a, left.b, left.val, left.err);
    gk15(g, right.a, right.b, right.val, right.err);
    result.evaluations += 30;
    total_val += left.val + right.val - worst.val;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
  }

  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Interval& u, const Interval& v) { return u.a < v.a; });
  double val = 0, err = 0, comp = 0;
  for (const Interval& iv : done) {
    double y = iv.val - comp;  // Kahan, fixed left-to-right order
    double t = val + y;
    comp = (t - val) - y;
    val = t;
    err += iv.err;
  }
  result.value = val;
  result.err_estimate = err;
  return result;
}

double integrate_sphere(const std::function<double(const Point&)>& g, int n) {
  if (n == 1) return g(Point{1.0, 0.0}) + g(Point{-1.0, 0.0});
  if (n != 2) throw std::invalid_argument("integrate_sphere: n must be 1 or 2");
  static const std::vector<Point> nodes = [] {
    std::vector<Point> w(kCircleNodes);
    for (int j = 0; j < kCircleNodes; ++j) {
      double th = 2.0 * M_PI * j / kCircleNodes;
      w[j] = Point{std::cos(th), std::sin(th)};
    }
    return w;
  }();
  double sum = 0;
  for (const Point& w : nodes) sum += g(w);
  return sum * (2.0 * M_PI / kCircleNodes);
}

QuadResult integrate_radial_substituted(const std::function<double(double, double)>& g,
                                        double s, double r_max, double tol, double r_min,
                                        double rel) {
  if (!(s > 0 && s < 1)) throw std::invalid_argument("radial integral: s must be in (0,1)");
  if (!(r_max > 0)) throw std::invalid_argument("radial integral: r_max must be positive");
  const double one_ms = 1.0 - s;
  const double v_hi = std::pow(r_max, one_ms);
  const double v_lo = r_min > 0 ? std::pow(r_min, one_ms) : 0.0;
  auto integrand = [&](double v) {
    if (v <= 0) return 0.0;
    double lr = std::log(v) / one_ms;
    double r = lr < -744.0 ? 0.0 : std::exp(lr);
    return g(r, v) / (one_ms * v);
  };
  return integrate_adaptive(integrand, v_lo, v_hi, tol, kQuadEvalCap, rel);
}

QuadResult integrate_radial_singular(const std::function<double(double)>& g, double s,
                                     double r_max, double tol) {
  return integrate_radial_substituted([&](double r, double) { return g(r); }, s, r_max, tol);
}

DivergenceProbe probe_radial_divergence(const std::function<double(double)>& g, double s,
                                        double r_max, double tol) {
  DivergenceProbe probe;
  for (int k = 2; k <= 8; ++k) {
    double r_min = r_max * std::pow(10.0, -k);
    QuadResult q = integrate_radial_substituted([&](double r, double) { return g(r); }, s,
                                                r_max, tol, r_min);
    probe.truncated.emplace_back(r_min, q.value);
  }
  size_t m = probe.truncated.size();
  double last = probe.truncated[m - 1].second;
  double prev = probe.truncated[m - 2].second;
  probe.diverged = prev > 0 && last > 10.0 * prev;
  return probe;
}

}  // namespace orlicz
