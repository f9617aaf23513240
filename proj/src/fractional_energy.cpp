#include "orlicz/fractional_energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "orlicz/detail/gauss_kronrod.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {

namespace {

constexpr int kOuterCells = 8;  // fixed decomposition, independent of thread count

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ORLICZ_GAMMA_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

double vec_norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); }

struct DivergenceSignal {
  std::vector<std::pair<double, double>> certificate;
};

// The inner integrand at a fixed base point: sphere sum of A at the
// difference quotient. Below r_linearize the quotient switches to the exact
// gradient form |grad u(x)·w| r^{1-s}; the raw difference loses all digits
// there and the switch changes the integral by O(r_lin^{2-s}).
struct InnerIntegrand {
  const YoungFunction& f;
  const TestFunction& u;
  double s;
  Point x;
  double ux;
  Point grad_x;
  double r_lin;

  double quotient(double r, double v, const Point& w) const {
    if (r < r_lin) {
      double dir = std::abs(grad_x[0] * w[0] + grad_x[1] * w[1]);
      return dir * v;
    }
    Point y{x[0] + r * w[0], x[1] + r * w[1]};
    return std::abs(u.eval(y) - ux) / std::pow(r, s);
  }

  // v = r^{1-s}; pass v = pow(r,1-s) when calling outside the substituted zone.
  double sphere_sum(double r, double v) const {
    return integrate_sphere([&](const Point& w) { return f.eval(quotient(r, v, w)); }, u.n);
  }
};

struct InnerParts {
  double value = 0;
  double err = 0;
};

// ∫_0^{r_hi} SphereSum(r) dr/r without any prefactor. r_hi may be +inf; the
// range beyond |x|+R (where the translate leaves the support) reduces to the
// closed radial profile A(|u(x)| r^{-s}) and is integrated exactly via
// w = r^{-s}.
InnerParts inner_radial(const YoungFunction& f, const TestFunction& u, double s,
                        const Point& x, double r_hi, const EnergyOptions& opt) {
  const double R = u.support_radius;
  const double ax = vec_norm(x);
  InnerIntegrand integ{f, u, s, x, u.eval(x), u.gradient(x), opt.r_linearize};
  const bool x_outside = ax >= R;  // then u(x) == 0 and small r contributes nothing
  const double active_lo = x_outside ? ax - R : 0.0;
  const double r_out = ax + R;
  const double inner_rel = 0.1 * opt.rel_tol;

  InnerParts parts;
  auto account = [&](const QuadResult& q) {
    if (q.status == QuadStatus::max_evals || !std::isfinite(q.value)) {
      DivergenceSignal sig;
      auto probe = probe_radial_divergence(
          [&](double r) { return integ.sphere_sum(r, std::pow(r, 1.0 - s)); }, s,
          std::min(r_hi, r_out), opt.rel_tol);
      sig.certificate = probe.truncated;
      throw sig;
    }
    parts.value += q.value;
    parts.err += q.err_estimate;
  };

  // Singular segment, v = r^{1-s} substitution.
  double hi1 = std::min({opt.r_split, r_hi, r_out});
  double lo1 = x_outside ? active_lo : 0.0;
  if (hi1 > lo1) {
    account(integrate_radial_substituted(
        [&](double r, double v) { return integ.sphere_sum(r, v); }, s, hi1, 0.0, lo1));
  }

  // Far field up to where the translate leaves the support.
  double lo2 = std::max(opt.r_split, x_outside ? active_lo : 0.0);
  double hi2 = std::min(r_hi, r_out);
  if (hi2 > lo2) {
    account(integrate_adaptive(
        [&](double r) { return integ.sphere_sum(r, std::pow(r, 1.0 - s)) / r; }, lo2, hi2,
        0.0, kQuadEvalCap, inner_rel));
  }

  // Outside the support: S(r) = surf * A(|u(x)| r^{-s}).
  double mu = std::abs(integ.ux);
  if (r_hi > r_out && mu > 0) {
    double w_hi = std::pow(r_out, -s);
    double w_lo = std::isinf(r_hi) ? 0.0 : std::pow(r_hi, -s);
    QuadResult q = integrate_radial_substituted(
        [&](double w, double) { return f.eval(mu * w); }, 0.5, w_hi, 0.0, w_lo);
    q.value *= sphere_measure(u.n) / s;
    q.err_estimate *= sphere_measure(u.n) / s;
    account(q);
  }
  return parts;
}

// Same integral written over the support ball; valid (and smooth) once
// u(x) = 0 and |x| > R, which is how the far outer region is evaluated.
double inner_over_support(const YoungFunction& f, const TestFunction& u, double s,
                          const Point& x, double rel) {
  const double R = u.support_radius;
  if (u.n == 1) {
    return integrate_adaptive(
               [&](double y) {
                 double d = std::abs(x[0] - y);
                 return f.eval(std::abs(u.eval(Point{y, 0.0})) / std::pow(d, s)) / d;
               },
               -R, R, 0.0, kQuadEvalCap, rel)
        .value;
  }
  auto ring = [&](double rho) {
    return integrate_sphere(
        [&](const Point& w) {
          Point y{rho * w[0], rho * w[1]};
          double d = vec_norm(Point{x[0] - y[0], x[1] - y[1]});
          return f.eval(std::abs(u.eval(y)) / std::pow(d, s)) / (d * d);
        },
        2);
  };
  return integrate_adaptive([&](double rho) { return ring(rho) * rho; }, 0.0, R, 0.0,
                            kQuadEvalCap, rel)
      .value;
}

double cells_integral(const std::function<double(double)>& g, double a, double b, double rel,
                      int threads, double& err) {
  std::array<QuadResult, kOuterCells> results;
  const double h = (b - a) / kOuterCells;
  auto run_cell = [&](int i) {
    return integrate_adaptive(g, a + i * h, a + (i + 1) * h, 0.0, kQuadEvalCap, rel);
  };
  if (threads <= 1) {
    for (int i = 0; i < kOuterCells; ++i) results[i] = run_cell(i);
  } else {
    std::vector<std::future<QuadResult>> futs(kOuterCells);
    for (int i = 0; i < kOuterCells; ++i)
      futs[i] = std::async(std::launch::deferred | std::launch::async, run_cell, i);
    for (int i = 0; i < kOuterCells; ++i) results[i] = futs[i].get();
  }
  double sum = 0;
  for (int i = 0; i < kOuterCells; ++i) {  // fixed reduction order
    sum += results[i].value;
    err += results[i].err_estimate;
  }
  return sum;
}

}  // namespace

EnergyValue fractional_energy(const YoungFunction& f, const TestFunction& u, double s,
                              const EnergyOptions& opt) {
  if (!(s > 0 && s < 1)) throw std::invalid_argument("fractional_energy: s must be in (0,1)");
  EnergyValue ev;
  if (u.sup_norm() == 0) return ev;

  const int n = u.n;
  const double R = u.support_radius;
  const double surf = sphere_measure(n);
  const int threads = resolve_threads(opt.threads);

  auto inner_at = [&](const Point& x) {
    return inner_radial(f, u, s, x, kPosInf, opt).value;
  };
  auto shell = [&](double t) {
    double w = std::pow(t, n - 1);
    if (u.radial) return surf * inner_at(Point{t, 0.0}) * w;
    return integrate_sphere([&](const Point& d) { return inner_at(Point{t * d[0], t * d[1]}); },
                            n) *
           w;
  };

  try {
    const double x0 = std::max(2.0 * R, 2.0);
    double core = cells_integral(shell, 0.0, x0, opt.rel_tol, threads, ev.err_estimate);

    // Outer truncation: for |x| >= x0, |x-y| >= |x|/2 and convexity give the
    // integrable majorant 2^{n+s} surf I_A |x|^{-n-s}; the cut radius makes
    // the resulting bound fall below tail_rel of the running value.
    double i_a = modular(f, u, 1.0).value;
    double bound_coeff = std::pow(2.0, n + s) * surf * i_a / s;  // * X^{-s}
    double target = opt.tail_rel * std::max(core, 1e-300);
    double x_cut = std::pow(std::max(bound_coeff / target, 1.0), 1.0 / s) ;
    x_cut = std::min(std::max(x_cut, 2.0 * x0), 1e30);

    auto far_shell = [&](double t) {
      double w = std::pow(t, n - 1);
      if (u.radial) return surf * inner_over_support(f, u, s, Point{t, 0.0}, 0.03 * opt.rel_tol) * w;
      return integrate_sphere(
                 [&](const Point& d) {
                   return inner_over_support(f, u, s, Point{t * d[0], t * d[1]},
                                             0.03 * opt.rel_tol);
                 },
                 n) *
             w;
    };
    const double span = std::log(x_cut / x0);
    QuadResult ext = integrate_adaptive(
        [&](double tau) {
          double t = x0 * std::exp(tau);
          return far_shell(t) * t;
        },
        0.0, span, 0.0, kQuadEvalCap, opt.rel_tol);
    ev.err_estimate += ext.err_estimate;

    ev.value = (1.0 - s) * (core + ext.value);
    ev.truncation_bound = (1.0 - s) * bound_coeff * std::pow(x_cut, -s);
    ev.err_estimate = (1.0 - s) * ev.err_estimate + 0.2 * opt.rel_tol * std::abs(ev.value);
  } catch (const DivergenceSignal& sig) {
    ev.value = kPosInf;
    ev.divergent = true;
    ev.growth_certificate = sig.certificate;
  }
  return ev;
}

double pointwise_energy_density(const YoungFunction& f, const TestFunction& u, double s,
                                const Point& x, const EnergyOptions& opt) {
  if (!(s > 0 && s < 1))
    throw std::invalid_argument("pointwise_energy_density: s must be in (0,1)");
  const double ax = vec_norm(x);
  if (ax >= 2.0 * u.support_radius && ax >= 2.0)
    return (1.0 - s) * inner_over_support(f, u, s, x, 0.1 * opt.rel_tol);
  return (1.0 - s) * inner_radial(f, u, s, x, kPosInf, opt).value;
}

// ---- limit functional ------------------------------------------------------

namespace {

struct LimitMemo {
  MonotoneCubicInterpolant log_a0;  // log A0 over log t
  int n = 1;
};

// log of the sphere integral of A(r |w·e|) against the fixed direction e_n.
double log_sphere_factor(const YoungFunction& f, int n, double r) {
  if (r <= 0) return -kPosInf;
  if (n == 1) return std::log(2.0) + f.log_eval(r);
  static const std::vector<double> abs_sin = [] {
    std::vector<double> v(kCircleNodes);
    for (int j = 0; j < kCircleNodes; ++j)
      v[j] = std::abs(std::sin(2.0 * M_PI * j / kCircleNodes));
    return v;
  }();
  LogSumExp acc;
  const double log_w = std::log(2.0 * M_PI / kCircleNodes);
  for (double as : abs_sin) {
    if (as == 0) continue;
    acc.add(f.log_eval(r * as) + log_w);
  }
  return acc.result();
}

// Single 15-node panel of ∫ exp(log_g) dr over [a,b], in the log domain.
double log_panel(const std::function<double(double)>& log_g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  LogSumExp acc;
  for (int k = 0; k < 8; ++k) {
    double lw = std::log(detail::kWgk15[k] * h);
    acc.add(log_g(c - h * detail::kXgk15[k]) + lw);
    if (k < 7) acc.add(log_g(c + h * detail::kXgk15[k]) + lw);
  }
  return acc.result();
}

std::shared_ptr<LimitMemo> build_limit_memo(const YoungFunction& f, int n) {
  const double t_lo = 1e-8, t_hi = 1e8;
  const int per_decade = 32;
  const int npts = 16 * per_decade + 1;

  auto log_g = [&](double r) { return log_sphere_factor(f, n, r) - std::log(r); };

  std::vector<double> xs(npts), ys(npts);
  double running = log_integral_dyadic(log_g, t_lo);
  xs[0] = std::log(t_lo);
  ys[0] = running;
  for (int k = 1; k < npts; ++k) {
    double ta = t_lo * std::pow(t_hi / t_lo, double(k - 1) / (npts - 1));
    double tb = t_lo * std::pow(t_hi / t_lo, double(k) / (npts - 1));
    LogSumExp acc;
    acc.add(running);
    acc.add(log_panel(log_g, ta, tb));
    running = acc.result();
    xs[k] = std::log(tb);
    ys[k] = running;
  }
  for (double y : ys)
    if (!std::isfinite(y))
      throw std::logic_error("limit_young_function: log values did not stay finite");
  auto memo = std::make_shared<LimitMemo>();
  memo->log_a0 = MonotoneCubicInterpolant(std::move(xs), std::move(ys));
  memo->n = n;
  return memo;
}

std::shared_ptr<LimitMemo> limit_memo_for(const YoungFunction& f, int n) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<LimitMemo>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f.label, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto memo = build_limit_memo(f, n);
  cache.emplace(key, memo);
  return memo;
}

}  // namespace

YoungFunction limit_young_function(const YoungFunction& f, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("limit_young_function: n must be 1 or 2");
  auto memo = limit_memo_for(f, n);
  auto base = std::make_shared<const YoungFunction>(f);
  YoungFunction a0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "limit(%s,n=%d)", f.label.c_str(), n);
  a0.label = buf;
  a0.eval = [memo](double t) {
    if (t <= 0) return 0.0;
    return std::exp(memo->log_a0(std::log(t)));
  };
  a0.log_eval = [memo](double t) {
    if (t <= 0) return -kPosInf;
    return memo->log_a0(std::log(t));
  };
  a0.density = [memo, base, n](double t) {
    if (t <= 0) return 0.0;
    double lp = log_sphere_factor(*base, n, t) - std::log(t);
    return std::isfinite(lp) ? std::exp(lp) : 0.0;
  };
  a0.log_density = [base, n](double t) {
    if (t <= 0) return -kPosInf;
    return log_sphere_factor(*base, n, t) - std::log(t);
  };
  return a0;
}

double limit_energy(const YoungFunction& f, const TestFunction& u, const EnergyOptions& opt) {
  YoungFunction a0 = limit_young_function(f, u.n);
  const double R = u.support_radius;
  const double rel = 0.1 * opt.rel_tol;
  auto grad_mag = [&](const Point& x) {
    Point g = u.gradient(x);
    return vec_norm(g);
  };
  if (u.n == 1) {
    return integrate_adaptive([&](double x) { return a0.eval(grad_mag(Point{x, 0.0})); }, -R,
                              R, 0.0, kQuadEvalCap, rel)
        .value;
  }
  if (u.radial) {
    return 2.0 * M_PI *
           integrate_adaptive([&](double r) { return a0.eval(grad_mag(Point{r, 0.0})) * r; },
                              0.0, R, 0.0, kQuadEvalCap, rel)
               .value;
  }
  auto inner = [&](double x) {
    return integrate_adaptive([&](double y) { return a0.eval(grad_mag(Point{x, y})); }, -R, R,
                              0.0, kQuadEvalCap, rel)
        .value;
  };
  return integrate_adaptive(inner, -R, R, 0.0, kQuadEvalCap, rel).value;
}

// ---- sweeps and experiments --------------------------------------------

std::string SweepTable::to_csv() const {
  std::string out = "param,energy,err_estimate,reference,rel_error\n";
  char buf[256];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.param,
                  r.energy.value, r.energy.err_estimate, r.reference, r.rel_error);
    out += buf;
  }
  return out;
}

std::vector<double> default_s_list() { return {0.5, 0.9, 0.99, 0.999, 0.9999}; }

namespace {

double rel_error_of(double value, double reference) {
  return std::abs(value - reference) / std::max(reference, 1e-30);
}

}  // namespace

SweepTable s_sweep(const YoungFunction& f, const TestFunction& u,
                   const std::vector<double>& s_list, const EnergyOptions& opt) {
  if (s_list.empty()) throw std::invalid_argument("s_sweep: s_list must not be empty");
  for (size_t i = 0; i + 1 < s_list.size(); ++i)
    if (!(s_list[i] < s_list[i + 1]))
      throw std::invalid_argument("s_sweep: s_list must increase");
  SweepTable table;
  table.param_name = "s";
  table.f_label = f.label;
  table.u_label = u.label;
  table.n = u.n;
  double reference = limit_energy(f, u, opt);
  bool monotone = true, divergent = false;
  for (double s : s_list) {
    SweepRow row;
    row.param = s;
    row.energy = fractional_energy(f, u, s, opt);
    row.reference = reference;
    row.rel_error = rel_error_of(row.energy.value, reference);
    if (row.energy.divergent) divergent = true;
    if (!table.rows.empty() && !(row.rel_error < table.rows.back().rel_error))
      monotone = false;
    table.rows.push_back(row);
  }
  bool zero_case = reference == 0 && table.rows.back().energy.value == 0;
  bool final_ok = zero_case || table.rows.back().rel_error < kSweepFinalRelError;
  table.verdict =
      (!divergent && (zero_case || monotone) && final_ok) ? "CONVERGENT" : "NOT-CONVERGENT";
  return table;
}

LiminfResult liminf_experiment(const YoungFunction& f, const TestFunction& u,
                               SequenceSpec seq, int K, const EnergyOptions& opt,
                               const TestFunction* perturbation) {
  if (K < 3 || K > 14) throw std::invalid_argument("liminf_experiment: K must be in [3,14]");
  LiminfResult res;
  res.limit_value = limit_energy(f, u, opt);
  res.table.param_name = "k";
  res.table.f_label = f.label;
  res.table.u_label = u.label;
  res.table.n = u.n;

  TestFunction tent_default = make_tent(u.n, u.support_radius, 0.3);
  const TestFunction& v = perturbation ? *perturbation : tent_default;

  for (int k = 1; k <= K; ++k) {
    double s_k = std::min(1.0 - std::pow(2.0, -k), kSMax);
    TestFunction u_k = seq == SequenceSpec::mollified
                           ? mollify(u, 1.0 / k)
                           : sum(u, scale(v, 1.0 / k));
    SweepRow row;
    row.param = k;
    row.energy = fractional_energy(f, u_k, s_k, opt);
    row.reference = res.limit_value;
    row.rel_error = rel_error_of(row.energy.value, res.limit_value);
    res.table.rows.push_back(row);
  }
  int last = (K + 2) / 3;
  double min_tail = kPosInf;
  for (int i = K - last; i < K; ++i)
    min_tail = std::min(min_tail, res.table.rows[i].energy.value);
  res.pass = min_tail >= res.limit_value * (1.0 - kLiminfMargin);
  res.table.verdict = res.pass ? "PASS" : "FAIL";
  return res;
}

GammaReport gamma_report(const YoungFunction& f, const TestFunction& u,
                         const std::vector<double>& s_list, const EnergyOptions& opt) {
  GammaReport rep;
  rep.liminf.push_back(liminf_experiment(f, u, SequenceSpec::mollified, 10, opt));
  rep.liminf.push_back(liminf_experiment(f, u, SequenceSpec::perturbed, 10, opt));
  double s_max = s_list.empty() ? kSMax : s_list.back();
  double j_limit = rep.liminf.front().limit_value;
  double j_s = fractional_energy(f, u, s_max, opt).value;
  rep.limsup_ratio = std::abs(j_s - j_limit) / std::max(j_limit, 1e-30);
  rep.limsup_pass = j_limit == 0 ? j_s == 0 : rep.limsup_ratio < kSweepFinalRelError;
  rep.overall_pass = rep.limsup_pass;
  for (const LiminfResult& l : rep.liminf) rep.overall_pass = rep.overall_pass && l.pass;
  return rep;
}

double error_bound_margin(const YoungFunction& f, const TestFunction& u, double s,
                          const Point& x, const Point& y, double c_scale) {
  Point d{x[0] - y[0], x[1] - y[1]};
  double r = vec_norm(d);
  if (!(r > 0)) throw std::invalid_argument("error_bound_margin: x and y must differ");
  double c2 = u.c2_norm();
  double two_r = 2.0 * u.support_radius;
  double c_est = c_scale * 10.0 * (1.0 + c2) *
                 f.density(2.0 * c2 * std::pow(two_r, 1.0 - s) + 1.0);
  double quotient = std::abs(u.eval(x) - u.eval(y)) / std::pow(r, s);
  Point g = u.gradient(x);
  double linearized = std::abs(g[0] * d[0] + g[1] * d[1]) / std::pow(r, s);
  double gap = std::abs(f.eval(quotient) - f.eval(linearized));
  return c_est * std::pow(r, 2.0 - s) - gap;
}

ErrorBoundSuite run_error_bound_check(const YoungFunction& f, const TestFunction& u, double s,
                                      const std::vector<std::pair<Point, Point>>& pairs) {
  ErrorBoundSuite suite;
  for (double c_scale : {1.0, 10.0}) {
    suite.min_margin = kPosInf;
    for (const auto& [x, y] : pairs)
      suite.min_margin = std::min(suite.min_margin, error_bound_margin(f, u, s, x, y, c_scale));
    if (suite.min_margin >= 0) {
      suite.bumped = c_scale > 1.0;
      suite.pass = true;
      return suite;
    }
  }
  suite.bumped = true;
  suite.pass = false;
  return suite;
}

MajorantResult majorant_check(const YoungFunction& f, const TestFunction& u, double s,
                              const Point& x, const EnergyOptions& opt) {
  MajorantResult res;
  const int n = u.n;
  const double R = u.support_radius;
  const double ax = vec_norm(x);
  const double n_omega = n * unit_ball_volume(n);
  res.far_branch = ax >= 2.0 * R;
  if (!res.far_branch) {
    res.bound = n_omega * f.eval(u.grad_sup_norm()) +
                (1.0 - s) / s * n_omega * f.eval(2.0 * u.sup_norm());
  } else {
    double pw = std::pow(2.0, s);
    double integral =
        modular(f, scale(u, pw), 1.0).value;  // ∫ A(2^s |u|) over the support
    res.bound = pw * std::pow(ax, -double(n) - 0.5) * integral;
  }
  res.pointwise = pointwise_energy_density(f, u, s, x, opt);
  res.margin = res.bound - res.pointwise;
  return res;
}

}  // namespace orlicz
