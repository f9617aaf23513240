#include "orlicz/young.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace orlicz {

namespace {

double guard_nonneg(double t) {
  if (t < 0) {
    if (t > -1e-12) return 0.0;
    throw std::invalid_argument("Young function argument must be nonnegative");
  }
  return t;
}

std::string format_param_label(const char* stem, double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s:%g", stem, p);
  return buf;
}

// exp(x) - 1 - x, stable for small x.
double expm1_minus_x(double x) {
  if (x < 1e-3) {
    return 0.5 * x * x *
           (1.0 + x / 3.0 + x * x / 12.0 + x * x * x / 60.0 + x * x * x * x / 360.0);
  }
  return std::expm1(x) - x;
}

double log_expm1(double x) {
  if (x > 700.0) return x;
  if (x < 1e-8) return std::log(x) + std::log1p(0.5 * x);
  return std::log(std::expm1(x));
}

// (1+t)log(1+t) - t via its alternating series for small t.
double llogl_eval(double t) {
  if (t < 0.5) {
    double sum = 0.0, term = 0.0;
    for (int k = 1; k < 64; ++k) {
      term = std::pow(-t, k - 1) * t * t / (double(k) * double(k + 1));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (1.0 + t) * std::log1p(t) - t;
}

}  // namespace

YoungFunction make_power(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("power:p requires p > 1");
  YoungFunction f;
  f.label = format_param_label("power", p);
  f.eval = [p](double t) { t = guard_nonneg(t); return std::pow(t, p) / p; };
  f.density = [p](double t) { t = guard_nonneg(t); return t > 0 ? std::pow(t, p - 1.0) : 0.0; };
  f.log_eval = [p](double t) { t = guard_nonneg(t); return t > 0 ? p * std::log(t) - std::log(p) : -kPosInf; };
  f.log_density = [p](double t) { t = guard_nonneg(t); return t > 0 ? (p - 1.0) * std::log(t) : -kPosInf; };
  return f;
}

YoungFunction make_power_raw(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("powerraw:p requires p > 1");
  YoungFunction f;
  f.label = format_param_label("powerraw", p);
  f.eval = [p](double t) { t = guard_nonneg(t); return std::pow(t, p); };
  f.density = [p](double t) { t = guard_nonneg(t); return t > 0 ? p * std::pow(t, p - 1.0) : 0.0; };
  f.log_eval = [p](double t) { t = guard_nonneg(t); return t > 0 ? p * std::log(t) : -kPosInf; };
  f.log_density = [p](double t) {
    t = guard_nonneg(t);
    return t > 0 ? std::log(p) + (p - 1.0) * std::log(t) : -kPosInf;
  };
  return f;
}

YoungFunction make_power_log(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("powerlog:p requires p >= 1");
  YoungFunction f;
  f.label = format_param_label("powerlog", p);
  f.eval = [p](double t) { t = guard_nonneg(t); return std::pow(t, p) * std::log1p(t); };
  f.density = [p](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    return p * std::pow(t, p - 1.0) * std::log1p(t) + std::pow(t, p) / (1.0 + t);
  };
  f.log_eval = [p](double t) {
    t = guard_nonneg(t);
    return t > 0 ? p * std::log(t) + std::log(std::log1p(t)) : -kPosInf;
  };
  f.log_density = [p](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    return (p - 1.0) * std::log(t) + std::log(p * std::log1p(t) + t / (1.0 + t));
  };
  return f;
}

YoungFunction make_llogl() {
  YoungFunction f;
  f.label = "llogl";
  f.eval = [](double t) { t = guard_nonneg(t); return llogl_eval(t); };
  f.density = [](double t) { t = guard_nonneg(t); return std::log1p(t); };
  f.log_eval = [](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    if (t < 1e-150) return 2.0 * std::log(t) - std::log(2.0);
    return std::log(llogl_eval(t));
  };
  f.log_density = [](double t) {
    t = guard_nonneg(t);
    return t > 0 ? std::log(std::log1p(t)) : -kPosInf;
  };
  return f;
}

YoungFunction make_exp_power(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("exppower:q requires q >= 1");
  YoungFunction f;
  f.label = format_param_label("exppower", q);
  f.eval = [q](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    double x = std::pow(t, q);
    if (x > 709.0) return kPosInf;
    return expm1_minus_x(x);
  };
  f.density = [q](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    double x = std::pow(t, q);
    if (x > 709.0) return kPosInf;
    return q * std::pow(t, q - 1.0) * std::expm1(x);
  };
  f.log_eval = [q](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    double x = std::pow(t, q);
    if (x > 700.0) return x + std::log1p(-(1.0 + x) * std::exp(-x));
    if (x < 1e-3)
      return 2.0 * q * std::log(t) - std::log(2.0) +
             std::log1p(x / 3.0 + x * x / 12.0 + x * x * x / 60.0);
    return std::log(expm1_minus_x(x));
  };
  f.log_density = [q](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    double x = std::pow(t, q);
    return std::log(q) + (q - 1.0) * std::log(t) + log_expm1(x);
  };
  return f;
}

YoungFunction make_flat_zero() {
  // exp(-1/t) on (0, t0]; beyond t0 the tangent-matched convex continuation
  // A(t0) + a(t0)(t-t0) + c(t-t0)^2 with c = a'(t0)/2, which keeps the
  // density continuous, C^1 and nondecreasing (t0 < 1/2 is required for
  // monotonicity of exp(-1/t)/t^2, hence t0 = 1/4).
  constexpr double t0 = 0.25;
  const double a0 = std::exp(-4.0);  // A(t0)
  const double slope = 16.0 * a0;    // a(t0)
  const double c = 64.0 * a0;        // a'(t0)/2
  YoungFunction f;
  f.label = "flatzero";
  f.eval = [=](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    if (t <= t0) return std::exp(-1.0 / t);
    double d = t - t0;
    return a0 + slope * d + c * d * d;
  };
  f.density = [=](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    if (t <= t0) return std::exp(-1.0 / t) / (t * t);
    return slope + 2.0 * c * (t - t0);
  };
  f.log_eval = [=](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    if (t <= t0) return -1.0 / t;
    double d = t - t0;
    return std::log(a0 + slope * d + c * d * d);
  };
  f.log_density = [=](double t) {
    t = guard_nonneg(t);
    if (t == 0) return -kPosInf;
    if (t <= t0) return -1.0 / t - 2.0 * std::log(t);
    return std::log(slope + 2.0 * c * (t - t0));
  };
  // The continuation must keep the density nondecreasing.
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double t = 1e-6 * std::pow(10.0, 7.0 * i / 400.0);
    double a = f.density(t);
    if (a + 1e-15 * (1.0 + a) < prev)
      throw std::logic_error("flatzero continuation broke density monotonicity");
    prev = a;
  }
  return f;
}

YoungFunction young_from_label(const std::string& label) {
  auto colon = label.find(':');
  std::string stem = label.substr(0, colon);
  double param = 0;
  bool has_param = colon != std::string::npos;
  if (has_param) {
    try {
      size_t used = 0;
      param = std::stod(label.substr(colon + 1), &used);
      if (used != label.size() - colon - 1) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("bad parameter in young function label: " + label);
    }
  }
  if (stem == "power" && has_param) return make_power(param);
  if (stem == "powerraw" && has_param) return make_power_raw(param);
  if (stem == "powerlog" && has_param) return make_power_log(param);
  if (stem == "exppower" && has_param) return make_exp_power(param);
  if (stem == "llogl" && !has_param) return make_llogl();
  if (stem == "flatzero" && !has_param) return make_flat_zero();
  throw std::invalid_argument("unknown young function label: " + label);
}

std::vector<std::string> young_catalog_labels() {
  return {"power:<p>", "powerraw:<p>", "powerlog:<p>", "llogl", "exppower:<q>", "flatzero"};
}

namespace {

// Solve a(tau) = t. Returns +inf when the bracket cannot be closed inside
// the representable range (A effectively linear at this scale).
double conj_argmax(const YoungFunction& f, double t) {
  if (t <= 0) return 0.0;
  double lo, hi = 1.0;
  if (f.density(hi) >= t) {
    lo = hi;
    while (f.density(lo) >= t) {
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
    hi = 2.0 * lo;
  } else {
    while (f.density(hi) < t) {
      hi *= 2.0;
      if (hi > 1e306) return kPosInf;
    }
    lo = 0.5 * hi;
  }
  for (int i = 0; i < 300 && (hi - lo) > 1e-10 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f.density(mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

YoungFunction conjugate(const YoungFunction& f) {
  auto base = std::make_shared<const YoungFunction>(f);
  YoungFunction c;
  c.label = "conj(" + f.label + ")";
  c.eval = [base](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    double tau = conj_argmax(*base, t);
    if (!std::isfinite(tau)) return kPosInf;
    double v = tau * t - base->eval(tau);
    return v > 0 ? v : 0.0;
  };
  c.density = [base](double t) {
    t = guard_nonneg(t);
    if (t == 0) return 0.0;
    return conj_argmax(*base, t);
  };
  c.log_eval = [eval = c.eval](double t) {
    double v = eval(t);
    return v > 0 ? std::log(v) : -kPosInf;
  };
  c.log_density = [density = c.density](double t) {
    double v = density(t);
    return v > 0 ? std::log(v) : -kPosInf;
  };
  return c;
}

double young_inequality_margin(const YoungFunction& f, double tau, double t) {
  tau = guard_nonneg(tau);
  t = guard_nonneg(t);
  return conjugate(f).eval(tau) + f.eval(t) - tau * t;
}

Delta2Report delta2_ratio(const YoungFunction& f, Delta2Regime regime) {
  const double t_lo = 1e-8;
  const double t_hi = regime == Delta2Regime::global ? 1e8 : 1e-1;
  const int per_decade = 16;
  const int decades = int(std::round(std::log10(t_hi / t_lo)));
  const int npts = decades * per_decade + 1;

  Delta2Report report;
  report.regime = regime;
  {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "geometric[%g,%g] %d pts/decade", t_lo, t_hi, per_decade);
    report.grid = buf;
  }
  double best = -kPosInf;
  for (int i = 0; i < npts; ++i) {
    double t = t_lo * std::pow(t_hi / t_lo, double(i) / (npts - 1));
    double lr = f.log_eval(2.0 * t) - f.log_eval(t);
    if (!std::isfinite(lr)) continue;
    if (lr > std::log(kRatioCap)) {
      report.sup_ratio = kPosInf;
      report.argmax_t = t;
      return report;
    }
    if (lr > best) {
      best = lr;
      report.argmax_t = t;
    }
  }
  report.sup_ratio = std::exp(best);
  return report;
}

std::vector<double> default_matuszewska_deltas() {
  std::vector<double> d;
  for (int i = 0; i <= 24; ++i) d.push_back(1e-1 * std::pow(10.0, -6.0 * i / 24.0));
  return d;
}

MatuszewskaResult matuszewska(const YoungFunction& f, double t,
                              const std::vector<double>& deltas) {
  if (t < 0) throw std::invalid_argument("matuszewska: t must be nonnegative");
  if (deltas.empty() || deltas.back() > 1e-6)
    throw std::invalid_argument("matuszewska: deltas must decrease to <= 1e-6");
  for (size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1]) || !(deltas[i] > 0))
      throw std::invalid_argument("matuszewska: deltas must be strictly decreasing and positive");

  MatuszewskaResult res;
  double lr_max = -kPosInf;
  for (size_t i = deltas.size() / 2; i < deltas.size(); ++i) {
    double d = deltas[i];
    double la = f.log_eval(t * d);
    double lb = f.log_eval(d);
    if ((!std::isfinite(la) && la != -kPosInf) || (!std::isfinite(lb) && lb != -kPosInf) ||
        (la == -kPosInf && lb == -kPosInf)) {
      res.status = MatuszewskaStatus::underflow;
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "log A underflowed at delta=%g; use larger deltas or rescale",
                    d);
      res.diagnostic = buf;
      return res;
    }
    double lr = la - lb;
    if (lr > lr_max) lr_max = lr;
  }
  res.log_value = lr_max;
  if (lr_max > std::log(kClassifyInf)) {
    res.classification = GrowthClass::infinite;
    res.value = kPosInf;
  } else if (lr_max < std::log(kClassifyZero)) {
    res.classification = GrowthClass::zero;
    res.value = 0.0;
  } else {
    res.classification = GrowthClass::finite;
    res.value = std::exp(lr_max);
  }
  return res;
}

IndexBounds index_bounds(const YoungFunction& f) {
  const double t_lo = 1e-8, t_hi = 1e8;
  const int per_decade = 16;
  const int npts = 16 * per_decade + 1;

  IndexBounds b;
  b.p_minus = kPosInf;
  b.p_plus = -kPosInf;
  bool capped = false;
  for (int i = 0; i < npts; ++i) {
    double t = t_lo * std::pow(t_hi / t_lo, double(i) / (npts - 1));
    double lr = std::log(t) + f.log_density(t) - f.log_eval(t);
    if (!std::isfinite(lr)) continue;
    if (lr > std::log(kRatioCap)) {
      capped = true;
      b.argmax_t = t;
      continue;
    }
    double ratio = std::exp(lr);
    if (ratio < b.p_minus) {
      b.p_minus = ratio;
      b.argmin_t = t;
    }
    if (ratio > b.p_plus) {
      b.p_plus = ratio;
      b.argmax_t = t;
    }
  }
  if (capped) {
    b.p_plus = kPosInf;
    return b;
  }
  // Divergence toward a grid boundary: the sampled max sits at the edge and
  // keeps growing by >= 5x per decade into it, so the grid cannot witness a
  // finite sup. Reported as saturated +inf.
  auto decade_ratio = [&](int k) {
    double t = std::pow(10.0, k);
    return std::exp(std::log(t) + f.log_density(t) - f.log_eval(t));
  };
  if (b.argmax_t >= std::pow(10.0, 7.5)) {
    if (decade_ratio(8) >= 5 * decade_ratio(7) && decade_ratio(7) >= 5 * decade_ratio(6) &&
        decade_ratio(6) >= 5 * decade_ratio(5))
      b.p_plus = kPosInf;
  } else if (b.argmax_t <= std::pow(10.0, -7.5)) {
    if (decade_ratio(-8) >= 5 * decade_ratio(-7) && decade_ratio(-7) >= 5 * decade_ratio(-6) &&
        decade_ratio(-6) >= 5 * decade_ratio(-5))
      b.p_plus = kPosInf;
  }
  return b;
}

SandwichMargins sandwich_check(const YoungFunction& f, double t) {
  if (!(t > 0)) throw std::invalid_argument("sandwich_check: t must be positive");
  double ta = t * f.density(t);
  return {ta - f.eval(t), f.eval(2.0 * t) - ta};
}

}  // namespace orlicz
