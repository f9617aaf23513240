#include "orlicz/test_functions.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace orlicz {

namespace {

struct Profile {
  // phi(rho) with phi(rho)=0 for rho >= 1, C^2 including at rho=0 and rho=1.
  double (*phi)(double);
  double (*dphi)(double);
  double (*ddphi)(double);
};

double bump_phi(double rho) {
  double w = 1.0 - rho * rho;
  return w > 0 ? std::exp(-1.0 / w) : 0.0;
}
double bump_dphi(double rho) {
  double w = 1.0 - rho * rho;
  if (w <= 0) return 0.0;
  return bump_phi(rho) * (-2.0 * rho / (w * w));
}
double bump_ddphi(double rho) {
  double w = 1.0 - rho * rho;
  if (w <= 0) return 0.0;
  double w2 = w * w;
  return bump_phi(rho) * (4.0 * rho * rho / (w2 * w2) - 2.0 / w2 - 8.0 * rho * rho / (w2 * w));
}

Profile bump_profile() { return {bump_phi, bump_dphi, bump_ddphi}; }

double smoothstep(double z) { return z * z * z * (10.0 + z * (-15.0 + 6.0 * z)); }
double dsmoothstep(double z) { return 30.0 * z * z * (1.0 - z) * (1.0 - z); }
double ddsmoothstep(double z) { return 60.0 * z * (1.0 - z) * (1.0 - 2.0 * z); }

double tent_phi(double rho) { return rho < 1.0 ? 1.0 - smoothstep(rho) : 0.0; }
double tent_dphi(double rho) { return rho < 1.0 ? -dsmoothstep(rho) : 0.0; }
double tent_ddphi(double rho) { return rho < 1.0 ? -ddsmoothstep(rho) : 0.0; }

Profile tent_profile() { return {tent_phi, tent_dphi, tent_ddphi}; }

double plateau_phi(double rho) {
  if (rho <= 0.5) return 1.0;
  if (rho >= 1.0) return 0.0;
  return 1.0 - smoothstep(2.0 * rho - 1.0);
}
double plateau_dphi(double rho) {
  if (rho <= 0.5 || rho >= 1.0) return 0.0;
  return -2.0 * dsmoothstep(2.0 * rho - 1.0);
}
double plateau_ddphi(double rho) {
  if (rho <= 0.5 || rho >= 1.0) return 0.0;
  return -4.0 * ddsmoothstep(2.0 * rho - 1.0);
}

Profile plateau_profile() { return {plateau_phi, plateau_dphi, plateau_ddphi}; }

double norm2(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); }

TestFunction radial_function(int n, const std::string& label, double radius, double amp,
                             Profile pr) {
  if (n != 1 && n != 2) throw std::invalid_argument("test function dimension must be 1 or 2");
  if (!(radius > 0)) throw std::invalid_argument("test function radius must be positive");
  TestFunction u;
  u.n = n;
  u.label = label;
  u.support_radius = radius;
  u.radial = true;
  u.eval = [=](const Point& x) {
    double r = n == 1 ? std::abs(x[0]) : norm2(x);
    return amp * pr.phi(r / radius);
  };
  u.gradient = [=](const Point& x) {
    double r = n == 1 ? std::abs(x[0]) : norm2(x);
    if (r < 1e-13 * radius) return Point{0.0, 0.0};
    double g = amp * pr.dphi(r / radius) / radius;
    if (n == 1) return Point{g * (x[0] < 0 ? -1.0 : 1.0), 0.0};
    return Point{g * x[0] / r, g * x[1] / r};
  };
  u.hessian = [=](const Point& x) {
    double r = n == 1 ? std::abs(x[0]) : norm2(x);
    double rho = r / radius;
    if (r < 1e-9 * radius) {
      double d = amp * pr.ddphi(0.0) / (radius * radius);
      return Hessian{d, 0.0, n == 2 ? d : 0.0};
    }
    double dd = amp * pr.ddphi(rho) / (radius * radius);
    if (n == 1) return Hessian{dd, 0.0, 0.0};
    double d1 = amp * pr.dphi(rho) / radius;
    double e0 = x[0] / r, e1 = x[1] / r;
    double radial_term = dd - d1 / r;
    return Hessian{radial_term * e0 * e0 + d1 / r, radial_term * e0 * e1,
                   radial_term * e1 * e1 + d1 / r};
  };
  return u;
}

}  // namespace

struct TestFunction::Cache {
  std::once_flag flag;
  double c2 = 0, sup = 0, grad_sup = 0;
};

TestFunction::TestFunction() : cache_(std::make_shared<Cache>()) {}

namespace {

Hessian fd_hessian(const TestFunction& u, const Point& x, double h = 1e-4) {
  auto gx = [&](const Point& p) { return u.gradient(p); };
  Point xp{x[0] + h, x[1]}, xm{x[0] - h, x[1]};
  Point gxp = gx(xp), gxm = gx(xm);
  double uxx = (gxp[0] - gxm[0]) / (2 * h);
  if (u.n == 1) return Hessian{uxx, 0.0, 0.0};
  Point yp{x[0], x[1] + h}, ym{x[0], x[1] - h};
  Point gyp = gx(yp), gym = gx(ym);
  return Hessian{uxx, (gyp[0] - gym[0]) / (2 * h), (gyp[1] - gym[1]) / (2 * h)};
}

void scan_norms(const TestFunction& u, double& sup, double& grad_sup, double& hess_sup) {
  const double h = 1e-2;
  const double R = u.support_radius;
  sup = grad_sup = hess_sup = 0;
  auto visit = [&](const Point& x) {
    sup = std::max(sup, std::abs(u.eval(x)));
    Point g = u.gradient(x);
    grad_sup = std::max(grad_sup, std::sqrt(g[0] * g[0] + g[1] * g[1]));
    Hessian H = u.hessian ? u.hessian(x) : fd_hessian(u, x);
    hess_sup = std::max({hess_sup, std::abs(H[0]), std::abs(H[1]), std::abs(H[2])});
  };
  if (u.n == 1) {
    for (double x = -R; x <= R + h / 2; x += h) visit(Point{x, 0.0});
  } else if (u.radial) {
    // For u(x)=g(|x|) the second partials at any point are combinations of
    // g'' and g'/r; scanning one ray plus the worst 45-degree cross term
    // covers the plane.
    for (double r = 0; r <= R + h / 2; r += h) {
      Point x{r, 0.0};
      sup = std::max(sup, std::abs(u.eval(x)));
      Point g = u.gradient(x);
      grad_sup = std::max(grad_sup, std::sqrt(g[0] * g[0] + g[1] * g[1]));
      Hessian H = u.hessian ? u.hessian(x) : fd_hessian(u, x);
      double gpp = H[0];                      // g''(r)
      double gor = r > 1e-9 ? H[2] : H[0];    // g'(r)/r
      double cross = 0.5 * std::abs(gpp - gor);
      hess_sup = std::max({hess_sup, std::abs(gpp), std::abs(gor), cross});
    }
  } else {
    for (double x = -R; x <= R + h / 2; x += h)
      for (double y = -R; y <= R + h / 2; y += h) visit(Point{x, y});
  }
}

}  // namespace

double TestFunction::c2_norm() const {
  std::call_once(cache_->flag, [&] {
    scan_norms(*this, cache_->sup, cache_->grad_sup, cache_->c2);
    cache_->c2 = std::max({cache_->c2, cache_->sup, cache_->grad_sup});
  });
  return cache_->c2;
}

double TestFunction::sup_norm() const {
  c2_norm();
  return cache_->sup;
}

double TestFunction::grad_sup_norm() const {
  c2_norm();
  return cache_->grad_sup;
}

TestFunction make_bump(int n, double radius, double amplitude) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), amplitude == 1.0 ? "bump:%g" : "bump:%g:%g", radius,
                amplitude);
  return radial_function(n, buf, radius, amplitude, bump_profile());
}

TestFunction make_plateau(int n, double radius, double amplitude) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), amplitude == 1.0 ? "plateau:%g" : "plateau:%g:%g", radius,
                amplitude);
  return radial_function(n, buf, radius, amplitude, plateau_profile());
}

TestFunction make_tent(int n, double radius, double amplitude) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), amplitude == 1.0 ? "tent:%g" : "tent:%g:%g", radius,
                amplitude);
  return radial_function(n, buf, radius, amplitude, tent_profile());
}

TestFunction test_function_from_label(const std::string& label, int n) {
  auto c1 = label.find(':');
  if (c1 == std::string::npos)
    throw std::invalid_argument("test function label needs a radius: " + label);
  std::string stem = label.substr(0, c1);
  auto c2 = label.find(':', c1 + 1);
  double radius = 0, amp = 1.0;
  try {
    radius = std::stod(label.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                    : c2 - c1 - 1));
    if (c2 != std::string::npos) amp = std::stod(label.substr(c2 + 1));
  } catch (...) {
    throw std::invalid_argument("bad parameter in test function label: " + label);
  }
  if (stem == "bump") return make_bump(n, radius, amp);
  if (stem == "plateau") return make_plateau(n, radius, amp);
  if (stem == "tent") return make_tent(n, radius, amp);
  throw std::invalid_argument("unknown test function label: " + label);
}

std::vector<std::string> test_function_catalog_labels() {
  return {"bump:<R>[:<amp>]", "plateau:<R>[:<amp>]", "tent:<R>[:<amp>]"};
}

TestFunction scale(const TestFunction& u, double factor) {
  TestFunction v;
  v.n = u.n;
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%g*(%s)", factor, u.label.c_str());
  v.label = buf;
  v.support_radius = u.support_radius;
  v.radial = u.radial;
  v.eval = [=, e = u.eval](const Point& x) { return factor * e(x); };
  v.gradient = [=, g = u.gradient](const Point& x) {
    Point p = g(x);
    return Point{factor * p[0], factor * p[1]};
  };
  if (u.hessian)
    v.hessian = [=, h = u.hessian](const Point& x) {
      Hessian H = h(x);
      return Hessian{factor * H[0], factor * H[1], factor * H[2]};
    };
  return v;
}

TestFunction sum(const TestFunction& u, const TestFunction& v) {
  if (u.n != v.n) throw std::invalid_argument("sum: dimension mismatch");
  TestFunction w;
  w.n = u.n;
  w.label = "(" + u.label + ")+(" + v.label + ")";
  w.support_radius = std::max(u.support_radius, v.support_radius);
  w.radial = u.radial && v.radial;
  w.eval = [eu = u.eval, ev = v.eval](const Point& x) { return eu(x) + ev(x); };
  w.gradient = [gu = u.gradient, gv = v.gradient](const Point& x) {
    Point a = gu(x), b = gv(x);
    return Point{a[0] + b[0], a[1] + b[1]};
  };
  if (u.hessian && v.hessian)
    w.hessian = [hu = u.hessian, hv = v.hessian](const Point& x) {
      Hessian A = hu(x), B = hv(x);
      return Hessian{A[0] + B[0], A[1] + B[1], A[2] + B[2]};
    };
  return w;
}

Mollifier::Mollifier(int n, double eps) : n(n), eps(eps) {
  if (n != 1 && n != 2) throw std::invalid_argument("mollifier dimension must be 1 or 2");
  if (!(eps > 0)) throw std::invalid_argument("mollifier eps must be positive");
  auto mass = [](int dim) {
    if (dim == 1)
      return integrate_adaptive([](double x) { return bump_phi(std::abs(x)); }, -1.0, 1.0,
                                1e-12)
          .value;
    return 2.0 * M_PI *
           integrate_adaptive([](double r) { return bump_phi(r) * r; }, 0.0, 1.0, 1e-12).value;
  };
  static const double c1 = 1.0 / mass(1);
  static const double c2 = 1.0 / mass(2);
  c_n_ = n == 1 ? c1 : c2;
}

double Mollifier::rho(const Point& x) const {
  double r = n == 1 ? std::abs(x[0]) : norm2(x);
  return c_n_ * std::pow(eps, -n) * bump_phi(r / eps);
}

Point Mollifier::grad_rho(const Point& x) const {
  double r = n == 1 ? std::abs(x[0]) : norm2(x);
  if (r < 1e-13 * eps) return Point{0.0, 0.0};
  double g = c_n_ * std::pow(eps, -n) * bump_dphi(r / eps) / eps;
  if (n == 1) return Point{g * (x[0] < 0 ? -1.0 : 1.0), 0.0};
  return Point{g * x[0] / r, g * x[1] / r};
}

Hessian Mollifier::hess_rho(const Point& x) const {
  double r = n == 1 ? std::abs(x[0]) : norm2(x);
  double scale = c_n_ * std::pow(eps, -n);
  double rho_ = r / eps;
  if (r < 1e-9 * eps) {
    double d = scale * bump_ddphi(0.0) / (eps * eps);
    return Hessian{d, 0.0, n == 2 ? d : 0.0};
  }
  double dd = scale * bump_ddphi(rho_) / (eps * eps);
  if (n == 1) return Hessian{dd, 0.0, 0.0};
  double d1 = scale * bump_dphi(rho_) / eps;
  double e0 = x[0] / r, e1 = x[1] / r;
  double radial_term = dd - d1 / r;
  return Hessian{radial_term * e0 * e0 + d1 / r, radial_term * e0 * e1,
                 radial_term * e1 * e1 + d1 / r};
}

}  // namespace orlicz
