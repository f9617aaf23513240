#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "orlicz/quadrature.hpp"

namespace orlicz {

/// Hessian entries (uxx, uxy, uyy); for n=1 only the first entry is used.
using Hessian = std::array<double, 3>;

/// A compactly supported C^2 function on R^n, n in {1,2}, with exact
/// gradient. u(x)=0 for |x| >= support_radius. Instances are immutable;
/// the sup-norm caches are computed once on first use (grid spacing 1e-2).
struct TestFunction {
  int n = 1;
  std::string label;
  double support_radius = 1.0;
  bool radial = true;  // permits 1-D outer reductions in the energy kernels
  std::function<double(const Point&)> eval;
  std::function<Point(const Point&)> gradient;
  std::function<Hessian(const Point&)> hessian;  // may be empty (finite differences then)

  double c2_norm() const;        // max over |alpha|<=2 of grid sup norms
  double sup_norm() const;       // sup |u|
  double grad_sup_norm() const;  // sup |grad u|

  TestFunction();

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Catalog. Labels (shared with the CLI): bump:R[:amp], plateau:R[:amp],
// tent:R[:amp]; amp defaults to 1.
TestFunction make_bump(int n, double radius, double amplitude = 1.0);
TestFunction make_plateau(int n, double radius, double amplitude = 1.0);
TestFunction make_tent(int n, double radius, double amplitude = 1.0);

TestFunction test_function_from_label(const std::string& label, int n);
std::vector<std::string> test_function_catalog_labels();

TestFunction scale(const TestFunction& u, double factor);
TestFunction sum(const TestFunction& u, const TestFunction& v);

/// The standard unit-mass mollifier: c_n exp(-1/(1-|x|^2)) on |x|<1 scaled
/// to support radius eps. The normalization constant is computed once per
/// dimension by quadrature to 1e-10.
struct Mollifier {
  int n = 1;
  double eps = 1.0;

  Mollifier(int n, double eps);

  double rho(const Point& x) const;
  Point grad_rho(const Point& x) const;
  Hessian hess_rho(const Point& x) const;

  double normalization() const { return c_n_; }

 private:
  double c_n_ = 0;
};

}  // namespace orlicz
