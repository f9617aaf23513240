#pragma once

#include <vector>

#include "orlicz/quadrature.hpp"
#include "orlicz/test_functions.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct ModularResult {
  double value = 0;
  bool divergent = false;  // an integrand sample saturated past 1e300
};

/// ∫ A(|u|/k) over the support of u.
ModularResult modular(const YoungFunction& f, const TestFunction& u, double k,
                      double tol = 1e-11);

/// inf{k>0 : modular(f,u,k) <= 1}, by doubling/halving bracket plus bisection
/// on the strictly decreasing map k -> modular. Returns 0 for u == 0.
double luxemburg_norm(const YoungFunction& f, const TestFunction& u);

/// Convolution u * rho_eps evaluated by quadrature; gradient comes from
/// convolving with grad(rho_eps). Support radius grows by eps.
TestFunction mollify(const TestFunction& u, double eps);

struct C2BoundResult {
  double lhs = 0;    // C2 norm of u * rho_eps
  double rhs = 0;    // C_rho * luxemburg_norm(f, u)
  double c_rho = 0;  // max over |alpha|<=2 of ||d^alpha rho_eps||_{conj(f)}
};

C2BoundResult c2_convolution_bound(const TestFunction& u, const Mollifier& rho,
                                   const YoungFunction& f);

enum class MembershipVerdict { e_a_consistent, inconclusive };

/// Finite modular at every scaling k in k_list. Heuristic by construction:
/// a finite probe cannot certify membership, only fail to refute it.
MembershipVerdict membership_probe(const YoungFunction& f, const TestFunction& u,
                                   const std::vector<double>& k_list);

std::vector<double> default_membership_scalings();

}  // namespace orlicz
