#pragma once

// Schur algorithm on the grid, the psi-chain of outer companions, and the
// transfer-matrix polynomials P_n^j, Q_n^j with their ratio E_n^j = P/Q.

#include <optional>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/polynomial.hpp"

namespace cmvscat {

/// Verblunsky coefficients alpha_0..alpha_{N-1} (zero beyond) and the
/// unimodular anchor alpha_{-1}.
struct VerblunskyData {
  cplx alpha_minus_one{-1.0, 0.0};
  std::vector<cplx> alphas;

  /// Throws invalid_input on |alpha_{-1}| != 1 or |alpha_k| >= 1.
  void validate() const;

  std::size_t support() const { return alphas.size(); }
  cplx alpha(std::size_t k) const { return k < alphas.size() ? alphas[k] : cplx(0.0); }
  /// Geronimus parameter a_k = f_k(0) = -alpha_{-1} alpha_k.
  cplx schur_parameter(std::size_t k) const { return -alpha_minus_one * alpha(k); }
  double rho(std::size_t k) const;
};

/// Levels n = 0..depth of the Schur algorithm: f_n, phi_n = z f_n and, once
/// psi_chain has run, the outer companions psi_n with |phi_n|^2 + |psi_n|^2 = 1.
struct SchurChain {
  std::vector<cplx> parameters;  // a_n = f_n(0), n < depth
  std::vector<GridFunction> f;
  std::vector<GridFunction> phi;
  std::vector<GridFunction> psi;
  std::vector<double> psi_at_zero;
  /// Max pointwise gap between the recursion route for psi and independent
  /// outer-function reconstruction; negative when the cross-check was skipped.
  double psi_route_gap = -1.0;

  std::size_t depth() const { return f.empty() ? 0 : f.size() - 1; }
  std::size_t grid_size() const { return f.empty() ? 0 : f.front().size(); }
  bool has_psi() const { return !psi.empty(); }
};

struct SchurForward {
  VerblunskyData data;
  SchurChain chain;
  /// Level at which |a_n| reached 1 - 1e-10; the recursion stops there.
  std::optional<std::size_t> degenerate_at;
};

/// Runs the Schur algorithm on samples of phi for `depth` steps.
SchurForward schur_forward(const GridFunction& phi, std::size_t depth, cplx alpha_minus_one);

/// phi = z f_0 built by the downward recursion f_n = (a_n + z f_{n+1}) / (1 + conj(a_n) z f_{n+1})
/// from f_N = 0, evaluated pointwise on the grid.
GridFunction schur_inverse(const VerblunskyData& v, std::size_t grid_size = kDefaultGrid);

/// phi(z) for |z| <= 1 by the same downward recursion.
cplx schur_function_at(const VerblunskyData& v, cplx z);

/// Full chain (levels 0..depth, psi included) for finitely supported data;
/// every level is evaluated in closed form rather than by forward iteration.
SchurChain chain_from_data(const VerblunskyData& v, std::size_t depth,
                           std::size_t grid_size = kDefaultGrid);

/// Fills psi_n.  With data supported inside the chain the recursion
/// psi_k = psi_{k+1} (1 - conj(a_k) f_k) / rho_k runs down from psi_N = 1;
/// otherwise it runs up from the outer function of 1 - |phi_0|^2.
SchurChain psi_chain(SchurChain chain, const VerblunskyData& v);

/// s_k = -(psi_k / conj(psi_k)) conj(phi_k).
GridFunction chain_symbol(const SchurChain& chain, std::size_t k);

struct TransferChain {
  std::size_t j = 0;
  std::size_t n = 0;
  Poly P;  // P_n^j
  Poly Q;  // Q_n^j
  GridFunction E;  // P/Q on the grid
};

/// Matrix product route: [P; Q] = prod_{k=n-1..j} ([z, conj a_k; a_k z, 1] / rho_k) [0; 1].
TransferChain transfer_chain(const VerblunskyData& v, std::size_t j, std::size_t n,
                             std::size_t grid_size = kDefaultGrid);

/// E_n^j by the scalar recursion E_{k+1} = (t E_k + conj a_k) / (1 + a_k t E_k), E_j = 0.
GridFunction transfer_ratio_recursive(const VerblunskyData& v, std::size_t j, std::size_t n,
                                      std::size_t grid_size = kDefaultGrid);

/// Coefficientwise max of P_n^0 Q_n^j - Q_n^0 P_n^j - z^{n-j} P_j^0.
double determinant_identity_residual(const VerblunskyData& v, std::size_t j, std::size_t n);

/// Max modulus of the Taylor coefficients 0..n-j-1 of E_n^0 - E_n^j.
double vanishing_order_residual(const VerblunskyData& v, std::size_t j, std::size_t n,
                                std::size_t grid_size = kDefaultGrid);

struct PolynomialIdentityResidual {
  double pointwise = 0.0;  // |psi_n / (psi_j (1 + E_n^j phi_n)) - Q_n^j| on the grid
  double leakage = 0.0;    // coefficients at indices >= max(n-j, 1) or < 0
};

PolynomialIdentityResidual polynomial_identity_residual(const SchurChain& chain,
                                                        const VerblunskyData& v, std::size_t j,
                                                        std::size_t n);

/// L2 norm of the negative Fourier part of s_j t^{n-j} - s_n.
double hinf_membership_residual(const SchurChain& chain, std::size_t j, std::size_t n);

}  // namespace cmvscat
