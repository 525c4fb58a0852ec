#pragma once

// CMV matrix, Caratheodory function, spectral density, orthonormal
// polynomials and the generalized eigenvectors Psi with Psi A = t Psi.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cmvscat/circle.hpp"
#include "cmvscat/polynomial.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

/// Finite section of A = A_od A_e.  The 2x2 blocks carry the Geronimus
/// parameters a_k = -alpha_{-1} alpha_k:
///   A_k = [conj a_k, rho_k; rho_k, -a_k],
/// the corner of A_od is -alpha_{-1}, and the last odd block is cut to the
/// unimodular entry 1 so the truncation stays unitary.  For alpha_{-1} = -1
/// the blocks reduce to [conj alpha_k, rho_k; rho_k, -alpha_k].
struct CmvMatrix {
  Eigen::MatrixXcd matrix;
  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// m must be even and >= 4.
CmvMatrix build_cmv(const VerblunskyData& v, std::size_t m);

/// max |(A* A - I)_{jk}| over j, k < m - 3.
double interior_unitarity_residual(const CmvMatrix& a);

/// Residuals of the three cyclicity relations, each maximized over the
/// interior indices (the vectors involved stay clear of the cut).
struct CyclicityResidual {
  double forward = 0.0;   // A (e_{2n} rho_{2n} - e_{2n+1} conj a_{2n}) = e_{2n+1} conj a_{2n+1} + e_{2n+2} rho_{2n+1}
  double backward = 0.0;  // A^{-1} (e_{2n+1} rho_{2n+1} - e_{2n+2} a_{2n+1}) = e_{2n+2} a_{2n+2} + e_{2n+3} rho_{2n+2}
  double initial = 0.0;   // A^{-1} e_0 = -conj(alpha_{-1}) (a_0 e_0 + rho_0 e_1)
  double max() const;
};

CyclicityResidual cyclicity_residual(const CmvMatrix& a, const VerblunskyData& v);

/// R(z) = (1 - conj(alpha_{-1}) phi(z)) / (1 + conj(alpha_{-1}) phi(z)).
std::vector<cplx> caratheodory(const VerblunskyData& v, std::span<const cplx> points);

/// Resolvent route <(A+z)(A-z)^{-1} e_0, e_0> on an m x m section.  m = 0
/// selects resolvent_truncation(v).  Points must satisfy |z| <= 0.9.
std::vector<cplx> caratheodory_resolvent(const VerblunskyData& v, std::span<const cplx> points,
                                         std::size_t m = 0);

/// Section size for the resolvent route: max(4 N + 64, 192).  The cut-off
/// error is about 2 |z|^m, so 192 keeps it near 1e-9 at |z| = 0.9.
std::size_t resolvent_truncation(const VerblunskyData& v);

/// w = (1 - |phi|^2) / |1 + conj(alpha_{-1}) phi|^2 on the grid.
GridFunction spectral_density(const VerblunskyData& v, std::size_t grid_size = kDefaultGrid);

/// Orthonormal polynomials p_0..p_{n_max} of the spectral measure via the
/// Szego recursion Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k^*.
std::vector<Poly> opuc_polynomials(const VerblunskyData& v, std::size_t n_max);

/// G_{jk} = mean(p_j conj(p_k) w).
Eigen::MatrixXcd opuc_gram(const std::vector<Poly>& p, const GridFunction& w);

/// Verblunsky coefficients alpha_0..alpha_{count-1} of the measure w dm,
/// read from its Fourier coefficients by the Levinson form of the Szego
/// recursion.  Stops early (shorter result) if |alpha| reaches 1.
std::vector<cplx> verblunsky_from_weight(const FourierSeries& what, std::size_t count);

/// Even and odd components of the generalized eigenvector at level n:
///   Psi_{2n}   = conj(D) t^{-n} p_{2n},
///   Psi_{2n+1} = -alpha_{-1} conj(D) t^n conj(p_{2n+1}),
/// with residuals against t^n and conj(s) t^{-n-1} in the grid L2 norm.
struct EigenRow {
  std::size_t n = 0;
  GridFunction even;
  GridFunction odd;
  double r_even = 0.0;
  double r_odd = 0.0;
};

std::vector<EigenRow> generalized_eigenrows(const VerblunskyData& v, std::size_t n_max,
                                            std::size_t grid_size = kDefaultGrid);

/// max |(Psi A - t Psi)_k| over columns k < columns and the given grid
/// indices, using rows 0..columns+3 of Psi built as in generalized_eigenrows.
double eigen_equation_residual(const VerblunskyData& v, std::size_t columns,
                               std::span<const std::size_t> grid_indices,
                               std::size_t grid_size = kDefaultGrid);

}  // namespace cmvscat
