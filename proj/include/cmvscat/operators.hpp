#pragma once

// Finite sections of the Hankel, Toeplitz and transformation operators and
// the identities tying them together.
//
// Index conventions (bases {t^k} of H^2 and {t^{-1-j}} of H^2_-):
//   hankel     (j, k) -> shat(-1 - j - k)
//   toeplitz   (j, k) -> ghat(j - k)
//   transform  (n, k) -> Fourier coefficient n - k of psi_n / (1 + E_n^0 phi_n)
//   inverse    (n, k) -> Fourier coefficient n - k of 1 / psi_k

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cmvscat/circle.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

enum class BlockKind { hankel, toeplitz, transform, transform_inverse };

struct OperatorBlock {
  BlockKind kind = BlockKind::hankel;
  Eigen::MatrixXcd matrix;
  std::string source;
  /// Transform blocks: largest |entry| above the diagonal before it was
  /// zeroed.  Zero for the other kinds.
  double upper_leakage = 0.0;
};

/// rows x m Hankel section; rows = 0 means square.  Needs coefficients down
/// to -(rows + m - 1).
OperatorBlock hankel_block(const FourierSeries& shat, std::size_t m, std::size_t rows = 0);
OperatorBlock toeplitz_block(const FourierSeries& ghat, std::size_t m);

/// Coefficients of conj(s): c_n -> conj(c_{-n}).
FourierSeries conjugate_symbol(const FourierSeries& shat);
/// Coefficients of t^k s.
FourierSeries shift_symbol(const FourierSeries& shat, int k);

OperatorBlock transformation_block(const VerblunskyData& v, std::size_t m,
                                   std::size_t grid_size = kDefaultGrid);
OperatorBlock transformation_inverse_block(const VerblunskyData& v, std::size_t m,
                                           std::size_t grid_size = kDefaultGrid);

/// Spectral norm of a dense block.
double operator_norm(const Eigen::MatrixXcd& a);
/// Singular values in decreasing order.
std::vector<double> singular_values(const Eigen::MatrixXcd& a);

/// (I - H*H)_m against (L*L)_m.  L uses m + N rows (rows past the support
/// are unit rows, so the column tails are exact); H uses 4m rows and the
/// omitted part is bounded by sum_{n > 4m} n |shat(-n)|^2.
struct GlmReport {
  double residual = 0.0;  // Frobenius norm of the difference
  Eigen::MatrixXcd hankel_side;
  Eigen::MatrixXcd transform_side;
  std::size_t transform_rows = 0;
  std::size_t hankel_rows = 0;
  double tail_bound = 0.0;
};

GlmReport glm_residual(const VerblunskyData& v, std::size_t m, std::size_t grid_size = kDefaultGrid);

/// det (I - H*H)_m by Cholesky against prod_{j<N} rho_j^{2(j+1)}, and the
/// trace of (H*H)_m against sum_{n>=1} n |shat(-n)|^2.
struct WidomReport {
  double determinant = 0.0;
  double product = 0.0;
  double gap = 0.0;
  double trace = 0.0;
  double trace_series = 0.0;
};

WidomReport widom_check(const VerblunskyData& v, std::size_t m, std::size_t grid_size = kDefaultGrid);

/// Gram matrix of the first m vectors of the basis f_n or e_n in the
/// two-component model space with weight [1, conj(s_0); s_0, 1].
enum class ModelBasis { f, e };

Eigen::MatrixXcd model_gram(const VerblunskyData& v, std::size_t m, ModelBasis basis,
                            std::size_t grid_size = kDefaultGrid);

/// Singular values of the m x m sections of H_s and H_{conj s}, and the
/// largest gap between their top `top` squared singular values.
struct HankelSpectrum {
  std::vector<double> symbol;
  std::vector<double> conjugate;
  double top_gap = 0.0;
};

HankelSpectrum hankel_spectrum(const FourierSeries& shat, std::size_t m, std::size_t top = 10);

}  // namespace cmvscat
