#include "cmvscat/operators.hpp"

#include <algorithm>
#include <cmath>

#include "cmvscat/error.hpp"
#include "cmvscat/scattering.hpp"

namespace cmvscat {

namespace {

using Mat = Eigen::MatrixXcd;

void require_range(const FourierSeries& c, int lo, int hi) {
  if (!c.contains(lo) || !c.contains(hi))
    fail(ErrorKind::invalid_input, "insufficient Fourier coefficient range for the block");
}

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

}  // namespace

OperatorBlock hankel_block(const FourierSeries& shat, std::size_t m, std::size_t rows) {
  if (rows == 0) rows = m;
  require_range(shat, -static_cast<int>(rows + m - 1), -1);
  OperatorBlock b;
  b.kind = BlockKind::hankel;
  b.source = "shat(-1-j-k)";
  b.matrix.resize(idx(rows), idx(m));
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < m; ++k) b.matrix(idx(j), idx(k)) = shat[-1 - static_cast<int>(j + k)];
  return b;
}

OperatorBlock toeplitz_block(const FourierSeries& ghat, std::size_t m) {
  const int span = static_cast<int>(m) - 1;
  require_range(ghat, -span, span);
  OperatorBlock b;
  b.kind = BlockKind::toeplitz;
  b.source = "ghat(j-k)";
  b.matrix.resize(idx(m), idx(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      b.matrix(idx(j), idx(k)) = ghat[static_cast<int>(j) - static_cast<int>(k)];
  return b;
}

FourierSeries conjugate_symbol(const FourierSeries& shat) {
  FourierSeries r(shat.grid_size());
  for (int n = r.min_index(); n <= r.max_index(); ++n) r.at(n) = std::conj(shat[-n]);
  return r;
}

FourierSeries shift_symbol(const FourierSeries& shat, int k) {
  FourierSeries r(shat.grid_size());
  for (int n = r.min_index(); n <= r.max_index(); ++n) r.at(n) = shat[n - k];
  return r;
}

OperatorBlock transformation_block(const VerblunskyData& v, std::size_t m, std::size_t grid_size) {
  const std::size_t levels = std::min(m, v.support());
  const SchurChain chain = chain_from_data(v, v.support(), grid_size);
  const GridFunction one = GridFunction::constant(grid_size, 1.0);
  OperatorBlock b;
  b.kind = BlockKind::transform;
  b.source = "(psi_n / (1 + E_n phi_n))_(n-k)";
  b.matrix = Mat::Identity(idx(m), idx(m));
  for (std::size_t n = 0; n < levels; ++n) {
    const GridFunction e = transfer_chain(v, 0, n, grid_size).E;
    const FourierSeries c = analyze(chain.psi[n] / (one + e * chain.phi[n]));
    for (std::size_t k = 0; k < m; ++k) {
      const cplx x = c[static_cast<int>(n) - static_cast<int>(k)];
      if (k > n) b.upper_leakage = std::max(b.upper_leakage, std::abs(x));
      b.matrix(idx(n), idx(k)) = k > n ? cplx(0.0) : x;
    }
  }
  return b;
}

OperatorBlock transformation_inverse_block(const VerblunskyData& v, std::size_t m,
                                           std::size_t grid_size) {
  const std::size_t levels = std::min(m, v.support());
  const SchurChain chain = chain_from_data(v, v.support(), grid_size);
  const GridFunction one = GridFunction::constant(grid_size, 1.0);
  OperatorBlock b;
  b.kind = BlockKind::transform_inverse;
  b.source = "(1 / psi_k)_(n-k)";
  b.matrix = Mat::Identity(idx(m), idx(m));
  for (std::size_t k = 0; k < levels; ++k) {
    if (!(chain.psi_at_zero[k] > 0.0)) fail(ErrorKind::degenerate, "psi_k(0) must be positive");
    const FourierSeries c = analyze(one / chain.psi[k]);
    for (std::size_t n = 0; n < m; ++n) {
      const cplx x = c[static_cast<int>(n) - static_cast<int>(k)];
      if (n < k) b.upper_leakage = std::max(b.upper_leakage, std::abs(x));
      b.matrix(idx(n), idx(k)) = n < k ? cplx(0.0) : x;
    }
  }
  return b;
}

std::vector<double> singular_values(const Mat& a) {
  const Eigen::BDCSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a).front();
}

namespace {

// (I - H*H)_m with 4m Hankel rows, plus the tail bound of the omitted rows.
struct HankelGram {
  Mat gram;
  std::size_t rows = 0;
  double tail = 0.0;
  FourierSeries shat;
};

HankelGram hankel_gram(const VerblunskyData& v, std::size_t m, std::size_t grid_size) {
  HankelGram h;
  h.shat = scattering_function(v, grid_size).shat;
  h.rows = 4 * m;
  const Mat hb = hankel_block(h.shat, m, h.rows).matrix;
  h.gram = Mat::Identity(idx(m), idx(m)) - hb.adjoint() * hb;
  for (int n = static_cast<int>(h.rows) + 1; h.shat.contains(-n); ++n)
    h.tail += n * std::norm(h.shat[-n]);
  return h;
}

}  // namespace

GlmReport glm_residual(const VerblunskyData& v, std::size_t m, std::size_t grid_size) {
  GlmReport r;
  const HankelGram h = hankel_gram(v, m, grid_size);
  r.hankel_rows = h.rows;
  r.tail_bound = h.tail;
  r.hankel_side = h.gram;
  r.transform_rows = m + v.support();
  const Mat l = transformation_block(v, r.transform_rows, grid_size).matrix.leftCols(idx(m));
  r.transform_side = l.adjoint() * l;
  r.residual = (r.hankel_side - r.transform_side).norm();
  return r;
}

WidomReport widom_check(const VerblunskyData& v, std::size_t m, std::size_t grid_size) {
  WidomReport r;
  const HankelGram h = hankel_gram(v, m, grid_size);
  const Eigen::LLT<Mat> llt(h.gram);
  if (llt.info() != Eigen::Success) fail(ErrorKind::degenerate, "I - H*H is not positive definite");
  double det = 1.0;
  const Mat& lower = llt.matrixLLT();
  for (Eigen::Index k = 0; k < lower.rows(); ++k) det *= std::norm(lower(k, k));
  r.determinant = det;
  r.product = 1.0;
  for (std::size_t j = 0; j < v.support(); ++j) r.product *= std::pow(v.rho(j), 2.0 * static_cast<double>(j + 1));
  r.gap = std::abs(r.determinant - r.product);
  r.trace = (Mat::Identity(idx(m), idx(m)) - h.gram).trace().real();
  for (int n = 1; h.shat.contains(-n); ++n) r.trace_series += n * std::norm(h.shat[-n]);
  return r;
}

Mat model_gram(const VerblunskyData& v, std::size_t m, ModelBasis basis, std::size_t grid_size) {
  const SchurChain chain = chain_from_data(v, std::max(m, v.support()), grid_size);
  const GridFunction s0 = chain_symbol(chain, 0);
  const GridFunction one = GridFunction::constant(grid_size, 1.0);
  auto power = [&](int k) { return GridFunction::sample(grid_size, [k](cplx t) { return std::pow(t, k); }); };

  std::vector<std::pair<GridFunction, GridFunction>> vecs;
  for (std::size_t k = 0; k < m; ++k) {
    if (basis == ModelBasis::f) {
      vecs.emplace_back(power(static_cast<int>(k)) / chain.psi[k], chain.phi[k].conj() / chain.psi[k].conj());
      continue;
    }
    const int n = static_cast<int>(k / 2);
    const GridFunction& phi = chain.phi[k];
    const GridFunction& psi = chain.psi[k];
    if (k % 2 == 0)
      vecs.emplace_back(power(n) / psi, power(-n) * phi.conj() / psi.conj());
    else
      vecs.emplace_back(power(n) * phi / psi, power(-n - 1) * one / psi.conj());
  }

  const GridFunction s0bar = s0.conj();
  Mat g(idx(m), idx(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto& [f1, f2] = vecs[j];
    const GridFunction a1 = f1 + s0bar * f2;
    const GridFunction a2 = s0 * f1 + f2;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& [g1, g2] = vecs[k];
      g(idx(k), idx(j)) = (g1.conj() * a1 + g2.conj() * a2).mean();
    }
  }
  return g;
}

HankelSpectrum hankel_spectrum(const FourierSeries& shat, std::size_t m, std::size_t top) {
  HankelSpectrum h;
  h.symbol = singular_values(hankel_block(shat, m).matrix);
  h.conjugate = singular_values(hankel_block(conjugate_symbol(shat), m).matrix);
  const std::size_t k = std::min({top, h.symbol.size(), h.conjugate.size()});
  for (std::size_t i = 0; i < k; ++i)
    h.top_gap = std::max(h.top_gap, std::abs(h.symbol[i] * h.symbol[i] - h.conjugate[i] * h.conjugate[i]));
  return h;
}

}  // namespace cmvscat
