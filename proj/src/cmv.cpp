#include "cmvscat/cmv.hpp"

#include <algorithm>
#include <cmath>

#include "cmvscat/error.hpp"

namespace cmvscat {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

void put_block(Mat& target, std::size_t row, const VerblunskyData& v, std::size_t k) {
  const auto r = static_cast<Eigen::Index>(row);
  const cplx a = v.schur_parameter(k);
  const double rho = v.rho(k);
  target(r, r) = std::conj(a);
  target(r, r + 1) = rho;
  target(r + 1, r) = rho;
  target(r + 1, r + 1) = -a;
}

Vec unit(std::size_t m, std::size_t k) {
  Vec e = Vec::Zero(static_cast<Eigen::Index>(m));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

}  // namespace

CmvMatrix build_cmv(const VerblunskyData& v, std::size_t m) {
  v.validate();
  if (m < 4 || m % 2 != 0) fail(ErrorKind::invalid_input, "CMV section size must be even and >= 4");
  const auto n = static_cast<Eigen::Index>(m);
  Mat od = Mat::Zero(n, n);
  Mat ev = Mat::Zero(n, n);
  od(0, 0) = -v.alpha_minus_one;
  for (std::size_t r = 1; r + 1 < m; r += 2) put_block(od, r, v, r);
  od(n - 1, n - 1) = 1.0;
  for (std::size_t r = 0; r < m; r += 2) put_block(ev, r, v, r);
  return CmvMatrix{od * ev};
}

double interior_unitarity_residual(const CmvMatrix& a) {
  const Eigen::Index k = static_cast<Eigen::Index>(a.size()) - 3;
  const Mat g = a.matrix.adjoint() * a.matrix - Mat::Identity(a.matrix.rows(), a.matrix.cols());
  return g.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

double CyclicityResidual::max() const { return std::max({forward, backward, initial}); }

CyclicityResidual cyclicity_residual(const CmvMatrix& a, const VerblunskyData& v) {
  const std::size_t m = a.size();
  const Mat& A = a.matrix;
  const Mat Ainv = A.adjoint();
  auto par = [&](std::size_t k) { return v.schur_parameter(k); };
  CyclicityResidual r;
  for (std::size_t n = 0; 2 * n + 4 < m; ++n) {
    const std::size_t e = 2 * n;
    const Vec lhs = A * (unit(m, e) * v.rho(e) - unit(m, e + 1) * std::conj(par(e)));
    const Vec rhs = unit(m, e + 1) * std::conj(par(e + 1)) + unit(m, e + 2) * v.rho(e + 1);
    r.forward = std::max(r.forward, (lhs - rhs).cwiseAbs().maxCoeff());
    if (e + 5 < m) {
      const Vec lb = Ainv * (unit(m, e + 1) * v.rho(e + 1) - unit(m, e + 2) * par(e + 1));
      const Vec rb = unit(m, e + 2) * par(e + 2) + unit(m, e + 3) * v.rho(e + 2);
      r.backward = std::max(r.backward, (lb - rb).cwiseAbs().maxCoeff());
    }
  }
  const Vec li = Ainv * unit(m, 0);
  const Vec ri = -std::conj(v.alpha_minus_one) * (unit(m, 0) * par(0) + unit(m, 1) * v.rho(0));
  r.initial = (li - ri).cwiseAbs().maxCoeff();
  return r;
}

std::vector<cplx> caratheodory(const VerblunskyData& v, std::span<const cplx> points) {
  v.validate();
  const cplx c = std::conj(v.alpha_minus_one);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (cplx z : points) {
    if (std::abs(z) > 1.0) fail(ErrorKind::invalid_input, "Caratheodory function needs |z| <= 1");
    const cplx phi = schur_function_at(v, z);
    out.push_back((1.0 - c * phi) / (1.0 + c * phi));
  }
  return out;
}

std::size_t resolvent_truncation(const VerblunskyData& v) {
  return std::max<std::size_t>(4 * v.support() + 64, 192);
}

std::vector<cplx> caratheodory_resolvent(const VerblunskyData& v, std::span<const cplx> points,
                                         std::size_t m) {
  if (m == 0) m = resolvent_truncation(v);
  if (m % 2) ++m;
  const CmvMatrix a = build_cmv(v, m);
  const Mat id = Mat::Identity(a.matrix.rows(), a.matrix.cols());
  const Vec e0 = unit(m, 0);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (cplx z : points) {
    if (std::abs(z) > 0.9 + 1e-15)
      fail(ErrorKind::invalid_input, "resolvent route is limited to |z| <= 0.9");
    const Eigen::PartialPivLU<Mat> lu(a.matrix - z * id);
    const Vec x = lu.solve(e0);
    if (!x.allFinite()) fail(ErrorKind::degenerate, "resolvent solve failed");
    out.push_back((a.matrix * x + z * x)(0));
  }
  return out;
}

GridFunction spectral_density(const VerblunskyData& v, std::size_t grid_size) {
  const GridFunction phi = schur_inverse(v, grid_size);
  const cplx c = std::conj(v.alpha_minus_one);
  std::vector<cplx> w(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double num = 1.0 - std::norm(phi[j]);
    if (num <= 0.0) fail(ErrorKind::degenerate, "spectral density vanishes: |phi| = 1 on the grid");
    w[j] = num / std::norm(1.0 + c * phi[j]);
  }
  return GridFunction(std::move(w));
}

std::vector<Poly> opuc_polynomials(const VerblunskyData& v, std::size_t n_max) {
  v.validate();
  std::vector<Poly> out;
  out.reserve(n_max + 1);
  Poly phi{cplx(1.0)};
  Poly star{cplx(1.0)};
  double norm = 1.0;
  for (std::size_t k = 0;; ++k) {
    out.push_back(poly_scale(phi, 1.0 / norm));
    if (k == n_max) break;
    const cplx a = v.alpha(k);
    const Poly zphi = poly_shift(phi, 1);
    Poly next = poly_sub(zphi, poly_scale(star, std::conj(a)));
    Poly next_star = poly_sub(star, poly_scale(zphi, a));
    phi = std::move(next);
    star = std::move(next_star);
    phi.resize(k + 2, cplx(0.0));
    star.resize(k + 2, cplx(0.0));
    norm *= v.rho(k);
  }
  return out;
}

Mat opuc_gram(const std::vector<Poly>& p, const GridFunction& w) {
  const std::size_t m = w.size();
  std::vector<GridFunction> vals;
  vals.reserve(p.size());
  for (const Poly& q : p) vals.push_back(poly_on_grid(q, m));
  const auto n = static_cast<Eigen::Index>(p.size());
  Mat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      g(j, k) = (vals[static_cast<std::size_t>(j)] * vals[static_cast<std::size_t>(k)].conj() * w).mean();
  return g;
}

std::vector<cplx> verblunsky_from_weight(const FourierSeries& what, std::size_t count) {
  // <z^i, z^j>_w = what(j - i); conj(alpha_k) = <z Phi_k, 1>_w / ||Phi_k||^2.
  std::vector<cplx> alphas;
  Poly phi{cplx(1.0)};
  double norm2 = what[0].real();
  if (!(norm2 > 0.0)) fail(ErrorKind::degenerate, "weight has zero mass");
  for (std::size_t k = 0; k < count; ++k) {
    cplx num = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) num += phi[i] * what[-static_cast<int>(i) - 1];
    const cplx abar = num / norm2;
    const cplx a = std::conj(abar);
    if (std::abs(a) >= 1.0) break;
    alphas.push_back(a);
    const Poly star = poly_reverse(phi, k);
    phi = poly_sub(poly_shift(phi, 1), poly_scale(star, abar));
    norm2 *= 1.0 - std::norm(a);
  }
  return alphas;
}

namespace {

struct EigenInputs {
  GridFunction dbar;   // conj(D)
  GridFunction sbar;   // conj(s)
  std::vector<Poly> p;
};

EigenInputs eigen_inputs(const VerblunskyData& v, std::size_t top, std::size_t grid_size) {
  const SchurChain chain = chain_from_data(v, v.support(), grid_size);
  const cplx c = std::conj(v.alpha_minus_one);
  const GridFunction one = GridFunction::constant(grid_size, 1.0);
  const GridFunction d = chain.psi[0] / (one + c * chain.phi[0]);
  const GridFunction s = (-c) * d / d.conj();
  return {d.conj(), s.conj(), opuc_polynomials(v, top)};
}

}  // namespace

std::vector<EigenRow> generalized_eigenrows(const VerblunskyData& v, std::size_t n_max,
                                            std::size_t grid_size) {
  const EigenInputs in = eigen_inputs(v, 2 * n_max + 1, grid_size);
  const cplx am = v.alpha_minus_one;
  std::vector<EigenRow> rows;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const int ni = static_cast<int>(n);
    const GridFunction tn = GridFunction::sample(grid_size, [&](cplx t) { return std::pow(t, ni); });
    const GridFunction tinv = tn.conj();
    EigenRow row;
    row.n = n;
    row.even = in.dbar * tinv * poly_on_grid(in.p[2 * n], grid_size);
    row.odd = (-am) * in.dbar * tn * poly_on_grid(in.p[2 * n + 1], grid_size).conj();
    const GridFunction target_odd =
        in.sbar * GridFunction::sample(grid_size, [&](cplx t) { return std::pow(t, -ni - 1); });
    row.r_even = (row.even - tn).l2_norm();
    row.r_odd = (row.odd - target_odd).l2_norm();
    rows.push_back(std::move(row));
  }
  return rows;
}

double eigen_equation_residual(const VerblunskyData& v, std::size_t columns,
                               std::span<const std::size_t> grid_indices, std::size_t grid_size) {
  std::size_t m = columns + 4;
  if (m % 2) ++m;
  const EigenInputs in = eigen_inputs(v, m, grid_size);
  const CmvMatrix a = build_cmv(v, m);
  const cplx am = v.alpha_minus_one;
  double worst = 0.0;
  for (std::size_t j : grid_indices) {
    const cplx t = GridFunction::node(grid_size, j);
    Eigen::RowVectorXcd psi(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      const int n = static_cast<int>(k / 2);
      const cplx p = poly_eval(in.p[k], t);
      psi(static_cast<Eigen::Index>(k)) = (k % 2 == 0) ? in.dbar[j] * std::pow(t, -n) * p
                                                       : -am * in.dbar[j] * std::pow(t, n) * std::conj(p);
    }
    const Eigen::RowVectorXcd res = psi * a.matrix - t * psi;
    worst = std::max(worst, res.head(static_cast<Eigen::Index>(columns)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cmvscat
