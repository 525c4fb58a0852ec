#include "cmvscat/schur.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmvscat/error.hpp"

namespace cmvscat {

void VerblunskyData::validate() const {
  if (std::abs(std::abs(alpha_minus_one) - 1.0) >= 1e-12)
    fail(ErrorKind::invalid_input, "alpha_minus_one must be unimodular");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const cplx a = alphas[k];
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0))
      fail(ErrorKind::invalid_input,
           "alpha_" + std::to_string(k) + " must lie in the open unit disk");
  }
}

double VerblunskyData::rho(std::size_t k) const { return std::sqrt(1.0 - std::norm(alpha(k))); }

SchurForward schur_forward(const GridFunction& phi, std::size_t depth, cplx alpha_minus_one) {
  if (std::abs(std::abs(alpha_minus_one) - 1.0) >= 1e-12)
    fail(ErrorKind::invalid_input, "alpha_minus_one must be unimodular");
  if (phi.sup_norm() > 1.0 + 1e-10)
    fail(ErrorKind::invalid_input, "Schur function exceeds 1 in modulus");
  if (std::abs(phi.mean()) >= 1e-8) fail(ErrorKind::invalid_input, "Schur function must vanish at 0");

  const std::size_t m = phi.size();
  SchurForward out;
  out.data.alpha_minus_one = alpha_minus_one;
  SchurChain& chain = out.chain;

  // On the circle z^{-1} = conj(t), so division by z is exact pointwise.
  GridFunction f = GridFunction::sample(m, [](cplx t) { return std::conj(t); }) * phi;
  for (std::size_t n = 0;; ++n) {
    chain.phi.push_back(GridFunction::sample(m, [](cplx t) { return t; }) * f);
    chain.f.push_back(f);
    if (n == depth) break;
    const cplx a = f.mean();
    if (std::abs(a) >= 1.0 - 1e-10) {
      out.degenerate_at = n;
      break;
    }
    chain.parameters.push_back(a);
    out.data.alphas.push_back(-std::conj(alpha_minus_one) * a);
    std::vector<cplx> next(m);
    const auto fs = f.samples();
    for (std::size_t j = 0; j < m; ++j)
      next[j] = (fs[j] - a) * std::conj(GridFunction::node(m, j)) / (1.0 - std::conj(a) * fs[j]);
    f = GridFunction(std::move(next));
  }
  return out;
}

namespace {

// Downward Schur recursion at a single point; returns f_0(z).
cplx schur_f0_at(const VerblunskyData& v, cplx z) {
  cplx f = 0.0;
  for (std::size_t k = v.support(); k-- > 0;) {
    const cplx a = v.schur_parameter(k);
    f = (a + z * f) / (1.0 + std::conj(a) * z * f);
  }
  return f;
}

}  // namespace

GridFunction schur_inverse(const VerblunskyData& v, std::size_t grid_size) {
  v.validate();
  return GridFunction::sample(grid_size, [&](cplx t) { return t * schur_f0_at(v, t); });
}

cplx schur_function_at(const VerblunskyData& v, cplx z) { return z * schur_f0_at(v, z); }

SchurChain chain_from_data(const VerblunskyData& v, std::size_t depth, std::size_t grid_size) {
  v.validate();
  const std::size_t top = std::max(depth, v.support());
  std::vector<GridFunction> levels(top + 1, GridFunction::constant(grid_size, 0.0));
  for (std::size_t k = v.support(); k-- > 0;) {
    const cplx a = v.schur_parameter(k);
    const auto next = levels[k + 1].samples();
    std::vector<cplx> cur(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
      const cplx zf = GridFunction::node(grid_size, j) * next[j];
      cur[j] = (a + zf) / (1.0 + std::conj(a) * zf);
    }
    levels[k] = GridFunction(std::move(cur));
  }
  SchurChain chain;
  const GridFunction t = GridFunction::sample(grid_size, [](cplx z) { return z; });
  for (std::size_t n = 0; n <= depth; ++n) {
    chain.f.push_back(levels[n]);
    chain.phi.push_back(t * levels[n]);
    if (n < depth) chain.parameters.push_back(v.schur_parameter(n));
  }
  return psi_chain(std::move(chain), v);
}

SchurChain psi_chain(SchurChain chain, const VerblunskyData& v) {
  const std::size_t depth = chain.depth();
  const std::size_t m = chain.grid_size();
  chain.psi.assign(depth + 1, GridFunction::constant(m, 1.0));

  auto weight_of = [](const GridFunction& phi) {
    return phi.map([](cplx z) { return cplx(1.0 - std::norm(z), 0.0); });
  };
  auto outer_psi = [&](std::size_t n) { return synthesize(outer_from_modulus_squared(weight_of(chain.phi[n]))); };

  if (v.support() <= depth) {
    // phi_N = 0 so psi_N = 1; run the recursion downward.
    for (std::size_t k = v.support(); k-- > 0;) {
      const cplx a = v.schur_parameter(k);
      const double rho = v.rho(k);
      const auto fk = chain.f[k].samples();
      const auto up = chain.psi[k + 1].samples();
      std::vector<cplx> cur(m);
      for (std::size_t j = 0; j < m; ++j) cur[j] = up[j] * (1.0 - std::conj(a) * fk[j]) / rho;
      chain.psi[k] = GridFunction(std::move(cur));
    }
  } else {
    for (std::size_t j = 0; j < m; ++j)
      if (1.0 - std::norm(chain.phi[0][j]) <= 1e-12)
        fail(ErrorKind::degenerate, "weight degeneracy: |phi| = 1 on the grid");
    chain.psi[0] = outer_psi(0);
    for (std::size_t k = 0; k < depth; ++k) {
      const cplx a = v.schur_parameter(k);
      const double rho = v.rho(k);
      const auto fk = chain.f[k].samples();
      const auto lo = chain.psi[k].samples();
      std::vector<cplx> cur(m);
      for (std::size_t j = 0; j < m; ++j) cur[j] = lo[j] * rho / (1.0 - std::conj(a) * fk[j]);
      chain.psi[k + 1] = GridFunction(std::move(cur));
    }
  }

  chain.psi_at_zero.clear();
  for (const GridFunction& p : chain.psi) chain.psi_at_zero.push_back(p.mean().real());

  // Independent cross-check; skipped where 1 - |phi_n|^2 gets too small.
  double gap = 0.0;
  bool checked = false;
  for (std::size_t n = 0; n <= depth; ++n) {
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) ok = 1.0 - std::norm(chain.phi[n][j]) > 1e-12;
    if (!ok) continue;
    gap = std::max(gap, max_abs_diff(outer_psi(n), chain.psi[n]));
    checked = true;
  }
  chain.psi_route_gap = checked ? gap : -1.0;
  return chain;
}

GridFunction chain_symbol(const SchurChain& chain, std::size_t k) {
  const GridFunction& psi = chain.psi.at(k);
  return (-1.0) * (psi / psi.conj()) * chain.phi.at(k).conj();
}

TransferChain transfer_chain(const VerblunskyData& v, std::size_t j, std::size_t n,
                             std::size_t grid_size) {
  if (j > n) fail(ErrorKind::invalid_input, "transfer chain requires j <= n");
  Poly p{cplx(0.0)};
  Poly q{cplx(1.0)};
  for (std::size_t k = j; k < n; ++k) {
    const cplx a = v.schur_parameter(k);
    const double rho = v.rho(k);
    Poly zp = poly_shift(p, 1);
    Poly np = poly_scale(poly_add(zp, poly_scale(q, std::conj(a))), 1.0 / rho);
    Poly nq = poly_scale(poly_add(poly_scale(zp, a), q), 1.0 / rho);
    p = std::move(np);
    q = std::move(nq);
  }
  // Formal degree bound n-j-1 (zero polynomial at j = n keeps one slot).
  const std::size_t len = std::max<std::size_t>(n - j, 1);
  p.resize(len, cplx(0.0));
  q.resize(len, cplx(0.0));
  TransferChain tc{j, n, p, q, GridFunction::constant(grid_size, 0.0)};
  tc.E = GridFunction::sample(grid_size, [&](cplx t) { return poly_eval(tc.P, t) / poly_eval(tc.Q, t); });
  return tc;
}

GridFunction transfer_ratio_recursive(const VerblunskyData& v, std::size_t j, std::size_t n,
                                      std::size_t grid_size) {
  if (j > n) fail(ErrorKind::invalid_input, "transfer chain requires j <= n");
  return GridFunction::sample(grid_size, [&](cplx t) {
    cplx e = 0.0;
    for (std::size_t k = j; k < n; ++k) {
      const cplx a = v.schur_parameter(k);
      e = (t * e + std::conj(a)) / (1.0 + a * t * e);
    }
    return e;
  });
}

double determinant_identity_residual(const VerblunskyData& v, std::size_t j, std::size_t n) {
  const TransferChain n0 = transfer_chain(v, 0, n, 16);
  const TransferChain nj = transfer_chain(v, j, n, 16);
  const TransferChain j0 = transfer_chain(v, 0, j, 16);
  const Poly lhs = poly_sub(poly_mul(n0.P, nj.Q), poly_mul(n0.Q, nj.P));
  return poly_max_diff(lhs, poly_shift(j0.P, n - j));
}

double vanishing_order_residual(const VerblunskyData& v, std::size_t j, std::size_t n,
                                std::size_t grid_size) {
  const FourierSeries d =
      analyze(transfer_chain(v, 0, n, grid_size).E - transfer_chain(v, j, n, grid_size).E);
  double r = 0.0;
  for (std::size_t k = 0; k < n - j; ++k) r = std::max(r, std::abs(d[static_cast<int>(k)]));
  return r;
}

PolynomialIdentityResidual polynomial_identity_residual(const SchurChain& chain,
                                                        const VerblunskyData& v, std::size_t j,
                                                        std::size_t n) {
  const std::size_t m = chain.grid_size();
  const TransferChain tc = transfer_chain(v, j, n, m);
  const GridFunction one = GridFunction::constant(m, 1.0);
  const GridFunction lhs = chain.psi.at(n) / (chain.psi.at(j) * (one + tc.E * chain.phi.at(n)));
  PolynomialIdentityResidual r;
  r.pointwise = max_abs_diff(lhs, poly_on_grid(tc.Q, m));
  const FourierSeries c = analyze(lhs);
  for (int k = c.min_index(); k <= c.max_index(); ++k)
    if (k < 0 || k >= std::max(static_cast<int>(n - j), 1)) r.leakage = std::max(r.leakage, std::abs(c[k]));
  return r;
}

double hinf_membership_residual(const SchurChain& chain, std::size_t j, std::size_t n) {
  const std::size_t m = chain.grid_size();
  const GridFunction shift =
      GridFunction::sample(m, [&](cplx t) { return std::pow(t, static_cast<int>(n - j)); });
  return analyze(chain_symbol(chain, j) * shift - chain_symbol(chain, n)).negative_part_norm();
}

}  // namespace cmvscat
