#include "cmvscat/generators.hpp"

#include <cmath>
#include <numbers>

#include "cmvscat/error.hpp"

namespace cmvscat {

namespace {

void check_anchor(cplx am) {
  if (std::abs(std::abs(am) - 1.0) >= 1e-12) fail(ErrorKind::invalid_input, "alpha_minus_one must be unimodular");
}

}  // namespace

VerblunskyData jacobi_data(double g1, double g2, std::size_t count, cplx alpha_minus_one) {
  if (!(g1 > -0.5) || !(g2 > -0.5)) fail(ErrorKind::invalid_input, "Jacobi exponents must exceed -1/2");
  check_anchor(alpha_minus_one);
  VerblunskyData v;
  v.alpha_minus_one = alpha_minus_one;
  for (std::size_t n = 0; n < count; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    v.alphas.emplace_back(-(g1 - sign * g2) / (static_cast<double>(n) + 1.0 + g1 + g2), 0.0);
  }
  return v;
}

GridFunction jacobi_weight(double g1, double g2, std::size_t grid_size) {
  if (!(g1 > -0.5) || !(g2 > -0.5)) fail(ErrorKind::invalid_input, "Jacobi exponents must exceed -1/2");
  const cplx half = std::polar(1.0, std::numbers::pi / static_cast<double>(grid_size));
  GridFunction w = GridFunction::sample(grid_size, [&](cplx t) {
    const cplx x = t * half;
    return cplx(std::pow(std::abs(x - 1.0), 2.0 * g1) * std::pow(std::abs(x + 1.0), 2.0 * g2), 0.0);
  });
  w *= cplx(1.0 / w.mean().real());
  return w;
}

PolyWeight polyweight(const std::vector<cplx>& roots, cplx alpha_minus_one, std::size_t grid_size) {
  if (roots.empty()) fail(ErrorKind::invalid_input, "polynomial weight needs at least one root");
  check_anchor(alpha_minus_one);
  PolyWeight pw;
  pw.alpha_minus_one = alpha_minus_one;
  pw.P = {cplx(1.0)};
  for (cplx r : roots) {
    if (std::abs(std::abs(r) - 1.0) > 1e-12) fail(ErrorKind::invalid_input, "roots must lie on the unit circle");
    pw.P = poly_mul(pw.P, Poly{-r, cplx(1.0)});
  }
  double norm2 = 0.0;
  for (cplx p : pw.P) norm2 += std::norm(p);
  pw.c = 1.0 / norm2;
  const cplx p0 = pw.P[0];
  pw.D = poly_scale(pw.P, std::sqrt(pw.c) / p0);
  pw.w = poly_on_grid(pw.P, grid_size).map([&](cplx z) { return cplx(pw.c * std::norm(z), 0.0); });
  pw.index = static_cast<int>(roots.size());
  const cplx lead = -std::conj(alpha_minus_one) * std::conj(p0);
  pw.s = GridFunction::sample(grid_size, [&](cplx t) { return lead * std::pow(t, pw.index); });
  return pw;
}

VerblunskyData bernstein_data(cplx a, cplx alpha_minus_one) {
  VerblunskyData v;
  v.alpha_minus_one = alpha_minus_one;
  v.alphas = {a};
  v.validate();
  return v;
}

VerblunskyData geometric_data(double ratio, std::size_t count, cplx alpha_minus_one) {
  if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorKind::invalid_input, "ratio must lie in (0, 1)");
  check_anchor(alpha_minus_one);
  VerblunskyData v;
  v.alpha_minus_one = alpha_minus_one;
  for (std::size_t n = 0; n < count; ++n) v.alphas.emplace_back(std::pow(ratio, static_cast<double>(n + 1)), 0.0);
  return v;
}

}  // namespace cmvscat
