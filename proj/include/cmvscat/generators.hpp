#pragma once

// Closed-form example families: Jacobi weights, polynomial weights with
// zeros on the circle, a single Bernstein-Szego coefficient, and geometric
// Verblunsky sequences.

#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/polynomial.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

/// alpha_n = -(g1 - (-1)^n g2) / (n + 1 + g1 + g2), n < count: the
/// Verblunsky coefficients of the Jacobi weight |t-1|^{2 g1} |t+1|^{2 g2}.
/// Requires g1, g2 > -1/2.
VerblunskyData jacobi_data(double g1, double g2, std::size_t count, cplx alpha_minus_one = -1.0);

/// C |t-1|^{2 g1} |t+1|^{2 g2} at the midpoints t_j exp(i pi / M), which
/// keeps the samples off t = +-1; C gives grid mean 1.
GridFunction jacobi_weight(double g1, double g2, std::size_t grid_size = kDefaultGrid);

/// w = c |P|^2 for monic P with unimodular roots, c = 1 / ||P||_2^2,
/// D = sqrt(c) P / P(0), s = -conj(alpha_{-1}) conj(P(0)) t^N.
struct PolyWeight {
  Poly P;
  cplx alpha_minus_one;
  double c = 1.0;
  Poly D;
  GridFunction w;
  GridFunction s;
  int index = 0;
};

PolyWeight polyweight(const std::vector<cplx>& roots, cplx alpha_minus_one = -1.0,
                      std::size_t grid_size = kDefaultGrid);

/// alpha = (a).
VerblunskyData bernstein_data(cplx a, cplx alpha_minus_one = -1.0);

/// alpha_n = ratio^{n+1}, n < count.
VerblunskyData geometric_data(double ratio, std::size_t count, cplx alpha_minus_one = -1.0);

}  // namespace cmvscat
