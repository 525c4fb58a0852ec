#pragma once

#include <vector>

#include "cmvscat/circle.hpp"

namespace cmvscat {

/// Polynomial coefficients in ascending order: p[k] multiplies z^k.
using Poly = std::vector<cplx>;

cplx poly_eval(const Poly& p, cplx z);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& p, cplx c);
/// z^k p(z)
Poly poly_shift(const Poly& p, std::size_t k);
/// Reversed polynomial of formal degree n: z^n conj(p(1/conj z)).
Poly poly_reverse(const Poly& p, std::size_t n);
/// Max coefficientwise |a - b| (missing coefficients count as zero).
double poly_max_diff(const Poly& a, const Poly& b);

/// Samples p on the grid.
GridFunction poly_on_grid(const Poly& p, std::size_t grid_size);

}  // namespace cmvscat
