#include "cmvscat/polynomial.hpp"

#include <algorithm>

namespace cmvscat {

cplx poly_eval(const Poly& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, -1.0)); }

Poly poly_scale(const Poly& p, cplx c) {
  Poly r(p);
  for (cplx& z : r) z *= c;
  return r;
}

Poly poly_shift(const Poly& p, std::size_t k) {
  Poly r(k, cplx(0.0));
  r.insert(r.end(), p.begin(), p.end());
  return r;
}

Poly poly_reverse(const Poly& p, std::size_t n) {
  Poly r(n + 1, cplx(0.0));
  for (std::size_t k = 0; k <= n && k < p.size(); ++k) r[n - k] = std::conj(p[k]);
  return r;
}

double poly_max_diff(const Poly& a, const Poly& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const cplx x = k < a.size() ? a[k] : cplx(0.0);
    const cplx y = k < b.size() ? b[k] : cplx(0.0);
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

GridFunction poly_on_grid(const Poly& p, std::size_t grid_size) {
  return GridFunction::sample(grid_size, [&](cplx t) { return poly_eval(p, t); });
}

}  // namespace cmvscat
