#include "cmvscat/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "cmvscat/cmv.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/operators.hpp"

namespace cmvscat {

std::vector<A2Level> a2_supremum(const GridFunction& w, int max_depth) {
  const std::size_t m = w.size();
  const int log2m = std::bit_width(m) - 1;
  if (max_depth < 0 || max_depth > log2m - 2)
    fail(ErrorKind::invalid_input, "A2 depth must lie in [0, log2(M) - 2]");
  for (const cplx& z : w.samples())
    if (!(z.real() > 0.0)) fail(ErrorKind::invalid_input, "A2 functional needs a positive weight");

  // Prefix sums over two periods so every arc is a single difference.
  std::vector<double> pw(2 * m + 1, 0.0), pinv(2 * m + 1, 0.0);
  for (std::size_t j = 0; j < 2 * m; ++j) {
    const double x = w[j % m].real();
    pw[j + 1] = pw[j] + x;
    pinv[j + 1] = pinv[j] + 1.0 / x;
  }
  std::vector<A2Level> out;
  double running = 0.0;
  for (int d = 0; d <= max_depth; ++d) {
    const std::size_t len = m >> d;
    const double inv_len = 1.0 / static_cast<double>(len);
    double sup = 0.0;
    for (std::size_t o = 0; o < m; ++o) {
      const double a = (pw[o + len] - pw[o]) * inv_len;
      const double b = (pinv[o + len] - pinv[o]) * inv_len;
      sup = std::max(sup, a * b);
    }
    running = std::max(running, sup);
    out.push_back({d, sup, running});
  }
  return out;
}

GiReport gi_functional(const VerblunskyData& v) {
  GiReport r;
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t n = 0; n < v.support(); ++n) {
    sum += static_cast<double>(n) * std::norm(v.alpha(n));
    prod *= std::pow(v.rho(n), static_cast<double>(n + 1));
    r.partial_sums.push_back(sum);
    r.partial_products.push_back(prod);
  }
  r.gi_sum = sum;
  r.widom_product = prod;
  return r;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::positive: return "positive";
    case Evidence::negative: return "negative";
    case Evidence::inconclusive: break;
  }
  return "inconclusive";
}

Evidence gi_stability(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n < 4) return Evidence::positive;
  auto at = [&](std::size_t k) { return partial_sums[k - 1]; };
  const double d0 = at(n) - at(n / 2);
  const double d1 = at(n / 2) - at(n / 4);
  if (d0 <= 1e-12 || d0 <= 0.1 * d1) return Evidence::positive;
  if (d0 >= 0.5 * d1) return Evidence::negative;
  return Evidence::inconclusive;
}

HsOutput hs_generator(const GridFunction& u, const GridFunction& v, cplx c) {
  if (std::abs(std::abs(c) - 1.0) > 1e-12) fail(ErrorKind::invalid_input, "c must be unimodular");
  if (u.size() != v.size()) fail(ErrorKind::invalid_input, "u and v must share a grid");
  if (u.max_imag() > 1e-10 || v.max_imag() > 1e-10)
    fail(ErrorKind::invalid_input, "u and v must be real-valued");
  const std::size_t m = u.size();
  const GridFunction u0 = u - GridFunction::constant(m, u.mean().real());
  const GridFunction v0 = v - GridFunction::constant(m, v.mean().real());
  double lo = v0[0].real(), hi = lo;
  for (const cplx& z : v0.samples()) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  if (hi - lo >= std::numbers::pi - 1e-6)
    fail(ErrorKind::invalid_input, "oscillation of v must stay below pi");

  const GridFunction ut = harmonic_conjugate(u0);
  const GridFunction vt = harmonic_conjugate(v0);
  GridFunction w = (u0 - vt).map([](cplx z) { return cplx(std::exp(z.real()), 0.0); });
  w *= cplx(1.0 / w.mean().real());
  const GridFunction s = (ut + v0).map([c](cplx z) { return c * std::polar(1.0, z.real()); });
  return {std::move(w), s, -std::conj(c)};
}

namespace {

double besov_of_real(const GridFunction& g) { return besov_seminorm(analyze(g)); }

GridFunction log_of(const GridFunction& w) {
  return w.map([](cplx z) { return cplx(std::log(z.real()), 0.0); });
}

int a2_depth(std::size_t m) { return std::min(10, static_cast<int>(std::bit_width(m)) - 3); }

void fill_hankel_norms(ClassReport& r, const FourierSeries& shat) {
  for (std::size_t m : kReportBlocks)
    if (shat.contains(-static_cast<int>(2 * m - 1)))
      r.hankel_norms.emplace_back(m, operator_norm(hankel_block(shat, m).matrix));
}

void fill_data_side(ClassReport& r, const VerblunskyData& v, std::size_t grid_size) {
  const GiReport gi = gi_functional(v);
  r.gi_partial_sums = gi.partial_sums;
  r.widom_partial_products = gi.partial_products;
  r.gi_evidence = gi_stability(gi.partial_sums);
  for (std::size_t m : kReportBlocks)
    r.linv_norms.emplace_back(m, operator_norm(transformation_inverse_block(v, m, grid_size).matrix));
}

void settle_hs(ClassReport& r) {
  double hn = 0.0;
  for (const auto& [m, x] : r.hankel_norms) hn = std::max(hn, x);
  const double a2 = r.a2_trace.empty() ? 0.0 : r.a2_trace.back().running;
  const Verdict verdict = r.canonical ? r.canonical->verdict : Verdict::undecided;
  if (verdict == Verdict::noncanonical || hn >= 1.0 - 1e-6 || a2 > kA2Bound)
    r.hs_evidence = Evidence::negative;
  else if (!r.a2_trace.empty())
    r.hs_evidence = Evidence::positive;
  else
    r.hs_evidence = Evidence::inconclusive;
}

void fill_scattering_side(ClassReport& r, const ScatteringData& sd) {
  r.besov_phase = besov_of_real(winding_index(sd.s).phase);
  r.canonical = sd.evidence;
  fill_hankel_norms(r, sd.shat);
}

}  // namespace

ClassReport classify_data(const VerblunskyData& v, std::size_t grid_size) {
  v.validate();
  ClassReport r;
  r.input_kind = "verblunsky";
  const GridFunction w = spectral_density(v, grid_size);
  r.a2_trace = a2_supremum(w, a2_depth(grid_size));
  r.besov_logw = besov_of_real(log_of(w));
  fill_scattering_side(r, scattering_function(v, grid_size));
  fill_data_side(r, v, grid_size);
  settle_hs(r);
  return r;
}

ClassReport classify_weight(const GridFunction& w, cplx alpha_minus_one) {
  ClassReport r;
  r.input_kind = "weight";
  const std::size_t m = w.size();
  GridFunction wn = w;
  wn *= cplx(1.0 / w.mean().real());
  r.a2_trace = a2_supremum(wn, a2_depth(m));
  r.besov_logw = besov_of_real(log_of(wn));
  const GridFunction d = synthesize(szego_function(wn));
  fill_scattering_side(r, describe_scattering((-std::conj(alpha_minus_one)) * d / d.conj()));
  VerblunskyData v;
  v.alpha_minus_one = alpha_minus_one;
  v.alphas = verblunsky_from_weight(analyze(wn), kReportBlocks.back());
  fill_data_side(r, v, m);
  settle_hs(r);
  return r;
}

ClassReport classify_scattering(const GridFunction& s) {
  ClassReport r;
  r.input_kind = "scattering";
  const ScatteringData sd = describe_scattering(s);
  fill_scattering_side(r, sd);
  if (sd.verdict() == Verdict::canonical && sd.index == 0) {
    const InverseResult inv = inverse_scattering(s);
    r.a2_trace = a2_supremum(inv.spectral.w, a2_depth(s.size()));
    r.besov_logw = besov_of_real(log_of(inv.spectral.w));
    fill_data_side(r, inv.data, s.size());
  }
  settle_hs(r);
  return r;
}

}  // namespace cmvscat
