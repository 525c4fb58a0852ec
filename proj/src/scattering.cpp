#include "cmvscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmvscat/cmv.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/operators.hpp"

namespace cmvscat {

FourierSeries szego_function(const GridFunction& w) {
  if (std::abs(w.mean() - 1.0) > 1e-8) fail(ErrorKind::invalid_input, "weight must have grid mean 1");
  return outer_from_modulus_squared(w);
}

GridFunction szego_from_chain(const SchurChain& chain, cplx alpha_minus_one) {
  if (!chain.has_psi()) fail(ErrorKind::invalid_input, "chain has no psi levels");
  const GridFunction one = GridFunction::constant(chain.grid_size(), 1.0);
  return chain.psi[0] / (one + std::conj(alpha_minus_one) * chain.phi[0]);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::canonical: return "canonical";
    case Verdict::noncanonical: return "noncanonical";
    case Verdict::undecided: break;
  }
  return "undecided";
}

CanonicalEvidence canonical_test(const GridFunction& s, const std::vector<std::size_t>& sizes,
                                 double tol_lo, double tol_hi) {
  CanonicalEvidence ev;
  ev.sizes = sizes;
  ev.tol_lo = tol_lo;
  ev.tol_hi = tol_hi;
  if (sizes.empty()) return ev;

  const FourierSeries sbar = conjugate_symbol(analyze(s));
  const FourierSeries tsbar = shift_symbol(sbar, -1);
  int canonical = 0;
  int noncanonical = 0;
  for (std::size_t m : sizes) {
    const std::vector<double> a = singular_values(toeplitz_block(sbar, m).matrix);
    const std::vector<double> b = singular_values(toeplitz_block(tsbar, m).matrix);
    const double amin = a.back();
    const double b0 = b[b.size() - 1];
    const double b1 = b.size() > 1 ? b[b.size() - 2] : tol_hi;
    ev.sigma_min_s.push_back(amin);
    ev.sigma0_ts.push_back(b0);
    ev.sigma1_ts.push_back(b1);
    if (amin >= tol_hi && b0 <= tol_lo && b1 >= tol_hi)
      ++canonical;
    else if (amin <= tol_lo || b1 <= tol_lo || b0 >= tol_hi)
      ++noncanonical;
  }
  const int n = static_cast<int>(sizes.size());
  if (canonical == n) ev.verdict = Verdict::canonical;
  else if (noncanonical == n) ev.verdict = Verdict::noncanonical;
  return ev;
}

ScatteringData describe_scattering(const GridFunction& s) {
  ScatteringData out;
  out.s = s;
  out.shat = analyze(s);
  out.index = winding_index(s).index;
  out.evidence = canonical_test(s);
  return out;
}

ScatteringData scattering_function(const VerblunskyData& v, std::size_t grid_size) {
  const SchurChain chain = chain_from_data(v, v.support(), grid_size);
  const GridFunction d = szego_from_chain(chain, v.alpha_minus_one);
  const GridFunction s = (-std::conj(v.alpha_minus_one)) * d / d.conj();
  return describe_scattering(s);
}

GridFunction scattering_family(const SchurChain& chain, const GridFunction& E) {
  if (!chain.has_psi()) fail(ErrorKind::invalid_input, "chain has no psi levels");
  if (E.sup_norm() > 1.0 + 1e-10) fail(ErrorKind::invalid_input, "E must lie in the unit ball");
  const GridFunction& phi = chain.phi[0];
  const GridFunction& psi = chain.psi[0];
  const GridFunction one = GridFunction::constant(phi.size(), 1.0);
  const GridFunction den = one + E * phi;
  for (const cplx& z : den.samples())
    if (std::abs(z) <= 1e-12) fail(ErrorKind::degenerate, "1 + E phi vanishes on the grid");
  return (-1.0) * (psi / psi.conj()) * (E + phi.conj()) / den;
}

namespace {

std::string evidence_text(const CanonicalEvidence& ev) {
  std::ostringstream os;
  os << "verdict " << to_string(ev.verdict);
  for (std::size_t k = 0; k < ev.sizes.size(); ++k)
    os << "; m=" << ev.sizes[k] << ": sigma_min(T_sbar)=" << ev.sigma_min_s[k]
       << " sigma_0,1(T_tsbar)=" << ev.sigma0_ts[k] << "," << ev.sigma1_ts[k];
  return os.str();
}

}  // namespace

namespace {

WindingDecomposition index_zero(const GridFunction& s) {
  WindingDecomposition wd = winding_index(s);
  if (wd.index != 0)
    fail(ErrorKind::non_canonical, "winding index " + std::to_string(wd.index) +
                                       " != 0: non-canonical or out of implemented scope");
  return wd;
}

}  // namespace

InverseResult inverse_scattering(const GridFunction& s, std::size_t depth) {
  index_zero(s);
  const CanonicalEvidence ev = canonical_test(s);
  if (ev.verdict != Verdict::canonical)
    fail(ErrorKind::non_canonical, "inverse scattering refused: " + evidence_text(ev));
  InverseResult out = reconstruct_unchecked(s, depth);
  out.evidence = ev;
  return out;
}

InverseResult reconstruct_unchecked(const GridFunction& s, std::size_t depth) {
  const WindingDecomposition wd = index_zero(s);
  InverseResult out;
  const std::size_t m = s.size();
  const cplx am = -std::conj(wd.constant);
  // s = -conj(alpha_{-1}) exp(i (log w)~) and (log w)~~ = -(log w - mean).
  const GridFunction logw = (-1.0) * harmonic_conjugate(wd.phase);
  GridFunction w = logw.map([](cplx z) { return cplx(std::exp(z.real()), 0.0); });
  w *= cplx(1.0 / w.mean().real());

  // R = what(0) + 2 sum_{k>=1} what(k) z^k, phi = alpha_{-1} (1 - R) / (1 + R).
  const FourierSeries what = analyze(w);
  FourierSeries rc(m);
  rc.at(0) = what[0];
  for (int k = 1; k <= rc.max_index(); ++k) rc.at(k) = 2.0 * what[k];
  const GridFunction r = synthesize(rc);
  const GridFunction one = GridFunction::constant(m, 1.0);
  GridFunction phi = am * (one - r) / (one + r);
  // Aliasing of the nonlinear map leaves a small constant term; drop it so the
  // Schur step starts from phi(0) = 0.
  const cplx c0 = phi.mean();
  phi -= GridFunction::constant(m, c0);

  SchurForward fw = schur_forward(phi, depth, am);
  if (fw.degenerate_at) fail(ErrorKind::degenerate, "Schur parameter reached the unit circle");
  std::vector<cplx>& alphas = fw.data.alphas;
  while (!alphas.empty() && std::abs(alphas.back()) < 1e-9) alphas.pop_back();

  out.data = fw.data;
  out.spectral = SpectralData{w, szego_function(w), am};
  out.match = max_abs_diff(scattering_function(out.data, m).s, s);
  return out;
}

std::vector<FamilyMember> noncanonical_family(const GridFunction& s, const std::vector<cplx>& taus,
                                              std::size_t depth) {
  const WindingDecomposition wd = winding_index(s);
  if (wd.index < 1) fail(ErrorKind::invalid_input, "family requires s = kappa t^N with N >= 1");
  if (wd.phase.sup_norm() > 1e-8)
    fail(ErrorKind::invalid_input, "family requires s of the form kappa t^N");
  const std::size_t m = s.size();
  const auto n = static_cast<std::size_t>(wd.index);
  const cplx kappa = wd.constant;

  std::vector<FamilyMember> out;
  for (cplx tau : taus) {
    if (std::abs(std::abs(tau) - 1.0) > 1e-12) fail(ErrorKind::invalid_input, "tau must be unimodular");
    FamilyMember f;
    f.tau = tau;
    f.alpha_minus_one = -tau;
    f.D.assign(n + 1, cplx(0.0));
    f.D[0] = 1.0 / std::sqrt(2.0);
    f.D[n] = tau * kappa / std::sqrt(2.0);
    const GridFunction d = poly_on_grid(f.D, m);
    f.w = d.map([](cplx z) { return cplx(std::norm(z), 0.0); });
    f.data.alpha_minus_one = f.alpha_minus_one;
    f.data.alphas = verblunsky_from_weight(analyze(f.w), depth);
    const cplx lead = -std::conj(f.alpha_minus_one);
    for (std::size_t j = 0; j < m; ++j) {
      if (std::norm(d[j]) < 1e-12) {
        ++f.excluded;
        continue;
      }
      f.reproduction = std::max(f.reproduction, std::abs(lead * d[j] / std::conj(d[j]) - s[j]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace cmvscat
