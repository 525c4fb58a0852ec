#pragma once

// Szego and scattering functions, the s_E family, the finite-section
// canonicity test, inverse scattering for canonical symbols, and the
// non-uniqueness family for monomial symbols kappa t^N.

#include <string>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/polynomial.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

struct SpectralData {
  GridFunction w;
  FourierSeries D;  // Taylor coefficients of the Szego function
  cplx alpha_minus_one{-1.0, 0.0};
};

/// Outer D with |D|^2 = w and D(0) > 0.  Requires w > 0 with grid mean 1 to 1e-8.
FourierSeries szego_function(const GridFunction& w);

/// D = psi_0 / (1 + conj(alpha_{-1}) phi_0) from a chain with psi filled.
GridFunction szego_from_chain(const SchurChain& chain, cplx alpha_minus_one);

enum class Verdict { canonical, noncanonical, undecided };
std::string to_string(Verdict v);

/// Per size: the smallest singular value of T_{conj s} and the two
/// smallest of T_{conj(t s)}.
struct CanonicalEvidence {
  Verdict verdict = Verdict::undecided;
  std::vector<std::size_t> sizes;
  std::vector<double> sigma_min_s;
  std::vector<double> sigma0_ts;
  std::vector<double> sigma1_ts;
  double tol_lo = 1e-6;
  double tol_hi = 1e-3;
};

/// Canonical at a size when T_{conj s} has no singular value below tol_hi
/// and T_{conj(t s)} has exactly one below tol_lo with the next above
/// tol_hi.  Non-canonical at a size when T_{conj s} has a singular value
/// below tol_lo, or T_{conj(t s)} has two, or none below tol_hi.  A verdict
/// other than undecided needs the same answer at every size.
CanonicalEvidence canonical_test(const GridFunction& s,
                                 const std::vector<std::size_t>& sizes = {32, 64, 128},
                                 double tol_lo = 1e-6, double tol_hi = 1e-3);

struct ScatteringData {
  GridFunction s;
  FourierSeries shat;
  int index = 0;
  CanonicalEvidence evidence;
  Verdict verdict() const { return evidence.verdict; }
};

/// Wraps a unimodular symbol: coefficients, winding index, canonicity.
ScatteringData describe_scattering(const GridFunction& s);

/// s = -conj(alpha_{-1}) D / conj(D).
ScatteringData scattering_function(const VerblunskyData& v, std::size_t grid_size = kDefaultGrid);

/// s_E = -(psi / conj psi) (E + conj phi) / (1 + E phi) at level 0 of the chain.
GridFunction scattering_family(const SchurChain& chain, const GridFunction& E);

struct InverseResult {
  VerblunskyData data;
  SpectralData spectral;
  CanonicalEvidence evidence;
  double match = 0.0;  // max |s_reconstructed - s| on the grid
};

/// Canonical, index-zero symbols only; anything else raises non_canonical.
/// The Schur algorithm runs `depth` steps and trailing |alpha| < 1e-9 are dropped.
InverseResult inverse_scattering(const GridFunction& s, std::size_t depth = 32);

/// The reconstruction of inverse_scattering without the canonicity gate
/// (the index-zero check stays).  `evidence` is left empty.  For diagnostics
/// on symbols whose canonicity the finite sections cannot resolve.
InverseResult reconstruct_unchecked(const GridFunction& s, std::size_t depth = 32);

struct FamilyMember {
  cplx tau;
  cplx alpha_minus_one;
  Poly D;  // (1 + tau kappa z^N) / sqrt 2
  GridFunction w;
  VerblunskyData data;  // first `depth` coefficients of w dm
  double reproduction = 0.0;     // max |-conj(alpha_{-1}) D / conj D - s| where D != 0
  std::size_t excluded = 0;      // grid points with |D|^2 < 1e-12
};

/// For s = kappa t^N (N >= 1): one spectral solution per unimodular tau,
/// alpha_{-1} = -tau, D_tau = (1 + tau kappa z^N) / sqrt 2.
std::vector<FamilyMember> noncanonical_family(const GridFunction& s, const std::vector<cplx>& taus,
                                              std::size_t depth = 32);

}  // namespace cmvscat
