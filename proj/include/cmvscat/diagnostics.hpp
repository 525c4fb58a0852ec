#pragma once

// Evidence for the Helson-Szego (A2) and Golinskii-Ibragimov classes.  Every
// quantity here is a finite surrogate of an asymptotic property, so the
// report carries traces and labelled evidence, never a membership verdict.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/scattering.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

/// Dyadic arc family of depth d: all M arcs of M / 2^d consecutive grid
/// points.  `sup` is the largest <w>_I <1/w>_I over that family, `running`
/// the largest over depths 0..d.
struct A2Level {
  int depth = 0;
  double sup = 0.0;
  double running = 0.0;
};

/// Requires w > 0 and max_depth <= log2(M) - 2.
std::vector<A2Level> a2_supremum(const GridFunction& w, int max_depth);

struct GiReport {
  std::vector<double> partial_sums;      // S_k = sum_{n<k} n |alpha_n|^2, k = 1..N
  std::vector<double> partial_products;  // P_k = prod_{n<k} rho_n^{n+1}
  double gi_sum = 0.0;
  double widom_product = 1.0;
};

GiReport gi_functional(const VerblunskyData& v);

enum class Evidence { positive, negative, inconclusive };
std::string to_string(Evidence e);

/// Compares the increments of the partial sums over the last two halvings
/// of the data length: increments shrinking by a factor 10 or more (or
/// vanishing) count as stabilizing; increments that do not halve count as
/// non-stabilizing.
Evidence gi_stability(const std::vector<double>& partial_sums);

/// w = C e^{u - v~} (C fixing grid mean 1), s = c e^{i(u~ + v)}, conj(alpha_{-1}) = -c.
/// u and v are made mean-free; sup v - inf v must stay below pi - 1e-6.
struct HsOutput {
  GridFunction w;
  GridFunction s;
  cplx alpha_minus_one;
};

HsOutput hs_generator(const GridFunction& u, const GridFunction& v, cplx c);

struct ClassReport {
  std::string input_kind;
  std::vector<A2Level> a2_trace;
  std::optional<double> besov_logw;
  std::optional<double> besov_phase;
  std::vector<double> gi_partial_sums;
  std::vector<double> widom_partial_products;
  std::vector<std::pair<std::size_t, double>> hankel_norms;
  std::vector<std::pair<std::size_t, double>> linv_norms;
  std::optional<CanonicalEvidence> canonical;
  // Negative on a non-canonical verdict, a Hankel block of norm 1 or an A2
  // trace above kA2Bound; positive when a bounded A2 trace exists (scattering
  // inputs only get one after a successful inverse).
  Evidence hs_evidence = Evidence::inconclusive;
  Evidence gi_evidence = Evidence::inconclusive;
};

inline const std::vector<std::size_t> kReportBlocks{16, 32, 64, 128};
inline constexpr double kA2Bound = 100.0;

ClassReport classify_data(const VerblunskyData& v, std::size_t grid_size = kDefaultGrid);
/// Weight input; the scattering side uses the given anchor.
ClassReport classify_weight(const GridFunction& w, cplx alpha_minus_one = -1.0);
ClassReport classify_scattering(const GridFunction& s);

}  // namespace cmvscat
