#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmvscat/circle.hpp"
#include "cmvscat/error.hpp"

using namespace cmvscat;

namespace {

constexpr double kPi = std::numbers::pi;

// Random samples; with `band` > 0 a random real trigonometric polynomial of that degree.
GridFunction random_band(std::size_t m, unsigned seed, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  FourierSeries c(m);
  c.at(0) = n(rng);
  for (int k = 1; k <= band; ++k) {
    c.at(k) = {n(rng), n(rng)};
    c.at(-k) = std::conj(c[k]);
  }
  return synthesize(c).map([](cplx z) { return cplx(z.real(), 0.0); });
}

GridFunction random_grid(std::size_t m, unsigned seed, bool real = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> v(m);
  for (cplx& z : v) z = {n(rng), real ? 0.0 : n(rng)};
  return GridFunction(std::move(v));
}

GridFunction cosine(std::size_t m, double a) {
  return GridFunction::sample(m, [a](cplx t) { return cplx(2.0 * a * t.real(), 0.0); });
}

}  // namespace

TEST_CASE("grid construction rejects bad sizes and non-finite samples") {
  CHECK_THROWS_AS(GridFunction(std::vector<cplx>(12)), Error);
  CHECK_THROWS_AS(GridFunction(std::vector<cplx>(8)), Error);
  std::vector<cplx> v(16);
  v[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction{v}, Error);
  CHECK(GridFunction(std::vector<cplx>(16)).size() == 16);
}

TEST_CASE("analysis of constants and pure harmonics") {
  const FourierSeries one = analyze(GridFunction::constant(64, 1.0));
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  for (int n = one.min_index(); n <= one.max_index(); ++n)
    if (n != 0) CHECK(std::abs(one[n]) < 1e-15);

  const FourierSeries t = analyze(GridFunction::sample(64, [](cplx z) { return z; }));
  CHECK(std::abs(t[1] - 1.0) < 1e-14);
  CHECK(std::abs(t[0]) < 1e-14);
  CHECK(std::abs(t[-1]) < 1e-14);
  CHECK(t[40] == cplx(0.0));  // outside the represented range
}

TEST_CASE("analysis agrees with the direct Fourier sum and round-trips") {
  const std::size_t m = 256;
  const GridFunction f = random_grid(m, 3);
  const FourierSeries c = analyze(f);
  double worst = 0.0;
  for (int n = c.min_index(); n <= c.max_index(); ++n) {
    cplx direct = 0.0;
    for (std::size_t j = 0; j < m; ++j) direct += f[j] * std::polar(1.0, -2.0 * kPi * n * double(j) / double(m));
    worst = std::max(worst, std::abs(c[n] - direct / double(m)));
  }
  CHECK(worst < 1e-13);
  CHECK(max_abs_diff(synthesize(c), f) < 1e-12 * f.sup_norm());
  const FourierSeries again = analyze(synthesize(c));
  double d = 0.0;
  for (int n = c.min_index(); n <= c.max_index(); ++n) d = std::max(d, std::abs(again[n] - c[n]));
  CHECK(d < 1e-12);
}

TEST_CASE("projections split the index set") {
  const std::size_t m = 32;
  const FourierSeries c = analyze(GridFunction::sample(m, [](cplx t) { return 1.0 / t + 3.0 + t; }));
  const FourierSeries plus = project(c, Part::plus);
  const FourierSeries minus = project(c, Part::minus);
  CHECK(std::abs(plus[0] - 3.0) < 1e-14);
  CHECK(std::abs(plus[1] - 1.0) < 1e-14);
  CHECK(plus[-1] == cplx(0.0));
  CHECK(std::abs(minus[-1] - 1.0) < 1e-14);
  CHECK(minus[0] == cplx(0.0));
  CHECK(project(c, Part::strictly_positive)[0] == cplx(0.0));

  const FourierSeries r = analyze(random_grid(m, 5));
  const FourierSeries sum = project(r, Part::plus) + project(r, Part::minus);
  for (int n = r.min_index(); n <= r.max_index(); ++n) CHECK(sum[n] == r[n]);
}

TEST_CASE("harmonic conjugate") {
  const std::size_t m = 128;
  const GridFunction u = cosine(m, 1.0);
  const GridFunction expect = GridFunction::sample(m, [](cplx t) { return cplx(2.0 * t.imag(), 0.0); });
  CHECK(max_abs_diff(harmonic_conjugate(u), expect) < 1e-13);
  CHECK(harmonic_conjugate(GridFunction::constant(m, 4.0)).sup_norm() < 1e-14);

  const GridFunction r = random_band(m, 9, 60);
  const GridFunction twice = harmonic_conjugate(harmonic_conjugate(r));
  const GridFunction target = GridFunction::constant(m, r.mean()) - r;
  CHECK(max_abs_diff(twice, target) < 1e-10);
  CHECK(std::abs(harmonic_conjugate(r).mean()) < 1e-13);
  CHECK(harmonic_conjugate(r).max_imag() < 1e-13);
  CHECK_THROWS_AS(harmonic_conjugate(random_grid(m, 1)), Error);
  // The Nyquist mode has no conjugate partner and is dropped.
  const GridFunction nyquist = GridFunction::sample(m, [m](cplx t) { return std::pow(t, int(m / 2)); });
  CHECK(harmonic_conjugate(nyquist).sup_norm() < 1e-13);
}

TEST_CASE("outer function from a modulus") {
  const std::size_t m = 1024;
  const FourierSeries one = outer_from_modulus_squared(GridFunction::constant(m, 1.0));
  CHECK(std::abs(one[0] - 1.0) < 1e-14);
  CHECK(std::abs(one[3]) < 1e-14);

  // |1 - t/2|^2 has the outer factor 1 - z/2.
  const GridFunction w = GridFunction::sample(m, [](cplx t) { return cplx(std::norm(1.0 - t / 2.0), 0.0); });
  const FourierSeries o = outer_from_modulus_squared(w);
  CHECK(std::abs(o[0] - 1.0) < 1e-12);
  CHECK(std::abs(o[1] + 0.5) < 1e-12);
  CHECK(std::abs(o[2]) < 1e-12);
  CHECK(o.negative_part_max() == 0.0);

  // (3/4)/|1 - t/2|^2: O = (sqrt3/2)/(1 - z/2), O(0) = rho_0.
  const GridFunction w2 = GridFunction::sample(m, [](cplx t) { return cplx(0.75 / std::norm(1.0 - t / 2.0), 0.0); });
  const FourierSeries o2 = outer_from_modulus_squared(w2);
  CHECK(std::abs(o2[0] - std::sqrt(3.0) / 2.0) < 1e-12);
  for (int n = 1; n < 8; ++n) CHECK(std::abs(o2[n] - std::sqrt(3.0) / 2.0 * std::pow(0.5, n)) < 1e-12);
  const GridFunction back = synthesize(o2);
  double rel = 0.0;
  for (std::size_t j = 0; j < m; ++j) rel = std::max(rel, std::abs(std::norm(back[j]) - w2[j].real()) / w2[j].real());
  CHECK(rel < 1e-8);

  CHECK_THROWS_AS(outer_from_modulus_squared(GridFunction::sample(m, [](cplx t) { return cplx(std::norm(1.0 - t), 0.0); })),
                  Error);
}

TEST_CASE("winding index") {
  const std::size_t m = 512;
  const WindingDecomposition a = winding_index(GridFunction::constant(m, -1.0));
  CHECK(a.index == 0);
  CHECK(std::abs(a.constant + 1.0) < 1e-12);
  CHECK(a.phase.sup_norm() < 1e-12);

  const WindingDecomposition b = winding_index(GridFunction::sample(m, [](cplx t) { return -t; }));
  CHECK(b.index == 1);
  CHECK(std::abs(b.constant + 1.0) < 1e-13);
  CHECK(b.phase.sup_norm() < 1e-12);

  // The phase increment of exp(i 0.6 cos) integrates to zero.
  const GridFunction s = GridFunction::sample(m, [](cplx t) { return std::polar(1.0, 0.6 * t.real()); });
  const WindingDecomposition c = winding_index(s);
  CHECK(c.index == 0);
  const GridFunction rebuilt = c.phase.map([&](cplx g) { return c.constant * std::polar(1.0, g.real()); });
  CHECK(max_abs_diff(rebuilt, s) < 1e-8);
  CHECK(std::abs(c.phase.mean()) < 1e-13);

  CHECK(winding_index(GridFunction::sample(m, [](cplx t) { return t * t * t / std::conj(t); })).index == 4);
  CHECK_THROWS_AS(winding_index(GridFunction::constant(m, 2.0)), Error);
}

TEST_CASE("Besov seminorm") {
  const std::size_t m = 64;
  CHECK(std::abs(besov_seminorm(analyze(cosine(m, 1.0))) - 2.0) < 1e-13);
  CHECK(besov_seminorm(analyze(GridFunction::constant(m, 7.0))) < 1e-25);
  const GridFunction r = random_band(m, 11, 20);
  CHECK(std::abs(besov_seminorm(analyze(r)) - besov_seminorm(analyze(harmonic_conjugate(r)))) <
        1e-12 * besov_seminorm(analyze(r)));
}
