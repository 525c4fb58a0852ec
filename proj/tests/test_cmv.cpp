#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "cmvscat/cmv.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/generators.hpp"
#include "cmvscat/scattering.hpp"

using namespace cmvscat;

namespace {

VerblunskyData sample_data() {
  VerblunskyData v;
  v.alpha_minus_one = std::polar(1.0, 0.7);
  v.alphas = {cplx(0.3, 0.2), cplx(-0.1, 0.4), cplx(0.25, -0.3)};
  return v;
}

}  // namespace

TEST_CASE("free CMV matrix shifts e0 to e2") {
  const CmvMatrix a = build_cmv(VerblunskyData{}, 6);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(6);
  e0(0) = 1.0;
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(6);
  e2(2) = 1.0;
  CHECK((a.matrix * e0 - e2).norm() < 1e-15);
  CHECK_THROWS_AS(build_cmv(VerblunskyData{}, 5), Error);
  CHECK_THROWS_AS(build_cmv(VerblunskyData{}, 2), Error);
}

TEST_CASE("interior unitarity, bandwidth and cyclicity") {
  VerblunskyData bs;
  bs.alphas = {0.5};
  CHECK(interior_unitarity_residual(build_cmv(bs, 16)) < 1e-12);

  const VerblunskyData v = sample_data();
  const CmvMatrix a = build_cmv(v, 20);
  CHECK(interior_unitarity_residual(a) < 1e-12);
  // The whole truncation is unitary because the last odd block is cut to 1.
  CHECK((a.matrix.adjoint() * a.matrix - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index r = 0; r < 20; ++r)
    for (Eigen::Index c = 0; c < 20; ++c)
      if (std::abs(r - c) > 2) CHECK(a.matrix(r, c) == cplx(0.0));
  const CyclicityResidual cr = cyclicity_residual(a, v);
  CHECK(cr.forward < 1e-12);
  CHECK(cr.backward < 1e-12);
  CHECK(cr.initial < 1e-12);
}

TEST_CASE("Caratheodory function by two routes") {
  const std::array<cplx, 4> pts{cplx(0.0), cplx(0.9, 0.0), cplx(0.0, 0.5), cplx(-0.6, 0.6)};
  for (cplx r : caratheodory(VerblunskyData{}, pts)) CHECK(std::abs(r - 1.0) < 1e-15);

  VerblunskyData bs;
  bs.alphas = {0.5};
  const std::array<cplx, 1> half{cplx(0.5)};
  CHECK(std::abs(caratheodory(bs, half)[0] - 5.0 / 3.0) < 1e-14);
  CHECK(std::abs(caratheodory_resolvent(bs, half)[0] - 5.0 / 3.0) < 1e-8);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 5; ++c) {
    VerblunskyData v;
    v.alpha_minus_one = std::polar(1.0, 6.283 * u(rng));
    for (int k = 0; k < 6; ++k) v.alphas.push_back(std::polar(0.8 * u(rng), 6.283 * u(rng)));
    const std::vector<cplx> s = caratheodory(v, pts);
    const std::vector<cplx> r = caratheodory_resolvent(v, pts);
    CHECK(std::abs(s[0] - 1.0) < 1e-10);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      CHECK(std::abs(s[k] - r[k]) < 1e-6);
      CHECK(s[k].real() > -1e-10);
    }
  }
  const std::array<cplx, 1> far{cplx(0.95)};
  CHECK_THROWS_AS(caratheodory_resolvent(bs, far), Error);
}

TEST_CASE("spectral density") {
  CHECK(max_abs_diff(spectral_density(VerblunskyData{}, 256), GridFunction::constant(256, 1.0)) < 1e-15);
  VerblunskyData bs;
  bs.alphas = {0.5};
  const GridFunction w = spectral_density(bs, 256);
  CHECK(std::abs(w[0] - 3.0) < 1e-13);
  CHECK(std::abs(w[128] - 1.0 / 3.0) < 1e-13);
  CHECK(std::abs(w.mean() - 1.0) < 1e-13);

  const VerblunskyData v = sample_data();
  const GridFunction wv = spectral_density(v);
  CHECK(std::abs(wv.mean() - 1.0) < 1e-8);
  const SchurChain ch = chain_from_data(v, v.support());
  const GridFunction d = szego_from_chain(ch, v.alpha_minus_one);
  CHECK(max_abs_diff(wv, d.map([](cplx z) { return cplx(std::norm(z), 0.0); })) < 1e-8);

  CHECK(std::abs(spectral_density(jacobi_data(0.25, 0.25, 256)).mean() - 1.0) < 1e-6);
}

TEST_CASE("orthonormal polynomials") {
  const std::vector<Poly> free = opuc_polynomials(VerblunskyData{}, 4);
  CHECK(poly_max_diff(free[0], Poly{1.0}) == 0.0);
  CHECK(poly_max_diff(free[3], Poly{0.0, 0.0, 0.0, 1.0}) < 1e-15);

  VerblunskyData bs;
  bs.alphas = {0.5};
  const std::vector<Poly> p = opuc_polynomials(bs, 3);
  // Gram-Schmidt of {1, z} under (3/4)/|1 - t/2|^2: <z, 1> = 1/2, |z - 1/2|^2 = 3/4.
  const double r = std::sqrt(3.0) / 2.0;
  CHECK(poly_max_diff(p[1], Poly{-0.5 / r, 1.0 / r}) < 1e-14);

  const VerblunskyData v = sample_data();
  const std::vector<Poly> q = opuc_polynomials(v, 10);
  const Eigen::MatrixXcd g = opuc_gram(q, spectral_density(v));
  CHECK((g - Eigen::MatrixXcd::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-7);
  for (std::size_t n = 0; n < q.size(); ++n) CHECK(q[n].size() == n + 1);
}

TEST_CASE("Levinson recursion reads the coefficients back from the weight") {
  const VerblunskyData v = sample_data();
  const std::vector<cplx> a = verblunsky_from_weight(analyze(spectral_density(v)), 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(a[k] - v.alpha(k)) < 1e-12);
}

TEST_CASE("generalized eigenvectors") {
  const std::vector<EigenRow> free = generalized_eigenrows(VerblunskyData{}, 5, 256);
  for (const EigenRow& r : free) {
    CHECK(r.r_even < 1e-14);
    CHECK(r.r_odd < 1e-14);
  }
  const VerblunskyData v = sample_data();
  const std::array<std::size_t, 3> idx{3, 700, 2000};
  CHECK(eigen_equation_residual(v, 20, idx) < 1e-6);

  const std::vector<EigenRow> geo = generalized_eigenrows(geometric_data(0.5, 12), 20);
  CHECK(geo[20].r_even < 1e-3);
  CHECK(geo[20].r_odd < 1e-3);
}
