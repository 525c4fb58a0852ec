#include <doctest.h>

#include <cmath>
#include <random>

#include "cmvscat/error.hpp"
#include "cmvscat/generators.hpp"
#include "cmvscat/operators.hpp"
#include "cmvscat/scattering.hpp"

using namespace cmvscat;
using Mat = Eigen::MatrixXcd;

namespace {

VerblunskyData bs() {
  VerblunskyData v;
  v.alphas = {0.5};
  return v;
}

double max_entry(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Hankel blocks") {
  const std::size_t m = 1024;
  const FourierSeries minus_t = analyze(GridFunction::sample(m, [](cplx t) { return -t; }));
  CHECK(max_entry(hankel_block(minus_t, 8).matrix) < 1e-15);
  CHECK(max_entry(hankel_block(analyze(GridFunction::constant(m, 0.3)), 8).matrix) < 1e-15);

  const OperatorBlock h = hankel_block(scattering_function(bs()).shat, 8);
  CHECK(h.kind == BlockKind::hankel);
  CHECK(std::abs(h.matrix(0, 0) + 0.5) < 1e-14);
  Mat rest = h.matrix;
  rest(0, 0) = 0.0;
  CHECK(max_entry(rest) < 1e-14);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  FourierSeries r(64);
  for (int k = r.min_index(); k <= r.max_index(); ++k) r.at(k) = {n(rng), n(rng)};
  const Mat hr = hankel_block(r, 6).matrix;
  CHECK(hr(1, 2) == r[-4]);
  CHECK(hr(2, 1) == hr(0, 3));
  CHECK_THROWS_AS(hankel_block(r, 40), Error);
  CHECK(hankel_block(r, 4, 10).matrix.rows() == 10);
}

TEST_CASE("Toeplitz blocks and symbol helpers") {
  const std::size_t m = 64;
  CHECK(max_entry(toeplitz_block(analyze(GridFunction::constant(m, 1.0)), 5).matrix - Mat::Identity(5, 5)) < 1e-15);
  const Mat t = toeplitz_block(analyze(GridFunction::sample(m, [](cplx z) { return z; })), 4).matrix;
  Mat sub = Mat::Zero(4, 4);
  for (int k = 1; k < 4; ++k) sub(k, k - 1) = 1.0;
  CHECK(max_entry(t - sub) < 1e-15);

  FourierSeries g(m);
  g.at(2) = cplx(0.7, -0.1);
  g.at(-3) = cplx(0.2, 0.4);
  const Mat tg = toeplitz_block(g, 5).matrix;
  CHECK(tg(2, 0) == g[2]);
  CHECK(tg(0, 3) == g[-3]);
  const FourierSeries c = conjugate_symbol(g);
  CHECK(c[-2] == std::conj(g[2]));
  CHECK(c[3] == std::conj(g[-3]));
  CHECK(shift_symbol(g, -1)[1] == g[2]);
}

TEST_CASE("transformation operator and its inverse") {
  CHECK(max_entry(transformation_block(VerblunskyData{}, 8).matrix - Mat::Identity(8, 8)) < 1e-15);
  const double r = std::sqrt(0.75);
  Mat d = Mat::Identity(8, 8);
  d(0, 0) = r;
  CHECK(max_entry(transformation_block(bs(), 8).matrix - d) < 1e-13);
  d(0, 0) = 1.0 / r;
  CHECK(max_entry(transformation_inverse_block(bs(), 8).matrix - d) < 1e-13);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 4; ++c) {
    VerblunskyData v;
    v.alpha_minus_one = std::polar(1.0, 6.283 * u(rng));
    for (int k = 0; k < 8; ++k) v.alphas.push_back(std::polar(0.7 * u(rng), 6.283 * u(rng)));
    const OperatorBlock l = transformation_block(v, 64);
    const OperatorBlock li = transformation_inverse_block(v, 64);
    CHECK(l.upper_leakage < 1e-12);
    CHECK(li.upper_leakage < 1e-12);
    CHECK(max_entry(l.matrix * li.matrix - Mat::Identity(64, 64)) < 1e-8);
    CHECK(operator_norm(l.matrix) <= 1.0 + 1e-8);
    for (std::size_t n = 0; n < 12; ++n) {
      double prod = 1.0;
      for (std::size_t k = n; k < v.support(); ++k) prod *= v.rho(k);
      CHECK(std::abs(l.matrix(Eigen::Index(n), Eigen::Index(n)) - prod) < 1e-8);
    }
  }
}

TEST_CASE("GLM equation") {
  CHECK(glm_residual(VerblunskyData{}, 16).residual == 0.0);

  const GlmReport b = glm_residual(bs(), 16);
  Mat expect = Mat::Identity(16, 16);
  expect(0, 0) = 0.75;
  CHECK(b.residual < 1e-8);
  CHECK(max_entry(b.hankel_side - expect) < 1e-12);
  CHECK(max_entry(b.transform_side - expect) < 1e-12);
  CHECK(b.transform_rows == 17);
  CHECK(b.hankel_rows == 64);

  const GlmReport g = glm_residual(geometric_data(0.5, 10), 32);
  CHECK(g.residual < 1e-6);
  CHECK(g.tail_bound < 1e-12);
}

TEST_CASE("Widom formula and trace identity") {
  const WidomReport free = widom_check(VerblunskyData{}, 16);
  CHECK(std::abs(free.determinant - 1.0) < 1e-15);
  CHECK(free.product == 1.0);

  const WidomReport b = widom_check(bs(), 16);
  CHECK(std::abs(b.determinant - 0.75) < 1e-12);
  CHECK(std::abs(b.product - 0.75) < 1e-15);
  CHECK(std::abs(b.trace - 0.25) < 1e-12);
  CHECK(std::abs(b.trace_series - 0.25) < 1e-12);

  const WidomReport g = widom_check(geometric_data(0.5, 20), 64);
  CHECK(g.gap < 1e-6);
  CHECK(std::abs(g.trace - g.trace_series) < 1e-10);
}

TEST_CASE("model space Gram matrices") {
  CHECK(max_entry(model_gram(VerblunskyData{}, 8, ModelBasis::f) - Mat::Identity(8, 8)) < 1e-14);
  for (ModelBasis basis : {ModelBasis::f, ModelBasis::e}) {
    const Mat g4096 = model_gram(bs(), 16, basis, 4096);
    const Mat g8192 = model_gram(bs(), 16, basis, 8192);
    CHECK(max_entry(g4096 - Mat::Identity(16, 16)) < 1e-6);
    CHECK(max_entry(g4096 - g8192) < 1e-10);
  }
}

TEST_CASE("Hankel spectra") {
  const HankelSpectrum c = hankel_spectrum(analyze(GridFunction::constant(1024, -1.0)), 16);
  CHECK(c.symbol.front() < 1e-15);
  CHECK(c.conjugate.front() < 1e-15);
  const HankelSpectrum b = hankel_spectrum(scattering_function(bs()).shat, 16);
  CHECK(std::abs(b.symbol.front() - 0.5) < 1e-14);
  for (double x : b.symbol) CHECK(x <= 1.0 + 1e-8);
}
