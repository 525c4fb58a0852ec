#include <doctest.h>

#include "cmvscat/error.hpp"
#include "cmvscat/generators.hpp"
#include "cmvscat/io.hpp"

using namespace cmvscat;

TEST_CASE("Verblunsky JSON round trip and validation") {
  VerblunskyData v;
  v.alpha_minus_one = std::polar(1.0, 0.1);
  v.alphas = {cplx(0.1, -0.2), cplx(1.0 / 3.0, 0.0)};
  const VerblunskyData back = parse_verblunsky_json(verblunsky_json(v));
  CHECK(back.alpha_minus_one == v.alpha_minus_one);
  CHECK(back.alphas == v.alphas);

  CHECK(parse_verblunsky_json(R"({"alphas": []})").alpha_minus_one == cplx(-1.0));
  CHECK_THROWS_AS(parse_verblunsky_json("{"), Error);
  CHECK_THROWS_AS(parse_verblunsky_json(R"({"alphas": [[1.5, 0]]})"), Error);
  CHECK_THROWS_AS(parse_verblunsky_json(R"({"alphas": [[0.5]]})"), Error);
  CHECK_THROWS_AS(parse_verblunsky_json(R"({"alpha_minus_one": [0.5, 0], "alphas": []})"), Error);
  try {
    read_verblunsky("/nonexistent/input.json");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("grid CSV round trip") {
  const GridFunction f = GridFunction::sample(32, [](cplx t) { return t / 3.0 + 0.1; });
  const std::string text = grid_csv(f);
  CHECK(text.rfind("index,theta,re,im\n", 0) == 0);
  const GridFunction back = parse_grid_csv(text);
  CHECK(max_abs_diff(back, f) == 0.0);
  CHECK_THROWS_AS(parse_grid_csv("i,t,r,m\n"), Error);
  CHECK_THROWS_AS(parse_grid_csv("index,theta,re,im\n1,0,1,0\n"), Error);
  CHECK_THROWS_AS(parse_grid_csv("index,theta,re,im\n0,0,x,0\n"), Error);
}

TEST_CASE("sparse matrix CSV") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a(1, 2) = cplx(0.5, -1.0);
  CHECK(matrix_csv(a, 0.0) == "row,col,re,im\n1,2,0.5,-1\n");
  CHECK(format_number(0.1) == "0.10000000000000001");
}
