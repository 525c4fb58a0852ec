#pragma once

// Function algebra on a uniform grid of the unit circle.
//
// A GridFunction holds M samples at t_j = exp(2 pi i j / M); a FourierSeries
// holds the M coefficients c_n, n in [-M/2, M/2), of the same trigonometric
// polynomial.  Integration against normalized arc length is the grid mean.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cmvscat {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultGrid = 4096;

bool is_power_of_two(std::size_t n);

class GridFunction {
 public:
  GridFunction() = default;
  /// Throws invalid_input unless size is a power of two >= 16 and all samples are finite.
  explicit GridFunction(std::vector<cplx> samples);

  /// Samples f(t_j) for a callable f: cplx -> cplx.
  template <class F>
  static GridFunction sample(std::size_t grid_size, F&& f) {
    std::vector<cplx> v(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) v[j] = f(node(grid_size, j));
    return GridFunction(std::move(v));
  }
  static GridFunction constant(std::size_t grid_size, cplx value);

  static cplx node(std::size_t grid_size, std::size_t j);
  static double theta(std::size_t grid_size, std::size_t j);

  std::size_t size() const { return samples_.size(); }
  std::span<const cplx> samples() const { return samples_; }
  cplx operator[](std::size_t j) const { return samples_[j]; }
  cplx node(std::size_t j) const { return node(size(), j); }

  cplx mean() const;
  double sup_norm() const;
  /// L2(m) norm, i.e. root mean square of the samples.
  double l2_norm() const;
  /// Largest |Im f| over the grid.
  double max_imag() const;

  GridFunction conj() const;

  template <class F>
  GridFunction map(F&& f) const {
    std::vector<cplx> v(samples_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(samples_[j]);
    return GridFunction(std::move(v));
  }

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(const GridFunction& o);
  GridFunction& operator/=(const GridFunction& o);
  GridFunction& operator*=(cplx c);

 private:
  std::vector<cplx> samples_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, const GridFunction& b);
GridFunction operator/(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, cplx c);
GridFunction operator*(cplx c, GridFunction a);

/// Max pointwise |a - b|.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

class FourierSeries {
 public:
  FourierSeries() = default;
  /// Zero series on a grid of the given size.
  explicit FourierSeries(std::size_t grid_size);

  std::size_t grid_size() const { return coeffs_.size(); }
  int min_index() const { return -static_cast<int>(coeffs_.size() / 2); }
  int max_index() const { return static_cast<int>(coeffs_.size() / 2) - 1; }
  bool contains(int n) const { return n >= min_index() && n <= max_index(); }

  /// Coefficient c_n; zero when n is outside the represented range.
  cplx operator[](int n) const;
  cplx& at(int n);

  /// Storage in FFT order: slot k holds c_k for k < M/2 and c_{k-M} otherwise.
  std::span<const cplx> raw() const { return coeffs_; }
  std::span<cplx> raw() { return coeffs_; }

  /// Evaluates sum_n c_n z^n for |z| = 1 or, when the series is analytic, inside the disk.
  cplx evaluate(cplx z) const;

  /// Max |c_n| over n < 0.
  double negative_part_max() const;
  /// Square root of sum of |c_n|^2 over n < 0.
  double negative_part_norm() const;

 private:
  std::size_t slot(int n) const;
  std::vector<cplx> coeffs_;
};

enum class FourierDirection { analyze, synthesize };

FourierSeries analyze(const GridFunction& f);
GridFunction synthesize(const FourierSeries& c);

enum class Part {
  plus,               // n >= 0
  minus,              // n <= -1
  strictly_positive,  // n >= 1
};

FourierSeries project(const FourierSeries& c, Part part);

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b);
FourierSeries operator-(const FourierSeries& a, const FourierSeries& b);

/// Conjugate function: c_n -> -i sign(n) c_n.  Input must be real to 1e-10.
GridFunction harmonic_conjugate(const GridFunction& u);

/// Outer function O with |O|^2 = w on the grid and O(0) > 0; returns its
/// Taylor coefficients (zero for n < 0).  Requires w > 1e-12 everywhere.
FourierSeries outer_from_modulus_squared(const GridFunction& w);

/// s = constant * t^index * exp(i phase), phase real with zero mean.
struct WindingDecomposition {
  int index = 0;
  GridFunction phase;
  cplx constant;
};

WindingDecomposition winding_index(const GridFunction& s);

/// sum_n |n| |c_n|^2 over the represented indices.
double besov_seminorm(const FourierSeries& c);

}  // namespace cmvscat
