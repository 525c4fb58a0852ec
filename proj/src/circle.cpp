#include "cmvscat/circle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "cmvscat/error.hpp"

namespace cmvscat {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created once per (size, sign) with FFTW_ESTIMATE, which makes the
// transform (and hence every result) deterministic across runs.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> in(n), out(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<cplx>& in, std::vector<cplx>& out, int sign) {
  fftw_plan p = PlanCache::instance().get(in.size(), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b)
    fail(ErrorKind::invalid_input,
         "grid size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_grid_size(std::size_t m) {
  if (m < 16 || !is_power_of_two(m))
    fail(ErrorKind::invalid_input,
         "grid size must be a power of two >= 16, got " + std::to_string(m));
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------- GridFunction

GridFunction::GridFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
  require_grid_size(samples_.size());
  for (const cplx& z : samples_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::invalid_input, "grid function has non-finite samples");
}

GridFunction GridFunction::constant(std::size_t grid_size, cplx value) {
  return GridFunction(std::vector<cplx>(grid_size, value));
}

double GridFunction::theta(std::size_t grid_size, std::size_t j) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size);
}

cplx GridFunction::node(std::size_t grid_size, std::size_t j) {
  return std::polar(1.0, theta(grid_size, j));
}

cplx GridFunction::mean() const {
  cplx acc = 0.0;
  for (const cplx& z : samples_) acc += z;
  return acc / static_cast<double>(samples_.size());
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (const cplx& z : samples_) m = std::max(m, std::abs(z));
  return m;
}

double GridFunction::l2_norm() const {
  double acc = 0.0;
  for (const cplx& z : samples_) acc += std::norm(z);
  return std::sqrt(acc / static_cast<double>(samples_.size()));
}

double GridFunction::max_imag() const {
  double m = 0.0;
  for (const cplx& z : samples_) m = std::max(m, std::abs(z.imag()));
  return m;
}

GridFunction GridFunction::conj() const {
  return map([](cplx z) { return std::conj(z); });
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_size(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) samples_[j] += o.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_size(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) samples_[j] -= o.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& o) {
  require_same_size(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) samples_[j] *= o.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator/=(const GridFunction& o) {
  require_same_size(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) samples_[j] /= o.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(cplx c) {
  for (cplx& z : samples_) z *= c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
GridFunction operator/(GridFunction a, const GridFunction& b) { return a /= b; }
GridFunction operator*(GridFunction a, cplx c) { return a *= c; }
GridFunction operator*(cplx c, GridFunction a) { return a *= c; }

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  require_same_size(a.size(), b.size());
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// --------------------------------------------------------------- FourierSeries

FourierSeries::FourierSeries(std::size_t grid_size) : coeffs_(grid_size, cplx(0.0)) {
  require_grid_size(grid_size);
}

std::size_t FourierSeries::slot(int n) const {
  return n >= 0 ? static_cast<std::size_t>(n)
                : coeffs_.size() - static_cast<std::size_t>(-n);
}

cplx FourierSeries::operator[](int n) const {
  return contains(n) ? coeffs_[slot(n)] : cplx(0.0);
}

cplx& FourierSeries::at(int n) {
  if (!contains(n))
    fail(ErrorKind::invalid_input, "Fourier index " + std::to_string(n) + " outside grid range");
  return coeffs_[slot(n)];
}

cplx FourierSeries::evaluate(cplx z) const {
  // Horner on the analytic part, then on the anti-analytic part in 1/z.
  cplx plus = 0.0;
  for (int n = max_index(); n >= 0; --n) plus = plus * z + (*this)[n];
  cplx minus = 0.0;
  if (negative_part_max() > 0.0) {
    const cplx zi = 1.0 / z;
    for (int n = min_index(); n <= -1; ++n) minus = minus * zi + (*this)[n];
    minus *= zi;
  }
  return plus + minus;
}

double FourierSeries::negative_part_max() const {
  double m = 0.0;
  for (int n = min_index(); n < 0; ++n) m = std::max(m, std::abs((*this)[n]));
  return m;
}

double FourierSeries::negative_part_norm() const {
  double acc = 0.0;
  for (int n = min_index(); n < 0; ++n) acc += std::norm((*this)[n]);
  return std::sqrt(acc);
}

FourierSeries analyze(const GridFunction& f) {
  std::vector<cplx> in(f.samples().begin(), f.samples().end());
  FourierSeries c(f.size());
  std::vector<cplx> out(f.size());
  execute(in, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(f.size());
  auto raw = c.raw();
  for (std::size_t k = 0; k < out.size(); ++k) raw[k] = out[k] * scale;
  return c;
}

GridFunction synthesize(const FourierSeries& c) {
  std::vector<cplx> in(c.raw().begin(), c.raw().end());
  std::vector<cplx> out(c.grid_size());
  execute(in, out, FFTW_BACKWARD);
  return GridFunction(std::move(out));
}

FourierSeries project(const FourierSeries& c, Part part) {
  FourierSeries r(c.grid_size());
  const int lo = part == Part::minus ? c.min_index() : (part == Part::plus ? 0 : 1);
  const int hi = part == Part::minus ? -1 : c.max_index();
  for (int n = lo; n <= hi; ++n) r.at(n) = c[n];
  return r;
}

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
  require_same_size(a.grid_size(), b.grid_size());
  FourierSeries r(a.grid_size());
  for (std::size_t k = 0; k < a.grid_size(); ++k) r.raw()[k] = a.raw()[k] + b.raw()[k];
  return r;
}

FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
  require_same_size(a.grid_size(), b.grid_size());
  FourierSeries r(a.grid_size());
  for (std::size_t k = 0; k < a.grid_size(); ++k) r.raw()[k] = a.raw()[k] - b.raw()[k];
  return r;
}

GridFunction harmonic_conjugate(const GridFunction& u) {
  if (u.max_imag() > 1e-10 * std::max(1.0, u.sup_norm()))
    fail(ErrorKind::invalid_input, "harmonic conjugate requires a real-valued function");
  FourierSeries c = analyze(u);
  const cplx mi(0.0, -1.0);
  FourierSeries r(c.grid_size());
  // The Nyquist index -M/2 has no partner at +M/2; drop it so the output stays real.
  for (int n = c.min_index() + 1; n <= c.max_index(); ++n)
    if (n != 0) r.at(n) = mi * (n > 0 ? 1.0 : -1.0) * c[n];
  return synthesize(r).map([](cplx z) { return cplx(z.real(), 0.0); });
}

FourierSeries outer_from_modulus_squared(const GridFunction& w) {
  const double scale = std::max(1.0, w.sup_norm());
  if (w.max_imag() > 1e-10 * scale)
    fail(ErrorKind::invalid_input, "weight must be real-valued");
  for (const cplx& z : w.samples())
    if (!(z.real() > 1e-12)) fail(ErrorKind::degenerate, "weight vanishes on grid");

  FourierSeries c = analyze(w.map([](cplx z) { return cplx(std::log(z.real()), 0.0); }));
  FourierSeries half(c.grid_size());
  half.at(0) = 0.5 * c[0].real();
  for (int n = 1; n <= c.max_index(); ++n) half.at(n) = c[n];
  FourierSeries o = analyze(synthesize(half).map([](cplx z) { return std::exp(z); }));
  for (int n = o.min_index(); n < 0; ++n) o.at(n) = 0.0;
  return o;
}

WindingDecomposition winding_index(const GridFunction& s) {
  for (const cplx& z : s.samples())
    if (std::abs(std::abs(z) - 1.0) >= 1e-8)
      fail(ErrorKind::invalid_input, "winding index requires a unimodular function");

  const std::size_t m = s.size();
  std::vector<double> phase(m);
  phase[0] = std::arg(s[0]);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const cplx next = s[(j + 1) % m];
    const double step = std::arg(next * std::conj(s[j]));
    if (std::abs(step) >= std::numbers::pi * (1.0 - 1e-12))
      fail(ErrorKind::invalid_input, "phase jump of pi between grid points; refine the grid");
    total += step;
    if (j + 1 < m) phase[j + 1] = phase[j] + step;
  }
  const int index = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));

  std::vector<cplx> g(m);
  double mean = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double h = phase[j] - index * GridFunction::theta(m, j);
    g[j] = h;
    mean += h;
  }
  mean /= static_cast<double>(m);
  for (cplx& z : g) z -= mean;
  return {index, GridFunction(std::move(g)), std::polar(1.0, mean)};
}

double besov_seminorm(const FourierSeries& c) {
  double acc = 0.0;
  for (int n = c.min_index(); n <= c.max_index(); ++n) acc += std::abs(n) * std::norm(c[n]);
  return acc;
}

}  // namespace cmvscat
