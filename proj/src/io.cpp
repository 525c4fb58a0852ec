#include "cmvscat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmvscat/error.hpp"

namespace cmvscat {

using nlohmann::json;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

cplx complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::invalid_input, "complex numbers are written as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

VerblunskyData parse_verblunsky_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("alphas") || !j["alphas"].is_array())
    fail(ErrorKind::invalid_input, "expected an object with an \"alphas\" array");
  VerblunskyData v;
  if (j.contains("alpha_minus_one")) v.alpha_minus_one = complex_from(j["alpha_minus_one"]);
  for (const json& a : j["alphas"]) v.alphas.push_back(complex_from(a));
  v.validate();
  return v;
}

std::string verblunsky_json(const VerblunskyData& v) {
  json j;
  j["alpha_minus_one"] = complex_to(v.alpha_minus_one);
  j["alphas"] = json::array();
  for (cplx a : v.alphas) j["alphas"].push_back(complex_to(a));
  return j.dump(2) + "\n";
}

VerblunskyData read_verblunsky(const std::filesystem::path& path) {
  return parse_verblunsky_json(read_text(path));
}

std::string grid_csv(const GridFunction& f) {
  std::string out = "index,theta,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out += std::to_string(j) + "," + format_number(GridFunction::theta(f.size(), j)) + "," +
           format_number(f[j].real()) + "," + format_number(f[j].imag()) + "\n";
  }
  return out;
}

GridFunction parse_grid_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "index,theta,re,im")
    fail(ErrorKind::invalid_input, "grid CSV must start with the header index,theta,re,im");
  std::vector<cplx> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t index = 0;
    double theta = 0.0, re = 0.0, im = 0.0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf%c", &index, &theta, &re, &im, &tail) != 4)
      fail(ErrorKind::invalid_input, "malformed grid CSV row: " + line);
    if (index != samples.size()) fail(ErrorKind::invalid_input, "grid CSV rows must be ordered by index");
    samples.emplace_back(re, im);
  }
  return GridFunction(std::move(samples));
}

GridFunction read_grid_csv(const std::filesystem::path& path) { return parse_grid_csv(read_text(path)); }

std::string matrix_csv(const Eigen::MatrixXcd& a, double drop) {
  std::string out = "row,col,re,im\n";
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const cplx z = a(r, c);
      if (std::abs(z) <= drop) continue;
      out += std::to_string(r) + "," + std::to_string(c) + "," + format_number(z.real()) + "," +
             format_number(z.imag()) + "\n";
    }
  return out;
}

}  // namespace cmvscat
