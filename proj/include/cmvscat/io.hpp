#pragma once

// Text formats: VerblunskyData JSON, GridFunction CSV (index,theta,re,im)
// and sparse matrix CSV (row,col,re,im).  Numbers are written with 17
// significant digits so files round-trip exactly.

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "cmvscat/circle.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat {

std::string format_number(double x);

std::string read_text(const std::filesystem::path& path);

/// {"alpha_minus_one": [re, im], "alphas": [[re, im], ...]}; validated.
VerblunskyData parse_verblunsky_json(const std::string& text);
std::string verblunsky_json(const VerblunskyData& v);
VerblunskyData read_verblunsky(const std::filesystem::path& path);

std::string grid_csv(const GridFunction& f);
GridFunction parse_grid_csv(const std::string& text);
GridFunction read_grid_csv(const std::filesystem::path& path);

/// Entries with modulus <= drop are skipped.
std::string matrix_csv(const Eigen::MatrixXcd& a, double drop = 0.0);

}  // namespace cmvscat
