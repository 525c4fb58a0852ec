#pragma once

// The cmvscat command line: forward, inverse, verify, classify, example.
// Exit codes: 0 ok, 1 I/O, 2 validation or degeneracy, 3 non-canonical guard.
// Artifacts are staged in memory and written only when a command succeeds
// (verify also writes its report when a check fails).

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmvscat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNonCanonical = 3;

/// "1", "-i", "0.5", "2.5i", "0.3-0.4i", comma separated.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);
std::complex<double> parse_complex(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmvscat::cli
