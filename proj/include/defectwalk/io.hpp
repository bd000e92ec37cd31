#pragma once

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "defectwalk/lattice.hpp"

namespace defectwalk {

inline constexpr std::string_view library_version = "1.0.0";

/// 17 significant digits: parses back to the identical double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// "# defectwalk <version> key=value key=value ..."
inline std::string metadata_line(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string line = "# defectwalk " + std::string(library_version);
  for (const auto& [k, v] : fields) line += " " + k + "=" + v;
  return line;
}

/// key=value tokens of a comment line; tokens without '=' are skipped.
inline std::map<std::string, std::string> parse_metadata(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos && eq > 0) out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

inline void write_wavefunction_csv(std::ostream& out, const WaveFunction<>& psi) {
  out << "x,reL,imL,reR,imR\n";
  for (long x = -psi.window(); x <= psi.window(); ++x) {
    const auto& s = psi.at(x);
    out << x << ',' << format_double(s.left.real()) << ',' << format_double(s.left.imag()) << ','
        << format_double(s.right.real()) << ',' << format_double(s.right.imag()) << '\n';
  }
}

struct WaveFunctionFile {
  WaveFunction<> psi{1};
  /// key=value pairs gathered from every comment line.
  std::map<std::string, std::string> metadata;
};

/// Reads the format written by write_wavefunction_csv, with optional
/// '#'-prefixed metadata lines anywhere. Sites must be contiguous and
/// symmetric about the origin.
inline WaveFunctionFile read_wavefunction_csv(std::istream& in) {
  WaveFunctionFile file;
  std::vector<std::pair<long, Spinor<Complex>>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (auto& [k, v] : parse_metadata(std::string_view(line).substr(1))) file.metadata[k] = v;
      continue;
    }
    if (!header_seen) {
      if (line != "x,reL,imL,reR,imR") throw DomainError("unexpected wave function CSV header: " + line);
      header_seen = true;
      continue;
    }
    long x = 0;
    double a = 0, b = 0, c = 0, d = 0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf%c", &x, &a, &b, &c, &d, &tail) != 5) {
      throw DomainError("malformed wave function CSV row: " + line);
    }
    rows.push_back({x, {Complex(a, b), Complex(c, d)}});
  }
  if (rows.empty()) throw DomainError("wave function CSV has no rows");
  const long window = static_cast<long>(rows.size() / 2);
  if (rows.size() % 2 == 0 || window < 1) throw DomainError("wave function CSV must cover [-N, N] with N >= 1");
  WaveFunction<> psi(window);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != -window + static_cast<long>(i)) throw DomainError("wave function CSV sites are not contiguous");
    psi.at(rows[i].first) = rows[i].second;
  }
  file.psi = std::move(psi);
  return file;
}

}  // namespace defectwalk
