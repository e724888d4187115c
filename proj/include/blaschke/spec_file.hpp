#pragma once

#include <cctype>
#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blaschke/blaschke_product.hpp"

namespace blaschke {

/// Raised on malformed product description files; the message names the line
/// and the violated rule.
class spec_parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk description of a finite Blaschke product.  Line-oriented text:
///   name   = <identifier>            (optional)
///   lambda = [<re>, <im>]            (required, exactly once)
///   zero   = [<re>, <im>]            (required, once per zero)
/// '#' starts a comment; blank lines and surrounding whitespace are ignored.
struct product_spec {
  std::optional<std::string> name;
  cplx lambda;
  std::vector<cplx> zeros;

  finite_blaschke_product build() const { return finite_blaschke_product(lambda, zeros); }
};

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline cplx parse_pair(const std::string& v, int lineno) {
  const std::string s = strip(v);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw spec_parse_error("line " + std::to_string(lineno) +
                           ": expected a bracketed pair [re, im], got '" + s + "'");
  const std::string inner = s.substr(1, s.size() - 2);
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos)
    throw spec_parse_error("line " + std::to_string(lineno) + ": pair needs a comma: '" + s + "'");
  try {
    std::size_t used = 0;
    const double re = std::stod(strip(inner.substr(0, comma)), &used);
    const double im = std::stod(strip(inner.substr(comma + 1)), &used);
    return cplx{re, im};
  } catch (const std::exception&) {
    throw spec_parse_error("line " + std::to_string(lineno) + ": unparseable number in '" + s +
                           "'");
  }
}

}  // namespace detail

/// Parses the text format above from a stream.
inline product_spec parse_product_spec(std::istream& in) {
  product_spec spec;
  bool have_lambda = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::strip(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw spec_parse_error("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::strip(line.substr(0, eq));
    const std::string val = detail::strip(line.substr(eq + 1));
    if (key == "name") {
      spec.name = val;
    } else if (key == "lambda") {
      if (have_lambda)
        throw spec_parse_error("line " + std::to_string(lineno) + ": duplicate lambda");
      spec.lambda = detail::parse_pair(val, lineno);
      have_lambda = true;
    } else if (key == "zero") {
      spec.zeros.push_back(detail::parse_pair(val, lineno));
    } else {
      throw spec_parse_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_lambda) throw spec_parse_error("missing required key 'lambda'");
  if (spec.zeros.empty()) throw spec_parse_error("at least one 'zero' line is required");
  return spec;
}

/// Parses a product description file from disk.
inline product_spec load_product_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_parse_error("cannot open '" + path + "'");
  return parse_product_spec(in);
}

/// Writes the format above with full double precision (17 significant digits,
/// round-trip exact).
inline void write_product_spec(std::ostream& out, const product_spec& spec) {
  out.precision(17);
  if (spec.name) out << "name = " << *spec.name << "\n";
  out << "lambda = [" << spec.lambda.real() << ", " << spec.lambda.imag() << "]\n";
  for (const auto& z : spec.zeros) out << "zero = [" << z.real() << ", " << z.imag() << "]\n";
}

}  // namespace blaschke
