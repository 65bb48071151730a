#include "besovcap/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace besovcap {

namespace {

double parse_double(std::string_view text) {
  std::string owned(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + owned + "'");
  }
  if (used != owned.size()) throw std::invalid_argument("trailing characters in '" + owned + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Exponent::Exponent(double value) : value_(value) {
  if (!(value >= 1.0)) {
    throw std::invalid_argument("exponent must satisfy 1 <= p <= inf, got " + std::to_string(value));
  }
}

Exponent Exponent::parse(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_double(trim(text.substr(0, slash)));
    const double den = parse_double(trim(text.substr(slash + 1)));
    if (den == 0.0) throw std::invalid_argument("zero denominator in exponent");
    return Exponent(num / den);
  }
  return Exponent(parse_double(text));
}

int Exponent::sampling_weight() const {
  if (is_infinite()) return 1;
  return static_cast<int>(std::ceil(value_ - 1e-12));
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, value_);
    if (std::stod(buf) == value_) break;
  }
  return buf;
}

Exponent conjugate(Exponent p) {
  if (p.is_infinite()) return Exponent(1.0);
  if (p.value() == 1.0) return Exponent::infinity();
  return Exponent(1.0 / (1.0 - 1.0 / p.value()));
}

}  // namespace besovcap
