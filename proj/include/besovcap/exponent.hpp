#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace besovcap {

/// Integrability exponent in [1, inf]; infinity is a distinguished value.
class Exponent {
 public:
  /// Throws std::invalid_argument unless 1 <= value <= inf.
  explicit Exponent(double value);
  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  /// Accepts "inf", "infinity", a decimal ("1.5") or a ratio ("4/3").
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }
  /// ceil(p) for finite p, 1 for p = inf. Drives the angular oversampling.
  int sampling_weight() const;

  /// "inf" or the shortest decimal that round-trips.
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_;
};

/// 1/p + 1/p' = 1, with 1' = inf and inf' = 1.
Exponent conjugate(Exponent p);

}  // namespace besovcap
