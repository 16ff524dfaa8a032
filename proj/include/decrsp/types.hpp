#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace decrsp {

using NodeId = std::int32_t;
using Weight = std::int64_t;

inline constexpr NodeId kNoNode = -1;
// Sentinel for unreachable levels and deleted edges. Arithmetic saturates.
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();

constexpr Weight sat_add(Weight a, Weight b) {
  if (a == kInf || b == kInf) return kInf;
  Weight r = 0;
  if (__builtin_add_overflow(a, b, &r)) return kInf;
  return r;
}

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact non-negative-friendly rational with an explicit +infinity (den == 0).
// All arithmetic is overflow checked and throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  static constexpr Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }
  // Maps the integer sentinel kInf to infinity.
  static Rational from_weight(Weight w) { return w == kInf ? infinity() : Rational(w); }

  constexpr bool is_infinite() const { return den_ == 0; }
  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  // kInf for infinity, otherwise ceil().
  Weight ceil_weight() const { return is_infinite() ? kInf : ceil(); }
  double to_double() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Parses "0.5", "3", "1/3" exactly.
Rational parse_rational(const std::string& text);

}  // namespace decrsp
