#include "decrsp/types.hpp"

#include <numeric>

namespace decrsp {

namespace {

using i128 = __int128;

[[noreturn]] void overflow() { throw std::overflow_error("rational overflow"); }

Rational make_reduced(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) overflow();
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<std::int64_t>::min() ||
        den == std::numeric_limits<std::int64_t>::min())
      overflow();
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::int64_t Rational::floor() const {
  if (is_infinite()) overflow();
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  if (is_infinite()) overflow();
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

double Rational::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
  return make_reduced(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (b.is_infinite()) throw std::domain_error("subtracting infinity");
  if (a.is_infinite()) return a;
  return make_reduced(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    const Rational& f = a.is_infinite() ? b : a;
    if (!f.is_infinite() && f.num_ <= 0) throw std::domain_error("infinity times non-positive");
    return Rational::infinity();
  }
  return make_reduced(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_infinite()) throw std::domain_error("division by infinity");
  if (b.num_ == 0) throw std::domain_error("division by zero");
  if (a.is_infinite()) {
    if (b.num_ < 0) throw std::domain_error("infinity over negative");
    return a;
  }
  return make_reduced(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::size_t p1 = 0, p2 = 0;
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    std::int64_t n = 0, d = 0;
    try {
      n = std::stoll(a, &p1);
      d = std::stoll(b, &p2);
    } catch (const std::exception&) {
      throw bad();
    }
    if (p1 != a.size() || p2 != b.size() || d == 0) throw bad();
    return Rational(n, d);
  }
  std::size_t dot = text.find('.');
  std::string whole = text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (frac.size() > 17) throw bad();
  bool neg = !whole.empty() && whole[0] == '-';
  if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
  if (whole.empty() && frac.empty()) throw bad();
  for (char ch : whole + frac)
    if (ch < '0' || ch > '9') throw bad();
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
  std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
  Rational r = Rational(w) + Rational(f, scale);
  return neg ? Rational(0) - r : r;
}

}  // namespace decrsp
