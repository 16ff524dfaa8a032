#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "decrsp/types.hpp"

namespace decrsp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct ParamInputs {
  BigRational alpha{1};
  BigRational beta{0};
  BigRational a{2};
  BigRational b{1};
  BigRational epsilon{1};
  int p = 2;
  BigRational delta{1};
  BigRational depth{1};
  BigInt n{2};
};

// Smallest x with x^k >= v (v >= 0, k >= 1).
BigInt ceil_root(const BigInt& v, int k);
BigRational ceil_big(const BigRational& r);
BigRational pow_big(const BigRational& x, int k);

// Derived constants of the shortcut construction, computed exactly.
class ParamSeries {
 public:
  struct Checks {
    bool p_bound = false;                 // (4a^3/eps)^(p^2) <= n
    bool radius_identity = false;         // eps r_i = gamma_0 - gamma_i + beta, i >= 1
    bool root_bound = false;              // (4a^3/eps)^p <= n^(1/p)
    bool radius_closed_form = false;
    bool radius_sum_closed_form = false;
    bool gamma_cap = false;               // a gamma + b <= eps n^(1/p) Delta
    bool last_radius_cap = false;         // a r_{p-1} + b <= n^(1/p) Delta
    bool witness_monotone = false;        // s(r_i, j-i) <= s(r_{j-1}, 1)
  };

  // Validates preconditions. With enforce_p_bound a violated p bound raises a
  // ConfigError naming the largest admissible p.
  static ParamSeries derive(const ParamInputs& in, bool enforce_p_bound = true);

  // Largest p with (4a^3/eps)^(p^2) <= n, 0 if none.
  static int max_admissible_p(const BigRational& a, const BigRational& epsilon, const BigInt& n);

  const ParamInputs& inputs() const { return in_; }
  const BigRational& phi() const { return phi_; }
  const BigInt& root_n() const { return root_n_; }  // ceil(n^(1/p))
  const BigInt& max_level() const { return max_level_; }
  const BigRational& weight_cap() const { return cap_; }
  const BigRational& r(int i) const { return r_[static_cast<std::size_t>(i)]; }
  const BigRational& s(int i) const { return s_[static_cast<std::size_t>(i)]; }
  const BigRational& w(int i) const { return w_[static_cast<std::size_t>(i)]; }
  const BigRational& gamma(int i) const { return gamma_i_[static_cast<std::size_t>(i)]; }
  const BigRational& gamma() const { return gamma_; }

  // s(x, 1) = a x + b, s(x, l+1) = (a(alpha+1+eps)(alpha s(x,l) + beta) + beta)/eps + b.
  BigRational s_fn(const BigRational& x, int l) const;
  // Hop budget h(u, i); zero for the source.
  BigInt hop_budget(const BigRational& dist, int i, bool is_source) const;

  Checks check() const;

 private:
  ParamInputs in_;
  BigRational phi_;
  BigInt root_n_;
  BigInt max_level_;
  BigRational cap_;
  std::vector<BigRational> r_, s_, w_, gamma_i_;
  BigRational gamma_;
};

}  // namespace decrsp
