#include "decrsp/param_series.hpp"

#include <string>

namespace decrsp {

namespace mp = boost::multiprecision;

BigInt ceil_root(const BigInt& v, int k) {
  if (k < 1) throw ConfigError("root order must be positive");
  if (v <= 1) return v < 0 ? BigInt(0) : v;
  BigInt lo = 1, hi = 1;
  while (mp::pow(hi, static_cast<unsigned>(k)) < v) hi *= 2;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mp::pow(mid, static_cast<unsigned>(k)) >= v)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

BigRational ceil_big(const BigRational& r) {
  BigInt num = mp::numerator(r), den = mp::denominator(r);
  BigInt q = num / den;
  if (q * den != num && r > 0) q += 1;
  return BigRational(q);
}

BigRational pow_big(const BigRational& x, int k) {
  BigRational out(1);
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

int ParamSeries::max_admissible_p(const BigRational& a, const BigRational& epsilon,
                                  const BigInt& n) {
  const BigRational base = 4 * a * a * a / epsilon;
  int p = 0;
  while (p < 64 && pow_big(base, (p + 1) * (p + 1)) <= BigRational(n)) ++p;
  return p;
}

ParamSeries ParamSeries::derive(const ParamInputs& in, bool enforce_p_bound) {
  if (in.p < 2) throw ConfigError("p must be at least 2");
  if (in.epsilon <= 0 || in.epsilon > 1) throw ConfigError("epsilon must lie in (0, 1]");
  if (in.alpha < 1 || in.beta < 0) throw ConfigError("need alpha >= 1 and beta >= 0");
  if (in.delta < in.b) throw ConfigError("need Delta >= b");
  if (in.depth < in.delta) throw ConfigError("need D >= Delta");
  if (in.n < 1) throw ConfigError("n must be positive");
  if (enforce_p_bound) {
    int pmax = max_admissible_p(in.a, in.epsilon, in.n);
    if (in.p > pmax)
      throw ConfigError("p=" + std::to_string(in.p) + " violates the p bound; maximum admissible p is " +
                        std::to_string(pmax));
  }

  ParamSeries ps;
  ps.in_ = in;
  const int p = in.p;
  const BigRational& alpha = in.alpha;
  const BigRational& beta = in.beta;
  const BigRational& eps = in.epsilon;
  const BigRational factor = alpha + 1 + eps;

  ps.phi_ = eps * in.delta / (p + 1);
  ps.root_n_ = ceil_root(in.n, p);
  BigRational lvl = ceil_big((alpha + 2 * eps) * in.depth / ps.phi_) + BigRational(p + 1) * ps.root_n_;
  ps.max_level_ = mp::numerator(lvl);
  ps.cap_ = in.depth + BigRational(ps.root_n_) * in.delta;

  ps.r_.resize(p);
  ps.s_.resize(p);
  ps.w_.resize(p);
  BigRational prefix(0);
  for (int i = 0; i < p; ++i) {
    ps.r_[i] = i == 0 ? in.delta : (factor * prefix + beta) / eps;
    ps.s_[i] = in.a * ps.r_[i] + in.b;
    ps.w_[i] = alpha * ps.s_[i] + beta;
    prefix += ps.w_[i];
  }
  ps.gamma_i_.resize(p);
  ps.gamma_i_[p - 1] = beta;
  for (int i = p - 2; i >= 0; --i) ps.gamma_i_[i] = ps.gamma_i_[i + 1] + factor * ps.w_[i];
  ps.gamma_ = ps.gamma_i_[0] + 2 * eps * in.delta;
  return ps;
}

BigRational ParamSeries::s_fn(const BigRational& x, int l) const {
  if (l < 1) return x;
  const BigRational factor = in_.alpha + 1 + in_.epsilon;
  BigRational s = in_.a * x + in_.b;
  for (int k = 1; k < l; ++k)
    s = (in_.a * factor * (in_.alpha * s + in_.beta) + in_.beta) / in_.epsilon + in_.b;
  return s;
}

BigInt ParamSeries::hop_budget(const BigRational& dist, int i, bool is_source) const {
  if (is_source) return 0;
  BigRational excess = dist - r(i);
  if (excess < 0) excess = 0;
  BigRational hops = BigRational(in_.p + 1) * ceil_big(excess / in_.delta) + (in_.p + 1 - i);
  return mp::numerator(hops);
}

ParamSeries::Checks ParamSeries::check() const {
  Checks c;
  const int p = in_.p;
  const BigRational& a = in_.a;
  const BigRational& b = in_.b;
  const BigRational& eps = in_.epsilon;
  const BigRational n(in_.n);
  c.p_bound = max_admissible_p(a, eps, in_.n) >= p;

  // At i = 0 the identity would need eps Delta = beta; r_0 = Delta is set separately.
  c.radius_identity = true;
  for (int i = 1; i < p; ++i)
    c.radius_identity = c.radius_identity && (eps * r(i) == gamma(0) - gamma(i) + in_.beta);

  c.root_bound = pow_big(pow_big(4 * a * a * a / eps, p), p) <= n;

  c.radius_closed_form = true;
  for (int i = 1; i < p; ++i) {
    BigRational four = pow_big(BigRational(4), i - 1);
    BigRational bound = (3 * four * pow_big(a, 3 * i) * in_.delta +
                         (9 * four - 2) * pow_big(a, 3 * i - 1) * b) /
                        pow_big(eps, i);
    c.radius_closed_form = c.radius_closed_form && r(i) <= bound;
  }
  c.radius_sum_closed_form = true;
  BigRational sum(0);
  for (int i = 0; i < p; ++i) {
    sum += w(i);
    BigRational four = pow_big(BigRational(4), i);
    BigRational bound = (four * pow_big(a, 3 * i + 2) * in_.delta +
                         (3 * four - 1) * pow_big(a, 3 * i + 1) * b) /
                        pow_big(eps, i);
    c.radius_sum_closed_form = c.radius_sum_closed_form && sum <= bound;
  }

  c.gamma_cap = pow_big((a * gamma() + b) / (eps * in_.delta), p) <= n;
  c.last_radius_cap = pow_big((a * r(p - 1) + b) / in_.delta, p) <= n;

  c.witness_monotone = true;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      c.witness_monotone = c.witness_monotone && s_fn(r(i), j - i) <= s_fn(r(j - 1), 1);
  return c;
}

}  // namespace decrsp
