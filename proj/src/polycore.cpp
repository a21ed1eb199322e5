#include "darboux/polycore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace darboux {

Poly hermite_he(int n) {
  if (n < 0) throw std::invalid_argument("hermite_he: negative degree");
  Poly prev = Poly::constant(1);
  if (n == 0) return prev;
  Poly cur = Poly::x();
  for (int k = 1; k < n; ++k) {
    Poly next = Poly::x() * cur - prev * Rational(k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

Poly positive_normalized(const Poly& p) {
  if (p.is_zero()) return p;
  Rational scale = 1 / abs(p.leading());
  return p * scale;
}

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<Poly>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(sgn(p.eval(x)));
  return variations(signs);
}

int variations_at_infinity(const std::vector<Poly>& chain, bool positive) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    int s = sgn(p.leading());
    if (!positive && p.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

}  // namespace

std::vector<Poly> sturm_sequence(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm_sequence: zero polynomial");
  std::vector<Poly> chain{positive_normalized(p)};
  Poly next = positive_normalized(p.derivative());
  while (!next.is_zero()) {
    chain.push_back(next);
    const Poly& a = chain[chain.size() - 2];
    next = positive_normalized(-divmod(a, chain.back()).second);
  }
  return chain;
}

int sturm_real_root_count(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm_real_root_count: zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_sequence(p);
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int sturm_root_count_in(const Poly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("sturm_root_count_in: zero polynomial");
  if (b < a) throw std::invalid_argument("sturm_root_count_in: empty interval");
  if (p.degree() == 0) return 0;
  Poly g = gcd(p, p.derivative());
  Poly squarefree = g.degree() > 0 ? divmod(p, g).first : p;
  auto chain = sturm_sequence(squarefree);
  // Variation difference counts roots in (a, b]; add a separately.
  int count = variations_at(chain, a) - variations_at(chain, b);
  if (p.eval(a) == 0) ++count;
  return count;
}

double NormValue::to_double() const {
  return q.get_d() * std::pow(2.0 * std::numbers::pi, 0.5 * m);
}

}  // namespace darboux
