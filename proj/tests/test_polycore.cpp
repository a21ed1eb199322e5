#include <algorithm>
#include <cmath>
#include <random>

#include "darboux/polycore.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace darboux;

TEST_CASE("hermite_he small degrees") {
  CHECK(hermite_he(0) == Poly{1});
  CHECK(hermite_he(1) == Poly{0, 1});
  CHECK(hermite_he(2) == Poly{-1, 0, 1});
  CHECK(hermite_he(4) == Poly{3, 0, -6, 0, 1});
  CHECK_THROWS_AS(hermite_he(-1), std::invalid_argument);
}

TEST_CASE("hermite_he satisfies He'' - x He' + n He = 0 and parity") {
  for (int n = 0; n <= 12; ++n) {
    const Poly he = hermite_he(n);
    CHECK(he.degree() == n);
    CHECK(he.leading() == 1);
    const Poly d1 = he.derivative();
    CHECK((d1.derivative() - Poly::x() * d1 + he * Rational(n)).is_zero());
    for (int i = 0; i <= n; ++i)
      if ((n - i) % 2 == 1) CHECK(he.coeff(i) == 0);
  }
}

TEST_CASE("poly_derivative") {
  CHECK(Poly{1}.derivative().is_zero());
  CHECK(Poly{-1, 0, 1}.derivative() == Poly{0, 2});
  CHECK(hermite_he(3).derivative() == hermite_he(2) * Rational(3));
}

TEST_CASE("poly arithmetic and division") {
  const Poly a{1, 2, 3};
  const Poly b{-1, 1};
  auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK(gcd(Poly{-1, 0, 1}, Poly{-1, 1}) == Poly{-1, 1});
  CHECK(gcd(Poly{}, Poly{}).is_zero());
  CHECK(gcd(Poly{2, 0, 2}, Poly{0, 1}) == Poly{1});
  CHECK_THROWS_AS(divmod(a, Poly{}), std::domain_error);
  CHECK(Poly{0, 0, 0}.is_zero());
  CHECK(Poly{0, 0, 0}.degree() == -1);
}

TEST_CASE("sturm_real_root_count examples") {
  CHECK(sturm_real_root_count(Poly{1, 0, 1}) == 0);
  CHECK(sturm_real_root_count(Poly{-1, 0, 1}) == 2);
  const Poly j2{3, 0, 0, 0, 1};
  CHECK(sturm_real_root_count(j2) == 0);
  CHECK(oracle::numeric_root_count(j2) == 0);
  CHECK(sturm_real_root_count(Poly{5}) == 0);
  CHECK_THROWS_AS(sturm_real_root_count(Poly{}), std::invalid_argument);
  // Repeated roots are counted once.
  CHECK(sturm_real_root_count(Poly{-1, 1} * Poly{-1, 1} * Poly{2, 1}) == 2);
}

TEST_CASE("sturm_root_count_in counts closed-interval roots") {
  const Poly p = Poly{-1, 1} * Poly{1, 1} * Poly{-3, 1};  // roots -1, 1, 3
  CHECK(sturm_root_count_in(p, -2, 2) == 2);
  CHECK(sturm_root_count_in(p, 1, 3) == 2);
  CHECK(sturm_root_count_in(p, Rational(3, 2), Rational(5, 2)) == 0);
  CHECK(sturm_root_count_in(Poly{-1, 1} * Poly{-1, 1}, 1, 2) == 1);
}

namespace {

// Product of linear factors at distinct half-integers and irreducible quadratics.
struct ConstructedPoly {
  Poly p;
  int roots;
};

ConstructedPoly random_constructed(std::mt19937& rng) {
  std::uniform_int_distribution<int> nlin(0, 6);
  std::uniform_int_distribution<int> root(-10, 10);
  std::uniform_int_distribution<int> small(1, 5);
  const int lin = nlin(rng);
  std::vector<int> used;
  Poly p{Rational(small(rng), small(rng))};
  while (static_cast<int>(used.size()) < lin) {
    int r = root(rng);
    if (std::find(used.begin(), used.end(), r) != used.end()) continue;
    used.push_back(r);
    p *= Poly{Rational(-r, 2), 1};
  }
  while (p.degree() + 2 <= 8 && small(rng) > 2) {
    // (x - a)^2 + b with b > 0 has no real roots.
    Rational a(root(rng), 4);
    Rational b(small(rng), 3);
    p *= Poly{a * a + b, -2 * a, 1};
  }
  return {p, lin};
}

}  // namespace

TEST_CASE("sturm count agrees with construction and numeric root scan") {
  std::mt19937 rng(20241017);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = random_constructed(rng);
    const int sturm = sturm_real_root_count(c.p);
    CHECK(sturm == c.roots);
    CHECK(sturm == oracle::numeric_root_count(c.p, 1e-3));
  }
}

TEST_CASE("sturm count of products is additive over disjoint roots") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> root(-20, 20);
  for (int trial = 0; trial < 20; ++trial) {
    Poly p{1}, q{1};
    std::vector<int> rp, rq;
    for (int i = 0; i < 3; ++i) {
      int r = root(rng);
      if (std::find(rp.begin(), rp.end(), r) == rp.end()) {
        rp.push_back(r);
        p *= Poly{-r, 1};
      }
      r = root(rng);
      if (std::find(rq.begin(), rq.end(), r) == rq.end()) {
        rq.push_back(r);
        q *= Poly{-r, 1};
      }
    }
    int shared = 0;
    for (int r : rp)
      if (std::find(rq.begin(), rq.end(), r) != rq.end()) ++shared;
    CHECK(sturm_real_root_count(p * q) ==
          sturm_real_root_count(p) + sturm_real_root_count(q) - shared);
  }
}

TEST_CASE("ratfun_reduce canonical form") {
  CHECK(ratfun_reduce(Poly{0, 0, 2}, Poly{2}) == RatFun(Poly{0, 0, 1}));
  const RatFun r = ratfun_reduce(Poly{-1, 0, 1}, Poly{-1, 1});
  CHECK(r.num() == Poly{1, 1});
  CHECK(r.den() == Poly{1});
  const Poly den = Poly{1, 0, 1} * Poly{1, 0, 1};
  const RatFun a = ratfun_reduce(Poly{-4, 0, 4}, den);
  CHECK(a.den() == den);
  CHECK(a.num() == Poly{-4, 0, 4});
  // Oracle: sample-point evaluation against 4(x^2-1)/(1+x^2)^2.
  for (int i = -3; i <= 3; ++i) {
    Rational x = make_rational(i, 2);
    CHECK(a.eval(x) == Rational(4) * (x * x - 1) / ((1 + x * x) * (1 + x * x)));
  }
  CHECK(ratfun_reduce(Poly{1}, Poly{0, 2}).den() == Poly{0, 1});
  CHECK_THROWS_AS(ratfun_reduce(Poly{1}, Poly{}), std::domain_error);
}

TEST_CASE("ratfun_reduce is idempotent and structural equality matches value equality") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> c(-4, 4);
  auto rand_poly = [&](int deg) {
    std::vector<Rational> v;
    for (int i = 0; i <= deg; ++i) v.emplace_back(c(rng));
    if (v.back() == 0) v.back() = 1;
    return Poly(v);
  };
  for (int trial = 0; trial < 30; ++trial) {
    const Poly common = rand_poly(1 + trial % 2);
    const Poly n = rand_poly(2) * common;
    const Poly d = rand_poly(2) * common;
    if (d.is_zero()) continue;
    const RatFun r = ratfun_reduce(n, d);
    CHECK(ratfun_reduce(r.num(), r.den()) == r);
    CHECK(r.den().leading() == 1);
    CHECK(gcd(r.num(), r.den()).degree() <= 0);
    // Same value written with a different common factor.
    const Poly extra = rand_poly(1);
    const RatFun s = ratfun_reduce(n * extra, d * extra);
    CHECK(s == r);
    int tested = 0;
    for (int k = 0; tested < 10 && k < 40; ++k) {
      Rational x = make_rational(k * 7 - 100, 13);
      if (d.eval(x) == 0 || (d * extra).eval(x) == 0) continue;
      CHECK(r.eval(x) == n.eval(x) / d.eval(x));
      ++tested;
    }
  }
}

TEST_CASE("NormValue carries sqrt(2 pi) powers") {
  NormValue a{2, 1};
  CHECK(a.to_double() == doctest::Approx(2 * std::sqrt(2 * M_PI)));
  CHECK((a * NormValue{3, 1}) == NormValue{6, 2});
}
