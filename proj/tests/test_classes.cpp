#include "doctest.h"

#include <random>

#include "eqsurf/classes.hpp"
#include "eqsurf/dsl.hpp"
#include "eqsurf/error.hpp"
#include "eqsurf/verification.hpp"
#include "oracles.hpp"

using namespace eqsurf;

namespace {

SurfacePtr genus2() { return parse_surface("S(2,2)#M1"); }

Coefficient single_coeff(const ClassExpression& e) {
  REQUIRE(e.terms().size() == 1);
  return e.terms().begin()->second;
}

}  // namespace

TEST_CASE("Thom class bidegrees") {
  // Mobius band over the circle S(1,1): rank 1, fiber weights 0 and 1 over the two fixed points
  CHECK(thom_bidegree({false, 1, {0, 1}}) == ClassDegree{1, 1, false});
  CHECK(thom_bidegree({false, 2, {2}}) == ClassDegree{2, 2, false});
  CHECK(thom_bidegree({false, 2, {0, 1, 2, 1}}) == ClassDegree{2, 2, false});
  CHECK(thom_bidegree({true, 1, {}}).family);
  CHECK_THROWS_AS(thom_bidegree({false, 1, {2}}), DomainError);
  CHECK_THROWS_AS(thom_bidegree({false, 1, {}}), DomainError);
  CHECK_THROWS_AS(thom_bidegree({true, 1, {0}}), DomainError);
}

TEST_CASE("Thom class restrictions to the fixed set") {
  CHECK(thom_restrict_fixed({false, 1, {1}}) == std::vector<M2Monomial>{M2Monomial::rho()});
  CHECK(thom_restrict_fixed({false, 1, {0, 1}}) == std::vector<M2Monomial>{M2Monomial::tau(), M2Monomial::rho()});
  CHECK(thom_restrict_fixed({false, 2, {2, 2}}) == std::vector<M2Monomial>{M2Monomial::rho(2), M2Monomial::rho(2)});
  // over a fixed point of weight q_i the restriction sits in (q_i, q)
  std::mt19937_64 rng(43);
  for (int n = 0; n < 100; ++n) {
    ThomBundleData v{false, 1 + static_cast<int>(rng() % 4), {}};
    for (int i = 1 + static_cast<int>(rng() % 4); i > 0; --i)
      v.weights.push_back(static_cast<int>(rng() % static_cast<unsigned>(v.n + 1)));
    ClassDegree d = thom_bidegree(v);
    auto r = thom_restrict_fixed(v);
    REQUIRE(r.size() == v.weights.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].bidegree() == Bidegree{v.weights[i], d.q});
  }
}

TEST_CASE("pullback coefficients") {
  CHECK(thom_pullback_coeff(2, 0, false).coeff == M2Monomial::tau(2));
  CHECK(thom_pullback_coeff(1, 1, false).coeff == M2Monomial::tau(0));
  PullbackCoeff f = thom_pullback_coeff(2, 0, true);
  CHECK(f.family);
  CHECK(f.family_weight == 2);
  CHECK_THROWS_AS(thom_pullback_coeff(0, 1, false), DomainError);
}

TEST_CASE("class bidegrees") {
  CHECK(class_bidegree(ClassDescriptor::nonfree("C", 1, {0, 1})) == ClassDegree{1, 1, false});
  CHECK(class_bidegree(ClassDescriptor::nonfree("p", 2, {2})) == ClassDegree{2, 2, false});
  CHECK(class_bidegree(ClassDescriptor::free_family("U", 1)) == ClassDegree{1, 0, true});
  CHECK_THROWS_AS(class_bidegree(ClassDescriptor::nonfree("bad", 1, {3})), DomainError);
}

TEST_CASE("products of fundamental classes") {
  auto c = ClassDescriptor::nonfree("C", 1, {1});
  auto d = ClassDescriptor::nonfree("D", 1, {0, 0});
  auto a = ClassDescriptor::nonfree("a", 2, {1});
  auto pnt = ClassDescriptor::nonfree("p", 2, {2});
  auto u = ClassDescriptor::free_family("u", 1, 0);
  auto v = ClassDescriptor::free_family("v", 1, 0);
  auto z = ClassDescriptor::free_family("z", 2, 0);

  // all nonfree: tau^{qY + qZ - qW}
  CHECK(single_coeff(product({c, 0}, {d, 0}, a)) == Coefficient(M2Elt::one()));
  CHECK(single_coeff(product({c, 0}, {c, 0}, a)) == Coefficient(M2Elt(M2Monomial::tau())));
  CHECK(single_coeff(product({c, 0}, {c, 0}, ClassDescriptor::nonfree("x", 2, {0}))) ==
        Coefficient(M2Elt(M2Monomial::tau(2))));
  CHECK_THROWS_AS(product({d, 0}, {d, 0}, pnt), DomainError);
  // both free: [W]_{r+s}
  CHECK(single_coeff(product({u, 1}, {v, -3}, z)) == Coefficient(LambdaElt::monomial(0, 0, -2)));
  // nonfree times free: [W]_{qY + r}
  CHECK(single_coeff(product({c, 0}, {u, 2}, z)) == Coefficient(LambdaElt::monomial(0, 0, 3)));
  // nonfree meeting in a free set: [W]_{qY + qZ}
  CHECK(single_coeff(product({c, 0}, {c, 0}, z)) == Coefficient(LambdaElt::monomial(0, 0, 2)));
  CHECK_THROWS_AS(product({c, 0}, {u, 0}, a), DomainError);
  // empty intersection
  CHECK(product({c, 0}, {d, 0}, std::nullopt).is_zero());
  CHECK_THROWS_AS(product({c, 0}, {d, 0}, ClassDescriptor::nonfree("bad", 1, {0})), DomainError);
}

TEST_CASE("product bidegrees add up") {
  std::mt19937_64 rng(47);
  for (int n = 0; n < 200; ++n) {
    auto w1 = std::vector<int>{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    auto w2 = std::vector<int>{static_cast<int>(rng() % 2)};
    auto y = ClassDescriptor::nonfree("Y", 1, w1);
    auto z = ClassDescriptor::nonfree("Z", 1, w2);
    int wq = static_cast<int>(rng() % 3);
    auto w = ClassDescriptor::nonfree("W", 2, {wq});
    ClassDegree dy = class_bidegree(y);
    ClassDegree dz = class_bidegree(z);
    if (wq > dy.q + dz.q) {
      CHECK_THROWS_AS(product({y, 0}, {z, 0}, w), DomainError);
      continue;
    }
    auto e = product({y, 0}, {z, 0}, w);
    CHECK(e.bidegree() == Bidegree{dy.p + dz.p, dy.q + dz.q});
  }
}

TEST_CASE("fixed-set restriction and the forgetful map") {
  auto d = ClassDescriptor::nonfree("D", 1, {0, 1}, {"a", "b"});
  auto r = restrict_to_fixed(d);
  CHECK(r == std::vector<FixedRestriction>{{"a", M2Monomial::tau()}, {"b", M2Monomial::rho()}});
  CHECK_THROWS_AS(restrict_to_fixed(ClassDescriptor::free_family("u", 1)), DomainError);

  Generator p{"p", {2, 2}, false, -1};
  Generator x{"x", {1, 1}, false, -1};
  ClassExpression e = ClassExpression::gen(p, M2Elt(M2Monomial::tau())) +
                      ClassExpression::gen(x, M2Elt(M2Monomial::top(1, 1)));
  SingularExpression s = forget(e);
  CHECK(s.size() == 1);
  CHECK(s.count({{"p", 1}}) == 1);
  CHECK(forget(ClassExpression::gen(p, M2Elt(M2Monomial::bot(0, 1)))).empty());
  Generator u{"u", {1, 0}, true, 0};
  CHECK(forget(ClassExpression::gen(u, LambdaElt::monomial(0, 0, -4))).size() == 1);
}

TEST_CASE("conjugate point classes in the genus two rotation") {
  auto g2 = genus2();
  for (int q = -6; q <= 4; ++q) {
    CAPTURE(q);
    ClassExpression c = conjugate_point_class(*g2, q);
    CHECK(c.is_zero() == (q > 0));
    if (c.is_zero()) continue;
    // theta / tau^{-q} on the top point class, in bidegree (2, q)
    CHECK(single_coeff(c) == Coefficient(M2Elt(M2Monomial::bot(0, -q))));
    CHECK(c.bidegree() == Bidegree{2, q});
    CHECK(oracle::m2_count(0, q - 2) == 1);
  }
  CHECK(conjugate_point_class(*g2, 0).str() == "theta*p");
}

TEST_CASE("conjugate point classes climb the tau ladder") {
  ClassExpression tau = ClassExpression::scalar(M2Elt(M2Monomial::tau()));
  for (const char* s : {"S(2,2)#M1", "S(2,1)+S10AT", "S(2,2)+FM", "doub(N1,S10)"}) {
    auto x = parse_surface(s);
    for (int q = -5; q <= 3; ++q) {
      CAPTURE(s);
      CAPTURE(q);
      CHECK(tau * conjugate_point_class(*x, q) == conjugate_point_class(*x, q + 1));
    }
  }
  auto t = parse_surface("T1anti");
  for (int q = -3; q <= 3; ++q) CHECK(tau * conjugate_point_class(*t, q) == conjugate_point_class(*t, q + 1));
  CHECK_THROWS_AS(conjugate_point_class(*parse_surface("triv(M1)"), 0), DomainError);
}

TEST_CASE("module generators cover the worked examples") {
  for (const char* s : {"S(2,1)+S10AT", "S(2,2)+FM", "S(2,2)#M1", "T1anti", "S2a", "triv(N2)"}) {
    CAPTURE(s);
    auto d = parse_surface(s);
    auto gens = module_generators(d);
    NiceModule m = cohomology(*d);
    CHECK(gens.size() == m.free_summands().size() + m.antipodal_summands().size());
    CHECK(check_generator_coverage(d).pass());
  }
  auto t = module_generators(parse_surface("S(2,1)+S10AT"));
  int circles = 0;
  for (const auto& g : t) circles += (g.codim == 1 && !g.free) ? 1 : 0;
  CHECK(circles == 2);
}
