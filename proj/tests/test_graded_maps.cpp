#include "doctest.h"

#include <random>

#include "eqsurf/error.hpp"
#include "eqsurf/graded_maps.hpp"
#include "oracles.hpp"

using namespace eqsurf;

namespace {

Gf2Poly t(int k) { return Gf2Poly::monomial(k); }

oracle::Matrix pattern(const PolyMap& f) {
  oracle::Matrix m(f.target_degrees.size(), std::vector<int>(f.source_degrees.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = f.matrix[i][j].is_zero() ? 0 : 1;
  return m;
}

bool oracle_iso(const PolyMap& f, int d) {
  int s = 0;
  int g = 0;
  int r = oracle::slice_rank(f.source_degrees, f.target_degrees, f.shift, pattern(f), d, &s, &g);
  return r == s && r == g;
}

}  // namespace

TEST_CASE("polynomials over Z/2") {
  Gf2Poly a = t(3) + t(1);
  Gf2Poly b = t(1) + t(0);
  CHECK((a * b) == t(4) + t(3) + t(2) + t(1));
  auto [qt, rm] = Gf2Poly::divmod(a, b);
  CHECK(qt * b + rm == a);
  CHECK(rm.degree() < b.degree());
  CHECK(t(5).is_monomial());
  CHECK(!a.is_monomial());
  CHECK(a.low_degree() == 1);
  CHECK(Gf2Poly().degree() == -1);
  CHECK(t(70).degree() == 70);
  CHECK((t(70) * t(70)).degree() == 140);
  CHECK_THROWS_AS(Gf2Poly::divmod(a, Gf2Poly()), DomainError);
}

TEST_CASE("graded map validation") {
  PolyMap f{{0}, {0}, 0, {{t(1)}}};
  CHECK_THROWS_AS(f.validate(), DomainError);
  PolyMap g{{0, 2}, {0, 1}, 0, {{t(0), t(2)}, {Gf2Poly(), t(1)}}};
  CHECK_NOTHROW(g.validate());
  CHECK(determinant(g) == t(1));
}

TEST_CASE("identity reduction keeps the basis") {
  PolyMap f{{0, 3, 5}, {0, 3, 5}, 0, {{t(0), {}, {}}, {{}, t(0), {}}, {{}, {}, t(0)}}};
  BasisReduction b = poly_basis_reduce(f, 0);
  CHECK(b.degrees == std::vector<int>{0, 3, 5});
  for (auto c : verify_poly_iso(f, 0, 8)) CHECK(c.iso);
}

TEST_CASE("reduction of a two by two example") {
  // phi(a1) = b1, phi(a2) = t^2 b1 + t b2
  PolyMap f{{0, 2}, {0, 1}, 0, {{t(0), t(2)}, {Gf2Poly(), t(1)}}};
  auto checks = verify_poly_iso(f, 0, 6);
  for (const auto& c : checks) CHECK(c.iso == oracle_iso(f, c.degree));
  CHECK(!checks[1].iso);  // degree 1: source dim 1, target dim 2
  for (int d = 2; d <= 6; ++d) CHECK(oracle_iso(f, d));
  BasisReduction b = poly_basis_reduce(f, 2);
  CHECK(b.degrees == std::vector<int>{0, 1});
  CHECK(b.change[0][0] == t(0));
  CHECK(b.change[1][0].is_zero());
  CHECK(b.change[1][1] == t(0));
}

TEST_CASE("maps that are not isomorphisms are rejected") {
  PolyMap zero{{0}, {0}, 0, {{Gf2Poly()}}};
  CHECK_THROWS_AS(poly_basis_reduce(zero, 0), DomainError);
  for (auto c : verify_poly_iso(zero, 0, 4)) CHECK(!c.iso);
  PolyMap rank_drop{{0, 0}, {0, 0}, 0, {{t(0), t(0)}, {t(0), t(0)}}};
  CHECK_THROWS_AS(poly_basis_reduce(rank_drop, 0), DomainError);
}

TEST_CASE("randomized reductions certified by the rank oracle") {
  std::mt19937_64 rng(29);
  int done = 0;
  for (int attempt = 0; attempt < 20000 && done < 500; ++attempt) {
    std::size_t n = 1 + rng() % 5;
    int shift = static_cast<int>(rng() % 3);
    PolyMap f;
    f.shift = shift;
    for (std::size_t i = 0; i < n; ++i) f.source_degrees.push_back(static_cast<int>(rng() % 5));
    for (std::size_t i = 0; i < n; ++i) f.target_degrees.push_back(static_cast<int>(rng() % 5));
    f.matrix.assign(n, std::vector<Gf2Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int e = f.source_degrees[j] + shift - f.target_degrees[i];
        if (e >= 0 && e <= 4 && rng() % 3 != 0) f.matrix[i][j] = t(e);
      }
    if (determinant(f).is_zero()) continue;
    int g0 = 12;
    while (g0 > 0 && oracle_iso(f, g0 - 1)) --g0;
    for (int d = g0; d <= 12; ++d) REQUIRE(oracle_iso(f, d));
    BasisReduction b = poly_basis_reduce(f, g0);
    for (std::size_t i = 0; i < n; ++i) CHECK(b.degrees[i] <= f.source_degrees[i] + shift);
    PolyMap change = b.as_map(f.target_degrees);
    CHECK_NOTHROW(change.validate());
    for (int d = -2; d <= 12; ++d) CHECK(oracle_iso(change, d));
    ++done;
  }
  CHECK(done == 500);
}

TEST_CASE("torsion part") {
  NiceModule m2 = NiceModule().add_free(0, 0);
  CHECK(torsion_part(m2).dim_at(0, -2) == 1);
  CHECK(torsion_part(m2).dim_at(0, 0) == 0);
  NiceModule a0 = NiceModule().add_antipodal(0, 0);
  for (int q = -4; q <= 4; ++q) CHECK(torsion_part(a0).dim_at(0, q) == a0.dim_at(0, q));
  NiceModule both = NiceModule().add_free(0, 0).add_antipodal(0, 0);
  for (int q = -5; q <= 5; ++q) CHECK(torsion_part(both).dim_at(0, q) == 1 + (q <= -2 ? 1 : 0));
}

TEST_CASE("free quotient weights") {
  CHECK(free_quotient_rank(NiceModule().add_free(0, 0).add_free(1, 1), 1) == std::vector<int>{1});
  NiceModule torus = NiceModule().add_free(0, 0).add_free(1, 0).add_free(1, 1).add_free(2, 1);
  CHECK(free_quotient_rank(torus, 1) == std::vector<int>{0, 1});
  CHECK(free_quotient_rank(NiceModule().add_antipodal(0, 2), 0).empty());
}

TEST_CASE("summands are recovered from the two functors") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 60; ++n) {
    NiceModule m;
    for (int i = static_cast<int>(rng() % 4); i > 0; --i) {
      int p = static_cast<int>(rng() % 4);
      m.add_free(p, static_cast<int>(rng() % static_cast<unsigned>(p + 1)));
    }
    for (int i = static_cast<int>(rng() % 3); i > 0; --i)
      m.add_antipodal(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
    CAPTURE(summand_string(m));
    CHECK(iso_equal(reconstruct_summands(m), m));
  }
}

TEST_CASE("structure transfer") {
  NiceModule s11 = NiceModule().add_free(0, 0).add_free(1, 1);
  TransferDecomposition t1 = transfer_decomposition(s11, 1, 1, false);
  REQUIRE(t1.free.size() == 2);
  CHECK(t1.free[0] == RelaxedFree{1, 0, 1});
  CHECK(t1.free[1] == RelaxedFree{2, 0, 2});
  CHECK_THROWS_AS(t1.exact(), DomainError);

  NiceModule src = NiceModule().add_free(0, 0).add_antipodal(1, 0).add_free(2, 1);
  NiceModule shifted = transfer_decomposition(src, 2, 1, true).exact();
  CHECK(iso_equal(shifted, NiceModule().add_free(2, 1).add_antipodal(3, 0).add_free(4, 2)));
  auto a = transfer_decomposition(NiceModule().add_antipodal(1, 0), 1, 0, false);
  CHECK(a.antipodal == std::vector<AntipodalSummand>{{2, 0}});
  CHECK_THROWS_AS(transfer_decomposition(src, 1, -1, false), DomainError);
}

TEST_CASE("transfer keeps summand counts and high-weight column totals") {
  std::mt19937_64 rng(37);
  for (int n = 0; n < 30; ++n) {
    NiceModule src;
    for (int i = 1 + static_cast<int>(rng() % 3); i > 0; --i) {
      int p = static_cast<int>(rng() % 3);
      src.add_free(p, static_cast<int>(rng() % static_cast<unsigned>(p + 1)));
    }
    src.add_antipodal(static_cast<int>(rng() % 2), static_cast<int>(rng() % 2));
    int dn = static_cast<int>(rng() % 3);
    int dq = static_cast<int>(rng() % 3);
    auto tr = transfer_decomposition(src, dn, dq, false);
    CHECK(tr.free.size() == src.free_summands().size());
    CHECK(tr.antipodal.size() == src.antipodal_summands().size());
    // any choice of weights inside the intervals: take the low end
    NiceModule low;
    for (const auto& f : tr.free) low.add_free(f.p, f.lo);
    for (const auto& x : tr.antipodal) low.add_antipodal(x.s, x.r);
    for (int p = 0; p <= 3; ++p)
      for (int q = p + dn + 6; q <= p + dn + 8; ++q) CHECK(src.dim_at(p, q) == low.dim_at(p + dn, q));
  }
}

TEST_CASE("iso checks for maps of nice modules") {
  NiceModule m = NiceModule().add_free(0, 0).add_antipodal(1, 1).add_free(2, 1);
  CHECK(verify_nice_iso_range(NiceMap::identity(m), Window{}).pass);

  NiceModule m2 = NiceModule().add_free(0, 0);
  NiceMap tau{m2, m2, {0, 1}, {act(m2, M2Elt(M2Monomial::tau()), m2.free_generator(0))}, {}};
  IsoReport r = verify_nice_iso_range(tau, Window{-3, 3, -4, 4});
  CHECK(r.pass);
  for (const auto& c : r.cells)
    if (c.q >= c.p) CHECK(c.pass);
  bool below_fails = false;
  for (const auto& c : r.cells) below_fails = below_fails || (!c.required && !c.pass);
  CHECK(below_fails);

  NiceModule a0 = NiceModule().add_antipodal(0, 0);
  NiceMap rho{a0, a0, {1, 1}, {}, {ModuleElement{}}};
  IsoReport rr = verify_nice_iso_range(rho, Window{0, 1, -2, 3});
  CHECK(!rr.pass);

  // the exact (n, q) shift of a uniform Thom class
  NiceModule src = NiceModule().add_free(0, 0).add_free(1, 1);
  NiceModule tgt = transfer_decomposition(src, 1, 1, true).exact();
  NiceMap shift{src, tgt, {1, 1}, {tgt.free_generator(0), tgt.free_generator(1)}, {}};
  CHECK(verify_nice_iso_range(shift, Window{}).pass);
}

TEST_CASE("ill-formed generator images are rejected") {
  NiceModule m2 = NiceModule().add_free(0, 0);
  NiceMap bad{m2, m2, {0, 1}, {m2.free_generator(0)}, {}};
  CHECK_THROWS_AS(verify_nice_iso_range(bad, Window{}), DomainError);
  NiceModule a0 = NiceModule().add_antipodal(0, 0);
  NiceMap top{a0, m2, {0, 0}, {}, {m2.free_generator(0)}};
  CHECK_THROWS_AS(top.validate(), DomainError);
}
