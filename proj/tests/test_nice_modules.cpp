#include "doctest.h"

#include <random>
#include <sstream>

#include "eqsurf/error.hpp"
#include "eqsurf/nice_module.hpp"

using namespace eqsurf;

namespace {

NiceModule random_module(std::mt19937_64& rng) {
  NiceModule m;
  int nf = static_cast<int>(rng() % 4);
  int na = static_cast<int>(rng() % 3);
  for (int i = 0; i < nf; ++i) {
    int p = static_cast<int>(rng() % 4);
    int q = static_cast<int>(rng() % static_cast<unsigned>(p + 1));
    m.add_free(p, q);
  }
  for (int i = 0; i < na; ++i) m.add_antipodal(static_cast<int>(rng() % 3), static_cast<int>(rng() % 4));
  return m;
}

NiceModule genus2() { return NiceModule().add_free(0, 0).add_antipodal(1, 0, 2).add_free(2, 2); }

// Independent rank of multiplication by a monomial between two cells.
int brute_rank(const NiceModule& m, const M2Monomial& s, int p, int q) {
  Bidegree d = s.bidegree();
  auto src = m.basis_at(p, q);
  std::vector<std::vector<int>> rows;
  for (const auto& b : src) rows.push_back(m.coordinates(act(m, M2Elt(s), b), p + d.p, q + d.q));
  int r = 0;
  // transpose-free elimination on the image vectors
  std::vector<std::vector<int>> basis;
  for (auto v : rows) {
    for (const auto& b : basis) {
      std::size_t piv = 0;
      while (!b[piv]) ++piv;
      if (v[piv])
        for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= b[k];
    }
    if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) {
      basis.push_back(v);
      ++r;
    }
  }
  return r;
}

}  // namespace

TEST_CASE("dimension examples") {
  NiceModule a5 = NiceModule().add_antipodal(0, 5);
  CHECK(a5.dim_at(3, -4) == 1);
  CHECK(a5.dim_at(6, 0) == 0);
  NiceModule s22 = NiceModule().add_free(2, 2);
  CHECK(s22.dim_at(2, 2) == 1);
  CHECK(s22.dim_at(3, 2) == 0);
  CHECK(genus2().dim_at(1, 1) == 3);
}

TEST_CASE("dimension equals the enumerated basis") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 40; ++n) {
    NiceModule m = random_module(rng);
    for (int p = -3; p <= 5; ++p)
      for (int q = -6; q <= 6; ++q) CHECK(m.dim_at(p, q) == static_cast<int>(m.basis_at(p, q).size()));
  }
}

TEST_CASE("scalar action examples") {
  NiceModule m = NiceModule().add_antipodal(1, 0);
  ModuleElement g = m.antipodal_generator(0);
  ModuleElement tg = act(m, M2Elt(M2Monomial::tau()), g);
  CHECK(!tg.is_zero());
  CHECK(m.bidegree(tg) == Bidegree{1, 1});
  CHECK(act(m, M2Elt(M2Monomial::rho()), g).is_zero());

  NiceModule f = NiceModule().add_free(1, 1);
  ModuleElement th = act(f, M2Elt(M2Monomial::theta()), f.free_generator(0));
  CHECK(!th.is_zero());
  CHECK(f.bidegree(th) == Bidegree{1, -1});
}

TEST_CASE("rho and tau commute on every basis element") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    NiceModule m = random_module(rng);
    for (int p = -2; p <= 4; ++p)
      for (int q = -4; q <= 4; ++q)
        for (const auto& b : m.basis_at(p, q)) {
          auto x = act(m, M2Elt(M2Monomial::rho()), act(m, M2Elt(M2Monomial::tau()), b));
          auto y = act(m, M2Elt(M2Monomial::tau()), act(m, M2Elt(M2Monomial::rho()), b));
          CHECK(x == y);
        }
  }
}

TEST_CASE("isomorphism test") {
  CHECK(iso_equal(NiceModule().add_free(0, 0).add_free(1, 1), NiceModule().add_free(1, 1).add_free(0, 0)));
  CHECK(!iso_equal(NiceModule().add_antipodal(0, 1), NiceModule().add_antipodal(0, 0, 2)));
  CHECK(iso_equal(NiceModule().add_antipodal(1, 1), NiceModule().add_antipodal(1, 1, 1, 1)));
}

TEST_CASE("isomorphic modules have equal dimension and rho profiles") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 30; ++n) {
    NiceModule m = random_module(rng);
    NiceModule shuffled(std::vector<FreeSummand>(m.free_summands().rbegin(), m.free_summands().rend()),
                        std::vector<AntipodalSummand>(m.antipodal_summands().rbegin(), m.antipodal_summands().rend()));
    REQUIRE(iso_equal(m, shuffled));
    for (int p = -2; p <= 5; ++p)
      for (int q = -5; q <= 5; ++q) {
        CHECK(m.dim_at(p, q) == shuffled.dim_at(p, q));
        CHECK(m.rho_rank_at(p, q) == shuffled.rho_rank_at(p, q));
      }
  }
}

TEST_CASE("rho and tau ranks") {
  NiceModule m2 = NiceModule().add_free(0, 0);
  CHECK(m2.rho_rank_at(0, 0) == 1);
  CHECK(m2.tau_rank_at(0, 0) == 1);
  CHECK(m2.tau_rank_at(0, -2) == 0);
  NiceModule a0 = NiceModule().add_antipodal(0, 0);
  for (int q = -5; q <= 5; ++q) CHECK(a0.rho_rank_at(0, q) == 0);
  NiceModule a2 = NiceModule().add_antipodal(0, 2);
  for (int q = -5; q <= 5; ++q) CHECK(a2.rho_rank_at(1, q) == 1);
}

TEST_CASE("ranks agree with brute force through act") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 20; ++n) {
    NiceModule m = random_module(rng);
    for (int p = -3; p <= 4; ++p)
      for (int q = -5; q <= 5; ++q) {
        CHECK(m.rho_rank_at(p, q) == brute_rank(m, M2Monomial::rho(), p, q));
        CHECK(m.tau_rank_at(p, q) == brute_rank(m, M2Monomial::tau(), p, q));
        CHECK(m.mono_rank_at(M2Monomial::top(1, 2), p, q) == brute_rank(m, M2Monomial::top(1, 2), p, q));
      }
  }
}

TEST_CASE("tau is an isomorphism above the diagonal") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 40; ++n) {
    NiceModule m = random_module(rng);
    for (int f = -2; f <= 5; ++f)
      for (int g = f; g <= 8; ++g) {
        CHECK(m.tau_rank_at(f, g) == m.dim_at(f, g));
        CHECK(m.dim_at(f, g) == m.dim_at(f, g + 1));
      }
  }
}

TEST_CASE("antipodal dimensions do not depend on the weight") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 20; ++n) {
    NiceModule m;
    for (int i = 0; i < 3; ++i) m.add_antipodal(static_cast<int>(rng() % 3), static_cast<int>(rng() % 4));
    for (int p = -1; p <= 6; ++p)
      for (int q = -5; q <= 5; ++q) CHECK(m.dim_at(p, q) == m.dim_at(p, q + 17));
  }
}

TEST_CASE("coordinates of basis elements are unit vectors") {
  NiceModule m = genus2();
  for (int p = -1; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q) {
      auto b = m.basis_at(p, q);
      for (std::size_t i = 0; i < b.size(); ++i) {
        auto c = m.coordinates(b[i], p, q);
        for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
      }
    }
  CHECK_THROWS_AS(m.coordinates(m.free_generator(0), 1, 1), DomainError);
}

TEST_CASE("summand text") {
  CHECK(summand_string(genus2()) == "M2 + 2*S(1,0)A0 + S(2,2)M2");
  CHECK(summand_string(NiceModule()) == "0");
  std::mt19937_64 rng(19);
  for (int n = 0; n < 40; ++n) {
    NiceModule m = random_module(rng);
    CHECK(iso_equal(parse_summands(summand_string(m)), m));
  }
  CHECK_THROWS_AS(parse_summands("S(1,1"), ParseError);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 20; ++n) {
    NiceModule m = random_module(rng);
    CHECK(module_from_json(to_json(m)) == m);
  }
}

TEST_CASE("grid cells") {
  NiceModule m2 = NiceModule().add_free(0, 0);
  std::istringstream g(render_grid(m2, Window{-2, 2, -2, 2}));
  std::string line;
  std::getline(g, line);
  CHECK(line == "q\\p -2 -1  0  1  2");
  for (int q = 2; q >= -2; --q) {
    std::getline(g, line);
    std::istringstream row(line);
    int label = 0;
    row >> label;
    CHECK(label == q);
    for (int p = -2; p <= 2; ++p) {
      std::string cell;
      row >> cell;
      CHECK(cell == (m2_dim_at(p, q) ? "1" : "."));
    }
  }
  std::getline(g, line);
  CHECK(line == "summands: M2");

  std::string a0 = render_grid(NiceModule().add_antipodal(0, 0), Window{0, 1, -3, 3});
  CHECK(a0.find("  3  1  .\n") != std::string::npos);
  CHECK(a0.find(" -3  1  .\n") != std::string::npos);
  CHECK_THROWS_AS(render_grid(m2, Window{1, 0, 0, 0}), DomainError);
}
