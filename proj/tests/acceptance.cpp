// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here; exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "eqsurf/classes.hpp"
#include "eqsurf/coeff_ring.hpp"
#include "eqsurf/dsl.hpp"
#include "eqsurf/graded_maps.hpp"
#include "eqsurf/presentation.hpp"
#include "eqsurf/verification.hpp"

#include "cli_fixtures.hpp"
#include "oracles.hpp"

using namespace eqsurf;

namespace {

constexpr double kDecompositionSeconds = 1.0;
constexpr double kReductionSeconds = 10.0;
constexpr double kFuzzSeconds = 60.0;
constexpr int kReductionMaps = 500;
constexpr int kReductionTopDegree = 12;
constexpr int kFuzzCount = 200;
constexpr int kFuzzDepth = 10;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

// ---------------------------------------------------------------- 1

Outcome decompositions() {
  Outcome o;
  auto same = [&](const char* surface, const char* summands) {
    o.require(iso_equal(cohomology(*parse_surface(surface)), parse_summands(summands)), surface);
  };
  same("S(2,1)+S10AT", "M2 + S(1,0)M2 + S(1,1)M2 + S(2,1)M2");
  same("S(2,2)+FM", "M2 + S(1,1)M2 + S(2,1)M2");
  same("S(2,2)#M1", "M2 + 2*S(1,0)A0 + S(2,2)M2");
  same("S2a", "A2");
  same("T1anti", "A1 + S(1,0)A1");
  // the free torus again, from the rank function of cup with w on the Klein bottle
  auto bars = oracle::u_bars(oracle::nonorientable(2), {1, 1});
  NiceModule from_oracle;
  for (const auto& [key, n] : bars)
    for (int i = 0; i < n; ++i) from_oracle.add_antipodal(key.first, key.second - 1);
  o.require(iso_equal(cohomology(*parse_surface("T1anti")), from_oracle), "T1anti against the u-module oracle");
  return o;
}

// ---------------------------------------------------------------- 2

Outcome presentations() {
  Outcome o;
  auto text = [&](CatalogEntry e, const std::string& want) {
    o.require(present_catalog(e).text() == want, catalog_name(e));
  };
  text(CatalogEntry::S11, "M2[x]/(x^2 = rho*x); |x|=(1,1)");
  text(CatalogEntry::TorusReflection, "M2[x,y]/(x^2 = rho*x, y^2 = 0); |x|=(1,1) |y|=(1,0)");
  text(CatalogEntry::RP2Rotation, "M2[x,y]/(x^2 = tau*y + rho*x, y^2 = 0, x*y = 0); |x|=(1,1) |y|=(2,1)");
  text(CatalogEntry::T1Anti, "tau^-1 M2[x]/(rho^2 = 0, x^2 = 0); |x|=(1,1)");

  auto eq = [&](CatalogEntry e, const char* a, const char* b) {
    RingPresentation p = present_catalog(e);
    ClassExpression x = normalize(parse_class_expression(a, p), p);
    ClassExpression y = normalize(parse_class_expression(b, p), p);
    o.require(x == y, std::string(a) + " = " + b);
  };
  eq(CatalogEntry::TorusReflection, "C*D", "a");
  eq(CatalogEntry::RP2Rotation, "C*C'", "tau*p");
  eq(CatalogEntry::RP2Rotation, "C'^2", "q");
  eq(CatalogEntry::RP2Rotation, "q", "tau*p + rho*C'");
  eq(CatalogEntry::Genus2Rotation, "a + b", "rho^2");
  for (auto e : all_catalog_entries()) o.require(check_confluence(present_catalog(e), 4).ok, "confluence");
  return o;
}

// ---------------------------------------------------------------- 3

Outcome thom() {
  Outcome o;
  o.require(thom_bidegree({false, 1, {0, 1}}) == ClassDegree{1, 1, false}, "Mobius band over S(1,1)");
  NiceModule circle = parse_summands("M2 + S(1,1)M2");
  TransferDecomposition t = transfer_decomposition(circle, 1, 1, false);
  bool has11 = false;
  bool has21 = false;
  for (const auto& f : t.free) {
    has11 = has11 || (f.p == 1 && f.lo <= 1 && 1 <= f.hi);
    has21 = has21 || (f.p == 2 && f.lo <= 1 && 1 <= f.hi);
  }
  o.require(t.free.size() == 2 && has11 && has21, "transfer intervals contain S(1,1)M2 + S(2,1)M2");
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    NiceModule src;
    for (int i = 1 + static_cast<int>(rng() % 3); i > 0; --i) {
      int p = static_cast<int>(rng() % 3);
      src.add_free(p, static_cast<int>(rng() % static_cast<unsigned>(p + 1)));
    }
    if (rng() % 2) src.add_antipodal(static_cast<int>(rng() % 2), static_cast<int>(rng() % 3));
    int dn = static_cast<int>(rng() % 3);
    int dq = static_cast<int>(rng() % 3);
    NiceModule got = transfer_decomposition(src, dn, dq, true).exact();
    NiceModule want;
    for (const auto& f : src.free_summands()) want.add_free(f.p + dn, f.q + dq);
    for (const auto& a : src.antipodal_summands()) want.add_antipodal(a.s + dn, a.r);
    o.require(iso_equal(got, want), "uniform transfer is an exact shift");
  }
  return o;
}

// ---------------------------------------------------------------- 4

Outcome conjugate_points() {
  Outcome o;
  auto g2 = parse_surface("S(2,2)#M1");
  ClassExpression tau = ClassExpression::scalar(M2Elt(M2Monomial::tau()));
  for (int q = -10; q <= 10; ++q) {
    ClassExpression c = conjugate_point_class(*g2, q);
    o.require(c.is_zero() == (q > 0), "nonzero exactly for q <= 0");
    if (!c.is_zero()) {
      bool shape = c.terms().size() == 1 && c.terms().begin()->first == ClassExpression::Monomial{{"p", 1}} &&
                   c.terms().begin()->second == Coefficient(M2Elt(M2Monomial::bot(0, -q)));
      o.require(shape, "class is theta/tau^(-q) [p]");
      o.require(c.bidegree() == Bidegree{2, q}, "class sits in (2, q)");
    }
    o.require(tau * c == conjugate_point_class(*g2, q + 1), "tau ladder");
  }
  return o;
}

// ---------------------------------------------------------------- 5

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

Outcome reductions() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int done = 0;
  int disagreements = 0;
  for (int attempt = 0; attempt < 100000 && done < kReductionMaps; ++attempt) {
    std::size_t n = 1 + rng() % 5;
    PolyMap f;
    f.shift = static_cast<int>(rng() % 3);
    for (std::size_t i = 0; i < n; ++i) f.source_degrees.push_back(static_cast<int>(rng() % 5));
    for (std::size_t i = 0; i < n; ++i) f.target_degrees.push_back(static_cast<int>(rng() % 5));
    f.matrix.assign(n, std::vector<Gf2Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int e = f.source_degrees[j] + f.shift - f.target_degrees[i];
        if (e >= 0 && e <= 4 && rng() % 3 != 0) f.matrix[i][j] = Gf2Poly::monomial(e);
      }
    Gf2Poly det = determinant(f);
    if (det.is_zero()) continue;
    int g0 = kReductionTopDegree;
    while (g0 > 0 && oracle_iso(f, g0 - 1)) --g0;
    for (int d = g0; d <= kReductionTopDegree; ++d) o.require(oracle_iso(f, d), "oracle stable range");
    for (const auto& c : verify_poly_iso(f, 0, kReductionTopDegree))
      if (c.iso != oracle_iso(f, c.degree)) ++disagreements;
    BasisReduction b = poly_basis_reduce(f, g0);
    for (std::size_t i = 0; i < n; ++i)
      o.require(b.degrees[i] <= f.source_degrees[i] + f.shift, "|beta_i| <= |alpha_i| + q");
    PolyMap change = b.as_map(f.target_degrees);
    for (int d = 0; d <= kReductionTopDegree; ++d) o.require(oracle_iso(change, d), "new basis spans");
    ++done;
  }
  o.require(done == kReductionMaps, "not enough maps with monomial determinant");
  o.require(disagreements == 0, "per-degree iso check disagrees with the oracle");
  return o;
}

// ---------------------------------------------------------------- 6

Outcome fuzz() {
  Outcome o;
  FuzzReport r = fuzz_surfaces(1, kFuzzDepth, kFuzzCount);
  o.require(static_cast<int>(r.surfaces.size()) == kFuzzCount, "count");
  if (!r.pass()) o.require(false, r.failures[0].surface + ": " + r.failures[0].check + ": " + r.failures[0].detail);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome coefficient_ring() {
  Outcome o;
  for (int p = -8; p <= 8; ++p)
    for (int q = -8; q <= 8; ++q) o.require(m2_dim_at(p, q) == oracle::m2_count(p, q), "dimension table");
  std::vector<M2Monomial> all;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      all.push_back(M2Monomial::top(a, b));
      all.push_back(M2Monomial::bot(a, b));
    }
  for (const auto& x : all)
    for (const auto& y : all) {
      M2Elt xy = M2Elt(x) * M2Elt(y);
      o.require(xy == M2Elt(y) * M2Elt(x), "commutativity");
      for (const auto& z : all) o.require(xy * M2Elt(z) == M2Elt(x) * (M2Elt(y) * M2Elt(z)), "associativity");
    }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome cli() {
  using namespace cli_fixtures;
  Outcome o;
  for (const auto& f : fixtures()) {
    Result a = call(f.args);
    Result b = call(f.args);
    o.require(a.code == f.exit, std::string(f.golden) + ": exit code");
    o.require(compared_text(a) == slurp(golden_path(f.golden)), std::string(f.golden) + ": golden");
    o.require(a.out == b.out && a.err == b.err, std::string(f.golden) + ": byte stability");
  }
  for (const char* s : {"S(2,1)+S10AT", "S(2,2)+FM", "S(2,2)#M1", "S2a", "T1anti"}) {
    Result r = call({"cohom", s});
    std::string summands = r.out.substr(r.out.rfind("summands: ") + 10);
    summands.pop_back();
    o.require(iso_equal(parse_summands(summands), cohomology(*parse_surface(s))), std::string(s) + ": round trip");
  }
  o.require(call({"verify", "S(2,1)+S10AT"}).code == 0, "verify pass exits 0");
  o.require(call({"verify", "--module", "M2 + S(1,2)M2"}).code == 2, "verify failure exits 2");
  o.require(call({"verify", "S(2,2)+FM+FM+FM"}).code == 1, "domain error exits 1");
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double seconds;  // 0 = no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> cs = {
      {1, "decomposition goldens", kDecompositionSeconds, decompositions},
      {2, "ring presentations and worked products", 0, presentations},
      {3, "Thom classes and transfer", 0, thom},
      {4, "conjugate-point law", 0, conjugate_points},
      {5, "basis reduction on 500 random maps", kReductionSeconds, reductions},
      {6, "theorem-consistency fuzz", kFuzzSeconds, fuzz},
      {7, "coefficient ring oracle", 0, coefficient_ring},
      {8, "CLI goldens and exit codes", 0, cli},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > 0 && secs >= c.seconds) o.require(false, "over the time limit");
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.name << " (" << secs << "s";
    if (c.seconds > 0) std::cout << ", limit " << c.seconds << "s";
    std::cout << ")";
    if (!o.pass) std::cout << " -- " << o.detail;
    std::cout << "\n";
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
