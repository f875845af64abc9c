#include "eqsurf/verification.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "eqsurf/classes.hpp"
#include "eqsurf/dsl.hpp"
#include "eqsurf/error.hpp"

namespace eqsurf {

bool VerificationReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

namespace {

bool column_settled_high(const NiceModule& m, int p, int q) {
  return m.dim_at(p, q) == m.dim_at(p, q - 1) && m.dim_at(p, q - 1) == m.dim_at(p, q - 2);
}

bool column_settled_low(const NiceModule& m, int p, int q) {
  return m.dim_at(p, q) == m.dim_at(p, q + 1) && m.dim_at(p, q + 1) == m.dim_at(p, q + 2);
}

}  // namespace

Window stabilized_window(const NiceModule& m, Window w) {
  w.pmin = std::min(w.pmin, 0);
  w.pmax = std::max(w.pmax, 3);
  if (w.qmax < w.qmin + 2) w.qmax = w.qmin + 2;
  // rows where the bookkeeping reads dim(p, q+1) must also be settled
  for (int guard = 0; guard < 512; ++guard) {
    bool ok = true;
    for (int p = w.pmin; p <= w.pmax; ++p) ok = ok && column_settled_high(m, p, w.qmax);
    if (ok) break;
    ++w.qmax;
  }
  for (int guard = 0; guard < 512; ++guard) {
    bool ok = true;
    for (int p = w.pmin; p <= w.pmax; ++p) ok = ok && column_settled_low(m, p, w.qmin);
    if (ok) break;
    --w.qmin;
  }
  return w;
}

VerificationReport check_structure_theorem(const NiceModule& m) {
  VerificationReport r{"structure", {}};
  for (const auto& f : m.free_summands()) {
    bool ok = f.p >= f.q && f.q >= 0;
    r.add({{f.p, f.q}, 1, ok ? 1 : 0, ok, summand_string(f)});
  }
  for (const auto& a : m.antipodal_summands()) {
    bool ok = a.s >= 0 && a.r >= 0;
    r.add({{a.s, 0}, 1, ok ? 1 : 0, ok, summand_string(a)});
  }
  return r;
}

VerificationReport check_forgetful_les(const NiceModule& m, const std::array<int, 3>& betti, const Window& w) {
  VerificationReport r{"forgetful-les", {}};
  for (int p = w.pmin; p <= w.pmax; ++p) {
    int b = p >= 0 && p <= 2 ? betti[static_cast<std::size_t>(p)] : 0;
    for (int q = w.qmin; q <= w.qmax; ++q) {
      int coker = m.dim_at(p, q + 1) - m.rho_rank_at(p - 1, q);
      int ker = m.dim_at(p, q) - m.rho_rank_at(p, q);
      int got = coker + ker;
      r.add({{p, q}, b, got, got == b, {}});
    }
  }
  return r;
}

VerificationReport check_tau_iso(const NiceModule& m, const Window& w) {
  VerificationReport r{"tau-iso", {}};
  for (int f = w.pmin; f <= w.pmax; ++f) {
    for (int g = std::max(f, w.qmin); g <= w.qmax; ++g) {
      int d0 = m.dim_at(f, g);
      int d1 = m.dim_at(f, g + 1);
      int rk = m.tau_rank_at(f, g);
      bool ok = d0 == d1 && rk == d0;
      if (d0 != d1) r.add({{f, g}, d0, d1, false, "dimension one step up in q"});
      else r.add({{f, g}, d0, rk, ok, ok ? std::string() : "tau rank"});
    }
  }
  return r;
}

VerificationReport check_topm2(const SurfaceDescriptor& d) {
  Invariants inv = invariants(d);
  if (inv.is_free) throw DomainError("top class check needs a nonfree surface");
  if (inv.is_trivial) throw DomainError("top class check needs a nontrivial action");
  NiceModule m = cohomology(d);
  Bidegree want = inv.C > 0 ? Bidegree{2, 1} : Bidegree{2, 2};
  VerificationReport r{"topm2", {}};
  int high = 0;
  for (const auto& f : m.free_summands()) {
    if (f.p < 2) continue;
    ++high;
    bool ok = Bidegree{f.p, f.q} == want;
    r.add({{f.p, f.q}, 1, ok ? 1 : 0, ok, "expected " + to_string(want)});
  }
  r.add({want, 1, high, high == 1, "free summands with p >= 2"});
  return r;
}

VerificationReport check_generator_coverage(const SurfacePtr& d) {
  VerificationReport r{"generators", {}};
  NiceModule m = cohomology(*d);
  std::multiset<std::pair<int, int>> want_free;
  std::multiset<std::pair<int, int>> want_anti;
  for (const auto& f : m.free_summands()) want_free.insert({f.p, f.q});
  for (const auto& a : m.antipodal_summands()) want_anti.insert({a.s, a.r});
  std::multiset<std::pair<int, int>> got_free;
  std::multiset<std::pair<int, int>> got_anti;
  for (const auto& c : module_generators(d)) {
    ClassDegree deg = class_bidegree(c);
    if (deg.family) got_anti.insert({deg.p, c.torsion});
    else got_free.insert({deg.p, deg.q});
  }
  auto compare = [&](const auto& want, const auto& got, bool free) {
    std::set<std::pair<int, int>> keys(want.begin(), want.end());
    keys.insert(got.begin(), got.end());
    for (const auto& k : keys) {
      int e = static_cast<int>(want.count(k));
      int a = static_cast<int>(got.count(k));
      std::string what = free ? summand_string(FreeSummand{k.first, k.second})
                              : summand_string(AntipodalSummand{k.first, k.second});
      r.add({{k.first, free ? k.second : 0}, e, a, e == a, what});
    }
  };
  compare(want_free, got_free, true);
  compare(want_anti, got_anti, false);
  return r;
}

std::vector<VerificationReport> verify_surface(const SurfacePtr& d, const Window& w) {
  std::vector<VerificationReport> out;
  Invariants inv = invariants(*d);
  NiceModule m = cohomology(*d);
  auto b = singular_betti(*d);
  Window sw = stabilized_window(m, w);
  out.push_back(check_structure_theorem(m));
  out.push_back(check_forgetful_les(m, {b[0], b[1], b[2]}, sw));
  out.push_back(check_tau_iso(m, sw));
  if (!inv.is_free && !inv.is_trivial) out.push_back(check_topm2(*d));
  out.push_back(check_generator_coverage(d));
  return out;
}

// ---------------------------------------------------------------- fuzzing

namespace {

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

NoneqSurface random_noneq(std::mt19937_64& rng, bool allow_sphere) {
  if (pick(rng, 2) == 0) return NoneqSurface::M(pick(rng, 3) + (allow_sphere ? 0 : 1));
  return NoneqSurface::N(pick(rng, 3) + 1);
}

SurfacePtr random_base(std::mt19937_64& rng, int depth) {
  static const SphereKind spheres[] = {SphereKind::S20, SphereKind::S21, SphereKind::S22, SphereKind::S2a};
  int kind = depth == 0 ? 0 : pick(rng, 4);
  if (kind == 0) return make_sphere(spheres[pick(rng, 4)]);
  if (kind == 1) return make_doubling(random_noneq(rng, false), pick(rng, 2) ? DoublingKind::S11 : DoublingKind::S10);
  if (kind == 2) {
    NoneqSurface q = random_noneq(rng, false);
    std::vector<bool> w(static_cast<std::size_t>(q.beta()));
    do {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = pick(rng, 2) == 1;
    } while (std::none_of(w.begin(), w.end(), [](bool b) { return b; }));
    return make_free(q, w);
  }
  return make_trivial(random_noneq(rng, true));
}

}  // namespace

SurfacePtr random_surface(std::mt19937_64& rng, int depth) {
  SurfacePtr d = random_base(rng, depth);
  if (invariants(*d).is_trivial) return d;
  int ops = depth > 0 ? pick(rng, depth + 1) : 0;
  for (int i = 0; i < ops; ++i) {
    Invariants inv = invariants(*d);
    int choice = pick(rng, inv.F >= 1 ? 4 : 3);
    switch (choice) {
      case 0: d = make_connsum(d, random_noneq(rng, false)); break;
      case 1: d = make_surgery(d, SurgeryKind::S10AT); break;
      case 2: d = make_surgery(d, SurgeryKind::S11AT); break;
      default: d = make_surgery(d, SurgeryKind::FM); break;
    }
  }
  return d;
}

FuzzReport fuzz_surfaces(std::uint64_t seed, int depth, int count) {
  if (depth < 0 || count < 0) throw DomainError("depth and count must be nonnegative");
  FuzzReport rep;
  rep.seed = seed;
  rep.depth = depth;
  rep.count = count;
  std::mt19937_64 rng(seed);
  for (int n = 0; n < count; ++n) {
    SurfacePtr d = random_surface(rng, depth);
    std::string text = to_string(*d);
    rep.surfaces.push_back(text);
    try {
      Invariants inv = invariants(*d);
      ++rep.checks;
      // a trivial action fixes everything; the parity law is about nontrivial ones
      if (!inv.is_trivial && (inv.beta - inv.F) % 2 != 0) rep.failures.push_back({text, "parity", "beta - F is odd"});
      ++rep.checks;
      if (!(*parse_surface(text) == *d)) rep.failures.push_back({text, "roundtrip", "parse(print(d)) != d"});
      for (const auto& r : verify_surface(d)) {
        ++rep.checks;
        if (r.pass()) continue;
        for (const auto& c : r.records) {
          if (c.pass) continue;
          rep.failures.push_back({text, r.check,
                                  "at " + to_string(c.cell) + " expected " + std::to_string(c.expected) + " got " +
                                      std::to_string(c.actual)});
          break;
        }
      }
    } catch (const DomainError& e) {
      rep.failures.push_back({text, "exception", e.what()});
    }
  }
  return rep;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["pass"] = r.pass();
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& c : r.records) {
    nlohmann::ordered_json x;
    x["bidegree"] = {c.cell.p, c.cell.q};
    x["expected"] = c.expected;
    x["actual"] = c.actual;
    x["pass"] = c.pass;
    if (!c.note.empty()) x["note"] = c.note;
    recs.push_back(x);
  }
  return j;
}

nlohmann::ordered_json to_json(const FuzzReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["depth"] = r.depth;
  j["count"] = r.count;
  j["checks"] = r.checks;
  j["pass"] = r.pass();
  auto& f = j["failures"] = nlohmann::ordered_json::array();
  for (const auto& x : r.failures) f.push_back({{"surface", x.surface}, {"check", x.check}, {"detail", x.detail}});
  return j;
}

std::string render_report(const VerificationReport& r) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : r.records) failed += c.pass ? 0 : 1;
  os << r.check << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.records.size() << " records";
  if (failed) os << ", " << failed << " failed";
  os << ")\n";
  for (const auto& c : r.records) {
    if (c.pass) continue;
    os << "  " << to_string(c.cell) << " expected " << c.expected << " got " << c.actual;
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace eqsurf
