#include "eqsurf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqsurf/classes.hpp"
#include "eqsurf/dsl.hpp"
#include "eqsurf/error.hpp"
#include "eqsurf/graded_maps.hpp"
#include "eqsurf/presentation.hpp"
#include "eqsurf/surfaces.hpp"
#include "eqsurf/verification.hpp"

namespace eqsurf {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "eqsurf/1";

std::string strip(const std::string& s) {
  std::string o;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) o += c;
  return o;
}

NoneqSurface parse_noneq(const std::string& text) {
  std::string s = strip(text);
  if (s.size() < 2 || (s[0] != 'M' && s[0] != 'N') ||
      !std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      s.size() > 7)
    throw ParseError("expected M<g> or N<k>", 0);
  int g = std::stoi(s.substr(1));
  return s[0] == 'M' ? NoneqSurface::M(g) : NoneqSurface::N(g);
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw ParseError("expected a string of 0s and 1s", i);
    w.push_back(text[i] == '1');
  }
  return w;
}

Window window_of(const std::vector<int>& v) {
  if (v.empty()) return {};
  Window w{v[0], v[1], v[2], v[3]};
  if (w.pmin > w.pmax || w.qmin > w.qmax) throw DomainError("window bounds must satisfy pmin <= pmax, qmin <= qmax");
  if (w.pmax - w.pmin > 200 || w.qmax - w.qmin > 200) throw DomainError("window is too large");
  return w;
}

Json invariants_json(const Invariants& inv) {
  return Json{{"F", inv.F}, {"C", inv.C}, {"beta", inv.beta}, {"free", inv.is_free}, {"trivial", inv.is_trivial}};
}

std::string invariants_text(const SurfaceDescriptor& d, const Invariants& inv) {
  std::ostringstream os;
  os << "surface: " << to_string(d) << "\n";
  os << "F: " << inv.F << "\n";
  os << "C: " << inv.C << "\n";
  os << "beta: " << inv.beta << "\n";
  os << "free: " << (inv.is_free ? "yes" : "no") << "\n";
  os << "trivial: " << (inv.is_trivial ? "yes" : "no") << "\n";
  return os.str();
}

std::string weights_string(const std::vector<int>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

Json generator_json(const ClassDescriptor& c) {
  ClassDegree d = class_bidegree(c);
  Json j{{"name", c.name}, {"codim", c.codim}, {"free", c.free}};
  if (c.free) j["torsion"] = c.torsion;
  else {
    j["weight"] = d.q;
    j["weights"] = c.weights;
  }
  j["bidegree"] = to_string(d);
  return j;
}

std::string generators_text(const std::vector<ClassDescriptor>& gens) {
  std::size_t width = 4;
  for (const auto& c : gens) width = std::max(width, c.name.size());
  std::ostringstream os;
  for (const auto& c : gens) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << c.name << std::setw(8)
       << to_string(class_bidegree(c));
    if (c.free) os << "free family, A" << c.torsion;
    else os << "weights " << weights_string(c.weights);
    os << "\n";
  }
  return os.str();
}

struct CatalogTarget {
  CatalogEntry entry;
  RingPresentation pres;
};

std::optional<CatalogTarget> catalog_target(const std::string& text) {
  if (strip(text) == "S(1,1)") return CatalogTarget{CatalogEntry::S11, present_catalog(CatalogEntry::S11)};
  SurfacePtr d = parse_surface(text);
  auto e = catalog_lookup(*d);
  if (!e) return std::nullopt;
  return CatalogTarget{*e, present_catalog(*e)};
}

Json ring_json(const RingPresentation& p) {
  Json j{{"name", p.name}, {"text", p.text()}};
  Json gens = Json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"name", g.name}, {"bidegree", g.free ? "(" + std::to_string(g.degree.p) + ",q)" : to_string(g.degree)},
                    {"free", g.free}});
  j["generators"] = gens;
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(r.lhs.str() + " = " + r.rhs.str());
  j["relations"] = rels;
  Json al = Json::object();
  for (const auto& [n, e] : p.aliases) al[n] = e.str();
  j["aliases"] = al;
  return j;
}

struct Options {
  bool json = false;
  std::string surface;
  std::string noneq;
  std::string bits;
  std::string expression;
  std::vector<int> window;
  int q = 0;
  int rank = 0;
  std::vector<int> weights;
  bool free_base = false;
  std::string module;
  std::vector<int> betti;
  std::uint64_t seed = 1;
  int depth = 10;
  int count = 200;
};

class Runner {
public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int invariants_cmd() {
    SurfacePtr d = parse_surface(o_.surface);
    Invariants inv = invariants(*d);
    if (o_.json) emit(Json{{"schema", kSchema}, {"surface", to_string(*d)}, {"invariants", invariants_json(inv)}});
    else out_ << invariants_text(*d, inv);
    return kExitOk;
  }

  int cohom_cmd() {
    SurfacePtr d = parse_surface(o_.surface);
    NiceModule m = cohomology(*d);
    Window w = window_of(o_.window);
    if (o_.json)
      emit(Json{{"schema", kSchema}, {"surface", to_string(*d)}, {"summands", summand_string(m)},
                {"module", to_json(m)}, {"grid", grid_json(m, w)}});
    else out_ << "surface: " << to_string(*d) << "\n" << render_grid(m, w);
    return kExitOk;
  }

  int decompose_cmd() {
    NoneqSurface q = parse_noneq(o_.noneq);
    std::vector<bool> w = parse_bits(o_.bits);
    SurfacePtr d = make_free(q, w);
    FreeData fd = free_data(*d);
    auto pieces = u_module_pieces(fd.ring, fd.w);
    NiceModule m = cohomology(*d);
    if (o_.json) {
      Json ps = Json::array();
      for (const auto& p : pieces) ps.push_back({{"start", p.start}, {"length", p.length}});
      emit(Json{{"schema", kSchema}, {"surface", to_string(*d)}, {"pieces", ps}, {"summands", summand_string(m)}});
    } else {
      out_ << "surface: " << to_string(*d) << "\n";
      for (const auto& p : pieces)
        out_ << "piece: start " << p.start << " length " << p.length << " -> "
             << summand_string(AntipodalSummand{p.start, p.length - 1}) << "\n";
      out_ << "summands: " << summand_string(m) << "\n";
    }
    return kExitOk;
  }

  int ring_cmd() {
    auto t = catalog_target(o_.surface);
    if (!t) throw DomainError("outside catalog");
    if (o_.json) emit(Json{{"schema", kSchema}, {"surface", t->pres.name}, {"ring", ring_json(t->pres)}});
    else out_ << t->pres.text() << "\n";
    return kExitOk;
  }

  int generators_cmd() {
    SurfacePtr d = parse_surface(o_.surface);
    auto gens = module_generators(d);
    if (o_.json) {
      Json a = Json::array();
      for (const auto& c : gens) a.push_back(generator_json(c));
      emit(Json{{"schema", kSchema}, {"surface", to_string(*d)}, {"generators", a}});
    } else {
      out_ << generators_text(gens);
    }
    return kExitOk;
  }

  int product_cmd() {
    auto t = catalog_target(o_.surface);
    if (!t) throw DomainError("outside catalog");
    ClassExpression e = parse_class_expression(o_.expression, t->pres);
    ClassExpression n = normalize(e, t->pres);
    auto deg = n.bidegree();
    if (o_.json) {
      Json j{{"schema", kSchema}, {"surface", t->pres.name}, {"expression", o_.expression}, {"normal_form", n.str()}};
      j["bidegree"] = deg ? Json(to_string(*deg)) : Json(nullptr);
      emit(j);
    } else {
      out_ << n.str() << "\n";
    }
    return kExitOk;
  }

  int thom_cmd() {
    ThomBundleData v{o_.free_base, o_.rank, o_.weights};
    v.validate();
    ClassDegree deg = thom_bidegree(v);
    std::vector<M2Monomial> rest;
    if (!v.base_free) rest = thom_restrict_fixed(v);
    std::optional<TransferDecomposition> tr;
    if (!o_.module.empty()) {
      NiceModule src = parse_summands(o_.module);
      bool uniform = v.base_free || std::all_of(v.weights.begin(), v.weights.end(),
                                                [&](int w) { return w == v.weights.front(); });
      tr = transfer_decomposition(src, v.n, v.base_free ? 0 : deg.q, uniform);
    }
    auto transfer_strings = [&] {
      std::vector<std::string> s;
      for (const auto& f : tr->free) {
        if (f.lo == f.hi) s.push_back(summand_string(FreeSummand{f.p, f.lo}));
        else s.push_back("S(" + std::to_string(f.p) + "," + std::to_string(f.lo) + ".." + std::to_string(f.hi) + ")M2");
      }
      for (const auto& a : tr->antipodal) s.push_back(summand_string(a));
      return s;
    };
    if (o_.json) {
      Json j{{"schema", kSchema}, {"rank", v.n}, {"bidegree", to_string(deg)}};
      Json r = Json::array();
      for (const auto& m : rest) r.push_back(to_string(m, "*"));
      j["restrictions"] = r;
      if (tr) j["transfer"] = transfer_strings();
      emit(j);
    } else {
      out_ << "thom class: " << to_string(deg) << "\n";
      for (std::size_t i = 0; i < rest.size(); ++i)
        out_ << "restriction " << i << ": " << to_string(rest[i], "*") << "\n";
      if (tr) {
        auto s = transfer_strings();
        out_ << "transfer:";
        for (std::size_t i = 0; i < s.size(); ++i) out_ << (i ? " + " : " ") << s[i];
        out_ << "\n";
      }
    }
    return kExitOk;
  }

  int conjpt_cmd() {
    SurfacePtr d = parse_surface(o_.surface);
    ClassExpression c = conjugate_point_class(*d, o_.q);
    if (o_.json) {
      Json j{{"schema", kSchema}, {"surface", to_string(*d)}, {"q", o_.q}, {"class", c.str()}};
      auto deg = c.bidegree();
      j["bidegree"] = deg ? Json(to_string(*deg)) : Json(nullptr);
      emit(j);
    } else {
      out_ << c.str() << "\n";
    }
    return kExitOk;
  }

  int verify_cmd() {
    std::vector<VerificationReport> reps;
    std::string label;
    std::string key;
    if (!o_.module.empty()) {
      // a candidate module given by its summands: checks that need no surface
      NiceModule m = parse_summands(o_.module);
      Window w = stabilized_window(m, window_of(o_.window));
      reps.push_back(check_structure_theorem(m));
      if (!o_.betti.empty()) reps.push_back(check_forgetful_les(m, {o_.betti[0], o_.betti[1], o_.betti[2]}, w));
      reps.push_back(check_tau_iso(m, w));
      label = summand_string(m);
      key = "module";
    } else {
      if (!o_.betti.empty()) throw DomainError("--betti applies to --module only");
      SurfacePtr d = parse_surface(o_.surface);
      reps = verify_surface(d, window_of(o_.window));
      label = to_string(*d);
      key = "surface";
    }
    bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass(); });
    if (o_.json) {
      Json a = Json::array();
      for (const auto& r : reps) a.push_back(to_json(r));
      emit(Json{{"schema", kSchema}, {key, label}, {"pass", ok}, {"reports", a}});
    } else {
      out_ << key << ": " << label << "\n";
      for (const auto& r : reps) out_ << render_report(r);
      out_ << "verify: " << (ok ? "pass" : "FAIL") << "\n";
    }
    return ok ? kExitOk : kExitVerify;
  }

  int fuzz_cmd() {
    if (o_.depth < 0 || o_.depth > 50) throw DomainError("depth must be in [0, 50]");
    if (o_.count < 0 || o_.count > 100000) throw DomainError("count must be in [0, 100000]");
    FuzzReport r = fuzz_surfaces(o_.seed, o_.depth, o_.count);
    if (o_.json) {
      Json j = to_json(r);
      j = Json{{"schema", kSchema}, {"fuzz", j}};
      emit(j);
    } else {
      out_ << "fuzz: seed " << r.seed << " depth " << r.depth << " count " << r.count << " checks " << r.checks
           << " failures " << r.failures.size() << "\n";
      for (const auto& f : r.failures) out_ << "  " << f.surface << ": " << f.check << ": " << f.detail << "\n";
      out_ << "fuzz: " << (r.pass() ? "pass" : "FAIL") << "\n";
    }
    return r.pass() ? kExitOk : kExitVerify;
  }

  int export_cmd() {
    SurfacePtr d = parse_surface(o_.surface);
    Invariants inv = invariants(*d);
    NiceModule m = cohomology(*d);
    Window w = window_of(o_.window);
    Json j{{"schema", kSchema}, {"surface", to_string(*d)}, {"invariants", invariants_json(inv)},
           {"summands", summand_string(m)}, {"module", to_json(m)}, {"grid", grid_json(m, w)}};
    if (auto p = present_ring(*d)) j["ring"] = ring_json(*p);
    Json g = Json::array();
    for (const auto& c : module_generators(d)) g.push_back(generator_json(c));
    j["generators"] = g;
    auto reps = verify_surface(d, w);
    Json a = Json::array();
    bool ok = true;
    for (const auto& r : reps) {
      a.push_back(Json{{"check", r.check}, {"pass", r.pass()}, {"records", r.records.size()}});
      ok = ok && r.pass();
    }
    j["reports"] = a;
    emit(j);
    return ok ? kExitOk : kExitVerify;
  }

private:
  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bredon cohomology of C2-surfaces with Z/2 coefficients", "eqsurf"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "machine-readable output"); };
  auto add_surface = [&](CLI::App* s) { s->add_option("surface", o.surface, "surface expression")->required(); };
  auto add_window = [&](CLI::App* s) {
    s->add_option("--window", o.window, "pmin pmax qmin qmax")->expected(4);
  };

  auto* inv = app.add_subcommand("invariants", "F, C, beta and flags");
  add_surface(inv);
  auto* coh = app.add_subcommand("cohom", "cohomology grid and summands");
  add_surface(coh);
  add_window(coh);
  auto* dec = app.add_subcommand("decompose", "antipodal summands of a free action");
  dec->add_option("quotient", o.noneq, "orbit surface M<g> or N<k>")->required();
  dec->add_option("w", o.bits, "class of the double cover as bits")->required();
  auto* ring = app.add_subcommand("ring", "ring presentation (catalog surfaces)");
  add_surface(ring);
  auto* gens = app.add_subcommand("generators", "fundamental classes generating the module");
  add_surface(gens);
  auto* prod = app.add_subcommand("product", "normalize a class expression");
  add_surface(prod);
  prod->add_option("expression", o.expression, "e.g. \"C*D\"")->required();
  auto* thom = app.add_subcommand("thom", "Thom class of a bundle");
  thom->add_option("--rank", o.rank, "bundle rank")->required();
  thom->add_option("--weights", o.weights, "fiber weight over each fixed component")->delimiter(',');
  thom->add_flag("--free", o.free_base, "base has a free action");
  thom->add_option("--module", o.module, "summands of the base, e.g. \"M2 + S(1,1)M2\"");
  auto* conj = app.add_subcommand("conjpt", "class of a conjugate pair of points");
  add_surface(conj);
  conj->add_option("q", o.q, "weight")->required()->allow_extra_args(false);
  auto* ver = app.add_subcommand("verify", "run the consistency checks");
  auto* ver_surface = ver->add_option("surface", o.surface, "surface expression");
  auto* ver_module = ver->add_option("--module", o.module, "check a summand list instead, e.g. \"M2 + S(1,2)M2\"");
  ver_surface->excludes(ver_module);
  ver->add_option("--betti", o.betti, "b0 b1 b2 for the forgetful sequence check of --module")->expected(3);
  add_window(ver);
  auto* fz = app.add_subcommand("fuzz", "random surgery sequences through all checks");
  fz->add_option("--seed", o.seed, "random seed");
  fz->add_option("--depth", o.depth, "maximum number of suffix operations");
  fz->add_option("--count", o.count, "number of surfaces");
  auto* ex = app.add_subcommand("export-json", "single JSON document with every result");
  add_surface(ex);
  add_window(ex);
  for (auto* s : {inv, coh, dec, ring, gens, prod, thom, conj, ver, fz, ex}) add_json(s);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  Runner r(o, out);
  try {
    if (inv->parsed()) return r.invariants_cmd();
    if (coh->parsed()) return r.cohom_cmd();
    if (dec->parsed()) return r.decompose_cmd();
    if (ring->parsed()) return r.ring_cmd();
    if (gens->parsed()) return r.generators_cmd();
    if (prod->parsed()) return r.product_cmd();
    if (thom->parsed()) return r.thom_cmd();
    if (conj->parsed()) return r.conjpt_cmd();
    if (ver->parsed()) {
      if (o.surface.empty() && o.module.empty()) throw DomainError("verify needs a surface or --module");
      return r.verify_cmd();
    }
    if (fz->parsed()) return r.fuzz_cmd();
    if (ex->parsed()) return r.export_cmd();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}

}  // namespace eqsurf
