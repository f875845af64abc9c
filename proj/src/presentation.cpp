#include "eqsurf/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "eqsurf/dsl.hpp"
#include "eqsurf/error.hpp"

namespace eqsurf {

std::string catalog_name(CatalogEntry e) {
  switch (e) {
    case CatalogEntry::S11: return "S(1,1)";
    case CatalogEntry::S20: return "S(2,0)";
    case CatalogEntry::S21: return "S(2,1)";
    case CatalogEntry::S22: return "S(2,2)";
    case CatalogEntry::S2a: return "S2a";
    case CatalogEntry::TorusReflection: return "S(2,1)+S10AT";
    case CatalogEntry::RP2Rotation: return "S(2,2)+FM";
    case CatalogEntry::T1Anti: return "T1anti";
    case CatalogEntry::Genus2Rotation: return "S(2,2)#M1";
  }
  return "";
}

std::vector<CatalogEntry> all_catalog_entries() {
  return {CatalogEntry::S11, CatalogEntry::S20, CatalogEntry::S21, CatalogEntry::S22, CatalogEntry::S2a,
          CatalogEntry::TorusReflection, CatalogEntry::RP2Rotation, CatalogEntry::T1Anti,
          CatalogEntry::Genus2Rotation};
}

SurfacePtr catalog_surface(CatalogEntry e) {
  if (e == CatalogEntry::S11) return nullptr;
  return parse_surface(catalog_name(e));
}

std::optional<CatalogEntry> catalog_lookup(const SurfaceDescriptor& d) {
  for (auto e : all_catalog_entries()) {
    auto s = catalog_surface(e);
    if (s && *s == d) return e;
  }
  // other spellings of the same equivariant surfaces
  if (d == *make_trivial(NoneqSurface::M(0))) return CatalogEntry::S20;
  if (d == *make_free(NoneqSurface::N(1), {true})) return CatalogEntry::S2a;
  if (d == *make_doubling(NoneqSurface::M(1), DoublingKind::S11)) return CatalogEntry::Genus2Rotation;
  return std::nullopt;
}

ClassExpression RingPresentation::gen(const std::string& n) const {
  for (const auto& g : generators)
    if (g.name == n) return ClassExpression::gen(g);
  throw DomainError("no generator " + n + " in " + name);
}

std::string RingPresentation::text() const {
  std::string out = base_torsion >= 0 ? "tau^-1 M2" : "M2";
  std::vector<std::string> nf;
  std::vector<std::string> fr;
  for (const auto& g : generators) (g.free ? fr : nf).push_back(g.name);
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  if (!nf.empty()) out += "[" + join(nf) + "]";
  if (!fr.empty()) out += "{" + join(fr) + "}";
  if (!relations.empty()) {
    out += "/(";
    for (std::size_t i = 0; i < relations.size(); ++i)
      out += (i ? ", " : "") + relations[i].lhs.str() + " = " + relations[i].rhs.str();
    out += ")";
  }
  if (!generators.empty()) {
    out += ";";
    for (const auto& g : generators) {
      out += " |" + g.name + "|=";
      if (g.free) out += "(" + std::to_string(g.degree.p) + ",q)";
      else out += to_string(g.degree);
    }
  }
  return out;
}

// ---------------------------------------------------------------- catalog

namespace {

struct Builder {
  RingPresentation pres;

  ClassExpression G(const std::string& n) const { return pres.gen(n); }
  static ClassExpression S(const std::string& t) { return ClassExpression::scalar(parse_m2(t)); }
  static ClassExpression L(int a, int b) { return ClassExpression::scalar(LambdaElt::monomial(LambdaElt::kUnbounded, a, b)); }
  void gen(const std::string& n, int p, int q, bool free = false, int torsion = -1) {
    pres.generators.push_back({n, {p, q}, free, torsion});
  }
  void rel(const ClassExpression& l, const ClassExpression& r, bool torsion = false) {
    pres.relations.push_back({l, r, torsion});
  }
  void alias(const std::string& n, const ClassExpression& e) { pres.aliases[n] = e; }
};

}  // namespace

RingPresentation present_catalog(CatalogEntry e) {
  Builder b;
  b.pres.name = catalog_name(e);
  switch (e) {
    case CatalogEntry::S11:
      b.gen("x", 1, 1);
      b.rel(b.G("x") * b.G("x"), Builder::S("rho") * b.G("x"));
      b.alias("a", b.G("x"));
      b.alias("b", b.G("x") + Builder::S("rho"));
      b.pres.additive.add_free(0, 0).add_free(1, 1);
      break;
    case CatalogEntry::S20:
    case CatalogEntry::S21:
      b.gen("y", 2, e == CatalogEntry::S20 ? 0 : 1);
      b.rel(b.G("y") * b.G("y"), ClassExpression::zero());
      b.alias("p", b.G("y"));
      break;
    case CatalogEntry::S22:
      b.gen("y", 2, 2);
      b.rel(b.G("y") * b.G("y"), Builder::S("rho^2") * b.G("y"));
      b.alias("a", b.G("y"));
      b.alias("b", b.G("y") + Builder::S("rho^2"));
      break;
    case CatalogEntry::S2a:
      b.pres.base_torsion = 2;
      b.rel(Builder::S("rho^3"), ClassExpression::zero(), true);
      break;
    case CatalogEntry::TorusReflection: {
      b.gen("x", 1, 1);
      b.gen("y", 1, 0);
      b.rel(b.G("x") * b.G("x"), Builder::S("rho") * b.G("x"));
      b.rel(b.G("y") * b.G("y"), ClassExpression::zero());
      auto x = b.G("x");
      auto y = b.G("y");
      b.alias("C", x);
      b.alias("C'", x + Builder::S("rho"));
      b.alias("D", y);
      b.alias("a", x * y);
      b.alias("b", x * y + Builder::S("rho") * y);
      break;
    }
    case CatalogEntry::RP2Rotation: {
      b.gen("x", 1, 1);
      b.gen("y", 2, 1);
      auto x = b.G("x");
      auto y = b.G("y");
      b.rel(x * x, Builder::S("tau") * y + Builder::S("rho") * x);
      b.rel(y * y, ClassExpression::zero());
      b.rel(x * y, ClassExpression::zero());
      b.alias("C", x + Builder::S("rho"));
      b.alias("C'", x);
      b.alias("C''", x);
      b.alias("p", y);
      b.alias("p''", y);
      b.alias("q", Builder::S("tau") * y + Builder::S("rho") * x);
      break;
    }
    case CatalogEntry::T1Anti: {
      b.pres.base_torsion = 1;
      b.gen("x", 1, 1);
      auto x = b.G("x");
      b.rel(Builder::S("rho^2"), ClassExpression::zero(), true);
      b.rel(x * x, ClassExpression::zero());
      b.alias("Ca", x);
      b.alias("Z", Builder::S("1"));
      // [C + sigma C]_q = rho tau^{q-1}
      b.alias("CsC", Builder::L(1, -1));
      b.alias("C'sC'", Builder::L(1, -1));
      break;
    }
    case CatalogEntry::Genus2Rotation: {
      b.gen("p", 2, 2);
      b.gen("u", 1, 0, true, 0);
      b.gen("v", 1, 0, true, 0);
      auto p = b.G("p");
      auto u = b.G("u");
      auto v = b.G("v");
      b.rel(p * p, Builder::S("rho^2") * p);
      b.rel(u * v, Builder::S("theta") * p);
      b.rel(u * u, ClassExpression::zero());
      b.rel(v * v, ClassExpression::zero());
      b.rel(p * u, ClassExpression::zero());
      b.rel(p * v, ClassExpression::zero());
      b.rel(Builder::S("rho") * u, ClassExpression::zero(), true);
      b.rel(Builder::S("rho") * v, ClassExpression::zero(), true);
      b.alias("a", p);
      b.alias("b", p + Builder::S("rho^2"));
      b.alias("D", Builder::S("rho"));
      b.alias("C", u);
      b.alias("C'", v);
      b.alias("zsz", Builder::S("theta") * p);
      break;
    }
  }
  if (e != CatalogEntry::S11) b.pres.additive = cohomology(*catalog_surface(e));
  return b.pres;
}

std::optional<RingPresentation> present_ring(const SurfaceDescriptor& d) {
  auto e = catalog_lookup(d);
  if (!e) return std::nullopt;
  return present_catalog(*e);
}

// ---------------------------------------------------------------- rewriting

namespace {

struct Rule {
  ClassExpression::Monomial lhs;
  ClassExpression rhs;
};

std::vector<Rule> rules_of(const RingPresentation& pres) {
  std::vector<Rule> out;
  for (const auto& r : pres.relations) {
    if (r.torsion) continue;
    if (r.lhs.terms().size() != 1) throw DomainError("relation left side must be a monomial");
    const auto& [m, c] = *r.lhs.terms().begin();
    if (m.empty()) throw DomainError("scalar relation must be marked as torsion");
    out.push_back({m, r.rhs});
  }
  return out;
}

bool divides(const ClassExpression::Monomial& a, const ClassExpression::Monomial& b) {
  for (const auto& [n, e] : a) {
    auto it = b.find(n);
    if (it == b.end() || it->second < e) return false;
  }
  return true;
}

ClassExpression::Monomial quotient(ClassExpression::Monomial b, const ClassExpression::Monomial& a) {
  for (const auto& [n, e] : a) {
    b[n] -= e;
    if (b[n] == 0) b.erase(n);
  }
  return b;
}

ClassExpression with_generators(const RingPresentation& pres) {
  ClassExpression e;
  for (const auto& g : pres.generators) e.register_generator(g);
  return e;
}

ClassExpression monomial_expr(const RingPresentation& pres, const ClassExpression::Monomial& m,
                              const Coefficient& c) {
  ClassExpression e = with_generators(pres);
  e.add_term(m, c);
  return e;
}

// one rewrite of term (m, c) with rule r
ClassExpression rewrite(const RingPresentation& pres, const ClassExpression::Monomial& m, const Coefficient& c,
                        const Rule& r) {
  return monomial_expr(pres, quotient(m, r.lhs), c) * r.rhs;
}

ClassExpression reduce_fully(const RingPresentation& pres, const std::vector<Rule>& rules, ClassExpression e) {
  for (int guard = 0; guard < 100000; ++guard) {
    bool changed = false;
    for (const auto& [m, c] : e.terms()) {
      for (const auto& r : rules) {
        if (!divides(r.lhs, m)) continue;
        ClassExpression next = with_generators(pres) + e;
        ClassExpression term = monomial_expr(pres, m, c);
        next += term;  // removes the term (characteristic 2)
        next += rewrite(pres, m, c, r);
        e = next;
        changed = true;
        break;
      }
      if (changed) break;
    }
    if (!changed) return e.canonical(pres.base_torsion);
  }
  throw DomainError("rewriting did not terminate");
}

}  // namespace

ClassExpression normalize(const ClassExpression& e, const RingPresentation& pres) {
  ClassExpression start = with_generators(pres);
  start += e;
  return reduce_fully(pres, rules_of(pres), start);
}

namespace {

void monomials_upto(const RingPresentation& pres, int max_degree,
                    const std::function<void(const ClassExpression::Monomial&)>& f) {
  std::vector<std::string> names;
  for (const auto& g : pres.generators) names.push_back(g.name);
  ClassExpression::Monomial m;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == names.size()) {
      f(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      if (e) m[names[i]] = e;
      else m.erase(names[i]);
      rec(i + 1, left - e);
    }
    m.erase(names[i]);
  };
  rec(0, max_degree);
}

}  // namespace

std::vector<ClassExpression::Monomial> normal_monomials(const RingPresentation& pres, int max_degree) {
  auto rules = rules_of(pres);
  std::vector<ClassExpression::Monomial> out;
  monomials_upto(pres, max_degree, [&](const ClassExpression::Monomial& m) {
    for (const auto& r : rules)
      if (divides(r.lhs, m)) return;
    out.push_back(m);
  });
  return out;
}

NiceModule normal_form_module(const RingPresentation& pres) {
  NiceModule out;
  ClassExpression probe = with_generators(pres);
  int bound = static_cast<int>(pres.generators.size()) * 4 + 4;
  auto normal = normal_monomials(pres, bound);
  for (const auto& m : normal) {
    int total = 0;
    for (const auto& [n, e] : m) total += e;
    if (total == bound) throw DomainError("presentation has non-nilpotent normal monomials");
    Bidegree d = probe.monomial_degree(m);
    if (pres.base_torsion >= 0 || probe.monomial_is_free(m)) {
      int r = pres.base_torsion >= 0 ? pres.base_torsion : LambdaElt::kUnbounded;
      for (const auto& [n, e] : m) {
        const auto& g = probe.generators().at(n);
        if (g.free && g.torsion >= 0) r = std::min(r, g.torsion);
      }
      if (r == LambdaElt::kUnbounded) throw DomainError("free generator without torsion bound");
      out.add_antipodal(d.p, r, 1, d.q);
    } else {
      out.add_free(d.p, d.q);
    }
  }
  return out;
}

ConfluenceReport check_confluence(const RingPresentation& pres, int max_degree) {
  auto rules = rules_of(pres);
  ConfluenceReport rep;
  monomials_upto(pres, max_degree, [&](const ClassExpression::Monomial& m) {
    std::optional<ClassExpression> first;
    for (const auto& r : rules) {
      if (!divides(r.lhs, m)) continue;
      ++rep.checked;
      ClassExpression res = reduce_fully(pres, rules, rewrite(pres, m, M2Elt::one(), r));
      if (!first) first = res;
      else if (!(res == *first)) {
        rep.ok = false;
        rep.failures.push_back(monomial_string(m) + ": " + first->str() + " vs " + res.str());
      }
    }
  });
  return rep;
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
public:
  ExprParser(const std::string& s, const RingPresentation& pres) : s_(s), pres_(pres) {}

  ClassExpression parse() {
    ClassExpression e = expr();
    ws();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(const std::string& t) {
    ws();
    if (s_.compare(i_, t.size(), t) == 0) {
      i_ += t.size();
      return true;
    }
    return false;
  }
  bool peek_word(const std::string& w) {
    ws();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    std::size_t j = i_ + w.size();
    return j >= s_.size() || !ident_char(s_[j]);
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  }
  [[noreturn]] void fail(const std::string& m) { throw ParseError(m, i_); }

  int integer() {
    ws();
    std::size_t j = i_;
    if (j < s_.size() && s_[j] == '-') ++j;
    std::size_t k = j;
    while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
    if (k == j) fail("expected integer");
    int v = std::stoi(s_.substr(i_, k - i_));
    i_ = k;
    return v;
  }
  int exponent() {
    if (eat("^")) return integer();
    return 1;
  }

  ClassExpression base() {
    ClassExpression b;
    for (const auto& g : pres_.generators) b.register_generator(g);
    return b;
  }

  ClassExpression expr() {
    ClassExpression e = term();
    while (eat("+")) e += term();
    return e;
  }

  ClassExpression term() {
    ClassExpression e = factor();
    while (eat("*")) e = e * factor();
    return e;
  }

  ClassExpression factor() {
    ws();
    if (peek_word("rho")) {
      eat("rho");
      int k = exponent();
      if (k < 0) fail("negative power of rho");
      return ClassExpression::scalar(M2Elt(M2Monomial::rho(k)));
    }
    if (peek_word("tau")) {
      eat("tau");
      int k = exponent();
      if (k >= 0) return ClassExpression::scalar(M2Elt(M2Monomial::tau(k)));
      return ClassExpression::scalar(LambdaElt::monomial(LambdaElt::kUnbounded, 0, k));
    }
    if (peek_word("theta")) {
      eat("theta");
      int a = 0;
      int b = 0;
      if (eat("/")) {
        bool paren = eat("(");
        bool any = false;
        for (;;) {
          if (peek_word("rho")) {
            eat("rho");
            a += exponent();
          } else if (peek_word("tau")) {
            eat("tau");
            b += exponent();
          } else {
            break;
          }
          any = true;
          if (!paren) break;
          eat("*");
        }
        if (!any) fail("expected rho or tau after '/'");
        if (paren && !eat(")")) fail("expected ')'");
      }
      return ClassExpression::scalar(M2Elt(M2Monomial::bot(a, b)));
    }
    ClassExpression atom;
    if (eat("(")) {
      atom = expr();
      if (!eat(")")) fail("expected ')'");
    } else if (eat("1")) {
      atom = ClassExpression::scalar(M2Elt::one());
    } else if (eat("0")) {
      atom = ClassExpression::zero();
    } else {
      ws();
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      if (j == i_) fail("expected a class");
      std::string name = s_.substr(i_, j - i_);
      std::size_t at = i_;
      i_ = j;
      bool found = false;
      for (const auto& g : pres_.generators)
        if (g.name == name) {
          atom = ClassExpression::gen(g);
          found = true;
        }
      if (!found) {
        auto it = pres_.aliases.find(name);
        if (it == pres_.aliases.end()) throw ParseError("unknown class '" + name + "' in " + pres_.name, at);
        atom = it->second;
      }
    }
    int k = exponent();
    if (k < 0) fail("negative power of a class");
    ClassExpression out = base() + ClassExpression::scalar(M2Elt::one());
    for (int t = 0; t < k; ++t) out = out * atom;
    return out;
  }

  const std::string& s_;
  const RingPresentation& pres_;
  std::size_t i_ = 0;
};

}  // namespace

ClassExpression parse_class_expression(const std::string& text, const RingPresentation& pres) {
  ExprParser p(text, pres);
  ClassExpression e;
  for (const auto& g : pres.generators) e.register_generator(g);
  e += p.parse();
  return e;
}

// ---------------------------------------------------------------- intersections

CatalogClasses catalog_classes(CatalogEntry e) {
  CatalogClasses cc;
  auto add = [&](const ClassDescriptor& c) { cc.classes[c.name] = c; };
  using CD = ClassDescriptor;
  switch (e) {
    case CatalogEntry::S11:
      add(CD::nonfree("a", 1, {1}, {"a"}));
      add(CD::nonfree("b", 1, {1}, {"b"}));
      cc.intersections = {{"a", "b", std::nullopt}};
      break;
    case CatalogEntry::S22:
      add(CD::nonfree("a", 2, {2}, {"a"}));
      add(CD::nonfree("b", 2, {2}, {"b"}));
      break;
    case CatalogEntry::TorusReflection:
      add(CD::nonfree("C", 1, {1}, {"C"}));
      add(CD::nonfree("C'", 1, {1}, {"C'"}));
      add(CD::nonfree("D", 1, {0, 0}, {"a", "b"}));
      add(CD::nonfree("a", 2, {1}, {"a"}));
      add(CD::nonfree("b", 2, {1}, {"b"}));
      cc.intersections = {{"C", "D", "a"}, {"C'", "D", "b"}, {"C", "C'", std::nullopt}};
      break;
    case CatalogEntry::RP2Rotation:
      add(CD::nonfree("C", 1, {1}, {"C"}));
      add(CD::nonfree("C'", 1, {0, 1}, {"p", "q"}));
      add(CD::nonfree("C''", 1, {0, 1}, {"p''", "q"}));
      add(CD::nonfree("p", 2, {1}, {"p"}));
      add(CD::nonfree("p''", 2, {1}, {"p''"}));
      add(CD::nonfree("q", 2, {2}, {"q"}));
      cc.intersections = {{"C", "C'", "p"}, {"C'", "C''", "q"}, {"C", "C''", "p''"}};
      break;
    case CatalogEntry::T1Anti:
      add(CD::free_family("Ca", 1, 1));
      add(CD::free_family("CsC", 1, 0));
      add(CD::free_family("C'sC'", 1, 0));
      cc.intersections = {{"CsC", "C'sC'", std::nullopt}};
      break;
    case CatalogEntry::Genus2Rotation:
      add(CD::free_family("C", 1, 0));
      add(CD::free_family("C'", 1, 0));
      add(CD::free_family("zsz", 2, 0));
      add(CD::nonfree("a", 2, {2}, {"a"}));
      add(CD::nonfree("b", 2, {2}, {"b"}));
      add(CD::nonfree("D", 1, {1, 1}, {"a", "b"}));
      cc.intersections = {{"C", "C'", "zsz"}, {"a", "b", std::nullopt}};
      break;
    default:
      break;
  }
  return cc;
}

}  // namespace eqsurf
