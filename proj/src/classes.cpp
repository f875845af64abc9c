#include "eqsurf/classes.hpp"

#include <algorithm>

#include "eqsurf/error.hpp"

namespace eqsurf {

std::string to_string(const ClassDegree& d) {
  if (d.family) return "(" + std::to_string(d.p) + ",*)";
  return to_string(Bidegree{d.p, d.q});
}

// ---------------------------------------------------------------- Thom classes

void ThomBundleData::validate() const {
  if (n < 0) throw DomainError("bundle rank must be >= 0");
  if (base_free) {
    if (!weights.empty()) throw DomainError("a bundle over a free base has no fixed fibers");
    return;
  }
  if (weights.empty()) throw DomainError("a nonfree base needs at least one fixed component");
  for (int q : weights)
    if (q < 0 || q > n) throw DomainError("fiber weight " + std::to_string(q) + " outside [0, n]");
}

ClassDegree thom_bidegree(const ThomBundleData& v) {
  v.validate();
  if (v.base_free) return {v.n, 0, true};
  return {v.n, *std::max_element(v.weights.begin(), v.weights.end()), false};
}

std::vector<M2Monomial> thom_restrict_fixed(const ThomBundleData& v) {
  v.validate();
  if (v.base_free) throw DomainError("a free base has no fixed set");
  int q = *std::max_element(v.weights.begin(), v.weights.end());
  std::vector<M2Monomial> out;
  for (int qi : v.weights) out.push_back(M2Monomial::top(qi, q - qi));
  return out;
}

PullbackCoeff thom_pullback_coeff(int source_weight, int pulled_weight, bool target_free) {
  if (source_weight < 0 || pulled_weight < 0) throw DomainError("weights must be >= 0");
  PullbackCoeff c;
  if (target_free) {
    c.family = true;
    c.family_weight = source_weight;
    return c;
  }
  if (pulled_weight > source_weight) throw DomainError("pulled-back weight exceeds the source weight");
  c.coeff = M2Monomial::tau(source_weight - pulled_weight);
  return c;
}

// ---------------------------------------------------------------- descriptors

ClassDescriptor ClassDescriptor::nonfree(std::string name, int codim, std::vector<int> weights,
                                         std::vector<std::string> loci) {
  ClassDescriptor c;
  c.name = std::move(name);
  c.codim = codim;
  c.weights = std::move(weights);
  c.fixed_loci = std::move(loci);
  return c;
}

ClassDescriptor ClassDescriptor::free_family(std::string name, int codim, int torsion) {
  ClassDescriptor c;
  c.name = std::move(name);
  c.codim = codim;
  c.free = true;
  c.torsion = torsion;
  return c;
}

ClassDegree class_bidegree(const ClassDescriptor& c) {
  if (c.codim < 0) throw DomainError("negative codimension");
  if (c.free) return {c.codim, 0, true};
  if (c.weights.empty()) throw DomainError("nonfree class " + c.name + " has no fixed components");
  for (int w : c.weights)
    if (w < 0 || w > c.codim) throw DomainError("normal weight of " + c.name + " outside [0, codim]");
  return {c.codim, *std::max_element(c.weights.begin(), c.weights.end()), false};
}

Generator generator_of(const ClassDescriptor& c) {
  ClassDegree d = class_bidegree(c);
  return {c.name, {d.p, d.q}, c.free, c.torsion};
}

// ---------------------------------------------------------------- coefficients

bool coeff_is_zero(const Coefficient& c) {
  return std::visit([](const auto& x) { return x.is_zero(); }, c);
}

std::optional<Bidegree> coeff_bidegree(const Coefficient& c) {
  return std::visit([](const auto& x) { return x.bidegree(); }, c);
}

Coefficient coeff_add(const Coefficient& a, const Coefficient& b) {
  if (a.index() == b.index()) {
    if (auto* x = std::get_if<M2Elt>(&a)) return *x + std::get<M2Elt>(b);
    return std::get<LambdaElt>(a) + std::get<LambdaElt>(b);
  }
  const M2Elt& m = std::holds_alternative<M2Elt>(a) ? std::get<M2Elt>(a) : std::get<M2Elt>(b);
  const LambdaElt& l = std::holds_alternative<LambdaElt>(a) ? std::get<LambdaElt>(a) : std::get<LambdaElt>(b);
  if (m.is_zero()) return l;
  if (l.is_zero()) return m;
  for (const auto& t : m.terms())
    if (t.is_bot()) throw DomainError("cannot add a theta class to a tau-inverted one");
  return localize(m, l.r()) + l;
}

Coefficient coeff_mul(const Coefficient& a, const Coefficient& b) {
  if (a.index() == b.index()) {
    if (auto* x = std::get_if<M2Elt>(&a)) return *x * std::get<M2Elt>(b);
    return std::get<LambdaElt>(a) * std::get<LambdaElt>(b);
  }
  const M2Elt& m = std::holds_alternative<M2Elt>(a) ? std::get<M2Elt>(a) : std::get<M2Elt>(b);
  const LambdaElt& l = std::holds_alternative<LambdaElt>(a) ? std::get<LambdaElt>(a) : std::get<LambdaElt>(b);
  if (m.is_zero() || l.is_zero()) return M2Elt::zero();
  if (m.is_bottom()) return laurent_act_on_bottom(l, m);
  for (const auto& t : m.terms())
    if (t.is_bot()) throw DomainError("mixed theta and rho-tau coefficient against a tau-inverted one");
  return m2_act_on_lambda(m, l);
}

std::string coeff_string(const Coefficient& c) {
  return std::visit([](const auto& x) { return to_string(x, "*"); }, c);
}

namespace {

bool coeff_is_one(const Coefficient& c) {
  if (auto* m = std::get_if<M2Elt>(&c)) return *m == M2Elt::one();
  const auto& l = std::get<LambdaElt>(c);
  return l.terms().size() == 1 && *l.terms().begin() == LambdaElt::Mono{0, 0};
}

}  // namespace

// ---------------------------------------------------------------- expressions

ClassExpression ClassExpression::scalar(const Coefficient& c) {
  ClassExpression e;
  e.add_term({}, c);
  return e;
}

ClassExpression ClassExpression::gen(const Generator& g, const Coefficient& c) {
  ClassExpression e;
  e.register_generator(g);
  e.add_term({{g.name, 1}}, c);
  return e;
}

void ClassExpression::register_generator(const Generator& g) {
  auto it = gens_.find(g.name);
  if (it != gens_.end() && !(it->second == g)) throw DomainError("conflicting generator " + g.name);
  gens_[g.name] = g;
}

void ClassExpression::add_term(const Monomial& m, const Coefficient& c) {
  if (coeff_is_zero(c)) return;
  for (const auto& [name, e] : m) {
    if (e <= 0) throw DomainError("non-positive exponent");
    if (!gens_.count(name)) throw DomainError("unknown generator " + name);
  }
  auto it = terms_.find(m);
  Coefficient s = it == terms_.end() ? c : coeff_add(it->second, c);
  if (coeff_is_zero(s)) terms_.erase(m);
  else terms_[m] = s;
}

ClassExpression& ClassExpression::operator+=(const ClassExpression& o) {
  for (const auto& [n, g] : o.gens_) register_generator(g);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ClassExpression operator*(const ClassExpression& a, const ClassExpression& b) {
  ClassExpression out;
  for (const auto& [n, g] : a.gens_) out.register_generator(g);
  for (const auto& [n, g] : b.gens_) out.register_generator(g);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ClassExpression::Monomial m = ma;
      for (const auto& [n, e] : mb) m[n] += e;
      out.add_term(m, coeff_mul(ca, cb));
    }
  }
  return out;
}

bool ClassExpression::monomial_is_free(const Monomial& m) const {
  return std::any_of(m.begin(), m.end(), [&](const auto& f) { return gens_.at(f.first).free; });
}

Bidegree ClassExpression::monomial_degree(const Monomial& m) const {
  Bidegree d;
  for (const auto& [n, e] : m) {
    const auto& g = gens_.at(n);
    d = d + Bidegree{g.degree.p * e, g.degree.q * e};
  }
  return d;
}

std::optional<Bidegree> ClassExpression::bidegree() const {
  std::optional<Bidegree> d;
  for (const auto& [m, c] : terms_) {
    auto cd = coeff_bidegree(c);
    if (!cd) return std::nullopt;
    Bidegree t = monomial_degree(m) + *cd;
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

ClassExpression ClassExpression::canonical(int base_torsion) const {
  ClassExpression out;
  out.gens_ = gens_;
  for (const auto& [m, c] : terms_) {
    bool laurent = base_torsion >= 0 || monomial_is_free(m);
    if (laurent) {
      int r = base_torsion >= 0 ? base_torsion : LambdaElt::kUnbounded;
      for (const auto& [n, e] : m) {
        const auto& g = gens_.at(n);
        if (g.free && g.torsion >= 0) r = std::min(r, g.torsion);
      }
      if (auto* x = std::get_if<M2Elt>(&c)) out.add_term(m, localize(*x, r));
      else out.add_term(m, std::get<LambdaElt>(c).truncate(r));
    } else if (auto* l = std::get_if<LambdaElt>(&c)) {
      M2Elt v;
      for (const auto& [a, b] : l->terms()) {
        if (b < 0) throw DomainError("negative tau power on a nonfree class");
        v += M2Elt(M2Monomial::top(a, b));
      }
      out.add_term(m, v);
    } else {
      out.add_term(m, c);
    }
  }
  return out;
}

std::string monomial_string(const ClassExpression::Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [n, e] : m) {
    if (!out.empty()) out += "*";
    out += n;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string ClassExpression::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Coefficient>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    Bidegree dx = monomial_degree(x.first);
    Bidegree dy = monomial_degree(y.first);
    if (dx.p != dy.p) return dx.p > dy.p;
    return monomial_string(x.first) < monomial_string(y.first);
  });
  std::string out;
  for (const auto& [m, c] : items) {
    if (!out.empty()) out += " + ";
    std::string cs = coeff_string(c);
    bool sum = cs.find(" + ") != std::string::npos;
    if (m.empty()) out += cs;
    else if (coeff_is_one(c)) out += monomial_string(m);
    else out += (sum ? "(" + cs + ")" : cs) + "*" + monomial_string(m);
  }
  return out;
}

bool ClassExpression::operator==(const ClassExpression& o) const { return terms_ == o.terms_; }

// ---------------------------------------------------------------- products

ClassExpression product(const FundamentalClass& y, const FundamentalClass& z,
                        const std::optional<ClassDescriptor>& w) {
  class_bidegree(y.descriptor);
  class_bidegree(z.descriptor);
  if (!w) return ClassExpression::zero();
  if (w->codim != y.descriptor.codim + z.descriptor.codim)
    throw DomainError("intersection " + w->name + " is not transverse");
  Generator gw = generator_of(*w);
  auto family = [&](int weight) {
    if (!w->free) throw DomainError("intersection with a free class must be free");
    int r = w->torsion >= 0 ? w->torsion : LambdaElt::kUnbounded;
    return ClassExpression::gen(gw, LambdaElt::monomial(r, 0, weight));
  };
  bool yf = y.descriptor.free;
  bool zf = z.descriptor.free;
  if (yf && zf) return family(y.weight + z.weight);
  if (yf || zf) {
    const FundamentalClass& nf = yf ? z : y;
    const FundamentalClass& fr = yf ? y : z;
    return family(class_bidegree(nf.descriptor).q + fr.weight);
  }
  int qy = class_bidegree(y.descriptor).q;
  int qz = class_bidegree(z.descriptor).q;
  if (w->free) return family(qy + qz);
  int e = qy + qz - class_bidegree(*w).q;
  if (e < 0) throw DomainError("intersection weight exceeds q_Y + q_Z");
  return ClassExpression::gen(gw, M2Elt(M2Monomial::tau(e)));
}

std::vector<FixedRestriction> restrict_to_fixed(const ClassDescriptor& c) {
  if (c.free) throw DomainError(c.name + " is free and misses the fixed set");
  int q = class_bidegree(c).q;
  std::vector<FixedRestriction> out;
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    std::string locus = i < c.fixed_loci.size() ? c.fixed_loci[i] : c.name + "|" + std::to_string(i);
    out.push_back({locus, M2Monomial::top(c.weights[i], q - c.weights[i])});
  }
  return out;
}

SingularExpression forget(const ClassExpression& e) {
  if (!e.is_zero() && !e.bidegree()) throw DomainError("forget of an inhomogeneous expression");
  SingularExpression out;
  for (const auto& [m, c] : e.terms()) {
    int v = std::visit([](const auto& x) { return forget_scalar(x); }, c);
    if (v) out[m] ^= 1;
    if (out.count(m) && out[m] == 0) out.erase(m);
  }
  return out;
}

ClassExpression conjugate_point_class(const SurfaceDescriptor& ambient, int q) {
  Invariants inv = invariants(ambient);
  if (inv.is_trivial) throw DomainError("a trivial action has no conjugate pairs");
  if (inv.is_free) {
    Generator g{"[x,sx]", {2, 0}, true, 0};
    return ClassExpression::gen(g, LambdaElt::monomial(0, 0, q));
  }
  int k = inv.C > 0 ? 1 : 2;
  Generator p{"p", {2, k}, false, -1};
  if (q > k - 2) return ClassExpression::zero();
  return ClassExpression::gen(p, M2Elt(M2Monomial::bot(0, k - 2 - q)));
}

// ---------------------------------------------------------------- generators

namespace {

// Degree-one submanifolds inherited through surgeries and sums. `tag` numbers
// the construction steps so names stay unique.
std::vector<ClassDescriptor> degree_one(const SurfaceDescriptor& d, int& tag) {
  return std::visit(
      [&](const auto& x) -> std::vector<ClassDescriptor> {
        using T = std::decay_t<decltype(x)>;
        std::vector<ClassDescriptor> out;
        if constexpr (std::is_same_v<T, TrivialNode>) {
          for (int i = 1; i <= x.surface.beta(); ++i)
            out.push_back(ClassDescriptor::nonfree("Y" + std::to_string(i), 1, {0}));
        } else if constexpr (std::is_same_v<T, SphereNode> || std::is_same_v<T, FreeCoverNode>) {
          if (invariants(d).is_free) {
            FreeData fd = free_data(d);
            for (int i = 1; i <= fd.ring.beta; ++i)
              out.push_back(ClassDescriptor::free_family("pi^-1(x" + std::to_string(i) + ")", 1, 0));
          }
        } else if constexpr (std::is_same_v<T, DoublingNode>) {
          for (int i = 1; i <= x.base.beta(); ++i)
            out.push_back(ClassDescriptor::free_family("Y" + std::to_string(i) + "xC2", 1, 0));
        } else if constexpr (std::is_same_v<T, ConnSumNode>) {
          if (invariants(d).is_free) {
            FreeData fd = free_data(d);
            for (int i = 1; i <= fd.ring.beta; ++i)
              out.push_back(ClassDescriptor::free_family("pi^-1(x" + std::to_string(i) + ")", 1, 0));
            return out;
          }
          out = degree_one(*x.inner, tag);
          int t = ++tag;
          for (int i = 1; i <= x.piece.beta(); ++i)
            out.push_back(ClassDescriptor::free_family(
                "P" + std::to_string(t) + "." + std::to_string(i) + "xC2", 1, 0));
        } else {
          out = degree_one(*x.inner, tag);
          Invariants in = invariants(*x.inner);
          std::string t = std::to_string(++tag);
          std::string c = "C" + t;
          std::string g = "G" + t;
          switch (x.kind) {
            case SurgeryKind::S10AT:
              if (in.is_free) break;
              out.push_back(ClassDescriptor::nonfree(c, 1, {1}, {c}));
              if (in.C >= 1) out.push_back(ClassDescriptor::nonfree(g, 1, {0, 0}));
              else out.push_back(ClassDescriptor::nonfree(g, 1, {0, 1}));
              break;
            case SurgeryKind::S11AT:
              if (in.is_free) break;
              out.push_back(ClassDescriptor::nonfree(c, 1, {1, 1}));
              if (in.F >= 1) out.push_back(ClassDescriptor::nonfree(g, 1, {1, 1}));
              else out.push_back(ClassDescriptor::nonfree(g, 1, {1, 0}));
              break;
            case SurgeryKind::FM:
              if (in.C >= 1) out.push_back(ClassDescriptor::nonfree(g, 1, {0, 0}));
              else out.push_back(ClassDescriptor::nonfree(c, 1, {1}, {c}));
              break;
          }
        }
        return out;
      },
      d.node);
}

}  // namespace

std::vector<ClassDescriptor> module_generators(const SurfacePtr& d) {
  if (!d) throw DomainError("missing surface");
  Invariants inv = invariants(*d);
  std::vector<ClassDescriptor> out;
  if (inv.is_free) {
    FreeData fd = free_data(*d);
    int i = 0;
    for (const auto& piece : u_module_pieces(fd.ring, fd.w)) {
      std::string name = piece.start == 0 ? "X" : "pi^-1(g" + std::to_string(++i) + ")";
      out.push_back(ClassDescriptor::free_family(name, piece.start, piece.length - 1));
    }
  } else {
    int tag = 0;
    out.push_back(ClassDescriptor::nonfree("X", 0, {0}));
    auto one = degree_one(*d, tag);
    out.insert(out.end(), one.begin(), one.end());
    int k = inv.is_trivial ? 0 : inv.C > 0 ? 1 : 2;
    out.push_back(ClassDescriptor::nonfree("p", 2, {k}, {"p"}));
  }
  for (auto& c : out) c.ambient = d;
  return out;
}

}  // namespace eqsurf
