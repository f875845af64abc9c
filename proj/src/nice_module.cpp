#include "eqsurf/nice_module.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "eqsurf/error.hpp"
#include "eqsurf/gf2.hpp"

namespace eqsurf {

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
  for (const auto& [i, c] : o.free) {
    M2Elt s = free[i] + c;
    if (s.is_zero()) free.erase(i);
    else free[i] = s;
  }
  for (const auto& [j, c] : o.antipodal) {
    auto it = antipodal.find(j);
    LambdaElt s = it == antipodal.end() ? c : it->second + c;
    if (s.is_zero()) antipodal.erase(j);
    else antipodal[j] = s;
  }
  return *this;
}

NiceModule::NiceModule(std::vector<FreeSummand> free, std::vector<AntipodalSummand> antipodal)
    : free_(std::move(free)), anti_(std::move(antipodal)) {
  for (const auto& a : anti_)
    if (a.r < 0) throw DomainError("antipodal summand needs r >= 0");
}

NiceModule& NiceModule::add_free(int p, int q, int mult) {
  if (mult < 0) throw DomainError("negative multiplicity");
  for (int i = 0; i < mult; ++i) free_.push_back({p, q});
  return *this;
}

NiceModule& NiceModule::add_antipodal(int s, int r, int mult, int /*weight*/) {
  if (mult < 0) throw DomainError("negative multiplicity");
  if (r < 0) throw DomainError("antipodal summand needs r >= 0");
  for (int i = 0; i < mult; ++i) anti_.push_back({s, r});
  return *this;
}

NiceModule& NiceModule::add(const NiceModule& o) {
  free_.insert(free_.end(), o.free_.begin(), o.free_.end());
  anti_.insert(anti_.end(), o.anti_.begin(), o.anti_.end());
  return *this;
}

int NiceModule::dim_at(int p, int q) const {
  int d = 0;
  for (const auto& f : free_) d += m2_dim_at(p - f.p, q - f.q);
  for (const auto& a : anti_)
    if (a.s <= p && p <= a.s + a.r) ++d;
  return d;
}

std::vector<ModuleElement> NiceModule::basis_at(int p, int q) const {
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < free_.size(); ++i) {
    if (auto m = m2_monomial_at(p - free_[i].p, q - free_[i].q)) {
      ModuleElement e;
      e.free[i] = M2Elt(*m);
      out.push_back(std::move(e));
    }
  }
  for (std::size_t j = 0; j < anti_.size(); ++j) {
    int a = p - anti_[j].s;
    if (0 <= a && a <= anti_[j].r) {
      ModuleElement e;
      e.antipodal[j] = LambdaElt::monomial(anti_[j].r, a, q - a);
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<int> NiceModule::coordinates(const ModuleElement& x, int p, int q) const {
  auto basis = basis_at(p, q);
  std::vector<int> c(basis.size(), 0);
  std::size_t matched = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& b = basis[k];
    if (!b.free.empty()) {
      auto it = x.free.find(b.free.begin()->first);
      if (it != x.free.end()) {
        for (const auto& m : it->second.terms()) {
          if (m == *b.free.begin()->second.terms().begin()) c[k] ^= 1, ++matched;
        }
      }
    } else {
      auto it = x.antipodal.find(b.antipodal.begin()->first);
      if (it != x.antipodal.end()) {
        for (const auto& m : it->second.terms()) {
          if (m == *b.antipodal.begin()->second.terms().begin()) c[k] ^= 1, ++matched;
        }
      }
    }
  }
  std::size_t total = 0;
  for (const auto& [i, e] : x.free) total += e.terms().size();
  for (const auto& [j, e] : x.antipodal) total += e.terms().size();
  if (matched != total) throw DomainError("element is not of bidegree " + to_string(Bidegree{p, q}));
  return c;
}

ModuleElement NiceModule::free_generator(std::size_t i) const {
  if (i >= free_.size()) throw DomainError("no such free summand");
  ModuleElement e;
  e.free[i] = M2Elt::one();
  return e;
}

ModuleElement NiceModule::antipodal_generator(std::size_t j) const {
  if (j >= anti_.size()) throw DomainError("no such antipodal summand");
  ModuleElement e;
  e.antipodal[j] = LambdaElt::one(anti_[j].r);
  return e;
}

std::optional<Bidegree> NiceModule::bidegree(const ModuleElement& x) const {
  std::optional<Bidegree> d;
  auto merge = [&](Bidegree b) {
    if (d && *d != b) return false;
    d = b;
    return true;
  };
  for (const auto& [i, c] : x.free) {
    for (const auto& m : c.terms())
      if (!merge(m.bidegree() + Bidegree{free_.at(i).p, free_.at(i).q})) return std::nullopt;
  }
  for (const auto& [j, c] : x.antipodal) {
    for (const auto& [a, b] : c.terms())
      if (!merge(Bidegree{anti_.at(j).s + a, a + b})) return std::nullopt;
  }
  return d;
}

ModuleElement act(const NiceModule& m, const M2Elt& s, const ModuleElement& x) {
  ModuleElement out;
  for (const auto& [i, c] : x.free) {
    M2Elt v = s * c;
    if (!v.is_zero()) out.free[i] = v;
  }
  for (const auto& [j, c] : x.antipodal) {
    LambdaElt v = m2_act_on_lambda(s, c.truncate(m.antipodal_summands().at(j).r));
    if (!v.is_zero()) out.antipodal[j] = v;
  }
  return out;
}

ModuleElement act_laurent(const NiceModule& m, const LambdaElt& s, const ModuleElement& x) {
  ModuleElement out;
  for (const auto& [i, c] : x.free) {
    M2Elt v = laurent_act_on_bottom(s, c);
    if (!v.is_zero()) out.free[i] = v;
  }
  for (const auto& [j, c] : x.antipodal) {
    int r = m.antipodal_summands().at(j).r;
    LambdaElt v = s.truncate(r) * c.truncate(r);
    if (!v.is_zero()) out.antipodal[j] = v;
  }
  return out;
}

int NiceModule::mono_rank_at(const M2Monomial& mono, int p, int q) const {
  auto src = basis_at(p, q);
  Bidegree t = Bidegree{p, q} + mono.bidegree();
  std::vector<gf2::BitVec> rows;
  for (const auto& b : src) {
    auto c = coordinates(act(*this, M2Elt(mono), b), t.p, t.q);
    gf2::BitVec v(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) v.set(k, c[k] != 0);
    rows.push_back(v);
  }
  return static_cast<int>(gf2::rank(rows));
}

int NiceModule::rho_rank_at(int p, int q) const { return mono_rank_at(M2Monomial::rho(), p, q); }
int NiceModule::tau_rank_at(int p, int q) const { return mono_rank_at(M2Monomial::tau(), p, q); }

namespace {

using SortKey = std::tuple<int, int, int, int>;

SortKey key(const FreeSummand& f) { return {f.p, f.q, 0, 0}; }
SortKey key(const AntipodalSummand& a) { return {a.s, 0, 1, a.r}; }

}  // namespace

NiceModule NiceModule::canonical() const {
  NiceModule out = *this;
  std::sort(out.free_.begin(), out.free_.end(), [](auto& x, auto& y) { return key(x) < key(y); });
  std::sort(out.anti_.begin(), out.anti_.end(), [](auto& x, auto& y) { return key(x) < key(y); });
  return out;
}

bool iso_equal(const NiceModule& a, const NiceModule& b) { return a.canonical() == b.canonical(); }

std::string summand_string(const FreeSummand& f) {
  if (f.p == 0 && f.q == 0) return "M2";
  return "S(" + std::to_string(f.p) + "," + std::to_string(f.q) + ")M2";
}

std::string summand_string(const AntipodalSummand& a) {
  std::string base = "A" + std::to_string(a.r);
  if (a.s == 0) return base;
  return "S(" + std::to_string(a.s) + ",0)" + base;
}

std::string summand_string(const NiceModule& m) {
  std::vector<std::pair<SortKey, std::string>> items;
  for (const auto& f : m.free_summands()) items.emplace_back(key(f), summand_string(f));
  for (const auto& a : m.antipodal_summands()) items.emplace_back(key(a), summand_string(a));
  std::sort(items.begin(), items.end());
  std::string out;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    while (j < items.size() && items[j] == items[i]) ++j;
    if (!out.empty()) out += " + ";
    if (j - i > 1) out += std::to_string(j - i) + "*";
    out += items[i].second;
    i = j;
  }
  return out.empty() ? "0" : out;
}

NiceModule parse_summands(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  NiceModule m;
  if (s == "0") return m;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, i); };
  auto integer = [&]() {
    std::size_t j = i;
    if (j < s.size() && s[j] == '-') ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) fail("expected integer");
    int v = std::stoi(s.substr(i, k - i));
    i = k;
    return v;
  };
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  for (;;) {
    int mult = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mult = integer();
      expect('*');
    }
    int p = 0;
    int q = 0;
    if (i < s.size() && s[i] == 'S') {
      ++i;
      expect('(');
      p = integer();
      expect(',');
      q = integer();
      expect(')');
    }
    if (s.compare(i, 2, "M2") == 0) {
      i += 2;
      m.add_free(p, q, mult);
    } else if (i < s.size() && s[i] == 'A') {
      ++i;
      m.add_antipodal(p, integer(), mult, q);
    } else {
      fail("expected M2 or A<r>");
    }
    if (i == s.size()) break;
    expect('+');
  }
  return m;
}

std::string render_grid(const NiceModule& m, const Window& w) {
  if (w.pmin > w.pmax || w.qmin > w.qmax) throw DomainError("empty window");
  std::size_t width = 3;
  auto widen = [&](const std::string& s) { width = std::max(width, s.size() + 1); };
  for (int p = w.pmin; p <= w.pmax; ++p) widen(std::to_string(p));
  for (int q = w.qmin; q <= w.qmax; ++q) {
    widen(std::to_string(q));
    for (int p = w.pmin; p <= w.pmax; ++p) widen(std::to_string(m.dim_at(p, q)));
  }
  auto cell = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  std::ostringstream os;
  os << "q\\p";
  for (int p = w.pmin; p <= w.pmax; ++p) os << cell(std::to_string(p));
  os << "\n";
  for (int q = w.qmax; q >= w.qmin; --q) {
    std::string label = std::to_string(q);
    os << std::string(3 - std::min<std::size_t>(3, label.size()), ' ') << label;
    for (int p = w.pmin; p <= w.pmax; ++p) {
      int d = m.dim_at(p, q);
      os << cell(d == 0 ? "." : std::to_string(d));
    }
    os << "\n";
  }
  os << "summands: " << summand_string(m) << "\n";
  return os.str();
}

nlohmann::ordered_json to_json(const NiceModule& m) {
  nlohmann::ordered_json j;
  j["free"] = nlohmann::ordered_json::array();
  j["antipodal"] = nlohmann::ordered_json::array();
  for (const auto& f : m.free_summands()) j["free"].push_back({{"p", f.p}, {"q", f.q}});
  for (const auto& a : m.antipodal_summands()) j["antipodal"].push_back({{"s", a.s}, {"r", a.r}});
  return j;
}

NiceModule module_from_json(const nlohmann::ordered_json& j) {
  NiceModule m;
  try {
    for (const auto& f : j.at("free")) m.add_free(f.at("p").get<int>(), f.at("q").get<int>());
    for (const auto& a : j.at("antipodal")) m.add_antipodal(a.at("s").get<int>(), a.at("r").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad module JSON: ") + e.what());
  }
  return m;
}

nlohmann::ordered_json grid_json(const NiceModule& m, const Window& w) {
  nlohmann::ordered_json j;
  j["window"] = {{"pmin", w.pmin}, {"pmax", w.pmax}, {"qmin", w.qmin}, {"qmax", w.qmax}};
  auto rows = nlohmann::ordered_json::array();
  for (int q = w.qmax; q >= w.qmin; --q) {
    auto row = nlohmann::ordered_json::array();
    for (int p = w.pmin; p <= w.pmax; ++p) row.push_back(m.dim_at(p, q));
    rows.push_back({{"q", q}, {"dims", row}});
  }
  j["rows"] = rows;
  return j;
}

}  // namespace eqsurf
