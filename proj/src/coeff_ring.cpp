#include "eqsurf/coeff_ring.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "eqsurf/error.hpp"

namespace eqsurf {

std::string to_string(const Bidegree& b) {
  return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

M2Monomial M2Monomial::top(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("negative exponent in rho^a tau^b");
  return {Kind::Top, a, b};
}

M2Monomial M2Monomial::bot(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("negative exponent in theta/(rho^a tau^b)");
  return {Kind::Bot, a, b};
}

Bidegree M2Monomial::bidegree() const {
  if (is_top()) return {a, a + b};
  return {-a, -2 - a - b};
}

std::optional<M2Monomial> m2_mul(const M2Monomial& x, const M2Monomial& y) {
  if (x.is_top() && y.is_top()) return M2Monomial::top(x.a + y.a, x.b + y.b);
  if (x.is_bot() && y.is_bot()) return std::nullopt;
  const M2Monomial& t = x.is_top() ? x : y;
  const M2Monomial& d = x.is_top() ? y : x;
  if (d.a >= t.a && d.b >= t.b) return M2Monomial::bot(d.a - t.a, d.b - t.b);
  return std::nullopt;
}

int m2_dim_at(int p, int q) {
  if (0 <= p && p <= q) return 1;
  if (p <= 0 && q <= p - 2) return 1;
  return 0;
}

std::optional<M2Monomial> m2_monomial_at(int p, int q) {
  if (0 <= p && p <= q) return M2Monomial::top(p, q - p);
  if (p <= 0 && q <= p - 2) return M2Monomial::bot(-p, p - 2 - q);
  return std::nullopt;
}

M2Elt& M2Elt::operator+=(const M2Elt& o) {
  for (const auto& m : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.insert(m);
    else terms_.erase(it);
  }
  return *this;
}

M2Elt operator*(const M2Elt& x, const M2Elt& y) {
  M2Elt out;
  for (const auto& a : x.terms_)
    for (const auto& b : y.terms_)
      if (auto m = m2_mul(a, b)) out += M2Elt(*m);
  return out;
}

bool M2Elt::is_homogeneous() const {
  if (terms_.empty()) return true;
  Bidegree d = terms_.begin()->bidegree();
  return std::all_of(terms_.begin(), terms_.end(), [&](const M2Monomial& m) { return m.bidegree() == d; });
}

std::optional<Bidegree> M2Elt::bidegree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->bidegree();
}

bool M2Elt::is_bottom() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const M2Monomial& m) { return m.is_bot(); });
}

LambdaElt::LambdaElt(int r) : r_(r) {
  if (r < 0) throw DomainError("Lambda_r needs r >= 0");
}

LambdaElt::LambdaElt(int r, Mono m) : LambdaElt(r) {
  if (m.first < 0) throw DomainError("negative rho exponent");
  if (m.first <= r) terms_.insert(m);
}

bool LambdaElt::is_homogeneous() const {
  if (terms_.empty()) return true;
  int s = terms_.begin()->first + terms_.begin()->second;
  int a = terms_.begin()->first;
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Mono& m) { return m.first == a && m.first + m.second == s; });
}

std::optional<Bidegree> LambdaElt::bidegree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  auto [a, b] = *terms_.begin();
  return Bidegree{a, a + b};
}

LambdaElt LambdaElt::truncate(int r) const {
  LambdaElt out(r);
  for (const auto& m : terms_)
    if (m.first <= r) out.terms_.insert(m);
  return out;
}

LambdaElt& LambdaElt::operator+=(const LambdaElt& o) {
  if (o.r_ < r_) *this = truncate(o.r_);
  for (const auto& m : o.terms_) {
    if (m.first > r_) continue;
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.insert(m);
    else terms_.erase(it);
  }
  return *this;
}

std::optional<LambdaElt::Mono> lambda_mul(int r, LambdaElt::Mono x, LambdaElt::Mono y) {
  int a = x.first + y.first;
  if (a > r) return std::nullopt;
  return LambdaElt::Mono{a, x.second + y.second};
}

LambdaElt operator*(const LambdaElt& x, const LambdaElt& y) {
  LambdaElt out(std::min(x.r_, y.r_));
  for (const auto& a : x.terms_)
    for (const auto& b : y.terms_)
      if (auto m = lambda_mul(out.r_, a, b)) out += LambdaElt(out.r_, *m);
  return out;
}

LambdaElt lambda_mul(const LambdaElt& x, const LambdaElt& y) {
  if (x.r() != y.r()) throw DomainError("mismatched torsion bounds");
  return x * y;
}

LambdaElt localize(const M2Elt& x, int r) {
  LambdaElt out(r);
  for (const auto& m : x.terms())
    if (m.is_top()) out += LambdaElt(r, {m.a, m.b});
  return out;
}

LambdaElt m2_act_on_lambda(const M2Elt& x, const LambdaElt& y) {
  return localize(x, y.r()) * y;
}

M2Elt laurent_act_on_bottom(const LambdaElt& x, const M2Elt& y) {
  M2Elt out;
  for (const auto& d : y.terms()) {
    if (!d.is_bot()) throw DomainError("tau-division of a non-divisible class");
    for (const auto& [a, b] : x.terms()) {
      if (d.a >= a && d.b - b >= 0) out += M2Elt(M2Monomial::bot(d.a - a, d.b - b));
    }
  }
  return out;
}

int forget_scalar(const M2Elt& x) {
  if (!x.is_homogeneous()) throw DomainError("forget of an inhomogeneous element");
  int s = 0;
  for (const auto& m : x.terms())
    if (m.is_top() && m.a == 0) s ^= 1;
  return s;
}

int forget_scalar(const LambdaElt& x) {
  if (!x.is_homogeneous()) throw DomainError("forget of an inhomogeneous element");
  int s = 0;
  for (const auto& m : x.terms())
    if (m.first == 0) s ^= 1;
  return s;
}

namespace {

std::string power(const char* base, int e) {
  if (e == 1) return base;
  return std::string(base) + "^" + std::to_string(e);
}

std::string rho_tau(int a, int b, const std::string& sep) {
  std::vector<std::string> f;
  if (a != 0) f.push_back(power("rho", a));
  if (b != 0) f.push_back(power("tau", b));
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? sep : "") + f[i];
  return out;
}

}  // namespace

std::string to_string(const M2Monomial& m, const std::string& sep) {
  if (m.is_top()) {
    std::string s = rho_tau(m.a, m.b, sep);
    return s.empty() ? "1" : s;
  }
  std::string d = rho_tau(m.a, m.b, sep);
  if (d.empty()) return "theta";
  if (m.a != 0 && m.b != 0) return "theta/(" + d + ")";
  return "theta/" + d;
}

std::string to_string(const M2Elt& x, const std::string& sep) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& m : x.terms()) out += (out.empty() ? "" : " + ") + to_string(m, sep);
  return out;
}

std::string to_string(const LambdaElt& x, const std::string& sep) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [a, b] : x.terms()) {
    std::string s = rho_tau(a, b, sep);
    out += (out.empty() ? "" : " + ") + (s.empty() ? std::string("1") : s);
  }
  return out;
}

namespace {

// Scalar monomial parser shared by M2 and Lambda text forms.
struct ScalarParser {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  }
  bool eat(const std::string& tok) {
    ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  bool at_end() {
    ws();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

  int integer() {
    ws();
    std::size_t j = i;
    if (j < s.size() && s[j] == '-') ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) fail("expected integer");
    int v = std::stoi(s.substr(i, k - i));
    i = k;
    return v;
  }
  int exponent() {
    std::size_t save = i;
    ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      return integer();
    }
    i = save;
    return 1;
  }
  // rho/tau product; returns false if nothing consumed
  bool factors(int& a, int& b) {
    bool any = false;
    for (;;) {
      std::size_t save = i;
      if (eat("rho")) {
        a += exponent();
        any = true;
      } else if (eat("tau")) {
        b += exponent();
        any = true;
      } else {
        i = save;
        return any;
      }
    }
  }

  struct Term {
    bool zero = false;
    bool theta = false;
    int a = 0;
    int b = 0;
  };

  Term term() {
    Term t;
    if (eat("0")) {
      t.zero = true;
      return t;
    }
    if (eat("theta")) {
      t.theta = true;
      if (eat("/")) {
        if (eat("(")) {
          if (!factors(t.a, t.b)) fail("expected rho or tau");
          if (!eat(")")) fail("expected ')'");
        } else {
          // a single factor
          if (eat("rho")) t.a = exponent();
          else if (eat("tau")) t.b = exponent();
          else fail("expected rho or tau");
        }
      }
      return t;
    }
    bool one = eat("1");
    bool f = factors(t.a, t.b);
    if (!one && !f) fail("expected a scalar monomial");
    return t;
  }

  std::vector<Term> sum() {
    std::vector<Term> out;
    out.push_back(term());
    while (eat("+")) out.push_back(term());
    if (!at_end()) fail("unexpected trailing input");
    return out;
  }
};

}  // namespace

M2Elt parse_m2(const std::string& text) {
  ScalarParser p{text};
  M2Elt out;
  for (const auto& t : p.sum()) {
    if (t.zero) continue;
    out += t.theta ? M2Elt(M2Monomial::bot(t.a, t.b)) : M2Elt(M2Monomial::top(t.a, t.b));
  }
  return out;
}

LambdaElt parse_lambda(const std::string& text, int r) {
  ScalarParser p{text};
  LambdaElt out(r);
  for (const auto& t : p.sum()) {
    if (t.zero) continue;
    if (t.theta) throw ParseError("theta is not an element of Lambda_r");
    out += LambdaElt(r, {t.a, t.b});
  }
  return out;
}

}  // namespace eqsurf
