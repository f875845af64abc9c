#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace eqsurf {

/// Cohomological bidegree (p, q): p is the topological degree, q the weight.
struct Bidegree {
  int p = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {p + o.p, q + o.q}; }
  Bidegree operator-(const Bidegree& o) const { return {p - o.p, q - o.q}; }
};

std::string to_string(const Bidegree& b);

/// Monomial of M2 = H^{*,*}(pt; Z/2).
///   Top(a, b) = rho^a tau^b            at (a, a + b)
///   Bot(a, b) = theta / (rho^a tau^b)  at (-a, -2 - a - b)
struct M2Monomial {
  enum class Kind : std::uint8_t { Top, Bot };
  Kind kind = Kind::Top;
  int a = 0;
  int b = 0;

  static M2Monomial top(int a, int b);
  static M2Monomial bot(int a, int b);
  static M2Monomial one() { return top(0, 0); }
  static M2Monomial rho(int k = 1) { return top(k, 0); }
  static M2Monomial tau(int k = 1) { return top(0, k); }
  static M2Monomial theta() { return bot(0, 0); }

  bool is_top() const { return kind == Kind::Top; }
  bool is_bot() const { return kind == Kind::Bot; }
  Bidegree bidegree() const;
  auto operator<=>(const M2Monomial&) const = default;
};

/// Product of two monomials, nullopt when it vanishes.
std::optional<M2Monomial> m2_mul(const M2Monomial& x, const M2Monomial& y);

/// Dimension of M2 at (p, q); always 0 or 1.
int m2_dim_at(int p, int q);

/// The unique monomial at (p, q), if any.
std::optional<M2Monomial> m2_monomial_at(int p, int q);

/// Finite Z/2-combination of M2 monomials.
class M2Elt {
public:
  M2Elt() = default;
  M2Elt(const M2Monomial& m) { terms_.insert(m); }  // NOLINT: implicit by design

  static M2Elt zero() { return {}; }
  static M2Elt one() { return M2Monomial::one(); }

  const std::set<M2Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  /// Bidegree of a nonzero homogeneous element.
  std::optional<Bidegree> bidegree() const;
  /// True when every term lies in the bottom (theta) cone.
  bool is_bottom() const;

  M2Elt& operator+=(const M2Elt& o);
  friend M2Elt operator+(M2Elt x, const M2Elt& y) { return x += y; }
  friend M2Elt operator*(const M2Elt& x, const M2Elt& y);
  bool operator==(const M2Elt&) const = default;
  auto operator<=>(const M2Elt& o) const { return terms_ <=> o.terms_; }

private:
  std::set<M2Monomial> terms_;
};

/// Lambda_r = tau^{-1} M2 / (rho^{r+1}); monomials rho^a tau^b with 0 <= a <= r,
/// b any integer, at bidegree (a, a + b). r == kUnbounded gives tau^{-1} M2 itself.
class LambdaElt {
public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();
  using Mono = std::pair<int, int>;

  LambdaElt() = default;
  explicit LambdaElt(int r);
  LambdaElt(int r, Mono m);

  static LambdaElt monomial(int r, int a, int b) { return LambdaElt(r, {a, b}); }
  static LambdaElt one(int r) { return monomial(r, 0, 0); }

  int r() const { return r_; }
  bool bounded() const { return r_ != kUnbounded; }
  const std::set<Mono>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  std::optional<Bidegree> bidegree() const;

  /// Same element read in Lambda_{r'} (drops rho^a with a > r').
  LambdaElt truncate(int r) const;

  LambdaElt& operator+=(const LambdaElt& o);
  friend LambdaElt operator+(LambdaElt x, const LambdaElt& y) { return x += y; }
  /// Product in Lambda_{min(r, r')}.
  friend LambdaElt operator*(const LambdaElt& x, const LambdaElt& y);
  bool operator==(const LambdaElt&) const = default;
  auto operator<=>(const LambdaElt& o) const {
    if (auto c = r_ <=> o.r_; c != 0) return c;
    return terms_ <=> o.terms_;
  }

private:
  int r_ = 0;
  std::set<Mono> terms_;
};

/// Product of two Lambda_r monomials (same r); nullopt when truncated.
std::optional<LambdaElt::Mono> lambda_mul(int r, LambdaElt::Mono x, LambdaElt::Mono y);
/// Product in one Lambda_r; throws when the torsion bounds differ.
LambdaElt lambda_mul(const LambdaElt& x, const LambdaElt& y);

/// Action of M2 on Lambda_r through M2 -> tau^{-1} M2; theta acts as zero.
LambdaElt m2_act_on_lambda(const M2Elt& x, const LambdaElt& y);

/// Image of M2 in tau^{-1} M2 (theta part dropped), read in Lambda_r.
LambdaElt localize(const M2Elt& x, int r = LambdaElt::kUnbounded);

/// Action of a tau-Laurent element on a bottom-cone element of M2. Bottom
/// elements are infinitely tau-divisible, so negative tau powers make sense.
/// Throws DomainError if y has a top-cone term.
M2Elt laurent_act_on_bottom(const LambdaElt& x, const M2Elt& y);

/// Forgetful map to H^*(pt; Z/2) = Z/2: tau -> 1, rho -> 0, theta -> 0.
/// Throws DomainError on inhomogeneous input.
int forget_scalar(const M2Elt& x);
int forget_scalar(const LambdaElt& x);

/// Canonical text: "0", "1", "rho^2 tau", "theta", "theta/(rho tau^3)", sums
/// joined by " + ". `sep` separates factors inside a monomial.
std::string to_string(const M2Monomial& m, const std::string& sep = " ");
std::string to_string(const M2Elt& x, const std::string& sep = " ");
std::string to_string(const LambdaElt& x, const std::string& sep = " ");

/// Parses the canonical text (also accepts "*" between factors).
M2Elt parse_m2(const std::string& text);
LambdaElt parse_lambda(const std::string& text, int r);

}  // namespace eqsurf
