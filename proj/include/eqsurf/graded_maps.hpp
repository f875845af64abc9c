#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eqsurf/nice_module.hpp"

namespace eqsurf {

/// Polynomial in t over Z/2.
class Gf2Poly {
public:
  Gf2Poly() = default;
  static Gf2Poly monomial(int k);
  static Gf2Poly one() { return monomial(0); }

  /// -1 for the zero polynomial.
  int degree() const;
  /// Lowest exponent with a nonzero coefficient; -1 for zero.
  int low_degree() const;
  bool is_zero() const { return degree() < 0; }
  bool is_monomial() const;
  bool coeff(int k) const;
  void set(int k, bool v = true);

  Gf2Poly& operator+=(const Gf2Poly& o);
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  /// Quotient and remainder.
  static std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b);
  bool operator==(const Gf2Poly& o) const;

  std::string str() const;

private:
  void trim();
  std::vector<std::uint64_t> w_;
};

/// Graded map of finitely generated free graded Z/2[t]-modules, |t| = 1.
/// Column j is the image of the source generator alpha_j; entry (i, j) is the
/// coefficient of target generator b_i and is 0 or t^{|alpha_j| + shift - |b_i|}.
struct PolyMap {
  std::vector<int> source_degrees;
  std::vector<int> target_degrees;
  int shift = 0;
  std::vector<std::vector<Gf2Poly>> matrix;  // [target row][source column]

  /// Throws DomainError when an entry is not homogeneous of the right degree.
  void validate() const;
  /// Smallest degree from which the degree-d slice no longer changes.
  int stable_degree() const;
};

/// Determinant of a square PolyMap matrix (fraction-free elimination).
Gf2Poly determinant(const PolyMap& f);

struct DegreeCheck {
  int degree = 0;
  int source_dim = 0;
  int target_dim = 0;
  int rank = 0;
  bool iso = false;
};

/// Per-degree rank of f from degree d to degree d + shift, d in [dmin, dmax].
std::vector<DegreeCheck> verify_poly_iso(const PolyMap& f, int dmin, int dmax);

/// New target basis beta_1..beta_m, paired with alpha_1..alpha_m in order, with
/// |beta_i| <= |alpha_i| + shift.
struct BasisReduction {
  std::vector<int> degrees;
  /// change[i][j]: coefficient of the original generator b_i in beta_j.
  std::vector<std::vector<Gf2Poly>> change;
  /// beta_j expressed as a degree-0 PolyMap into the original target.
  PolyMap as_map(const std::vector<int>& target_degrees) const;
};

/// Inductive basis change for a map that is an isomorphism in every degree
/// >= g0. Throws DomainError if the determinant is not a monomial or the rank
/// check fails in [g0, stable degree].
BasisReduction poly_basis_reduce(const PolyMap& f, int g0);

/// The tau-torsion part T(M): antipodal summands plus the bottom cones of the
/// free summands.
class TorsionView {
public:
  explicit TorsionView(NiceModule m) : m_(std::move(m)) {}
  const NiceModule& module() const { return m_; }
  std::vector<ModuleElement> basis_at(int p, int q) const;
  int dim_at(int p, int q) const { return static_cast<int>(basis_at(p, q).size()); }
  /// Rank of rho^k from (p, q) to (p+k, q+k) on T(M).
  int rho_power_rank(int p, int q, int k) const;

private:
  NiceModule m_;
};

TorsionView torsion_part(const NiceModule& m);

/// Weights l of the generators of (M / T(M)) / rho in topological degree p,
/// sorted ascending, by basis enumeration.
std::vector<int> free_quotient_rank(const NiceModule& m, int p);

/// Recovers the summand multiset from T(M) and the free quotient alone.
NiceModule reconstruct_summands(const NiceModule& m);

/// A free summand whose weight is only known to lie in [lo, hi].
struct RelaxedFree {
  int p = 0;
  int lo = 0;
  int hi = 0;
  bool operator==(const RelaxedFree&) const = default;
};

struct TransferDecomposition {
  std::vector<RelaxedFree> free;
  std::vector<AntipodalSummand> antipodal;
  /// Exact module when every free weight range is a single value.
  NiceModule exact() const;
};

/// Summands of H(X^V) from those of H(X) for a rank-n bundle whose Thom class
/// sits in weight q. With uniform = true the shift is exactly (n, q).
TransferDecomposition transfer_decomposition(const NiceModule& src, int n, int q, bool uniform);

/// Module map between nice modules: generators map to homogeneous elements of
/// bidegree |generator| + shift. Images of antipodal generators must be
/// tau-divisible and killed by rho^{r+1}.
struct NiceMap {
  NiceModule source;
  NiceModule target;
  Bidegree shift;
  std::vector<ModuleElement> free_images;
  std::vector<ModuleElement> antipodal_images;

  void validate() const;
  ModuleElement apply(const ModuleElement& basis_element) const;
  static NiceMap identity(const NiceModule& m);
};

struct IsoCell {
  int p = 0;
  int q = 0;
  int source_dim = 0;
  int target_dim = 0;
  int rank = 0;
  bool required = false;
  bool pass = false;
};

struct IsoReport {
  Window window;
  std::vector<IsoCell> cells;
  bool stabilized = false;
  bool pass = false;
};

/// Checks f is an isomorphism at every (p, q) with q >= p in the window. The
/// upper weight bound is raised so that every column has settled.
IsoReport verify_nice_iso_range(const NiceMap& f, Window w);

}  // namespace eqsurf
