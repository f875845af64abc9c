#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqsurf/coeff_ring.hpp"
#include "eqsurf/surfaces.hpp"

namespace eqsurf {

/// Bidegree of a class. For a free submanifold the fundamental class is a
/// tau-linked family [W]_q, one class in every weight q; `family` marks this and
/// q is then the reference weight 0.
struct ClassDegree {
  int p = 0;
  int q = 0;
  bool family = false;
  bool operator==(const ClassDegree&) const = default;
};

std::string to_string(const ClassDegree& d);

// ---------------------------------------------------------------- Thom classes

/// Equivariant vector bundle of rank n. Over a nonfree base, `weights` lists the
/// fiber weight over each fixed component (fiber R^{n, q_i}); empty if free.
struct ThomBundleData {
  bool base_free = false;
  int n = 0;
  std::vector<int> weights;

  void validate() const;
};

/// (n, max q_i) for a nonfree base, the family (n, *) for a free one.
ClassDegree thom_bidegree(const ThomBundleData& v);

/// Restriction of the Thom class to the fixed components: tau^{q - q_i} rho^{q_i}.
std::vector<M2Monomial> thom_restrict_fixed(const ThomBundleData& v);

struct PullbackCoeff {
  bool family = false;
  M2Monomial coeff;     // nonfree target: tau^{q - q'}
  int family_weight = 0;  // free target: the pulled-back class is [U]_{q}
};

/// Coefficient c with f^*(Thom class) = c * (Thom class of the pullback), for
/// source Thom weight q and pulled-back weight q'.
PullbackCoeff thom_pullback_coeff(int source_weight, int pulled_weight, bool target_free);

// ---------------------------------------------------------------- classes

/// Closed equivariant submanifold W of a C2-surface. Nonfree: normal weights
/// over the fixed components of W (with optional names for those components).
/// Free: torsion is the r of the A_r its family generates, -1 if unknown.
struct ClassDescriptor {
  std::string name;
  int codim = 0;
  bool free = false;
  std::vector<int> weights;
  std::vector<std::string> fixed_loci;
  int torsion = -1;
  SurfacePtr ambient;

  static ClassDescriptor nonfree(std::string name, int codim, std::vector<int> weights,
                                 std::vector<std::string> loci = {});
  static ClassDescriptor free_family(std::string name, int codim, int torsion = -1);
};

ClassDegree class_bidegree(const ClassDescriptor& c);

using Coefficient = std::variant<M2Elt, LambdaElt>;

bool coeff_is_zero(const Coefficient& c);
std::optional<Bidegree> coeff_bidegree(const Coefficient& c);
Coefficient coeff_add(const Coefficient& a, const Coefficient& b);
/// Products mix M2 and tau-Laurent scalars; a Laurent scalar may only meet a
/// bottom-cone M2 scalar (tau-division) or a top-cone one (localization).
Coefficient coeff_mul(const Coefficient& a, const Coefficient& b);
std::string coeff_string(const Coefficient& c);

/// Generator symbol in a class expression. For a free family the degree is that
/// of the weight-0 member.
struct Generator {
  std::string name;
  Bidegree degree;
  bool free = false;
  int torsion = -1;
  bool operator==(const Generator&) const = default;
};

Generator generator_of(const ClassDescriptor& c);

/// Z/2-combination of monomials in generators with scalar coefficients.
class ClassExpression {
public:
  using Monomial = std::map<std::string, int>;

  static ClassExpression zero() { return {}; }
  static ClassExpression scalar(const Coefficient& c);
  static ClassExpression gen(const Generator& g, const Coefficient& c = M2Elt::one());

  const std::map<Monomial, Coefficient>& terms() const { return terms_; }
  const std::map<std::string, Generator>& generators() const { return gens_; }
  bool is_zero() const { return terms_.empty(); }
  void register_generator(const Generator& g);

  void add_term(const Monomial& m, const Coefficient& c);
  ClassExpression& operator+=(const ClassExpression& o);
  friend ClassExpression operator+(ClassExpression a, const ClassExpression& b) { return a += b; }
  friend ClassExpression operator*(const ClassExpression& a, const ClassExpression& b);

  /// Whether the monomial involves a free family (coefficients then live in
  /// a tau-inverted ring).
  bool monomial_is_free(const Monomial& m) const;
  Bidegree monomial_degree(const Monomial& m) const;
  std::optional<Bidegree> bidegree() const;

  /// Coefficient form: Laurent coefficients on free monomials, M2 on the rest.
  ClassExpression canonical(int base_torsion = -1) const;

  std::string str() const;
  bool operator==(const ClassExpression& o) const;

private:
  std::map<Monomial, Coefficient> terms_;
  std::map<std::string, Generator> gens_;
};

std::string monomial_string(const ClassExpression::Monomial& m);

/// A member of a fundamental-class family: free classes carry a weight.
struct FundamentalClass {
  ClassDescriptor descriptor;
  int weight = 0;
};

/// Product of transversely intersecting fundamental classes with intersection
/// W (nullopt if empty):
///   both free            -> [W]_{r+s}
///   nonfree x free       -> [W]_{q_Y + r}
///   nonfree, W free      -> [W]_{q_Y + q_Z}
///   all nonfree          -> tau^{q_Y + q_Z - q_W} [W]
ClassExpression product(const FundamentalClass& y, const FundamentalClass& z,
                        const std::optional<ClassDescriptor>& w);

struct FixedRestriction {
  std::string locus;
  M2Monomial coeff;
  bool operator==(const FixedRestriction&) const = default;
};

/// i^*[W] on the fixed set: tau^{q - q_i} rho^{q_i} on each fixed component.
std::vector<FixedRestriction> restrict_to_fixed(const ClassDescriptor& c);

/// Forgetful image: Z/2-combination of the underlying monomials.
using SingularExpression = std::map<ClassExpression::Monomial, int>;
SingularExpression forget(const ClassExpression& e);

/// Class of a conjugate pair {x, sigma x} in weight q. For a nonfree ambient
/// with top fixed-point class [p] at (2, k): theta/tau^{k-2-q} [p] for
/// q <= k - 2 and 0 otherwise. For a free ambient: the nonzero member q of the
/// family.
ClassExpression conjugate_point_class(const SurfaceDescriptor& ambient, int q);

/// Fundamental classes of submanifolds generating H^{*,*}(X) as an M2-module:
/// one class per summand of cohomology(d).
std::vector<ClassDescriptor> module_generators(const SurfacePtr& d);

}  // namespace eqsurf
