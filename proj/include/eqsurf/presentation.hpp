#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqsurf/classes.hpp"
#include "eqsurf/nice_module.hpp"
#include "eqsurf/surfaces.hpp"

namespace eqsurf {

/// Spaces whose ring structure is tabulated.
enum class CatalogEntry {
  S11,              // the circle S^{1,1}
  S20,
  S21,
  S22,
  S2a,
  TorusReflection,  // S(2,1)+S10AT
  RP2Rotation,      // S(2,2)+FM
  T1Anti,           // free(N2,11)
  Genus2Rotation,   // S(2,2)#M1
};

std::string catalog_name(CatalogEntry e);
std::vector<CatalogEntry> all_catalog_entries();
/// Descriptor of an entry; nullptr for S^{1,1}, which is not a surface.
SurfacePtr catalog_surface(CatalogEntry e);
std::optional<CatalogEntry> catalog_lookup(const SurfaceDescriptor& d);

struct Relation {
  ClassExpression lhs;
  ClassExpression rhs;
  /// Scalar annihilation relations (rho^{r+1} = 0) are carried by torsion data
  /// and are not used as rewrite rules.
  bool torsion = false;
};

/// Algebra presentation over M2 (or tau^{-1} M2 / (rho^{r+1}) when
/// base_torsion >= 0). Free generators are tau-families with coefficients in
/// tau^{-1} M2 / (rho^{torsion+1}).
struct RingPresentation {
  std::string name;
  int base_torsion = -1;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  /// Named geometric classes written in the generators.
  std::map<std::string, ClassExpression> aliases;
  /// Additive structure the presentation must reproduce.
  NiceModule additive;

  ClassExpression gen(const std::string& name) const;
  std::string text() const;
};

RingPresentation present_catalog(CatalogEntry e);
/// Presentation for a catalog descriptor, nullopt outside the catalog.
std::optional<RingPresentation> present_ring(const SurfaceDescriptor& d);

/// Rewrites with the presentation relations until no rule applies, then puts
/// coefficients in canonical form.
ClassExpression normalize(const ClassExpression& e, const RingPresentation& pres);

/// Parses "(x + rho)*x", "C*D", "tau^-1*u*v", "theta/tau^2*p" over the
/// generators and aliases of a presentation.
ClassExpression parse_class_expression(const std::string& text, const RingPresentation& pres);

/// Monomials in the generators of total degree <= max_degree that no rule reduces.
std::vector<ClassExpression::Monomial> normal_monomials(const RingPresentation& pres, int max_degree);
/// Module spanned by normal monomials with their coefficient rings.
NiceModule normal_form_module(const RingPresentation& pres);

struct ConfluenceReport {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;
};

/// Every one-step rewrite of every monomial of degree <= max_degree normalizes
/// to the same result.
ConfluenceReport check_confluence(const RingPresentation& pres, int max_degree = 4);

/// Named submanifolds of a catalog space and their transverse intersections.
struct CatalogIntersection {
  std::string y;
  std::string z;
  std::optional<std::string> w;
};

struct CatalogClasses {
  std::map<std::string, ClassDescriptor> classes;
  std::vector<CatalogIntersection> intersections;
};

CatalogClasses catalog_classes(CatalogEntry e);

}  // namespace eqsurf
