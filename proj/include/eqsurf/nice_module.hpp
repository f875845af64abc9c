#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eqsurf/coeff_ring.hpp"

namespace eqsurf {

/// Sigma^{p,q} M2.
struct FreeSummand {
  int p = 0;
  int q = 0;
  auto operator<=>(const FreeSummand&) const = default;
};

/// Sigma^{s,0} A_r with A_r = tau^{-1} M2 / (rho^{r+1}). Weights are normalized
/// to 0 since tau acts invertibly.
struct AntipodalSummand {
  int s = 0;
  int r = 0;
  auto operator<=>(const AntipodalSummand&) const = default;
};

/// Element of a nice module: coefficients indexed by summand position.
struct ModuleElement {
  std::map<std::size_t, M2Elt> free;
  std::map<std::size_t, LambdaElt> antipodal;

  bool is_zero() const { return free.empty() && antipodal.empty(); }
  ModuleElement& operator+=(const ModuleElement& o);
  friend ModuleElement operator+(ModuleElement x, const ModuleElement& y) { return x += y; }
  bool operator==(const ModuleElement&) const = default;
};

/// Finite direct sum of shifted copies of M2 and of A_r.
class NiceModule {
public:
  NiceModule() = default;
  NiceModule(std::vector<FreeSummand> free, std::vector<AntipodalSummand> antipodal);

  /// Appends `mult` copies of Sigma^{p,q} M2.
  NiceModule& add_free(int p, int q, int mult = 1);
  /// Appends `mult` copies of Sigma^{s,w} A_r; the weight w is discarded.
  NiceModule& add_antipodal(int s, int r, int mult = 1, int weight = 0);
  NiceModule& add(const NiceModule& o);

  const std::vector<FreeSummand>& free_summands() const { return free_; }
  const std::vector<AntipodalSummand>& antipodal_summands() const { return anti_; }
  bool empty() const { return free_.empty() && anti_.empty(); }

  /// Closed-form Z/2 dimension at (p, q).
  int dim_at(int p, int q) const;

  /// Monomial basis at (p, q), one element per contributing summand, in
  /// summand order (free first).
  std::vector<ModuleElement> basis_at(int p, int q) const;
  /// Coordinates of a homogeneous element of bidegree (p, q) in basis_at(p, q).
  std::vector<int> coordinates(const ModuleElement& x, int p, int q) const;

  /// Generator of a summand.
  ModuleElement free_generator(std::size_t i) const;
  ModuleElement antipodal_generator(std::size_t j) const;

  /// Bidegree of a nonzero homogeneous element; nullopt otherwise.
  std::optional<Bidegree> bidegree(const ModuleElement& x) const;

  /// Rank of multiplication by rho from (p, q) to (p+1, q+1), and by tau from
  /// (p, q) to (p, q+1), by basis enumeration.
  int rho_rank_at(int p, int q) const;
  int tau_rank_at(int p, int q) const;
  /// Rank of an M2 monomial acting from (p, q).
  int mono_rank_at(const M2Monomial& m, int p, int q) const;

  /// Summands in canonical order.
  NiceModule canonical() const;

  friend bool operator==(const NiceModule& a, const NiceModule& b) {
    return a.free_ == b.free_ && a.anti_ == b.anti_;
  }

private:
  std::vector<FreeSummand> free_;
  std::vector<AntipodalSummand> anti_;
};

/// Action of an M2 scalar on a module element.
ModuleElement act(const NiceModule& m, const M2Elt& s, const ModuleElement& x);

/// Action of a tau-Laurent scalar on an element that is tau-divisible, i.e. whose
/// free components lie in the bottom cones. Throws DomainError otherwise.
ModuleElement act_laurent(const NiceModule& m, const LambdaElt& s, const ModuleElement& x);

/// Equality of summand multisets after weight normalization.
bool iso_equal(const NiceModule& a, const NiceModule& b);

/// Summand text, e.g. "M2 + 2*S(1,0)A0 + S(2,2)M2"; "0" for the zero module.
std::string summand_string(const NiceModule& m);
std::string summand_string(const FreeSummand& f);
std::string summand_string(const AntipodalSummand& a);

/// Parses summand text back into a module.
NiceModule parse_summands(const std::string& text);

struct Window {
  int pmin = -1;
  int pmax = 4;
  int qmin = -4;
  int qmax = 5;
  bool operator==(const Window&) const = default;
};

/// Dimension grid: a header row of p values, rows labeled by q (descending),
/// counts or "." for zero, followed by a summand legend.
std::string render_grid(const NiceModule& m, const Window& w);

nlohmann::ordered_json to_json(const NiceModule& m);
NiceModule module_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json grid_json(const NiceModule& m, const Window& w);

}  // namespace eqsurf
