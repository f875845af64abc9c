#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "eqsurf/gf2.hpp"
#include "eqsurf/nice_module.hpp"

namespace eqsurf {

/// Closed connected surface without an action: M_g (orientable, genus g) or
/// N_k (connected sum of k projective planes, k >= 1).
struct NoneqSurface {
  bool orientable = true;
  int genus = 0;

  static NoneqSurface M(int g);
  static NoneqSurface N(int k);
  /// First Betti number over Z/2.
  int beta() const { return orientable ? 2 * genus : genus; }
  std::string str() const;
  auto operator<=>(const NoneqSurface&) const = default;
};

/// Connected sum of non-equivariant surfaces.
NoneqSurface connected_sum(const NoneqSurface& a, const NoneqSurface& b);

enum class SphereKind { S20, S21, S22, S2a };
enum class DoublingKind { S10, S11 };
enum class SurgeryKind { S10AT, S11AT, FM };

struct SurfaceDescriptor;
using SurfacePtr = std::shared_ptr<const SurfaceDescriptor>;

struct TrivialNode {
  NoneqSurface surface;
};
struct SphereNode {
  SphereKind kind;
};
/// Free involution with quotient Q, classified by w in H^1(Q; Z/2), given as
/// bits over the standard basis of H^1(Q).
struct FreeCoverNode {
  NoneqSurface quotient;
  std::vector<bool> w;
};
/// Y #_2 Y glued to S^{2,1} (S10) or S^{2,2} (S11).
struct DoublingNode {
  NoneqSurface base;
  DoublingKind kind;
};
/// Equivariant connected sum with two conjugate copies of a piece.
struct ConnSumNode {
  SurfacePtr inner;
  NoneqSurface piece;
};
/// Equivariant surgery: S^{1,0}-antitube, S^{1,1}-antitube, or Mobius band.
struct SurgeryNode {
  SurfacePtr inner;
  SurgeryKind kind;
};

/// Recipe for a C2-surface. Build through the make_* functions, which check
/// well-formedness.
struct SurfaceDescriptor {
  std::variant<TrivialNode, SphereNode, FreeCoverNode, DoublingNode, ConnSumNode, SurgeryNode> node;
};

bool operator==(const SurfaceDescriptor& a, const SurfaceDescriptor& b);

SurfacePtr make_trivial(NoneqSurface y);
SurfacePtr make_sphere(SphereKind k);
SurfacePtr make_free(NoneqSurface q, std::vector<bool> w);
SurfacePtr make_doubling(NoneqSurface y, DoublingKind k);
SurfacePtr make_connsum(SurfacePtr inner, NoneqSurface piece);
SurfacePtr make_surgery(SurfacePtr inner, SurgeryKind k);

/// Canonical DSL text, e.g. "S(2,2)#M1+FM".
std::string to_string(const SurfaceDescriptor& d);

struct Invariants {
  int F = 0;     // isolated fixed points
  int C = 0;     // fixed circles
  int beta = 0;  // first Z/2 Betti number
  bool is_free = false;
  bool is_trivial = false;
  bool operator==(const Invariants&) const = default;
};

Invariants invariants(const SurfaceDescriptor& d);

/// H^*(Y; Z/2) as a Z/2-algebra: basis 1, x_1..x_beta, top. The degree-one
/// cup products are given by a symmetric pairing matrix.
struct SingRing {
  int beta = 0;
  std::vector<std::vector<int>> pairing;  // beta x beta over Z/2

  int dim() const { return beta + 2; }
  /// Degree of basis index i (0 -> 0, 1..beta -> 1, beta+1 -> 2).
  int degree(int i) const;
  gf2::BitVec mul(const gf2::BitVec& a, const gf2::BitVec& b) const;
  gf2::BitVec unit() const;
  gf2::BitVec x(int i) const;  // i in [0, beta)
  gf2::BitVec top() const;
};

/// Orientable genus g: pairs a_i, b_i with a_i b_i = top, squares zero.
/// N_k: c_i^2 = top, mixed products zero.
SingRing sing_ring(const NoneqSurface& y);
/// Ring of a connected sum: block sum of the pairings.
SingRing ring_connected_sum(const SingRing& a, const SingRing& b);

/// One cyclic summand Sigma^start Z/2[u]/(u^length) of H^*(Q) as a module over
/// Z/2[u], u = cup with w, and the class that generates it.
struct UPiece {
  int start = 0;
  int length = 0;
  gf2::BitVec generator;
};

std::vector<UPiece> u_module_pieces(const SingRing& ring, const std::vector<bool>& w);

/// Antipodal summands Sigma^{start,0} A_{length-1} of a free C2-surface.
std::vector<AntipodalSummand> decompose_u_module(const NoneqSurface& q, const std::vector<bool>& w);
std::vector<AntipodalSummand> decompose_u_module(const SingRing& ring, const std::vector<bool>& w);

/// Effective quotient ring and class w of a free descriptor.
struct FreeData {
  SingRing ring;
  std::vector<bool> w;
};
FreeData free_data(const SurfaceDescriptor& d);

/// Bigraded cohomology H^{*,*}(X; Z/2) as a nice module.
NiceModule cohomology(const SurfaceDescriptor& d);

/// Z/2 Betti numbers (b0, b1, b2) of the underlying surface.
std::vector<int> singular_betti(const SurfaceDescriptor& d);

}  // namespace eqsurf
