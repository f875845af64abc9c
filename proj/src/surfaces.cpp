#include "eqsurf/surfaces.hpp"

#include <algorithm>

#include "eqsurf/error.hpp"

namespace eqsurf {

NoneqSurface NoneqSurface::M(int g) {
  if (g < 0) throw DomainError("genus must be >= 0");
  return {true, g};
}

NoneqSurface NoneqSurface::N(int k) {
  if (k < 1) throw DomainError("N_k needs k >= 1");
  return {false, k};
}

std::string NoneqSurface::str() const { return (orientable ? "M" : "N") + std::to_string(genus); }

NoneqSurface connected_sum(const NoneqSurface& a, const NoneqSurface& b) {
  if (a.orientable && b.orientable) return NoneqSurface::M(a.genus + b.genus);
  return NoneqSurface::N(a.beta() + b.beta());
}

// ---------------------------------------------------------------- descriptors

namespace {

bool is_trivial_node(const SurfaceDescriptor& d) {
  if (std::holds_alternative<TrivialNode>(d.node)) return true;
  if (auto* s = std::get_if<SphereNode>(&d.node)) return s->kind == SphereKind::S20;
  return false;
}

}  // namespace

bool operator==(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, TrivialNode>) return x.surface == y.surface;
        else if constexpr (std::is_same_v<T, SphereNode>) return x.kind == y.kind;
        else if constexpr (std::is_same_v<T, FreeCoverNode>) return x.quotient == y.quotient && x.w == y.w;
        else if constexpr (std::is_same_v<T, DoublingNode>) return x.base == y.base && x.kind == y.kind;
        else if constexpr (std::is_same_v<T, ConnSumNode>) return x.piece == y.piece && *x.inner == *y.inner;
        else return x.kind == y.kind && *x.inner == *y.inner;
      },
      a.node);
}

SurfacePtr make_trivial(NoneqSurface y) { return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{TrivialNode{y}}); }

SurfacePtr make_sphere(SphereKind k) { return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{SphereNode{k}}); }

SurfacePtr make_free(NoneqSurface q, std::vector<bool> w) {
  if (static_cast<int>(w.size()) != q.beta())
    throw DomainError("w has " + std::to_string(w.size()) + " bits but H^1(" + q.str() + ") has rank " +
                      std::to_string(q.beta()));
  if (std::none_of(w.begin(), w.end(), [](bool b) { return b; }))
    throw DomainError("a free involution needs w != 0");
  return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{FreeCoverNode{q, std::move(w)}});
}

SurfacePtr make_doubling(NoneqSurface y, DoublingKind k) {
  return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{DoublingNode{y, k}});
}

SurfacePtr make_connsum(SurfacePtr inner, NoneqSurface piece) {
  if (!inner) throw DomainError("missing surface");
  if (is_trivial_node(*inner)) throw DomainError("connected sum needs a nontrivial action");
  return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{ConnSumNode{std::move(inner), piece}});
}

SurfacePtr make_surgery(SurfacePtr inner, SurgeryKind k) {
  if (!inner) throw DomainError("missing surface");
  if (is_trivial_node(*inner)) throw DomainError("surgery needs a nontrivial action");
  if (k == SurgeryKind::FM && invariants(*inner).F < 1)
    throw DomainError("FM surgery needs an isolated fixed point");
  return std::make_shared<SurfaceDescriptor>(SurfaceDescriptor{SurgeryNode{std::move(inner), k}});
}

std::string to_string(const SurfaceDescriptor& d) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TrivialNode>) {
          return "triv(" + x.surface.str() + ")";
        } else if constexpr (std::is_same_v<T, SphereNode>) {
          switch (x.kind) {
            case SphereKind::S20: return "S(2,0)";
            case SphereKind::S21: return "S(2,1)";
            case SphereKind::S22: return "S(2,2)";
            case SphereKind::S2a: return "S2a";
          }
          return "";
        } else if constexpr (std::is_same_v<T, FreeCoverNode>) {
          std::string bits;
          for (bool b : x.w) bits += b ? '1' : '0';
          return "free(" + x.quotient.str() + "," + bits + ")";
        } else if constexpr (std::is_same_v<T, DoublingNode>) {
          return "doub(" + x.base.str() + "," + (x.kind == DoublingKind::S10 ? "S10" : "S11") + ")";
        } else if constexpr (std::is_same_v<T, ConnSumNode>) {
          return to_string(*x.inner) + "#" + x.piece.str();
        } else {
          const char* op = x.kind == SurgeryKind::S10AT ? "+S10AT" : x.kind == SurgeryKind::S11AT ? "+S11AT" : "+FM";
          return to_string(*x.inner) + op;
        }
      },
      d.node);
}

// ---------------------------------------------------------------- invariants

Invariants invariants(const SurfaceDescriptor& d) {
  return std::visit(
      [](const auto& x) -> Invariants {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TrivialNode>) {
          return {0, 0, x.surface.beta(), false, true};
        } else if constexpr (std::is_same_v<T, SphereNode>) {
          switch (x.kind) {
            case SphereKind::S20: return {0, 0, 0, false, true};
            case SphereKind::S21: return {0, 1, 0, false, false};
            case SphereKind::S22: return {2, 0, 0, false, false};
            case SphereKind::S2a: return {0, 0, 0, true, false};
          }
          return {};
        } else if constexpr (std::is_same_v<T, FreeCoverNode>) {
          return {0, 0, 2 * x.quotient.beta() - 2, true, false};
        } else if constexpr (std::is_same_v<T, DoublingNode>) {
          int b = 2 * x.base.beta();
          return x.kind == DoublingKind::S11 ? Invariants{2, 0, b, false, false} : Invariants{0, 1, b, false, false};
        } else if constexpr (std::is_same_v<T, ConnSumNode>) {
          Invariants i = invariants(*x.inner);
          i.beta += 2 * x.piece.beta();
          return i;
        } else {
          Invariants i = invariants(*x.inner);
          switch (x.kind) {
            case SurgeryKind::S10AT: i.C += 1; i.beta += 2; break;
            case SurgeryKind::S11AT: i.F += 2; i.beta += 2; break;
            case SurgeryKind::FM:
              if (i.F < 1) throw DomainError("FM surgery needs an isolated fixed point");
              i.F -= 1;
              i.C += 1;
              i.beta += 1;
              break;
          }
          i.is_free = false;
          return i;
        }
      },
      d.node);
}

// ---------------------------------------------------------------- singular ring

int SingRing::degree(int i) const {
  if (i == 0) return 0;
  if (i <= beta) return 1;
  return 2;
}

gf2::BitVec SingRing::unit() const {
  gf2::BitVec v(static_cast<std::size_t>(dim()));
  v.set(0);
  return v;
}

gf2::BitVec SingRing::x(int i) const {
  gf2::BitVec v(static_cast<std::size_t>(dim()));
  v.set(static_cast<std::size_t>(i + 1));
  return v;
}

gf2::BitVec SingRing::top() const {
  gf2::BitVec v(static_cast<std::size_t>(dim()));
  v.set(static_cast<std::size_t>(beta + 1));
  return v;
}

gf2::BitVec SingRing::mul(const gf2::BitVec& a, const gf2::BitVec& b) const {
  gf2::BitVec out(static_cast<std::size_t>(dim()));
  auto n = static_cast<std::size_t>(dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.get(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b.get(j)) continue;
      int di = degree(static_cast<int>(i));
      int dj = degree(static_cast<int>(j));
      if (di == 0) out.flip(j);
      else if (dj == 0) out.flip(i);
      else if (di == 1 && dj == 1 && pairing[i - 1][j - 1]) out.flip(n - 1);
    }
  }
  return out;
}

SingRing sing_ring(const NoneqSurface& y) {
  SingRing r;
  r.beta = y.beta();
  r.pairing.assign(static_cast<std::size_t>(r.beta), std::vector<int>(static_cast<std::size_t>(r.beta), 0));
  if (y.orientable) {
    for (int i = 0; i < y.genus; ++i) {
      r.pairing[2 * i][2 * i + 1] = 1;
      r.pairing[2 * i + 1][2 * i] = 1;
    }
  } else {
    for (int i = 0; i < y.genus; ++i) r.pairing[i][i] = 1;
  }
  return r;
}

SingRing ring_connected_sum(const SingRing& a, const SingRing& b) {
  SingRing r;
  r.beta = a.beta + b.beta;
  r.pairing.assign(static_cast<std::size_t>(r.beta), std::vector<int>(static_cast<std::size_t>(r.beta), 0));
  for (int i = 0; i < a.beta; ++i)
    for (int j = 0; j < a.beta; ++j) r.pairing[i][j] = a.pairing[i][j];
  for (int i = 0; i < b.beta; ++i)
    for (int j = 0; j < b.beta; ++j) r.pairing[a.beta + i][a.beta + j] = b.pairing[i][j];
  return r;
}

// ---------------------------------------------------------------- u-module

std::vector<UPiece> u_module_pieces(const SingRing& ring, const std::vector<bool>& w) {
  if (static_cast<int>(w.size()) != ring.beta) throw DomainError("w has the wrong length");
  gf2::BitVec wv(static_cast<std::size_t>(ring.dim()));
  for (int i = 0; i < ring.beta; ++i)
    if (w[i]) wv.set(static_cast<std::size_t>(i + 1));
  if (!wv.any()) throw DomainError("w must be nonzero");
  auto u = [&](const gf2::BitVec& v) { return ring.mul(wv, v); };

  struct Chain {
    int start;
    std::vector<gf2::BitVec> elems;
  };
  std::vector<Chain> chains;
  gf2::Echelon span(static_cast<std::size_t>(ring.dim()));

  for (int d = 0; d <= 2; ++d) {
    for (int i = 0; i < ring.dim(); ++i) {
      if (ring.degree(i) != d) continue;
      gf2::BitVec e(static_cast<std::size_t>(ring.dim()));
      e.set(static_cast<std::size_t>(i));
      if (span.contains(e)) continue;
      // orbit length until it falls into the span
      gf2::BitVec v = e;
      int k = 0;
      gf2::BitVec cur = v;
      while (cur.any() && !span.contains(cur)) {
        cur = u(cur);
        ++k;
      }
      if (cur.any()) {
        // u^k v lands in the span: correct v by a degree-d element of earlier chains
        gf2::Echelon imgs(static_cast<std::size_t>(ring.dim()));
        std::vector<gf2::BitVec> sources;
        for (const auto& c : chains) {
          int off = d - c.start;
          if (off < 0 || off >= static_cast<int>(c.elems.size())) continue;
          int tgt = off + k;
          if (tgt >= static_cast<int>(c.elems.size())) continue;
          if (imgs.insert(c.elems[static_cast<std::size_t>(tgt)])) sources.push_back(c.elems[static_cast<std::size_t>(off)]);
        }
        gf2::BitVec combo;
        gf2::BitVec res = imgs.reduce(cur, &combo);
        if (res.any()) throw DomainError("u-module has no cyclic decomposition");
        for (std::size_t t = 0; t < sources.size(); ++t)
          if (t < combo.size() && combo.get(t)) v ^= sources[t];
      }
      Chain ch{d, {}};
      gf2::BitVec x = v;
      for (int s = 0; s < k; ++s) {
        ch.elems.push_back(x);
        span.insert(x);
        x = u(x);
      }
      if (x.any()) throw DomainError("u-module correction failed");
      chains.push_back(std::move(ch));
    }
  }
  std::vector<UPiece> out;
  int total = 0;
  for (const auto& c : chains) {
    out.push_back({c.start, static_cast<int>(c.elems.size()), c.elems.front()});
    total += static_cast<int>(c.elems.size());
  }
  if (total != ring.dim()) throw DomainError("u-module decomposition lost dimension");
  return out;
}

std::vector<AntipodalSummand> decompose_u_module(const SingRing& ring, const std::vector<bool>& w) {
  std::vector<AntipodalSummand> out;
  for (const auto& p : u_module_pieces(ring, w)) out.push_back({p.start, p.length - 1});
  return out;
}

std::vector<AntipodalSummand> decompose_u_module(const NoneqSurface& q, const std::vector<bool>& w) {
  return decompose_u_module(sing_ring(q), w);
}

FreeData free_data(const SurfaceDescriptor& d) {
  return std::visit(
      [](const auto& x) -> FreeData {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SphereNode>) {
          if (x.kind == SphereKind::S2a) return {sing_ring(NoneqSurface::N(1)), {true}};
          throw DomainError("descriptor is not free");
        } else if constexpr (std::is_same_v<T, FreeCoverNode>) {
          return {sing_ring(x.quotient), x.w};
        } else if constexpr (std::is_same_v<T, ConnSumNode>) {
          FreeData in = free_data(*x.inner);
          in.ring = ring_connected_sum(in.ring, sing_ring(x.piece));
          in.w.resize(static_cast<std::size_t>(in.ring.beta), false);
          return in;
        } else {
          throw DomainError("descriptor is not free");
        }
      },
      d.node);
}

// ---------------------------------------------------------------- cohomology

NiceModule cohomology(const SurfaceDescriptor& d) {
  Invariants inv = invariants(d);
  NiceModule m;
  if (inv.is_trivial) {
    m.add_free(0, 0).add_free(1, 0, inv.beta).add_free(2, 0);
    return m;
  }
  if (inv.is_free) {
    FreeData fd = free_data(d);
    for (const auto& a : decompose_u_module(fd.ring, fd.w)) m.add_antipodal(a.s, a.r);
    return m;
  }
  if ((inv.beta - inv.F) % 2 != 0) throw DomainError("beta - F is odd");
  int half = (inv.beta - inv.F) / 2;
  auto need = [](int e, const char* what) {
    if (e < 0) throw DomainError(std::string("negative multiplicity for ") + what);
    return e;
  };
  m.add_free(0, 0);
  if (inv.C == 0) {
    m.add_free(1, 1, need(inv.F - 2, "S(1,1)M2"));
    m.add_antipodal(1, 0, need(half + 1, "S(1,0)A0"));
    m.add_free(2, 2);
  } else {
    m.add_free(1, 1, need(inv.F + inv.C - 1, "S(1,1)M2"));
    m.add_free(1, 0, need(inv.C - 1, "S(1,0)M2"));
    m.add_antipodal(1, 0, need(half + 1 - inv.C, "S(1,0)A0"));
    m.add_free(2, 1);
  }
  return m;
}

std::vector<int> singular_betti(const SurfaceDescriptor& d) { return {1, invariants(d).beta, 1}; }

}  // namespace eqsurf
