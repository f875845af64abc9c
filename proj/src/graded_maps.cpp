#include "eqsurf/graded_maps.hpp"

#include <algorithm>
#include <climits>

#include "eqsurf/error.hpp"
#include "eqsurf/gf2.hpp"

namespace eqsurf {

// ---------------------------------------------------------------- Gf2Poly

Gf2Poly Gf2Poly::monomial(int k) {
  if (k < 0) throw DomainError("negative exponent in Z/2[t]");
  Gf2Poly p;
  p.set(k);
  return p;
}

void Gf2Poly::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

int Gf2Poly::degree() const {
  if (w_.empty()) return -1;
  return static_cast<int>(w_.size() - 1) * 64 + 63 - __builtin_clzll(w_.back());
}

int Gf2Poly::low_degree() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return static_cast<int>(k) * 64 + __builtin_ctzll(w_[k]);
  return -1;
}

bool Gf2Poly::is_monomial() const { return !is_zero() && degree() == low_degree(); }

bool Gf2Poly::coeff(int k) const {
  if (k < 0 || static_cast<std::size_t>(k / 64) >= w_.size()) return false;
  return (w_[k / 64] >> (k % 64)) & 1U;
}

void Gf2Poly::set(int k, bool v) {
  if (k < 0) throw DomainError("negative exponent in Z/2[t]");
  std::size_t limb = static_cast<std::size_t>(k / 64);
  if (limb >= w_.size()) w_.resize(limb + 1, 0);
  auto bit = std::uint64_t{1} << (k % 64);
  if (v) w_[limb] |= bit;
  else w_[limb] &= ~bit;
  trim();
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& o) {
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  for (std::size_t k = 0; k < o.w_.size(); ++k) w_[k] ^= o.w_[k];
  trim();
  return *this;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  int db = b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (!a.coeff(i)) continue;
    for (int j = 0; j <= db; ++j)
      if (b.coeff(j)) out.set(i + j, !out.coeff(i + j));
  }
  return out;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& a, const Gf2Poly& b) {
  if (b.is_zero()) throw DomainError("division by zero in Z/2[t]");
  Gf2Poly q;
  Gf2Poly r = a;
  int db = b.degree();
  while (r.degree() >= db) {
    int s = r.degree() - db;
    q.set(s, !q.coeff(s));
    r += b * monomial(s);
  }
  return {q, r};
}

bool Gf2Poly::operator==(const Gf2Poly& o) const { return w_ == o.w_; }

std::string Gf2Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    if (!coeff(k)) continue;
    if (!out.empty()) out += " + ";
    out += k == 0 ? "1" : k == 1 ? "t" : "t^" + std::to_string(k);
  }
  return out;
}

// ---------------------------------------------------------------- PolyMap

void PolyMap::validate() const {
  if (matrix.size() != target_degrees.size()) throw DomainError("matrix row count does not match target");
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != source_degrees.size()) throw DomainError("matrix column count does not match source");
    for (std::size_t j = 0; j < source_degrees.size(); ++j) {
      const Gf2Poly& e = matrix[i][j];
      if (e.is_zero()) continue;
      int d = source_degrees[j] + shift - target_degrees[i];
      if (!e.is_monomial() || e.degree() != d)
        throw DomainError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not t^" +
                          std::to_string(d));
    }
  }
}

int PolyMap::stable_degree() const {
  int s = INT_MIN;
  for (int d : source_degrees) s = std::max(s, d);
  for (int d : target_degrees) s = std::max(s, d - shift);
  return s == INT_MIN ? 0 : s;
}

Gf2Poly determinant(const PolyMap& f) {
  f.validate();
  std::size_t n = f.source_degrees.size();
  if (f.target_degrees.size() != n) throw DomainError("determinant of a non-square map");
  if (n == 0) return Gf2Poly::one();
  auto a = f.matrix;
  Gf2Poly prev = Gf2Poly::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(a[k], a[r]);  // sign is irrelevant over Z/2
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Gf2Poly num = a[i][j] * a[k][k] + a[i][k] * a[k][j];
        auto [q, r] = Gf2Poly::divmod(num, prev);
        if (!r.is_zero()) throw DomainError("inexact division in determinant");
        a[i][j] = q;
      }
      a[i][k] = Gf2Poly();
    }
    prev = a[k][k];
  }
  return a[n - 1][n - 1];
}

std::vector<DegreeCheck> verify_poly_iso(const PolyMap& f, int dmin, int dmax) {
  f.validate();
  std::vector<DegreeCheck> out;
  for (int d = dmin; d <= dmax; ++d) {
    DegreeCheck c;
    c.degree = d;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < f.source_degrees.size(); ++j)
      if (d - f.source_degrees[j] >= 0) cols.push_back(j);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < f.target_degrees.size(); ++i)
      if (d + f.shift - f.target_degrees[i] >= 0) rows.push_back(i);
    c.source_dim = static_cast<int>(cols.size());
    c.target_dim = static_cast<int>(rows.size());
    std::vector<gf2::BitVec> vecs;
    for (std::size_t j : cols) {
      gf2::BitVec v(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k)
        if (!f.matrix[rows[k]][j].is_zero()) v.set(k);
      vecs.push_back(v);
    }
    c.rank = static_cast<int>(gf2::rank(vecs));
    c.iso = c.rank == c.source_dim && c.rank == c.target_dim;
    out.push_back(c);
  }
  return out;
}

PolyMap BasisReduction::as_map(const std::vector<int>& target_degrees) const {
  PolyMap m;
  m.source_degrees = degrees;
  m.target_degrees = target_degrees;
  m.shift = 0;
  m.matrix = change;
  return m;
}

BasisReduction poly_basis_reduce(const PolyMap& f, int g0) {
  f.validate();
  std::size_t n = f.source_degrees.size();
  if (f.target_degrees.size() != n) throw DomainError("basis reduction needs equal ranks");
  Gf2Poly det = determinant(f);
  if (!det.is_monomial()) throw DomainError("determinant " + det.str() + " is not a monomial t^k");
  int top = std::max(g0, f.stable_degree());
  for (const auto& c : verify_poly_iso(f, g0, top))
    if (!c.iso) throw DomainError("not an isomorphism in degree " + std::to_string(c.degree));

  // cur[k]: current basis element k in original coordinates; m: map in current coordinates
  std::vector<std::vector<Gf2Poly>> cur(n, std::vector<Gf2Poly>(n));
  for (std::size_t k = 0; k < n; ++k) cur[k][k] = Gf2Poly::one();
  std::vector<int> deg = f.target_degrees;
  auto m = f.matrix;
  std::vector<bool> active(n, true);

  BasisReduction out;
  out.degrees.resize(n);
  out.change.assign(n, std::vector<Gf2Poly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || m[i][j].is_zero()) continue;
      if (k == n || deg[i] > deg[k]) k = i;
    }
    if (k == n) throw DomainError("source generator " + std::to_string(j) + " maps to zero in the quotient");
    int ek = m[k][j].low_degree();
    if (!m[k][j].is_monomial()) throw DomainError("non-homogeneous entry during reduction");
    // beta = b_k + sum_i c_i b_i with c_i = m[i][j] / t^ek
    std::vector<Gf2Poly> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !active[i] || m[i][j].is_zero()) continue;
      c[i] = Gf2Poly::monomial(m[i][j].low_degree() - ek);
    }
    std::vector<Gf2Poly> beta = cur[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t r = 0; r < n; ++r) beta[r] += c[i] * cur[i][r];
    }
    // rewrite coordinates: x_k b_k = x_k beta + sum_i x_k c_i b_i
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t jj = 0; jj < n; ++jj) m[i][jj] += m[k][jj] * c[i];
    }
    cur[k] = beta;
    active[k] = false;
    out.degrees[j] = deg[k];
    for (std::size_t r = 0; r < n; ++r) out.change[r][j] = beta[r];
  }
  return out;
}

// ---------------------------------------------------------------- functors

std::vector<ModuleElement> TorsionView::basis_at(int p, int q) const {
  std::vector<ModuleElement> out;
  for (auto& e : m_.basis_at(p, q)) {
    if (!e.free.empty() && !e.free.begin()->second.is_bottom()) continue;
    out.push_back(std::move(e));
  }
  return out;
}

int TorsionView::rho_power_rank(int p, int q, int k) const {
  if (k < 0) return 0;
  auto src = basis_at(p, q);
  if (k == 0) return static_cast<int>(src.size());
  auto tgt = basis_at(p + k, q + k);
  std::vector<gf2::BitVec> rows;
  for (const auto& b : src) {
    ModuleElement img = act(m_, M2Elt(M2Monomial::rho(k)), b);
    auto full = m_.coordinates(img, p + k, q + k);
    auto fullb = m_.basis_at(p + k, q + k);
    // restrict to the T(M) part of the target basis (the image stays inside T(M))
    gf2::BitVec v(tgt.size());
    std::size_t t = 0;
    for (std::size_t s = 0; s < fullb.size() && t < tgt.size(); ++s) {
      if (fullb[s] == tgt[t]) {
        v.set(t, full[s] != 0);
        ++t;
      } else if (full[s] != 0) {
        throw DomainError("rho moved a torsion class out of T(M)");
      }
    }
    rows.push_back(v);
  }
  return static_cast<int>(gf2::rank(rows));
}

TorsionView torsion_part(const NiceModule& m) { return TorsionView(m); }

namespace {

// top-cone basis at (p, q): free summand indices with a top monomial there
std::vector<std::size_t> top_cone_at(const NiceModule& m, int p, int q) {
  std::vector<std::size_t> out;
  const auto& fs = m.free_summands();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto mono = m2_monomial_at(p - fs[i].p, q - fs[i].q);
    if (mono && mono->is_top()) out.push_back(i);
  }
  return out;
}

int quotient_dim(const NiceModule& m, int p, int q) {
  auto tgt = top_cone_at(m, p, q);
  auto src = top_cone_at(m, p - 1, q - 1);
  std::vector<gf2::BitVec> rows;
  const auto& fs = m.free_summands();
  for (std::size_t i : src) {
    ModuleElement e;
    e.free[i] = M2Elt(*m2_monomial_at(p - 1 - fs[i].p, q - 1 - fs[i].q));
    ModuleElement img = act(m, M2Elt(M2Monomial::rho()), e);
    gf2::BitVec v(tgt.size());
    for (std::size_t t = 0; t < tgt.size(); ++t)
      if (img.free.count(tgt[t])) v.set(t);
    rows.push_back(v);
  }
  return static_cast<int>(tgt.size() - gf2::rank(rows));
}

}  // namespace

std::vector<int> free_quotient_rank(const NiceModule& m, int p) {
  std::vector<int> out;
  if (m.free_summands().empty()) return out;
  int lo = INT_MAX;
  int hi = INT_MIN;
  for (const auto& f : m.free_summands()) {
    lo = std::min(lo, f.q);
    hi = std::max(hi, f.q);
  }
  int prev = 0;
  for (int q = lo - 1; q <= hi + 1; ++q) {
    int d = quotient_dim(m, p, q);
    if (q >= lo)
      for (int k = 0; k < d - prev; ++k) out.push_back(q);
    prev = d;
  }
  return out;
}

NiceModule reconstruct_summands(const NiceModule& m) {
  NiceModule out;
  if (!m.free_summands().empty()) {
    int plo = INT_MAX;
    int phi = INT_MIN;
    for (const auto& f : m.free_summands()) {
      plo = std::min(plo, f.p);
      phi = std::max(phi, f.p);
    }
    for (int p = plo; p <= phi; ++p)
      for (int l : free_quotient_rank(m, p)) out.add_free(p, l);
  }
  if (!m.antipodal_summands().empty()) {
    int plo = INT_MAX;
    int phi = INT_MIN;
    for (const auto& a : m.antipodal_summands()) {
      plo = std::min(plo, a.s);
      phi = std::max(phi, a.s + a.r);
    }
    int qhi = 0;
    for (const auto& f : m.free_summands()) qhi = std::max(qhi, f.q + std::abs(f.p));
    int qs = qhi + std::abs(plo) + std::abs(phi) + 4;
    TorsionView t(m);
    // rank function of rho powers determines the intervals
    auto R = [&](int i, int j) {
      if (i < plo || j > phi || j < i) return 0;
      return t.rho_power_rank(i, qs, j - i);
    };
    for (int s = plo; s <= phi; ++s)
      for (int e = s; e <= phi; ++e) {
        int c = R(s, e) - R(s - 1, e) - R(s, e + 1) + R(s - 1, e + 1);
        if (c < 0) throw DomainError("inconsistent rank function");
        out.add_antipodal(s, e - s, c);
      }
  }
  return out;
}

// ---------------------------------------------------------------- transfer

NiceModule TransferDecomposition::exact() const {
  NiceModule m;
  for (const auto& f : free) {
    if (f.lo != f.hi) throw DomainError("free summand weight is not determined");
    m.add_free(f.p, f.lo);
  }
  for (const auto& a : antipodal) m.add_antipodal(a.s, a.r);
  return m;
}

TransferDecomposition transfer_decomposition(const NiceModule& src, int n, int q, bool uniform) {
  if (q < 0) throw DomainError("Thom class weight must be >= 0");
  if (n < 0) throw DomainError("bundle rank must be >= 0");
  TransferDecomposition out;
  for (const auto& f : src.free_summands()) {
    if (uniform) out.free.push_back({f.p + n, f.q + q, f.q + q});
    else out.free.push_back({f.p + n, 0, f.q + q});
  }
  for (const auto& a : src.antipodal_summands()) out.antipodal.push_back({a.s + n, a.r});
  return out;
}

// ---------------------------------------------------------------- NiceMap

void NiceMap::validate() const {
  if (free_images.size() != source.free_summands().size() ||
      antipodal_images.size() != source.antipodal_summands().size())
    throw DomainError("one image per source generator is required");
  for (std::size_t i = 0; i < free_images.size(); ++i) {
    const auto& img = free_images[i];
    if (img.is_zero()) continue;
    auto d = target.bidegree(img);
    Bidegree want = Bidegree{source.free_summands()[i].p, source.free_summands()[i].q} + shift;
    if (!d || *d != want) throw DomainError("free generator image has the wrong bidegree");
  }
  for (std::size_t j = 0; j < antipodal_images.size(); ++j) {
    const auto& img = antipodal_images[j];
    if (img.is_zero()) continue;
    auto d = target.bidegree(img);
    Bidegree want = Bidegree{source.antipodal_summands()[j].s, 0} + shift;
    if (!d || *d != want) throw DomainError("antipodal generator image has the wrong bidegree");
    for (const auto& [i, c] : img.free)
      if (!c.is_bottom()) throw DomainError("antipodal generator image is not tau-divisible");
    int r = source.antipodal_summands()[j].r;
    if (!act(target, M2Elt(M2Monomial::rho(r + 1)), img).is_zero())
      throw DomainError("antipodal generator image is not killed by rho^" + std::to_string(r + 1));
  }
}

ModuleElement NiceMap::apply(const ModuleElement& x) const {
  ModuleElement out;
  for (const auto& [i, c] : x.free) out += act(target, c, free_images.at(i));
  for (const auto& [j, c] : x.antipodal) out += act_laurent(target, c, antipodal_images.at(j));
  return out;
}

NiceMap NiceMap::identity(const NiceModule& m) {
  NiceMap f{m, m, {0, 0}, {}, {}};
  for (std::size_t i = 0; i < m.free_summands().size(); ++i) f.free_images.push_back(m.free_generator(i));
  for (std::size_t j = 0; j < m.antipodal_summands().size(); ++j)
    f.antipodal_images.push_back(m.antipodal_generator(j));
  return f;
}

namespace {

IsoCell check_cell(const NiceMap& f, int p, int q) {
  IsoCell c;
  c.p = p;
  c.q = q;
  c.required = q >= p;
  auto src = f.source.basis_at(p, q);
  Bidegree t = Bidegree{p, q} + f.shift;
  c.source_dim = static_cast<int>(src.size());
  c.target_dim = f.target.dim_at(t.p, t.q);
  std::vector<gf2::BitVec> rows;
  for (const auto& b : src) {
    auto coords = f.target.coordinates(f.apply(b), t.p, t.q);
    gf2::BitVec v(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) v.set(k, coords[k] != 0);
    rows.push_back(v);
  }
  c.rank = static_cast<int>(gf2::rank(rows));
  c.pass = c.rank == c.source_dim && c.rank == c.target_dim;
  return c;
}

}  // namespace

IsoReport verify_nice_iso_range(const NiceMap& f, Window w) {
  f.validate();
  int rmax = 0;
  int fmax = w.pmax;
  for (const auto* m : {&f.source, &f.target}) {
    for (const auto& a : m->antipodal_summands()) rmax = std::max(rmax, a.r);
    for (const auto& s : m->free_summands()) fmax = std::max(fmax, s.q);
  }
  w.qmax = std::max(w.qmax, fmax + rmax + 2 + std::abs(f.shift.q));
  IsoReport rep;
  rep.window = w;
  for (int q = w.qmin; q <= w.qmax; ++q)
    for (int p = w.pmin; p <= w.pmax; ++p) rep.cells.push_back(check_cell(f, p, q));
  // the two highest rows must agree before the window is trusted
  rep.stabilized = true;
  for (int p = w.pmin; p <= w.pmax; ++p) {
    IsoCell a = check_cell(f, p, w.qmax);
    IsoCell b = check_cell(f, p, w.qmax - 1);
    if (a.source_dim != b.source_dim || a.target_dim != b.target_dim || a.rank != b.rank) rep.stabilized = false;
  }
  rep.pass = rep.stabilized;
  for (const auto& c : rep.cells)
    if (c.required && !c.pass) rep.pass = false;
  return rep;
}

}  // namespace eqsurf
