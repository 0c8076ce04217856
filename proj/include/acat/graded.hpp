#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acat/sparse_matrix.hpp"

namespace acat {

// Finite-rank-per-degree free graded module on a degree window.
struct GradedModule {
  int dmin = 0, dmax = -1;  // empty when dmin > dmax
  std::map<int, std::vector<std::string>> basis;  // degree -> labels

  long rank(int d) const {
    auto it = basis.find(d);
    return it == basis.end() ? 0 : static_cast<long>(it->second.size());
  }
  long total_rank() const {
    long n = 0;
    for (const auto& [d, b] : basis) n += static_cast<long>(b.size());
    return n;
  }

  void add(int d, const std::string& label) {
    if (basis.empty() || d < dmin) dmin = d;
    if (basis.empty() || d > dmax) dmax = d;
    if (dmin > dmax) dmin = dmax = d;
    basis[d].push_back(label);
  }

  void validate() const {
    for (const auto& [d, b] : basis) {
      require(d >= dmin && d <= dmax, "GradedModule: rank outside window");
      std::set<std::string> seen;
      for (const auto& l : b)
        require(seen.insert(l).second, "GradedModule: duplicate basis label '" + l + "' in degree " +
                                           std::to_string(d));
    }
  }
};

// Cochain complex: degree +1 differential, d.d = 0 on the window.
// `trust` marks the degrees on which the data faithfully models a possibly
// larger complex (truncations); absent trust = the complex is exact as given
// (zero outside the window is genuine).
struct CochainComplex {
  Ring ring;
  GradedModule module;
  std::map<int, SparseMatrix> diff;  // d^k: C^k -> C^{k+1}, absent = zero
  std::optional<std::pair<int, int>> trust;

  CochainComplex() = default;
  explicit CochainComplex(const Ring& R) : ring(R) {}

  SparseMatrix d(int k) const {
    auto it = diff.find(k);
    if (it != diff.end()) return it->second;
    return SparseMatrix(ring, module.rank(k + 1), module.rank(k));
  }

  void set_d(int k, const SparseMatrix& m) {
    require(m.rows == module.rank(k + 1) && m.cols == module.rank(k),
            "CochainComplex::set_d: shape mismatch in degree " + std::to_string(k));
    if (m.is_zero())
      diff.erase(k);
    else
      diff[k] = m;
  }

  void validate() const {
    module.validate();
    for (const auto& [k, m] : diff) {
      require(m.rows == module.rank(k + 1) && m.cols == module.rank(k),
              "CochainComplex: differential shape mismatch at degree " + std::to_string(k));
      require(m.ring == ring, "CochainComplex: differential ring mismatch");
    }
    for (int k = module.dmin; k + 2 <= module.dmax; ++k)
      ensure((d(k + 1) * d(k)).is_zero(), "CochainComplex: d.d != 0 at degree " + std::to_string(k));
  }

  // H^k involves degrees k-1..k+1; all must be inside the trusted range.
  bool reliable_cohomology(int k) const {
    if (!trust) return true;
    return trust->first <= k - 1 && k + 1 <= trust->second;
  }

  bool same_shape(const CochainComplex& o) const {
    if (ring != o.ring) return false;
    int lo = std::min(module.dmin, o.module.dmin), hi = std::max(module.dmax, o.module.dmax);
    for (int k = lo; k <= hi; ++k)
      if (module.rank(k) != o.module.rank(k)) return false;
    for (int k = lo; k < hi; ++k)
      if (!(d(k) == o.d(k))) return false;
    return true;
  }
};

// Degree-homogeneous map of complexes.  Closed (chain map) when it commutes
// with the differentials up to the Koszul sign of its degree.
struct ChainMap {
  CochainComplex source, target;
  int degree = 0;
  std::map<int, SparseMatrix> comp;  // comp[k]: source^k -> target^{k+degree}

  SparseMatrix at(int k) const {
    auto it = comp.find(k);
    if (it != comp.end()) return it->second;
    return SparseMatrix(source.ring, target.module.rank(k + degree), source.module.rank(k));
  }

  void set(int k, const SparseMatrix& m) {
    require(m.rows == target.module.rank(k + degree) && m.cols == source.module.rank(k),
            "ChainMap::set: shape mismatch in degree " + std::to_string(k));
    if (m.is_zero())
      comp.erase(k);
    else
      comp[k] = m;
  }

  static ChainMap identity(const CochainComplex& C) {
    ChainMap f{C, C, 0, {}};
    for (const auto& [k, b] : C.module.basis)
      f.set(k, SparseMatrix::identity(C.ring, static_cast<long>(b.size())));
    return f;
  }
  static ChainMap zero(const CochainComplex& S, const CochainComplex& T, int degree) {
    return ChainMap{S, T, degree, {}};
  }

  // Hom-complex differential D(f) = d_T f - (-1)^{deg} f d_S, degreewise.
  ChainMap hom_differential() const {
    ChainMap g{source, target, degree + 1, {}};
    int lo = source.module.dmin, hi = source.module.dmax;
    for (int k = lo; k <= hi; ++k) {
      SparseMatrix m = target.d(k + degree) * at(k) - sign_scalar(source.ring, degree) * (at(k + 1) * source.d(k));
      g.set(k, m);
    }
    return g;
  }

  bool is_closed() const {
    return hom_differential().is_zero();
  }

  bool is_zero() const {
    for (const auto& [k, m] : comp)
      if (!m.is_zero()) return false;
    return true;
  }

  friend ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    require(a.degree == b.degree, "ChainMap: degree mismatch in +");
    ChainMap c{a.source, a.target, a.degree, {}};
    int lo = std::min(a.source.module.dmin, b.source.module.dmin);
    int hi = std::max(a.source.module.dmax, b.source.module.dmax);
    for (int k = lo; k <= hi; ++k) {
      SparseMatrix m = a.at(k) + b.at(k);
      if (!m.is_zero()) c.comp[k] = m;
    }
    return c;
  }
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b) {
    return a + (sign_scalar(a.source.ring, 1) * b);
  }
  friend ChainMap operator*(const Scalar& c, const ChainMap& a) {
    ChainMap r{a.source, a.target, a.degree, {}};
    for (const auto& [k, m] : a.comp) {
      SparseMatrix t = c * m;
      if (!t.is_zero()) r.comp[k] = t;
    }
    return r;
  }

  // f.compose(g) = f after g.
  ChainMap compose(const ChainMap& g) const {
    ChainMap c{g.source, target, degree + g.degree, {}};
    for (int k = g.source.module.dmin; k <= g.source.module.dmax; ++k) {
      SparseMatrix m = at(k + g.degree) * g.at(k);
      if (!m.is_zero()) c.comp[k] = m;
    }
    return c;
  }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.degree != b.degree) return false;
    int lo = std::min(a.source.module.dmin, b.source.module.dmin);
    int hi = std::max(a.source.module.dmax, b.source.module.dmax);
    for (int k = lo; k <= hi; ++k)
      if (!(a.at(k) == b.at(k))) return false;
    return true;
  }
};

// h with d h + h d = g - f (for degree-0 f, g; general degree n uses the
// hom-complex convention D(h) = g - f).
struct Homotopy {
  ChainMap f, g;
  std::map<int, SparseMatrix> h;  // h[k]: source^k -> target^{k+deg(f)-1}

  ChainMap as_map() const {
    ChainMap m{f.source, f.target, f.degree - 1, h};
    return m;
  }

  bool is_zero() const {
    for (const auto& [k, m] : h)
      if (!m.is_zero()) return false;
    return true;
  }

  void validate() const {
    ChainMap Dh = as_map().hom_differential();
    ensure(Dh == g - f, "Homotopy: D(h) != g - f");
  }
};

// (s^n C)^d = C^{d+n}; differential picks up (-1)^n.
inline CochainComplex shift(const CochainComplex& C, int n) {
  CochainComplex S(C.ring);
  for (const auto& [d, b] : C.module.basis)
    for (const auto& l : b) S.module.add(d - n, l);
  for (const auto& [k, m] : C.diff) {
    SparseMatrix t = sign_scalar(C.ring, n) * m;
    if (!t.is_zero()) S.diff[k - n] = t;
  }
  if (C.trust) S.trust = std::make_pair(C.trust->first - n, C.trust->second - n);
  return S;
}

// cone(f) = T + sS with differential (t, su) -> (dt + fu, -s du).
// The alternate convention (dt - fu, -s du) is available via negate_map;
// t + su -> t - su is an isomorphism between the two.
inline CochainComplex cone(const ChainMap& f, bool negate_map = false) {
  require(f.degree == 0, "cone: map must have degree 0");
  require(f.is_closed(), "cone: map must be closed (commute with differentials)");
  const CochainComplex& A = f.source;
  const CochainComplex& B = f.target;
  CochainComplex C(B.ring);
  int lo = std::min(B.module.dmin, A.module.dmin - 1);
  int hi = std::max(B.module.dmax, A.module.dmax - 1);
  for (int d = lo; d <= hi; ++d) {
    for (const auto& l : (B.module.basis.count(d) ? B.module.basis.at(d) : std::vector<std::string>{}))
      C.module.add(d, "t." + l);
    for (const auto& l :
         (A.module.basis.count(d + 1) ? A.module.basis.at(d + 1) : std::vector<std::string>{}))
      C.module.add(d, "s." + l);
  }
  Scalar fs = negate_map ? -Scalar::one(B.ring) : Scalar::one(B.ring);
  for (int d = lo; d < hi; ++d) {
    long rb = B.module.rank(d), ra = A.module.rank(d + 1);
    long rb1 = B.module.rank(d + 1), ra1 = A.module.rank(d + 2);
    SparseMatrix m(B.ring, rb1 + ra1, rb + ra);
    for (const auto& [rc, v] : B.d(d).ent) m.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : f.at(d + 1).ent) m.set(rc.first, rb + rc.second, fs * v);
    for (const auto& [rc, v] : A.d(d + 1).ent) m.set(rb1 + rc.first, rb + rc.second, -v);
    C.set_d(d, m);
  }
  if (A.trust || B.trust) {
    auto ta = A.trust.value_or(std::make_pair(A.module.dmin, A.module.dmax));
    auto tb = B.trust.value_or(std::make_pair(B.module.dmin, B.module.dmax));
    C.trust = std::make_pair(std::max(ta.first - 1, tb.first), std::min(ta.second - 1, tb.second));
  }
  return C;
}

// hom(C,D)^n = prod_k Hom(C^k, D^{k+n}) with D(f) = d f - (-1)^n f d.
// Basis pair (c in C^k, e in D^{k+n}) ordered by k, then c, then e.
inline CochainComplex hom_complex(const CochainComplex& C, const CochainComplex& D) {
  require(C.ring == D.ring, "hom_complex: ring mismatch");
  CochainComplex H(C.ring);
  int nlo = D.module.dmin - C.module.dmax, nhi = D.module.dmax - C.module.dmin;
  // index maps per degree
  struct Slot {
    int k;
    long ci, ei;
  };
  std::map<int, std::vector<Slot>> slots;
  for (int n = nlo; n <= nhi; ++n) {
    for (int k = C.module.dmin; k <= C.module.dmax; ++k) {
      long rc = C.module.rank(k), rd = D.module.rank(k + n);
      for (long ci = 0; ci < rc; ++ci)
        for (long ei = 0; ei < rd; ++ei) {
          slots[n].push_back({k, ci, ei});
          H.module.add(n, "[" + std::to_string(k) + "]" + C.module.basis.at(k)[ci] + "->" +
                              D.module.basis.at(k + n)[ei]);
        }
    }
  }
  auto index_of = [&](int n, int k, long ci, long ei) -> long {
    const auto& v = slots.at(n);
    for (long i = 0; i < static_cast<long>(v.size()); ++i)
      if (v[i].k == k && v[i].ci == ci && v[i].ei == ei) return i;
    return -1;
  };
  for (int n = nlo; n < nhi; ++n) {
    if (!slots.count(n)) continue;
    SparseMatrix m(C.ring, H.module.rank(n + 1), H.module.rank(n));
    Scalar sg = sign_scalar(C.ring, n);
    const auto& v = slots.at(n);
    for (long i = 0; i < static_cast<long>(v.size()); ++i) {
      const Slot& s = v[i];
      // d_D component: (k, ci, ei) -> (k, ci, ei')
      for (const auto& [rc, val] : D.d(s.k + n).ent)
        if (rc.second == s.ei) {
          long j = index_of(n + 1, s.k, s.ci, rc.first);
          if (j >= 0) m.add_to(j, i, val);
        }
      // -(-1)^n f d_C component: (k, ci, ei) -> (k-1, ci', ei) for d_C: C^{k-1} -> C^k
      for (const auto& [rc, val] : C.d(s.k - 1).ent)
        if (rc.first == s.ci) {
          long j = index_of(n + 1, s.k - 1, rc.second, s.ei);
          if (j >= 0) m.add_to(j, i, -(sg * val));
        }
    }
    H.set_d(n, m);
  }
  if (C.trust || D.trust) {
    auto tc = C.trust.value_or(std::make_pair(C.module.dmin, C.module.dmax));
    auto td = D.trust.value_or(std::make_pair(D.module.dmin, D.module.dmax));
    H.trust = std::make_pair(td.first - tc.first, td.second - tc.second);
  }
  return H;
}

// (C (x) D)^n with d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
inline CochainComplex tensor_complex(const CochainComplex& C, const CochainComplex& D) {
  require(C.ring == D.ring, "tensor_complex: ring mismatch");
  CochainComplex T(C.ring);
  struct Slot {
    int k;
    long ci, ei;
  };
  std::map<int, std::vector<Slot>> slots;
  int nlo = C.module.dmin + D.module.dmin, nhi = C.module.dmax + D.module.dmax;
  for (int n = nlo; n <= nhi; ++n)
    for (int k = C.module.dmin; k <= C.module.dmax; ++k) {
      long rc = C.module.rank(k), rd = D.module.rank(n - k);
      for (long ci = 0; ci < rc; ++ci)
        for (long ei = 0; ei < rd; ++ei) {
          slots[n].push_back({k, ci, ei});
          T.module.add(n, C.module.basis.at(k)[ci] + "(x)" + D.module.basis.at(n - k)[ei]);
        }
    }
  auto index_of = [&](int n, int k, long ci, long ei) -> long {
    if (!slots.count(n)) return -1;
    const auto& v = slots.at(n);
    for (long i = 0; i < static_cast<long>(v.size()); ++i)
      if (v[i].k == k && v[i].ci == ci && v[i].ei == ei) return i;
    return -1;
  };
  for (int n = nlo; n < nhi; ++n) {
    if (!slots.count(n)) continue;
    SparseMatrix m(C.ring, T.module.rank(n + 1), T.module.rank(n));
    const auto& v = slots.at(n);
    for (long i = 0; i < static_cast<long>(v.size()); ++i) {
      const Slot& s = v[i];
      for (const auto& [rc, val] : C.d(s.k).ent)
        if (rc.second == s.ci) {
          long j = index_of(n + 1, s.k + 1, rc.first, s.ei);
          if (j >= 0) m.add_to(j, i, val);
        }
      for (const auto& [rc, val] : D.d(n - s.k).ent)
        if (rc.second == s.ei) {
          long j = index_of(n + 1, s.k, s.ci, rc.first);
          if (j >= 0) m.add_to(j, i, sign_scalar(C.ring, s.k) * val);
        }
    }
    T.set_d(n, m);
  }
  return T;
}

// Exact cohomology in a degree window; results at untrusted degrees are flagged.
inline std::map<int, AbelianGroup> cohomology(const CochainComplex& C, int lo, int hi) {
  std::map<int, AbelianGroup> H;
  for (int k = lo; k <= hi; ++k) {
    AbelianGroup g = homology_at(C.d(k), C.d(k - 1));
    g.trusted = C.reliable_cohomology(k);
    H.emplace(k, g);
  }
  return H;
}

// Solves D(h) = g - f for h of degree deg(f)-1.  Empty optional: no homotopy
// over this ring on this window (definitive only for exact complexes).
inline std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
  require(f.degree == g.degree, "find_homotopy: degree mismatch");
  require(f.source.same_shape(g.source) && f.target.same_shape(g.target),
          "find_homotopy: mismatched complexes");
  const Ring R = f.source.ring;
  const CochainComplex& S = f.source;
  const CochainComplex& T = f.target;
  const int n = f.degree;
  const int klo = S.module.dmin, khi = S.module.dmax;

  // unknown layout: h^k entry (r, c) at off[k] + r * rank_S(k) + c
  std::map<int, long> off;
  long nunk = 0;
  for (int k = klo; k <= khi; ++k) {
    off[k] = nunk;
    nunk += T.module.rank(k + n - 1) * S.module.rank(k);
  }
  // equations: degree k block, entry (a, b); rows of the big system
  std::map<int, long> eqoff;
  long neq = 0;
  for (int k = klo; k <= khi; ++k) {
    eqoff[k] = neq;
    neq += T.module.rank(k + n) * S.module.rank(k);
  }
  SparseMatrix M(R, neq, nunk);
  SparseVec rhs;
  Scalar sg = sign_scalar(R, n);
  for (int k = klo; k <= khi; ++k) {
    long rs = S.module.rank(k);
    if (rs == 0) continue;
    // d_T . h^k
    for (const auto& [rc, v] : T.d(k + n - 1).ent) {
      // rc: (a, r) entry of d_T; contributes to eq (k, a, b) from unknown h^k[r, b]
      for (long b = 0; b < rs; ++b)
        M.add_to(eqoff[k] + rc.first * rs + b, off[k] + rc.second * rs + b, v);
    }
    // (-1)^n h^{k+1} . d_S
    long rs1 = S.module.rank(k + 1);
    if (rs1 > 0) {
      for (const auto& [rc, v] : S.d(k).ent) {
        // rc: (c, b) of d_S; eq (k, a, b) from unknown h^{k+1}[a, c]
        long rt = T.module.rank(k + n);
        for (long a = 0; a < rt; ++a)
          M.add_to(eqoff[k] + a * rs + rc.second, off[k + 1] + a * rs1 + rc.first, sg * v);
      }
    }
    SparseMatrix delta = g.at(k) - f.at(k);
    for (const auto& [rc, v] : delta.ent) rhs[eqoff[k] + rc.first * rs + rc.second] = v;
  }
  auto x = solve_linear(M, rhs);
  if (!x) return std::nullopt;
  Homotopy hh{f, g, {}};
  for (int k = klo; k <= khi; ++k) {
    long rs = S.module.rank(k), rt = T.module.rank(k + n - 1);
    SparseMatrix m(R, rt, rs);
    for (long r = 0; r < rt; ++r)
      for (long c = 0; c < rs; ++c) {
        auto it = x->find(off[k] + r * rs + c);
        if (it != x->end()) m.set(r, c, it->second);
      }
    if (!m.is_zero()) hh.h[k] = m;
  }
  hh.validate();
  return hh;
}

// Quasi-isomorphism test for a closed degree-0 map: cone acyclicity on the
// interior of the requested window.
inline bool is_quasi_iso(const ChainMap& f, int lo, int hi) {
  CochainComplex C = cone(f);
  for (const auto& [k, H] : cohomology(C, lo, hi))
    if (H.trusted && !H.is_zero()) return false;
  return true;
}

// Canonical isomorphism hom(s^{-1}A, B) -> s hom(A, B): f |-> (-1)^{deg f} f.
// hom(A, sB) and s hom(A, B) agree on the nose (identical bases and matrices).
inline ChainMap shift_source_hom_iso(const CochainComplex& A, const CochainComplex& B) {
  CochainComplex src = hom_complex(shift(A, -1), B);
  CochainComplex tgt = shift(hom_complex(A, B), 1);
  ChainMap iso{src, tgt, 0, {}};
  for (int k = src.module.dmin; k <= src.module.dmax; ++k) {
    long r = src.module.rank(k);
    require(r == tgt.module.rank(k), "shift_source_hom_iso: rank mismatch");
    if (r) iso.set(k, sign_scalar(A.ring, k) * SparseMatrix::identity(A.ring, r));
  }
  return iso;
}

}  // namespace acat
