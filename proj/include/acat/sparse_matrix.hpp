#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "acat/ring.hpp"

namespace acat {

using SparseVec = std::map<long, Scalar>;  // index -> nonzero coefficient

inline void vec_add_scaled(SparseVec& a, const SparseVec& b, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : b) {
    auto it = a.find(i);
    if (it == a.end()) {
      Scalar t = v * c;
      if (!t.is_zero()) a.emplace(i, t);
    } else {
      it->second += v * c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

// Immutable-in-spirit sparse matrix over an exact ring.  No zero entries stored;
// all indices within bounds.  Reductions return new matrices.
struct SparseMatrix {
  Ring ring;
  long rows = 0, cols = 0;
  std::map<std::pair<long, long>, Scalar> ent;

  SparseMatrix() = default;
  SparseMatrix(const Ring& R, long r, long c) : ring(R), rows(r), cols(c) {}

  static SparseMatrix identity(const Ring& R, long n) {
    SparseMatrix m(R, n, n);
    for (long i = 0; i < n; ++i) m.ent.emplace(std::make_pair(i, i), Scalar::one(R));
    return m;
  }

  static SparseMatrix from_rows(const Ring& R, const std::vector<std::vector<long>>& d) {
    SparseMatrix m(R, static_cast<long>(d.size()), d.empty() ? 0 : static_cast<long>(d[0].size()));
    for (long i = 0; i < m.rows; ++i)
      for (long j = 0; j < m.cols; ++j)
        if (d[i][j] != 0) m.ent.emplace(std::make_pair(i, j), Scalar(R, d[i][j]));
    return m;
  }

  Scalar at(long r, long c) const {
    auto it = ent.find({r, c});
    return it == ent.end() ? Scalar::zero(ring) : it->second;
  }

  void set(long r, long c, const Scalar& v) {
    require(r >= 0 && r < rows && c >= 0 && c < cols, "SparseMatrix::set: index out of range");
    if (v.is_zero())
      ent.erase({r, c});
    else
      ent.insert_or_assign({r, c}, v);
  }

  void add_to(long r, long c, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = ent.find({r, c});
    if (it == ent.end()) {
      require(r >= 0 && r < rows && c >= 0 && c < cols, "SparseMatrix::add_to: index out of range");
      ent.emplace(std::make_pair(r, c), v);
    } else {
      it->second += v;
      if (it->second.is_zero()) ent.erase(it);
    }
  }

  bool is_zero() const { return ent.empty(); }

  SparseMatrix operator-() const {
    SparseMatrix m(ring, rows, cols);
    for (const auto& [rc, v] : ent) m.ent.emplace(rc, -v);
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols && a.ring == b.ring,
            "SparseMatrix: shape/ring mismatch in +");
    SparseMatrix m = a;
    for (const auto& [rc, v] : b.ent) m.add_to(rc.first, rc.second, v);
    return m;
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + (-b); }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    require(a.cols == b.rows && a.ring == b.ring, "SparseMatrix: shape/ring mismatch in *");
    // row-major of a against rows of b
    std::vector<SparseVec> brow(b.rows);
    for (const auto& [rc, v] : b.ent) brow[rc.first].emplace(rc.second, v);
    SparseMatrix m(a.ring, a.rows, b.cols);
    std::map<long, SparseVec> acc;  // row -> combination
    for (const auto& [rc, v] : a.ent) vec_add_scaled(acc[rc.first], brow[rc.second], v);
    for (auto& [r, vec] : acc)
      for (auto& [c, v] : vec) m.ent.emplace(std::make_pair(r, c), v);
    return m;
  }

  friend SparseMatrix operator*(const Scalar& c, const SparseMatrix& a) {
    SparseMatrix m(a.ring, a.rows, a.cols);
    for (const auto& [rc, v] : a.ent) {
      Scalar t = c * v;
      if (!t.is_zero()) m.ent.emplace(rc, t);
    }
    return m;
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [rc, v] : ent) {
      auto it = x.find(rc.second);
      if (it == x.end()) continue;
      Scalar t = v * it->second;
      if (t.is_zero()) continue;
      auto jt = y.find(rc.first);
      if (jt == y.end())
        y.emplace(rc.first, t);
      else {
        jt->second += t;
        if (jt->second.is_zero()) y.erase(jt);
      }
    }
    return y;
  }

  SparseMatrix transpose() const {
    SparseMatrix m(ring, cols, rows);
    for (const auto& [rc, v] : ent) m.ent.emplace(std::make_pair(rc.second, rc.first), v);
    return m;
  }

  SparseMatrix column(long c) const {
    SparseMatrix m(ring, rows, 1);
    for (long r = 0; r < rows; ++r) {
      Scalar v = at(r, c);
      if (!v.is_zero()) m.ent.emplace(std::make_pair(r, 0l), v);
    }
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.ring == b.ring && a.rows == b.rows && a.cols == b.cols && a.ent == b.ent;
  }
};

namespace detail {

// Row-major mutable working form used by the eliminations.
struct RowMat {
  long rows = 0, cols = 0;
  Ring ring;
  std::vector<SparseVec> r;

  RowMat() = default;
  RowMat(const Ring& R, long nr, long nc) : rows(nr), cols(nc), ring(R), r(nr) {}
  static RowMat identity(const Ring& R, long n) {
    RowMat m(R, n, n);
    for (long i = 0; i < n; ++i) m.r[i].emplace(i, Scalar::one(R));
    return m;
  }
  static RowMat of(const SparseMatrix& s) {
    RowMat m(s.ring, s.rows, s.cols);
    for (const auto& [rc, v] : s.ent) m.r[rc.first].emplace(rc.second, v);
    return m;
  }
  SparseMatrix to_sparse() const {
    SparseMatrix s(ring, rows, cols);
    for (long i = 0; i < rows; ++i)
      for (const auto& [j, v] : r[i]) s.ent.emplace(std::make_pair(i, j), v);
    return s;
  }
  void row_swap(long i, long j) {
    if (i != j) std::swap(r[i], r[j]);
  }
  void row_add(long i, long j, const Scalar& c) { vec_add_scaled(r[i], r[j], c); }
  void row_scale(long i, const Scalar& c) {
    SparseVec out;
    for (const auto& [k, v] : r[i]) {
      Scalar t = v * c;
      if (!t.is_zero()) out.emplace(k, t);
    }
    r[i] = std::move(out);
  }
};

// Nearest-integer quotient over Z (minimizes |a - q b|), exact quotient over fields.
inline Scalar near_quotient(const Scalar& a, const Scalar& b) {
  if (a.ring().kind != RingKind::Integers) {
    Scalar q = a * b.inverse();
    return q;
  }
  mpz_class az = a.as_integer(), bz = b.as_integer(), q, rm;
  mpz_tdiv_qr(q.get_mpz_t(), rm.get_mpz_t(), az.get_mpz_t(), bz.get_mpz_t());
  mpz_class twice = 2 * abs(rm);
  if (twice > abs(bz)) q += (sgn(rm) == sgn(bz) ? 1 : -1);
  return Scalar(a.ring(), q);
}

inline bool abs_less(const Scalar& a, const Scalar& b) {
  if (a.ring().kind != RingKind::Integers) return false;  // all nonzero equivalent over a field
  return abs(a.as_integer()) < abs(b.as_integer());
}

}  // namespace detail

// Smith normal form data: U*M*V = D with U, V invertible over the ring,
// D diagonal with d_i | d_{i+1} (over Z; over a field D has ones then zeros).
struct SnfResult {
  SparseMatrix U, V, D, Uinv, Vinv;
  long rank = 0;
  std::vector<Scalar> diagonal;  // the nonzero invariant factors, in order
};

// Fraction-free elimination with minimal-absolute-value pivoting over Z;
// ordinary Gauss steps over a field.  Total function.
inline SnfResult smith_normal_form(const SparseMatrix& M) {
  using detail::RowMat;
  const Ring R = M.ring;
  const long nr = M.rows, nc = M.cols;
  RowMat A = RowMat::of(M);
  RowMat U = RowMat::identity(R, nr);
  RowMat UinvT = RowMat::identity(R, nr);  // transpose of U^{-1}
  RowMat VT = RowMat::identity(R, nc);     // transpose of V
  RowMat Vinv = RowMat::identity(R, nc);

  // column occupancy for cheap column operations
  std::vector<std::set<long>> colocc(nc);
  for (long i = 0; i < nr; ++i)
    for (const auto& [j, v] : A.r[i]) colocc[j].insert(i);

  auto a_set = [&](long i, long j, const Scalar& v) {
    if (v.is_zero()) {
      A.r[i].erase(j);
      colocc[j].erase(i);
    } else {
      A.r[i][j] = v;
      colocc[j].insert(i);
    }
  };
  auto a_at = [&](long i, long j) -> Scalar {
    auto it = A.r[i].find(j);
    return it == A.r[i].end() ? Scalar::zero(R) : it->second;
  };
  auto row_add = [&](long i, long j, const Scalar& c) {  // R_i += c R_j
    if (c.is_zero()) return;
    for (const auto& [k, v] : A.r[j]) {
      Scalar t = a_at(i, k) + v * c;
      a_set(i, k, t);
    }
    U.row_add(i, j, c);
    UinvT.row_add(j, i, -c);
  };
  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    for (const auto& [k, v] : A.r[i]) colocc[k].erase(i);
    for (const auto& [k, v] : A.r[j]) colocc[k].erase(j);
    std::swap(A.r[i], A.r[j]);
    for (const auto& [k, v] : A.r[i]) colocc[k].insert(i);
    for (const auto& [k, v] : A.r[j]) colocc[k].insert(j);
    U.row_swap(i, j);
    UinvT.row_swap(i, j);
  };
  auto col_add = [&](long i, long j, const Scalar& c) {  // C_i += c C_j
    if (c.is_zero()) return;
    std::vector<std::pair<long, Scalar>> todo;
    for (long rr : colocc[j]) todo.emplace_back(rr, A.r[rr].at(j));
    for (const auto& [rr, vj] : todo) a_set(rr, i, a_at(rr, i) + vj * c);
    VT.row_add(i, j, c);
    Vinv.row_add(j, i, -c);
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    std::set<long> rowsij = colocc[i];
    rowsij.insert(colocc[j].begin(), colocc[j].end());
    for (long rr : rowsij) {
      Scalar vi = a_at(rr, i), vj = a_at(rr, j);
      a_set(rr, i, vj);
      a_set(rr, j, vi);
    }
    VT.row_swap(i, j);
    Vinv.row_swap(i, j);
  };
  auto row_scale_unit = [&](long i, const Scalar& c) {
    std::vector<std::pair<long, Scalar>> todo(A.r[i].begin(), A.r[i].end());
    for (const auto& [k, v] : todo) a_set(i, k, v * c);
    U.row_scale(i, c);
    UinvT.row_scale(i, c.inverse());
  };

  long t = 0;
  const long tmax = std::min(nr, nc);
  while (t < tmax) {
    // minimal-absolute-value pivot in the active block
    long pr = -1, pc = -1;
    Scalar pv = Scalar::zero(R);
    for (long i = t; i < nr; ++i)
      for (const auto& [j, v] : A.r[i]) {
        if (j < t) continue;
        if (pr < 0 || detail::abs_less(v, pv)) {
          pr = i;
          pc = j;
          pv = v;
          if (R.is_field()) goto found;  // any nonzero works over a field
        }
      }
  found:
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);

    for (;;) {
      // clear column t by nearest-quotient reductions
      bool dirty = false;
      {
        std::vector<long> rowsc(colocc[t].begin(), colocc[t].end());
        for (long i : rowsc) {
          if (i == t) continue;
          Scalar q = detail::near_quotient(a_at(i, t), a_at(t, t));
          row_add(i, t, -q);
          if (!a_at(i, t).is_zero()) dirty = true;
        }
      }
      if (dirty) {  // a nonzero remainder is strictly smaller: promote it
        long best = -1;
        Scalar bv = Scalar::zero(R);
        for (long i : colocc[t])
          if (i != t && (best < 0 || detail::abs_less(A.r[i].at(t), bv))) {
            best = i;
            bv = A.r[i].at(t);
          }
        row_swap(t, best);
        continue;
      }
      // clear row t
      dirty = false;
      {
        std::vector<long> colsr;
        for (const auto& [j, v] : A.r[t])
          if (j != t) colsr.push_back(j);
        for (long j : colsr) {
          Scalar q = detail::near_quotient(a_at(t, j), a_at(t, t));
          col_add(j, t, -q);
          if (!a_at(t, j).is_zero()) dirty = true;
        }
      }
      if (dirty) {
        long best = -1;
        Scalar bv = Scalar::zero(R);
        for (const auto& [j, v] : A.r[t])
          if (j != t && (best < 0 || detail::abs_less(v, bv))) {
            best = j;
            bv = v;
          }
        col_swap(t, best);
        continue;
      }
      if (R.kind == RingKind::Integers) {
        // enforce d_t | (remaining block); fold a non-multiple into row t
        const Scalar d = a_at(t, t);
        long bad = -1;
        for (long i = t + 1; i < nr && bad < 0; ++i)
          for (const auto& [j, v] : A.r[i]) {
            if (j <= t) continue;
            Scalar q;
            if (!v.divide_exact(d, q)) {
              bad = i;
              break;
            }
          }
        if (bad >= 0) {
          row_add(t, bad, Scalar::one(R));
          continue;
        }
      }
      break;
    }

    if (R.is_field()) {
      row_scale_unit(t, a_at(t, t).inverse());
    } else if (a_at(t, t).as_integer() < 0) {
      row_scale_unit(t, -Scalar::one(R));  // unit scale: sign normalization
    }
    ++t;
  }

  SnfResult res;
  res.U = U.to_sparse();
  res.Uinv = UinvT.to_sparse().transpose();
  res.V = VT.to_sparse().transpose();
  res.Vinv = Vinv.to_sparse();
  res.D = A.to_sparse();
  res.rank = t;
  for (long i = 0; i < t; ++i) res.diagonal.push_back(res.D.at(i, i));
  return res;
}

inline long rank(const SparseMatrix& M) { return smith_normal_form(M).rank; }

// Basis of ker(M) as matrix columns.  Over a field: linearly independent,
// count = cols - rank.  Over Z: a basis of the (saturated) kernel lattice.
inline SparseMatrix kernel_basis(const SparseMatrix& M) {
  SnfResult s = smith_normal_form(M);
  long nullity = M.cols - s.rank;
  SparseMatrix K(M.ring, M.cols, nullity);
  for (const auto& [rc, v] : s.V.ent)
    if (rc.second >= s.rank) K.ent.emplace(std::make_pair(rc.first, rc.second - s.rank), v);
  return K;
}

// Solves M x = b exactly (over Z: in integers).  Empty optional = no solution.
inline std::optional<SparseVec> solve_linear(const SparseMatrix& M, const SparseVec& b) {
  for (const auto& [i, v] : b)
    require(i >= 0 && i < M.rows, "solve_linear: rhs index out of range");
  SnfResult s = smith_normal_form(M);
  // U M V = D  =>  M x = b  iff  D y = U b with x = V y
  SparseVec c;
  for (const auto& [rc, v] : s.U.ent) {
    auto it = b.find(rc.second);
    if (it == b.end()) continue;
    Scalar t = v * it->second;
    if (t.is_zero()) continue;
    auto jt = c.find(rc.first);
    if (jt == c.end())
      c.emplace(rc.first, t);
    else {
      jt->second += t;
      if (jt->second.is_zero()) c.erase(jt);
    }
  }
  SparseVec y;
  for (const auto& [i, v] : c) {
    if (i >= s.rank) return std::nullopt;  // unreachable component
    Scalar q;
    if (!v.divide_exact(s.D.at(i, i), q)) return std::nullopt;
    if (!q.is_zero()) y.emplace(i, q);
  }
  SparseVec x;
  for (const auto& [rc, v] : s.V.ent) {
    auto it = y.find(rc.second);
    if (it == y.end()) continue;
    Scalar t = v * it->second;
    if (t.is_zero()) continue;
    auto jt = x.find(rc.first);
    if (jt == x.end())
      x.emplace(rc.first, t);
    else {
      jt->second += t;
      if (jt->second.is_zero()) x.erase(jt);
    }
  }
  return x;
}

// Finitely generated abelian group (or f.d. vector space) descriptor.
struct AbelianGroup {
  Ring ring;
  long free_rank = 0;               // rank over Z, dimension over a field
  std::vector<mpz_class> torsion;   // invariant factors > 1, each dividing the next
  bool trusted = true;              // false when computed at a truncation boundary

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }

  std::string to_string() const {
    std::string s;
    auto app = [&](const std::string& part) {
      if (!s.empty()) s += " x ";
      s += part;
    };
    if (ring.kind == RingKind::Integers) {
      if (free_rank == 1)
        app("Z");
      else if (free_rank > 1)
        app("Z^" + std::to_string(free_rank));
      for (const auto& t : torsion) app("Z/" + t.get_str());
    } else if (free_rank > 0) {
      app(ring.name() + (free_rank > 1 ? "^" + std::to_string(free_rank) : ""));
    }
    if (s.empty()) s = "0";
    if (!trusted) s += " (boundary)";
    return s;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.ring == b.ring && a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

// span(gens) / (span(gens) cap span(rels)) as an abstract group: the
// presentation Z^g / { x : gens x in span(rels) }.
inline AbelianGroup subquotient_group(const SparseMatrix& gens, const SparseMatrix& rels) {
  require(gens.rows == rels.rows && gens.ring == rels.ring, "subquotient_group: ambient mismatch");
  const Ring R = gens.ring;
  SparseMatrix stacked(R, gens.rows, gens.cols + rels.cols);
  for (const auto& [rc, v] : gens.ent) stacked.ent.emplace(rc, v);
  for (const auto& [rc, v] : rels.ent)
    stacked.ent.emplace(std::make_pair(rc.first, gens.cols + rc.second), v);
  SparseMatrix K = kernel_basis(stacked);
  SparseMatrix rel(R, gens.cols, K.cols);
  for (const auto& [rc, v] : K.ent)
    if (rc.first < gens.cols) rel.ent.emplace(rc, v);
  SnfResult s = smith_normal_form(rel);
  AbelianGroup G{R, gens.cols - s.rank, {}, true};
  if (R.kind == RingKind::Integers)
    for (const auto& d : s.diagonal) {
      mpz_class dz = abs(d.as_integer());
      if (dz > 1) G.torsion.push_back(dz);
    }
  return G;
}

// H = ker(d_out)/im(d_in) for consecutive differentials (d_out . d_in = 0).
inline AbelianGroup homology_at(const SparseMatrix& d_out, const SparseMatrix& d_in) {
  require(d_out.cols == d_in.rows, "homology_at: dimension mismatch");
  require(d_out.ring == d_in.ring, "homology_at: ring mismatch");
  const Ring R = d_out.ring;
  AbelianGroup H{R, 0, {}, true};
  if (R.is_field()) {
    H.free_rank = (d_out.cols - rank(d_out)) - rank(d_in);
    ensure(H.free_rank >= 0, "homology_at: negative dimension (d^2 != 0?)");
    return H;
  }
  SnfResult s = smith_normal_form(d_out);
  const long k = d_out.cols - s.rank;  // kernel lattice rank
  // coordinates of im(d_in) in the kernel basis = rows [rank..cols) of Vinv * d_in
  SparseMatrix C(R, k, d_in.cols);
  SparseMatrix VinvB = s.Vinv * d_in;
  for (const auto& [rc, v] : VinvB.ent) {
    ensure(rc.first >= s.rank, "homology_at: image not contained in kernel (d^2 != 0?)");
    C.ent.emplace(std::make_pair(rc.first - s.rank, rc.second), v);
  }
  SnfResult q = smith_normal_form(C);
  H.free_rank = k - q.rank;
  for (const auto& d : q.diagonal) {
    mpz_class dz = d.as_integer();
    if (abs(dz) > 1) H.torsion.push_back(abs(dz));
  }
  return H;
}

}  // namespace acat
