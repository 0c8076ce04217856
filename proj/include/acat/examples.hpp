#pragma once

#include "acat/category.hpp"

namespace acat {

namespace detail {
// m^2(-, u) = id and m^2(u, -) = id entries for a single-basis-vector unit.
inline void install_unit_ops(AInftyCategory& A, int x, const BasisRef& u) {
  for (int w = 0; w < static_cast<int>(A.objects.size()); ++w) {
    const CochainComplex& in = A.hom(w, x);
    for (const auto& [d, ls] : in.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        BasisRef b{w, x, d, i};
        A.set_op(2, {b, u}, Element::basis(A.ring, b));
      }
    const CochainComplex& out = A.hom(x, w);
    for (const auto& [d, ls] : out.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        BasisRef b{x, w, d, i};
        if (!(b == u)) A.set_op(2, {u, b}, Element::basis(A.ring, b));
      }
  }
}
}  // namespace detail

// One object with endomorphism ring k (= the base ring) in degree 0.
// Over F2 this is the one-object category with endomorphism ring Z/2.
inline AInftyCategory one_object_ring(const Ring& R, const std::string& name = "X") {
  AInftyCategory A(R);
  int x = A.add_object(name);
  BasisRef u = A.add_basis(x, x, 0, "u");
  A.set_op(2, {u, u}, Element::basis(R, u));
  A.units[x] = Element::basis(R, u);
  A.strictly_unital = true;
  return A;
}

// The semifree resolution dga Z --x2--> Z in degrees -1, 0: generators e (the
// unit) and b with d b = 2 e, b^2 = 0.  H^0 = Z/2.
inline AInftyCategory z2_resolution_dga() {
  Ring Z = Ring::integers();
  AInftyCategory A(Z);
  int x = A.add_object("X");
  BasisRef b = A.add_basis(x, x, -1, "b");
  BasisRef e = A.add_basis(x, x, 0, "e");
  SparseMatrix d(Z, 1, 1);
  d.set(0, 0, Scalar(Z, 2));
  A.hom_mut(x, x).set_d(-1, d);
  A.set_op(2, {e, e}, Element::basis(Z, e));
  A.set_op(2, {e, b}, Element::basis(Z, b));
  A.set_op(2, {b, e}, Element::basis(Z, b));
  // b.b lands in degree -2 = 0
  A.units[x] = Element::basis(Z, e);
  A.strictly_unital = true;
  return A;
}

// k (x) [n]: objects 0..n, hom(i,j) = k for i <= j with a single degree-0
// generator, composition multiplying generators.
inline AInftyCategory poset_interval(const Ring& R, int n) {
  AInftyCategory A(R);
  for (int i = 0; i <= n; ++i) A.add_object(std::to_string(i));
  std::map<std::pair<int, int>, BasisRef> g;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      g[{i, j}] = A.add_basis(i, j, 0, "g" + std::to_string(i) + std::to_string(j));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        A.set_op(2, {g[{i, j}], g[{j, k}]}, Element::basis(R, g[{i, k}]));
  for (int i = 0; i <= n; ++i) A.units[i] = Element::basis(R, g[{i, i}]);
  A.strictly_unital = true;
  return A;
}

// Dual numbers k[eps]/eps^2 with eps in degree `eps_degree` (default 0).
inline AInftyCategory dual_numbers(const Ring& R, int eps_degree = 0) {
  AInftyCategory A(R);
  int x = A.add_object("X");
  BasisRef u = A.add_basis(x, x, 0, "u");
  BasisRef eps = A.add_basis(x, x, eps_degree, "eps");
  A.set_op(2, {u, u}, Element::basis(R, u));
  A.set_op(2, {u, eps}, Element::basis(R, eps));
  A.set_op(2, {eps, u}, Element::basis(R, eps));
  // eps^2 = 0
  A.units[x] = Element::basis(R, u);
  A.strictly_unital = true;
  return A;
}

// k[eps]/eps^2  x  k[h]/(h^2, dh = 1): a strictly unital dg algebra whose unit
// u = a1 + c1 has cohomologous companions u + d(ch); the second factor is
// contractible.  Basis: a1, aeps (degree 0), c1 (degree 0), ch (degree -1).
inline AInftyCategory dual_numbers_with_contractible(const Ring& R) {
  AInftyCategory A(R);
  int x = A.add_object("X");
  BasisRef ch = A.add_basis(x, x, -1, "ch");
  BasisRef a1 = A.add_basis(x, x, 0, "a1");
  BasisRef aeps = A.add_basis(x, x, 0, "aeps");
  BasisRef c1 = A.add_basis(x, x, 0, "c1");
  SparseMatrix d(R, 3, 1);
  d.set(2, 0, Scalar::one(R));  // d(ch) = c1
  A.hom_mut(x, x).set_d(-1, d);
  auto B = [&](const BasisRef& b) { return Element::basis(R, b); };
  A.set_op(2, {a1, a1}, B(a1));
  A.set_op(2, {a1, aeps}, B(aeps));
  A.set_op(2, {aeps, a1}, B(aeps));
  A.set_op(2, {c1, c1}, B(c1));
  A.set_op(2, {c1, ch}, B(ch));
  A.set_op(2, {ch, c1}, B(ch));
  // aeps^2 = ch^2 = 0 and all cross products vanish
  Element u = B(a1);
  u += B(c1);
  A.units[x] = u;
  A.strictly_unital = true;
  return A;
}

// Poset category on [3] with a single nontrivial triple product:
// m^3(g23, g12, g01) = w, where w is a degree -1 generator of hom(0,3).
// A strictly unital A-infinity category with a genuinely higher operation.
inline AInftyCategory triple_product_poset(const Ring& R) {
  AInftyCategory A = poset_interval(R, 3);
  BasisRef w = A.add_basis(0, 3, -1, "w");
  BasisRef g01 = A.find_basis(0, 1, "g01");
  BasisRef g12 = A.find_basis(1, 2, "g12");
  BasisRef g23 = A.find_basis(2, 3, "g23");
  // unit compositions with w
  A.set_op(2, {A.find_basis(0, 0, "g00"), w}, Element::basis(R, w));
  A.set_op(2, {w, A.find_basis(3, 3, "g33")}, Element::basis(R, w));
  A.set_op(3, {g01, g12, g23}, Element::basis(R, w));
  return A;
}

// k (x) [1] with the terminal object duplicated: objects 0, 1, 1' where
// 1 and 1' are isomorphic via s, t with ts = id and st = id.
inline AInftyCategory poset_with_duplicate(const Ring& R) {
  AInftyCategory A(R);
  int o0 = A.add_object("0"), o1 = A.add_object("1"), o1p = A.add_object("1p");
  BasisRef u0 = A.add_basis(o0, o0, 0, "u0");
  BasisRef u1 = A.add_basis(o1, o1, 0, "u1");
  BasisRef u1p = A.add_basis(o1p, o1p, 0, "u1p");
  BasisRef g = A.add_basis(o0, o1, 0, "g");
  BasisRef gp = A.add_basis(o0, o1p, 0, "gp");
  BasisRef s = A.add_basis(o1, o1p, 0, "s");
  BasisRef t = A.add_basis(o1p, o1, 0, "t");
  auto B = [&](const BasisRef& b) { return Element::basis(R, b); };
  A.set_op(2, {u0, u0}, B(u0));
  A.set_op(2, {u1, u1}, B(u1));
  A.set_op(2, {u1p, u1p}, B(u1p));
  for (auto [f, ul, ur] : {std::tuple{g, u1, u0}, std::tuple{gp, u1p, u0}, std::tuple{s, u1p, u1},
                           std::tuple{t, u1, u1p}}) {
    A.set_op(2, {f, ul}, B(f));
    A.set_op(2, {ur, f}, B(f));
  }
  A.set_op(2, {s, t}, B(u1));   // t after s
  A.set_op(2, {t, s}, B(u1p));  // s after t
  A.set_op(2, {g, s}, B(gp));   // s after g
  A.set_op(2, {gp, t}, B(g));   // t after gp
  for (int i = 0; i < 3; ++i) A.units[i] = B(A.find_basis(i, i, "u" + A.objects[i]));
  A.strictly_unital = true;
  return A;
}

// ---------------------------------------------------------------------------
// free dg category on a finite acyclic graded quiver

struct QuiverArrow {
  std::string src, tgt, label;
  int deg = 0;
};

// Differential of an arrow: linear combination of composable paths, each path
// written first-applied first.
using QuiverDiff = std::map<std::string, std::vector<std::pair<long, std::vector<std::string>>>>;

inline AInftyCategory free_dg_category(const Ring& R, const std::vector<std::string>& objects,
                                       const std::vector<QuiverArrow>& arrows,
                                       const QuiverDiff& darrows = {}) {
  AInftyCategory A(R);
  for (const auto& o : objects) A.add_object(o);
  const int n = static_cast<int>(objects.size());
  // acyclicity: arrows must strictly increase a topological order; require the
  // given object order to be one (src index < tgt index)
  auto oi = [&](const std::string& s) { return A.object_index(s); };
  for (const auto& a : arrows)
    require(oi(a.src) < oi(a.tgt), "free_dg_category: arrows must go forward (acyclic quiver)");

  // enumerate paths (sequences of composable arrows, first-applied first)
  struct Path {
    std::vector<int> arrows;  // indices, first-applied first
    int src, tgt, deg;
  };
  std::vector<Path> paths;
  std::map<std::vector<int>, int> path_index;
  for (int x = 0; x < n; ++x) paths.push_back({{}, x, x, 0});  // identities
  std::function<void(Path)> extend = [&](Path p) {
    for (int ai = 0; ai < static_cast<int>(arrows.size()); ++ai) {
      if (oi(arrows[ai].src) != p.tgt) continue;
      Path q = p;
      q.arrows.push_back(ai);
      q.tgt = oi(arrows[ai].tgt);
      q.deg += arrows[ai].deg;
      paths.push_back(q);
      extend(q);
    }
  };
  for (int x = 0; x < n; ++x) extend(Path{{}, x, x, 0});

  auto path_label = [&](const Path& p) {
    if (p.arrows.empty()) return "id_" + objects[p.src];
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
      s += (s.empty() ? "" : "*") + arrows[*it].label;
    return s;
  };

  std::map<std::pair<int, std::vector<int>>, BasisRef> ref_of;
  for (const auto& p : paths)
    ref_of[{p.src, p.arrows}] = A.add_basis(p.src, p.tgt, p.deg, path_label(p));

  auto arrow_by_label = [&](const std::string& l) {
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
      if (arrows[i].label == l) return i;
    throw usage_error("free_dg_category: unknown arrow '" + l + "'");
  };

  // differential by the graded Leibniz rule
  for (const auto& p : paths) {
    if (p.arrows.empty()) continue;
    Element dp = Element::zero(R, p.src, p.tgt, p.deg + 1);
    for (size_t i = 0; i < p.arrows.size(); ++i) {
      auto dit = darrows.find(arrows[p.arrows[i]].label);
      if (dit == darrows.end()) continue;
      long left_deg = 0;  // degrees of factors applied after slot i
      for (size_t j = i + 1; j < p.arrows.size(); ++j) left_deg += arrows[p.arrows[j]].deg;
      Scalar sg = sign_scalar(R, left_deg);
      for (const auto& [coef, term_path] : dit->second) {
        std::vector<int> spliced(p.arrows.begin(), p.arrows.begin() + i);
        for (const auto& l : term_path) spliced.push_back(arrow_by_label(l));
        spliced.insert(spliced.end(), p.arrows.begin() + i + 1, p.arrows.end());
        auto rit = ref_of.find({p.src, spliced});
        require(rit != ref_of.end(), "free_dg_category: differential leaves the path basis");
        dp.add(rit->second.idx, sg * Scalar(R, coef));
      }
    }
    if (dp.is_zero()) continue;
    CochainComplex& C = A.hom_mut(p.src, p.tgt);
    SparseMatrix d = C.d(p.deg);
    BasisRef pref = ref_of.at({p.src, p.arrows});
    for (const auto& [j, c] : dp.coords) d.add_to(j, pref.idx, c);
    C.set_d(p.deg, d);
  }

  // composition = concatenation
  for (const auto& p : paths)
    for (const auto& q : paths) {
      if (p.tgt != q.src) continue;
      std::vector<int> cat = p.arrows;
      cat.insert(cat.end(), q.arrows.begin(), q.arrows.end());
      A.set_op(2, {ref_of.at({p.src, p.arrows}), ref_of.at({q.src, q.arrows})},
               Element::basis(R, ref_of.at({p.src, cat})));
    }
  for (int x = 0; x < n; ++x)
    A.units[x] = Element::basis(R, A.find_basis(x, x, "id_" + objects[x]));
  A.strictly_unital = true;
  return A;
}

}  // namespace acat
