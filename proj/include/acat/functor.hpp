#pragma once

#include <cmath>

#include "acat/localization.hpp"

namespace acat {

// A-infinity functor: object map and components f^k of degree 1-k on
// composable basis tuples (right-to-left), 1 <= k <= arity bound.
struct AInftyFunctor {
  AInftyCategory source, target;
  std::vector<int> ob;
  std::map<int, std::map<std::vector<BasisRef>, Element>> comp;

  static AInftyFunctor identity(const AInftyCategory& A) {
    AInftyFunctor f{A, A, {}, {}};
    for (int x = 0; x < static_cast<int>(A.objects.size()); ++x) f.ob.push_back(x);
    for (const auto& [xy, H] : A.homs)
      for (const auto& [d, ls] : H.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
          BasisRef b{xy.first, xy.second, d, i};
          f.comp[1][{b}] = Element::basis(A.ring, b);
        }
    return f;
  }

  void set(int k, const std::vector<BasisRef>& tuple, const Element& out) {
    require(static_cast<int>(tuple.size()) == k, "AInftyFunctor::set: arity mismatch");
    int degsum = 0;
    for (int i = 0; i + 1 < k; ++i)
      require(tuple[i].tgt == tuple[i + 1].src, "AInftyFunctor::set: tuple not composable");
    for (const auto& b : tuple) degsum += b.deg;
    require(out.deg == degsum + 1 - k, "AInftyFunctor::set: output degree mismatch");
    require(out.src == ob[tuple.front().src] && out.tgt == ob[tuple.back().tgt],
            "AInftyFunctor::set: output endpoints mismatch");
    if (out.is_zero())
      comp[k].erase(tuple);
    else
      comp[k][tuple] = out;
  }

  Element value(int k, const std::vector<BasisRef>& tuple) const {
    int degsum = 0;
    for (const auto& b : tuple) degsum += b.deg;
    Element out = Element::zero(source.ring, ob[tuple.front().src], ob[tuple.back().tgt],
                                degsum + 1 - k);
    auto it = comp.find(k);
    if (it == comp.end()) return out;
    auto jt = it->second.find(tuple);
    if (jt != it->second.end()) out += jt->second;
    return out;
  }

  // multilinear extension on elements (right-to-left)
  Element value_multi(int k, const std::vector<Element>& args) const {
    int degsum = 0;
    for (const auto& a : args) degsum += a.deg;
    Element out = Element::zero(source.ring, ob[args.front().src], ob[args.back().tgt],
                                degsum + 1 - k);
    std::vector<BasisRef> tuple(k);
    std::function<void(int, Scalar)> rec = [&](int pos, Scalar c) {
      if (pos == k) {
        Element v = value(k, tuple);
        if (!v.is_zero()) out += c * v;
        return;
      }
      for (const auto& [i, cc] : args[pos].coords) {
        tuple[pos] = BasisRef{args[pos].src, args[pos].tgt, args[pos].deg, i};
        rec(pos + 1, c * cc);
      }
    };
    rec(0, Scalar::one(source.ring));
    return out;
  }

  bool strict() const {  // only f^1, as for dg functors
    for (const auto& [k, table] : comp)
      if (k >= 2 && !table.empty()) return false;
    return true;
  }

  friend bool operator==(const AInftyFunctor& a, const AInftyFunctor& b) {
    if (a.ob != b.ob) return false;
    auto norm = [](const AInftyFunctor& f) {
      std::map<int, std::map<std::vector<BasisRef>, std::map<long, Scalar>>> t;
      for (const auto& [k, table] : f.comp)
        for (const auto& [tu, out] : table)
          if (!out.is_zero()) t[k][tu] = out.coords;
      return t;
    };
    return norm(a) == norm(b);
  }
};

namespace detail {

// suspension strip sign for an operator applied elementwise to a suspended
// tuple: sum over slots (position-1)(degree-1), positions right-to-left
inline long strip_exp(const std::vector<int>& degs) {
  long e = 0;
  for (size_t p = 1; p < degs.size(); ++p) e += static_cast<long>(p) * (degs[p] - 1);
  return e;
}

}  // namespace detail

// The coalgebra-map equation, checked per composable tuple in the suspended
// convention: sum_{blocks} F(1 (x) b_A (x) 1) = sum_{partitions} b_B(F,...,F).
struct FunctorReport {
  bool passed = true;
  long tuples_checked = 0;
  std::vector<RelationFailure> failures;
  std::string summary() const {
    return passed ? "functor equations hold (" + std::to_string(tuples_checked) + " tuples)"
                  : "functor equation failures: " + std::to_string(failures.size()) +
                        ", first: " + failures.front().detail;
  }
};

inline FunctorReport check_functor(const AInftyFunctor& f, int l_max, long cap = 100000) {
  FunctorReport rep;
  const AInftyCategory& A = f.source;
  const AInftyCategory& B = f.target;
  for (int l = 1; l <= l_max; ++l) {
    for_each_composable_tuple(
        A, l,
        [&](const std::vector<BasisRef>& tuple) {
          ++rep.tuples_checked;
          int degsum = 0;
          for (const auto& b : tuple) degsum += b.deg;
          Element lhs = Element::zero(A.ring, f.ob[tuple.front().src], f.ob[tuple.back().tgt],
                                      degsum + 2 - l);
          Element rhs = lhs;
          // LHS: F_{l-beta+1} . (1^a (x) b^b (x) 1^g)
          for (int beta = 1; beta <= l; ++beta)
            for (int gamma = 0; gamma + beta <= l; ++gamma) {
              long pass = 0;
              for (int p = gamma + beta; p < l; ++p) pass += tuple[p].deg - 1;
              std::vector<int> bdegs;
              for (int p = gamma; p < gamma + beta; ++p) bdegs.push_back(tuple[p].deg);
              long sb = detail::strip_exp(bdegs);
              std::vector<BasisRef> block(tuple.begin() + gamma, tuple.begin() + gamma + beta);
              Element mid = A.m_basis(beta, block);
              for (const auto& [mi, mc] : mid.coords) {
                std::vector<BasisRef> outer;
                std::vector<int> odegs;
                for (int p = 0; p < gamma; ++p) outer.push_back(tuple[p]);
                outer.push_back(BasisRef{mid.src, mid.tgt, mid.deg, mi});
                for (int p = gamma + beta; p < l; ++p) outer.push_back(tuple[p]);
                for (const auto& b : outer) odegs.push_back(b.deg);
                long sf = detail::strip_exp(odegs);
                Element v = f.value(l - beta + 1, outer);
                if (!v.is_zero()) lhs += sign_scalar(A.ring, pass + sb + sf) * (mc * v);
              }
            }
          // RHS: b_B^j (F_{i_j} (x) ... (x) F_{i_1})
          std::vector<int> parts;
          std::function<void(int)> overparts = [&](int rest) {
            if (rest == 0) {
              int j = static_cast<int>(parts.size());
              std::vector<Element> mids;
              std::vector<int> mdegs;
              long sgn = 0;
              int pos = 0;
              for (int q = 0; q < j; ++q) {
                std::vector<BasisRef> seg(tuple.begin() + pos, tuple.begin() + pos + parts[q]);
                std::vector<int> sdegs;
                for (const auto& b : seg) sdegs.push_back(b.deg);
                sgn += detail::strip_exp(sdegs);
                mids.push_back(f.value(parts[q], seg));
                pos += parts[q];
              }
              bool zero = false;
              for (const auto& m : mids) zero |= m.is_zero();
              if (!zero) {
                for (const auto& m : mids) mdegs.push_back(m.deg);
                sgn += detail::strip_exp(mdegs);
                Element v = B.m(j, mids);
                if (!v.is_zero()) rhs += sign_scalar(A.ring, sgn) * v;
              }
              return;
            }
            for (int i = 1; i <= rest; ++i) {
              parts.push_back(i);
              overparts(rest - i);
              parts.pop_back();
            }
          };
          overparts(l);
          if (!(lhs == rhs)) {
            rep.passed = false;
            if (rep.failures.size() < 8)
              rep.failures.push_back(
                  {l, tuple, "functor residual " + (lhs - rhs).to_string()});
          }
        },
        cap);
  }
  return rep;
}

// units are sent to units (cohomology reading)
inline bool is_unital_functor(const AInftyFunctor& f, std::string* why = nullptr) {
  for (const auto& [x, e] : f.source.units) {
    Element fe = f.value_multi(1, {e});
    UnitVerdict v = is_unit(f.target, f.ob[x], fe);
    if (!v.ok) {
      if (why) *why = "image of the unit of " + f.source.objects[x] + ": " + v.reason;
      return false;
    }
  }
  return true;
}

inline bool is_strictly_unital_functor(const AInftyFunctor& f, std::string* why = nullptr) {
  require(f.source.strictly_unital && f.target.strictly_unital,
          "is_strictly_unital_functor: both categories must be strictly unital");
  for (const auto& [x, e] : f.source.units) {
    Element fe = f.value_multi(1, {e});
    if (!(fe == f.target.units.at(f.ob[x]))) {
      if (why) *why = "strict unit of " + f.source.objects[x] + " is not sent on the nose";
      return false;
    }
  }
  // higher components vanish on strict-unit inputs
  for (const auto& [k, table] : f.comp) {
    if (k < 2) continue;
    for (const auto& [tuple, out] : table)
      for (int p = 0; p < k; ++p) {
        const BasisRef& b = tuple[p];
        if (b.src != b.tgt || b.deg != 0) continue;
        auto uit = f.source.units.find(b.src);
        if (uit == f.source.units.end()) continue;
        if (!uit->second.coords.count(b.idx)) continue;
        std::vector<Element> args;
        for (int q = 0; q < k; ++q)
          args.push_back(q == p ? uit->second : Element::basis(f.source.ring, tuple[q]));
        if (!f.value_multi(k, args).is_zero()) {
          if (why) *why = "f^" + std::to_string(k) + " does not kill a strict unit input";
          return false;
        }
      }
  }
  return true;
}

// f . g through the bar picture; the only signs are suspension strips and the
// roundtrip correction (-1)^{n(n-1)/2}.
inline AInftyFunctor compose(const AInftyFunctor& f, const AInftyFunctor& g) {
  require(f.source.objects.size() == g.target.objects.size(),
          "compose: functor endpoints mismatch");
  AInftyFunctor h{g.source, f.target, {}, {}};
  for (int x = 0; x < static_cast<int>(g.source.objects.size()); ++x)
    h.ob.push_back(f.ob[g.ob[x]]);
  const int K = std::min(g.source.arity_bound, f.target.arity_bound);
  for (int n = 1; n <= K; ++n) {
    for_each_composable_tuple(
        g.source, n,
        [&](const std::vector<BasisRef>& tuple) {
          int degsum = 0;
          for (const auto& b : tuple) degsum += b.deg;
          Element out = Element::zero(g.source.ring, h.ob[tuple.front().src],
                                      h.ob[tuple.back().tgt], degsum + 1 - n);
          std::vector<int> tdegs;
          for (const auto& b : tuple) tdegs.push_back(b.deg);
          long wrap = 0;
          for (size_t p = 1; p < tdegs.size(); ++p) wrap += static_cast<long>(p) * tdegs[p];
          wrap += static_cast<long>(n) * (n - 1) / 2;
          std::vector<int> parts;
          std::function<void(int)> overparts = [&](int rest) {
            if (rest == 0) {
              int j = static_cast<int>(parts.size());
              std::vector<Element> mids;
              long sgn = wrap;
              int pos = 0;
              for (int q = 0; q < j; ++q) {
                std::vector<BasisRef> seg(tuple.begin() + pos, tuple.begin() + pos + parts[q]);
                std::vector<int> sdegs;
                for (const auto& b : seg) sdegs.push_back(b.deg);
                sgn += detail::strip_exp(sdegs);
                mids.push_back(g.value(parts[q], seg));
                pos += parts[q];
              }
              bool zero = false;
              for (const auto& m : mids) zero |= m.is_zero();
              if (!zero) {
                std::vector<int> mdegs;
                for (const auto& m : mids) mdegs.push_back(m.deg);
                sgn += detail::strip_exp(mdegs);
                Element v = f.value_multi(j, mids);
                if (!v.is_zero()) out += sign_scalar(g.source.ring, sgn) * v;
              }
              return;
            }
            for (int i = 1; i <= rest; ++i) {
              parts.push_back(i);
              overparts(rest - i);
              parts.pop_back();
            }
          };
          overparts(n);
          if (!out.is_zero()) h.comp[n][tuple] = out;
        },
        1000000);
  }
  return h;
}

// f+ : A+ -> B+ sending augmentation units to augmentation units strictly.
inline AInftyFunctor augment_functor(const AInftyFunctor& f) {
  AInftyFunctor fp{augment(f.source), augment(f.target), f.ob, f.comp};
  for (int x = 0; x < static_cast<int>(f.source.objects.size()); ++x) {
    BasisRef onea = fp.source.find_basis(x, x, "1_" + f.source.objects[x]);
    fp.comp[1][{onea}] = fp.target.units.at(f.ob[x]);
  }
  return fp;
}

// Induced functor on bar localizations for strict functors respecting the
// inverted sets elementwise (f(I_A[k]) = I_B[k]).
inline AInftyFunctor localize_functor(const AInftyFunctor& f, const LocCategory& la,
                                      const LocCategory& lb) {
  require(f.strict(), "localize_functor: implemented for strict (dg-style) functors");
  require(la.st->inverted.size() == lb.st->inverted.size(),
          "localize_functor: inverted sets must correspond");
  for (size_t k = 0; k < la.st->inverted.size(); ++k) {
    Element img = f.value_multi(1, {la.st->inverted[k]});
    require(img == lb.st->inverted[k], "localize_functor: f does not match the inverted sets");
  }
  AInftyFunctor lf{la.cat, lb.cat, f.ob, {}};
  const auto& twb = *lb.st->tw.state;
  for (const auto& [xy, table] : la.st->words)
    for (const auto& [d, ws] : table)
      for (long i = 0; i < static_cast<long>(ws.size()); ++i) {
        const BarWord& w = ws[i];
        // letterwise image: multilinear over f^1 of each letter's base vector
        Element out = Element::zero(f.source.ring, f.ob[xy.first], f.ob[xy.second], d);
        std::function<void(size_t, BarWord, Scalar)> rec = [&](size_t p, BarWord acc, Scalar c) {
          if (p == w.letters.size()) {
            long j = lb.st->word_index(f.ob[xy.first], f.ob[xy.second], acc);
            if (j >= 0) out.add(j, c);
            return;
          }
          const BasisRef& letter = w.letters[p];
          TwSlot sl = la.st->tw.slot_of(letter);
          Element img = f.value(1, {sl.base});
          for (const auto& [bi, bc] : img.coords) {
            // map tw endpoints: plain objects via ob, cones via generator index
            auto map_twobj = [&](int t) {
              if (t < la.st->nbase) return f.ob[t];
              int gen = 0;
              for (size_t q = 0; q < la.st->cone_idx.size(); ++q)
                if (la.st->cone_idx[q] == t) gen = static_cast<int>(q);
              return lb.st->cone_idx[gen];
            };
            int ns = map_twobj(letter.src), nt = map_twobj(letter.tgt);
            long np = twb.slot_index(ns, nt, letter.deg, sl.i, sl.j,
                                     BasisRef{img.src, img.tgt, img.deg, bi});
            if (np < 0) return;
            BarWord acc2 = acc;
            acc2.letters.push_back(BasisRef{ns, nt, letter.deg, np});
            rec(p + 1, acc2, c * bc);
          }
        };
        rec(0, BarWord{}, Scalar::one(f.source.ring));
        if (!out.is_zero()) lf.comp[1][{BasisRef{xy.first, xy.second, d, i}}] = out;
      }
  return lf;
}

// ---------------------------------------------------------------------------
// pre-natural transformation complexes

// Basis element of the complex of pre-natural transformations f => g with
// components up to the arity bound: (k, composable source tuple, target basis
// vector).  Total degree d has T^k of degree d - k.
struct PreNatSlot {
  int k = 0;
  std::vector<BasisRef> tuple;  // empty for k = 0; then `obj` names the object
  int obj = 0;                  // for k = 0
  BasisRef out;
  auto operator<=>(const PreNatSlot&) const = default;
};

struct FunComplex {
  CochainComplex complex;
  std::map<int, std::vector<PreNatSlot>> slots;  // per total degree
  AInftyFunctor f, g;
  int arity_bound = 3;

  long slot_index(int deg, const PreNatSlot& s) const {
    auto it = slots.find(deg);
    if (it == slots.end()) return -1;
    for (long i = 0; i < static_cast<long>(it->second.size()); ++i)
      if (it->second[i] == s) return i;
    return -1;
  }
};

// The differential combines m_B applied to (g-blocks, T, f-blocks) with the
// right action of m_A, in the suspended convention.
inline FunComplex fun_complex(const AInftyFunctor& f, const AInftyFunctor& g, int arity_bound) {
  const AInftyCategory& A = f.source;
  const AInftyCategory& B = f.target;
  FunComplex fc;
  fc.f = f;
  fc.g = g;
  fc.arity_bound = arity_bound;
  CochainComplex C(A.ring);

  // enumerate slots
  for (int x = 0; x < static_cast<int>(A.objects.size()); ++x) {
    const CochainComplex& H = B.hom(f.ob[x], g.ob[x]);
    for (const auto& [bd, ls] : H.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i)
        fc.slots[bd].push_back(PreNatSlot{0, {}, x, BasisRef{f.ob[x], g.ob[x], bd, i}});
  }
  for (int k = 1; k <= arity_bound; ++k) {
    for_each_composable_tuple(
        A, k,
        [&](const std::vector<BasisRef>& tuple) {
          int degsum = 0;
          for (const auto& b : tuple) degsum += b.deg;
          const CochainComplex& H = B.hom(f.ob[tuple.front().src], g.ob[tuple.back().tgt]);
          for (const auto& [bd, ls] : H.module.basis)
            for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
              int d = bd - degsum + k;  // T^k has degree d - k
              fc.slots[d].push_back(PreNatSlot{
                  k, tuple, tuple.front().src,
                  BasisRef{f.ob[tuple.front().src], g.ob[tuple.back().tgt], bd, i}});
            }
        },
        1000000);
  }
  for (auto& [d, v] : fc.slots) {
    std::sort(v.begin(), v.end());
    for (const auto& s : v) {
      std::string lbl = "T" + std::to_string(s.k) + "@";
      if (s.k == 0)
        lbl += A.objects[s.obj];
      else
        for (const auto& b : s.tuple) lbl += "." + A.label(b);
      lbl += "->" + B.label(s.out);
      C.module.add(d, lbl);
    }
  }

  // differential: evaluate D(T) on each basis prenat
  for (const auto& [d, v] : fc.slots) {
    SparseMatrix m(A.ring, C.module.rank(d + 1), C.module.rank(d));
    const long tdeg_shifted = d - 1;  // degree of the suspended operator
    for (long col = 0; col < static_cast<long>(v.size()); ++col) {
      const PreNatSlot& s = v[col];
      auto tval = [&](int k, const std::vector<BasisRef>& tuple, int obj) -> Element {
        int degsum = 0;
        for (const auto& b : tuple) degsum += b.deg;
        Element out = Element::zero(A.ring, f.ob[k == 0 ? obj : tuple.front().src],
                                    g.ob[k == 0 ? obj : tuple.back().tgt], degsum + d - k);
        if (k == s.k && tuple == s.tuple && (k > 0 || obj == s.obj)) out += Element::basis(A.ring, s.out);
        return out;
      };
      // target components of D(T): arity l, composable tuple
      for (int l = 0; l <= arity_bound; ++l) {
        std::function<void(const std::vector<BasisRef>&, int)> handle =
            [&](const std::vector<BasisRef>& tuple, int obj) {
              int degsum = 0;
              for (const auto& b : tuple) degsum += b.deg;
              Element res = Element::zero(A.ring, f.ob[l == 0 ? obj : tuple.front().src],
                                          g.ob[l == 0 ? obj : tuple.back().tgt],
                                          degsum + (d + 1) - l);
              // (i) right action: -(-1)^{||T||} T(1 (x) b_A (x) 1)
              for (int beta = 1; beta <= l; ++beta)
                for (int gamma = 0; gamma + beta <= l; ++gamma) {
                  long pass = 0;
                  for (int p = gamma + beta; p < l; ++p) pass += tuple[p].deg - 1;
                  std::vector<int> bdegs;
                  for (int p = gamma; p < gamma + beta; ++p) bdegs.push_back(tuple[p].deg);
                  long sb = detail::strip_exp(bdegs);
                  std::vector<BasisRef> block(tuple.begin() + gamma, tuple.begin() + gamma + beta);
                  Element mid = A.m_basis(beta, block);
                  for (const auto& [mi, mc] : mid.coords) {
                    std::vector<BasisRef> outer;
                    for (int p = 0; p < gamma; ++p) outer.push_back(tuple[p]);
                    outer.push_back(BasisRef{mid.src, mid.tgt, mid.deg, mi});
                    for (int p = gamma + beta; p < l; ++p) outer.push_back(tuple[p]);
                    std::vector<int> odegs;
                    for (const auto& b : outer) odegs.push_back(b.deg);
                    long st = detail::strip_exp(odegs);
                    Element tv = tval(l - beta + 1, outer, obj);
                    if (!tv.is_zero())
                      res += sign_scalar(A.ring, pass + sb + st + tdeg_shifted + 1) * (mc * tv);
                  }
                }
              // (ii) left action: b_B(G-blocks, T-block, F-blocks)
              // tile the l letters as: F-parts (right), T-part, G-parts (left)
              std::function<void(int, int, std::vector<Element>&, long, int)> tile =
                  [&](int pos, int stage, std::vector<Element>& pieces, long sgn, int tpos) {
                    // stage 0: F-blocks; stage 1: T placed; stage 2: G-blocks
                    if (pos == l && stage >= 1) {
                      // apply b_B^{j} to pieces (right-to-left in `pieces`)
                      int j = static_cast<int>(pieces.size());
                      std::vector<int> pdegs;
                      for (const auto& e : pieces) pdegs.push_back(e.deg);
                      long sq = detail::strip_exp(pdegs);
                      bool zero = false;
                      for (const auto& e : pieces) zero |= e.is_zero();
                      if (!zero) {
                        Element bv = B.m(j, pieces);
                        if (!bv.is_zero()) res += sign_scalar(A.ring, sgn + sq) * bv;
                      }
                      return;
                    }
                    if (stage == 0 || stage == 2) {
                      // place an f-block (stage 0) or g-block (stage 2)
                      const AInftyFunctor& fg = stage == 0 ? f : g;
                      for (int sz = 1; pos + sz <= l; ++sz) {
                        std::vector<BasisRef> seg(tuple.begin() + pos, tuple.begin() + pos + sz);
                        std::vector<int> sdegs;
                        for (const auto& b : seg) sdegs.push_back(b.deg);
                        Element val = fg.value(sz, seg);
                        if (!val.is_zero()) {
                          pieces.push_back(val);
                          tile(pos + sz, stage, pieces, sgn + detail::strip_exp(sdegs), tpos);
                          pieces.pop_back();
                        }
                      }
                    }
                    if (stage == 0) {
                      // place the T-block here: T consumes sz >= 0 letters; the
                      // suspended T passes the letters consumed by the G-part
                      for (int sz = 0; pos + sz <= l; ++sz) {
                        std::vector<BasisRef> seg(tuple.begin() + pos, tuple.begin() + pos + sz);
                        Element tv = sz == 0
                                         ? tval(0, {}, pos == 0 ? (l == 0 ? obj : tuple.front().src)
                                                                : tuple[pos - 1].tgt)
                                         : tval(sz, seg, 0);
                        // adjust object for sz == 0 at position l
                        if (sz == 0 && pos == l && l > 0) tv = tval(0, {}, tuple.back().tgt);
                        if (tv.is_zero()) continue;
                        long passT = 0;
                        for (int p = pos + sz; p < l; ++p)
                          passT += static_cast<long>(tdeg_shifted) * (tuple[p].deg - 1);
                        std::vector<int> sdegs;
                        for (const auto& b : seg) sdegs.push_back(b.deg);
                        pieces.push_back(tv);
                        tile(pos + sz, 2, pieces, sgn + passT + detail::strip_exp(sdegs), pos);
                        pieces.pop_back();
                      }
                    }
                  };
              std::vector<Element> pieces;
              tile(0, 0, pieces, 0, -1);
              // the stored table of D(T) carries the outer desuspension of the
              // input tuple: D_m(tuple) = (-1)^{strip(tuple)} . s^{-1} D(T)(s-tuple)
              {
                std::vector<int> tdegs;
                for (const auto& b : tuple) tdegs.push_back(b.deg);
                res = sign_scalar(A.ring, detail::strip_exp(tdegs)) * res;
              }
              // encode res into the matrix
              for (const auto& [bi, c] : res.coords) {
                PreNatSlot tslot{l, tuple, l == 0 ? obj : tuple.front().src,
                                 BasisRef{res.src, res.tgt, res.deg, bi}};
                long row = fc.slot_index(d + 1, tslot);
                if (row >= 0) m.add_to(row, col, c);
              }
            };
        if (l == 0) {
          for (int x = 0; x < static_cast<int>(A.objects.size()); ++x) handle({}, x);
        } else {
          for_each_composable_tuple(
              A, l, [&](const std::vector<BasisRef>& tuple) { handle(tuple, 0); }, 1000000);
        }
      }
    }
    C.set_d(d, m);
  }
  // arity truncation: degrees reachable by arity > bound components are
  // untrusted; with nonpositively graded homs that is d > bound
  int max_hom_deg = -1000, min_hom_deg = 1000;
  for (const auto& [xy, H] : A.homs)
    if (H.module.total_rank() > 0) {
      max_hom_deg = std::max(max_hom_deg, H.module.dmax);
      min_hom_deg = std::min(min_hom_deg, H.module.dmin);
    }
  int unreliable_from = (arity_bound + 1) * (1 - std::max(max_hom_deg, 0)) + min_hom_deg;
  C.trust = std::make_pair(-1000, unreliable_from - 1);
  fc.complex = C;
  return fc;
}

// closed degree-0 prenats with H^0-invertible components are natural
// equivalences
inline bool is_natural_equivalence(const FunComplex& fc, const SparseVec& t0coords) {
  // t0coords: coordinates in degree 0 of fc.complex
  const AInftyCategory& B = fc.f.target;
  // closedness
  SparseVec img = fc.complex.d(0).apply(t0coords);
  if (!img.empty()) return false;
  // per object: the T^0 component must be invertible in H^0
  for (int x = 0; x < static_cast<int>(fc.f.source.objects.size()); ++x) {
    const int fx = fc.f.ob[x], gx = fc.g.ob[x];
    Element t0 = Element::zero(B.ring, fx, gx, 0);
    auto it = fc.slots.find(0);
    if (it == fc.slots.end()) return false;
    for (long i = 0; i < static_cast<long>(it->second.size()); ++i) {
      const PreNatSlot& s = it->second[i];
      if (s.k != 0 || s.obj != x) continue;
      auto c = t0coords.find(i);
      if (c != t0coords.end()) t0.add(s.out.idx, c->second);
    }
    // exists w: gx -> fx with [m^2(t0, w)] = [u_gx], and v with [m^2(v, t0)] = [u_fx]
    auto solvable = [&](bool right) {
      const int wsrc = gx, wtgt = fx;  // inverse candidates run backwards
      const int endobj = right ? gx : fx;
      auto uit = B.units.find(endobj);
      if (uit == B.units.end()) return false;
      const CochainComplex& HW = B.hom(wsrc, wtgt);
      const CochainComplex& HE = B.hom(endobj, endobj);
      long nw = HW.module.rank(0), nh = HE.module.rank(-1);
      SparseMatrix M(B.ring, HE.module.rank(0), nw + nh);
      for (long i = 0; i < nw; ++i) {
        Element w = Element::basis(B.ring, BasisRef{wsrc, wtgt, 0, i});
        Element prod = right ? B.m(2, {w, t0}) : B.m(2, {t0, w});
        for (const auto& [j, c] : prod.coords) M.add_to(j, i, c);
      }
      for (const auto& [rc, c] : HE.d(-1).ent) M.add_to(rc.first, nw + rc.second, c);
      SparseVec rhs;
      for (const auto& [i, c] : uit->second.coords) rhs[i] = c;
      return solve_linear(M, rhs).has_value();
    };
    if (!solvable(true) || !solvable(false)) return false;
  }
  return true;
}

// Hochschild cochains CH(A) = hom_{fun(A,A)}(id, id) up to the arity bound.
inline FunComplex hochschild(const AInftyCategory& A, int arity_bound) {
  AInftyFunctor id = AInftyFunctor::identity(A);
  return fun_complex(id, id, arity_bound);
}

// ---------------------------------------------------------------------------
// homotopy classes of unital functors, by finite enumeration

struct Pi0Report {
  bool feasible = true;
  std::string note;
  long candidates = 0;
  long unital = 0;
  long classes = 0;
};

// Enumerates functors with strict components (f^1 only) and coefficients in
// the finite base field, filters the unital ones, and groups them by natural
// equivalence (a closed degree-0 prenat with H^0-invertible components).
// This is a desk-scale instrument, not a decision procedure.
inline Pi0Report pi0_functor_classes(const AInftyCategory& A, const AInftyCategory& B,
                                     int arity_bound, long cap = 100000) {
  Pi0Report rep;
  if (!A.ring.is_finite()) {
    rep.feasible = false;
    rep.note = "enumeration needs a finite base field";
    return rep;
  }
  const long p = static_cast<long>(A.ring.p);
  const int na = static_cast<int>(A.objects.size()), nb = static_cast<int>(B.objects.size());
  // collect the A-basis vectors (the coefficient slots depend on the object map)
  std::vector<BasisRef> abasis;
  for (const auto& [xy, H] : A.homs)
    for (const auto& [d, ls] : H.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i)
        abasis.push_back(BasisRef{xy.first, xy.second, d, i});
  double obmaps = std::pow(static_cast<double>(nb), na);
  double worst = 0;
  for (const auto& b : abasis) worst += 1;  // counted per object map below
  (void)worst;

  std::vector<AInftyFunctor> unital_functors;
  std::vector<int> ob(na, 0);
  std::function<void(int)> overob = [&](int x) {
    if (!rep.feasible) return;
    if (x == na) {
      // coefficient slots for this object map
      std::vector<std::pair<BasisRef, long>> slots;  // basis vector, target rank
      double count = 1;
      for (const auto& b : abasis) {
        long r = B.rank(ob[b.src], ob[b.tgt], b.deg);
        slots.emplace_back(b, r);
        count *= std::pow(static_cast<double>(p), static_cast<double>(r));
        if (count > 1e12) break;
      }
      if (count > static_cast<double>(cap)) {
        rep.feasible = false;
        rep.note = "enumeration domain too large: about " + std::to_string(count) +
                   " candidates for one object map";
        return;
      }
      long total = static_cast<long>(count);
      for (long code = 0; code < total; ++code) {
        ++rep.candidates;
        AInftyFunctor f{A, B, ob, {}};
        long rest = code;
        for (const auto& [b, r] : slots) {
          Element out = Element::zero(A.ring, ob[b.src], ob[b.tgt], b.deg);
          for (long i = 0; i < r; ++i) {
            long digit = rest % p;
            rest /= p;
            if (digit) out.add(i, Scalar(A.ring, digit));
          }
          if (!out.is_zero()) f.comp[1][{b}] = out;
        }
        if (!check_functor(f, std::min(3, arity_bound), 5000).passed) continue;
        if (!is_unital_functor(f)) continue;
        ++rep.unital;
        unital_functors.push_back(std::move(f));
      }
      return;
    }
    for (int o = 0; o < nb; ++o) {
      ob[x] = o;
      overob(x + 1);
    }
  };
  overob(0);
  if (!rep.feasible) return rep;

  // natural-equivalence classes (union-find over pairs)
  const long nf = static_cast<long>(unital_functors.size());
  std::vector<long> parent(nf);
  for (long i = 0; i < nf; ++i) parent[i] = i;
  std::function<long(long)> find = [&](long i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  auto equivalent = [&](const AInftyFunctor& f, const AInftyFunctor& g) {
    if (f.ob != g.ob) {
      // differing object maps may still be equivalent; search anyway
    }
    FunComplex fc = fun_complex(f, g, std::min(2, arity_bound));
    long r0 = fc.complex.module.rank(0);
    if (r0 == 0) return false;
    SparseMatrix Z = kernel_basis(fc.complex.d(0));
    // enumerate the kernel span (capped)
    double total = std::pow(static_cast<double>(p), static_cast<double>(Z.cols));
    if (total > 4096) return false;  // conservative: report inequivalent
    for (long code = 1; code < static_cast<long>(total); ++code) {
      SparseVec v;
      long rest = code;
      for (long c = 0; c < Z.cols; ++c) {
        long digit = rest % p;
        rest /= p;
        if (!digit) continue;
        for (long r = 0; r < Z.rows; ++r) {
          Scalar val = Z.at(r, c) * Scalar(A.ring, digit);
          if (val.is_zero()) continue;
          auto it = v.find(r);
          if (it == v.end())
            v.emplace(r, val);
          else {
            it->second += val;
            if (it->second.is_zero()) v.erase(it);
          }
        }
      }
      if (!v.empty() && is_natural_equivalence(fc, v)) return true;
    }
    return false;
  };
  for (long i = 0; i < nf; ++i)
    for (long j = i + 1; j < nf; ++j) {
      if (find(i) == find(j)) continue;
      if (equivalent(unital_functors[i], unital_functors[j])) parent[find(j)] = find(i);
    }
  std::set<long> roots;
  for (long i = 0; i < nf; ++i) roots.insert(find(i));
  rep.classes = static_cast<long>(roots.size());
  return rep;
}

}  // namespace acat
