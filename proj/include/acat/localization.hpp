#pragma once

#include "acat/twisted.hpp"

namespace acat {

// A bar word of length l from X to Y: letters are Tw-category basis vectors
// threaded right-to-left through cones of inverted morphisms,
//   letters[0] : X -> C_1,  letters[p] : C_p -> C_{p+1},  letters[l-1] : C_{l-1} -> Y,
// carried with an overall shift s^{l-1}.  Word degree = sum of letter degrees
// minus (l - 1).
//
// Frozen bar signs (suspension bookkeeping; leftmost letter unsuspended, the
// others suspended): the (alpha, beta, gamma) block term of m^N on words
// w_N .. w_1 carries
//   (-1)^{ N(N-1)/2 + sum_j (j-1) deg(w_j) + sum_{left alpha letters} (n-1)
//          + sum_{block pos p} (p-1)(n_p - 1) }  m^beta_Tw(block letters).
struct BarWord {
  std::vector<BasisRef> letters;  // Tw-category refs, right-to-left

  int length() const { return static_cast<int>(letters.size()); }
  int degree() const {
    int d = 1 - length();
    for (const auto& b : letters) d += b.deg;
    return d;
  }
  auto operator<=>(const BarWord&) const = default;
};

namespace detail {

struct LocState {
  TwCategory tw;
  std::vector<Element> inverted;   // the set I
  std::vector<int> cone_idx;       // tw object index of cone(I[k])
  int nbase = 0;                   // number of plain objects (= base objects)
  int L = 3;
  int wlo = -4, whi = 2;
  // per base-object pair: degree -> words in deterministic order
  std::map<std::pair<int, int>, std::map<int, std::vector<BarWord>>> words;
  std::map<std::pair<int, int>, std::map<int, std::map<BarWord, long>>> index;

  long word_index(int x, int y, const BarWord& w) const {
    auto pit = index.find({x, y});
    if (pit == index.end()) return -1;
    auto dit = pit->second.find(w.degree());
    if (dit == pit->second.end()) return -1;
    auto it = dit->second.find(w);
    return it == dit->second.end() ? -1 : it->second;
  }
};

// One block term of the bar operation; emits (word, coefficient) into sink.
// Output words whose length exceeds L or whose degree leaves the storage
// window are dropped: that is the truncation semantics of F_{<=L}.
inline void bar_block_term(const LocState& st, const std::vector<const BarWord*>& ws, int alpha,
                           int beta, int gamma,
                           const std::function<void(const BarWord&, const Scalar&)>& sink) {
  const Ring& R = st.tw.cat.ring;
  const int N = static_cast<int>(ws.size());
  std::vector<BasisRef> cat;  // concatenated letters right-to-left
  for (int j = 0; j < N; ++j)
    for (const auto& b : ws[j]->letters) cat.push_back(b);
  const int Ltot = static_cast<int>(cat.size());
  require(alpha + beta + gamma == Ltot, "bar_block_term: block does not tile the letters");

  // ws is right-to-left (ws[0] rightmost); the word-level suspension of the
  // j-th word from the right passes the words to its left.
  long exp = static_cast<long>(N) * (N - 1) / 2;
  for (int j = 0; j < N; ++j) exp += static_cast<long>(j) * ws[j]->degree();
  for (int p = gamma + beta; p < Ltot; ++p) exp += cat[p].deg - 1;
  for (int p = 1; p < beta; ++p) exp += static_cast<long>(p) * (cat[gamma + p].deg - 1);

  std::vector<BasisRef> block(cat.begin() + gamma, cat.begin() + gamma + beta);
  Element mid = st.tw.cat.m_basis(beta, block);
  if (mid.is_zero()) return;
  Scalar sgn = sign_scalar(R, exp);
  for (const auto& [idx, c] : mid.coords) {
    BarWord out;
    out.letters.reserve(Ltot - beta + 1);
    for (int p = 0; p < gamma; ++p) out.letters.push_back(cat[p]);
    out.letters.push_back(BasisRef{mid.src, mid.tgt, mid.deg, idx});
    for (int p = gamma + beta; p < Ltot; ++p) out.letters.push_back(cat[p]);
    sink(out, sgn * c);
  }
}

// Full bar operation m^N on words (right-to-left), all admissible blocks.
inline void bar_eval(const LocState& st, const std::vector<const BarWord*>& ws,
                     const std::function<void(const BarWord&, const Scalar&)>& sink) {
  const int N = static_cast<int>(ws.size());
  int Ltot = 0;
  for (const auto* w : ws) Ltot += w->length();
  const int lN = ws[N - 1]->length(), l1 = ws[0]->length();
  for (int alpha = 0; alpha <= (N == 1 ? Ltot - 1 : lN - 1); ++alpha)
    for (int gamma = 0; gamma + alpha + 1 <= Ltot && gamma <= (N == 1 ? Ltot - 1 : l1 - 1);
         ++gamma) {
      int beta = Ltot - alpha - gamma;
      if (beta < 1) continue;
      if (N == 1 && beta < 1) continue;
      bar_block_term(st, ws, alpha, beta, gamma, sink);
    }
}

}  // namespace detail

// The word-length bar localization A[I^{-1}] truncated to words of length <= L
// on a storage degree window.  The materialized category has exact
// differentials; higher operations are evaluated lazily.
struct LocCategory {
  std::shared_ptr<detail::LocState> st;
  AInftyCategory cat;

  const BarWord& word_of(const BasisRef& b) const {
    return st->words.at({b.src, b.tgt}).at(b.deg)[b.idx];
  }

  // the length-1 inclusion A -> A[I^{-1}] on basis vectors
  BasisRef include_base(const BasisRef& base) const {
    // plain-plain Tw slots are indexed exactly like the base hom
    BarWord w{{BasisRef{base.src, base.tgt, base.deg, base.idx}}};
    long idx = st->word_index(base.src, base.tgt, w);
    require(idx >= 0, "include_base: word not materialized (degree outside the window?)");
    return BasisRef{base.src, base.tgt, w.degree(), idx};
  }

  // F_{<=lmax} hom(x,y) as a subcomplex (d is length-non-increasing)
  CochainComplex filtration_complex(int x, int y, int lmax) const;

  // positions of words of exact length l (per degree)
  std::map<int, std::vector<long>> length_positions(int x, int y, int l) const {
    std::map<int, std::vector<long>> out;
    auto pit = st->words.find({x, y});
    if (pit == st->words.end()) return out;
    for (const auto& [d, ws] : pit->second)
      for (long i = 0; i < static_cast<long>(ws.size()); ++i)
        if (ws[i].length() == l) out[d].push_back(i);
    return out;
  }
};

// Generic subcomplex extraction: keep the listed positions per degree; checks
// closure under the differential.
inline CochainComplex subcomplex(const CochainComplex& C,
                                 const std::map<int, std::vector<long>>& keep,
                                 const std::string& what = "subcomplex") {
  CochainComplex S(C.ring);
  std::map<int, std::map<long, long>> pos;  // degree -> old -> new
  for (const auto& [d, ps] : keep)
    for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
      S.module.add(d, C.module.basis.at(d)[ps[i]]);
      pos[d][ps[i]] = i;
    }
  for (const auto& [d, ps] : keep) {
    SparseMatrix full = C.d(d);
    SparseMatrix m(C.ring, S.module.rank(d + 1), S.module.rank(d));
    for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
      for (const auto& [rc, v] : full.ent) {
        if (rc.second != ps[i]) continue;
        auto dit = pos.find(d + 1);
        long target = -1;
        if (dit != pos.end()) {
          auto it = dit->second.find(rc.first);
          if (it != dit->second.end()) target = it->second;
        }
        ensure(target >= 0, what + ": not closed under the differential");
        m.set(target, i, v);
      }
    }
    S.set_d(d, m);
  }
  S.trust = C.trust;
  return S;
}

inline CochainComplex LocCategory::filtration_complex(int x, int y, int lmax) const {
  std::map<int, std::vector<long>> keep;
  auto pit = st->words.find({x, y});
  if (pit != st->words.end())
    for (const auto& [d, ws] : pit->second)
      for (long i = 0; i < static_cast<long>(ws.size()); ++i)
        if (ws[i].length() <= lmax) keep[d].push_back(i);
  return subcomplex(cat.hom(x, y), keep, "filtration F_<=" + std::to_string(lmax));
}

// Builds A[I^{-1}] at truncation L on storage degrees [wlo, whi].
inline LocCategory localize(const AInftyCategory& A, const std::vector<Element>& I, int L, int wlo,
                            int whi) {
  require(L >= 1, "localize: truncation must be >= 1");
  for (const auto& f : I) {
    require(f.deg == 0, "localize: inverted morphisms must have degree 0");
    require(A.m1(f).is_zero(), "localize: inverted morphisms must be closed");
  }
  auto st = std::make_shared<detail::LocState>();
  st->inverted = I;
  st->nbase = static_cast<int>(A.objects.size());
  st->L = L;
  st->wlo = wlo;
  st->whi = whi;
  std::vector<TwObject> obs;
  for (int x = 0; x < st->nbase; ++x) obs.push_back(TwObject::plain(A, x));
  for (size_t k = 0; k < I.size(); ++k) {
    obs.push_back(cone_of(A, I[k], "cone#" + std::to_string(k)));
    st->cone_idx.push_back(st->nbase + static_cast<int>(k));
  }
  st->tw = twisted_category(A, obs);
  const AInftyCategory& T = st->tw.cat;

  AInftyCategory C(A.ring);
  C.arity_bound = A.arity_bound;
  C.ops_vanish_above = false;  // the truncation is a storage bound, not a vanishing claim
  for (int x = 0; x < st->nbase; ++x) C.add_object(A.objects[x]);

  // enumerate words per pair: length-major, thread-lexicographic, letters
  // lexicographic; filter by degree window
  auto letters_of = [&](int s, int t) {
    std::vector<BasisRef> pool;
    const CochainComplex& H = T.hom(s, t);
    for (const auto& [d, ls] : H.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) pool.push_back(BasisRef{s, t, d, i});
    return pool;
  };
  for (int x = 0; x < st->nbase; ++x)
    for (int y = 0; y < st->nbase; ++y) {
      std::vector<std::pair<int, BarWord>> found;  // (insertion counter unused) collect in order
      for (int l = 1; l <= L; ++l) {
        // threads: (l-1)-tuples of cone indices
        std::vector<int> thread(l - 1, 0);
        std::function<void(int)> overthreads = [&](int p) {
          if (p == l - 1) {
            // letters right-to-left
            BarWord w;
            w.letters.resize(l);
            std::function<void(int)> overletters = [&](int q) {
              if (q == l) {
                int d = w.degree();
                if (d >= wlo && d <= whi) found.emplace_back(0, w);
                return;
              }
              int s = q == 0 ? x : st->cone_idx[thread[q - 1]];
              int t = q == l - 1 ? y : st->cone_idx[thread[q]];
              for (const auto& b : letters_of(s, t)) {
                w.letters[q] = b;
                overletters(q + 1);
              }
            };
            overletters(0);
            return;
          }
          for (size_t c = 0; c < st->cone_idx.size(); ++c) {
            thread[p] = static_cast<int>(c);
            overthreads(p + 1);
          }
        };
        overthreads(0);
      }
      if (found.empty()) continue;
      CochainComplex& H = C.hom_mut(x, y);
      for (const auto& [unused, w] : found) {
        int d = w.degree();
        auto& vec = st->words[{x, y}][d];
        st->index[{x, y}][d][w] = static_cast<long>(vec.size());
        vec.push_back(w);
      }
      for (const auto& [d, ws] : st->words[{x, y}])
        for (const auto& w : ws) {
          std::string lbl = "l" + std::to_string(w.length());
          for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
            lbl += "|" + T.label(*it);
          H.module.add(d, lbl);
        }
      // truncated complexes: boundary degrees are not trustworthy
      H.trust = std::make_pair(wlo + 1, whi - 1);
    }

  // differentials
  for (int x = 0; x < st->nbase; ++x)
    for (int y = 0; y < st->nbase; ++y) {
      auto pit = st->words.find({x, y});
      if (pit == st->words.end()) continue;
      CochainComplex& H = C.hom_mut(x, y);
      for (const auto& [d, ws] : pit->second) {
        SparseMatrix m(A.ring, H.module.rank(d + 1), H.module.rank(d));
        for (long i = 0; i < static_cast<long>(ws.size()); ++i) {
          detail::bar_eval(*st, {&ws[i]}, [&](const BarWord& out, const Scalar& c) {
            if (out.length() > st->L) return;
            long j = st->word_index(x, y, out);
            if (j < 0) return;  // degree left the storage window
            m.add_to(j, i, c);
          });
        }
        H.set_d(d, m);
      }
      // d^2 = 0 on the interior of the storage window
      for (int k = wlo + 1; k + 2 <= whi - 1; ++k)
        ensure((H.d(k + 1) * H.d(k)).is_zero(),
               "localize: d^2 != 0 in the interior (sign table falsified)");
    }

  auto stc = st;
  C.op_fn = [stc](int k, const std::vector<BasisRef>& tuple) {
    std::vector<const BarWord*> ws(tuple.size());
    for (size_t p = 0; p < tuple.size(); ++p)
      ws[p] = &stc->words.at({tuple[p].src, tuple[p].tgt}).at(tuple[p].deg)[tuple[p].idx];
    int degsum = 0;
    for (const auto& b : tuple) degsum += b.deg;
    Element out =
        Element::zero(stc->tw.cat.ring, tuple.front().src, tuple.back().tgt,
                      degsum + 2 - static_cast<int>(tuple.size()));
    detail::bar_eval(*stc, ws, [&](const BarWord& w, const Scalar& c) {
      if (w.length() > stc->L) return;
      long j = stc->word_index(tuple.front().src, tuple.back().tgt, w);
      if (j < 0) return;
      out.add(j, c);
    });
    return out;
  };
  LocCategory loc;
  loc.st = st;
  loc.cat = std::move(C);
  return loc;
}

// Relation check restricted to truncation-free tuples (total word length small
// enough that no block term can overflow F_{<=L}).
inline RelationReport check_relations_truncation_free(const LocCategory& loc, int l_max,
                                                      long cap = 5000) {
  RelationReport rep;
  for (int l = 2; l <= l_max; ++l) {
    for_each_composable_tuple(
        loc.cat, l,
        [&](const std::vector<BasisRef>& tuple) {
          int total = 0;
          bool interior = true;
          for (const auto& b : tuple) {
            total += loc.word_of(b).length();
            // keep residual degrees inside the trusted window
          }
          int degsum = 0;
          for (const auto& b : tuple) degsum += b.deg;
          if (degsum + 3 - l < loc.st->wlo + 1 || degsum + 3 - l > loc.st->whi - 1)
            interior = false;
          if (degsum + 2 - l < loc.st->wlo || degsum > loc.st->whi) interior = false;
          if (total > loc.st->L || !interior) return;
          ++rep.tuples_checked;
          Element r = loc.cat.relation_residual(tuple);
          if (!r.is_zero()) {
            rep.passed = false;
            if (rep.failures.size() < 8)
              rep.failures.push_back({l, tuple, "loc residual " + r.to_string()});
          }
        },
        cap);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// associated graded of the length filtration

struct GradedSummandReport {
  int x = 0, y = 0, l = 0;
  std::vector<int> thread;  // cone generator indices
  bool acyclic = true;
  std::map<int, AbelianGroup> groups;
};

// F_{<=l}/F_{<=l-1} with its thread decomposition; each summand's cohomology
// is computed on the interior window.
inline std::vector<GradedSummandReport> check_graded_acyclicity(const LocCategory& loc, int x,
                                                                int y, int l, int lo, int hi) {
  std::vector<GradedSummandReport> out;
  auto pit = loc.st->words.find({x, y});
  if (pit == loc.st->words.end()) return out;
  // collect threads appearing in length-l words
  std::set<std::vector<int>> threads;
  auto thread_of = [&](const BarWord& w) {
    std::vector<int> th;
    for (int p = 0; p + 1 < w.length(); ++p) {
      int cone = w.letters[p].tgt;
      th.push_back(cone - loc.st->nbase);
    }
    return th;
  };
  for (const auto& [d, ws] : pit->second)
    for (const auto& w : ws)
      if (w.length() == l) threads.insert(thread_of(w));
  for (const auto& th : threads) {
    GradedSummandReport rep{x, y, l, th, true, {}};
    // summand: words with this exact thread; graded differential keeps length
    std::map<int, std::vector<long>> keep;
    for (const auto& [d, ws] : pit->second)
      for (long i = 0; i < static_cast<long>(ws.size()); ++i)
        if (ws[i].length() == l && thread_of(ws[i]) == th) keep[d].push_back(i);
    // build the summand complex with the length-preserving part of d
    CochainComplex S(loc.cat.ring);
    std::map<int, std::map<BarWord, long>> pos;
    for (const auto& [d, ps] : keep)
      for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
        const BarWord& w = pit->second.at(d)[ps[i]];
        S.module.add(d, "gr" + std::to_string(i));
        pos[d][w] = i;
      }
    for (const auto& [d, ps] : keep) {
      SparseMatrix m(loc.cat.ring, S.module.rank(d + 1), S.module.rank(d));
      for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
        const BarWord& w = pit->second.at(d)[ps[i]];
        detail::bar_eval(*loc.st, {&w}, [&](const BarWord& outw, const Scalar& c) {
          if (outw.length() != l) return;  // graded part only
          auto dit = pos.find(d + 1);
          if (dit == pos.end()) return;
          auto it = dit->second.find(outw);
          if (it == dit->second.end()) return;
          m.add_to(it->second, i, c);
        });
      }
      S.set_d(d, m);
    }
    S.trust = std::make_pair(loc.st->wlo + 1, loc.st->whi - 1);
    for (const auto& [k, H] : cohomology(S, lo, hi)) {
      rep.groups.emplace(k, H);
      if (H.trusted && !H.is_zero()) rep.acyclic = false;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------
// stable comparison of truncated complexes
//
// Finite truncations of bar complexes carry classes trapped near the top word
// length (the homotopies contracting them raise length).  The trustworthy part
// of H(F_{<=L}) is the image of H(F_{<=L}) -> H(F_{<=L+1}); quasi-isomorphism
// claims are verified on these stable images.

struct StableDegreeCheck {
  AbelianGroup stable_src, stable_tgt, image;
  bool onto = false;
  bool passed = false;
};

// Embedding matrix of a coordinate subcomplex at one degree.
inline SparseMatrix embedding_matrix(const Ring& R, long big_rank,
                                     const std::vector<long>& positions) {
  SparseMatrix E(R, big_rank, static_cast<long>(positions.size()));
  for (long i = 0; i < static_cast<long>(positions.size()); ++i)
    E.set(positions[i], i, Scalar::one(R));
  return E;
}

// f: Cbig -> Dbig filtration-compatible; Csmall, Dsmall coordinate
// subcomplexes.  Checks that f maps the stable part of H^d(C) isomorphically
// onto the stable part of H^d(D).
inline StableDegreeCheck stable_map_check(const CochainComplex& Csmall, const SparseMatrix& Ec,
                                          const CochainComplex& Cbig,
                                          const CochainComplex& Dsmall, const SparseMatrix& Ed,
                                          const CochainComplex& Dbig, const SparseMatrix& f_at_d,
                                          int d) {
  const Ring& R = Cbig.ring;
  StableDegreeCheck out;
  SparseMatrix Zc = Ec * kernel_basis(Csmall.d(d));
  SparseMatrix Bc = Cbig.d(d - 1);
  SparseMatrix Zd = Ed * kernel_basis(Dsmall.d(d));
  SparseMatrix Bd = Dbig.d(d - 1);
  out.stable_src = subquotient_group(Zc, Bc);
  out.stable_tgt = subquotient_group(Zd, Bd);
  SparseMatrix FZc = f_at_d * Zc;
  out.image = subquotient_group(FZc, Bd);
  SparseMatrix rels(R, Bd.rows, FZc.cols + Bd.cols);
  for (const auto& [rc, v] : FZc.ent) rels.ent.emplace(rc, v);
  for (const auto& [rc, v] : Bd.ent)
    rels.ent.emplace(std::make_pair(rc.first, FZc.cols + rc.second), v);
  out.onto = subquotient_group(Zd, rels).is_zero();
  out.passed = out.stable_src == out.stable_tgt && out.stable_src == out.image && out.onto;
  return out;
}

// ---------------------------------------------------------------------------
// the right-inverse verification: A -> A+[e0^{-1}] is a quasi-equivalence

struct RightInverseReport {
  bool passed = true;
  std::string detail;
  // per pair and degree: H(hom_A), H(F_{<=L}), H(F_{<=L+1}), stable image
  std::map<std::pair<int, int>, std::map<int, std::array<AbelianGroup, 4>>> groups;

  std::string summary() const {
    return passed ? "right-inverse verification passed"
                  : "right-inverse verification FAILED: " + detail;
  }
};

// For unital A with one chosen unit per object: the inclusion
// hom_A(X,Y) -> F_{<=L} hom_{A+[e0^{-1}]}(X,Y) must identify H(hom_A) with the
// stable part of the truncated cohomology (image of H(F_{<=L}) in
// H(F_{<=L+1})) on the window [lo, hi].  The localization of A+ is taken at
// the chosen units (the cohomologous-localization reduction).
inline RightInverseReport verify_right_inverse(const AInftyCategory& A, int L, int lo, int hi) {
  RightInverseReport rep;
  AInftyCategory Ap = augment(A);
  std::vector<Element> I;
  for (const auto& [x, e] : A.units) I.push_back(e);
  require(!I.empty(), "verify_right_inverse: A must have declared units");
  int wlo = lo - 2, whi = hi + 2;
  LocCategory loc = localize(Ap, I, L + 1, wlo, whi);
  const int n = static_cast<int>(A.objects.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const CochainComplex& base = A.hom(x, y);
      const CochainComplex& big = loc.cat.hom(x, y);
      if (base.module.total_rank() == 0 && big.module.total_rank() == 0) continue;
      CochainComplex FL = loc.filtration_complex(x, y, L);
      auto hbase = cohomology(base, lo, hi);
      auto hl = cohomology(FL, lo, hi);
      auto hl1 = cohomology(big, lo, hi);
      // positions of F_{<=L} inside F_{<=L+1}, and of length-1 base vectors
      std::map<int, std::vector<long>> posL;
      auto pit = loc.st->words.find({x, y});
      if (pit != loc.st->words.end())
        for (const auto& [dd, ws] : pit->second)
          for (long i = 0; i < static_cast<long>(ws.size()); ++i)
            if (ws[i].length() <= L) posL[dd].push_back(i);
      for (int d = lo; d <= hi; ++d) {
        // f: hom_A -> F_{<=L+1}: base basis vector to its length-1 word slot
        SparseMatrix f(A.ring, big.module.rank(d), base.module.rank(d));
        for (long i = 0; i < base.module.rank(d); ++i) {
          BarWord w{{BasisRef{x, y, d, i}}};
          long j = loc.st->word_index(x, y, w);
          ensure(j >= 0, "verify_right_inverse: length-1 word missing from the window");
          f.set(j, i, Scalar::one(A.ring));
        }
        SparseMatrix EcAll = SparseMatrix::identity(A.ring, base.module.rank(d));
        SparseMatrix Ed = embedding_matrix(A.ring, big.module.rank(d),
                                           posL.count(d) ? posL.at(d) : std::vector<long>{});
        StableDegreeCheck chk = stable_map_check(base, EcAll, base, FL, Ed, big, f, d);
        rep.groups[{x, y}][d] = {hbase.at(d), hl.at(d), hl1.at(d), chk.stable_tgt};
        if (!chk.passed) {
          rep.passed = false;
          rep.detail = "stable comparison fails at H^" + std::to_string(d) + "(" + A.objects[x] +
                       "," + A.objects[y] + "): base " + hbase.at(d).to_string() + ", stable " +
                       chk.stable_tgt.to_string() + ", image " + chk.image.to_string();
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// the T and S subcomplexes of hom_{A+[e0^{-1}]}(X,X) with the operators
// H, G, K, t of the retraction argument

struct TTSSData {
  CochainComplex T, S;          // S presented inside T's coordinates
  std::vector<long> S_in_T;     // unused placeholder for clarity; see positions
  ChainMap opH, opG, opK;       // degree -1 endomorphisms of T
  ChainMap opPsiB, opPsiBM;     // degree 0: prepend b(x)e0 resp. b(x)m^2(e0,e0)
  ChainMap opT;                 // degree 0: the map t (image inside S)
  bool alpha_zero = false;      // strict units have alpha = 0
  bool identities_ok = false;   // the three homotopy identities + id ~ t
  bool claim_I_ok = false;      // incl . t homotopic to id_T (via H, G, K)
  bool claim_II_ok = false;     // t|hom_A = m^2(e0,-) and homotopic to id
  bool S_quasi_iso_ok = false;  // H(S_{<=L}) = H(hom_A) on the window
  std::string sign_note;
  std::string detail;
};

// Builds T, S and the operators for the object x of a unital A with chosen
// units; verifies the homotopy identities exactly on the columns of length
// <= L-1 (the operators raise word length by one).
inline TTSSData build_tt_ss(const AInftyCategory& A, int x, int L, int lo, int hi) {
  TTSSData out;
  AInftyCategory Ap = augment(A);
  std::vector<Element> I;
  std::map<int, int> cone_of_object;  // object -> generator index
  for (const auto& [ob, e] : A.units) {
    cone_of_object[ob] = static_cast<int>(I.size());
    I.push_back(e);
  }
  const int wlo = lo - 3, whi = hi + 3;
  LocCategory loc = localize(Ap, I, L, wlo, whi);
  const Element e0 = A.units.at(x);
  const int coneX_gen = cone_of_object.at(x);
  const int coneX = loc.st->cone_idx[coneX_gen];
  const BasisRef one_ref = Ap.find_basis(x, x, "1_" + A.objects[x]);

  // T: all cones in the thread equal cone(e0^X)
  auto pit = loc.st->words.find({x, x});
  require(pit != loc.st->words.end(), "build_tt_ss: empty localized hom");
  auto thread_ok = [&](const BarWord& w) {
    for (int p = 0; p + 1 < w.length(); ++p)
      if (w.letters[p].tgt != coneX) return false;
    return true;
  };
  std::map<int, std::vector<long>> posT;
  for (const auto& [d, ws] : pit->second)
    for (long i = 0; i < static_cast<long>(ws.size()); ++i)
      if (thread_ok(ws[i])) posT[d].push_back(i);
  out.T = subcomplex(loc.cat.hom(x, x), posT, "T");

  // S inside T: leftmost letter (or the length-1 element) avoids the
  // augmentation-unit coordinate 1_X
  auto in_S = [&](const BarWord& w) {
    const BasisRef& left = w.letters.back();
    TwSlot sl = loc.st->tw.slot_of(left);
    return !(sl.base == one_ref);
  };
  std::map<int, std::vector<long>> posS_inT;  // positions within T
  {
    for (const auto& [d, ps] : posT) {
      long tpos = 0;
      for (long p : ps) {
        if (in_S(pit->second.at(d)[p])) posS_inT[d].push_back(tpos);
        ++tpos;
      }
    }
  }
  out.S = subcomplex(out.T, posS_inT, "S");

  // position maps (degree, loc position) <-> T position
  std::map<int, std::map<long, long>> t_of_loc;
  for (const auto& [d, ps] : posT)
    for (long i = 0; i < static_cast<long>(ps.size()); ++i) t_of_loc[d][ps[i]] = i;

  // prepend(v at cone entry j) . retype: word operator on T
  // new leftmost letter lives in hom_tw(cone(e0), X) slot (0, j, v)
  const auto& tws = *loc.st->tw.state;
  auto retype_ref = [&](const BasisRef& left) {
    TwSlot sl = loc.st->tw.slot_of(left);  // (0, j, base): target is plain x
    long pos = tws.slot_index(left.src, coneX, left.deg, 0, sl.j, sl.base);
    ensure(pos >= 0, "build_tt_ss: retype slot missing");
    return BasisRef{left.src, coneX, left.deg, pos};
  };
  auto prepend_op = [&](int entry_j, const Element& v, int opdeg) {
    ChainMap op{out.T, out.T, opdeg, {}};
    for (const auto& [d, ps] : posT) {
      SparseMatrix m(A.ring, out.T.module.rank(d + opdeg), out.T.module.rank(d));
      for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
        const BarWord& w = pit->second.at(d)[ps[i]];
        if (w.length() + 1 > L) continue;  // raises length; truncated columns stay zero
        BarWord nw = w;
        nw.letters.back() = retype_ref(nw.letters.back());
        for (const auto& [bidx, c] : v.coords) {
          int bd = v.deg;
          long spos = tws.slot_index(coneX, x, bd + (entry_j == 1 ? 1 : 0), 0, entry_j,
                                     BasisRef{x, x, bd, bidx});
          if (spos < 0) continue;
          BarWord fw = nw;
          fw.letters.push_back(BasisRef{coneX, x, bd + (entry_j == 1 ? 1 : 0), spos});
          long j = loc.st->word_index(x, x, fw);
          if (j < 0) continue;  // degree left the storage window
          auto dit = t_of_loc.find(fw.degree());
          if (dit == t_of_loc.end()) continue;
          auto it = dit->second.find(j);
          ensure(it != dit->second.end(), "build_tt_ss: prepended word escaped T");
          m.add_to(it->second, i, c);
        }
      }
      op.set(d, m);
    }
    return op;
  };

  out.opH = prepend_op(0, Ap.units.at(x), -1);  // a (x) 1_X
  Element m2e0 = A.m(2, {e0, e0});
  out.opPsiB = prepend_op(1, e0, 0);      // b (x) e0
  out.opPsiBM = prepend_op(1, m2e0, 0);   // b (x) m^2(e0, e0)
  out.opK = prepend_op(0, e0, -1);        // a (x) e0

  // alpha: a degree -1 witness of [m^2(e0,e0)] = [e0]
  Element diff = m2e0 - e0;
  Element alpha = Element::zero(A.ring, x, x, -1);
  if (!diff.is_zero()) {
    SparseVec rhs;
    for (const auto& [i, c] : diff.coords) rhs[i] = c;
    auto sol = solve_linear(A.hom(x, x).d(-1), rhs);
    if (!sol) {
      // try the opposite orientation
      rhs.clear();
      for (const auto& [i, c] : (e0 - m2e0).coords) rhs[i] = c;
      sol = solve_linear(A.hom(x, x).d(-1), rhs);
    }
    require(sol.has_value(),
            "build_tt_ss: no degree -1 witness for [m^2(e0,e0)] = [e0] (units not "
            "homotopy-idempotent on this window)");
    for (const auto& [i, c] : *sol) alpha.add(i, c);
  }
  out.alpha_zero = alpha.is_zero();
  out.opG = prepend_op(1, alpha, -1);  // b (x) alpha

  // t: the merge part of d(K w): blocks with alpha = 0 and beta >= 2
  {
    ChainMap t{out.T, out.T, 0, {}};
    for (const auto& [d, ps] : posT) {
      SparseMatrix m(A.ring, out.T.module.rank(d), out.T.module.rank(d));
      for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
        const BarWord& w = pit->second.at(d)[ps[i]];
        BarWord kw = w;
        kw.letters.back() = retype_ref(kw.letters.back());
        bool slot_ok = true;
        {
          for (const auto& [bidx, c] : e0.coords) {
            long spos = tws.slot_index(coneX, x, e0.deg, 0, 0, BasisRef{x, x, e0.deg, bidx});
            if (spos < 0) slot_ok = false;
          }
        }
        if (!slot_ok) continue;
        // assemble K(w) with every e0 coordinate
        for (const auto& [bidx, c] : e0.coords) {
          long spos = tws.slot_index(coneX, x, e0.deg, 0, 0, BasisRef{x, x, e0.deg, bidx});
          BarWord fw = kw;
          fw.letters.push_back(BasisRef{coneX, x, e0.deg, spos});
          const int l1 = fw.length();
          for (int beta = 2; beta <= l1; ++beta) {
            detail::bar_block_term(*loc.st, {&fw}, 0, beta, l1 - beta,
                                   [&](const BarWord& outw, const Scalar& cc) {
                                     long j = loc.st->word_index(x, x, outw);
                                     if (j < 0) return;
                                     auto dit = t_of_loc.find(outw.degree());
                                     if (dit == t_of_loc.end()) return;
                                     auto it = dit->second.find(j);
                                     if (it == dit->second.end()) return;
                                     m.add_to(it->second, i, c * cc);
                                   });
          }
        }
      }
      t.set(d, m);
    }
    out.opT = t;
  }

  // verify the identities on columns of length <= L-1
  auto short_columns = [&](int d) {
    std::vector<long> cols;
    auto dit = posT.find(d);
    if (dit == posT.end()) return cols;
    for (long i = 0; i < static_cast<long>(dit->second.size()); ++i)
      if (pit->second.at(d)[dit->second[i]].length() <= L - 1) cols.push_back(i);
    return cols;
  };
  auto vanishes_on_short = [&](const ChainMap& E) {
    for (const auto& [d, mm] : E.comp)
      for (long col : short_columns(d))
        for (const auto& [rc, v] : mm.ent)
          if (rc.second == col) return false;
    return true;
  };
  // D op + op D = e1 lhs0 + e2 lhs1 for signs e1, e2, on short columns
  auto homotopy_balance = [&](const ChainMap& op, const ChainMap& lhs0, const ChainMap& lhs1,
                              std::pair<int, int>& signs_out) {
    ChainMap comm = op.hom_differential();  // degree -1 map: D.op + op.D
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        ChainMap rhs = (sign_scalar(A.ring, e1 == 1 ? 0 : 1) * lhs0) +
                       (sign_scalar(A.ring, e2 == 1 ? 0 : 1) * lhs1);
        if (vanishes_on_short(comm - rhs)) {
          signs_out = {e1, e2};
          return true;
        }
      }
    return false;
  };
  ChainMap idT = ChainMap::identity(out.T);
  std::pair<int, int> s1{0, 0}, s2{0, 0}, s3{0, 0};
  bool okH = homotopy_balance(out.opH, idT, out.opPsiB, s1);
  bool okG = homotopy_balance(out.opG, out.opPsiB, out.opPsiBM, s2);
  bool okK = homotopy_balance(out.opK, out.opPsiBM, out.opT, s3);
  out.identities_ok = okH && okG && okK;
  if (!out.identities_ok) {
    out.detail = std::string("identity failure:") + (okH ? "" : " H") + (okG ? "" : " G") +
                 (okK ? "" : " K");
  }
  auto pr = [](std::pair<int, int> s) {
    return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
  };
  out.sign_note = "dH+Hd = s*id + s'*psi_b " + pr(s1) + ", dG+Gd = s*psi_b + s'*psi_bm " + pr(s2) +
                  ", dK+Kd = s*psi_bm + s'*t " + pr(s3);

  // claim (I): id_T ~ t via Theta = c1 H + c2 G + c3 K for some sign combination
  {
    bool found = false;
    for (int c1 : {1, -1})
      for (int c2 : {1, -1})
        for (int c3 : {1, -1}) {
          if (found) break;
          ChainMap theta = (sign_scalar(A.ring, c1 == 1 ? 0 : 1) * out.opH) +
                           (sign_scalar(A.ring, c2 == 1 ? 0 : 1) * out.opG) +
                           (sign_scalar(A.ring, c3 == 1 ? 0 : 1) * out.opK);
          ChainMap comm = theta.hom_differential();
          for (int st : {1, -1}) {
            ChainMap rhs = idT - (sign_scalar(A.ring, st == 1 ? 0 : 1) * out.opT);
            if (vanishes_on_short(comm - rhs)) {
              found = true;
              out.sign_note += ", id ~ (" + std::to_string(st) + ")t via Theta = (" +
                               std::to_string(c1) + ")H + (" + std::to_string(c2) + ")G + (" +
                               std::to_string(c3) + ")K";
              break;
            }
          }
        }
    out.claim_I_ok = found;
  }

  // claim (II): on length-1 elements t(x) = m^2(e0, x), homotopic to id on hom_A
  {
    bool restricts = true, equals_mult = true;
    const CochainComplex& base = A.hom(x, x);
    for (const auto& [d, ls] : base.module.basis) {
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        BarWord w{{BasisRef{x, x, d, i}}};
        long j = loc.st->word_index(x, x, w);
        if (j < 0) continue;
        long tcol = t_of_loc.at(d).at(j);
        Element tx = Element::zero(A.ring, x, x, d);
        for (const auto& [rc, v] : out.opT.at(d).ent)
          if (rc.second == tcol) tx.add(rc.first, v);
        // expected: the length-1 part of t is m^2(e0, x-basis)
        Element mult = A.m(2, {Element::basis(A.ring, BasisRef{x, x, d, i}), e0});
        Element expected = Element::zero(A.ring, x, x, d);
        for (const auto& [bidx, c] : mult.coords) {
          BarWord mw{{BasisRef{x, x, d, bidx}}};
          long mj = loc.st->word_index(x, x, mw);
          if (mj < 0) continue;
          expected.add(t_of_loc.at(d).at(mj), c);
        }
        // compare up to the frozen overall sign of t
        if (!(tx == expected) && !(tx == sign_scalar(A.ring, 1) * expected)) equals_mult = false;
        // image must stay inside hom_A (no 1_X coordinate, length 1)
        for (const auto& [r, v] : tx.coords) {
          const BarWord& ow = pit->second.at(d)[posT.at(d)[r]];
          if (ow.length() != 1) restricts = false;
          TwSlot sl = loc.st->tw.slot_of(ow.letters[0]);
          if (sl.base == one_ref) restricts = false;
        }
      }
    }
    auto h = find_homotopy(left_mult_map(A, e0, x), ChainMap::identity(A.hom(x, x)));
    out.claim_II_ok = restricts && equals_mult && h.has_value();
  }

  // the inclusion hom_A(X,X) -> S is a quasi-isomorphism on the interior
  {
    out.S_quasi_iso_ok = true;
    auto hs = cohomology(out.S, lo, hi);
    auto hb = cohomology(A.hom(x, x), lo, hi);
    for (int d = lo; d <= hi; ++d)
      if (!(hs.at(d) == hb.at(d))) {
        out.S_quasi_iso_ok = false;
        out.detail += " H(S)^" + std::to_string(d) + " = " + hs.at(d).to_string() + " vs H(hom_A) " +
                      hb.at(d).to_string() + ";";
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the ideal generated by 1_X - u_X and the quotient verification

struct IdealReport {
  bool closure_ok = true;
  bool graded_match_ok = true;
  bool maps_ok = true;
  long closure_tuples = 0;
  std::string detail;
  bool passed() const { return closure_ok && graded_match_ok && maps_ok; }
};

// For strictly unital A: builds A[u^{-1}] and A+[u^{-1}] (the latter in the
// basis where the adjoined vector is w_X = 1_X - u_X), checks that the words
// containing a w-letter span an ideal closed under m^k (k <= kmax), forms the
// quotient, and verifies that every map in
//   A -> A[u^{-1}] -> A+[u^{-1}] -> A+[u^{-1}]/I
// identifies the stable cohomology with H(hom_A) on [lo, hi] at truncation L.
inline IdealReport verify_mod_ideal(const AInftyCategory& A, int L, int lo, int hi, int kmax = 4,
                                    long cap = 3000) {
  IdealReport rep;
  require(A.strictly_unital, "verify_mod_ideal: A must be strictly unital");
  AInftyCategory Aw = augment_omega(A);
  std::vector<Element> I;
  for (const auto& [ob, e] : A.units) I.push_back(e);
  const int wlo = lo - 2, whi = hi + 2;
  LocCategory lp = localize(A, I, L + 1, wlo, whi);
  LocCategory la = localize(Aw, I, L + 1, wlo, whi);
  const int n = static_cast<int>(A.objects.size());

  // w-refs per object in Aw
  std::map<int, BasisRef> wref;
  for (int x = 0; x < n; ++x) wref[x] = Aw.find_basis(x, x, "w_" + A.objects[x]);
  auto is_ideal_word = [&](const BarWord& w) {
    for (const auto& letter : w.letters) {
      TwSlot sl = la.st->tw.slot_of(letter);
      if (sl.base.src == sl.base.tgt && sl.base == wref.at(sl.base.src)) return true;
    }
    return false;
  };

  // closure of the ideal under the operations: tuples of short words with at
  // least one ideal member (the block structure of the operations makes short
  // words the binding case)
  {
    std::map<std::pair<int, int>, std::vector<BasisRef>> ideal_refs, short_refs;
    for (const auto& [xy, table] : la.st->words)
      for (const auto& [d, ws] : table)
        for (long i = 0; i < static_cast<long>(ws.size()); ++i) {
          if (ws[i].length() > 2) continue;
          BasisRef r{xy.first, xy.second, d, i};
          short_refs[xy].push_back(r);
          if (is_ideal_word(ws[i])) ideal_refs[xy].push_back(r);
        }
    for (int k = 2; k <= kmax && rep.closure_ok; ++k) {
      long budget = cap;
      std::function<void(std::vector<BasisRef>&, bool, int)> build =
          [&](std::vector<BasisRef>& tuple, bool has_ideal, int total) {
            if (budget <= 0 || !rep.closure_ok) return;
            // each remaining word contributes at least length 1
            if (total + (k - static_cast<int>(tuple.size())) > L + 1) return;
            if (static_cast<int>(tuple.size()) == k) {
              if (!has_ideal || total > L + 1) return;
              --budget;
              ++rep.closure_tuples;
              Element v = la.cat.m_basis(k, tuple);
              for (const auto& [idx, c] : v.coords) {
                const BarWord& ow = la.st->words.at({v.src, v.tgt}).at(v.deg)[idx];
                if (!is_ideal_word(ow)) {
                  rep.closure_ok = false;
                  rep.detail = "ideal not closed under m^" + std::to_string(k);
                }
              }
              return;
            }
            int src = tuple.empty() ? -1 : tuple.back().tgt;
            for (int xx = 0; xx < n; ++xx) {
              if (src >= 0 && xx != src) continue;
              for (int yy = 0; yy < n; ++yy) {
                auto it = short_refs.find({xx, yy});
                if (it == short_refs.end()) continue;
                for (const auto& r : it->second) {
                  tuple.push_back(r);
                  build(tuple, has_ideal || is_ideal_word(la.word_of(r)),
                        total + la.word_of(r).length());
                  tuple.pop_back();
                  if (budget <= 0) return;
                }
              }
            }
          };
      std::vector<BasisRef> tuple;
      build(tuple, false, 0);
    }
  }
  // d-closure (k = 1) is part of the quotient construction below

  // quotient complexes and the three maps, per hom pair
  for (int x = 0; x < n && rep.passed(); ++x)
    for (int y = 0; y < n && rep.passed(); ++y) {
      auto pit = la.st->words.find({x, y});
      if (pit == la.st->words.end()) continue;
      // quotient = non-ideal words; differential projected
      std::map<int, std::vector<long>> keepQ;
      for (const auto& [d, ws] : pit->second)
        for (long i = 0; i < static_cast<long>(ws.size()); ++i)
          if (!is_ideal_word(ws[i])) keepQ[d].push_back(i);
      const CochainComplex& big = la.cat.hom(x, y);
      CochainComplex Q(A.ring);
      std::map<int, std::map<long, long>> qpos;
      for (const auto& [d, ps] : keepQ)
        for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
          Q.module.add(d, big.module.basis.at(d)[ps[i]]);
          qpos[d][ps[i]] = i;
        }
      for (const auto& [d, ps] : keepQ) {
        SparseMatrix m(A.ring, Q.module.rank(d + 1), Q.module.rank(d));
        SparseMatrix full = big.d(d);
        for (long i = 0; i < static_cast<long>(ps.size()); ++i)
          for (const auto& [rc, v] : full.ent) {
            if (rc.second != ps[i]) continue;
            auto dit = qpos.find(d + 1);
            if (dit == qpos.end()) continue;
            auto it = dit->second.find(rc.first);
            if (it != dit->second.end()) m.set(it->second, i, v);
          }
        Q.set_d(d, m);
      }
      Q.trust = big.trust;
      // graded comparison: quotient grades match A[u^{-1}] grades (ranks)
      for (int l = 1; l <= L; ++l) {
        std::map<int, long> rq, rp;
        for (const auto& [d, ps] : keepQ)
          for (long p : ps)
            if (pit->second.at(d)[p].length() == l) ++rq[d];
        auto ppit = lp.st->words.find({x, y});
        if (ppit != lp.st->words.end())
          for (const auto& [d, ws] : ppit->second)
            for (const auto& w : ws)
              if (w.length() == l) ++rp[d];
        if (rq != rp) {
          rep.graded_match_ok = false;
          rep.detail = "quotient graded ranks differ from A[u^{-1}] at length " +
                       std::to_string(l);
        }
      }

      // maps: incl: hom_A -> A[u^-1]; j: A[u^-1] -> A+[u^-1]; pr: A+[u^-1] -> Q
      const CochainComplex& plainbig = lp.cat.hom(x, y);
      auto posL_of = [&](const LocCategory& lc) {
        std::map<int, std::vector<long>> pos;
        auto wit = lc.st->words.find({x, y});
        if (wit != lc.st->words.end())
          for (const auto& [d, ws] : wit->second)
            for (long i = 0; i < static_cast<long>(ws.size()); ++i)
              if (ws[i].length() <= L) pos[d].push_back(i);
        return pos;
      };
      auto posLp = posL_of(lp), posLa = posL_of(la);
      std::map<int, std::vector<long>> posQL;  // F_<=L of the quotient
      for (const auto& [d, ps] : keepQ) {
        long qi = 0;
        for (long p : ps) {
          if (pit->second.at(d)[p].length() <= L) posQL[d].push_back(qi);
          ++qi;
        }
      }
      CochainComplex FLp = subcomplex(plainbig, posLp, "F_<=L plain");
      CochainComplex FLa = subcomplex(big, posLa, "F_<=L aug");
      CochainComplex FLq = subcomplex(Q, posQL, "F_<=L quotient");

      // wordwise map A[u^-1] -> A+[u^-1]
      auto map_word = [&](const BarWord& w) {
        BarWord out;
        for (const auto& letter : w.letters) {
          TwSlot sl = lp.st->tw.slot_of(letter);
          long pos = la.st->tw.state->slot_index(letter.src, letter.tgt, letter.deg, sl.i, sl.j,
                                                 sl.base);
          ensure(pos >= 0, "verify_mod_ideal: letter missing in the augmented localization");
          out.letters.push_back(BasisRef{letter.src, letter.tgt, letter.deg, pos});
        }
        return out;
      };
      // degreewise matrices for the three maps on the big complexes
      std::map<int, SparseMatrix> jmat, prmat, inclmat;
      for (int d = wlo; d <= whi; ++d) {
        SparseMatrix mj(A.ring, big.module.rank(d), plainbig.module.rank(d));
        auto wit = lp.st->words.find({x, y});
        if (wit != lp.st->words.end() && wit->second.count(d)) {
          const auto& ws = wit->second.at(d);
          for (long i = 0; i < static_cast<long>(ws.size()); ++i) {
            long j = la.st->word_index(x, y, map_word(ws[i]));
            ensure(j >= 0, "verify_mod_ideal: mapped word missing");
            mj.set(j, i, Scalar::one(A.ring));
          }
        }
        jmat[d] = mj;
        SparseMatrix mp(A.ring, Q.module.rank(d), big.module.rank(d));
        if (qpos.count(d))
          for (const auto& [oldp, newp] : qpos.at(d)) mp.set(newp, oldp, Scalar::one(A.ring));
        prmat[d] = mp;
        SparseMatrix mi(A.ring, plainbig.module.rank(d), A.hom(x, y).module.rank(d));
        for (long i = 0; i < A.hom(x, y).module.rank(d); ++i) {
          BarWord w{{BasisRef{x, y, d, i}}};
          long j = lp.st->word_index(x, y, w);
          ensure(j >= 0, "verify_mod_ideal: length-1 word missing");
          mi.set(j, i, Scalar::one(A.ring));
        }
        inclmat[d] = mi;
      }
      // chain-map checks (exact naturality at the matrix level)
      for (int d = wlo + 1; d + 1 <= whi - 1; ++d) {
        ensure((big.d(d) * jmat.at(d)) == (jmat.at(d + 1) * plainbig.d(d)),
               "verify_mod_ideal: j is not a chain map");
        ensure((Q.d(d) * prmat.at(d)) == (prmat.at(d + 1) * big.d(d)),
               "verify_mod_ideal: projection is not a chain map");
      }

      // stable comparisons across each map and the composite
      auto emb = [&](const CochainComplex& bigc, const std::map<int, std::vector<long>>& pos,
                     int d) {
        return embedding_matrix(A.ring, bigc.module.rank(d),
                                pos.count(d) ? pos.at(d) : std::vector<long>{});
      };
      const CochainComplex& baseh = A.hom(x, y);
      for (int d = lo; d <= hi && rep.maps_ok; ++d) {
        SparseMatrix idb = SparseMatrix::identity(A.ring, baseh.module.rank(d));
        auto c1 = stable_map_check(baseh, idb, baseh, FLp, emb(plainbig, posLp, d), plainbig,
                                   inclmat.at(d), d);
        auto c2 = stable_map_check(FLp, emb(plainbig, posLp, d), plainbig, FLa,
                                   emb(big, posLa, d), big, jmat.at(d), d);
        auto c3 = stable_map_check(FLa, emb(big, posLa, d), big, FLq, emb(Q, posQL, d), Q,
                                   prmat.at(d), d);
        if (!c1.passed || !c2.passed || !c3.passed) {
          rep.maps_ok = false;
          rep.detail = "stable comparison fails at degree " + std::to_string(d) + " on hom(" +
                       A.objects[x] + "," + A.objects[y] + ") [" + (c1.passed ? "" : " incl") +
                       (c2.passed ? "" : " j") + (c3.passed ? "" : " pr") + " ]";
        }
      }
    }
  return rep;
}

// The quotient A+[u^{-1}] / I as a category: hom complexes are spanned by the
// words without a w-letter (w_X = 1_X - u_X in the omega presentation of A+),
// with operations projected along the ideal.
struct IdealQuotient {
  LocCategory loc;          // A+[u^{-1}] in the omega basis
  AInftyCategory quotient;  // materialized homs, lazily projected operations
};

inline IdealQuotient ideal_quotient(const AInftyCategory& A, int L, int wlo, int whi) {
  require(A.strictly_unital, "ideal_quotient: A must be strictly unital");
  AInftyCategory Aw = augment_omega(A);
  std::vector<Element> I;
  for (const auto& [ob, e] : A.units) I.push_back(e);
  IdealQuotient out{localize(Aw, I, L, wlo, whi), AInftyCategory(A.ring)};
  const LocCategory& la = out.loc;
  const int n = static_cast<int>(A.objects.size());
  auto wref = std::make_shared<std::map<int, BasisRef>>();
  for (int x = 0; x < n; ++x) (*wref)[x] = Aw.find_basis(x, x, "w_" + A.objects[x]);
  auto st = la.st;
  auto is_ideal = [st, wref](const BarWord& w) {
    for (const auto& letter : w.letters) {
      TwSlot sl = st->tw.slot_of(letter);
      if (sl.base.src == sl.base.tgt && wref->count(sl.base.src) &&
          sl.base == wref->at(sl.base.src))
        return true;
    }
    return false;
  };
  AInftyCategory& Q = out.quotient;
  Q.arity_bound = A.arity_bound;
  Q.ops_vanish_above = false;
  for (int x = 0; x < n; ++x) Q.add_object(A.objects[x]);
  // kept positions: quotient index -> loc index, and the reverse
  auto keep = std::make_shared<std::map<std::pair<int, int>, std::map<int, std::vector<long>>>>();
  auto back = std::make_shared<std::map<std::pair<int, int>, std::map<int, std::map<long, long>>>>();
  for (const auto& [xy, table] : st->words) {
    for (const auto& [d, ws] : table)
      for (long i = 0; i < static_cast<long>(ws.size()); ++i)
        if (!is_ideal(ws[i])) {
          long q = static_cast<long>((*keep)[xy][d].size());
          (*keep)[xy][d].push_back(i);
          (*back)[xy][d][i] = q;
        }
    if (!keep->count(xy)) continue;
    CochainComplex& H = Q.hom_mut(xy.first, xy.second);
    const CochainComplex& big = la.cat.hom(xy.first, xy.second);
    for (const auto& [d, ps] : keep->at(xy))
      for (long p : ps) H.module.add(d, big.module.basis.at(d)[p]);
    for (const auto& [d, ps] : keep->at(xy)) {
      SparseMatrix m(A.ring, H.module.rank(d + 1), H.module.rank(d));
      SparseMatrix full = big.d(d);
      for (long qi = 0; qi < static_cast<long>(ps.size()); ++qi)
        for (const auto& [rc, v] : full.ent) {
          if (rc.second != ps[qi]) continue;
          auto dit = back->at(xy).find(d + 1);
          if (dit == back->at(xy).end()) continue;
          auto it = dit->second.find(rc.first);
          if (it != dit->second.end()) m.set(it->second, qi, v);
        }
      H.set_d(d, m);
    }
    H.trust = big.trust;
  }
  AInftyCategory locat = la.cat;
  Q.op_fn = [locat, keep, back](int k, const std::vector<BasisRef>& tuple) {
    std::vector<BasisRef> lifted = tuple;
    for (auto& b : lifted) b.idx = keep->at({b.src, b.tgt}).at(b.deg)[b.idx];
    Element v = locat.m_basis(k, lifted);
    Element outq = Element::zero(locat.ring, v.src, v.tgt, v.deg);
    auto bit = back->find({v.src, v.tgt});
    for (const auto& [i, c] : v.coords) {
      if (bit == back->end()) continue;
      auto dit = bit->second.find(v.deg);
      if (dit == bit->second.end()) continue;
      auto it = dit->second.find(i);
      if (it != dit->second.end()) outq.add(it->second, c);  // ideal coordinates are dropped
    }
    return outq;
  };
  // units: the class of 1_X = u_X + w_X is represented by u_X
  for (int x = 0; x < n; ++x) {
    Element u = A.units.at(x);
    Element lifted = Element::zero(A.ring, x, x, 0);
    for (const auto& [i, c] : u.coords) {
      BarWord w{{BasisRef{x, x, 0, i}}};
      long j = st->word_index(x, x, w);
      require(j >= 0, "ideal_quotient: unit word missing from the window");
      lifted.add(back->at({x, x}).at(0).at(j), c);
    }
    Q.units[x] = lifted;
  }
  Q.strictly_unital = A.strictly_unital;
  return out;
}

// ---------------------------------------------------------------------------
// localizations at cohomologous sets

struct CohomologousReport {
  bool precondition_ok = true;
  bool passed = true;
  std::string detail;
};

// W0 inside W, every w in W cohomologous to some w0 in W0: the inclusion
// A[W0^{-1}] -> A[W^{-1}] must induce cohomology isomorphisms on the window.
inline CohomologousReport verify_cohomologous_localizations(const AInftyCategory& A,
                                                            const std::vector<Element>& W0,
                                                            const std::vector<Element>& W, int L,
                                                            int lo, int hi) {
  CohomologousReport rep;
  // precondition: cohomologous hypothesis
  for (const auto& w : W) {
    bool ok = false;
    for (const auto& w0 : W0) {
      if (w.src != w0.src || w.tgt != w0.tgt) continue;
      Element diff = w - w0;
      SparseVec rhs;
      for (const auto& [i, c] : diff.coords) rhs[i] = c;
      if (solve_linear(A.hom(w.src, w.tgt).d(-1), rhs)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      rep.precondition_ok = false;
      rep.passed = false;
      rep.detail = "an inverted morphism is not cohomologous to any member of W0";
      return rep;
    }
  }
  int wlo = lo - 2, whi = hi + 2;
  LocCategory l0 = localize(A, W0, L, wlo, whi);
  LocCategory l1 = localize(A, W, L, wlo, whi);
  const int n = static_cast<int>(A.objects.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto h0 = cohomology(l0.cat.hom(x, y), lo, hi);
      auto h1 = cohomology(l1.cat.hom(x, y), lo, hi);
      for (int d = lo; d <= hi; ++d)
        if (!(h0.at(d) == h1.at(d))) {
          rep.passed = false;
          rep.detail = "H^" + std::to_string(d) + " differs between A[W0^-1] and A[W^-1]";
        }
    }
  return rep;
}

}  // namespace acat
