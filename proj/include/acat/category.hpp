#pragma once

#include <functional>
#include <sstream>

#include "acat/graded.hpp"

namespace acat {

// A basis vector of hom(src,tgt) in a fixed degree.
struct BasisRef {
  int src = 0, tgt = 0, deg = 0;
  long idx = 0;
  auto operator<=>(const BasisRef&) const = default;
};

// Homogeneous element of a hom complex.  Zero elements keep their typing.
struct Element {
  Ring ring;
  int src = 0, tgt = 0, deg = 0;
  std::map<long, Scalar> coords;

  static Element zero(const Ring& R, int src, int tgt, int deg) {
    return Element{R, src, tgt, deg, {}};
  }
  static Element basis(const Ring& R, const BasisRef& b) {
    Element e{R, b.src, b.tgt, b.deg, {}};
    e.coords.emplace(b.idx, Scalar::one(R));
    return e;
  }

  bool is_zero() const { return coords.empty(); }

  void add(long idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = coords.find(idx);
    if (it == coords.end())
      coords.emplace(idx, c);
    else {
      it->second += c;
      if (it->second.is_zero()) coords.erase(it);
    }
  }

  Element& operator+=(const Element& o) {
    require(src == o.src && tgt == o.tgt && deg == o.deg, "Element: typed sum mismatch");
    for (const auto& [i, c] : o.coords) add(i, c);
    return *this;
  }
  friend Element operator*(const Scalar& c, const Element& e) {
    Element r = Element::zero(e.ring, e.src, e.tgt, e.deg);
    for (const auto& [i, v] : e.coords) r.add(i, c * v);
    return r;
  }
  friend Element operator-(const Element& a, const Element& b) {
    Element r = a;
    r += sign_scalar(a.ring, 1) * b;
    return r;
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.src == b.src && a.tgt == b.tgt && a.deg == b.deg && a.coords == b.coords;
  }

  std::string to_string() const {
    if (coords.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : coords) {
      if (!first) os << " + ";
      os << c.to_string() << "*#" << i;
      first = false;
    }
    return os.str();
  }
};

// Finitely presented A-infinity category: finite object set, hom cochain
// complexes (their differentials are m^1), sparse higher operations m^k for
// 2 <= k <= arity_bound on composable basis tuples.
//
// Tuples are stored right-to-left: tuple[0] is the first-applied argument, so
// m^2(g, f) = "g after f" is the tuple {f, g}.  Operation output degree is
// (sum of input degrees) + 2 - k.
class AInftyCategory {
 public:
  Ring ring;
  std::vector<std::string> objects;
  int arity_bound = 6;
  // True when m^k = 0 for k > arity_bound holds mathematically (all bundled
  // constructions); false when the bound is only a storage truncation.
  bool ops_vanish_above = true;
  bool strictly_unital = false;
  std::map<int, Element> units;  // object -> declared unit element

  std::map<std::pair<int, int>, CochainComplex> homs;
  std::map<int, std::map<std::vector<BasisRef>, Element>> ops;

  // Lazy operation provider for categories whose higher operations are
  // computed on demand (bar localizations).  Materialized `ops` win.
  std::function<Element(int, const std::vector<BasisRef>&)> op_fn;

  AInftyCategory() : AInftyCategory(Ring::prime_field(2)) {}
  explicit AInftyCategory(const Ring& R) : ring(R), empty_hom_(R) {}

  int add_object(const std::string& name) {
    objects.push_back(name);
    return static_cast<int>(objects.size()) - 1;
  }
  int object_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(objects.size()); ++i)
      if (objects[i] == name) return i;
    throw usage_error("unknown object '" + name + "'");
  }

  const CochainComplex& hom(int x, int y) const {
    auto it = homs.find({x, y});
    return it != homs.end() ? it->second : empty_hom_;
  }
  CochainComplex& hom_mut(int x, int y) {
    auto it = homs.find({x, y});
    if (it == homs.end()) it = homs.emplace(std::make_pair(x, y), CochainComplex(ring)).first;
    return it->second;
  }

  long rank(int x, int y, int deg) const { return hom(x, y).module.rank(deg); }

  BasisRef add_basis(int x, int y, int deg, const std::string& label) {
    CochainComplex& C = hom_mut(x, y);
    C.module.add(deg, label);
    return BasisRef{x, y, deg, C.module.rank(deg) - 1};
  }

  const std::string& label(const BasisRef& b) const {
    return hom(b.src, b.tgt).module.basis.at(b.deg)[b.idx];
  }

  BasisRef find_basis(int x, int y, const std::string& lbl) const {
    const auto& C = hom(x, y);
    for (const auto& [d, ls] : C.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i)
        if (ls[i] == lbl) return BasisRef{x, y, d, i};
    throw usage_error("unknown basis label '" + lbl + "'");
  }

  void set_op(int k, const std::vector<BasisRef>& tuple, const Element& out) {
    require(k >= 2 && k <= arity_bound, "set_op: arity out of range");
    require(static_cast<int>(tuple.size()) == k, "set_op: tuple size != arity");
    int degsum = 0;
    for (int i = 0; i + 1 < k; ++i)
      require(tuple[i].tgt == tuple[i + 1].src, "set_op: tuple not composable");
    for (const auto& b : tuple) degsum += b.deg;
    require(out.src == tuple.front().src && out.tgt == tuple.back().tgt,
            "set_op: output endpoints mismatch");
    require(out.deg == degsum + 2 - k, "set_op: output degree mismatch");
    if (out.is_zero())
      ops[k].erase(tuple);
    else
      ops[k][tuple] = out;
  }

  // m^1 is the hom-complex differential.
  Element m1(const Element& e) const {
    Element out = Element::zero(ring, e.src, e.tgt, e.deg + 1);
    const CochainComplex& C = hom(e.src, e.tgt);
    SparseMatrix d = C.d(e.deg);
    for (const auto& [i, c] : e.coords)
      for (const auto& [rc, v] : d.ent)
        if (rc.second == i) out.add(rc.first, v * c);
    return out;
  }

  const Element* op_lookup(int k, const std::vector<BasisRef>& tuple) const {
    auto it = ops.find(k);
    if (it == ops.end()) return nullptr;
    auto jt = it->second.find(tuple);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  Element m_basis(int k, const std::vector<BasisRef>& tuple) const {
    if (k == 1) return m1(Element::basis(ring, tuple[0]));
    int degsum = 0;
    for (const auto& b : tuple) degsum += b.deg;
    Element out = Element::zero(ring, tuple.front().src, tuple.back().tgt, degsum + 2 - k);
    const Element* v = op_lookup(k, tuple);
    if (v) {
      out += *v;
      return out;
    }
    if (op_fn && k <= arity_bound) out += op_fn(k, tuple);
    return out;
  }

  // Multilinear extension, arguments right-to-left.
  Element m(int k, const std::vector<Element>& args) const {
    require(static_cast<int>(args.size()) == k, "m: arity mismatch");
    for (int i = 0; i + 1 < k; ++i)
      require(args[i].tgt == args[i + 1].src, "m: arguments not composable");
    if (k == 1) return m1(args[0]);
    int degsum = 0;
    for (const auto& a : args) degsum += a.deg;
    Element out = Element::zero(ring, args.front().src, args.back().tgt, degsum + 2 - k);
    if (k > arity_bound) return out;  // vanishes (or is treated as absent data)
    std::vector<BasisRef> tuple(k);
    std::function<void(int, Scalar)> rec = [&](int pos, Scalar coeff) {
      if (pos == k) {
        Element v = m_basis(k, tuple);
        if (!v.is_zero()) out += coeff * v;
        return;
      }
      for (const auto& [i, c] : args[pos].coords) {
        tuple[pos] = BasisRef{args[pos].src, args[pos].tgt, args[pos].deg, i};
        rec(pos + 1, coeff * c);
      }
    };
    rec(0, Scalar::one(ring));
    return out;
  }

  // m^k_l = sum over alpha + k + gamma = l of (-1)^{alpha + k gamma}
  // id^a (x) m^k (x) id^g, applied with the Koszul rule (the operation of
  // degree 2-k passes the alpha left inputs).  Returns a combination of
  // (l-k+1)-tuples.  Note m^k_k = m^k.
  std::map<std::vector<BasisRef>, Scalar> m_partial(int k,
                                                    const std::vector<BasisRef>& tuple) const {
    const int l = static_cast<int>(tuple.size());
    require(k >= 1 && k <= l, "m_partial: need 1 <= k <= l");
    for (int i = 0; i + 1 < l; ++i)
      require(tuple[i].tgt == tuple[i + 1].src, "m_partial: tuple not composable");
    std::map<std::vector<BasisRef>, Scalar> out;
    for (int gamma = 0; gamma + k <= l; ++gamma) {
      int alpha = l - k - gamma;
      long left_deg = 0;
      for (int p = gamma + k; p < l; ++p) left_deg += tuple[p].deg;
      long sign_exp = alpha + static_cast<long>(k) * gamma + static_cast<long>(k) * left_deg;
      std::vector<BasisRef> block(tuple.begin() + gamma, tuple.begin() + gamma + k);
      Element val = m_basis(k, block);
      if (val.is_zero()) continue;
      Scalar s = sign_scalar(ring, sign_exp);
      for (const auto& [i, c] : val.coords) {
        std::vector<BasisRef> nt;
        nt.reserve(l - k + 1);
        for (int p = 0; p < gamma; ++p) nt.push_back(tuple[p]);
        nt.push_back(BasisRef{val.src, val.tgt, val.deg, i});
        for (int p = gamma + k; p < l; ++p) nt.push_back(tuple[p]);
        Scalar t = s * c;
        auto it = out.find(nt);
        if (it == out.end())
          out.emplace(std::move(nt), t);
        else {
          it->second += t;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }

  // Residual of the A-infinity relation sum_{1<=k<=l} m^{l-k+1} m^k_l on one tuple.
  Element relation_residual(const std::vector<BasisRef>& tuple) const {
    const int l = static_cast<int>(tuple.size());
    int degsum = 0;
    for (const auto& b : tuple) degsum += b.deg;
    Element res = Element::zero(ring, tuple.front().src, tuple.back().tgt, degsum + 3 - l);
    for (int k = 1; k <= l; ++k) {
      for (const auto& [t, c] : m_partial(k, tuple)) {
        Element v = m_basis(l - k + 1, t);
        if (!v.is_zero()) res += c * v;
      }
    }
    return res;
  }

  CochainComplex empty_hom_;  // typed empty hom returned for absent pairs

  void validate() const {
    for (const auto& [xy, C] : homs) C.validate();
    for (const auto& [k, table] : ops)
      for (const auto& [tuple, out] : table) {
        require(static_cast<int>(tuple.size()) == k, "ops: tuple size mismatch");
        int degsum = 0;
        for (int i = 0; i + 1 < k; ++i)
          require(tuple[i].tgt == tuple[i + 1].src, "ops: non-composable tuple stored");
        for (const auto& b : tuple) {
          degsum += b.deg;
          require(b.idx >= 0 && b.idx < rank(b.src, b.tgt, b.deg), "ops: dangling basis ref");
        }
        require(out.deg == degsum + 2 - k, "ops: output degree mismatch");
      }
  }
};

// ---------------------------------------------------------------------------
// composable tuple enumeration

// Calls fn on composable basis tuples of length l (right-to-left).  When the
// total count exceeds `cap`, each object chain gets a proportional quota and
// tuples are taken by a deterministic stride through the mixed-radix product.
inline long for_each_composable_tuple(const AInftyCategory& A, int l,
                                      const std::function<void(const std::vector<BasisRef>&)>& fn,
                                      long cap = 200000) {
  const int nobj = static_cast<int>(A.objects.size());
  std::vector<std::vector<int>> chains;
  {
    std::vector<int> chain(l + 1);
    std::function<void(int)> walk = [&](int pos) {
      if (pos == l + 1) {
        chains.push_back(chain);
        return;
      }
      for (int o = 0; o < nobj; ++o) {
        chain[pos] = o;
        walk(pos + 1);
      }
    };
    walk(0);
  }
  auto pool_of = [&](int x, int y) {
    std::vector<BasisRef> pool;
    const CochainComplex& C = A.hom(x, y);
    for (const auto& [d, ls] : C.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) pool.push_back(BasisRef{x, y, d, i});
    return pool;
  };
  // exact counts per chain (arithmetic, no enumeration)
  std::vector<double> counts(chains.size(), 0.0);
  double total = 0;
  std::vector<std::vector<std::vector<BasisRef>>> poolsets(chains.size());
  for (size_t ci = 0; ci < chains.size(); ++ci) {
    double prod = 1;
    poolsets[ci].resize(l);
    for (int p = 0; p < l && prod > 0; ++p) {
      poolsets[ci][p] = pool_of(chains[ci][p], chains[ci][p + 1]);
      prod *= static_cast<double>(poolsets[ci][p].size());
    }
    counts[ci] = prod;
    total += prod;
  }
  long visited = 0;
  std::vector<BasisRef> tuple(l);
  for (size_t ci = 0; ci < chains.size(); ++ci) {
    if (counts[ci] == 0) continue;
    double quota = total <= static_cast<double>(cap)
                       ? counts[ci]
                       : std::max(1.0, counts[ci] / total * static_cast<double>(cap));
    double stride_d = std::max(1.0, counts[ci] / quota);
    // iterate indices 0, stride, 2*stride, ... decoded in mixed radix
    for (double pos = 0; pos < counts[ci]; pos += stride_d) {
      double idx = pos;
      for (int p = 0; p < l; ++p) {
        long sz = static_cast<long>(poolsets[ci][p].size());
        long digit = static_cast<long>(idx) % sz;
        idx = static_cast<double>(static_cast<long>(idx) / sz);
        tuple[p] = poolsets[ci][p][digit];
      }
      fn(tuple);
      ++visited;
    }
  }
  return visited;
}

// ---------------------------------------------------------------------------
// relation checking

struct RelationFailure {
  int l = 0;
  std::vector<BasisRef> tuple;  // empty for l = 1 (d^2 failures)
  std::string detail;
};

struct RelationReport {
  bool passed = true;
  long tuples_checked = 0;
  std::vector<RelationFailure> failures;

  std::string summary() const {
    if (passed) return "relations hold (" + std::to_string(tuples_checked) + " tuples)";
    std::ostringstream os;
    os << failures.size() << " relation failure(s); first at l=" << failures.front().l << ": "
       << failures.front().detail;
    return os.str();
  }
};

// Evaluates sum_{1<=k<=l} m^{l-k+1} m^k_l on composable basis tuples for all
// l <= l_max.  The l = 1 case is exactly d^2 = 0.
inline RelationReport check_relations(const AInftyCategory& A, int l_max, long cap = 200000) {
  RelationReport rep;
  require(l_max <= A.arity_bound, "check_relations: l_max exceeds arity bound");
  // l = 1: d^2 = 0 per hom complex
  for (const auto& [xy, C] : A.homs) {
    for (int k = C.module.dmin; k + 2 <= C.module.dmax; ++k) {
      if (!(C.d(k + 1) * C.d(k)).is_zero()) {
        rep.passed = false;
        rep.failures.push_back(
            {1, {}, "d^2 != 0 on hom(" + A.objects[xy.first] + "," + A.objects[xy.second] +
                        ") at degree " + std::to_string(k)});
      }
    }
    ++rep.tuples_checked;
  }
  for (int l = 2; l <= l_max; ++l) {
    for_each_composable_tuple(
        A, l,
        [&](const std::vector<BasisRef>& tuple) {
          ++rep.tuples_checked;
          Element r = A.relation_residual(tuple);
          if (!r.is_zero()) {
            rep.passed = false;
            if (rep.failures.size() < 16) {
              std::ostringstream os;
              os << "residual " << r.to_string() << " on tuple (";
              for (size_t i = 0; i < tuple.size(); ++i)
                os << (i ? " | " : "") << A.label(tuple[i]);
              os << ")";
              rep.failures.push_back({l, tuple, os.str()});
            }
          }
        },
        cap);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// units

// m^2(e, -) on hom(W, X) as a chain map (e closed, degree 0, e: X -> X).
inline ChainMap left_mult_map(const AInftyCategory& A, const Element& e, int w) {
  const CochainComplex& H = A.hom(w, e.src);
  ChainMap f{H, H, 0, {}};
  for (const auto& [d, ls] : H.module.basis) {
    SparseMatrix m(A.ring, H.module.rank(d), H.module.rank(d));
    for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
      Element out = A.m(2, {Element::basis(A.ring, BasisRef{w, e.src, d, i}), e});
      for (const auto& [j, c] : out.coords) m.set(j, i, c);
    }
    f.set(d, m);
  }
  return f;
}

// m^2(-, e) on hom(X, W).
inline ChainMap right_mult_map(const AInftyCategory& A, const Element& e, int w) {
  const CochainComplex& H = A.hom(e.src, w);
  ChainMap f{H, H, 0, {}};
  for (const auto& [d, ls] : H.module.basis) {
    SparseMatrix m(A.ring, H.module.rank(d), H.module.rank(d));
    for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
      Element out = A.m(2, {e, Element::basis(A.ring, BasisRef{e.src, w, d, i})});
      for (const auto& [j, c] : out.coords) m.set(j, i, c);
    }
    f.set(d, m);
  }
  return f;
}

// Strict unit: closed, both multiplications are the identity on the nose, and
// every m^n (n >= 3) vanishes whenever e is one of the inputs.
inline bool is_strict_unit(const AInftyCategory& A, int x, const Element& e,
                           std::string* why = nullptr) {
  auto fail = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  if (e.src != x || e.tgt != x || e.deg != 0) return fail("not a degree-0 endomorphism");
  if (!A.m1(e).is_zero()) return fail("not closed");
  for (int w = 0; w < static_cast<int>(A.objects.size()); ++w) {
    const CochainComplex& in = A.hom(w, x);
    for (const auto& [d, ls] : in.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        Element b = Element::basis(A.ring, BasisRef{w, x, d, i});
        if (!(A.m(2, {b, e}) == b)) return fail("m^2(e,-) != id on hom(" + A.objects[w] + ",...)");
      }
    const CochainComplex& out = A.hom(x, w);
    for (const auto& [d, ls] : out.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        Element b = Element::basis(A.ring, BasisRef{x, w, d, i});
        if (!(A.m(2, {e, b}) == b)) return fail("m^2(-,e) != id on hom(...," + A.objects[w] + ")");
      }
  }
  // higher operations with an e input must vanish
  for (int n = 3; n <= A.arity_bound; ++n) {
    auto it = A.ops.find(n);
    if (it == A.ops.end()) continue;
    for (const auto& [tuple, out] : it->second) {
      for (int p = 0; p < n; ++p) {
        if (tuple[p].src != x || tuple[p].tgt != x || tuple[p].deg != 0) continue;
        auto cit = e.coords.find(tuple[p].idx);
        if (cit == e.coords.end()) continue;
        // evaluate with e substituted at slot p, basis elsewhere
        std::vector<Element> args;
        for (int q = 0; q < n; ++q)
          args.push_back(q == p ? e : Element::basis(A.ring, tuple[q]));
        if (!A.m(n, args).is_zero())
          return fail("m^" + std::to_string(n) + " does not vanish on an e input");
      }
    }
  }
  return true;
}

// Unit verdict with cached homotopy witnesses: m^2(e,-) and m^2(-,e) homotopic
// to the identity on every hom complex.
struct UnitVerdict {
  bool ok = false;
  std::string reason;
  std::map<int, Homotopy> left;   // per object W: witness on hom(W, X)
  std::map<int, Homotopy> right;  // per object W: witness on hom(X, W)

  bool witnesses_zero() const {
    for (const auto& [w, h] : left)
      if (!h.is_zero()) return false;
    for (const auto& [w, h] : right)
      if (!h.is_zero()) return false;
    return true;
  }
};

inline UnitVerdict is_unit(const AInftyCategory& A, int x, const Element& e) {
  UnitVerdict v;
  if (e.src != x || e.tgt != x || e.deg != 0) {
    v.reason = "not a degree-0 endomorphism of " + A.objects[x];
    return v;
  }
  if (!A.m1(e).is_zero()) {
    v.reason = "not closed";
    return v;
  }
  for (int w = 0; w < static_cast<int>(A.objects.size()); ++w) {
    if (A.hom(w, x).module.total_rank() > 0) {
      ChainMap f = left_mult_map(A, e, w);
      auto h = find_homotopy(f, ChainMap::identity(f.source));
      if (!h) {
        v.reason = "m^2(e,-) not homotopic to id on hom(" + A.objects[w] + "," + A.objects[x] + ")";
        return v;
      }
      v.left.emplace(w, *h);
    }
    if (A.hom(x, w).module.total_rank() > 0) {
      ChainMap f = right_mult_map(A, e, w);
      auto h = find_homotopy(f, ChainMap::identity(f.source));
      if (!h) {
        v.reason = "m^2(-,e) not homotopic to id on hom(" + A.objects[x] + "," + A.objects[w] + ")";
        return v;
      }
      v.right.emplace(w, *h);
    }
  }
  v.ok = true;
  return v;
}

// ---------------------------------------------------------------------------
// augmentation

// A^+ : formally adjoins a strict unit 1_X to every endomorphism complex.
// The adjoined basis vector is labelled "1_<object>".
inline AInftyCategory augment(const AInftyCategory& A) {
  AInftyCategory B = A;
  B.units.clear();
  const int n = static_cast<int>(A.objects.size());
  std::vector<BasisRef> one(n);
  for (int x = 0; x < n; ++x) {
    // append in degree 0; differentials keep their entries (new row/col are zero)
    CochainComplex& C = B.hom_mut(x, x);
    long old0 = C.module.rank(0), oldm1 = C.module.rank(-1);
    C.module.add(0, "1_" + A.objects[x]);
    // resize touching differentials
    if (C.diff.count(0)) {
      SparseMatrix d0 = C.diff.at(0);
      d0.cols += 1;
      C.diff[0] = d0;
    }
    if (C.diff.count(-1)) {
      SparseMatrix dm = C.diff.at(-1);
      dm.rows += 1;
      C.diff[-1] = dm;
    }
    (void)oldm1;
    one[x] = BasisRef{x, x, 0, old0};
  }
  // strict unit rules: m^2(1_Y, f) = f, m^2(f, 1_X) = f, m^2(1,1) = 1
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const CochainComplex& C = B.hom(x, y);
      for (const auto& [d, ls] : C.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
          BasisRef b{x, y, d, i};
          Element eb = Element::basis(B.ring, b);
          if (!(b == one[x] && x == y)) B.set_op(2, {one[x], b}, eb);  // f after 1_X
          B.set_op(2, {b, one[y]}, eb);                                // 1_Y after f
        }
    }
  for (int x = 0; x < n; ++x) {
    B.units[x] = Element::basis(B.ring, one[x]);
  }
  B.strictly_unital = true;
  return B;
}

// Variant of A^+ for strictly unital A: the adjoined basis vector is
// w_X = 1_X - u_X, which satisfies m^2(w,w) = w and kills every other
// operation.  Aligns the ideal generated by the 1_X - u_X with basis vectors.
inline AInftyCategory augment_omega(const AInftyCategory& A) {
  require(A.strictly_unital, "augment_omega: category must be strictly unital");
  AInftyCategory B = A;
  B.units.clear();
  const int n = static_cast<int>(A.objects.size());
  for (int x = 0; x < n; ++x) {
    CochainComplex& C = B.hom_mut(x, x);
    long old0 = C.module.rank(0);
    C.module.add(0, "w_" + A.objects[x]);
    if (C.diff.count(0)) {
      SparseMatrix d0 = C.diff.at(0);
      d0.cols += 1;
      C.diff[0] = d0;
    }
    if (C.diff.count(-1)) {
      SparseMatrix dm = C.diff.at(-1);
      dm.rows += 1;
      C.diff[-1] = dm;
    }
    BasisRef w{x, x, 0, old0};
    B.set_op(2, {w, w}, Element::basis(B.ring, w));
    // 1_X = u_X + w_X
    Element unit = A.units.at(x);
    unit.add(w.idx, Scalar::one(B.ring));
    B.units[x] = unit;
  }
  B.strictly_unital = true;
  return B;
}

// ---------------------------------------------------------------------------
// homotopical projectivity

struct ProjectivityVerdict {
  bool value = true;
  std::string note;
};

// Sufficient criterion: bounded complexes of finitely generated free modules.
// Every representable hom complex satisfies it; over Z the general property is
// not decided and the verdict says so.
inline ProjectivityVerdict is_homotopically_projective(const AInftyCategory& A) {
  if (A.ring.is_field()) return {true, "field coefficients"};
  return {true,
          "bounded complexes of finitely generated free modules (sufficient criterion; "
          "the general property over Z is not decided)"};
}

// The same criterion on a module described by per-degree group descriptors
// (free = no torsion).  Rejects e.g. a hom containing Z/2 as a module.
inline ProjectivityVerdict homotopically_projective_module(
    const std::vector<AbelianGroup>& per_degree) {
  for (const auto& g : per_degree)
    if (!g.torsion.empty())
      return {false, "module has torsion (" + g.to_string() + "): not free"};
  return {true, "bounded free module"};
}

// Structure-constant equality (basis labels ignored).
inline bool structure_equal(const AInftyCategory& A, const AInftyCategory& B) {
  if (A.ring != B.ring || A.objects.size() != B.objects.size()) return false;
  for (int x = 0; x < static_cast<int>(A.objects.size()); ++x)
    for (int y = 0; y < static_cast<int>(A.objects.size()); ++y)
      if (!A.hom(x, y).same_shape(B.hom(x, y))) return false;
  auto norm = [](const AInftyCategory& C) {
    std::map<int, std::map<std::vector<BasisRef>, std::map<long, Scalar>>> t;
    for (const auto& [k, table] : C.ops)
      for (const auto& [tu, out] : table)
        if (!out.is_zero()) t[k][tu] = out.coords;
    return t;
  };
  return norm(A) == norm(B);
}

}  // namespace acat
