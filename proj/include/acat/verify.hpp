#pragma once

#include <atomic>
#include <chrono>
#include <future>

#include "acat/examples.hpp"
#include "acat/io.hpp"
#include "acat/nerve.hpp"
#include "json.hpp"

namespace acat {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  int L = 3;
  int window_lo = -4, window_hi = 2;
  int arity = 4;
  int nerve_dim = 3;
};

namespace detail {

inline int thread_count() {
  const char* env = std::getenv("ACAT_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

template <typename F>
CheckResult timed(const std::string& name, F&& body) {
  CheckResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<std::pair<std::string, AInftyCategory>> bundled_categories() {
  std::vector<std::pair<std::string, AInftyCategory>> cats;
  cats.emplace_back("one-object-k-f2", one_object_ring(Ring::prime_field(2)));
  cats.emplace_back("one-object-k-f5", one_object_ring(Ring::prime_field(5)));
  cats.emplace_back("z2-resolution", z2_resolution_dga());
  cats.emplace_back("interval-f2", poset_interval(Ring::prime_field(2), 1));
  cats.emplace_back("poset2-f2", poset_interval(Ring::prime_field(2), 2));
  cats.emplace_back("dual-numbers-f2", dual_numbers(Ring::prime_field(2)));
  cats.emplace_back("dual-contractible-f2", dual_numbers_with_contractible(Ring::prime_field(2)));
  cats.emplace_back("dual-contractible-f5", dual_numbers_with_contractible(Ring::prime_field(5)));
  cats.emplace_back("triple-product-z", triple_product_poset(Ring::integers()));
  return cats;
}

}  // namespace detail

// 1. relation suite with a mutation harness
inline CheckResult verify_relations(const VerifyOptions& opt) {
  return detail::timed("relations", [&]() -> std::pair<bool, std::string> {
    auto cats = detail::bundled_categories();
    // twisted-cone-induced categories join the corpus
    {
      AInftyCategory P = poset_interval(Ring::prime_field(2), 2);
      std::vector<TwObject> obs{TwObject::plain(P, 0), TwObject::plain(P, 2),
                                cone_of(P, Element::basis(P.ring, P.find_basis(0, 1, "g01"))),
                                cone_of(P, Element::basis(P.ring, P.find_basis(1, 2, "g12")))};
      cats.emplace_back("tw-cones-poset2", twisted_category(P, obs).cat);
      AInftyCategory Z = z2_resolution_dga();
      std::vector<TwObject> obz{TwObject::plain(Z, 0), cone_of(Z, Z.units.at(0)),
                                cone_of(Z, Scalar(Z.ring, 2) * Z.units.at(0))};
      cats.emplace_back("tw-cones-z2dga", twisted_category(Z, obz).cat);
    }
    const int nthreads = detail::thread_count();
    std::vector<std::string> fails(cats.size());
    auto work = [&](size_t i) {
      RelationReport rep = check_relations(cats[i].second, 4, 30000);
      if (!rep.passed) fails[i] = cats[i].first + ": " + rep.summary();
    };
    if (nthreads > 1) {
      std::vector<std::future<void>> fut;
      std::atomic<size_t> next{0};
      for (int t = 0; t < nthreads; ++t)
        fut.push_back(std::async(std::launch::async, [&]() {
          for (size_t i = next.fetch_add(1); i < cats.size(); i = next.fetch_add(1)) work(i);
        }));
      for (auto& f : fut) f.get();
    } else {
      for (size_t i = 0; i < cats.size(); ++i) work(i);
    }
    for (const auto& f : fails)
      if (!f.empty()) return {false, f};
    // mutation harness: perturbing one structure constant must fail
    AInftyCategory M = z2_resolution_dga();
    BasisRef e = M.find_basis(0, 0, "e"), b = M.find_basis(0, 0, "b");
    Element twob = Element::zero(M.ring, 0, 0, -1);
    twob.add(b.idx, Scalar(M.ring, 2));
    M.set_op(2, {e, b}, twob);
    if (check_relations(M, 2).passed) return {false, "mutation harness: perturbation undetected"};
    AInftyCategory M2 = triple_product_poset(Ring::prime_field(2));
    // dropping one composition breaks associativity against the longer chain
    M2.set_op(2, {M2.find_basis(0, 1, "g01"), M2.find_basis(1, 2, "g12")},
              Element::zero(M2.ring, 0, 2, 0));
    if (check_relations(M2, 4).passed)
      return {false, "mutation harness: composition perturbation undetected"};
    return {true, std::to_string(cats.size()) + " categories, relations hold to l = 4"};
  });
}

// 2. unit suite
inline CheckResult verify_units(const VerifyOptions&) {
  return detail::timed("units", [&]() -> std::pair<bool, std::string> {
    for (auto& [name, A] : detail::bundled_categories()) {
      if (!A.strictly_unital) continue;
      for (const auto& [x, e] : A.units) {
        std::string why;
        if (!is_strict_unit(A, x, e, &why))
          return {false, name + ": declared strict unit fails: " + why};
        UnitVerdict v = is_unit(A, x, e);
        if (!v.ok || !v.witnesses_zero())
          return {false, name + ": strict unit lacks a zero homotopy witness"};
      }
    }
    // eps is not a unit
    AInftyCategory D = dual_numbers(Ring::prime_field(2));
    Element eps = Element::basis(D.ring, D.find_basis(0, 0, "eps"));
    if (is_unit(D, 0, eps).ok) return {false, "eps wrongly accepted as a unit"};
    // a cohomologous deformation of the unit is a unit with nonzero witnesses
    AInftyCategory B = dual_numbers_with_contractible(Ring::prime_field(2));
    Element e2 = B.units.at(0);
    e2 += B.m1(Element::basis(B.ring, B.find_basis(0, 0, "ch")));
    UnitVerdict v2 = is_unit(B, 0, e2);
    if (!v2.ok || v2.witnesses_zero())
      return {false, "deformed unit must pass with nonzero witnesses"};
    // augmentation: 1_X strict, not cohomologous to u_X
    for (auto& [name, A] : detail::bundled_categories()) {
      if (!A.strictly_unital) continue;
      AInftyCategory Ap = augment(A);
      for (const auto& [x, one] : Ap.units) {
        if (!is_strict_unit(Ap, x, one)) return {false, name + ": 1_X not strict in A+"};
        Element diff = one - A.units.at(x);
        SparseVec rhs;
        for (const auto& [i, c] : diff.coords) rhs[i] = c;
        if (solve_linear(Ap.hom(x, x).d(-1), rhs))
          return {false, name + ": 1_X cohomologous to u_X in A+"};
      }
    }
    return {true, "strict units, failing non-units and augmentation units all verified"};
  });
}

// 3. cone acyclicity
inline CheckResult verify_cones(const VerifyOptions&) {
  return detail::timed("cones", [&]() -> std::pair<bool, std::string> {
    auto acyclic = [&](const CochainComplex& C) {
      for (const auto& [k, H] : cohomology(C, -3, 2))
        if (H.trusted && !H.is_zero()) return false;
      return true;
    };
    for (auto& [name, A] : detail::bundled_categories()) {
      if (!A.strictly_unital) continue;
      for (const auto& [x, e] : A.units) {
        TwObject C = cone_of(A, e), X = TwObject::plain(A, x);
        if (!acyclic(tw_hom(A, X, C))) return {false, name + ": hom(X, cone(e)) not acyclic"};
        if (!acyclic(tw_hom(A, C, X))) return {false, name + ": hom(cone(e), X) not acyclic"};
        if (!acyclic(tw_hom(A, C, C)))
          return {false, name + ": hom(cone(e), cone(e)) not acyclic"};
      }
    }
    return {true, "cone homs of units acyclic on [-3, 2]"};
  });
}

// 4. Z and W operators
inline CheckResult verify_zw(const VerifyOptions&) {
  return detail::timed("zw", [&]() -> std::pair<bool, std::string> {
    for (auto& [name, A] : detail::bundled_categories()) {
      if (!A.strictly_unital) continue;
      for (const auto& [x, e] : A.units) {
        ZWOperators zw = z_w_operators(A, e, e);
        ChainMap id = ChainMap::identity(zw.V);
        auto h1 = find_homotopy(zw.Z.compose(zw.W), id);
        auto h2 = find_homotopy(zw.W.compose(zw.Z), id);
        if (!h1 || !h2) return {false, name + ": ZW or WZ not homotopic to the identity"};
        if (!h1->is_zero() || !h2->is_zero())
          return {false, name + ": strict units must give exact inverses"};
      }
    }
    // non-strict unit pair: homotopies exist and are nonzero
    for (unsigned long p : {2ul, 5ul}) {
      AInftyCategory B = dual_numbers_with_contractible(Ring::prime_field(p));
      Element e2 = B.units.at(0);
      e2 += B.m1(Element::basis(B.ring, B.find_basis(0, 0, "ch")));
      ZWOperators zw = z_w_operators(B, e2, e2);
      ChainMap id = ChainMap::identity(zw.V);
      auto h1 = find_homotopy(zw.Z.compose(zw.W), id);
      auto h2 = find_homotopy(zw.W.compose(zw.Z), id);
      if (!h1 || !h2) return {false, "deformed units: ZW/WZ homotopies missing"};
      if (zw.Z.compose(zw.W) == id) return {false, "deformed units should not be exactly inverse"};
    }
    return {true, "Z, W chain maps with (homotopy) inverses on every bundled unit pair"};
  });
}

// 5. the right-inverse lemma at desk scale
inline CheckResult verify_right_inverse_suite(const VerifyOptions& opt) {
  return detail::timed("right-inverse", [&]() -> std::pair<bool, std::string> {
    std::vector<std::pair<std::string, AInftyCategory>> cats;
    cats.emplace_back("one-object-k-f2", one_object_ring(Ring::prime_field(2)));
    cats.emplace_back("interval-f2", poset_interval(Ring::prime_field(2), 1));
    cats.emplace_back("z2-resolution", z2_resolution_dga());
    std::string groups;
    for (auto& [name, A] : cats) {
      RightInverseReport rep = verify_right_inverse(A, opt.L, -2, 1);
      if (!rep.passed) return {false, name + ": " + rep.detail};
      for (const auto& [xy, per] : rep.groups)
        for (const auto& [d, g] : per)
          if (d == 0 && xy.first == xy.second)
            groups += name + " H^0(" + A.objects[xy.first] + ")=" + g[0].to_string() + " ";
    }
    return {true, "stable truncated cohomology matches hom_A on [-2,1] at L=" +
                      std::to_string(opt.L) + " vs " + std::to_string(opt.L + 1) + ": " + groups};
  });
}

// 6. the retraction operators H, G, K, t
inline CheckResult verify_operators(const VerifyOptions& opt) {
  return detail::timed("operators", [&]() -> std::pair<bool, std::string> {
    std::vector<std::pair<std::string, AInftyCategory>> cats;
    cats.emplace_back("one-object-k-f2", one_object_ring(Ring::prime_field(2)));
    cats.emplace_back("z2-resolution", z2_resolution_dga());
    {
      AInftyCategory B = dual_numbers_with_contractible(Ring::prime_field(5));
      Element e0 = B.units.at(0);
      e0 += B.m1(Element::basis(B.ring, B.find_basis(0, 0, "ch")));
      B.units[0] = e0;  // a non-strict chosen unit: exercises alpha != 0
      cats.emplace_back("dual-contractible-f5(e0+dch)", B);
    }
    std::string notes;
    for (auto& [name, A] : cats) {
      int L = name == "one-object-k-f2" || name == "z2-resolution" ? opt.L : 2;
      TTSSData d = build_tt_ss(A, 0, L, -2, 1);
      if (!d.identities_ok) return {false, name + ": homotopy identities fail (" + d.detail + ")"};
      if (!d.claim_I_ok) return {false, name + ": claim (I) fails"};
      if (!d.claim_II_ok) return {false, name + ": claim (II) fails"};
      if (!d.S_quasi_iso_ok) return {false, name + ": hom_A -> S not a quasi-iso (" + d.detail + ")"};
      notes += name + "[" + (d.alpha_zero ? "alpha=0" : "alpha!=0") + "] ";
    }
    return {true, "dH+Hd, dG+Gd, dK+Kd and id ~ t verified exactly: " + notes};
  });
}

// 7. the ideal and the quotient maps
inline CheckResult verify_ideal(const VerifyOptions& opt) {
  return detail::timed("mod-i", [&]() -> std::pair<bool, std::string> {
    std::vector<std::pair<std::string, AInftyCategory>> cats;
    cats.emplace_back("one-object-k-f2", one_object_ring(Ring::prime_field(2)));
    cats.emplace_back("dual-numbers-f2", dual_numbers(Ring::prime_field(2)));
    cats.emplace_back("interval-f2", poset_interval(Ring::prime_field(2), 1));
    cats.emplace_back("z2-resolution", z2_resolution_dga());
    long tuples = 0;
    for (auto& [name, A] : cats) {
      int L = A.ring.kind == RingKind::Integers ? 2 : opt.L;
      IdealReport rep = verify_mod_ideal(A, L, -2, 1, 4, 2000);
      if (!rep.closure_ok) return {false, name + ": " + rep.detail};
      if (!rep.graded_match_ok) return {false, name + ": " + rep.detail};
      if (!rep.maps_ok) return {false, name + ": " + rep.detail};
      tuples += rep.closure_tuples;
    }
    return {true, "ideal closed under m^k (k <= 4; " + std::to_string(tuples) +
                      " tuples) and all quotient maps are stable quasi-isomorphisms"};
  });
}

// 8. nerves
inline CheckResult verify_nerve(const VerifyOptions& opt) {
  return detail::timed("nerve", [&]() -> std::pair<bool, std::string> {
    // bit-exact dg/A-infinity agreement on dg inputs
    for (unsigned long p : {2ul, 5ul}) {
      AInftyCategory A = poset_interval(Ring::prime_field(p), 1);
      TruncatedSimplicialSet Nd = dg_nerve(A, opt.nerve_dim), Na = ainfty_nerve(A, opt.nerve_dim);
      enumerate_cells(Nd);
      enumerate_cells(Na);
      for (int n = 0; n <= opt.nerve_dim; ++n) {
        auto a = Nd.cells[n], b = Na.cells[n];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!(a == b)) return {false, "dg and A-infinity nerves differ at dimension " +
                                          std::to_string(n)};
      }
    }
    // inner horns fill
    {
      AInftyCategory A = poset_interval(Ring::prime_field(2), 2);
      TruncatedSimplicialSet N = dg_nerve(A, 3);
      Simplex e01, e12;
      e01.vertices = {0, 1};
      e01.coords[{0, 1}] = Element::basis(A.ring, A.find_basis(0, 1, "g01"));
      e12.vertices = {1, 2};
      e12.coords[{0, 1}] = Element::basis(A.ring, A.find_basis(1, 2, "g12"));
      auto f2 = fill_inner_horn(N, {e12, std::nullopt, e01}, 2, 1);
      if (!f2 || !(f2->coord(A, {0, 2}) ==
                   Element::basis(A.ring, A.find_basis(0, 2, "g02"))))
        return {false, "horn 2_1 must compose the edges"};
      AInftyCategory Z = z2_resolution_dga();
      TruncatedSimplicialSet NZ = dg_nerve(Z, 3);
      Simplex edge;
      edge.vertices = {0, 0};
      edge.coords[{0, 1}] = Scalar(Z.ring, 3) * Z.units.at(0);
      Simplex three = degeneracy(Z, degeneracy(Z, edge, 0), 0);
      for (int i : {1, 2}) {
        std::vector<std::optional<Simplex>> faces(4);
        for (int j = 0; j <= 3; ++j)
          faces[j] = j == i ? std::nullopt : std::optional(face(three, j));
        if (!fill_inner_horn(NZ, faces, 3, i))
          return {false, "horn 3_" + std::to_string(i) + " fails over Z"};
      }
    }
    // cores: pi1 = (H^0)^x and pi0 = H^0-iso classes
    {
      AInftyCategory A2 = one_object_ring(Ring::prime_field(2));
      TruncatedSimplicialSet N2 = dg_nerve(A2, 3);
      enumerate_cells(N2);
      if (pi1_core(N2, 0).order != 1) return {false, "pi1 over F2 must be trivial"};
      AInftyCategory A5 = one_object_ring(Ring::prime_field(5));
      TruncatedSimplicialSet N5 = dg_nerve(A5, 3);
      enumerate_cells(N5);
      GroupDescriptor g = pi1_core(N5, 0);
      if (g.to_string() != "Z/4") return {false, "pi1 over F5 must be Z/4, got " + g.to_string()};
      AInftyCategory D = poset_with_duplicate(Ring::prime_field(2));
      TruncatedSimplicialSet ND = dg_nerve(D, 2);
      enumerate_cells(ND);
      if (pi0_core(ND) != 2) return {false, "pi0 of the duplicated interval must be 2"};
      AInftyCategory I = poset_interval(Ring::prime_field(2), 1);
      TruncatedSimplicialSet NI = dg_nerve(I, 2);
      enumerate_cells(NI);
      if (pi0_core(NI) != 2) return {false, "pi0 of the interval must be 2"};
    }
    // pi vs cohomology cross-checks
    {
      PiReport r1 = pi_vs_cohomology(one_object_ring(Ring::prime_field(5)), 0, 0, 2);
      if (!r1.agree) return {false, "pi_i enumeration disagrees with Dold-Kan (F5 point)"};
      PiReport r2 = pi_vs_cohomology(dual_numbers(Ring::prime_field(2), -1), 0, 0, 1);
      if (!r2.agree || r2.data.at(1).second != 2)
        return {false, "pi_1 of the two-term hom must be F2"};
    }
    return {true, "nerve equality, horn filling, cores and pi_i identifications verified"};
  });
}

// 9. Hochschild vs the classical complex is exercised in the acceptance suite
// with its oracle; here the library-side facts
inline CheckResult verify_hochschild(const VerifyOptions& opt) {
  return detail::timed("hochschild", [&]() -> std::pair<bool, std::string> {
    AInftyCategory K = one_object_ring(Ring::prime_field(2));
    FunComplex fk = hochschild(K, opt.arity);
    auto Hk = cohomology(fk.complex, 0, std::min(3, opt.arity));
    if (!(Hk.at(0).to_string() == "F2")) return {false, "HH^0(k) must be k"};
    for (int d = 1; d <= std::min(3, opt.arity - 1); ++d)
      if (!Hk.at(d).is_zero()) return {false, "HH^" + std::to_string(d) + "(k) must vanish"};
    AInftyCategory D = dual_numbers(Ring::prime_field(2));
    FunComplex fd = hochschild(D, 3);
    for (int n = 0; n <= 3; ++n)
      if (fd.complex.module.rank(n) != (1l << (n + 1)))
        return {false, "CH^n(k[eps]) dimension mismatch at n = " + std::to_string(n)};
    auto Hd = cohomology(fd.complex, 0, 2);
    if (Hd.at(0).free_rank != 2) return {false, "HH^0(k[eps]) must be the center k[eps]"};
    // invertibles of HH^0 over F2: exactly one
    SparseMatrix Z = kernel_basis(fk.complex.d(0));
    long invertibles = 0;
    for (long code = 1; code < (1l << Z.cols); ++code) {
      SparseVec v;
      for (long c = 0; c < Z.cols; ++c)
        if (code >> c & 1)
          for (long r = 0; r < Z.rows; ++r)
            if (!Z.at(r, c).is_zero()) v[r] = Z.at(r, c);
      if (is_natural_equivalence(fk, v)) ++invertibles;
    }
    if (invertibles != 1) return {false, "(HH^0(k))^x over F2 must have one element"};
    return {true, "CH(k), CH(k[eps]) dimensions, centers and invertibles verified"};
  });
}

// functor-category facts feeding the mapping-space corollaries
inline CheckResult verify_functors(const VerifyOptions&) {
  return detail::timed("functors", [&]() -> std::pair<bool, std::string> {
    AInftyCategory A = one_object_ring(Ring::prime_field(2));
    Pi0Report r1 = pi0_functor_classes(A, A, 2);
    if (!r1.feasible || r1.classes != 1) return {false, "pi0 fun(k,k) must be a single class"};
    AInftyCategory I = poset_interval(Ring::prime_field(2), 1);
    Pi0Report r2 = pi0_functor_classes(I, A, 2);
    if (!r2.feasible || r2.unital != 2 || r2.classes != 2)
      return {false, "pi0 fun(interval, k) must have two classes"};
    // naturality: (f.g)+ = f+.g+ and id+ = id
    AInftyFunctor id = AInftyFunctor::identity(I);
    if (!(augment_functor(id) == AInftyFunctor::identity(augment(I))))
      return {false, "id+ != id_{A+}"};
    return {true, "functor enumeration classes and augmentation naturality verified"};
  });
}

// localization functoriality: the naturality square commutes exactly
inline CheckResult verify_localization_naturality(const VerifyOptions& opt) {
  return detail::timed("loc-naturality", [&]() -> std::pair<bool, std::string> {
    AInftyCategory A = dual_numbers(Ring::prime_field(2));
    AInftyCategory Ap = augment(A);
    std::vector<Element> I{A.units.at(0)};
    LocCategory la = localize(A, I, 2, -3, 2);
    LocCategory lb = localize(Ap, I, 2, -3, 2);
    AInftyFunctor incl{A, Ap, {0}, {}};
    for (const auto& [xy, H] : A.homs)
      for (const auto& [d, ls] : H.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
          BasisRef b{xy.first, xy.second, d, i};
          incl.comp[1][{b}] = Element::basis(Ap.ring, b);
        }
    AInftyFunctor lf = localize_functor(incl, la, lb);
    for (const auto& [xy, H] : A.homs)
      for (const auto& [d, ls] : H.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
          BasisRef b{xy.first, xy.second, d, i};
          if (!(lf.value(1, {la.include_base(b)}) ==
                Element::basis(Ap.ring, lb.include_base(b))))
            return {false, "localize(f) . incl != incl . f on " + A.label(b)};
        }
    // cohomologous localizations agree
    AInftyCategory B = dual_numbers_with_contractible(Ring::prime_field(2));
    Element u = B.units.at(0);
    Element u2 = u;
    u2 += B.m1(Element::basis(B.ring, B.find_basis(0, 0, "ch")));
    auto rep = verify_cohomologous_localizations(B, {u}, {u, u2}, 2, -1, 0);
    if (!rep.precondition_ok || !rep.passed)
      return {false, "cohomologous localizations disagree: " + rep.detail};
    Element eps = Element::basis(B.ring, B.find_basis(0, 0, "aeps"));
    auto rep2 = verify_cohomologous_localizations(B, {u}, {u, eps}, 2, -1, 0);
    if (rep2.precondition_ok) return {false, "non-cohomologous extra morphism not rejected"};
    return {true, "localization naturality and the cohomologous-localization reduction verified"};
  });
}

inline std::vector<CheckResult> verify_paper_suite(const std::string& which,
                                                   const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  auto want = [&](const std::string& n) { return which == "all" || which == n; };
  if (want("relations")) out.push_back(verify_relations(opt));
  if (want("units")) out.push_back(verify_units(opt));
  if (want("cones")) out.push_back(verify_cones(opt));
  if (want("zw")) out.push_back(verify_zw(opt));
  if (want("right-inverse")) out.push_back(verify_right_inverse_suite(opt));
  if (want("operators")) out.push_back(verify_operators(opt));
  if (want("mod-i")) out.push_back(verify_ideal(opt));
  if (want("nerve")) out.push_back(verify_nerve(opt));
  if (want("hochschild")) out.push_back(verify_hochschild(opt));
  if (want("functors")) out.push_back(verify_functors(opt));
  if (want("loc-naturality")) out.push_back(verify_localization_naturality(opt));
  require(!out.empty(), "verify_paper_suite: unknown suite '" + which + "'");
  return out;
}

// Deterministic report (no timings): byte-identical across runs.
inline std::string report_json(const std::vector<CheckResult>& results,
                               const VerifyOptions& opt, const std::string& command) {
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = command;
  j["options"] = {{"L", opt.L},
                  {"window", {opt.window_lo, opt.window_hi}},
                  {"arity", opt.arity},
                  {"nerve_dim", opt.nerve_dim}};
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all &= r.passed;
  }
  j["results"] = arr;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

}  // namespace acat
