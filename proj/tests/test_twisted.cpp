#include <catch2/catch_amalgamated.hpp>

#include "acat/examples.hpp"
#include "acat/twisted.hpp"

using namespace acat;

namespace {

bool acyclic_on(const CochainComplex& C, int lo, int hi) {
  for (const auto& [k, H] : cohomology(C, lo, hi))
    if (H.trusted && !H.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("cone_of builds valid twisted complexes") {
  SECTION("cone of the identity satisfies Maurer-Cartan") {
    AInftyCategory A = one_object_ring(Ring::prime_field(2));
    TwObject c = cone_of(A, A.units.at(0));
    validate_tw_object(A, c);
  }
  SECTION("cone of a non-closed morphism is rejected") {
    AInftyCategory A = dual_numbers_with_contractible(Ring::prime_field(2));
    Element ch = Element::basis(A.ring, A.find_basis(0, 0, "ch"));
    CHECK_THROWS_AS(cone_of(A, ch), usage_error);  // degree -1
    Element notclosed = Element::basis(A.ring, A.find_basis(0, 0, "c1"));
    // c1 is closed; perturb degree-0 closedness via a fake: use ch's differential target
    // instead check a genuinely non-closed degree-0 element does not exist here; skip
    CHECK(A.m1(notclosed).is_zero());
  }
  SECTION("cone of multiplication by 2 in the integral dga") {
    AInftyCategory A = z2_resolution_dga();
    Element two = Scalar(A.ring, 2) * A.units.at(0);
    TwObject c = cone_of(A, two);
    validate_tw_object(A, c);
  }
  SECTION("iterated cones flatten with block deltas") {
    AInftyCategory A = poset_interval(Ring::integers(), 2);
    Element g01 = Element::basis(A.ring, A.find_basis(0, 1, "g01"));
    TwObject c1 = cone_of(A, g01);
    // include a closed degree-0 map X2 -> c1 hitting the first entry
    TwObject p2 = TwObject::plain(A, 2);
    std::map<std::pair<int, int>, Element> phi;  // zero map: still a valid cone
    TwObject c2 = cone_of_tw(c1, p2, phi);
    validate_tw_object(A, c2);
    CHECK(c2.entries.size() == 3);
  }
}

TEST_CASE("tw_m with zero twisting reduces to the direct sum") {
  AInftyCategory A = poset_interval(Ring::integers(), 1);
  // two-entry object with no delta and no shifts: X + Y
  TwObject s{"sum", {TwEntry{0, 0}, TwEntry{1, 0}}, {}};
  TwCategory T = twisted_category(A, {s, TwObject::plain(A, 1)});
  // hom(sum, 1) = hom(0,1) + hom(1,1); differential vanishes, m^2 componentwise
  const CochainComplex& H = T.cat.hom(0, 1);
  CHECK(H.module.rank(0) == 2);
  CHECK(H.d(0).is_zero());
  // m^2 of (g01-component, u1 at target) stays componentwise
  BasisRef b0{0, 1, 0, 0};
  Element u1comp = Element::basis(A.ring, BasisRef{1, 1, 0, 0});
  Element x = T.cat.m(2, {Element::basis(A.ring, b0), u1comp});
  CHECK_FALSE(x.is_zero());
}

TEST_CASE("twisted categories satisfy the A-infinity relations") {
  SECTION("cones in k(x)[2] over Z, arities up to 4") {
    AInftyCategory A = poset_interval(Ring::integers(), 2);
    std::vector<TwObject> obs;
    for (int i = 0; i <= 2; ++i) obs.push_back(TwObject::plain(A, i));
    obs.push_back(cone_of(A, Element::basis(A.ring, A.find_basis(0, 1, "g01"))));
    obs.push_back(cone_of(A, Element::basis(A.ring, A.find_basis(1, 2, "g12"))));
    obs.push_back(cone_of(A, Element::basis(A.ring, A.find_basis(0, 2, "g02"))));
    TwCategory T = twisted_category(A, obs);
    T.cat.validate();
    RelationReport rep = check_relations(T.cat, 4, 20000);
    INFO(rep.summary());
    CHECK(rep.passed);
  }
  SECTION("cones over the integral dga") {
    AInftyCategory A = z2_resolution_dga();
    std::vector<TwObject> obs{TwObject::plain(A, 0), cone_of(A, A.units.at(0)),
                              cone_of(A, Scalar(A.ring, 2) * A.units.at(0))};
    TwCategory T = twisted_category(A, obs);
    RelationReport rep = check_relations(T.cat, 4, 20000);
    INFO(rep.summary());
    CHECK(rep.passed);
  }
  SECTION("cones in the triple-product category see m^3 and still pass") {
    AInftyCategory A = triple_product_poset(Ring::integers());
    std::vector<TwObject> obs{TwObject::plain(A, 0), TwObject::plain(A, 3),
                              cone_of(A, Element::basis(A.ring, A.find_basis(0, 1, "g01")))};
    TwCategory T = twisted_category(A, obs);
    RelationReport rep = check_relations(T.cat, 4, 20000);
    INFO(rep.summary());
    CHECK(rep.passed);
  }
}

TEST_CASE("hom into a cone is literally the mapping cone of left multiplication") {
  for (auto mk : {+[]() { return dual_numbers(Ring::prime_field(2)); },
                  +[]() { return z2_resolution_dga(); },
                  +[]() { return dual_numbers_with_contractible(Ring::prime_field(5)); }}) {
    AInftyCategory A = mk();
    Element e = A.units.at(0);
    CochainComplex lhs = tw_hom(A, TwObject::plain(A, 0), cone_of(A, e));
    CochainComplex rhs = cone(left_mult_map(A, e, 0));
    CHECK(complexes_match(lhs, rhs));
  }
}

TEST_CASE("cone homs of units are acyclic") {
  SECTION("strictly unital examples over a field") {
    for (auto mk : {+[]() { return one_object_ring(Ring::prime_field(2)); },
                    +[]() { return dual_numbers(Ring::prime_field(2)); },
                    +[]() { return dual_numbers_with_contractible(Ring::prime_field(2)); }}) {
      AInftyCategory A = mk();
      Element e = A.units.at(0);
      TwObject X = TwObject::plain(A, 0), C = cone_of(A, e);
      CHECK(acyclic_on(tw_hom(A, X, C), -3, 2));
      CHECK(acyclic_on(tw_hom(A, C, X), -3, 2));
      CHECK(acyclic_on(tw_hom(A, C, C), -3, 2));
    }
  }
  SECTION("over Z in the resolution dga") {
    AInftyCategory A = z2_resolution_dga();
    TwObject X = TwObject::plain(A, 0), C = cone_of(A, A.units.at(0));
    CHECK(acyclic_on(tw_hom(A, X, C), -3, 2));
    CHECK(acyclic_on(tw_hom(A, C, X), -3, 2));
    CHECK(acyclic_on(tw_hom(A, C, C), -3, 2));
  }
  SECTION("a non-unit cone is not acyclic") {
    AInftyCategory A = z2_resolution_dga();
    Element two = Scalar(A.ring, 2) * A.units.at(0);
    CHECK_FALSE(acyclic_on(tw_hom(A, TwObject::plain(A, 0), cone_of(A, two)), -1, 1));
  }
  SECTION("multi-object: hom(X, cone(e)) and hom(cone(e), X) vanish in cohomology") {
    AInftyCategory A = poset_interval(Ring::prime_field(2), 1);
    TwObject C = cone_of(A, A.units.at(1));
    CHECK(acyclic_on(tw_hom(A, TwObject::plain(A, 0), C), -3, 2));
    CHECK(acyclic_on(tw_hom(A, C, TwObject::plain(A, 1)), -3, 2));
  }
}

TEST_CASE("Z and W operators") {
  SECTION("strictly unital: Z = W with exact inverses and zero homotopies") {
    AInftyCategory A = dual_numbers(Ring::prime_field(2));
    Element e = A.units.at(0);
    ZWOperators zw = z_w_operators(A, e, e);
    CHECK(zw.Z == zw.W);  // m^3 correction vanishes
    ChainMap id = ChainMap::identity(zw.V);
    CHECK(zw.Z.compose(zw.W) == id);
    CHECK(zw.W.compose(zw.Z) == id);
    auto h1 = find_homotopy(zw.Z.compose(zw.W), id);
    REQUIRE(h1.has_value());
    CHECK(h1->is_zero());
  }
  SECTION("strictly unital over Z keeps exactness") {
    AInftyCategory A = z2_resolution_dga();
    ZWOperators zw = z_w_operators(A, A.units.at(0), A.units.at(0));
    ChainMap id = ChainMap::identity(zw.V);
    CHECK(zw.Z.compose(zw.W) == id);
    CHECK(zw.W.compose(zw.Z) == id);
    CHECK_FALSE(zw.iso_note.empty());
  }
  SECTION("non-strict units: ZW and WZ homotopic to the identity with nonzero witnesses") {
    for (unsigned long p : {2ul, 5ul}) {
      AInftyCategory A = dual_numbers_with_contractible(Ring::prime_field(p));
      Element e = A.units.at(0);
      Element e2 = e;
      e2 += A.m1(Element::basis(A.ring, A.find_basis(0, 0, "ch")));  // cohomologous unit
      REQUIRE(is_unit(A, 0, e2).ok);
      ZWOperators zw = z_w_operators(A, e2, e2);
      ChainMap id = ChainMap::identity(zw.V);
      auto h1 = find_homotopy(zw.Z.compose(zw.W), id);
      auto h2 = find_homotopy(zw.W.compose(zw.Z), id);
      REQUIRE(h1.has_value());
      REQUIRE(h2.has_value());
      h1->validate();
      h2->validate();
      CHECK_FALSE(zw.Z.compose(zw.W) == id);  // genuinely non-strict
    }
  }
  SECTION("the composite operator m^2(m^3(e2,.,e1),e1) is null-homotopic") {
    // On the dg test corpus the m^3 factor vanishes identically, so the
    // null-homotopy exists (and is found) trivially; the solver path is real.
    AInftyCategory A = dual_numbers_with_contractible(Ring::prime_field(2));
    Element e = A.units.at(0);
    const CochainComplex& H = A.hom(0, 0);
    ChainMap op{H, H, -1, {}};
    for (const auto& [d, ls] : H.module.basis) {
      SparseMatrix m(A.ring, H.module.rank(d - 1), H.module.rank(d));
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        Element b = Element::basis(A.ring, BasisRef{0, 0, d, i});
        Element inner = A.m(3, {e, b, e});
        Element outer = A.m(2, {e, inner});
        for (const auto& [j, c] : outer.coords) m.set(j, i, c);
      }
      op.set(d, m);
    }
    REQUIRE(op.is_closed());
    auto h = find_homotopy(op, ChainMap::zero(H, H, -1));
    REQUIRE(h.has_value());
  }
}

TEST_CASE("hom into the cone of zero splits") {
  AInftyCategory A = poset_interval(Ring::prime_field(2), 1);
  // cone(0: 0 -> 1): hom(0, cone(0)) = hom(0,1) + s hom(0,0), split differential
  Element zero01 = Element::zero(A.ring, 0, 1, 0);
  TwObject C = cone_of(A, zero01);
  CochainComplex H = tw_hom(A, TwObject::plain(A, 0), C);
  CHECK(H.module.rank(0) == 1);   // hom(0,1) part
  CHECK(H.module.rank(-1) == 1);  // s hom(0,0) part
  for (const auto& [k, m] : H.diff) CHECK(m.is_zero());
}
