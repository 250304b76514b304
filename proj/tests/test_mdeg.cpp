#include "itres/error.hpp"
#include "itres/mdeg.hpp"
#include "itres/poly_io.hpp"

#include <doctest.h>

#include <random>

using namespace itres;

namespace {

std::vector<GradedPoly> etas(const RegistryPtr& reg, int n) {
  std::vector<GradedPoly> w;
  for (int i = 1; i <= n; ++i) w.push_back(GradedPoly::variable(reg, "eta" + std::to_string(i)));
  return w;
}

}  // namespace

TEST_SUITE("mdeg") {
  TEST_CASE("principal monomial ideals") {
    auto reg = make_registry();
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        if (a + b == 0) continue;
        MonomialIdeal I({{a, b}}, etas(reg, 2));
        CHECK(codimension(I) == 1);
        CHECK(multidegree(I) == parse_poly(reg, std::to_string(a) + "*eta1 + " + std::to_string(b) + "*eta2"));
      }
  }

  TEST_CASE("complete intersections and the maximal ideal square") {
    auto reg = make_registry();
    CHECK(multidegree(MonomialIdeal({{2, 0}, {0, 3}}, etas(reg, 2))) == parse_poly(reg, "6*eta1*eta2"));
    CHECK(multidegree(MonomialIdeal({{2, 0}, {1, 1}, {0, 2}}, etas(reg, 2))) == parse_poly(reg, "3*eta1*eta2"));
    // (xy, xz): x = 0 or y = z = 0.
    MonomialIdeal I({{1, 1, 0}, {1, 0, 1}}, etas(reg, 3));
    CHECK(codimension(I) == 1);
    CHECK(multidegree(I) == parse_poly(reg, "eta1"));
    // (x^2, xy) has an embedded component; only the codimension-one part counts.
    CHECK(multidegree(MonomialIdeal({{2, 0}, {1, 1}}, etas(reg, 2))) == parse_poly(reg, "eta1"));
  }

  TEST_CASE("generators are reduced") {
    auto reg = make_registry();
    MonomialIdeal I({{1, 0}, {2, 0}, {1, 3}, {0, 2}}, etas(reg, 2));
    CHECK(I.generators().size() == 2);
    CHECK(I.contains({3, 0}));
    CHECK(I.contains({0, 5}));
    CHECK_FALSE(I.contains({0, 1}));
    CHECK(multiplicity(I, {0, 1}) == 2);
  }

  TEST_CASE("invalid input") {
    auto reg = make_registry();
    CHECK_THROWS_AS(MonomialIdeal({{1, 0, 0}}, etas(reg, 2)), ValidationError);
    CHECK_THROWS_AS(MonomialIdeal({{-1, 0}}, etas(reg, 2)), ValidationError);
    MonomialIdeal unit({{0, 0}}, etas(reg, 2));
    CHECK(unit.is_unit());
    CHECK_THROWS_AS(codimension(unit), ValidationError);
    MonomialIdeal I({{1, 0}}, etas(reg, 2));
    CHECK_THROWS_AS(multiplicity(I, {0, 1}), ValidationError);
  }

  TEST_CASE("random ideals: homogeneous of grade codim, degree bounded by generator products") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> ngen(1, 3), ex(0, 3);
    for (int trial = 0; trial < 40; ++trial) {
      auto reg = make_registry();
      std::vector<ExponentVector> gens;
      int g = ngen(rng);
      for (int i = 0; i < g; ++i) {
        ExponentVector v{ex(rng), ex(rng), ex(rng)};
        if (v == ExponentVector{0, 0, 0}) v[0] = 1;
        gens.push_back(v);
      }
      MonomialIdeal I(gens, etas(reg, 3));
      auto md = multidegree(I);
      REQUIRE_FALSE(md.is_zero());
      REQUIRE(md.grade().has_value());
      CHECK(*md.grade() == codimension(I));
      // With all weights 1 this is the degree: each of the C(3, c) coordinate
      // subspaces contributes at most 3^c lattice points.
      std::map<VarIndex, GradedPoly> ones;
      for (VarIndex v : md.variables()) ones.emplace(v, GradedPoly(reg, Rational(1)));
      Rational deg = md.substitute(ones).constant_term();
      CHECK(deg > 0);
      int c = codimension(I);
      long bound = (c == 3 ? 1 : 3);
      for (int i = 0; i < c; ++i) bound *= 3;
      CHECK(deg <= Rational(bound));
    }
  }
}
