#include "itres/error.hpp"
#include "itres/thom.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace itres;

namespace {

GradedPoly tp(const RegistryPtr& reg, int k, int m, int n, int D = -1) {
  return thom_polynomial_morin(reg, k, MapGeometry{m, n, D, std::nullopt});
}

GradedPoly c(const RegistryPtr& reg, int i) {
  if (i == 0) return GradedPoly(reg, Rational(1));
  return GradedPoly::variable(reg, "c_" + std::to_string(i));
}

}  // namespace

TEST_SUITE("thom") {
  TEST_CASE("A1 is a single class") {
    for (int m = 1; m <= 4; ++m)
      for (int l = 0; l <= 3; ++l) {
        auto reg = make_registry();
        CHECK(tp(reg, 2, m, m + l) == c(reg, l + 1));
      }
  }

  TEST_CASE("A2 against the closed form") {
    // c_{l+1}^2 + sum_{i>=1} 2^{i-1} c_{l+1-i} c_{l+1+i}
    for (int l = 0; l <= 3; ++l) {
      auto reg = make_registry();
      GradedPoly expected = c(reg, l + 1) * c(reg, l + 1);
      Rational w = 1;
      for (int i = 1; i <= l + 1; ++i) {
        expected += w * c(reg, l + 1 - i) * c(reg, l + 1 + i);
        w *= 2;
      }
      CHECK(tp(reg, 3, 3, 3 + l) == expected);
    }
    auto reg = make_registry();
    CHECK(to_string(tp(reg, 3, 2, 2)) == "c_1^2 + c_2");
    CHECK(tp(reg, 3, 2, 3) == c(reg, 2) * c(reg, 2) + c(reg, 1) * c(reg, 3) + Rational(2) * c(reg, 4));
  }

  TEST_CASE("A3 in equal dimensions") {
    auto reg = make_registry();
    CHECK(tp(reg, 4, 3, 3) == c(reg, 1).pow(3) + Rational(3) * c(reg, 1) * c(reg, 2) + Rational(2) * c(reg, 3));
  }

  TEST_CASE("grades and truncation stability") {
    for (int k = 2; k <= 4; ++k)
      for (int l = 0; l <= 2; ++l) {
        auto reg = make_registry();
        auto p = tp(reg, k, 3, 3 + l);
        REQUIRE(p.grade().has_value());
        CHECK(*p.grade() == thom_grade(k, 3, 3 + l));
        CHECK(tp(reg, k, 3, 3 + l, thom_grade(k, 3, 3 + l) + 3) == p);
      }
  }

  TEST_CASE("built-in Q table") {
    const QTable& t = builtin_qtable();
    auto reg = make_registry();
    for (int k = 1; k <= 3; ++k) CHECK(t.polynomial(reg, k) == GradedPoly(reg, Rational(1)));
    CHECK(to_string(t.polynomial(reg, 4)) == "2*z1 + z2 - z4");
    auto q5 = parse_poly(reg,
                         "(2*z1 + z2 - z5) * (2*z1^2 + 3*z1*z2 - 2*z1*z5 + 2*z2*z3 - z2*z4 - z2*z5 - z3*z4 + z4*z5)");
    CHECK(t.polynomial(reg, 5) == q5);
    CHECK(t.max_k() == 5);
    CHECK_THROWS_AS(t.polynomial(reg, 6), QTableExhausted);
    CHECK_THROWS_AS(tp(reg, 7, 3, 4), QTableExhausted);
    // Relabelled variables.
    std::vector<VarIndex> w{reg->intern("z3[1]"), reg->intern("z4[1]"), reg->intern("z5[1]"), reg->intern("z6[1]")};
    CHECK(to_string(t.polynomial(reg, 4, w)) == "2*z3[1] + z4[1] - z6[1]");
  }

  TEST_CASE("extending and loading the table") {
    QTable t;
    t.set(6, "z1^2 - z6^2");
    CHECK(t.has(6));
    auto reg = make_registry();
    CHECK(t.polynomial(reg, 6) == parse_poly(reg, "z1^2 - z6^2"));
    CHECK_THROWS_AS(t.set(2, "z3"), ValidationError);
    CHECK_THROWS_AS(t.set(2, "z1 + z2^2"), ValidationError);
    CHECK_THROWS_AS(t.set(0, "1"), ValidationError);
    t.load_json(Json::parse(R"([{"k": 7, "poly": "z7"}])"));
    CHECK(t.has(7));
    CHECK_THROWS_AS(t.load_json(Json::parse(R"({"k": 7})")), ParseError);
    CHECK_THROWS_AS(t.load_json(Json::parse(R"([{"poly": "z1"}])")), ParseError);
    CHECK_THROWS_AS(t.load_file("/nonexistent/q.json"), ValidationError);
    std::string path = (std::filesystem::temp_directory_path() / "itres_qtable6.json").string();
    {
      std::ofstream out(path);
      out << R"([{"k": 6, "poly": "z1 + z2"}])";
    }
    QTable u;
    u.load_file(path);
    CHECK(u.polynomial(reg, 6) == parse_poly(reg, "z1 + z2"));
    std::remove(path.c_str());
  }

  TEST_CASE("residual polynomials") {
    for (int m = 2; m <= 3; ++m)
      for (int l = 1; l <= 3; ++l) {
        auto reg = make_registry();
        int n = m + l;
        CHECK(residual_polynomial(reg, 1, MapGeometry{m, n, -1, std::nullopt}) == GradedPoly(reg, Rational(1)));
        CHECK(residual_polynomial(reg, 2, MapGeometry{m, n, -1, std::nullopt}) == c(reg, l));
        auto r3 = residual_polynomial(reg, 3, MapGeometry{m, n, -1, std::nullopt});
        CHECK(r3 == tp(reg, 3, m, n - 1));
        REQUIRE(r3.grade().has_value());
        CHECK(*r3.grade() == residual_grade(3, m, n));
      }
  }

  TEST_CASE("explicit Chern data") {
    // c(f) = 1 + x with a single root gives c_i = 0 for i >= 2.
    auto reg = make_registry();
    auto x = GradedPoly::variable(reg, "theta1");
    MapGeometry g{2, 3, 4, series_from_roots(reg, {x}, 4)};
    CHECK(thom_polynomial_morin(reg, 2, g).is_zero());
    CHECK(thom_polynomial_morin(reg, 3, g).is_zero());
    MapGeometry g0{2, 2, 4, series_from_roots(reg, {x}, 4)};
    CHECK(thom_polynomial_morin(reg, 2, g0) == x);
    CHECK(thom_polynomial_morin(reg, 3, g0) == x * x);
  }
}
