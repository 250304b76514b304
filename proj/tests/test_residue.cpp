#include "itres/error.hpp"
#include "itres/residue.hpp"

#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>

using namespace itres;

namespace {

// Truncated Laurent series in two variables, exponents bounded below.
using Laurent = std::map<std::pair<int, int>, Rational>;
constexpr int kFloor = -20;

Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      if (e.first < kFloor || e.second < kFloor) continue;
      out[e] += ca * cb;
    }
  return out;
}

// 1/(c*w + rest)^e expanded in the domain where w dominates: w is
// (exponent of z1, exponent of z2) of the leading monomial.
Laurent inverse_power(Rational c, std::pair<int, int> w, const Laurent& rest, int e) {
  // (c w)^{-e} * sum_j binom(-e, j) (rest / (c w))^j
  Rational ce = 1;
  for (int i = 0; i < e; ++i) ce *= c;
  Laurent lead{{{-e * w.first, -e * w.second}, 1 / ce}};
  Laurent ratio;
  for (const auto& [ex, co] : rest) ratio[{ex.first - w.first, ex.second - w.second}] = co / c;
  Laurent sum{{{0, 0}, Rational(1)}};
  Laurent term{{{0, 0}, Rational(1)}};
  Rational binom = 1;
  for (int j = 1; j < 25; ++j) {
    binom = binom * Rational(-e - (j - 1)) / Rational(j);
    term = mul(term, ratio);
    if (term.empty()) break;
    for (const auto& [ex, co] : term) sum[ex] += binom * co;
  }
  return mul(lead, sum);
}

}  // namespace

TEST_SUITE("residue") {
  TEST_CASE("orientation anchors") {
    auto reg = make_registry();
    VarIndex z1 = reg->intern("z1"), z2 = reg->intern("z2");
    auto Z1 = GradedPoly::variable(reg, z1), Z2 = GradedPoly::variable(reg, z2);
    CHECK(iterated_residue(RationalForm(GradedPoly(reg, Rational(1)), {{Z1, 1}}, {z1})).value == GradedPoly(Rational(-1)));
    CHECK(iterated_residue(RationalForm(GradedPoly(reg, Rational(1)), {{Z1, 1}, {Z2, 1}}, {z1, z2})).value ==
          GradedPoly(Rational(1)));
    // z^2 dz / z^3 and dz / z^2
    CHECK(iterated_residue(RationalForm(Z1 * Z1, {{Z1, 3}}, {z1})).value == GradedPoly(Rational(-1)));
    CHECK(iterated_residue(RationalForm(GradedPoly(reg, Rational(1)), {{Z1, 2}}, {z1})).value.is_zero());
  }

  TEST_CASE("one variable against partial fractions") {
    // Res_inf p(z) / prod (z - a_i) = -sum_i p(a_i) / prod_{j != i} (a_i - a_j).
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4), npoles(1, 4), deg(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
      auto reg = make_registry();
      VarIndex z = reg->intern("z1");
      auto Z = GradedPoly::variable(reg, z);
      std::vector<Rational> a;
      int n = npoles(rng);
      while (static_cast<int>(a.size()) < n) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        if (std::find(a.begin(), a.end(), c) == a.end()) a.push_back(c);
      }
      std::vector<Rational> coeffs;
      int d = deg(rng);
      GradedPoly p(reg);
      for (int i = 0; i <= d; ++i) {
        coeffs.push_back(Rational(num(rng)));
        p += coeffs.back() * Z.pow(static_cast<unsigned>(i));
      }
      std::vector<LinearFactor> f;
      for (const auto& ai : a) f.push_back({Z - ai, 1});
      Rational expected = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Rational pv = 0, x = 1;
        for (const auto& c : coeffs) {
          pv += c * x;
          x *= a[i];
        }
        Rational prod = 1;
        for (std::size_t j = 0; j < a.size(); ++j)
          if (j != i) prod *= a[i] - a[j];
        expected -= pv / prod;
      }
      auto got = iterated_residue(RationalForm(p, f, {z})).value;
      CHECK(got == GradedPoly(expected));
    }
  }

  TEST_CASE("two variables against a direct Laurent expansion") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> small(-2, 2), mult(1, 3), nf(1, 3), deg(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
      auto reg = make_registry();
      VarIndex z1 = reg->intern("z1"), z2 = reg->intern("z2");
      auto Z1 = GradedPoly::variable(reg, z1), Z2 = GradedPoly::variable(reg, z2);
      std::vector<LinearFactor> factors;
      Laurent series{{{0, 0}, Rational(1)}};
      int n = nf(rng);
      for (int i = 0; i < n; ++i) {
        int e = mult(rng);
        bool top = small(rng) >= 0;
        Rational c = 0;
        while (c == 0) c = Rational(small(rng));
        if (top) {
          Rational b = small(rng), k = small(rng);
          factors.push_back({c * Z2 + b * Z1 + k, e});
          Laurent rest;
          if (b != 0) rest[{1, 0}] = b;
          if (k != 0) rest[{0, 0}] = k;
          series = mul(series, inverse_power(c, {0, 1}, rest, e));
        } else {
          Rational k = small(rng);
          factors.push_back({c * Z1 + k, e});
          Laurent rest;
          if (k != 0) rest[{0, 0}] = k;
          series = mul(series, inverse_power(c, {1, 0}, rest, e));
        }
      }
      // Guarantee both variables occur in the denominator.
      factors.push_back({Z1, 1});
      factors.push_back({Z2, 1});
      series = mul(series, Laurent{{{-1, -1}, Rational(1)}});
      GradedPoly p(reg);
      Laurent lp;
      int d = deg(rng);
      for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
          Rational c = small(rng);
          if (c == 0) continue;
          p += c * Z1.pow(static_cast<unsigned>(i)) * Z2.pow(static_cast<unsigned>(j));
          lp[{i, j}] += c;
        }
      if (p.is_zero()) continue;
      series = mul(series, lp);
      Rational coeff = series.count({-1, -1}) ? series.at({-1, -1}) : Rational(0);
      auto got = iterated_residue(RationalForm(p, factors, {z1, z2})).value;
      CHECK(got == GradedPoly(coeff));  // two residues: (-1)^2 * coefficient
    }
  }

  TEST_CASE("normalization of factors") {
    auto reg = make_registry();
    VarIndex z1 = reg->intern("z1");
    auto Z = GradedPoly::variable(reg, z1);
    auto L = GradedPoly::variable(reg, "lambda1");
    // (2z - 2lambda) is made monic; the constant 1/2 moves to the numerator.
    RationalForm f(GradedPoly(reg, Rational(1)), {{Z * Rational(2) - L * Rational(2), 1}}, {z1});
    CHECK(f.factors().size() == 1);
    CHECK(f.factors()[0].poly == Z - L);
    CHECK(f.numerator() == GradedPoly(reg, Rational(1, 2)));
    // Negative multiplicity goes to the numerator.
    RationalForm g(GradedPoly(reg, Rational(1)), {{Z, -2}, {Z - L, 1}}, {z1});
    CHECK(g.numerator() == Z * Z);
    // Residue-free factors must divide the numerator.
    RationalForm h(L * Z, {{L, 1}, {Z, 2}}, {z1});
    CHECK(h.numerator() == Z);
    CHECK_THROWS_AS(RationalForm(Z, {{L, 1}, {Z, 2}}, {z1}), InvalidForm);
    // Coefficients of residue variables must be constants.
    CHECK_THROWS_AS(RationalForm(Z, {{L * Z + Rational(1), 1}}, {z1}), InvalidForm);
    // Equal factors merge.
    RationalForm m(GradedPoly(reg, Rational(1)), {{Z - L, 1}, {Z * Rational(3) - L * Rational(3), 2}}, {z1});
    CHECK(m.factors().size() == 1);
    CHECK(m.factors()[0].multiplicity == 3);
  }

  TEST_CASE("degree criterion agrees with full expansion") {
    auto reg = make_registry();
    VarIndex z1 = reg->intern("z1"), z2 = reg->intern("z2");
    auto Z1 = GradedPoly::variable(reg, z1), Z2 = GradedPoly::variable(reg, z2);
    auto L = GradedPoly::variable(reg, "lambda1");
    RationalForm f(Z1 * Z2 + L * Z1, {{Z1 - L, 2}, {Z2 - Z1, 2}, {Z2 + L, 2}}, {z1, z2});
    CHECK(vanishes_by_degree(f, 2));
    ResidueOptions full;
    full.degree_shortcut = false;
    CHECK(iterated_residue(f, full).value.is_zero());
    auto shortcut = iterated_residue(f);
    CHECK(shortcut.vanished_by_degree);
    CHECK(shortcut.value.is_zero());
    RationalForm g(Z1 * Z2, {{Z1, 2}, {Z2, 2}}, {z1, z2});
    CHECK_FALSE(vanishes_by_degree(g, 1));
    CHECK_FALSE(vanishes_by_degree(g, 2));
  }

  TEST_CASE("residue of a parameter-dependent form") {
    auto reg = make_registry();
    VarIndex z1 = reg->intern("z1");
    auto Z = GradedPoly::variable(reg, z1);
    auto a = GradedPoly::variable(reg, "lambda1"), b = GradedPoly::variable(reg, "lambda2");
    // Res z^2 / ((z - a)(z - b)) = -(a + b)
    auto r = iterated_residue(RationalForm(Z * Z, {{Z - a, 1}, {Z - b, 1}}, {z1})).value;
    CHECK(r == -(a + b));
  }

  TEST_CASE("parallel sum is deterministic") {
    auto reg = make_registry();
    VarIndex z1 = reg->intern("z1");
    auto Z = GradedPoly::variable(reg, z1);
    std::vector<RationalForm> forms;
    GradedPoly expected(reg);
    for (int i = 1; i <= 12; ++i) {
      auto L = GradedPoly::variable(reg, "lambda" + std::to_string(i));
      forms.emplace_back(Z.pow(3), std::vector<LinearFactor>{{Z - L, 2}, {Z, 2}}, std::vector<VarIndex>{z1});
      expected += iterated_residue(forms.back()).value;
    }
    setenv("ITRES_THREADS", "4", 1);
    auto a = iterated_residue_sum(forms);
    setenv("ITRES_THREADS", "1", 1);
    auto b = iterated_residue_sum(forms);
    unsetenv("ITRES_THREADS");
    CHECK(a == expected);
    CHECK(b == expected);
    CHECK(to_string(a) == to_string(b));
    CHECK_FALSE(reg->frozen());
  }

  TEST_CASE("form json round trip") {
    auto reg = make_registry();
    Json j = Json::parse(R"({"numerator": "z1*z2", "factors": [{"poly": "z1", "mult": 2}, "z2 - z1", {"poly": "z2", "mult": 2}],
                              "residue_vars": ["z1", "z2"]})");
    auto f = form_from_json(reg, j);
    auto g = form_from_json(make_registry(), to_json(f));
    CHECK(to_string(iterated_residue(f).value) == to_string(iterated_residue(g).value));
    CHECK_THROWS_AS(form_from_json(reg, Json::parse(R"({"numerator": "1"})")), ParseError);
  }
}
