#include "itres/error.hpp"
#include "itres/tauint.hpp"

#include <doctest.h>

using namespace itres;

namespace {

IntegralSpec spec_of(int points, int m, int r, IntegralMode mode = IntegralMode::absolute) {
  IntegralSpec s;
  s.k_plus_1 = points;
  s.m = m;
  s.r = r;
  s.mode = mode;
  return s;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Ordered (k+1)-tuples of distinct points among N: N (N-1) ... (N-k).
Integer falling(long N, int points) {
  Integer f = 1;
  for (int i = 0; i < points; ++i) f *= N - i;
  return f;
}

}  // namespace

TEST_SUITE("tauint") {
  TEST_CASE("partition types and copy order") {
    auto t3 = partition_types(3);
    REQUIRE(t3.size() == 3);
    CHECK(t3[0].first == std::vector<int>{3});
    CHECK(t3[1] == std::pair<std::vector<int>, Integer>{{2, 1}, 3});
    CHECK(t3[2].second == 1);
    Integer bell = 0;
    for (const auto& [sizes, count] : partition_types(5)) bell += count;
    CHECK(bell == 52);
    auto t4 = partition_types(4);
    CHECK(t4.size() == 5);
    CHECK(t4[2] == std::pair<std::vector<int>, Integer>{{2, 2}, 3});

    auto order = copy_order({{1}, {2, 3}});
    CHECK(order == std::vector<std::vector<int>>{{2, 3}, {1}});
    CHECK(copy_order({{1, 4}, {2}, {3, 5}}) == std::vector<std::vector<int>>{{1, 4}, {3, 5}, {2}});
  }

  TEST_CASE("hypotheses and validation") {
    CHECK(hypothesis_warnings(spec_of(3, 2, 2)).empty());
    CHECK_FALSE(hypothesis_warnings(spec_of(3, 1, 1)).empty());  // k > m
    CHECK_FALSE(hypothesis_warnings(spec_of(2, 3, 2)).empty());  // m > r
    CHECK_FALSE(hypothesis_warnings(spec_of(3, 2, 3)).empty());  // r(k-1) > (m-1)k
    auto s = spec_of(2, 2, 2);
    s.d = 3;
    CHECK_FALSE(hypothesis_warnings(s).empty());
    CHECK_THROWS_AS(validate(spec_of(0, 2, 2)), ValidationError);
    CHECK_THROWS_AS(validate(spec_of(2, 0, 2)), ValidationError);
    CHECK_NOTHROW(validate(spec_of(2, 2, 2)));
  }

  TEST_CASE("all singletons leave Phi unchanged") {
    auto reg = make_registry();
    auto s = spec_of(2, 1, 1);
    auto p = emit_integrand(reg, s, {{1}, {2}});
    CHECK(p == parse_poly(reg, "theta1[1]*theta1[2]"));
    auto term = build_term(reg, s, {{1}, {2}});
    CHECK(term.form.residue_vars().empty());
    CHECK(term.orientation == 1);
  }

  TEST_CASE("deepest two point term in a low truncation") {
    // Res Phi(V + V(z)) s_M(1/z) dz / z^{m+1} for m = r = 1, D = m:
    // Phi = theta (theta + z), s_M(1/z) = 1 - cM_1/z.
    auto reg = make_registry();
    auto s = spec_of(2, 1, 1);
    s.D = 1;
    auto p = emit_integrand(reg, s, {{1, 2}});
    // The form carries the block sign: -(theta^2 + theta z)(1 - cM_1/z)/z^2
    // has z^{-1} coefficient -theta, so its residue is theta, and the
    // orientation factor -1 gives -theta.
    CHECK(p == parse_poly(reg, "-theta1[1]"));
  }

  TEST_CASE("integrands are homogeneous of grade m*s") {
    for (int points = 2; points <= 3; ++points)
      for (int m = 1; m <= 3; ++m) {
        auto reg = make_registry();
        auto s = spec_of(points, m, m);
        for (const auto& alpha : set_partitions(points)) {
          auto p = emit_integrand(reg, s, alpha);
          if (p.is_zero()) continue;
          REQUIRE(p.grade().has_value());
          CHECK(*p.grade() == m * static_cast<int>(alpha.size()));
        }
      }
  }

  TEST_CASE("integrand depends on the partition only through its type") {
    auto reg = make_registry();
    auto s = spec_of(3, 2, 2);
    auto a = emit_integrand(reg, s, {{1, 2}, {3}});
    CHECK(emit_integrand(reg, s, {{1, 3}, {2}}) == a);
    CHECK(emit_integrand(reg, s, {{1}, {2, 3}}) == a);
    // Swapping the copies of equal size blocks.
    auto all = emit_integrand(reg, s, {{1}, {2}, {3}});
    auto swapped = all.substitute({{reg->require("theta1[1]"), parse_poly(reg, "theta1[2]")},
                                   {reg->require("theta1[2]"), parse_poly(reg, "theta1[1]")},
                                   {reg->require("theta2[1]"), parse_poly(reg, "theta2[2]")},
                                   {reg->require("theta2[2]"), parse_poly(reg, "theta2[1]")}});
    CHECK(swapped == all);
  }

  TEST_CASE("general sum agrees with the two and three point formulas") {
    for (int m = 1; m <= 3; ++m) {
      auto reg = make_registry();
      auto s = spec_of(2, m, m);
      s.D = m;
      auto general = tautological_integral(reg, s);
      auto direct = two_point_formula(reg, s);
      REQUIRE(general.terms.size() == direct.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(general.terms[i].sizes == direct[i].sizes);
        CHECK(general.terms[i].multiplicity == direct[i].multiplicity);
        CHECK(general.terms[i].integrand == direct[i].integrand);
      }
    }
    for (int m = 2; m <= 3; ++m) {
      auto reg = make_registry();
      auto s = spec_of(3, m, m);
      s.D = m;
      auto general = tautological_integral(reg, s);
      auto direct = three_point_formula(reg, s);
      REQUIRE(general.terms.size() == direct.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(general.terms[i].sizes == direct[i].sizes);
        CHECK(general.terms[i].integrand == direct[i].integrand);
      }
    }
  }

  TEST_CASE("counting points of a zero-dimensional zero locus") {
    // On M = P^m with V = O(a_1) + ... + O(a_m), c_top(V^[k+1]) counts the
    // length k+1 subschemes of the N = prod a_i reduced zeros of a section,
    // so (k+1)! times the integral is N (N-1) ... (N-k). Per type, the
    // residue terms reproduce this once a block of size b is weighted by
    // (b-1)!, the Moebius value of the partition lattice; for b <= 2 that
    // weight is 1 and the plain sum is already the count.
    struct Case {
      int points, m;
      std::vector<long> a;
    };
    std::vector<Case> cases{{2, 1, {3}}, {2, 1, {5}}, {2, 2, {2, 3}}, {3, 1, {4}}, {3, 2, {2, 3}}, {3, 2, {1, 1}}};
    for (const auto& c : cases) {
      auto reg = make_registry();
      auto s = spec_of(c.points, c.m, c.m);
      SplitModelPairing pairing(c.a);
      auto res = tautological_integral(reg, s, &pairing);
      long N = 1;
      for (long a : c.a) N *= a;
      Rational weighted = 0;
      for (const auto& t : res.terms) {
        REQUIRE(t.value.has_value());
        Integer w = t.multiplicity;
        for (int b : t.sizes) w *= factorial(b - 1);
        weighted += Rational(w) * *t.value;
      }
      CHECK(weighted == Rational(falling(N, c.points)));
      if (c.points == 2) CHECK(*res.value == Rational(falling(N, 2)));
    }
    // The unweighted three point sum on P^2 with O(2) + O(3).
    auto reg = make_registry();
    SplitModelPairing pairing({2, 3});
    CHECK(*tautological_integral(reg, spec_of(3, 2, 2), &pairing).value == 114);
  }

  TEST_CASE("single point is the Euler number of V") {
    auto reg = make_registry();
    SplitModelPairing pairing({2, 5});
    auto res = tautological_integral(reg, spec_of(1, 2, 2), &pairing);
    REQUIRE(res.value.has_value());
    CHECK(*res.value == 10);
  }

  TEST_CASE("table and split model pairings agree") {
    for (int points = 1; points <= 3; ++points) {
      auto reg = make_registry();
      SplitModelPairing split({2, 3});
      TablePairing table(split.table(2));
      CHECK(table.size() > 0);
      auto a = tautological_integral(reg, spec_of(points, 2, 2), &split);
      auto b = tautological_integral(reg, spec_of(points, 2, 2), &table);
      REQUIRE(a.value.has_value());
      REQUIRE(b.value.has_value());
      CHECK(*a.value == *b.value);
      for (std::size_t i = 0; i < a.terms.size(); ++i) CHECK(*a.terms[i].value == *b.terms[i].value);
    }
  }

  TEST_CASE("table pairing keys and errors") {
    CHECK(monomial_key({{"cV_1[2]", 1}, {"cM_1[2]", 2}}) == "cM_1^2*cV_1");
    TablePairing partial(Json::parse(R"({"cM_1": 3})"));
    auto reg = make_registry();
    CHECK_THROWS(tautological_integral(reg, spec_of(1, 1, 1), &partial));
    CHECK_THROWS(TablePairing(Json::parse(R"([1, 2])")));
    CHECK_THROWS(TablePairing::from_file("/nonexistent/pairing.json"));
  }

  TEST_CASE("mismatched degree pairs to zero") {
    auto reg = make_registry();
    auto s = spec_of(2, 2, 2);
    s.d = 3;
    SplitModelPairing pairing({2, 3});
    auto res = tautological_integral(reg, s, &pairing);
    CHECK_FALSE(res.warnings.empty());
    REQUIRE(res.value.has_value());
    CHECK(*res.value == 0);
  }

  TEST_CASE("equivariant terms map to absolute terms under Chern-Weil") {
    for (int points = 2; points <= 3; ++points) {
      int m = 2;
      auto reg = make_registry();
      auto abs = spec_of(points, m, m);
      auto eq = spec_of(points, m, m, IntegralMode::equivariant);
      for (const auto& alpha : set_partitions(points)) {
        int s = static_cast<int>(alpha.size());
        auto e = emit_integrand(reg, eq, alpha);
        auto a = emit_integrand(reg, abs, alpha);
        CHECK(chern_weil(e, reg, eq, s) == a);
      }
    }
  }

  TEST_CASE("equivariant mode with a split pairing matches absolute mode") {
    auto reg = make_registry();
    SplitModelPairing pairing({2, 3});
    auto a = tautological_integral(reg, spec_of(2, 2, 2), &pairing);
    auto e = tautological_integral(reg, spec_of(2, 2, 2, IntegralMode::equivariant), &pairing);
    REQUIRE(a.value.has_value());
    REQUIRE(e.value.has_value());
    CHECK(*a.value == *e.value);
  }

  TEST_CASE("first residue vanishing degree audit") {
    for (int k = 2; k <= 3; ++k)
      for (int m = k; m <= 4; ++m)
        for (int r = m; r <= m + 2; ++r) {
          auto reg = make_registry();
          auto form = degree_audit_form(reg, k, m, r);
          bool strict = r * (k - 1) < (m - 1) * k;
          bool certified = vanishes_by_degree(form, 1);
          if (strict) {
            CHECK(certified);
            ResidueOptions full;
            full.degree_shortcut = false;
            CHECK(iterated_residue(form, full).value.is_zero());
          }
        }
  }
}
