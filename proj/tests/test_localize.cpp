#include "itres/localize.hpp"
#include "itres/poly_io.hpp"
#include "itres/residue.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace itres;

namespace {

std::vector<VarIndex> named(const RegistryPtr& reg, const std::string& stem, int n) {
  std::vector<VarIndex> out;
  for (int i = 1; i <= n; ++i) out.push_back(reg->intern(stem + std::to_string(i)));
  return out;
}

// Every sequence of nonempty subsets tau_i of {1..i} from bitmasks, filtered
// by the two conditions directly.
std::set<AdmissibleSequence> brute_force(int k) {
  std::set<AdmissibleSequence> out;
  AdmissibleSequence cur;
  std::function<void(int)> rec = [&](int i) {
    if (i > k) {
      std::set<std::vector<int>> distinct(cur.begin(), cur.end());
      if (distinct.size() == cur.size()) out.insert(cur);
      return;
    }
    for (int mask = 1; mask < (1 << i); ++mask) {
      std::vector<int> s;
      int sum = 0;
      for (int b = 0; b < i; ++b)
        if (mask & (1 << b)) {
          s.push_back(b + 1);
          sum += b + 1;
        }
      if (sum > i) continue;
      cur.push_back(s);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace

TEST_SUITE("localize") {
  TEST_CASE("admissible sequences against a power-set enumeration") {
    for (int k = 1; k <= 4; ++k) {
      auto seqs = admissible_sequences(k);
      std::set<AdmissibleSequence> got(seqs.begin(), seqs.end());
      CHECK(got.size() == seqs.size());
      CHECK(got == brute_force(k));
      for (const auto& s : seqs) CHECK(is_admissible(s));
      CHECK(got.count(distinguished_sequence(k)) == 1);
    }
    CHECK(admissible_sequences(2).size() == 1);
    CHECK(admissible_sequences(3).size() == 2);
    CHECK_FALSE(is_admissible({{1}, {1}}));
    CHECK_FALSE(is_admissible({{1}, {1, 2}}));
    CHECK_FALSE(is_admissible({{1}, {}}));
  }

  TEST_CASE("triples and the distinguished Euler factors") {
    auto t = residue_triples(3);
    std::vector<std::array<int, 3>> expected{{1, 1, 2}, {1, 1, 3}, {1, 2, 3}};
    CHECK(t == expected);
    CHECK(residue_triples(1).empty());
    auto reg = make_registry();
    auto z = named(reg, "z", 2);
    CHECK(distinguished_euler_factors(reg, z) == parse_poly(reg, "z1*z2*(2*z1 - z2)"));
    auto z3 = named(reg, "z", 3);
    CHECK(distinguished_euler_factor_list(reg, z3).size() == 6);
  }

  TEST_CASE("flag sum small cases") {
    auto reg = make_registry();
    auto z = named(reg, "z", 1);
    auto lam = named(reg, "lambda", 2);
    CHECK(flag_fixed_point_sum(GradedPoly(reg, Rational(1)), z, lam).is_zero());
    CHECK(flag_fixed_point_sum(parse_poly(reg, "z1"), z, lam) == GradedPoly(reg, Rational(-1)));
    CHECK(flag_fixed_point_sum(parse_poly(reg, "z1^2"), z, lam) == parse_poly(reg, "-lambda1 - lambda2"));
    CHECK_THROWS(flag_fixed_point_sum(parse_poly(reg, "z1"), named(reg, "z", 3), lam));
  }

  TEST_CASE("flag sum equals the residue") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 4);
    for (int k = 1; k <= 3; ++k)
      for (int m = k; m <= 4; ++m) {
        auto reg = make_registry();
        auto z = named(reg, "z", k);
        auto lam = named(reg, "lambda", m);
        for (int trial = 0; trial < 5; ++trial) {
          int d = deg(rng);
          GradedPoly Q(reg);
          std::function<void(int, int, GradedPoly)> rec = [&](int i, int left, GradedPoly mono) {
            if (i == k - 1) {
              Q += Rational(coef(rng)) * mono * GradedPoly::variable(reg, z[static_cast<std::size_t>(i)]).pow(static_cast<unsigned>(left));
              return;
            }
            for (int e = 0; e <= left; ++e)
              rec(i + 1, left - e, mono * GradedPoly::variable(reg, z[static_cast<std::size_t>(i)]).pow(static_cast<unsigned>(e)));
          };
          rec(0, d, GradedPoly(reg, Rational(1)));
          auto sum = flag_fixed_point_sum(Q, z, lam);
          CHECK(sum == flag_residue(Q, z, lam));

          // The reversed Vandermonde product flips the sign by (-1)^{k(k-1)/2}.
          GradedPoly num = Q;
          for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
              num *= GradedPoly::variable(reg, z[static_cast<std::size_t>(j)]) - GradedPoly::variable(reg, z[static_cast<std::size_t>(i)]);
          std::vector<LinearFactor> f;
          for (VarIndex zi : z)
            for (VarIndex l : lam) f.push_back({GradedPoly::variable(reg, l) - GradedPoly::variable(reg, zi), 1});
          auto reversed = iterated_residue(RationalForm(num, f, z)).value;
          CHECK(reversed == sum * Rational((k * (k - 1) / 2) % 2 ? -1 : 1));
        }
      }
  }

  TEST_CASE("localization on the projective line") {
    // Two fixed points, tangent weights +-(lambda_2 - lambda_1); the class
    // restricts to lambda_i^2 resp. lambda_i at the i-th point.
    auto reg = make_registry();
    auto l1 = GradedPoly::variable(reg, "lambda1"), l2 = GradedPoly::variable(reg, "lambda2");
    auto v = atiyah_bott_sum({FixedPointDatum{l1 * l1, {l2 - l1}}, FixedPointDatum{l2 * l2, {l1 - l2}}});
    REQUIRE(v.is_polynomial());
    CHECK(v.numerator == -(l1 + l2));
    auto w = atiyah_bott_sum({FixedPointDatum{l1, {l2 - l1}}, FixedPointDatum{l2, {l1 - l2}}});
    CHECK(w.numerator == GradedPoly(reg, Rational(-1)));
  }
}
