#include "itres/acceptance.hpp"

#include "itres/cli.hpp"
#include "itres/error.hpp"
#include "itres/localize.hpp"
#include "itres/mdeg.hpp"
#include "itres/multipoint.hpp"
#include "itres/residue.hpp"
#include "itres/tauint.hpp"
#include "itres/thom.hpp"

#include <cctype>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace itres {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string first_failure;
  int count = 0;

  void expect(bool cond, const std::string& what) {
    ++count;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

CriterionResult timed(int id, std::string name, double limit, const std::function<void(Check&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.limit_seconds = limit;
  Check c;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.first_failure = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.pass = c.ok && (limit <= 0 || r.seconds < limit);
  std::ostringstream d;
  if (!c.ok) {
    d << c.first_failure;
  } else {
    d << c.count << " checks";
    if (limit > 0 && r.seconds >= limit) d << ", over the time limit";
  }
  r.detail = d.str();
  return r;
}

GradedPoly V(const RegistryPtr& reg, const std::string& name) { return GradedPoly::variable(reg, name); }

std::vector<VarIndex> named(const RegistryPtr& reg, const std::string& stem, int n) {
  std::vector<VarIndex> out;
  for (int i = 1; i <= n; ++i) out.push_back(reg->intern(stem + std::to_string(i)));
  return out;
}

GradedPoly random_homogeneous(const RegistryPtr& reg, const std::vector<VarIndex>& vars, int degree, std::mt19937& rng,
                              int terms) {
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, static_cast<int>(vars.size()) - 1);
  GradedPoly p(reg);
  for (int t = 0; t < terms; ++t) {
    GradedPoly mono(reg, Rational(coef(rng)));
    for (int e = 0; e < degree; ++e) mono *= GradedPoly::variable(reg, vars[static_cast<std::size_t>(pick(rng))]);
    p += mono;
  }
  if (p.is_zero()) {
    p = GradedPoly(reg, Rational(1));
    for (int e = 0; e < degree; ++e) p *= GradedPoly::variable(reg, vars[0]);
  }
  return p;
}

// Grade of every term of a polynomial given in JSON form; false when mixed.
bool json_poly_grade(const Json& j, int expected) {
  std::vector<int> grades;
  for (const auto& v : j.at("vars")) grades.push_back(v.at("grade").get<int>());
  for (const auto& t : j.at("terms")) {
    int g = 0;
    const auto& e = t.at("exp");
    for (std::size_t i = 0; i < grades.size(); ++i) g += grades[i] * e.at(i).get<int>();
    if (g != expected) return false;
  }
  return true;
}

Json cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = cli::run(args, out, err);
  if (rc != 0) throw Error("cli failed: " + err.str());
  return Json::parse(out.str());
}

CriterionResult residue_anchors() {
  auto reg = make_registry();
  VarIndex z1 = reg->intern("z1"), z2 = reg->intern("z2");
  RationalForm one(GradedPoly(reg, Rational(1)), {{V(reg, "z1"), 1}}, {z1});
  RationalForm two(GradedPoly(reg, Rational(1)), {{V(reg, "z1"), 1}, {V(reg, "z2"), 1}}, {z1, z2});
  return timed(1, "residue anchors dz/z = -1, dz1dz2/(z1z2) = +1", 1e-3, [&](Check& c) {
    c.expect(iterated_residue(one).value == GradedPoly(Rational(-1)), "Res dz/z != -1");
    c.expect(iterated_residue(two).value == GradedPoly(Rational(1)), "Res dz1dz2/(z1z2) != 1");
  });
}

CriterionResult thom_a1() {
  return timed(2, "thom --k 2 gives c_{n-m+1}", 1.0, [](Check& c) {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 5}, {4, 7}}) {
      auto reg = make_registry();
      GradedPoly tp = thom_polynomial_morin(reg, 2, MapGeometry{m, n, -1, std::nullopt});
      c.expect(tp == V(reg, chern_name("c", n - m + 1)),
               "Tp A1 (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") = " + to_string(tp));
    }
  });
}

CriterionResult qtable_match() {
  // Transcribed in the source notation, then normalized by the parser.
  const std::vector<std::pair<int, std::string>> printed{
      {2, "1"},
      {3, "1"},
      {4, "2z_1+z_2-z_4"},
      {5, "(2z_1+z_2-z_5)(2z_1^2 +3z_1z_2-2z_1z_5+2z_2z_3-z_2z_4-z_2z_5-z_3z_4+z_4z_5)"}};
  return timed(3, "Q_2..Q_5 match the published table", 0, [&](Check& c) {
    for (const auto& [k, text] : printed) {
      // Drop the subscript marks and make juxtaposition explicit.
      std::string plain;
      for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '_') continue;
        bool joins = !plain.empty() && (std::isdigit(static_cast<unsigned char>(plain.back())) || plain.back() == ')');
        if (joins && (ch == 'z' || ch == '(')) plain += '*';
        plain += ch;
      }
      auto a = make_registry(), b = make_registry();
      std::string expected = to_string(parse_poly(a, plain));
      std::string stored = to_string(builtin_qtable().polynomial(b, k));
      c.expect(expected == stored, "Q_" + std::to_string(k) + ": " + stored + " vs " + expected);
    }
    auto r = make_registry();
    c.expect(to_string(builtin_qtable().polynomial(r, 4)) == "2*z1 + z2 - z4", "Q_4 canonical text");
  });
}

CriterionResult localization_oracle() {
  return timed(4, "flag fixed-point sum equals iterated residue (k<=3, m<=5)", 30.0, [](Check& c) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> deg(0, 4), nterms(1, 4);
    for (int k = 1; k <= 3; ++k) {
      for (int m = k; m <= 5; ++m) {
        auto reg = make_registry();
        auto z = named(reg, "z", k);
        auto lam = named(reg, "lambda", m);
        for (int trial = 0; trial < 20; ++trial) {
          GradedPoly Q = random_homogeneous(reg, z, deg(rng), rng, nterms(rng));
          GradedPoly a = flag_fixed_point_sum(Q, z, lam);
          GradedPoly b = flag_residue(Q, z, lam);
          c.expect(a == b, "k=" + std::to_string(k) + " m=" + std::to_string(m) + " Q=" + to_string(Q));
        }
      }
    }
  });
}

CriterionResult vanishing_criterion() {
  return timed(5, "degree criterion forms expand to 0", 30.0, [](Check& c) {
    std::mt19937 rng(77);
    int made = 0;
    while (made < 50) {
      auto reg = make_registry();
      std::uniform_int_distribution<int> kd(1, 3);
      int k = kd(rng);
      auto z = named(reg, "z", k);
      auto lam = named(reg, "lambda", 2);
      std::uniform_int_distribution<int> nf(1, 4), mult(1, 2), zc(-2, 2), lc(-1, 1), pickl(1, k);
      std::vector<LinearFactor> factors;
      int nfac = nf(rng);
      for (int f = 0; f < nfac; ++f) {
        GradedPoly p(reg);
        for (VarIndex v : z) p += Rational(zc(rng)) * GradedPoly::variable(reg, v);
        if (p.is_zero()) p = GradedPoly::variable(reg, z.back());
        for (VarIndex v : lam) p += Rational(lc(rng)) * GradedPoly::variable(reg, v);
        factors.push_back({p, mult(rng)});
      }
      int l = pickl(rng);
      std::vector<VarIndex> tail(z.begin() + (l - 1), z.end());
      int dq = 0;
      for (const auto& f : factors)
        if (f.poly.total_degree(tail) > 0) dq += f.multiplicity;
      int width = k - l + 1;
      int budget = dq - width - 1;  // numerator degree in the tail must stay <= budget
      if (budget < 0) {
        factors.push_back({GradedPoly::variable(reg, z.back()), -budget});
        budget = 0;
      }
      std::uniform_int_distribution<int> nd(0, budget);
      GradedPoly num = random_homogeneous(reg, tail, nd(rng), rng, 2);
      std::vector<VarIndex> head(z.begin(), z.begin() + (l - 1));
      head.insert(head.end(), lam.begin(), lam.end());
      num *= random_homogeneous(reg, head, std::uniform_int_distribution<int>(0, 2)(rng), rng, 2);
      RationalForm form(num, factors, z);
      if (!vanishes_by_degree(form, l)) continue;  // normalization merged factors; draw again
      ++made;
      ResidueOptions full;
      full.degree_shortcut = false;
      c.expect(iterated_residue(form, full).value.is_zero(), "form " + to_json(form).dump());
    }
  });
}

CriterionResult shift_identity() {
  return timed(6, "R_q(m,n) = Tp_{A_{q-1}}(m,n-1), q<=4", 120.0, [](Check& c) {
    for (int q = 1; q <= 4; ++q)
      for (int m : {2, 3, 4})
        for (int l : {1, 2, 3}) {
          int n = m + l;
          auto reg = make_registry();
          GradedPoly r = residual_polynomial(reg, q, MapGeometry{m, n, -1, std::nullopt});
          GradedPoly t = thom_polynomial_morin(reg, q, MapGeometry{m, n - 1, -1, std::nullopt});
          c.expect(r == t, "q=" + std::to_string(q) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
        }
  });
}

CriterionResult r2_identification() {
  return timed(7, "R_2 = c_{n-m}", 0, [](Check& c) {
    for (int m : {1, 2, 3, 4})
      for (int l : {1, 2, 3, 4}) {
        auto reg = make_registry();
        GradedPoly r = residual_polynomial(reg, 2, MapGeometry{m, m + l, -1, std::nullopt});
        c.expect(r == V(reg, chern_name("c", l)), "R_2 for m=" + std::to_string(m) + " n-m=" + std::to_string(l));
      }
  });
}

CriterionResult multipoint_shape() {
  return timed(8, "k=3 target class pieces and normalization constants", 0, [](Check& c) {
    auto rep = conventions_report(3);
    std::map<std::vector<int>, Integer> expected{{{3}, 1}, {{1, 2}, 6}, {{1, 1, 1}, 6}};
    c.expect(rep.entries.size() == expected.size(), "report has three entries");
    for (const auto& e : rep.entries) {
      c.expect(expected.count(e.sizes) && expected.at(e.sizes) == e.sieve_coefficient, "sieve constant");
      c.expect(e.display_coefficient == 1, "display coefficient");
    }
    c.expect(rep.target_normalization == 6 && rep.source_normalization == 2, "normalizations 3! and 2!");
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 5}}) {
      auto reg = make_registry();
      MapGeometry g{m, n, -1, std::nullopt};
      MapGeometry shifted{m, n - 1, -1, std::nullopt};
      int codim = n - m;
      // S_q = f_* Tp^{m -> n-1}_{A_{q-1}}
      for (int q = 1; q <= 3; ++q)
        c.expect(pushforward_residual(reg, q, g, builtin_qtable()) ==
                     pushforward_symbol(thom_polynomial_morin(reg, q, shifted), codim),
                 "S_" + std::to_string(q) + " is the pushed-forward shifted Thom polynomial");
      MultipointClass assembled(reg, codim);
      for (const auto& e : rep.entries)
        assembled += sieve_piece(reg, e.sizes, g).scaled(Rational(e.sieve_coefficient * e.display_coefficient));
      c.expect(assembled == multipoint_target_class(reg, 3, g), "n_3 = S_3 + 6 S_1 S_2 + 6 S_1^3");
    }
  });
}

CriterionResult tauint_specialization() {
  return timed(9, "general residue sum equals the two- and three-point formulas (D = m)", 120.0, [](Check& c) {
    for (int kp1 : {2, 3})
      for (int m : {2, 3}) {
        auto reg = make_registry();
        IntegralSpec spec;
        spec.k_plus_1 = kp1;
        spec.m = m;
        spec.r = m;
        spec.D = m;
        auto general = tautological_integral(reg, spec).terms;
        auto special = kp1 == 2 ? two_point_formula(reg, spec) : three_point_formula(reg, spec);
        std::string tag = "k+1=" + std::to_string(kp1) + " m=" + std::to_string(m);
        c.expect(general.size() == special.size(), tag + ": number of partition types");
        for (const auto& g : general) {
          bool found = false;
          for (const auto& s : special) {
            if (s.sizes != g.sizes) continue;
            found = true;
            c.expect(s.multiplicity == g.multiplicity, tag + ": multiplicity");
            c.expect(s.integrand == g.integrand, tag + ": integrand for a block type");
          }
          c.expect(found, tag + ": missing type");
        }
      }
  });
}

CriterionResult multidegree_checks() {
  return timed(10, "multidegree anchors and degree bound", 0, [](Check& c) {
    auto reg = make_registry();
    auto eta = [&](int i) { return V(reg, "eta" + std::to_string(i)); };
    {
      MonomialIdeal I({{1, 0, 0}, {0, 0, 1}}, {eta(1), eta(2), eta(3)});
      c.expect(multidegree(I) == eta(1) * eta(3), "(x1, x3)");
    }
    {
      MonomialIdeal I({{2, 0}}, {eta(1), eta(2)});
      c.expect(multidegree(I) == Rational(2) * eta(1), "(x^2)");
    }
    {
      MonomialIdeal I({{2, 0}, {1, 1}}, {eta(1), eta(2)});
      c.expect(multidegree(I) == eta(1), "(x^2, xy)");
    }
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> nv(1, 4), ng(1, 4), ex(0, 2), co(-1, 1);
    auto lam = named(reg, "lambda", 3);
    for (int trial = 0; trial < 50; ++trial) {
      int n = nv(rng);
      std::vector<ExponentVector> gens;
      int g = ng(rng);
      for (int i = 0; i < g; ++i) {
        ExponentVector e(static_cast<std::size_t>(n));
        for (auto& x : e) x = ex(rng);
        gens.push_back(e);
      }
      std::vector<GradedPoly> w;
      for (int i = 0; i < n; ++i) {
        GradedPoly p(reg);
        for (VarIndex l : lam) p += Rational(co(rng)) * GradedPoly::variable(reg, l);
        if (p.is_zero()) p = GradedPoly::variable(reg, lam[0]);
        w.push_back(p);
      }
      MonomialIdeal I(gens, w);
      if (I.is_unit()) continue;
      GradedPoly md = multidegree(I);
      for (VarIndex l : lam) {
        int bound = 0;
        for (const auto& p : w) bound += p.contains(l) ? 1 : 0;
        c.expect(md.degree_in(l) <= bound, "degree bound on a random ideal");
      }
    }
  });
}

CriterionResult grading_audit() {
  return timed(11, "grading audit through the CLI", 0, [](Check& c) {
    auto S = [](int v) { return std::to_string(v); };
    for (int k = 1; k <= 4; ++k)
      for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {2, 4}, {3, 4}}) {
        Json t = cli_json({"thom", "--k", S(k), "--m", S(m), "--n", S(n), "--json"});
        c.expect(json_poly_grade(t, thom_grade(k, m, n)), "thom grade k=" + S(k));
        Json r = cli_json({"residual", "--q", S(k), "--m", S(m), "--n", S(n), "--json"});
        c.expect(json_poly_grade(r, residual_grade(k, m, n)), "residual grade q=" + S(k));
      }
    for (int k = 1; k <= 3; ++k)
      for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}}) {
        for (std::string side : {"target", "source"}) {
          Json j = cli_json({"multipoint", "--k", S(k), "--m", S(m), "--n", S(n), "--side", side, "--json"});
          int codim = j.at("codim").get<int>();
          int want = side == "target" ? k * codim : (k - 1) * codim;
          for (const auto& term : j.at("terms")) {
            int sym = 0;
            for (const auto& s : term.at("symbols")) {
              sym += codim;
              const auto& J = s.at("J");
              for (std::size_t i = 0; i < J.size(); ++i) sym += static_cast<int>(i + 1) * J.at(i).get<int>();
            }
            c.expect(json_poly_grade(term.at("coefficient"), want - sym), "multipoint grade k=" + S(k) + " " + side);
          }
        }
      }
    for (int k = 0; k <= 2; ++k)
      for (int m : {1, 2}) {
        for (int r : {m, m + 1}) {
          Json j = cli_json({"tauint", "--k", S(k), "--m", S(m), "--r", S(r), "--D", S(m), "--json"});
          for (const auto& term : j.at("terms")) {
            int s = static_cast<int>(term.at("sizes").size());
            c.expect(json_poly_grade(term.at("integrand"), m * s), "tauint grade k=" + S(k) + " m=" + S(m));
          }
        }
      }
    Json md = cli_json({"mdeg", "--gen", "2,0,0", "--gen", "0,1,1", "--json"});
    c.expect(json_poly_grade(md, 2), "mdeg grade equals codimension");
  });
}

CriterionResult truncation_stability() {
  return timed(12, "raising the truncation by 3 leaves low grades unchanged", 0, [](Check& c) {
    auto stable = [&](const std::function<GradedPoly(const RegistryPtr&, int)>& f, int D, const std::string& what) {
      auto reg = make_registry();
      GradedPoly a = f(reg, D), b = f(reg, D + 3);
      for (int g = 0; g <= D; ++g) c.expect(a.grade_part(g) == b.grade_part(g), what);
    };
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 5}, {4, 7}})
      stable([&](const RegistryPtr& reg, int D) { return thom_polynomial_morin(reg, 2, MapGeometry{m, n, D, std::nullopt}); },
             thom_grade(2, m, n), "Tp A1 truncation");
    for (int q = 2; q <= 4; ++q)
      for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}}) {
        stable([&](const RegistryPtr& reg, int D) { return residual_polynomial(reg, q, MapGeometry{m, n, D, std::nullopt}); },
               residual_grade(q, m, n), "R_q truncation");
        stable([&](const RegistryPtr& reg, int D) { return thom_polynomial_morin(reg, q, MapGeometry{m, n - 1, D, std::nullopt}); },
               thom_grade(q, m, n - 1), "shifted Tp truncation");
      }
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}})
      stable([&](const RegistryPtr& reg, int D) { return residual_polynomial(reg, 2, MapGeometry{m, n, D, std::nullopt}); },
             residual_grade(2, m, n), "R_2 truncation");
  });
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  return {residue_anchors(),  thom_a1(),           qtable_match(),          localization_oracle(),
          vanishing_criterion(), shift_identity(), r2_identification(),     multipoint_shape(),
          tauint_specialization(), multidegree_checks(), grading_audit(), truncation_stability()};
}

bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    out << (r.pass ? "PASS" : "FAIL") << " " << std::setw(2) << r.id << "  " << r.name << "  [" << r.detail << "; "
        << std::fixed << std::setprecision(r.seconds < 0.01 ? 6 : 3) << r.seconds << " s";
    if (r.limit_seconds > 0) out << " < " << std::defaultfloat << r.limit_seconds << " s";
    out << std::defaultfloat << "]\n";
  }
  return all;
}

}  // namespace itres
