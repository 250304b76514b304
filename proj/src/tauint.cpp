#include "itres/tauint.hpp"

#include "itres/error.hpp"
#include "itres/localize.hpp"
#include "itres/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

namespace itres {

namespace {

GradedPoly var(const RegistryPtr& reg, VarIndex v) { return GradedPoly::variable(reg, v); }

// Splits "name[t]" into ("name", t); t = 0 when untagged.
std::pair<std::string, int> split_copy(const std::string& name) {
  if (name.empty() || name.back() != ']') return {name, 0};
  auto open = name.rfind('[');
  if (open == std::string::npos) return {name, 0};
  return {name.substr(0, open), std::stoi(name.substr(open + 1, name.size() - open - 2))};
}

// Representative partition of {1..n} with the given block sizes in copy order.
SetPartition representative(const std::vector<int>& sizes) {
  SetPartition p;
  int next = 1;
  for (int b : sizes) {
    std::vector<int> block;
    for (int i = 0; i < b; ++i) block.push_back(next++);
    p.push_back(block);
  }
  return p;
}

}  // namespace

void validate(const IntegralSpec& spec) {
  if (spec.k_plus_1 < 1) throw ValidationError("tauint: the number of points k+1 must be at least 1");
  if (spec.m < 1) throw ValidationError("tauint: dim M must be at least 1");
  if (spec.r < 1) throw ValidationError("tauint: rank V must be at least 1");
  if (spec.d < -1) throw ValidationError("tauint: Chern degree must be nonnegative");
  if (spec.D < -1) throw ValidationError("tauint: truncation D must be nonnegative");
}

std::vector<std::string> hypothesis_warnings(const IntegralSpec& spec) {
  std::vector<std::string> w;
  int k = spec.k(), m = spec.m, r = spec.r;
  if (k > m) w.push_back("hypothesis k <= m fails (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")");
  if (m > r) w.push_back("hypothesis m <= r fails (m=" + std::to_string(m) + ", r=" + std::to_string(r) + ")");
  if (k > 1 && static_cast<long>(r) * (k - 1) > static_cast<long>(m - 1) * k)
    w.push_back("hypothesis r <= (m-1)k/(k-1) fails (r=" + std::to_string(r) + ", bound " +
                std::to_string(m - 1) + "*" + std::to_string(k) + "/" + std::to_string(k - 1) + ")");
  int d = spec.degree();
  int dim = spec.k_plus_1 * m;
  if (spec.mode == IntegralMode::absolute) {
    if (d != dim)
      w.push_back("Chern degree d=" + std::to_string(d) + " differs from dim GHilb = (k+1)m = " + std::to_string(dim) +
                  "; outside stated hypotheses, the paired integral is 0");
  } else if (d < dim || d > spec.k_plus_1 * r) {
    w.push_back("Chern degree d=" + std::to_string(d) + " outside (k+1)m <= d <= (k+1)r");
  }
  return w;
}

CopyVars copy_vars(const RegistryPtr& reg, const IntegralSpec& spec, int copy, int block_size) {
  CopyVars cv;
  for (int l = 1; l <= spec.r; ++l) cv.theta.push_back(reg->intern(with_copy(root_name(l), copy)));
  for (int j = 1; j < block_size; ++j) cv.z.push_back(reg->intern(with_copy(residue_name(j), copy)));
  if (spec.mode == IntegralMode::equivariant) {
    for (int j = 1; j <= spec.m; ++j) cv.lambda.push_back(reg->intern(with_copy(weight_name(j), copy)));
  } else {
    for (int i = 1; i <= spec.m; ++i) cv.cM.push_back(reg->intern(with_copy(chern_name("cM", i), copy)));
  }
  return cv;
}

std::vector<std::vector<int>> copy_order(const SetPartition& alpha) {
  auto blocks = alpha;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return blocks;
}

IntegrandTerm build_term(const RegistryPtr& reg, const IntegralSpec& spec, const SetPartition& alpha,
                         const QTable& table) {
  validate(spec);
  int total = 0;
  for (const auto& b : alpha) {
    if (b.empty()) throw ValidationError("tauint: empty block in partition");
    total += static_cast<int>(b.size());
  }
  if (total != spec.k_plus_1) throw ValidationError("tauint: partition does not cover k+1 points");

  auto blocks = copy_order(alpha);
  for (const auto& b : blocks)
    if (!table.has(static_cast<int>(b.size()) - 1) && b.size() > 1) throw QTableExhausted(static_cast<int>(b.size()) - 1);

  const int D = spec.truncation();
  std::vector<CopyVars> copies;
  std::vector<GradedPoly> roots;
  GradedPoly num(reg, Rational(1));
  std::vector<LinearFactor> factors;
  std::vector<VarIndex> residue_vars;
  Rational orientation = 1;

  for (std::size_t t = 0; t < blocks.size(); ++t) {
    int b = static_cast<int>(blocks[t].size());
    CopyVars cv = copy_vars(reg, spec, static_cast<int>(t) + 1, b);
    for (VarIndex th : cv.theta) roots.push_back(var(reg, th));
    for (VarIndex z : cv.z)
      for (VarIndex th : cv.theta) roots.push_back(var(reg, th) + var(reg, z));

    if (b > 1) {
      GradedPoly block = table.polynomial(reg, b - 1, cv.z);
      if ((b - 1) % 2 == 1) {
        block = -block;
        orientation = -orientation;
      }
      for (std::size_t i = 0; i < cv.z.size(); ++i)
        for (std::size_t j = i + 1; j < cv.z.size(); ++j) block *= var(reg, cv.z[i]) - var(reg, cv.z[j]);
      num *= block;

      if (spec.mode == IntegralMode::absolute) {
        ChernSeries cM = symbolic_series(reg, "cM", D, spec.m, static_cast<int>(t) + 1);
        SegreSeries sM = series_invert(cM);
        for (VarIndex z : cv.z) {
          num *= series_at_inverse(sM, z).numerator;
          factors.push_back({var(reg, z), spec.m + 1 + D});
        }
      } else {
        for (VarIndex z : cv.z) {
          factors.push_back({var(reg, z), 1});
          for (VarIndex l : cv.lambda) factors.push_back({var(reg, l) - var(reg, z), 1});
        }
      }
      auto zv = [&](int i) { return var(reg, cv.z[static_cast<std::size_t>(i - 1)]); };
      for (const auto& [i, j, l] : residue_triples(b - 1)) factors.push_back({zv(i) + zv(j) - zv(l), 1});
      residue_vars.insert(residue_vars.end(), cv.z.begin(), cv.z.end());
    }
    copies.push_back(std::move(cv));
  }
  num *= sigma_d(roots, spec.degree());
  return IntegrandTerm{alpha, blocks, std::move(copies), RationalForm(std::move(num), factors, std::move(residue_vars)),
                       orientation};
}

GradedPoly emit_integrand(const RegistryPtr& reg, const IntegralSpec& spec, const SetPartition& alpha,
                          const QTable& table) {
  auto term = build_term(reg, spec, alpha, table);
  return term.orientation * iterated_residue(term.form).value;
}

std::string monomial_key(std::vector<std::pair<std::string, int>> factors) {
  std::map<std::string, int> merged;
  for (auto& [name, e] : factors)
    if (e != 0) merged[split_copy(name).first] += e;
  std::string key;
  for (const auto& [name, e] : merged) {
    if (!key.empty()) key += "*";
    key += name;
    if (e != 1) key += "^" + std::to_string(e);
  }
  return key.empty() ? "1" : key;
}

TablePairing::TablePairing(const Json& table) {
  if (!table.is_object()) throw ParseError("pairing table must be a JSON object {monomial: value}");
  for (const auto& [text, value] : table.items()) {
    auto scratch = make_registry();
    GradedPoly mono = parse_poly(scratch, text);
    if (mono.size() != 1) throw ParseError("pairing key '" + text + "' is not a single monomial");
    const auto& [m, c] = *mono.terms().begin();
    if (c != 1) throw ParseError("pairing key '" + text + "' must have coefficient 1");
    std::vector<std::pair<std::string, int>> f;
    for (const auto& [v, e] : m) {
      const auto& name = scratch->at(v).name;
      auto base = split_copy(name).first;
      if (base.rfind("cM_", 0) != 0 && base.rfind("cV_", 0) != 0)
        throw ParseError("pairing key '" + text + "' may only use cM_i and cV_j");
      f.emplace_back(name, e);
    }
    Rational val;
    if (value.is_string()) {
      val = parse_rational(value.get<std::string>());
    } else if (value.is_number_integer()) {
      val = Rational(value.get<long>());
    } else {
      throw ParseError("pairing value for '" + text + "' must be an integer or a rational string");
    }
    values_[monomial_key(f)] = val;
  }
}

TablePairing TablePairing::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open pairing file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw ParseError("pairing file '" + path + "': " + ex.what());
  }
  return TablePairing(j);
}

GradedPoly roots_to_classes(const GradedPoly& p, const RegistryPtr& reg, const IntegralSpec& spec, int copies) {
  GradedPoly out = p;
  for (int t = 1; t <= copies; ++t) {
    std::vector<VarIndex> roots, classes;
    for (int l = 1; l <= spec.r; ++l) {
      auto v = reg->find(with_copy(root_name(l), t));
      if (!v) break;
      roots.push_back(*v);
    }
    if (roots.empty()) continue;
    for (int i = 1; i <= spec.r; ++i) classes.push_back(reg->intern(with_copy(chern_name("cV", i), t)));
    out = express_in_chern(out, roots, classes);
  }
  return out;
}

Rational TablePairing::pair(const GradedPoly& p, const IntegralSpec& spec, int copies) const {
  const auto& reg = p.registry();
  if (!reg) return copies == 0 ? p.constant_term() : Rational(0);
  GradedPoly q = roots_to_classes(p, reg, spec, copies);
  Rational total = 0;
  for (const auto& [mono, c] : q.terms()) {
    std::vector<std::vector<std::pair<std::string, int>>> per(static_cast<std::size_t>(copies));
    std::vector<int> grade(static_cast<std::size_t>(copies), 0);
    bool keep = true;
    for (const auto& [v, e] : mono) {
      const auto& info = reg->at(v);
      auto [base, t] = split_copy(info.name);
      if (t < 1 || t > copies) throw Error("pairing: variable '" + info.name + "' has no copy in 1.." + std::to_string(copies));
      if (info.cls != VarClass::chern_class)
        throw Error("pairing: variable '" + info.name + "' is not a Chern class of M or V");
      per[static_cast<std::size_t>(t - 1)].emplace_back(info.name, e);
      grade[static_cast<std::size_t>(t - 1)] += info.grade * e;
    }
    for (int g : grade) keep = keep && g == spec.m;
    if (!keep) continue;
    Rational prod = c;
    for (auto& f : per) {
      auto key = monomial_key(f);
      auto it = values_.find(key);
      if (it == values_.end()) throw Error("pairing undefined on monomial '" + key + "'");
      prod *= it->second;
    }
    total += prod;
  }
  return total;
}

Rational SplitModelPairing::pair(const GradedPoly& p, const IntegralSpec& spec, int copies) const {
  const auto& reg = p.registry();
  if (!reg) return copies == 0 ? p.constant_term() : Rational(0);
  if (static_cast<int>(a_.size()) != spec.r)
    throw ValidationError("split model: expected " + std::to_string(spec.r) + " line bundle degrees");
  std::vector<GradedPoly> a_roots;
  std::map<VarIndex, GradedPoly> sub;
  std::vector<VarIndex> h;
  for (int t = 1; t <= copies; ++t) {
    VarIndex hv = reg->intern(with_copy("h", t), VarClass::formal, 1);
    h.push_back(hv);
    GradedPoly H = var(reg, hv);
    std::vector<GradedPoly> roots;
    for (int l = 1; l <= spec.r; ++l) {
      roots.push_back(Rational(a_[static_cast<std::size_t>(l - 1)]) * H);
      if (auto v = reg->find(with_copy(root_name(l), t))) sub[*v] = roots.back();
    }
    auto e = elementary_symmetric(roots, spec.r);
    for (int i = 1; i <= spec.r; ++i)
      if (auto v = reg->find(with_copy(chern_name("cV", i), t))) sub[*v] = e[static_cast<std::size_t>(i)];
    for (int i = 1; i <= spec.m; ++i)
      if (auto v = reg->find(with_copy(chern_name("cM", i), t))) sub[*v] = Rational(binomial(spec.m + 1, i)) * H.pow(static_cast<unsigned>(i));
  }
  for (VarIndex v : p.variables()) {
    if (!sub.count(v)) throw Error("split model: cannot evaluate variable '" + reg->at(v).name + "'");
  }
  GradedPoly q = p.substitute(sub);
  for (VarIndex hv : h) q = q.coefficient(hv, spec.m);
  return q.constant_term();
}

Json SplitModelPairing::table(int m) const {
  int r = static_cast<int>(a_.size());
  auto reg = make_registry();
  GradedPoly H = GradedPoly::variable(reg, reg->intern("h", VarClass::formal, 1));
  std::vector<GradedPoly> roots;
  for (long a : a_) roots.push_back(Rational(a) * H);
  auto e = elementary_symmetric(roots, r);
  // (class name, grade, value coefficient of h^grade)
  std::vector<std::tuple<std::string, int, Rational>> gens;
  for (int i = 1; i <= m; ++i) gens.emplace_back(chern_name("cM", i), i, Rational(binomial(m + 1, i)));
  for (int j = 1; j <= r; ++j) gens.emplace_back(chern_name("cV", j), j, e[static_cast<std::size_t>(j)].coefficient(reg->require("h"), j).constant_term());
  Json out = Json::object();
  std::vector<int> exps(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == gens.size()) {
      if (left != 0) return;
      std::vector<std::pair<std::string, int>> f;
      Rational val = 1;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!exps[g]) continue;
        f.emplace_back(std::get<0>(gens[g]), exps[g]);
        for (int x = 0; x < exps[g]; ++x) val *= std::get<2>(gens[g]);
      }
      out[monomial_key(f)] = to_string(val);
      return;
    }
    int g = std::get<1>(gens[i]);
    for (int e = 0; e * g <= left; ++e) {
      exps[i] = e;
      rec(i + 1, left - e * g);
    }
    exps[i] = 0;
  };
  rec(0, m);
  return out;
}

GradedPoly chern_weil(const GradedPoly& p, const RegistryPtr& reg, const IntegralSpec& spec, int copies) {
  GradedPoly out = p;
  for (int t = 1; t <= copies; ++t) {
    std::vector<VarIndex> lambdas, classes;
    for (int j = 1; j <= spec.m; ++j) {
      auto v = reg->find(with_copy(weight_name(j), t));
      if (!v) break;
      lambdas.push_back(*v);
    }
    if (lambdas.empty()) continue;
    for (int i = 1; i <= spec.m; ++i) classes.push_back(reg->intern(with_copy(chern_name("cM", i), t)));
    // e_i(lambda) = e_i(-x) = (-1)^i c_i(M).
    out = express_in_chern(out, lambdas, classes);
    std::map<VarIndex, GradedPoly> sign;
    for (int i = 1; i <= spec.m; i += 2) sign[classes[static_cast<std::size_t>(i - 1)]] = -var(reg, classes[static_cast<std::size_t>(i - 1)]);
    out = out.substitute(sign);
  }
  // Each residue variable contributes 1/(z prod(lambda_j - z)) -> (-1)^m s_M(1/z)/z^{m+1}.
  int residue_vars = spec.k_plus_1 - copies;
  if ((static_cast<long>(spec.m) * residue_vars) % 2 != 0) out = -out;
  return out;
}

std::vector<std::pair<std::vector<int>, Integer>> partition_types(int n) {
  std::vector<std::pair<std::vector<int>, Integer>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      Integer denom = 1;
      std::map<int, int> mult;
      for (int b : cur) {
        denom *= factorial(b);
        ++mult[b];
      }
      for (const auto& [b, c] : mult) denom *= factorial(c);
      out.emplace_back(cur, factorial(n) / denom);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (n >= 1) rec(n, n);
  return out;
}

IntegralResult tautological_integral(const RegistryPtr& reg, const IntegralSpec& spec, const Pairing* pairing,
                                     const QTable& table) {
  validate(spec);
  IntegralResult res;
  res.warnings = hypothesis_warnings(spec);
  auto types = partition_types(spec.k_plus_1);

  std::vector<IntegrandTerm> built;
  for (const auto& [sizes, mult] : types) built.push_back(build_term(reg, spec, representative(sizes), table));

  std::vector<GradedPoly> values;
  {
    FreezeGuard guard(*reg);
    values = parallel_map<GradedPoly>(built.size(), [&](std::size_t i) {
      return built[i].orientation * iterated_residue(built[i].form).value;
    });
  }

  res.symbolic = GradedPoly(reg);
  Rational total = 0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    TypeTerm tt{types[i].first, types[i].second, values[i], std::nullopt};
    res.symbolic += Rational(tt.multiplicity) * tt.integrand;
    if (pairing) {
      int s = static_cast<int>(tt.sizes.size());
      GradedPoly abs = spec.mode == IntegralMode::equivariant ? chern_weil(tt.integrand, reg, spec, s) : tt.integrand;
      tt.value = pairing->pair(abs, spec, s);
      total += Rational(tt.multiplicity) * *tt.value;
    }
    res.terms.push_back(std::move(tt));
  }
  if (pairing) res.value = total;
  return res;
}

namespace {

// Pieces for the closed-form two- and three-point formulas, assembled
// directly from named variables rather than through build_term.
struct Direct {
  RegistryPtr reg;
  const IntegralSpec& spec;

  GradedPoly v(const std::string& name) const { return GradedPoly::variable(reg, reg->intern(name)); }
  std::vector<GradedPoly> thetas(int t) const {
    std::vector<GradedPoly> out;
    for (int l = 1; l <= spec.r; ++l) out.push_back(v("theta" + std::to_string(l) + "[" + std::to_string(t) + "]"));
    return out;
  }
  std::vector<GradedPoly> shifted(int t, const GradedPoly& z) const {
    auto out = thetas(t);
    for (auto& x : out) x += z;
    return out;
  }
  // s_M(1/z) z^D on copy t.
  GradedPoly segre_numerator(int t, const GradedPoly& z) const {
    int D = spec.truncation();
    std::vector<GradedPoly> c(static_cast<std::size_t>(D) + 1, GradedPoly(reg));
    c[0] = GradedPoly(reg, Rational(1));
    for (int i = 1; i <= std::min(D, spec.m); ++i) c[static_cast<std::size_t>(i)] = v("cM_" + std::to_string(i) + "[" + std::to_string(t) + "]");
    // s_a = -sum_{i=1..a} c_i s_{a-i}
    std::vector<GradedPoly> s(static_cast<std::size_t>(D) + 1, GradedPoly(reg));
    s[0] = GradedPoly(reg, Rational(1));
    for (int a = 1; a <= D; ++a)
      for (int i = 1; i <= a; ++i) s[static_cast<std::size_t>(a)] -= c[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(a - i)];
    GradedPoly out(reg);
    for (int a = 0; a <= D; ++a) out += s[static_cast<std::size_t>(a)] * z.pow(static_cast<unsigned>(D - a));
    return out;
  }
  GradedPoly phi(std::vector<std::vector<GradedPoly>> groups) const {
    std::vector<GradedPoly> all;
    for (auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    return sigma_d(all, spec.degree());
  }
  TypeTerm term(std::vector<int> sizes, long mult, GradedPoly p) const {
    return TypeTerm{std::move(sizes), Integer(mult), std::move(p), std::nullopt};
  }
};

}  // namespace

std::vector<TypeTerm> two_point_formula(const RegistryPtr& reg, const IntegralSpec& spec) {
  if (spec.k_plus_1 != 2) throw ValidationError("two-point formula needs k+1 = 2");
  Direct x{reg, spec};
  const int D = spec.truncation();
  std::vector<TypeTerm> out;

  GradedPoly z = x.v("z1[1]");
  VarIndex zi = reg->require("z1[1]");
  GradedPoly deep = x.phi({x.thetas(1), x.shifted(1, z)}) * x.segre_numerator(1, z);
  GradedPoly res = iterated_residue(RationalForm(deep, {{z, spec.m + 1 + D}}, {zi})).value;
  out.push_back(x.term({2}, 1, res));

  out.push_back(x.term({1, 1}, 1, x.phi({x.thetas(1), x.thetas(2)})));
  return out;
}

std::vector<TypeTerm> three_point_formula(const RegistryPtr& reg, const IntegralSpec& spec) {
  if (spec.k_plus_1 != 3) throw ValidationError("three-point formula needs k+1 = 3");
  Direct x{reg, spec};
  const int D = spec.truncation();
  std::vector<TypeTerm> out;

  GradedPoly z1 = x.v("z1[1]"), z2 = x.v("z2[1]");
  std::vector<VarIndex> zs{reg->require("z1[1]"), reg->require("z2[1]")};
  GradedPoly num = (z1 - z2) * x.phi({x.thetas(1), x.shifted(1, z1), x.shifted(1, z2)}) * x.segre_numerator(1, z1) *
                   x.segre_numerator(1, z2);
  std::vector<LinearFactor> den{{z1, spec.m + 1 + D}, {z2, spec.m + 1 + D}, {z1 * Rational(2) - z2, 1}};
  out.push_back(x.term({3}, 1, iterated_residue(RationalForm(num, den, zs)).value));

  GradedPoly z = z1;
  GradedPoly mid = x.phi({x.thetas(1), x.shifted(1, z), x.thetas(2)}) * x.segre_numerator(1, z);
  GradedPoly mres = iterated_residue(RationalForm(mid, {{z, spec.m + 1 + D}}, {zs[0]})).value;
  out.push_back(x.term({2, 1}, 3, mres));

  out.push_back(x.term({1, 1, 1}, 1, x.phi({x.thetas(1), x.thetas(2), x.thetas(3)})));
  return out;
}

RationalForm degree_audit_form(const RegistryPtr& reg, int k, int m, int r) {
  if (k < 2 || m < 1 || r < 1) throw ValidationError("degree audit needs k >= 2, m >= 1, r >= 1");
  std::vector<VarIndex> z;
  std::vector<GradedPoly> zp, lam, th;
  for (int i = 1; i <= k; ++i) {
    z.push_back(reg->intern(residue_name(i)));
    zp.push_back(var(reg, z.back()));
  }
  for (int j = 1; j <= m; ++j) lam.push_back(GradedPoly::variable(reg, reg->intern(weight_name(j))));
  for (int l = 1; l <= r; ++l) th.push_back(GradedPoly::variable(reg, reg->intern(root_name(l))));

  // c_F(V^alpha) with z_k missing: roots theta_l + z_i for i < k.
  GradedPoly num(reg, Rational(1));
  for (int i = 0; i + 1 < k; ++i)
    for (const auto& t : th) num *= t + zp[static_cast<std::size_t>(i)];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) num *= zp[static_cast<std::size_t>(i)] - zp[static_cast<std::size_t>(j)];

  std::vector<LinearFactor> den;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) den.push_back({zp[static_cast<std::size_t>(j)] - zp[static_cast<std::size_t>(i)] - lam[0] * Rational(i + 1), 1});
  for (const auto& g : zp)
    for (const auto& l : lam) den.push_back({l - g, 1});
  return RationalForm(std::move(num), den, std::move(z));
}

}  // namespace itres
