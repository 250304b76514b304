#include "itres/charclass.hpp"

#include <algorithm>
#include <numeric>

namespace itres {

GradedPoly ChernSeries::at(int i) const {
  if (i < 0 || i > truncation()) return GradedPoly(coeffs.empty() ? RegistryPtr() : coeffs[0].registry());
  return coeffs[static_cast<std::size_t>(i)];
}

GradedPoly ChernSeries::total() const {
  GradedPoly t;
  for (const auto& c : coeffs) t += c;
  return t;
}

ChernSeries symbolic_series(const RegistryPtr& reg, std::string_view family, int D, int rank, int copy) {
  ChernSeries s;
  s.coeffs.push_back(GradedPoly(reg, Rational(1)));
  for (int i = 1; i <= D; ++i) {
    if (rank >= 0 && i > rank) {
      s.coeffs.push_back(GradedPoly(reg));
      continue;
    }
    std::string name = chern_name(family, i);
    if (copy >= 0) name = with_copy(name, copy);
    s.coeffs.push_back(GradedPoly::variable(reg, reg->intern(name, VarClass::chern_class, i)));
  }
  return s;
}

ChernSeries series_from_roots(const RegistryPtr& reg, const std::vector<GradedPoly>& roots, int D) {
  auto e = elementary_symmetric(roots, D);
  ChernSeries s;
  for (auto& x : e) s.coeffs.push_back(x.registry() ? x : GradedPoly(reg, x.constant_term()));
  return s;
}

ChernSeries series_from_total(const GradedPoly& total, int D) {
  ChernSeries s;
  for (int i = 0; i <= D; ++i) s.coeffs.push_back(total.grade_part(i));
  if (s.coeffs[0] != GradedPoly(Rational(1))) throw Error("total class must have constant term 1");
  return s;
}

ChernSeries series_mul(const ChernSeries& a, const ChernSeries& b) {
  int D = std::min(a.truncation(), b.truncation());
  ChernSeries out;
  for (int d = 0; d <= D; ++d) {
    GradedPoly sum;
    for (int i = 0; i <= d; ++i) sum += a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(d - i)];
    out.coeffs.push_back(std::move(sum));
  }
  return out;
}

SegreSeries series_invert(const ChernSeries& c) {
  if (c.coeffs.empty() || c.coeffs[0] != GradedPoly(Rational(1))) throw Error("series_invert needs c_0 = 1");
  SegreSeries s;
  s.coeffs.push_back(c.coeffs[0]);
  for (int d = 1; d <= c.truncation(); ++d) {
    GradedPoly acc(c.coeffs[0].registry());
    for (int i = 1; i <= d; ++i) acc -= c.coeffs[static_cast<std::size_t>(i)] * s.coeffs[static_cast<std::size_t>(d - i)];
    s.coeffs.push_back(std::move(acc));
  }
  return s;
}

ChernSeries relative_chern(const ChernSeries& cM, const ChernSeries& cN_pullback) {
  return series_mul(cN_pullback, series_invert(cM));
}

InverseSeries series_at_inverse(const ChernSeries& c, VarIndex var) {
  int D = c.truncation();
  GradedPoly num;
  const RegistryPtr& reg = c.coeffs.at(0).registry();
  for (int i = 0; i <= D; ++i) {
    if (reg)
      num += c.coeffs[static_cast<std::size_t>(i)] * GradedPoly::variable(reg, var, D - i);
    else
      num += c.coeffs[static_cast<std::size_t>(i)];
  }
  return {std::move(num), D};
}

std::vector<GradedPoly> elementary_symmetric(const std::vector<GradedPoly>& roots, int dmax) {
  RegistryPtr reg;
  for (const auto& r : roots)
    if (r.registry()) reg = r.registry();
  std::vector<GradedPoly> e(static_cast<std::size_t>(std::max(dmax, 0)) + 1, GradedPoly(reg));
  e[0] = GradedPoly(reg, Rational(1));
  int seen = 0;
  for (const auto& x : roots) {
    ++seen;
    for (int j = std::min(seen, dmax); j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * x;
  }
  return e;
}

GradedPoly sigma_d(const std::vector<GradedPoly>& roots, int d) {
  if (d < 0 || d > static_cast<int>(roots.size())) {
    RegistryPtr reg;
    for (const auto& r : roots)
      if (r.registry()) reg = r.registry();
    return GradedPoly(reg);
  }
  return elementary_symmetric(roots, d)[static_cast<std::size_t>(d)];
}

bool is_symmetric(const GradedPoly& p, const std::vector<VarIndex>& vars) {
  if (vars.size() < 2 || !p.registry()) return true;
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    std::map<VarIndex, GradedPoly> swap{{vars[i], GradedPoly::variable(p.registry(), vars[i + 1])},
                                        {vars[i + 1], GradedPoly::variable(p.registry(), vars[i])}};
    if (p.substitute(swap) != p) return false;
  }
  return true;
}

GradedPoly express_in_chern(const GradedPoly& p, const std::vector<VarIndex>& roots,
                            const std::vector<VarIndex>& classes) {
  if (classes.size() < roots.size()) throw Error("express_in_chern: fewer class symbols than roots");
  if (!is_symmetric(p, roots)) throw NotSymmetric("polynomial is not symmetric in the root variables");
  const RegistryPtr& reg = p.registry();
  if (!reg || roots.empty()) return p;
  std::size_t r = roots.size();
  std::vector<GradedPoly> root_polys;
  for (VarIndex v : roots) root_polys.push_back(GradedPoly::variable(reg, v));
  auto elem = elementary_symmetric(root_polys, static_cast<int>(r));

  auto split = [&](const Monomial& m, std::vector<Exponent>& exps, Monomial& rest) {
    exps.assign(r, 0);
    rest.clear();
    for (const auto& [v, e] : m) {
      auto it = std::find(roots.begin(), roots.end(), v);
      if (it != roots.end())
        exps[static_cast<std::size_t>(it - roots.begin())] = e;
      else
        rest.emplace_back(v, e);
    }
  };

  GradedPoly rem = p;
  GradedPoly out(reg);
  std::vector<Exponent> exps;
  Monomial rest;
  while (!rem.is_zero()) {
    std::vector<Exponent> best;
    for (const auto& [m, c] : rem.terms()) {
      split(m, exps, rest);
      if (best.empty() || std::lexicographical_compare(best.begin(), best.end(), exps.begin(), exps.end())) best = exps;
    }
    for (std::size_t i = 0; i + 1 < r; ++i)
      if (best[i] < best[i + 1]) throw NotSymmetric("polynomial is not symmetric in the root variables");
    GradedPoly coeff(reg);
    for (const auto& [m, c] : rem.terms()) {
      split(m, exps, rest);
      if (exps == best) coeff.add_term(rest, c);
    }
    GradedPoly in_roots = coeff;
    GradedPoly in_classes = coeff;
    for (std::size_t i = 0; i < r; ++i) {
      Exponent power = best[i] - (i + 1 < r ? best[i + 1] : 0);
      if (power == 0) continue;
      in_roots *= elem[i + 1].pow(static_cast<unsigned>(power));
      in_classes *= GradedPoly::variable(reg, classes[i], power);
    }
    rem -= in_roots;
    out += in_classes;
  }
  return out;
}

}  // namespace itres
