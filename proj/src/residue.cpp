#include "itres/residue.hpp"

#include "itres/error.hpp"
#include "itres/parallel.hpp"

#include <algorithm>

namespace itres {

namespace {

bool is_residue_var(const std::vector<VarIndex>& vars, VarIndex v) {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

// Coefficient of residue variable v in an affine factor; must be constant.
Rational linear_coefficient(const GradedPoly& f, VarIndex v) {
  GradedPoly c = f.coefficient(v, 1);
  if (!c.is_constant())
    throw InvalidForm("coefficient of a residue variable in a denominator factor must be a rational constant");
  return c.constant_term();
}

}  // namespace

int highest_residue_position(const GradedPoly& factor, const std::vector<VarIndex>& order) {
  for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i)
    if (factor.contains(order[static_cast<std::size_t>(i)])) return i;
  return -1;
}

RationalForm::RationalForm(GradedPoly numerator, const std::vector<LinearFactor>& factors,
                           std::vector<VarIndex> residue_vars)
    : num_(std::move(numerator)), vars_(std::move(residue_vars)) {
  RegistryPtr reg = num_.registry();
  for (const auto& f : factors) reg = common_registry(GradedPoly(reg), f.poly);
  if (!reg) throw InvalidForm("rational form without a variable registry");
  if (!num_.registry()) num_ = GradedPoly(reg, num_.constant_term());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] >= reg->size() || reg->at(vars_[i]).cls != VarClass::residue)
      throw InvalidForm("residue_vars must be residue-class variables");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) throw InvalidForm("residue variable listed twice");
  }
  for (const auto& [poly, mult] : factors) {
    if (mult == 0) continue;
    if (poly.is_zero()) throw InvalidForm("denominator factor is identically zero");
    if (mult < 0) {
      num_ *= poly.pow(static_cast<unsigned>(-mult));
      continue;
    }
    for (const auto& [m, c] : poly.terms()) {
      int d = 0;
      for (const auto& [v, e] : m)
        if (is_residue_var(vars_, v)) d += e;
      if (d > 1) throw InvalidForm("denominator factor " + to_string(poly) + " is not affine-linear in residue variables");
    }
    int pos = highest_residue_position(poly, vars_);
    if (pos < 0) {
      if (poly.is_constant()) {
        Rational c = poly.constant_term();
        Rational inv = 1;
        for (int i = 0; i < mult; ++i) inv /= c;
        num_ *= inv;
        continue;
      }
      auto q = num_.divide_exact(poly.pow(static_cast<unsigned>(mult)));
      if (!q)
        throw InvalidForm("factor " + to_string(poly) + " is free of residue variables and does not divide the numerator");
      num_ = std::move(*q);
      continue;
    }
    for (VarIndex v : vars_) (void)linear_coefficient(poly, v);
    Rational lead = linear_coefficient(poly, vars_[static_cast<std::size_t>(pos)]);
    GradedPoly monic = poly * (Rational(1) / lead);
    Rational scale = 1;
    for (int i = 0; i < mult; ++i) scale /= lead;
    num_ *= scale;
    auto it = std::find_if(factors_.begin(), factors_.end(), [&](const LinearFactor& f) { return f.poly == monic; });
    if (it != factors_.end())
      it->multiplicity += mult;
    else
      factors_.push_back({std::move(monic), mult});
  }
}

int RationalForm::denominator_degree(const std::vector<VarIndex>& vars) const {
  int d = 0;
  for (const auto& f : factors_) {
    bool touches = std::any_of(vars.begin(), vars.end(), [&](VarIndex v) { return f.poly.contains(v); });
    if (touches) d += f.multiplicity;
  }
  return d;
}

bool RationalForm::is_normal_crossing() const {
  for (const auto& f : factors_) {
    int count = 0;
    for (VarIndex v : vars_)
      if (f.poly.contains(v)) ++count;
    if (count > 1) return false;
  }
  return true;
}

RationalForm residue_one_var(const RationalForm& form, VarIndex var) {
  const auto& vars = form.residue_vars();
  if (vars.empty() || vars.back() != var)
    throw InvalidForm("residue_one_var: variable must be the last residue variable");
  const RegistryPtr& reg = form.registry();

  std::vector<LinearFactor> rest;
  std::vector<std::pair<GradedPoly, int>> shifts;  // factor = var + b
  int total = 0;
  for (const auto& f : form.factors()) {
    if (!f.poly.contains(var)) {
      rest.push_back(f);
      continue;
    }
    GradedPoly b = f.poly - GradedPoly::variable(reg, var);
    shifts.emplace_back(std::move(b), f.multiplicity);
    total += f.multiplicity;
  }

  auto parts = form.numerator().by_power(var);
  std::vector<VarIndex> remaining(vars.begin(), vars.end() - 1);
  int top = parts.empty() ? -1 : parts.rbegin()->first;
  int order = top - total + 1;
  if (order < 0) return RationalForm(GradedPoly(reg), rest, remaining);

  // Coefficients of prod (1 + b_i w)^{-e_i} up to w^order.
  std::vector<GradedPoly> series(static_cast<std::size_t>(order) + 1, GradedPoly(reg));
  series[0] = GradedPoly(reg, Rational(1));
  for (const auto& [b, e] : shifts) {
    std::vector<GradedPoly> factor(series.size(), GradedPoly(reg));
    GradedPoly bpow(reg, Rational(1));
    for (std::size_t j = 0; j < factor.size(); ++j) {
      Rational c(binomial(e + static_cast<long>(j) - 1, static_cast<long>(j)));
      if (j % 2 == 1) c = -c;
      factor[j] = bpow * c;
      if (j + 1 < factor.size()) bpow *= b;
    }
    std::vector<GradedPoly> next(series.size(), GradedPoly(reg));
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < series.size(); ++j) next[i + j] += series[i] * factor[j];
    }
    series = std::move(next);
  }

  GradedPoly value(reg);
  for (const auto& [p, coeff] : parts) {
    int j = p - total + 1;
    if (j < 0) continue;
    value -= coeff * series[static_cast<std::size_t>(j)];
  }
  return RationalForm(std::move(value), rest, remaining);
}

bool vanishes_by_degree(const RationalForm& form, int l) {
  const auto& vars = form.residue_vars();
  int k = static_cast<int>(vars.size());
  if (l < 1 || l > k) return false;
  std::vector<VarIndex> tail(vars.begin() + (l - 1), vars.end());
  if (form.numerator().is_zero()) return true;
  int dp = form.numerator().total_degree(tail);
  int dq = form.denominator_degree(tail);
  return dp + k - l + 1 < dq;
}

ResidueResult iterated_residue(const RationalForm& form, const ResidueOptions& opts) {
  ResidueResult result;
  RationalForm current = form;
  if (opts.diagnostics && !form.is_normal_crossing())
    result.diagnostics.push_back(
        "denominator is not normal crossing: the value depends on the domain order z1 << ... << zk");
  while (!current.residue_vars().empty()) {
    int k = static_cast<int>(current.residue_vars().size());
    if (opts.degree_shortcut) {
      for (int l = 1; l <= k; ++l) {
        if (vanishes_by_degree(current, l)) {
          if (opts.diagnostics)
            result.diagnostics.push_back("degree criterion certifies zero at l=" + std::to_string(l) + " with " +
                                         std::to_string(k) + " residue variables left");
          result.value = GradedPoly(current.registry());
          result.vanished_by_degree = true;
          return result;
        }
      }
    }
    VarIndex v = current.residue_vars().back();
    if (opts.diagnostics) {
      int touching = 0;
      for (const auto& f : current.factors())
        if (f.poly.contains(v)) ++touching;
      result.diagnostics.push_back("Res " + current.registry()->at(v).name + ": " + std::to_string(touching) +
                                   " factor(s), numerator terms " + std::to_string(current.numerator().size()));
    }
    current = residue_one_var(current, v);
  }
  result.value = current.numerator();
  if (!current.factors().empty()) throw InvalidForm("factors left after all residues were taken");
  return result;
}

GradedPoly iterated_residue_sum(const std::vector<RationalForm>& forms, const ResidueOptions& opts) {
  if (forms.empty()) return GradedPoly();
  FreezeGuard guard(*forms.front().registry());
  auto parts = parallel_map<GradedPoly>(forms.size(), [&](std::size_t i) { return iterated_residue(forms[i], opts).value; });
  GradedPoly total(forms.front().registry());
  for (const auto& p : parts) total += p;
  return total;
}

Json to_json(const RationalForm& form) {
  Json j;
  j["numerator"] = to_json(form.numerator());
  j["factors"] = Json::array();
  for (const auto& f : form.factors()) j["factors"].push_back({{"poly", to_json(f.poly)}, {"mult", f.multiplicity}});
  j["residue_vars"] = Json::array();
  for (VarIndex v : form.residue_vars()) j["residue_vars"].push_back(form.registry()->at(v).name);
  return j;
}

RationalForm form_from_json(const RegistryPtr& reg, const Json& j) {
  auto poly = [&](const Json& p) { return p.is_string() ? parse_poly(reg, p.get<std::string>()) : poly_from_json(reg, p); };
  try {
    std::vector<VarIndex> vars;
    for (const auto& v : j.at("residue_vars")) vars.push_back(reg->intern(v.get<std::string>()));
    GradedPoly num = j.contains("numerator") ? poly(j.at("numerator")) : GradedPoly(reg, Rational(1));
    std::vector<LinearFactor> factors;
    if (j.contains("factors")) {
      for (const auto& f : j.at("factors")) {
        if (f.is_string()) {
          factors.push_back({parse_poly(reg, f.get<std::string>()), 1});
        } else {
          factors.push_back({poly(f.at("poly")), f.contains("mult") ? f.at("mult").get<int>() : 1});
        }
      }
    }
    return RationalForm(std::move(num), factors, std::move(vars));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed rational form JSON: ") + e.what());
  }
}

}  // namespace itres
