#pragma once

#include "itres/poly.hpp"
#include "itres/poly_io.hpp"

#include <string>
#include <vector>

namespace itres {

struct LinearFactor {
  GradedPoly poly;
  int multiplicity;
};

/// numerator / prod(factor^mult) with factors affine-linear in the residue
/// variables z_1 << ... << z_k (listed in residue_vars, outermost first).
///
/// Construction normalizes: negative multiplicities move to the numerator,
/// factors free of residue variables are divided out exactly, each factor
/// is scaled to be monic in its last residue variable, and equal factors
/// are merged. Residue-variable coefficients must be rational constants.
class RationalForm {
 public:
  RationalForm(GradedPoly numerator, const std::vector<LinearFactor>& factors, std::vector<VarIndex> residue_vars);

  const GradedPoly& numerator() const { return num_; }
  const std::vector<LinearFactor>& factors() const { return factors_; }
  const std::vector<VarIndex>& residue_vars() const { return vars_; }
  const RegistryPtr& registry() const { return num_.registry(); }

  /// Total multiplicity of the factors that involve any of vars.
  int denominator_degree(const std::vector<VarIndex>& vars) const;
  bool is_normal_crossing() const;

 private:
  GradedPoly num_;
  std::vector<LinearFactor> factors_;
  std::vector<VarIndex> vars_;
};

/// Last residue variable of `order` that occurs in the factor, if any.
int highest_residue_position(const GradedPoly& factor, const std::vector<VarIndex>& order);

struct ResidueOptions {
  /// Skip evaluation (returning 0) when the degree criterion certifies vanishing.
  bool degree_shortcut = true;
  bool diagnostics = false;
};

struct ResidueResult {
  GradedPoly value;
  bool vanished_by_degree = false;
  std::vector<std::string> diagnostics;
};

/// -(coefficient of var^{-1}) of the expansion at var = infinity, var being
/// the last residue variable. The remaining variables are dominated parameters.
RationalForm residue_one_var(const RationalForm& form, VarIndex var);

/// Applies residue_one_var to z_k, then z_{k-1}, ..., then z_1.
ResidueResult iterated_residue(const RationalForm& form, const ResidueOptions& opts = {});

/// Degree criterion for z_l..z_k (l is 1-based):
/// deg(p; l..k) + k - l + 1 < deg(q; l..k).
bool vanishes_by_degree(const RationalForm& form, int l);

/// Sum of iterated residues, evaluated concurrently (ITRES_THREADS) and merged
/// in input order.
GradedPoly iterated_residue_sum(const std::vector<RationalForm>& forms, const ResidueOptions& opts = {});

Json to_json(const RationalForm& form);
/// Accepts polynomials either as JSON objects or as strings.
RationalForm form_from_json(const RegistryPtr& reg, const Json& j);

}  // namespace itres
