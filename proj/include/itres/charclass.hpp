#pragma once

#include "itres/error.hpp"
#include "itres/poly.hpp"

#include <string_view>
#include <vector>

namespace itres {

/// Truncated total class c_0 + c_1 + ... + c_D, c_i homogeneous of grade i.
struct ChernSeries {
  std::vector<GradedPoly> coeffs;  // size D + 1, coeffs[0] == 1

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
  const GradedPoly& operator[](std::size_t i) const { return coeffs.at(i); }
  /// c_i, or 0 beyond the truncation.
  GradedPoly at(int i) const;
  GradedPoly total() const;
};

using SegreSeries = ChernSeries;

/// 1 + x_1 + ... + x_D with x_i the registered symbol family_i (grade i),
/// e.g. family "c" gives c_1, c_2, ...; at most `rank` nonzero classes when
/// rank >= 0; copy >= 0 appends the tag "[copy]".
ChernSeries symbolic_series(const RegistryPtr& reg, std::string_view family, int D, int rank = -1, int copy = -1);

/// Series from explicit grade-1 roots: prod (1 + x_j), truncated at D.
ChernSeries series_from_roots(const RegistryPtr& reg, const std::vector<GradedPoly>& roots, int D);

/// Builds a series from a total class by splitting into grade parts.
ChernSeries series_from_total(const GradedPoly& total, int D);

ChernSeries series_mul(const ChernSeries& a, const ChernSeries& b);
/// s with s * c = 1 up to grade D.
SegreSeries series_invert(const ChernSeries& c);
/// c(f) = c(f^*TN) / c(TM).
ChernSeries relative_chern(const ChernSeries& cM, const ChernSeries& cN_pullback);

/// sum_{i<=D} c_i var^{-i} = numerator / var^D, numerator = sum c_i var^{D-i}.
struct InverseSeries {
  GradedPoly numerator;
  int var_power;
};
InverseSeries series_at_inverse(const ChernSeries& c, VarIndex var);

/// Elementary symmetric polynomial e_d of the multiset (0 for d > rank).
GradedPoly sigma_d(const std::vector<GradedPoly>& roots, int d);
/// e_0, ..., e_dmax.
std::vector<GradedPoly> elementary_symmetric(const std::vector<GradedPoly>& roots, int dmax);

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// Rewrites p, symmetric in the root variables, as a polynomial in the
/// class symbols (classes[i-1] stands for e_i). Other variables are treated
/// as coefficients. Throws NotSymmetric on non-symmetric input.
GradedPoly express_in_chern(const GradedPoly& p, const std::vector<VarIndex>& roots,
                            const std::vector<VarIndex>& classes);

bool is_symmetric(const GradedPoly& p, const std::vector<VarIndex>& vars);

}  // namespace itres
