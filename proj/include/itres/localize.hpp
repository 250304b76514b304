#pragma once

#include "itres/poly.hpp"

#include <array>
#include <vector>

namespace itres {

/// numerator / prod(denominator) with the denominator kept factored.
struct RationalValue {
  GradedPoly numerator;
  std::vector<GradedPoly> denominator;

  bool is_polynomial() const { return denominator.empty(); }
};

/// Restriction of a class to a fixed point and the tangent weights there;
/// the Euler class is the product of the weights.
struct FixedPointDatum {
  GradedPoly restriction;
  std::vector<GradedPoly> euler_factors;

  GradedPoly euler() const;
};

/// Sum of restriction / euler over a common denominator (the least common
/// multiple of the factors up to sign), with every factor that divides the
/// summed numerator cancelled.
RationalValue atiyah_bott_sum(const std::vector<FixedPointDatum>& data);

/// sum over injective sigma:{1..k}->{1..m} of
///   Q(lambda_sigma(1..k)) / prod_{j<=k} prod_{a not in sigma(1..j)} (lambda_a - lambda_sigma(j)).
/// Q is a polynomial in z (k variables); lambda are the weight variables (m of them).
/// Throws when the denominators do not cancel.
GradedPoly flag_fixed_point_sum(const GradedPoly& Q, const std::vector<VarIndex>& z, const std::vector<VarIndex>& lambda);

/// The residue side of the same identity:
///   Res prod_{i<j}(z_i - z_j) Q dz / prod_{i,j} (lambda_j - z_i).
/// With Res dz/z = -1 this is the Vandermonde orientation that matches the
/// fixed-point sum; the reversed product differs by (-1)^{k(k-1)/2}.
GradedPoly flag_residue(const GradedPoly& Q, const std::vector<VarIndex>& z, const std::vector<VarIndex>& lambda);

/// tau_1..tau_k with tau_i a nonempty subset of {1..i}, sum(tau_i) <= i,
/// pairwise distinct. Subsets are sorted ascending.
using AdmissibleSequence = std::vector<std::vector<int>>;

bool is_admissible(const AdmissibleSequence& tau);
std::vector<AdmissibleSequence> admissible_sequences(int k);
AdmissibleSequence distinguished_sequence(int k);

/// z_1...z_k * prod over i <= j, i + j <= l <= k of (z_i + z_j - z_l).
std::vector<GradedPoly> distinguished_euler_factor_list(const RegistryPtr& reg, const std::vector<VarIndex>& z);
GradedPoly distinguished_euler_factors(const RegistryPtr& reg, const std::vector<VarIndex>& z);

/// Triples (i, j, l), 1-based, with i <= j and i + j <= l <= k.
std::vector<std::array<int, 3>> residue_triples(int k);

}  // namespace itres
