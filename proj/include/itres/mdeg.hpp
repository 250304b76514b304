#pragma once

#include "itres/poly.hpp"

#include <vector>

namespace itres {

using ExponentVector = std::vector<int>;

/// Monomial ideal in N ambient variables with a grade-1 weight per variable.
/// Generators are reduced to the minimal antichain on construction.
class MonomialIdeal {
 public:
  MonomialIdeal(std::vector<ExponentVector> generators, std::vector<GradedPoly> weights);

  std::size_t ambient_dim() const { return weights_.size(); }
  const std::vector<ExponentVector>& generators() const { return gens_; }
  const std::vector<GradedPoly>& weights() const { return weights_; }
  bool is_unit() const;
  bool contains(const ExponentVector& a) const;

 private:
  std::vector<ExponentVector> gens_;
  std::vector<GradedPoly> weights_;
};

/// Minimum number of variables meeting every generator's support.
int codimension(const MonomialIdeal& I);

/// Number of exponent vectors a supported on `subset` with x^{a+b} not in I
/// for every b supported on the complement.
long multiplicity(const MonomialIdeal& I, const std::vector<int>& subset);

/// sum over codimension-size subsets S of multiplicity(S) * prod_{i in S} weight_i.
GradedPoly multidegree(const MonomialIdeal& I);

}  // namespace itres
