#pragma once

#include "itres/charclass.hpp"
#include "itres/multipoint.hpp"
#include "itres/residue.hpp"
#include "itres/thom.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace itres {

enum class IntegralMode { absolute, equivariant };

/// Integral of Phi = c_d(V^{[k+1]}) over the geometric component of the
/// Hilbert scheme of k+1 points on M (dim m), V of rank r.
struct IntegralSpec {
  int k_plus_1 = 2;
  int m = 1;
  int r = 1;
  int d = -1;  // < 0 selects (k+1)m
  IntegralMode mode = IntegralMode::absolute;
  int D = -1;  // Segre truncation; < 0 selects (k+1)m

  int k() const { return k_plus_1 - 1; }
  int degree() const { return d >= 0 ? d : k_plus_1 * m; }
  int truncation() const { return D >= 0 ? D : k_plus_1 * m; }
};

/// Messages for hypotheses of the residue formula that these parameters violate
/// (k <= m <= r <= (m-1)k/(k-1), d range); empty when all hold.
std::vector<std::string> hypothesis_warnings(const IntegralSpec& spec);
/// Throws ValidationError on structurally invalid specs (nonpositive sizes).
void validate(const IntegralSpec& spec);

/// Variables attached to copy t of M in M^s.
struct CopyVars {
  std::vector<VarIndex> theta;   // theta_l[t], l = 1..r
  std::vector<VarIndex> z;       // z_j[t], j = 1..|block|-1
  std::vector<VarIndex> lambda;  // lambda_j[t] (equivariant mode)
  std::vector<VarIndex> cM;      // cM_i[t], i = 1..m (absolute mode)
};

CopyVars copy_vars(const RegistryPtr& reg, const IntegralSpec& spec, int copy, int block_size);

struct IntegrandTerm {
  SetPartition partition;
  /// Blocks in copy order: size descending, then by minimum element.
  std::vector<std::vector<int>> blocks;
  std::vector<CopyVars> copies;
  RationalForm form;
  /// prod_t (-1)^{|a_t|-1}. The displayed block sign belongs to the residue
  /// orientation opposite to ours (Res dz/z = -1); multiplying the residue
  /// of `form` by this factor converts it.
  Rational orientation = 1;
};

/// Orders blocks by size descending, then by minimum element.
std::vector<std::vector<int>> copy_order(const SetPartition& alpha);

/// The rational form of the partition term:
/// c_d(V(z^{a_1}) + ... + V(z^{a_s})) prod_t (-1)^{|a_t|-1} prod_{i<j}(z_i - z_j) Q_{|a_t|-1}
/// over prod triples (z_i + z_j - z_l) (z_1...z_{|a_t|-1})^{m+1}, times Segre
/// factors s_M(1/z) (absolute) or over z_1...z_{|a_t|-1} prod_j (lambda_j - z_i) (equivariant).
IntegrandTerm build_term(const RegistryPtr& reg, const IntegralSpec& spec, const SetPartition& alpha,
                         const QTable& table = builtin_qtable());

/// orientation * iterated residue of the term: a polynomial over M^s of
/// grade d - m(k+1-s).
GradedPoly emit_integrand(const RegistryPtr& reg, const IntegralSpec& spec, const SetPartition& alpha,
                          const QTable& table = builtin_qtable());

/// Evaluates integrands over M^s (absolute mode classes theta_l[t], cM_i[t]).
class Pairing {
 public:
  virtual ~Pairing() = default;
  /// Integral over M^s of the (m, ..., m) part of p.
  virtual Rational pair(const GradedPoly& p, const IntegralSpec& spec, int copies) const = 0;
};

/// Intersection numbers on M of grade-m monomials in cM_i and cV_j (Chern
/// classes of M and V), e.g. {"cM_1^2": "4", "cM_2": 3, "cV_1*cM_1": "2", ...}.
class TablePairing : public Pairing {
 public:
  explicit TablePairing(const Json& table);
  static TablePairing from_file(const std::string& path);
  Rational pair(const GradedPoly& p, const IntegralSpec& spec, int copies) const override;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::string, Rational> values_;
};

/// M = P^m with c(TM) = (1+h)^{m+1}, V = O(a_1) + ... + O(a_r).
class SplitModelPairing : public Pairing {
 public:
  explicit SplitModelPairing(std::vector<long> degrees) : a_(std::move(degrees)) {}
  Rational pair(const GradedPoly& p, const IntegralSpec& spec, int copies) const override;
  /// The intersection table of the same model, for cross-checking TablePairing.
  Json table(int m) const;

 private:
  std::vector<long> a_;
};

/// Canonical key of a monomial given as (name, exponent) pairs with copy tags removed.
std::string monomial_key(std::vector<std::pair<std::string, int>> factors);

/// Rewrites the theta roots of every copy as classes cV_i[t].
GradedPoly roots_to_classes(const GradedPoly& p, const RegistryPtr& reg, const IntegralSpec& spec, int copies);

/// Chern-Weil map for the equivariant integrand: lambda_j[t] -> -x_j[t]
/// followed by rewriting the symmetric functions of x[t] as cM_i[t].
GradedPoly chern_weil(const GradedPoly& p, const RegistryPtr& reg, const IntegralSpec& spec, int copies);

struct TypeTerm {
  std::vector<int> sizes;  // block sizes in copy order
  Integer multiplicity;    // number of partitions of this type
  GradedPoly integrand;
  std::optional<Rational> value;
};

struct IntegralResult {
  std::vector<TypeTerm> terms;
  /// Sum of multiplicity * integrand (the symbolic answer before pairing;
  /// in equivariant mode a polynomial in the weights and roots).
  GradedPoly symbolic;
  std::optional<Rational> value;
  std::vector<std::string> warnings;
};

/// Block-size types of partitions of {1..n} with their counts n!/(prod b! prod mult!).
std::vector<std::pair<std::vector<int>, Integer>> partition_types(int n);

/// Sum over partitions of {1..k+1} grouped by type. With a pairing, absolute
/// mode pairs each term; equivariant mode applies the Chern-Weil map
/// (including the sign (-1)^{m(k+1-s)}) before pairing.
IntegralResult tautological_integral(const RegistryPtr& reg, const IntegralSpec& spec, const Pairing* pairing = nullptr,
                                     const QTable& table = builtin_qtable());

/// Independently assembled two- and three-point formulas (absolute mode,
/// Phi = c_d), one entry per partition type in the same copy layout.
std::vector<TypeTerm> two_point_formula(const RegistryPtr& reg, const IntegralSpec& spec);
std::vector<TypeTerm> three_point_formula(const RegistryPtr& reg, const IntegralSpec& spec);

/// A form with the degree profile of a non-deepest partition term: numerator
/// of z-degree r(k-1) + C(k,2), C(k,2) Euler factors and prod (lambda_i - z_l).
RationalForm degree_audit_form(const RegistryPtr& reg, int k, int m, int r);

}  // namespace itres
