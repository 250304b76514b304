#pragma once

#include "itres/rational.hpp"
#include "itres/registry.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace itres {

using Exponent = std::int32_t;

/// Sparse monomial: (variable, exponent) pairs sorted by variable, exponents > 0.
using Monomial = std::vector<std::pair<VarIndex, Exponent>>;

Monomial monomial_mul(const Monomial& a, const Monomial& b);
Exponent monomial_exponent(const Monomial& m, VarIndex v);

/// Sparse multivariate polynomial over Q with graded variables.
///
/// A default-constructed or Rational-constructed value has no registry and
/// may only hold a constant; it adopts the registry of the other operand in
/// binary operations. Two non-null registries must be identical.
class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  GradedPoly() = default;
  GradedPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit GradedPoly(RegistryPtr reg) : reg_(std::move(reg)) {}
  GradedPoly(RegistryPtr reg, const Rational& c);

  static GradedPoly variable(RegistryPtr reg, VarIndex v, Exponent e = 1);
  /// Interns the name (class inferred) and returns the variable.
  static GradedPoly variable(RegistryPtr reg, std::string_view name, Exponent e = 1);
  static GradedPoly monomial(RegistryPtr reg, Monomial m, const Rational& c);

  const RegistryPtr& registry() const { return reg_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the empty monomial.
  Rational constant_term() const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly operator-() const;

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator+(GradedPoly a, const Rational& c) { return a += GradedPoly(c); }
  friend GradedPoly operator-(GradedPoly a, const Rational& c) { return a -= GradedPoly(c); }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b);
  friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }

  GradedPoly pow(unsigned e) const;

  bool contains(VarIndex v) const;
  std::vector<VarIndex> variables() const;
  Exponent degree_in(VarIndex v) const;
  /// Max over terms of the summed exponents of the given variables.
  int total_degree(const std::vector<VarIndex>& vars) const;
  /// Lowest power of v over all terms (0 when some term lacks v).
  Exponent min_degree_in(VarIndex v) const;

  int monomial_grade(const Monomial& m) const;
  std::optional<int> grade() const;  // set iff homogeneous and nonzero
  bool is_homogeneous() const;
  int max_grade() const;

  GradedPoly coefficient(VarIndex v, Exponent power) const;
  /// Splits by the power of v: power -> coefficient.
  std::map<Exponent, GradedPoly> by_power(VarIndex v) const;
  GradedPoly grade_part(int d) const;
  GradedPoly truncate_grade(int max_d) const;
  /// Simultaneous substitution; unbound variables stay.
  GradedPoly substitute(const std::map<VarIndex, GradedPoly>& bindings) const;
  /// Divides every monomial by v^e (caller guarantees divisibility).
  GradedPoly shift_down(VarIndex v, Exponent e) const;

  /// Exact division; nullopt when d does not divide *this.
  std::optional<GradedPoly> divide_exact(const GradedPoly& d) const;

  /// Leading term under lexicographic order on registry index.
  std::pair<Monomial, Rational> lex_leading() const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  void adopt(const GradedPoly& o);
  RegistryPtr reg_;
  TermMap terms_;
};

const RegistryPtr& common_registry(const GradedPoly& a, const GradedPoly& b);

// Named forms of the ring operations.
inline GradedPoly add(const GradedPoly& p, const GradedPoly& q) { return p + q; }
inline GradedPoly mul(const GradedPoly& p, const GradedPoly& q) { return p * q; }
inline GradedPoly substitute(const GradedPoly& p, const std::map<VarIndex, GradedPoly>& b) {
  return p.substitute(b);
}
inline GradedPoly coefficient(const GradedPoly& p, VarIndex v, Exponent k) {
  return p.coefficient(v, k);
}
inline GradedPoly grade_part(const GradedPoly& p, int d) { return p.grade_part(d); }

/// Re-expresses p over another registry, mapping variables by (optionally
/// renamed) name; names are interned in `to` with their original class and grade.
GradedPoly transfer(const GradedPoly& p, const RegistryPtr& to,
                    const std::function<std::string(const std::string&)>& rename = {});

/// Name comparison with embedded numbers compared by value (z2 < z10).
bool natural_name_less(const std::string& a, const std::string& b);
/// The factors of m sorted by natural name order.
Monomial display_order(const Registry& reg, const Monomial& m);
/// Order used for printing, independent of registration order: grade
/// descending, then lexicographically descending exponents with variables
/// taken in natural name order.
bool print_before(const Registry& reg, const Monomial& a, const Monomial& b);

/// Canonical text form, e.g. "2*z1 + z2 - z4", "c_1^2 - 2*c_2", "-1".
std::string to_string(const GradedPoly& p);
std::string to_latex(const GradedPoly& p);

}  // namespace itres
