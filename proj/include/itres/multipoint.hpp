#pragma once

#include "itres/thom.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace itres {

/// Blocks of a set partition of {1..k}, each sorted, ordered by minimum.
using SetPartition = std::vector<std::vector<int>>;

/// All Bell(k) partitions, enumerated by restricted growth strings.
std::vector<SetPartition> set_partitions(int k);
/// Ordered tuples of positive integers summing to k.
std::vector<std::vector<int>> compositions(int k);
Integer multinomial(const std::vector<int>& parts);

enum class Side { target, source };

/// s_J(f) = f_*(c_1^{j_1} c_2^{j_2} ...) on the target, or its pullback f^*s_J
/// on the source. J has no trailing zeros; J = () is s_0 = f_*[1].
struct PushforwardSymbol {
  std::vector<int> J;
  Side side = Side::target;

  auto operator<=>(const PushforwardSymbol&) const = default;
  /// (n - m) + sum i * j_i.
  int grade(int codim) const;
  std::string name() const;
};

/// Sorted multiset of symbols.
using SymbolProduct = std::vector<PushforwardSymbol>;

/// Polynomial in pushforward symbols with GradedPoly coefficients.
class MultipointClass {
 public:
  MultipointClass(RegistryPtr reg, int codim) : reg_(std::move(reg)), codim_(codim) {}

  static MultipointClass constant(RegistryPtr reg, int codim, const GradedPoly& c);

  const std::map<SymbolProduct, GradedPoly>& terms() const { return terms_; }
  int codim() const { return codim_; }
  const RegistryPtr& registry() const { return reg_; }

  void add_term(const SymbolProduct& symbols, const GradedPoly& coeff);
  MultipointClass& operator+=(const MultipointClass& o);
  friend MultipointClass operator*(const MultipointClass& a, const MultipointClass& b);
  MultipointClass scaled(const Rational& c) const;
  friend bool operator==(const MultipointClass& a, const MultipointClass& b) { return a.terms_ == b.terms_; }

  /// Moves every symbol to the source side.
  MultipointClass pullback() const;
  /// Coefficient of the empty symbol product.
  GradedPoly constant_part() const;
  bool is_zero() const { return terms_.empty(); }

  /// Grade of every term (coefficient grade plus symbol grades); empty when
  /// some coefficient is not homogeneous.
  std::vector<int> term_grades() const;

 private:
  RegistryPtr reg_;
  int codim_;
  std::map<SymbolProduct, GradedPoly> terms_;
};

std::string to_string(const MultipointClass& c);
std::string to_latex(const MultipointClass& c);
/// Polynomial JSON extended with a "symbols" array per term.
Json to_json(const MultipointClass& c);

/// Linear extension of c^J -> s_J. Only the symbols c_1, c_2, ... may occur.
MultipointClass pushforward_symbol(const GradedPoly& p, int codim);

enum class TargetConvention {
  sieve,     // sum over compositions with multinomial coefficients
  partition  // sum over set partitions, each block weighted 1
};

/// S_q = f_* R_q.
MultipointClass pushforward_residual(const RegistryPtr& reg, int q, const MapGeometry& geom, const QTable& table);

MultipointClass multipoint_target_class(const RegistryPtr& reg, int k, const MapGeometry& geom,
                                        TargetConvention conv = TargetConvention::sieve,
                                        const QTable& table = builtin_qtable());

/// sum over set partitions of R_{|J_1|} prod_{t>=2} f^*S_{|J_t|}, J_1 the block containing 1.
MultipointClass multipoint_source_class(const RegistryPtr& reg, int k, const MapGeometry& geom,
                                        const QTable& table = builtin_qtable());

/// sum over set partitions of (-1)^{s-1}(s-1)! m_{|J_1|} prod_{t>=2} f^*n_{|J_t|}
/// with n the set-partition class; throws when symbols survive.
GradedPoly residual_from_sieve(const RegistryPtr& reg, int k, const MapGeometry& geom,
                               const QTable& table = builtin_qtable());

/// Target class grouped by the block sizes of its S-products, e.g. for k = 3:
/// {3}: 1, {1,2}: 6, {1,1,1}: 6.
std::map<std::vector<int>, Integer> sieve_expansion(int k, TargetConvention conv = TargetConvention::sieve);

/// The product prod_t S_{sizes[t]}.
MultipointClass sieve_piece(const RegistryPtr& reg, const std::vector<int>& sizes, const MapGeometry& geom,
                            const QTable& table = builtin_qtable());

struct ConventionEntry {
  std::vector<int> sizes;
  Integer sieve_coefficient;
  /// Coefficient of the same product in the geometric k = 2, 3 results
  /// (0 when no geometric display is available).
  Integer display_coefficient;
};

struct ConventionsReport {
  int k = 0;
  std::vector<ConventionEntry> entries;
  /// Normalizations relating the classes to the reduced k-fold locus classes.
  Integer target_normalization;  // n_k = k! * nbar_k
  Integer source_normalization;  // m_k = (k-1)! * mbar_k
};

ConventionsReport conventions_report(int k);
std::string to_string(const ConventionsReport& r);

}  // namespace itres
