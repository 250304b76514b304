#pragma once

#include "itres/charclass.hpp"
#include "itres/poly_io.hpp"
#include "itres/residue.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace itres {

/// Q_k polynomials in z1..zk. Built-in entries cover k = 1..5; more can be
/// loaded from a JSON list [{"k": K, "poly": <polynomial JSON or string>}].
class QTable {
 public:
  QTable();

  bool has(int k) const { return entries_.count(k) > 0; }
  int max_k() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  /// Q_k over `reg` in the canonical variables z1..zk.
  GradedPoly polynomial(const RegistryPtr& reg, int k) const;
  /// Q_k with z_i replaced by z[i-1].
  GradedPoly polynomial(const RegistryPtr& reg, int k, const std::vector<VarIndex>& z) const;
  /// Entry text as stored (factored form for the built-ins).
  const std::string& source(int k) const;

  void set(int k, const std::string& poly_text);
  void load_json(const Json& j);
  void load_file(const std::string& path);

 private:
  std::map<int, std::string> entries_;
};

const QTable& builtin_qtable();

/// f: M -> N with dim M = m, dim N = n. D is the truncation grade of c(f);
/// D < 0 selects the default for the requested computation. When cf is
/// empty the symbolic classes c_1, c_2, ... are used.
struct MapGeometry {
  int m = 0;
  int n = 0;
  int D = -1;
  std::optional<ChernSeries> cf;
};

int thom_grade(int k, int m, int n);
int residual_grade(int q, int m, int n);

/// The rational form whose iterated residue over z1..z_{k-1} is the Thom
/// polynomial of A_{k-1}; `zpower` is the exponent of (z_1...z_{k-1}) in the
/// denominator (m - n for Tp, m - n + 1 for the residual polynomial).
RationalForm morin_form(const RegistryPtr& reg, int k, int zpower, const ChernSeries& cf, const QTable& table);

ChernSeries geometry_series(const RegistryPtr& reg, const MapGeometry& geom, int default_D);

GradedPoly thom_polynomial_morin(const RegistryPtr& reg, int k, const MapGeometry& geom,
                                 const QTable& table = builtin_qtable());

/// R_q, built from its own form with denominator exponent m - n + 1.
GradedPoly residual_polynomial(const RegistryPtr& reg, int q, const MapGeometry& geom,
                               const QTable& table = builtin_qtable());

}  // namespace itres
