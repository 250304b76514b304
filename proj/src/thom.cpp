#include "itres/thom.hpp"

#include "itres/error.hpp"
#include "itres/localize.hpp"

#include <fstream>
#include <sstream>

namespace itres {

QTable::QTable() {
  entries_[1] = "1";
  entries_[2] = "1";
  entries_[3] = "1";
  entries_[4] = "2*z1 + z2 - z4";
  entries_[5] = "(2*z1 + z2 - z5)*(2*z1^2 + 3*z1*z2 - 2*z1*z5 + 2*z2*z3 - z2*z4 - z2*z5 - z3*z4 + z4*z5)";
}

const QTable& builtin_qtable() {
  static const QTable table;
  return table;
}

const std::string& QTable::source(int k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) throw QTableExhausted(k);
  return it->second;
}

GradedPoly QTable::polynomial(const RegistryPtr& reg, int k) const {
  if (k == 0) return GradedPoly(reg, Rational(1));
  return parse_poly(reg, source(k));
}

GradedPoly QTable::polynomial(const RegistryPtr& reg, int k, const std::vector<VarIndex>& z) const {
  if (static_cast<int>(z.size()) != k) throw Error("Q-table: expected " + std::to_string(k) + " variables");
  if (k == 0) return GradedPoly(reg, Rational(1));
  auto scratch = make_registry();
  GradedPoly q = parse_poly(scratch, source(k));
  return transfer(q, reg, [&](const std::string& name) {
    if (name.size() > 1 && name[0] == 'z') {
      int i = std::stoi(name.substr(1));
      if (i >= 1 && i <= k) return reg->at(z[static_cast<std::size_t>(i - 1)]).name;
    }
    throw Error("Q-table entry " + std::to_string(k) + " uses variable '" + name + "' outside z1..z" + std::to_string(k));
  });
}

void QTable::set(int k, const std::string& poly_text) {
  if (k < 1) throw ValidationError("Q-table index must be positive");
  auto scratch = make_registry();
  GradedPoly q = parse_poly(scratch, poly_text);
  for (VarIndex v : q.variables()) {
    const auto& name = scratch->at(v).name;
    bool ok = name.size() > 1 && name[0] == 'z' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
              std::stoi(name.substr(1)) >= 1 && std::stoi(name.substr(1)) <= k;
    if (!ok) throw ValidationError("Q_" + std::to_string(k) + " may only use z1..z" + std::to_string(k));
  }
  if (!q.is_homogeneous()) throw ValidationError("Q_" + std::to_string(k) + " must be homogeneous");
  entries_[k] = poly_text;
}

void QTable::load_json(const Json& j) {
  if (!j.is_array()) throw ParseError("Q-table JSON must be a list of {k, poly}");
  for (const auto& e : j) {
    try {
      int k = e.at("k").get<int>();
      const auto& p = e.at("poly");
      if (p.is_string()) {
        set(k, p.get<std::string>());
      } else {
        auto scratch = make_registry();
        set(k, to_string(poly_from_json(scratch, p)));
      }
    } catch (const Json::exception& ex) {
      throw ParseError(std::string("malformed Q-table entry: ") + ex.what());
    }
  }
}

void QTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open Q-table file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw ParseError("Q-table file '" + path + "': " + ex.what());
  }
  load_json(j);
}

int thom_grade(int k, int m, int n) { return (k - 1) * (n - m + 1); }
int residual_grade(int q, int m, int n) { return (q - 1) * (n - m); }

ChernSeries geometry_series(const RegistryPtr& reg, const MapGeometry& geom, int default_D) {
  int D = geom.D >= 0 ? geom.D : std::max(default_D, 1);
  if (geom.cf) {
    ChernSeries s = *geom.cf;
    if (s.truncation() > D) s.coeffs.resize(static_cast<std::size_t>(D) + 1);
    while (s.truncation() < D) s.coeffs.push_back(GradedPoly(reg));
    return s;
  }
  return symbolic_series(reg, "c", D);
}

RationalForm morin_form(const RegistryPtr& reg, int k, int zpower, const ChernSeries& cf, const QTable& table) {
  int j = k - 1;
  std::vector<VarIndex> z;
  for (int i = 1; i <= j; ++i) z.push_back(reg->intern(residue_name(i), VarClass::residue, 1));
  GradedPoly num = table.polynomial(reg, j, z) * Rational(j % 2 == 0 ? 1 : -1);
  for (int a = 0; a < j; ++a)
    for (int b = a + 1; b < j; ++b)
      num *= GradedPoly::variable(reg, z[static_cast<std::size_t>(a)]) - GradedPoly::variable(reg, z[static_cast<std::size_t>(b)]);
  int D = cf.truncation();
  std::vector<LinearFactor> factors;
  for (VarIndex v : z) {
    num *= series_at_inverse(cf, v).numerator;
    factors.push_back({GradedPoly::variable(reg, v), zpower + D});
  }
  auto var = [&](int i) { return GradedPoly::variable(reg, z[static_cast<std::size_t>(i - 1)]); };
  for (const auto& [a, b, l] : residue_triples(j)) factors.push_back({var(a) + var(b) - var(l), 1});
  return RationalForm(std::move(num), factors, std::move(z));
}

GradedPoly thom_polynomial_morin(const RegistryPtr& reg, int k, const MapGeometry& geom, const QTable& table) {
  if (k < 1) throw ValidationError("thom: k must be at least 1");
  if (k == 1) return GradedPoly(reg, Rational(1));
  ChernSeries cf = geometry_series(reg, geom, thom_grade(k, geom.m, geom.n));
  return iterated_residue(morin_form(reg, k, geom.m - geom.n, cf, table)).value;
}

GradedPoly residual_polynomial(const RegistryPtr& reg, int q, const MapGeometry& geom, const QTable& table) {
  if (q < 1) throw ValidationError("residual: q must be at least 1");
  if (q == 1) return GradedPoly(reg, Rational(1));
  ChernSeries cf = geometry_series(reg, geom, residual_grade(q, geom.m, geom.n));
  // Built independently of the Thom form: the exponent m - n + 1 is applied
  // directly to (z_1...z_{q-1}), with its own variable list and factors.
  int j = q - 1;
  std::vector<VarIndex> z;
  for (int i = 1; i <= j; ++i) z.push_back(reg->intern(residue_name(i), VarClass::residue, 1));
  std::vector<GradedPoly> zp;
  for (VarIndex v : z) zp.push_back(GradedPoly::variable(reg, v));
  GradedPoly vandermonde(reg, Rational(1));
  for (int b = 0; b < j; ++b)
    for (int a = 0; a < b; ++a) vandermonde *= zp[static_cast<std::size_t>(a)] - zp[static_cast<std::size_t>(b)];
  GradedPoly chern(reg, Rational(1));
  for (VarIndex v : z) chern *= series_at_inverse(cf, v).numerator;
  GradedPoly num = table.polynomial(reg, j, z) * vandermonde * chern;
  if (j % 2 == 1) num = -num;
  std::vector<LinearFactor> factors;
  int power = geom.m - geom.n + 1 + cf.truncation();
  for (const auto& p : zp) factors.push_back({p, power});
  for (int l = 1; l <= j; ++l)
    for (int a = 1; 2 * a <= l; ++a)
      for (int b = a; a + b <= l; ++b)
        factors.push_back({zp[static_cast<std::size_t>(a - 1)] + zp[static_cast<std::size_t>(b - 1)] - zp[static_cast<std::size_t>(l - 1)], 1});
  return iterated_residue(RationalForm(std::move(num), factors, std::move(z))).value;
}

}  // namespace itres
