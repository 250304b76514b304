#include "itres/poly.hpp"

#include "itres/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

namespace itres {

namespace {

Exponent checked_add(Exponent a, Exponent b) {
  long long s = static_cast<long long>(a) + b;
  if (s > std::numeric_limits<Exponent>::max()) throw Error("exponent overflow");
  return static_cast<Exponent>(s);
}

// Lexicographic order with the smallest registry index most significant.
bool lex_greater(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return i < a.size() && i == b.size();
}

struct LexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_greater(b, a); }
};

bool divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (const auto& [v, e] : d) {
    while (j < m.size() && m[j].first < v) ++j;
    if (j == m.size() || m[j].first != v || m[j].second < e) return false;
  }
  return true;
}

Monomial monomial_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  std::size_t j = 0;
  for (const auto& [v, e] : m) {
    Exponent r = e;
    if (j < d.size() && d[j].first == v) r -= d[j++].second;
    if (r > 0) out.emplace_back(v, r);
  }
  return out;
}

}  // namespace

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, checked_add(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

Exponent monomial_exponent(const Monomial& m, VarIndex v) {
  for (const auto& [w, e] : m)
    if (w == v) return e;
  return 0;
}

namespace {

// GMP arithmetic assumes canonical quotients; values built as mpq_class(a, b)
// are not, so every coefficient is normalized on the way in.
Rational canonical(const Rational& c) {
  Rational out = c;
  out.canonicalize();
  return out;
}

}  // namespace

GradedPoly::GradedPoly(const Rational& c) { add_term(Monomial{}, c); }

GradedPoly::GradedPoly(RegistryPtr reg, const Rational& c) : reg_(std::move(reg)) { add_term(Monomial{}, c); }

GradedPoly GradedPoly::variable(RegistryPtr reg, VarIndex v, Exponent e) {
  if (!reg || v >= reg->size()) throw Error("variable index outside registry");
  GradedPoly p(std::move(reg));
  Monomial m;
  if (e > 0) m.emplace_back(v, e);
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

GradedPoly GradedPoly::variable(RegistryPtr reg, std::string_view name, Exponent e) {
  VarIndex v = reg->intern(name);
  return variable(std::move(reg), v, e);
}

GradedPoly GradedPoly::monomial(RegistryPtr reg, Monomial m, const Rational& c) {
  GradedPoly p(std::move(reg));
  p.add_term(m, c);
  return p;
}

const RegistryPtr& common_registry(const GradedPoly& a, const GradedPoly& b) {
  if (a.registry() && b.registry() && a.registry() != b.registry()) throw RegistryMismatch();
  return a.registry() ? a.registry() : b.registry();
}

void GradedPoly::adopt(const GradedPoly& o) {
  if (o.reg_) {
    if (reg_ && reg_ != o.reg_) throw RegistryMismatch();
    if (!reg_) reg_ = o.reg_;
  }
}

bool GradedPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational GradedPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c_in) {
  Rational c = canonical(c_in);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  GradedPoly out(common_registry(a, b));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
  return out;
}

GradedPoly& GradedPoly::operator*=(const GradedPoly& o) {
  *this = *this * o;
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c_in) {
  Rational c = canonical(c_in);
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  if (a.reg_ && b.reg_ && a.reg_ != b.reg_) throw RegistryMismatch();
  return a.terms_ == b.terms_;
}

GradedPoly GradedPoly::pow(unsigned e) const {
  GradedPoly result(reg_, Rational(1));
  GradedPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

bool GradedPoly::contains(VarIndex v) const {
  for (const auto& [m, c] : terms_)
    if (monomial_exponent(m, v) > 0) return true;
  return false;
}

std::vector<VarIndex> GradedPoly::variables() const {
  std::set<VarIndex> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) s.insert(v);
  return {s.begin(), s.end()};
}

Exponent GradedPoly::degree_in(VarIndex v) const {
  Exponent d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_exponent(m, v));
  return d;
}

Exponent GradedPoly::min_degree_in(VarIndex v) const {
  if (terms_.empty()) return 0;
  Exponent d = std::numeric_limits<Exponent>::max();
  for (const auto& [m, c] : terms_) d = std::min(d, monomial_exponent(m, v));
  return d;
}

int GradedPoly::total_degree(const std::vector<VarIndex>& vars) const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& [v, e] : m)
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) d += e;
    best = std::max(best, d);
  }
  return best;
}

int GradedPoly::monomial_grade(const Monomial& m) const {
  if (m.empty()) return 0;
  if (!reg_) throw Error("grade of a monomial without registry");
  long long g = 0;
  for (const auto& [v, e] : m) g += static_cast<long long>(reg_->at(v).grade) * e;
  return static_cast<int>(g);
}

std::optional<int> GradedPoly::grade() const {
  if (terms_.empty()) return std::nullopt;
  int g = monomial_grade(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (monomial_grade(m) != g) return std::nullopt;
  return g;
}

bool GradedPoly::is_homogeneous() const { return terms_.empty() || grade().has_value(); }

int GradedPoly::max_grade() const {
  int g = 0;
  for (const auto& [m, c] : terms_) g = std::max(g, monomial_grade(m));
  return g;
}

GradedPoly GradedPoly::coefficient(VarIndex v, Exponent power) const {
  GradedPoly out(reg_);
  for (const auto& [m, c] : terms_) {
    if (monomial_exponent(m, v) != power) continue;
    Monomial rest;
    for (const auto& p : m)
      if (p.first != v) rest.push_back(p);
    out.terms_.emplace(std::move(rest), c);
  }
  return out;
}

std::map<Exponent, GradedPoly> GradedPoly::by_power(VarIndex v) const {
  std::map<Exponent, GradedPoly> out;
  for (const auto& [m, c] : terms_) {
    Exponent e = 0;
    Monomial rest;
    for (const auto& p : m) {
      if (p.first == v)
        e = p.second;
      else
        rest.push_back(p);
    }
    auto [it, ins] = out.try_emplace(e, GradedPoly(reg_));
    it->second.terms_.emplace(std::move(rest), c);
  }
  return out;
}

GradedPoly GradedPoly::grade_part(int d) const {
  GradedPoly out(reg_);
  for (const auto& [m, c] : terms_)
    if (monomial_grade(m) == d) out.terms_.emplace(m, c);
  return out;
}

GradedPoly GradedPoly::truncate_grade(int max_d) const {
  GradedPoly out(reg_);
  for (const auto& [m, c] : terms_)
    if (monomial_grade(m) <= max_d) out.terms_.emplace(m, c);
  return out;
}

GradedPoly GradedPoly::substitute(const std::map<VarIndex, GradedPoly>& bindings) const {
  RegistryPtr reg = reg_;
  for (const auto& [v, p] : bindings) {
    if (p.reg_ && reg && p.reg_ != reg) throw RegistryMismatch();
    if (!reg) reg = p.reg_;
  }
  std::map<std::pair<VarIndex, Exponent>, GradedPoly> power_cache;
  auto power = [&](VarIndex v, Exponent e) -> const GradedPoly& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) it = power_cache.emplace(key, bindings.at(v).pow(static_cast<unsigned>(e))).first;
    return it->second;
  };
  GradedPoly out(reg);
  for (const auto& [m, c] : terms_) {
    Monomial kept;
    GradedPoly factor(reg, c);
    for (const auto& [v, e] : m) {
      if (bindings.count(v))
        factor *= power(v, e);
      else
        kept.emplace_back(v, e);
    }
    if (kept.empty()) {
      out += factor;
    } else {
      for (const auto& [fm, fc] : factor.terms_) out.add_term(monomial_mul(kept, fm), fc);
    }
  }
  return out;
}

GradedPoly GradedPoly::shift_down(VarIndex v, Exponent e) const {
  if (e == 0) return *this;
  Monomial d{{v, e}};
  GradedPoly out(reg_);
  for (const auto& [m, c] : terms_) {
    if (!divides(d, m)) throw Error("shift_down: monomial not divisible");
    out.terms_.emplace(monomial_div(m, d), c);
  }
  return out;
}

std::pair<Monomial, Rational> GradedPoly::lex_leading() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (lex_greater(it->first, best->first)) best = it;
  return *best;
}

std::optional<GradedPoly> GradedPoly::divide_exact(const GradedPoly& d) const {
  const RegistryPtr& reg = common_registry(*this, d);
  if (d.is_zero()) throw Error("division by zero polynomial");
  auto [lm, lc] = d.lex_leading();
  std::map<Monomial, Rational, LexLess> rem(terms_.begin(), terms_.end());
  GradedPoly q(reg);
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if (!divides(lm, top->first)) return std::nullopt;
    Monomial qm = monomial_div(top->first, lm);
    Rational qc = top->second / lc;
    q.terms_.emplace(qm, qc);
    for (const auto& [dm, dc] : d.terms_) {
      auto m = monomial_mul(qm, dm);
      auto [it, ins] = rem.try_emplace(m, -qc * dc);
      if (!ins) {
        it->second -= qc * dc;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return q;
}

GradedPoly transfer(const GradedPoly& p, const RegistryPtr& to,
                    const std::function<std::string(const std::string&)>& rename) {
  if (!p.registry()) return GradedPoly(to, p.constant_term());
  if (p.registry() == to && !rename) return p;
  std::map<VarIndex, VarIndex> map;
  for (VarIndex v : p.variables()) {
    const auto& var = p.registry()->at(v);
    std::string name = rename ? rename(var.name) : var.name;
    auto nc = classify_name(name);
    bool same_kind = nc.cls == var.cls;
    map[v] = same_kind ? to->intern(name, var.cls, var.grade) : to->intern(name);
  }
  GradedPoly out(to);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::pair<VarIndex, Exponent>> raw;
    for (const auto& [v, e] : m) raw.emplace_back(map.at(v), e);
    std::sort(raw.begin(), raw.end());
    Monomial mm;
    for (const auto& [v, e] : raw) {
      if (!mm.empty() && mm.back().first == v)
        mm.back().second += e;
      else
        mm.emplace_back(v, e);
    }
    out.add_term(mm, c);
  }
  return out;
}

bool natural_name_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      std::string x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
      x.erase(0, std::min(x.find_first_not_of('0'), x.size()));
      y.erase(0, std::min(y.find_first_not_of('0'), y.size()));
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

Monomial display_order(const Registry& reg, const Monomial& m) {
  Monomial out = m;
  std::sort(out.begin(), out.end(),
            [&](const auto& x, const auto& y) { return natural_name_less(reg.at(x.first).name, reg.at(y.first).name); });
  return out;
}

bool print_before(const Registry& reg, const Monomial& a, const Monomial& b) {
  auto grade = [&](const Monomial& m) {
    long long g = 0;
    for (const auto& [v, e] : m) g += static_cast<long long>(reg.at(v).grade) * e;
    return g;
  };
  auto ga = grade(a), gb = grade(b);
  if (ga != gb) return ga > gb;
  Monomial x = display_order(reg, a), y = display_order(reg, b);
  std::size_t i = 0;
  for (; i < x.size() && i < y.size(); ++i) {
    const auto& nx = reg.at(x[i].first).name;
    const auto& ny = reg.at(y[i].first).name;
    if (nx != ny) return natural_name_less(nx, ny);
    if (x[i].second != y[i].second) return x[i].second > y[i].second;
  }
  return i < x.size() && i == y.size();
}

namespace {

std::vector<std::pair<Monomial, Rational>> sorted_terms(const GradedPoly& p) {
  std::vector<std::pair<Monomial, Rational>> v(p.terms().begin(), p.terms().end());
  if (p.registry()) {
    const Registry& reg = *p.registry();
    std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return print_before(reg, x.first, y.first); });
  }
  return v;
}

}  // namespace

std::string to_string(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(p)) {
    std::string mono;
    for (const auto& [v, e] : display_order(*p.registry(), m)) {
      if (!mono.empty()) mono += "*";
      mono += p.registry()->at(v).name;
      if (e != 1) mono += "^" + std::to_string(e);
    }
    Rational a = abs(c);
    std::string body;
    if (mono.empty())
      body = to_string(a);
    else if (a == 1)
      body = mono;
    else
      body = to_string(a) + "*" + mono;
    if (first)
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string to_latex(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(p)) {
    std::string mono;
    for (const auto& [v, e] : display_order(*p.registry(), m)) {
      if (!mono.empty()) mono += " ";
      mono += p.registry()->at(v).latex;
      if (e != 1) mono += "^{" + std::to_string(e) + "}";
    }
    Rational a = abs(c);
    std::string coef;
    if (a.get_den() != 1)
      coef = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    else if (a != 1 || mono.empty())
      coef = a.get_num().get_str();
    std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + " " + mono);
    if (first)
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace itres
