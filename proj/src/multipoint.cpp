#include "itres/multipoint.hpp"

#include "itres/error.hpp"
#include "itres/parallel.hpp"

#include <algorithm>
#include <functional>

namespace itres {

std::vector<SetPartition> set_partitions(int k) {
  std::vector<SetPartition> out;
  if (k < 1) return out;
  std::vector<int> rgs(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int pos, int max_block) {
    if (pos == k) {
      SetPartition p(static_cast<std::size_t>(max_block) + 1);
      for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(max_block, b));
    }
  };
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

std::vector<std::vector<int>> compositions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int i = 1; i <= left; ++i) {
      cur.push_back(i);
      rec(left - i);
      cur.pop_back();
    }
  };
  if (k >= 1) rec(k);
  return out;
}

Integer multinomial(const std::vector<int>& parts) {
  long total = 0;
  Integer denom = 1;
  for (int p : parts) {
    total += p;
    denom *= factorial(p);
  }
  return factorial(total) / denom;
}

int PushforwardSymbol::grade(int codim) const {
  int g = codim;
  for (std::size_t i = 0; i < J.size(); ++i) g += static_cast<int>(i + 1) * J[i];
  return g;
}

std::string PushforwardSymbol::name() const {
  std::string s = side == Side::source ? "f*s_" : "s_";
  if (J.empty()) return s + "0";
  s += "(";
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(J[i]);
  }
  return s + ")";
}

MultipointClass MultipointClass::constant(RegistryPtr reg, int codim, const GradedPoly& c) {
  MultipointClass out(std::move(reg), codim);
  out.add_term({}, c);
  return out;
}

void MultipointClass::add_term(const SymbolProduct& symbols, const GradedPoly& coeff) {
  if (coeff.is_zero()) return;
  SymbolProduct key = symbols;
  std::sort(key.begin(), key.end());
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultipointClass& MultipointClass::operator+=(const MultipointClass& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

MultipointClass operator*(const MultipointClass& a, const MultipointClass& b) {
  MultipointClass out(a.reg_ ? a.reg_ : b.reg_, a.codim_);
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      SymbolProduct s = sa;
      s.insert(s.end(), sb.begin(), sb.end());
      out.add_term(s, ca * cb);
    }
  }
  return out;
}

MultipointClass MultipointClass::scaled(const Rational& c) const {
  MultipointClass out(reg_, codim_);
  for (const auto& [s, p] : terms_) out.add_term(s, p * c);
  return out;
}

MultipointClass MultipointClass::pullback() const {
  MultipointClass out(reg_, codim_);
  for (const auto& [s, c] : terms_) {
    SymbolProduct moved = s;
    for (auto& sym : moved) sym.side = Side::source;
    out.add_term(moved, c);
  }
  return out;
}

GradedPoly MultipointClass::constant_part() const {
  auto it = terms_.find(SymbolProduct{});
  return it == terms_.end() ? GradedPoly(reg_) : it->second;
}

std::vector<int> MultipointClass::term_grades() const {
  std::vector<int> out;
  for (const auto& [s, c] : terms_) {
    auto g = c.grade();
    if (!g) return {};
    int total = *g;
    for (const auto& sym : s) total += sym.grade(codim_);
    out.push_back(total);
  }
  return out;
}

namespace {

std::string symbol_text(const SymbolProduct& s, bool latex) {
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    std::string name;
    if (latex) {
      name = s[i].side == Side::source ? "f^*s_{" : "s_{";
      if (s[i].J.empty()) {
        name += "0";
      } else {
        name += "(";
        for (std::size_t a = 0; a < s[i].J.size(); ++a) name += (a ? "," : "") + std::to_string(s[i].J[a]);
        name += ")";
      }
      name += "}";
    } else {
      name = s[i].name();
    }
    if (!out.empty()) out += latex ? " " : "*";
    out += name;
    if (j - i > 1) out += latex ? "^{" + std::to_string(j - i) + "}" : "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string render(const MultipointClass& c, bool latex) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Symbol-free part last, larger symbol products first.
  std::vector<std::pair<SymbolProduct, GradedPoly>> terms(c.terms().begin(), c.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  for (const auto& [s, coeff] : terms) {
    std::string sym = symbol_text(s, latex);
    std::string cs = latex ? to_latex(coeff) : to_string(coeff);
    bool negative = false;
    if (coeff.size() == 1 && !cs.empty() && cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    std::string body;
    if (sym.empty()) {
      body = coeff.size() > 1 ? "(" + cs + ")" : cs;
    } else if (coeff.is_constant() && coeff.constant_term() * (negative ? -1 : 1) == 1) {
      body = sym;
    } else {
      std::string wrapped = coeff.size() > 1 ? "(" + cs + ")" : cs;
      body = wrapped + (latex ? " " : "*") + sym;
    }
    if (first)
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace

std::string to_string(const MultipointClass& c) { return render(c, false); }
std::string to_latex(const MultipointClass& c) { return render(c, true); }

Json to_json(const MultipointClass& c) {
  Json j;
  j["codim"] = c.codim();
  j["terms"] = Json::array();
  for (const auto& [s, coeff] : c.terms()) {
    Json syms = Json::array();
    for (const auto& sym : s)
      syms.push_back({{"J", sym.J}, {"side", sym.side == Side::target ? "target" : "source"}});
    j["terms"].push_back({{"symbols", syms}, {"coefficient", to_json(coeff)}});
  }
  return j;
}

MultipointClass pushforward_symbol(const GradedPoly& p, int codim) {
  MultipointClass out(p.registry(), codim);
  for (const auto& [m, c] : p.terms()) {
    PushforwardSymbol sym;
    for (const auto& [v, e] : m) {
      const auto& var = p.registry()->at(v);
      if (var.cls != VarClass::chern_class || var.name.rfind("c_", 0) != 0)
        throw ValidationError("pushforward_symbol: only the classes c_i(f) may occur, found '" + var.name + "'");
      auto idx = static_cast<std::size_t>(var.grade);
      if (sym.J.size() < idx) sym.J.resize(idx, 0);
      sym.J[idx - 1] += e;
    }
    out.add_term({sym}, GradedPoly(p.registry(), c));
  }
  return out;
}

MultipointClass pushforward_residual(const RegistryPtr& reg, int q, const MapGeometry& geom, const QTable& table) {
  return pushforward_symbol(residual_polynomial(reg, q, geom, table), geom.n - geom.m);
}

namespace {

std::map<int, MultipointClass> residual_pushforwards(const RegistryPtr& reg, int k, const MapGeometry& geom,
                                                     const QTable& table) {
  std::map<int, MultipointClass> s;
  for (int q = 1; q <= k; ++q) s.emplace(q, pushforward_residual(reg, q, geom, table));
  return s;
}

std::map<int, GradedPoly> residuals(const RegistryPtr& reg, int k, const MapGeometry& geom, const QTable& table) {
  std::map<int, GradedPoly> r;
  for (int q = 1; q <= k; ++q) r.emplace(q, residual_polynomial(reg, q, geom, table));
  return r;
}

}  // namespace

std::map<std::vector<int>, Integer> sieve_expansion(int k, TargetConvention conv) {
  std::map<std::vector<int>, Integer> out;
  if (conv == TargetConvention::sieve) {
    for (auto c : compositions(k)) {
      Integer mult = multinomial(c);
      std::sort(c.begin(), c.end());
      out[c] += mult;
    }
  } else {
    for (const auto& p : set_partitions(k)) {
      std::vector<int> sizes;
      for (const auto& b : p) sizes.push_back(static_cast<int>(b.size()));
      std::sort(sizes.begin(), sizes.end());
      out[sizes] += 1;
    }
  }
  return out;
}

MultipointClass sieve_piece(const RegistryPtr& reg, const std::vector<int>& sizes, const MapGeometry& geom,
                            const QTable& table) {
  MultipointClass out = MultipointClass::constant(reg, geom.n - geom.m, GradedPoly(reg, Rational(1)));
  for (int q : sizes) out = out * pushforward_residual(reg, q, geom, table);
  return out;
}

MultipointClass multipoint_target_class(const RegistryPtr& reg, int k, const MapGeometry& geom, TargetConvention conv,
                                        const QTable& table) {
  if (k < 1) throw ValidationError("multipoint: k must be at least 1");
  auto S = residual_pushforwards(reg, k, geom, table);
  MultipointClass out(reg, geom.n - geom.m);
  for (const auto& [sizes, coeff] : sieve_expansion(k, conv)) {
    MultipointClass piece = MultipointClass::constant(reg, geom.n - geom.m, GradedPoly(reg, Rational(1)));
    for (int q : sizes) piece = piece * S.at(q);
    out += piece.scaled(Rational(coeff));
  }
  return out;
}

MultipointClass multipoint_source_class(const RegistryPtr& reg, int k, const MapGeometry& geom, const QTable& table) {
  if (k < 1) throw ValidationError("multipoint: k must be at least 1");
  auto S = residual_pushforwards(reg, k, geom, table);
  auto R = residuals(reg, k, geom, table);
  int codim = geom.n - geom.m;
  MultipointClass out(reg, codim);
  for (const auto& p : set_partitions(k)) {
    // Blocks are ordered by minimum, so the block containing 1 comes first.
    MultipointClass term = MultipointClass::constant(reg, codim, R.at(static_cast<int>(p[0].size())));
    for (std::size_t t = 1; t < p.size(); ++t) term = term * S.at(static_cast<int>(p[t].size())).pullback();
    out += term;
  }
  return out;
}

GradedPoly residual_from_sieve(const RegistryPtr& reg, int k, const MapGeometry& geom, const QTable& table) {
  if (k < 1) throw ValidationError("residual_from_sieve: k must be at least 1");
  int codim = geom.n - geom.m;
  std::map<int, MultipointClass> m_cls, n_cls;
  for (int j = 1; j <= k; ++j) {
    m_cls.emplace(j, multipoint_source_class(reg, j, geom, table));
    n_cls.emplace(j, multipoint_target_class(reg, j, geom, TargetConvention::partition, table).pullback());
  }
  MultipointClass total(reg, codim);
  for (const auto& p : set_partitions(k)) {
    std::size_t s = p.size();
    Integer sign_fact = factorial(static_cast<long>(s) - 1);
    if (s % 2 == 0) sign_fact = -sign_fact;
    MultipointClass term = m_cls.at(static_cast<int>(p[0].size()));
    for (std::size_t t = 1; t < s; ++t) term = term * n_cls.at(static_cast<int>(p[t].size()));
    total += term.scaled(Rational(sign_fact));
  }
  for (const auto& [sym, c] : total.terms())
    if (!sym.empty()) throw Error("residual_from_sieve: pushforward symbols did not cancel");
  return total.constant_part();
}

ConventionsReport conventions_report(int k) {
  ConventionsReport r;
  r.k = k;
  r.target_normalization = factorial(k);
  r.source_normalization = factorial(k - 1);
  for (const auto& [sizes, coeff] : sieve_expansion(k, TargetConvention::sieve)) {
    // The geometric computations for two and three points display each
    // product f_*Tp...(f) f_*[1]... with coefficient one.
    Integer display = (k == 2 || k == 3) ? Integer(1) : Integer(0);
    r.entries.push_back({sizes, coeff, display});
  }
  return r;
}

std::string to_string(const ConventionsReport& r) {
  std::string out = "conventions report for k = " + std::to_string(r.k) + "\n";
  out += "  n_k = " + r.target_normalization.get_str() + " * nbar_k, m_k = " + r.source_normalization.get_str() +
         " * mbar_k\n";
  for (const auto& e : r.entries) {
    std::string prod;
    for (int q : e.sizes) prod += (prod.empty() ? "S_" : "*S_") + std::to_string(q);
    out += "  " + prod + ": sieve coefficient " + e.sieve_coefficient.get_str();
    if (e.display_coefficient != 0) {
      Rational ratio(e.sieve_coefficient, e.display_coefficient);
      ratio.canonicalize();
      out += ", geometric display coefficient " + e.display_coefficient.get_str() + ", constant " + to_string(ratio);
    } else {
      out += ", no geometric display";
    }
    out += "\n";
  }
  return out;
}

}  // namespace itres
