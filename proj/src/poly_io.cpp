#include "itres/poly_io.hpp"

#include "itres/error.hpp"

#include <cctype>

namespace itres {

namespace {

class Parser {
 public:
  Parser(const RegistryPtr& reg, std::string_view text) : reg_(reg), s_(normalize(text)) {}

  GradedPoly parse() {
    GradedPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  static std::string normalize(std::string_view text) {
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
      // U+2212 MINUS SIGN
      if (i + 2 < text.size() + 0 && static_cast<unsigned char>(text[i]) == 0xE2 &&
          static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
        out += '-';
        i += 2;
        continue;
      }
      out += text[i];
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_factor() {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  GradedPoly expr() {
    GradedPoly p = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        p += term();
      } else if (c == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  GradedPoly term() {
    GradedPoly p = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p *= unary();
      } else if (c == '/') {
        ++pos_;
        GradedPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p *= Rational(1) / d.constant_term();
      } else if (starts_factor()) {
        p *= power();
      } else {
        return p;
      }
    }
  }

  GradedPoly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  GradedPoly power() {
    GradedPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool brace = false;
      if (pos_ < s_.size() && s_[pos_] == '{') {
        brace = true;
        ++pos_;
      }
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected nonnegative integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      unsigned e = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
      if (brace) {
        if (pos_ >= s_.size() || s_[pos_] != '}') fail("expected '}'");
        ++pos_;
      }
      return base.pow(e);
    }
    return base;
  }

  GradedPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      GradedPoly p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return GradedPoly(reg_, Rational(Integer(s_.substr(start, pos_ - start), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '[') {
        std::size_t close = s_.find(']', pos_);
        if (close == std::string::npos) fail("unterminated copy tag");
        pos_ = close + 1;
      }
      std::string name = s_.substr(start, pos_ - start);
      return GradedPoly::variable(reg_, name);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RegistryPtr& reg_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

GradedPoly parse_poly(const RegistryPtr& reg, std::string_view text) {
  if (!reg) throw Error("parse_poly needs a registry");
  GradedPoly p = Parser(reg, text).parse();
  return p.registry() ? p : GradedPoly(reg, p.constant_term());
}

Json to_json(const GradedPoly& p) {
  Json j;
  auto vars = p.variables();
  if (p.registry())
    std::sort(vars.begin(), vars.end(), [&](VarIndex a, VarIndex b) {
      return natural_name_less(p.registry()->at(a).name, p.registry()->at(b).name);
    });
  j["vars"] = Json::array();
  for (VarIndex v : vars) {
    const auto& var = p.registry()->at(v);
    j["vars"].push_back({{"name", var.name}, {"class", std::string(to_string(var.cls))}, {"grade", var.grade}});
  }
  j["terms"] = Json::array();
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  if (p.registry()) {
    const Registry& reg = *p.registry();
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return print_before(reg, a.first, b.first); });
  }
  for (const auto& [m, c] : terms) {
    Json exp = Json::array();
    for (VarIndex v : vars) exp.push_back(monomial_exponent(m, v));
    j["terms"].push_back({{"exp", exp}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return j;
}

GradedPoly poly_from_json(const RegistryPtr& reg, const Json& j) {
  try {
    std::vector<VarIndex> idx;
    for (const auto& v : j.at("vars")) {
      std::string name = v.at("name").get<std::string>();
      if (v.contains("class")) {
        idx.push_back(reg->intern(name, var_class_from_string(v.at("class").get<std::string>()),
                                  v.contains("grade") ? v.at("grade").get<int>() : classify_name(name).grade));
      } else {
        idx.push_back(reg->intern(name));
      }
    }
    GradedPoly p(reg);
    for (const auto& t : j.at("terms")) {
      const auto& exp = t.at("exp");
      if (exp.size() != idx.size()) throw ParseError("term exponent length does not match vars");
      std::vector<std::pair<VarIndex, Exponent>> raw;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        int e = exp[i].get<int>();
        if (e < 0) throw ParseError("negative exponent in polynomial JSON");
        if (e > 0) raw.emplace_back(idx[i], e);
      }
      std::sort(raw.begin(), raw.end());
      Monomial m;
      for (const auto& [v, e] : raw) {
        if (!m.empty() && m.back().first == v)
          m.back().second += e;
        else
          m.emplace_back(v, e);
      }
      auto field = [&](const char* key, const char* dflt) {
        if (!t.contains(key)) return std::string(dflt);
        const auto& f = t.at(key);
        return f.is_string() ? f.get<std::string>() : std::to_string(f.get<long long>());
      };
      Rational c = parse_rational(field("num", "1") + "/" + field("den", "1"));
      p.add_term(m, c);
    }
    return p;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace itres
