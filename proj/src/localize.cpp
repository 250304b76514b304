#include "itres/localize.hpp"

#include "itres/error.hpp"
#include "itres/residue.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace itres {

GradedPoly FixedPointDatum::euler() const {
  GradedPoly e(restriction.registry(), Rational(1));
  for (const auto& f : euler_factors) e *= f;
  return e;
}

RationalValue atiyah_bott_sum(const std::vector<FixedPointDatum>& data) {
  if (data.empty()) throw Error("atiyah_bott_sum: no fixed points");
  RegistryPtr reg;
  for (const auto& d : data) {
    reg = common_registry(GradedPoly(reg), d.restriction);
    for (const auto& f : d.euler_factors) reg = common_registry(GradedPoly(reg), f);
  }

  std::vector<GradedPoly> distinct;
  std::vector<int> max_mult;
  // Per datum: multiplicity of each distinct factor and the accumulated sign.
  std::vector<std::vector<int>> mults(data.size());
  std::vector<int> signs(data.size(), 1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const auto& f : data[i].euler_factors) {
      if (f.is_zero()) throw Error("atiyah_bott_sum: zero Euler class");
      std::size_t idx = distinct.size();
      for (std::size_t j = 0; j < distinct.size(); ++j) {
        if (distinct[j] == f) {
          idx = j;
          break;
        }
        if (distinct[j] == -f) {
          idx = j;
          signs[i] = -signs[i];
          break;
        }
      }
      if (idx == distinct.size()) {
        distinct.push_back(f);
        max_mult.push_back(0);
      }
      mults[i].resize(distinct.size(), 0);
      ++mults[i][idx];
    }
  }
  for (auto& m : mults) m.resize(distinct.size(), 0);
  for (std::size_t j = 0; j < distinct.size(); ++j)
    for (const auto& m : mults) max_mult[j] = std::max(max_mult[j], m[j]);

  GradedPoly num(reg);
  for (std::size_t i = 0; i < data.size(); ++i) {
    GradedPoly term = data[i].restriction * Rational(signs[i]);
    for (std::size_t j = 0; j < distinct.size(); ++j)
      term *= distinct[j].pow(static_cast<unsigned>(max_mult[j] - mults[i][j]));
    num += term;
  }

  RationalValue out{num, {}};
  for (std::size_t j = 0; j < distinct.size(); ++j) {
    for (int e = 0; e < max_mult[j]; ++e) {
      if (out.numerator.is_zero()) break;
      if (auto q = out.numerator.divide_exact(distinct[j])) {
        out.numerator = std::move(*q);
      } else {
        out.denominator.push_back(distinct[j]);
      }
    }
  }
  if (out.numerator.is_zero()) out.denominator.clear();
  return out;
}

GradedPoly flag_fixed_point_sum(const GradedPoly& Q, const std::vector<VarIndex>& z, const std::vector<VarIndex>& lambda) {
  const RegistryPtr& reg = Q.registry();
  if (!reg) {
    if (Q.is_zero()) return Q;
    throw Error("flag_fixed_point_sum: Q needs a registry");
  }
  std::size_t k = z.size(), m = lambda.size();
  if (k > m) throw Error("flag_fixed_point_sum: k must not exceed m");
  std::vector<GradedPoly> lam;
  for (VarIndex v : lambda) lam.push_back(GradedPoly::variable(reg, v));

  // Common denominator prod_{a<b}(lambda_b - lambda_a); each term omits a
  // subset of these pairs and carries a sign from the orientation of the rest.
  GradedPoly num(reg);
  std::vector<int> sigma(k);
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == k) {
      std::map<VarIndex, GradedPoly> bind;
      for (std::size_t i = 0; i < k; ++i) bind.emplace(z[i], lam[static_cast<std::size_t>(sigma[i])]);
      GradedPoly term = Q.substitute(bind);
      if (term.is_zero()) return;
      std::vector<std::vector<bool>> in_den(m, std::vector<bool>(m, false));
      int sign = 1;
      std::vector<bool> placed(m, false);
      for (std::size_t j = 0; j < k; ++j) {
        int s = sigma[j];
        placed[static_cast<std::size_t>(s)] = true;
        for (std::size_t a = 0; a < m; ++a) {
          if (placed[a]) continue;
          // factor (lambda_a - lambda_s)
          std::size_t lo = std::min<std::size_t>(a, static_cast<std::size_t>(s));
          std::size_t hi = std::max<std::size_t>(a, static_cast<std::size_t>(s));
          in_den[lo][hi] = true;
          if (a < static_cast<std::size_t>(s)) sign = -sign;
        }
      }
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
          if (!in_den[a][b]) term *= lam[b] - lam[a];
      num += term * Rational(sign);
      return;
    }
    for (std::size_t s = 0; s < m; ++s) {
      if (used[s]) continue;
      used[s] = true;
      sigma[pos] = static_cast<int>(s);
      rec(pos + 1);
      used[s] = false;
    }
  };
  rec(0);

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (num.is_zero()) return num;
      auto q = num.divide_exact(lam[b] - lam[a]);
      if (!q) throw Error("flag_fixed_point_sum: denominators do not cancel");
      num = std::move(*q);
    }
  }
  return num;
}

GradedPoly flag_residue(const GradedPoly& Q, const std::vector<VarIndex>& z, const std::vector<VarIndex>& lambda) {
  const RegistryPtr& reg = Q.registry();
  GradedPoly num = Q;
  std::vector<GradedPoly> zp;
  for (VarIndex v : z) zp.push_back(GradedPoly::variable(reg, v));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) num *= zp[i] - zp[j];
  std::vector<LinearFactor> factors;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (VarIndex l : lambda) factors.push_back({GradedPoly::variable(reg, l) - zp[i], 1});
  return iterated_residue(RationalForm(num, factors, z)).value;
}

bool is_admissible(const AdmissibleSequence& tau) {
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    int idx = static_cast<int>(i) + 1;
    const auto& t = tau[i];
    if (t.empty()) return false;
    int sum = 0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (t[a] < 1 || t[a] > idx) return false;
      if (a > 0 && t[a] <= t[a - 1]) return false;
      sum += t[a];
    }
    if (sum > idx) return false;
    if (!seen.insert(t).second) return false;
  }
  return true;
}

std::vector<AdmissibleSequence> admissible_sequences(int k) {
  std::vector<AdmissibleSequence> out;
  if (k < 1) return out;
  // Candidate subsets of {1..i} with sum <= i, sorted ascending.
  auto subsets_for = [](int i) {
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int next, int sum) {
      if (!cur.empty()) subs.push_back(cur);
      for (int x = next; x <= i && sum + x <= i; ++x) {
        cur.push_back(x);
        rec(x + 1, sum + x);
        cur.pop_back();
      }
    };
    rec(1, 0);
    std::sort(subs.begin(), subs.end());
    return subs;
  };
  std::vector<std::vector<std::vector<int>>> cands;
  for (int i = 1; i <= k; ++i) cands.push_back(subsets_for(i));
  AdmissibleSequence cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (const auto& s : cands[static_cast<std::size_t>(i)]) {
      if (std::find(cur.begin(), cur.end(), s) != cur.end()) continue;
      cur.push_back(s);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

AdmissibleSequence distinguished_sequence(int k) {
  AdmissibleSequence tau;
  for (int i = 1; i <= k; ++i) tau.push_back({i});
  return tau;
}

std::vector<std::array<int, 3>> residue_triples(int k) {
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= k; ++j)
      for (int l = i + j; l <= k; ++l) out.push_back({i, j, l});
  return out;
}

std::vector<GradedPoly> distinguished_euler_factor_list(const RegistryPtr& reg, const std::vector<VarIndex>& z) {
  std::vector<GradedPoly> out;
  int k = static_cast<int>(z.size());
  auto var = [&](int i) { return GradedPoly::variable(reg, z[static_cast<std::size_t>(i - 1)]); };
  for (int i = 1; i <= k; ++i) out.push_back(var(i));
  for (const auto& [i, j, l] : residue_triples(k)) out.push_back(var(i) + var(j) - var(l));
  return out;
}

GradedPoly distinguished_euler_factors(const RegistryPtr& reg, const std::vector<VarIndex>& z) {
  GradedPoly p(reg, Rational(1));
  for (const auto& f : distinguished_euler_factor_list(reg, z)) p *= f;
  return p;
}

}  // namespace itres
