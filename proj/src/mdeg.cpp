#include "itres/mdeg.hpp"

#include "itres/error.hpp"
#include "itres/parallel.hpp"

#include <algorithm>
#include <functional>

namespace itres {

namespace {

bool leq(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<std::vector<int>> subsets_of_size(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (int i = next; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::vector<ExponentVector> generators, std::vector<GradedPoly> weights)
    : weights_(std::move(weights)) {
  for (const auto& g : generators) {
    if (g.size() != weights_.size()) throw ValidationError("generator length does not match the number of weights");
    for (int e : g)
      if (e < 0) throw ValidationError("negative exponent in monomial generator");
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < generators.size() && minimal; ++j)
      if (i != j && leq(generators[j], generators[i])) minimal = false;
    if (minimal) gens_.push_back(generators[i]);
  }
}

bool MonomialIdeal::is_unit() const {
  return std::any_of(gens_.begin(), gens_.end(),
                     [](const ExponentVector& g) { return std::all_of(g.begin(), g.end(), [](int e) { return e == 0; }); });
}

bool MonomialIdeal::contains(const ExponentVector& a) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const ExponentVector& g) { return leq(g, a); });
}

int codimension(const MonomialIdeal& I) {
  if (I.is_unit()) throw ValidationError("unit ideal has no codimension");
  int n = static_cast<int>(I.ambient_dim());
  for (int s = 0; s <= n; ++s) {
    for (const auto& S : subsets_of_size(n, s)) {
      bool covers = std::all_of(I.generators().begin(), I.generators().end(), [&](const ExponentVector& g) {
        return std::any_of(S.begin(), S.end(), [&](int i) { return g[static_cast<std::size_t>(i)] > 0; });
      });
      if (covers) return s;
    }
  }
  return n;
}

long multiplicity(const MonomialIdeal& I, const std::vector<int>& subset) {
  if (I.is_unit()) throw ValidationError("unit ideal");
  if (static_cast<int>(subset.size()) != codimension(I))
    throw ValidationError("multiplicity: subset size must equal the codimension");
  std::size_t n = I.ambient_dim();
  std::vector<bool> in_s(n, false);
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw ValidationError("multiplicity: variable index out of range");
    in_s[static_cast<std::size_t>(i)] = true;
  }
  // With b free on the complement, x^{a+b} lies in I iff some generator
  // restricted to the subset divides x^a.
  std::vector<ExponentVector> proj;
  for (const auto& g : I.generators()) {
    ExponentVector p(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (in_s[i]) p[i] = g[i];
    proj.push_back(p);
  }
  std::vector<int> bound(n, 0);
  for (const auto& g : proj)
    for (std::size_t i = 0; i < n; ++i) bound[i] = std::max(bound[i], g[i]);

  auto outside = [&](const ExponentVector& a) {
    return std::none_of(proj.begin(), proj.end(), [&](const ExponentVector& g) { return leq(g, a); });
  };
  long count = 0;
  ExponentVector a(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == subset.size()) {
      if (outside(a)) {
        for (int i : subset)
          if (a[static_cast<std::size_t>(i)] == bound[static_cast<std::size_t>(i)])
            throw Error("multiplicity: lattice count does not terminate on this subset");
        ++count;
      }
      return;
    }
    auto i = static_cast<std::size_t>(subset[pos]);
    for (int e = 0; e <= bound[i]; ++e) {
      a[i] = e;
      rec(pos + 1);
    }
    a[i] = 0;
  };
  rec(0);
  return count;
}

GradedPoly multidegree(const MonomialIdeal& I) {
  int s = codimension(I);
  RegistryPtr reg;
  for (const auto& w : I.weights()) reg = common_registry(GradedPoly(reg), w);
  auto subsets = subsets_of_size(static_cast<int>(I.ambient_dim()), s);
  auto parts = parallel_map<GradedPoly>(subsets.size(), [&](std::size_t idx) {
    long mult = multiplicity(I, subsets[idx]);
    if (mult == 0) return GradedPoly(reg);
    GradedPoly term(reg, Rational(mult));
    for (int i : subsets[idx]) term *= I.weights()[static_cast<std::size_t>(i)];
    return term;
  });
  GradedPoly total(reg);
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace itres
