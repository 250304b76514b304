#include "itres/registry.hpp"

#include "itres/error.hpp"

#include <cctype>

namespace itres {

std::string_view to_string(VarClass c) {
  switch (c) {
    case VarClass::residue: return "residue";
    case VarClass::chern_root: return "chern_root";
    case VarClass::weight: return "weight";
    case VarClass::chern_class: return "chern_class";
    case VarClass::segre_class: return "segre_class";
    case VarClass::formal: return "formal";
  }
  return "formal";
}

VarClass var_class_from_string(std::string_view s) {
  if (s == "residue") return VarClass::residue;
  if (s == "chern_root") return VarClass::chern_root;
  if (s == "weight") return VarClass::weight;
  if (s == "chern_class") return VarClass::chern_class;
  if (s == "segre_class") return VarClass::segre_class;
  if (s == "formal") return VarClass::formal;
  throw ParseError("unknown variable class '" + std::string(s) + "'");
}

namespace {

std::string_view strip_copy(std::string_view name) {
  if (!name.empty() && name.back() == ']') {
    auto open = name.rfind('[');
    if (open != std::string_view::npos) return name.substr(0, open);
  }
  return name;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool has_index_suffix(std::string_view base, std::string_view prefix, int* index) {
  if (base.size() <= prefix.size() || base.substr(0, prefix.size()) != prefix) return false;
  auto rest = base.substr(prefix.size());
  if (!all_digits(rest) || rest.size() > 6) return false;
  if (index) *index = std::stoi(std::string(rest));
  return true;
}

}  // namespace

NameClass classify_name(std::string_view name) {
  auto base = strip_copy(name);
  int idx = 0;
  if (has_index_suffix(base, "theta", nullptr)) return {VarClass::chern_root, 1};
  if (has_index_suffix(base, "lambda", nullptr)) return {VarClass::weight, 1};
  if (has_index_suffix(base, "z", nullptr)) return {VarClass::residue, 1};
  for (std::string_view fam : {"c_", "cM_", "cV_", "cN_"}) {
    if (has_index_suffix(base, fam, &idx)) return {VarClass::chern_class, idx};
  }
  if (has_index_suffix(base, "s_", &idx)) return {VarClass::segre_class, idx};
  return {VarClass::formal, 1};
}

std::string latex_name(std::string_view name) {
  std::string copy;
  auto base = strip_copy(name);
  if (base.size() != name.size()) copy = std::string(name.substr(base.size() + 1, name.size() - base.size() - 2));
  std::string out;
  auto split = [&](std::string_view prefix, std::string_view head) {
    if (base.substr(0, prefix.size()) != prefix) return false;
    auto idx = base.substr(prefix.size());
    if (!all_digits(idx)) return false;
    out = std::string(head) + "_{" + std::string(idx) + "}";
    return true;
  };
  if (!(split("theta", "\\theta") || split("lambda", "\\lambda") || split("z", "z") ||
        split("c_", "c") || split("s_", "s") || split("cM_", "c^{M}") || split("cV_", "c^{V}") ||
        split("cN_", "c^{N}"))) {
    out = std::string(base);
  }
  if (!copy.empty()) out = "{" + out + "}^{(" + copy + ")}";
  return out;
}

std::string residue_name(int i) { return "z" + std::to_string(i); }
std::string root_name(int i) { return "theta" + std::to_string(i); }
std::string weight_name(int i) { return "lambda" + std::to_string(i); }
std::string chern_name(std::string_view family, int i) {
  return std::string(family) + "_" + std::to_string(i);
}
std::string with_copy(std::string_view name, int copy) {
  return std::string(name) + "[" + std::to_string(copy) + "]";
}

VarIndex Registry::intern(std::string_view name, VarClass cls, int grade) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) {
    const auto& v = vars_[it->second];
    if (v.cls != cls || v.grade != grade)
      throw Error("variable '" + std::string(name) + "' re-registered with a different class or grade");
    return it->second;
  }
  if (frozen_) throw Error("registry is frozen; cannot add '" + std::string(name) + "'");
  if (grade < 0) throw Error("negative grade for '" + std::string(name) + "'");
  if ((cls == VarClass::residue || cls == VarClass::chern_root || cls == VarClass::weight) && grade != 1)
    throw Error("residue, root and weight variables have grade 1");
  auto idx = static_cast<VarIndex>(vars_.size());
  vars_.push_back({std::string(name), cls, grade, latex_name(name)});
  index_.emplace(std::string(name), idx);
  return idx;
}

VarIndex Registry::intern(std::string_view name) {
  if (auto f = find(name)) return *f;
  auto nc = classify_name(name);
  return intern(name, nc.cls, nc.grade);
}

std::optional<VarIndex> Registry::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarIndex Registry::require(std::string_view name) const {
  if (auto f = find(name)) return *f;
  throw Error("unknown variable '" + std::string(name) + "'");
}

}  // namespace itres
