#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace itres {

using VarIndex = std::uint32_t;

/// Role a symbol plays in the formulas. Residue, root and weight symbols
/// have grade one; Chern and Segre class symbols carry their index as grade.
enum class VarClass { residue, chern_root, weight, chern_class, segre_class, formal };

std::string_view to_string(VarClass c);
VarClass var_class_from_string(std::string_view s);

struct Variable {
  std::string name;
  VarClass cls;
  int grade;
  std::string latex;
};

/// Append-only symbol table shared by every polynomial of a computation.
/// Indices are stable; once frozen, interning a new name throws.
class Registry {
 public:
  /// Returns the existing index when (name, class, grade) already exists.
  VarIndex intern(std::string_view name, VarClass cls, int grade);
  /// Interns with class and grade inferred from the name (see classify_name).
  VarIndex intern(std::string_view name);

  std::optional<VarIndex> find(std::string_view name) const;
  VarIndex require(std::string_view name) const;

  const Variable& at(VarIndex v) const { return vars_.at(v); }
  std::size_t size() const { return vars_.size(); }

  void freeze() { frozen_ = true; }
  void thaw() { frozen_ = false; }
  bool frozen() const { return frozen_; }

 private:
  std::vector<Variable> vars_;
  std::unordered_map<std::string, VarIndex> index_;
  bool frozen_ = false;
};

using RegistryPtr = std::shared_ptr<Registry>;

/// Freezes a registry for the lifetime of a parallel phase.
class FreezeGuard {
 public:
  explicit FreezeGuard(Registry& r) : reg_(r), was_(r.frozen()) { reg_.freeze(); }
  ~FreezeGuard() {
    if (!was_) reg_.thaw();
  }
  FreezeGuard(const FreezeGuard&) = delete;
  FreezeGuard& operator=(const FreezeGuard&) = delete;

 private:
  Registry& reg_;
  bool was_;
};

inline RegistryPtr make_registry() { return std::make_shared<Registry>(); }

/// Naming conventions used by the parsers and builders:
///   z<i>            residue variable
///   theta<i>        Chern root
///   lambda<i>       equivariant weight
///   c_<i>, cM_<i>, cV_<i>   Chern class of grade i
///   s_<i>           Segre class of grade i
/// An optional copy tag "[t]" may follow any name. Everything else is formal (grade 1).
struct NameClass {
  VarClass cls;
  int grade;
};
NameClass classify_name(std::string_view name);

std::string latex_name(std::string_view name);

/// Builders for the conventional names.
std::string residue_name(int i);
std::string root_name(int i);
std::string weight_name(int i);
std::string chern_name(std::string_view family, int i);
std::string with_copy(std::string_view name, int copy);

}  // namespace itres
