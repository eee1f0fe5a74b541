#pragma once

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gb {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite group as a dense multiplication table. Elements are indices 0..order-1.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  // Validates the table (closure, associativity, identity, inverses) and throws GroupError.
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::vector<std::string> names = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n; r^k at k, s r^k at n+k
  static FiniteGroup symmetric3();     // permutations of {1,2,3}, lexicographic

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^{-1}
  int element_order(int a) const;
  bool is_abelian() const;

  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name(int a) const { return names_.at(a); }
  int index(std::string_view name) const;  // throws GroupError
  bool valid(int a) const { return a >= 0 && a < order(); }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  int identity_ = 0;
};

// {"preset": "cyclic"|"dihedral"|"symmetric", "n": k} or {"table": [[...]]};
// optional "names": [...] overrides element names.
FiniteGroup group_parse(const nlohmann::json& j);
FiniteGroup group_parse(std::string_view s);  // "cyclic 2", "dihedral 3", "symmetric 3"
inline FiniteGroup group_parse(const char* s) { return group_parse(std::string_view(s)); }

// x g x^{-1}; throws std::out_of_range on bad indices.
int group_conj(const FiniteGroup& grp, int x, int g);

}  // namespace gb
