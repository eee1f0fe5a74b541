#include "gblocks/group.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace gb {

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<char> seen(v.size(), 0);
  for (int x : v) {
    if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                    std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw GroupError("group table is empty");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) throw GroupError("group table is not square");
  for (int a = 0; a < n; ++a) {
    if (!is_permutation_of_range(table[a]))
      throw GroupError("row " + std::to_string(a) + " of the group table is not a permutation");
    std::vector<int> col(n);
    for (int b = 0; b < n; ++b) col[b] = table[b][a];
    if (!is_permutation_of_range(col))
      throw GroupError("column " + std::to_string(a) + " of the group table is not a permutation");
  }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool unit = true;
    for (int b = 0; b < n && unit; ++b) unit = table[a][b] == b && table[b][a] == b;
    if (unit) e = a;
  }
  if (e < 0) throw GroupError("group table has no two-sided identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw GroupError("group table is not associative at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
  FiniteGroup g;
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) g.inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inv_[a] < 0) throw GroupError("element " + std::to_string(a) + " has no inverse");
  if (names.empty()) {
    for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
  }
  if (static_cast<int>(names.size()) != n) throw GroupError("wrong number of element names");
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw GroupError("duplicate element names");
  g.table_ = std::move(table);
  g.names_ = std::move(names);
  g.identity_ = e;
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw GroupError("cyclic group needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n <= 0) throw GroupError("dihedral group needs n >= 1");
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x < n && y < n) t[x][y] = (x + y) % n;
      else if (x < n) t[x][y] = (y - n + x) % n + n;
      else if (y < n) t[x][y] = ((x - n - y) % n + n) % n + n;
      else t[x][y] = ((x - y) % n + n) % n;
    }
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("r" + std::to_string(k));
  for (int k = 0; k < n; ++k) names.push_back("s" + std::to_string(k));
  return from_table(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // (a∘b)(i) = a(b(i))
      t[a][b] = index_of(c);
    }
  // cycle notation on {1,2,3}
  std::vector<std::string> names;
  for (const auto& q : perms) {
    std::string s;
    std::array<bool, 3> done{};
    for (int i = 0; i < 3; ++i) {
      if (done[i] || q[i] == i) continue;
      s += "(";
      for (int j = i; !done[j]; j = q[j]) {
        done[j] = true;
        s += std::to_string(j + 1);
      }
      s += ")";
    }
    names.push_back(s.empty() ? "e" : s);
  }
  return from_table(std::move(t), std::move(names));
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw GroupError("unknown group element '" + std::string(name) + "'");
  return static_cast<int>(it - names_.begin());
}

FiniteGroup group_parse(const nlohmann::json& j) {
  if (!j.is_object()) throw GroupError("group must be an object");
  FiniteGroup g;
  if (j.contains("table")) {
    std::vector<std::vector<int>> t;
    try {
      t = j.at("table").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception&) {
      throw GroupError("group table must be a list of integer rows");
    }
    g = FiniteGroup::from_table(std::move(t));
  } else if (j.contains("preset")) {
    if (!j.at("preset").is_string() || !j.contains("n") || !j.at("n").is_number_integer())
      throw GroupError("group preset needs a name and an integer n");
    const auto preset = j.at("preset").get<std::string>();
    const int n = j.at("n").get<int>();
    if (preset == "cyclic") g = FiniteGroup::cyclic(n);
    else if (preset == "dihedral") g = FiniteGroup::dihedral(n);
    else if (preset == "symmetric" && n == 3) g = FiniteGroup::symmetric3();
    else throw GroupError("unknown group preset '" + preset + " " + std::to_string(n) + "'");
  } else {
    throw GroupError("group needs 'preset' or 'table'");
  }
  if (j.contains("names")) {
    std::vector<std::string> names;
    try {
      names = j.at("names").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw GroupError("group names must be strings");
    }
    g = FiniteGroup::from_table(g.table(), std::move(names));
  }
  return g;
}

FiniteGroup group_parse(std::string_view j) {
  std::istringstream in{std::string(j)};
  std::string preset;
  int n = 0;
  if (!(in >> preset >> n)) throw GroupError("malformed group j '" + std::string(j) + "'");
  return group_parse(nlohmann::json{{"preset", preset}, {"n", n}});
}

int group_conj(const FiniteGroup& grp, int x, int g) {
  if (!grp.valid(x) || !grp.valid(g)) throw std::out_of_range("group element index out of range");
  return grp.conj(x, g);
}

}  // namespace gb
