#pragma once

#include "gblocks/cyclotomic.hpp"
#include "gblocks/exec.hpp"
#include "gblocks/group.hpp"
#include "gblocks/matrix.hpp"
#include "gblocks/report.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gb {

// Loader rejection; `invariant` names the first violated condition.
struct CategoryError : std::runtime_error {
  CategoryError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant(std::move(invariant)) {}
  std::string invariant;
};

// F^{abc}_d as a matrix: rows e with N_ab^e N_ec^d, columns f with N_bc^f N_af^d.
struct FBlock {
  std::vector<int> rows, cols;
  Matrix m, inv;
  int row_index(int e) const;
  int col_index(int f) const;
};

// Skeletal, multiplicity-free G-crossed category. Labels are indices in file order.
class GCategoryData {
 public:
  FiniteGroup group;
  int conductor = 1;
  std::vector<std::string> labels;
  int unit = 0;
  std::vector<int> deg;
  std::vector<int> dual;
  std::vector<std::vector<int>> action;  // action[g][a] = g·a
  std::vector<Cyclotomic> theta;

  int size() const { return static_cast<int>(labels.size()); }
  int label(std::string_view name) const;  // throws CategoryError
  int act(int g, int a) const { return action[g][a]; }
  int N(int a, int b, int c) const { return fusion_[(a * size() + b) * size() + c]; }
  void set_N(int a, int b, int c, int v);
  const std::vector<int>& products(int a, int b) const { return prod_[a * size() + b]; }

  // Symbols; zero on inadmissible indices. Missing admissible entries are load errors.
  Cyclotomic F(int a, int b, int c, int d, int e, int f) const;
  Cyclotomic R(int a, int b, int c) const;
  Cyclotomic U(int g, int a, int b, int c) const;
  const FBlock& fblock(int a, int b, int c, int d) const;  // empty block if none
  Cyclotomic Finv(int a, int b, int c, int d, int f, int e) const;

  void set_F(int a, int b, int c, int d, int e, int f, Cyclotomic v);
  void set_R(int a, int b, int c, Cyclotomic v);
  void set_U(int g, int a, int b, int c, Cyclotomic v);

  // Recomputes product lists and F matrices; call after editing symbols.
  void finalize();

  static std::uint64_t key(int a, int b, int c, int d = 0, int e = 0, int f = 0) {
    return (std::uint64_t(a) << 40) | (std::uint64_t(b) << 32) | (std::uint64_t(c) << 24) |
           (std::uint64_t(d) << 16) | (std::uint64_t(e) << 8) | std::uint64_t(f);
  }

  const std::unordered_map<std::uint64_t, Cyclotomic>& F_table() const { return F_; }
  const std::unordered_map<std::uint64_t, Cyclotomic>& R_table() const { return R_; }
  const std::unordered_map<std::uint64_t, Cyclotomic>& U_table() const { return U_; }

 private:
  std::vector<int> fusion_;
  std::vector<std::vector<int>> prod_;
  std::unordered_map<std::uint64_t, Cyclotomic> F_, R_, U_;
  std::unordered_map<std::uint64_t, FBlock> fblocks_;
};

struct LoadOptions {
  bool check_invariants = true;  // the GCategoryData type invariants
};

GCategoryData parse_category(const nlohmann::json& j, LoadOptions opt = {});
GCategoryData load_category(const std::string& path, LoadOptions opt = {});
nlohmann::json category_to_json(const GCategoryData& cat);

// Throws CategoryError on the first violated type invariant.
void validate_invariants(const GCategoryData& cat);

// dim Hom(1, a_1 ⊗ ... ⊗ a_n); 1 for the empty list.
long long fusion_dim(const GCategoryData& cat, const std::vector<int>& labels);

Report check_pentagon(const GCategoryData& cat, Exec exec = Exec::parallel);
Report check_hexagon(const GCategoryData& cat, Exec exec = Exec::parallel);
Report check_g_coherence(const GCategoryData& cat, Exec exec = Exec::parallel);
Report check_twist(const GCategoryData& cat, Exec exec = Exec::parallel);
Report check_category(const GCategoryData& cat, Exec exec = Exec::parallel);  // all four

std::string label_list(const GCategoryData& cat, const std::vector<int>& labels);

}  // namespace gb
