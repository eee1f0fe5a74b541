#pragma once

#include "gblocks/category.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace gb {

using Labels = std::vector<int>;

struct LabelsHash {
  std::size_t operator()(const Labels& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 1);
    return h;
  }
};

// Hom(1, a_1 ⊗ ... ⊗ a_n) in the left-combed fusion-tree basis: a tree is the list of
// intermediates u_1 = a_1, u_k ∈ u_{k-1} ⊗ a_k, u_n = 1, in lexicographic order.
struct BlockSpace {
  Labels labels;
  std::vector<Labels> basis;
  std::size_t dim() const { return basis.size(); }
  int index(const Labels& tree) const;  // -1 if absent
};

// Matrix from source basis (columns) to target basis (rows).
struct BlockMap {
  Labels source, target;
  Matrix m;
};

// One source vector of a gluing map: x ∈ ⟨A, V*, C⟩, y ∈ ⟨V, B⟩.
struct GlueVector {
  int V;
  Labels x, y;
  friend bool operator<(const GlueVector& a, const GlueVector& b) {
    return std::tie(a.V, a.x, a.y) < std::tie(b.V, b.x, b.y);
  }
};

// ⊕_V ⟨A, V*, C⟩ ⊗ ⟨V, B⟩ → ⟨A, B, C⟩.
struct GlueMap {
  Labels A, B, C;
  std::vector<GlueVector> source;
  Labels target;
  Matrix m, inv;  // inv is empty when m is not invertible
  std::map<GlueVector, int> columns;
  int column(const GlueVector& v) const;  // -1 if absent
};

// Moore-Seiberg data realized on fusion trees of a category. Thread-safe; spaces and
// rotation maps are memoized.
class Ms {
 public:
  explicit Ms(const GCategoryData& cat) : cat_(cat) {}

  const GCategoryData& cat() const { return cat_; }
  const BlockSpace& space(const Labels& labels) const;

  // Bending scalar θ_V R^{V*,V}_1 used when a label is carried around the sphere.
  Cyclotomic zeta(int v) const;

  // Z: ⟨a_1..a_n⟩ → ⟨a_n, a_1..a_{n-1}⟩; Z^n = id.
  const BlockMap& rotation(const Labels& labels) const;
  BlockMap rotation_pow(const Labels& labels, int m) const;  // any integer m
  // σ: ⟨X, A, B⟩ → ⟨X, p·B, A⟩ with p = deg A.
  BlockMap braiding(const Labels& labels) const;
  // φ_g: ⟨a⟩ → ⟨g·a⟩ from U coefficients.
  const BlockMap& phi(const Labels& labels, int g) const;

  const GlueMap& gluing(const Labels& A, const Labels& B) const { return generalized_gluing(A, B, {}); }
  // Z^{-m} ∘ 𝒢 ∘ (Z^m ⊗ id), m = |C|.
  const GlueMap& generalized_gluing(const Labels& A, const Labels& B, const Labels& C) const;
  // Swaps the adjacent pair at (pos, pos+1): ⟨..X,Y..⟩ → ⟨..p·Y, X..⟩, p = deg X.
  BlockMap generalized_commutativity(const Labels& labels, int pos) const;
  // Inverse of generalized_commutativity, ⟨..Y,A..⟩ → ⟨..A, r⁻¹·Y..⟩, r = deg A.
  BlockMap inverse_commutativity(const Labels& labels, int pos) const;

 private:
  std::map<Labels, Cyclotomic> combine(int x, const Labels& leaves, const Labels& inter, int d) const;
  BlockMap compute_rotation(const Labels& labels) const;
  BlockMap compute_phi(const Labels& labels, int g) const;
  GlueMap compute_gluing(const Labels& A, const Labels& B, const Labels& C) const;

  const GCategoryData& cat_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Labels, std::unique_ptr<BlockSpace>, LabelsHash> spaces_;
  mutable std::unordered_map<Labels, std::unique_ptr<BlockMap>, LabelsHash> rotations_;
  mutable std::unordered_map<Labels, std::unique_ptr<BlockMap>, LabelsHash> phis_;  // key: labels + g
  mutable std::unordered_map<Labels, std::unique_ptr<GlueMap>, LabelsHash> gluings_;
};

BlockSpace block_space(const GCategoryData& cat, const Labels& labels);

struct MsOptions {
  int bound = 4;  // total number of labels in an axiom instance
  Exec exec = Exec::parallel;
};

// Instantiates every MS axiom on all label tuples within the bound.
Report check_ms_axioms(const GCategoryData& cat, MsOptions opt = {});

}  // namespace gb
