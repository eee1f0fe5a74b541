#pragma once

#include "gblocks/covers.hpp"
#include "gblocks/msdata.hpp"
#include "gblocks/universal.hpp"

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <string>
#include <vector>

namespace gb {

struct MfError : std::runtime_error {
  std::string invariant;
  MfError(std::string inv, const std::string& detail)
      : std::runtime_error(inv + ": " + detail), invariant(std::move(inv)) {}
};

// Boundary labels W_a, one per free boundary, with deg W_a = m_a^{-1}.
void validate_labeling(const GCategoryData& cat, const GluingGraph& p, const Labels& W);
Labels labeling_from_json(const GCategoryData& cat, const GluingGraph& p, const nlohmann::json& j);
Labels load_labeling(const GCategoryData& cat, const GluingGraph& p, const std::string& path);

// ⊕ over cut assignments of ⊗ over blocks of ⟨X_1..X_n⟩ with X_i = h_i^{-1}·W_i. A cut
// assigned v puts h^{-1}·v* at its from end and h^{-1}·v at its to end. Basis: assignments in
// lexicographic order, then block trees with the first block slowest.
struct TauSpace {
  GluingGraph graph;
  Labels W;
  std::vector<Labels> assignments;                     // nonzero ones only
  std::vector<std::vector<Labels>> slot_labels;        // [assignment][block]
  std::vector<std::vector<const BlockSpace*>> spaces;  // [assignment][block]
  std::vector<std::size_t> offset;                     // first basis index of each assignment
  std::size_t total = 0;

  std::size_t dim() const { return total; }
  int assignment(const Labels& v) const;  // -1 if zero or absent
  std::size_t index(int assignment, const std::vector<int>& trees) const;
  std::pair<int, std::vector<int>> decode(std::size_t i) const;
};

// Slot labels of every block for one cut assignment.
std::vector<Labels> slot_labels(const GCategoryData& cat, const GluingGraph& p, const Labels& W, const Labels& v);

struct MoveResult {
  GluingGraph target;
  Matrix m;  // tau(source) -> tau(target)
};

// Genus-zero modular functor realized on a category through its MS data.
class Mf {
 public:
  explicit Mf(const GCategoryData& cat) : cat_(cat), ms_(cat) {}
  Mf(const Mf&) = delete;
  Mf& operator=(const Mf&) = delete;

  const GCategoryData& cat() const { return cat_; }
  const FiniteGroup& group() const { return cat_.group; }
  const Ms& ms() const { return ms_; }

  // Memoized; the reference stays valid for the lifetime of the Mf.
  const TauSpace& tau_space(const GluingGraph& p, const Labels& W) const;
  std::size_t tau_dim(const GluingGraph& p, const Labels& W) const { return tau_space(p, W).dim(); }

  MoveResult move_map(const GluingGraph& p, const Labels& W, const Move& m) const;
  // Ordered composition; the empty path is the identity.
  MoveResult path_map(const GluingGraph& p, const Labels& W, const std::vector<Move>& path) const;
  // Permutation onto the canonical form.
  MoveResult canonical_map(const GluingGraph& p, const Labels& W) const;
  MoveResult canonical_map(const GluingGraph& p, const Labels& W, const Canonical& c) const;
  // Two-holed braiding via the two-point commutativity map (Dehn relation helper).
  MoveResult braid2_map(const GluingGraph& p, const Labels& W, int block) const;

  // T_x: marked point of free boundary a moved to x_a p_a, label W_a -> x_a·W_a.
  struct Shift {
    GluingGraph target;
    Labels W;
    Matrix m;
  };
  Shift t_action(const GluingGraph& p, const Labels& W, const std::vector<int>& x) const;

 private:
  TauSpace compute_tau_space(const GluingGraph& p, const Labels& W) const;

  const GCategoryData& cat_;
  Ms ms_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Labels, std::unique_ptr<TauSpace>, LabelsHash> spaces_;
};

// Moves applied to the G-graph, its free-group shadow and the accumulated map together.
class Tracker {
 public:
  Tracker(const Mf& mf, GluingGraph p, Labels W);

  void move(const Move& m);
  void braid2(int block);
  // Inverse F: splits block b after k slots, S(g[:k], y; h[:k], e) ⊔ S(y^{-1}, g[k:]; e, h[k:]).
  void split(int block, int k);
  void canonicalize();

  const GluingGraph& graph() const { return g_; }
  const UniversalGraph& universal() const { return u_; }
  const Matrix& map() const { return m_; }
  std::vector<int> key() const;  // canonical graph + deck invariants
  std::vector<std::string> trail() const;  // applied steps, e.g. "Z(0)", "B2(1)", "F^-1(0,2)"

 private:
  const Mf* mf_;
  GluingGraph g_;
  UniversalGraph u_;
  Labels W_;
  Matrix m_;
  bool canonical_ = false;
  struct Step {
    enum { move, braid2, split } kind;
    Move m;
    int k;
  };
  std::vector<Step> trail_;
};

struct PathOptions {
  int depth = 6;
  Exec exec = Exec::parallel;
};

struct PathResult {
  Report report;
  std::size_t nodes = 0;
  std::optional<Matrix> target_map;
};

// Explores every move sequence of length ≤ depth from p1 (breadth first, nodes identified by
// canonical form and deck invariants) and requires each edge to reproduce the node's map, so
// all paths to a node induce the same map. The target is where `target_path` leads.
PathResult check_path_independence(const Mf& mf, const GluingGraph& p1, const Labels& W,
                                   const std::vector<Move>& target_path, PathOptions opt = {});
// Target given as a graph; a path to it is found first.
PathResult check_path_independence(const Mf& mf, const GluingGraph& p1, const Labels& W, const GluingGraph& p2,
                                   PathOptions opt = {});

struct RelationOptions {
  int max_block = 3;  // boundary count of generic blocks
  Exec exec = Exec::parallel;
};

// Every 2-cell relation instantiated on small covers and labelings.
Report check_relations(const GCategoryData& cat, RelationOptions opt = {});

// Each simple X has some V with ⟨X, V⟩ ≠ 0.
Report check_nondegeneracy(const GCategoryData& cat);

// Free boundary labelings of p with deg W_a = m_a^{-1}, in lexicographic order.
std::vector<Labels> labelings(const GCategoryData& cat, const GluingGraph& p);

}  // namespace gb
