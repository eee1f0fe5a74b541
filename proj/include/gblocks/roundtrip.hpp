#pragma once

#include "gblocks/category.hpp"
#include "gblocks/msdata.hpp"
#include "gblocks/report.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gb {

struct RoundtripError : std::runtime_error {
  std::string invariant;
  RoundtripError(std::string inv, const std::string& detail)
      : std::runtime_error(inv + ": " + detail), invariant(std::move(inv)) {}
};

// Fusion data read back from block spaces: dual′(a) is the unique b with ⟨a,b⟩ ≠ 0, unit′ the
// unique u with ⟨u⟩ ≠ 0, N′_{ab}^c = dim⟨dual′(c), a, b⟩, θ′_a the scalar of Z∘σ⁻¹ on ⟨a, a*⟩.
struct ReconstructedFusion {
  std::vector<std::string> labels;
  int unit = 0;
  std::vector<int> dual;
  std::vector<long long> fusion;  // n^3, index (a * n + b) * n + c
  std::vector<Cyclotomic> theta;

  int size() const { return static_cast<int>(labels.size()); }
  long long N(int a, int b, int c) const { return fusion[(a * size() + b) * size() + c]; }
};

// Throws RoundtripError ("unit-not-unique", "dual-not-unique").
ReconstructedFusion reconstruct_fusion(const Ms& ms);
// Throws RoundtripError ("twist-not-scalar") if some ⟨a, a*⟩ is not 1-dimensional.
std::vector<Cyclotomic> reconstruct_twist(const Ms& ms);
ReconstructedFusion reconstruct(const GCategoryData& cat);

// cat with unit, duals, fusion and twists replaced by the reconstructed ones.
GCategoryData with_reconstruction(const GCategoryData& cat, const ReconstructedFusion& r);

// N′ = N, dual′ = dual, unit′ = unit, θ′ = θ, plus the fusion associativity consistency.
Report roundtrip_check(const GCategoryData& cat, Exec exec = Exec::parallel);

}  // namespace gb
