#pragma once

#include "gblocks/covers.hpp"

#include <vector>

namespace gb {

// Freely reduced word in generators ±1, ±2, ...
using Word = std::vector<int>;

struct WordOps {
  Word e() const { return {}; }
  Word mul(const Word& a, const Word& b) const;
  Word inv(const Word& a) const;
};

// The same gluing graph with block data in the free group on the boundary loops: this is
// the pull-back of the cover to the universal one, so it tells apart parameterizations that
// differ by a mapping class invisible in the G-data.
using UniversalGraph = Graph<Word>;

// Boundary loops of each component are free generators except the last, which is determined
// by the product condition; h is trivial.
UniversalGraph universal_initial(const GluingGraph& p);

// Follows a simple move made on p. P and T act trivially; before F the second block is
// conjugated so both lifts at the cut agree.
UniversalGraph universal_apply(const UniversalGraph& u, const Move& m);

// Reorders blocks and cuts as the canonical form of the matching G-graph does.
UniversalGraph universal_permute(const UniversalGraph& u, const Canonical& c);

// Deck-invariant boundary data: per free boundary h g^{-1} h^{-1}, and the arc word from the
// component's first free boundary. Encoded as a flat key.
std::vector<int> universal_invariants(const UniversalGraph& u);

}  // namespace gb
