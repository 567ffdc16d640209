#pragma once

#include <array>
#include <string>
#include <vector>

#include "gridhom/diagram.hpp"

namespace gridhom {

// Which corner of a good diagram must hold the O* used for gluing.
enum class CornerStar { None, BottomRight, TopLeft };

// Two good diagrams of equal size, checked on construction.
struct GoodPair {
    WeightedDiagram d1, d2;

    // d1 needs its vertex at the bottom-right corner, d2 at the top-left.
    static GoodPair make(WeightedDiagram d1, WeightedDiagram d2);
};

// Best-effort normalization by cyclic permutations only; throws NotGood when
// no cyclic shift produces a good diagram with the requested corner vertex.
WeightedDiagram make_good(const WeightedDiagram& wd, CornerStar corner = CornerStar::None);

// Grows a diagram to size n by stabilizations, re-normalizing to good form
// with the requested corner vertex after each step.
WeightedDiagram pad_to_good(const WeightedDiagram& wd, int n, CornerStar corner);

// Block-diagonal diagram of the disjoint union; sizes may differ.
WeightedDiagram disjoint_union(const WeightedDiagram& d1, const WeightedDiagram& d2);

// (2n-1) x (2n-1) diagram identifying d1's bottom-right vertex with d2's
// top-left vertex.
WeightedDiagram wedge(const GoodPair& gp);

// 2n x 2n diagram joining the two corner vertices by a single new edge
// through one X; the new edge is a cut edge by construction. The edge weight
// must balance at both vertices (zero whenever the inputs are balanced).
WeightedDiagram join_cut_edge(const GoodPair& gp, long long edge_weight);

// 2n x 2n diagram swapping the incoming edge sets of the two corner
// vertices; differs from the cut-edge join only in the central 2x2 block.
// Requires equal vertex weights.
WeightedDiagram connected_sum(const GoodPair& gp);

// Connected sum without goodness: places the diagrams block-diagonally and
// exchanges the two vertices' columns, so edges formerly entering v1 enter
// v2 and vice versa. Works for any sizes; requires equal vertex weights.
// v1/v2 are skeleton vertex indices.
WeightedDiagram splice_vertices(const WeightedDiagram& d1, int v1, const WeightedDiagram& d2,
                                int v2);

// Enlarges the diagram by a split weight-1 unknot in two new rows/columns.
WeightedDiagram add_unknot(const WeightedDiagram& wd);

// Abstract shape of the traced MOY graph, for isomorphism checks in tests
// and reports: vertex count plus the multiset of weighted edges.
struct AbstractMoy {
    int vertices = 0;
    std::vector<std::array<long long, 3>> edges;  // (from, to, weight), sorted
};

AbstractMoy abstract_moy(const WeightedDiagram& wd);
bool isomorphic_moy(const AbstractMoy& a, const AbstractMoy& b);

}  // namespace gridhom
