#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridhom/diagram.hpp"

namespace gridhom {

enum class MoveKind { CyclicRow, CyclicCol, CommuteCols, CommuteRows, Stabilize, Destabilize };

struct Move {
    MoveKind kind = MoveKind::CyclicRow;
    int k = 0;    // shift amount for cyclic moves
    int index = 0;  // column/row i for commutations (swaps i and i+1 mod n)
    Cell at{};    // X cell for stabilize, plain-O cell for destabilize
};

// Cyclic permutation: toroidally the same diagram, cut elsewhere. Weights
// travel with the markings.
WeightedDiagram cyclic_permute_rows(const WeightedDiagram& wd, int k);
WeightedDiagram cyclic_permute_cols(const WeightedDiagram& wd, int k);

// Commutation of columns i and i+1 (mod n): legal when the two columns'
// markings fit into two vertical arcs that cover the circle and meet in
// exactly their two endpoints. Decided by scanning all candidate endpoint
// pairs on the half-grid.
bool commutation_legal_cols(const GridDiagram& d, int i);
bool commutation_legal_rows(const GridDiagram& d, int i);
WeightedDiagram commute_cols(const WeightedDiagram& wd, int i);  // throws IllegalMove
WeightedDiagram commute_rows(const WeightedDiagram& wd, int i);

// Stabilization at an X in cell (r, c): inserts a row above r and a column
// right of c, moves the X into the new column and adds an O above it and an
// X up-left of it. Subdivides the edge through the X.
WeightedDiagram stabilize(const WeightedDiagram& wd, Cell x_marking);

// Inverse of stabilization; `plain_o` names the O of the pattern. Throws
// PatternNotFound when the surrounding cells do not match.
WeightedDiagram destabilize(const WeightedDiagram& wd, Cell plain_o);

WeightedDiagram apply_move(const WeightedDiagram& wd, const Move& m);

struct WalkResult {
    WeightedDiagram diagram;
    std::vector<Move> log;
};

// Seed-reproducible random walk through legal moves; grid size is kept at or
// below max_n by withholding stabilizations once the cap is reached.
WalkResult random_move_walk(const WeightedDiagram& wd, int steps, std::uint64_t seed,
                            int max_n = 8);

// Move-log serialization for replay.
std::string moves_to_json(std::span<const Move> log);
std::vector<Move> moves_from_json(const std::string& text);

}  // namespace gridhom
