#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridhom/diagram.hpp"
#include "gridhom/state.hpp"

namespace gridhom {

// An empty rectangle leaving a state, annotated with its marking content.
// The rectangle spans column lines [col_start, col_start + col_span] and row
// lines [row_start, row_start + row_span] on the torus; the destination state
// swaps the two lattice points at its corners.
struct RectAnnotation {
    State to;
    int col_start = 0, col_span = 0;
    int row_start = 0, row_span = 0;
    std::vector<int> o_content;     // plain-O marks covered (o-mark indices)
    std::vector<int> x_content;     // X marks covered
    std::vector<int> star_content;  // O* marks covered (o-mark indices)
};

// All rectangles from x whose interior misses the state, in deterministic
// order (column pair ascending, then the non-wrapping candidate first).
std::vector<RectAnnotation> empty_rectangles_from(const GridDiagram& d, const State& x);

// Whether a rectangle would be counted by the vertex-blocked differential:
// no X and no O* content. Plain-O content is the U-power record.
bool hat_rectangle_filter(const RectAnnotation& r);

// ---------------------------------------------------------------------------
// Bigraded chain complex over GF(2), stratified by (maslov, alex2). The
// boundary maps (d, s) -> (d-1, s) and is stored column-sparse per stratum.
// ---------------------------------------------------------------------------

struct Stratum {
    int maslov = 0;
    long long alex2 = 0;
    std::vector<std::uint32_t> gens;     // lexicographic state ranks, ascending
    int below = -1;                      // index of stratum (maslov-1, alex2), -1 if none
    std::vector<std::uint32_t> col_ptr;  // size gens.size()+1 when below >= 0
    std::vector<std::uint32_t> rows;     // concatenated row indices into below->gens

    std::size_t dim() const { return gens.size(); }
};

class BigradedComplex {
  public:
    int grid_n = 0;
    std::vector<Stratum> strata;  // sorted by (alex2, maslov)

    int find(int maslov, long long alex2) const;
    std::uint64_t total_dim() const;
    std::uint64_t boundary_entries() const;

    // Verifies d*d = 0 across every composable stratum pair.
    bool d_squared_zero() const;
};

// The fully blocked differential: counts empty rectangles containing no
// marking at all, mod 2. Gradings use the canonical cut along row 0 / col 0.
BigradedComplex tilde_complex(const WeightedDiagram& wd, int threads = 0);

// Complex of the staircase fixture; Maslov-graded only (alex2 = 0).
BigradedComplex cn_complex(const CnFixture& f, int threads = 0);

}  // namespace gridhom
