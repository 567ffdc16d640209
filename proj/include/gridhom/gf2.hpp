#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gridhom {

// A sparse matrix over GF(2), stored column-major as sorted row-index lists.
struct SparseGf2Matrix {
    std::uint32_t nrows = 0;
    std::vector<std::vector<std::uint32_t>> cols;
};

// Rank over GF(2). Small matrices go through packed-word elimination; larger
// ones through sparse column reduction, which suits the near-triangular
// boundary matrices produced here.
long long gf2_rank(const SparseGf2Matrix& m);

// Same, on a compressed-column view (col_ptr has ncols+1 entries into rows).
long long gf2_rank_csc(std::uint32_t nrows, std::span<const std::uint32_t> col_ptr,
                       std::span<const std::uint32_t> rows);

}  // namespace gridhom
