#include "gridhom/gf2.hpp"

#include <algorithm>
#include <functional>

namespace gridhom {

namespace {

// Packed-word Gaussian elimination; fine up to a few thousand rows/columns.
long long rank_dense(std::uint32_t nrows, std::span<const std::uint32_t> col_ptr,
                     std::span<const std::uint32_t> rows) {
    std::size_t ncols = col_ptr.size() - 1;
    std::size_t words = (nrows + 63) / 64;
    std::vector<std::uint64_t> mat(ncols * words, 0);
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::uint32_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k)
            mat[c * words + rows[k] / 64] ^= 1ULL << (rows[k] % 64);

    long long rank = 0;
    std::size_t next = 0;
    for (std::uint32_t r = 0; r < nrows && next < ncols; ++r) {
        std::size_t w = r / 64;
        std::uint64_t bit = 1ULL << (r % 64);
        std::size_t pivot = next;
        while (pivot < ncols && !(mat[pivot * words + w] & bit)) ++pivot;
        if (pivot == ncols) continue;
        if (pivot != next)
            std::swap_ranges(mat.begin() + pivot * words, mat.begin() + (pivot + 1) * words,
                             mat.begin() + next * words);
        for (std::size_t c = next + 1; c < ncols; ++c)
            if (mat[c * words + w] & bit)
                for (std::size_t k = w; k < words; ++k) mat[c * words + k] ^= mat[next * words + k];
        ++next;
        ++rank;
    }
    return rank;
}

// Column reduction with a pivot-per-row table: reduce each column against the
// stored pivot columns until it dies or claims a fresh pivot row.
long long rank_sparse(std::uint32_t nrows, std::span<const std::uint32_t> col_ptr,
                      std::span<const std::uint32_t> rows) {
    std::size_t ncols = col_ptr.size() - 1;
    std::vector<std::int64_t> pivot_of_row(nrows, -1);
    std::vector<std::vector<std::uint32_t>> reduced;  // descending row order
    reduced.reserve(ncols);

    std::vector<std::uint32_t> cur, tmp;
    long long rank = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        cur.assign(rows.begin() + col_ptr[c], rows.begin() + col_ptr[c + 1]);
        std::sort(cur.begin(), cur.end(), std::greater<>());
        while (!cur.empty()) {
            std::uint32_t p = cur.front();
            std::int64_t other = pivot_of_row[p];
            if (other < 0) {
                pivot_of_row[p] = (std::int64_t)reduced.size();
                reduced.push_back(cur);
                ++rank;
                break;
            }
            // cur ^= reduced[other] (both sorted descending)
            const auto& o = reduced[other];
            tmp.clear();
            tmp.reserve(cur.size() + o.size());
            std::size_t i = 0, j = 0;
            while (i < cur.size() && j < o.size()) {
                if (cur[i] == o[j]) {
                    ++i;
                    ++j;
                } else if (cur[i] > o[j]) {
                    tmp.push_back(cur[i++]);
                } else {
                    tmp.push_back(o[j++]);
                }
            }
            tmp.insert(tmp.end(), cur.begin() + i, cur.end());
            tmp.insert(tmp.end(), o.begin() + j, o.end());
            cur.swap(tmp);
        }
    }
    return rank;
}

}  // namespace

long long gf2_rank_csc(std::uint32_t nrows, std::span<const std::uint32_t> col_ptr,
                       std::span<const std::uint32_t> rows) {
    if (col_ptr.size() <= 1 || nrows == 0) return 0;
    std::size_t ncols = col_ptr.size() - 1;
    if (nrows <= 2048 && ncols <= 2048) return rank_dense(nrows, col_ptr, rows);
    return rank_sparse(nrows, col_ptr, rows);
}

long long gf2_rank(const SparseGf2Matrix& m) {
    std::vector<std::uint32_t> col_ptr{0}, rows;
    for (const auto& col : m.cols) {
        rows.insert(rows.end(), col.begin(), col.end());
        col_ptr.push_back((std::uint32_t)rows.size());
    }
    return gf2_rank_csc(m.nrows, col_ptr, rows);
}

}  // namespace gridhom
