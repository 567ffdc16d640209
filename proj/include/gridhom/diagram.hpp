#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridhom/errors.hpp"

namespace gridhom {

// Cell coordinates. Row 0 is the bottom row, column 0 the leftmost column;
// a marking in cell (r, c) sits at planar position (c + 1/2, r + 1/2).
struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct OMark {
    int row = 0;
    int col = 0;
    bool star = false;
};

// An n x n toroidal grid decorated with O, O* and X markings such that
//   (i)   every row and every column holds exactly one O or O*,
//   (ii)  a row or column whose X count differs from one holds an O*,
//   (iii) no cell holds two markings.
// Isolated O* markings (no X in their row or column) are allowed and stand
// for isolated vertices.
class GridDiagram {
  public:
    // Validates the marking set and throws ValidationError naming the
    // violated condition otherwise.
    static GridDiagram from_markings(int n, std::vector<OMark> os, std::vector<Cell> xs);

    int n() const { return n_; }
    const std::vector<OMark>& o_marks() const { return o_; }  // sorted by row
    const std::vector<Cell>& x_marks() const { return x_; }   // sorted (row, col)

    int o_index_in_row(int row) const { return row; }  // o_ is row-sorted, one per row
    int o_index_in_col(int col) const { return o_of_col_[col]; }
    const OMark& o_in_row(int row) const { return o_[row]; }
    const OMark& o_in_col(int col) const { return o_[o_of_col_[col]]; }

    bool has_x(int row, int col) const { return (xmask_by_col_[col] >> row) & 1u; }
    bool has_o(int row, int col) const { return o_[row].col == col; }
    bool star_at(int row, int col) const { return has_o(row, col) && o_[row].star; }
    bool occupied(int row, int col) const { return has_x(row, col) || has_o(row, col); }

    // X marking indices (into x_marks()) per row / column, ascending.
    const std::vector<int>& xs_in_row(int row) const { return x_by_row_[row]; }
    const std::vector<int>& xs_in_col(int col) const { return x_by_col_[col]; }
    int x_index_at(int row, int col) const;  // -1 if absent

    // Row bitmask of marked cells in one column (bit r = cell (r, col)).
    std::uint32_t mark_mask_col(int col) const { return xmask_by_col_[col] | omask_by_col_[col]; }
    std::uint32_t xmask_col(int col) const { return xmask_by_col_[col]; }
    std::uint32_t omask_col(int col) const { return omask_by_col_[col]; }

    int star_count() const { return star_count_; }
    int plain_o_count() const { return n_ - star_count_; }

    std::string to_json() const;

  private:
    GridDiagram() = default;
    void build_index();

    int n_ = 0;
    std::vector<OMark> o_;
    std::vector<Cell> x_;
    int star_count_ = 0;

    std::vector<int> o_of_col_;
    std::vector<std::vector<int>> x_by_row_, x_by_col_;
    std::vector<std::uint32_t> xmask_by_col_, omask_by_col_;
};

// ---------------------------------------------------------------------------
// Text format
//
//   n=<int>
//   <n lines, top row first, n tokens from {., X, O, *}>
//   weights= w1 w2 ... wk        (optional; trace order, defaults to all 1)
// ---------------------------------------------------------------------------

struct DiagramFile {
    GridDiagram diagram;
    std::vector<long long> weights;  // empty when the section is absent
    bool has_weights = false;
};

DiagramFile read_diagram(const std::string& text);
GridDiagram parse_diagram(const std::string& text);
std::string serialize(const GridDiagram& d, const std::vector<long long>* weights = nullptr);

// ---------------------------------------------------------------------------
// Edge tracing
// ---------------------------------------------------------------------------

// One edge path O* -> X -> O -> X -> ... -> O*. Horizontal segments run from
// an O-type marking to an X in its row, vertical ones from an X to the O-type
// marking in its column.
struct GraphEdge {
    int from = -1;            // vertex index (into SpatialGraphSkeleton::vertices)
    int to = -1;
    std::vector<int> xs;      // X marking indices along the path, travel order
    std::vector<int> os;      // interior plain-O marking indices, travel order
};

struct SpatialGraphSkeleton {
    std::vector<int> vertices;              // o-mark indices of the O*'s, (row, col) ascending
    std::vector<GraphEdge> edges;           // vertex-major, then outgoing X column ascending
    std::vector<std::vector<int>> out_edges;
    std::vector<std::vector<int>> in_edges;

    int vertex_of_omark(int o_index) const;
    bool has_sink_or_source() const;        // a vertex with edges on only one side
};

SpatialGraphSkeleton trace_edges(const GridDiagram& d);

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

struct WeightedDiagram {
    GridDiagram diagram;
    SpatialGraphSkeleton skeleton;
    std::vector<long long> edge_weights;  // by edge index
    std::vector<long long> o_weights;     // per o-mark; O* carries its vertex weight
    std::vector<long long> x_weights;     // per x-mark

    long long vertex_weight(int vertex) const;
    std::vector<long long> plain_o_weights() const;
};

// Populates per-marking weights from an edge-weight list in trace order and
// checks the balance condition at every vertex.
WeightedDiagram assign_weights(const GridDiagram& d, const std::vector<long long>& edge_weights);

// read_diagram + assign_weights (all-1 edge weights when the file has none).
WeightedDiagram read_weighted_diagram(const std::string& text);

// ---------------------------------------------------------------------------
// Planar realization: the torus cut open along one horizontal and one
// vertical circle. Cell (r, c) maps to ((r - cut_row) mod n, (c - cut_col) mod n).
// ---------------------------------------------------------------------------

struct PlanarRealization {
    GridDiagram diagram;
    int cut_row = 0;
    int cut_col = 0;
};

// Good diagrams have O-type markings in the top-left and bottom-right corner
// cells and an X in the top-right corner cell; block constructions glue along
// these corners.
bool is_good(const GridDiagram& d);

// ---------------------------------------------------------------------------
// Staircase fixture C_n: one O* and 2n-2 X markings, nothing in the
// lower-left (n-1) x (n-1) block, at least one marking in every row and
// column. Not a graph grid diagram (only one O-type marking), but its
// rectangle-counting complex is defined the same way.
// ---------------------------------------------------------------------------

struct CnFixture {
    int n = 0;
    Cell star;
    std::vector<Cell> xs;

    bool has_x(int row, int col) const;
};

CnFixture build_cn_fixture(int n);

}  // namespace gridhom
