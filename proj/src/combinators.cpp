#include "gridhom/combinators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>

#include "gridhom/moves.hpp"

namespace gridhom {

namespace {

// Assembles a diagram from placed copies of weighted diagrams plus extra
// markings, then re-traces and derives edge weights: an edge inherits the
// weight of any source X it contains, and edges made only of fresh X's take
// `fresh_weight`.
struct Assembly {
    int n = 0;
    std::vector<OMark> os;
    std::vector<Cell> xs;
    struct SourceX {
        Cell cell;
        long long weight;
    };
    std::vector<SourceX> sources;

    void place(const WeightedDiagram& wd, int row_off, int col_off, bool skip_star_at = false,
               Cell skipped = {}) {
        const GridDiagram& d = wd.diagram;
        for (const auto& o : d.o_marks()) {
            if (skip_star_at && Cell{o.row, o.col} == skipped) continue;
            os.push_back({o.row + row_off, o.col + col_off, o.star});
        }
        for (std::size_t j = 0; j < d.x_marks().size(); ++j) {
            Cell c{d.x_marks()[j].row + row_off, d.x_marks()[j].col + col_off};
            xs.push_back(c);
            sources.push_back({c, wd.x_weights[j]});
        }
    }

    WeightedDiagram finish(long long fresh_weight) const {
        GridDiagram nd = GridDiagram::from_markings(n, os, xs);
        auto sk = trace_edges(nd);
        std::vector<long long> ew;
        for (const auto& e : sk.edges) {
            std::optional<long long> w;
            for (int xj : e.xs) {
                Cell c = nd.x_marks()[xj];
                for (const auto& s : sources) {
                    if (s.cell == c) {
                        if (w && *w != s.weight) throw InternalError("edge weight conflict");
                        w = s.weight;
                    }
                }
            }
            ew.push_back(w.value_or(fresh_weight));
        }
        return assign_weights(nd, ew);
    }
};

bool good_with_corner(const GridDiagram& d, CornerStar corner) {
    if (!is_good(d)) return false;
    switch (corner) {
        case CornerStar::None: return true;
        case CornerStar::BottomRight: return d.star_at(0, d.n() - 1);
        case CornerStar::TopLeft: return d.star_at(d.n() - 1, 0);
    }
    return false;
}

// The vertex sitting at a corner cell, as a skeleton vertex index.
int corner_vertex(const WeightedDiagram& wd, int row, int col) {
    for (std::size_t v = 0; v < wd.skeleton.vertices.size(); ++v) {
        const OMark& o = wd.diagram.o_marks()[wd.skeleton.vertices[v]];
        if (o.row == row && o.col == col) return (int)v;
    }
    throw VertexNotAtCorner("no vertex marking at (" + std::to_string(row) + "," +
                            std::to_string(col) + ")");
}

}  // namespace

WeightedDiagram make_good(const WeightedDiagram& wd, CornerStar corner) {
    int n = wd.diagram.n();
    for (int k = 0; k < n; ++k) {
        WeightedDiagram rowshift = k ? cyclic_permute_rows(wd, k) : wd;
        for (int l = 0; l < n; ++l) {
            WeightedDiagram cand = l ? cyclic_permute_cols(rowshift, l) : rowshift;
            if (good_with_corner(cand.diagram, corner)) return cand;
        }
    }
    throw NotGood("no cyclic shift yields a good diagram with the requested corner vertex");
}

WeightedDiagram pad_to_good(const WeightedDiagram& wd, int n, CornerStar corner) {
    WeightedDiagram cur = make_good(wd, corner);
    while (cur.diagram.n() < n) {
        // Stabilize at whichever X still admits a good normalization.
        bool advanced = false;
        for (const auto& x : cur.diagram.x_marks()) {
            try {
                cur = make_good(stabilize(cur, x), corner);
                advanced = true;
                break;
            } catch (const NotGood&) {
            }
        }
        if (!advanced) throw NotGood("stabilization cannot reach a good diagram of size " +
                                     std::to_string(n));
    }
    if (cur.diagram.n() != n) throw NotGood("diagram larger than the requested size");
    return cur;
}

GoodPair GoodPair::make(WeightedDiagram d1, WeightedDiagram d2) {
    if (d1.diagram.n() != d2.diagram.n()) throw NotGood("good pair requires equal grid sizes");
    if (!is_good(d1.diagram) || !is_good(d2.diagram)) throw NotGood("both diagrams must be good");
    if (!d1.diagram.star_at(0, d1.diagram.n() - 1))
        throw VertexNotAtCorner("d1 needs its vertex at the bottom-right corner");
    if (!d2.diagram.star_at(d2.diagram.n() - 1, 0))
        throw VertexNotAtCorner("d2 needs its vertex at the top-left corner");
    return {std::move(d1), std::move(d2)};
}

WeightedDiagram disjoint_union(const WeightedDiagram& d1, const WeightedDiagram& d2) {
    Assembly a;
    int n1 = d1.diagram.n();
    a.n = n1 + d2.diagram.n();
    a.place(d1, 0, 0);
    a.place(d2, n1, n1);
    return a.finish(1);
}

WeightedDiagram wedge(const GoodPair& gp) {
    int n = gp.d1.diagram.n();
    Assembly a;
    a.n = 2 * n - 1;
    // d1 upper-left, d2 lower-right, overlapping in the single shared O*.
    a.place(gp.d1, n - 1, 0);
    a.place(gp.d2, 0, n - 1, /*skip_star_at=*/true, Cell{n - 1, 0});
    return a.finish(1);
}

WeightedDiagram join_cut_edge(const GoodPair& gp, long long edge_weight) {
    int n = gp.d1.diagram.n();
    Assembly a;
    a.n = 2 * n;
    a.place(gp.d1, n, 0);
    a.place(gp.d2, 0, n);
    a.xs.push_back({n, n});  // the whole upper-right block holds just this X
    return a.finish(edge_weight);
}

WeightedDiagram connected_sum(const GoodPair& gp) {
    int n = gp.d1.diagram.n();
    long long w1 = gp.d1.vertex_weight(corner_vertex(gp.d1, 0, n - 1));
    long long w2 = gp.d2.vertex_weight(corner_vertex(gp.d2, n - 1, 0));
    if (w1 != w2)
        throw WeightMismatch("corner vertex weights differ: " + std::to_string(w1) + " vs " +
                             std::to_string(w2));
    Assembly a;
    a.n = 2 * n;
    // Same blocks as the cut-edge join, but the two corner vertices move onto
    // the other diagonal of the central 2x2 block and the connector X is
    // dropped: incoming edges of one vertex now arrive at the other.
    a.place(gp.d1, n, 0, /*skip_star_at=*/true, Cell{0, n - 1});
    a.place(gp.d2, 0, n, /*skip_star_at=*/true, Cell{n - 1, 0});
    a.os.push_back({n - 1, n - 1, true});
    a.os.push_back({n, n, true});
    return a.finish(1);
}

WeightedDiagram splice_vertices(const WeightedDiagram& d1, int v1, const WeightedDiagram& d2,
                                int v2) {
    if (v1 < 0 || v1 >= (int)d1.skeleton.vertices.size() || v2 < 0 ||
        v2 >= (int)d2.skeleton.vertices.size())
        throw ValidationError("splice: vertex index out of range");
    long long w1 = d1.vertex_weight(v1), w2 = d2.vertex_weight(v2);
    if (w1 != w2)
        throw WeightMismatch("splice vertex weights differ: " + std::to_string(w1) + " vs " +
                             std::to_string(w2));
    const OMark& o1 = d1.diagram.o_marks()[d1.skeleton.vertices[v1]];
    const OMark& o2 = d2.diagram.o_marks()[d2.skeleton.vertices[v2]];
    int n1 = d1.diagram.n();

    Assembly a;
    a.n = n1 + d2.diagram.n();
    a.place(d1, 0, 0, /*skip_star_at=*/true, Cell{o1.row, o1.col});
    a.place(d2, n1, n1, /*skip_star_at=*/true, Cell{o2.row, o2.col});
    // Each vertex keeps its row (outgoing edges) and takes over the other's
    // column (incoming edges).
    a.os.push_back({o1.row, n1 + o2.col, true});
    a.os.push_back({n1 + o2.row, o1.col, true});
    return a.finish(1);
}

WeightedDiagram add_unknot(const WeightedDiagram& wd) {
    int n = wd.diagram.n();
    Assembly a;
    a.n = n + 2;
    a.place(wd, 0, 0);
    a.os.push_back({n + 1, n, false});
    a.os.push_back({n, n + 1, true});
    a.xs.push_back({n + 1, n + 1});
    a.xs.push_back({n, n});
    return a.finish(1);
}

AbstractMoy abstract_moy(const WeightedDiagram& wd) {
    AbstractMoy g;
    g.vertices = (int)wd.skeleton.vertices.size();
    for (std::size_t e = 0; e < wd.skeleton.edges.size(); ++e)
        g.edges.push_back({(long long)wd.skeleton.edges[e].from, (long long)wd.skeleton.edges[e].to,
                           wd.edge_weights[e]});
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool isomorphic_moy(const AbstractMoy& a, const AbstractMoy& b) {
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
    std::vector<int> perm(a.vertices);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        auto mapped = b;
        for (auto& e : mapped.edges) {
            e[0] = perm[e[0]];
            e[1] = perm[e[1]];
        }
        std::sort(mapped.edges.begin(), mapped.edges.end());
        if (mapped.edges == a.edges) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace gridhom
