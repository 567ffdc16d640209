#include "gridhom/moves.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

namespace gridhom {

namespace {

// Rebuilds a weighted diagram after a move. `old_cell_of_x` maps each X cell
// of the new diagram to the cell of an X of the source diagram lying on the
// same edge; unmapped X's take `fresh_weight`.
WeightedDiagram transfer_weights(const WeightedDiagram& src, const GridDiagram& nd,
                                 const std::vector<std::pair<Cell, Cell>>& old_cell_of_x,
                                 long long fresh_weight = 1) {
    auto sk = trace_edges(nd);
    std::vector<long long> ew;
    ew.reserve(sk.edges.size());
    for (const auto& e : sk.edges) {
        bool found = false;
        long long w = fresh_weight;
        for (int xj : e.xs) {
            Cell nc = nd.x_marks()[xj];
            for (const auto& [newc, oldc] : old_cell_of_x) {
                if (newc == nc) {
                    int oj = src.diagram.x_index_at(oldc.row, oldc.col);
                    if (oj < 0) throw InternalError("weight transfer: stale source cell");
                    long long cand = src.x_weights[oj];
                    if (found && cand != w) throw InternalError("weight transfer: edge weight conflict");
                    w = cand;
                    found = true;
                }
            }
        }
        ew.push_back(w);
    }
    return assign_weights(nd, ew);
}

WeightedDiagram remap(const WeightedDiagram& wd, auto cell_fn) {
    const GridDiagram& d = wd.diagram;
    std::vector<OMark> os;
    std::vector<Cell> xs;
    std::vector<std::pair<Cell, Cell>> xmap;
    for (const auto& o : d.o_marks()) {
        Cell c = cell_fn(Cell{o.row, o.col});
        os.push_back({c.row, c.col, o.star});
    }
    for (const auto& x : d.x_marks()) {
        Cell c = cell_fn(x);
        xs.push_back(c);
        xmap.push_back({c, x});
    }
    GridDiagram nd = GridDiagram::from_markings(d.n(), std::move(os), std::move(xs));
    return transfer_weights(wd, nd, xmap);
}

bool arcs_separate(const std::vector<int>& h1, const std::vector<int>& h2, int period) {
    // Closed arcs [s, t] and [t, s] on Z/period, sharing exactly their two
    // endpoints; h1 must fit in the first, h2 in the second.
    auto inside = [period](int p, int s, int t) {
        return ((p - s) % period + period) % period <= ((t - s) % period + period) % period;
    };
    for (int s = 0; s < period; ++s) {
        for (int t = 0; t < period; ++t) {
            if (s == t) continue;
            bool ok = true;
            for (int p : h1)
                if (!inside(p, s, t)) { ok = false; break; }
            for (int p : h2)
                if (ok && !inside(p, t, s)) { ok = false; break; }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace

WeightedDiagram cyclic_permute_rows(const WeightedDiagram& wd, int k) {
    int n = wd.diagram.n();
    k = ((k % n) + n) % n;
    return remap(wd, [n, k](Cell c) { return Cell{(c.row + k) % n, c.col}; });
}

WeightedDiagram cyclic_permute_cols(const WeightedDiagram& wd, int k) {
    int n = wd.diagram.n();
    k = ((k % n) + n) % n;
    return remap(wd, [n, k](Cell c) { return Cell{c.row, (c.col + k) % n}; });
}

bool commutation_legal_cols(const GridDiagram& d, int i) {
    int n = d.n();
    if (n < 2) return false;
    int j = (i + 1) % n;
    std::vector<int> h1, h2;  // marking heights on the doubled circle (cells at 2r+1)
    for (int r = 0; r < n; ++r) {
        if (d.has_x(r, i) || d.has_o(r, i)) h1.push_back(2 * r + 1);
        if (d.has_x(r, j) || d.has_o(r, j)) h2.push_back(2 * r + 1);
    }
    return arcs_separate(h1, h2, 2 * n);
}

bool commutation_legal_rows(const GridDiagram& d, int i) {
    int n = d.n();
    if (n < 2) return false;
    int j = (i + 1) % n;
    std::vector<int> h1, h2;
    for (int c = 0; c < n; ++c) {
        if (d.has_x(i, c) || d.has_o(i, c)) h1.push_back(2 * c + 1);
        if (d.has_x(j, c) || d.has_o(j, c)) h2.push_back(2 * c + 1);
    }
    return arcs_separate(h1, h2, 2 * n);
}

WeightedDiagram commute_cols(const WeightedDiagram& wd, int i) {
    int n = wd.diagram.n();
    if (!commutation_legal_cols(wd.diagram, i))
        throw IllegalMove("columns " + std::to_string(i) + "," + std::to_string((i + 1) % n) +
                          " do not commute");
    int j = (i + 1) % n;
    return remap(wd, [i, j](Cell c) {
        if (c.col == i) return Cell{c.row, j};
        if (c.col == j) return Cell{c.row, i};
        return c;
    });
}

WeightedDiagram commute_rows(const WeightedDiagram& wd, int i) {
    int n = wd.diagram.n();
    if (!commutation_legal_rows(wd.diagram, i))
        throw IllegalMove("rows " + std::to_string(i) + "," + std::to_string((i + 1) % n) +
                          " do not commute");
    int j = (i + 1) % n;
    return remap(wd, [i, j](Cell c) {
        if (c.row == i) return Cell{j, c.col};
        if (c.row == j) return Cell{i, c.col};
        return c;
    });
}

WeightedDiagram stabilize(const WeightedDiagram& wd, Cell x_marking) {
    const GridDiagram& d = wd.diagram;
    int n = d.n();
    if (x_marking.row < 0 || x_marking.row >= n || x_marking.col < 0 || x_marking.col >= n ||
        !d.has_x(x_marking.row, x_marking.col))
        throw IllegalMove("no X marking at the stabilization cell");
    const int r = x_marking.row, c = x_marking.col;
    auto lift = [r, c](Cell p) {
        return Cell{p.row + (p.row > r ? 1 : 0), p.col + (p.col > c ? 1 : 0)};
    };

    std::vector<OMark> os;
    std::vector<Cell> xs;
    std::vector<std::pair<Cell, Cell>> xmap;
    for (const auto& o : d.o_marks()) {
        Cell p = lift({o.row, o.col});
        os.push_back({p.row, p.col, o.star});
    }
    for (const auto& x : d.x_marks()) {
        if (x == x_marking) continue;
        Cell p = lift(x);
        xs.push_back(p);
        xmap.push_back({p, x});
    }
    // The chosen X slides into the new column; the new O sits above it, the
    // new X up-left of it. Both new markings subdivide the same edge.
    xs.push_back({r, c + 1});
    xmap.push_back({{r, c + 1}, x_marking});
    os.push_back({r + 1, c + 1, false});
    xs.push_back({r + 1, c});
    xmap.push_back({{r + 1, c}, x_marking});

    GridDiagram nd = GridDiagram::from_markings(n + 1, std::move(os), std::move(xs));
    return transfer_weights(wd, nd, xmap);
}

WeightedDiagram destabilize(const WeightedDiagram& wd, Cell plain_o) {
    const GridDiagram& d = wd.diagram;
    int n = d.n();
    const int R = plain_o.row, C = plain_o.col;
    auto fail = [&](const std::string& why) {
        throw PatternNotFound("no destabilization pattern at (" + std::to_string(R) + "," +
                              std::to_string(C) + "): " + why);
    };
    if (n < 2 || R < 1 || R >= n || C < 1 || C >= n) fail("position out of range");
    if (!d.has_o(R, C) || d.star_at(R, C)) fail("expected a plain O");
    if (!d.has_x(R, C - 1)) fail("expected an X left of the O");
    if (!d.has_x(R - 1, C)) fail("expected an X below the O");
    if (d.xs_in_row(R).size() != 1) fail("extra markings in the O's row");
    if (d.xs_in_col(C).size() != 1) fail("extra markings in the O's column");
    if (d.occupied(R - 1, C - 1)) fail("target cell occupied");

    auto drop = [R, C](Cell p) {
        return Cell{p.row - (p.row > R ? 1 : 0), p.col - (p.col > C ? 1 : 0)};
    };
    std::vector<OMark> os;
    std::vector<Cell> xs;
    std::vector<std::pair<Cell, Cell>> xmap;
    for (const auto& o : d.o_marks()) {
        if (o.row == R && o.col == C) continue;
        Cell p = drop({o.row, o.col});
        os.push_back({p.row, p.col, o.star});
    }
    for (const auto& x : d.x_marks()) {
        if (x == Cell{R, C - 1}) continue;  // removed with its row
        Cell p = x == Cell{R - 1, C} ? Cell{R - 1, C - 1} : drop(x);
        xs.push_back(p);
        xmap.push_back({p, x});
    }
    GridDiagram nd = GridDiagram::from_markings(n - 1, std::move(os), std::move(xs));
    return transfer_weights(wd, nd, xmap);
}

WeightedDiagram apply_move(const WeightedDiagram& wd, const Move& m) {
    switch (m.kind) {
        case MoveKind::CyclicRow: return cyclic_permute_rows(wd, m.k);
        case MoveKind::CyclicCol: return cyclic_permute_cols(wd, m.k);
        case MoveKind::CommuteCols: return commute_cols(wd, m.index);
        case MoveKind::CommuteRows: return commute_rows(wd, m.index);
        case MoveKind::Stabilize: return stabilize(wd, m.at);
        case MoveKind::Destabilize: return destabilize(wd, m.at);
    }
    throw InternalError("unknown move kind");
}

WalkResult random_move_walk(const WeightedDiagram& wd, int steps, std::uint64_t seed, int max_n) {
    std::mt19937_64 rng(seed);
    WalkResult res{wd, {}};
    for (int s = 0; s < steps; ++s) {
        const GridDiagram& d = res.diagram.diagram;
        int n = d.n();
        std::vector<Move> candidates;
        for (int k = 1; k < n; ++k) candidates.push_back({MoveKind::CyclicRow, k, 0, {}});
        for (int k = 1; k < n; ++k) candidates.push_back({MoveKind::CyclicCol, k, 0, {}});
        for (int i = 0; i < n; ++i)
            if (commutation_legal_cols(d, i)) candidates.push_back({MoveKind::CommuteCols, 0, i, {}});
        for (int i = 0; i < n; ++i)
            if (commutation_legal_rows(d, i)) candidates.push_back({MoveKind::CommuteRows, 0, i, {}});
        if (n < max_n)
            for (const auto& x : d.x_marks()) candidates.push_back({MoveKind::Stabilize, 0, 0, x});
        for (const auto& o : d.o_marks()) {
            if (o.star) continue;
            try {
                destabilize(res.diagram, {o.row, o.col});
                candidates.push_back({MoveKind::Destabilize, 0, 0, {o.row, o.col}});
            } catch (const PatternNotFound&) {
            }
        }
        if (candidates.empty()) break;
        const Move& m = candidates[rng() % candidates.size()];
        res.diagram = apply_move(res.diagram, m);
        res.log.push_back(m);
    }
    return res;
}

std::string moves_to_json(std::span<const Move> log) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Move& m : log) {
        nlohmann::json j;
        switch (m.kind) {
            case MoveKind::CyclicRow: j = {{"kind", "cyclic_row"}, {"k", m.k}}; break;
            case MoveKind::CyclicCol: j = {{"kind", "cyclic_col"}, {"k", m.k}}; break;
            case MoveKind::CommuteCols: j = {{"kind", "commute_cols"}, {"i", m.index}}; break;
            case MoveKind::CommuteRows: j = {{"kind", "commute_rows"}, {"i", m.index}}; break;
            case MoveKind::Stabilize:
                j = {{"kind", "stabilize"}, {"row", m.at.row}, {"col", m.at.col}};
                break;
            case MoveKind::Destabilize:
                j = {{"kind", "destabilize"}, {"row", m.at.row}, {"col", m.at.col}};
                break;
        }
        arr.push_back(j);
    }
    return arr.dump();
}

std::vector<Move> moves_from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("bad move log: ") + e.what());
    }
    if (!arr.is_array()) throw SyntaxError("move log must be a JSON array");
    std::vector<Move> out;
    for (const auto& j : arr) {
        std::string kind = j.at("kind");
        Move m;
        if (kind == "cyclic_row") {
            m = {MoveKind::CyclicRow, j.at("k"), 0, {}};
        } else if (kind == "cyclic_col") {
            m = {MoveKind::CyclicCol, j.at("k"), 0, {}};
        } else if (kind == "commute_cols") {
            m = {MoveKind::CommuteCols, 0, j.at("i"), {}};
        } else if (kind == "commute_rows") {
            m = {MoveKind::CommuteRows, 0, j.at("i"), {}};
        } else if (kind == "stabilize") {
            m = {MoveKind::Stabilize, 0, 0, {j.at("row"), j.at("col")}};
        } else if (kind == "destabilize") {
            m = {MoveKind::Destabilize, 0, 0, {j.at("row"), j.at("col")}};
        } else {
            throw SyntaxError("unknown move kind '" + kind + "'");
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace gridhom
