#include "gridhom/diagram.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gridhom {

namespace {

std::string cell_str(int row, int col) {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

}  // namespace

GridDiagram GridDiagram::from_markings(int n, std::vector<OMark> os, std::vector<Cell> xs) {
    if (n <= 0) throw ValidationError("grid size must be positive");
    if (n > 31) throw TooLarge("grid size " + std::to_string(n) + " exceeds the supported 31");
    for (const auto& o : os) {
        if (o.row < 0 || o.row >= n || o.col < 0 || o.col >= n)
            throw ValidationError("O marking " + cell_str(o.row, o.col) + " out of range");
    }
    for (const auto& x : xs) {
        if (x.row < 0 || x.row >= n || x.col < 0 || x.col >= n)
            throw ValidationError("X marking " + cell_str(x.row, x.col) + " out of range");
    }

    // (i): one O-type per row and per column.
    if ((int)os.size() != n)
        throw ValidationError("condition (i): expected " + std::to_string(n) + " O markings, got " +
                              std::to_string(os.size()));
    std::vector<int> row_o(n, 0), col_o(n, 0);
    for (const auto& o : os) {
        if (++row_o[o.row] > 1)
            throw ValidationError("condition (i): two O markings in row " + std::to_string(o.row));
        if (++col_o[o.col] > 1)
            throw ValidationError("condition (i): two O markings in column " + std::to_string(o.col));
    }

    // (iii): no shared cells.
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] == xs[i - 1])
            throw ValidationError("condition (iii): duplicate X marking at " +
                                  cell_str(xs[i].row, xs[i].col));
    for (const auto& o : os)
        if (std::binary_search(xs.begin(), xs.end(), Cell{o.row, o.col}))
            throw ValidationError("condition (iii): O and X share cell " + cell_str(o.row, o.col));

    // (ii): a row/column with zero or several X markings needs an O*.
    std::sort(os.begin(), os.end(), [](const OMark& a, const OMark& b) { return a.row < b.row; });
    std::vector<int> row_x(n, 0), col_x(n, 0);
    for (const auto& x : xs) {
        ++row_x[x.row];
        ++col_x[x.col];
    }
    std::vector<char> row_star(n, 0), col_star(n, 0);
    for (const auto& o : os)
        if (o.star) row_star[o.row] = col_star[o.col] = 1;
    for (int r = 0; r < n; ++r)
        if (row_x[r] != 1 && !row_star[r])
            throw ValidationError("condition (ii): row " + std::to_string(r) + " has " +
                                  std::to_string(row_x[r]) + " X markings and no O*");
    for (int c = 0; c < n; ++c)
        if (col_x[c] != 1 && !col_star[c])
            throw ValidationError("condition (ii): column " + std::to_string(c) + " has " +
                                  std::to_string(col_x[c]) + " X markings and no O*");

    GridDiagram d;
    d.n_ = n;
    d.o_ = std::move(os);
    d.x_ = std::move(xs);
    d.build_index();
    return d;
}

void GridDiagram::build_index() {
    o_of_col_.assign(n_, -1);
    x_by_row_.assign(n_, {});
    x_by_col_.assign(n_, {});
    xmask_by_col_.assign(n_, 0);
    omask_by_col_.assign(n_, 0);
    star_count_ = 0;
    for (int i = 0; i < n_; ++i) {
        o_of_col_[o_[i].col] = i;
        omask_by_col_[o_[i].col] |= 1u << o_[i].row;
        if (o_[i].star) ++star_count_;
    }
    for (int j = 0; j < (int)x_.size(); ++j) {
        x_by_row_[x_[j].row].push_back(j);
        x_by_col_[x_[j].col].push_back(j);
        xmask_by_col_[x_[j].col] |= 1u << x_[j].row;
    }
    // x_ is (row, col) sorted, so the per-row lists are column-ascending; sort
    // the per-column lists by row for determinism.
    for (auto& v : x_by_col_) std::sort(v.begin(), v.end(), [&](int a, int b) { return x_[a].row < x_[b].row; });
}

int GridDiagram::x_index_at(int row, int col) const {
    if (!has_x(row, col)) return -1;
    for (int j : x_by_row_[row])
        if (x_[j].col == col) return j;
    return -1;
}

std::string GridDiagram::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["o_markings"] = nlohmann::json::array();
    for (const auto& o : o_) j["o_markings"].push_back({{"row", o.row}, {"col", o.col}, {"star", o.star}});
    j["x_markings"] = nlohmann::json::array();
    for (const auto& x : x_) j["x_markings"].push_back({x.row, x.col});
    return j.dump();
}

// ---------------------------------------------------------------------------
// Parsing / serialization
// ---------------------------------------------------------------------------

DiagramFile read_diagram(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw SyntaxError("empty diagram text");
    if (line.rfind("n=", 0) != 0) throw SyntaxError("expected header line 'n=<int>'");
    int n = 0;
    try {
        std::size_t pos = 0;
        n = std::stoi(line.substr(2), &pos);
        if (pos + 2 != line.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw SyntaxError("bad grid size in header: '" + line + "'");
    }
    if (n <= 0) throw SyntaxError("grid size must be positive");

    std::vector<OMark> os;
    std::vector<Cell> xs;
    for (int k = 0; k < n; ++k) {
        if (!std::getline(in, line)) throw SyntaxError("expected " + std::to_string(n) + " grid rows");
        int row = n - 1 - k;  // file lists the top row first
        std::istringstream ls(line);
        std::string tok;
        int col = 0;
        while (ls >> tok) {
            if (col >= n) throw SyntaxError("row " + std::to_string(row) + " has more than " +
                                            std::to_string(n) + " tokens");
            if (tok == "O")
                os.push_back({row, col, false});
            else if (tok == "*")
                os.push_back({row, col, true});
            else if (tok == "X")
                xs.push_back({row, col});
            else if (tok != ".")
                throw SyntaxError("unknown token '" + tok + "' in row " + std::to_string(row));
            ++col;
        }
        if (col != n)
            throw SyntaxError("row " + std::to_string(row) + " has " + std::to_string(col) +
                              " tokens, expected " + std::to_string(n));
    }

    DiagramFile out{GridDiagram::from_markings(n, std::move(os), std::move(xs)), {}, false};
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.rfind("weights=", 0) != 0) throw SyntaxError("unexpected trailing line: '" + line + "'");
        std::istringstream ws(line.substr(8));
        long long w;
        while (ws >> w) out.weights.push_back(w);
        if (!ws.eof()) throw SyntaxError("bad weight list: '" + line + "'");
        out.has_weights = true;
    }
    return out;
}

GridDiagram parse_diagram(const std::string& text) { return read_diagram(text).diagram; }

std::string serialize(const GridDiagram& d, const std::vector<long long>* weights) {
    std::ostringstream out;
    out << "n=" << d.n() << "\n";
    for (int row = d.n() - 1; row >= 0; --row) {
        for (int col = 0; col < d.n(); ++col) {
            if (col) out << ' ';
            if (d.has_x(row, col))
                out << 'X';
            else if (d.star_at(row, col))
                out << '*';
            else if (d.has_o(row, col))
                out << 'O';
            else
                out << '.';
        }
        out << "\n";
    }
    if (weights && !weights->empty()) {
        out << "weights=";
        for (long long w : *weights) out << ' ' << w;
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Edge tracing
// ---------------------------------------------------------------------------

int SpatialGraphSkeleton::vertex_of_omark(int o_index) const {
    for (int v = 0; v < (int)vertices.size(); ++v)
        if (vertices[v] == o_index) return v;
    return -1;
}

bool SpatialGraphSkeleton::has_sink_or_source() const {
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        bool in = !in_edges[v].empty(), out = !out_edges[v].empty();
        if (in != out) return true;
    }
    return false;
}

SpatialGraphSkeleton trace_edges(const GridDiagram& d) {
    SpatialGraphSkeleton sk;
    const auto& os = d.o_marks();
    for (int i = 0; i < (int)os.size(); ++i)
        if (os[i].star) sk.vertices.push_back(i);
    std::sort(sk.vertices.begin(), sk.vertices.end(), [&](int a, int b) {
        return Cell{os[a].row, os[a].col} < Cell{os[b].row, os[b].col};
    });
    sk.out_edges.assign(sk.vertices.size(), {});
    sk.in_edges.assign(sk.vertices.size(), {});

    std::vector<char> x_used(d.x_marks().size(), 0);
    std::vector<char> o_used(os.size(), 0);

    for (int v = 0; v < (int)sk.vertices.size(); ++v) {
        const OMark& om = os[sk.vertices[v]];
        for (int xj : d.xs_in_row(om.row)) {  // column ascending: deterministic edge order
            GraphEdge e;
            e.from = v;
            int x = xj;
            for (;;) {
                e.xs.push_back(x);
                x_used[x] = 1;
                int oi = d.o_index_in_col(d.x_marks()[x].col);
                if (os[oi].star) {
                    e.to = sk.vertex_of_omark(oi);
                    break;
                }
                if (o_used[oi])
                    throw TraceError("edge path revisits the O marking at " +
                                     cell_str(os[oi].row, os[oi].col));
                o_used[oi] = 1;
                e.os.push_back(oi);
                const auto& next = d.xs_in_row(os[oi].row);
                if (next.size() != 1)
                    throw InternalError("plain O row without a unique X");  // excluded by (ii)
                x = next[0];
            }
            int id = (int)sk.edges.size();
            sk.out_edges[v].push_back(id);
            sk.in_edges[e.to].push_back(id);
            sk.edges.push_back(std::move(e));
        }
    }

    // Every marking must lie on some traced path; a leftover O or X means a
    // closed component with no vertex, which does not represent an MOY graph.
    for (std::size_t j = 0; j < x_used.size(); ++j)
        if (!x_used[j])
            throw TraceError("X marking at " + cell_str(d.x_marks()[j].row, d.x_marks()[j].col) +
                             " is not connected to any O*");
    for (std::size_t i = 0; i < o_used.size(); ++i)
        if (!o_used[i] && !os[i].star)
            throw TraceError("O marking at " + cell_str(os[i].row, os[i].col) +
                             " is not connected to any O*");
    return sk;
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

long long WeightedDiagram::vertex_weight(int vertex) const {
    long long sum = 0;
    for (int e : skeleton.in_edges[vertex]) sum += edge_weights[e];
    return sum;
}

std::vector<long long> WeightedDiagram::plain_o_weights() const {
    std::vector<long long> ws;
    for (int i = 0; i < (int)diagram.o_marks().size(); ++i)
        if (!diagram.o_marks()[i].star) ws.push_back(o_weights[i]);
    return ws;
}

WeightedDiagram assign_weights(const GridDiagram& d, const std::vector<long long>& edge_weights) {
    WeightedDiagram wd{d, trace_edges(d), edge_weights, {}, {}};
    const auto& sk = wd.skeleton;
    if (edge_weights.size() != sk.edges.size())
        throw BalanceError("expected " + std::to_string(sk.edges.size()) + " edge weights, got " +
                           std::to_string(edge_weights.size()));

    wd.o_weights.assign(d.o_marks().size(), 0);
    wd.x_weights.assign(d.x_marks().size(), 0);
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        for (int x : sk.edges[e].xs) wd.x_weights[x] = edge_weights[e];
        for (int o : sk.edges[e].os) wd.o_weights[o] = edge_weights[e];
    }
    for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
        long long in = 0, out = 0;
        for (int e : sk.in_edges[v]) in += edge_weights[e];
        for (int e : sk.out_edges[v]) out += edge_weights[e];
        if (in != out) {
            const OMark& om = d.o_marks()[sk.vertices[v]];
            throw BalanceError("vertex at " + cell_str(om.row, om.col) + " has in-sum " +
                               std::to_string(in) + " but out-sum " + std::to_string(out));
        }
        wd.o_weights[sk.vertices[v]] = in;
    }
    return wd;
}

WeightedDiagram read_weighted_diagram(const std::string& text) {
    DiagramFile f = read_diagram(text);
    if (f.has_weights) return assign_weights(f.diagram, f.weights);
    auto sk = trace_edges(f.diagram);
    return assign_weights(f.diagram, std::vector<long long>(sk.edges.size(), 1));
}

// ---------------------------------------------------------------------------

bool is_good(const GridDiagram& d) {
    int n = d.n();
    return d.has_o(n - 1, 0) && d.has_o(0, n - 1) && d.has_x(n - 1, n - 1);
}

bool CnFixture::has_x(int row, int col) const {
    if (row == n - 1) return col != n - 1;
    return col == n - 1;
}

CnFixture build_cn_fixture(int n) {
    if (n < 2) throw ValidationError("staircase fixture needs n >= 2");
    CnFixture f;
    f.n = n;
    f.star = {n - 1, n - 1};
    for (int c = 0; c < n - 1; ++c) f.xs.push_back({n - 1, c});
    for (int r = 0; r < n - 1; ++r) f.xs.push_back({r, n - 1});
    return f;
}

}  // namespace gridhom
