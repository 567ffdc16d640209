// Independent cross-check pipeline: explicit cell scans, quadratic state-pair
// rectangle search, dense elimination. Shares nothing with complex.cpp /
// gf2.cpp beyond the public types it fills in.

#include <algorithm>
#include <map>
#include <vector>

#include "gridhom/homology.hpp"

namespace gridhom {

namespace {

struct OraclePoint {
    double x, y;
    long long coeff;
};

long long icount(const std::vector<OraclePoint>& a, const std::vector<OraclePoint>& b) {
    long long s = 0;
    for (const auto& p : a)
        for (const auto& q : b)
            if (p.x < q.x && p.y < q.y) s += p.coeff * q.coeff;
    return s;
}

long long j2(const std::vector<OraclePoint>& a, const std::vector<OraclePoint>& b) {
    return icount(a, b) + icount(b, a);
}

void all_perms(int n, std::vector<int>& cur, std::vector<char>& used,
               std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == n) {
        out.push_back(cur);
        return;
    }
    for (int r = 0; r < n; ++r) {
        if (used[r]) continue;
        used[r] = 1;
        cur.push_back(r);
        all_perms(n, cur, used, out);
        cur.pop_back();
        used[r] = 0;
    }
}

struct OracleMark {
    int row, col;
    long long weight;
    bool is_x, is_star;
};

struct OracleGrid {
    int n;
    std::vector<OracleMark> marks;
};

std::vector<OraclePoint> perm_points(const std::vector<int>& perm) {
    std::vector<OraclePoint> pts;
    for (int c = 0; c < (int)perm.size(); ++c) pts.push_back({(double)c, (double)perm[c], 1});
    return pts;
}

int oracle_maslov(const OracleGrid& g, const std::vector<int>& perm) {
    std::vector<OraclePoint> diff = perm_points(perm);
    for (const auto& m : g.marks)
        if (!m.is_x) diff.push_back({m.col + 0.5, m.row + 0.5, -1});
    long long twice = j2(diff, diff);
    if (twice % 2 != 0) throw InternalError("oracle: odd doubled Maslov grading");
    return (int)(twice / 2 + 1);
}

long long oracle_alex2(const OracleGrid& g, const std::vector<int>& perm) {
    std::vector<OraclePoint> marks;
    for (const auto& m : g.marks)
        marks.push_back({m.col + 0.5, m.row + 0.5, m.is_x ? m.weight : -m.weight});
    return j2(perm_points(perm), marks);
}

// Number of rectangles from x to y containing neither a state point in the
// interior nor any marking, counted over the four torus candidates.
int oracle_clear_rect_count(const OracleGrid& g, const std::vector<int>& x,
                            const std::vector<int>& y) {
    int n = g.n;
    std::vector<int> moved;
    for (int c = 0; c < n; ++c)
        if (x[c] != y[c]) moved.push_back(c);
    if (moved.size() != 2) return 0;
    int c1 = moved[0], c2 = moved[1];
    if (x[c1] != y[c2] || x[c2] != y[c1]) return 0;

    int count = 0;
    // The two rectangles from x to y: lower-left corner (cs, x[cs]) and
    // upper-right corner (ce, x[ce]) must both be points of x, which pins the
    // row interval once the column interval is chosen.
    for (auto [cs, ce] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
        int rs = x[cs], re = x[ce];
        int cw = (ce - cs + n) % n, rw = (re - rs + n) % n;
        bool ok = true;
        for (int c = 0; c < n && ok; ++c) {
            int dc = (c - cs + n) % n;
            if (dc == 0 || dc >= cw) continue;  // interior columns only
            int dr = (x[c] - rs + n) % n;
            if (dr > 0 && dr < rw) ok = false;
        }
        for (const auto& m : g.marks) {
            if (!ok) break;
            int dc = (m.col - cs + n) % n;
            int dr = (m.row - rs + n) % n;
            if (dc < cw && dr < rw) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

long long dense_rank(std::vector<std::vector<unsigned char>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    long long rank = 0;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t piv = lead;
        while (piv < rows && !m[piv][c]) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[lead]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != lead && m[r][c])
                for (std::size_t k = c; k < cols; ++k) m[r][k] ^= m[lead][k];
        ++lead;
        ++rank;
    }
    return rank;
}

PoincarePolynomial oracle_run(const OracleGrid& g, bool graded_a) {
    if (g.n > 7) throw TooLarge("oracle handles grids up to 7x7");
    std::vector<std::vector<int>> states;
    {
        std::vector<int> cur;
        std::vector<char> used(g.n, 0);
        all_perms(g.n, cur, used, states);
    }

    std::vector<int> m_of(states.size());
    std::vector<long long> a_of(states.size(), 0);
    std::map<std::pair<int, long long>, std::vector<int>> stratum;
    for (std::size_t i = 0; i < states.size(); ++i) {
        m_of[i] = oracle_maslov(g, states[i]);
        if (graded_a) a_of[i] = oracle_alex2(g, states[i]);
        stratum[{m_of[i], a_of[i]}].push_back((int)i);
    }

    PoincarePolynomial out;
    std::map<std::pair<int, long long>, long long> rank_into;  // rank of map landing at key
    for (const auto& [key, gens] : stratum) {
        auto target = stratum.find({key.first - 1, key.second});
        long long r = 0;
        if (target != stratum.end()) {
            std::vector<std::vector<unsigned char>> mat(
                target->second.size(), std::vector<unsigned char>(gens.size(), 0));
            for (std::size_t col = 0; col < gens.size(); ++col)
                for (std::size_t row = 0; row < target->second.size(); ++row)
                    mat[row][col] = (unsigned char)(oracle_clear_rect_count(
                                        g, states[gens[col]], states[target->second[row]]) %
                                    2);
            r = dense_rank(std::move(mat));
            rank_into[target->first] += r;
        }
        long long h = (long long)gens.size() - r;
        out.add(key.first, key.second, h);  // incoming rank subtracted below
    }
    for (const auto& [key, r] : rank_into) out.add(key.first, key.second, -r);
    return out;
}

}  // namespace

PoincarePolynomial oracle_homology(const WeightedDiagram& wd) {
    OracleGrid g;
    g.n = wd.diagram.n();
    for (int i = 0; i < (int)wd.diagram.o_marks().size(); ++i) {
        const OMark& o = wd.diagram.o_marks()[i];
        g.marks.push_back({o.row, o.col, wd.o_weights[i], false, o.star});
    }
    for (int j = 0; j < (int)wd.diagram.x_marks().size(); ++j) {
        const Cell& x = wd.diagram.x_marks()[j];
        g.marks.push_back({x.row, x.col, wd.x_weights[j], true, false});
    }
    return oracle_run(g, true);
}

PoincarePolynomial oracle_cn_homology(const CnFixture& f) {
    OracleGrid g;
    g.n = f.n;
    g.marks.push_back({f.star.row, f.star.col, 0, false, true});
    for (const Cell& x : f.xs) g.marks.push_back({x.row, x.col, 0, true, false});
    return oracle_run(g, false);
}

}  // namespace gridhom
