#include "gridhom/complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

#include "gridhom/parallel.hpp"

namespace gridhom {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GRIDHOM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

namespace {

// Bitmask of `len` consecutive rows starting at `start`, cyclically.
inline std::uint32_t cyc_mask(int start, int len, int n) {
    if (len <= 0) return 0;
    start %= n;
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    if (len >= n) return full;
    if (start + len <= n) return ((1u << len) - 1) << start;
    return (((1u << len) - 1) << start | ((1u << (start + len - n)) - 1)) & full;
}

// The two torus rectangles leaving x across a column pair. With rows
// r1 = perm[c1], r2 = perm[c2], the lower-left and upper-right corners must
// be points of x; that forces one non-wrapping candidate and its complement.
struct RectSpan {
    int cs, cw, rs, rw;
};

inline void rect_pair(int c1, int c2, int r1, int r2, int n, RectSpan& a, RectSpan& b) {
    if (r1 < r2) {
        a = {c1, c2 - c1, r1, r2 - r1};
        b = {c2, n - (c2 - c1), r2, n - (r2 - r1)};
    } else {
        a = {c1, c2 - c1, r1, n - (r1 - r2)};
        b = {c2, n - (c2 - c1), r2, r1 - r2};
    }
}

// Shared grading/blocking context for the complex builders.
struct BuildContext {
    int n = 0;
    std::vector<std::uint32_t> block_mask;          // per column: rows of forbidden cells
    std::vector<std::vector<int>> m_tab;            // point-vs-O pairing contribution
    std::vector<std::vector<long long>> a2_tab;     // point-vs-weighted-marks contribution
    long long i_oo = 0;                             // I(O, O)
    bool graded_a = true;
};

// Column-major point-domination counts against a fixed cell-marking set.
// A state point (c, r) pairs with a marking in cell (mc, mr) when c <= mc and
// r <= mr (point below-left) or mc < c and mr < r (marking below-left).
void add_mark(BuildContext& ctx, int mr, int mc, long long w_m, long long w_a2) {
    for (int c = 0; c < ctx.n; ++c)
        for (int r = 0; r < ctx.n; ++r) {
            bool dominated = (c <= mc && r <= mr) || (mc < c && mr < r);
            if (!dominated) continue;
            if (w_m) ctx.m_tab[c][r] += (int)w_m;
            if (w_a2) ctx.a2_tab[c][r] += w_a2;
        }
}

int ixx(const State& x) {
    int n = x.n(), cnt = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x.perm[i] < x.perm[j]) ++cnt;
    return cnt;
}

BigradedComplex build_complex(const BuildContext& ctx, int threads) {
    const int n = ctx.n;
    if (n > 12) throw TooLarge("state space of a " + std::to_string(n) + "x" + std::to_string(n) +
                               " grid is beyond reach");
    const std::uint64_t total = factorial(n);
    threads = resolve_threads(threads);
    const int chunks = (total > 4096) ? threads * 8 : 1;

    // Pass 1: bigrading of every state.
    std::vector<std::int16_t> m_of(total);
    std::vector<long long> a2_of(ctx.graded_a ? total : 0);
    parallel_chunks(total, chunks, threads, [&](int, std::uint64_t begin, std::uint64_t end) {
        State x = lex_unrank(n, begin);
        for (std::uint64_t i = begin; i < end; ++i) {
            long long msum = 0, asum = 0;
            for (int c = 0; c < n; ++c) {
                msum += ctx.m_tab[c][x.perm[c]];
                if (ctx.graded_a) asum += ctx.a2_tab[c][x.perm[c]];
            }
            m_of[i] = (std::int16_t)(ixx(x) - msum + ctx.i_oo + 1);
            if (ctx.graded_a) a2_of[i] = asum;
            std::next_permutation(x.perm.begin(), x.perm.end());
        }
    });

    // Stratum layout: (alex2, maslov) ascending, generators rank-ascending.
    BigradedComplex cx;
    cx.grid_n = n;
    std::map<std::pair<long long, int>, int> id_of;
    for (std::uint64_t i = 0; i < total; ++i) {
        long long a2 = ctx.graded_a ? a2_of[i] : 0;
        id_of.emplace(std::make_pair(a2, (int)m_of[i]), 0);
    }
    cx.strata.reserve(id_of.size());
    for (auto& [key, id] : id_of) {
        id = (int)cx.strata.size();
        Stratum s;
        s.alex2 = key.first;
        s.maslov = key.second;
        cx.strata.push_back(std::move(s));
    }
    for (auto& s : cx.strata) {
        auto it = id_of.find({s.alex2, s.maslov - 1});
        s.below = (it == id_of.end()) ? -1 : it->second;
    }

    std::vector<std::uint32_t> strat_of(total), pos_of(total);
    for (std::uint64_t i = 0; i < total; ++i) {
        long long a2 = ctx.graded_a ? a2_of[i] : 0;
        int sid = id_of.at({a2, (int)m_of[i]});
        strat_of[i] = (std::uint32_t)sid;
        pos_of[i] = (std::uint32_t)cx.strata[sid].gens.size();
        cx.strata[sid].gens.push_back((std::uint32_t)i);
    }

    // Pass 2: boundary entries. Each chunk covers a contiguous rank range and
    // therefore a contiguous column range inside every stratum, so appending
    // chunk results in order reproduces the single-threaded matrix exactly.
    const std::size_t nstrata = cx.strata.size();
    struct ChunkOut {
        std::vector<std::vector<std::uint32_t>> col_sizes, rows;
    };
    std::vector<ChunkOut> outs(chunks);
    for (auto& o : outs) {
        o.col_sizes.resize(nstrata);
        o.rows.resize(nstrata);
    }

    parallel_chunks(total, chunks, threads, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
        ChunkOut& out = outs[chunk];
        State x = lex_unrank(n, begin);
        State y;
        y.perm.resize(n);
        RectSpan rect[2];
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint32_t sid = strat_of[i];
            std::uint32_t emitted = 0;
            for (int c1 = 0; c1 < n; ++c1) {
                for (int c2 = c1 + 1; c2 < n; ++c2) {
                    const int r1 = x.perm[c1], r2 = x.perm[c2];
                    rect_pair(c1, c2, r1, r2, n, rect[0], rect[1]);
                    bool pass[2];
                    for (int k = 0; k < 2; ++k) {
                        const RectSpan& rc = rect[k];
                        const std::uint32_t cell = cyc_mask(rc.rs, rc.rw, n);
                        const std::uint32_t inner = cyc_mask(rc.rs + 1, rc.rw - 1, n);
                        bool ok = true;
                        int c = rc.cs;
                        for (int t = 0; t < rc.cw; ++t) {
                            if (ctx.block_mask[c] & cell) { ok = false; break; }
                            if (t > 0 && ((1u << x.perm[c]) & inner)) { ok = false; break; }
                            if (++c == n) c = 0;
                        }
                        pass[k] = ok;
                    }
                    if (pass[0] == pass[1]) continue;  // 0 or 2 rectangles: cancels mod 2
                    y.perm.assign(x.perm.begin(), x.perm.end());
                    std::swap(y.perm[c1], y.perm[c2]);
                    const std::uint64_t yrank = lex_rank(y.perm);
                    out.rows[sid].push_back(pos_of[yrank]);
                    ++emitted;
                }
            }
            out.col_sizes[sid].push_back(emitted);
            std::next_permutation(x.perm.begin(), x.perm.end());
        }
    });

    for (std::size_t sid = 0; sid < nstrata; ++sid) {
        Stratum& s = cx.strata[sid];
        if (s.below < 0) {
            // A differential out of this stratum would land in an unpopulated
            // grading class, which cannot happen: targets are states too.
            for (const auto& o : outs)
                if (!o.rows[sid].empty()) throw InternalError("boundary into an empty stratum");
            continue;
        }
        s.col_ptr.reserve(s.gens.size() + 1);
        s.col_ptr.push_back(0);
        for (const auto& o : outs) {
            for (std::uint32_t sz : o.col_sizes[sid]) s.col_ptr.push_back(s.col_ptr.back() + sz);
            s.rows.insert(s.rows.end(), o.rows[sid].begin(), o.rows[sid].end());
        }
        if (s.col_ptr.size() != s.gens.size() + 1) throw InternalError("column count mismatch");
    }
    return cx;
}

BuildContext diagram_context(const GridDiagram& d) {
    BuildContext ctx;
    ctx.n = d.n();
    ctx.block_mask.resize(ctx.n);
    for (int c = 0; c < ctx.n; ++c) ctx.block_mask[c] = d.mark_mask_col(c);
    ctx.m_tab.assign(ctx.n, std::vector<int>(ctx.n, 0));
    ctx.a2_tab.assign(ctx.n, std::vector<long long>(ctx.n, 0));
    return ctx;
}

}  // namespace

int BigradedComplex::find(int maslov, long long alex2) const {
    for (int i = 0; i < (int)strata.size(); ++i)
        if (strata[i].maslov == maslov && strata[i].alex2 == alex2) return i;
    return -1;
}

std::uint64_t BigradedComplex::total_dim() const {
    std::uint64_t d = 0;
    for (const auto& s : strata) d += s.gens.size();
    return d;
}

std::uint64_t BigradedComplex::boundary_entries() const {
    std::uint64_t e = 0;
    for (const auto& s : strata) e += s.rows.size();
    return e;
}

bool BigradedComplex::d_squared_zero() const {
    std::vector<std::uint32_t> acc;
    for (const auto& s : strata) {
        if (s.below < 0) continue;
        const Stratum& t = strata[s.below];
        if (t.below < 0) continue;  // nothing two steps down
        for (std::size_t col = 0; col + 1 < s.col_ptr.size(); ++col) {
            acc.clear();
            for (std::uint32_t k = s.col_ptr[col]; k < s.col_ptr[col + 1]; ++k) {
                std::uint32_t mid = s.rows[k];
                acc.insert(acc.end(), t.rows.begin() + t.col_ptr[mid], t.rows.begin() + t.col_ptr[mid + 1]);
            }
            std::sort(acc.begin(), acc.end());
            for (std::size_t k = 0; k < acc.size(); k += 2)
                if (k + 1 >= acc.size() || acc[k] != acc[k + 1]) return false;
        }
    }
    return true;
}

std::vector<RectAnnotation> empty_rectangles_from(const GridDiagram& d, const State& x) {
    const int n = d.n();
    std::vector<RectAnnotation> out;
    if ((int)x.perm.size() != n) throw ValidationError("state size does not match the grid");
    RectSpan rect[2];
    for (int c1 = 0; c1 < n; ++c1) {
        for (int c2 = c1 + 1; c2 < n; ++c2) {
            rect_pair(c1, c2, x.perm[c1], x.perm[c2], n, rect[0], rect[1]);
            for (const RectSpan& rc : {rect[0], rect[1]}) {
                const std::uint32_t inner = cyc_mask(rc.rs + 1, rc.rw - 1, n);
                bool empty = true;
                for (int t = 1; t < rc.cw && empty; ++t)
                    if ((1u << x.perm[(rc.cs + t) % n]) & inner) empty = false;
                if (!empty) continue;

                RectAnnotation a;
                a.col_start = rc.cs % n;
                a.col_span = rc.cw;
                a.row_start = rc.rs % n;
                a.row_span = rc.rw;
                a.to = x;
                std::swap(a.to.perm[c1], a.to.perm[c2]);
                const std::uint32_t cell = cyc_mask(rc.rs, rc.rw, n);
                for (int t = 0; t < rc.cw; ++t) {
                    int c = (rc.cs + t) % n;
                    for (int r = 0; r < n; ++r) {
                        if (!((cell >> r) & 1)) continue;
                        if (d.has_x(r, c)) a.x_content.push_back(d.x_index_at(r, c));
                        if (d.star_at(r, c))
                            a.star_content.push_back(d.o_index_in_col(c));
                        else if (d.has_o(r, c))
                            a.o_content.push_back(d.o_index_in_col(c));
                    }
                }
                out.push_back(std::move(a));
            }
        }
    }
    return out;
}

bool hat_rectangle_filter(const RectAnnotation& r) {
    return r.x_content.empty() && r.star_content.empty();
}

BigradedComplex tilde_complex(const WeightedDiagram& wd, int threads) {
    BuildContext ctx = diagram_context(wd.diagram);
    const GridDiagram& d = wd.diagram;
    for (int i = 0; i < d.n(); ++i)
        add_mark(ctx, d.o_marks()[i].row, d.o_marks()[i].col, 1, -wd.o_weights[i]);
    for (std::size_t j = 0; j < d.x_marks().size(); ++j)
        add_mark(ctx, d.x_marks()[j].row, d.x_marks()[j].col, 0, wd.x_weights[j]);
    // I(O, O) over the O-type cells.
    for (int i = 0; i < d.n(); ++i)
        for (int k = 0; k < d.n(); ++k)
            if (d.o_marks()[i].col < d.o_marks()[k].col && d.o_marks()[i].row < d.o_marks()[k].row)
                ++ctx.i_oo;
    return build_complex(ctx, threads);
}

BigradedComplex cn_complex(const CnFixture& f, int threads) {
    BuildContext ctx;
    ctx.n = f.n;
    ctx.graded_a = false;
    ctx.block_mask.assign(f.n, 0);
    ctx.block_mask[f.star.col] |= 1u << f.star.row;
    for (const Cell& x : f.xs) ctx.block_mask[x.col] |= 1u << x.row;
    ctx.m_tab.assign(f.n, std::vector<int>(f.n, 0));
    ctx.a2_tab.assign(f.n, std::vector<long long>(f.n, 0));
    add_mark(ctx, f.star.row, f.star.col, 1, 0);
    ctx.i_oo = 0;  // a single O-type marking pairs trivially with itself
    return build_complex(ctx, threads);
}

}  // namespace gridhom
