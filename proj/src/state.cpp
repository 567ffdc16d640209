#include "gridhom/state.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace gridhom {

long long i_pairing(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b) {
    long long total = 0;
    for (const auto& p : a)
        for (const auto& q : b)
            if (p.x < q.x && p.y < q.y) total += p.coeff * q.coeff;
    return total;
}

long long j_pairing2(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b) {
    return i_pairing(a, b) + i_pairing(b, a);
}

namespace {

// Doubled planar coordinates under a cut: lattice point (c, r) lands at
// (2*((c - cut_col) mod n), 2*((r - cut_row) mod n)); cells get +1 offsets.
inline long long cutc(int v, int cut, int n) { return 2LL * (((v - cut) % n + n) % n); }

}  // namespace

std::vector<WeightedPoint> state_points(const PlanarRealization& pr, const State& x) {
    int n = pr.diagram.n();
    std::vector<WeightedPoint> pts;
    pts.reserve(n);
    for (int c = 0; c < n; ++c)
        pts.push_back({cutc(c, pr.cut_col, n), cutc(x.perm[c], pr.cut_row, n), 1});
    return pts;
}

std::vector<WeightedPoint> o_points(const PlanarRealization& pr) {
    int n = pr.diagram.n();
    std::vector<WeightedPoint> pts;
    pts.reserve(n);
    for (const auto& o : pr.diagram.o_marks())
        pts.push_back({cutc(o.col, pr.cut_col, n) + 1, cutc(o.row, pr.cut_row, n) + 1, 1});
    return pts;
}

int maslov(const PlanarRealization& pr, const State& x) {
    // J(x-O, x-O) = J(x,x) - 2 J(x,O) + J(O,O); each J(A,A) equals I(A,A), so
    // the whole expression is I(x,x) - I(x,O) - I(O,x) + I(O,O), an integer.
    auto xs = state_points(pr, x);
    auto os = o_points(pr);
    long long m = i_pairing(xs, xs) - i_pairing(xs, os) - i_pairing(os, xs) + i_pairing(os, os) + 1;
    return (int)m;
}

long long alexander2(const PlanarRealization& pr, const WeightedDiagram& wd, const State& x) {
    int n = pr.diagram.n();
    auto xs = state_points(pr, x);
    std::vector<WeightedPoint> marks;
    marks.reserve(wd.x_weights.size() + wd.o_weights.size());
    for (std::size_t j = 0; j < wd.x_weights.size(); ++j) {
        const Cell& c = pr.diagram.x_marks()[j];
        marks.push_back({cutc(c.col, pr.cut_col, n) + 1, cutc(c.row, pr.cut_row, n) + 1, wd.x_weights[j]});
    }
    for (std::size_t i = 0; i < wd.o_weights.size(); ++i) {
        const OMark& o = pr.diagram.o_marks()[i];
        marks.push_back({cutc(o.col, pr.cut_col, n) + 1, cutc(o.row, pr.cut_row, n) + 1, -wd.o_weights[i]});
    }
    return j_pairing2(xs, marks);
}

int maslov_cn(const CnFixture& f, const State& x) {
    std::vector<WeightedPoint> xs, os;
    for (int c = 0; c < f.n; ++c) xs.push_back({2LL * c, 2LL * x.perm[c], 1});
    os.push_back({2LL * f.star.col + 1, 2LL * f.star.row + 1, 1});
    long long m = i_pairing(xs, xs) - i_pairing(xs, os) - i_pairing(os, xs) + i_pairing(os, os) + 1;
    return (int)m;
}

void for_each_state(int n, const std::function<void(const State&)>& fn) {
    State x;
    x.perm.resize(n);
    std::iota(x.perm.begin(), x.perm.end(), 0);
    do {
        fn(x);
    } while (std::next_permutation(x.perm.begin(), x.perm.end()));
}

std::vector<State> enumerate_states(const GridDiagram& d) {
    std::vector<State> out;
    out.reserve((std::size_t)factorial(d.n()));
    for_each_state(d.n(), [&](const State& x) { out.push_back(x); });
    return out;
}

std::uint64_t factorial(int n) {
    static const auto table = [] {
        std::array<std::uint64_t, 21> t{};
        t[0] = 1;
        for (int i = 1; i <= 20; ++i) t[i] = t[i - 1] * (std::uint64_t)i;
        return t;
    }();
    return table[n];
}

std::uint64_t lex_rank(std::span<const std::uint8_t> perm) {
    int n = (int)perm.size();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank += (std::uint64_t)smaller * factorial(n - 1 - i);
    }
    return rank;
}

State lex_unrank(int n, std::uint64_t rank) {
    State x;
    x.perm.resize(n);
    std::vector<std::uint8_t> avail(n);
    std::iota(avail.begin(), avail.end(), 0);
    for (int i = 0; i < n; ++i) {
        std::uint64_t f = factorial(n - 1 - i);
        int k = (int)(rank / f);
        rank %= f;
        x.perm[i] = avail[k];
        avail.erase(avail.begin() + k);
    }
    return x;
}

}  // namespace gridhom
