#include <doctest.h>

#include <random>

#include "gridhom/combinators.hpp"
#include "gridhom/homology.hpp"
#include "testutil.hpp"

using namespace gridhom;

namespace {

// Textbook dense elimination over GF(2), independent of the library paths.
long long naive_rank(std::vector<std::vector<int>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    long long rank = 0;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t p = lead;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[lead]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != lead && m[r][c])
                for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[lead][k];
        ++lead;
        ++rank;
    }
    return rank;
}

SparseGf2Matrix to_sparse(const std::vector<std::vector<int>>& m) {
    SparseGf2Matrix s;
    s.nrows = (std::uint32_t)m.size();
    if (m.empty()) return s;
    s.cols.resize(m[0].size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            if (m[r][c]) s.cols[c].push_back((std::uint32_t)r);
    return s;
}

}  // namespace

TEST_CASE("gf2 rank basics") {
    SparseGf2Matrix zero;
    zero.nrows = 5;
    zero.cols.assign(4, {});
    CHECK(gf2_rank(zero) == 0);

    SparseGf2Matrix id;
    id.nrows = 6;
    for (std::uint32_t i = 0; i < 6; ++i) id.cols.push_back({i});
    CHECK(gf2_rank(id) == 6);
}

TEST_CASE("gf2 rank agrees with dense textbook elimination") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<std::vector<int>> m(20, std::vector<int>(20, 0));
        for (auto& row : m)
            for (auto& v : row) v = (int)(rng() % 2);
        CHECK(gf2_rank(to_sparse(m)) == naive_rank(m));
    }
}

TEST_CASE("sparse and dense elimination paths agree") {
    // Padding with empty rows pushes the same matrix over the dense-path
    // threshold without changing its rank.
    std::mt19937_64 rng(123);
    std::vector<std::vector<int>> m(60, std::vector<int>(60, 0));
    for (auto& row : m)
        for (auto& v : row) v = rng() % 4 == 0;
    auto small = to_sparse(m);
    auto padded = small;
    padded.nrows = 5000;
    padded.cols.resize(5000);
    CHECK(gf2_rank(small) == gf2_rank(padded));
}

TEST_CASE("homology of tiny complexes") {
    CHECK(tilde_homology(testutil::load("diagrams/star_1x1.grid")).total_dim() == 1);
    CHECK(homology(cn_complex(build_cn_fixture(2))).is_zero());
    CHECK(homology(cn_complex(build_cn_fixture(3))).is_zero());
    CHECK(homology(cn_complex(build_cn_fixture(4))).is_zero());
}

TEST_CASE("homology rejects a non-complex") {
    BigradedComplex c;
    c.grid_n = 1;
    Stratum bottom;
    bottom.maslov = 0;
    bottom.gens = {0};
    Stratum mid;
    mid.maslov = 1;
    mid.gens = {1};
    mid.col_ptr = {0, 1};
    mid.rows = {0};
    Stratum top;
    top.maslov = 2;
    top.gens = {2};
    top.col_ptr = {0, 1};
    top.rows = {0};
    c.strata = {bottom, mid, top};
    c.strata[1].below = 0;
    c.strata[2].below = 1;
    CHECK_FALSE(c.d_squared_zero());
    CHECK_THROWS_AS(homology(c), NotAComplex);
}

TEST_CASE("deconvolution divides out W factors") {
    PoincarePolynomial w1;
    w1.add(0, 0, 1);
    w1.add(-1, -2, 1);
    std::vector<long long> ws{1};
    auto one = hat_from_tilde(w1, ws);
    CHECK(one.total_dim() == 1);
    CHECK(one.dim(0, 0) == 1);

    // a single class is not divisible
    PoincarePolynomial single;
    single.add(0, 0, 1);
    CHECK_THROWS_AS(hat_from_tilde(single, ws), DeconvolutionError);

    // tensor then divide is the identity on random polynomials
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        PoincarePolynomial p;
        for (int k = 0; k < 6; ++k)
            p.add((int)(rng() % 7) - 3, 2 * ((long long)(rng() % 7) - 3), 1 + rng() % 3);
        std::vector<long long> weights;
        PoincarePolynomial t = p;
        for (int j = 0; j < 3; ++j) {
            long long w = (long long)(rng() % 5) - 2;
            weights.push_back(w);
            t = tensor_w(t, w);
        }
        CHECK(hat_from_tilde(t, weights) == p);
    }
}

TEST_CASE("tensor with W(0) doubles with a Maslov echo") {
    PoincarePolynomial p;
    p.add(2, 4, 1);
    p.add(0, 0, 2);
    auto q = tensor_w(p, 0);
    CHECK(q.dim(2, 4) == 1);
    CHECK(q.dim(1, 4) == 1);
    CHECK(q.dim(0, 0) == 2);
    CHECK(q.dim(-1, 0) == 2);
    CHECK(q.total_dim() == 2 * p.total_dim());
}

TEST_CASE("shift composes to the identity") {
    PoincarePolynomial p;
    p.add(1, 2, 3);
    p.add(-2, 0, 1);
    CHECK(shift(shift(p, 2, -4), -2, 4) == p);
    CHECK(normalize_ashift(normalize_ashift(p)) == normalize_ashift(p));
    PoincarePolynomial zero;
    CHECK(normalize_ashift(zero).is_zero());
}

TEST_CASE("tilde dimension is 2^plainO times hat dimension") {
    for (const auto& f : testutil::shipped_diagrams()) {
        auto wd = testutil::load(f);
        if (wd.diagram.n() > 6) continue;
        auto tilde = tilde_homology(wd);
        auto hat = hat_from_tilde(tilde, wd.plain_o_weights());
        INFO(f);
        CHECK(tilde.total_dim() == (1LL << wd.diagram.plain_o_count()) * hat.total_dim());
    }
}

TEST_CASE("euler characteristic agrees on chain and homology level") {
    for (const auto& wd : testutil::random_corpus(77, 8, 5)) {
        auto cx = tilde_complex(wd);
        CHECK(euler_characteristic_chain(cx) == euler_characteristic(homology(cx)));
    }
}

TEST_CASE("chain-level euler characteristic recovers the trefoil polynomial") {
    // Divide the alternating state-count sum by (1 - q^-2) per plain O; no
    // homology involved. The result must be the doubled-exponent knot
    // polynomial q^2 - 1 + q^-2 up to a unit.
    auto wd = testutil::load("diagrams/trefoil_5x5.grid");
    LaurentQ chi = euler_characteristic_chain(tilde_complex(wd));
    int plain = wd.diagram.plain_o_count();
    for (int i = 0; i < plain; ++i) {
        // divide by (1 - q^-2): top-exponent first
        LaurentQ q;
        while (!chi.empty()) {
            auto top = std::prev(chi.end());
            long long e = top->first, c = top->second;
            q[e] += c;
            chi[e] -= c;
            chi[e - 2] += c;
            if (chi[e] == 0) chi.erase(e);
            if (chi[e - 2] == 0) chi.erase(e - 2);
        }
        chi = q;
    }
    REQUIRE(chi.size() == 3);
    long long top = std::prev(chi.end())->first;
    long long sign = std::prev(chi.end())->second;
    LaurentQ expect{{top, sign}, {top - 2, -sign}, {top - 4, sign}};
    CHECK(chi == expect);
    CHECK(sign * sign == 1);
}

TEST_CASE("oracle agrees with the main pipeline") {
    for (const auto& f : testutil::shipped_diagrams()) {
        auto wd = testutil::load(f);
        if (wd.diagram.n() > 5) continue;
        INFO(f);
        CHECK(oracle_homology(wd) == tilde_homology(wd));
    }
    CHECK(oracle_cn_homology(build_cn_fixture(2)).is_zero());
    CHECK(oracle_cn_homology(build_cn_fixture(4)).is_zero());
    auto big = testutil::load("diagrams/handcuff_g3.grid");
    CHECK(oracle_homology(big) == tilde_homology(big));  // n=6 still within oracle reach
    auto too_big = disjoint_union(testutil::load("diagrams/trefoil_5x5.grid"),
                                  testutil::load("diagrams/sink_loop_3x3.grid"));
    CHECK_THROWS_AS(oracle_homology(too_big), TooLarge);
}

TEST_CASE("vanishing for sinks, sources and cut edges") {
    for (const auto& f : {"diagrams/source_sink_2x2.grid", "diagrams/two_edge_source_sink_3x3.grid",
                          "diagrams/sink_loop_3x3.grid", "diagrams/handcuff_g1.grid"}) {
        INFO(f);
        CHECK(hat_homology(testutil::load(f)).is_zero());
    }
}

TEST_CASE("poincare json lists the classes") {
    auto p = hat_homology(testutil::load("diagrams/unknot_good_br.grid"));
    auto j = poincare_to_json(p);
    CHECK(j.find("maslov") != std::string::npos);
    CHECK(j.find("alex2") != std::string::npos);
    CHECK(j.find("dim") != std::string::npos);
}
