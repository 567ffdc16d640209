#include <doctest.h>

#include "gridhom/diagram.hpp"
#include "testutil.hpp"

using namespace gridhom;

TEST_CASE("parse accepts the minimal legal grids") {
    // Two plain O rows, one X each: conditions hold without any O*.
    auto d = parse_diagram("n=2\nO X\nX O\n");
    CHECK(d.n() == 2);
    CHECK(d.star_count() == 0);
    // No O* means no vertex to anchor the component: tracing must refuse it.
    CHECK_THROWS_AS(trace_edges(d), TraceError);

    auto star = parse_diagram("n=1\n*\n");
    CHECK(star.n() == 1);
    CHECK(star.star_count() == 1);
    auto sk = trace_edges(star);
    CHECK(sk.vertices.size() == 1);
    CHECK(sk.edges.empty());
}

TEST_CASE("parse rejects condition violations by name") {
    CHECK_THROWS_WITH_AS(parse_diagram("n=2\nO O\nX X\n"), doctest::Contains("condition (i)"),
                         ValidationError);
    CHECK_THROWS_AS(parse_diagram("n=2\nO Q\nX O\n"), SyntaxError);
    CHECK_THROWS_AS(parse_diagram("n=2\nO X X\nX O\n"), SyntaxError);
    CHECK_THROWS_AS(parse_diagram("nonsense"), SyntaxError);
    // Shared cells are unrepresentable in text but rejected programmatically.
    CHECK_THROWS_WITH_AS(
        GridDiagram::from_markings(2, {{0, 0, false}, {1, 1, false}}, {{0, 0}, {1, 0}}),
        doctest::Contains("condition (iii)"), ValidationError);
}

TEST_CASE("condition (ii) requires a star for rows and columns off one X") {
    // Column 0 collects two X markings; its O must be starred.
    CHECK_THROWS_WITH_AS(
        GridDiagram::from_markings(3, {{0, 1, true}, {1, 2, false}, {2, 0, false}},
                                   {{0, 0}, {0, 2}, {1, 0}, {2, 1}}),
        doctest::Contains("condition (ii)"), ValidationError);
    CHECK_NOTHROW(GridDiagram::from_markings(3, {{0, 1, true}, {1, 2, false}, {2, 0, true}},
                                             {{0, 0}, {0, 2}, {1, 0}, {2, 1}}));
}

TEST_CASE("isolated O* rows and columns are legal") {
    // an isolated vertex at (2,0) next to a one-vertex unknot
    auto d = parse_diagram("n=3\n* . .\n. * X\n. X O\n");
    CHECK(d.star_count() == 2);
    CHECK(d.xs_in_row(2).empty());
    CHECK(d.xs_in_col(0).empty());
    auto sk = trace_edges(d);
    CHECK(sk.vertices.size() == 2);
    CHECK(sk.edges.size() == 1);
}

TEST_CASE("trace finds the handcuff structure") {
    auto g2 = testutil::load("diagrams/handcuff_g2.grid");
    CHECK(g2.skeleton.vertices.size() == 2);
    CHECK(g2.skeleton.edges.size() == 3);
    int loops = 0, connectors = 0;
    for (const auto& e : g2.skeleton.edges)
        (e.from == e.to ? loops : connectors)++;
    CHECK(loops == 2);
    CHECK(connectors == 1);
}

TEST_CASE("trace of the one-vertex unknot walks four segments") {
    auto d = parse_diagram("n=2\nO X\nX *\n");
    auto sk = trace_edges(d);
    REQUIRE(sk.edges.size() == 1);
    CHECK(sk.edges[0].from == sk.edges[0].to);
    CHECK(sk.edges[0].xs.size() == 2);
    CHECK(sk.edges[0].os.size() == 1);
}

TEST_CASE("trace partitions all interior markings") {
    for (const auto& f : testutil::shipped_diagrams()) {
        auto wd = testutil::load(f);
        std::size_t interior = 0;
        for (const auto& e : wd.skeleton.edges) interior += e.xs.size() + e.os.size();
        INFO(f);
        CHECK(interior == wd.diagram.x_marks().size() + wd.diagram.plain_o_count());
        for (const auto& e : wd.skeleton.edges) CHECK(e.xs.size() == e.os.size() + 1);
    }
}

TEST_CASE("assign_weights balances and reports offenders") {
    auto g2 = parse_diagram(testutil::slurp("diagrams/handcuff_g2.grid"));
    auto wd = assign_weights(g2, {1, 0, 2});
    CHECK(wd.vertex_weight(0) == 1);
    CHECK(wd.vertex_weight(1) == 2);

    auto knot = parse_diagram("n=2\nO X\nX *\n");
    CHECK(assign_weights(knot, {1}).o_weights[0] == 1);

    auto theta = parse_diagram(testutil::slurp("diagrams/two_edge_source_sink_3x3.grid"));
    CHECK_THROWS_WITH_AS(assign_weights(theta, {1, 2}), doctest::Contains("in-sum"), BalanceError);
    CHECK_THROWS_AS(assign_weights(theta, {1}), BalanceError);  // wrong length
}

TEST_CASE("sink and source detection") {
    CHECK(testutil::load("diagrams/source_sink_2x2.grid").skeleton.has_sink_or_source());
    CHECK(testutil::load("diagrams/sink_loop_3x3.grid").skeleton.has_sink_or_source());
    CHECK_FALSE(testutil::load("diagrams/handcuff_g2.grid").skeleton.has_sink_or_source());
    // An isolated vertex has no edges on either side and does not count.
    CHECK_FALSE(testutil::load("diagrams/star_1x1.grid").skeleton.has_sink_or_source());
}

TEST_CASE("is_good checks the three corner cells") {
    CHECK(is_good(parse_diagram("n=2\nO X\nX *\n")));
    CHECK_FALSE(is_good(parse_diagram("n=1\n*\n")));
    // Reflecting the good unknot moves the corner X away.
    CHECK_FALSE(is_good(parse_diagram("n=2\nX O\n* X\n")));
}

TEST_CASE("staircase fixture layout") {
    for (int n = 2; n <= 12; ++n) {
        auto f = build_cn_fixture(n);
        CHECK(f.n == n);
        CHECK((int)f.xs.size() == 2 * n - 2);
        CHECK(f.star == Cell{n - 1, n - 1});
        std::vector<int> row_count(n, 0), col_count(n, 0);
        for (const auto& x : f.xs) {
            ++row_count[x.row];
            ++col_count[x.col];
            // nothing in the lower-left (n-1) x (n-1) block
            CHECK((x.row == n - 1 || x.col == n - 1));
        }
        for (int i = 0; i < n; ++i) {
            CHECK(row_count[i] >= 1);
            CHECK(col_count[i] >= 1);
        }
        // rightmost column fully occupied
        for (int r = 0; r < n - 1; ++r) CHECK(f.has_x(r, n - 1));
        CHECK_FALSE(f.has_x(n - 1, n - 1));
    }
    CHECK_THROWS_AS(build_cn_fixture(1), ValidationError);
}

TEST_CASE("serialize then parse is the identity on canonical text") {
    for (const auto& f : testutil::shipped_diagrams()) {
        std::string text = testutil::slurp(f);
        auto file = read_diagram(text);
        std::string out = serialize(file.diagram, file.has_weights ? &file.weights : nullptr);
        INFO(f);
        CHECK(out == text);
    }
    // and on freshly generated diagrams
    for (const auto& wd : testutil::random_corpus(11, 10, 5)) {
        std::string text = serialize(wd.diagram, &wd.edge_weights);
        auto again = read_diagram(text);
        CHECK(serialize(again.diagram, &again.weights) == text);
    }
}

TEST_CASE("single-condition mutations are rejected") {
    for (const auto& wd : testutil::random_corpus(23, 12, 5)) {
        const GridDiagram& d = wd.diagram;
        int n = d.n();
        auto os = d.o_marks();
        auto xs = d.x_marks();

        // (i): move one O sideways onto another O's column
        if (n >= 2) {
            auto os2 = os;
            os2[0].col = os[1].col;
            CHECK_THROWS_AS(GridDiagram::from_markings(n, os2, xs), ValidationError);
        }
        // (ii): strip the star from a vertex whose row or column needs it
        for (std::size_t i = 0; i < os.size(); ++i) {
            if (!os[i].star) continue;
            if (d.xs_in_row(os[i].row).size() == 1 && d.xs_in_col(os[i].col).size() == 1) continue;
            auto os2 = os;
            os2[i].star = false;
            CHECK_THROWS_AS(GridDiagram::from_markings(n, os2, xs), ValidationError);
            break;
        }
        // (iii): drop an X onto an O cell
        {
            auto xs2 = xs;
            xs2.push_back({os[0].row, os[0].col});
            CHECK_THROWS_AS(GridDiagram::from_markings(n, os, xs2), ValidationError);
        }
    }
}

TEST_CASE("diagram json mirrors the fields") {
    auto d = parse_diagram("n=2\nO X\nX *\n");
    auto j = d.to_json();
    CHECK(j.find("\"n\":2") != std::string::npos);
    CHECK(j.find("o_markings") != std::string::npos);
    CHECK(j.find("x_markings") != std::string::npos);
}
