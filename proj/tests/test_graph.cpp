#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qgraph/graph.hpp"

using namespace qgraph;

TEST_CASE("mode label parsing and printing") {
    CHECK(ModeLabel::parse("H") == ModeLabel::h());
    CHECK(ModeLabel::parse("V") == ModeLabel::v());
    CHECK(ModeLabel::parse("T") == ModeLabel::trigger());
    CHECK(ModeLabel::parse("-3") == ModeLabel::number(-3));
    CHECK(ModeLabel::parse("17") == ModeLabel::number(17));
    CHECK_THROWS(ModeLabel::parse("Q"));
    CHECK_THROWS(ModeLabel::parse("1.5"));
    CHECK(ModeLabel::h().str() == "H");
    CHECK(ModeLabel::number(-1).str() == "-1");
    CHECK(ModeLabel::trigger() != ModeLabel::number(0));
    CHECK(ModeLabel::h() != ModeLabel::number(0));
}

TEST_CASE("path addition") {
    ExperimentGraph g;
    g = add_path(g, "a");
    CHECK(g.paths.size() == 1);
    CHECK(g.has_path("a"));
    CHECK_THROWS_AS(add_path(g, "a"), std::invalid_argument);

    g = add_path(add_path(add_path(g, "b"), "c"), "d");
    CHECK(g.paths.size() == 4);
    CHECK(g.path_index("d") == 3);
    CHECK(g.path_index("z") == -1);
}

TEST_CASE("crystal insertion") {
    ExperimentGraph g;
    g = add_path(add_path(ExperimentGraph{}, "a"), "b");
    g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {1.0, 0.0});
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].weight == Complex{1.0, 0.0});

    CHECK_THROWS_AS(add_crystal(g, "a", ModeLabel::h(), "z", ModeLabel::h(), {1.0, 0.0}),
                    std::invalid_argument);

    // the Permanent-network crystal I: polar form lands on the printed entry
    const Complex amp = std::polar(0.033, -1.2723);
    CHECK(amp.real() == doctest::Approx(0.0097).epsilon(1e-2));
    CHECK(amp.imag() == doctest::Approx(-0.0315).epsilon(1e-2));

    // zero-weight edges are kept but contribute nothing
    g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {0.0, 0.0});
    CHECK(g.edges.size() == 2);
}

TEST_CASE("edge canonicalization") {
    Vertex u{"b", ModeLabel::h(), 0};
    Vertex v{"a", ModeLabel::v(), 0};
    Edge e{u, v, {0.5, 0.0}};
    CHECK(e.u.path.name == "a");  // endpoints sorted
    CHECK(e.v.path.name == "b");

    // identical endpoints get distinct instance indices (two photons, one path)
    Edge same{{"a", ModeLabel::h(), 0}, {"a", ModeLabel::h(), 0}, {1.0, 0.0}};
    CHECK(same.u.instance != same.v.instance);
}

namespace {

ExperimentGraph random_crystal_network(std::mt19937_64& rng, int paths, int crystals) {
    ExperimentGraph g;
    for (int i = 0; i < paths; ++i) g = add_path(g, std::string(1, char('a' + i)));
    std::uniform_int_distribution<int> pick(0, paths - 1);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int k = 0; k < crystals; ++k) {
        int i = pick(rng), j = pick(rng);
        while (j == i) j = pick(rng);
        g = add_crystal(g, g.paths[i], ModeLabel::h(), g.paths[j], ModeLabel::h(),
                        {c(rng), c(rng)});
    }
    return g;
}

}  // namespace

TEST_CASE("adjacency matrix") {
    std::mt19937_64 rng(7);

    SUBCASE("no edges -> zero matrix") {
        ExperimentGraph g = add_path(add_path(ExperimentGraph{}, "a"), "b");
        auto m = adjacency_matrix(g, g.paths);
        CHECK(m.norm() == 0.0);
    }

    SUBCASE("symmetric, parallel edges combine additively") {
        auto g = random_crystal_network(rng, 5, 12);
        auto m = adjacency_matrix(g, g.paths);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) CHECK(m(i, j) == m(j, i));

        Complex total{0, 0};
        for (const auto& e : g.edges) total += e.weight;
        Complex upper{0, 0};
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i; j < m.cols(); ++j) upper += m(i, j);
        CHECK(std::abs(total - upper) < 1e-12);
    }

    SUBCASE("ordering validation") {
        auto g = random_crystal_network(rng, 3, 3);
        CHECK_THROWS_AS(adjacency_matrix(g, {"a", "z"}), std::invalid_argument);
        CHECK_THROWS_AS(adjacency_matrix(g, {"a", "a"}), std::invalid_argument);
    }

    SUBCASE("multi-label vertex set rejected") {
        ExperimentGraph g = add_path(add_path(ExperimentGraph{}, "a"), "b");
        g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {1.0, 0.0});
        g = add_crystal(g, "a", ModeLabel::v(), "b", ModeLabel::h(), {1.0, 0.0});
        CHECK_THROWS(adjacency_matrix(g, g.paths));
    }

    SUBCASE("insertion order never changes entries") {
        auto g = random_crystal_network(rng, 5, 10);
        auto m = adjacency_matrix(g, g.paths);
        for (int trial = 0; trial < 5; ++trial) {
            ExperimentGraph h;
            h.paths = g.paths;
            auto edges = g.edges;
            std::shuffle(edges.begin(), edges.end(), rng);
            h.edges = edges;
            CHECK((adjacency_matrix(h, h.paths) - m).norm() < 1e-15);
        }
    }
}

TEST_CASE("induced subgraph") {
    std::mt19937_64 rng(11);
    auto g = random_crystal_network(rng, 6, 14);

    SUBCASE("full subset is the identity") {
        auto h = induced_subgraph(g, g.paths);
        CHECK(h.edges.size() == g.edges.size());
    }

    SUBCASE("principal submatrix property") {
        std::vector<PathId> sub{"b", "d", "e"};
        auto m_sub = adjacency_matrix(induced_subgraph(g, sub), sub);
        auto m = adjacency_matrix(g, g.paths);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int gi = g.path_index(sub[std::size_t(i)]);
                int gj = g.path_index(sub[std::size_t(j)]);
                CHECK(m_sub(i, j) == m(gi, gj));
            }
    }

    SUBCASE("isolated path keeps no edges") {
        auto h = induced_subgraph(g, {"a"});
        CHECK(h.edges.empty());
    }

    SUBCASE("unknown path rejected") { CHECK_THROWS(induced_subgraph(g, {"z"})); }
}

TEST_CASE("merged edges combine parallels and drop zeros") {
    ExperimentGraph g = add_path(add_path(ExperimentGraph{}, "a"), "b");
    g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {0.5, 0.0});
    g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {-0.5, 0.0});
    g = add_crystal(g, "a", ModeLabel::v(), "b", ModeLabel::v(), {0.0, 0.25});
    auto h = merged_edges(g);
    REQUIRE(h.edges.size() == 1);
    CHECK(h.edges[0].u.label == ModeLabel::v());
}
