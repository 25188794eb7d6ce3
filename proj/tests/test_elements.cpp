#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgraph/elements.hpp"
#include "qgraph/matchings.hpp"

using namespace qgraph;
using std::numbers::pi;

namespace {

const Complex kI{0.0, 1.0};

ExperimentGraph two_paths() { return add_path(add_path(ExperimentGraph{}, "a"), "b"); }

ExperimentGraph single_edge(ModeLabel la, ModeLabel lb, Complex w = {1.0, 0.0}) {
    return add_crystal(two_paths(), "a", la, "b", lb, w);
}

Complex amp_of(const ExperimentGraph& g, const DetectionPattern& p) {
    return matching_sum(g, p);
}

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("phase shifter") {
    auto g = single_edge(ModeLabel::h(), ModeLabel::h(), {0.5, 0.0});

    SUBCASE("zero phase is the identity") {
        auto h = apply_phase_shifter(g, "a", 0.0);
        CHECK(close(h.edges[0].weight, g.edges[0].weight));
    }

    SUBCASE("two quarter turns equal a half turn") {
        auto h1 = apply_phase_shifter(apply_phase_shifter(g, "a", pi / 2), "a", pi / 2);
        auto h2 = apply_phase_shifter(g, "a", pi);
        CHECK(close(h1.edges[0].weight, h2.edges[0].weight));
        CHECK(close(h1.edges[0].weight, Complex{-0.5, 0.0}));
    }

    SUBCASE("unknown path rejected") { CHECK_THROWS(apply_phase_shifter(g, "z", 1.0)); }
}

TEST_CASE("interference of two pair sources cancels at pi") {
    // four crystals (a,b),(a,c),(c,d),(b,d); shifter on a between the first two
    const double g0 = 0.1;
    for (double phi : {0.0, 1.1, pi}) {
        ExperimentGraph g;
        for (const char* p : {"a", "b", "c", "d"}) g = add_path(g, p);
        g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {g0, 0.0});
        g = apply_phase_shifter(g, "a", phi);
        g = add_crystal(g, "a", ModeLabel::h(), "c", ModeLabel::h(), {g0, 0.0});
        g = add_crystal(g, "c", ModeLabel::h(), "d", ModeLabel::h(), {g0, 0.0});
        g = add_crystal(g, "b", ModeLabel::h(), "d", ModeLabel::h(), {g0, 0.0});
        const Complex expect = g0 * g0 * (1.0 + std::polar(1.0, phi));
        CHECK(close(amp_of(g, DetectionPattern::one_per(g.paths)), expect));
    }
}

TEST_CASE("beam splitter") {
    SUBCASE("edge incident to one input splits in two") {
        ExperimentGraph g;
        for (const char* p : {"a", "b", "c"}) g = add_path(g, p);
        g = add_crystal(g, "a", ModeLabel::h(), "b", ModeLabel::h(), {1.0, 0.0});
        auto h = apply_beam_splitter(g, "b", "c");
        REQUIRE(h.edges.size() == 2);
        auto canon = h.canonical_edges();
        // transmitted to c with 1/sqrt(2), reflected stays on b with i/sqrt(2)
        const double s = 1.0 / std::sqrt(2.0);
        for (const auto& e : canon) {
            if (e.v.path.name == "c")
                CHECK(close(e.weight, Complex{s, 0.0}));
            else
                CHECK(close(e.weight, kI * s));
        }
    }

    SUBCASE("HOM: cross terms cancel, photons bunch") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::h());
        auto h = merged_edges(apply_beam_splitter(g, "a", "b"));
        REQUIRE(h.edges.size() == 2);
        for (const auto& e : h.edges) {
            CHECK(e.u.path == e.v.path);  // both endpoints in one path
            CHECK(close(e.weight, kI * 0.5));
        }
    }

    SUBCASE("distinguishable labels survive on all four outputs") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::v());
        auto h = merged_edges(apply_beam_splitter(g, "a", "b"));
        CHECK(h.edges.size() == 4);
    }

    SUBCASE("edgeless graph unchanged") {
        auto h = apply_beam_splitter(two_paths(), "a", "b");
        CHECK(h.edges.empty());
    }

    SUBCASE("two-photon probability is conserved") {
        // raw matching weights carry no bosonic factors, so a state with n
        // identical photons in one mode needs the extra n! in |amplitude|^2
        auto physical_norm = [](const PostSelectedState& s) {
            double total = 0.0;
            for (const auto& [assignment, amp] : s.terms) {
                double boson = 1.0;
                for (const auto& [path, labels] : assignment) {
                    int run = 1;
                    for (std::size_t i = 1; i <= labels.size(); ++i) {
                        if (i < labels.size() && labels[i] == labels[i - 1]) {
                            boson *= ++run;
                        } else {
                            run = 1;
                        }
                    }
                }
                total += std::norm(amp) * boson;
            }
            return total;
        };
        auto g = single_edge(ModeLabel::h(), ModeLabel::h(), {0.3, 0.4});
        auto h = apply_beam_splitter(g, "a", "b");
        double before = 0.0, after = 0.0;
        for (int na = 0; na <= 2; ++na) {
            DetectionPattern p;
            if (na > 0) p.counts["a"] = na;
            if (2 - na > 0) p.counts["b"] = 2 - na;
            before += physical_norm(post_selected_state(g, p));
            after += physical_norm(post_selected_state(h, p));
        }
        CHECK(before == doctest::Approx(after).epsilon(1e-12));
    }

    SUBCASE("OAM flip negates labels on reflection") {
        auto g = add_crystal(two_paths(), "a", ModeLabel::number(1), "b", ModeLabel::number(-1),
                             {1.0, 0.0});
        auto h = apply_beam_splitter(g, "a", "b", true);
        // the reflected-reflected descendant carries negated labels
        bool found_rr = false;
        for (const auto& e : h.edges) {
            if (e.u.path == e.v.path) continue;
            if (e.u.label == ModeLabel::number(-1) && e.v.label == ModeLabel::number(1) &&
                close(e.weight, Complex{-0.5, 0.0}))
                found_rr = true;
        }
        CHECK(found_rr);
    }
}

TEST_CASE("polarizing beam splitter") {
    SUBCASE("|H,H> passes through, weight unchanged") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::h(), {0.7, 0.1});
        auto h = apply_pbs(g, "a", "b");
        REQUIRE(h.edges.size() == 1);
        CHECK(h.edges[0].u.path != h.edges[0].v.path);
        CHECK(close(h.edges[0].weight, Complex{0.7, 0.1}));
    }

    SUBCASE("|H,V> bunches into one path with weight i") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::v());
        auto h = apply_pbs(g, "a", "b");
        REQUIRE(h.edges.size() == 1);
        CHECK(h.edges[0].u.path.name == "b");
        CHECK(h.edges[0].v.path.name == "b");
        CHECK(close(h.edges[0].weight, kI));
    }

    SUBCASE("|V,V> stays with weight -1") {
        auto g = single_edge(ModeLabel::v(), ModeLabel::v());
        auto h = apply_pbs(g, "a", "b");
        REQUIRE(h.edges.size() == 1);
        CHECK(close(h.edges[0].weight, Complex{-1.0, 0.0}));
    }

    SUBCASE("applying twice restores paths, V endpoints pick up -1") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::v(), {0.2, 0.0});
        auto h = apply_pbs(apply_pbs(g, "a", "b"), "a", "b");
        REQUIRE(h.edges.size() == 1);
        CHECK(h.edges[0].u.path.name == "a");
        CHECK(h.edges[0].v.path.name == "b");
        CHECK(close(h.edges[0].weight, Complex{-0.2, 0.0}));
    }

    SUBCASE("non-polarization label rejected") {
        auto g = single_edge(ModeLabel::number(1), ModeLabel::h());
        CHECK_THROWS(apply_pbs(g, "a", "b"));
    }
}

TEST_CASE("mode shifter") {
    SUBCASE("half-wave plate swaps H and V") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::v());
        std::map<ModeLabel, ModeLabel> swap{{ModeLabel::h(), ModeLabel::v()},
                                            {ModeLabel::v(), ModeLabel::h()}};
        auto h = apply_mode_shifter(g, "a", swap);
        CHECK(h.edges[0].u.label == ModeLabel::v());
        CHECK(h.edges[0].v.label == ModeLabel::v());  // path b untouched
    }

    SUBCASE("identity map leaves the graph unchanged") {
        auto g = single_edge(ModeLabel::h(), ModeLabel::h(), {0.4, 0.0});
        std::map<ModeLabel, ModeLabel> id{{ModeLabel::h(), ModeLabel::h()}};
        auto h = apply_mode_shifter(g, "a", id);
        CHECK(close(h.edges[0].weight, g.edges[0].weight));
        CHECK(h.edges[0].u.label == ModeLabel::h());
    }

    SUBCASE("label missing from the map is an error") {
        auto g = single_edge(ModeLabel::v(), ModeLabel::h());
        std::map<ModeLabel, ModeLabel> id{{ModeLabel::h(), ModeLabel::h()}};
        CHECK_THROWS(apply_mode_shifter(g, "a", id));
    }
}

TEST_CASE("spiral phase plate with reflection: l -> -l+2, weight i") {
    auto g = add_crystal(two_paths(), "a", ModeLabel::number(1), "b", ModeLabel::number(-1),
                         {1.0, 0.0});
    auto h = apply_spp_reflection(g, "a");
    REQUIRE(h.edges.size() == 1);
    auto e = h.edges[0];
    const auto on_a = e.u.path.name == "a" ? e.u : e.v;
    const auto on_b = e.u.path.name == "a" ? e.v : e.u;
    CHECK(on_a.label == ModeLabel::number(1));  // -1+2
    CHECK(on_b.label == ModeLabel::number(-1));
    CHECK(close(e.weight, kI));
}

TEST_CASE("OAM parity sorter") {
    ExperimentGraph g;
    for (const char* p : {"a", "b", "c"}) g = add_path(g, p);
    g = add_crystal(g, "a", ModeLabel::number(5), "c", ModeLabel::number(0), {1.0, 0.0});
    g = add_crystal(g, "a", ModeLabel::number(5), "c", ModeLabel::number(1), {1.0, 0.0});
    g = add_crystal(g, "a", ModeLabel::number(5), "b", ModeLabel::number(-1), {1.0, 0.0});
    auto h = apply_oam_sorter(g, "b", "c");
    REQUIRE(h.edges.size() == 3);
    for (const auto& e : h.edges) {
        const auto& end = e.u.path.name == "a" ? e.v : e.u;
        if (close(e.weight, kI)) {
            CHECK(end.path.name == "c");  // even 0 stayed, negated
            CHECK(end.label == ModeLabel::number(0));
        } else {
            CHECK(close(e.weight, Complex{1.0, 0.0}));
            // odd labels crossed over unchanged
            CHECK((end.path.name == "b" ? end.label == ModeLabel::number(1)
                                        : end.label == ModeLabel::number(-1)));
        }
    }
    CHECK_THROWS(apply_oam_sorter(single_edge(ModeLabel::h(), ModeLabel::h()), "a", "b"));
}

TEST_CASE("projection") {
    ExperimentGraph g;
    for (const char* p : {"a", "b"}) g = add_path(g, p);
    g = add_crystal(g, "a", ModeLabel::number(0), "b", ModeLabel::number(0), {0.5, 0.0});
    g = add_crystal(g, "a", ModeLabel::number(2), "b", ModeLabel::number(1), {0.5, 0.0});

    SUBCASE("non-accepted labels are deleted, survivors become T") {
        auto h = apply_projection(g, "a", {ModeLabel::number(0)});
        REQUIRE(h.edges.size() == 1);
        const auto& e = h.edges[0];
        const auto& on_a = e.u.path.name == "a" ? e.u : e.v;
        CHECK(on_a.label == ModeLabel::trigger());
        CHECK(close(e.weight, Complex{0.5, 0.0}));
    }

    SUBCASE("accepting everything only relabels") {
        auto h = apply_projection(g, "a", {ModeLabel::number(0), ModeLabel::number(2)});
        CHECK(h.edges.size() == 2);
    }

    SUBCASE("empty acceptance isolates the path") {
        auto h = apply_projection(g, "a", {});
        CHECK(h.edges.empty());
        CHECK(enumerate_matchings(h, DetectionPattern::one_per(h.paths)).empty());
    }
}

TEST_CASE("element ops are linear over parallel edges") {
    auto g1 = single_edge(ModeLabel::h(), ModeLabel::h(), {0.3, 0.0});
    auto g2 = single_edge(ModeLabel::h(), ModeLabel::v(), {0.0, 0.4});
    auto both = g1;
    both.edges.push_back(g2.edges[0]);

    for (const ElementOp& op :
         {ElementOp{BeamSplitter{"a", "b"}}, ElementOp{PhaseShifter{"a", 0.7}},
          ElementOp{PolarizingBS{"a", "b"}}}) {
        auto h_both = apply_element(both, op);
        auto h1 = apply_element(g1, op);
        auto h2 = apply_element(g2, op);
        std::vector<Edge> combined = h1.edges;
        combined.insert(combined.end(), h2.edges.begin(), h2.edges.end());
        std::sort(combined.begin(), combined.end(), edge_canonical_less);
        auto actual = h_both.canonical_edges();
        REQUIRE(actual.size() == combined.size());
        for (std::size_t i = 0; i < actual.size(); ++i) {
            CHECK(actual[i].u == combined[i].u);
            CHECK(actual[i].v == combined[i].v);
            CHECK(close(actual[i].weight, combined[i].weight));
        }
    }
}

TEST_CASE("elements never change endpoint arity") {
    auto g = single_edge(ModeLabel::h(), ModeLabel::h());
    for (const ElementOp& op : {ElementOp{BeamSplitter{"a", "b"}}, ElementOp{PolarizingBS{"a", "b"}},
                                ElementOp{PhaseShifter{"b", 1.0}}}) {
        for (const auto& e : apply_element(g, op).edges) {
            CHECK(e.u.path.name.size() > 0);
            CHECK(e.v.path.name.size() > 0);
        }
    }
}
