#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Requested photon counts per path; paths not listed count as zero.
struct DetectionPattern {
    std::map<PathId, int> counts;

    int total() const;
    int count(const PathId& p) const;

    static DetectionPattern one_per(const std::vector<PathId>& paths);
};

/// Canonical mode assignment: per path (in graph path order), the sorted
/// multiset of labels the pattern photons carry.
using Assignment = std::vector<std::pair<PathId, std::vector<ModeLabel>>>;

std::string assignment_str(const Assignment& a);

/// One perfect matching restricted to a detection pattern.
struct MatchingTerm {
    std::vector<Edge> edges;
    Complex weight;  // exact product of edge weights
    Assignment assignment;
};

/// Superposition of matchings, grouped by assignment.
struct PostSelectedState {
    std::vector<std::pair<Assignment, Complex>> terms;  // canonical order
    bool normalized = false;

    std::optional<Complex> amplitude(const Assignment& a) const;
    double norm_squared() const;
};

/// Emits every edge subset in which each path appears as an endpoint exactly
/// pattern.count(path) times (same-path edges counting twice), each exactly
/// once, in canonical order.
std::vector<MatchingTerm> enumerate_matchings(const ExperimentGraph& g, const DetectionPattern& pattern);

/// Complex sum of all matching weights for the pattern.
Complex matching_sum(const ExperimentGraph& g, const DetectionPattern& pattern);

PostSelectedState post_selected_state(const ExperimentGraph& g, const DetectionPattern& pattern,
                                      bool normalize = false, double cancel_threshold = 1e-12);

/// Report of the GHZ-family check: whether the state is exactly a
/// d-dimensional n-party GHZ state, plus any surplus (Maverick) terms.
struct MaverickReport {
    bool is_ghz = false;
    std::vector<Assignment> ghz_terms;
    std::vector<Assignment> surplus_terms;
};

MaverickReport detect_maverick(const PostSelectedState& state, int dimension, int parties,
                               double amp_tolerance = 1e-9);

}  // namespace qgraph
