#pragma once

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgraph {

using Complex = std::complex<double>;

/// Discrete mode label carried by a photon: an integer mode number (e.g. OAM
/// value), a polarization (H/V encoded as 0/1), or the trigger symbol T.
struct ModeLabel {
    enum class Kind { Number, Polarization, Trigger };

    Kind kind = Kind::Number;
    int value = 0;

    static ModeLabel number(int v) { return {Kind::Number, v}; }
    static ModeLabel h() { return {Kind::Polarization, 0}; }
    static ModeLabel v() { return {Kind::Polarization, 1}; }
    static ModeLabel trigger() { return {Kind::Trigger, 0}; }

    bool is_number() const { return kind == Kind::Number; }
    bool is_polarization() const { return kind == Kind::Polarization; }
    bool is_trigger() const { return kind == Kind::Trigger; }

    auto operator<=>(const ModeLabel&) const = default;

    std::string str() const;

    /// Parses "H", "V", "T" or a decimal integer.
    static ModeLabel parse(const std::string& token);
};

/// Short path identifier (a, b, c, ...). Unique within a graph.
struct PathId {
    std::string name;

    PathId() = default;
    PathId(std::string n) : name(std::move(n)) {}
    PathId(const char* n) : name(n) {}

    auto operator<=>(const PathId&) const = default;
};

/// A labeled vertex: one possible mode of a photon in one optical path.
/// The instance index distinguishes duplicated same-path vertices; it takes
/// part in identity only during matching enumeration.
struct Vertex {
    PathId path;
    ModeLabel label;
    int instance = 0;

    auto operator<=>(const Vertex&) const = default;

    std::string str() const;
};

/// A photon-pair correlation between two vertices with a complex amplitude.
/// Undirected; endpoints are kept in canonical (sorted) order.
struct Edge {
    Vertex u;
    Vertex v;
    Complex weight{1.0, 0.0};
    std::string tag;

    Edge() = default;
    Edge(Vertex a, Vertex b, Complex w, std::string t = {});

    std::string str() const;
};

bool edge_canonical_less(const Edge& a, const Edge& b);

/// Complex-weighted undirected multigraph over labeled vertex sets, one set
/// per optical path. Immutable value type: all operations return new graphs.
struct ExperimentGraph {
    std::vector<PathId> paths;
    std::vector<Edge> edges;

    bool has_path(const PathId& p) const;
    int path_index(const PathId& p) const;  // -1 if absent

    /// Edges in canonical order (for printing and test goldens).
    std::vector<Edge> canonical_edges() const;
};

ExperimentGraph add_path(const ExperimentGraph& g, const PathId& p);

ExperimentGraph add_crystal(const ExperimentGraph& g, const PathId& path1, ModeLabel label1,
                            const PathId& path2, ModeLabel label2, Complex amp,
                            std::string tag = {});

/// Adjacency view in the crystal-network regime (single-label vertex sets).
/// Entry (i,j) is the sum of all edge weights between ordering[i] and
/// ordering[j]; same-path edges land on the diagonal.
Eigen::MatrixXcd adjacency_matrix(const ExperimentGraph& g, const std::vector<PathId>& ordering);

ExperimentGraph induced_subgraph(const ExperimentGraph& g, const std::vector<PathId>& subset);

/// Combines parallel edges (identical endpoints) by complex addition and
/// drops near-zero results. Tags are not preserved across merges.
ExperimentGraph merged_edges(const ExperimentGraph& g, double threshold = 1e-12);

}  // namespace qgraph
