#include "qgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qgraph {

std::string ModeLabel::str() const {
    switch (kind) {
        case Kind::Polarization:
            return value == 0 ? "H" : "V";
        case Kind::Trigger:
            return "T";
        case Kind::Number:
            break;
    }
    return std::to_string(value);
}

ModeLabel ModeLabel::parse(const std::string& token) {
    if (token == "H") return h();
    if (token == "V") return v();
    if (token == "T") return trigger();
    size_t pos = 0;
    int val = std::stoi(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("bad mode label: " + token);
    return number(val);
}

std::string Vertex::str() const {
    std::string s = path.name + ":" + label.str();
    if (instance != 0) s += "#" + std::to_string(instance);
    return s;
}

Edge::Edge(Vertex a, Vertex b, Complex w, std::string t) : weight(w), tag(std::move(t)) {
    // A same-path edge with identical labels duplicates the vertex; the
    // second endpoint gets instance index 1.
    if (a.path == b.path && a.label == b.label && a.instance == b.instance) b.instance = a.instance + 1;
    if (b < a) std::swap(a, b);
    u = std::move(a);
    v = std::move(b);
}

std::string Edge::str() const {
    std::ostringstream os;
    os << "(" << u.str() << "," << v.str() << ") w=" << weight.real() << (weight.imag() < 0 ? "-" : "+")
       << std::abs(weight.imag()) << "i";
    return os.str();
}

bool edge_canonical_less(const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.tag) < std::tie(b.u, b.v, b.tag);
}

bool ExperimentGraph::has_path(const PathId& p) const { return path_index(p) >= 0; }

int ExperimentGraph::path_index(const PathId& p) const {
    for (size_t i = 0; i < paths.size(); ++i)
        if (paths[i] == p) return static_cast<int>(i);
    return -1;
}

std::vector<Edge> ExperimentGraph::canonical_edges() const {
    std::vector<Edge> out = edges;
    std::sort(out.begin(), out.end(), edge_canonical_less);
    return out;
}

ExperimentGraph add_path(const ExperimentGraph& g, const PathId& p) {
    if (g.has_path(p)) throw std::invalid_argument("duplicate path id: " + p.name);
    ExperimentGraph out = g;
    out.paths.push_back(p);
    return out;
}

ExperimentGraph add_crystal(const ExperimentGraph& g, const PathId& path1, ModeLabel label1,
                            const PathId& path2, ModeLabel label2, Complex amp, std::string tag) {
    if (!g.has_path(path1)) throw std::invalid_argument("unknown path: " + path1.name);
    if (!g.has_path(path2)) throw std::invalid_argument("unknown path: " + path2.name);
    ExperimentGraph out = g;
    out.edges.emplace_back(Vertex{path1, label1}, Vertex{path2, label2}, amp, std::move(tag));
    return out;
}

Eigen::MatrixXcd adjacency_matrix(const ExperimentGraph& g, const std::vector<PathId>& ordering) {
    std::set<PathId> seen;
    for (const auto& p : ordering) {
        if (!g.has_path(p)) throw std::invalid_argument("unknown path in ordering: " + p.name);
        if (!seen.insert(p).second) throw std::invalid_argument("duplicate path in ordering: " + p.name);
    }
    auto pos = [&](const PathId& p) -> int {
        for (size_t i = 0; i < ordering.size(); ++i)
            if (ordering[i] == p) return static_cast<int>(i);
        return -1;
    };

    // Crystal-network regime: each listed path must carry a single label
    // among edges between listed paths.
    std::vector<std::set<ModeLabel>> labels(ordering.size());
    const int n = static_cast<int>(ordering.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : g.edges) {
        int i = pos(e.u.path);
        int j = pos(e.v.path);
        if (i < 0 || j < 0) continue;
        labels[i].insert(e.u.label);
        labels[j].insert(e.v.label);
        m(i, j) += e.weight;
        if (i != j) m(j, i) += e.weight;
    }
    for (int i = 0; i < n; ++i)
        if (labels[i].size() > 1)
            throw std::invalid_argument("multi-label vertex set on path " + ordering[i].name +
                                        "; adjacency view undefined");
    return m;
}

ExperimentGraph induced_subgraph(const ExperimentGraph& g, const std::vector<PathId>& subset) {
    ExperimentGraph out;
    std::set<PathId> keep;
    for (const auto& p : subset) {
        if (!g.has_path(p)) throw std::invalid_argument("unknown path: " + p.name);
        keep.insert(p);
    }
    for (const auto& p : g.paths)
        if (keep.count(p)) out.paths.push_back(p);
    for (const auto& e : g.edges)
        if (keep.count(e.u.path) && keep.count(e.v.path)) out.edges.push_back(e);
    return out;
}

ExperimentGraph merged_edges(const ExperimentGraph& g, double threshold) {
    std::map<std::pair<Vertex, Vertex>, Complex> acc;
    for (const auto& e : g.edges) acc[{e.u, e.v}] += e.weight;
    ExperimentGraph out;
    out.paths = g.paths;
    for (const auto& [key, w] : acc)
        if (std::abs(w) >= threshold) out.edges.emplace_back(key.first, key.second, w);
    return out;
}

}  // namespace qgraph
