#include "qgraph/elements.hpp"

#include <cmath>

namespace qgraph {
namespace {

const Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ExperimentGraph pruned(ExperimentGraph g) {
    std::erase_if(g.edges, [](const Edge& e) { return std::abs(e.weight) < kPruneThreshold; });
    return g;
}

void require_path(const ExperimentGraph& g, const PathId& p) {
    if (!g.has_path(p)) throw std::invalid_argument("unknown path: " + p.name);
}

struct Branch {
    Vertex endpoint;
    Complex amp;
};

/// Rewrites every edge by taking the product of per-endpoint branches.
template <typename BranchFn>
ExperimentGraph map_endpoints(const ExperimentGraph& g, BranchFn&& branches_of) {
    ExperimentGraph out;
    out.paths = g.paths;
    for (const auto& e : g.edges) {
        for (const Branch& bu : branches_of(e.u)) {
            for (const Branch& bv : branches_of(e.v)) {
                out.edges.emplace_back(bu.endpoint, bv.endpoint, e.weight * bu.amp * bv.amp, e.tag);
            }
        }
    }
    return pruned(std::move(out));
}

}  // namespace

ExperimentGraph apply_phase_shifter(const ExperimentGraph& g, const PathId& path, double phi) {
    require_path(g, path);
    const Complex f = std::exp(kI * phi);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path == path) return {{v, f}};
        return {{v, 1.0}};
    });
}

ExperimentGraph apply_beam_splitter(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w,
                                    bool oam_flip) {
    require_path(g, path_v);
    require_path(g, path_w);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path != path_v && v.path != path_w) return {{v, 1.0}};
        const PathId& other = (v.path == path_v) ? path_w : path_v;
        Vertex transmitted = v;
        transmitted.path = other;
        Vertex reflected = v;
        if (oam_flip && v.label.is_number()) reflected.label = ModeLabel::number(-v.label.value);
        return {{transmitted, kInvSqrt2}, {reflected, kI * kInvSqrt2}};
    });
}

ExperimentGraph apply_pbs(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w) {
    require_path(g, path_v);
    require_path(g, path_w);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path != path_v && v.path != path_w) return {{v, 1.0}};
        if (!v.label.is_polarization())
            throw std::invalid_argument("non-polarization label on PBS input path " + v.path.name);
        if (v.label == ModeLabel::h()) {
            Vertex moved = v;
            moved.path = (v.path == path_v) ? path_w : path_v;
            return {{moved, 1.0}};
        }
        return {{v, kI}};
    });
}

ExperimentGraph apply_mode_shifter(const ExperimentGraph& g, const PathId& path,
                                   const std::map<ModeLabel, ModeLabel>& label_map, Complex factor) {
    require_path(g, path);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path != path) return {{v, 1.0}};
        auto it = label_map.find(v.label);
        if (it == label_map.end())
            throw std::invalid_argument("label " + v.label.str() + " not in mode-shifter map on path " + path.name);
        Vertex mapped = v;
        mapped.label = it->second;
        return {{mapped, factor}};
    });
}

ExperimentGraph apply_spp_reflection(const ExperimentGraph& g, const PathId& path) {
    require_path(g, path);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path != path) return {{v, 1.0}};
        if (!v.label.is_number())
            throw std::invalid_argument("non-integer label on SPP path " + path.name);
        Vertex mapped = v;
        mapped.label = ModeLabel::number(-v.label.value + 2);
        return {{mapped, kI}};
    });
}

ExperimentGraph apply_oam_sorter(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w) {
    require_path(g, path_v);
    require_path(g, path_w);
    return map_endpoints(g, [&](const Vertex& v) -> std::vector<Branch> {
        if (v.path != path_v && v.path != path_w) return {{v, 1.0}};
        if (!v.label.is_number())
            throw std::invalid_argument("non-integer label on sorter input path " + v.path.name);
        const int l = v.label.value;
        Vertex mapped = v;
        if (l % 2 == 0) {
            mapped.label = ModeLabel::number(-l);
            return {{mapped, kI}};
        }
        mapped.path = (v.path == path_v) ? path_w : path_v;
        return {{mapped, 1.0}};
    });
}

ExperimentGraph apply_projection(const ExperimentGraph& g, const PathId& path,
                                 const std::set<ModeLabel>& accepted) {
    require_path(g, path);
    ExperimentGraph out;
    out.paths = g.paths;
    for (const auto& e : g.edges) {
        bool keep = true;
        Vertex u = e.u, v = e.v;
        for (Vertex* ep : {&u, &v}) {
            if (ep->path != path) continue;
            if (!accepted.count(ep->label)) {
                keep = false;
                break;
            }
            ep->label = ModeLabel::trigger();
        }
        if (keep) out.edges.emplace_back(u, v, e.weight, e.tag);
    }
    return pruned(std::move(out));
}

ExperimentGraph apply_element(const ExperimentGraph& g, const ElementOp& op) {
    return std::visit(
        [&](const auto& e) -> ExperimentGraph {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, PhaseShifter>) return apply_phase_shifter(g, e.path, e.phi);
            if constexpr (std::is_same_v<T, BeamSplitter>)
                return apply_beam_splitter(g, e.path_v, e.path_w, e.oam_flip);
            if constexpr (std::is_same_v<T, PolarizingBS>) return apply_pbs(g, e.path_v, e.path_w);
            if constexpr (std::is_same_v<T, ModeShifter>)
                return apply_mode_shifter(g, e.path, e.label_map, e.factor);
            if constexpr (std::is_same_v<T, SPPReflection>) return apply_spp_reflection(g, e.path);
            if constexpr (std::is_same_v<T, OAMSorter>) return apply_oam_sorter(g, e.path_v, e.path_w);
            if constexpr (std::is_same_v<T, Projection>) return apply_projection(g, e.path, e.accepted);
        },
        op);
}

}  // namespace qgraph
