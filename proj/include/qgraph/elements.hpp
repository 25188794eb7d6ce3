#pragma once

#include <map>
#include <set>
#include <variant>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Magnitudes below this are pruned after each rewrite.
inline constexpr double kPruneThreshold = 1e-12;

struct PhaseShifter {
    PathId path;
    double phi = 0.0;  // radians
};

/// 50:50 beam splitter: transmission 1/sqrt(2), reflection i/sqrt(2).
/// With oam_flip set, reflection also negates integer mode labels (mirror
/// action on orbital angular momentum, as in the multiport setups).
struct BeamSplitter {
    PathId path_v;
    PathId path_w;
    bool oam_flip = false;
};

struct PolarizingBS {
    PathId path_v;
    PathId path_w;
};

struct ModeShifter {
    PathId path;
    std::map<ModeLabel, ModeLabel> label_map;
    Complex factor{1.0, 0.0};  // per relabeled endpoint (SPP/reflection case)
};

/// Mirror reflection plus spiral phase plate: l -> -l + 2, weight * i.
struct SPPReflection {
    PathId path;
};

/// OAM parity sorter: even labels reflect (l -> -l, weight * i), odd labels
/// transmit to the partner path unchanged.
struct OAMSorter {
    PathId path_v;
    PathId path_w;
};

/// Coherent mode projection: drops edges whose endpoint on the path carries a
/// label outside the accepted set, relabels survivors to T.
struct Projection {
    PathId path;
    std::set<ModeLabel> accepted;
};

using ElementOp =
    std::variant<PhaseShifter, BeamSplitter, PolarizingBS, ModeShifter, SPPReflection, OAMSorter, Projection>;

ExperimentGraph apply_phase_shifter(const ExperimentGraph& g, const PathId& path, double phi);
ExperimentGraph apply_beam_splitter(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w,
                                    bool oam_flip = false);
ExperimentGraph apply_pbs(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w);
ExperimentGraph apply_mode_shifter(const ExperimentGraph& g, const PathId& path,
                                   const std::map<ModeLabel, ModeLabel>& label_map,
                                   Complex factor = {1.0, 0.0});
ExperimentGraph apply_spp_reflection(const ExperimentGraph& g, const PathId& path);
ExperimentGraph apply_oam_sorter(const ExperimentGraph& g, const PathId& path_v, const PathId& path_w);
ExperimentGraph apply_projection(const ExperimentGraph& g, const PathId& path,
                                 const std::set<ModeLabel>& accepted);

ExperimentGraph apply_element(const ExperimentGraph& g, const ElementOp& op);

}  // namespace qgraph
