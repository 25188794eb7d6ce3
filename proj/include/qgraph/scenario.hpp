#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qgraph/elements.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/matchings.hpp"
#include "qgraph/spdc.hpp"

namespace qgraph {

/// One crystal line from an experiment file. `flagged` marks amplitudes taken
/// verbatim from a reference matrix instead of composed from g/phase tables.
struct CrystalLine {
    PathId path1;
    ModeLabel label1;
    PathId path2;
    ModeLabel label2;
    Complex amp{1.0, 0.0};
    bool flagged = false;
};

/// Crystals and elements interleave in file order; a phase shifter acts on
/// the edges that exist at its position in the sequence.
using Step = std::variant<CrystalLine, ElementOp>;

enum class DetectKind {
    Counts,   // explicit per-path photon counts
    Subsets,  // all k-subsets of paths, one photon each (histogram)
    Total,    // all patterns with k photons in total
};

struct ExperimentSpec {
    std::string name;
    std::vector<PathId> paths;
    std::vector<Step> steps;
    DetectKind detect_kind = DetectKind::Counts;
    DetectionPattern pattern;
    int detect_k = 0;  // subset size or total photons
    int expansion_order = 0;  // 0 disables the Fock expansion
    std::map<PathId, double> loss;
    std::set<std::string> outputs;  // state, matchings, histogram, norm
};

/// Parses the line-oriented experiment format. Throws std::runtime_error with
/// "line N: ..." diagnostics (all collected, newline-separated).
ExperimentSpec parse_spec(const std::string& text);

/// Inverse of parse_spec up to formatting.
std::string emit_spec(const ExperimentSpec& spec);

struct RunOptions {
    std::optional<int> order;
    std::optional<double> loss;   // uniform survival probability
    std::optional<double> phase;  // overrides the first phase shifter
    std::uint64_t seed = 0;
};

struct RunReport {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> metadata;  // conventions
    int matchings_total = 0;
    int matchings_cancelled = 0;
    PostSelectedState state;
    std::vector<std::pair<std::string, double>> histogram;  // pattern, probability
    std::optional<double> fock_probability;
    std::optional<double> ledger_norm;
};

/// Graph after all rewrites, with the run options applied.
ExperimentGraph build_graph(const ExperimentSpec& spec, const RunOptions& opts = {});

/// Crystal list for the Fock expansion; valid only when every element in the
/// sequence is a phase shifter (folded into the downstream crystal phases).
std::vector<CrystalSpec> effective_crystals(const ExperimentSpec& spec, const RunOptions& opts = {});

std::vector<std::string> scenario_names();
ExperimentSpec scenario_spec(const std::string& name);

RunReport run_spec(const ExperimentSpec& spec, const RunOptions& opts = {});
RunReport run_scenario(const std::string& name, const RunOptions& opts = {});

enum class OutputFormat { Table, JsonLines, Csv };

std::string emit(const RunReport& report, OutputFormat format);

}  // namespace qgraph
