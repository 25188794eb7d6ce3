#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/matchings.hpp"

namespace qgraph {

/// Occupation-number state: photons per (path, mode label).
struct FockState {
    std::map<std::pair<PathId, ModeLabel>, int> occupation;

    int total() const;
    int count_on_path(const PathId& p) const;

    auto operator<=>(const FockState&) const = default;

    std::string str() const;
};

/// Amplitudes over Fock states, truncated at a pair order in g.
struct FockLedger {
    std::map<FockState, Complex> amplitudes;
    int order = 0;

    double norm_squared() const;
};

/// One pumped crystal: emits a photon pair into (path1,label1) x (path2,label2)
/// with amplitude g and pump phase.
struct CrystalSpec {
    PathId path1;
    ModeLabel label1;
    PathId path2;
    ModeLabel label2;
    double g = 0.0;
    double phase = 0.0;  // radians
};

/// Expands the product of crystal unitaries applied to vacuum, truncated at
/// total pair order `order`. Bosonic factors are exact (a creation operator on
/// n photons contributes sqrt(n+1)), so stimulated emission comes out
/// automatically. Throws if the ledger exceeds size_cap entries.
FockLedger expand_network(const std::vector<CrystalSpec>& crystals, int order,
                          std::size_t size_cap = 10000000, double threshold = 1e-15);

/// Probability of detecting exactly `pattern` (photon counts per path, labels
/// marginalized) when each photon on path p independently survives with
/// probability loss[p] (default 1).
double pattern_probability(const FockLedger& ledger, const DetectionPattern& pattern,
                           const std::map<PathId, double>& loss = {});

double pattern_probability(const FockLedger& ledger, const DetectionPattern& pattern, double eta);

/// Relative deviation between order-2 and order-k four-fold probabilities,
/// per four-path subset and averaged. All crystal magnitudes are rescaled to
/// the common g before expanding (phases kept).
struct HigherOrderError {
    double average = 0.0;
    std::vector<std::pair<std::vector<PathId>, double>> per_subset;
};

HigherOrderError higher_order_error(const std::vector<CrystalSpec>& crystals,
                                    const std::vector<PathId>& paths, double g, int order,
                                    const std::map<PathId, double>& loss = {});

}  // namespace qgraph
