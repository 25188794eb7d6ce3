#include "qgraph/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgraph {

int FockState::total() const {
    int n = 0;
    for (const auto& [mode, count] : occupation) n += count;
    return n;
}

int FockState::count_on_path(const PathId& p) const {
    int n = 0;
    for (const auto& [mode, count] : occupation)
        if (mode.first == p) n += count;
    return n;
}

std::string FockState::str() const {
    std::ostringstream out;
    out << "|";
    bool first = true;
    for (const auto& [mode, count] : occupation) {
        if (!first) out << ",";
        first = false;
        if (count != 1) out << count;
        out << mode.second.str() << "_" << mode.first.name;
    }
    out << ">";
    return out.str();
}

double FockLedger::norm_squared() const {
    double s = 0.0;
    for (const auto& [state, amp] : amplitudes) s += std::norm(amp);
    return s;
}

namespace {

// State vector graded by the number of pair-operator applications consumed so
// far, so the truncation budget is shared across crystals.
using GradedState = std::map<std::pair<FockState, int>, Complex>;

// D = e^{i phase} a1' a2' - e^{-i phase} a1 a2 applied once (' = creation).
GradedState apply_pair_operator(const GradedState& psi, const CrystalSpec& c, int order) {
    const std::pair<PathId, ModeLabel> m1{c.path1, c.label1};
    const std::pair<PathId, ModeLabel> m2{c.path2, c.label2};
    const Complex up = std::polar(1.0, c.phase);
    GradedState out;
    for (const auto& [key, amp] : psi) {
        const auto& [state, grade] = key;
        if (grade >= order) continue;
        int n1 = 0, n2 = 0;
        if (auto it = state.occupation.find(m1); it != state.occupation.end()) n1 = it->second;
        if (auto it = state.occupation.find(m2); it != state.occupation.end()) n2 = it->second;

        FockState created = state;
        if (m1 == m2) {
            created.occupation[m1] = n1 + 2;
            out[{created, grade + 1}] += amp * up * std::sqrt(double(n1 + 1) * (n1 + 2));
        } else {
            created.occupation[m1] = n1 + 1;
            created.occupation[m2] = n2 + 1;
            out[{created, grade + 1}] += amp * up * std::sqrt(double(n1 + 1) * (n2 + 1));
        }

        if (m1 == m2 ? n1 >= 2 : (n1 >= 1 && n2 >= 1)) {
            FockState destroyed = state;
            double factor;
            if (m1 == m2) {
                factor = std::sqrt(double(n1) * (n1 - 1));
                if (n1 == 2)
                    destroyed.occupation.erase(m1);
                else
                    destroyed.occupation[m1] = n1 - 2;
            } else {
                factor = std::sqrt(double(n1) * n2);
                if (n1 == 1)
                    destroyed.occupation.erase(m1);
                else
                    destroyed.occupation[m1] = n1 - 1;
                if (n2 == 1)
                    destroyed.occupation.erase(m2);
                else
                    destroyed.occupation[m2] = n2 - 1;
            }
            out[{destroyed, grade + 1}] -= amp * std::conj(up) * factor;
        }
    }
    return out;
}

}  // namespace

FockLedger expand_network(const std::vector<CrystalSpec>& crystals, int order,
                          std::size_t size_cap, double threshold) {
    if (order < 1) throw std::invalid_argument("expand_network: order must be >= 1");
    for (const auto& c : crystals) {
        if (!(c.g >= 0.0 && c.g < 1.0))
            throw std::invalid_argument("expand_network: crystal amplitude g must lie in [0, 1)");
    }

    GradedState psi;
    psi[{FockState{}, 0}] = Complex{1.0, 0.0};

    for (const auto& c : crystals) {
        // exp(g D) |psi>, truncated when the shared grade budget runs out.
        GradedState next = psi;
        GradedState dpow = psi;
        double fact = 1.0;
        for (int j = 1; j <= order; ++j) {
            dpow = apply_pair_operator(dpow, c, order);
            if (dpow.empty()) break;
            fact *= j;
            const double coeff = std::pow(c.g, j) / fact;
            for (const auto& [key, amp] : dpow) next[key] += coeff * amp;
            if (next.size() > size_cap)
                throw std::runtime_error("expand_network: ledger exceeds size cap");
        }
        psi = std::move(next);
    }

    FockLedger ledger;
    ledger.order = order;
    for (const auto& [key, amp] : psi) ledger.amplitudes[key.first] += amp;
    std::erase_if(ledger.amplitudes,
                  [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
    return ledger;
}

double pattern_probability(const FockLedger& ledger, const DetectionPattern& pattern,
                           const std::map<PathId, double>& loss) {
    auto eta_of = [&loss](const PathId& p) {
        auto it = loss.find(p);
        return it == loss.end() ? 1.0 : it->second;
    };
    auto binom = [](int n, int k) {
        double b = 1.0;
        for (int i = 0; i < k; ++i) b = b * double(n - i) / double(i + 1);
        return b;
    };

    double prob = 0.0;
    for (const auto& [state, amp] : ledger.amplitudes) {
        // Per-path totals, labels marginalized.
        std::map<PathId, int> have;
        for (const auto& [mode, count] : state.occupation) have[mode.first] += count;

        double weight = 1.0;
        bool feasible = true;
        std::map<PathId, int> need = pattern.counts;
        for (const auto& [p, n] : have) {
            int k = 0;
            if (auto it = need.find(p); it != need.end()) {
                k = it->second;
                need.erase(it);
            }
            if (k > n) {
                feasible = false;
                break;
            }
            const double eta = eta_of(p);
            weight *= binom(n, k) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
        }
        for (const auto& [p, k] : need)
            if (k > 0) feasible = false;
        if (feasible) prob += std::norm(amp) * weight;
    }
    return prob;
}

double pattern_probability(const FockLedger& ledger, const DetectionPattern& pattern, double eta) {
    std::map<PathId, double> loss;
    for (const auto& [state, amp] : ledger.amplitudes)
        for (const auto& [mode, count] : state.occupation) loss[mode.first] = eta;
    for (const auto& [p, k] : pattern.counts) loss[p] = eta;
    return pattern_probability(ledger, pattern, loss);
}

HigherOrderError higher_order_error(const std::vector<CrystalSpec>& crystals,
                                    const std::vector<PathId>& paths, double g, int order,
                                    const std::map<PathId, double>& loss) {
    std::vector<CrystalSpec> rescaled = crystals;
    for (auto& c : rescaled) c.g = g;

    HigherOrderError result;
    if (paths.size() < 4) return result;  // degenerate: no interfering 4-fold subsets

    const FockLedger reference = expand_network(rescaled, 2);
    const FockLedger expanded = expand_network(rescaled, order);

    const int m = int(paths.size());
    std::vector<int> idx{0, 1, 2, 3};
    double sum = 0.0;
    while (true) {
        std::vector<PathId> subset;
        for (int i : idx) subset.push_back(paths[i]);
        const auto pattern = DetectionPattern::one_per(subset);
        const double p2 = pattern_probability(reference, pattern, loss);
        const double pk = pattern_probability(expanded, pattern, loss);
        if (p2 > 1e-300) {
            const double err = std::abs(pk - p2) / p2;
            result.per_subset.emplace_back(subset, err);
            sum += err;
        }
        // next 4-combination of {0..m-1}
        int i = 3;
        while (i >= 0 && idx[i] == m - 4 + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < 4; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!result.per_subset.empty()) sum /= double(result.per_subset.size());
    result.average = sum;
    return result;
}

}  // namespace qgraph
