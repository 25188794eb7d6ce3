#include "qgraph/matchings.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <set>
#include <sstream>

namespace qgraph {

int DetectionPattern::total() const {
    int t = 0;
    for (const auto& [p, c] : counts) t += c;
    return t;
}

int DetectionPattern::count(const PathId& p) const {
    auto it = counts.find(p);
    return it == counts.end() ? 0 : it->second;
}

DetectionPattern DetectionPattern::one_per(const std::vector<PathId>& paths) {
    DetectionPattern pat;
    for (const auto& p : paths) pat.counts[p] = 1;
    return pat;
}

std::string assignment_str(const Assignment& a) {
    std::ostringstream os;
    os << "|";
    bool first = true;
    for (const auto& [path, labels] : a) {
        for (const auto& l : labels) {
            if (!first) os << ",";
            os << l.str();
            first = false;
        }
    }
    os << ">";
    bool fp = true;
    std::ostringstream sub;
    for (const auto& [path, labels] : a) {
        (void)labels;
        sub << (fp ? "" : "") << path.name;
        fp = false;
    }
    return os.str() + "_" + sub.str();
}

std::optional<Complex> PostSelectedState::amplitude(const Assignment& a) const {
    for (const auto& [asn, amp] : terms)
        if (asn == a) return amp;
    return std::nullopt;
}

double PostSelectedState::norm_squared() const {
    double s = 0;
    for (const auto& [asn, amp] : terms) s += std::norm(amp);
    return s;
}

namespace {

Assignment make_assignment(const ExperimentGraph& g, const DetectionPattern& pattern,
                           const std::vector<Edge>& edges) {
    std::map<PathId, std::vector<ModeLabel>> labels;
    for (const auto& e : edges) {
        labels[e.u.path].push_back(e.u.label);
        labels[e.v.path].push_back(e.v.label);
    }
    Assignment out;
    for (const auto& p : g.paths) {
        if (pattern.count(p) == 0) continue;
        auto& ls = labels[p];
        std::sort(ls.begin(), ls.end());
        out.emplace_back(p, ls);
    }
    return out;
}

struct Enumerator {
    const ExperimentGraph& graph;
    const DetectionPattern& pattern;
    std::vector<Edge> edges;               // canonical order
    std::map<PathId, int> capacity;
    std::vector<Edge> chosen;
    std::vector<MatchingTerm>* out;

    // Covers the first path (in graph order) with remaining capacity, trying
    // incident edges in increasing canonical index.
    void recurse(size_t min_index) {
        const PathId* lowest = nullptr;
        for (const auto& p : graph.paths) {
            auto it = capacity.find(p);
            if (it != capacity.end() && it->second > 0) {
                lowest = &p;
                break;
            }
        }
        if (!lowest) {
            MatchingTerm term;
            term.edges = chosen;
            term.weight = Complex{1.0, 0.0};
            for (const auto& e : chosen) term.weight *= e.weight;
            term.assignment = make_assignment(graph, pattern, chosen);
            out->push_back(std::move(term));
            return;
        }
        for (size_t i = min_index; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (e.u.path != *lowest && e.v.path != *lowest) continue;
            auto cu = capacity.find(e.u.path);
            auto cv = capacity.find(e.v.path);
            if (cu == capacity.end() || cv == capacity.end()) continue;
            if (e.u.path == e.v.path) {
                if (cu->second < 2) continue;
                cu->second -= 2;
            } else {
                if (cu->second < 1 || cv->second < 1) continue;
                cu->second -= 1;
                cv->second -= 1;
            }
            chosen.push_back(e);
            recurse(i + 1);
            chosen.pop_back();
            if (e.u.path == e.v.path)
                cu->second += 2;
            else {
                cu->second += 1;
                cv->second += 1;
            }
        }
    }
};

}  // namespace

std::vector<MatchingTerm> enumerate_matchings(const ExperimentGraph& g, const DetectionPattern& pattern) {
    std::vector<MatchingTerm> out;
    if (pattern.total() % 2 != 0) return out;
    Enumerator en{g, pattern, {}, {}, {}, &out};
    for (const auto& e : g.edges) {
        if (pattern.count(e.u.path) > 0 && pattern.count(e.v.path) > 0) en.edges.push_back(e);
    }
    // Keyed by the endpoint covered first in graph path order: the pruning in
    // recurse() relies on each pivot's usable edges forming a contiguous
    // block, which canonical (lexicographic) endpoint order does not give
    // when graph.paths is not sorted.
    std::sort(en.edges.begin(), en.edges.end(), [&](const Edge& a, const Edge& b) {
        auto key = [&](const Edge& e) {
            auto tu = std::make_tuple(g.path_index(e.u.path), e.u.label, e.u.instance);
            auto tv = std::make_tuple(g.path_index(e.v.path), e.v.label, e.v.instance);
            if (tv < tu) std::swap(tu, tv);
            return std::make_tuple(tu, tv, e.tag);
        };
        return key(a) < key(b);
    });
    for (const auto& [p, c] : pattern.counts)
        if (c > 0) en.capacity[p] = c;
    en.recurse(0);
    return out;
}

Complex matching_sum(const ExperimentGraph& g, const DetectionPattern& pattern) {
    Complex s{0.0, 0.0};
    for (const auto& t : enumerate_matchings(g, pattern)) s += t.weight;
    return s;
}

PostSelectedState post_selected_state(const ExperimentGraph& g, const DetectionPattern& pattern,
                                      bool normalize, double cancel_threshold) {
    std::map<Assignment, Complex> acc;
    for (const auto& t : enumerate_matchings(g, pattern)) acc[t.assignment] += t.weight;
    PostSelectedState state;
    for (const auto& [asn, amp] : acc)
        if (std::abs(amp) >= cancel_threshold) state.terms.emplace_back(asn, amp);
    if (normalize) {
        double n = std::sqrt(state.norm_squared());
        if (n > 0) {
            for (auto& [asn, amp] : state.terms) amp /= n;
            state.normalized = true;
        }
    }
    return state;
}

MaverickReport detect_maverick(const PostSelectedState& state, int dimension, int parties,
                               double amp_tolerance) {
    MaverickReport report;
    const size_t d = static_cast<size_t>(dimension);
    if (state.terms.empty() || d == 0) return report;

    // A GHZ family: d terms of equal magnitude, one label per party each,
    // with all d labels distinct for every party.
    std::vector<size_t> candidates;
    for (size_t i = 0; i < state.terms.size(); ++i) {
        bool product_term = true;
        for (const auto& [p, ls] : state.terms[i].first)
            if (ls.size() != 1) product_term = false;
        if (product_term && static_cast<int>(state.terms[i].first.size()) == parties) candidates.push_back(i);
    }
    if (candidates.size() < d) return report;

    std::vector<size_t> pick;
    std::vector<char> used(state.terms.size(), 0);
    auto compatible = [&](size_t i, size_t j) {
        const auto& a = state.terms[i].first;
        const auto& b = state.terms[j].first;
        if (std::abs(std::abs(state.terms[i].second) - std::abs(state.terms[j].second)) > amp_tolerance)
            return false;
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k].second == b[k].second) return false;  // same label for some party
        return true;
    };
    std::function<bool(size_t)> search = [&](size_t start) -> bool {
        if (pick.size() == d) return true;
        for (size_t ci = start; ci < candidates.size(); ++ci) {
            size_t i = candidates[ci];
            bool ok = true;
            for (size_t j : pick)
                if (!compatible(j, i)) ok = false;
            if (!ok) continue;
            pick.push_back(i);
            if (search(ci + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!search(0)) return report;

    for (size_t i : pick) {
        report.ghz_terms.push_back(state.terms[i].first);
        used[i] = 1;
    }
    for (size_t i = 0; i < state.terms.size(); ++i)
        if (!used[i]) report.surplus_terms.push_back(state.terms[i].first);
    report.is_ghz = report.surplus_terms.empty();
    return report;
}

}  // namespace qgraph
