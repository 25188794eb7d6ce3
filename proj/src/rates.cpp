#include "qgraph/rates.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/matchings.hpp"

namespace qgraph {

namespace {

void validate(const RateQuery& q) {
    if (q.n < 0 || q.n > q.m) throw std::invalid_argument("rate query: need 0 <= n <= m");
    if (!(q.p > 0.0 && q.p < 1.0)) throw std::invalid_argument("rate query: need 0 < p < 1");
}

double factorial(int n) { return std::exp(std::lgamma(double(n) + 1.0)); }

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
                    std::lgamma(double(n - k) + 1.0));
}

double rate_aa(const RateQuery& q) {
    validate(q);
    return std::pow(q.p, q.n);
}

double rate_scattershot(const RateQuery& q) {
    validate(q);
    return binomial(q.m, q.n) * std::pow(q.p, q.n) * std::pow(1.0 - q.p, q.m - q.n);
}

double rate_path_identity(const RateQuery& q) {
    validate(q);
    const double c = binomial(q.m, q.n);
    return c * c * factorial(q.n) * std::pow(q.p, q.n) *
           std::pow(1.0 - q.p, double(q.m) * q.m - q.n);
}

double ratio_pi_ss(const RateQuery& q) {
    validate(q);
    return binomial(q.m, q.n) * factorial(q.n) * std::pow(1.0 - q.p, double(q.m) * (q.m - 1));
}

CombinatorialCounts combinatorial_check(int m, int n) {
    if (m < 1 || n < 1 || n > m) throw std::invalid_argument("combinatorial_check: need 1 <= n <= m");

    // K_{m,m}: input paths u0..u(m-1), output paths v0..v(m-1), one unit edge
    // per crystal (u_i, v_j).
    ExperimentGraph g;
    std::vector<PathId> all;
    for (int i = 0; i < m; ++i) {
        PathId p{"u" + std::to_string(i)};
        g = add_path(g, p);
        all.push_back(p);
    }
    for (int j = 0; j < m; ++j) {
        PathId p{"v" + std::to_string(j)};
        g = add_path(g, p);
        all.push_back(p);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g = add_crystal(g, all[i], ModeLabel::h(), all[m + j], ModeLabel::h(), {1.0, 0.0});

    CombinatorialCounts counts;
    const int total = 2 * m;
    // All 2n-subsets of the 2m paths.
    std::vector<int> idx(2 * n);
    for (int i = 0; i < 2 * n; ++i) idx[i] = i;
    while (true) {
        std::vector<PathId> subset;
        for (int i : idx) subset.push_back(all[i]);
        const auto terms = enumerate_matchings(g, DetectionPattern::one_per(subset));
        if (!terms.empty()) {
            if (counts.subsets == 0)
                counts.matchings_per_subset = std::int64_t(terms.size());
            else if (counts.matchings_per_subset != std::int64_t(terms.size()))
                throw std::runtime_error("combinatorial_check: non-uniform matching count");
            ++counts.subsets;
        }
        int i = 2 * n - 1;
        while (i >= 0 && idx[i] == total - 2 * n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < 2 * n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return counts;
}

PhaseSumEstimate random_phase_sum(int n, int samples, std::uint64_t seed) {
    std::int64_t nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        Complex z{0.0, 0.0};
        for (std::int64_t k = 0; k < nfact; ++k) z += std::polar(1.0, phase(rng));
        const double mag2 = std::norm(z);
        sum += mag2;
        sum2 += mag2 * mag2;
    }
    PhaseSumEstimate est;
    est.mean = sum / samples;
    const double var = (sum2 - sum * sum / samples) / (samples - 1);
    est.standard_error = std::sqrt(var / samples);
    return est;
}

}  // namespace qgraph
