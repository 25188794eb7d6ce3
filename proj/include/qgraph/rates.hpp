#pragma once

#include <cstdint>

namespace qgraph {

/// Count-rate query: m modes per side, n photon pairs, per-crystal pair
/// probability p (p ~ g^2).
struct RateQuery {
    int m = 0;
    int n = 0;
    double p = 0.0;
};

/// log-gamma binomial, good to ~1e-13 relative for m up to ~1e3.
double binomial(int n, int k);

/// Aaronson-Arkhipov style fixed-source rate: p^n.
double rate_aa(const RateQuery& q);

/// Scattershot: C(m,n) p^n (1-p)^(m-n).
double rate_scattershot(const RateQuery& q);

/// Path identity: C(m,n)^2 n! p^n (1-p)^(m^2-n).
double rate_path_identity(const RateQuery& q);

/// Closed-form R_PI / R_SS = C(m,n) n! (1-p)^(m(m-1)).
double ratio_pi_ss(const RateQuery& q);

/// Explicit enumeration over the complete bipartite crystal network K_{m,m}:
/// how many 2n-fold path subsets admit a perfect matching, and how many
/// matchings each has. Throws if the per-subset count is not uniform.
struct CombinatorialCounts {
    std::int64_t subsets = 0;
    std::int64_t matchings_per_subset = 0;
};

CombinatorialCounts combinatorial_check(int m, int n);

/// Monte-Carlo check of the random-phase amplitude claim: the mean of
/// |sum_{k=1}^{n!} e^{i theta_k}|^2 over uniform phases is n!.
struct PhaseSumEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

PhaseSumEstimate random_phase_sum(int n, int samples, std::uint64_t seed);

}  // namespace qgraph
