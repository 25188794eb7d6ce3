#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Exact Permanent via Ryser's inclusion-exclusion with Gray-code subset
/// iteration, O(n * 2^n).
Complex permanent_ryser(const Eigen::MatrixXcd& m);

/// Brute-force oracle: direct sum over all n! permutations. n <= 10.
Complex permanent_naive(const Eigen::MatrixXcd& m);

/// Exact Hafnian, O(n^3 * 2^(n/2)) power-trace method. Odd n returns 0;
/// the diagonal is ignored. Throws if the input is asymmetric beyond tol.
Complex hafnian(const Eigen::MatrixXcd& m, double symmetry_tol = 1e-12);

/// Inclusion-exclusion baseline, O(n^2 * 2^n) with Gray-code updates.
Complex hafnian_incl_excl(const Eigen::MatrixXcd& m, double symmetry_tol = 1e-12);

/// Brute-force oracle: direct sum over all (n-1)!! pairings. n <= 12, even.
Complex hafnian_naive(const Eigen::MatrixXcd& m);

/// Unnormalized |Haf(adjacency of induced subgraph)|^2.
double coincidence_probability(const ExperimentGraph& g, const std::vector<PathId>& subset);

struct SubsetProbability {
    std::vector<PathId> subset;
    double probability;  // normalized over all subsets of the same size
};

/// Distribution over all (|paths| choose k) k-fold path subsets, normalized
/// to sum to one (all-zero distributions are returned unnormalized).
std::vector<SubsetProbability> coincidence_distribution(const ExperimentGraph& g, int k);

}  // namespace qgraph
