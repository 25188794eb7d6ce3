#include "qgraph/matrix_functions.hpp"

#include <algorithm>
#include <functional>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qgraph {

namespace {

void require_square(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
}

Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& m, double tol) {
    require_square(m);
    const double dev = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (m.rows() > 0 && dev > tol) throw std::invalid_argument("asymmetric Hafnian input");
    Eigen::MatrixXcd s = 0.5 * (m + m.transpose());
    s.diagonal().setZero();
    return s;
}

}  // namespace

Complex permanent_ryser(const Eigen::MatrixXcd& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n > 62) throw std::invalid_argument("dimension too large for Ryser");

    // (-1)^n sum_{S != empty} (-1)^|S| prod_i sum_{j in S} a_ij, with one
    // row-sum update per Gray-code step.
    std::vector<Complex> row_sums(n, Complex{0.0, 0.0});
    Complex total{0.0, 0.0};
    uint64_t gray = 0;
    for (uint64_t k = 1; k < (uint64_t{1} << n); ++k) {
        const uint64_t next = k ^ (k >> 1);
        const uint64_t diff = gray ^ next;
        const int j = std::countr_zero(diff);
        const double sign_col = (next & diff) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) row_sums[i] += sign_col * m(i, j);
        gray = next;
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= row_sums[i];
        const int popcount = std::popcount(next);
        total += ((n - popcount) % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    return total;
}

Complex permanent_naive(const Eigen::MatrixXcd& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n > 10) throw std::invalid_argument("dimension too large for naive permanent oracle");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{0.0, 0.0};
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Complex hafnian_naive(const Eigen::MatrixXcd& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n % 2 != 0) return {0.0, 0.0};
    if (n > 12) throw std::invalid_argument("dimension too large for naive hafnian oracle");

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Pair the first unmatched index with each remaining one.
    std::function<Complex(std::vector<int>&)> rec = [&](std::vector<int>& rem) -> Complex {
        if (rem.empty()) return {1.0, 0.0};
        Complex total{0.0, 0.0};
        const int first = rem[0];
        for (size_t j = 1; j < rem.size(); ++j) {
            std::vector<int> next;
            for (size_t t = 1; t < rem.size(); ++t)
                if (t != j) next.push_back(rem[t]);
            total += m(first, rem[j]) * rec(next);
        }
        return total;
    };
    return rec(idx);
}

Complex hafnian_incl_excl(const Eigen::MatrixXcd& input, double symmetry_tol) {
    const Eigen::MatrixXcd m = symmetrized(input, symmetry_tol);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n % 2 != 0) return {0.0, 0.0};
    if (n > 30) throw std::invalid_argument("dimension too large for inclusion-exclusion hafnian");
    const int half = n / 2;

    // Haf(A) = 1/(n/2)! sum_S (-1)^(n-|S|) ((1/2) 1_S^T A 1_S)^(n/2),
    // with the quadratic form maintained incrementally over a Gray code.
    Complex total{0.0, 0.0};
    Complex quad{0.0, 0.0};                       // (1/2) 1_S^T A 1_S over current S
    std::vector<Complex> cross(n, Complex{0, 0});  // sum_{j in S} a_ij
    uint64_t gray = 0;
    for (uint64_t k = 1; k < (uint64_t{1} << n); ++k) {
        const uint64_t next = k ^ (k >> 1);
        const uint64_t diff = gray ^ next;
        const int j = std::countr_zero(diff);
        const bool added = (next & diff) != 0;
        if (added) {
            quad += cross[j];
            for (int i = 0; i < n; ++i) cross[i] += m(i, j);
        } else {
            for (int i = 0; i < n; ++i) cross[i] -= m(i, j);
            quad -= cross[j];
        }
        gray = next;
        Complex power{1.0, 0.0};
        for (int t = 0; t < half; ++t) power *= quad;
        const int popcount = std::popcount(next);
        total += ((n - popcount) % 2 == 0 ? 1.0 : -1.0) * power;
    }
    double fact = 1.0;
    for (int t = 2; t <= half; ++t) fact *= t;
    return total / fact;
}

Complex hafnian(const Eigen::MatrixXcd& input, double symmetry_tol) {
    const Eigen::MatrixXcd m = symmetrized(input, symmetry_tol);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n % 2 != 0) return {0.0, 0.0};
    const int half = n / 2;

    // Power-trace method over subsets of index pairs: for each pair subset Z,
    // accumulate (-1)^(n/2-|Z|) [x^(n/2)] exp(sum_j tr((X A_Z)^j)/(2j) x^j),
    // where X swaps the two rows of each pair.
    Complex total{0.0, 0.0};
    for (uint64_t z = 1; z < (uint64_t{1} << half); ++z) {
        std::vector<int> pairs;
        for (int i = 0; i < half; ++i)
            if (z & (uint64_t{1} << i)) pairs.push_back(i);
        const int sz = static_cast<int>(pairs.size()) * 2;

        Eigen::MatrixXcd b(sz, sz);
        for (int r = 0; r < sz; ++r)
            for (int c = 0; c < sz; ++c) {
                const int ri = 2 * pairs[r / 2] + (r % 2);
                const int ci = 2 * pairs[c / 2] + (c % 2);
                b(r, c) = m(ri, ci);
            }
        // C = X * B, X = direct sum of [[0,1],[1,0]]: swap row pairs.
        Eigen::MatrixXcd c(sz, sz);
        for (int r = 0; r < sz; r += 2) {
            c.row(r) = b.row(r + 1);
            c.row(r + 1) = b.row(r);
        }

        // Power sums p_j = tr(C^j), j = 1..n/2.
        std::vector<Complex> pow_sums(half + 1, Complex{0, 0});
        Eigen::MatrixXcd cp = c;
        pow_sums[1] = cp.trace();
        for (int j = 2; j <= half; ++j) {
            cp = cp * c;
            pow_sums[j] = cp.trace();
        }

        // [x^(n/2)] exp(P(x)) with P(x) = sum_j p_j/(2j) x^j, via the
        // truncated series sum_t P^t / t!.
        std::vector<Complex> p(half + 1, Complex{0, 0});
        for (int j = 1; j <= half; ++j) p[j] = pow_sums[j] / (2.0 * j);
        std::vector<Complex> expp(half + 1, Complex{0, 0});
        expp[0] = {1.0, 0.0};
        std::vector<Complex> term(half + 1, Complex{0, 0});
        term[0] = {1.0, 0.0};
        for (int t = 1; t <= half; ++t) {
            std::vector<Complex> next(half + 1, Complex{0, 0});
            for (int d1 = 0; d1 <= half; ++d1) {
                if (term[d1] == Complex{0, 0}) continue;
                for (int d2 = 1; d1 + d2 <= half; ++d2) next[d1 + d2] += term[d1] * p[d2];
            }
            for (int d = 0; d <= half; ++d) {
                next[d] /= static_cast<double>(t);
                expp[d] += next[d];
            }
            term = std::move(next);
        }

        const int missing = half - static_cast<int>(pairs.size());
        total += (missing % 2 == 0 ? 1.0 : -1.0) * expp[half];
    }
    return total;
}

double coincidence_probability(const ExperimentGraph& g, const std::vector<PathId>& subset) {
    if (subset.size() % 2 != 0) throw std::invalid_argument("subset must have even size");
    const ExperimentGraph sub = induced_subgraph(g, subset);
    return std::norm(hafnian(adjacency_matrix(sub, subset)));
}

std::vector<SubsetProbability> coincidence_distribution(const ExperimentGraph& g, int k) {
    if (k % 2 != 0) throw std::invalid_argument("subset size must be even");
    const int n = static_cast<int>(g.paths.size());
    std::vector<SubsetProbability> out;
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            std::vector<PathId> subset;
            for (int i : pick) subset.push_back(g.paths[i]);
            out.push_back({subset, coincidence_probability(g, subset)});
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    double total = 0;
    for (const auto& s : out) total += s.probability;
    if (total > 0)
        for (auto& s : out) s.probability /= total;
    return out;
}

}  // namespace qgraph
