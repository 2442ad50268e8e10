#pragma once

// The nested subspace chain of the weight-K input space and the progress
// coefficients of a density matrix with respect to it.
//
// nested(j) is spanned by the uniform superpositions that force j chosen
// positions to 1; level(j) holds the new directions of nested(j) beyond
// nested(j-1). Every matrix that is constant on pair-overlap orbits is a
// scalar on each level, so the levels diagonalize all twirled states at once.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kfold/combinatorics.hpp"
#include "kfold/errors.hpp"
#include "kfold/linalg.hpp"
#include "kfold/twirl.hpp"

namespace kfold {

// Matrix of orthonormal columns spanning a named subspace.
struct SubspaceBasis {
    Matrix columns;
    std::string label;
    long dim() const { return static_cast<long>(columns.cols()); }
};

// Uniform unit superposition over all weight-k strings whose bits at the
// given positions are 1. Empty tuple gives the flat state over the basis.
inline Vector fixed_ones_state(const WeightKBasis& basis, const std::vector<int>& ones) {
    const int j = static_cast<int>(ones.size());
    if (j > basis.k) throw TupleTooLarge("fixed_ones_state: tuple larger than the weight");
    std::uint64_t want = 0;
    for (int p : ones) {
        if (p < 1 || p > basis.n) throw IndexOutOfRange("fixed_ones_state: position out of range");
        const std::uint64_t bit = std::uint64_t{1} << (basis.n - p);
        if (want & bit) throw ParameterOutOfRange("fixed_ones_state: repeated position");
        want |= bit;
    }
    Vector v = Vector::Zero(basis.dimension());
    long terms = 0;
    for (long r = 0; r < basis.dimension(); ++r)
        if ((basis.strings[static_cast<std::size_t>(r)] & want) == want) {
            v(r) = Complex(1, 0);
            ++terms;
        }
    return v / std::sqrt(static_cast<double>(terms));
}

// Immutable per-(n,k) decomposition of the input space into levels. Requires
// k <= n/2, where the level dimensions are C(n,j) - C(n,j-1).
class Scheme {
public:
    Scheme(int n, int k, long cap = kDefaultDimensionCap) : basis_(enumerate_weight_k(n, k, cap)) {
        if (k > n - k) throw ParameterOutOfRange("Scheme: requires k <= n/2");
        levels_.reserve(static_cast<std::size_t>(k) + 1);
        nested_.reserve(static_cast<std::size_t>(k) + 1);
        Matrix accumulated(basis_.dimension(), 0);
        for (int j = 0; j <= k; ++j) {
            const auto tuples = position_subsets(n, j);
            Matrix cand(basis_.dimension(), static_cast<long>(tuples.size()));
            for (std::size_t t = 0; t < tuples.size(); ++t)
                cand.col(static_cast<long>(t)) =
                    project_out(accumulated, fixed_ones_state(basis_, tuples[t]));
            Matrix lvl = orthonormalize(cand);
            const long expected =
                (binomial(n, j) - binomial(n, j - 1)).convert_to<long>();
            if (lvl.cols() != expected)
                throw Error("Scheme: level " + std::to_string(j) + " has dimension " +
                            std::to_string(lvl.cols()) + ", expected " + std::to_string(expected));
            Matrix grown(basis_.dimension(), accumulated.cols() + lvl.cols());
            grown << accumulated, lvl;
            accumulated = std::move(grown);
            levels_.push_back(SubspaceBasis{std::move(lvl), "S_" + std::to_string(j)});
            nested_.push_back(accumulated);
        }
    }

    int n() const { return basis_.n; }
    int k() const { return basis_.k; }
    long dim() const { return basis_.dimension(); }
    const WeightKBasis& basis() const { return basis_; }

    const SubspaceBasis& level(int j) const {  // new directions at depth j
        check_level(j);
        return levels_[static_cast<std::size_t>(j)];
    }

    const Matrix& nested(int j) const {  // all directions up to depth j
        check_level(j);
        return nested_[static_cast<std::size_t>(j)];
    }

    // Tr(P_level(j) m), real part.
    double level_trace(const Matrix& m, int j) const {
        const Matrix& b = level(j).columns;
        return (b.adjoint() * m * b).trace().real();
    }

    // Tr(P m) over the orthocomplement of nested(j).
    double tail_trace(const Matrix& m, int j) const {
        const Matrix& b = nested(j);
        return m.trace().real() - (b.adjoint() * m * b).trace().real();
    }

private:
    void check_level(int j) const {
        if (j < 0 || j > basis_.k) throw IndexOutOfRange("Scheme: level out of range");
    }

    WeightKBasis basis_;
    std::vector<SubspaceBasis> levels_;
    std::vector<Matrix> nested_;
};

// Shared immutable cache; construction happens at most once per (n,k).
inline const Scheme& scheme_for(int n, int k, long cap = kDefaultDimensionCap) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Scheme>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, k}];
    if (!slot) slot = std::make_unique<Scheme>(n, k, cap);
    return *slot;
}

struct EigenSplit {
    Eigen::ArrayXd eigenvalue;  // scalar of m on each level, j = 0..k
    Eigen::ArrayXd residual;    // max |(m - eigenvalue_j I) P_level(j)|
};

// Splits an orbit-invariant matrix into its per-level scalars and reports how
// far the restriction to each level is from scalar.
inline EigenSplit eigen_split(const Matrix& m, const Scheme& scheme, double orbit_tol = 1e-10) {
    if (orbit_invariance_defect(m, scheme.basis()) > orbit_tol)
        throw NotOrbitInvariant("eigen_split: entries vary within an overlap orbit");
    const int k = scheme.k();
    EigenSplit out{Eigen::ArrayXd(k + 1), Eigen::ArrayXd(k + 1)};
    for (int j = 0; j <= k; ++j) {
        const Matrix& b = scheme.level(j).columns;
        Matrix mb = m * b;
        const double lambda =
            (b.adjoint() * mb).trace().real() / static_cast<double>(b.cols());
        out.eigenvalue(j) = lambda;
        out.residual(j) = ((mb - lambda * b) * b.adjoint()).cwiseAbs().maxCoeff();
    }
    return out;
}

// One step of the progress record: mass of a state on each level and the
// cumulative tail sums.
struct ProgressRow {
    Eigen::ArrayXd level_mass;  // p_j = Tr(P_level(j) rho), j = 0..k
    Eigen::ArrayXd tail_mass;   // q_j = sum of level_mass over j' >= j
};

inline ProgressRow progress_coefficients(const Matrix& rho, const Scheme& scheme,
                                         double trace_tol = 1e-9, double psd_tol = 1e-10) {
    require_density_matrix(rho, trace_tol, psd_tol);
    const int k = scheme.k();
    ProgressRow row{Eigen::ArrayXd(k + 1), Eigen::ArrayXd(k + 1)};
    for (int j = 0; j <= k; ++j) row.level_mass(j) = scheme.level_trace(rho, j);
    row.tail_mass(k) = row.level_mass(k);
    for (int j = k - 1; j >= 0; --j) row.tail_mass(j) = row.tail_mass(j + 1) + row.level_mass(j);
    return row;
}

// Per-query progress record of a run: one row per recorded state plus the
// query-index weights observed before each query.
struct ProgressProfile {
    int n = 0;
    int k = 0;
    std::vector<ProgressRow> step;              // t = 0..T
    std::vector<Eigen::ArrayXd> query_weight;   // t = 0..T-1, each of size n+1
    int queries() const { return static_cast<int>(step.size()) - 1; }
};

}  // namespace kfold
