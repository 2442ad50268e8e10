#pragma once

// Orbit-averaging twirls over the weight-K basis. Averaging a matrix entry
// over all pairs in the same permutation orbit equals averaging the matrix
// over all N! simultaneous bit relabelings, at O(D^2) cost instead of N!.

#include <vector>

#include <Eigen/Dense>

#include "kfold/combinatorics.hpp"
#include "kfold/errors.hpp"
#include "kfold/linalg.hpp"

namespace kfold {

namespace detail {

inline void check_square(const Matrix& m, const WeightKBasis& basis, const char* who) {
    const long d = basis.dimension();
    if (m.rows() != d || m.cols() != d)
        throw DimensionMismatch(std::string(who) + ": matrix side must equal C(n,k)");
}

}  // namespace detail

// Entry (x, y) of the result is the mean of m over all pairs with the same
// overlap |{l : x_l = y_l = 1}|. Constant on orbits, trace preserved.
inline Matrix full_twirl(const Matrix& m, const WeightKBasis& basis) {
    detail::check_square(m, basis, "full_twirl");
    const long d = basis.dimension();
    const int lo = std::max(0, 2 * basis.k - basis.n);
    const int classes = basis.k - lo + 1;
    std::vector<Complex> sum(static_cast<std::size_t>(classes), Complex(0, 0));
    std::vector<long> count(static_cast<std::size_t>(classes), 0);
    auto class_of = [&](long r, long c) {
        return std::popcount(basis.strings[static_cast<std::size_t>(r)] &
                             basis.strings[static_cast<std::size_t>(c)]) -
               lo;
    };
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            const int cl = class_of(r, c);
            sum[static_cast<std::size_t>(cl)] += m(r, c);
            ++count[static_cast<std::size_t>(cl)];
        }
    Matrix out(d, d);
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            const int cl = class_of(r, c);
            out(r, c) = sum[static_cast<std::size_t>(cl)] /
                        static_cast<double>(count[static_cast<std::size_t>(cl)]);
        }
    return out;
}

// Same averaging, but orbits are refined by the pair (x_i, y_i) and the
// overlap away from position i.
inline Matrix conditional_twirl(const Matrix& m, const WeightKBasis& basis, int i) {
    detail::check_square(m, basis, "conditional_twirl");
    if (i < 1 || i > basis.n) throw IndexOutOfRange("conditional_twirl: index out of range");
    const long d = basis.dimension();
    const std::uint64_t ibit = std::uint64_t{1} << (basis.n - i);
    const int off_classes = basis.k + 1;
    const int classes = 4 * off_classes;
    std::vector<Complex> sum(static_cast<std::size_t>(classes), Complex(0, 0));
    std::vector<long> count(static_cast<std::size_t>(classes), 0);
    auto class_of = [&](long r, long c) {
        const std::uint64_t x = basis.strings[static_cast<std::size_t>(r)];
        const std::uint64_t y = basis.strings[static_cast<std::size_t>(c)];
        const int xi = (x & ibit) ? 1 : 0;
        const int yi = (y & ibit) ? 1 : 0;
        const int off = std::popcount((x & y) & ~ibit);
        return (2 * xi + yi) * off_classes + off;
    };
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            const int cl = class_of(r, c);
            sum[static_cast<std::size_t>(cl)] += m(r, c);
            ++count[static_cast<std::size_t>(cl)];
        }
    Matrix out(d, d);
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            const int cl = class_of(r, c);
            out(r, c) = sum[static_cast<std::size_t>(cl)] /
                        static_cast<double>(count[static_cast<std::size_t>(cl)]);
        }
    return out;
}

// Largest within-orbit spread of the entries; zero for twirled matrices.
inline double orbit_invariance_defect(const Matrix& m, const WeightKBasis& basis) {
    detail::check_square(m, basis, "orbit_invariance_defect");
    return (m - full_twirl(m, basis)).cwiseAbs().maxCoeff();
}

}  // namespace kfold
