#pragma once

// Small dense-linear-algebra toolkit on top of Eigen: orthonormalization with
// rank detection, subspace containment residuals, Hermitian/density checks and
// a deterministic seeded source of Gaussian and Haar-random matrices.

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "kfold/errors.hpp"

namespace kfold {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kRankTolerance = 1e-8;

// Orthonormal basis of the column space of `candidates`: modified Gram-Schmidt
// with one re-orthogonalization pass. Columns whose residual norm after
// projection drops below `tol` are dropped.
template <typename Derived>
Matrix orthonormalize(const Eigen::MatrixBase<Derived>& candidates, double tol = kRankTolerance) {
    Matrix out(candidates.rows(), candidates.cols());
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
        Vector v = candidates.col(c);
        for (int pass = 0; pass < 2; ++pass)
            if (r > 0) v -= out.leftCols(r) * (out.leftCols(r).adjoint() * v);
        const double nrm = v.norm();
        if (nrm < tol) continue;
        out.col(r++) = v / nrm;
    }
    return out.leftCols(r);
}

template <typename Derived>
Vector project_out(const Eigen::MatrixBase<Derived>& basis, Vector v) {
    if (basis.cols() == 0) return v;
    v -= basis * (basis.adjoint() * v);
    return v;
}

// max |B^H B - I|: how far the columns are from orthonormal.
template <typename Derived>
double orthonormality_defect(const Eigen::MatrixBase<Derived>& b) {
    const Eigen::Index d = b.cols();
    return (b.adjoint() * b - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

// max-entry norm of (I - P_big) small: zero iff span(small) is inside span(big).
template <typename DerivedS, typename DerivedB>
double containment_residual(const Eigen::MatrixBase<DerivedS>& small,
                            const Eigen::MatrixBase<DerivedB>& big) {
    if (small.rows() != big.rows()) throw DimensionMismatch("containment_residual: row mismatch");
    if (small.cols() == 0) return 0.0;
    Matrix rem = small - big * (big.adjoint() * small);
    return rem.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline void require_density_matrix(const Matrix& rho, double trace_tol = 1e-9,
                                   double psd_tol = 1e-10, double herm_tol = 1e-9) {
    if (rho.rows() != rho.cols()) throw NotDensityMatrix("density matrix must be square");
    if (hermiticity_defect(rho) > herm_tol) throw NotDensityMatrix("matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol)
        throw NotDensityMatrix("trace differs from 1");
    if (min_eigenvalue(rho) < -psd_tol) throw NotDensityMatrix("matrix is not PSD");
}

// Deterministic random source. The Gaussian variates use an explicit
// Box-Muller transform so the stream depends only on the mt19937_64 output,
// not on any library-specific distribution algorithm.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    long uniform_index(long n) {  // in [0, n)
        return static_cast<long>(uniform() * static_cast<double>(n)) % n;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Matrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = rng.complex_gaussian();
    return a;
}

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// standard phase fix on the R diagonal.
inline Matrix haar_unitary(Eigen::Index d, Rng& rng) {
    Matrix a = random_complex_gaussian(d, d, rng) / std::sqrt(2.0);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Vector diag = qr.matrixQR().diagonal();
    for (Eigen::Index j = 0; j < d; ++j) {
        const double m = std::abs(diag(j));
        q.col(j) *= (m > 0) ? diag(j) / m : Complex(1, 0);
    }
    return q;
}

inline Matrix random_hermitian(Eigen::Index d, Rng& rng) {
    Matrix a = random_complex_gaussian(d, d, rng);
    return (a + a.adjoint()) / 2.0;
}

inline Matrix random_density_matrix(Eigen::Index d, Rng& rng) {
    Matrix a = random_complex_gaussian(d, d, rng);
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline Vector random_unit_vector(Eigen::Index d, Rng& rng) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
    return v / v.norm();
}

}  // namespace kfold
