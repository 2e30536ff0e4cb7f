#include "duality/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "duality/errors.hpp"

namespace duality {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
}

void require_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b)
        throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

EigResult eig_of(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
    if (solver.info() == Eigen::Success)
        return EigResult{solver.eigenvalues(), solver.eigenvectors()};

    // Eigen's QL sweep occasionally exhausts its iteration budget on heavily
    // rank-deficient inputs; LAPACK's divide-and-conquer driver handles them.
    Matrix work = hermitian;
    RealVector values(work.rows());
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(work.rows()),
        reinterpret_cast<lapack_complex_double*>(work.data()),
        static_cast<lapack_int>(work.outerStride()), values.data());
    if (info != 0) throw Error("hermitian eigendecomposition failed to converge; kernel defect");
    return EigResult{std::move(values), std::move(work)};
}

/// Eigenvalues below the solver's resolution get square roots far larger than
/// the noise that produced them; zero them before taking roots. Values below
/// the absolute floor still signal a genuinely indefinite matrix.
double spectrum_noise_floor(const RealVector& values) {
    const double top = std::max(values.cwiseAbs().maxCoeff(), 0.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return 4.0 * static_cast<double>(values.size()) * eps * top;
}

} // namespace

HermitianOperator::HermitianOperator(Matrix entries, double herm_tol) : mat_(std::move(entries)) {
    require_square(mat_, "HermitianOperator");
    const double deviation = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (deviation > herm_tol)
        throw DimensionError("matrix is not Hermitian within tolerance: max|A - A^+| = " +
                             std::to_string(deviation));
    mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
}

DensityMatrix::DensityMatrix(Matrix entries, double herm_tol, double psd_floor, double trace_tol)
    : HermitianOperator(std::move(entries), herm_tol) {
    const double trace = matrix().trace().real();
    if (std::abs(trace - 1.0) > trace_tol)
        throw DimensionError("density matrix trace deviates from one by " +
                             std::to_string(std::abs(trace - 1.0)));
    const EigResult eig = eig_of(matrix());
    if (eig.values(0) < psd_floor)
        throw NotPsdError("density matrix has eigenvalue " + std::to_string(eig.values(0)) +
                          " below floor " + std::to_string(psd_floor));
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
    const double norm = state.norm();
    if (norm <= 0.0) throw DimensionError("cannot form a projector onto the zero vector");
    const Vector normalized = state / norm;
    return DensityMatrix(normalized * normalized.adjoint());
}

UnitaryOperator::UnitaryOperator(Matrix entries, double unitary_tol) : mat_(std::move(entries)) {
    require_square(mat_, "UnitaryOperator");
    const Matrix gram = mat_.adjoint() * mat_;
    const double deviation =
        (gram - Matrix::Identity(mat_.rows(), mat_.cols())).cwiseAbs().maxCoeff();
    if (deviation > unitary_tol)
        throw DimensionError("matrix is not unitary within tolerance: max|U^+U - 1| = " +
                             std::to_string(deviation));
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
    return UnitaryOperator(Matrix::Identity(dim, dim));
}

EigResult eig_hermitian(const HermitianOperator& a) { return eig_of(a.matrix()); }

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim());
    const EigResult eig = eig_of(rho.matrix() - sigma.matrix());
    const double d = 0.5 * eig.values.cwiseAbs().sum();
    return std::clamp(d, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim());
    const Matrix root = psd_sqrt(rho).matrix();
    const EigResult eig = eig_of(root * sigma.matrix() * root);
    const double noise = spectrum_noise_floor(eig.values);
    double f = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values(i);
        if (v < kTol.psd_floor)
            throw NotPsdError("fidelity kernel eigenvalue " + std::to_string(v) + " below floor");
        if (v > noise) f += std::sqrt(v);
    }
    return std::clamp(f, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

HermitianOperator psd_sqrt(const DensityMatrix& a) {
    const EigResult eig = eig_of(a.matrix());
    const double noise = spectrum_noise_floor(eig.values);
    RealVector roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values(i);
        if (v < kTol.psd_floor)
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(v) + " below floor");
        roots(i) = v > noise ? std::sqrt(v) : 0.0;
    }
    return HermitianOperator(eig.vectors * roots.asDiagonal() * eig.vectors.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                            Subsystem keep) {
    if (dim_a * dim_b != rho.dim())
        throw DimensionError("partial_trace: dim " + std::to_string(rho.dim()) +
                             " does not factor as " + std::to_string(dim_a) + "*" +
                             std::to_string(dim_b));
    const Matrix& m = rho.matrix();
    if (keep == Subsystem::first) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (Eigen::Index a = 0; a < dim_a; ++a)
            for (Eigen::Index a2 = 0; a2 < dim_a; ++a2)
                for (Eigen::Index b = 0; b < dim_b; ++b)
                    out(a, a2) += m(a * dim_b + b, a2 * dim_b + b);
        return DensityMatrix(std::move(out));
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Eigen::Index b = 0; b < dim_b; ++b)
        for (Eigen::Index b2 = 0; b2 < dim_b; ++b2)
            for (Eigen::Index a = 0; a < dim_a; ++a)
                out(b, b2) += m(a * dim_b + b, a * dim_b + b2);
    return DensityMatrix(std::move(out));
}

UnitaryOperator evolve_hermitian(const HermitianOperator& h, double t) {
    return SpectralEvolver(h).at(t);
}

SpectralEvolver::SpectralEvolver(const HermitianOperator& h) : eig_(eig_of(h.matrix())) {}

UnitaryOperator SpectralEvolver::at(double t) const {
    Vector phases(eig_.values.size());
    for (Eigen::Index i = 0; i < eig_.values.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -eig_.values(i) * t));
    return UnitaryOperator(eig_.vectors * phases.asDiagonal() * eig_.vectors.adjoint());
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    if (a.rows() * b.rows() > kTol.dim_cap || a.cols() * b.cols() > kTol.dim_cap)
        throw CapExceededError("tensor product dimension exceeds cap " +
                               std::to_string(kTol.dim_cap));
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

UnitaryOperator tensor_power(const UnitaryOperator& u, int n, std::int64_t dim_cap) {
    if (n < 1) throw DimensionError("tensor_power needs n >= 1");
    double dim = 1.0;
    for (int k = 0; k < n; ++k) {
        dim *= static_cast<double>(u.dim());
        if (dim > static_cast<double>(dim_cap))
            throw CapExceededError("tensor_power dimension exceeds cap " + std::to_string(dim_cap));
    }
    Matrix out = u.matrix();
    for (int k = 1; k < n; ++k) out = tensor(out, u.matrix());
    return UnitaryOperator(std::move(out));
}

UnitaryOperator random_unitary(Eigen::Index dim, Rng& rng) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            // Box-Muller normal pairs from the portable uniform stream.
            const double u1 = std::max(rng.uniform(), 1e-300);
            const double u2 = rng.uniform();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            g(i, j) = Complex(radius * std::cos(2.0 * M_PI * u2), radius * std::sin(2.0 * M_PI * u2));
        }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }
    return UnitaryOperator(std::move(q));
}

DensityMatrix random_density_matrix(Eigen::Index dim, Rng& rng) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

} // namespace duality
