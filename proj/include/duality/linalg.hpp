#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "duality/rng.hpp"

namespace duality {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Every tolerance used by the kernel and the modules above it. Higher-level
/// comparisons reference these fields by name instead of repeating literals.
struct KernelTolerances {
    double hermiticity = 1e-10;
    double trace_one = 1e-10;
    double psd_floor = -1e-10;
    double unitarity = 1e-10;
    double probability_floor = -1e-12;
    double probability_sum = 1e-9;
    double probability_error = 1e-6;
    double amplitude_prune = 1e-14;
    std::int64_t dim_cap = 4096;
};

inline constexpr KernelTolerances kTol{};

/// Dense complex matrix validated Hermitian, stored exactly symmetrized.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix entries, double herm_tol = kTol.hermiticity);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }

  private:
    Matrix mat_;
};

/// Hermitian, positive semidefinite up to the floor, unit trace.
class DensityMatrix : public HermitianOperator {
  public:
    explicit DensityMatrix(Matrix entries, double herm_tol = kTol.hermiticity,
                           double psd_floor = kTol.psd_floor, double trace_tol = kTol.trace_one);

    static DensityMatrix pure(const Vector& state);
};

class UnitaryOperator {
  public:
    explicit UnitaryOperator(Matrix entries, double unitary_tol = kTol.unitarity);

    static UnitaryOperator identity(Eigen::Index dim);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }

  private:
    Matrix mat_;
};

struct EigResult {
    RealVector values; // ascending
    Matrix vectors;    // columns are the eigenvectors
};

EigResult eig_hermitian(const HermitianOperator& a);

/// (1/2) sum |eig(rho - sigma)|, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1]. One code path for all
/// purity combinations: eigendecompose and sum clipped square roots.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double purity(const DensityMatrix& rho);

/// Positive square root; eigenvalues in [psd_floor, 0) are clipped to zero.
HermitianOperator psd_sqrt(const DensityMatrix& a);

enum class Subsystem { first, second };

/// Contract one factor of a bipartite dim_a * dim_b state.
DensityMatrix partial_trace(const DensityMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                            Subsystem keep);

/// exp(-i H t) through the spectral decomposition of H.
UnitaryOperator evolve_hermitian(const HermitianOperator& h, double t);

/// Shares one eigendecomposition across a time sweep.
class SpectralEvolver {
  public:
    explicit SpectralEvolver(const HermitianOperator& h);
    UnitaryOperator at(double t) const;

  private:
    EigResult eig_;
};

Matrix tensor(const Matrix& a, const Matrix& b);

UnitaryOperator tensor_power(const UnitaryOperator& u, int n,
                             std::int64_t dim_cap = kTol.dim_cap);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase-fixed R.
UnitaryOperator random_unitary(Eigen::Index dim, Rng& rng);

/// Random full-rank density matrix (normalized Ginibre Gram matrix).
DensityMatrix random_density_matrix(Eigen::Index dim, Rng& rng);

} // namespace duality
