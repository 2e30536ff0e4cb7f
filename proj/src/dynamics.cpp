#include "duality/dynamics.hpp"

#include <cmath>

#include "duality/errors.hpp"

namespace duality {

namespace {

std::int64_t checked_power(std::int64_t base, int exponent, std::int64_t cap, const char* what) {
    std::int64_t dim = 1;
    for (int k = 0; k < exponent; ++k) {
        dim *= base;
        if (dim > cap) throw CapExceededError(std::string(what) + " exceeds cap " + std::to_string(cap));
    }
    return dim;
}

} // namespace

Povm::Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw DimensionError("POVM needs at least one effect");
    const Eigen::Index dim = effects_.front().second.dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& [label, effect] : effects_) {
        if (effect.dim() != dim) throw DimensionError("POVM effects have mixed dimensions");
        const EigResult eig = eig_hermitian(effect);
        if (eig.values(0) < kTol.psd_floor)
            throw NotPsdError("POVM effect '" + label + "' has eigenvalue " +
                              std::to_string(eig.values(0)));
        sum += effect.matrix();
    }
    const double deviation = (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (deviation > kTol.probability_sum)
        throw NonPhysicalError("POVM effects sum away from identity by " +
                               std::to_string(deviation));
}

UnitaryOperator beam_splitter() {
    Matrix u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u << s, s, s, -s;
    return UnitaryOperator(std::move(u));
}

UnitaryOperator lift_single_particle(const UnitaryOperator& u, int n_particles,
                                     std::int64_t dim_cap) {
    return tensor_power(u, n_particles, dim_cap);
}

double BoseHubbardParams::tilt() const {
    if (site_energies.size() < 2) return 0.0;
    return site_energies[1] - site_energies[0];
}

HermitianOperator bose_hubbard_hamiltonian(const BoseHubbardParams& params, std::int64_t dim_cap) {
    const int n = params.n_sites;
    const int N = params.n_particles;
    if (n < 1 || N < 1) throw DimensionError("Bose-Hubbard needs n_sites, n_particles >= 1");
    if (!params.site_energies.empty() && static_cast<int>(params.site_energies.size()) != n)
        throw DimensionError("site_energies size must match n_sites");
    const std::int64_t dim = checked_power(n, N, dim_cap, "Hamiltonian dimension n^N");

    std::vector<double> omegas = params.site_energies;
    if (omegas.empty()) omegas.assign(static_cast<std::size_t>(n), 0.0);

    Matrix h = Matrix::Zero(dim, dim);

    // Assignment of each basis index, recovered digit by digit (row-major).
    std::vector<int> modes(static_cast<std::size_t>(N));
    for (std::int64_t index = 0; index < dim; ++index) {
        std::int64_t rest = index;
        for (int slot = N - 1; slot >= 0; --slot) {
            modes[static_cast<std::size_t>(slot)] = static_cast<int>(rest % n);
            rest /= n;
        }

        // Diagonal: tilt plus pairwise on-site interaction.
        double diag = 0.0;
        for (int slot = 0; slot < N; ++slot) diag += omegas[static_cast<std::size_t>(modes[static_cast<std::size_t>(slot)])];
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (modes[static_cast<std::size_t>(a)] == modes[static_cast<std::size_t>(b)])
                    diag += params.interaction;
        h(index, index) += diag;

        // Hopping: |j><k|_alpha for each neighbor pair, both directions.
        for (int slot = 0; slot < N; ++slot) {
            const int site = modes[static_cast<std::size_t>(slot)];
            std::int64_t stride = 1;
            for (int s = N - 1; s > slot; --s) stride *= n;
            if (site + 1 < n) {
                const std::int64_t neighbor = index + stride;
                h(neighbor, index) += -params.hopping;
                h(index, neighbor) += -params.hopping;
            }
        }
    }
    return HermitianOperator(std::move(h));
}

Povm povm_occupation(int n_modes, int n_particles, const EnumerationLimits& limits,
                     std::int64_t dim_cap) {
    const std::int64_t dim = checked_power(n_modes, n_particles, dim_cap, "POVM dimension n^N");
    const std::vector<ModeOccupation> occupations = enumerate_occupations(n_modes, n_particles, limits);

    std::vector<Matrix> projectors(occupations.size(), Matrix::Zero(dim, dim));
    std::vector<int> modes(static_cast<std::size_t>(n_particles));
    for (std::int64_t index = 0; index < dim; ++index) {
        std::int64_t rest = index;
        for (int slot = n_particles - 1; slot >= 0; --slot) {
            modes[static_cast<std::size_t>(slot)] = static_cast<int>(rest % n_modes);
            rest /= n_modes;
        }
        const ModeOccupation occ = ModeAssignment(modes).occupation(n_modes);
        for (std::size_t s = 0; s < occupations.size(); ++s)
            if (occupations[s] == occ) {
                projectors[s](index, index) = 1.0;
                break;
            }
    }

    std::vector<Povm::Effect> effects;
    effects.reserve(occupations.size());
    for (std::size_t s = 0; s < occupations.size(); ++s)
        effects.emplace_back(occupations[s].to_string(), HermitianOperator(std::move(projectors[s])));
    return Povm(std::move(effects));
}

Povm povm_kpoint(int n_particles, int order, std::int64_t dim_cap) {
    if (order < 1 || order > 4) throw DimensionError("k-point order must be in 1..4");
    if (n_particles < order) throw DimensionError("k-point order exceeds particle number");
    const int n_modes = 2;
    const std::int64_t dim = checked_power(n_modes, n_particles, dim_cap, "POVM dimension 2^N");

    // Densities are diagonal: entry = (count of site j in the assignment) / N.
    Eigen::VectorXd density1(dim);
    for (std::int64_t index = 0; index < dim; ++index) {
        std::int64_t rest = index;
        int ones = 0;
        for (int slot = 0; slot < n_particles; ++slot) {
            ones += static_cast<int>(rest % 2);
            rest /= 2;
        }
        density1(index) = static_cast<double>(n_particles - ones) / n_particles;
    }
    const Eigen::VectorXd density2 = Eigen::VectorXd::Ones(dim) - density1;

    auto effect = [&](const std::string& label, double coeff, int pow1, int pow2) {
        Eigen::VectorXd diag = coeff * Eigen::VectorXd::Ones(dim);
        for (int k = 0; k < pow1; ++k) diag = diag.cwiseProduct(density1);
        for (int k = 0; k < pow2; ++k) diag = diag.cwiseProduct(density2);
        return Povm::Effect{label, HermitianOperator(diag.cast<Complex>().asDiagonal())};
    };

    std::vector<Povm::Effect> effects;
    switch (order) {
        case 1:
            effects.push_back(effect("M1", 1.0, 1, 0));
            effects.push_back(effect("M2", 1.0, 0, 1));
            break;
        case 2:
            effects.push_back(effect("M1^2", 1.0, 2, 0));
            effects.push_back(effect("M2^2", 1.0, 0, 2));
            effects.push_back(effect("2*M1*M2", 2.0, 1, 1));
            break;
        case 3:
            effects.push_back(effect("M1^3", 1.0, 3, 0));
            effects.push_back(effect("M2^3", 1.0, 0, 3));
            effects.push_back(effect("3*M1*M2^2", 3.0, 1, 2));
            effects.push_back(effect("3*M1^2*M2", 3.0, 2, 1));
            break;
        case 4:
            effects.push_back(effect("M1^4", 1.0, 4, 0));
            effects.push_back(effect("M2^4", 1.0, 0, 4));
            effects.push_back(effect("4*M1*M2^3", 4.0, 1, 3));
            effects.push_back(effect("4*M1^3*M2", 4.0, 3, 1));
            effects.push_back(effect("6*M1^2*M2^2", 6.0, 2, 2));
            break;
    }
    return Povm(std::move(effects));
}

Povm povm_helstrom(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    if (rho_a.dim() != rho_b.dim()) throw DimensionError("Helstrom states have different dims");
    const EigResult eig = eig_hermitian(HermitianOperator(rho_a.matrix() - rho_b.matrix()));
    Matrix plus = Matrix::Zero(rho_a.dim(), rho_a.dim());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) >= 0.0) // zero modes land in the first effect
            plus += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    Matrix minus = Matrix::Identity(rho_a.dim(), rho_a.dim()) - plus;
    std::vector<Povm::Effect> effects;
    effects.emplace_back("plus", HermitianOperator(std::move(plus)));
    effects.emplace_back("minus", HermitianOperator(std::move(minus)));
    return Povm(std::move(effects));
}

ProbDist measure(const DensityMatrix& rho, const UnitaryOperator& u, const Povm& povm) {
    if (rho.dim() != u.dim()) throw DimensionError("state and unitary dims differ");
    const Matrix evolved = u.matrix() * rho.matrix() * u.matrix().adjoint();
    if (povm.size() == 0 || povm[0].second.dim() != rho.dim())
        throw DimensionError("POVM dimension does not match the state");

    std::vector<std::string> labels;
    std::vector<double> probs;
    labels.reserve(povm.size());
    probs.reserve(povm.size());
    double sum = 0.0;
    for (const auto& [label, effect] : povm.effects()) {
        const double p = (effect.matrix() * evolved).trace().real();
        labels.push_back(label);
        probs.push_back(p);
        sum += p;
    }
    const double drift = std::abs(sum - 1.0);
    if (drift > kTol.probability_error)
        throw NonPhysicalError("outcome probabilities sum to " + std::to_string(sum));
    for (double& p : probs) {
        if (p < kTol.probability_floor) throw NonPhysicalError("negative outcome probability");
        p = std::max(p, 0.0) / sum;
    }
    return ProbDist(std::move(labels), std::move(probs));
}

ProbDist measure(const DensityMatrix& rho, const Povm& povm) {
    return measure(rho, UnitaryOperator::identity(rho.dim()), povm);
}

InterferenceTerm interference_decomposition(const PreparedState& state, const UnitaryOperator& u,
                                            const HermitianOperator& effect) {
    const ModeOccupation& occ = state.occupation();
    const DensityMatrix rho_dist = distinguishable_external(occ, state.kind());
    if (rho_dist.dim() != u.dim() || effect.dim() != u.dim())
        throw DimensionError("dimension mismatch in interference decomposition");

    InterferenceTerm out;
    out.distinguishable =
        (effect.matrix() * u.matrix() * rho_dist.matrix() * u.matrix().adjoint()).trace().real();

    const Transversal sigma = right_transversal(occ);
    const Matrix gram = overlap_matrix(state, sigma);
    const ModeAssignment canonical = canonical_assignment(occ);
    const Matrix heisenberg = u.matrix().adjoint() * effect.matrix() * u.matrix();
    const double inv_r = 1.0 / static_cast<double>(sigma.size());

    std::vector<Eigen::Index> basis_index(sigma.reps.size());
    for (std::size_t a = 0; a < sigma.reps.size(); ++a)
        basis_index[a] = static_cast<Eigen::Index>(
            ModeAssignment(sigma.reps[a].apply(canonical.modes())).basis_index(occ.mode_count()));

    Complex interference(0.0, 0.0);
    for (std::size_t a = 0; a < sigma.reps.size(); ++a)
        for (std::size_t b = 0; b < sigma.reps.size(); ++b) {
            if (a == b) continue;
            const Complex rho_ab =
                exchange_sign(state.kind(), sigma.reps[a]) *
                exchange_sign(state.kind(), sigma.reps[b]) * inv_r *
                gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            interference += rho_ab * heisenberg(basis_index[b], basis_index[a]);
        }
    if (std::abs(interference.imag()) > 1e-9)
        throw InvariantViolationError("interference term has imaginary part " +
                                      std::to_string(interference.imag()));
    out.interference = interference.real();
    return out;
}

} // namespace duality
