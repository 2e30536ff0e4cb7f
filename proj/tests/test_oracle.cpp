#include <doctest.h>

#include <cmath>

#include "duality/dynamics.hpp"
#include "duality/errors.hpp"
#include "duality/measures.hpp"
#include "duality/states.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace duality;
using oracle::brute_force_joint;
using oracle::oracle_reduced;

namespace {

std::size_t joint_index(const std::vector<int>& ext, const std::vector<int>& letters, int n, int m) {
    std::size_t ext_index = 0;
    for (int v : ext) ext_index = ext_index * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    std::size_t int_index = 0;
    for (int v : letters) int_index = int_index * static_cast<std::size_t>(m) + static_cast<std::size_t>(v);
    std::size_t int_dim = 1;
    for (std::size_t k = 0; k < letters.size(); ++k) int_dim *= static_cast<std::size_t>(m);
    return ext_index * int_dim + int_index;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("worked example expands into the nine listed kets with weight 1/3") {
    const PreparedState state = testutil::worked_example_state();
    const oracle::JointState joint = brute_force_joint(state);

    // Rank-one state: recover the vector from the top eigenpair.
    const EigResult eig = eig_hermitian(joint.rho);
    const Eigen::Index top = eig.values.size() - 1;
    CHECK(eig.values(top) == doctest::Approx(1.0).epsilon(1e-12));
    const Vector psi = eig.vectors.col(top);

    const std::vector<std::pair<std::vector<int>, std::vector<int>>> kets = {
        {{0, 0, 1}, {0, 0, 0}}, {{0, 0, 1}, {0, 1, 1}}, {{0, 0, 1}, {1, 0, 1}},
        {{1, 0, 0}, {0, 0, 0}}, {{1, 0, 0}, {1, 1, 0}}, {{1, 0, 0}, {1, 0, 1}},
        {{0, 1, 0}, {0, 0, 0}}, {{0, 1, 0}, {0, 1, 1}}, {{0, 1, 0}, {1, 1, 0}},
    };
    double support_mass = 0.0;
    for (const auto& [ext, letters] : kets) {
        const double amp = std::abs(psi(static_cast<Eigen::Index>(joint_index(ext, letters, 2, 2))));
        CHECK(amp == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        support_mass += amp * amp;
    }
    CHECK(support_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two indistinguishable bosons factorize") {
    AmplitudeMap amps;
    amps[{0, 0}] = Complex(1.0, 0.0);
    const PreparedState state(ModeOccupation({1, 1}), ParticleKind::boson,
                              InternalState::pure(2, std::move(amps)));
    const oracle::JointState joint = brute_force_joint(state);

    Vector expected = Vector::Zero(16);
    // (|1,2> + |2,1>)/sqrt(2) (x) |a,a>
    expected(static_cast<Eigen::Index>(joint_index({0, 1}, {0, 0}, 2, 2))) = 1.0 / std::sqrt(2.0);
    expected(static_cast<Eigen::Index>(joint_index({1, 0}, {0, 0}, 2, 2))) = 1.0 / std::sqrt(2.0);
    CHECK((joint.rho.matrix() - expected * expected.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Pauli-violating fermion input is rejected before the oracle runs") {
    AmplitudeMap amps;
    amps[{0, 0}] = Complex(1.0, 0.0);
    const InternalState same_letter = InternalState::pure(2, std::move(amps));
    CHECK_THROWS_AS(PreparedState(ModeOccupation({2, 0}), ParticleKind::fermion, same_letter),
                    StateValidationError);
}

TEST_CASE("reduced states match the overlap construction across a case matrix") {
    Rng rng(211);
    int checked = 0;
    for (const ParticleKind kind : {ParticleKind::boson, ParticleKind::fermion}) {
        for (const auto& counts :
             {std::vector<int>{2, 1}, std::vector<int>{1, 1}, std::vector<int>{1, 1, 1},
              std::vector<int>{2, 0}, std::vector<int>{3}, std::vector<int>{2, 2}}) {
            const ModeOccupation occ(counts);
            if (kind == ParticleKind::fermion) {
                // Skip cases the exclusion principle forbids outright (m = 2).
                bool feasible = true;
                for (int mode = 0; mode < occ.mode_count(); ++mode)
                    if (occ[mode] > 2) feasible = false;
                if (!feasible) continue;
            }
            for (int components : {1, 2}) {
                const PreparedState state =
                    testutil::random_symmetrized_state(occ, kind, 2, components, rng);
                const oracle::JointState joint = brute_force_joint(state);

                const Matrix via_overlaps = reduced_external(state).matrix();
                const Matrix via_trace = oracle_reduced(joint, Subsystem::first).matrix();
                CHECK((via_overlaps - via_trace).norm() <= 1e-10);

                const Transversal sigma = right_transversal(occ);
                Matrix mixture = Matrix::Zero(via_overlaps.rows(), via_overlaps.cols());
                Matrix internal_mix;
                bool first = true;
                for (const auto& mu : sigma.reps) {
                    const Matrix labeled = reduced_internal_labeled(state, mu).matrix();
                    if (first) {
                        internal_mix = labeled;
                        first = false;
                    } else {
                        internal_mix += labeled;
                    }
                }
                internal_mix /= static_cast<double>(sigma.size());
                const Matrix internal_trace = oracle_reduced(joint, Subsystem::second).matrix();
                CHECK((internal_mix - internal_trace).norm() <= 1e-10);
                ++checked;
            }
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("permuted common states discriminate exactly like the internal states") {
    Rng rng(223);
    for (const ParticleKind kind : {ParticleKind::boson, ParticleKind::fermion}) {
        const ModeOccupation occ({2, 1});
        const PreparedState state = testutil::random_symmetrized_state(occ, kind, 2, 2, rng);
        const Transversal sigma = right_transversal(occ);
        for (std::size_t a = 0; a < sigma.reps.size(); ++a)
            for (std::size_t b = a + 1; b < sigma.reps.size(); ++b) {
                const auto& kappa = sigma.reps[a];
                const auto& tau = sigma.reps[b];
                const DensityMatrix joint_kappa =
                    brute_force_joint(state.with_preparation(kappa)).rho;
                const DensityMatrix joint_tau = brute_force_joint(state.with_preparation(tau)).rho;
                const DensityMatrix internal_kappa = reduced_internal_labeled(state, kappa);
                const DensityMatrix internal_tau = reduced_internal_labeled(state, tau);

                CHECK(std::abs(trace_distance(joint_kappa, joint_tau) -
                               trace_distance(internal_kappa, internal_tau)) <= 1e-9);
                CHECK(std::abs(fidelity(joint_kappa, joint_tau) -
                               fidelity(internal_kappa, internal_tau)) <= 1e-9);
            }
    }
}

TEST_CASE("subscript composition convention is locked by the matrix representation") {
    const PreparedState example = testutil::worked_example_state();
    const Permutation kappa = Permutation::from_cycles("(13)", 3);
    const Permutation mu = Permutation::from_cycles("(123)", 3);

    // Sequential tuple permutation equals the composed subscript.
    const InternalState sequential =
        permute_internal(permute_internal(example.internal(), kappa), mu);
    const InternalState composed = permute_internal(example.internal(), compose(kappa, mu));
    CHECK(sequential.components()[0].amps == composed.components()[0].amps);

    // And both equal the action of the dense permutation operator Pi_mu.
    const int m = 2;
    const InternalState kappa_moved = permute_internal(example.internal(), kappa);
    Vector omega_kappa = Vector::Zero(8);
    for (const auto& [tuple, amp] : kappa_moved.components()[0].amps) {
        std::size_t index = 0;
        for (int v : tuple) index = index * m + static_cast<std::size_t>(v);
        omega_kappa(static_cast<Eigen::Index>(index)) = amp;
    }
    Vector omega_seq = Vector::Zero(8);
    for (const auto& [tuple, amp] : sequential.components()[0].amps) {
        std::size_t index = 0;
        for (int v : tuple) index = index * m + static_cast<std::size_t>(v);
        omega_seq(static_cast<Eigen::Index>(index)) = amp;
    }
    CHECK((oracle::slot_permutation_matrix(mu, m) * omega_kappa - omega_seq).norm() <= 1e-14);
}

TEST_CASE("permanent oracle reproduces the HOM endpoints") {
    const UnitaryOperator splitter = beam_splitter();
    const ModeOccupation in({1, 1});

    Vector a(2), b(2);
    a << 1.0, 0.0;
    b << 1.0, 0.0;
    CHECK(oracle::second_quantized_probability(splitter, in, {a, b}, ModeOccupation({1, 1})) ==
          doctest::Approx(0.0).epsilon(1e-12));

    Vector orthogonal(2);
    orthogonal << 0.0, 1.0;
    CHECK(oracle::second_quantized_probability(splitter, in, {a, orthogonal},
                                               ModeOccupation({1, 1})) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("permanent oracle gives multinomial statistics for distinguishable particles") {
    // 3-mode Fourier unitary, |u_jk| = 1/sqrt(3): three distinguishable
    // particles scatter like classical balls with p = 1/27 per assignment.
    Matrix fourier(3, 3);
    const Complex w = std::exp(Complex(0.0, 2.0 * M_PI / 3.0));
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) fourier(j, k) = std::pow(w, j * k) / std::sqrt(3.0);
    const UnitaryOperator u{std::move(fourier)};

    std::vector<Vector> letters;
    for (int k = 0; k < 3; ++k) {
        Vector v = Vector::Zero(3);
        v(k) = 1.0;
        letters.push_back(v);
    }
    const ModeOccupation in({1, 1, 1});
    // Exhaustive path sum: p(S) = multinomial(S) / 27.
    CHECK(oracle::second_quantized_probability(u, in, letters, ModeOccupation({3, 0, 0})) ==
          doctest::Approx(1.0 / 27.0).epsilon(1e-10));
    CHECK(oracle::second_quantized_probability(u, in, letters, ModeOccupation({2, 1, 0})) ==
          doctest::Approx(3.0 / 27.0).epsilon(1e-10));
    CHECK(oracle::second_quantized_probability(u, in, letters, ModeOccupation({1, 1, 1})) ==
          doctest::Approx(6.0 / 27.0).epsilon(1e-10));
}

TEST_CASE("permanent probabilities are normalized over all outcomes") {
    Rng rng(229);
    const UnitaryOperator u = random_unitary(3, rng);
    std::vector<Vector> letters;
    for (int k = 0; k < 3; ++k) {
        Vector v(2);
        v << Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        v.normalize();
        letters.push_back(v);
    }
    const ModeOccupation in({2, 1, 0});
    double total = 0.0;
    for (const auto& out : enumerate_occupations(3, 3))
        total += oracle::second_quantized_probability(u, in, letters, out);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("first-quantized Bose-Hubbard matches the second-quantized builder") {
    BoseHubbardParams params;
    params.n_sites = 2;
    params.n_particles = 4;
    params.hopping = 1.0;
    params.interaction = 2.5;
    params.site_energies = {0.0, 0.7};

    const HermitianOperator h_first = bose_hubbard_hamiltonian(params);
    const oracle::OccupationBasisOperator h_second = oracle::second_quantized_bose_hubbard(params);
    const Matrix embedding = oracle::symmetric_embedding(params.n_sites, params.n_particles);

    // The embedding is an isometry onto the symmetric subspace.
    CHECK((embedding.adjoint() * embedding -
           Matrix::Identity(static_cast<Eigen::Index>(h_second.basis.size()),
                            static_cast<Eigen::Index>(h_second.basis.size())))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    const Matrix projected = embedding.adjoint() * h_first.matrix() * embedding;
    CHECK((projected - h_second.matrix).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("three-site chain hopping matches the second-quantized builder") {
    BoseHubbardParams params;
    params.n_sites = 3;
    params.n_particles = 2;
    params.hopping = 0.8;
    params.interaction = 1.3;
    params.site_energies = {0.1, 0.0, -0.4};

    const Matrix embedding = oracle::symmetric_embedding(params.n_sites, params.n_particles);
    const Matrix projected =
        embedding.adjoint() * bose_hubbard_hamiltonian(params).matrix() * embedding;
    CHECK((projected - oracle::second_quantized_bose_hubbard(params).matrix)
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
}

TEST_CASE("joint construction respects the oracle cap") {
    const PreparedState state = testutil::worked_example_state();
    CHECK_THROWS_AS(brute_force_joint(state, 32), CapExceededError);
}

} // TEST_SUITE
