#include <doctest.h>

#include <cmath>

#include "duality/dynamics.hpp"
#include "duality/errors.hpp"
#include "duality/experiments.hpp"
#include "duality/measures.hpp"
#include "test_util.hpp"

using namespace duality;

namespace {

PreparedState product_state(const ModeOccupation& occ, ParticleKind kind, int m,
                            const std::vector<int>& letters) {
    AmplitudeMap amps;
    amps[letters] = Complex(1.0, 0.0);
    return PreparedState(occ, kind, InternalState::pure(m, std::move(amps)));
}

} // namespace

TEST_SUITE("measures") {

TEST_CASE("probability distributions validate and clip") {
    const ProbDist dist({"a", "b"}, {0.5, 0.5 - 1e-13});
    CHECK(dist[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(ProbDist({"a"}, {0.7}), NonPhysicalError);
    CHECK_THROWS_AS(ProbDist({"a", "b"}, {1.2, -0.2}), NonPhysicalError);
}

TEST_CASE("kolmogorov and bhattacharyya basics") {
    const ProbDist uniform({"a", "b"}, {0.5, 0.5});
    CHECK(kolmogorov(uniform, uniform) == 0.0);
    CHECK(bhattacharyya(uniform, uniform) == doctest::Approx(1.0));

    const ProbDist left({"a", "b"}, {1.0, 0.0});
    const ProbDist right({"a", "b"}, {0.0, 1.0});
    CHECK(kolmogorov(left, right) == doctest::Approx(1.0));
    CHECK(bhattacharyya(left, right) == doctest::Approx(0.0));

    const ProbDist renamed({"b", "a"}, {0.5, 0.5});
    CHECK_THROWS_AS(kolmogorov(uniform, renamed), DimensionError);
}

TEST_CASE("classical FvdG inequality on random distributions") {
    Rng rng(301);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> p(5), q(5);
        double ps = 0, qs = 0;
        for (int i = 0; i < 5; ++i) {
            p[static_cast<std::size_t>(i)] = rng.uniform();
            q[static_cast<std::size_t>(i)] = rng.uniform();
            ps += p[static_cast<std::size_t>(i)];
            qs += q[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < 5; ++i) {
            p[static_cast<std::size_t>(i)] /= ps;
            q[static_cast<std::size_t>(i)] /= qs;
        }
        const ProbDist a({"1", "2", "3", "4", "5"}, p);
        const ProbDist b({"1", "2", "3", "4", "5"}, q);
        CHECK(kolmogorov(a, b) <=
              std::sqrt(1.0 - bhattacharyya(a, b) * bhattacharyya(a, b)) + 1e-9);
    }
}

TEST_CASE("wave measures at the endpoints") {
    const PreparedState distinguishable =
        product_state(ModeOccupation({1, 1, 1}), ParticleKind::boson, 3, {0, 1, 2});
    CHECK(wave_coherence(distinguishable) == doctest::Approx(0.0));
    CHECK(wave_purity(distinguishable) == doctest::Approx(0.0));

    const PreparedState indistinguishable =
        product_state(ModeOccupation({2, 1}), ParticleKind::boson, 2, {0, 0, 0});
    CHECK(wave_coherence(indistinguishable) == doctest::Approx(1.0));
    CHECK(wave_purity(indistinguishable) == doctest::Approx(1.0));
}

TEST_CASE("worked example: equal-modulus coherences give W_C = W_P = 2/3") {
    const PreparedState example = testutil::worked_example_state();
    CHECK(wave_coherence(example) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(wave_purity(example) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("purity route and overlap route agree") {
    Rng rng(303);
    for (int trial = 0; trial < 10; ++trial) {
        const PreparedState state = random_prepared_state(trial * 25 + 10, 300, 3, 3, 3, 3, 41);
        const DensityMatrix rho = reduced_external(state);
        const double r_count = static_cast<double>(state.labeling_count());
        const double from_trace =
            std::sqrt((r_count / (r_count - 1.0)) * (purity(rho) - 1.0 / r_count));
        CHECK(wave_purity(state) == doctest::Approx(from_trace).epsilon(1e-9));
    }
}

TEST_CASE("particle measures at the endpoints") {
    const PreparedState indistinguishable =
        product_state(ModeOccupation({2, 1}), ParticleKind::boson, 2, {0, 0, 0});
    CHECK(particle_trace(indistinguishable) == doctest::Approx(0.0));
    CHECK(particle_fidelity(indistinguishable) == doctest::Approx(0.0));

    const PreparedState distinguishable =
        product_state(ModeOccupation({1, 1, 1}), ParticleKind::boson, 3, {0, 1, 2});
    CHECK(particle_trace(distinguishable) == doctest::Approx(1.0));
    CHECK(particle_fidelity(distinguishable) == doctest::Approx(1.0));
}

TEST_CASE("pure internal states saturate the duality relation") {
    for (int k : {0, 75, 150, 225, 299}) {
        const PreparedState state = random_prepared_state(k, 300, 1, 4, 4, 3, 99);
        const double w_p = wave_purity(state);
        const double p_f = particle_fidelity(state);
        CHECK(std::abs(p_f * p_f + w_p * w_p - 1.0) <= 1e-10);
    }
}

TEST_CASE("hierarchies and complementarity on random mixed states") {
    for (int k : {30, 120, 250}) {
        for (int l : {1, 3, 10}) {
            const PreparedState state = random_prepared_state(k, 300, l, 4, 4, 3, 7);
            const MeasureReport report = measure_report(state);
            CHECK(report.w_c <= report.w_p + 1e-9);
            CHECK(report.p_t <= report.p_f + 1e-9);
            for (double p : {report.p_t, report.p_f})
                for (double w : {report.w_c, report.w_p}) CHECK(p * p + w * w <= 1.0 + 1e-9);

            const Distinguishabilities dist = distinguishability_measures(state);
            for (double d : {dist.d_t, dist.d_f})
                for (double w : {report.w_c, report.w_p}) CHECK(d * d + w * w <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("equal-modulus coherences are exactly the W_C = W_P case") {
    // The HOM family has a single off-diagonal pair, trivially equal modulus.
    for (double r : {0.2, 0.7, 1.0}) {
        const PreparedState state = hom_state(r, 0.0, ParticleKind::boson);
        CHECK(std::abs(wave_coherence(state) - wave_purity(state)) <= 1e-10);
        CHECK(wave_coherence(state) == doctest::Approx(r).epsilon(1e-12));
    }
    // The worked example has six equal-modulus off-diagonals.
    const PreparedState example = testutil::worked_example_state();
    CHECK(std::abs(wave_coherence(example) - wave_purity(example)) <= 1e-10);

    // Conversely, a visible spread in the moduli forces W_C < W_P strictly.
    const PreparedState spread = random_prepared_state(200, 300, 1, 3, 3, 3, 71);
    const Matrix gram = overlap_matrix(spread);
    double lo = 1.0, hi = 0.0;
    for (Eigen::Index a = 0; a < gram.rows(); ++a)
        for (Eigen::Index b = a + 1; b < gram.cols(); ++b) {
            lo = std::min(lo, std::abs(gram(a, b)));
            hi = std::max(hi, std::abs(gram(a, b)));
        }
    REQUIRE(hi - lo > 1e-3);
    CHECK(wave_purity(spread) - wave_coherence(spread) > 1e-8);
}

TEST_CASE("classical particle measures from permuted-input statistics") {
    const ProbDist a({"x", "y"}, {0.5, 0.5});
    CHECK(classical_particle_measures({a, a}).p_t == doctest::Approx(0.0));
    CHECK(classical_particle_measures({a, a}).p_f == doctest::Approx(0.0));

    const ProbDist left({"x", "y"}, {1.0, 0.0});
    const ProbDist right({"x", "y"}, {0.0, 1.0});
    CHECK(classical_particle_measures({left, right}).p_t == doctest::Approx(1.0));
    CHECK(classical_particle_measures({left, right}).p_f == doctest::Approx(1.0));
}

TEST_CASE("indistinguishable particles are permutation blind for any experiment") {
    const PreparedState state =
        product_state(ModeOccupation({2, 1}), ParticleKind::boson, 2, {0, 0, 0});
    Rng rng(307);
    const UnitaryOperator evolution = random_unitary(8, rng);
    const Povm povm = povm_occupation(2, 3);
    const Transversal sigma = right_transversal(state.occupation());

    std::vector<ProbDist> stats;
    for (const auto& kappa : sigma.reps)
        stats.push_back(measure(reduced_external(state.with_preparation(kappa)), evolution, povm));
    const ClassicalParticleMeasures classical = classical_particle_measures(stats);
    CHECK(classical.p_t <= 1e-10);
    CHECK(classical.p_f <= 1e-9);
}

TEST_CASE("classical measures are bounded by their quantum counterparts") {
    Rng rng(311);
    for (int trial = 0; trial < 5; ++trial) {
        const PreparedState state = random_prepared_state(90 + trial * 40, 300, 2, 3, 3, 3, 13);
        const MeasureReport report = measure_report(state);
        const Transversal sigma = right_transversal(state.occupation());
        const UnitaryOperator evolution = random_unitary(27, rng);
        const Povm povm = povm_occupation(3, 3);

        std::vector<ProbDist> stats;
        for (const auto& kappa : sigma.reps)
            stats.push_back(
                measure(reduced_external(state.with_preparation(kappa)), evolution, povm));
        const ClassicalParticleMeasures classical = classical_particle_measures(stats);

        CHECK(classical.p_t <= classical.p_f + 1e-9);
        CHECK(classical.p_t <= report.p_t + 1e-9);
        CHECK(classical.p_f <= report.p_f + 1e-9);

        // Per-pair bound by the coherence magnitude.
        const Matrix gram = overlap_matrix(state);
        const double r_count = static_cast<double>(sigma.size());
        for (std::size_t a = 0; a < stats.size(); ++a)
            for (std::size_t b = a + 1; b < stats.size(); ++b) {
                const double f = bhattacharyya(stats[a], stats[b]);
                const double coherence =
                    std::abs(gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) /
                    r_count;
                CHECK(std::sqrt(std::max(0.0, 1.0 - f * f)) <=
                      std::sqrt(std::max(0.0, 1.0 - r_count * r_count * coherence * coherence)) +
                          1e-9);
            }
    }
}

TEST_CASE("distinguishability measures reproduce the HOM closed forms") {
    const DensityMatrix rho_dist = hom_external(0.0, 0.0);
    for (double r : {0.0, 0.3, 0.8, 1.0}) {
        const Distinguishabilities dist =
            distinguishability_from_states(rho_dist, hom_external(r, 0.0), 2);
        CHECK(dist.d_t == doctest::Approx(1.0 - r).epsilon(1e-10));
        CHECK(dist.d_f == doctest::Approx(std::sqrt(1.0 - r * r)).epsilon(1e-10));
    }
}

TEST_CASE("indistinguishable states have vanishing distinguishability") {
    const PreparedState state =
        product_state(ModeOccupation({2, 2}), ParticleKind::boson, 2, {0, 0, 0, 0});
    const Distinguishabilities dist = distinguishability_measures(state);
    CHECK(dist.d_t <= 1e-9);
    CHECK(dist.d_f <= 1e-9);
}

TEST_CASE("visibilities vanish when nothing changes and follow HOM closed forms") {
    const ProbDist base({"a", "b"}, {0.25, 0.75});
    const InterferenceVisibilities zero = visibilities(base, base, 2);
    CHECK(zero.v_t == 0.0);
    CHECK(zero.v_f == doctest::Approx(0.0));

    const UnitaryOperator evolution = lift_single_particle(beam_splitter(), 2);
    const Povm povm = povm_occupation(2, 2);
    const ProbDist stats_dist = measure(hom_external(0.0, 0.0), evolution, povm);
    for (double r : {0.4, 1.0}) {
        for (double theta : {0.0, M_PI / 3.0, M_PI}) {
            const ProbDist stats = measure(hom_external(r, theta), evolution, povm);
            const InterferenceVisibilities vis = visibilities(stats_dist, stats, 2);
            CHECK(vis.v_t == doctest::Approx(r * std::abs(std::cos(theta))).epsilon(1e-10));
            CHECK(vis.v_f ==
                  doctest::Approx(1.0 - std::sqrt(1.0 - r * r * std::cos(theta) * std::cos(theta)))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("lambda endpoints and the worked example value") {
    const PreparedState indistinguishable =
        product_state(ModeOccupation({2, 1}), ParticleKind::boson, 2, {0, 0, 0});
    CHECK(ideal_fidelity_lambda(indistinguishable) == doctest::Approx(1.0));

    const PreparedState distinguishable =
        product_state(ModeOccupation({1, 1, 1}), ParticleKind::boson, 3, {0, 1, 2});
    CHECK(ideal_fidelity_lambda(distinguishable) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK(ideal_fidelity_lambda(testutil::worked_example_state()) ==
          doctest::Approx(7.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("lambda equals the ideal-state expectation and completes the trace distance") {
    Rng rng(313);
    for (const ParticleKind kind : {ParticleKind::boson, ParticleKind::fermion}) {
        for (int trial = 0; trial < 5; ++trial) {
            const PreparedState state =
                random_prepared_state(40 + 60 * trial, 300, 2, 3, 3, 3, 55, kind);
            const double lambda = ideal_fidelity_lambda(state);
            const DensityMatrix rho = reduced_external(state);
            const Vector psi = ideal_external_vector(state.occupation(), kind);
            CHECK(std::abs((psi.adjoint() * rho.matrix() * psi).value().real() - lambda) <= 1e-12);
            CHECK(std::abs(trace_distance(ideal_external(state.occupation(), kind), rho) + lambda -
                           1.0) <= 1e-10);
            CHECK(std::abs(fidelity(ideal_external(state.occupation(), kind), rho) -
                           std::sqrt(lambda)) <= 1e-9);
        }
    }
    AmplitudeMap singlet;
    singlet[{0, 1}] = 1.0 / std::sqrt(2.0);
    singlet[{1, 0}] = -1.0 / std::sqrt(2.0);
    const PreparedState paired(ModeOccupation({2, 0}), ParticleKind::fermion,
                               InternalState::pure(2, std::move(singlet)));
    CHECK_THROWS_AS(ideal_fidelity_lambda(paired), PauliError);
}

TEST_CASE("single labeling is degenerate for normalized measures") {
    const PreparedState state = product_state(ModeOccupation({3}), ParticleKind::boson, 2, {0, 0, 0});
    CHECK_THROWS_AS(wave_coherence(state), DegenerateError);
    CHECK_THROWS_AS(particle_trace(state), DegenerateError);
    CHECK_THROWS_AS(distinguishability_measures(state), DegenerateError);
}

} // TEST_SUITE
