#include <doctest.h>

#include <cmath>
#include <sstream>

#include "duality/errors.hpp"
#include "duality/experiments.hpp"
#include "test_util.hpp"

using namespace duality;

TEST_SUITE("experiments") {

TEST_CASE("hom grid rows match the closed forms everywhere") {
    HomConfig config;
    config.r_grid = linspace(0.0, 1.0, 6);
    config.theta_grid = linspace(0.0, 2.0 * M_PI, 9);
    const auto rows = run_hom(config);
    REQUIRE(rows.size() == 54);
    for (const auto& row : rows) {
        CHECK(row.resid_prob <= 1e-12);
        CHECK(row.resid_measure <= 1e-10);
        CHECK(row.d_t + row.v_t <= 1.0 + 1e-9);
        CHECK(row.d_f + row.v_f <= 1.0 + 1e-9);
    }
}

TEST_CASE("hom endpoints carry the textbook values") {
    HomConfig config;
    config.r_grid = {1.0, 0.0};
    config.theta_grid = {0.0, M_PI};
    const auto rows = run_hom(config);
    // (r=1, theta=0): ideal bosons, dip and full visibility.
    CHECK(rows[0].p11 == doctest::Approx(0.0));
    CHECK(rows[0].v_t == doctest::Approx(1.0));
    CHECK(rows[0].d_t == doctest::Approx(0.0));
    // (r=1, theta=pi): the fermionic product state, coincidences certain.
    CHECK(rows[1].p11 == doctest::Approx(1.0));
    // (r=0): distinguishable statistics.
    CHECK(rows[2].p11 == doctest::Approx(0.5));
    CHECK(rows[2].v_t == doctest::Approx(0.0));
    CHECK(rows[2].d_t == doctest::Approx(1.0));
}

TEST_CASE("hom internal realizations cover both kinds at real overlap") {
    for (const ParticleKind kind : {ParticleKind::boson, ParticleKind::fermion}) {
        for (double r : {0.0, 0.4, 1.0}) {
            for (double theta : {0.0, M_PI}) {
                const PreparedState state = hom_state(r, theta, kind);
                const DensityMatrix expected = hom_external(r, theta);
                CHECK((reduced_external(state).matrix() - expected.matrix()).norm() <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(hom_state(0.8, 1.0, ParticleKind::boson), DimensionError);
}

TEST_CASE("bose-hubbard internal state interpolates the advertised coefficients") {
    const InternalState omega = bose_hubbard_internal(0.5);
    const AmplitudeMap& amps = omega.components()[0].amps;
    CHECK(std::abs(amps.at({0, 0, 0, 0}) - Complex(0.25, 0.0)) <= 1e-15);
    CHECK(std::abs(amps.at({0, 0, 1, 0}) - Complex(0.5 * std::sqrt(0.75), 0.0)) <= 1e-15);
    CHECK(std::abs(amps.at({0, 0, 0, 1}) - Complex(0.5 * std::sqrt(0.75), 0.0)) <= 1e-15);
    CHECK(std::abs(amps.at({0, 0, 1, 1}) - Complex(0.75, 0.0)) <= 1e-15);

    // gamma endpoints: indistinguishable vs mode-wise orthogonal letters.
    const PreparedState top(ModeOccupation({2, 2}), ParticleKind::boson,
                            bose_hubbard_internal(1.0));
    CHECK(wave_purity(top) == doctest::Approx(1.0));
    const PreparedState bottom(ModeOccupation({2, 2}), ParticleKind::boson,
                               bose_hubbard_internal(0.0));
    CHECK(wave_purity(bottom) == doctest::Approx(0.0));
}

TEST_CASE("bose-hubbard rows respect the distinguishability bound") {
    BoseHubbardConfig config;
    config.gamma_grid = {0.0, 0.5, 1.0};
    config.t_grid = linspace(0.0, 4.0, 9);
    config.u_over_j_grid = {0.0, 2.0};
    const auto rows = run_bose_hubbard(config, 2);
    REQUIRE(rows.size() == 3 * 9 * 2 * 5);
    for (const auto& row : rows) {
        CHECK(row.v_t <= row.bound + 1e-9);
        CHECK(row.v_f <= row.bound + 1e-9);
        if (row.gamma == 0.0) CHECK(row.v_t <= 1e-9); // distinguishable input
    }
    // gamma = 1 is indistinguishable: bound 1.
    for (const auto& row : rows)
        if (row.gamma == 1.0) CHECK(row.bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the visibility bound is monotone in gamma") {
    BoseHubbardConfig config;
    config.gamma_grid = linspace(0.0, 1.0, 11);
    config.t_grid = {1.0};
    config.u_over_j_grid = {1.0};
    config.povms = {"occupation"};
    const auto rows = run_bose_hubbard(config);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].bound + 1e-12 >= rows[i - 1].bound);
}

TEST_CASE("random sweep rows obey complementarity and rerun identically") {
    RandomSweepConfig config;
    config.count = 12;
    config.l_values = {1, 3};
    config.seed = 99;
    const auto rows = run_random_sweep(config, 3);
    REQUIRE(rows.size() == 24);
    for (const auto& row : rows) {
        for (double p2 : {row.p_t2, row.p_f2})
            for (double w2 : {row.w_c2, row.w_p2}) CHECK(p2 + w2 <= 1.0 + 1e-9);
        if (row.l == 1) CHECK(std::abs(row.p_f2 + row.w_p2 - 1.0) <= 1e-9);
    }

    const auto rerun = run_random_sweep(config, 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].w_c2 == rerun[i].w_c2);
        CHECK(rows[i].p_f2 == rerun[i].p_f2);
    }
}

TEST_CASE("csv and json writers agree to full precision and are stable") {
    RandomSweepConfig config;
    config.count = 4;
    config.l_values = {1};
    config.seed = 5;
    const Table table = to_table(run_random_sweep(config));
    RunMeta meta{"random_sweep", 5, "cafe", "1970-01-01T00:00:00Z"};

    std::ostringstream csv_a, csv_b, json_a;
    write_csv(table, meta, csv_a);
    write_csv(table, meta, csv_b);
    write_json(table, meta, json_a);
    CHECK(csv_a.str() == csv_b.str());

    // Every CSV double reparses to the exact stored value (shortest
    // round-trip), and the JSON document holds the same numbers.
    std::istringstream csv_in(csv_a.str());
    std::string line;
    std::getline(csv_in, line); // timestamp comment
    std::getline(csv_in, line); // meta comment
    std::getline(csv_in, line); // header
    std::size_t row_index = 0;
    while (std::getline(csv_in, line)) {
        std::istringstream fields(line);
        std::string field;
        std::size_t col = 0;
        while (std::getline(fields, field, ',')) {
            if (col >= 2) { // measure columns
                const double parsed = std::stod(field);
                const double stored = std::get<double>(table.rows[row_index][col]);
                CHECK(parsed == stored);
            }
            ++col;
        }
        ++row_index;
    }
    CHECK(row_index == table.rows.size());
}

TEST_CASE("measures runner reports the degenerate single-labeling case") {
    AmplitudeMap amps;
    amps[{0, 0}] = Complex(1.0, 0.0);
    const PreparedState state(ModeOccupation({2}), ParticleKind::boson,
                              InternalState::pure(1, std::move(amps)));
    const MeasuresResult result = run_measures(state);
    CHECK(result.degenerate);

    const MeasuresResult example = run_measures(testutil::worked_example_state());
    CHECK_FALSE(example.degenerate);
    CHECK(example.lambda == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
    CHECK(example.report.w_c == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("parallel_for covers every index exactly once and propagates errors") {
    std::vector<int> hits(101, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(8, 3,
                                 [](std::size_t i) {
                                     if (i == 5) throw DimensionError("boom");
                                 }),
                    DimensionError);
}

TEST_CASE("linspace endpoints are exact") {
    const auto grid = linspace(0.0, 1.0, 21);
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[10] == doctest::Approx(0.5).epsilon(1e-15));
}

} // TEST_SUITE
