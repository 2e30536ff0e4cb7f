#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "duality/dynamics.hpp"
#include "duality/measures.hpp"
#include "duality/states.hpp"

namespace duality {

std::vector<double> linspace(double start, double stop, int count);

/// The paper-style Hong-Ou-Mandel input: two particles on distinct modes whose
/// single off-diagonal external coherence is (r/2) e^{i theta}.
DensityMatrix hom_external(double r, double theta);

/// Internal-state realization of the HOM input. The labeled overlap of any
/// two-particle internal state is real, so only grid points with
/// r sin(theta) = 0 are physically realizable; others throw DimensionError.
/// Non-negative signed overlaps use the product form (one particle in the
/// first letter, the other in a two-letter superposition), negative ones mix
/// in the antisymmetric two-letter combination.
PreparedState hom_state(double r, double theta, ParticleKind kind);

/// The double-well input of the Bose-Hubbard study: two particles per site,
/// same-site particles share an internal state, cross-site overlap gamma.
InternalState bose_hubbard_internal(double gamma);

struct HomConfig {
    ParticleKind kind = ParticleKind::boson;
    std::vector<double> r_grid = linspace(0.0, 1.0, 21);
    std::vector<double> theta_grid = linspace(0.0, 2.0 * M_PI, 25);
};

struct HomRow {
    double r = 0.0;
    double theta = 0.0;
    double p11 = 0.0, p20 = 0.0, p02 = 0.0;
    double v_t = 0.0, v_f = 0.0;
    double d_t = 0.0, d_f = 0.0;
    double resid_prob = 0.0;    // max |pipeline - closed form| over outcomes
    double resid_measure = 0.0; // same over the four measures
};

std::vector<HomRow> run_hom(const HomConfig& config, int threads = 1);

struct BoseHubbardConfig {
    std::vector<double> gamma_grid = linspace(0.0, 1.0, 21);
    std::vector<double> t_grid = linspace(0.0, 8.0, 81);
    std::vector<double> u_over_j_grid = linspace(0.0, 10.0, 41);
    double tilt = 0.0;
    std::vector<std::string> povms = {"occupation", "1p", "2p", "3p", "4p"};
};

struct BoseHubbardRow {
    double t = 0.0;
    double u_over_j = 0.0;
    double gamma = 0.0;
    std::string povm;
    double v_t = 0.0, v_f = 0.0;
    double bound = 0.0; // 1 - D_T of the input state
};

std::vector<BoseHubbardRow> run_bose_hubbard(const BoseHubbardConfig& config, int threads = 1);

struct RandomSweepConfig {
    int count = 300; // states per mixing level
    std::vector<int> l_values = {1, 3, 10, 30};
    int n_modes = 4;
    int letter_count = 4;
    int n_particles = 3;
    std::uint64_t seed = 0;
    ParticleKind kind = ParticleKind::boson;
};

struct RandomSweepRow {
    int k = 0;
    int l = 0;
    double w_c2 = 0.0, w_p2 = 0.0, p_t2 = 0.0, p_f2 = 0.0;
};

std::vector<RandomSweepRow> run_random_sweep(const RandomSweepConfig& config, int threads = 1);

struct MeasuresResult {
    bool degenerate = false;
    MeasureReport report;
    Distinguishabilities dist;
    double lambda = 0.0;
    std::string kind;
    std::string occupation;
    std::string preparation;
};

MeasuresResult run_measures(const PreparedState& state);

/// Flat tabular view shared by the CSV and JSON writers.
struct Table {
    using Cell = std::variant<std::int64_t, double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Table to_table(const std::vector<HomRow>& rows);
Table to_table(const std::vector<BoseHubbardRow>& rows);
Table to_table(const std::vector<RandomSweepRow>& rows);
Table to_table(const MeasuresResult& result);

struct RunMeta {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string timestamp; // excluded from reproducibility comparisons
};

void write_csv(const Table& table, const RunMeta& meta, std::ostream& out);
void write_json(const Table& table, const RunMeta& meta, std::ostream& out);

/// Shortest decimal that round-trips the value.
std::string format_double(double value);

/// FNV-1a of the canonical config serialization.
std::string fnv1a_hex(const std::string& text);

/// Parallel loop with a deterministic result layout; with threads <= 1 runs
/// inline. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

} // namespace duality
