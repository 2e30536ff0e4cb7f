#include "duality/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "duality/errors.hpp"
#include "duality/version.hpp"

namespace duality {

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw DimensionError("linspace needs count >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
    out.back() = stop;
    return out;
}

DensityMatrix hom_external(double r, double theta) {
    if (r < 0.0 || r > 1.0) throw DimensionError("HOM overlap modulus r must be in [0, 1]");
    Matrix rho = Matrix::Zero(4, 4);
    const Complex off = 0.5 * r * Complex(std::cos(theta), std::sin(theta));
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(1, 2) = off;
    rho(2, 1) = std::conj(off);
    return DensityMatrix(std::move(rho));
}

PreparedState hom_state(double r, double theta, ParticleKind kind) {
    if (r < 0.0 || r > 1.0) throw DimensionError("HOM overlap modulus r must be in [0, 1]");
    if (std::abs(r * std::sin(theta)) > 1e-12)
        throw DimensionError("two-particle internal overlaps are real; r sin(theta) must vanish");
    // Signed overlap sum q_j <Omega_(12)|Omega_e> that produces r e^{i theta}
    // after the exchange sign.
    const double target = (kind == ParticleKind::boson ? 1.0 : -1.0) * r * std::cos(theta);

    AmplitudeMap amps;
    if (target >= 0.0) {
        // Product form: |a> x (sqrt(o)|a> + sqrt(1-o)|b>).
        const double c0 = std::sqrt(target);
        const double c1 = std::sqrt(1.0 - target);
        if (c0 > 0.0) amps[{0, 0}] = Complex(c0, 0.0);
        if (c1 > 0.0) amps[{0, 1}] = Complex(c1, 0.0);
    } else {
        // Mix of |aa> with the antisymmetric two-letter combination.
        const double alpha = std::sqrt((1.0 + target) / 2.0);
        const double beta = std::sqrt((1.0 - target) / 2.0);
        if (alpha > 0.0) amps[{0, 0}] = Complex(alpha, 0.0);
        amps[{0, 1}] = Complex(beta / std::sqrt(2.0), 0.0);
        amps[{1, 0}] = Complex(-beta / std::sqrt(2.0), 0.0);
    }
    return PreparedState(ModeOccupation({1, 1}), kind, InternalState::pure(2, std::move(amps)));
}

InternalState bose_hubbard_internal(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw DimensionError("gamma must be in [0, 1]");
    const double g2 = gamma * gamma;
    const double cross = gamma * std::sqrt(1.0 - g2);
    AmplitudeMap amps;
    if (g2 > 0.0) amps[{0, 0, 0, 0}] = Complex(g2, 0.0);
    if (cross > 0.0) {
        amps[{0, 0, 1, 0}] = Complex(cross, 0.0);
        amps[{0, 0, 0, 1}] = Complex(cross, 0.0);
    }
    if (1.0 - g2 > 0.0) amps[{0, 0, 1, 1}] = Complex(1.0 - g2, 0.0);
    return InternalState::pure(2, std::move(amps));
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<HomRow> run_hom(const HomConfig& config, int threads) {
    const UnitaryOperator evolution = lift_single_particle(beam_splitter(), 2);
    const Povm povm = povm_occupation(2, 2);
    const DensityMatrix rho_dist = hom_external(0.0, 0.0);
    const ProbDist stats_dist = measure(rho_dist, evolution, povm);

    std::vector<HomRow> rows(config.r_grid.size() * config.theta_grid.size());
    parallel_for(rows.size(), threads, [&](std::size_t index) {
        const double r = config.r_grid[index / config.theta_grid.size()];
        const double theta = config.theta_grid[index % config.theta_grid.size()];

        const DensityMatrix rho = hom_external(r, theta);
        const ProbDist stats = measure(rho, evolution, povm);
        const InterferenceVisibilities vis = visibilities(stats_dist, stats, 2);
        const Distinguishabilities dist = distinguishability_from_states(rho_dist, rho, 2);

        HomRow row;
        row.r = r;
        row.theta = theta;
        row.p20 = stats.prob_of("(2,0)");
        row.p11 = stats.prob_of("(1,1)");
        row.p02 = stats.prob_of("(0,2)");
        row.v_t = vis.v_t;
        row.v_f = vis.v_f;
        row.d_t = dist.d_t;
        row.d_f = dist.d_f;

        const double rc = r * std::cos(theta);
        row.resid_prob = std::max({std::abs(row.p11 - 0.5 * (1.0 - rc)),
                                   std::abs(row.p20 - 0.25 * (1.0 + rc)),
                                   std::abs(row.p02 - 0.25 * (1.0 + rc))});
        row.resid_measure = std::max({std::abs(row.v_t - r * std::abs(std::cos(theta))),
                                      std::abs(row.v_f - (1.0 - std::sqrt(1.0 - rc * rc))),
                                      std::abs(row.d_t - (1.0 - r)),
                                      std::abs(row.d_f - std::sqrt(1.0 - r * r))});

        // Where an internal state realizes this point, the full pipeline from
        // the prepared state must land on the same external matrix.
        if (std::abs(r * std::sin(theta)) <= 1e-12) {
            const DensityMatrix from_internal =
                reduced_external(hom_state(r, theta, config.kind));
            const double gap = (from_internal.matrix() - rho.matrix()).norm();
            if (gap > 1e-12)
                throw InvariantViolationError(
                    "HOM internal-state realization deviates by " + std::to_string(gap));
        }
        rows[index] = std::move(row);
    });
    return rows;
}

std::vector<BoseHubbardRow> run_bose_hubbard(const BoseHubbardConfig& config, int threads) {
    const ModeOccupation occ({2, 2});
    const std::int64_t r_count = occ.labeling_count();
    const DensityMatrix rho_dist = distinguishable_external(occ, ParticleKind::boson);

    struct GammaData {
        double gamma;
        DensityMatrix rho;
        double bound;
    };
    std::vector<GammaData> gamma_data;
    gamma_data.reserve(config.gamma_grid.size());
    for (double gamma : config.gamma_grid) {
        PreparedState state(occ, ParticleKind::boson, bose_hubbard_internal(gamma));
        DensityMatrix rho = reduced_external(state);
        const Distinguishabilities dist = distinguishability_from_states(rho_dist, rho, r_count);
        gamma_data.push_back(GammaData{gamma, std::move(rho), 1.0 - dist.d_t});
    }

    std::vector<Povm> povms;
    povms.reserve(config.povms.size());
    for (const std::string& name : config.povms) {
        if (name == "occupation")
            povms.push_back(povm_occupation(occ.mode_count(), occ.particle_count()));
        else if (name == "1p")
            povms.push_back(povm_kpoint(occ.particle_count(), 1));
        else if (name == "2p")
            povms.push_back(povm_kpoint(occ.particle_count(), 2));
        else if (name == "3p")
            povms.push_back(povm_kpoint(occ.particle_count(), 3));
        else if (name == "4p")
            povms.push_back(povm_kpoint(occ.particle_count(), 4));
        else
            throw ConfigError("unknown POVM '" + name + "'; expected occupation|1p|2p|3p|4p");
    }

    const std::size_t rows_per_block = config.t_grid.size() * config.povms.size();
    std::vector<BoseHubbardRow> rows(gamma_data.size() * config.u_over_j_grid.size() *
                                     rows_per_block);

    // One eigendecomposition of H per interaction strength, shared across t.
    parallel_for(gamma_data.size() * config.u_over_j_grid.size(), threads, [&](std::size_t block) {
        const GammaData& data = gamma_data[block / config.u_over_j_grid.size()];
        const double u_over_j = config.u_over_j_grid[block % config.u_over_j_grid.size()];

        BoseHubbardParams params;
        params.n_sites = occ.mode_count();
        params.n_particles = occ.particle_count();
        params.hopping = 1.0;
        params.interaction = u_over_j;
        params.site_energies = {0.0, config.tilt};
        const SpectralEvolver evolver(bose_hubbard_hamiltonian(params));

        std::size_t cursor = block * rows_per_block;
        for (double t : config.t_grid) {
            const UnitaryOperator evolution = evolver.at(t);
            for (std::size_t p = 0; p < povms.size(); ++p) {
                const ProbDist stats = measure(data.rho, evolution, povms[p]);
                const ProbDist stats_dist = measure(rho_dist, evolution, povms[p]);
                const InterferenceVisibilities vis = visibilities(stats_dist, stats, r_count);
                if (vis.v_t > data.bound + 1e-9 || vis.v_f > data.bound + 1e-9)
                    throw InvariantViolationError(
                        "visibility exceeds 1 - D_T: V_T=" + std::to_string(vis.v_t) +
                        " V_F=" + std::to_string(vis.v_f) + " bound=" + std::to_string(data.bound));
                BoseHubbardRow row;
                row.t = t;
                row.u_over_j = u_over_j;
                row.gamma = data.gamma;
                row.povm = config.povms[p];
                row.v_t = vis.v_t;
                row.v_f = vis.v_f;
                row.bound = data.bound;
                rows[cursor++] = std::move(row);
            }
        }
    });
    return rows;
}

std::vector<RandomSweepRow> run_random_sweep(const RandomSweepConfig& config, int threads) {
    if (config.count < 1) throw ConfigError("random sweep needs count >= 1");
    std::vector<RandomSweepRow> rows(config.l_values.size() *
                                     static_cast<std::size_t>(config.count));
    parallel_for(rows.size(), threads, [&](std::size_t index) {
        const int l = config.l_values[index / static_cast<std::size_t>(config.count)];
        const int k = static_cast<int>(index % static_cast<std::size_t>(config.count));
        // Streams decorrelate across mixing levels as well as state indices.
        const std::uint64_t stream_seed =
            config.seed + 0x100000000ULL * static_cast<std::uint64_t>(l);
        const PreparedState state =
            random_prepared_state(k, config.count, l, config.n_modes, config.letter_count,
                                  config.n_particles, stream_seed, config.kind);
        const MeasureReport report = measure_report(state);

        RandomSweepRow row;
        row.k = k;
        row.l = l;
        row.w_c2 = report.w_c * report.w_c;
        row.w_p2 = report.w_p * report.w_p;
        row.p_t2 = report.p_t * report.p_t;
        row.p_f2 = report.p_f * report.p_f;

        for (double p2 : {row.p_t2, row.p_f2})
            for (double w2 : {row.w_c2, row.w_p2})
                if (p2 + w2 > 1.0 + 1e-9)
                    throw InvariantViolationError("complementarity violated: P^2+W^2 = " +
                                                  std::to_string(p2 + w2));
        if (l == 1 && std::abs(row.p_f2 + row.w_p2 - 1.0) > 1e-9)
            throw InvariantViolationError("pure-state duality not saturated: " +
                                          std::to_string(row.p_f2 + row.w_p2));
        rows[index] = row;
    });
    return rows;
}

MeasuresResult run_measures(const PreparedState& state) {
    MeasuresResult result;
    result.kind = to_string(state.kind());
    result.occupation = state.occupation().to_string();
    result.preparation = state.preparation().cycle_string();
    if (state.labeling_count() < 2) {
        result.degenerate = true;
        return result;
    }
    result.report = measure_report(state);
    result.dist = distinguishability_measures(state);
    result.lambda = ideal_fidelity_lambda(state);
    return result;
}

namespace {

Table::Cell cell(double v) { return Table::Cell(v); }
Table::Cell cell(std::int64_t v) { return Table::Cell(v); }
Table::Cell cell(std::string v) { return Table::Cell(std::move(v)); }

} // namespace

Table to_table(const std::vector<HomRow>& rows) {
    Table table;
    table.columns = {"r",   "theta", "p11", "p20", "p02",        "v_t",
                     "v_f", "d_t",   "d_f", "resid_prob", "resid_measure"};
    for (const auto& r : rows)
        table.rows.push_back({cell(r.r), cell(r.theta), cell(r.p11), cell(r.p20), cell(r.p02),
                              cell(r.v_t), cell(r.v_f), cell(r.d_t), cell(r.d_f),
                              cell(r.resid_prob), cell(r.resid_measure)});
    return table;
}

Table to_table(const std::vector<BoseHubbardRow>& rows) {
    Table table;
    table.columns = {"t", "u_over_j", "gamma", "povm", "v_t", "v_f", "bound"};
    for (const auto& r : rows)
        table.rows.push_back({cell(r.t), cell(r.u_over_j), cell(r.gamma), cell(r.povm),
                              cell(r.v_t), cell(r.v_f), cell(r.bound)});
    return table;
}

Table to_table(const std::vector<RandomSweepRow>& rows) {
    Table table;
    table.columns = {"k", "l", "w_c2", "w_p2", "p_t2", "p_f2"};
    for (const auto& r : rows)
        table.rows.push_back({cell(static_cast<std::int64_t>(r.k)),
                              cell(static_cast<std::int64_t>(r.l)), cell(r.w_c2), cell(r.w_p2),
                              cell(r.p_t2), cell(r.p_f2)});
    return table;
}

Table to_table(const MeasuresResult& result) {
    Table table;
    table.columns = {"kind", "occupation", "preparation", "r_count", "degenerate",
                     "w_c",  "w_p",        "p_t",         "p_f",     "pairwise_f",
                     "d_t",  "d_f",        "lambda"};
    std::vector<Table::Cell> row{cell(result.kind), cell(result.occupation),
                                 cell(result.preparation)};
    if (result.degenerate) {
        row.push_back(cell(static_cast<std::int64_t>(1)));
        row.push_back(cell(std::string("true")));
        for (int i = 0; i < 8; ++i) row.push_back(cell(std::string("")));
    } else {
        row.push_back(cell(result.report.r_count));
        row.push_back(cell(std::string("false")));
        row.push_back(cell(result.report.w_c));
        row.push_back(cell(result.report.w_p));
        row.push_back(cell(result.report.p_t));
        row.push_back(cell(result.report.p_f));
        row.push_back(cell(result.report.pairwise_f));
        row.push_back(cell(result.dist.d_t));
        row.push_back(cell(result.dist.d_f));
        row.push_back(cell(result.lambda));
    }
    table.rows.push_back(std::move(row));
    return table;
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buffer);
}

void write_csv(const Table& table, const RunMeta& meta, std::ostream& out) {
    out << "# generated " << meta.timestamp << "\n";
    out << "# duality " << meta.experiment << " version=" << kVersion << " seed=" << meta.seed
        << " config=" << meta.config_hash << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_double(v);
                    else
                        out << v;
                },
                row[c]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, const RunMeta& meta, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["meta"] = {{"experiment", meta.experiment},
                   {"version", kVersion},
                   {"seed", meta.seed},
                   {"config", meta.config_hash},
                   {"timestamp", meta.timestamp}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json entry;
        for (std::size_t c = 0; c < row.size(); ++c)
            std::visit([&](const auto& v) { entry[table.columns[c]] = v; }, row[c]);
        rows.push_back(std::move(entry));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

} // namespace duality
