#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "duality/dynamics.hpp"
#include "duality/errors.hpp"
#include "duality/experiments.hpp"
#include "duality/measures.hpp"
#include "duality/state_io.hpp"
#include "duality/states.hpp"
#include "duality/version.hpp"

namespace py = pybind11;
using namespace duality;

namespace {

ParticleKind kind_from_string(const std::string& name) {
    if (name == "boson") return ParticleKind::boson;
    if (name == "fermion") return ParticleKind::fermion;
    throw DimensionError("kind must be 'boson' or 'fermion'");
}

/// Components come in as (weight, {tuple: amplitude}) pairs with zero-based
/// letter tuples.
InternalState internal_from_python(
    int letter_count, int particle_count,
    const std::vector<std::pair<double, std::map<std::vector<int>, Complex>>>& components) {
    std::vector<InternalComponent> parts;
    parts.reserve(components.size());
    for (const auto& [weight, amps] : components) {
        InternalComponent part;
        part.weight = weight;
        for (const auto& [tuple, amp] : amps) part.amps[tuple] = amp;
        parts.push_back(std::move(part));
    }
    return InternalState(letter_count, particle_count, std::move(parts));
}

Povm povm_from_python(const std::vector<std::pair<std::string, Matrix>>& effects) {
    std::vector<Povm::Effect> converted;
    converted.reserve(effects.size());
    for (const auto& [label, matrix] : effects)
        converted.emplace_back(label, HermitianOperator(matrix));
    return Povm(std::move(converted));
}

std::vector<std::pair<std::string, Matrix>> povm_to_python(const Povm& povm) {
    std::vector<std::pair<std::string, Matrix>> out;
    out.reserve(povm.size());
    for (const auto& [label, effect] : povm.effects()) out.emplace_back(label, effect.matrix());
    return out;
}

py::dict report_to_dict(const MeasureReport& report) {
    py::dict out;
    out["w_c"] = report.w_c;
    out["w_p"] = report.w_p;
    out["p_t"] = report.p_t;
    out["p_f"] = report.p_f;
    out["pairwise_f"] = report.pairwise_f;
    out["r_count"] = report.r_count;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wave-particle complementarity measures for partially distinguishable particles";
    m.attr("__version__") = kVersion;

    // Base first: translators are consulted in reverse registration order.
    const auto base = py::register_exception<Error>(m, "DualityError");
    py::register_exception<StateValidationError>(m, "StateValidationError", base);
    py::register_exception<StateFileError>(m, "StateFileError", base);

    py::class_<PreparedState>(m, "PreparedState")
        .def(py::init([](const std::string& kind, const std::vector<int>& occupation,
                         int letter_count,
                         const std::vector<std::pair<double, std::map<std::vector<int>, Complex>>>&
                             components,
                         const std::string& preparation) {
                 ModeOccupation occ(occupation);
                 InternalState internal =
                     internal_from_python(letter_count, occ.particle_count(), components);
                 return PreparedState(std::move(occ), kind_from_string(kind), std::move(internal),
                                      Permutation::from_cycles(preparation, occ.particle_count()));
             }),
             py::arg("kind"), py::arg("occupation"), py::arg("m"), py::arg("components"),
             py::arg("preparation") = "e",
             "Build a validated many-particle state; internal tuples use zero-based letters.")
        .def_property_readonly("kind",
                               [](const PreparedState& s) { return to_string(s.kind()); })
        .def_property_readonly("occupation",
                               [](const PreparedState& s) { return s.occupation().counts(); })
        .def_property_readonly("r_count", &PreparedState::labeling_count)
        .def_property_readonly("preparation",
                               [](const PreparedState& s) { return s.preparation().cycle_string(); })
        .def("with_preparation", [](const PreparedState& s, const std::string& cycles) {
            return s.with_preparation(
                Permutation::from_cycles(cycles, s.occupation().particle_count()));
        });

    m.def("load_state", &read_state_file, py::arg("path"),
          "Parse and validate a JSON state file.");
    m.def("dump_state", &write_state, py::arg("state"),
          "Serialize a state to the JSON document format (one-based tuples).");

    py::enum_<ParticleKind>(m, "ParticleKind")
        .value("boson", ParticleKind::boson)
        .value("fermion", ParticleKind::fermion);
    m.def("random_prepared_state", &random_prepared_state, py::arg("k"), py::arg("K"),
          py::arg("l"), py::arg("n"), py::arg("m"), py::arg("N"), py::arg("seed"),
          py::arg("kind") = ParticleKind::boson);

    m.def("hom_state", &hom_state, py::arg("r"), py::arg("theta"), py::arg("kind"));
    m.def(
        "hom_external", [](double r, double theta) { return hom_external(r, theta).matrix(); },
        py::arg("r"), py::arg("theta"));
    m.def("bose_hubbard_state", [](double gamma) {
        return PreparedState(ModeOccupation({2, 2}), ParticleKind::boson,
                             bose_hubbard_internal(gamma));
    }, py::arg("gamma"));

    // Reduced states and special states (dense numpy arrays).
    m.def(
        "reduced_external",
        [](const PreparedState& s) { return reduced_external(s).matrix(); }, py::arg("state"));
    m.def(
        "reduced_internal_labeled",
        [](const PreparedState& s, const std::string& mu) {
            return reduced_internal_labeled(
                       s, Permutation::from_cycles(mu, s.occupation().particle_count()))
                .matrix();
        },
        py::arg("state"), py::arg("mu"));
    m.def(
        "distinguishable_external",
        [](const std::vector<int>& occ, const std::string& kind) {
            return distinguishable_external(ModeOccupation(occ), kind_from_string(kind)).matrix();
        },
        py::arg("occupation"), py::arg("kind"));
    m.def(
        "ideal_external",
        [](const std::vector<int>& occ, const std::string& kind) {
            return ideal_external(ModeOccupation(occ), kind_from_string(kind)).matrix();
        },
        py::arg("occupation"), py::arg("kind"));

    // Transversal machinery, rendered as cycle strings.
    m.def(
        "right_transversal",
        [](const std::vector<int>& occ) {
            std::vector<std::string> cycles;
            for (const auto& rep : right_transversal(ModeOccupation(occ)).reps)
                cycles.push_back(rep.cycle_string());
            return cycles;
        },
        py::arg("occupation"));
    m.def(
        "stabilizer",
        [](const std::vector<int>& occ) {
            std::vector<std::string> cycles;
            for (const auto& xi : stabilizer(ModeOccupation(occ)))
                cycles.push_back(xi.cycle_string());
            return cycles;
        },
        py::arg("occupation"));
    m.def(
        "enumerate_occupations",
        [](int n, int N) {
            std::vector<std::vector<int>> out;
            for (const auto& occ : enumerate_occupations(n, N)) out.push_back(occ.counts());
            return out;
        },
        py::arg("n"), py::arg("N"));

    // Scalar measures.
    m.def("wave_coherence", &wave_coherence, py::arg("state"));
    m.def("wave_purity", &wave_purity, py::arg("state"));
    m.def("particle_trace", &particle_trace, py::arg("state"));
    m.def("particle_fidelity", &particle_fidelity, py::arg("state"));
    m.def("pairwise_fidelity", &pairwise_fidelity, py::arg("state"));
    m.def(
        "measure_report",
        [](const PreparedState& s) { return report_to_dict(measure_report(s)); },
        py::arg("state"));
    m.def(
        "distinguishability_measures",
        [](const PreparedState& s) {
            const Distinguishabilities d = distinguishability_measures(s);
            return py::make_tuple(d.d_t, d.d_f);
        },
        py::arg("state"));
    m.def("ideal_fidelity_lambda", &ideal_fidelity_lambda, py::arg("state"));
    m.def(
        "trace_distance",
        [](const Matrix& rho, const Matrix& sigma) {
            return trace_distance(DensityMatrix(rho), DensityMatrix(sigma));
        },
        py::arg("rho"), py::arg("sigma"));
    m.def(
        "fidelity",
        [](const Matrix& rho, const Matrix& sigma) {
            return fidelity(DensityMatrix(rho), DensityMatrix(sigma));
        },
        py::arg("rho"), py::arg("sigma"));

    // Dynamics.
    m.def("beam_splitter", [] { return beam_splitter().matrix(); });
    m.def(
        "lift_single_particle",
        [](const Matrix& u, int N) {
            return lift_single_particle(UnitaryOperator(u), N).matrix();
        },
        py::arg("u"), py::arg("N"));
    m.def(
        "bose_hubbard_hamiltonian",
        [](int n_sites, int n_particles, double hopping, double interaction,
           const std::vector<double>& site_energies) {
            BoseHubbardParams params;
            params.n_sites = n_sites;
            params.n_particles = n_particles;
            params.hopping = hopping;
            params.interaction = interaction;
            params.site_energies = site_energies;
            return bose_hubbard_hamiltonian(params).matrix();
        },
        py::arg("n_sites"), py::arg("N"), py::arg("J") = 1.0, py::arg("U") = 0.0,
        py::arg("site_energies") = std::vector<double>{});
    m.def(
        "evolve_hermitian",
        [](const Matrix& h, double t) { return evolve_hermitian(HermitianOperator(h), t).matrix(); },
        py::arg("h"), py::arg("t"));
    m.def(
        "povm_occupation",
        [](int n, int N) { return povm_to_python(povm_occupation(n, N)); }, py::arg("n"),
        py::arg("N"));
    m.def(
        "povm_kpoint", [](int N, int k) { return povm_to_python(povm_kpoint(N, k)); },
        py::arg("N"), py::arg("k"));
    m.def(
        "povm_helstrom",
        [](const Matrix& rho_a, const Matrix& rho_b) {
            return povm_to_python(povm_helstrom(DensityMatrix(rho_a), DensityMatrix(rho_b)));
        },
        py::arg("rho_a"), py::arg("rho_b"));
    m.def(
        "measure",
        [](const Matrix& rho, const Matrix& evolution,
           const std::vector<std::pair<std::string, Matrix>>& effects) {
            const ProbDist stats =
                measure(DensityMatrix(rho), UnitaryOperator(evolution), povm_from_python(effects));
            return py::make_tuple(stats.labels(), stats.probs());
        },
        py::arg("rho"), py::arg("evolution"), py::arg("povm"),
        "Outcome labels and probabilities of tr[M_j U rho U^+].");
    m.def(
        "interference_decomposition",
        [](const PreparedState& s, const Matrix& evolution, const Matrix& effect) {
            const InterferenceTerm term = interference_decomposition(
                s, UnitaryOperator(evolution), HermitianOperator(effect));
            return py::make_tuple(term.distinguishable, term.interference);
        },
        py::arg("state"), py::arg("evolution"), py::arg("effect"));

    // Experiment sweeps as lists of dicts.
    m.def(
        "run_hom",
        [](const std::vector<double>& r_grid, const std::vector<double>& theta_grid,
           const std::string& kind, int threads) {
            HomConfig config;
            config.kind = kind_from_string(kind);
            if (!r_grid.empty()) config.r_grid = r_grid;
            if (!theta_grid.empty()) config.theta_grid = theta_grid;
            py::list rows;
            for (const auto& row : run_hom(config, threads)) {
                py::dict entry;
                entry["r"] = row.r;
                entry["theta"] = row.theta;
                entry["p11"] = row.p11;
                entry["p20"] = row.p20;
                entry["p02"] = row.p02;
                entry["v_t"] = row.v_t;
                entry["v_f"] = row.v_f;
                entry["d_t"] = row.d_t;
                entry["d_f"] = row.d_f;
                rows.append(std::move(entry));
            }
            return rows;
        },
        py::arg("r_grid") = std::vector<double>{}, py::arg("theta_grid") = std::vector<double>{},
        py::arg("kind") = "boson", py::arg("threads") = 1);
    m.def(
        "run_bose_hubbard",
        [](const std::vector<double>& gamma_grid, const std::vector<double>& t_grid,
           const std::vector<double>& u_over_j_grid, double tilt,
           const std::vector<std::string>& povms, int threads) {
            BoseHubbardConfig config;
            if (!gamma_grid.empty()) config.gamma_grid = gamma_grid;
            if (!t_grid.empty()) config.t_grid = t_grid;
            if (!u_over_j_grid.empty()) config.u_over_j_grid = u_over_j_grid;
            config.tilt = tilt;
            if (!povms.empty()) config.povms = povms;
            py::list rows;
            for (const auto& row : run_bose_hubbard(config, threads)) {
                py::dict entry;
                entry["t"] = row.t;
                entry["u_over_j"] = row.u_over_j;
                entry["gamma"] = row.gamma;
                entry["povm"] = row.povm;
                entry["v_t"] = row.v_t;
                entry["v_f"] = row.v_f;
                entry["bound"] = row.bound;
                rows.append(std::move(entry));
            }
            return rows;
        },
        py::arg("gamma_grid") = std::vector<double>{}, py::arg("t_grid") = std::vector<double>{},
        py::arg("u_over_j_grid") = std::vector<double>{}, py::arg("tilt") = 0.0,
        py::arg("povms") = std::vector<std::string>{}, py::arg("threads") = 1);
    m.def(
        "run_random_sweep",
        [](int count, const std::vector<int>& l_values, int n, int m, int N, std::uint64_t seed,
           int threads) {
            RandomSweepConfig config;
            config.count = count;
            if (!l_values.empty()) config.l_values = l_values;
            config.n_modes = n;
            config.letter_count = m;
            config.n_particles = N;
            config.seed = seed;
            py::list rows;
            for (const auto& row : run_random_sweep(config, threads)) {
                py::dict entry;
                entry["k"] = row.k;
                entry["l"] = row.l;
                entry["w_c2"] = row.w_c2;
                entry["w_p2"] = row.w_p2;
                entry["p_t2"] = row.p_t2;
                entry["p_f2"] = row.p_f2;
                rows.append(std::move(entry));
            }
            return rows;
        },
        py::arg("count") = 300, py::arg("l_values") = std::vector<int>{1, 3, 10, 30},
        py::arg("n") = 4, py::arg("m") = 4, py::arg("N") = 3, py::arg("seed") = 0,
        py::arg("threads") = 1);
}
