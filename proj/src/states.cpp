#include "duality/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

std::string to_string(ParticleKind kind) {
    return kind == ParticleKind::boson ? "boson" : "fermion";
}

InternalState::InternalState(int letter_count, int particle_count,
                             std::vector<InternalComponent> components)
    : letter_count_(letter_count), particle_count_(particle_count),
      components_(std::move(components)) {
    if (letter_count_ < 1) throw DimensionError("internal dimension m must be >= 1");
    if (particle_count_ < 1) throw DimensionError("particle count N must be >= 1");
    if (components_.empty()) throw DimensionError("internal state needs at least one component");
    for (const auto& component : components_) {
        for (const auto& [tuple, amp] : component.amps) {
            (void)amp;
            if (static_cast<int>(tuple.size()) != particle_count_)
                throw DimensionError("internal tuple length does not match particle count");
            for (int letter : tuple)
                if (letter < 0 || letter >= letter_count_)
                    throw DimensionError("internal letter outside [0, m)");
        }
    }
}

InternalState InternalState::pure(int letter_count, AmplitudeMap amps) {
    if (amps.empty()) throw DimensionError("pure internal state needs a non-empty amplitude map");
    const int n_particles = static_cast<int>(amps.begin()->first.size());
    std::vector<InternalComponent> components;
    components.push_back(InternalComponent{1.0, std::move(amps)});
    return InternalState(letter_count, n_particles, std::move(components));
}

InternalState InternalState::normalized() const {
    std::vector<InternalComponent> components = components_;
    double weight_sum = 0.0;
    for (auto& component : components) weight_sum += component.weight;
    if (weight_sum <= 0.0) throw DimensionError("component weights must have positive sum");
    for (auto& component : components) {
        component.weight /= weight_sum;
        double norm_sq = 0.0;
        for (const auto& [tuple, amp] : component.amps) {
            (void)tuple;
            norm_sq += std::norm(amp);
        }
        if (norm_sq <= 0.0) throw DimensionError("component amplitude map has zero norm");
        const double scale = 1.0 / std::sqrt(norm_sq);
        for (auto it = component.amps.begin(); it != component.amps.end();) {
            it->second *= scale;
            if (std::abs(it->second) < kTol.amplitude_prune)
                it = component.amps.erase(it);
            else
                ++it;
        }
    }
    return InternalState(letter_count_, particle_count_, std::move(components));
}

std::string Violation::to_string() const {
    std::ostringstream out;
    switch (code) {
        case Code::bad_weights: out << "BadWeights"; break;
        case Code::not_normalized: out << "NotNormalized"; break;
        case Code::symmetry: out << "SymmetryViolation"; break;
        case Code::pauli: out << "PauliViolation"; break;
    }
    if (component >= 0) out << " [component " << component << "]";
    if (!tuple.empty()) {
        out << " tuple (";
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) out << ',';
            out << tuple[i] + 1;
        }
        out << ')';
    }
    if (!detail.empty()) out << ": " << detail;
    return out.str();
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << '\n';
        out << violations[i].to_string();
    }
    return out.str();
}

namespace {

constexpr double kValidationTol = 1e-10;
constexpr double kPauliNormFloor = 1e-12;

Complex lookup(const AmplitudeMap& amps, const InternalTuple& tuple) {
    const auto it = amps.find(tuple);
    return it == amps.end() ? Complex(0.0, 0.0) : it->second;
}

/// Adjacent transpositions within each multiply-occupied mode block; they
/// generate the stabilizer, so checking them checks the whole group.
std::vector<Permutation> block_generators(const ModeOccupation& occ) {
    std::vector<Permutation> gens;
    int start = 0;
    for (int mode = 0; mode < occ.mode_count(); ++mode) {
        for (int k = 0; k + 1 < occ[mode]; ++k)
            gens.push_back(Permutation::transposition(occ.particle_count(), start + k, start + k + 1));
        start += occ[mode];
    }
    return gens;
}

} // namespace

ValidationReport validate_internal(const InternalState& state, const ModeOccupation& occ,
                                   ParticleKind kind) {
    ValidationReport report;
    if (occ.particle_count() != state.particle_count()) {
        report.violations.push_back(
            Violation{Violation::Code::bad_weights, -1, {},
                      "occupation particle count does not match internal state"});
        return report;
    }

    double weight_sum = 0.0;
    for (std::size_t j = 0; j < state.components().size(); ++j) {
        const double q = state.components()[j].weight;
        if (q < 0.0)
            report.violations.push_back(Violation{Violation::Code::bad_weights,
                                                  static_cast<int>(j),
                                                  {},
                                                  "negative weight " + std::to_string(q)});
        weight_sum += q;
    }
    if (std::abs(weight_sum - 1.0) > kValidationTol)
        report.violations.push_back(Violation{
            Violation::Code::bad_weights, -1, {},
            "weights sum to " + std::to_string(weight_sum)});

    const std::vector<Permutation> generators = block_generators(occ);

    for (std::size_t j = 0; j < state.components().size(); ++j) {
        const auto& amps = state.components()[j].amps;

        double norm_sq = 0.0;
        for (const auto& [tuple, amp] : amps) {
            (void)tuple;
            norm_sq += std::norm(amp);
        }
        if (std::abs(norm_sq - 1.0) > kValidationTol)
            report.violations.push_back(Violation{
                Violation::Code::not_normalized, static_cast<int>(j),
                {}, "sum |C|^2 = " + std::to_string(norm_sq)});

        // Exchange symmetry C_{I_xi} = (+-1)^xi C_I over the stabilizer.
        for (const auto& gen : generators) {
            const double sign = exchange_sign(kind, gen);
            for (const auto& [tuple, amp] : amps) {
                const InternalTuple permuted = gen.apply(tuple);
                const Complex expected = sign * amp;
                const Complex actual = lookup(amps, permuted);
                if (std::abs(actual - expected) > kValidationTol) {
                    const bool pauli_case = kind == ParticleKind::fermion && permuted == tuple;
                    report.violations.push_back(Violation{
                        pauli_case ? Violation::Code::pauli : Violation::Code::symmetry,
                        static_cast<int>(j), tuple,
                        pauli_case ? "equal letters on a multiply occupied mode"
                                   : "under " + gen.cycle_string()});
                    break; // one example per generator keeps the report readable
                }
            }
        }

        // Antisymmetrization within each mode block must not annihilate the
        // component (exclusion principle for multiply occupied fermion modes).
        if (kind == ParticleKind::fermion && !generators.empty()) {
            const std::vector<Permutation> block_perms = stabilizer(occ);
            AmplitudeMap projected;
            for (const auto& [tuple, amp] : amps) {
                Complex sum(0.0, 0.0);
                for (const auto& xi : block_perms)
                    sum += exchange_sign(kind, xi) * lookup(amps, xi.apply(tuple));
                sum /= static_cast<double>(block_perms.size());
                if (std::abs(sum) > 0.0) projected[tuple] = sum;
            }
            double projected_norm_sq = 0.0;
            for (const auto& [tuple, amp] : projected) {
                (void)tuple;
                projected_norm_sq += std::norm(amp);
            }
            if (std::sqrt(projected_norm_sq) < kPauliNormFloor)
                report.violations.push_back(Violation{
                    Violation::Code::pauli, static_cast<int>(j),
                    {}, "antisymmetrization annihilates the component"});
        }
    }
    return report;
}

InternalState permute_internal(const InternalState& state, const Permutation& kappa) {
    if (kappa.size() != state.particle_count())
        throw DimensionError("preparation permutation size does not match particle count");
    std::vector<InternalComponent> components;
    components.reserve(state.components().size());
    for (const auto& component : state.components()) {
        InternalComponent moved;
        moved.weight = component.weight;
        for (const auto& [tuple, amp] : component.amps) moved.amps[kappa.apply(tuple)] = amp;
        components.push_back(std::move(moved));
    }
    return InternalState(state.letter_count(), state.particle_count(), std::move(components));
}

Complex internal_overlap(const InternalState& state, const Permutation& mu, const Permutation& nu) {
    if (mu.size() != state.particle_count() || nu.size() != state.particle_count())
        throw DimensionError("labeling permutation size does not match particle count");
    // <Omega_nu|Omega_mu> = sum_I C_I conj(C_{sigma.apply(I)}), sigma = mu nu^{-1}
    // in the subscript composition sense.
    const Permutation sigma = compose(mu, nu.inverse());
    Complex total(0.0, 0.0);
    for (const auto& component : state.components()) {
        if (component.weight == 0.0) continue; // exactly-zero weights carry no state
        Complex inner(0.0, 0.0);
        for (const auto& [tuple, amp] : component.amps)
            inner += amp * std::conj(lookup(component.amps, sigma.apply(tuple)));
        total += component.weight * inner;
    }
    return total;
}

StateValidationError::StateValidationError(std::string message, ValidationReport report)
    : Error(std::move(message)), report_(std::move(report)) {}

PreparedState::PreparedState(ModeOccupation occupation, ParticleKind kind, InternalState internal)
    : occupation_(std::move(occupation)), kind_(kind), internal_(std::move(internal)),
      preparation_(Permutation::identity(internal_.particle_count())) {
    validate_members();
}

PreparedState::PreparedState(ModeOccupation occupation, ParticleKind kind, InternalState internal,
                             Permutation preparation)
    : occupation_(std::move(occupation)), kind_(kind), internal_(std::move(internal)),
      preparation_(std::move(preparation)) {
    validate_members();
}

void PreparedState::validate_members() const {
    if (internal_.particle_count() != occupation_.particle_count())
        throw DimensionError("internal state and occupation disagree on particle count");
    if (preparation_.size() != occupation_.particle_count())
        throw DimensionError("preparation permutation size does not match particle count");
    ValidationReport report = validate_internal(internal_, occupation_, kind_);
    if (!report.ok())
        throw StateValidationError("invalid internal state:\n" + report.to_string(),
                                   std::move(report));
}

PreparedState PreparedState::with_preparation(const Permutation& kappa) const {
    // Omega_{(kappa' kappa) mu}: the new permutation acts on the tuples first.
    return PreparedState(occupation_, kind_, internal_, compose(preparation_, kappa));
}

namespace {

/// Internal state with the preparation folded in, shared by the reductions.
InternalState prepared_internal(const PreparedState& state) {
    if (state.preparation().is_identity()) return state.internal();
    return permute_internal(state.internal(), state.preparation());
}

double pair_sign(ParticleKind kind, const Permutation& mu, const Permutation& nu) {
    return exchange_sign(kind, mu) * exchange_sign(kind, nu);
}

void check_external_dim(const ModeOccupation& occ, std::int64_t dim_cap) {
    double dim = 1.0;
    for (int k = 0; k < occ.particle_count(); ++k) {
        dim *= static_cast<double>(occ.mode_count());
        if (dim > static_cast<double>(dim_cap))
            throw CapExceededError("external dimension n^N exceeds cap " + std::to_string(dim_cap));
    }
}

std::int64_t checked_power(std::int64_t base, int exponent, std::int64_t cap, const char* what) {
    std::int64_t dim = 1;
    for (int k = 0; k < exponent; ++k) {
        dim *= base;
        if (dim > cap) throw CapExceededError(std::string(what) + " exceeds cap " + std::to_string(cap));
    }
    return dim;
}

} // namespace

Matrix overlap_matrix(const PreparedState& state, const Transversal& sigma) {
    const InternalState internal = prepared_internal(state);
    const std::int64_t r_count = sigma.size();
    Matrix gram(r_count, r_count);
    for (std::int64_t a = 0; a < r_count; ++a) {
        gram(a, a) = internal_overlap(internal, sigma.reps[static_cast<std::size_t>(a)],
                                      sigma.reps[static_cast<std::size_t>(a)]);
        for (std::int64_t b = a + 1; b < r_count; ++b) {
            const Complex value = internal_overlap(internal, sigma.reps[static_cast<std::size_t>(a)],
                                                   sigma.reps[static_cast<std::size_t>(b)]);
            gram(a, b) = value;
            gram(b, a) = std::conj(value);
        }
    }
    return gram;
}

Matrix overlap_matrix(const PreparedState& state) {
    return overlap_matrix(state, right_transversal(state.occupation()));
}

DensityMatrix reduced_external(const PreparedState& state, const EnumerationLimits& limits,
                               std::int64_t dim_cap) {
    const ModeOccupation& occ = state.occupation();
    check_external_dim(occ, dim_cap);
    const Transversal sigma = right_transversal(occ, limits);
    const Matrix gram = overlap_matrix(state, sigma);

    const int n_modes = occ.mode_count();
    const std::int64_t dim = checked_power(n_modes, occ.particle_count(), dim_cap, "external dimension");
    const ModeAssignment canonical = canonical_assignment(occ);
    const double inv_r = 1.0 / static_cast<double>(sigma.size());

    std::vector<std::size_t> basis_index(static_cast<std::size_t>(sigma.size()));
    for (std::size_t a = 0; a < basis_index.size(); ++a)
        basis_index[a] =
            ModeAssignment(sigma.reps[a].apply(canonical.modes())).basis_index(n_modes);

    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < basis_index.size(); ++a)
        for (std::size_t b = 0; b < basis_index.size(); ++b)
            rho(static_cast<Eigen::Index>(basis_index[a]), static_cast<Eigen::Index>(basis_index[b])) =
                pair_sign(state.kind(), sigma.reps[a], sigma.reps[b]) * inv_r *
                gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    return DensityMatrix(std::move(rho));
}

DensityMatrix reduced_internal_labeled(const PreparedState& state, const Permutation& mu,
                                       std::int64_t dim_cap) {
    const InternalState internal = prepared_internal(state);
    const int m = internal.letter_count();
    const std::int64_t dim =
        checked_power(m, internal.particle_count(), dim_cap, "internal dimension");

    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& component : internal.components()) {
        if (component.weight == 0.0) continue;
        Vector vec = Vector::Zero(dim);
        for (const auto& [tuple, amp] : component.amps) {
            std::size_t index = 0;
            for (int letter : mu.apply(tuple))
                index = index * static_cast<std::size_t>(m) + static_cast<std::size_t>(letter);
            vec(static_cast<Eigen::Index>(index)) += amp;
        }
        rho += component.weight * (vec * vec.adjoint());
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix distinguishable_external(const ModeOccupation& occ, ParticleKind kind,
                                       const EnumerationLimits& limits, std::int64_t dim_cap) {
    (void)kind; // the maximally mixed orbit state carries no exchange signs
    const Transversal sigma = right_transversal(occ, limits);
    const int n_modes = occ.mode_count();
    const std::int64_t dim =
        checked_power(n_modes, occ.particle_count(), dim_cap, "external dimension");
    const ModeAssignment canonical = canonical_assignment(occ);
    const double inv_r = 1.0 / static_cast<double>(sigma.size());

    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& rep : sigma.reps) {
        const std::size_t index = ModeAssignment(rep.apply(canonical.modes())).basis_index(n_modes);
        rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) += inv_r;
    }
    return DensityMatrix(std::move(rho));
}

Vector ideal_external_vector(const ModeOccupation& occ, ParticleKind kind,
                             const EnumerationLimits& limits, std::int64_t dim_cap) {
    if (kind == ParticleKind::fermion)
        for (int mode = 0; mode < occ.mode_count(); ++mode)
            if (occ[mode] > 1)
                throw PauliError("ideal fermionic state requires singly occupied modes, got " +
                                 occ.to_string());
    const Transversal sigma = right_transversal(occ, limits);
    const int n_modes = occ.mode_count();
    const std::int64_t dim =
        checked_power(n_modes, occ.particle_count(), dim_cap, "external dimension");
    const ModeAssignment canonical = canonical_assignment(occ);
    const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(sigma.size()));

    Vector psi = Vector::Zero(dim);
    for (const auto& rep : sigma.reps) {
        const std::size_t index = ModeAssignment(rep.apply(canonical.modes())).basis_index(n_modes);
        psi(static_cast<Eigen::Index>(index)) += exchange_sign(kind, rep) * inv_sqrt_r;
    }
    return psi;
}

DensityMatrix ideal_external(const ModeOccupation& occ, ParticleKind kind,
                             const EnumerationLimits& limits, std::int64_t dim_cap) {
    return DensityMatrix::pure(ideal_external_vector(occ, kind, limits, dim_cap));
}

PreparedState random_prepared_state(int k, int K, int l, int n, int m, int N, std::uint64_t seed,
                                    ParticleKind kind) {
    if (k < 0 || K < 1 || k > K) throw DimensionError("need 0 <= k <= K with K >= 1");
    if (l < 1) throw DimensionError("need at least one mixture component");
    if (n < N) throw DimensionError("random states place particles on distinct modes; need n >= N");

    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < N; ++i) counts[static_cast<std::size_t>(i)] = 1;
    ModeOccupation occ(std::move(counts));

    Rng rng(seed, static_cast<std::uint64_t>(k));
    const double fraction = static_cast<double>(k) / static_cast<double>(K);

    std::vector<double> weights(static_cast<std::size_t>(l));
    for (auto& w : weights) w = rng.uniform();

    std::vector<InternalComponent> components;
    components.reserve(static_cast<std::size_t>(l));
    for (int j = 0; j < l; ++j) {
        InternalComponent component;
        component.weight = weights[static_cast<std::size_t>(j)];
        InternalTuple tuple(static_cast<std::size_t>(N), 0);
        while (true) {
            const double radius = rng.uniform(1.0 - fraction, 1.0);
            const double phase = rng.uniform(-M_PI * fraction, M_PI * fraction);
            component.amps[tuple] = Complex(radius * std::cos(phase), radius * std::sin(phase));
            int slot = N - 1;
            while (slot >= 0 && ++tuple[static_cast<std::size_t>(slot)] == m) {
                tuple[static_cast<std::size_t>(slot)] = 0;
                --slot;
            }
            if (slot < 0) break;
        }
        components.push_back(std::move(component));
    }

    InternalState internal =
        InternalState(m, N, std::move(components)).normalized();
    return PreparedState(std::move(occ), kind, std::move(internal));
}

} // namespace duality
