#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "duality/combinatorics.hpp"
#include "duality/errors.hpp"
#include "duality/linalg.hpp"
#include "duality/rng.hpp"

namespace duality {

enum class ParticleKind { boson, fermion };

std::string to_string(ParticleKind kind);

/// +1 for bosons, sgn(pi) for fermions.
inline double exchange_sign(ParticleKind kind, const Permutation& pi) {
    return kind == ParticleKind::boson ? 1.0 : static_cast<double>(pi.sign());
}

/// Internal letters of the N particle slots, zero-based entries in [0, m).
using InternalTuple = std::vector<int>;

using AmplitudeMap = std::map<InternalTuple, Complex>;

struct InternalComponent {
    double weight = 1.0;
    AmplitudeMap amps;
};

/// Mixed N-particle internal state: weights q_j over sparse coefficient maps.
/// Construction checks only structural sanity (tuple shapes and letter range);
/// normalization, exchange symmetry and the exclusion principle are the domain
/// of validate_internal so that defective inputs can be diagnosed.
class InternalState {
  public:
    InternalState(int letter_count, int particle_count, std::vector<InternalComponent> components);

    static InternalState pure(int letter_count, AmplitudeMap amps);

    /// Divides each component by its norm and the weights by their sum.
    InternalState normalized() const;

    int letter_count() const { return letter_count_; }
    int particle_count() const { return particle_count_; }
    const std::vector<InternalComponent>& components() const { return components_; }

  private:
    int letter_count_;
    int particle_count_;
    std::vector<InternalComponent> components_;
};

struct Violation {
    enum class Code { bad_weights, not_normalized, symmetry, pauli };
    Code code;
    int component = -1;  // index into components, -1 when not tied to one
    InternalTuple tuple; // offending tuple when applicable
    std::string detail;

    std::string to_string() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate_internal(const InternalState& state, const ModeOccupation& occ,
                                   ParticleKind kind);

/// The state with every component tuple permuted by kappa: amplitudes move
/// from tuple I to apply(kappa, I), realizing |Omega_kappa>.
InternalState permute_internal(const InternalState& state, const Permutation& kappa);

/// sum_j q_j <Omega_nu^(j)|Omega_mu^(j)>, a sparse inner product.
Complex internal_overlap(const InternalState& state, const Permutation& mu, const Permutation& nu);

/// Thrown when a PreparedState is assembled from an invalid internal state.
class StateValidationError : public Error {
  public:
    StateValidationError(std::string message, ValidationReport report);
    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

/// A full many-particle input: external occupation, particle kind, internal
/// state and an optional preparation permutation of the internal tuples.
class PreparedState {
  public:
    PreparedState(ModeOccupation occupation, ParticleKind kind, InternalState internal);
    PreparedState(ModeOccupation occupation, ParticleKind kind, InternalState internal,
                  Permutation preparation);

    const ModeOccupation& occupation() const { return occupation_; }
    ParticleKind kind() const { return kind_; }
    const InternalState& internal() const { return internal_; }
    const Permutation& preparation() const { return preparation_; }

    std::int64_t labeling_count() const { return occupation_.labeling_count(); }

    /// A copy with preparation kappa composed in front of the current one.
    PreparedState with_preparation(const Permutation& kappa) const;

  private:
    void validate_members() const;

    ModeOccupation occupation_;
    ParticleKind kind_;
    InternalState internal_;
    Permutation preparation_;
};

/// Gram matrix of the labeled internal states over the transversal order:
/// G(mu, nu) = sum_j q_j <Omega_{kappa nu}^(j)|Omega_{kappa mu}^(j)>.
Matrix overlap_matrix(const PreparedState& state, const Transversal& sigma);
Matrix overlap_matrix(const PreparedState& state);

/// Reduced external state in the full n^N basis, built from overlaps without
/// materializing the joint state.
DensityMatrix reduced_external(const PreparedState& state,
                               const EnumerationLimits& limits = kDefaultLimits,
                               std::int64_t dim_cap = kTol.dim_cap);

/// rho_I^mu = sum_j q_j |Omega_{kappa mu}^(j)><Omega_{kappa mu}^(j)| as a dense
/// m^N matrix.
DensityMatrix reduced_internal_labeled(const PreparedState& state, const Permutation& mu,
                                       std::int64_t dim_cap = kTol.dim_cap);

/// Maximally mixed state over the labeling orbit (fully distinguishable limit).
DensityMatrix distinguishable_external(const ModeOccupation& occ, ParticleKind kind,
                                       const EnumerationLimits& limits = kDefaultLimits,
                                       std::int64_t dim_cap = kTol.dim_cap);

/// (1/sqrt(R)) sum_mu (-1)^mu |E_mu>.
Vector ideal_external_vector(const ModeOccupation& occ, ParticleKind kind,
                             const EnumerationLimits& limits = kDefaultLimits,
                             std::int64_t dim_cap = kTol.dim_cap);

/// Pure state of perfectly indistinguishable bosons (fermions).
DensityMatrix ideal_external(const ModeOccupation& occ, ParticleKind kind,
                             const EnumerationLimits& limits = kDefaultLimits,
                             std::int64_t dim_cap = kTol.dim_cap);

/// State k of a K-state sweep over distinguishability levels: all amplitudes
/// r e^{i phi} with r uniform on [1-k/K, 1] and phi uniform on [-pi k/K, pi k/K],
/// mixing l pure components with uniform weights, particles on distinct modes.
PreparedState random_prepared_state(int k, int K, int l, int n, int m, int N, std::uint64_t seed,
                                    ParticleKind kind = ParticleKind::boson);

} // namespace duality
