#pragma once

#include <string>
#include <utility>
#include <vector>

#include "duality/combinatorics.hpp"
#include "duality/linalg.hpp"
#include "duality/measures.hpp"
#include "duality/states.hpp"

namespace duality {

/// Positive-operator valued measure; completeness and per-effect positivity
/// are asserted on construction.
class Povm {
  public:
    using Effect = std::pair<std::string, HermitianOperator>;

    explicit Povm(std::vector<Effect> effects);

    std::size_t size() const { return effects_.size(); }
    const std::vector<Effect>& effects() const { return effects_; }
    const Effect& operator[](std::size_t i) const { return effects_[i]; }

  private:
    std::vector<Effect> effects_;
};

/// Balanced beam splitter, (1/sqrt 2) [[1, 1], [1, -1]].
UnitaryOperator beam_splitter();

/// u^{otimes N} with slot order 1..N.
UnitaryOperator lift_single_particle(const UnitaryOperator& u, int n_particles,
                                     std::int64_t dim_cap = kTol.dim_cap);

/// Bose-Hubbard chain parameters; energies in units of J, times in hbar/J.
struct BoseHubbardParams {
    int n_sites = 2;
    int n_particles = 4;
    double hopping = 1.0;     // J
    double interaction = 0.0; // U
    std::vector<double> site_energies; // omega_j, defaults to zeros

    /// omega_2 - omega_1 for the double well.
    double tilt() const;
};

/// First-quantized H = H_hop + H_int + H_tilt on the n^N product space.
HermitianOperator bose_hubbard_hamiltonian(const BoseHubbardParams& params,
                                           std::int64_t dim_cap = kTol.dim_cap);

/// Projectors onto fixed output mode occupations, one effect per occupation.
Povm povm_occupation(int n_modes, int n_particles,
                     const EnumerationLimits& limits = kDefaultLimits,
                     std::int64_t dim_cap = kTol.dim_cap);

/// k-point density correlation measurement on a double well (n = 2):
/// powers of M_j = (1/N) sum_alpha |j><j|_alpha with binomial cross terms.
Povm povm_kpoint(int n_particles, int order, std::int64_t dim_cap = kTol.dim_cap);

/// Two-outcome Helstrom measurement: projectors onto the non-negative and
/// negative eigenspaces of rho_a - rho_b. Attains the trace distance.
Povm povm_helstrom(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

/// p(j) = tr[M_j U rho U^+].
ProbDist measure(const DensityMatrix& rho, const UnitaryOperator& u, const Povm& povm);

/// Outcome statistics without evolution.
ProbDist measure(const DensityMatrix& rho, const Povm& povm);

struct InterferenceTerm {
    double distinguishable = 0.0; // p^D(j)
    double interference = 0.0;    // coherence contribution; sums to p(j)
};

/// Splits one outcome probability into its distinguishable part and the
/// many-particle interference contribution of the coherences.
InterferenceTerm interference_decomposition(const PreparedState& state, const UnitaryOperator& u,
                                            const HermitianOperator& effect);

} // namespace duality
