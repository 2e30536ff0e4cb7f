#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duality/linalg.hpp"
#include "duality/states.hpp"

namespace duality {

/// Measurement outcome distribution with semantic labels.
class ProbDist {
  public:
    ProbDist(std::vector<std::string> labels, std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

    double prob_of(const std::string& label) const;

  private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

/// L1 distance (1/2) sum |p - q| between distributions over the same labels.
double kolmogorov(const ProbDist& a, const ProbDist& b);

/// Bhattacharyya coefficient sum sqrt(p q).
double bhattacharyya(const ProbDist& a, const ProbDist& b);

/// Normalized coherence of the reduced external state, computed from overlaps.
double wave_coherence(const PreparedState& state);

/// Normalized purity, the L2 counterpart of the coherence measure.
double wave_purity(const PreparedState& state);

/// Mean pairwise trace distance of the labeled internal states.
double particle_trace(const PreparedState& state);

/// Root mean pairwise squared fidelity of the labeled internal states.
double pairwise_fidelity(const PreparedState& state);

/// sqrt(1 - pairwise_fidelity^2).
double particle_fidelity(const PreparedState& state);

struct MeasureReport {
    double w_c = 0.0;
    double w_p = 0.0;
    double p_t = 0.0;
    double p_f = 0.0;
    double pairwise_f = 0.0;
    std::int64_t r_count = 0;
};

/// All wave and particle measures in one pass.
MeasureReport measure_report(const PreparedState& state);

struct ClassicalParticleMeasures {
    double p_t = 0.0;
    double p_f = 0.0;
};

/// Classical analogues of the particle measures from the output statistics of
/// permuted input states, one distribution per labeling.
ClassicalParticleMeasures classical_particle_measures(const std::vector<ProbDist>& dists);

struct Distinguishabilities {
    double d_t = 0.0;
    double d_f = 0.0;
};

Distinguishabilities distinguishability_measures(const PreparedState& state);

/// Matrix-level form for callers that already hold the external states.
Distinguishabilities distinguishability_from_states(const DensityMatrix& distinguishable,
                                                    const DensityMatrix& actual,
                                                    std::int64_t r_count);

struct InterferenceVisibilities {
    double v_t = 0.0;
    double v_f = 0.0;
};

/// Normalized deviation of the measured statistics from the fully
/// distinguishable statistics.
InterferenceVisibilities visibilities(const ProbDist& distinguishable, const ProbDist& actual,
                                      std::int64_t r_count);

/// lambda = <psi_B(F)| rho_E |psi_B(F)>, the squared fidelity to the ideal
/// bosonic (fermionic) state; computed from overlaps alone.
double ideal_fidelity_lambda(const PreparedState& state);

} // namespace duality
