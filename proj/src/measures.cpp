#include "duality/measures.hpp"

#include <algorithm>
#include <cmath>

#include "duality/errors.hpp"

namespace duality {

namespace {

constexpr double kRangeSlack = 1e-9;

double clip01(double x, const char* what) {
    if (x < -kRangeSlack || x > 1.0 + kRangeSlack)
        throw InvariantViolationError(std::string(what) + " = " + std::to_string(x) +
                                      " outside [0,1]");
    return std::clamp(x, 0.0, 1.0);
}

std::int64_t require_nondegenerate(const PreparedState& state) {
    const std::int64_t r_count = state.labeling_count();
    if (r_count < 2)
        throw DegenerateError("measure undefined for a single particle labeling (R = 1)");
    return r_count;
}

void require_same_labels(const ProbDist& a, const ProbDist& b) {
    if (a.labels() != b.labels())
        throw DimensionError("probability distributions are over different outcome labels");
}

} // namespace

ProbDist::ProbDist(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    if (labels_.size() != probs_.size())
        throw DimensionError("label and probability counts differ");
    if (probs_.empty()) throw DimensionError("empty distribution");
    double sum = 0.0;
    for (double& p : probs_) {
        if (p < kTol.probability_floor)
            throw NonPhysicalError("probability " + std::to_string(p) + " below floor");
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTol.probability_sum)
        throw NonPhysicalError("probabilities sum to " + std::to_string(sum));
}

double ProbDist::prob_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return probs_[i];
    throw DimensionError("no outcome labeled '" + label + "'");
}

double kolmogorov(const ProbDist& a, const ProbDist& b) {
    require_same_labels(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

double bhattacharyya(const ProbDist& a, const ProbDist& b) {
    require_same_labels(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::sqrt(a[i] * b[i]);
    return std::clamp(sum, 0.0, 1.0);
}

double wave_coherence(const PreparedState& state) {
    const std::int64_t r_count = require_nondegenerate(state);
    const Matrix gram = overlap_matrix(state);
    double sum = 0.0;
    for (Eigen::Index a = 0; a < gram.rows(); ++a)
        for (Eigen::Index b = a + 1; b < gram.cols(); ++b) sum += 2.0 * std::abs(gram(a, b));
    return clip01(sum / static_cast<double>(r_count * (r_count - 1)), "wave_coherence");
}

double wave_purity(const PreparedState& state) {
    const std::int64_t r_count = require_nondegenerate(state);
    const Matrix gram = overlap_matrix(state);
    double sum = 0.0;
    for (Eigen::Index a = 0; a < gram.rows(); ++a)
        for (Eigen::Index b = a + 1; b < gram.cols(); ++b) sum += 2.0 * std::norm(gram(a, b));
    return clip01(std::sqrt(sum / static_cast<double>(r_count * (r_count - 1))), "wave_purity");
}

namespace {

/// Walks the unordered labeling pairs and feeds the per-pair internal states
/// to the visitor; at most two m^N matrices are alive at a time.
template <typename Visitor>
void for_each_labeled_pair(const PreparedState& state, Visitor&& visit) {
    const Transversal sigma = right_transversal(state.occupation());
    for (std::size_t a = 0; a < sigma.reps.size(); ++a) {
        const DensityMatrix rho_a = reduced_internal_labeled(state, sigma.reps[a]);
        for (std::size_t b = a + 1; b < sigma.reps.size(); ++b) {
            const DensityMatrix rho_b = reduced_internal_labeled(state, sigma.reps[b]);
            visit(rho_a, rho_b);
        }
    }
}

} // namespace

double particle_trace(const PreparedState& state) {
    const std::int64_t r_count = require_nondegenerate(state);
    double sum = 0.0;
    for_each_labeled_pair(state, [&](const DensityMatrix& a, const DensityMatrix& b) {
        sum += 2.0 * trace_distance(a, b);
    });
    return clip01(sum / static_cast<double>(r_count * (r_count - 1)), "particle_trace");
}

double pairwise_fidelity(const PreparedState& state) {
    const std::int64_t r_count = require_nondegenerate(state);
    double sum = 0.0;
    for_each_labeled_pair(state, [&](const DensityMatrix& a, const DensityMatrix& b) {
        const double f = fidelity(a, b);
        sum += 2.0 * f * f;
    });
    return clip01(std::sqrt(sum / static_cast<double>(r_count * (r_count - 1))),
                  "pairwise_fidelity");
}

double particle_fidelity(const PreparedState& state) {
    const double f = pairwise_fidelity(state);
    return std::sqrt(std::max(0.0, 1.0 - f * f));
}

MeasureReport measure_report(const PreparedState& state) {
    MeasureReport report;
    report.r_count = require_nondegenerate(state);
    report.w_c = wave_coherence(state);
    report.w_p = wave_purity(state);

    double trace_sum = 0.0;
    double fidelity_sum = 0.0;
    for_each_labeled_pair(state, [&](const DensityMatrix& a, const DensityMatrix& b) {
        trace_sum += 2.0 * trace_distance(a, b);
        const double f = fidelity(a, b);
        fidelity_sum += 2.0 * f * f;
    });
    const double norm = static_cast<double>(report.r_count * (report.r_count - 1));
    report.p_t = clip01(trace_sum / norm, "particle_trace");
    report.pairwise_f = clip01(std::sqrt(fidelity_sum / norm), "pairwise_fidelity");
    report.p_f = std::sqrt(std::max(0.0, 1.0 - report.pairwise_f * report.pairwise_f));
    return report;
}

ClassicalParticleMeasures classical_particle_measures(const std::vector<ProbDist>& dists) {
    const std::int64_t r_count = static_cast<std::int64_t>(dists.size());
    if (r_count < 2) throw DegenerateError("classical measures need at least two labelings");
    for (const auto& dist : dists) require_same_labels(dists.front(), dist);

    double trace_sum = 0.0;
    double fidelity_sum = 0.0;
    for (std::size_t a = 0; a < dists.size(); ++a)
        for (std::size_t b = a + 1; b < dists.size(); ++b) {
            trace_sum += 2.0 * kolmogorov(dists[a], dists[b]);
            const double f = bhattacharyya(dists[a], dists[b]);
            fidelity_sum += 2.0 * f * f;
        }
    const double norm = static_cast<double>(r_count * (r_count - 1));
    ClassicalParticleMeasures out;
    out.p_t = clip01(trace_sum / norm, "classical particle_trace");
    out.p_f = clip01(std::sqrt(std::max(0.0, 1.0 - fidelity_sum / norm)),
                     "classical particle_fidelity");
    return out;
}

Distinguishabilities distinguishability_from_states(const DensityMatrix& distinguishable,
                                                    const DensityMatrix& actual,
                                                    std::int64_t r_count) {
    if (r_count < 2) throw DegenerateError("distinguishability undefined for R = 1");
    const double ratio =
        static_cast<double>(r_count) / static_cast<double>(r_count - 1);
    const double f = fidelity(distinguishable, actual);
    Distinguishabilities out;
    out.d_t = clip01(1.0 - ratio * trace_distance(distinguishable, actual), "D_T");
    out.d_f = clip01(1.0 - ratio * (1.0 - f * f), "D_F");
    return out;
}

Distinguishabilities distinguishability_measures(const PreparedState& state) {
    const std::int64_t r_count = require_nondegenerate(state);
    return distinguishability_from_states(
        distinguishable_external(state.occupation(), state.kind()), reduced_external(state),
        r_count);
}

InterferenceVisibilities visibilities(const ProbDist& distinguishable, const ProbDist& actual,
                                      std::int64_t r_count) {
    if (r_count < 2) throw DegenerateError("visibility undefined for R = 1");
    const double ratio =
        static_cast<double>(r_count) / static_cast<double>(r_count - 1);
    const double f = bhattacharyya(distinguishable, actual);
    InterferenceVisibilities out;
    out.v_t = clip01(ratio * kolmogorov(distinguishable, actual), "V_T");
    out.v_f = clip01(ratio * (1.0 - f * f), "V_F");
    return out;
}

double ideal_fidelity_lambda(const PreparedState& state) {
    if (state.kind() == ParticleKind::fermion)
        for (int mode = 0; mode < state.occupation().mode_count(); ++mode)
            if (state.occupation()[mode] > 1)
                throw PauliError("lambda against the ideal fermionic state requires singly "
                                 "occupied modes");
    // <psi|rho_E|psi> collapses to the plain overlap average: the exchange
    // signs of the state and of psi_B(F) cancel pairwise for matching kind.
    const Matrix gram = overlap_matrix(state);
    const Complex total = gram.sum();
    if (std::abs(total.imag()) > kRangeSlack * static_cast<double>(gram.rows() * gram.rows()))
        throw InvariantViolationError("lambda acquired an imaginary part: " +
                                      std::to_string(total.imag()));
    const double r_count = static_cast<double>(gram.rows());
    return clip01(total.real() / (r_count * r_count), "lambda");
}

} // namespace duality
