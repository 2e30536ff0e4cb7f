"""Wave-particle complementarity toolkit for partially distinguishable particles.

The compiled core exposes state construction, the reduced external/internal
density matrices, every wave/particle/distinguishability measure, POVM
builders with measurement statistics, and the three experiment sweeps.
"""

from duality._core import (
    DualityError,
    ParticleKind,
    PreparedState,
    StateFileError,
    StateValidationError,
    __version__,
    beam_splitter,
    bose_hubbard_hamiltonian,
    bose_hubbard_state,
    distinguishability_measures,
    distinguishable_external,
    dump_state,
    enumerate_occupations,
    evolve_hermitian,
    fidelity,
    hom_external,
    hom_state,
    ideal_external,
    ideal_fidelity_lambda,
    interference_decomposition,
    lift_single_particle,
    load_state,
    measure,
    measure_report,
    pairwise_fidelity,
    particle_fidelity,
    particle_trace,
    povm_helstrom,
    povm_kpoint,
    povm_occupation,
    random_prepared_state,
    reduced_external,
    reduced_internal_labeled,
    right_transversal,
    run_bose_hubbard,
    run_hom,
    run_random_sweep,
    stabilizer,
    trace_distance,
    wave_coherence,
    wave_purity,
)

__all__ = [
    "DualityError",
    "ParticleKind",
    "PreparedState",
    "StateFileError",
    "StateValidationError",
    "__version__",
    "beam_splitter",
    "bose_hubbard_hamiltonian",
    "bose_hubbard_state",
    "distinguishability_measures",
    "distinguishable_external",
    "dump_state",
    "enumerate_occupations",
    "evolve_hermitian",
    "fidelity",
    "hom_external",
    "hom_state",
    "ideal_external",
    "ideal_fidelity_lambda",
    "interference_decomposition",
    "lift_single_particle",
    "load_state",
    "measure",
    "measure_report",
    "pairwise_fidelity",
    "particle_fidelity",
    "particle_trace",
    "povm_helstrom",
    "povm_kpoint",
    "povm_occupation",
    "random_prepared_state",
    "reduced_external",
    "reduced_internal_labeled",
    "right_transversal",
    "run_bose_hubbard",
    "run_hom",
    "run_random_sweep",
    "stabilizer",
    "trace_distance",
    "wave_coherence",
    "wave_purity",
]
