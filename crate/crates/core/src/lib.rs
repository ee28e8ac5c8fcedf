//! Finite-dimensional discrete phase spaces: Schwinger operators, the
//! mod(N)-invariant Wigner kernel, theta-function coherent states, Harper
//! dynamics and discrete uncertainty relations.

pub mod algebra;
pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod kernel;
pub mod state;
pub mod theta;
pub mod uncertainty;

pub use algebra::{displacement, fourier, half_phase, parity, schwinger_pair, Dimension, Label, Operator};
pub use error::{Error, Result};
pub use state::{check_density, maximally_mixed, random_mixed, StateVector, DENSITY_TOL};
pub use theta::{k_func, m_func, theta, MVariant, Theta};
pub use coherent::{
    coherent_overlap_closed, coherent_state, coherent_wigner_closed, coherent_wigner_grid, marginals_closed, vacuum,
    wigner_marginals, Axis, MarginalDistribution, WignerMethod,
};
pub use kernel::{
    fidelity, kernel, kernel_defects, map_operator, mapped_bracket, mapped_bracket_grid, mean_value, overlap, reconstruct, triple_product_phase, wigner,
    wigner_overlap, Bracket, FidelityValue, KernelDefects, KernelTable, PhaseFunction, KERNEL_CACHE_MAX_N,
};
pub use dynamics::{
    evolution_operator, evolve_wigner, harper_hamiltonian, harper_hamiltonian_with, harper_liouvillian_closed,
    harper_liouvillian_closed_kernel, harper_ode_residual, harper_ode_residual_with, liouvillian, propagator, HbarConfig,
    LiouvillianKernel, PhasePropagator, PropagatorMode, Stencil,
};
pub use uncertainty::{
    coherent_table_means, gup_expansion, massar_spindel, moments, planck_preset, qp_operators, rs_qp, s_u_closed,
    sincos_suite, unitary_variances, GupOrder, GupReport, MomentSet, PlanckPreset, ScaleParams, SinCosReport,
    TableMeans, UncertaintyReport,
};
