//! Simulation and analysis of single-qubit quantum thermal machines.
//!
//! The crate is layered bottom-up:
//!
//! * [`quantum`]: qubit states, Hamiltonians, Gibbs states and entropies.
//! * [`dynamics`]: unitary driving, detailed-balance thermalization and
//!   quasi-static isotherms, all producing sampled [`Trajectory`] values.
//! * [`accounting`]: work, heat, entropy change and entropy production
//!   along trajectories.
//! * [`cycles`]: quantum Otto and Carnot cycles, the Otto/Carnot work
//!   deficit and parameter sweeps.
//! * [`fluctuations`]: two-point-measurement work statistics and the
//!   Jarzynski equality, by exact enumeration.
//!
//! Units: ħ = k_B = 1, entropies in nats, energy zero at the ground level of
//! the undriven qubit.

pub mod accounting;
pub mod cycles;
pub mod dynamics;
mod error;
pub mod fluctuations;
pub mod linalg;
pub mod quantum;

pub use accounting::{
    cumulative_work_heat, entropy_production, first_law_check, integrate_heat, integrate_work,
    StrokeRecord,
};
pub use cycles::{
    carnot_efficiency, extraction_condition, otto_carnot_deficit, otto_efficiency, run_carnot,
    run_carnot_traced, run_otto, run_otto_traced, sweep, CarnotSpec, CycleKind, CycleReport,
    CycleRun, DeficitReport, FiniteTimeParams, OttoEfficiency, OttoMode, OttoSpec, SweepGrid,
    SweepOutcome, SweepPoint,
};
pub use dynamics::{
    propagator, quasistatic_isotherm, thermalize, thermalize_exact, unitary_propagate, BathSpec,
    DriveSchedule, Sample, Trajectory,
};
pub use error::{Error, Result};
pub use fluctuations::{
    free_energy_difference, jarzynski_average, jarzynski_check, tpm_distribution, JarzynskiCheck,
    TpmProtocol, WorkDistribution, WorkOutcome,
};
pub use quantum::{
    gibbs_state, mean_energy, partition_function, relative_entropy, von_neumann_entropy,
    BathTemperature, DensityOperator, QubitHamiltonian,
};
