//! PI-controlled rotating shaft: closed-loop model, gain-plane sweeps and
//! time-domain simulation.

mod model;
mod simulate;
mod sweep;

pub use model::{
    characteristic_polynomial, conditions_verdict, shaft_conditions, ClosedLoopModel, ShaftParams,
};
pub use simulate::{simulate_closed_loop, Sample, Trajectory};
pub use sweep::{sweep_grid, AxisRange, CellClass, GainCell, GainGrid, SweepConfig, SweepSummary};
