//! Virtual (vMTR) topology design over two base metrics.

mod cover;
mod design;
mod interval;

pub use cover::{min_multiplier_cover, Stab};
pub use design::{
    design_vmtr, design_vmtr_timed, LambdaPlacement, VirtualTopology, VmtrConfig, VmtrPlan,
    VmtrTimings,
};
pub use interval::{
    check_lambda, feasible_interval, perturbations, resolve_lambda, simplest_between, validate_lambda,
    FeasibleInterval, Side, EPSILON_SHIFT, EPSILON_STEPS,
};
