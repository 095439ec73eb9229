//! Constructive transforms: hole contraction, grid saturation, rectilinear
//! partition and hole absorption.

mod absorb;
mod contract;
mod partition;
mod saturate;

pub use absorb::absorb_holes;
pub use contract::{contract_all, contract_hole, contraction_frame, ContractionFrame, Orientation};
pub use partition::{partition_cycles, partition_rectilinear};
pub use saturate::{saturate_to_grid, GridSummary, Landing, Segment};
