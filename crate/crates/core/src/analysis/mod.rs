//! Violation search, incidence statistics and empirical bound checks.

mod counting;
mod crossing;
mod histogram;
mod lattice;
mod surfaces;
mod traces;
mod vc;

pub use counting::count_cohyperplanar_tuples;
pub use crossing::crossing_count;
pub use histogram::{rich_surface_histogram, RichSurfaceHistogram, SurfaceRecord};
pub use lattice::{lattice_points_on_hyperplane, lattice_points_on_sphere, HyperplaneCount, SphereCount};
pub use surfaces::{
    count_violating_tuples, find_violations, find_violations_of_kind, is_violation_free, spanned_surfaces, SurfaceIncidence, SurfaceKind,
};
pub use traces::{count_traces, TraceReport, EXHAUSTIVE_BUDGET};
pub use vc::{vc_refute, Frame, VcReason, VcRefutation};

pub(crate) use histogram::binomial;
