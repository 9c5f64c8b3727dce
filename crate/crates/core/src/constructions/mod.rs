//! Point sets with no `d+2` points on a sphere or hyperplane.

mod deletion;
mod greedy;
mod grid;
mod moment;
mod pipeline;
mod primes;
mod report;
mod sampling;

pub use deletion::{deletion_refine, Refinement};
pub use greedy::{greedy_construct, CandidateOrder};
pub use grid::GridPartition;
pub use moment::moment_curve;
pub use pipeline::{second_stage_probability, theorem1_pipeline, PipelineOverrides, DIAGNOSTIC_BUDGET};
pub use primes::{is_prime, largest_prime_leq};
pub use report::{ConstructionReport, Method, PipelineDiagnostics};
pub use sampling::{choose_D, random_sample, PartitionChoice, Probability};
