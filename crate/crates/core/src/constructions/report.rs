use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    MomentCurve,
    Theorem1Pipeline,
    Greedy,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MomentCurve => "moment_curve",
            Method::Theorem1Pipeline => "theorem1_pipeline",
            Method::Greedy => "greedy",
        }
    }
}

/// Provenance of a constructed point set.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConstructionReport {
    pub method: Method,
    pub d: usize,
    pub n: i64,
    pub seed: u64,
    pub prime_used: Option<i64>,
    #[cfg_attr(feature = "serde", serde(rename = "D_used"))]
    pub d_used: Option<i64>,
    pub sample_size: Option<u64>,
    pub subsample_size: Option<u64>,
    /// Surfaces found carrying `verify_threshold` or more points before
    /// deletion.
    pub violations_found: u64,
    pub deleted: u64,
    pub final_size: u64,
    pub verified: bool,
    /// Verification passed when no surface carries this many points.
    pub verify_threshold: usize,
    /// Moment curve only: no hyperplane carries this many points.
    pub hyperplane_threshold: Option<usize>,
    pub rng: String,
    pub warnings: Vec<String>,
    pub diagnostics: Option<PipelineDiagnostics>,
}

impl ConstructionReport {
    pub(crate) fn new(method: Method, d: usize, n: i64, seed: u64) -> Self {
        ConstructionReport {
            method,
            d,
            n,
            seed,
            prime_used: None,
            d_used: None,
            sample_size: None,
            subsample_size: None,
            violations_found: 0,
            deleted: 0,
            final_size: 0,
            verified: false,
            verify_threshold: d + 2,
            hyperplane_threshold: None,
            rng: String::from(crate::RNG_IDENTITY),
            warnings: Vec::new(),
            diagnostics: None,
        }
    }
}

/// Measurements taken along the randomized pipeline. The four sample
/// properties are recorded, not enforced.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PipelineDiagnostics {
    /// Power of 2 actually used as the grid size.
    pub n_used: i64,
    pub first_stage_probability: f64,
    pub second_stage_probability: f64,
    pub c_const: f64,
    /// First-stage samples drawn, including the accepted one.
    pub attempts: u32,
    /// `n^3/2 <= |A| <= 2 n^3`.
    pub property1: bool,
    /// Every subcube holds between half and twice `n^3 D^-d` points.
    pub property2: bool,
    pub subcube_min: u64,
    pub subcube_max: u64,
    pub subcube_expected: f64,
    /// Most points of the first-stage sample on one `(d-2)`-sphere or
    /// `(d-2)`-flat, when the sample is small enough to search.
    pub property3_max_points: Option<u64>,
    /// Cohyperplanar `(d+2)`-tuples of the first-stage sample, when small
    /// enough to count, and that count over `n^(2d+5)`.
    pub property4_tuples: Option<u128>,
    pub property4_ratio: Option<f64>,
    /// `2 n^(c / log log n)`, logged only.
    pub t_threshold: f64,
    /// `C(|A|, d+1)`, the estimate of the number of spanned spheres.
    pub sphere_estimate: f64,
    pub d_formula: f64,
    pub d_clamped: bool,
}
