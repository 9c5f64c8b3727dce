use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{ToPrimitive, Zero};

use super::deletion::deletion_refine;
use super::grid::GridPartition;
use super::report::{ConstructionReport, Method, PipelineDiagnostics};
use super::sampling::{choose_D, sample_grid, stage_rng, subsample, Probability};
use crate::analysis::{binomial, count_cohyperplanar_tuples, find_violations};
use crate::geometry::PointSet;
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};

/// Properties 3 and 4 are measured only when the sample has at most this
/// many `d`-subsets.
pub const DIAGNOSTIC_BUDGET: u128 = 50_000;

/// Stream of the second-stage subsample; first-stage attempt `i` uses stream `i`.
const SUBSAMPLE_STREAM: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineOverrides {
    /// The constant `c` in `p = n^(-3d/(d+1) - c / log log n)`.
    pub c_const: f64,
    /// Extra first-stage samples drawn when property 1 or 2 fails.
    pub retries: u32,
}

impl Default for PipelineOverrides {
    fn default() -> Self {
        PipelineOverrides { c_const: 0.0, retries: 3 }
    }
}

/// `log2 log2 n`, or `None` where the correction `c / log log n` is undefined.
fn log_log(n: i64) -> Option<f64> {
    let ll = libm::log2(libm::log2(n as f64));
    (ll > 0.0).then_some(ll)
}

/// Second-stage probability `n^(-3d/(d+1) - c / log log n)`, capped at 1.
pub fn second_stage_probability(n: i64, d: usize, c_const: f64) -> f64 {
    let d = d as f64;
    let correction = log_log(n).map_or(0.0, |ll| c_const / ll);
    libm::pow(n as f64, -3.0 * d / (d + 1.0) - correction).min(1.0)
}

/// Sample with probability `n^(3-d)`, subsample with probability
/// `n^(-3d/(d+1) - c / log log n)`, then delete down to a set with no `d+2`
/// points on a sphere or hyperplane.
pub fn theorem1_pipeline(
    n: i64,
    d: usize,
    seed: u64,
    overrides: PipelineOverrides,
) -> Result<(PointSet, ConstructionReport)> {
    if d < 3 {
        return Err(Error::InvalidParameter(alloc::format!("pipeline requires d >= 3, got {d}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(alloc::format!("grid size {n} < 2")));
    }
    if !overrides.c_const.is_finite() {
        return Err(Error::InvalidParameter("c must be finite".into()));
    }
    let mut report = ConstructionReport::new(Method::Theorem1Pipeline, d, n, seed);
    let n_used = 1i64 << (63 - n.leading_zeros());
    if n_used != n {
        report.warnings.push(alloc::format!("n = {n} is not a power of 2; using {n_used}"));
    }
    let n3 = libm::pow(n_used as f64, 3.0);
    let first = libm::pow(n_used as f64, 3.0 - d as f64).min(1.0);
    let first_prob = if d == 3 { Probability::Ratio(1, 1) } else { Probability::Real(first) };

    let mut attempts = 0u32;
    let (sample, choice, grid, pops) = loop {
        let sample = sample_grid(n_used, d, first_prob, &mut stage_rng(seed, u64::from(attempts)))?;
        attempts += 1;
        let estimate = binomial(sample.len() as u64, d as u64 + 1) as f64;
        let choice = choose_D(n_used, d, estimate);
        let grid = GridPartition::new(n_used, d, choice.parts)?;
        let pops = grid.populations(&sample);
        let ok = property1(sample.len(), n3) && property2(&pops, n3, &grid);
        if ok || attempts > overrides.retries {
            if !ok {
                report.warnings.push(alloc::format!("sample properties 1-2 still failing after {attempts} attempts"));
            }
            break (sample, choice, grid, pops);
        }
    };
    if choice.clamped {
        report.warnings.push(alloc::format!("D clamped to {} (formula {:.3})", choice.parts, choice.formula));
    }

    let small = binomial(sample.len() as u64, d as u64) <= DIAGNOSTIC_BUDGET;
    let property4 = if small { Some(count_cohyperplanar_tuples(&sample, d + 2)?) } else { None };
    let expected = n3 / libm::pow(choice.parts as f64, d as f64);
    let diagnostics = PipelineDiagnostics {
        n_used,
        first_stage_probability: first,
        second_stage_probability: second_stage_probability(n_used, d, overrides.c_const),
        c_const: overrides.c_const,
        attempts,
        property1: property1(sample.len(), n3),
        property2: property2(&pops, n3, &grid),
        subcube_min: pops.iter().copied().min().unwrap_or(0),
        subcube_max: pops.iter().copied().max().unwrap_or(0),
        subcube_expected: expected,
        property3_max_points: if small { Some(max_on_codim2_sphere(&sample)) } else { None },
        property4_tuples: property4,
        property4_ratio: property4.map(|t| t as f64 / libm::pow(n_used as f64, 2.0 * d as f64 + 5.0)),
        t_threshold: 2.0 * libm::pow(n_used as f64, log_log(n_used).map_or(0.0, |ll| overrides.c_const / ll)),
        sphere_estimate: binomial(sample.len() as u64, d as u64 + 1) as f64,
        d_formula: choice.formula,
        d_clamped: choice.clamped,
    };
    if !small {
        report.warnings.push(alloc::format!(
            "sample of {} points too large; properties 3-4 not measured",
            sample.len()
        ));
    }

    let prob = Probability::Real(diagnostics.second_stage_probability);
    let sub = subsample(&sample, prob, &mut stage_rng(seed, SUBSAMPLE_STREAM))?;
    let refined = deletion_refine(&sub)?;
    let verified = find_violations(&refined.points, d + 2)?.is_empty();

    report.d_used = Some(choice.parts);
    report.sample_size = Some(sample.len() as u64);
    report.subsample_size = Some(sub.len() as u64);
    report.violations_found = refined.initial_witnesses;
    report.deleted = refined.deleted;
    report.final_size = refined.points.len() as u64;
    report.verified = verified;
    report.diagnostics = Some(diagnostics);
    // Keep the requested n so the output lives in the requested cube.
    let out = PointSet::new(d, n, refined.points.into_points())?;
    Ok((out, report))
}

fn property1(size: usize, n3: f64) -> bool {
    let s = size as f64;
    n3 / 2.0 <= s && s <= 2.0 * n3
}

fn property2(pops: &[u64], n3: f64, grid: &GridPartition) -> bool {
    let expected = n3 / libm::pow(grid.parts() as f64, grid.d() as f64);
    pops.iter().all(|&k| expected / 2.0 <= k as f64 && k as f64 <= 2.0 * expected)
}

/// Most points of `ps` on a common `(d-2)`-sphere or `(d-2)`-flat. `d`
/// points whose lifts are affinely independent fix one; a point lies on it
/// iff it satisfies every surface through the `d` points.
fn max_on_codim2_sphere(ps: &PointSet) -> u64 {
    let d = ps.d();
    let lifted: Vec<Vec<i128>> = ps
        .points()
        .iter()
        .map(|p| [p.norm_sq()].into_iter().chain(p.coords().iter().map(|&c| i128::from(c))).chain([1]).collect())
        .collect();
    let as_rat = |row: &[i128]| row.iter().map(|&v| rat(v)).collect::<Vec<Rat>>();
    let mut best = ps.len().min(d - 1) as u64;
    for sub in (0..ps.len()).combinations(d) {
        let rows: Vec<Vec<Rat>> = sub.iter().map(|&i| as_rat(&lifted[i])).collect();
        let pencil = linalg::kernel(&rows, d + 2);
        if pencil.len() != 2 {
            continue; // the d points do not fix a (d-2)-sphere
        }
        // Integer generators make the membership test cheap; fall back to
        // rationals if anything leaves i128.
        let ints: Option<Vec<Vec<i128>>> = pencil
            .iter()
            .map(|s| linalg::clear_denominators(s).iter().map(ToPrimitive::to_i128).collect())
            .collect();
        let on = |q: &[i128]| match &ints {
            Some(ints) => ints.iter().all(|s| {
                s.iter()
                    .zip(q)
                    .try_fold(0i128, |acc, (a, b)| a.checked_mul(*b).and_then(|t| acc.checked_add(t)))
                    .map_or_else(|| pencil.iter().all(|r| linalg::dot(r, &as_rat(q)).is_zero()), |v| v == 0)
            }),
            None => pencil.iter().all(|r| linalg::dot(r, &as_rat(q)).is_zero()),
        };
        let count = lifted.iter().filter(|q| on(q)).count() as u64;
        best = best.max(count);
    }
    best
}
