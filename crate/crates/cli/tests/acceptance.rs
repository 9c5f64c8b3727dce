//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use itertools::Itertools;
use latticeset::analysis::{
    count_traces, count_violating_tuples, crossing_count, find_violations, find_violations_of_kind,
    lattice_points_on_hyperplane, vc_refute, SurfaceKind,
};
use latticeset::constructions::{
    deletion_refine, is_prime, moment_curve, random_sample, GridPartition, Probability,
};
use latticeset::geometry::{is_cohyperplanar, is_cospherical_or_cohyperplanar, on_surface, sphere_through};
use latticeset::{GeneralizedSphere, LatticePoint, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("predicate-oracle", predicate_oracle),
        ("moment-curve-guarantee", moment_curve_guarantee),
        ("deletion-soundness", deletion_soundness),
        ("cube-fixture", cube_fixture),
        ("vc-certificates", vc_certificates),
        ("hyperplane-lattice-bound", hyperplane_bound),
        ("crossing-bound", crossing_bound),
        ("traces-sauer-shelah", traces_sauer_shelah),
        ("benchmark-trend", benchmark_trend),
        ("determinism", determinism),
    ];
    // Optional name filters, as with the default harness.
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (name, check) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{secs:.1}s] {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Distinct points of `[n]^d` drawn from a seeded stream.
fn random_points(rng: &mut ChaCha8Rng, n: i64, d: usize, count: usize) -> Vec<LatticePoint> {
    let cells = (n as usize).pow(d as u32);
    index::sample(rng, cells, count)
        .into_iter()
        .map(|mut i| {
            let mut c = vec![0i64; d];
            for slot in &mut c {
                *slot = (i % n as usize) as i64 + 1;
                i /= n as usize;
            }
            LatticePoint::new(c)
        })
        .collect()
}

/// Whether `d+2` points share a sphere or hyperplane, using only
/// `sphere_through` and membership. Leaving out each point in turn, the first
/// non-degenerate remainder decides; if every `(d+1)`-subset is cohyperplanar
/// the whole tuple spans less than `R^d` and lies on a hyperplane.
fn sphere_oracle(tuple: &[LatticePoint]) -> bool {
    for skip in 0..tuple.len() {
        let head: Vec<LatticePoint> =
            tuple.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| p.clone()).collect();
        if !is_cohyperplanar(&head).unwrap() {
            let s = sphere_through(&head).unwrap();
            return on_surface(&s, &tuple[skip]).unwrap();
        }
    }
    true
}

fn predicate_oracle() -> Outcome {
    let mut compared = 0usize;
    for (d, n) in [(2, 3), (3, 2)] {
        let grid = PointSet::full_grid(d, n).unwrap();
        for tuple in grid.points().iter().cloned().permutations(d + 2) {
            let got = is_cospherical_or_cohyperplanar(&tuple).unwrap();
            ensure!(got == sphere_oracle(&tuple), "disagreement on {tuple:?}");
            compared += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut positives = 0;
    for _ in 0..10_000 {
        let tuple = random_points(&mut rng, 10, 3, 5);
        let got = is_cospherical_or_cohyperplanar(&tuple).unwrap();
        ensure!(got == sphere_oracle(&tuple), "disagreement on {tuple:?}");
        positives += usize::from(got);
    }
    Ok(format!("{compared} grid tuples and 10000 random tuples agree ({positives} random positives)"))
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let v = &f * &rows[r][j];
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Some surface passes through all of `pts`: the rows `(|p|^2, p, 1)` have
/// rank below `d+2`.
fn share_a_surface(pts: &[&LatticePoint]) -> bool {
    let d = pts[0].dim();
    let rat = |v: i128| BigRational::from_integer(BigInt::from(v));
    let rows = pts
        .iter()
        .map(|p| {
            let mut row = vec![rat(p.norm_sq())];
            row.extend(p.coords().iter().map(|&c| rat(c.into())));
            row.push(rat(1));
            row
        })
        .collect();
    rank(rows) < d + 2
}

fn moment_curve_guarantee() -> Outcome {
    let mut sets = 0;
    for (d, max_p) in [(2usize, 200i64), (3, 150)] {
        for p in (2..=max_p).filter(|&p| is_prime(p)) {
            let (ps, report) = moment_curve(p, d).map_err(|e| format!("p={p} d={d}: {e}"))?;
            ensure!(ps.len() as i64 == p / (4 * d as i64), "p={p} d={d}: size {}", ps.len());
            ensure!(report.verified, "p={p} d={d}: report not verified");
            ensure!(
                find_violations_of_kind(&ps, d + 1, SurfaceKind::Hyperplanes).unwrap().is_empty(),
                "p={p} d={d}: d+1 points on a hyperplane"
            );
            ensure!(find_violations(&ps, 2 * d).unwrap().is_empty(), "p={p} d={d}: 2d points on a surface");
            for sub in ps.points().iter().cloned().combinations(d + 1) {
                ensure!(!is_cohyperplanar(&sub).unwrap(), "p={p} d={d}: cohyperplanar {sub:?}");
            }
            for sub in ps.points().iter().combinations(2 * d) {
                ensure!(!share_a_surface(&sub), "p={p} d={d}: common surface through {sub:?}");
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} prime/dimension pairs, exhaustive tuple checks included"))
}

fn deletion_soundness() -> Outcome {
    let mut deleted = 0;
    let mut initial = 0;
    for seed in 0..50 {
        let ps = random_sample(6, 3, Probability::Ratio(1, 4), seed).unwrap();
        let before = count_violating_tuples(&ps).unwrap();
        let r = deletion_refine(&ps).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(find_violations(&r.points, 5).unwrap().is_empty(), "seed {seed}: output has a violation");
        ensure!(u128::from(r.deleted) <= before, "seed {seed}: deleted {} > {before} tuples", r.deleted);
        deleted += r.deleted;
        initial += before;
    }
    Ok(format!("50 subsets of [6]^3, {deleted} deletions against {initial} violating tuples"))
}

fn cube_fixture() -> Outcome {
    let cube = PointSet::full_grid(3, 2).unwrap();
    for t in cube.points().iter().cloned().combinations(5) {
        ensure!(sphere_oracle(&t), "oracle: {t:?} not cospherical");
    }
    let w = find_violations(&cube, 5).unwrap();
    ensure!(w.len() == 1, "{} witnesses", w.len());
    ensure!(w[0].surface.coefficients() == [1, -3, -3, -3, 6], "surface {:?}", w[0].surface.coefficients());
    ensure!(w[0].members.len() == 8, "{} members", w[0].members.len());
    ensure!(find_violations_of_kind(&cube, 5, SurfaceKind::Hyperplanes).unwrap().is_empty(), "hyperplane with 5 points");
    let r = deletion_refine(&cube).unwrap();
    ensure!(r.points.len() == 4, "deletion ends at {}", r.points.len());
    Ok("one sphere (1,-3,-3,-3,6) through all 8 points, deletion ends at 4".into())
}

fn vc_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut depth = 0;
    for (d, n) in [(2usize, 10i64), (3, 8)] {
        for _ in 0..1000 {
            let q = random_points(&mut rng, n, d, d + 2);
            let r = vc_refute(&q).map_err(|e| format!("{q:?}: {e}"))?;
            r.validate().map_err(|e| format!("{q:?}: {e}"))?;
            depth = depth.max(r.depth());
        }
    }
    Ok(format!("2000 certificates validate, deepest recursion {depth}"))
}

fn hyperplane_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut applied = 0;
    for d in [2usize, 3] {
        for n in [8i64, 16, 32] {
            let mut drawn = 0;
            while drawn < 200 {
                let a: Vec<i64> = (0..d).map(|_| rng.gen_range(-n..=n)).collect();
                if a.iter().fold(0i64, |g, &v| num_integer::gcd(g, v)) != 1 {
                    continue;
                }
                drawn += 1;
                let h = lattice_points_on_hyperplane(&a, 0, n).unwrap();
                if h.precondition_met {
                    applied += 1;
                    ensure!(h.within_bound, "normal {a:?} n={n}: {} points, bound {:.1}", h.count, h.bound());
                }
            }
        }
    }
    ensure!(applied > 0, "precondition never held");
    Ok(format!("1200 primitive normals, bound applied and held in {applied}"))
}

fn crossing_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut detail = Vec::new();
    for d in [2usize, 3] {
        let mut normalized = Vec::new();
        for n in [16i64, 32, 64] {
            let spheres: Vec<GeneralizedSphere> = (0..100)
                .map(|_| {
                    let c: Vec<i128> = (0..d).map(|_| rng.gen_range(1..=n as i128)).collect();
                    let r2 = rng.gen_range(1..=(n * n) as i128);
                    let mut coeffs = vec![1];
                    coeffs.extend(c.iter().map(|x| -2 * x));
                    coeffs.push(c.iter().map(|x| x * x).sum::<i128>() - r2);
                    GeneralizedSphere::canonicalize(&coeffs).unwrap()
                })
                .collect();
            for parts in [2i64, 4, 8] {
                let grid = GridPartition::new(n, d, parts).unwrap();
                let max = spheres.iter().map(|s| crossing_count(s, &grid).unwrap()).max().unwrap();
                normalized.push(max as f64 / (parts as f64).powi(d as i32 - 1));
            }
        }
        let lo = normalized.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = normalized.iter().cloned().fold(0.0, f64::max);
        ensure!(lo > 0.0 && hi / lo < 4.0, "d={d}: normalized maxima {normalized:.2?} vary by {:.2}", hi / lo);
        detail.push(format!("d={d} spread {:.2}", hi / lo));
    }
    Ok(detail.join(", "))
}

fn traces_sauer_shelah() -> Outcome {
    let mut worst = 0.0f64;
    let mut sampled = 0;
    for (d, n) in [(2usize, 4i64), (3, 3)] {
        let ps = PointSet::full_grid(d, n).unwrap();
        for z in 1..=8 {
            let r = count_traces(&ps, z, 20_000, z as u64).unwrap();
            ensure!(r.within_bound(), "d={d} z={z}: {} traces > {}", r.max_traces, r.sauer_bound);
            worst = worst.max(r.max_traces as f64 / r.sauer_bound as f64);
            sampled += usize::from(!r.exhaustive);
        }
    }
    Ok(format!("z <= 8 on [4]^2 and [3]^3, max traces/bound {worst:.3}, {sampled} sampled cases"))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_latticeset")).args(args).output().expect("binary runs")
}

/// `(n, final_size, exponent)` rows of a bench run.
fn bench_table(args: &[&str]) -> Result<Vec<(i64, u64, Option<f64>)>, String> {
    let out = run_cli(args);
    ensure!(out.status.success(), "bench {args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            let n = rec[2].parse().map_err(|_| "bad n")?;
            let size = rec[4].parse().map_err(|_| "bad size")?;
            Ok((n, size, rec[6].parse().ok()))
        })
        .collect()
}

fn benchmark_trend() -> Outcome {
    let mut problems = Vec::new();
    let moment = bench_table(&["bench", "--d", "2", "--n-list", "64,128,256", "--methods", "moment", "--no-timing"])?;
    let exps: Vec<f64> = moment.iter().map(|r| r.2.unwrap_or(f64::NAN)).collect();
    if !exps.iter().all(|&e| e > 0.85) {
        problems.push(format!("moment d=2 exponents {exps:.3?} not all above 0.85"));
    }
    if !exps.windows(2).all(|w| w[0] < w[1]) {
        problems.push(format!("moment d=2 exponents {exps:.3?} not increasing"));
    }
    // bench exits non-zero on any unverified output, so success means verified.
    let greedy = bench_table(&["bench", "--d", "3", "--n-list", "2,3,4,5,6,7,8", "--methods", "greedy", "--no-timing"])?;
    let sizes: Vec<u64> = greedy.iter().map(|r| r.1).collect();
    if !sizes.windows(2).all(|w| w[0] <= w[1]) {
        problems.push(format!("greedy d=3 sizes {sizes:?} for n=2..8 not nondecreasing"));
    }
    ensure!(problems.is_empty(), "{}", problems.join("; "));
    Ok(format!("moment exponents {exps:.3?}, greedy sizes {sizes:?}"))
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let commands: [&[&str]; 5] = [
        &["gen", "--method", "moment", "--n", "97", "--d", "2"],
        &["gen", "--method", "pipeline", "--n", "8", "--d", "3", "--seed", "5"],
        &["gen", "--method", "greedy", "--n", "5", "--d", "2", "--seed", "9", "--order", "random"],
        &["bench", "--d", "3", "--n-list", "4,8", "--methods", "moment,pipeline,greedy", "--seeds", "0,1", "--no-timing"],
        &["stats", "--which", "rich,lines,cohyperplanar,traces"],
    ];
    let stats_input = dirs[0].path().join("stats_input.json");
    for (i, cmd) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for dir in &dirs {
            let base = dir.path().join(format!("run{i}"));
            let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
            match cmd[0] {
                "gen" => args.extend(["--out".into(), path_str(&base.with_extension("json")), "--report".into(), path_str(&base.with_extension("report.json"))]),
                "bench" => args.extend(["--csv".into(), path_str(&base.with_extension("csv"))]),
                _ => args.insert(1, path_str(&stats_input)),
            }
            let argv: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = run_cli(&argv);
            ensure!(out.status.success(), "{args:?} exited {:?}", out.status.code());
            let mut bytes = out.stdout;
            for ext in ["json", "report.json", "csv"] {
                if let Ok(file) = std::fs::read(base.with_extension(ext)) {
                    bytes.extend(file);
                }
            }
            outputs.push(bytes);
            if i == 0 && !stats_input.exists() {
                std::fs::copy(base.with_extension("json"), &stats_input).unwrap();
            }
        }
        ensure!(outputs[0] == outputs[1], "{cmd:?} output differs between runs");
        ensure!(!outputs[0].is_empty(), "{cmd:?} produced nothing");
    }
    Ok("gen (3 methods), bench and stats repeat byte for byte".into())
}

fn path_str(p: &Path) -> String {
    p.to_str().expect("utf-8 temp path").to_string()
}
