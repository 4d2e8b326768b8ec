//! One PASS/FAIL line per acceptance criterion, each within its time budget.
//! Run with `cargo test -p ccgeom-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use ccgeom::experiments::{run, ExperimentConfig, ExperimentReport};

struct Outcome {
    name: &'static str,
    ok: bool,
    elapsed: Duration,
    limit: Duration,
    detail: String,
}

fn metric(r: &ExperimentReport, key: &str) -> f64 {
    r.metrics.get(key).copied().unwrap_or(f64::NAN)
}

fn experiment(
    name: &'static str,
    experiment: &str,
    limit_s: f64,
    extra: impl Fn(&ExperimentReport) -> Result<(), String>,
) -> Outcome {
    let cfg = ExperimentConfig::with_seed(42);
    let t = Instant::now();
    let rep = run(experiment, &cfg).expect("known experiment");
    let elapsed = t.elapsed();
    let (ok, detail) = match (rep.passed, extra(&rep)) {
        (true, Ok(())) => (true, format!("{} trials", rep.trials_run)),
        (false, _) => (false, format!("{} failures, first: {}", rep.failures.len(), rep.failures[0].description)),
        (true, Err(e)) => (false, e),
    };
    Outcome { name, ok, elapsed, limit: Duration::from_secs_f64(limit_s), detail }
}

fn require(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn determinism() -> Outcome {
    let t = Instant::now();
    let once = || {
        Command::new(env!("CARGO_BIN_EXE_ccgeom"))
            .args(["verify", "all", "--seed", "42", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (once(), once());
    let elapsed = t.elapsed() / 2;
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    Outcome {
        name: "determinism",
        ok,
        elapsed,
        limit: Duration::from_secs(60),
        detail: format!("{} report bytes, exit {:?}", a.stdout.len(), a.status.code()),
    }
}

#[test]
fn acceptance() {
    let outcomes = vec![
        experiment("curvature table", "curvature", 1.0, |r| {
            require(metric(r, "max_abs_error") < 1e-5, format!("error {}", metric(r, "max_abs_error")))
        }),
        experiment("lambert inequality", "lambert", 1.0, |r| {
            require(r.trials_run >= 1000, "fewer than 1000 quadrangles")?;
            require(metric(r, "min_margin") > 0.0, "non-positive margin")?;
            require(metric(r, "flat_max_deviation") < 1e-12, "Euclidean control off")
        }),
        experiment("balls", "balls", 5.0, |r| {
            require(r.trials_run >= 600, "fewer than 200 pairs per space")?;
            require(metric(r, "max_residual") < 1e-8, "residual too large")?;
            require(metric(r, "max_centre_error") < 1e-8, "centre off the midpoint")
        }),
        experiment("paraball dichotomy", "paraballs", 2.0, |r| {
            require(metric(r, "max_residual") < 1e-8, "residual too large")
        }),
        experiment("reduction to single components", "small-intersections", 10.0, |r| {
            require(r.trials_run >= 50, "fewer than 50 configurations")?;
            require(metric(r, "disagreements") == 0.0, "membership disagreements")
        }),
        experiment("tangent base lines", "lemma21", 1.0, |r| {
            require(metric(r, "max_radius_difference") < 1e-10, "footprints not congruent")?;
            require(metric(r, "max_lens_excess") <= 0.0, "intersection leaves the disk")
        }),
        experiment("construction C", "construction-c", 2.0, |r| {
            require(metric(r, "compact") > 0.0 && metric(r, "refused") > 0.0, "grid misses one side of the threshold")
        }),
        experiment("perturbation asymmetry", "perturbation", 1.0, |r| {
            require(metric(r, "angle_increase") > 1e-8, "angle did not grow")
        }),
        experiment("detector soundness", "symmetry-soundness", 10.0, |r| {
            require(metric(r, "perturbed_tested") >= 100.0, "fewer than 100 perturbed polygons")?;
            require(metric(r, "perturbed_rejected") >= 99.0, "perturbed polygons accepted")?;
            require(metric(r, "max_centre_error") < 1e-8, "centre error")?;
            require(metric(r, "max_meb_distance") < 1e-6, "enclosing-ball centre disagrees")
        }),
        experiment("disk hulls", "theorem4", 2.0, |r| {
            require(metric(r, "max_symmetric_residual") < 1e-8, "congruent hull residual")
        }),
        determinism(),
    ];
    let mut all = true;
    for o in &outcomes {
        let ok = o.ok && o.elapsed <= o.limit;
        all &= ok;
        println!(
            "{} {:<32} {:>8.3}s (limit {:.0}s)  {}",
            if ok { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs_f64(),
            o.detail
        );
    }
    assert!(all, "acceptance criteria failed");
}
