use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ccgeom::experiments::{self, ExperimentConfig, EXPERIMENTS};
use ccgeom::regions::{intersect_regions, IntersectionResult, Region};
use ccgeom::symmetry::{is_centrally_symmetric_result, SymmetryReport, Verdict};
use ccgeom::{GeomError, Isometry, SpaceKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::files::{Polar, RegionFile};
use crate::report::ReportDocument;
use crate::svg::{Element, Scene};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyArgs {
    /// Experiment names; empty or `all` runs every experiment.
    pub names: Vec<String>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub space: Option<SpaceKind>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timings: bool,
    /// JSON experiment configuration; flags given alongside it win.
    pub config: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn selected(names: &[String]) -> Result<Vec<&'static str>, CliError> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(EXPERIMENTS.to_vec());
    }
    names
        .iter()
        .map(|n| EXPERIMENTS.iter().copied().find(|e| e == n).ok_or_else(|| CliError::UnknownExperiment(n.clone())))
        .collect()
}

pub fn verify_config(args: &VerifyArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => serde_json::from_str(&read(p)?).map_err(|e| CliError::Parse(e.to_string()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if args.trials.is_some() {
        cfg.trials = args.trials;
    }
    if let Some(t) = args.tol {
        cfg.tolerances.geometry = t;
    }
    if args.space.is_some() {
        cfg.space = args.space;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the selected experiments and writes the report. Returns whether
/// every experiment passed.
pub fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let names = selected(&args.names)?;
    let cfg = verify_config(args)?;
    let mut reports = Vec::new();
    let mut timings = BTreeMap::new();
    for name in names {
        let t = Instant::now();
        let rep = experiments::run(name, &cfg).map_err(|e| CliError::Geometry(e.to_string()))?;
        timings.insert(name.to_string(), t.elapsed().as_secs_f64());
        reports.push(rep);
    }
    let mut doc = ReportDocument::new(cfg, reports);
    if args.timings {
        doc.timings = Some(timings);
    }
    doc.validate()?;
    let text = match args.format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
    };
    match &args.out {
        Some(p) => write_file(p, &text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(doc.passed)
}

#[derive(Debug, Clone, Default)]
pub struct IntersectArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Moves B by a small random isometry drawn from this seed.
    pub perturb: Option<u64>,
    pub tol: Option<f64>,
    pub emit_svg: Option<PathBuf>,
    pub emit_report: Option<PathBuf>,
}

pub const PERTURBATION: f64 = 1e-2;

/// Machine-readable outcome of `intersect`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectReport {
    pub a: RegionFile,
    pub b: RegionFile,
    pub classification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<usize>,
    /// Isolated ideal points, in radians.
    pub ideal_points: Vec<f64>,
    /// Ideal arcs of positive length as `(start, length)`.
    pub ideal_arcs: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Polar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub summary: String,
}

fn load_region(path: &Path) -> Result<RegionFile, CliError> {
    RegionFile::parse(&read(path)?)
}

fn verdict_text(rep: &SymmetryReport) -> String {
    let mut s = match rep.verdict {
        Verdict::Symmetric => "symmetric".to_string(),
        Verdict::NotSymmetric => "not symmetric".to_string(),
        Verdict::Indeterminate => "indeterminate".to_string(),
    };
    if let (Verdict::Symmetric, Some(c)) = (rep.verdict, &rep.center) {
        let p = Polar::of(c);
        s.push_str(&format!(", center=(r={:.6}, theta={:.6})", p.r, p.theta));
    } else if let Some(cert) = &rep.certificate {
        s.push_str(&format!(" ({})", cert.describe()));
    }
    s
}

/// Intersects two regions and classifies the result.
pub fn intersect_files(a: &RegionFile, b: &RegionFile, tol: f64) -> Result<IntersectReport, CliError> {
    if a.space != b.space {
        return Err(CliError::Space(format!("{} and {} regions cannot be intersected", a.space, b.space)));
    }
    let (ra, rb) = (a.region()?, b.region()?);
    let mut out = IntersectReport {
        a: a.clone(),
        b: b.clone(),
        classification: String::new(),
        arcs: None,
        ideal_points: Vec::new(),
        ideal_arcs: Vec::new(),
        verdict: None,
        center: None,
        residual: None,
        certificate: None,
        summary: String::new(),
    };
    let res = match intersect_regions(&ra, &rb) {
        Ok(r) => r,
        Err(GeomError::DegenerateContact) => {
            out.classification = "EmptyInterior".into();
            out.summary = "EmptyInterior (the regions only touch)".into();
            return Ok(out);
        }
        Err(e) => return Err(CliError::Geometry(e.to_string())),
    };
    out.classification = match &res {
        IntersectionResult::Compact(_) => "Compact".into(),
        other => other.label(),
    };
    let summary_head = res.label();
    if matches!(res, IntersectionResult::Empty | IntersectionResult::EmptyInterior) {
        out.summary = summary_head;
        return Ok(out);
    }
    let rep = is_centrally_symmetric_result(&res, tol);
    out.verdict = Some(rep.verdict);
    out.center = rep.center.as_ref().filter(|_| rep.verdict == Verdict::Symmetric).map(Polar::of);
    out.residual = rep.residual.is_finite().then_some(rep.residual);
    out.certificate = rep.certificate.as_ref().map(|c| c.describe());
    out.summary = match &res {
        IntersectionResult::Compact(p) => {
            out.arcs = Some(p.len());
            format!("{summary_head}, {}", verdict_text(&rep))
        }
        IntersectionResult::Noncompact { ideal } => {
            for &(start, len) in ideal.arcs() {
                if len > 1e-12 {
                    out.ideal_arcs.push((start, len));
                } else {
                    out.ideal_points.push(start);
                }
            }
            let mut s = summary_head;
            if a.space.is_hyperbolic() {
                s.push_str(&format!(", ideal points: {}", out.ideal_points.len()));
            }
            if !out.ideal_arcs.is_empty() {
                s.push_str(&format!(", ideal arcs: {}", out.ideal_arcs.len()));
            }
            format!("{s}, {}", verdict_text(&rep))
        }
        _ => unreachable!(),
    };
    Ok(out)
}

pub fn perturbed(file: &RegionFile, seed: u64) -> Result<RegionFile, CliError> {
    let region: Region = file.region()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso = Isometry::perturbation(file.space, &mut rng, PERTURBATION);
    RegionFile::of(&region.transformed(&iso))
}

pub fn intersect(args: &IntersectArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let a = load_region(&args.a)?;
    let mut b = load_region(&args.b)?;
    if let Some(seed) = args.perturb {
        b = perturbed(&b, seed)?;
    }
    let tol = args.tol.unwrap_or(ccgeom::Tolerances::default().symmetry);
    let rep = intersect_files(&a, &b, tol)?;
    writeln!(stdout, "{}", rep.summary)?;
    if let Some(p) = &args.emit_report {
        write_file(p, &(serde_json::to_string_pretty(&rep).expect("plain data") + "\n"))?;
    }
    if let Some(p) = &args.emit_svg {
        let mut scene = Scene::new(a.space);
        scene.elements = vec![
            Element::Region { region: a.shape.clone(), style: Some("a".into()) },
            Element::Region { region: b.shape.clone(), style: Some("b".into()) },
            Element::Intersection { a: a.shape, b: b.shape, style: None },
        ];
        write_file(p, &scene.render()?)?;
    }
    Ok(())
}

pub fn render(scene: &Path, out: &Path) -> Result<(), CliError> {
    let svg = Scene::parse(&read(scene)?)?.render()?;
    write_file(out, &svg)
}
