use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ccgeom::cycles::{Cycle, Side};
use ccgeom::experiments::{construction_c_pair, lemma21_pair};
use ccgeom::regions::{CoreSet, Region};
use ccgeom::{Geodesic, Point, SpaceKind};
use ccgeom_cli::files::{CycleShape, RegionFile};
use ccgeom_cli::report::ReportDocument;
use ccgeom_cli::svg::{Element, Scene};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ccgeom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn sample_regions() -> Vec<Region> {
    let (k, l) = construction_c_pair(2.0, 2.0, 0.5).unwrap();
    vec![
        Region::disk(Point::from_polar(SpaceKind::H2, 0.7, 1.1), 0.9).unwrap(),
        Region::disk(Point::from_polar(SpaceKind::S2, 0.3, -2.0), 0.4).unwrap(),
        Region::disk(Point::from_polar(SpaceKind::E2, 2.0, 0.5), 1.5).unwrap(),
        Region::paraball(0.8, -0.3).unwrap(),
        Region::paraball(-2.0, 0.6).unwrap(),
        Region::half_plane(Geodesic::from_ideal(0.3, 2.9).unwrap()),
        Region::half_plane(Geodesic::from_pole(&Point::from_polar(SpaceKind::S2, 0.4, 0.2)).unwrap()),
        Region::half_plane(Geodesic::flat(1.2, -0.7)),
        Region::padded(CoreSet::new(vec![Geodesic::from_ideal(0.1, 1.7).unwrap(), Geodesic::from_ideal(3.0, 4.5).unwrap()]).unwrap(), 0.3)
            .unwrap(),
        k,
        l,
    ]
}

#[test]
fn region_files_round_trip() {
    for r in sample_regions() {
        let file = RegionFile::of(&r).unwrap();
        let back = RegionFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let r2 = back.region().unwrap();
        assert_eq!(r2.label(), r.label());
        let probes: Vec<Point> =
            (0..40).map(|i| Point::from_polar(r.space(), 0.07 * i as f64, 0.9 * i as f64)).collect();
        for p in &probes {
            let (a, b) = (r.signed_distance(p), r2.signed_distance(p));
            assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()), "{} {a} {b}", r.label());
        }
    }
}

#[test]
fn cycle_files_round_trip() {
    let cycles = vec![
        Cycle::circle(Point::from_polar(SpaceKind::H2, 1.0, 2.0), 0.5).unwrap(),
        Cycle::paracycle(1.0, 0.2).unwrap(),
        Cycle::hypercycle(Geodesic::from_ideal(0.5, 2.0).unwrap(), 0.7, Side::Right).unwrap(),
        Cycle::geodesic(Geodesic::from_ideal(4.0, 1.0).unwrap()),
        Cycle::geodesic(Geodesic::flat(0.4, 1.0)),
    ];
    for c in cycles {
        let shape = CycleShape::of(&c).unwrap();
        let text = serde_json::to_string(&shape).unwrap();
        let back: CycleShape = serde_json::from_str(&text).unwrap();
        let c2 = back.cycle(c.space()).unwrap();
        for i in 0..20 {
            let p = c.point_at(0.3 * i as f64);
            assert!(c2.signed_distance(&p).abs() < 1e-12, "{}", c.label());
        }
    }
}

#[test]
fn malformed_files_are_rejected() {
    for text in [
        r#"{"space":"H2","kind":"disk","center":{"r":1,"theta":0}}"#,
        r#"{"space":"H2","kind":"blob"}"#,
        r#"{"space":"H2","kind":"disk","center":{"r":1,"theta":0},"radius":1,"extra":2}"#,
        r#"{"space":"H2","kind":"disk","center":{"r":1,"theta":0},"radius":-1}"#,
        r#"{"space":"X9","kind":"paraball","ideal":0,"distance":0}"#,
        "not json",
    ] {
        let e = RegionFile::parse(text).and_then(|f| f.region().map(|_| ())).unwrap_err();
        assert_eq!(e.code(), 2, "{text}: {e}");
    }
    let e = RegionFile::parse(r#"{"space":"E2","kind":"paraball","ideal":0,"distance":0}"#).unwrap().region().unwrap_err();
    assert_eq!(e.code(), 2);
}

#[test]
fn intersect_prints_a_classification() {
    let out = run(&["intersect", &data("lens_a.json"), &data("lens_b.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Compact(2), symmetric, center=(r=0.000000"), "{text}");

    let out = run(&["intersect", &data("paraball.json"), &data("halfplane.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Noncompact"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let disk = |x: f64| format!(r#"{{"space":"E2","kind":"disk","center":{{"r":{x},"theta":0}},"radius":1}}"#);
    let o = write(dir.path(), "o.json", &disk(0.0));
    let touching = write(dir.path(), "t.json", &disk(2.0));
    let far = write(dir.path(), "f.json", &disk(5.0));
    for (other, want) in [(&touching, "EmptyInterior"), (&far, "Empty\n")] {
        let out = run(&["intersect", &o, other]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8(out.stdout).unwrap().starts_with(want));
    }
}

#[test]
fn construction_c_files_are_symmetric_until_perturbed() {
    let dir = tempfile::tempdir().unwrap();
    let (k, l) = construction_c_pair(2.0, 2.0, 0.5).unwrap();
    let a = write(dir.path(), "k.json", &RegionFile::of(&k).unwrap().to_json());
    let b = write(dir.path(), "l.json", &RegionFile::of(&l).unwrap().to_json());
    let report = dir.path().join("r.json");
    let svg = dir.path().join("c.svg");
    let out = run(&["intersect", &a, &b, "--emit-report", report.to_str().unwrap(), "--emit-svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.starts_with("Compact(4), symmetric"), "{line}");
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["arcs"], 4);
    assert!(fs::read_to_string(&svg).unwrap().contains(r#"class="center""#));

    let out = run(&["intersect", &a, &b, "--perturb", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.contains("not symmetric"), "{line}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{");
    let s2 = write(dir.path(), "s2.json", r#"{"space":"S2","kind":"disk","center":{"r":0,"theta":0},"radius":0.5}"#);
    assert_eq!(run(&["intersect", &bad, &data("lens_a.json")]).status.code(), Some(2));
    assert_eq!(run(&["intersect", &s2, &data("lens_a.json")]).status.code(), Some(2));
    assert_eq!(run(&["intersect", "/nonexistent/a.json", &data("lens_a.json")]).status.code(), Some(3));
    assert_eq!(run(&["verify", "no-such-experiment"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--bogus-flag"]).status.code(), Some(2));
    assert_eq!(run(&["render", &bad, dir.path().join("x.svg").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["render", &data("lens_scene.json"), "/nonexistent/dir/x.svg"]).status.code(), Some(3));
    let out = run(&["verify", "lambert", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "curvature", "lemma21", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_json_is_deterministic_and_valid() {
    let args = ["verify", "curvature", "lambert", "construction-c", "--seed", "9", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = ReportDocument::parse(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(doc.seed, 9);
    assert_eq!(doc.reports.len(), 3);
    assert!(doc.passed && doc.timings.is_none());

    // the embedded configuration reproduces the run
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", &serde_json::to_string(&doc.config).unwrap());
    let c = run(&["verify", "curvature", "lambert", "construction-c", "--config", &cfg, "--format", "json"]);
    assert_eq!(c.stdout, a.stdout);

    let t = run(&["verify", "lambert", "--timings", "--format", "json", "--tol", "1e-7"]);
    let doc = ReportDocument::parse(std::str::from_utf8(&t.stdout).unwrap()).unwrap();
    assert!(doc.timings.unwrap().contains_key("lambert"));
    assert_eq!(doc.tolerances.geometry, 1e-7);
}

#[test]
fn verify_text_has_one_line_per_experiment() {
    let out = run(&["verify", "curvature", "lemma21"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("PASS curvature"));
    assert!(lines[1].starts_with("PASS lemma21"));
    assert!(lines[2].starts_with("2/2 experiments passed"));
}

#[test]
fn empty_scene_is_just_the_model_circle() {
    let svg = Scene::new(SpaceKind::H2).render().unwrap();
    assert_eq!(svg.matches("<circle").count(), 1);
    assert!(!svg.contains("<path"));
    assert!(svg.contains(r#"<circle class="model" cx="0.000" cy="0.000" r="500.000"/>"#));
}

#[test]
fn rendering_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&a, &b] {
        let out = run(&["render", &data("lens_scene.json"), p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let scene = Scene::parse(&fs::read_to_string(data("lens_scene.json")).unwrap()).unwrap();
    assert_eq!(Scene::parse(&scene.to_json()).unwrap(), scene);
}

// radius and end points of every arc command in a path
fn arcs(svg: &str) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for d in svg.split(r#" d=""#).skip(1) {
        let d = &d[..d.find('"').unwrap()];
        let toks: Vec<&str> = d.split_whitespace().collect();
        for (i, t) in toks.iter().enumerate() {
            if *t == "A" {
                let f = |k: usize| toks[i + k].parse::<f64>().unwrap();
                out.push((f(1), f(6), f(7)));
            }
        }
    }
    out
}

#[test]
fn tangent_base_line_scene_shows_congruent_circles_touching_at_the_common_end() {
    let (k, l, u0) = lemma21_pair(0.6, 0.5).unwrap();
    let mut scene = Scene::new(SpaceKind::H2);
    for r in [&k, &l] {
        scene.elements.push(Element::Region { region: RegionFile::of(r).unwrap().shape, style: None });
    }
    let svg = scene.render().unwrap();
    let arcs = arcs(&svg);
    assert_eq!(arcs.len(), 2, "{svg}");
    assert!((arcs[0].0 - arcs[1].0).abs() < 2e-3, "{arcs:?}");
    // each arc ends on the model circle; one end of each is the image of u0
    let target = (500.0 * u0.cos(), -500.0 * u0.sin());
    let starts: Vec<(f64, f64)> = svg
        .split(r#" d="M "#)
        .skip(1)
        .map(|d| {
            let t: Vec<f64> = d.split_whitespace().take(2).map(|x| x.parse().unwrap()).collect();
            (t[0], t[1])
        })
        .collect();
    for (i, (_, x, y)) in arcs.iter().enumerate() {
        let near = |p: (f64, f64)| (p.0 - target.0).hypot(p.1 - target.1) < 2e-3;
        assert!(near((*x, *y)) || near(starts[i]), "{svg}");
    }
    assert!((PI / 2.0 + u0).abs() < 1e-15);
}
