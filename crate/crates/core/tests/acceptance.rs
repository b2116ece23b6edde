//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use boxpleat::construct::{compile, fold_rect_seam, paper_size, CompileResult, Mode};
use boxpleat::foldsim::{
    check_loop_closure, evaluate, evaluate_with, total_atoms, verify, EvalOptions, FoldedState, SeamStatus,
    Traversal,
};
use boxpleat::gadgets::cube_gadget;
use boxpleat::io::{export_fold, parse_fold, FoldExportOptions};
use boxpleat::polycube::Face;
use common::{cells, corpus, CORPUS_SEED};

const CORPUS_SIZE: usize = 54;

fn report(n: u32, name: &str, failures: &[String]) -> bool {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n} ({name}): {verdict}");
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    failures.is_empty()
}

fn base_case() -> Vec<String> {
    let mut fails = Vec::new();
    let g = cube_gadget();
    // Hinges only matter once the gadget is embedded in a larger sheet.
    let sheet = g.pattern.clone();
    let cube = cells(&[(0, 0, 0)]);
    let seam = cube.default_seam_face();
    let r = fold_rect_seam(&cube, seam).unwrap();
    if r.pattern != sheet {
        fails.push("single-cube pattern differs from the embedded gadget".into());
    }
    let fs = evaluate(&sheet).unwrap();
    let rep = verify(&fs, &cube, &r.face_map, Mode::RectSeam);
    if !rep.coverage_ok || fs.covered.len() != 6 {
        fails.push(format!("covered {} squares, expected 6", fs.covered.len()));
    }
    let seamed: Vec<&str> = rep.seamed().map(|c| c.face.as_str()).collect();
    if seamed != [seam.to_string().as_str()] {
        fails.push(format!("seamed faces {seamed:?}, expected only the bottom {seam}"));
    }
    if rep.seam_census.iter().filter(|c| c.status == SeamStatus::Seamless).count() != 5 {
        fails.push("expected 5 seamless faces".into());
    }
    fails
}

fn size_bounds() -> Vec<String> {
    let mut fails = Vec::new();
    for (p, _) in corpus(24) {
        let n = p.len() as i32;
        for (mode, want) in [
            (Mode::RectSeam, (4 * n + 1, 2 * n + 1)),
            (Mode::RectSeamless, (4 * n + 1, 2 * n + 2)),
            (Mode::Square, (3 * n + 2, 3 * n + 2)),
        ] {
            let t = Instant::now();
            let r = compile(&p, mode, None).unwrap();
            let got = (r.pattern.width(), r.pattern.height());
            if got != want || paper_size(p.len(), mode) != want {
                fails.push(format!("n={n} {}: {got:?} != {want:?}", mode.name()));
            }
            if t.elapsed().as_secs_f64() > 1.0 {
                fails.push(format!("n={n} {} took {:?}", mode.name(), t.elapsed()));
            }
        }
    }
    fails
}

struct Compiled {
    seam: Face,
    results: Vec<(CompileResult, FoldedState)>,
}

fn compile_corpus() -> (Vec<Compiled>, f64) {
    let t = Instant::now();
    let out = corpus(CORPUS_SIZE)
        .into_iter()
        .map(|(p, g)| Compiled {
            seam: g,
            results: Mode::ALL
                .iter()
                .map(|&m| {
                    let r = compile(&p, m, Some(g)).unwrap();
                    let fs = evaluate(&r.pattern).unwrap();
                    (r, fs)
                })
                .collect(),
        })
        .collect();
    (out, t.elapsed().as_secs_f64())
}

fn coverage(corpus: &[Compiled], secs: f64) -> Vec<String> {
    let mut fails = Vec::new();
    for (r, fs) in corpus.iter().flat_map(|c| &c.results) {
        let rep = verify(fs, &r.polycube, &r.face_map, r.mode);
        let want = r.polycube.target_squares();
        let got: Vec<_> = fs.covered.keys().copied().collect();
        let aligned = rep.coverage_ok && got.len() == want.len();
        if !aligned || fs.off_lattice_atoms != 0 {
            fails.push(format!("{} n={}: {:?}", r.mode.name(), r.polycube.len(), rep.details));
        }
    }
    if secs >= 30.0 {
        fails.push(format!("corpus compile took {secs:.1}s"));
    }
    fails
}

fn seam_census(corpus: &[Compiled]) -> Vec<String> {
    let mut fails = Vec::new();
    for c in corpus {
        for (r, _) in &c.results {
            let got: Vec<String> = r.report.seamed().map(|f| f.face.clone()).collect();
            let want = match r.mode {
                Mode::RectSeam => vec![c.seam.to_string()],
                _ => Vec::new(),
            };
            if got != want {
                fails.push(format!("{} n={}: seamed {got:?}, expected {want:?}", r.mode.name(), r.polycube.len()));
            }
        }
    }
    fails
}

fn loop_closure(corpus: &[Compiled]) -> Vec<String> {
    let mut fails = Vec::new();
    let alt = EvalOptions { traversal: Traversal::DepthReversed, raw_triangles: true };
    for (r, fs) in corpus.iter().flat_map(|c| &c.results) {
        let a = fs.triangle_placements();
        let b = evaluate_with(&r.pattern, alt).unwrap().triangle_placements();
        if a != b {
            fails.push(format!("{} n={}: traversal orders disagree", r.mode.name(), r.polycube.len()));
        }
        if let Err(e) = check_loop_closure(&r.pattern) {
            fails.push(format!("{} n={}: {e}", r.mode.name(), r.polycube.len()));
        }
    }
    fails
}

fn area(corpus: &[Compiled]) -> Vec<String> {
    let mut fails = Vec::new();
    for (r, fs) in corpus.iter().flat_map(|c| &c.results) {
        let paper = 16 * i64::from(r.pattern.width()) * i64::from(r.pattern.height());
        if total_atoms(fs) as i64 != paper {
            fails.push(format!("{} n={}: {} atoms, paper {paper}", r.mode.name(), r.polycube.len(), total_atoms(fs)));
        }
    }
    let cube = cells(&[(0, 0, 0)]);
    let r = fold_rect_seam(&cube, cube.default_seam_face()).unwrap();
    let units = total_atoms(&evaluate(&r.pattern).unwrap()) / 16;
    if units != 15 {
        fails.push(format!("single cube covers {units} units, expected 15"));
    }
    fails
}

fn diameter() -> Vec<String> {
    let mut fails = Vec::new();
    let tower = cells(&[(0, 0, 0), (0, 0, 1), (0, 0, 2)]);
    for mode in Mode::ALL {
        let r = compile(&tower, mode, None).unwrap();
        let fs = evaluate(&r.pattern).unwrap();
        // Doubled coordinates: a length of 3 units is 6 grid steps.
        let (folded, flat) = (fs.folded_diameter_sq(), fs.flat_diameter_sq());
        if folded > flat {
            fails.push(format!("{}: folded {folded} exceeds flat {flat}", mode.name()));
        }
        if folded < 36 {
            fails.push(format!("{}: folded diameter^2 {folded} below 36", mode.name()));
        }
    }
    fails
}

fn determinism(corpus: &[Compiled]) -> Vec<String> {
    let mut fails = Vec::new();
    for (r, _) in corpus.iter().flat_map(|c| &c.results) {
        let text = export_fold(&r.pattern, Some(&r.face_map), Some(r.mode), FoldExportOptions::default());
        match parse_fold(&text) {
            Ok(doc) if doc.pattern == r.pattern && doc.face_map.as_ref() == Some(&r.face_map) => {}
            Ok(_) => fails.push(format!("{} n={}: round trip lost data", r.mode.name(), r.polycube.len())),
            Err(e) => fails.push(format!("{} n={}: {e}", r.mode.name(), r.polycube.len())),
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("l.txt");
    std::fs::write(&input, "0 0 0\n1 0 0\n1 1 0\n1 1 1\n").unwrap();
    for args in [
        vec!["fold", "--mode", "square", "--format", "fold"],
        vec!["fold", "--mode", "rect-seam", "--format", "svg"],
        vec!["fold", "--mode", "rect-seamless", "--format", "obj"],
        vec!["stats", "--mode", "square"],
        vec!["verify", "--mode", "rect-seamless"],
    ] {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_boxpleat")).args(&args).arg(&input).output().unwrap()
        };
        let (a, b) = (run(), run());
        if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
            fails.push(format!("{args:?}: outputs differ or command failed"));
        }
    }
    fails
}

fn main() {
    println!("corpus seed {CORPUS_SEED:#x}, {CORPUS_SIZE} polycubes");
    let (corpus, secs) = compile_corpus();
    println!("compiled {} patterns in {secs:.2}s", corpus.len() * Mode::ALL.len());
    let results = [
        report(1, "base case", &base_case()),
        report(2, "size bounds", &size_bounds()),
        report(3, "coverage equality", &coverage(&corpus, secs)),
        report(4, "seam census", &seam_census(&corpus)),
        report(5, "loop closure and path independence", &loop_closure(&corpus)),
        report(6, "area conservation", &area(&corpus)),
        report(7, "diameter sanity", &diameter()),
        report(8, "determinism and round trips", &determinism(&corpus)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
