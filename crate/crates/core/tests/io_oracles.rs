mod common;

use std::collections::BTreeSet;

use boxpleat::construct::{compile, FaceMap, Mode, SquarePos};
use boxpleat::foldsim::evaluate;
use boxpleat::gadgets::{apply_insertion, cube_gadget, Orientation};
use boxpleat::io::{export_fold, export_obj, export_svg, parse_fold, FoldExportOptions, ObjOptions, SvgOptions};
use boxpleat::pattern::CreasePattern;
use common::poly;
use serde_json::Value;

fn fold_json(c: &CreasePattern, border: bool) -> Value {
    serde_json::from_str(&export_fold(c, None, None, FoldExportOptions { include_border: border })).unwrap()
}

fn count(v: &Value, key: &str) -> usize {
    v[key].as_array().unwrap().len()
}

#[test]
fn fold_examples() {
    let blank = CreasePattern::new(5, 3);
    let v = fold_json(&blank, false);
    assert_eq!(count(&v, "edges_vertices"), 0);
    let v = fold_json(&blank, true);
    let assignments: BTreeSet<&str> =
        v["edges_assignment"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
    assert_eq!(assignments, BTreeSet::from(["B"]));

    let g = cube_gadget();
    let v = fold_json(&g.pattern, false);
    assert_eq!(count(&v, "edges_vertices"), g.pattern.len());
    assert_eq!(count(&v, "edges_foldAngle"), g.pattern.len());

    for c in [blank, g.pattern] {
        let doc = parse_fold(&export_fold(&c, None, None, FoldExportOptions::default())).unwrap();
        assert_eq!(doc.pattern, c);
        assert_eq!(doc.face_map, None);
    }
}

#[test]
fn fold_round_trip_keeps_metadata() {
    let r = compile(&poly("0 0 0\n0 1 0\n"), Mode::RectSeam, None).unwrap();
    let text = export_fold(&r.pattern, Some(&r.face_map), Some(r.mode), FoldExportOptions { include_border: true });
    let doc = parse_fold(&text).unwrap();
    assert_eq!(doc.pattern, r.pattern);
    assert_eq!(doc.face_map, Some(r.face_map));
    assert_eq!(doc.mode, Some(Mode::RectSeam));
}

#[test]
fn svg_examples() {
    let empty = export_svg(&CreasePattern::new(5, 3), SvgOptions::default());
    assert!(empty.contains("tiling"));
    assert!(!empty.contains("data-angle"));

    // The gadget embedded in a larger sheet shows all four angle colors.
    let (p, _) =
        apply_insertion(&CreasePattern::new(5, 3), &FaceMap::default(), SquarePos::new(1, 2), Orientation::Normal)
            .unwrap();
    let svg = export_svg(&p, SvgOptions::default());
    for color in ["#ff0000", "#ff8c00", "#00a000", "#0000ff"] {
        assert!(svg.contains(color), "missing {color}");
    }
    assert_eq!(svg, export_svg(&p, SvgOptions::default()));
    assert_ne!(svg, export_svg(&p, SvgOptions { scale: 10 }));
}

fn obj_vertices(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let xs: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            [xs[0], xs[1], xs[2]]
        })
        .collect()
}

#[test]
fn obj_examples() {
    let flat = export_obj(&evaluate(&CreasePattern::new(5, 3)).unwrap(), ObjOptions::default());
    assert_eq!(flat.lines().filter(|l| l.starts_with("f ")).count(), 1);
    assert_eq!(obj_vertices(&flat).len(), 4);

    let fs = evaluate(&cube_gadget().pattern).unwrap();
    let text = export_obj(&fs, ObjOptions { epsilon: 0.0 });
    let vs = obj_vertices(&text);
    let zs: Vec<f64> = vs.iter().map(|v| v[2]).collect();
    let span = zs.iter().cloned().fold(f64::MIN, f64::max) - zs.iter().cloned().fold(f64::MAX, f64::min);
    assert_eq!(span, 1.0);
    let distinct: BTreeSet<String> = vs.iter().map(|v| format!("{v:?}")).collect();
    assert_eq!(distinct.len(), vs.len());
}
