mod common;

use std::collections::BTreeSet;

use boxpleat::construct::{compile, fold_rect_seam, FaceMap, Mode};
use boxpleat::foldsim::{
    check_loop_closure, evaluate, layer_accounting, subdivide, total_atoms, verify, FoldError, Isometry,
};
use boxpleat::gadgets::cube_gadget;
use boxpleat::pattern::{CreasePattern, FoldAngle, GridPoint};
use common::{cells, poly};

fn gp(u: i32, v: i32) -> GridPoint {
    GridPoint::new(u, v)
}

/// Independent flood fill over tetrakis triangles, keyed by square and
/// quarter. Two triangles touch across an edge unless that edge is creased.
fn flood_fill_regions(c: &CreasePattern) -> usize {
    let mesh = subdivide(&CreasePattern::new(c.width(), c.height())).mesh;
    let n = mesh.triangles.len();
    let mut seen = vec![false; n];
    let mut regions = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        regions += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            for (a, b) in mesh.triangles[t].edges() {
                if c.angle(a, b) != FoldAngle::Flat {
                    continue;
                }
                for &o in mesh.edge_triangles.get(&(a.min(b), a.max(b))).into_iter().flatten() {
                    if !seen[o] {
                        seen[o] = true;
                        stack.push(o);
                    }
                }
            }
        }
    }
    regions
}

#[test]
fn subdivide_examples() {
    let s = subdivide(&CreasePattern::new(5, 3));
    assert_eq!(s.faces.len(), 1);
    assert_eq!(s.faces[0].area_eighths(), 15 * 8);

    let mut c = CreasePattern::new(2, 2);
    c.add_line(gp(0, 2), gp(4, 2), FoldAngle::Mountain180).unwrap();
    let s = subdivide(&c);
    let areas: Vec<usize> = s.faces.iter().map(|f| f.area_eighths()).collect();
    assert_eq!(areas, vec![16, 16]);

    let g = cube_gadget();
    assert_eq!(subdivide(&g.pattern).faces.len(), flood_fill_regions(&g.pattern));
}

#[test]
fn evaluate_examples() {
    let flat = evaluate(&CreasePattern::new(3, 2)).unwrap();
    assert!(flat.placements.iter().all(Isometry::is_identity));

    let mut c = CreasePattern::new(2, 1);
    c.add_line(gp(2, 0), gp(2, 2), FoldAngle::Mountain180).unwrap();
    let fs = evaluate(&c).unwrap();
    assert_eq!(fs.covered.len(), 1);
    let cov = fs.covered.values().next().unwrap();
    assert_eq!((cov.min_layers(), cov.max_layers()), (2, 2));

    let mut lone = CreasePattern::new(2, 2);
    lone.add_line(gp(0, 2), gp(2, 2), FoldAngle::Mountain90).unwrap();
    assert!(matches!(evaluate(&lone), Err(FoldError::InconsistentAssignment { .. })));
    assert!(check_loop_closure(&lone).is_err());
}

#[test]
fn verify_examples() {
    let g = cube_gadget();
    let fs = evaluate(&g.pattern).unwrap();
    let cube = cells(&[(0, 0, 0)]);
    let r = fold_rect_seam(&cube, cube.default_seam_face()).unwrap();
    let rep = verify(&fs, &cube, &r.face_map, Mode::RectSeam);
    assert!(rep.passed(), "{:?}", rep.details);
    assert_eq!(rep.seamed().count(), 1);
    assert_eq!(rep.seam_census.len(), 6);

    let domino = cells(&[(0, 0, 0), (1, 0, 0)]);
    let rep = verify(&fs, &domino, &FaceMap::default(), Mode::RectSeam);
    assert!(!rep.coverage_ok);
}

#[test]
fn tower_diameters() {
    let tower = poly("0 0 0\n0 0 1\n0 0 2\n");
    let r = compile(&tower, Mode::RectSeam, None).unwrap();
    let fs = evaluate(&r.pattern).unwrap();
    assert!(fs.folded_diameter_sq() >= 36);
    assert!(fs.folded_diameter_sq() <= fs.flat_diameter_sq());
}

#[test]
fn layer_accounting_examples() {
    let flat = evaluate(&CreasePattern::new(5, 3)).unwrap();
    let layers = layer_accounting(&flat);
    assert_eq!(layers.len(), 15);
    assert!(layers.values().all(|c| c.min_layers() == 1 && c.max_layers() == 1));

    let mut c = CreasePattern::new(2, 1);
    c.add_line(gp(2, 0), gp(2, 2), FoldAngle::Valley180).unwrap();
    let layers = layer_accounting(&evaluate(&c).unwrap());
    assert_eq!(layers.len(), 1);
    assert_eq!(layers.values().next().unwrap().max_layers(), 2);

    assert_eq!(total_atoms(&evaluate(&cube_gadget().pattern).unwrap()), 15 * 16);
}

#[test]
fn placements_are_lattice_isometries() {
    let r = compile(&poly("0 0 0\n1 0 0\n1 1 0\n"), Mode::Square, None).unwrap();
    let fs = evaluate(&r.pattern).unwrap();
    let distinct: BTreeSet<_> = fs.placements.iter().map(|p| (p.rot, p.trans)).collect();
    assert!(distinct.len() > 1);
    for p in &fs.placements {
        assert_eq!(p.compose(&p.inverse()), Isometry::identity());
    }
}
