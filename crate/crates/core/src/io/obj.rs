//! Wavefront OBJ export of folded geometry.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::foldsim::evaluate::lift;
use crate::foldsim::FoldedState;
use crate::polycube::{other_axes, LatticeSquare};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjOptions {
    /// Offset between stacked layers, in paper units. Zero gives the exact
    /// lattice geometry.
    pub epsilon: f64,
}

impl Default for ObjOptions {
    fn default() -> Self {
        ObjOptions { epsilon: 0.01 }
    }
}

fn fmt_coord(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Squares touched by each face, for ranking stacked layers.
fn face_squares(fs: &FoldedState) -> Vec<BTreeSet<LatticeSquare>> {
    let mut out = vec![BTreeSet::new(); fs.subdivision.faces.len()];
    for (ti, t) in fs.subdivision.mesh.triangles.iter().enumerate() {
        let face = fs.subdivision.face_of[ti];
        let iso = fs.placements[face];
        let c = iso.apply(lift(t.vertices[0]));
        let k = iso.apply(lift(t.corner()));
        let n = iso.normal();
        let axis = (0..3).find(|&i| n[i] != 0).unwrap();
        let (ia, ib) = other_axes(axis);
        out[face].insert(LatticeSquare {
            axis,
            level: c[axis].div_euclid(2),
            a: (c[ia] + k[ia]).div_euclid(4),
            b: (c[ib] + k[ib]).div_euclid(4),
        });
    }
    out
}

/// One polygon per subdivision face (triangles when the face has holes),
/// shifted along its paper normal by `rank * epsilon` where `rank` counts
/// earlier faces already stacked on the same squares.
pub fn export_obj(fs: &FoldedState, opts: ObjOptions) -> String {
    let squares = face_squares(fs);
    let mut depth: BTreeMap<LatticeSquare, u32> = BTreeMap::new();
    let mut rank = Vec::with_capacity(squares.len());
    for sq in &squares {
        let r = sq.iter().map(|s| depth.get(s).copied().unwrap_or(0)).max().unwrap_or(0);
        for s in sq {
            depth.insert(*s, r + 1);
        }
        rank.push(r);
    }

    let mut verts: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut polys: Vec<Vec<usize>> = Vec::new();
    let mut vid = |p: [i32; 3], off: [f64; 3]| -> usize {
        let key = format!(
            "{} {} {}",
            fmt_coord(f64::from(p[0]) / 2.0 + off[0]),
            fmt_coord(f64::from(p[1]) / 2.0 + off[1]),
            fmt_coord(f64::from(p[2]) / 2.0 + off[2])
        );
        let next = verts.len() + 1;
        *index.entry(key.clone()).or_insert_with(|| {
            verts.push(key);
            next
        })
    };
    for face in &fs.subdivision.faces {
        let iso = fs.placements[face.id];
        let n = iso.normal();
        let e = opts.epsilon * f64::from(rank[face.id]);
        let off = [e * f64::from(n[0]), e * f64::from(n[1]), e * f64::from(n[2])];
        if face.loops.len() == 1 {
            polys.push(face.loops[0].iter().map(|&p| vid(iso.apply(lift(p)), off)).collect());
        } else {
            for &t in &face.triangles {
                let tri = &fs.subdivision.mesh.triangles[t];
                polys.push(tri.vertices.iter().map(|&p| vid(iso.apply(lift(p)), off)).collect());
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "# boxpleat folded state: {} faces", polys.len());
    for v in &verts {
        let _ = writeln!(out, "v {v}");
    }
    for p in &polys {
        let idx: Vec<String> = p.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldsim::evaluate;
    use crate::pattern::CreasePattern;

    #[test]
    fn flat_sheet_is_one_quad() {
        let fs = evaluate(&CreasePattern::new(5, 3)).unwrap();
        let text = export_obj(&fs, ObjOptions::default());
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 1);
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert!(text.contains("v 5 3 0"));
    }

    #[test]
    fn coordinates_trim() {
        assert_eq!(fmt_coord(2.5), "2.5");
        assert_eq!(fmt_coord(-0.0), "0");
        assert_eq!(fmt_coord(1.01), "1.01");
    }
}
