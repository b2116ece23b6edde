//! Check a folded state against a target polycube.

use std::collections::BTreeSet;

use serde::Serialize;

use super::evaluate::{crease_motion, total_atoms, FoldedState};
use super::isometry::{mat_mul, proper_rotations, sub, transpose, Isometry, Mat3};
use crate::construct::{FaceMap, Mode};
use crate::polycube::{Face, LatticeSquare, Polycube};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeamStatus {
    Seamless,
    Seamed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    pub face: String,
    pub status: SeamStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub coverage_ok: bool,
    pub loop_closure_ok: bool,
    pub one_sided_ok: bool,
    pub diameter_ok: bool,
    pub area_ok: bool,
    /// Seamed faces match what the mode promises.
    pub seams_ok: bool,
    pub seam_census: Vec<FaceCensus>,
    pub seamed_faces: Vec<String>,
    pub folded_diameter_sq: i64,
    pub flat_diameter_sq: i64,
    pub max_layers: u32,
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.coverage_ok && self.loop_closure_ok && self.one_sided_ok && self.diameter_ok && self.area_ok && self.seams_ok
    }

    pub fn seamed(&self) -> impl Iterator<Item = &FaceCensus> {
        self.seam_census.iter().filter(|c| c.status == SeamStatus::Seamed)
    }
}

fn column_matrix(a: [i32; 3], b: [i32; 3], c: [i32; 3]) -> Mat3 {
    [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]]
}

/// Motion taking the fold frame to world coordinates, read off the first
/// face map entry whose paper square is uncreased.
pub fn alignment_from_face_map(fs: &FoldedState, fm: &FaceMap) -> Option<Isometry> {
    fm.entries.iter().find_map(|(face, entry)| {
        let m = fs.square_placement(entry.square.row, entry.square.col)?;
        let (a, b) = (entry.u_dir.vector(), entry.v_dir.vector());
        let n = super::isometry::cross(a, b);
        let rot = mat_mul(&column_matrix(a, b, n), &transpose(&m.rot));
        let center = [2 * entry.square.col + 1, 2 * entry.square.row + 1, 0];
        let placed = Isometry::new(rot, [0; 3]).apply(m.apply(center));
        Some(Isometry::new(rot, sub(face.center_doubled(), placed)))
    })
}

/// Search the 24 cube rotations for a motion that lands the coverage on
/// the polycube's target squares.
pub fn search_alignment(fs: &FoldedState, p: &Polycube) -> Option<Isometry> {
    let target = p.target_squares();
    let min_cell = p.cells().iter().fold([i32::MAX; 3], |m, c| [m[0].min(c.x), m[1].min(c.y), m[2].min(c.z)]);
    let pts = fs.folded_vertices();
    for rot in proper_rotations() {
        let r = Isometry::new(rot, [0; 3]);
        let lo = pts.iter().map(|&x| r.apply(x)).fold([i32::MAX; 3], |m, x| [m[0].min(x[0]), m[1].min(x[1]), m[2].min(x[2])]);
        let want = [2 * min_cell[0], 2 * min_cell[1], 2 * min_cell[2]];
        let cand = Isometry::new(rot, sub(want, lo));
        let moved = fs.transformed(&cand);
        if moved.off_lattice_atoms == 0 && moved.covered.keys().copied().collect::<BTreeSet<_>>() == target {
            return Some(cand);
        }
    }
    None
}

/// Every crease link must carry its near placement to its far placement.
pub fn links_consistent(fs: &FoldedState) -> Result<(), String> {
    for face in &fs.subdivision.faces {
        let here = fs.placements[face.id];
        for link in &face.neighbors {
            let motion = crease_motion(&fs.subdivision.mesh, &here, link).map_err(|e| e.to_string())?;
            if motion.compose(&here) != fs.placements[link.face] {
                return Err(format!("crease {}-{} between faces {} and {} does not close", link.a, link.b, face.id, link.face));
            }
        }
    }
    Ok(())
}

fn census_face(world: &FoldedState, face: Face, fm: &FaceMap) -> Result<(), String> {
    let entry = fm.entries.get(&face).ok_or("no outermost square recorded")?;
    let (row, col) = (entry.square.row, entry.square.col);
    let m = world.square_placement(row, col).ok_or_else(|| format!("paper square ({row}, {col}) is creased or missing"))?;
    let normal = m.normal();
    if normal != face.dir.vector() {
        return Err(format!("paper square ({row}, {col}) shows its back side"));
    }
    if m.apply_dir([1, 0, 0]) != entry.u_dir.vector() || m.apply_dir([0, 1, 0]) != entry.v_dir.vector() {
        return Err(format!("paper square ({row}, {col}) lands with the wrong frame"));
    }
    let center = m.apply([2 * col + 1, 2 * row + 1, 0]);
    if center != face.center_doubled() {
        return Err(format!("paper square ({row}, {col}) lands at {center:?}, not on the face"));
    }
    Ok(())
}

/// Verify `fs` against polycube `p` using the face map's bookkeeping.
pub fn verify(fs: &FoldedState, p: &Polycube, fm: &FaceMap, mode: Mode) -> VerificationReport {
    let mut details = Vec::new();
    let align = alignment_from_face_map(fs, fm).or_else(|| {
        details.push("face map gives no alignment; searching rotations".to_string());
        search_alignment(fs, p)
    });
    let world = match align {
        Some(a) => fs.transformed(&a),
        None => {
            details.push("no rigid motion lands the folding on the polycube".to_string());
            fs.clone()
        }
    };

    let target = p.target_squares();
    let covered: BTreeSet<LatticeSquare> = world.covered.keys().copied().collect();
    let mut coverage_ok = align.is_some() && covered == target && world.off_lattice_atoms == 0;
    if world.off_lattice_atoms > 0 {
        details.push(format!("{} atoms land off the lattice", world.off_lattice_atoms));
    }
    let missing = target.difference(&covered).count();
    let extra = covered.difference(&target).count();
    if missing > 0 || extra > 0 {
        details.push(format!("{missing} target squares uncovered, {extra} squares covered outside the polycube"));
    }
    let partial: Vec<_> = world.covered.iter().filter(|(_, c)| !c.is_full()).map(|(s, _)| *s).collect();
    if !partial.is_empty() {
        coverage_ok = false;
        details.push(format!("{} squares only partly covered", partial.len()));
    }

    let loop_closure_ok = match links_consistent(fs) {
        Ok(()) => true,
        Err(e) => {
            details.push(e);
            false
        }
    };

    let area_ok = total_atoms(fs) == 16 * fs.width as u64 * fs.height as u64;
    if !area_ok {
        details.push(format!("covered area {} atoms, paper has {}", total_atoms(fs), 16 * fs.width * fs.height));
    }

    let (faces, _) = p.surface_and_interior();
    let mut census = Vec::new();
    let mut seamed = Vec::new();
    let mut one_sided_ok = true;
    for &face in &faces {
        let (status, reason) = match align.map(|_| census_face(&world, face, fm)) {
            Some(Ok(())) => (SeamStatus::Seamless, None),
            Some(Err(r)) => {
                if r.contains("back side") {
                    one_sided_ok = false;
                }
                (SeamStatus::Seamed, Some(r))
            }
            None => (SeamStatus::Seamed, Some("unaligned".to_string())),
        };
        if status == SeamStatus::Seamed {
            seamed.push(face);
        }
        census.push(FaceCensus { face: face.to_string(), status, reason });
    }
    for face in fm.entries.keys() {
        if !faces.contains(face) {
            details.push(format!("face map names {face}, which is not a boundary face"));
            one_sided_ok = false;
        }
    }

    let seams_ok = match mode {
        Mode::RectSeam => fm.seamed.is_some_and(|g| seamed == [g]),
        Mode::RectSeamless | Mode::Square => seamed.is_empty(),
    };
    if !seams_ok {
        details.push(format!("{} seamed faces; mode {} expects {}", seamed.len(), mode, if mode == Mode::RectSeam { "exactly the seam face" } else { "none" }));
    }

    let folded = fs.folded_diameter_sq();
    let flat = fs.flat_diameter_sq();
    let diameter_ok = folded <= flat;
    let max_layers = fs.covered.values().map(|c| c.max_layers()).max().unwrap_or(0);

    VerificationReport {
        coverage_ok,
        loop_closure_ok,
        one_sided_ok,
        diameter_ok,
        area_ok,
        seams_ok,
        seam_census: census,
        seamed_faces: seamed.iter().map(Face::to_string).collect(),
        folded_diameter_sq: folded,
        flat_diameter_sq: flat,
        max_layers,
        details,
    }
}

