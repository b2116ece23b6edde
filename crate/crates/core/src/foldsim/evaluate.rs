//! Folded-state evaluation by exact isometry propagation.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use super::isometry::{cross, dot, sub, Isometry, Vec3};
use super::subdivide::{subdivide_with, FaceLink, Subdivision, Triangle, Triangulation};
use crate::pattern::{CreasePattern, EdgeDefect, FoldAngle, GridPoint};
use crate::polycube::{other_axes, LatticeSquare};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("pattern is not a tetrakis pattern: crease {a}-{b} {defect}")]
    InvalidPattern { a: GridPoint, b: GridPoint, defect: EdgeDefect },
    #[error("a {angle} fold along diagonal {a}-{b} leaves the lattice")]
    NonLatticeFold { a: GridPoint, b: GridPoint, angle: FoldAngle },
    #[error("inconsistent assignment at face {face} across crease {a}-{b} (cycle through faces {cycle:?})")]
    InconsistentAssignment { face: usize, a: GridPoint, b: GridPoint, cycle: Vec<usize> },
    #[error("fold angles around vertex {vertex} do not compose to the identity")]
    LoopNotClosed { vertex: GridPoint },
}

/// Traversal order for [`evaluate_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Traversal {
    /// Breadth first, neighbors in stored order.
    #[default]
    Breadth,
    /// Depth first, neighbors in reverse order.
    DepthReversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EvalOptions {
    pub traversal: Traversal,
    /// Evaluate on raw tetrakis triangles instead of merged faces.
    pub raw_triangles: bool,
}

pub(crate) fn lift(p: GridPoint) -> Vec3 {
    [p.u, p.v, 0]
}

/// World motion that carries the far side of `link` given the near side's
/// placement.
pub(crate) fn crease_motion(mesh: &Triangulation, near: &Isometry, link: &FaceLink) -> Result<Isometry, FoldError> {
    let (a, b) = (link.a, link.b);
    let p = near.apply(lift(a));
    let d = near.apply_dir(sub(lift(b), lift(a)));
    match link.angle {
        FoldAngle::Flat => Ok(Isometry::identity()),
        FoldAngle::Mountain180 | FoldAngle::Valley180 => Ok(Isometry::half_turn(p, d)),
        angle => {
            if a.u != b.u && a.v != b.v {
                return Err(FoldError::NonLatticeFold { a, b, angle });
            }
            // Direction walked when crossing, pointing into the far triangle.
            let far_pt = mesh.opposite(link.far, a, b);
            let mut w = [b.v - a.v, a.u - b.u, 0];
            if dot(w, sub(lift(far_pt), lift(a))) < 0 {
                w = [-w[0], -w[1], 0];
            }
            let n = near.normal();
            let e = cross(n, near.apply_dir(w));
            Ok(Isometry::quarter_turn(p, e, angle == FoldAngle::Mountain90))
        }
    }
}

/// Per-square coverage counts in quarter-triangle atoms (16 per square).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coverage {
    pub atoms: [u32; 16],
    /// Atoms whose paper top side faces the positive axis direction.
    pub top_positive: u32,
    pub top_negative: u32,
}

impl Coverage {
    pub fn min_layers(&self) -> u32 {
        *self.atoms.iter().min().unwrap()
    }

    pub fn max_layers(&self) -> u32 {
        *self.atoms.iter().max().unwrap()
    }

    pub fn total_atoms(&self) -> u32 {
        self.atoms.iter().sum()
    }

    pub fn is_full(&self) -> bool {
        self.min_layers() >= 1
    }
}

/// Placement of every face plus the induced lattice coverage.
#[derive(Clone, Debug)]
pub struct FoldedState {
    pub width: i32,
    pub height: i32,
    pub subdivision: Subdivision,
    pub placements: Vec<Isometry>,
    pub covered: BTreeMap<LatticeSquare, Coverage>,
    /// Atoms landing in planes that are not lattice planes.
    pub off_lattice_atoms: u32,
}

/// Atom keys covered by the image of a tetrakis triangle under `iso`.
fn triangle_atoms(t: &Triangle, iso: &Isometry) -> Option<(LatticeSquare, [usize; 2], Vec3)> {
    let c = iso.apply(lift(t.vertices[0]));
    let k = iso.apply(lift(t.corner()));
    let m = iso.apply(lift(t.right_angle()));
    let normal = iso.normal();
    let axis = (0..3).find(|&i| normal[i] != 0).unwrap();
    let level = c[axis];
    if level.rem_euclid(2) != 0 {
        return None;
    }
    let (ia, ib) = other_axes(axis);
    let q2 = [c[ia] + k[ia], c[ib] + k[ib]];
    let square = LatticeSquare { axis, level: level / 2, a: q2[0].div_euclid(4), b: q2[1].div_euclid(4) };
    let quarter = usize::from(q2[0].rem_euclid(4) == 3) * 2 + usize::from(q2[1].rem_euclid(4) == 3);
    let side = |end: Vec3| {
        let d = [m[ia] + end[ia] - q2[0], m[ib] + end[ib] - q2[1]];
        match d {
            [1, 0] => 0,
            [0, 1] => 1,
            [-1, 0] => 2,
            _ => 3,
        }
    };
    Some((square, [quarter * 4 + side(c), quarter * 4 + side(k)], normal))
}

impl FoldedState {
    pub fn from_placements(width: i32, height: i32, subdivision: Subdivision, placements: Vec<Isometry>) -> Self {
        let mut covered: BTreeMap<LatticeSquare, Coverage> = BTreeMap::new();
        let mut off = 0;
        for (ti, t) in subdivision.mesh.triangles.iter().enumerate() {
            let iso = &placements[subdivision.face_of[ti]];
            match triangle_atoms(t, iso) {
                Some((sq, atoms, normal)) => {
                    let entry = covered.entry(sq).or_default();
                    for a in atoms {
                        entry.atoms[a] += 1;
                    }
                    if normal[sq.axis] > 0 {
                        entry.top_positive += 2;
                    } else {
                        entry.top_negative += 2;
                    }
                }
                None => off += 2,
            }
        }
        FoldedState { width, height, subdivision, placements, covered, off_lattice_atoms: off }
    }

    /// Same folded state moved rigidly by `motion`.
    pub fn transformed(&self, motion: &Isometry) -> FoldedState {
        let placements = self.placements.iter().map(|p| motion.compose(p)).collect();
        FoldedState::from_placements(self.width, self.height, self.subdivision.clone(), placements)
    }

    pub fn triangle_placement(&self, tri: usize) -> &Isometry {
        &self.placements[self.subdivision.face_of[tri]]
    }

    /// Placement of every tetrakis triangle, for comparing evaluations at
    /// different granularities.
    pub fn triangle_placements(&self) -> Vec<Isometry> {
        (0..self.subdivision.mesh.triangles.len()).map(|t| *self.triangle_placement(t)).collect()
    }

    /// Placement of the paper unit square `(row, col)`, if it is uncreased.
    pub fn square_placement(&self, row: i32, col: i32) -> Option<Isometry> {
        let mesh = &self.subdivision.mesh;
        if row < 0 || col < 0 || row >= self.height || col >= self.width {
            return None;
        }
        let first = mesh.index(row, col, 0);
        let face = self.subdivision.face_of[first];
        (1..8).all(|k| self.subdivision.face_of[mesh.index(row, col, k)] == face).then(|| self.placements[face])
    }

    /// Distinct images of all triangle vertices.
    pub fn folded_vertices(&self) -> Vec<Vec3> {
        let mut pts: Vec<Vec3> = Vec::new();
        for (ti, t) in self.subdivision.mesh.triangles.iter().enumerate() {
            let iso = self.triangle_placement(ti);
            pts.extend(t.vertices.iter().map(|&p| iso.apply(lift(p))));
        }
        pts.sort();
        pts.dedup();
        pts
    }

    /// Squared diameter of the folded vertex set, doubled units.
    pub fn folded_diameter_sq(&self) -> i64 {
        let pts = self.folded_vertices();
        let mut best = 0i64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = sub(pts[i], pts[j]);
                best = best.max(d.iter().map(|&x| i64::from(x) * i64::from(x)).sum());
            }
        }
        best
    }

    /// Squared diagonal of the flat sheet, doubled units.
    pub fn flat_diameter_sq(&self) -> i64 {
        let (w, h) = (2 * i64::from(self.width), 2 * i64::from(self.height));
        w * w + h * h
    }
}

/// Evaluate with default options: merged faces, breadth-first.
pub fn evaluate(c: &CreasePattern) -> Result<FoldedState, FoldError> {
    evaluate_with(c, EvalOptions::default())
}

pub fn evaluate_with(c: &CreasePattern, opts: EvalOptions) -> Result<FoldedState, FoldError> {
    if let Some((crease, defect)) = c.validate_tetrakis().offending.first() {
        return Err(FoldError::InvalidPattern { a: crease.a, b: crease.b, defect: *defect });
    }
    let sub = subdivide_with(c, !opts.raw_triangles);
    let root = sub.face_of[sub.mesh.index(0, 0, 0)];
    let nf = sub.faces.len();
    let mut placed: Vec<Option<Isometry>> = vec![None; nf];
    let mut parent: Vec<Option<usize>> = vec![None; nf];
    placed[root] = Some(Isometry::identity());
    let mut frontier = VecDeque::from([root]);

    let path_to_root = |parent: &[Option<usize>], mut f: usize| {
        let mut path = vec![f];
        while let Some(p) = parent[f] {
            path.push(p);
            f = p;
        }
        path
    };

    while let Some(f) = match opts.traversal {
        Traversal::Breadth => frontier.pop_front(),
        Traversal::DepthReversed => frontier.pop_back(),
    } {
        let here = placed[f].expect("frontier faces are placed");
        let links: Vec<FaceLink> = match opts.traversal {
            Traversal::Breadth => sub.faces[f].neighbors.clone(),
            Traversal::DepthReversed => sub.faces[f].neighbors.iter().rev().copied().collect(),
        };
        for link in links {
            let motion = crease_motion(&sub.mesh, &here, &link)?;
            let there = motion.compose(&here);
            match placed[link.face] {
                None => {
                    placed[link.face] = Some(there);
                    parent[link.face] = Some(f);
                    frontier.push_back(link.face);
                }
                Some(existing) if existing != there => {
                    let mut cycle = path_to_root(&parent, f);
                    let mut other = path_to_root(&parent, link.face);
                    other.reverse();
                    cycle.extend(other);
                    return Err(FoldError::InconsistentAssignment { face: link.face, a: link.a, b: link.b, cycle });
                }
                Some(_) => {}
            }
        }
    }
    let placements = placed.into_iter().map(|p| p.expect("subdivision faces are connected")).collect();
    Ok(FoldedState::from_placements(c.width(), c.height(), sub, placements))
}

/// Check that the fold motions around every interior vertex compose to the
/// identity, independently of any global traversal. Returns the number of
/// vertices checked.
pub fn check_loop_closure(c: &CreasePattern) -> Result<usize, FoldError> {
    let sub = subdivide_with(c, false);
    let mesh = &sub.mesh;
    let mut around: BTreeMap<GridPoint, Vec<usize>> = BTreeMap::new();
    for (i, t) in mesh.triangles.iter().enumerate() {
        for &p in &t.vertices {
            around.entry(p).or_default().push(i);
        }
    }
    let mut checked = 0;
    for (&v, tris) in &around {
        let interior = v.u > 0 && v.v > 0 && v.u < c.umax() && v.v < c.vmax();
        if !interior {
            continue;
        }
        // Walk the fan counterclockwise: leave each triangle through its
        // edge that ends at v in its own vertex order.
        let start = tris[0];
        let mut cur = start;
        let mut iso = Isometry::identity();
        loop {
            let t = &mesh.triangles[cur];
            let (p, q) = t.edges().into_iter().find(|&(_, q)| q == v).expect("fan triangle touches vertex");
            let key = super::subdivide::edge_key(p, q);
            let next = *mesh.edge_triangles[&key].iter().find(|&&o| o != cur).expect("interior vertex");
            let link = FaceLink { face: 0, a: key.0, b: key.1, angle: c.angle(p, q), near: cur, far: next };
            iso = crease_motion(mesh, &iso, &link)?.compose(&iso);
            cur = next;
            if cur == start {
                break;
            }
        }
        if !iso.is_identity() {
            return Err(FoldError::LoopNotClosed { vertex: v });
        }
        checked += 1;
    }
    Ok(checked)
}

/// Multiplicity table keyed by lattice square.
pub fn layer_accounting(fs: &FoldedState) -> BTreeMap<LatticeSquare, Coverage> {
    fs.covered.clone()
}

/// Total covered area in atoms (16 per unit square), off-lattice included.
pub fn total_atoms(fs: &FoldedState) -> u64 {
    fs.covered.values().map(|c| u64::from(c.total_atoms())).sum::<u64>() + u64::from(fs.off_lattice_atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(u: i32, v: i32) -> GridPoint {
        GridPoint::new(u, v)
    }

    #[test]
    fn flat_sheet_is_identity() {
        let fs = evaluate(&CreasePattern::new(5, 3)).unwrap();
        assert!(fs.placements.iter().all(Isometry::is_identity));
        assert_eq!(fs.covered.len(), 15);
        assert!(fs.covered.values().all(|c| c.min_layers() == 1 && c.max_layers() == 1));
        assert_eq!(total_atoms(&fs), 16 * 15);
    }

    #[test]
    fn single_half_fold_doubles_one_square() {
        let mut c = CreasePattern::new(2, 1);
        c.add_line(gp(2, 0), gp(2, 2), FoldAngle::Mountain180).unwrap();
        let fs = evaluate(&c).unwrap();
        assert_eq!(fs.covered.len(), 1);
        let cov = fs.covered.values().next().unwrap();
        assert_eq!((cov.min_layers(), cov.max_layers()), (2, 2));
        assert_eq!((cov.top_positive, cov.top_negative), (16, 16));
    }

    #[test]
    fn mountain_quarter_fold_goes_down() {
        let mut c = CreasePattern::new(2, 1);
        c.add_line(gp(2, 0), gp(2, 2), FoldAngle::Mountain90).unwrap();
        let fs = evaluate(&c).unwrap();
        let far = fs.square_placement(0, 1).unwrap();
        assert_eq!(far.apply([4, 0, 0]), [2, 0, -2]);
        let mut v = CreasePattern::new(2, 1);
        v.add_line(gp(2, 0), gp(2, 2), FoldAngle::Valley90).unwrap();
        let fs = evaluate(&v).unwrap();
        assert_eq!(fs.square_placement(0, 1).unwrap().apply([4, 0, 0]), [2, 0, 2]);
    }

    #[test]
    fn lone_quarter_crease_is_inconsistent() {
        let mut c = CreasePattern::new(2, 2);
        c.add_line(gp(2, 0), gp(2, 2), FoldAngle::Mountain90).unwrap();
        assert!(matches!(evaluate(&c), Err(FoldError::InconsistentAssignment { .. })));
        assert!(matches!(check_loop_closure(&c), Err(FoldError::LoopNotClosed { vertex }) if vertex == gp(2, 2)));
    }

    #[test]
    fn diagonal_quarter_fold_is_rejected() {
        let mut c = CreasePattern::new(1, 1);
        c.add(gp(0, 0), gp(1, 1), FoldAngle::Mountain90).unwrap();
        c.add(gp(1, 1), gp(2, 2), FoldAngle::Mountain90).unwrap();
        assert!(matches!(evaluate(&c), Err(FoldError::NonLatticeFold { .. })));
    }

    #[test]
    fn half_unit_fold_leaves_lattice() {
        let mut c = CreasePattern::new(1, 1);
        c.add_line(gp(0, 1), gp(2, 1), FoldAngle::Mountain90).unwrap();
        let fs = evaluate(&c).unwrap();
        assert!(fs.off_lattice_atoms > 0);
        assert_eq!(total_atoms(&fs), 16);
    }
}
