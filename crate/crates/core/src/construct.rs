//! The three compilation targets and the face map that drives them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::foldsim::isometry::{cross, dot, sub, Isometry, Vec3};
use crate::foldsim::verify::alignment_from_face_map;
use crate::foldsim::{evaluate, verify, FoldError, FoldedState, VerificationReport};
use crate::gadgets::{apply_insertion, cube_frames, cube_gadget, InsertionError, Orientation};
use crate::pattern::{BandAxis, CreasePattern, FoldAngle, GridPoint, OnLine, PatternError};
use crate::polycube::{Cell, Dir, Face, Polycube, PolycubeError};

/// Compilation target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    RectSeam,
    RectSeamless,
    Square,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::RectSeam, Mode::RectSeamless, Mode::Square];

    pub fn name(self) -> &'static str {
        match self {
            Mode::RectSeam => "rect-seam",
            Mode::RectSeamless => "rect-seamless",
            Mode::Square => "square",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('-', "_") == s)
            .ok_or_else(|| format!("unknown mode {s:?}; expected rect-seam, rect-seamless or square"))
    }
}

/// A unit square of the paper, by row (from the bottom) and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquarePos {
    pub row: i32,
    pub col: i32,
}

impl SquarePos {
    pub const fn new(row: i32, col: i32) -> Self {
        SquarePos { row, col }
    }

    /// Position after turning a sheet of height `h` counterclockwise.
    pub fn rotated_ccw(self, h: i32) -> SquarePos {
        SquarePos::new(self.col, h - 1 - self.row)
    }

    /// Position after turning a sheet of width `w` clockwise.
    pub fn rotated_cw(self, w: i32) -> SquarePos {
        SquarePos::new(w - 1 - self.col, self.row)
    }
}

/// Outermost paper square of a face, with the world directions of the
/// paper's `+u` and `+v` on that square. The face normal is `u x v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceEntry {
    pub square: SquarePos,
    pub u_dir: Dir,
    pub v_dir: Dir,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceMap {
    pub entries: BTreeMap<Face, FaceEntry>,
    /// The one face allowed a seam, if any.
    pub seamed: Option<Face>,
}

impl FaceMap {
    pub fn remapped(&self, f: impl Fn(SquarePos) -> SquarePos) -> FaceMap {
        FaceMap {
            entries: self.entries.iter().map(|(&k, e)| (k, FaceEntry { square: f(e.square), ..*e })).collect(),
            seamed: self.seamed,
        }
    }

    pub fn rotated_ccw(&self, h: i32) -> FaceMap {
        FaceMap {
            entries: self
                .entries
                .iter()
                .map(|(&k, e)| (k, FaceEntry { square: e.square.rotated_ccw(h), u_dir: e.v_dir.opposite(), v_dir: e.u_dir }))
                .collect(),
            seamed: self.seamed,
        }
    }

    pub fn rotated_cw(&self, w: i32) -> FaceMap {
        FaceMap {
            entries: self
                .entries
                .iter()
                .map(|(&k, e)| (k, FaceEntry { square: e.square.rotated_cw(w), u_dir: e.v_dir, v_dir: e.u_dir.opposite() }))
                .collect(),
            seamed: self.seamed,
        }
    }

    pub fn face_at(&self, sq: SquarePos) -> Option<Face> {
        self.entries.iter().find(|(_, e)| e.square == sq).map(|(f, _)| *f)
    }

    /// Injective, mapped squares uncreased, and the domain is exactly the
    /// boundary of `prefix` minus the seamed face.
    pub fn check_health(&self, c: &CreasePattern, prefix: &Polycube) -> Result<(), String> {
        let squares: BTreeSet<SquarePos> = self.entries.values().map(|e| e.square).collect();
        if squares.len() != self.entries.len() {
            return Err("two faces share an outermost square".into());
        }
        for (f, e) in &self.entries {
            if !c.square_is_uncreased(e.square.row, e.square.col) {
                return Err(format!("face {f} maps to creased square ({}, {})", e.square.row, e.square.col));
            }
        }
        let (mut faces, _) = prefix.surface_and_interior();
        if let Some(g) = self.seamed {
            faces.remove(&g);
        }
        let domain: BTreeSet<Face> = self.entries.keys().copied().collect();
        if domain != faces {
            return Err(format!("face map covers {} faces, the prefix has {} unseamed boundary faces", domain.len(), faces.len()));
        }
        Ok(())
    }
}

/// Exact paper size for `n` cubes.
pub fn paper_size(n: usize, mode: Mode) -> (i32, i32) {
    let n = n as i32;
    match mode {
        Mode::RectSeam => (4 * n + 1, 2 * n + 1),
        Mode::RectSeamless => (4 * n + 1, 2 * n + 2),
        Mode::Square => (3 * n + 2, 3 * n + 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompileStats {
    pub n: usize,
    pub mode: Mode,
    pub width: i32,
    pub height: i32,
    pub nontrivial_crease_count: usize,
    pub max_layer_multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    pub pattern: CreasePattern,
    pub face_map: FaceMap,
    pub polycube: Polycube,
    pub mode: Mode,
    pub stats: CompileStats,
    pub report: VerificationReport,
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Polycube(#[from] PolycubeError),
    #[error(transparent)]
    Insertion(#[from] InsertionError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("folding failed: {0}")]
    Fold(#[from] FoldError),
    #[error("face map lost track of {0}")]
    MissingFace(Face),
    #[error("face map invariant broken after adding {cell}: {reason}")]
    FaceMapBroken { cell: Cell, reason: String },
    #[error("cannot fold the spare strip over the seam: {0}")]
    FoldOver(String),
    #[error("verification failed: {}", .0.details.join("; "))]
    VerificationFailed(Box<VerificationReport>),
}

/// Pattern and face map after one construction step.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub label: String,
    pub pattern: CreasePattern,
    pub face_map: FaceMap,
}

struct Build {
    pattern: CreasePattern,
    fm: FaceMap,
    anchor: SquarePos,
    trace: Vec<Snapshot>,
}

impl Build {
    fn snapshot(&mut self, label: String) {
        self.trace.push(Snapshot { label, pattern: self.pattern.clone(), face_map: self.fm.clone() });
    }
}

fn base(b: Cell, g: Face) -> Build {
    let gadget = cube_gadget();
    let z = g.dir.opposite();
    let x = (0..3).map(|k| Dir::from_axis(k, true)).find(|d| d.axis() != z.axis()).unwrap();
    let y = z.cross(x).unwrap();
    let mut fm = FaceMap { entries: BTreeMap::new(), seamed: Some(g) };
    for (side, dir, a, bb) in cube_frames(x, y) {
        let sq = gadget.face_squares[&side].expect("five sides have squares");
        fm.entries.insert(Face::new(b, dir), FaceEntry { square: sq, u_dir: a, v_dir: bb });
    }
    Build { pattern: gadget.pattern, fm, anchor: gadget.anchor, trace: Vec::new() }
}

fn remap_normal(s: SquarePos, sq: SquarePos) -> SquarePos {
    let row = if sq.row < s.row { sq.row } else if sq.row == s.row { sq.row + 1 } else { sq.row + 2 };
    let col = if sq.col < s.col { sq.col } else if sq.col == s.col { sq.col + 2 } else { sq.col + 4 };
    SquarePos::new(row, col)
}

fn remap_square(c: &CreasePattern, s: SquarePos, sq: SquarePos, o: Orientation) -> SquarePos {
    match o {
        Orientation::Normal => remap_normal(s, sq),
        Orientation::Rotated => {
            let h = c.height();
            remap_normal(s.rotated_ccw(h), sq.rotated_ccw(h)).rotated_cw(h + 4)
        }
    }
}

fn run_insertions(p: &Polycube, g: Face, orient: impl Fn(usize) -> Orientation) -> Result<Build, ConstructError> {
    let plan = p.build_plan(g)?;
    let mut build = base(plan.base, g);
    let mut prefix = vec![plan.base];
    build.snapshot(format!("base cube {}", plan.base));
    for (k, step) in plan.insertion_order.iter().enumerate().skip(1) {
        let f = step.attach.expect("non-base steps have an attach face");
        let s = build.fm.entries.get(&f).ok_or(ConstructError::MissingFace(f))?.square;
        let o = orient(k);
        let (pattern, fm) = apply_insertion(&build.pattern, &build.fm, s, o)?;
        build.anchor = remap_square(&build.pattern, s, build.anchor, o);
        build.pattern = pattern;
        build.fm = fm;
        prefix.push(step.cell);
        let sub = Polycube::new(prefix.iter().copied())?;
        build
            .fm
            .check_health(&build.pattern, &sub)
            .map_err(|reason| ConstructError::FaceMapBroken { cell: step.cell, reason })?;
        build.snapshot(format!("insert {} at ({}, {})", step.cell, s.row, s.col));
    }
    Ok(build)
}

fn finish(p: &Polycube, build: Build, mode: Mode) -> Result<(CompileResult, Vec<Snapshot>), ConstructError> {
    let fs = evaluate(&build.pattern)?;
    let report = verify(&fs, p, &build.fm, mode);
    if !report.passed() {
        return Err(ConstructError::VerificationFailed(Box::new(report)));
    }
    let stats = CompileStats {
        n: p.len(),
        mode,
        width: build.pattern.width(),
        height: build.pattern.height(),
        nontrivial_crease_count: build.pattern.len(),
        max_layer_multiplicity: report.max_layers,
    };
    let result = CompileResult { pattern: build.pattern, face_map: build.fm, polycube: p.clone(), mode, stats, report };
    Ok((result, build.trace))
}

/// Fold `p` from a `(4n+1) x (2n+1)` sheet, seamless except on `g`.
pub fn fold_rect_seam(p: &Polycube, g: Face) -> Result<CompileResult, ConstructError> {
    compile_traced(p, Mode::RectSeam, Some(g)).map(|(r, _)| r)
}

/// Fold `p` from a `(4n+1) x (2n+2)` sheet with every face seamless.
pub fn fold_rect_seamless(p: &Polycube) -> Result<CompileResult, ConstructError> {
    compile_traced(p, Mode::RectSeamless, None).map(|(r, _)| r)
}

/// Fold `p` from a square sheet of side `3n+2` with every face seamless.
pub fn fold_square(p: &Polycube) -> Result<CompileResult, ConstructError> {
    compile_traced(p, Mode::Square, None).map(|(r, _)| r)
}

pub fn compile(p: &Polycube, mode: Mode, seam: Option<Face>) -> Result<CompileResult, ConstructError> {
    compile_traced(p, mode, seam).map(|(r, _)| r)
}

/// Compile and also return the pattern after every step.
pub fn compile_traced(p: &Polycube, mode: Mode, seam: Option<Face>) -> Result<(CompileResult, Vec<Snapshot>), ConstructError> {
    let g = seam.unwrap_or_else(|| p.default_seam_face());
    let mut build = match mode {
        Mode::RectSeam | Mode::RectSeamless => run_insertions(p, g, |_| Orientation::Normal)?,
        Mode::Square => run_insertions(p, g, |k| if k % 2 == 1 { Orientation::Rotated } else { Orientation::Normal })?,
    };
    match mode {
        Mode::RectSeam => {}
        Mode::RectSeamless => {
            fold_over(&mut build, g, Edge::Top)?;
        }
        Mode::Square => {
            if p.len() % 2 == 1 {
                fold_over(&mut build, g, Edge::Top)?;
                fold_over(&mut build, g, Edge::Top)?;
            } else {
                fold_over(&mut build, g, Edge::Right)?;
                fold_over(&mut build, g, Edge::Top)?;
            }
        }
    }
    finish(p, build, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Right,
    Top,
}

fn dir_of(v: Vec3) -> Option<Dir> {
    Dir::from_vector(v)
}

/// Relative fold angle between two placements sharing an edge, walking
/// along `w` (world) from `near` to `far`.
fn angle_between(near: &Isometry, far: &Isometry, w: Vec3) -> Option<FoldAngle> {
    let (n0, n1) = (near.normal(), far.normal());
    if n1 == n0 {
        (near == far).then_some(FoldAngle::Flat)
    } else if n1 == w {
        Some(FoldAngle::Mountain90)
    } else if n1 == sub([0; 3], w) {
        Some(FoldAngle::Valley90)
    } else if n1 == sub([0; 3], n0) {
        Some(FoldAngle::Mountain180)
    } else {
        None
    }
}

/// Append a one-unit strip along `edge` and fold it flat over face `g`.
fn fold_over(build: &mut Build, g: Face, edge: Edge) -> Result<(), ConstructError> {
    match edge {
        Edge::Right => fold_over_right(build, g),
        Edge::Top => {
            let w = build.pattern.width();
            build.pattern = build.pattern.rotate_cw();
            build.fm = build.fm.rotated_cw(w);
            build.anchor = build.anchor.rotated_cw(w);
            let res = fold_over_right(build, g);
            let h = build.pattern.height();
            build.pattern = build.pattern.rotate_ccw();
            build.fm = build.fm.rotated_ccw(h);
            build.anchor = build.anchor.rotated_ccw(h);
            // Replace the label of the snapshot taken while rotated.
            if res.is_ok() {
                build.trace.pop();
                build.snapshot("fold over top strip".into());
            }
            res
        }
    }
}

fn fold_over_right(build: &mut Build, g: Face) -> Result<(), ConstructError> {
    let old = &build.pattern;
    let (w, h) = (old.width(), old.height());
    let fs: FoldedState = evaluate(old)?;
    let align = alignment_from_face_map(&fs, &build.fm).ok_or_else(|| ConstructError::FoldOver("no aligned face".into()))?;
    let world = fs.transformed(&align);
    let mesh = &world.subdivision.mesh;

    let gc = g.center_doubled();
    let gk = g.dir.axis();
    let on_g_edge = |p: Vec3, q: Vec3| {
        let inside = |x: Vec3| x[gk] == gc[gk] && (0..3).all(|i| i == gk || (x[i] - gc[i]).abs() <= 1);
        let d = sub(q, p);
        let along = (0..3).find(|&i| d[i] != 0);
        inside(p)
            && inside(q)
            && along.is_some_and(|a| (0..3).any(|i| i != gk && i != a && (p[i] - gc[i]).abs() == 1))
    };

    let ux = 2 * w;
    let mut pieces = Vec::with_capacity(2 * h as usize);
    let mut out = old.insert_band(BandAxis::Column, w, 1, OnLine::Keep)?;
    for k in 0..2 * h {
        let tri = mesh.index(k / 2, w - 1, if k % 2 == 0 { 2 } else { 3 });
        let m = *world.triangle_placement(tri);
        let (p, q) = (m.apply([ux, k, 0]), m.apply([ux, k + 1, 0]));
        if !on_g_edge(p, q) {
            return Err(ConstructError::FoldOver(format!("paper edge segment at v={k} lands at {p:?}-{q:?}, off the seam face")));
        }
        let e = sub(q, p);
        let mut inward = [0; 3];
        let ax = (0..3).find(|&i| i != gk && e[i] == 0).unwrap();
        inward[ax] = (gc[ax] - p[ax]).signum();
        let normal = cross(inward, e);
        let rot = [[inward[0], e[0], normal[0]], [inward[1], e[1], normal[1]], [inward[2], e[2], normal[2]]];
        let piece = Isometry::new(rot, sub(p, Isometry::new(rot, [0; 3]).apply([ux, k, 0])));
        let angle = angle_between(&m, &piece, m.apply_dir([1, 0, 0]))
            .ok_or_else(|| ConstructError::FoldOver(format!("strip piece {k} is not a lattice fold")))?;
        out.set(GridPoint::new(ux, k), GridPoint::new(ux, k + 1), angle)?;
        pieces.push(piece);
    }
    for k in 0..2 * h - 1 {
        let (a, b) = (&pieces[k as usize], &pieces[k as usize + 1]);
        let angle = angle_between(a, b, a.apply_dir([0, 1, 0]))
            .ok_or_else(|| ConstructError::FoldOver(format!("strip pieces {k} and {} disagree", k + 1)))?;
        out.set(GridPoint::new(ux, k + 1), GridPoint::new(ux + 1, k + 1), angle)?;
        out.set(GridPoint::new(ux + 1, k + 1), GridPoint::new(ux + 2, k + 1), angle)?;
    }

    // The outermost square over g: prefer the anchor row, else the first
    // strip square that lands top side out.
    let check = evaluate(&out)?.transformed(&align);
    let candidates = std::iter::once(build.anchor.row).chain(0..h);
    let mut chosen = None;
    for row in candidates {
        let Some(m) = check.square_placement(row, w) else { continue };
        if m.normal() == g.dir.vector() && m.apply([ux + 1, 2 * row + 1, 0]) == gc {
            chosen = Some((row, m));
            break;
        }
    }
    let (row, m) = chosen.ok_or_else(|| ConstructError::FoldOver("no strip square lands top side out on the seam face".into()))?;
    let u_dir = dir_of(m.apply_dir([1, 0, 0])).unwrap();
    let v_dir = dir_of(m.apply_dir([0, 1, 0])).unwrap();
    debug_assert_eq!(dot(cross(u_dir.vector(), v_dir.vector()), g.dir.vector()), 1);
    build.fm.entries.insert(g, FaceEntry { square: SquarePos::new(row, w), u_dir, v_dir });
    build.fm.seamed = None;
    build.pattern = out;
    build.snapshot("fold over right strip".into());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(paper_size(1, Mode::RectSeam), (5, 3));
        assert_eq!(paper_size(2, Mode::RectSeam), (9, 5));
        assert_eq!(paper_size(3, Mode::Square), (11, 11));
        assert_eq!(paper_size(1, Mode::RectSeamless), (5, 4));
    }

    #[test]
    fn mode_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        assert!("cube".parse::<Mode>().is_err());
    }

    #[test]
    fn square_rotations_invert() {
        let s = SquarePos::new(1, 3);
        assert_eq!(s.rotated_ccw(3).rotated_cw(3), s);
    }
}
