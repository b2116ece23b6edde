//! Tetrakis crease patterns in doubled integer coordinates.
//!
//! One paper unit is two grid steps, so every tetrakis vertex is an integer
//! point. Only nontrivial creases are stored, each as a minimal tetrakis
//! edge.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of the doubled tetrakis lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub u: i32,
    pub v: i32,
}

impl GridPoint {
    pub const fn new(u: i32, v: i32) -> Self {
        GridPoint { u, v }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Fold angle in degrees. Positive is mountain, negative is valley.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoldAngle {
    Valley180,
    Valley90,
    Flat,
    Mountain90,
    Mountain180,
}

impl FoldAngle {
    pub const NONTRIVIAL: [FoldAngle; 4] =
        [FoldAngle::Mountain180, FoldAngle::Mountain90, FoldAngle::Valley90, FoldAngle::Valley180];

    pub fn degrees(self) -> i32 {
        match self {
            FoldAngle::Valley180 => -180,
            FoldAngle::Valley90 => -90,
            FoldAngle::Flat => 0,
            FoldAngle::Mountain90 => 90,
            FoldAngle::Mountain180 => 180,
        }
    }

    pub fn from_degrees(deg: i32) -> Option<FoldAngle> {
        match deg {
            -180 => Some(FoldAngle::Valley180),
            -90 => Some(FoldAngle::Valley90),
            0 => Some(FoldAngle::Flat),
            90 => Some(FoldAngle::Mountain90),
            180 => Some(FoldAngle::Mountain180),
            _ => None,
        }
    }

    pub fn negate(self) -> FoldAngle {
        FoldAngle::from_degrees(-self.degrees()).unwrap()
    }

    /// Sum of two folds about the same line, wrapped into `[-180, 180]`.
    /// Half turns keep their sign; `270` wraps to `-90`.
    pub fn compose(self, other: FoldAngle) -> FoldAngle {
        let mut d = self.degrees() + other.degrees();
        if d > 180 {
            d -= 360;
        } else if d < -180 {
            d += 360;
        }
        FoldAngle::from_degrees(d).unwrap()
    }

    pub fn is_trivial(self) -> bool {
        self == FoldAngle::Flat
    }
}

impl fmt::Display for FoldAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.degrees())
    }
}

/// Why a segment is not a minimal tetrakis edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum EdgeDefect {
    #[error("endpoints coincide")]
    Degenerate,
    #[error("not a unit axis step or unit diagonal")]
    NotMinimal,
    #[error("diagonal does not join an even-even point to an odd-odd point")]
    DiagonalParity,
    #[error("outside the paper")]
    OutOfBounds,
}

/// Classify a segment against the tetrakis minimal-edge rule.
pub fn edge_defect(a: GridPoint, b: GridPoint) -> Option<EdgeDefect> {
    let du = (a.u - b.u).abs();
    let dv = (a.v - b.v).abs();
    match (du, dv) {
        (0, 0) => Some(EdgeDefect::Degenerate),
        (1, 0) | (0, 1) => None,
        (1, 1) => {
            let even = |p: GridPoint| p.u.rem_euclid(2) == 0 && p.v.rem_euclid(2) == 0;
            let odd = |p: GridPoint| p.u.rem_euclid(2) == 1 && p.v.rem_euclid(2) == 1;
            if (even(a) && odd(b)) || (odd(a) && even(b)) {
                None
            } else {
                Some(EdgeDefect::DiagonalParity)
            }
        }
        _ => Some(EdgeDefect::NotMinimal),
    }
}

/// A nontrivial crease on a minimal tetrakis edge, endpoints ordered `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crease {
    pub a: GridPoint,
    pub b: GridPoint,
    pub angle: FoldAngle,
}

impl Crease {
    pub fn new(p: GridPoint, q: GridPoint, angle: FoldAngle) -> Self {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Crease { a, b, angle }
    }

    pub fn is_diagonal(&self) -> bool {
        self.a.u != self.b.u && self.a.v != self.b.v
    }
}

/// Band direction for surgery operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BandAxis {
    /// Horizontal band; cuts along a line of constant `v`.
    Row,
    /// Vertical band; cuts along a line of constant `u`.
    Column,
}

impl BandAxis {
    fn coord(self, p: GridPoint) -> i32 {
        match self {
            BandAxis::Row => p.v,
            BandAxis::Column => p.u,
        }
    }

    fn with_coord(self, p: GridPoint, c: i32) -> GridPoint {
        match self {
            BandAxis::Row => GridPoint::new(p.u, c),
            BandAxis::Column => GridPoint::new(c, p.v),
        }
    }
}

/// Where creases lying exactly on an insertion line end up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OnLine {
    /// Stay on the line, i.e. on the low side of the new band.
    Keep,
    /// Move with the far side, i.e. to the high side of the new band.
    Shift,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("segment {a}-{b} is not a valid crease: {defect}")]
    InvalidEdge { a: GridPoint, b: GridPoint, defect: EdgeDefect },
    #[error("crease {a}-{b} already has angle {existing}, cannot set {new}")]
    AngleConflict { a: GridPoint, b: GridPoint, existing: FoldAngle, new: FoldAngle },
    #[error("crease {a}-{b} crosses the cut line {line}")]
    CreaseCrossesCut { a: GridPoint, b: GridPoint, line: i32 },
    #[error("band index {at} outside 0..={extent}")]
    BandOutOfRange { at: i32, extent: i32 },
    #[error("band starting at {at} still holds crease {a}-{b}")]
    BandNotEmpty { at: i32, a: GridPoint, b: GridPoint },
    #[error("reflected crease {a}-{b} conflicts with existing angle {existing}")]
    TargetNotEmpty { a: GridPoint, b: GridPoint, existing: FoldAngle },
    #[error("target band {target} is not adjacent to the reflected band")]
    TargetNotAdjacent { target: i32 },
    #[error("fragment of size {fw}x{fh} at offset {offset} does not fit in {w}x{h}")]
    FragmentOutOfBounds { fw: i32, fh: i32, offset: GridPoint, w: i32, h: i32 },
}

/// A bounded tetrakis crease pattern of `width x height` paper units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CreasePattern {
    width: i32,
    height: i32,
    creases: BTreeMap<(GridPoint, GridPoint), FoldAngle>,
}

/// Result of [`CreasePattern::validate_tetrakis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub offending: Vec<(Crease, EdgeDefect)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.offending.is_empty()
    }
}

fn key(p: GridPoint, q: GridPoint) -> (GridPoint, GridPoint) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

impl CreasePattern {
    pub fn new(width: i32, height: i32) -> Self {
        assert!(width >= 1 && height >= 1, "paper must be at least 1x1");
        CreasePattern { width, height, creases: BTreeMap::new() }
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    /// Extent in doubled coordinates along `u`.
    pub fn umax(&self) -> i32 {
        2 * self.width
    }

    pub fn vmax(&self) -> i32 {
        2 * self.height
    }

    pub fn len(&self) -> usize {
        self.creases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.creases.is_empty()
    }

    pub fn creases(&self) -> impl Iterator<Item = Crease> + '_ {
        self.creases.iter().map(|(&(a, b), &angle)| Crease { a, b, angle })
    }

    pub fn angle(&self, p: GridPoint, q: GridPoint) -> FoldAngle {
        self.creases.get(&key(p, q)).copied().unwrap_or(FoldAngle::Flat)
    }

    pub fn contains_point(&self, p: GridPoint) -> bool {
        (0..=self.umax()).contains(&p.u) && (0..=self.vmax()).contains(&p.v)
    }

    fn check_edge(&self, p: GridPoint, q: GridPoint) -> Result<(), PatternError> {
        let defect = edge_defect(p, q).or_else(|| {
            (!self.contains_point(p) || !self.contains_point(q)).then_some(EdgeDefect::OutOfBounds)
        });
        match defect {
            Some(defect) => {
                let (a, b) = key(p, q);
                Err(PatternError::InvalidEdge { a, b, defect })
            }
            None => Ok(()),
        }
    }

    /// Add a crease; re-adding the same angle is a no-op, a different angle
    /// is an error. Adding a flat crease only validates the edge.
    pub fn add(&mut self, p: GridPoint, q: GridPoint, angle: FoldAngle) -> Result<(), PatternError> {
        self.check_edge(p, q)?;
        if angle.is_trivial() {
            return Ok(());
        }
        let k = key(p, q);
        match self.creases.get(&k) {
            Some(&existing) if existing != angle => {
                Err(PatternError::AngleConflict { a: k.0, b: k.1, existing, new: angle })
            }
            _ => {
                self.creases.insert(k, angle);
                Ok(())
            }
        }
    }

    /// Set a crease, replacing whatever was there. Flat removes it.
    pub fn set(&mut self, p: GridPoint, q: GridPoint, angle: FoldAngle) -> Result<(), PatternError> {
        self.check_edge(p, q)?;
        let k = key(p, q);
        if angle.is_trivial() {
            self.creases.remove(&k);
        } else {
            self.creases.insert(k, angle);
        }
        Ok(())
    }

    /// Compose a fold onto the existing angle of an edge.
    pub fn compose(&mut self, p: GridPoint, q: GridPoint, angle: FoldAngle) -> Result<(), PatternError> {
        let total = self.angle(p, q).compose(angle);
        self.set(p, q, total)
    }

    /// Add a straight chain of minimal edges from `p` to `q`.
    pub fn add_line(&mut self, p: GridPoint, q: GridPoint, angle: FoldAngle) -> Result<(), PatternError> {
        let du = (q.u - p.u).signum();
        let dv = (q.v - p.v).signum();
        let steps = (q.u - p.u).abs().max((q.v - p.v).abs());
        let mut cur = p;
        for _ in 0..steps {
            let next = GridPoint::new(cur.u + du, cur.v + dv);
            self.add(cur, next, angle)?;
            cur = next;
        }
        Ok(())
    }

    /// Insert without any validation. Used by importers before
    /// [`validate_tetrakis`](Self::validate_tetrakis) runs.
    pub fn insert_unchecked(&mut self, p: GridPoint, q: GridPoint, angle: FoldAngle) {
        self.creases.insert(key(p, q), angle);
    }

    pub fn validate_tetrakis(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for c in self.creases() {
            if let Err(PatternError::InvalidEdge { defect, .. }) = self.check_edge(c.a, c.b) {
                report.offending.push((c, defect));
            }
        }
        report
    }

    /// True if no nontrivial crease touches the interior of unit square
    /// `(row, col)`, including its diagonals and midlines.
    pub fn square_is_uncreased(&self, row: i32, col: i32) -> bool {
        let (u0, v0) = (2 * col, 2 * row);
        self.creases().all(|c| {
            let mu = c.a.u + c.b.u;
            let mv = c.a.v + c.b.v;
            !(mu > 2 * u0 && mu < 2 * (u0 + 2) && mv > 2 * v0 && mv < 2 * (v0 + 2))
        })
    }

    pub fn extent(&self, axis: BandAxis) -> i32 {
        match axis {
            BandAxis::Row => self.height,
            BandAxis::Column => self.width,
        }
    }

    fn resized(&self, axis: BandAxis, delta: i32) -> CreasePattern {
        match axis {
            BandAxis::Row => CreasePattern::new(self.width, self.height + delta),
            BandAxis::Column => CreasePattern::new(self.width + delta, self.height),
        }
    }

    /// Insert `count` empty unit bands at band index `at`. Returns the new
    /// pattern; band indices `>= at` move up by `count`.
    pub fn insert_band(
        &self,
        axis: BandAxis,
        at: i32,
        count: i32,
        on_line: OnLine,
    ) -> Result<CreasePattern, PatternError> {
        let extent = self.extent(axis);
        if at < 0 || at > extent {
            return Err(PatternError::BandOutOfRange { at, extent });
        }
        let line = 2 * at;
        let shift = 2 * count;
        let mut out = self.resized(axis, count);
        for c in self.creases() {
            let (lo, hi) = {
                let (x, y) = (axis.coord(c.a), axis.coord(c.b));
                (x.min(y), x.max(y))
            };
            let moves = if hi <= line && lo < line {
                false
            } else if lo >= line && hi > line {
                true
            } else if lo == line && hi == line {
                on_line == OnLine::Shift
            } else {
                return Err(PatternError::CreaseCrossesCut { a: c.a, b: c.b, line });
            };
            let mv = |p: GridPoint| if moves { axis.with_coord(p, axis.coord(p) + shift) } else { p };
            out.creases.insert(key(mv(c.a), mv(c.b)), c.angle);
        }
        Ok(out)
    }

    /// Remove `count` bands starting at `at`. The bands must be crease-free
    /// inside; creases on the two bounding lines merge.
    pub fn delete_band(&self, axis: BandAxis, at: i32, count: i32) -> Result<CreasePattern, PatternError> {
        let extent = self.extent(axis);
        if at < 0 || count < 0 || at + count > extent {
            return Err(PatternError::BandOutOfRange { at, extent });
        }
        let (lo_line, hi_line) = (2 * at, 2 * (at + count));
        let mut out = self.resized(axis, -count);
        for c in self.creases() {
            let (x, y) = (axis.coord(c.a), axis.coord(c.b));
            let (lo, hi) = (x.min(y), x.max(y));
            let moves = if hi <= lo_line {
                false
            } else if lo >= hi_line {
                true
            } else {
                return Err(PatternError::BandNotEmpty { at, a: c.a, b: c.b });
            };
            let mv = |p: GridPoint| {
                if moves {
                    axis.with_coord(p, axis.coord(p) - (hi_line - lo_line))
                } else {
                    p
                }
            };
            out.add(mv(c.a), mv(c.b), c.angle)?;
        }
        Ok(out)
    }

    /// Mirror the creases of the strip `lo..=hi` (along `axis`) across the
    /// line `mirror`, optionally negating angles, and add them. Creases lying
    /// along the strip's bounding lines are not copied. `keep` filters by the
    /// crease's doubled midpoint coordinate across the axis.
    pub fn mirror_strip(
        &mut self,
        axis: BandAxis,
        lo: i32,
        hi: i32,
        mirror: i32,
        negate: bool,
        keep: impl Fn(i32) -> bool,
    ) -> Result<(), PatternError> {
        let across = match axis {
            BandAxis::Row => BandAxis::Column,
            BandAxis::Column => BandAxis::Row,
        };
        let picked: Vec<Crease> = self
            .creases()
            .filter(|c| {
                let (x, y) = (axis.coord(c.a), axis.coord(c.b));
                let inside = x.min(y) >= lo && x.max(y) <= hi;
                let on_boundary = x == y && (x == lo || x == hi);
                inside && !on_boundary && keep(across.coord(c.a) + across.coord(c.b))
            })
            .collect();
        for c in picked {
            let m = |p: GridPoint| axis.with_coord(p, 2 * mirror - axis.coord(p));
            let angle = if negate { c.angle.negate() } else { c.angle };
            let (a, b) = key(m(c.a), m(c.b));
            self.check_edge(a, b)?;
            match self.creases.get(&(a, b)) {
                Some(&existing) if existing != angle => {
                    return Err(PatternError::TargetNotEmpty { a, b, existing })
                }
                _ => {
                    self.creases.insert((a, b), angle);
                }
            }
        }
        Ok(())
    }

    /// Reflect the creases of band `source` into each band of `targets`,
    /// walking outward so every copy is the mirror image of its neighbor
    /// toward the source. Each reflection flips mountain and valley.
    pub fn reflect_band_creases(
        &self,
        axis: BandAxis,
        source: i32,
        targets: &[i32],
    ) -> Result<CreasePattern, PatternError> {
        let mut out = self.clone();
        let extent = self.extent(axis);
        let mut sorted = targets.to_vec();
        sorted.sort_by_key(|t| (t - source).abs());
        for &t in &sorted {
            if t < 0 || t >= extent || t == source {
                return Err(PatternError::TargetNotAdjacent { target: t });
            }
            let toward = if t > source { t - 1 } else { t + 1 };
            if toward != source && !sorted.contains(&toward) {
                return Err(PatternError::TargetNotAdjacent { target: t });
            }
            let mirror = if t > source { 2 * t } else { 2 * t + 2 };
            out.mirror_strip(axis, 2 * toward, 2 * toward + 2, mirror, true, |_| true)?;
        }
        Ok(out)
    }

    /// Union with `fragment` translated by `offset`.
    pub fn overlay(&self, fragment: &CreasePattern, offset: GridPoint) -> Result<CreasePattern, PatternError> {
        if offset.u < 0
            || offset.v < 0
            || offset.u + fragment.umax() > self.umax()
            || offset.v + fragment.vmax() > self.vmax()
        {
            return Err(PatternError::FragmentOutOfBounds {
                fw: fragment.width,
                fh: fragment.height,
                offset,
                w: self.width,
                h: self.height,
            });
        }
        let mut out = self.clone();
        for c in fragment.creases() {
            let t = |p: GridPoint| GridPoint::new(p.u + offset.u, p.v + offset.v);
            out.add(t(c.a), t(c.b), c.angle)?;
        }
        Ok(out)
    }

    /// Quarter turn counterclockwise: `(u, v) -> (2H - v, u)`.
    pub fn rotate_ccw(&self) -> CreasePattern {
        let mut out = CreasePattern::new(self.height, self.width);
        let vmax = self.vmax();
        for c in self.creases() {
            let r = |p: GridPoint| GridPoint::new(vmax - p.v, p.u);
            out.creases.insert(key(r(c.a), r(c.b)), c.angle);
        }
        out
    }

    /// Quarter turn clockwise: `(u, v) -> (v, 2W - u)`.
    pub fn rotate_cw(&self) -> CreasePattern {
        let mut out = CreasePattern::new(self.height, self.width);
        let umax = self.umax();
        for c in self.creases() {
            let r = |p: GridPoint| GridPoint::new(p.v, umax - p.u);
            out.creases.insert(key(r(c.a), r(c.b)), c.angle);
        }
        out
    }

    /// Count of nontrivial creases per angle, in `FoldAngle::NONTRIVIAL` order.
    pub fn angle_histogram(&self) -> [usize; 4] {
        let mut h = [0; 4];
        for c in self.creases() {
            if let Some(i) = FoldAngle::NONTRIVIAL.iter().position(|&a| a == c.angle) {
                h[i] += 1;
            }
        }
        h
    }
}
