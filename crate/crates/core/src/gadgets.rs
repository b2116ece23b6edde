//! Crease tables for the 5x3 unit-cube gadget, and the
//! insertion step that extrudes a cube from a seamless square.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::construct::{FaceEntry, FaceMap, SquarePos};
use crate::pattern::{BandAxis, Crease, CreasePattern, FoldAngle, GridPoint, OnLine, PatternError};
use crate::polycube::{Dir, Face};

// Interior creases of the cube gadget in local doubled coordinates
// `u in 0..=10, v in 0..=6`, as `(u0, v0, u1, v1, degrees)`.
const CUBE_CREASES: [(i32, i32, i32, i32, i16); 72] = [
    (0, 1, 1, 1, -180),
    (0, 2, 1, 2, 180),
    (0, 4, 1, 4, 180),
    (0, 5, 1, 5, -180),
    (1, 1, 1, 2, -180),
    (1, 1, 2, 0, 180),
    (1, 1, 2, 2, 180),
    (1, 2, 1, 3, 180),
    (1, 2, 2, 2, 180),
    (1, 3, 1, 4, 180),
    (1, 4, 1, 5, -180),
    (1, 4, 2, 4, 180),
    (1, 5, 2, 4, -180),
    (1, 5, 2, 6, 180),
    (2, 0, 2, 1, 90),
    (2, 0, 3, 1, -180),
    (2, 1, 2, 2, 90),
    (2, 2, 2, 3, 90),
    (2, 2, 3, 2, 90),
    (2, 3, 2, 4, 90),
    (2, 4, 2, 5, 90),
    (2, 4, 3, 4, 90),
    (2, 5, 2, 6, 90),
    (2, 6, 3, 5, -180),
    (3, 1, 4, 2, -180),
    (3, 2, 4, 2, 90),
    (3, 4, 4, 4, 90),
    (3, 5, 4, 4, 180),
    (4, 0, 4, 1, 180),
    (4, 1, 4, 2, 180),
    (4, 2, 4, 3, 90),
    (4, 2, 5, 2, 90),
    (4, 3, 4, 4, 90),
    (4, 4, 4, 5, 180),
    (4, 4, 5, 4, 90),
    (4, 5, 4, 6, 180),
    (5, 2, 6, 2, 90),
    (5, 4, 6, 4, 90),
    (6, 0, 6, 1, 180),
    (6, 1, 6, 2, 180),
    (6, 2, 6, 3, 90),
    (6, 2, 7, 1, 180),
    (6, 2, 7, 2, 90),
    (6, 3, 6, 4, 90),
    (6, 4, 6, 5, 180),
    (6, 4, 7, 4, 90),
    (6, 4, 7, 5, 180),
    (6, 5, 6, 6, 180),
    (7, 1, 8, 0, -180),
    (7, 2, 8, 2, 90),
    (7, 4, 8, 4, 90),
    (7, 5, 8, 6, 180),
    (8, 0, 8, 1, 90),
    (8, 0, 9, 1, 180),
    (8, 1, 8, 2, 90),
    (8, 2, 8, 3, 90),
    (8, 2, 9, 1, -180),
    (8, 2, 9, 2, 180),
    (8, 3, 8, 4, 90),
    (8, 4, 8, 5, 90),
    (8, 4, 9, 4, 180),
    (8, 4, 9, 5, -180),
    (8, 5, 8, 6, 90),
    (8, 6, 9, 5, 180),
    (9, 1, 9, 2, -180),
    (9, 1, 10, 1, -180),
    (9, 2, 9, 3, 180),
    (9, 2, 10, 2, 180),
    (9, 3, 9, 4, 180),
    (9, 4, 9, 5, -180),
    (9, 4, 10, 4, 180),
    (9, 5, 10, 5, -180),
];
// Hinges along the gadget's top and bottom edges. They are paper
// boundary in the standalone gadget and only appear once it is embedded.
const CUBE_HINGES: [(i32, i32, i32, i32, i16); 12] = [
    (2, 0, 3, 0, 90),
    (2, 6, 3, 6, 90),
    (3, 0, 4, 0, 90),
    (3, 6, 4, 6, 90),
    (4, 0, 5, 0, -90),
    (4, 6, 5, 6, -90),
    (5, 0, 6, 0, -90),
    (5, 6, 6, 6, -90),
    (6, 0, 7, 0, 90),
    (6, 6, 7, 6, 90),
    (7, 0, 8, 0, 90),
    (7, 6, 8, 6, 90),
];

/// The six faces of a gadget cube, named in the gadget's own frame: `Top`
/// points away from the sheet, `Bottom` lies against it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CubeSide {
    Top,
    Bottom,
    Left,
    Right,
    Front,
    Back,
}

impl CubeSide {
    pub const ALL: [CubeSide; 6] =
        [CubeSide::Top, CubeSide::Bottom, CubeSide::Left, CubeSide::Right, CubeSide::Front, CubeSide::Back];
}

/// The 5x3 crease pattern folding one unit cube out of a sheet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeGadget {
    /// Interior creases only.
    pub pattern: CreasePattern,
    /// Creases along the top and bottom edges, added when embedded.
    pub hinges: Vec<Crease>,
    /// Outermost paper square of each face; `Bottom` is seamed and has none.
    pub face_squares: BTreeMap<CubeSide, Option<SquarePos>>,
    /// The square of the flat sheet the cube replaces.
    pub anchor: SquarePos,
}

fn table_creases(rows: &[(i32, i32, i32, i32, i16)]) -> Vec<Crease> {
    rows.iter()
        .map(|&(u0, v0, u1, v1, deg)| {
            let angle = FoldAngle::from_degrees(i32::from(deg)).expect("table angles are lattice angles");
            Crease::new(GridPoint::new(u0, v0), GridPoint::new(u1, v1), angle)
        })
        .collect()
}

pub fn cube_gadget() -> CubeGadget {
    let mut pattern = CreasePattern::new(5, 3);
    for c in table_creases(&CUBE_CREASES) {
        pattern.add(c.a, c.b, c.angle).expect("gadget table is a valid tetrakis pattern");
    }
    let face_squares = BTreeMap::from([
        (CubeSide::Top, Some(SquarePos::new(1, 2))),
        (CubeSide::Bottom, None),
        (CubeSide::Left, Some(SquarePos::new(1, 1))),
        (CubeSide::Right, Some(SquarePos::new(1, 3))),
        (CubeSide::Front, Some(SquarePos::new(0, 2))),
        (CubeSide::Back, Some(SquarePos::new(2, 2))),
    ]);
    CubeGadget { pattern, hinges: table_creases(&CUBE_HINGES), face_squares, anchor: SquarePos::new(1, 2) }
}

/// World directions of a cube's faces and paper frames, given the frame
/// `(a, b)` of the square it grows from. The cube grows along `a x b`.
pub(crate) fn cube_frames(a: Dir, b: Dir) -> [(CubeSide, Dir, Dir, Dir); 5] {
    let n = a.cross(b).expect("frame axes are perpendicular");
    [
        (CubeSide::Top, n, a, b),
        (CubeSide::Left, a.opposite(), n, b),
        (CubeSide::Right, a, n.opposite(), b),
        (CubeSide::Front, b.opposite(), a, n),
        (CubeSide::Back, b, a, n.opposite()),
    ]
}

/// Insertion orientation: `Normal` adds two columns on each side and one
/// row above and below; `Rotated` is the same step turned a quarter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Normal,
    Rotated,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InsertionError {
    #[error("square ({row}, {col}) is creased")]
    SquareNotSeamless { row: i32, col: i32 },
    #[error("square ({row}, {col}) is outside the {width}x{height} sheet")]
    SquareOutOfBounds { row: i32, col: i32, width: i32, height: i32 },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Replace the seamless square `s` by a cube gadget and grow the sheet
/// around it. If the face map assigns a face to `s`, that face becomes the
/// attach face: the new cube grows from it and the map is updated.
pub fn apply_insertion(
    c: &CreasePattern,
    fm: &FaceMap,
    s: SquarePos,
    orientation: Orientation,
) -> Result<(CreasePattern, FaceMap), InsertionError> {
    if s.row < 0 || s.col < 0 || s.row >= c.height() || s.col >= c.width() {
        return Err(InsertionError::SquareOutOfBounds { row: s.row, col: s.col, width: c.width(), height: c.height() });
    }
    if !c.square_is_uncreased(s.row, s.col) {
        return Err(InsertionError::SquareNotSeamless { row: s.row, col: s.col });
    }
    match orientation {
        Orientation::Normal => insert_normal(c, fm, s),
        Orientation::Rotated => {
            let turned = fm.rotated_ccw(c.height());
            let ts = s.rotated_ccw(c.height());
            let (p, m) = insert_normal(&c.rotate_ccw(), &turned, ts)?;
            Ok((p.rotate_cw(), m.rotated_cw(p.width())))
        }
    }
}

fn insert_normal(c: &CreasePattern, fm: &FaceMap, s: SquarePos) -> Result<(CreasePattern, FaceMap), InsertionError> {
    let (i, j) = (s.row, s.col);
    let mut p = c
        .insert_band(BandAxis::Row, i, 1, OnLine::Keep)?
        .insert_band(BandAxis::Row, i + 2, 1, OnLine::Shift)?
        .insert_band(BandAxis::Column, j, 2, OnLine::Keep)?
        .insert_band(BandAxis::Column, j + 3, 2, OnLine::Shift)?;
    let (gu, gv) = (2 * j, 2 * i);
    let (umax, vmax) = (p.umax(), p.vmax());

    // Three layers now fold where one did: copy the creases of the original
    // row and column into the pleat layers stacked on them.
    let outside_cols = |m2: i32| !(m2 > 2 * gu && m2 < 2 * (gu + 10));
    let outside_rows = |m2: i32| !(m2 > 2 * gv && m2 < 2 * (gv + 6));
    p.mirror_strip(BandAxis::Row, gv + 3, gv + 4, gv + 4, true, outside_cols)?;
    p.mirror_strip(BandAxis::Row, gv + 4, gv + 5, gv + 5, true, outside_cols)?;
    p.mirror_strip(BandAxis::Row, gv + 2, gv + 3, gv + 2, true, outside_cols)?;
    p.mirror_strip(BandAxis::Row, gv + 1, gv + 2, gv + 1, true, outside_cols)?;
    p.mirror_strip(BandAxis::Column, gu + 4, gu + 6, gu + 4, true, outside_rows)?;
    p.mirror_strip(BandAxis::Column, gu + 2, gu + 4, gu + 2, true, outside_rows)?;
    p.mirror_strip(BandAxis::Column, gu + 4, gu + 6, gu + 6, true, outside_rows)?;
    p.mirror_strip(BandAxis::Column, gu + 6, gu + 8, gu + 8, true, outside_rows)?;

    // Pleats that take up the new rows and columns outside the gadget.
    let row_pleats = [(gv + 4, FoldAngle::Mountain180), (gv + 5, FoldAngle::Valley180), (gv + 2, FoldAngle::Mountain180), (gv + 1, FoldAngle::Valley180)];
    for (v, angle) in row_pleats {
        p.add_line(GridPoint::new(0, v), GridPoint::new(gu, v), angle)?;
        p.add_line(GridPoint::new(gu + 10, v), GridPoint::new(umax, v), angle)?;
    }
    let col_pleats = [(gu + 4, FoldAngle::Mountain180), (gu + 2, FoldAngle::Valley180), (gu + 6, FoldAngle::Mountain180), (gu + 8, FoldAngle::Valley180)];
    for (u, angle) in col_pleats {
        p.add_line(GridPoint::new(u, 0), GridPoint::new(u, gv), angle)?;
        p.add_line(GridPoint::new(u, gv + 6), GridPoint::new(u, vmax), angle)?;
    }

    let gadget = cube_gadget();
    let origin = GridPoint::new(gu, gv);
    p = p.overlay(&gadget.pattern, origin)?;
    for h in &gadget.hinges {
        let t = |q: GridPoint| GridPoint::new(q.u + gu, q.v + gv);
        p.compose(t(h.a), t(h.b), h.angle)?;
    }

    let mut out = fm.remapped(|sq| {
        let row = match sq.row.cmp(&i) {
            std::cmp::Ordering::Less => sq.row,
            std::cmp::Ordering::Equal => i + 1,
            std::cmp::Ordering::Greater => sq.row + 2,
        };
        let col = match sq.col.cmp(&j) {
            std::cmp::Ordering::Less => sq.col,
            std::cmp::Ordering::Equal => j + 2,
            std::cmp::Ordering::Greater => sq.col + 4,
        };
        SquarePos::new(row, col)
    });
    let shifted_s = SquarePos::new(i + 1, j + 2);
    if let Some((f, entry)) = out.entries.iter().find(|(_, e)| e.square == shifted_s).map(|(f, e)| (*f, *e)) {
        out.entries.remove(&f);
        let cell = f.neighbor();
        for (side, dir, a, b) in cube_frames(entry.u_dir, entry.v_dir) {
            let face = Face::new(cell, dir);
            let across = Face::new(face.neighbor(), dir.opposite());
            if out.entries.remove(&across).is_some() {
                continue;
            }
            let local = gadget.face_squares[&side].expect("five sides have squares");
            out.entries.insert(face, FaceEntry { square: SquarePos::new(i + local.row, j + local.col), u_dir: a, v_dir: b });
        }
    }
    Ok((p, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_table_shape() {
        let g = cube_gadget();
        assert_eq!((g.pattern.width(), g.pattern.height()), (5, 3));
        assert!(g.pattern.validate_tetrakis().is_valid());
        assert!(g.pattern.creases().all(|c| !c.angle.is_trivial()));
        assert_eq!(g.pattern.len(), 72);
        assert_eq!(g.hinges.len(), 12);
        for side in CubeSide::ALL {
            if let Some(sq) = g.face_squares[&side] {
                assert!(g.pattern.square_is_uncreased(sq.row, sq.col), "{side:?}");
            }
        }
    }

    #[test]
    fn diagonals_are_half_turns() {
        let g = cube_gadget();
        for c in g.pattern.creases() {
            if c.is_diagonal() {
                assert_eq!(c.angle.degrees().abs(), 180);
            }
        }
    }

    #[test]
    fn insertion_grows_sheet() {
        let blank = CreasePattern::new(5, 3);
        let (p, _) = apply_insertion(&blank, &FaceMap::default(), SquarePos::new(1, 2), Orientation::Normal).unwrap();
        assert_eq!((p.width(), p.height()), (9, 5));
        let (r, _) = apply_insertion(&blank, &FaceMap::default(), SquarePos::new(1, 2), Orientation::Rotated).unwrap();
        assert_eq!((r.width(), r.height()), (7, 7));
    }

    #[test]
    fn insertion_preconditions() {
        let g = cube_gadget();
        let err = apply_insertion(&g.pattern, &FaceMap::default(), SquarePos::new(0, 0), Orientation::Normal);
        assert_eq!(err.unwrap_err(), InsertionError::SquareNotSeamless { row: 0, col: 0 });
        let err = apply_insertion(&g.pattern, &FaceMap::default(), SquarePos::new(3, 0), Orientation::Normal);
        assert!(matches!(err, Err(InsertionError::SquareOutOfBounds { .. })));
    }

    #[test]
    fn blank_insertion_commutes_with_translation() {
        let blank = CreasePattern::new(5, 3);
        let fm = FaceMap::default();
        let (a, _) = apply_insertion(&blank, &fm, SquarePos::new(1, 1), Orientation::Normal).unwrap();
        let (b, _) = apply_insertion(&blank, &fm, SquarePos::new(1, 2), Orientation::Normal).unwrap();
        let shift = |c: Crease| (GridPoint::new(c.a.u + 2, c.a.v), GridPoint::new(c.b.u + 2, c.b.v), c.angle);
        // Compare inside the region both patterns share after the shift.
        let inside = |x: &(GridPoint, GridPoint, FoldAngle)| x.0.u >= 2 && x.1.u <= 18;
        let sa: Vec<_> = a.creases().map(shift).filter(inside).collect();
        let sb: Vec<_> = b.creases().map(|c| (c.a, c.b, c.angle)).filter(inside).collect();
        assert_eq!(sa, sb);
    }
}
