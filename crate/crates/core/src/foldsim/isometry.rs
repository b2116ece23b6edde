//! Exact rigid motions with signed-permutation rotations.

use std::fmt;
use std::ops::Mul;

pub type Vec3 = [i32; 3];
pub type Mat3 = [[i32; 3]; 3];

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn dot(a: Vec3, b: Vec3) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(k: i32, a: Vec3) -> Vec3 {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn det(m: &Mat3) -> i32 {
    dot(m[0], cross(m[1], m[2]))
}

/// True for orthogonal matrices with one `±1` per row and column.
pub fn is_signed_permutation(m: &Mat3) -> bool {
    let rows_ok = m.iter().all(|r| r.iter().filter(|&&x| x != 0).count() == 1 && r.iter().all(|x| x.abs() <= 1));
    let cols_ok = (0..3).all(|j| (0..3).filter(|&i| m[i][j] != 0).count() == 1);
    rows_ok && cols_ok
}

/// `x -> rot * x + trans` in doubled lattice coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    pub rot: Mat3,
    pub trans: Vec3,
}

impl Default for Isometry {
    fn default() -> Self {
        Isometry::identity()
    }
}

impl Isometry {
    pub const fn identity() -> Self {
        Isometry { rot: IDENTITY, trans: [0; 3] }
    }

    pub fn new(rot: Mat3, trans: Vec3) -> Self {
        debug_assert!(is_signed_permutation(&rot), "rotation must be a signed permutation");
        Isometry { rot, trans }
    }

    pub fn translation(t: Vec3) -> Self {
        Isometry { rot: IDENTITY, trans: t }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        add(mat_vec(&self.rot, p), self.trans)
    }

    pub fn apply_dir(&self, d: Vec3) -> Vec3 {
        mat_vec(&self.rot, d)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { rot: mat_mul(&self.rot, &other.rot), trans: self.apply(other.trans) }
    }

    pub fn inverse(&self) -> Isometry {
        let rt = transpose(&self.rot);
        Isometry { rot: rt, trans: scale(-1, mat_vec(&rt, self.trans)) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity()
    }

    /// Image of the paper's top normal.
    pub fn normal(&self) -> Vec3 {
        self.apply_dir([0, 0, 1])
    }

    /// Half turn about the line through `p` with direction `d`. Exact for
    /// axis directions and 45° in-plane diagonals.
    pub fn half_turn(p: Vec3, d: Vec3) -> Isometry {
        let n2 = dot(d, d);
        let mut rot = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let num = 2 * d[i] * d[j];
                debug_assert!(num % n2 == 0, "half turn axis is not a lattice direction");
                rot[i][j] = num / n2 - i32::from(i == j);
            }
        }
        Isometry::about(rot, p)
    }

    /// Quarter turn by `+90°` (right-handed) about the line through `p` with
    /// unit axis direction `e`, or by `-90°` when `positive` is false.
    pub fn quarter_turn(p: Vec3, e: Vec3, positive: bool) -> Isometry {
        debug_assert_eq!(dot(e, e), 1, "quarter turns need an axis direction");
        let s = if positive { 1 } else { -1 };
        let mut rot = [[0; 3]; 3];
        let ex = [[0, -e[2], e[1]], [e[2], 0, -e[0]], [-e[1], e[0], 0]];
        for i in 0..3 {
            for j in 0..3 {
                rot[i][j] = s * ex[i][j] + e[i] * e[j];
            }
        }
        Isometry::about(rot, p)
    }

    fn about(rot: Mat3, p: Vec3) -> Isometry {
        Isometry { rot, trans: sub(p, mat_vec(&rot, p)) }
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rot {:?} trans {:?}", self.rot, self.trans)
    }
}

/// All 24 proper rotations of the cube.
pub fn proper_rotations() -> Vec<Mat3> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for p in perms {
        for signs in 0..8 {
            let mut m = [[0; 3]; 3];
            for (i, &col) in p.iter().enumerate() {
                m[i][col] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            if det(&m) == 1 {
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_turn_about_x_axis_line() {
        let h = Isometry::half_turn([0, 2, 0], [1, 0, 0]);
        assert_eq!(h.apply([5, 3, 0]), [5, 1, 0]);
        assert_eq!(h.normal(), [0, 0, -1]);
        assert!((h * h).is_identity());
    }

    #[test]
    fn half_turn_about_diagonal() {
        let h = Isometry::half_turn([0, 0, 0], [1, 1, 0]);
        assert_eq!(h.apply([1, 0, 0]), [0, 1, 0]);
        assert_eq!(h.apply([0, 0, 1]), [0, 0, -1]);
        assert!(is_signed_permutation(&h.rot));
    }

    #[test]
    fn quarter_turns() {
        let q = Isometry::quarter_turn([2, 0, 0], [0, 1, 0], true);
        // About +y: z -> x, x -> -z.
        assert_eq!(q.apply_dir([0, 0, 1]), [1, 0, 0]);
        assert_eq!(q.apply([3, 0, 0]), [2, 0, -1]);
        let back = Isometry::quarter_turn([2, 0, 0], [0, 1, 0], false);
        assert!((q * back).is_identity());
        let four = q * q * q * q;
        assert!(four.is_identity());
    }

    #[test]
    fn inverse_and_group() {
        let rots = proper_rotations();
        assert_eq!(rots.len(), 24);
        for r in &rots {
            let iso = Isometry::new(*r, [1, -2, 3]);
            assert!((iso * iso.inverse()).is_identity());
            assert!((iso.inverse() * iso).is_identity());
        }
    }
}
