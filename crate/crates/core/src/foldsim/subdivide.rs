//! Planar subdivision of a crease pattern into maximal uncreased faces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::pattern::{CreasePattern, FoldAngle, GridPoint};

/// Boundary points of a unit square in counterclockwise order, relative to
/// its minimum corner. Even positions are corners, odd ones edge midpoints.
const RING: [(i32, i32); 8] = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

/// One of the `8 * width * height` tetrakis triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub row: i32,
    pub col: i32,
    /// Position `0..8` counterclockwise around the square center.
    pub k: usize,
    /// Counterclockwise vertices: square center, then two ring points.
    pub vertices: [GridPoint; 3],
}

impl Triangle {
    /// The vertex holding the right angle (the edge midpoint).
    pub fn right_angle(&self) -> GridPoint {
        if self.k % 2 == 0 {
            self.vertices[2]
        } else {
            self.vertices[1]
        }
    }

    /// The square corner vertex.
    pub fn corner(&self) -> GridPoint {
        if self.k % 2 == 0 {
            self.vertices[1]
        } else {
            self.vertices[2]
        }
    }

    pub fn edges(&self) -> [(GridPoint, GridPoint); 3] {
        let [c, p, q] = self.vertices;
        [(c, p), (p, q), (q, c)]
    }
}

pub(crate) fn edge_key(p: GridPoint, q: GridPoint) -> (GridPoint, GridPoint) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// The tetrakis triangulation of a `width x height` sheet with edge
/// incidence.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub width: i32,
    pub height: i32,
    pub triangles: Vec<Triangle>,
    /// Minimal edge to the one or two triangles containing it.
    pub edge_triangles: HashMap<(GridPoint, GridPoint), Vec<usize>>,
}

impl Triangulation {
    pub fn new(width: i32, height: i32) -> Self {
        let mut triangles = Vec::with_capacity((8 * width * height) as usize);
        for row in 0..height {
            for col in 0..width {
                let (u0, v0) = (2 * col, 2 * row);
                let center = GridPoint::new(u0 + 1, v0 + 1);
                for k in 0..8 {
                    let (a, b) = (RING[k], RING[(k + 1) % 8]);
                    triangles.push(Triangle {
                        row,
                        col,
                        k,
                        vertices: [center, GridPoint::new(u0 + a.0, v0 + a.1), GridPoint::new(u0 + b.0, v0 + b.1)],
                    });
                }
            }
        }
        let mut edge_triangles: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, t) in triangles.iter().enumerate() {
            for (p, q) in t.edges() {
                edge_triangles.entry(edge_key(p, q)).or_default().push(i);
            }
        }
        Triangulation { width, height, triangles, edge_triangles }
    }

    pub fn index(&self, row: i32, col: i32, k: usize) -> usize {
        ((row * self.width + col) * 8) as usize + k
    }

    /// Vertex not on edge `(p, q)`.
    pub fn opposite(&self, tri: usize, p: GridPoint, q: GridPoint) -> GridPoint {
        *self.triangles[tri].vertices.iter().find(|&&x| x != p && x != q).expect("edge belongs to triangle")
    }
}

/// Adjacency across a nontrivial crease.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceLink {
    pub face: usize,
    pub a: GridPoint,
    pub b: GridPoint,
    pub angle: FoldAngle,
    /// Triangle on this side of the crease.
    pub near: usize,
    /// Triangle on the far side.
    pub far: usize,
}

/// A maximal region of triangles joined by trivial creases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub id: usize,
    pub triangles: Vec<usize>,
    /// Boundary loops, each counterclockwise-consistent with the paper
    /// orientation. The first loop holds the lowest point.
    pub loops: Vec<Vec<GridPoint>>,
    pub neighbors: Vec<FaceLink>,
}

impl SubdivisionFace {
    /// Area in paper units times 8 (the triangle count).
    pub fn area_eighths(&self) -> usize {
        self.triangles.len()
    }

    pub fn polygon(&self) -> &[GridPoint] {
        &self.loops[0]
    }
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub mesh: Triangulation,
    pub faces: Vec<SubdivisionFace>,
    /// Face id of every triangle.
    pub face_of: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Split the pattern into faces. With `merge` false every triangle is its
/// own face, which gives the raw-triangle debug view.
pub fn subdivide_with(c: &CreasePattern, merge: bool) -> Subdivision {
    let mesh = Triangulation::new(c.width(), c.height());
    let n = mesh.triangles.len();
    let mut parent: Vec<usize> = (0..n).collect();
    if merge {
        let mut edges: Vec<_> = mesh.edge_triangles.iter().collect();
        edges.sort_by_key(|(k, _)| **k);
        for (&(p, q), tris) in edges {
            if tris.len() == 2 && c.angle(p, q).is_trivial() {
                let (x, y) = (find(&mut parent, tris[0]), find(&mut parent, tris[1]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }

    // Number faces by their smallest triangle so ids follow paper order.
    let mut id_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut face_of = vec![0; n];
    for t in 0..n {
        let r = find(&mut parent, t);
        let next = id_of_root.len();
        face_of[t] = *id_of_root.entry(r).or_insert(next);
    }
    let mut faces: Vec<SubdivisionFace> = (0..id_of_root.len())
        .map(|id| SubdivisionFace { id, triangles: Vec::new(), loops: Vec::new(), neighbors: Vec::new() })
        .collect();
    for t in 0..n {
        faces[face_of[t]].triangles.push(t);
    }

    for face in &mut faces {
        let mut boundary: Vec<(GridPoint, GridPoint)> = Vec::new();
        for &t in &face.triangles {
            for (p, q) in mesh.triangles[t].edges() {
                let tris = &mesh.edge_triangles[&edge_key(p, q)];
                let other = tris.iter().copied().find(|&o| o != t);
                match other {
                    Some(o) if face_of[o] == face.id => {
                        let angle = c.angle(p, q);
                        if !angle.is_trivial() {
                            // A crease that does not separate faces. Keep it as
                            // a self-link so evaluation can reject it.
                            face.neighbors.push(FaceLink { face: face.id, a: p.min(q), b: p.max(q), angle, near: t, far: o });
                        }
                    }
                    Some(o) => {
                        boundary.push((p, q));
                        face.neighbors.push(FaceLink {
                            face: face_of[o],
                            a: p.min(q),
                            b: p.max(q),
                            angle: c.angle(p, q),
                            near: t,
                            far: o,
                        });
                    }
                    None => boundary.push((p, q)),
                }
            }
        }
        face.neighbors.sort_by_key(|l| (l.a, l.b, l.near));
        face.loops = trace_loops(boundary);
    }
    Subdivision { mesh, faces, face_of }
}

pub fn subdivide(c: &CreasePattern) -> Subdivision {
    subdivide_with(c, true)
}

/// Chain directed boundary edges into closed loops, dropping collinear
/// intermediate points.
fn trace_loops(edges: Vec<(GridPoint, GridPoint)>) -> Vec<Vec<GridPoint>> {
    let mut out_edges: BTreeMap<GridPoint, Vec<GridPoint>> = BTreeMap::new();
    for &(p, q) in &edges {
        out_edges.entry(p).or_default().push(q);
    }
    let mut used: BTreeSet<(GridPoint, GridPoint)> = BTreeSet::new();
    let mut loops = Vec::new();
    let mut starts: Vec<(GridPoint, GridPoint)> = edges.clone();
    starts.sort();
    for (p0, q0) in starts {
        if used.contains(&(p0, q0)) {
            continue;
        }
        let mut lp = vec![p0];
        let (mut p, mut q) = (p0, q0);
        loop {
            used.insert((p, q));
            if q == p0 {
                break;
            }
            lp.push(q);
            let incoming = (q.u - p.u, q.v - p.v);
            // At pinch points take the sharpest left turn so loops stay simple.
            let next = out_edges[&q]
                .iter()
                .copied()
                .filter(|&r| !used.contains(&(q, r)))
                .max_by_key(|&r| turn_rank(incoming, (r.u - q.u, r.v - q.v)))
                .expect("boundary edges form closed loops");
            p = q;
            q = next;
        }
        loops.push(simplify(lp));
    }
    loops
}

fn turn_rank(a: (i32, i32), b: (i32, i32)) -> i64 {
    let ang = |d: (i32, i32)| (d.1 as f64).atan2(d.0 as f64);
    let mut t = ang(b) - ang(a);
    while t <= -std::f64::consts::PI {
        t += 2.0 * std::f64::consts::PI;
    }
    while t > std::f64::consts::PI {
        t -= 2.0 * std::f64::consts::PI;
    }
    (t * 1_000_000.0).round() as i64
}

fn simplify(lp: Vec<GridPoint>) -> Vec<GridPoint> {
    let n = lp.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let prev = lp[(i + n - 1) % n];
        let cur = lp[i];
        let next = lp[(i + 1) % n];
        let cross = (cur.u - prev.u) * (next.v - cur.v) - (cur.v - prev.v) * (next.u - cur.u);
        let same_dir = (cur.u - prev.u) * (next.u - cur.u) + (cur.v - prev.v) * (next.v - cur.v) > 0;
        if cross != 0 || !same_dir {
            out.push(cur);
        }
    }
    out
}
