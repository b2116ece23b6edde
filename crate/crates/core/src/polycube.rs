//! Polycubes: parsing, dual graph, build plans and target surfaces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// A unit cube of the integer lattice, identified by its minimum corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Cell { x, y, z }
    }

    pub fn step(self, dir: Dir) -> Cell {
        let [dx, dy, dz] = dir.vector();
        Cell::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn coords(self) -> [i32; 3] {
        [self.x, self.y, self.z]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// One of the six signed axis directions.
///
/// The declaration order `-x, +x, -y, +y, -z, +z` is the neighbor order used
/// by the spanning-tree search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    NegX,
    PosX,
    NegY,
    PosY,
    NegZ,
    PosZ,
}

impl Dir {
    pub const ALL: [Dir; 6] = [Dir::NegX, Dir::PosX, Dir::NegY, Dir::PosY, Dir::NegZ, Dir::PosZ];

    pub fn axis(self) -> usize {
        match self {
            Dir::NegX | Dir::PosX => 0,
            Dir::NegY | Dir::PosY => 1,
            Dir::NegZ | Dir::PosZ => 2,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Dir::PosX | Dir::PosY | Dir::PosZ)
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::NegX => Dir::PosX,
            Dir::PosX => Dir::NegX,
            Dir::NegY => Dir::PosY,
            Dir::PosY => Dir::NegY,
            Dir::NegZ => Dir::PosZ,
            Dir::PosZ => Dir::NegZ,
        }
    }

    pub fn vector(self) -> [i32; 3] {
        let mut v = [0; 3];
        v[self.axis()] = if self.is_positive() { 1 } else { -1 };
        v
    }

    pub fn from_vector(v: [i32; 3]) -> Option<Dir> {
        Dir::ALL.into_iter().find(|d| d.vector() == v)
    }

    pub fn from_axis(axis: usize, positive: bool) -> Dir {
        match (axis, positive) {
            (0, false) => Dir::NegX,
            (0, true) => Dir::PosX,
            (1, false) => Dir::NegY,
            (1, true) => Dir::PosY,
            (2, false) => Dir::NegZ,
            _ if positive => Dir::PosZ,
            _ => Dir::NegZ,
        }
    }

    /// Right-handed cross product of two perpendicular directions.
    pub fn cross(self, other: Dir) -> Option<Dir> {
        let [a0, a1, a2] = self.vector();
        let [b0, b1, b2] = other.vector();
        Dir::from_vector([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::NegX => "-x",
            Dir::PosX => "+x",
            Dir::NegY => "-y",
            Dir::PosY => "+y",
            Dir::NegZ => "-z",
            Dir::PosZ => "+z",
        }
    }

    pub fn parse(s: &str) -> Option<Dir> {
        Dir::ALL.into_iter().find(|d| d.name() == s)
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A square face of a lattice cube: the face of `cell` on side `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub cell: Cell,
    pub dir: Dir,
}

impl Face {
    pub const fn new(cell: Cell, dir: Dir) -> Self {
        Face { cell, dir }
    }

    /// Key shared by both cubes incident to this lattice square: the
    /// smaller cell with a positive direction.
    pub fn canonical(self) -> Face {
        if self.dir.is_positive() {
            self
        } else {
            Face::new(self.cell.step(self.dir), self.dir.opposite())
        }
    }

    /// The cell on the other side of this face.
    pub fn neighbor(self) -> Cell {
        self.cell.step(self.dir)
    }

    pub fn square(self) -> LatticeSquare {
        let c = self.canonical();
        let axis = c.dir.axis();
        let coords = c.cell.coords();
        let (a, b) = other_axes(axis);
        LatticeSquare { axis, level: coords[axis] + 1, a: coords[a], b: coords[b] }
    }

    /// Center of the face in doubled coordinates.
    pub fn center_doubled(self) -> [i32; 3] {
        let c = self.cell.coords();
        let d = self.dir.vector();
        [2 * c[0] + 1 + d[0], 2 * c[1] + 1 + d[1], 2 * c[2] + 1 + d[2]]
    }

    pub fn parse(s: &str) -> Option<Face> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return None;
        }
        let x = parts[0].parse().ok()?;
        let y = parts[1].parse().ok()?;
        let z = parts[2].parse().ok()?;
        let dir = Dir::parse(parts[3])?;
        Some(Face::new(Cell::new(x, y, z), dir))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.cell.x, self.cell.y, self.cell.z, self.dir)
    }
}

pub(crate) fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// A unit square of the cubic lattice: normal `axis`, plane coordinate
/// `level`, and minimum corner `(a, b)` along the two remaining axes in
/// increasing axis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeSquare {
    pub axis: usize,
    pub level: i32,
    pub a: i32,
    pub b: i32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolycubeError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no cells in input")]
    EmptyInput,
    #[error("polycube is disconnected: {a} cannot reach {b}")]
    Disconnected { a: Cell, b: Cell },
    #[error("face {0} is not a face of any cell")]
    FaceNotOnPolycube(Face),
    #[error("face {0} is shared by two cells")]
    FaceInterior(Face),
}

/// A face-connected set of lattice cubes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polycube {
    cells: BTreeSet<Cell>,
}

/// Parse result that also reports how many duplicate lines were dropped.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub polycube: Polycube,
    pub duplicates: usize,
}

/// Parse the cell-list text format: one `x y z` triple per line, `#`
/// comments, blank lines ignored. Duplicates are dropped.
pub fn parse_polycube(text: &str) -> Result<Parsed, PolycubeError> {
    let mut cells = BTreeSet::new();
    let mut duplicates = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(PolycubeError::Syntax {
                line: idx + 1,
                message: format!("expected 3 integers, found {} fields", fields.len()),
            });
        }
        let mut xyz = [0i32; 3];
        for (slot, field) in xyz.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| PolycubeError::Syntax {
                line: idx + 1,
                message: format!("not an integer: {field:?}"),
            })?;
        }
        if !cells.insert(Cell::new(xyz[0], xyz[1], xyz[2])) {
            duplicates += 1;
        }
    }
    let polycube = Polycube::new(cells)?;
    Ok(Parsed { polycube, duplicates })
}

impl Polycube {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self, PolycubeError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        let first = *cells.iter().next().ok_or(PolycubeError::EmptyInput)?;
        let p = Polycube { cells };
        let reached = p.reachable_from(first);
        if let Some(&missing) = p.cells.iter().find(|c| !reached.contains(c)) {
            return Err(PolycubeError::Disconnected { a: first, b: missing });
        }
        Ok(p)
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    fn reachable_from(&self, start: Cell) -> BTreeSet<Cell> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for d in Dir::ALL {
                let n = c.step(d);
                if self.cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }

    pub fn dual_graph(&self) -> DualGraph {
        let mut edges = BTreeSet::new();
        for &c in &self.cells {
            for d in [Dir::PosX, Dir::PosY, Dir::PosZ] {
                let n = c.step(d);
                if self.cells.contains(&n) {
                    edges.insert((c, n));
                }
            }
        }
        DualGraph { vertices: self.cells.iter().copied().collect(), edges }
    }

    pub fn is_boundary_face(&self, f: Face) -> bool {
        self.contains(f.cell) && !self.contains(f.neighbor())
    }

    /// Boundary faces plus the lattice squares shared by two cells (keyed
    /// canonically).
    pub fn surface_and_interior(&self) -> (BTreeSet<Face>, BTreeSet<Face>) {
        let mut faces = BTreeSet::new();
        let mut interior = BTreeSet::new();
        for &c in &self.cells {
            for d in Dir::ALL {
                let f = Face::new(c, d);
                if self.contains(f.neighbor()) {
                    interior.insert(f.canonical());
                } else {
                    faces.insert(f);
                }
            }
        }
        (faces, interior)
    }

    /// Every lattice square a folding of this polycube must cover.
    pub fn target_squares(&self) -> BTreeSet<LatticeSquare> {
        let (faces, interior) = self.surface_and_interior();
        faces.iter().chain(&interior).map(|f| f.square()).collect()
    }

    /// The `-z` face of the smallest cell whose `-z` side is exposed.
    pub fn default_seam_face(&self) -> Face {
        self.cells
            .iter()
            .map(|&c| Face::new(c, Dir::NegZ))
            .find(|&f| self.is_boundary_face(f))
            .expect("a finite polycube has an exposed bottom face")
    }

    pub fn build_plan(&self, g: Face) -> Result<BuildPlan, PolycubeError> {
        if !self.contains(g.cell) {
            return Err(PolycubeError::FaceNotOnPolycube(g));
        }
        if self.contains(g.neighbor()) {
            return Err(PolycubeError::FaceInterior(g));
        }
        let base = g.cell;

        // BFS spanning tree, neighbors in Dir::ALL order.
        let mut parent: BTreeMap<Cell, (Cell, Dir)> = BTreeMap::new();
        let mut seen = BTreeSet::from([base]);
        let mut queue = VecDeque::from([base]);
        while let Some(c) = queue.pop_front() {
            for d in Dir::ALL {
                let n = c.step(d);
                if self.contains(n) && seen.insert(n) {
                    parent.insert(n, (c, d));
                    queue.push_back(n);
                }
            }
        }

        let mut degree: BTreeMap<Cell, usize> = self.cells.iter().map(|&c| (c, 0)).collect();
        for (&child, &(par, _)) in &parent {
            *degree.get_mut(&child).unwrap() += 1;
            *degree.get_mut(&par).unwrap() += 1;
        }
        let mut leaves: BTreeSet<Cell> =
            degree.iter().filter(|&(&c, &d)| c != base && d <= 1).map(|(&c, _)| c).collect();
        let mut removal = Vec::with_capacity(self.len().saturating_sub(1));
        while let Some(leaf) = leaves.pop_last() {
            removal.push(leaf);
            let (par, _) = parent[&leaf];
            let d = degree.get_mut(&par).unwrap();
            *d -= 1;
            if par != base && *d == 1 {
                leaves.insert(par);
            }
        }

        let mut insertion_order = vec![PlanStep { cell: base, attach: None }];
        for &cell in removal.iter().rev() {
            let (par, d) = parent[&cell];
            insertion_order.push(PlanStep { cell, attach: Some(Face::new(par, d)) });
        }
        Ok(BuildPlan { base, seam: g, insertion_order })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<Cell>,
    /// Unordered pairs stored as `(smaller, larger)`.
    pub edges: BTreeSet<(Cell, Cell)>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut adj: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &n in adj.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// One step of the inductive construction: add `cell`, extruded from the
/// face `attach` of an already placed cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub cell: Cell,
    pub attach: Option<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildPlan {
    pub base: Cell,
    pub seam: Face,
    pub insertion_order: Vec<PlanStep>,
}
