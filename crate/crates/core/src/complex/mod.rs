//! Finite simplicial complexes as face posets, and the open / closed /
//! locally closed calculus of cell sets that stands in for the topology
//! of the underlying polyhedron.
//!
//! A union of open cells is open in the polyhedron exactly when it is
//! closed under taking cofaces, so open sets are up-sets of the face
//! order and closed sets (subcomplexes) are down-sets. Locally closed
//! sets, differences of two open sets, are the order-convex sets.

mod generators;
mod maps;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generators::{circle, sphere, telescope, Telescope};
pub use maps::{SimplicialMap, Subdivision, Suspension};

pub type Vertex = usize;

/// A finite simplicial complex, stored as the poset of its nonempty
/// faces. Cells are kept sorted lexicographically on their sorted vertex
/// lists; every basis in the crate follows that order.
#[derive(Clone)]
pub struct FacePoset {
    vertices: Vec<Vertex>,
    cells: Vec<Vec<Vertex>>,
    index: HashMap<Vec<Vertex>, usize>,
    dim: usize,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    /// Position of each cell in the (dimension, lexicographic) order; used
    /// as the vertex label of the cell's barycenter.
    bary: Vec<usize>,
    bary_inv: Vec<usize>,
}

impl PartialEq for FacePoset {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.cells == other.cells
    }
}

impl Eq for FacePoset {}

impl fmt::Debug for FacePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FacePoset")
            .field("vertices", &self.vertices.len())
            .field("cells", &self.cells.len())
            .field("dim", &self.dim)
            .finish()
    }
}

impl FacePoset {
    /// Downward closure of a list of cells.
    pub fn build(maximal_cells: &[Vec<Vertex>]) -> Result<Self> {
        if maximal_cells.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut all: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for raw in maximal_cells {
            if raw.is_empty() {
                return Err(Error::EmptyComplex);
            }
            let mut cell = raw.clone();
            cell.sort_unstable();
            if cell.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex(raw.clone()));
            }
            if cell.len() > 20 {
                return Err(Error::OutOfRange(format!("cell with {} vertices", cell.len())));
            }
            if all.contains(&cell) {
                continue;
            }
            let n = cell.len();
            for mask in 1u32..(1u32 << n) {
                let sub: Vec<Vertex> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| cell[b]).collect();
                all.insert(sub);
            }
        }
        Ok(Self::from_closed_cells(all))
    }

    /// Builds from a set of cells already closed under nonempty subsets.
    pub(crate) fn from_closed_cells(all: BTreeSet<Vec<Vertex>>) -> Self {
        let cells: Vec<Vec<Vertex>> = all.into_iter().collect();
        let index: HashMap<Vec<Vertex>, usize> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let vertices: Vec<Vertex> = cells.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        let dim = cells.iter().map(|c| c.len() - 1).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); cells.len()];
        let mut cofaces = vec![Vec::new(); cells.len()];
        for (i, c) in cells.iter().enumerate() {
            if c.len() < 2 {
                continue;
            }
            for skip in 0..c.len() {
                let face: Vec<Vertex> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                let f = index[&face];
                faces[i].push(f);
                cofaces[f].push(i);
            }
        }
        for list in faces.iter_mut().chain(cofaces.iter_mut()) {
            list.sort_unstable();
        }
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| cells[a].len().cmp(&cells[b].len()).then_with(|| cells[a].cmp(&cells[b])));
        let mut bary = vec![0; cells.len()];
        for (label, &cell) in order.iter().enumerate() {
            bary[cell] = label;
        }
        FacePoset { vertices, cells, index, dim, faces, cofaces, bary, bary_inv: order }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &[Vertex] {
        &self.cells[i]
    }

    pub fn cell_dim(&self, i: usize) -> usize {
        self.cells[i].len() - 1
    }

    pub fn index_of(&self, cell: &[Vertex]) -> Option<usize> {
        self.index.get(cell).copied()
    }

    /// Index of a cell given in any vertex order.
    pub fn lookup(&self, cell: &[Vertex]) -> Result<usize> {
        let mut sorted = cell.to_vec();
        sorted.sort_unstable();
        self.index_of(&sorted).ok_or_else(|| Error::UnknownCell(cell.to_vec()))
    }

    /// Codimension-one faces.
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// Codimension-one cofaces.
    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// Whether cell `a` is a face of (or equal to) cell `b`.
    pub fn is_face(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.cells[a], &self.cells[b]);
        ca.len() <= cb.len() && ca.iter().all(|v| cb.binary_search(v).is_ok())
    }

    pub fn barycenter_label(&self, i: usize) -> usize {
        self.bary[i]
    }

    pub fn cell_of_barycenter(&self, label: usize) -> usize {
        self.bary_inv[label]
    }

    /// All cofaces of `i`, excluding `i` itself.
    pub fn strict_cofaces(&self, i: usize) -> Vec<usize> {
        let mut up = self.up_closure(&CellSet::single(i));
        up.remove(i);
        up.iter().collect()
    }

    pub fn maximal_cells(&self) -> Vec<Vec<Vertex>> {
        (0..self.cells.len()).filter(|&i| self.cofaces[i].is_empty()).map(|i| self.cells[i].clone()).collect()
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].len() == k + 1).collect()
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for c in &self.cells {
            f[c.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn all_cells(&self) -> CellSet {
        CellSet((0..self.cells.len()).collect())
    }

    /// Cell set from explicit vertex lists (any vertex order).
    pub fn cell_set(&self, lists: &[Vec<Vertex>]) -> Result<CellSet> {
        lists.iter().map(|c| self.lookup(c)).collect::<Result<BTreeSet<_>>>().map(CellSet)
    }

    pub fn cell_lists(&self, set: &CellSet) -> Vec<Vec<Vertex>> {
        set.iter().map(|i| self.cells[i].clone()).collect()
    }

    fn check_members(&self, set: &CellSet) -> Result<()> {
        match set.iter().find(|&i| i >= self.cells.len()) {
            Some(i) => Err(Error::UnknownCell(vec![i])),
            None => Ok(()),
        }
    }

    /// Largest dimension of a cell in `set`; zero for the empty set.
    pub fn dim_of(&self, set: &CellSet) -> usize {
        set.iter().map(|i| self.cell_dim(i)).max().unwrap_or(0)
    }

    pub fn up_closure(&self, set: &CellSet) -> CellSet {
        self.saturate(set, &self.cofaces)
    }

    /// Smallest subcomplex containing `set`.
    pub fn closure(&self, set: &CellSet) -> CellSet {
        self.saturate(set, &self.faces)
    }

    fn saturate(&self, set: &CellSet, links: &[Vec<usize>]) -> CellSet {
        let mut out = set.0.clone();
        let mut queue: VecDeque<usize> = set.iter().collect();
        while let Some(c) = queue.pop_front() {
            for &n in &links[c] {
                if out.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        CellSet(out)
    }

    /// Largest up-set contained in `set`.
    pub fn interior(&self, set: &CellSet) -> CellSet {
        let mut members: Vec<usize> = set.iter().collect();
        members.sort_by_key(|&i| std::cmp::Reverse(self.cells[i].len()));
        let mut inside = BTreeSet::new();
        for c in members {
            if self.cofaces[c].iter().all(|n| inside.contains(n)) {
                inside.insert(c);
            }
        }
        CellSet(inside)
    }

    pub fn is_open(&self, set: &CellSet) -> bool {
        set.iter().all(|c| self.cofaces[c].iter().all(|n| set.contains(*n)))
    }

    pub fn is_closed(&self, set: &CellSet) -> bool {
        set.iter().all(|c| self.faces[c].iter().all(|n| set.contains(*n)))
    }

    /// `σ ⊆ τ ⊆ ρ` with `σ, ρ` in the set forces `τ` in the set.
    pub fn is_order_convex(&self, set: &CellSet) -> bool {
        let up = self.up_closure(set);
        let down = self.closure(set);
        up.intersection(&down) == *set
    }

    pub fn classify(&self, set: &CellSet) -> Result<SetKind> {
        self.check_members(set)?;
        Ok(if self.is_open(set) {
            SetKind::Open
        } else if self.is_closed(set) {
            SetKind::Closed
        } else if self.is_order_convex(set) {
            SetKind::LocallyClosed
        } else {
            SetKind::Other
        })
    }

    /// Errors unless `set` is order-convex.
    pub fn require_locally_closed(&self, set: &CellSet) -> Result<()> {
        self.check_members(set)?;
        if self.is_order_convex(set) {
            Ok(())
        } else {
            Err(Error::NotLocallyClosed(format!("{:?}", self.cell_lists(set))))
        }
    }

    /// Cells containing vertex `v`.
    pub fn open_star(&self, v: Vertex) -> Result<CellSet> {
        let i = self.lookup(&[v])?;
        Ok(self.up_closure(&CellSet::single(i)))
    }

    pub fn closed_star(&self, v: Vertex) -> Result<CellSet> {
        Ok(self.closure(&self.open_star(v)?))
    }

    pub fn barycentric_subdivision(&self) -> Subdivision {
        maps::subdivide(self)
    }

    pub fn suspend(&self) -> Suspension {
        maps::suspend(self)
    }
}

/// Classification of a cell set by the topology it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SetKind {
    /// Up-closed. Sets that are both open and closed report as open.
    Open,
    /// Down-closed, i.e. a subcomplex.
    Closed,
    /// Order-convex: a difference of two open sets.
    LocallyClosed,
    Other,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Open => "open",
            SetKind::Closed => "closed",
            SetKind::LocallyClosed => "locallyClosed",
            SetKind::Other => "other",
        })
    }
}

/// A set of cells of some [`FacePoset`], by cell index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet(BTreeSet<usize>);

impl CellSet {
    pub fn new() -> Self {
        CellSet(BTreeSet::new())
    }

    pub fn single(i: usize) -> Self {
        CellSet(BTreeSet::from([i]))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.0.insert(i)
    }

    pub fn remove(&mut self, i: usize) -> bool {
        self.0.remove(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        CellSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<usize> for CellSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        CellSet(iter.into_iter().collect())
    }
}
