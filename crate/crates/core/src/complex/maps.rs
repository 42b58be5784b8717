use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{FacePoset, Vertex};
use crate::error::{Error, Result};

/// Barycentric subdivision together with the cell-to-barycenter map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: FacePoset,
    /// `barycenter[i]` is the vertex of the subdivision sitting at the
    /// barycenter of cell `i` of the original complex.
    pub barycenter: Vec<Vertex>,
}

pub(super) fn subdivide(x: &FacePoset) -> Subdivision {
    let barycenter: Vec<Vertex> = (0..x.num_cells()).map(|i| x.barycenter_label(i)).collect();
    let mut chains: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    // Every chain of faces, enumerated by extending along strict cofaces.
    let mut stack: Vec<Vec<usize>> = (0..x.num_cells()).map(|i| vec![i]).collect();
    let cofaces: Vec<Vec<usize>> = (0..x.num_cells()).map(|i| x.strict_cofaces(i)).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        for &next in &cofaces[last] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
        let mut labels: Vec<Vertex> = chain.iter().map(|&c| barycenter[c]).collect();
        labels.sort_unstable();
        chains.insert(labels);
    }
    Subdivision { complex: FacePoset::from_closed_cells(chains), barycenter }
}

/// Suspension `SX`: the join of `X` with two new vertices.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub complex: FacePoset,
    /// Cone point of the lower half; one past the largest vertex of `X`.
    pub south: Vertex,
    /// Cone point of the upper half.
    pub north: Vertex,
}

pub(super) fn suspend(x: &FacePoset) -> Suspension {
    let top = x.vertices().iter().copied().max().unwrap_or(0);
    let (south, north) = (top + 1, top + 2);
    let mut cells: BTreeSet<Vec<Vertex>> = x.cells().iter().cloned().collect();
    cells.insert(vec![south]);
    cells.insert(vec![north]);
    for c in x.cells() {
        for pole in [south, north] {
            let mut coned = c.clone();
            coned.push(pole);
            cells.insert(coned);
        }
    }
    Suspension { complex: FacePoset::from_closed_cells(cells), south, north }
}

impl Suspension {
    /// Cells of the closed lower cone: everything not containing the north pole.
    pub fn lower_closed(&self) -> crate::complex::CellSet {
        let north = self.complex.lookup(&[self.north]).expect("north pole");
        let star = self.complex.up_closure(&crate::complex::CellSet::single(north));
        self.complex.all_cells().difference(&star)
    }

    /// Open star of the north pole.
    pub fn upper_open(&self) -> crate::complex::CellSet {
        self.complex.open_star(self.north).expect("north pole")
    }
}

/// A simplicial map given by a vertex table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: FacePoset,
    pub target: FacePoset,
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    /// Checks that every source vertex is mapped and every cell lands on a cell.
    pub fn new(source: FacePoset, target: FacePoset, vertex_map: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        for v in source.vertices() {
            let Some(w) = vertex_map.get(v) else {
                return Err(Error::NotSimplicial(format!("vertex {v} is unmapped")));
            };
            if target.index_of(&[*w]).is_none() {
                return Err(Error::NotSimplicial(format!("vertex {v} maps to {w}, not a target vertex")));
            }
        }
        let map = SimplicialMap { source, target, vertex_map };
        for c in map.source.maximal_cells() {
            let image = map.image_vertices(&c);
            if map.target.index_of(&image).is_none() {
                return Err(Error::NotSimplicial(format!("cell {c:?} maps onto {image:?}")));
            }
        }
        Ok(map)
    }

    pub fn identity(x: &FacePoset) -> Self {
        let vertex_map = x.vertices().iter().map(|&v| (v, v)).collect();
        SimplicialMap { source: x.clone(), target: x.clone(), vertex_map }
    }

    /// Sorted, deduplicated image of a vertex list.
    pub fn image_vertices(&self, cell: &[Vertex]) -> Vec<Vertex> {
        let mut image: Vec<Vertex> = cell.iter().map(|v| self.vertex_map[v]).collect();
        image.sort_unstable();
        image.dedup();
        image
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::NotSimplicial("composition of maps with mismatched complexes".into()));
        }
        let vertex_map = inner.vertex_map.iter().map(|(&v, w)| (v, self.vertex_map[w])).collect();
        Ok(SimplicialMap { source: inner.source.clone(), target: self.target.clone(), vertex_map })
    }

    /// The suspended map `Sf : SX -> SY`, poles to poles.
    pub fn suspend(&self) -> Self {
        let s = self.source.suspend();
        let t = self.target.suspend();
        let mut vertex_map = self.vertex_map.clone();
        vertex_map.insert(s.south, t.south);
        vertex_map.insert(s.north, t.north);
        SimplicialMap { source: s.complex, target: t.complex, vertex_map }
    }
}
