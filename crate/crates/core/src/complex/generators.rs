use crate::complex::{CellSet, FacePoset, Vertex};
use crate::error::{Error, Result};

/// Boundary of the `(n+1)`-simplex on vertices `0..=n+1`, for `0 <= n <= 4`.
pub fn sphere(n: usize) -> Result<FacePoset> {
    if n > 4 {
        return Err(Error::OutOfRange(format!("sphere({n}): need 0 <= n <= 4")));
    }
    let verts: Vec<Vertex> = (0..=n + 1).collect();
    let facets: Vec<Vec<Vertex>> =
        (0..verts.len()).map(|skip| verts.iter().copied().filter(|&v| v != skip).collect()).collect();
    FacePoset::build(&facets)
}

/// The `k`-gon on vertices `0..k`, `k >= 3`.
pub fn circle(k: usize) -> Result<FacePoset> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("circle({k}): need k >= 3")));
    }
    FacePoset::build(&circle_edges(0, k))
}

fn circle_edges(offset: Vertex, k: usize) -> Vec<Vec<Vertex>> {
    (0..k).map(|a| vec![offset + a, offset + (a + 1) % k]).collect()
}

/// Simplicial mapping telescope of the degree-two circle map.
///
/// Stage `i` (for `0 <= i <= n`) is a circle with `3 * 2^(n-i)` vertices;
/// consecutive stages are joined by a triangulated mapping cylinder of
/// the two-to-one map `a -> a mod m` onto the next, smaller circle.
#[derive(Clone, Debug)]
pub struct Telescope {
    pub complex: FacePoset,
    /// Vertex lists of the stage circles, in cyclic order.
    pub circles: Vec<Vec<Vertex>>,
    /// Truncations `K_0 ⊆ K_1 ⊆ ... ⊆ K_n`: `K_0` is the first circle and
    /// `K_j` adds the first `j` mapping cylinders. All are subcomplexes.
    pub stages: Vec<CellSet>,
}

pub const MAX_TELESCOPE_STAGES: usize = 10;

pub fn telescope(n: usize) -> Result<Telescope> {
    if n == 0 || n > MAX_TELESCOPE_STAGES {
        return Err(Error::OutOfRange(format!("telescope({n}): need 1 <= n <= {MAX_TELESCOPE_STAGES}")));
    }
    let sizes: Vec<usize> = (0..=n).map(|i| 3 << (n - i)).collect();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut next = 0;
    for &m in &sizes {
        offsets.push(next);
        next += m;
    }
    let circles: Vec<Vec<Vertex>> = (0..=n).map(|i| (0..sizes[i]).map(|a| offsets[i] + a).collect()).collect();

    // Cylinder c joins stage c-1 to stage c.
    let mut cylinders: Vec<Vec<Vec<Vertex>>> = vec![Vec::new()];
    for c in 1..=n {
        let (big, small) = (sizes[c - 1], sizes[c]);
        let (ob, os) = (offsets[c - 1], offsets[c]);
        let mut tris = Vec::with_capacity(2 * big);
        for a in 0..big {
            let a1 = (a + 1) % big;
            let (fa, fa1) = (a % small, a1 % small);
            tris.push(vec![ob + a, ob + a1, os + fa1]);
            tris.push(vec![ob + a, os + fa, os + fa1]);
        }
        cylinders.push(tris);
    }
    let all: Vec<Vec<Vertex>> = cylinders.iter().flatten().cloned().collect();
    let complex = FacePoset::build(&all)?;

    let mut stages = Vec::with_capacity(n + 1);
    let base = complex.cell_set(&circle_edges(offsets[0], sizes[0]))?;
    let mut current = complex.closure(&base);
    stages.push(current.clone());
    for tris in cylinders.iter().skip(1) {
        let cells = complex.cell_set(tris)?;
        current = current.union(&complex.closure(&cells));
        stages.push(current.clone());
    }
    Ok(Telescope { complex, circles, stages })
}

impl Telescope {
    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    /// The truncation `K_j` as a standalone complex.
    pub fn stage_complex(&self, j: usize) -> Result<FacePoset> {
        let maximal: Vec<Vec<Vertex>> = self.stages[j]
            .iter()
            .filter(|&c| self.complex.cofaces(c).iter().all(|n| !self.stages[j].contains(*n)))
            .map(|c| self.complex.cell(c).to_vec())
            .collect();
        FacePoset::build(&maximal)
    }
}
