use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{CellSet, FacePoset};
use crate::{Int, IntMatrix};

/// Which finite complex stands in for the space `|S|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SurrogateKind {
    /// `S` is a subcomplex and is used as is; simplices are vertex lists.
    Direct,
    /// The order complex of `S`: chains of cells, i.e. the full subcomplex of
    /// the subdivided closure spanned by the barycenters of `S`. Simplices
    /// are ascending lists of barycenter labels.
    OrderComplex,
}

/// Simplices of a surrogate complex, grouped by dimension and sorted.
#[derive(Clone, Debug)]
pub struct Surrogate {
    pub kind: SurrogateKind,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Surrogate {
    /// Surrogate for `s`, keeping simplices of dimension at most `top`.
    pub fn new(x: &FacePoset, s: &CellSet, top: usize) -> Self {
        let kind = if x.is_closed(s) { SurrogateKind::Direct } else { SurrogateKind::OrderComplex };
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        match kind {
            SurrogateKind::Direct => {
                for c in s.iter() {
                    let d = x.cell_dim(c);
                    if d <= top {
                        simplices[d].push(x.cell(c).to_vec());
                    }
                }
            }
            SurrogateKind::OrderComplex => {
                let mut stack: Vec<Vec<usize>> = s.iter().map(|c| vec![c]).collect();
                while let Some(chain) = stack.pop() {
                    let len = chain.len();
                    if len <= top {
                        let last = *chain.last().unwrap();
                        for next in x.strict_cofaces(last) {
                            if s.contains(next) {
                                let mut longer = chain.clone();
                                longer.push(next);
                                stack.push(longer);
                            }
                        }
                    }
                    simplices[len - 1].push(chain.iter().map(|&c| x.barycenter_label(c)).collect());
                }
            }
        }
        for level in &mut simplices {
            level.sort();
        }
        let index =
            simplices.iter().map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        Surrogate { kind, simplices, index }
    }

    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn position(&self, k: usize, simplex: &[usize]) -> Option<usize> {
        self.index.get(k).and_then(|m| m.get(simplex).copied())
    }

    /// Matrix of `δ_k : C^k -> C^{k+1}`; rows index `(k+1)`-simplices.
    pub fn coboundary(&self, k: usize) -> IntMatrix {
        let rows = self.count(k + 1);
        let cols = self.count(k);
        let mut m = IntMatrix::zeros(rows, cols);
        for (r, tau) in self.simplices(k + 1).iter().enumerate() {
            for i in 0..tau.len() {
                let face = drop_at(tau, i);
                let c = self.position(k, &face).expect("faces of surrogate simplices are simplices");
                m.set(r, c, sign(i));
            }
        }
        m
    }

    /// Matrix of `∂_k : C_k -> C_{k-1}` (the transpose of `δ_{k-1}`).
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        self.coboundary(k - 1).transpose()
    }
}

pub(crate) fn drop_at(simplex: &[usize], i: usize) -> Vec<usize> {
    let mut face = Vec::with_capacity(simplex.len() - 1);
    face.extend_from_slice(&simplex[..i]);
    face.extend_from_slice(&simplex[i + 1..]);
    face
}

pub(crate) fn sign(i: usize) -> Int {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts `list` in place and returns the sign of the sorting permutation,
/// or `None` if it has repeated entries.
pub(crate) fn sort_with_sign(list: &mut [usize]) -> Option<Int> {
    let mut parity = 1;
    for i in 1..list.len() {
        let mut j = i;
        while j > 0 && list[j - 1] > list[j] {
            list.swap(j - 1, j);
            parity = -parity;
            j -= 1;
        }
    }
    if list.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(parity)
    }
}

/// The subdivision chain `sd(σ)` as signed chains of barycenter labels,
/// built from `sd(σ) = (-1)^k sd(∂σ) * b_σ`.
pub(crate) fn subdivision_chain(x: &FacePoset, cell: &[usize]) -> Vec<(Vec<usize>, Int)> {
    let label = x.barycenter_label(x.index_of(cell).expect("cell of complex"));
    let k = cell.len() - 1;
    if k == 0 {
        return vec![(vec![label], 1)];
    }
    let mut out = Vec::new();
    for i in 0..=k {
        let face = drop_at(cell, i);
        for (mut chain, s) in subdivision_chain(x, &face) {
            chain.push(label);
            out.push((chain, s * sign(i) * sign(k)));
        }
    }
    out
}

/// Image of an order-complex simplex under the vertex map sending each
/// barycenter to the largest vertex of its cell; `None` when degenerate.
pub(crate) fn last_vertex_image(x: &FacePoset, chain: &[usize]) -> Option<Vec<usize>> {
    let image: Vec<usize> =
        chain.iter().map(|&b| *x.cell(x.cell_of_barycenter(b)).last().expect("nonempty cell")).collect();
    if image.windows(2).all(|w| w[0] < w[1]) {
        Some(image)
    } else {
        None
    }
}
