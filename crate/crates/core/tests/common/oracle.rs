//! Independent reference computations used to cross-check the library.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use cuntzkit::complex::{CellSet, FacePoset, SimplicialMap};
use num_rational::Ratio;

/// Rank of an integer matrix over the rationals, by plain elimination.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i128>>> =
        rows.iter().map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != Ratio::from_integer(0)) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in 0..m.len() {
            if r != rank && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col] / pivot;
                let pivot_row = m[rank].clone();
                for (dst, v) in m[r].iter_mut().zip(pivot_row).skip(col) {
                    *dst -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Chains of cells of `s` under inclusion, as sorted lists of cell
/// indices, grouped by length.
pub fn order_complex(x: &FacePoset, s: &CellSet) -> Vec<Vec<Vec<usize>>> {
    let members: Vec<usize> = s.iter().collect();
    let below = |a: usize, b: usize| {
        a != b && x.cell(b).len() > x.cell(a).len() && x.cell(a).iter().all(|v| x.cell(b).contains(v))
    };
    let mut by_len: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
    let mut frontier: Vec<Vec<usize>> = members.iter().map(|&c| vec![c]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut layer = BTreeSet::new();
        for chain in frontier {
            let top = *chain.last().unwrap();
            for &c in &members {
                if below(top, c) {
                    let mut longer = chain.clone();
                    longer.push(c);
                    next.push(longer);
                }
            }
            layer.insert(chain);
        }
        by_len.push(layer);
        frontier = next;
    }
    by_len.into_iter().skip(1).map(|l| l.into_iter().collect()).collect()
}

/// Rational Betti numbers of `|s|`, computed from its order complex.
pub fn betti_q(x: &FacePoset, s: &CellSet) -> Vec<usize> {
    let simplices = order_complex(x, s);
    let n = simplices.len();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    // ranks[k] = rank of the boundary from k-simplices to (k-1)-simplices
    let mut ranks = vec![0; n + 1];
    for k in 1..n {
        let mut rows = vec![vec![0i64; simplices[k].len()]; simplices[k - 1].len()];
        for (j, chain) in simplices[k].iter().enumerate() {
            for skip in 0..chain.len() {
                let face: Vec<usize> = chain.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &c)| c).collect();
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                rows[index[k - 1][&face]][j] += sign;
            }
        }
        ranks[k] = rank_q(&rows);
    }
    (0..n).map(|k| simplices[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// Coherent orientation of the top simplices of a closed pseudomanifold,
/// with the lexicographically first top simplex positive. `None` when
/// the complex is not orientable or not a pseudomanifold.
pub fn orientation(x: &FacePoset) -> Option<BTreeMap<Vec<usize>, i64>> {
    let tops: Vec<Vec<usize>> = x.maximal_cells();
    let d = x.dim();
    if tops.iter().any(|t| t.len() != d + 1) {
        return None;
    }
    let mut ridges: BTreeMap<Vec<usize>, Vec<(usize, i64)>> = BTreeMap::new();
    for (t, cell) in tops.iter().enumerate() {
        for skip in 0..cell.len() {
            let ridge: Vec<usize> = cell.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            ridges.entry(ridge).or_default().push((t, if skip % 2 == 0 { 1 } else { -1 }));
        }
    }
    if ridges.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut sign: Vec<i64> = vec![0; tops.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for pair in ridges.values().filter(|v| v.iter().any(|&(u, _)| u == t)) {
            let (&(a, sa), &(b, sb)) = (&pair[0], &pair[1]);
            let (me, other, s_me, s_other) = if a == t { (a, b, sa, sb) } else { (b, a, sb, sa) };
            // induced signs on the shared ridge must cancel
            let want = -sign[me] * s_me * s_other;
            if sign[other] == 0 {
                sign[other] = want;
                queue.push_back(other);
            } else if sign[other] != want {
                return None;
            }
        }
    }
    if sign.contains(&0) {
        return None;
    }
    Some(tops.into_iter().zip(sign).collect())
}

/// Sign of the permutation sorting `v`.
fn perm_sign(v: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                s = -s;
            }
        }
    }
    s
}

/// Degree by counting signed preimages of one top simplex of the target.
pub fn local_degree(f: &SimplicialMap) -> Option<i64> {
    let os = orientation(&f.source)?;
    let ot = orientation(&f.target)?;
    let (tau, o_tau) = ot.iter().next()?;
    let mut total = 0;
    for (sigma, o_sigma) in &os {
        let image: Vec<usize> = sigma.iter().map(|v| f.vertex_map[v]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted == *tau {
            total += o_sigma * perm_sign(&image) * o_tau;
        }
    }
    Some(total)
}

/// Every face of a member that lies in `within` is a member.
pub fn rel_closed(x: &FacePoset, a: u64, within: u64) -> bool {
    (0..x.num_cells())
        .all(|c| a & (1 << c) == 0 || x.faces(c).iter().all(|&f| within & (1 << f) == 0 || a & (1 << f) != 0))
}

fn interior(x: &FacePoset, a: u64) -> u64 {
    let n = x.num_cells();
    // repeat until stable: members all of whose cofaces are inside
    let mut inside = a;
    loop {
        let next = (0..n)
            .filter(|&c| inside & (1 << c) != 0 && x.cofaces(c).iter().all(|&d| inside & (1 << d) != 0))
            .fold(0u64, |m, c| m | (1 << c));
        if next == inside {
            return inside;
        }
        inside = next;
    }
}

/// Whether `a` shrinks the open cover `u`, checked directly on bitmasks.
pub fn is_shrinking(x: &FacePoset, u: &[u64], a: &[u64]) -> bool {
    let n = u.len();
    a.len() == n
        && (0..n).all(|i| {
            let r = u[i..].iter().fold(0, |m, s| m | s);
            a[i] & !u[i] == 0
                && rel_closed(x, a[i], r)
                && a[i..].iter().fold(0, |m, s| m | s) == r
                && a[i..].iter().fold(0, |m, &s| m | interior(x, s)) == r
        })
}

/// Shrinkings of the open cover `u` with `A_i ⊆ bound_i`, by exhaustive
/// search from the last set down. Stops after `limit` solutions.
pub fn shrinkings(x: &FacePoset, u: &[u64], bound: &[u64], limit: usize) -> Vec<Vec<u64>> {
    let n = u.len();
    let r: Vec<u64> = (0..n).map(|i| u[i..].iter().fold(0, |m, s| m | s)).collect();
    let candidates: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let bits: Vec<usize> = (0..x.num_cells()).filter(|&c| u[i] & bound[i] & (1 << c) != 0).collect();
            (0u64..(1 << bits.len()))
                .map(|m| {
                    bits.iter()
                        .enumerate()
                        .filter(|&(k, _)| m & (1 << k) != 0)
                        .fold(0u64, |acc, (_, &c)| acc | (1 << c))
                })
                .filter(|&a| rel_closed(x, a, r[i]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![0u64; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: &FacePoset,
        i: usize,
        r: &[u64],
        candidates: &[Vec<u64>],
        chosen: &mut Vec<u64>,
        acc: (u64, u64),
        out: &mut Vec<Vec<u64>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        for &a in &candidates[i] {
            let union = acc.0 | a;
            let inner = acc.1 | interior(x, a);
            if union != r[i] || inner != r[i] {
                continue;
            }
            chosen[i] = a;
            if i == 0 {
                out.push(chosen.clone());
            } else {
                go(x, i - 1, r, candidates, chosen, (union, inner), out, limit);
            }
            if out.len() >= limit {
                return;
            }
        }
    }
    if n > 0 {
        go(x, n - 1, &r, &candidates, &mut chosen, (0, 0), &mut out, limit);
    }
    out
}
