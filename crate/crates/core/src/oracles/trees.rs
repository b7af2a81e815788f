use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use super::OracleError;

/// Undirected weighted edge between vertices `u` and `v` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Edge<W = BigRational> {
    pub u: usize,
    pub v: usize,
    pub w: W,
}

/// Directed weighted arc `from -> to` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Arc<W = BigRational> {
    pub from: usize,
    pub to: usize,
    pub w: W,
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < m - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All spanning trees, as sorted lists of edge indices.
pub fn spanning_trees_enumerate<W>(n: usize, edges: &[Edge<W>]) -> Vec<Vec<usize>> {
    if n <= 1 {
        return vec![vec![]];
    }
    let r = n - 1;
    if edges.len() < r {
        return vec![];
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        let acyclic = c.iter().all(|&e| {
            let (a, b) = (find(&mut parent, edges[e].u), find(&mut parent, edges[e].v));
            a != b && {
                parent[a] = b;
                true
            }
        });
        if acyclic {
            out.push(c.clone());
        }
        if !next_combination(&mut c, edges.len()) {
            return out;
        }
    }
}

/// `f_G` by summing over enumerated spanning trees.
pub fn spanning_tree_sum(n: usize, edges: &[Edge]) -> BigRational {
    spanning_trees_enumerate(n, edges)
        .iter()
        .map(|t| t.iter().fold(BigRational::one(), |acc, &e| acc * &edges[e].w))
        .sum()
}

/// `f_G` as a principal minor of the weighted Laplacian.
pub fn matrix_tree_oracle(n: usize, edges: &[Edge]) -> BigRational {
    if n <= 1 {
        return BigRational::one();
    }
    let mut lap = ExactMatrix::zeros(n, n);
    for e in edges {
        if e.u == e.v {
            continue;
        }
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let d = lap.get(a, a) + &e.w;
            lap.set(a, a, d);
            let o = lap.get(a, b) - &e.w;
            lap.set(a, b, o);
        }
    }
    let keep: Vec<usize> = (1..n).collect();
    lap.submatrix(&keep, &keep).det()
}

/// All arborescences oriented towards `root`, as lists of arc indices (one
/// outgoing arc per non-root vertex, in vertex order).
pub fn arborescences_enumerate<W>(n: usize, arcs: &[Arc<W>], root: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let choices: Vec<Vec<usize>> =
        others.iter().map(|&v| (0..arcs.len()).filter(|&a| arcs[a].from == v && arcs[a].to != v).collect()).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; others.len()];
    let mut next = vec![usize::MAX; n];
    loop {
        for (slot, &v) in others.iter().enumerate() {
            next[v] = arcs[choices[slot][pick[slot]]].to;
        }
        let reaches_root = others.iter().all(|&start| {
            let mut v = start;
            for _ in 0..n {
                if v == root {
                    return true;
                }
                v = next[v];
            }
            v == root
        });
        if reaches_root {
            out.push(others.iter().enumerate().map(|(s, _)| choices[s][pick[s]]).collect());
        }
        let mut s = 0;
        loop {
            if s == pick.len() {
                return out;
            }
            pick[s] += 1;
            if pick[s] < choices[s].len() {
                break;
            }
            pick[s] = 0;
            s += 1;
        }
    }
}

/// `φ_G` by summing over enumerated arborescences.
pub fn arborescence_sum(n: usize, arcs: &[Arc], root: usize) -> BigRational {
    arborescences_enumerate(n, arcs, root)
        .iter()
        .map(|t| t.iter().fold(BigRational::one(), |acc, &a| acc * &arcs[a].w))
        .sum()
}

/// `φ_G` as the determinant of the out-degree Laplacian with the root row and
/// column removed.
pub fn directed_matrix_tree_oracle(n: usize, arcs: &[Arc], root: usize) -> BigRational {
    let mut lap = ExactMatrix::zeros(n, n);
    for a in arcs {
        if a.from == a.to {
            continue;
        }
        let d = lap.get(a.from, a.from) + &a.w;
        lap.set(a.from, a.from, d);
        let o = lap.get(a.from, a.to) - &a.w;
        lap.set(a.from, a.to, o);
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    lap.submatrix(&keep, &keep).det()
}

/// Cheapest arborescence towards `root` by exhaustive search, `None` if none exists.
pub fn min_arborescence_oracle(n: usize, arcs: &[Arc<f64>], root: usize) -> Option<f64> {
    arborescences_enumerate(n, arcs, root)
        .iter()
        .map(|t| t.iter().map(|&a| arcs[a].w).sum::<f64>())
        .min_by(|a, b| a.total_cmp(b))
}

/// Checks, for every root `r`, that the complete digraph with arc weights
/// `x_ab = z_b / sum(z)` has `φ = z_r / sum(z)`.
pub fn cayley_prufer_check(z: &[BigRational]) -> Result<bool, OracleError> {
    let total: BigRational = z.iter().sum();
    if total.is_zero() {
        return Err(OracleError::Degenerate("z values sum to zero".into()));
    }
    let n = z.len();
    let arcs: Vec<Arc> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .map(|(a, b)| Arc { from: a, to: b, w: &z[b] / &total })
        .collect();
    Ok((0..n).all(|r| arborescence_sum(n, &arcs, r) == &z[r] / &total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::matrix::int;

    fn complete(n: usize) -> Vec<Edge> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge { u, v, w: int(1) })).collect()
    }

    fn complete_digraph(n: usize) -> Vec<Arc> {
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| Arc { from: a, to: b, w: int(1) })).collect()
    }

    #[test]
    fn cayley_counts() {
        for n in 1usize..=6 {
            let expect = int((n as i64).pow(n.saturating_sub(2) as u32));
            let e = complete(n);
            assert_eq!(spanning_tree_sum(n, &e), if n == 1 { int(1) } else { expect.clone() });
            assert_eq!(matrix_tree_oracle(n, &e), spanning_tree_sum(n, &e));
            if n >= 2 {
                let arcs = complete_digraph(n);
                assert_eq!(arborescences_enumerate(n, &arcs, 0).len() as i64, (n as i64).pow(n as u32 - 2));
                assert_eq!(directed_matrix_tree_oracle(n, &arcs, 0), expect);
            }
        }
    }

    #[test]
    fn three_vertex_digraph() {
        // vertices a = 0, b = 1, r = 2; weights chosen as distinct primes
        let w = |from, to, w: i64| Arc { from, to, w: int(w) };
        let (ar, br, ab, ba, ra, rb) = (2, 3, 5, 7, 11, 13);
        let arcs = vec![w(0, 2, ar), w(1, 2, br), w(0, 1, ab), w(1, 0, ba), w(2, 0, ra), w(2, 1, rb)];
        let expect = int(ar * br + ar * ba + br * ab);
        assert_eq!(arborescence_sum(3, &arcs, 2), expect);
        assert_eq!(directed_matrix_tree_oracle(3, &arcs, 2), expect);
        let two = vec![w(0, 1, 9), w(1, 0, 4)];
        assert_eq!(arborescence_sum(2, &two, 1), int(9));
    }

    #[test]
    fn brute_force_minimum() {
        let c = |from, to, w: f64| Arc { from, to, w };
        let arcs = vec![c(0, 2, 1.0), c(1, 2, 2.0), c(0, 1, 0.0), c(1, 0, 5.0)];
        assert_eq!(min_arborescence_oracle(3, &arcs, 2), Some(2.0));
        assert_eq!(min_arborescence_oracle(3, &arcs[..1], 2), None);
    }

    #[test]
    fn cayley_prufer_small() {
        assert!(cayley_prufer_check(&[int(1), int(2)]).unwrap());
        assert!(cayley_prufer_check(&[int(1), int(2), int(7)]).unwrap());
        assert!(cayley_prufer_check(&[int(3), int(1), int(4), int(1)]).unwrap());
    }
}
