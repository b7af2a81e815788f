use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::double_schur_det;
use super::OracleError;
use crate::schur::Partition;

/// Semistandard filling of the skew diagram `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    inner: Partition,
    /// `rows[i]` holds the entries of row `i + 1`, from column `inner_(i+1) + 1` on.
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// `(row, column, entry)`, all 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let offset = self.inner.part(i + 1);
            row.iter().enumerate().map(move |(j, &e)| (i + 1, offset + j + 1, e))
        })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// Calls `f` on every semistandard tableau of shape `outer / inner` with
/// entries in `1..=bound`. Does nothing unless `inner ⊆ outer`.
pub fn for_each_ssyt(outer: &Partition, inner: &Partition, bound: usize, mut f: impl FnMut(&Tableau)) {
    if !outer.contains(inner) {
        return;
    }
    let rows = outer.length();
    let cells: Vec<(usize, usize)> =
        (0..rows).flat_map(|i| (inner.part(i + 1)..outer.part(i + 1)).map(move |j| (i, j))).collect();
    let width = outer.first();
    let mut grid = vec![vec![0usize; width]; rows];

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        outer: &Partition,
        inner: &Partition,
        bound: usize,
        f: &mut dyn FnMut(&Tableau),
    ) {
        let Some(&(i, j)) = cells.get(idx) else {
            let rows = (0..outer.length()).map(|r| grid[r][inner.part(r + 1)..outer.part(r + 1)].to_vec()).collect();
            f(&Tableau { inner: inner.clone(), rows });
            return;
        };
        let mut lo = 1;
        if j > inner.part(i + 1) {
            lo = lo.max(grid[i][j - 1]);
        }
        if i > 0 && j >= inner.part(i) {
            lo = lo.max(grid[i - 1][j] + 1);
        }
        for v in lo..=bound {
            grid[i][j] = v;
            go(idx + 1, cells, grid, outer, inner, bound, f);
        }
        grid[i][j] = 0;
    }

    go(0, &cells, &mut grid, outer, inner, bound, &mut f);
}

pub fn ssyt(outer: &Partition, inner: &Partition, bound: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    for_each_ssyt(outer, inner, bound, |t| out.push(t.clone()));
    out
}

fn tableau_sum(
    outer: &Partition,
    inner: &Partition,
    bound: usize,
    mut weight: impl FnMut(usize, usize, usize) -> BigRational,
) -> BigRational {
    let mut total = BigRational::zero();
    for_each_ssyt(outer, inner, bound, |t| {
        let mut term = BigRational::one();
        for (r, c, e) in t.cells() {
            term *= weight(r, c, e);
        }
        total += term;
    });
    total
}

/// `sum_T x^T` over tableaux of shape `λ` with entries at most `k = x.len()`.
pub fn ssyt_schur_oracle(lambda: &Partition, x: &[BigRational]) -> BigRational {
    skew_ssyt_oracle(lambda, &Partition::empty(), x)
}

pub fn skew_ssyt_oracle(lambda: &Partition, nu: &Partition, x: &[BigRational]) -> BigRational {
    tableau_sum(lambda, nu, x.len(), |_, _, e| x[e - 1].clone())
}

/// `sum_T prod_s (x_T(s) + y_(T(s) + C(s)))` with entries at most `k`.
pub fn double_schur_tableau(
    lambda: &Partition,
    x: &[BigRational],
    y: &[BigRational],
) -> Result<BigRational, OracleError> {
    let need = (x.len() + lambda.first()).saturating_sub(1);
    if y.len() < need {
        return Err(OracleError::Degenerate(format!("need {need} y values, got {}", y.len())));
    }
    Ok(tableau_sum(lambda, &Partition::empty(), x.len(), |r, c, e| &x[e - 1] + &y[e + c - r - 1]))
}

/// Double Schur value, computed as a determinant and as a tableau sum; the two
/// must agree.
pub fn double_schur_oracle(
    lambda: &Partition,
    x: &[BigRational],
    y: &[BigRational],
) -> Result<BigRational, OracleError> {
    let det = double_schur_det(lambda, x, y)?;
    let sum = double_schur_tableau(lambda, x, y)?;
    if det != sum {
        return Err(OracleError::Disagree(format!("double Schur {lambda}: determinant {det} vs tableau sum {sum}")));
    }
    Ok(det)
}

/// Supersymmetric Schur value with `x_i = 0` for `i > k` and `y_j = 0` for `j > m`.
pub fn super_schur_oracle(lambda: &Partition, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let (k, m) = (x.len(), y.len());
    let bound = k.max((m + lambda.length()).saturating_sub(1));
    let zero = BigRational::zero();
    tableau_sum(lambda, &Partition::empty(), bound, |r, c, e| {
        let xe = x.get(e - 1).unwrap_or(&zero);
        let ye = y.get(e + c - r - 1).unwrap_or(&zero);
        xe + ye
    })
}
