use num_rational::BigRational;
use num_traits::{One, Zero};

use super::OracleError;
use crate::arrangement::LineSet;
use crate::schur::Partition;

/// Dense matrix of signed exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Determinant by fraction-based Gaussian elimination. Panics if not square.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] -= delta;
                }
            }
        }
        det
    }
}

/// Determinant of rows `I` (1-based labels) and the first `|I|` columns.
pub fn flag_minor_matrix_oracle(m: &ExactMatrix, set: LineSet) -> BigRational {
    let rows: Vec<usize> = set.iter().map(|i| i - 1).collect();
    let cols: Vec<usize> = (0..rows.len()).collect();
    m.submatrix(&rows, &cols).det()
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

fn vandermonde(x: &[BigRational]) -> Result<BigRational, OracleError> {
    let mut v = BigRational::one();
    for j in 0..x.len() {
        for a in 0..j {
            v *= &x[j] - &x[a];
        }
    }
    if v.is_zero() {
        return Err(OracleError::Degenerate("x values must be pairwise distinct".into()));
    }
    Ok(v)
}

/// `det(x_j^(i-1))_{i in I, j <= k} / prod_{a < j} (x_j - x_a)`, with `k = |I| = |x|`.
pub fn bialternant_oracle(set: LineSet, x: &[BigRational]) -> Result<BigRational, OracleError> {
    if set.len() != x.len() {
        return Err(OracleError::Degenerate(format!("|I| = {} but {} variables", set.len(), x.len())));
    }
    let rows: Vec<usize> = set.iter().collect();
    let m = ExactMatrix::from_fn(x.len(), x.len(), |i, j| pow(&x[j], rows[i] - 1));
    Ok(m.det() / vandermonde(x)?)
}

/// Flag minor of `Z_ij = prod_{b < i} (x_j + y_b) / prod_{a < j} (x_j - x_a)`
/// on the rows `I(λ)`.
pub fn double_schur_det(lambda: &Partition, x: &[BigRational], y: &[BigRational]) -> Result<BigRational, OracleError> {
    let k = x.len();
    if lambda.length() > k {
        return Ok(BigRational::zero());
    }
    let rows: Vec<usize> = (1..=k).map(|a| lambda.part(k + 1 - a) + a).collect();
    let need = rows.last().copied().unwrap_or(1) - 1;
    if y.len() < need {
        return Err(OracleError::Degenerate(format!("need {need} y values, got {}", y.len())));
    }
    let m = ExactMatrix::from_fn(k, k, |i, j| {
        let mut v = BigRational::one();
        for yb in &y[..rows[i] - 1] {
            v *= &x[j] + yb;
        }
        v
    });
    Ok(m.det() / vandermonde(x)?)
}

/// `h_0 .. h_max` in the variables `x`.
pub fn complete_homogeneous(x: &[BigRational], max: usize) -> Vec<BigRational> {
    let mut h = vec![BigRational::zero(); max + 1];
    h[0] = BigRational::one();
    for xi in x {
        for d in 1..=max {
            let next = &h[d] + xi * &h[d - 1];
            h[d] = next;
        }
    }
    h
}

/// `det(h_{λ_i - ν_j - i + j})_{i, j <= k}`.
pub fn jacobi_trudi_oracle(lambda: &Partition, nu: &Partition, k: usize, x: &[BigRational]) -> BigRational {
    let h = complete_homogeneous(x, lambda.first() + k);
    let m = ExactMatrix::from_fn(k, k, |i, j| {
        let d = lambda.part(i + 1) as i64 - nu.part(j + 1) as i64 - i as i64 + j as i64;
        if d < 0 {
            BigRational::zero()
        } else {
            h.get(d as usize).cloned().unwrap_or_else(BigRational::zero)
        }
    });
    m.det()
}

/// The rescaled Vandermonde matrix, `n` rows by `x.len()` columns.
pub fn rescaled_vandermonde(x: &[BigRational], n: usize) -> Result<ExactMatrix, OracleError> {
    vandermonde(x)?;
    Ok(ExactMatrix::from_fn(n, x.len(), |i, j| {
        let mut d = BigRational::one();
        for a in 0..j {
            d *= &x[j] - &x[a];
        }
        pow(&x[j], i) / d
    }))
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
