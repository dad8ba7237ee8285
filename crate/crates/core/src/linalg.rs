//! Dense row-major LU factorization with partial pivoting.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular at pivot column {0}")]
    Singular(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Factorizes in place; the matrix is consumed.
    pub fn lu(mut self) -> Result<Lu, LinalgError> {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self
            .data
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1.0);
        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, self.data[i * n + k].abs()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot <= f64::EPSILON * scale * n as f64 {
                return Err(LinalgError::Singular(k));
            }
            if p != k {
                for j in 0..n {
                    self.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (top, bottom) = self.data.split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n..];
            let inv = 1.0 / pivot_row[k];
            for row in bottom.chunks_exact_mut(n) {
                let factor = row[k] * inv;
                row[k] = factor;
                if factor != 0.0 {
                    for (x, &y) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                        *x -= factor * y;
                    }
                }
            }
        }
        Ok(Lu {
            n,
            factors: self.data,
            perm,
        })
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// `PA = LU` with unit lower-triangular `L` stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    factors: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.n;
        if b.len() != n {
            return Err(LinalgError::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.factors[i * n..i * n + i];
            let s: f64 = row.iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.factors[i * n..(i + 1) * n];
            let s: f64 = row[i + 1..]
                .iter()
                .zip(&x[i + 1..])
                .map(|(u, y)| u * y)
                .sum();
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }
}
