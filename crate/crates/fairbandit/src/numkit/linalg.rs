//! Dense row-major f64 matrices and slice-level vector helpers.

/// Dense matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "matrix data length {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// y = M x.
    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(
            x.len(),
            self.cols,
            "mat_vec: vector length {} does not match matrix cols {}",
            x.len(),
            self.cols
        );
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }

    /// M += scale * x yᵀ.
    pub fn add_outer(&mut self, x: &[f64], y: &[f64], scale: f64) {
        assert_eq!(x.len(), self.rows, "add_outer: x length vs rows");
        assert_eq!(y.len(), self.cols, "add_outer: y length vs cols");
        for (r, &xr) in x.iter().enumerate() {
            let row = &mut self.data[r * self.cols..(r + 1) * self.cols];
            for (v, &yc) in row.iter_mut().zip(y) {
                *v += scale * xr * yc;
            }
        }
    }

    /// Gauss–Jordan inverse with partial pivoting. Returns `None` when a
    /// pivot collapses below 1e-12. Independent of the Sherman–Morrison
    /// path, which keeps it usable as an oracle against it.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse: matrix must be square");
        let n = self.rows;
        let mut aug = vec![0.0; n * 2 * n];
        for r in 0..n {
            for c in 0..n {
                aug[r * 2 * n + c] = self.get(r, c);
            }
            aug[r * 2 * n + n + r] = 1.0;
        }
        for col in 0..n {
            let mut piv = col;
            let mut best = aug[col * 2 * n + col].abs();
            for r in (col + 1)..n {
                let v = aug[r * 2 * n + col].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-12 {
                return None;
            }
            if piv != col {
                for c in 0..2 * n {
                    aug.swap(col * 2 * n + c, piv * 2 * n + c);
                }
            }
            let inv_pivot = 1.0 / aug[col * 2 * n + col];
            for c in 0..2 * n {
                aug[col * 2 * n + c] *= inv_pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug[r * 2 * n + col];
                if f == 0.0 {
                    continue;
                }
                for c in 0..2 * n {
                    aug[r * 2 * n + c] -= f * aug[col * 2 * n + c];
                }
            }
        }
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug[r * 2 * n + n + c]);
            }
        }
        Some(out)
    }

    /// Relative Frobenius distance ‖A − B‖_F / ‖B‖_F (absolute when ‖B‖ = 0).
    pub fn rel_frobenius_distance(&self, other: &Matrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.data.iter().zip(&other.data) {
            num += (a - b) * (a - b);
            den += b * b;
        }
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_mat_vec_is_identity() {
        let m = Matrix::identity(3);
        let x = vec![1.0, -2.0, 0.5];
        assert_eq!(m.mat_vec(&x), x);
    }

    #[test]
    fn inverse_of_diag() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 4.0);
        let inv = m.inverse().unwrap();
        assert!((inv.get(0, 0) - 0.5).abs() < 1e-15);
        assert!((inv.get(1, 1) - 0.25).abs() < 1e-15);
        assert_eq!(inv.get(0, 1), 0.0);
    }

    #[test]
    fn inverse_roundtrip_random() {
        use crate::numkit::rng;
        use rand::Rng as _;
        let mut r = rng::stream(7, 0);
        let n = 5;
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v: f64 = r.random::<f64>() - 0.5;
                m.set(i, j, m.get(i, j) + v);
            }
        }
        let inv = m.inverse().unwrap();
        // M * M⁻¹ ≈ I
        for i in 0..n {
            let row = m.row(i).to_vec();
            for j in 0..n {
                let col: Vec<f64> = (0..n).map(|k| inv.get(k, j)).collect();
                let v = dot(&row, &col);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-10, "entry ({i},{j}) = {v}");
            }
        }
    }

    #[test]
    fn singular_matrix_returns_none() {
        let m = Matrix::zeros(3, 3);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn add_outer_accumulates() {
        let mut m = Matrix::zeros(2, 2);
        m.add_outer(&[1.0, 2.0], &[3.0, 4.0], 1.0);
        assert_eq!(m.get(0, 0), 3.0);
        assert_eq!(m.get(0, 1), 4.0);
        assert_eq!(m.get(1, 0), 6.0);
        assert_eq!(m.get(1, 1), 8.0);
    }
}
