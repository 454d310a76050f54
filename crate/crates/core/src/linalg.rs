//! Dense matrices over any ring backend.
//!
//! Ambient dimensions in this crate stay tiny (n + 2m ≤ ~12), so the
//! representation is a plain row-major `Vec` and multiplication is cubic.

use std::fmt;

use thiserror::Error;

use crate::ring::{Ring, RingError, RingValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix dimensions are incompatible")]
    DimensionMismatch,
    #[error("matrices belong to different rings")]
    DescriptorMismatch,
    #[error("matrix is not invertible over this ring")]
    NotInvertible,
    #[error("block placement exceeds the target dimensions")]
    OutOfBounds,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingValue>,
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, dim: usize) -> Matrix {
        let mut m = Matrix::zero(ring, dim, dim);
        for i in 0..dim {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingValue,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert!(v.ring() == ring, "entry ring mismatch");
                data.push(v);
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer literals (test convenience).
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix::from_fn(ring, rows.len(), ncols, |r, c| ring.from_int(rows[r][c]))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingValue {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingValue) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert!(v.ring() == &self.ring, "entry ring mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn check_same_ring(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LinalgError::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &RingValue) -> Matrix {
        assert!(s.ring() == &self.ring, "scalar ring mismatch");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul(s)).collect(),
        }
    }

    pub fn half(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.half()).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Two-sided inverse by Gaussian elimination, pivoting on unit entries.
    ///
    /// Over the field backends this succeeds exactly when the matrix is
    /// invertible. Over `LocalizedPoly` it succeeds whenever elimination only
    /// ever needs monomial pivots — in particular for the diagonal Gram
    /// matrices this crate inverts; anything needing a non-monomial pivot is
    /// refused.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut out = Matrix::identity(&self.ring, n);
        for col in 0..n {
            // Find a row at or below `col` whose pivot entry is a unit.
            let mut pivot = None;
            for r in col..n {
                if let Ok(inv) = work.get(r, col).invert() {
                    pivot = Some((r, inv));
                    break;
                }
            }
            let (prow, pinv) = pivot.ok_or(LinalgError::NotInvertible)?;
            if prow != col {
                for c in 0..n {
                    let a = work.get(col, c).clone();
                    let b = work.get(prow, c).clone();
                    work.set(col, c, b);
                    work.set(prow, c, a);
                    let a = out.get(col, c).clone();
                    let b = out.get(prow, c).clone();
                    out.set(col, c, b);
                    out.set(prow, c, a);
                }
            }
            for c in 0..n {
                work.set(col, c, work.get(col, c).mul(&pinv));
                out.set(col, c, out.get(col, c).mul(&pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let w = work.get(r, c).sub(&factor.mul(work.get(col, c)));
                    work.set(r, c, w);
                    let o = out.get(r, c).sub(&factor.mul(out.get(col, c)));
                    out.set(r, c, o);
                }
            }
        }
        Ok(out)
    }

    /// Places `block` into a `target_dim` × `target_dim` zero matrix with its
    /// top-left corner at `(row_offset, col_offset)`.
    pub fn embed_block(
        target_dim: usize,
        row_offset: usize,
        col_offset: usize,
        block: &Matrix,
    ) -> Result<Matrix, LinalgError> {
        if row_offset + block.rows > target_dim || col_offset + block.cols > target_dim {
            return Err(LinalgError::OutOfBounds);
        }
        let mut out = Matrix::zero(&block.ring, target_dim, target_dim);
        for r in 0..block.rows {
            for c in 0..block.cols {
                out.set(row_offset + r, col_offset + c, block.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Extracts the `rows` × `cols` submatrix at `(row_offset, col_offset)`.
    pub fn submatrix(
        &self,
        row_offset: usize,
        col_offset: usize,
        rows: usize,
        cols: usize,
    ) -> Matrix {
        assert!(row_offset + rows <= self.rows && col_offset + cols <= self.cols);
        Matrix::from_fn(&self.ring, rows, cols, |r, c| {
            self.get(row_offset + r, col_offset + c).clone()
        })
    }

    /// Text dump: rows separated by ";", entries by ",".
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| ring.sample(rng))
    }

    #[test]
    fn mul_examples() {
        let z7 = Ring::modular(7).unwrap();
        let a = Matrix::from_ints(&z7, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(&z7, &[&[0, 1], &[1, 0]]);
        // Hand multiplication: swaps the columns.
        let expect = Matrix::from_ints(&z7, &[&[2, 1], &[4, 3]]);
        assert_eq!(a.mul(&b).unwrap(), expect);

        let id = Matrix::identity(&z7, 2);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&id).unwrap(), a);

        assert_eq!(
            a.mul(&Matrix::identity(&z7, 3)),
            Err(LinalgError::DimensionMismatch)
        );
        let q = Ring::rationals();
        assert_eq!(
            a.mul(&Matrix::identity(&q, 2)),
            Err(LinalgError::DescriptorMismatch)
        );
    }

    #[test]
    fn ring_laws_lift() {
        let q = Ring::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_matrix(&q, 4, 4, &mut rng);
            let b = random_matrix(&q, 4, 4, &mut rng);
            let c = random_matrix(&q, 4, 4, &mut rng);
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.add(&b).unwrap().transpose(),
                a.transpose().add(&b.transpose()).unwrap()
            );
            assert_eq!(
                a.mul(&b).unwrap().transpose(),
                b.transpose().mul(&a.transpose()).unwrap()
            );
            assert_eq!(a.transpose().transpose(), a);
        }
    }

    #[test]
    fn inverse_examples() {
        let q = Ring::rationals();
        assert_eq!(
            Matrix::identity(&q, 3).inverse().unwrap(),
            Matrix::identity(&q, 3)
        );

        // diag(2d1, 2d2) inverts entrywise over the localized ring.
        let p = Ring::localized_poly(&["d1", "d2"], &["d1", "d2"]).unwrap();
        let mut g = Matrix::zero(&p, 2, 2);
        g.set(0, 0, p.var("d1").unwrap().mul(&p.from_int(2)));
        g.set(1, 1, p.var("d2").unwrap().mul(&p.from_int(2)));
        let ginv = g.inverse().unwrap();
        assert_eq!(g.mul(&ginv).unwrap(), Matrix::identity(&p, 2));
        assert_eq!(
            ginv.get(0, 0),
            &p.var("d1").unwrap().invert().unwrap().half()
        );

        // Random invertible 3×3 over Z/10007: both-sided inverse.
        let zp = Ring::modular(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 10 {
            let a = random_matrix(&zp, 3, 3, &mut rng);
            if let Ok(inv) = a.inverse() {
                assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&zp, 3));
                assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(&zp, 3));
                found += 1;
            }
        }

        let singular = Matrix::from_ints(&q, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(LinalgError::NotInvertible));
    }

    #[test]
    fn embed_block_examples() {
        let q = Ring::rationals();
        let c = Matrix::from_ints(&q, &[&[5]]);
        let e = Matrix::embed_block(2, 0, 0, &c).unwrap();
        assert_eq!(e, Matrix::from_ints(&q, &[&[5, 0], &[0, 0]]));

        assert_eq!(
            Matrix::embed_block(2, 2, 0, &c),
            Err(LinalgError::OutOfBounds)
        );

        // Embedding commutes with addition on disjoint supports, and block
        // products compose through compatible offsets.
        let a = Matrix::from_ints(&q, &[&[1, 2]]);
        let b = Matrix::from_ints(&q, &[&[3], &[4]]);
        let ea = Matrix::embed_block(3, 0, 1, &a).unwrap();
        let eb = Matrix::embed_block(3, 1, 0, &b).unwrap();
        let sum = ea.add(&eb).unwrap();
        assert_eq!(sum.get(0, 1), &q.from_int(1));
        assert_eq!(sum.get(2, 0), &q.from_int(4));
        let prod = ea.mul(&eb).unwrap();
        let expect = Matrix::embed_block(3, 0, 0, &a.mul(&b).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn dump_format() {
        let q = Ring::rationals();
        let a = Matrix::from_fn(&q, 2, 2, |r, c| {
            q.from_ratio((r * 2 + c) as i64, 2).unwrap()
        });
        assert_eq!(a.dump(), "0, 1/2; 1, 3/2");
    }
}
