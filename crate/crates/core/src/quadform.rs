//! Quadratic spaces over a ring with ½.
//!
//! A space is stored through the Gram matrix of its symmetric bilinear form
//! `⟨·,·⟩`; the quadratic form is recovered as `q(u) = ½⟨u,u⟩`.

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::ring::{Ring, RingValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadformError {
    #[error("Gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("hyperbolic rank must be at least 1")]
    InvalidRank,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: Matrix,
    gram_inv: Matrix,
}

impl QuadraticSpace {
    /// A space with the given Gram matrix; rejects non-symmetric input and
    /// (via inversion) singular forms.
    pub fn new(gram: Matrix) -> Result<QuadraticSpace, QuadformError> {
        if gram.rows() != gram.cols() || gram != gram.transpose() {
            return Err(QuadformError::NotSymmetric);
        }
        let gram_inv = gram.inverse()?;
        Ok(QuadraticSpace { gram, gram_inv })
    }

    /// The diagonal space with `⟨e_j, e_j⟩ = 2·d_j`, i.e. `q(e_j) = d_j`.
    pub fn diagonal(ring: &Ring, entries: &[RingValue]) -> Result<QuadraticSpace, QuadformError> {
        let two = ring.from_int(2);
        let mut gram = Matrix::zero(ring, entries.len(), entries.len());
        for (j, d) in entries.iter().enumerate() {
            gram.set(j, j, d.mul(&two));
        }
        QuadraticSpace::new(gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.gram.ring()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    /// `⟨u, v⟩ = uᵀ · gram · v` for column vectors `u`, `v`.
    pub fn eval_bilinear(&self, u: &Matrix, v: &Matrix) -> Result<RingValue, QuadformError> {
        if u.rows() != self.dim() || u.cols() != 1 || v.rows() != self.dim() || v.cols() != 1 {
            return Err(LinalgError::DimensionMismatch.into());
        }
        let prod = u.transpose().mul(&self.gram)?.mul(v)?;
        Ok(prod.get(0, 0).clone())
    }

    /// `q(u) = ½⟨u, u⟩`.
    pub fn eval_quadratic(&self, u: &Matrix) -> Result<RingValue, QuadformError> {
        Ok(self.eval_bilinear(u, u)?.half())
    }

    /// True iff `σ` preserves the form and is invertible: `σᵀ·G·σ = G`
    /// together with the explicit witness `σ·(G⁻¹σᵀG) = I`.
    pub fn is_orthogonal(&self, sigma: &Matrix) -> Result<bool, QuadformError> {
        if sigma.rows() != self.dim() || sigma.cols() != self.dim() {
            return Err(LinalgError::DimensionMismatch.into());
        }
        let congruent = sigma.transpose().mul(&self.gram)?.mul(sigma)? == self.gram;
        if !congruent {
            return Ok(false);
        }
        // G⁻¹σᵀG is a left inverse by the congruence; verifying it on the
        // right as well certifies invertibility without any elimination, so
        // the check works uniformly over the symbolic backend.
        let witness = self.gram_inv.mul(&sigma.transpose())?.mul(&self.gram)?;
        Ok(sigma.mul(&witness)? == Matrix::identity(sigma.ring(), self.dim()))
    }
}

/// `H(P) = P ⊕ P*` for free `P` of rank `m`, in basis `(x₁..x_m, f₁..f_m)`:
/// Gram `[[0, I], [I, 0]]`.
pub fn hyperbolic_space(ring: &Ring, m: usize) -> Result<QuadraticSpace, QuadformError> {
    if m == 0 {
        return Err(QuadformError::InvalidRank);
    }
    let mut gram = Matrix::zero(ring, 2 * m, 2 * m);
    for i in 0..m {
        gram.set(i, m + i, ring.one());
        gram.set(m + i, i, ring.one());
    }
    QuadraticSpace::new(gram)
}

/// `a ⊥ b`: block-diagonal Gram.
pub fn orthogonal_sum(
    a: &QuadraticSpace,
    b: &QuadraticSpace,
) -> Result<QuadraticSpace, QuadformError> {
    if a.ring() != b.ring() {
        return Err(LinalgError::DescriptorMismatch.into());
    }
    let dim = a.dim() + b.dim();
    let ea = Matrix::embed_block(dim, 0, 0, a.gram()).map_err(LinalgError::from)?;
    let eb = Matrix::embed_block(dim, a.dim(), a.dim(), b.gram()).map_err(LinalgError::from)?;
    QuadraticSpace::new(ea.add(&eb).map_err(LinalgError::from)?)
}

/// The `j`-th standard basis column (0-based) of length `dim`.
pub fn basis_vector(ring: &Ring, dim: usize, j: usize) -> Matrix {
    let mut v = Matrix::zero(ring, dim, 1);
    v.set(j, 0, ring.one());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hyperbolic_examples() {
        let q = Ring::rationals();
        let h = hyperbolic_space(&q, 1).unwrap();
        assert_eq!(h.gram(), &Matrix::from_ints(&q, &[&[0, 1], &[1, 0]]));

        // p((x, f)) = f(x): the vector (1, 3) evaluates to 3.
        let v = Matrix::from_ints(&q, &[&[1], &[3]]);
        assert_eq!(h.eval_quadratic(&v).unwrap(), q.from_int(3));

        // ⟨(1,0), (0,1)⟩ = 1.
        let x = basis_vector(&q, 2, 0);
        let f = basis_vector(&q, 2, 1);
        assert_eq!(h.eval_bilinear(&x, &f).unwrap(), q.one());

        // m = 2: symmetric, invertible, determinant 1 (cofactor oracle on the
        // 4×4 antidiagonal-identity block matrix).
        let h2 = hyperbolic_space(&q, 2).unwrap();
        assert_eq!(h2.gram(), &h2.gram().transpose());
        assert_eq!(
            h2.gram().mul(h2.gram_inv()).unwrap(),
            Matrix::identity(&q, 4)
        );
        // det [[0,I2],[I2,0]] = (-1)^2 · det(I2) · det(I2) = 1: the inverse
        // equals the matrix itself, consistent with det = ±1, and the
        // permutation parity of (x1 x2 f1 f2 → f1 f2 x1 x2) is even.
        assert_eq!(h2.gram_inv(), h2.gram());

        assert_eq!(hyperbolic_space(&q, 0), Err(QuadformError::InvalidRank));
    }

    #[test]
    fn orthogonal_sum_examples() {
        let q = Ring::rationals();
        let space_q = QuadraticSpace::diagonal(&q, &[q.from_int(3), q.from_int(5)]).unwrap();
        let h = hyperbolic_space(&q, 2).unwrap();
        let total = orthogonal_sum(&space_q, &h).unwrap();
        assert_eq!(total.dim(), 6);
        assert_eq!(total.gram().get(0, 0), &q.from_int(6));
        assert_eq!(total.gram().get(2, 4), &q.one());

        // Cross-summand pairings vanish on the block-diagonal Gram.
        let u = basis_vector(&q, 6, 0);
        let v = basis_vector(&q, 6, 3);
        assert!(total.eval_bilinear(&u, &v).unwrap().is_zero());

        // h ⊥ h is nondegenerate of rank 4.
        let hh = orthogonal_sum(
            &hyperbolic_space(&q, 1).unwrap(),
            &hyperbolic_space(&q, 1).unwrap(),
        )
        .unwrap();
        assert!(hh.gram().inverse().is_ok());

        // H(A²) equals h ⊥ h after the interleaving basis permutation
        // (x1, x2, f1, f2) → (x1, f1, x2, f2).
        let perm = Matrix::from_ints(
            &q,
            &[
                &[1, 0, 0, 0],
                &[0, 0, 1, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 1],
            ],
        );
        let h2 = hyperbolic_space(&q, 2).unwrap();
        assert_eq!(
            perm.transpose().mul(h2.gram()).unwrap().mul(&perm).unwrap(),
            *hh.gram()
        );
    }

    #[test]
    fn polarization_and_scaling() {
        let zp = Ring::modular(10007).unwrap();
        let space = QuadraticSpace::diagonal(
            &zp,
            &[zp.from_int(2), zp.from_int(9), zp.from_int(31)],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let u = Matrix::from_fn(&zp, 3, 1, |_, _| zp.sample(&mut rng));
            let v = Matrix::from_fn(&zp, 3, 1, |_, _| zp.sample(&mut rng));
            let c = zp.sample(&mut rng);
            assert_eq!(
                space.eval_bilinear(&u, &v).unwrap(),
                space.eval_bilinear(&v, &u).unwrap()
            );
            // q(u+v) − q(u) − q(v) = ⟨u, v⟩.
            let sum = u.add(&v).unwrap();
            let lhs = space
                .eval_quadratic(&sum)
                .unwrap()
                .sub(&space.eval_quadratic(&u).unwrap())
                .sub(&space.eval_quadratic(&v).unwrap());
            assert_eq!(lhs, space.eval_bilinear(&u, &v).unwrap());
            // q(c·u) = c²·q(u).
            assert_eq!(
                space.eval_quadratic(&u.scale(&c)).unwrap(),
                space.eval_quadratic(&u).unwrap().mul(&c).mul(&c)
            );
        }

        // ⟨z₁, z₁⟩ = 2d₁ when q(z₁) = d₁.
        let p = Ring::localized_poly(&["d1"], &["d1"]).unwrap();
        let d1 = p.var("d1").unwrap();
        let s = QuadraticSpace::diagonal(&p, &[d1.clone()]).unwrap();
        let z1 = basis_vector(&p, 1, 0);
        assert_eq!(
            s.eval_bilinear(&z1, &z1).unwrap(),
            d1.mul(&p.from_int(2))
        );
        assert_eq!(s.eval_quadratic(&z1).unwrap(), d1);
    }

    #[test]
    fn orthogonality_predicate() {
        let q = Ring::rationals();
        let space = QuadraticSpace::diagonal(&q, &[q.from_int(1), q.from_int(2)]).unwrap();
        assert!(space.is_orthogonal(&Matrix::identity(&q, 2)).unwrap());
        // diag(2, 1) does not preserve a nontrivial form.
        let sigma = Matrix::from_ints(&q, &[&[2, 0], &[0, 1]]);
        assert!(!space.is_orthogonal(&sigma).unwrap());

        // Orthogonal maps are closed under product and inverse.
        let h = hyperbolic_space(&q, 1).unwrap();
        let a = Matrix::from_ints(&q, &[&[1, 0], &[0, 1]]);
        let b = Matrix::from_fn(&q, 2, 2, |r, c| {
            // diag(2, 1/2) preserves [[0,1],[1,0]].
            if r != c {
                q.zero()
            } else if r == 0 {
                q.from_int(2)
            } else {
                q.from_ratio(1, 2).unwrap()
            }
        });
        assert!(h.is_orthogonal(&a).unwrap());
        assert!(h.is_orthogonal(&b).unwrap());
        assert!(h.is_orthogonal(&a.mul(&b).unwrap()).unwrap());
        assert!(h.is_orthogonal(&b.inverse().unwrap()).unwrap());
    }
}
