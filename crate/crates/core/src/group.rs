//! Group elements of `O_A(M)` and nested commutator words.
//!
//! Inverses are carried alongside every element and propagated algebraically
//! (`(ab)⁻¹ = b⁻¹a⁻¹`, generators invert via `E_{−θ}`), so word evaluation
//! never performs elimination — which keeps it total over the symbolic
//! backend.

use std::fmt;

use crate::dser::DserGenerator;
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix,
    inverse: Matrix,
}

impl GroupElement {
    /// Wraps a matrix with a known exact inverse; verifies the pair.
    pub fn new(matrix: Matrix, inverse: Matrix) -> Result<GroupElement, LinalgError> {
        let id = Matrix::identity(matrix.ring(), matrix.rows());
        if matrix.mul(&inverse)? != id {
            return Err(LinalgError::NotInvertible);
        }
        Ok(GroupElement { matrix, inverse })
    }

    pub fn identity(ring: &crate::ring::Ring, dim: usize) -> GroupElement {
        let id = Matrix::identity(ring, dim);
        GroupElement {
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, LinalgError> {
        Ok(GroupElement {
            matrix: self.matrix.mul(&other.matrix)?,
            inverse: other.inverse.mul(&self.inverse)?,
        })
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹` (the paper's convention).
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement, LinalgError> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }
}

impl From<&DserGenerator> for GroupElement {
    fn from(gen: &DserGenerator) -> GroupElement {
        GroupElement {
            matrix: gen.matrix.clone(),
            inverse: gen.inverse.clone(),
        }
    }
}

/// A group word over named generators, with nested commutators.
#[derive(Debug, Clone)]
pub enum CommExpr {
    Gen(String, GroupElement),
    Inv(Box<CommExpr>),
    Prod(Box<CommExpr>, Box<CommExpr>),
    Comm(Box<CommExpr>, Box<CommExpr>),
}

impl CommExpr {
    pub fn gen(label: impl Into<String>, element: GroupElement) -> CommExpr {
        CommExpr::Gen(label.into(), element)
    }

    pub fn inv(e: CommExpr) -> CommExpr {
        CommExpr::Inv(Box::new(e))
    }

    pub fn prod(a: CommExpr, b: CommExpr) -> CommExpr {
        CommExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn comm(a: CommExpr, b: CommExpr) -> CommExpr {
        CommExpr::Comm(Box::new(a), Box::new(b))
    }

    /// Bottom-up evaluation by matrix multiplication — the brute-force
    /// oracle every closed form is compared against.
    pub fn eval(&self) -> Result<GroupElement, LinalgError> {
        match self {
            CommExpr::Gen(_, g) => Ok(g.clone()),
            CommExpr::Inv(e) => Ok(e.eval()?.inverse()),
            CommExpr::Prod(a, b) => a.eval()?.mul(&b.eval()?),
            CommExpr::Comm(a, b) => a.eval()?.commutator(&b.eval()?),
        }
    }

    /// Number of generator letters in the fully expanded word.
    pub fn word_length(&self) -> usize {
        match self {
            CommExpr::Gen(..) => 1,
            CommExpr::Inv(e) => e.word_length(),
            CommExpr::Prod(a, b) => a.word_length() + b.word_length(),
            CommExpr::Comm(a, b) => 2 * (a.word_length() + b.word_length()),
        }
    }
}

impl fmt::Display for CommExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommExpr::Gen(label, _) => write!(f, "{label}"),
            CommExpr::Inv(e) => write!(f, "{e}^-1"),
            CommExpr::Prod(a, b) => write!(f, "{a}*{b}"),
            CommExpr::Comm(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dser::{elementary, AmbientSpace, HomKind, HomMap};
    use crate::linalg::Matrix;
    use crate::quadform::QuadraticSpace;
    use crate::ring::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_generators(seed: u64) -> (AmbientSpace, Vec<GroupElement>) {
        let ring = Ring::modular(10007).unwrap();
        let q = QuadraticSpace::diagonal(&ring, &[ring.from_int(3), ring.from_int(7)]).unwrap();
        let amb = AmbientSpace::new(q, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = Vec::new();
        for kind in [HomKind::Alpha, HomKind::Beta] {
            for _ in 0..2 {
                let theta = HomMap::new(
                    kind,
                    Matrix::from_fn(&ring, 2, 2, |_, _| ring.sample(&mut rng)),
                );
                gens.push(GroupElement::from(&elementary(&theta, &amb).unwrap()));
            }
        }
        (amb, gens)
    }

    #[test]
    fn inverse_laws() {
        let (amb, gens) = sample_generators(43);
        let id = GroupElement::identity(amb.ring(), amb.dim());
        for g in &gens {
            assert_eq!(g.inverse().inverse(), *g);
            assert_eq!(g.mul(&g.inverse()).unwrap(), id);
            assert_eq!(g.commutator(g).unwrap(), id);
            assert_eq!(g.commutator(&id).unwrap(), id);
        }
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn commutator_inverse_is_reversed_commutator() {
        let (amb, gens) = sample_generators(47);
        let id = GroupElement::identity(amb.ring(), amb.dim());
        for a in &gens {
            for b in &gens {
                let ab = a.commutator(b).unwrap();
                let ba = b.commutator(a).unwrap();
                assert_eq!(ab.inverse(), ba);
                assert_eq!(ab.mul(&ba).unwrap(), id);
            }
        }
    }

    #[test]
    fn eval_and_word_length() {
        let (amb, gens) = sample_generators(53);
        let g = |i: usize| CommExpr::gen(format!("g{i}"), gens[i].clone());
        let tree = CommExpr::comm(
            CommExpr::comm(g(0), g(1)),
            CommExpr::comm(g(2), g(3)),
        );
        assert_eq!(tree.word_length(), 16);
        assert_eq!(tree.to_string(), "[[g0,g1],[g2,g3]]");

        let lhs = tree.eval().unwrap();
        let inner1 = gens[0].commutator(&gens[1]).unwrap();
        let inner2 = gens[2].commutator(&gens[3]).unwrap();
        assert_eq!(lhs, inner1.commutator(&inner2).unwrap());

        // Every evaluated word stays orthogonal.
        assert!(amb.total().is_orthogonal(lhs.matrix()).unwrap());
        assert_eq!(
            CommExpr::inv(CommExpr::prod(g(0), g(1))).eval().unwrap(),
            gens[1].inverse().mul(&gens[0].inverse()).unwrap()
        );
    }
}
