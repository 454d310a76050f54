//! The ambient space `M = Q ⊥ H(P)` and Roy's elementary transformations.
//!
//! Coordinates on `M` are ordered `(z₁..z_n, x₁..x_m, f₁..f_m)`: first the
//! basis of `Q`, then the basis of `P`, then the dual basis of `P*`. A map
//! `θ: Q → P` (alpha-type) or `θ: Q → P*` (beta-type) is an `m × n` matrix,
//! and its adjoint `θ* = d_{B_q}⁻¹ ∘ θᵗ` (composed with the identity
//! identification `ε: P → P**` for the beta case) is `n × m`. The elementary
//! transformation is
//!
//! ```text
//! E_θ = I + θ − θ* − ½θθ*,       E_θ⁻¹ = E_{−θ}.
//! ```
//!
//! The same formula applies verbatim to composite blocks such as `α δ* β`
//! once they are lifted to endomorphisms of `M`; [`elementary_ambient`] is
//! that uniform constructor and checks the two conditions (`Θ² = 0`,
//! `Θ*Θ = 0`) under which `E_Θ` is orthogonal with inverse `E_{−Θ}`.

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::quadform::{orthogonal_sum, hyperbolic_space, QuadformError, QuadraticSpace};
use crate::ring::{Ring, RingValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DserError {
    #[error("component index out of range")]
    IndexOutOfRange,
    #[error("vector has support outside the designated coordinate")]
    UnsupportedVector,
    #[error("composite block is not supported at the expected component")]
    NonComponentComposite,
    #[error("block does not satisfy the nilpotency conditions for E_θ")]
    NotElementary,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quadform(#[from] QuadformError),
}

/// One of the three orthogonal summands of `M = Q ⊥ P ⊕ P*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    Q,
    P,
    PStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    /// `θ: Q → P`.
    Alpha,
    /// `θ: Q → P*`.
    Beta,
}

/// A homomorphism out of `Q` into `P` or `P*`, as an `m × n` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub kind: HomKind,
    pub mat: Matrix,
}

impl HomMap {
    pub fn new(kind: HomKind, mat: Matrix) -> HomMap {
        HomMap { kind, mat }
    }

    pub fn zero(kind: HomKind, ring: &Ring, m: usize, n: usize) -> HomMap {
        HomMap {
            kind,
            mat: Matrix::zero(ring, m, n),
        }
    }

    pub fn scale(&self, s: &RingValue) -> HomMap {
        HomMap {
            kind: self.kind,
            mat: self.mat.scale(s),
        }
    }

    pub fn add(&self, other: &HomMap) -> Result<HomMap, DserError> {
        if self.kind != other.kind {
            return Err(DserError::NonComponentComposite);
        }
        Ok(HomMap {
            kind: self.kind,
            mat: self.mat.add(&other.mat)?,
        })
    }
}

/// `M = Q ⊥ H(P)` with `rank Q = n`, `rank P = m`.
#[derive(Debug, Clone)]
pub struct AmbientSpace {
    n: usize,
    m: usize,
    q_space: QuadraticSpace,
    total: QuadraticSpace,
}

impl AmbientSpace {
    pub fn new(q_space: QuadraticSpace, m: usize) -> Result<AmbientSpace, DserError> {
        let h = hyperbolic_space(q_space.ring(), m)?;
        let total = orthogonal_sum(&q_space, &h)?;
        Ok(AmbientSpace {
            n: q_space.dim(),
            m,
            q_space,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + 2 * self.m
    }

    pub fn ring(&self) -> &Ring {
        self.q_space.ring()
    }

    pub fn q_space(&self) -> &QuadraticSpace {
        &self.q_space
    }

    pub fn total(&self) -> &QuadraticSpace {
        &self.total
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.ring(), self.dim())
    }

    fn offset(&self, s: Summand) -> usize {
        match s {
            Summand::Q => 0,
            Summand::P => self.n,
            Summand::PStar => self.n + self.m,
        }
    }

    fn rank(&self, s: Summand) -> usize {
        match s {
            Summand::Q => self.n,
            Summand::P | Summand::PStar => self.m,
        }
    }

    /// Lifts a `rank(rows) × rank(cols)` block to an endomorphism of `M`.
    pub fn ambient_endo(
        &self,
        block: &Matrix,
        rows: Summand,
        cols: Summand,
    ) -> Result<Matrix, DserError> {
        if block.rows() != self.rank(rows) || block.cols() != self.rank(cols) {
            return Err(LinalgError::DimensionMismatch.into());
        }
        Ok(Matrix::embed_block(
            self.dim(),
            self.offset(rows),
            self.offset(cols),
            block,
        )?)
    }

    fn hom_target(&self, kind: HomKind) -> Summand {
        match kind {
            HomKind::Alpha => Summand::P,
            HomKind::Beta => Summand::PStar,
        }
    }

    /// The summand an adjoint `θ*` reads from: `α*` consumes the `f`-block,
    /// `β*` consumes the `x`-block (per the §2 action table).
    fn star_source(&self, kind: HomKind) -> Summand {
        match kind {
            HomKind::Alpha => Summand::PStar,
            HomKind::Beta => Summand::P,
        }
    }

    /// `θ` as an endomorphism of `M`.
    pub fn ambient_hom(&self, theta: &HomMap) -> Result<Matrix, DserError> {
        self.ambient_endo(&theta.mat, self.hom_target(theta.kind), Summand::Q)
    }

    /// `θ*` as an endomorphism of `M`.
    pub fn ambient_star(&self, theta: &HomMap) -> Result<Matrix, DserError> {
        let star = star(theta, self)?;
        self.ambient_endo(&star, Summand::Q, self.star_source(theta.kind))
    }

    /// Form-adjoint of an arbitrary ambient endomorphism: `Ĝ⁻¹ Θᵀ Ĝ`.
    ///
    /// On an embedded `HomMap` this reproduces `star`; on composites like
    /// `α δ* β` it produces the dual composite in reversed order.
    pub fn adjoint(&self, theta: &Matrix) -> Result<Matrix, DserError> {
        Ok(self
            .total
            .gram_inv()
            .mul(&theta.transpose())?
            .mul(self.total.gram())?)
    }

    /// Reads back the Hom block of an ambient endomorphism, checking that it
    /// is a genuine alpha/beta-type map supported at component `(i, j)`
    /// (1-based) and nowhere else.
    pub fn extract_component(
        &self,
        theta: &Matrix,
        kind: HomKind,
        i: usize,
        j: usize,
    ) -> Result<HomMap, DserError> {
        if i < 1 || i > self.m || j < 1 || j > self.n {
            return Err(DserError::IndexOutOfRange);
        }
        let rows = self.hom_target(kind);
        let block = theta.submatrix(self.offset(rows), 0, self.m, self.n);
        // The composite must live entirely in the designated Hom block...
        if self.ambient_endo(&block, rows, Summand::Q)? != *theta {
            return Err(DserError::NonComponentComposite);
        }
        // ...and that block must be supported at (i, j) only.
        for r in 0..self.m {
            for c in 0..self.n {
                if (r, c) != (i - 1, j - 1) && !block.get(r, c).is_zero() {
                    return Err(DserError::NonComponentComposite);
                }
            }
        }
        Ok(HomMap::new(kind, block))
    }
}

/// `star(θ) = d_{B_q}⁻¹ · θᵗ`, the `n × m` matrix of `θ*` (resp. `β* ∘ ε`)
/// as a map into `Q`. Characterized by `⟨star(θ)(φ), z⟩_Q = φ(θ(z))`.
pub fn star(theta: &HomMap, amb: &AmbientSpace) -> Result<Matrix, DserError> {
    Ok(amb.q_space.gram_inv().mul(&theta.mat.transpose())?)
}

/// `θ_ij`: the single-entry truncation of `θ` at row `i`, column `j`
/// (1-based, matching the paper's index conventions).
pub fn component_map(theta: &HomMap, i: usize, j: usize, amb: &AmbientSpace) -> Result<HomMap, DserError> {
    if i < 1 || i > amb.m() || j < 1 || j > amb.n() {
        return Err(DserError::IndexOutOfRange);
    }
    let mut mat = Matrix::zero(theta.mat.ring(), theta.mat.rows(), theta.mat.cols());
    mat.set(i - 1, j - 1, theta.mat.get(i - 1, j - 1).clone());
    Ok(HomMap::new(theta.kind, mat))
}

/// One elementary transformation, with its defining block and cached inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DserGenerator {
    /// The defining block `Θ`, as an ambient endomorphism.
    pub theta_ambient: Matrix,
    /// `E_Θ`.
    pub matrix: Matrix,
    /// `E_{−Θ}`, the exact inverse.
    pub inverse: Matrix,
    /// Set when the generator came from a component map: `(kind, i, j)`.
    pub component: Option<(HomKind, usize, usize)>,
}

/// `E_Θ` for an arbitrary ambient block `Θ`, provided `Θ² = 0` and
/// `Θ*Θ = 0` — the conditions under which `E_Θ` is orthogonal and
/// `E_{−Θ}` is its inverse. Every block the commutator catalog constructs
/// satisfies them by index bookkeeping; a violation signals a bug.
pub fn elementary_ambient(theta: &Matrix, amb: &AmbientSpace) -> Result<DserGenerator, DserError> {
    if theta.rows() != amb.dim() || theta.cols() != amb.dim() {
        return Err(LinalgError::DimensionMismatch.into());
    }
    let star = amb.adjoint(theta)?;
    if !theta.mul(theta)?.is_zero() || !star.mul(theta)?.is_zero() {
        return Err(DserError::NotElementary);
    }
    let id = amb.identity();
    let correction = theta.mul(&star)?.half();
    // E_Θ = I + Θ − Θ* − ½ΘΘ*; E_{−Θ} flips the signs of Θ and Θ*.
    let matrix = id.add(theta)?.sub(&star)?.sub(&correction)?;
    let inverse = id.sub(theta)?.add(&star)?.sub(&correction)?;
    debug_assert_eq!(matrix.mul(&inverse).unwrap(), id);
    Ok(DserGenerator {
        theta_ambient: theta.clone(),
        matrix,
        inverse,
        component: None,
    })
}

/// `E_θ` for a Hom map `θ`.
pub fn elementary(theta: &HomMap, amb: &AmbientSpace) -> Result<DserGenerator, DserError> {
    let ambient = amb.ambient_hom(theta)?;
    elementary_ambient(&ambient, amb)
}

/// The generator determined by the data `(kind, i, j, w)` of the §2 action
/// table: `w` is the defining vector in `Q`, supported on coordinate `j`,
/// and the produced `θ` is the component map whose star-vector at row `i`
/// is `w` (i.e. `α*(f_i) = w` / `β*(x_i) = w`).
pub fn elementary_from_vector(
    kind: HomKind,
    i: usize,
    j: usize,
    w: &Matrix,
    amb: &AmbientSpace,
) -> Result<DserGenerator, DserError> {
    if i < 1 || i > amb.m() || j < 1 || j > amb.n() {
        return Err(DserError::IndexOutOfRange);
    }
    if w.rows() != amb.n() || w.cols() != 1 {
        return Err(LinalgError::DimensionMismatch.into());
    }
    for r in 0..amb.n() {
        if r != j - 1 && !w.get(r, 0).is_zero() {
            return Err(DserError::UnsupportedVector);
        }
    }
    // star(θ) has w as column i, so θ = (G_Q · star)ᵀ.
    let mut star = Matrix::zero(w.ring(), amb.n(), amb.m());
    for r in 0..amb.n() {
        star.set(r, i - 1, w.get(r, 0).clone());
    }
    let theta_mat = amb.q_space().gram().mul(&star)?.transpose();
    let mut gen = elementary(&HomMap::new(kind, theta_mat), amb)?;
    gen.component = Some((kind, i, j));
    Ok(gen)
}
