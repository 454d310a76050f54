//! Instantiation of identity cases.
//!
//! A case fixes the ambient space, one Hom map per role, and (for the
//! scaling corollaries) the scalar tuple `a..f` with its defining relations
//! substituted exactly:
//!
//! * pairs: `ab = cd` via `d := ab·c⁻¹`;
//! * triples: `abc = def` and `a²bc = d²ef` via `d := a`, `f := bc·e⁻¹`.
//!
//! Symbolic cases live over the localized polynomial ring with one
//! indeterminate per defining-vector coordinate (`q(z_j) = d_j`, `d_j`
//! inverted); each role's map is the single-component map of its slot, so
//! every verified equation is an identity of Laurent polynomials.
//! Random cases sample full `m × n` maps and unit scalars, exercising the
//! off-slot components as well.

use rand::Rng;

use super::{Arity, Indices, IdentityError, LemmaId, Role, Slot};
use crate::dser::{component_map, AmbientSpace, HomKind, HomMap};
use crate::linalg::Matrix;
use crate::quadform::QuadraticSpace;
use crate::ring::{Ring, RingValue};

/// Scalar tuple for the scaling corollaries; unused entries are `1`.
#[derive(Debug, Clone)]
pub struct Scalars {
    pub a: RingValue,
    pub b: RingValue,
    pub c: RingValue,
    pub d: RingValue,
    pub e: RingValue,
    pub f: RingValue,
}

/// One role's instantiated Hom map (the full matrix, not yet truncated to
/// the role's component).
#[derive(Debug, Clone)]
pub struct MapInstance {
    pub role: Role,
    pub kind: HomKind,
    pub slot: Slot,
    pub hom: HomMap,
}

/// Everything needed to evaluate one identity at one index tuple.
#[derive(Debug, Clone)]
pub struct IdentityCase {
    pub lemma: LemmaId,
    pub indices: Indices,
    pub branch: usize,
    pub amb: AmbientSpace,
    pub maps: Vec<MapInstance>,
    pub scalars: Option<Scalars>,
}

impl IdentityCase {
    pub fn map(&self, role: Role) -> &MapInstance {
        self.maps
            .iter()
            .find(|m| m.role == role)
            .expect("role not present in this lemma")
    }

    /// The component map of `role` at its own slot.
    pub fn component(&self, role: Role) -> Result<HomMap, IdentityError> {
        let inst = self.map(role);
        let row = self.indices.row(inst.slot);
        let col = self.indices.col(inst.slot);
        Ok(component_map(&inst.hom, row, col, &self.amb)?)
    }

    /// The component map of `role` at an arbitrary index pair (used where a
    /// statement names a component other than the role's own slot).
    pub fn component_at(
        &self,
        role: Role,
        i: usize,
        j: usize,
    ) -> Result<HomMap, IdentityError> {
        Ok(component_map(&self.map(role).hom, i, j, &self.amb)?)
    }
}

fn validate(lemma: LemmaId, ix: &Indices, m: usize, n: usize) -> Result<usize, IdentityError> {
    let arity = lemma.arity();
    let rows: &[usize] = match arity {
        Arity::Pair => &[ix.i, ix.k],
        Arity::Triple => &[ix.i, ix.k, ix.p],
        Arity::Quad => &[ix.i, ix.k, ix.p, ix.r],
    };
    let cols: &[usize] = match arity {
        Arity::Pair => &[ix.j, ix.l],
        Arity::Triple => &[ix.j, ix.l, ix.q],
        Arity::Quad => &[ix.j, ix.l, ix.q, ix.s],
    };
    if rows.iter().any(|&v| v < 1 || v > m) || cols.iter().any(|&v| v < 1 || v > n) {
        return Err(IdentityError::ConstraintViolated);
    }
    if !lemma.admissible(ix) {
        return Err(IdentityError::ConstraintViolated);
    }
    Ok(lemma.branch_of(ix))
}

/// `θ = (G_Q · W)ᵀ` for an `n × m` star matrix `W`, so that `star(θ) = W`.
fn hom_from_star(
    kind: HomKind,
    star: &Matrix,
    q_space: &QuadraticSpace,
) -> Result<HomMap, IdentityError> {
    let mat = q_space.gram().mul(star)?.transpose();
    Ok(HomMap::new(kind, mat))
}

/// Builds the symbolic instance of `lemma` at `ix` over the localized
/// polynomial ring in the form parameters `d1..dn` (inverted) and one fresh
/// indeterminate per role (plus scalar indeterminates for corollaries).
pub fn symbolic_case(
    lemma: LemmaId,
    ix: Indices,
    m: usize,
    n: usize,
) -> Result<IdentityCase, IdentityError> {
    let branch = validate(lemma, &ix, m, n)?;
    let roles = lemma.roles();

    let mut names: Vec<String> = (1..=n).map(|j| format!("d{j}")).collect();
    let mut inverted: Vec<String> = names.clone();
    for (role, _, _) in roles {
        names.push(role.var_name().to_string());
    }
    let corollary = lemma.is_corollary();
    if corollary {
        names.extend(["sa", "sb", "sc"].map(str::to_string));
        match lemma.arity() {
            Arity::Pair => inverted.push("sc".to_string()),
            _ => {
                names.push("se".to_string());
                inverted.push("se".to_string());
            }
        }
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let inv_refs: Vec<&str> = inverted.iter().map(String::as_str).collect();
    let ring = Ring::localized_poly(&name_refs, &inv_refs)?;

    let diag: Vec<RingValue> = (1..=n)
        .map(|j| ring.var(&format!("d{j}")))
        .collect::<Result<_, _>>()?;
    let q_space = QuadraticSpace::diagonal(&ring, &diag)?;
    let amb = AmbientSpace::new(q_space, m)?;

    let mut maps = Vec::with_capacity(roles.len());
    for &(role, kind, slot) in roles {
        let mut star = Matrix::zero(&ring, n, m);
        star.set(ix.col(slot) - 1, ix.row(slot) - 1, ring.var(role.var_name())?);
        maps.push(MapInstance {
            role,
            kind,
            slot,
            hom: hom_from_star(kind, &star, amb.q_space())?,
        });
    }

    let scalars = if corollary {
        let a = ring.var("sa")?;
        let b = ring.var("sb")?;
        let c = ring.var("sc")?;
        Some(match lemma.arity() {
            Arity::Pair => {
                let d = a.mul(&b).mul(&c.invert()?);
                Scalars {
                    a,
                    b,
                    c: c.clone(),
                    d,
                    e: ring.one(),
                    f: ring.one(),
                }
            }
            _ => {
                let e = ring.var("se")?;
                let f = b.mul(&c).mul(&e.invert()?);
                let d = a.clone();
                Scalars { a, b, c, d, e, f }
            }
        })
    } else {
        None
    };

    Ok(IdentityCase {
        lemma,
        indices: ix,
        branch,
        amb,
        maps,
        scalars,
    })
}

/// Builds a randomized instance over `ring` (rationals or a modular field):
/// random diagonal unit form, full random Hom maps, unit scalars.
pub fn random_case(
    lemma: LemmaId,
    ix: Indices,
    m: usize,
    n: usize,
    ring: &Ring,
    rng: &mut impl Rng,
) -> Result<IdentityCase, IdentityError> {
    let branch = validate(lemma, &ix, m, n)?;
    let roles = lemma.roles();

    let diag: Vec<RingValue> = (0..n).map(|_| ring.sample_unit(rng)).collect();
    let q_space = QuadraticSpace::diagonal(ring, &diag)?;
    let amb = AmbientSpace::new(q_space, m)?;

    let mut maps = Vec::with_capacity(roles.len());
    for &(role, kind, slot) in roles {
        let star = Matrix::from_fn(ring, n, m, |_, _| ring.sample(rng));
        maps.push(MapInstance {
            role,
            kind,
            slot,
            hom: hom_from_star(kind, &star, amb.q_space())?,
        });
    }

    let scalars = if lemma.is_corollary() {
        let a = ring.sample(rng);
        let b = ring.sample(rng);
        let c = ring.sample_unit(rng);
        Some(match lemma.arity() {
            Arity::Pair => {
                let d = a.mul(&b).mul(&c.invert()?);
                Scalars {
                    a,
                    b,
                    c: c.clone(),
                    d,
                    e: ring.one(),
                    f: ring.one(),
                }
            }
            _ => {
                let e = ring.sample_unit(rng);
                let f = b.mul(&c).mul(&e.invert()?);
                let d = a.clone();
                Scalars { a, b, c, d, e, f }
            }
        })
    } else {
        None
    };

    Ok(IdentityCase {
        lemma,
        indices: ix,
        branch,
        amb,
        maps,
        scalars,
    })
}
