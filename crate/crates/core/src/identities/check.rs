//! Closed-form construction and the oracle comparison.
//!
//! For each case we evaluate three things:
//!
//! * the left-hand side, by brute-force multiplication of the nested
//!   commutator word over the case's generators;
//! * the *statement* right-hand side — the branch formula exactly as the
//!   statement prints it (absent for branches the statement does not cover);
//! * the *proof* right-hand side — the expression the proof derives for
//!   that branch, which occasionally differs from the statement.
//!
//! The verdict records which of the two the oracle confirms.

use std::fmt;

use serde::Serialize;

use super::{IdentityCase, IdentityError, Indices, LemmaId, Role};
use crate::dser::{elementary, elementary_ambient, AmbientSpace, HomKind, HomMap};
use crate::group::{CommExpr, GroupElement};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    MatchesBoth,
    MatchesProofOnly,
    MatchesStatementOnly,
    MatchesNeither,
    StatementAbsent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::MatchesBoth => "matches_both",
            Status::MatchesProofOnly => "matches_proof_only",
            Status::MatchesStatementOnly => "matches_statement_only",
            Status::MatchesNeither => "matches_neither",
            Status::StatementAbsent => "statement_absent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub lemma: LemmaId,
    pub indices: Indices,
    pub branch: usize,
    pub status: Status,
    pub lhs: Matrix,
    pub rhs_statement: Option<Matrix>,
    pub rhs_proof: Option<Matrix>,
}

impl Verdict {
    pub fn branch_label(&self) -> &'static str {
        self.lemma.branches()[self.branch]
    }
}

/// Per-case evaluation context: the component map, its ambient `Θ` and `Θ*`,
/// and the generator `E_Θ` for every role.
struct Ctx<'a> {
    case: &'a IdentityCase,
    comps: Vec<HomMap>,
    homs: Vec<Matrix>,
    stars: Vec<Matrix>,
    gens: Vec<GroupElement>,
}

impl<'a> Ctx<'a> {
    fn new(case: &'a IdentityCase) -> Result<Ctx<'a>, IdentityError> {
        let mut comps = Vec::new();
        let mut homs = Vec::new();
        let mut stars = Vec::new();
        let mut gens = Vec::new();
        for inst in &case.maps {
            let comp = case.component(inst.role)?;
            homs.push(case.amb.ambient_hom(&comp)?);
            stars.push(case.amb.ambient_star(&comp)?);
            gens.push(GroupElement::from(&elementary(&comp, &case.amb)?));
            comps.push(comp);
        }
        Ok(Ctx {
            case,
            comps,
            homs,
            stars,
            gens,
        })
    }

    fn amb(&self) -> &AmbientSpace {
        &self.case.amb
    }

    fn idx(&self, role: Role) -> usize {
        self.case
            .maps
            .iter()
            .position(|m| m.role == role)
            .expect("role not present in this lemma")
    }

    /// Ambient matrix of the role's component map.
    fn a(&self, role: Role) -> &Matrix {
        &self.homs[self.idx(role)]
    }

    /// Ambient matrix of the role's adjoint.
    fn s(&self, role: Role) -> &Matrix {
        &self.stars[self.idx(role)]
    }

    fn e(&self, role: Role) -> &GroupElement {
        &self.gens[self.idx(role)]
    }

    fn id(&self) -> Matrix {
        self.amb().identity()
    }

    /// `E_Θ` for a composite ambient block.
    fn e_block(&self, block: &Matrix) -> Result<GroupElement, IdentityError> {
        Ok(GroupElement::from(&elementary_ambient(block, self.amb())?))
    }

    /// The statement's auxiliary form `E_θ·[outer, E_{θ/2}]` where `θ` is the
    /// component of `composite` at `(row, col)`.
    fn e_aux_form(
        &self,
        composite: &Matrix,
        kind: HomKind,
        row: usize,
        col: usize,
        outer: &GroupElement,
    ) -> Result<Matrix, IdentityError> {
        let hom = self.amb().extract_component(composite, kind, row, col)?;
        let full = GroupElement::from(&elementary(&hom, self.amb())?);
        let half = self.amb().ring().one().half();
        let halved = GroupElement::from(&elementary(&hom.scale(&half), self.amb())?);
        let comm = outer.commutator(&halved)?;
        Ok(full.mul(&comm)?.matrix().clone())
    }
}

/// Left-associated product of ambient matrices.
fn mm(parts: &[&Matrix]) -> Result<Matrix, IdentityError> {
    let mut iter = parts.iter();
    let mut acc = (*iter.next().expect("empty product")).clone();
    for part in iter {
        acc = acc.mul(part)?;
    }
    Ok(acc)
}

/// `I ± t₁ ± ½t₂ ± …` accumulator for the proof displays.
struct Series {
    acc: Matrix,
}

impl Series {
    fn new(id: Matrix) -> Series {
        Series { acc: id }
    }

    fn plus(mut self, t: &Matrix) -> Result<Series, IdentityError> {
        self.acc = self.acc.add(t)?;
        Ok(self)
    }

    fn minus(mut self, t: &Matrix) -> Result<Series, IdentityError> {
        self.acc = self.acc.sub(t)?;
        Ok(self)
    }

    fn plus_half(self, t: &Matrix) -> Result<Series, IdentityError> {
        let h = t.half();
        self.plus(&h)
    }

    fn minus_half(self, t: &Matrix) -> Result<Series, IdentityError> {
        let h = t.half();
        self.minus(&h)
    }

    fn done(self) -> Matrix {
        self.acc
    }
}

/// The nested commutator word of the lemma's left-hand side over the case's
/// (unscaled) component generators. Corollary words carry the scalars and
/// are built by `corollary_sides`.
pub fn lhs_expression(case: &IdentityCase) -> Result<CommExpr, IdentityError> {
    let ctx = Ctx::new(case)?;
    Ok(lhs_expr(&ctx))
}

fn gen_expr(ctx: &Ctx<'_>, pos: usize) -> CommExpr {
    let inst = &ctx.case.maps[pos];
    let row = ctx.case.indices.row(inst.slot);
    let col = ctx.case.indices.col(inst.slot);
    CommExpr::gen(
        format!("E[{:?} {row},{col}]", inst.role),
        ctx.gens[pos].clone(),
    )
}

fn lhs_expr(ctx: &Ctx<'_>) -> CommExpr {
    let g = |pos: usize| gen_expr(ctx, pos);
    match ctx.case.lemma {
        LemmaId::L01 | LemmaId::L02 | LemmaId::L03 => CommExpr::comm(g(0), g(1)),
        LemmaId::R01 => CommExpr::inv(CommExpr::comm(g(0), g(1))),
        LemmaId::L04 | LemmaId::L05 | LemmaId::L06 | LemmaId::L07 => {
            CommExpr::comm(g(0), CommExpr::comm(g(1), g(2)))
        }
        _ => CommExpr::comm(CommExpr::comm(g(0), g(1)), CommExpr::comm(g(2), g(3))),
    }
}

/// Both sides of a scaling corollary, as commutator words over the scaled
/// generators.
fn corollary_sides(ctx: &Ctx<'_>) -> Result<(CommExpr, CommExpr), IdentityError> {
    let case = ctx.case;
    let scalars = case.scalars.as_ref().expect("corollary without scalars");
    let scaled = |pos: usize, s: &crate::ring::RingValue| -> Result<CommExpr, IdentityError> {
        let inst = &case.maps[pos];
        let gen = elementary(&ctx.comps[pos].scale(s), &case.amb)?;
        Ok(CommExpr::gen(
            format!("E[{:?} scaled]", inst.role),
            GroupElement::from(&gen),
        ))
    };
    let (side1, side2) = match case.lemma.arity() {
        super::Arity::Pair => (
            CommExpr::comm(scaled(0, &scalars.a)?, scaled(1, &scalars.b)?),
            CommExpr::comm(scaled(0, &scalars.c)?, scaled(1, &scalars.d)?),
        ),
        _ => (
            CommExpr::comm(
                scaled(0, &scalars.a)?,
                CommExpr::comm(scaled(1, &scalars.b)?, scaled(2, &scalars.c)?),
            ),
            CommExpr::comm(
                scaled(0, &scalars.d)?,
                CommExpr::comm(scaled(1, &scalars.e)?, scaled(2, &scalars.f)?),
            ),
        ),
    };
    Ok((side1, side2))
}

/// `I + δα* − αδ*`: the shared general pair formula of the alpha-alpha and
/// beta-beta commutators. `corrupt` flips the sign of the second term and is
/// only reachable through the negative-control flag.
fn pair_general(
    ctx: &Ctx<'_>,
    first: Role,
    second: Role,
    corrupt: bool,
) -> Result<Matrix, IdentityError> {
    let t1 = mm(&[ctx.a(second), ctx.s(first)])?;
    let t2 = mm(&[ctx.a(first), ctx.s(second)])?;
    let acc = ctx.id().add(&t1)?;
    Ok(if corrupt { acc.add(&t2)? } else { acc.sub(&t2)? })
}

fn closed_forms(
    ctx: &Ctx<'_>,
    negative_control: bool,
) -> Result<(Option<Matrix>, Option<Matrix>), IdentityError> {
    use Role::*;
    let case = ctx.case;
    let ix = &case.indices;
    let branch = case.branch;
    let id = ctx.id();

    let forms = match case.lemma {
        LemmaId::L01 => {
            let general = pair_general(ctx, Alpha, Delta, negative_control)?;
            let stmt = if branch == 0 { id } else { general.clone() };
            (Some(stmt), Some(general))
        }
        LemmaId::L02 => {
            // I − αβ* + βα*.
            let rhs = ctx
                .id()
                .sub(&mm(&[ctx.a(Alpha), ctx.s(Beta)])?)?
                .add(&mm(&[ctx.a(Beta), ctx.s(Alpha)])?)?;
            (Some(rhs.clone()), Some(rhs))
        }
        LemmaId::R01 => {
            // Statement: I + αβ* − βα*. Proof: the reversed bracket [E*_β, E_α].
            let stmt = ctx
                .id()
                .add(&mm(&[ctx.a(Alpha), ctx.s(Beta)])?)?
                .sub(&mm(&[ctx.a(Beta), ctx.s(Alpha)])?)?;
            let proof = ctx.e(Beta).commutator(ctx.e(Alpha))?.matrix().clone();
            (Some(stmt), Some(proof))
        }
        LemmaId::L03 => {
            let general = pair_general(ctx, Beta, Gamma, false)?;
            let stmt = if branch == 0 { id } else { general.clone() };
            (Some(stmt), Some(general))
        }
        LemmaId::L04 => {
            let (a, s) = (|r| ctx.a(r), |r| ctx.s(r));
            let stmt = match branch {
                0 => {
                    // λ_kj = α_kl δ*_pq β_ij.
                    let lam = mm(&[a(Alpha), s(Delta), a(Beta)])?;
                    ctx.e_aux_form(&lam, HomKind::Alpha, ix.k, ix.j, ctx.e(Beta))?
                }
                1 => {
                    // ξ_pj = −δ_pq α*_kl β_ij.
                    let xi = mm(&[a(Delta), s(Alpha), a(Beta)])?.neg();
                    ctx.e_aux_form(&xi, HomKind::Alpha, ix.p, ix.j, ctx.e(Beta))?
                }
                _ => id.clone(),
            };
            let proof = match branch {
                0 => Series::new(id)
                    .minus(&mm(&[s(Beta), a(Delta), s(Alpha)])?)?
                    .plus(&mm(&[a(Alpha), s(Delta), a(Beta)])?)?
                    .plus_half(&mm(&[a(Alpha), s(Delta), a(Beta), s(Beta)])?)?
                    .minus_half(&mm(&[a(Beta), s(Beta), a(Delta), s(Alpha)])?)?
                    .minus_half(&mm(&[a(Alpha), s(Delta), a(Beta), s(Beta), a(Delta), s(Alpha)])?)?
                    .done(),
                1 => Series::new(id)
                    .plus(&mm(&[s(Beta), a(Alpha), s(Delta)])?)?
                    .plus_half(&mm(&[a(Beta), s(Beta), a(Alpha), s(Delta)])?)?
                    .minus_half(&mm(&[a(Delta), s(Alpha), a(Beta), s(Beta)])?)?
                    .minus(&mm(&[a(Delta), s(Alpha), a(Beta)])?)?
                    .minus_half(&mm(&[a(Delta), s(Alpha), a(Beta), s(Beta), a(Alpha), s(Delta)])?)?
                    .done(),
                _ => id,
            };
            (Some(stmt), Some(proof))
        }
        LemmaId::L05 => {
            let (a, s) = (|r| ctx.a(r), |r| ctx.s(r));
            let stmt = match branch {
                0 => {
                    // μ_kj = δ_kl β*_pq α_ij.
                    let mu = mm(&[a(Delta), s(Beta), a(Alpha)])?;
                    ctx.e_aux_form(&mu, HomKind::Alpha, ix.k, ix.j, ctx.e(Alpha))?
                }
                _ => id.clone(),
            };
            let proof = match branch {
                0 => Series::new(id)
                    .minus(&mm(&[s(Alpha), a(Beta), s(Delta)])?)?
                    .plus(&mm(&[a(Delta), s(Beta), a(Alpha)])?)?
                    .plus_half(&mm(&[a(Delta), s(Beta), a(Alpha), s(Alpha)])?)?
                    .minus_half(&mm(&[a(Delta), s(Beta), a(Alpha), s(Alpha), a(Beta), s(Delta)])?)?
                    .minus_half(&mm(&[a(Alpha), s(Alpha), a(Beta), s(Delta)])?)?
                    .plus(&mm(&[s(Alpha), a(Beta), s(Delta), a(Beta), s(Delta)])?)?
                    .done(),
                _ => id,
            };
            (Some(stmt), Some(proof))
        }
        LemmaId::L06 => {
            let (a, s) = (|r| ctx.a(r), |r| ctx.s(r));
            // ν_pj = −γ_pq α*_kl β_ij. The statement places the E_ν form in
            // the i=p branch; the proof derives it in the i=k branch.
            let stmt = match branch {
                0 => {
                    let nu = mm(&[a(Gamma), s(Alpha), a(Beta)])?.neg();
                    ctx.e_aux_form(&nu, HomKind::Beta, ix.p, ix.j, ctx.e(Beta))?
                }
                _ => id.clone(),
            };
            let proof = match branch {
                1 => Series::new(id)
                    .plus(&mm(&[s(Beta), a(Alpha), s(Gamma)])?)?
                    .minus(&mm(&[a(Gamma), s(Alpha), a(Beta)])?)?
                    .minus_half(&mm(&[a(Gamma), s(Alpha), a(Beta), s(Beta)])?)?
                    .plus_half(&mm(&[a(Beta), s(Beta), a(Alpha), s(Gamma)])?)?
                    .minus_half(&mm(&[a(Gamma), s(Alpha), a(Beta), s(Beta), a(Alpha), s(Gamma)])?)?
                    .done(),
                _ => id,
            };
            (Some(stmt), Some(proof))
        }
        LemmaId::L07 => {
            let (a, s) = (|r| ctx.a(r), |r| ctx.s(r));
            let stmt = match branch {
                0 => {
                    // η_kj = β_kl γ*_pq α_ij.
                    let eta = mm(&[a(Beta), s(Gamma), a(Alpha)])?;
                    ctx.e_aux_form(&eta, HomKind::Beta, ix.k, ix.j, ctx.e(Alpha))?
                }
                1 => {
                    // ϑ_pj = γ_pq β*_kl α_ij.
                    let theta = mm(&[a(Gamma), s(Beta), a(Alpha)])?;
                    ctx.e_aux_form(&theta, HomKind::Beta, ix.p, ix.j, ctx.e(Alpha))?
                }
                _ => id.clone(),
            };
            let proof = match branch {
                0 => Series::new(id)
                    .minus(&mm(&[s(Alpha), a(Gamma), s(Beta)])?)?
                    .minus_half(&mm(&[a(Alpha), s(Alpha), a(Gamma), s(Beta)])?)?
                    .plus(&mm(&[a(Beta), s(Gamma), a(Alpha)])?)?
                    .plus_half(&mm(&[a(Beta), s(Gamma), a(Alpha), s(Alpha)])?)?
                    .minus_half(&mm(&[a(Beta), s(Gamma), a(Alpha), s(Alpha), a(Gamma), s(Beta)])?)?
                    .done(),
                1 => Series::new(id)
                    .minus(&mm(&[a(Gamma), s(Beta), a(Alpha)])?)?
                    .plus(&mm(&[s(Alpha), a(Beta), s(Gamma)])?)?
                    .plus_half(&mm(&[a(Alpha), s(Alpha), a(Beta), s(Gamma)])?)?
                    .minus_half(&mm(&[a(Gamma), s(Beta), a(Alpha), s(Alpha)])?)?
                    .minus_half(&mm(&[a(Gamma), s(Beta), a(Alpha), s(Alpha), a(Beta), s(Gamma)])?)?
                    .done(),
                _ => id,
            };
            (Some(stmt), Some(proof))
        }
        LemmaId::L08 => {
            let e1 = ctx.e_block(&mm(&[ctx.a(Mu), ctx.s(Alpha)])?)?;
            let e2 = ctx.e_block(&mm(&[ctx.a(Beta), ctx.s(Gamma)])?)?;
            let e3 = ctx.e_block(&mm(&[ctx.a(Gamma), ctx.s(Beta)])?)?;
            let stmt = match branch {
                0 => e1.commutator(&e2)?.matrix().clone(),
                1 => e3.commutator(&e1)?.matrix().clone(),
                _ => id.clone(),
            };
            // The displayed general series (the factored-product rendering
            // can collapse when both factors are non-trivial).
            let x1 = mm(&[ctx.a(Gamma), ctx.s(Beta), ctx.a(Alpha), ctx.s(Mu)])?;
            let x2 = mm(&[ctx.a(Mu), ctx.s(Alpha), ctx.a(Gamma), ctx.s(Beta)])?;
            let x3 = mm(&[ctx.a(Beta), ctx.s(Gamma), ctx.a(Alpha), ctx.s(Mu)])?;
            let x4 = mm(&[ctx.a(Mu), ctx.s(Alpha), ctx.a(Beta), ctx.s(Gamma)])?;
            let proof = Series::new(id)
                .minus(&x1)?
                .minus(&x2)?
                .plus(&x3)?
                .plus(&x4)?
                .done();
            (Some(stmt), Some(proof))
        }
        LemmaId::L09 => {
            let da = ctx.e_block(&mm(&[ctx.a(Delta), ctx.s(Alpha)])?)?;
            let ad = ctx.e_block(&mm(&[ctx.a(Alpha), ctx.s(Delta)])?)?;
            let xb = ctx.e_block(&mm(&[ctx.a(Xi), ctx.s(Beta)])?)?;
            let stmt = match branch {
                0 => da.commutator(&xb)?.matrix().clone(),
                1 => ad.commutator(&xb)?.matrix().clone(),
                _ => id.clone(),
            };
            // The displayed general series (its factored-product rendering
            // collapses when both factors are non-trivial, so the series is
            // the authoritative proof form).
            let x1 = mm(&[ctx.a(Delta), ctx.s(Alpha), ctx.a(Beta), ctx.s(Xi)])?;
            let x2 = mm(&[ctx.a(Alpha), ctx.s(Delta), ctx.a(Beta), ctx.s(Xi)])?;
            let x3 = mm(&[ctx.a(Xi), ctx.s(Beta), ctx.a(Delta), ctx.s(Alpha)])?;
            let x4 = mm(&[ctx.a(Xi), ctx.s(Beta), ctx.a(Alpha), ctx.s(Delta)])?;
            let x5 = mm(&[&x3, &mm(&[ctx.a(Beta), ctx.s(Xi)])?])?;
            let x6 = mm(&[&x4, &mm(&[ctx.a(Beta), ctx.s(Xi)])?])?;
            let proof = Series::new(id)
                .plus(&x1)?
                .minus(&x2)?
                .plus(&x3)?
                .minus(&x4)?
                .minus(&x5)?
                .plus(&x6)?
                .done();
            (Some(stmt), Some(proof))
        }
        LemmaId::L10 => {
            let p1 = mm(&[ctx.a(Beta), ctx.s(Alpha)])?;
            let p2 = mm(&[ctx.a(Alpha), ctx.s(Beta)])?;
            let p3 = mm(&[ctx.a(Gamma), ctx.s(Delta)])?;
            let p4 = mm(&[ctx.a(Delta), ctx.s(Gamma)])?;
            let stmt = match branch {
                0 => Some(
                    ctx.e_block(&p2)?
                        .commutator(&ctx.e_block(&p3)?)?
                        .inverse()
                        .matrix()
                        .clone(),
                ),
                1 => Some(
                    ctx.e_block(&p4)?
                        .commutator(&ctx.e_block(&p1)?)?
                        .matrix()
                        .clone(),
                ),
                2 => Some(id.clone()),
                _ => None,
            };
            let proof = Series::new(id)
                .plus(&mm(&[&p1, &p3])?)?
                .plus(&mm(&[&p2, &p4])?)?
                .minus(&mm(&[&p3, &p1])?)?
                .plus(&mm(&[&p2, &p4, &p2])?)?
                .plus(&mm(&[&p2, &p4, &p2, &p4])?)?
                .minus(&mm(&[&p4, &p2, &p4])?)?
                .minus(&mm(&[&p1, &p3, &p1])?)?
                .minus(&mm(&[&p4, &p2])?)?
                .plus(&mm(&[&p3, &p1, &p3])?)?
                .plus(&mm(&[&p1, &p3, &p1, &p3])?)?
                .done();
            (stmt, Some(proof))
        }
        LemmaId::L11 | LemmaId::L12 => (Some(id.clone()), Some(id)),
        LemmaId::L13 => {
            let d1 = mm(&[ctx.a(Delta), ctx.s(Alpha)])?;
            let d2 = mm(&[ctx.a(Alpha), ctx.s(Delta)])?;
            let g1 = mm(&[ctx.a(Gamma), ctx.s(Beta)])?;
            let g2 = mm(&[ctx.a(Beta), ctx.s(Gamma)])?;
            // The statement reuses the previous lemma's branch formulas
            // verbatim, so it names the components β_kl and δ_rs even though
            // this bracket's inputs are β_rs and δ_kl.
            let beta_kl = case.component_at(Beta, ix.k, ix.l)?;
            let delta_rs = case.component_at(Delta, ix.r, ix.s)?;
            let stmt = match branch {
                0 => {
                    let left = ctx.a(Alpha).mul(&case.amb.ambient_star(&beta_kl)?)?;
                    let right = ctx.a(Gamma).mul(&case.amb.ambient_star(&delta_rs)?)?;
                    Some(
                        ctx.e_block(&left)?
                            .commutator(&ctx.e_block(&right)?)?
                            .inverse()
                            .matrix()
                            .clone(),
                    )
                }
                1 => {
                    let left = case.amb.ambient_hom(&delta_rs)?.mul(ctx.s(Gamma))?;
                    let right = case.amb.ambient_hom(&beta_kl)?.mul(ctx.s(Alpha))?;
                    Some(
                        ctx.e_block(&left)?
                            .commutator(&ctx.e_block(&right)?)?
                            .matrix()
                            .clone(),
                    )
                }
                2 => Some(id.clone()),
                _ => None,
            };
            let proof = match branch {
                0 => ctx
                    .e_block(&d2)?
                    .commutator(&ctx.e_block(&g1)?)?
                    .inverse()
                    .matrix()
                    .clone(),
                1 => ctx
                    .e_block(&d1)?
                    .commutator(&ctx.e_block(&g2)?)?
                    .inverse()
                    .matrix()
                    .clone(),
                2 => {
                    if ix.i == ix.r && ix.k == ix.p {
                        // Neither reduction of the second expansion applies.
                        Series::new(id)
                            .minus(&mm(&[&d1, &g2])?)?
                            .minus(&mm(&[&d2, &g1])?)?
                            .plus(&mm(&[&g1, &d2])?)?
                            .plus(&mm(&[&g2, &d1])?)?
                            .minus(&mm(&[&g1, &d2, &g1])?)?
                            .plus(&mm(&[&g2, &d1, &g2])?)?
                            .plus(&mm(&[&d1, &g2, &d1])?)?
                            .minus(&mm(&[&d2, &g1, &d2])?)?
                            .plus(&mm(&[&d1, &g2, &d2, &g1])?)?
                            .plus(&mm(&[&d1, &g2, &d1, &g2])?)?
                            .plus(&mm(&[&d2, &g1, &d2, &g1])?)?
                            .done()
                    } else if ix.k == ix.p {
                        ctx.e_block(&d2)?
                            .commutator(&ctx.e_block(&g2)?)?
                            .matrix()
                            .clone()
                    } else {
                        ctx.e_block(&d1)?
                            .commutator(&ctx.e_block(&g1)?)?
                            .matrix()
                            .clone()
                    }
                }
                _ => {
                    // k=r and i=p: the first expansion with no reduction.
                    Series::new(id)
                        .plus(&mm(&[&d1, &g1])?)?
                        .plus(&mm(&[&d2, &g2])?)?
                        .minus(&mm(&[&g1, &d1])?)?
                        .minus(&mm(&[&g2, &d2])?)?
                        .minus(&mm(&[&g2, &d2, &g2])?)?
                        .plus(&mm(&[&g1, &d1, &g1])?)?
                        .minus(&mm(&[&d1, &g1, &d1])?)?
                        .plus(&mm(&[&d2, &g2, &d2])?)?
                        .plus(&mm(&[&d2, &g2, &d2, &g2])?)?
                        .plus(&mm(&[&d1, &g1, &d1, &g1])?)?
                        .plus(&mm(&[&d2, &g2, &d1, &g1])?)?
                        .done()
                }
            };
            (stmt, Some(proof))
        }
        // Corollaries never reach this function.
        _ => unreachable!("corollaries are handled by corollary_sides"),
    };
    Ok(forms)
}

fn status_of(lhs: &Matrix, stmt: Option<&Matrix>, proof: Option<&Matrix>) -> Status {
    let m_s = stmt.map(|m| m == lhs);
    let m_p = proof.map(|m| m == lhs);
    match (m_s, m_p) {
        (Some(true), Some(true)) | (Some(true), None) => Status::MatchesBoth,
        (Some(true), Some(false)) => Status::MatchesStatementOnly,
        (Some(false), Some(true)) => Status::MatchesProofOnly,
        (Some(false), _) | (None, Some(false)) => Status::MatchesNeither,
        (None, _) => Status::StatementAbsent,
    }
}

/// Evaluates a case and compares the brute-force left-hand side with the
/// statement and proof right-hand sides. `negative_control` corrupts one
/// sign in the shared general pair formula of the first lemma, as a
/// self-test of the harness.
pub fn check_case(
    case: &IdentityCase,
    negative_control: bool,
) -> Result<Verdict, IdentityError> {
    let ctx = Ctx::new(case)?;
    let (lhs, stmt, proof) = if case.lemma.is_corollary() {
        let (side1, side2) = corollary_sides(&ctx)?;
        let lhs = side1.eval()?.matrix().clone();
        let stmt = side2.eval()?.matrix().clone();
        (lhs, Some(stmt), None)
    } else {
        let lhs = lhs_expr(&ctx).eval()?.matrix().clone();
        let (stmt, proof) = closed_forms(&ctx, negative_control)?;
        (lhs, stmt, proof)
    };
    let status = status_of(&lhs, stmt.as_ref(), proof.as_ref());
    Ok(Verdict {
        lemma: case.lemma,
        indices: case.indices,
        branch: case.branch,
        status,
        lhs,
        rhs_statement: stmt,
        rhs_proof: proof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{enumerate_cases, random_case, symbolic_case, ALL_LEMMAS};
    use crate::ring::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expected_ok(lemma: LemmaId, branch_label: &str, status: Status) -> bool {
        match status {
            Status::MatchesBoth => true,
            // The documented statement/proof disagreements: the L06/L07
            // statements assign the i=k branch forms to the wrong case, and
            // the L13 statement names block indices that do not match its own
            // hypothesis list, so only its proof forms are expected to match.
            // the L09 statement's i=p reduction names the inverse of the
            // bracket the general series actually reduces to,
            Status::MatchesProofOnly => {
                (matches!(lemma, LemmaId::L06 | LemmaId::L07) && branch_label == "i=k")
                    || (lemma == LemmaId::L09 && branch_label == "i=p")
                    || lemma == LemmaId::L13
            }
            Status::StatementAbsent => {
                matches!(lemma, LemmaId::L10 | LemmaId::L13) && branch_label == "k=r,i=p"
            }
            _ => false,
        }
    }

    #[test]
    fn symbolic_spot_checks() {
        // One representative tuple per branch for a cross-section of lemmas.
        for lemma in [
            LemmaId::L01,
            LemmaId::L02,
            LemmaId::R01,
            LemmaId::L03,
            LemmaId::L04,
            LemmaId::L06,
            LemmaId::C01,
            LemmaId::C04,
        ] {
            let m = lemma.required_m();
            let cases = enumerate_cases(m, 2, lemma).unwrap();
            let mut seen = vec![false; lemma.branches().len()];
            for (ix, branch) in cases {
                if seen[branch] {
                    continue;
                }
                seen[branch] = true;
                let case = symbolic_case(lemma, ix, m, 2).unwrap();
                let verdict = check_case(&case, false).unwrap();
                assert!(
                    expected_ok(lemma, verdict.branch_label(), verdict.status),
                    "{} {} [{}]: {}",
                    lemma.name(),
                    ix.describe(lemma.arity()),
                    verdict.branch_label(),
                    verdict.status,
                );
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn random_modular_all_lemmas() {
        let ring = Ring::modular(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for lemma in ALL_LEMMAS {
            let m = lemma.required_m().max(3);
            let cases = enumerate_cases(m, 2, lemma).unwrap();
            let mut seen = vec![0usize; lemma.branches().len()];
            for (ix, branch) in cases {
                if seen[branch] >= 2 {
                    continue;
                }
                seen[branch] += 1;
                let case = random_case(lemma, ix, m, 2, &ring, &mut rng).unwrap();
                let verdict = check_case(&case, false).unwrap();
                assert!(
                    expected_ok(lemma, verdict.branch_label(), verdict.status),
                    "{} {} [{}]: {}",
                    lemma.name(),
                    ix.describe(lemma.arity()),
                    verdict.branch_label(),
                    verdict.status,
                );
            }
        }
    }

    #[test]
    fn negative_control_flips_l01() {
        let cases = enumerate_cases(2, 1, LemmaId::L01).unwrap();
        for (ix, branch) in cases {
            let case = symbolic_case(LemmaId::L01, ix, 2, 1).unwrap();
            let verdict = check_case(&case, true).unwrap();
            if branch == 1 {
                // Both sides use the corrupted formula.
                assert_eq!(verdict.status, Status::MatchesNeither);
            } else {
                // The i=k statement is the identity and stays correct.
                assert_eq!(verdict.status, Status::MatchesStatementOnly);
            }
        }
    }

    #[test]
    fn lhs_word_lengths() {
        let ix_pair = crate::identities::Indices {
            i: 1,
            j: 1,
            k: 2,
            l: 1,
            ..Default::default()
        };
        let pair = symbolic_case(LemmaId::L02, ix_pair, 2, 1).unwrap();
        assert_eq!(lhs_expression(&pair).unwrap().word_length(), 4);

        let ix_quad = crate::identities::Indices {
            i: 1,
            j: 1,
            k: 2,
            l: 1,
            p: 3,
            q: 1,
            r: 4,
            s: 1,
        };
        let quad = symbolic_case(LemmaId::L10, ix_quad, 4, 1).unwrap();
        assert_eq!(lhs_expression(&quad).unwrap().word_length(), 16);
    }
}
