//! The commutator-identity catalog.
//!
//! Every pairwise, triple, and four-fold commutator identity of the source
//! material is recorded here twice: once as its *statement* right-hand side
//! and once as its *proof* right-hand side (the two occasionally disagree on
//! branch labels, and the verdict machinery reports which one the brute-force
//! oracle confirms). Submodules:
//!
//! * [`self`] — lemma ids, index tuples, branch predicates, enumeration;
//! * [`instance`] — symbolic and randomized instantiation of the Hom maps;
//! * [`check`] — closed-form construction and the oracle comparison;
//! * [`suite`] — the batch runner producing deterministic reports.

mod check;
mod instance;
mod suite;

pub use check::{check_case, lhs_expression, Status, Verdict};
pub use instance::{random_case, symbolic_case, IdentityCase, MapInstance, Scalars};
pub use suite::{
    verify_suite, BranchSummary, LemmaReport, Mode, RingChoice, SuiteConfig, SuiteReport,
    VerdictRecord,
};

use std::fmt;

use thiserror::Error;

use crate::dser::{DserError, HomKind};
use crate::linalg::LinalgError;
use crate::quadform::QuadformError;
use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("indices violate the lemma's side conditions")]
    ConstraintViolated,
    #[error("{lemma} needs m ≥ {required} (got m = {m}): branch `{branch}` is unreachable")]
    RankTooSmall {
        lemma: LemmaId,
        m: usize,
        required: usize,
        branch: &'static str,
    },
    #[error(transparent)]
    Dser(#[from] DserError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quadform(#[from] QuadformError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Closed enumeration of every statement in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    L01,
    C01,
    L02,
    C02,
    R01,
    L03,
    C03,
    L04,
    C04,
    L05,
    C05,
    L06,
    C06,
    L07,
    C07,
    L08,
    L09,
    L10,
    L11,
    L12,
    L13,
}

pub const ALL_LEMMAS: [LemmaId; 21] = [
    LemmaId::L01,
    LemmaId::C01,
    LemmaId::L02,
    LemmaId::C02,
    LemmaId::R01,
    LemmaId::L03,
    LemmaId::C03,
    LemmaId::L04,
    LemmaId::C04,
    LemmaId::L05,
    LemmaId::C05,
    LemmaId::L06,
    LemmaId::C06,
    LemmaId::L07,
    LemmaId::C07,
    LemmaId::L08,
    LemmaId::L09,
    LemmaId::L10,
    LemmaId::L11,
    LemmaId::L12,
    LemmaId::L13,
];

/// How many map slots (and thus index letters) a lemma uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Pair,
    Triple,
    Quad,
}

/// Which index pair a map is attached to: `(i,j)`, `(k,l)`, `(p,q)`, `(r,s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    IJ,
    KL,
    PQ,
    RS,
}

/// The named Hom maps appearing across the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Alpha,
    Delta,
    Xi,
    Mu,
    Beta,
    Gamma,
    Eta,
    Nu,
}

impl Role {
    /// Symbolic variable stem for the role's defining vector.
    pub(crate) fn var_name(self) -> &'static str {
        match self {
            Role::Alpha => "w",
            Role::Delta => "t",
            Role::Xi => "u",
            Role::Mu => "g",
            Role::Beta => "v",
            Role::Gamma => "c",
            Role::Eta => "h",
            Role::Nu => "y",
        }
    }
}

/// A full tuple of the eight index letters; slots a lemma does not use
/// stay 0 and are never read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Indices {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl Indices {
    pub fn row(&self, slot: Slot) -> usize {
        match slot {
            Slot::IJ => self.i,
            Slot::KL => self.k,
            Slot::PQ => self.p,
            Slot::RS => self.r,
        }
    }

    pub fn col(&self, slot: Slot) -> usize {
        match slot {
            Slot::IJ => self.j,
            Slot::KL => self.l,
            Slot::PQ => self.q,
            Slot::RS => self.s,
        }
    }

    pub fn describe(&self, arity: Arity) -> String {
        match arity {
            Arity::Pair => format!("i={} j={} k={} l={}", self.i, self.j, self.k, self.l),
            Arity::Triple => format!(
                "i={} j={} k={} l={} p={} q={}",
                self.i, self.j, self.k, self.l, self.p, self.q
            ),
            Arity::Quad => format!(
                "i={} j={} k={} l={} p={} q={} r={} s={}",
                self.i, self.j, self.k, self.l, self.p, self.q, self.r, self.s
            ),
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl LemmaId {
    pub fn name(self) -> &'static str {
        match self {
            LemmaId::L01 => "L01",
            LemmaId::C01 => "C01",
            LemmaId::L02 => "L02",
            LemmaId::C02 => "C02",
            LemmaId::R01 => "R01",
            LemmaId::L03 => "L03",
            LemmaId::C03 => "C03",
            LemmaId::L04 => "L04",
            LemmaId::C04 => "C04",
            LemmaId::L05 => "L05",
            LemmaId::C05 => "C05",
            LemmaId::L06 => "L06",
            LemmaId::C06 => "C06",
            LemmaId::L07 => "L07",
            LemmaId::C07 => "C07",
            LemmaId::L08 => "L08",
            LemmaId::L09 => "L09",
            LemmaId::L10 => "L10",
            LemmaId::L11 => "L11",
            LemmaId::L12 => "L12",
            LemmaId::L13 => "L13",
        }
    }

    pub fn parse(s: &str) -> Option<LemmaId> {
        let upper = s.trim().to_ascii_uppercase();
        ALL_LEMMAS.iter().copied().find(|l| l.name() == upper)
    }

    pub fn is_corollary(self) -> bool {
        matches!(
            self,
            LemmaId::C01
                | LemmaId::C02
                | LemmaId::C03
                | LemmaId::C04
                | LemmaId::C05
                | LemmaId::C06
                | LemmaId::C07
        )
    }

    pub fn arity(self) -> Arity {
        match self {
            LemmaId::L01
            | LemmaId::C01
            | LemmaId::L02
            | LemmaId::C02
            | LemmaId::R01
            | LemmaId::L03
            | LemmaId::C03 => Arity::Pair,
            LemmaId::L04
            | LemmaId::C04
            | LemmaId::L05
            | LemmaId::C05
            | LemmaId::L06
            | LemmaId::C06
            | LemmaId::L07
            | LemmaId::C07 => Arity::Triple,
            _ => Arity::Quad,
        }
    }

    /// Distinct row indices the lemma's enumeration contract demands.
    pub fn required_m(self) -> usize {
        match self.arity() {
            Arity::Pair => 2,
            Arity::Triple => 3,
            Arity::Quad => 4,
        }
    }

    /// A branch that motivates `required_m` (reported by `RankTooSmall`).
    fn widest_branch(self) -> &'static str {
        match self.arity() {
            Arity::Pair => "i!=k",
            Arity::Triple => "i!=p,i!=k",
            Arity::Quad => "otherwise",
        }
    }

    /// The named Hom maps of the lemma, in the order they appear in its
    /// bracket, with their types and index slots.
    pub fn roles(self) -> &'static [(Role, HomKind, Slot)] {
        use HomKind::{Alpha as A, Beta as B};
        use Slot::*;
        match self {
            LemmaId::L01 | LemmaId::C01 => &[(Role::Alpha, A, IJ), (Role::Delta, A, KL)],
            LemmaId::L02 | LemmaId::C02 | LemmaId::R01 => {
                &[(Role::Alpha, A, IJ), (Role::Beta, B, KL)]
            }
            LemmaId::L03 | LemmaId::C03 => &[(Role::Beta, B, IJ), (Role::Gamma, B, KL)],
            LemmaId::L04 | LemmaId::C04 => &[
                (Role::Beta, B, IJ),
                (Role::Alpha, A, KL),
                (Role::Delta, A, PQ),
            ],
            LemmaId::L05 | LemmaId::C05 => &[
                (Role::Alpha, A, IJ),
                (Role::Delta, A, KL),
                (Role::Beta, B, PQ),
            ],
            LemmaId::L06 => &[
                (Role::Beta, B, IJ),
                (Role::Alpha, A, KL),
                (Role::Gamma, B, PQ),
            ],
            LemmaId::C06 => &[
                (Role::Beta, B, IJ),
                (Role::Gamma, B, KL),
                (Role::Alpha, A, PQ),
            ],
            LemmaId::L07 | LemmaId::C07 => &[
                (Role::Alpha, A, IJ),
                (Role::Beta, B, KL),
                (Role::Gamma, B, PQ),
            ],
            LemmaId::L08 => &[
                (Role::Beta, B, IJ),
                (Role::Gamma, B, KL),
                (Role::Alpha, A, RS),
                (Role::Mu, B, PQ),
            ],
            LemmaId::L09 => &[
                (Role::Alpha, A, IJ),
                (Role::Delta, A, KL),
                (Role::Xi, A, RS),
                (Role::Beta, B, PQ),
            ],
            LemmaId::L10 => &[
                (Role::Alpha, A, IJ),
                (Role::Beta, B, KL),
                (Role::Delta, A, RS),
                (Role::Gamma, B, PQ),
            ],
            LemmaId::L11 => &[
                (Role::Alpha, A, IJ),
                (Role::Delta, A, KL),
                (Role::Xi, A, RS),
                (Role::Mu, A, PQ),
            ],
            LemmaId::L12 => &[
                (Role::Beta, B, IJ),
                (Role::Gamma, B, KL),
                (Role::Eta, B, RS),
                (Role::Nu, B, PQ),
            ],
            LemmaId::L13 => &[
                (Role::Alpha, A, IJ),
                (Role::Delta, A, KL),
                (Role::Beta, B, RS),
                (Role::Gamma, B, PQ),
            ],
        }
    }

    /// Side conditions on the index letters.
    pub fn admissible(self, ix: &Indices) -> bool {
        match self {
            LemmaId::L01 | LemmaId::C01 | LemmaId::L03 | LemmaId::C03 => true,
            LemmaId::L02 | LemmaId::C02 | LemmaId::R01 => ix.i != ix.k,
            LemmaId::L04 | LemmaId::L05 | LemmaId::L06 | LemmaId::L07 => ix.k != ix.p,
            LemmaId::C04 | LemmaId::C06 | LemmaId::C07 => ix.i != ix.k && ix.k != ix.p,
            LemmaId::C05 => ix.i != ix.p && ix.k != ix.p,
            LemmaId::L08
            | LemmaId::L09
            | LemmaId::L10
            | LemmaId::L11
            | LemmaId::L12
            | LemmaId::L13 => ix.i != ix.k && ix.r != ix.p,
        }
    }

    /// Branch predicates, in statement order.
    pub fn branches(self) -> &'static [&'static str] {
        match self {
            LemmaId::L01 | LemmaId::L03 => &["i=k", "i!=k"],
            LemmaId::L02 | LemmaId::R01 => &["i!=k"],
            LemmaId::L04 | LemmaId::L05 | LemmaId::L06 | LemmaId::L07 => {
                &["i=p", "i=k", "i!=p,i!=k"]
            }
            LemmaId::L08 => &["k=r", "i=r", "otherwise"],
            LemmaId::L09 => &["i=p", "k=p", "otherwise"],
            LemmaId::L10 | LemmaId::L13 => {
                &["k=r,i!=p", "i=p,k!=r", "k!=r,i!=p", "k=r,i=p"]
            }
            LemmaId::L11 | LemmaId::L12 => &["all"],
            _ => &["all"], // corollaries
        }
    }

    /// Which branch an admissible tuple satisfies (index into `branches`).
    pub fn branch_of(self, ix: &Indices) -> usize {
        debug_assert!(self.admissible(ix));
        match self {
            LemmaId::L01 | LemmaId::L03 => usize::from(ix.i != ix.k),
            LemmaId::L02 | LemmaId::R01 => 0,
            LemmaId::L04 | LemmaId::L05 | LemmaId::L06 | LemmaId::L07 => {
                if ix.i == ix.p {
                    0
                } else if ix.i == ix.k {
                    1
                } else {
                    2
                }
            }
            LemmaId::L08 => {
                if ix.k == ix.r {
                    0
                } else if ix.i == ix.r {
                    1
                } else {
                    2
                }
            }
            LemmaId::L09 => {
                if ix.i == ix.p {
                    0
                } else if ix.k == ix.p {
                    1
                } else {
                    2
                }
            }
            LemmaId::L10 | LemmaId::L13 => match (ix.k == ix.r, ix.i == ix.p) {
                (true, false) => 0,
                (false, true) => 1,
                (false, false) => 2,
                (true, true) => 3,
            },
            _ => 0,
        }
    }
}

/// All admissible index tuples at size `(m, n)`, in lexicographic order on
/// `(i, j, k, l, p, q, r, s)`, each labeled with its branch index.
pub fn enumerate_cases(
    m: usize,
    n: usize,
    lemma: LemmaId,
) -> Result<Vec<(Indices, usize)>, IdentityError> {
    if m < lemma.required_m() || n < 1 {
        return Err(IdentityError::RankTooSmall {
            lemma,
            m,
            required: lemma.required_m(),
            branch: lemma.widest_branch(),
        });
    }
    let arity = lemma.arity();
    let mut out = Vec::new();
    let rows = 1..=m;
    for i in rows.clone() {
        for j in 1..=n {
            for k in rows.clone() {
                for l in 1..=n {
                    match arity {
                        Arity::Pair => {
                            let ix = Indices {
                                i,
                                j,
                                k,
                                l,
                                ..Default::default()
                            };
                            if lemma.admissible(&ix) {
                                let b = lemma.branch_of(&ix);
                                out.push((ix, b));
                            }
                        }
                        Arity::Triple => {
                            for p in rows.clone() {
                                for q in 1..=n {
                                    let ix = Indices {
                                        i,
                                        j,
                                        k,
                                        l,
                                        p,
                                        q,
                                        ..Default::default()
                                    };
                                    if lemma.admissible(&ix) {
                                        let b = lemma.branch_of(&ix);
                                        out.push((ix, b));
                                    }
                                }
                            }
                        }
                        Arity::Quad => {
                            for p in rows.clone() {
                                for q in 1..=n {
                                    for r in rows.clone() {
                                        for s in 1..=n {
                                            let ix = Indices { i, j, k, l, p, q, r, s };
                                            if lemma.admissible(&ix) {
                                                let b = lemma.branch_of(&ix);
                                                out.push((ix, b));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_names_round_trip() {
        for l in ALL_LEMMAS {
            assert_eq!(LemmaId::parse(l.name()), Some(l));
            assert_eq!(LemmaId::parse(&l.name().to_lowercase()), Some(l));
        }
        assert_eq!(LemmaId::parse("L99"), None);
    }

    #[test]
    fn enumerate_l01_small() {
        // m=2, n=1: 4 tuples, branches i=k and i!=k each twice.
        let cases = enumerate_cases(2, 1, LemmaId::L01).unwrap();
        assert_eq!(cases.len(), 4);
        let eq: usize = cases.iter().filter(|(_, b)| *b == 0).count();
        let ne: usize = cases.iter().filter(|(_, b)| *b == 1).count();
        assert_eq!((eq, ne), (2, 2));
    }

    #[test]
    fn enumerate_l04_pigeonhole() {
        // m=2 with k != p forces i ∈ {k, p}: the "i!=p,i!=k" branch is empty
        // (and the size is rejected outright by the rank contract).
        assert!(matches!(
            enumerate_cases(2, 1, LemmaId::L04),
            Err(IdentityError::RankTooSmall { required: 3, .. })
        ));
        let cases = enumerate_cases(3, 1, LemmaId::L04).unwrap();
        assert!(cases.iter().any(|(_, b)| *b == 2));
    }

    #[test]
    fn enumerate_l08_all_distinct_exists() {
        let cases = enumerate_cases(4, 1, LemmaId::L08).unwrap();
        assert!(cases.iter().any(|(ix, b)| {
            *b == 2
                && ix.i != ix.k
                && ix.i != ix.r
                && ix.i != ix.p
                && ix.k != ix.r
                && ix.k != ix.p
                && ix.r != ix.p
        }));
        assert!(matches!(
            enumerate_cases(3, 1, LemmaId::L08),
            Err(IdentityError::RankTooSmall { .. })
        ));
    }

    #[test]
    fn branch_coverage_at_suite_size() {
        // Every branch of every lemma is hit at m=4, n=3.
        for lemma in ALL_LEMMAS {
            let cases = enumerate_cases(4, 3, lemma).unwrap();
            for b in 0..lemma.branches().len() {
                assert!(
                    cases.iter().any(|(_, br)| *br == b),
                    "{} branch {} uncovered",
                    lemma.name(),
                    lemma.branches()[b]
                );
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let cases = enumerate_cases(2, 2, LemmaId::L02).unwrap();
        let key = |ix: &Indices| (ix.i, ix.j, ix.k, ix.l);
        for w in cases.windows(2) {
            assert!(key(&w[0].0) < key(&w[1].0));
        }
    }
}
