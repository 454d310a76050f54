//! Exact-arithmetic construction of the elementary orthogonal transformations
//! `E_θ = I + θ − θ* − ½θθ*` on `Q ⊥ H(P)` over commutative rings with `½`,
//! together with a mechanical verifier for their commutator identities.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`] — exact ring backends (rationals, odd-prime residues, localized
//!   multivariate polynomials) with canonical equality;
//! * [`linalg`] — dense matrices over any backend, inversion, block embedding;
//! * [`quadform`] — quadratic spaces, hyperbolic spaces, the orthogonality test;
//! * [`dser`] — the ambient space `Q ⊥ H(P)` and the elementary generators;
//! * [`group`] — group elements with cached inverses and commutator words;
//! * [`identities`] — the catalog of commutator identities, case enumeration,
//!   closed forms, and the verification suite.

pub mod dser;
pub mod group;
pub mod identities;
pub mod linalg;
pub mod quadform;
pub mod ring;
