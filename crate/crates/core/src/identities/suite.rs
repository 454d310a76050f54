//! Batch verification across lemmas, branches, and instantiations.
//!
//! Runs are deterministic: cases are enumerated in a fixed order and every
//! randomized trial derives its own RNG seed from the suite seed together
//! with the lemma, branch, and trial number, so results are independent of
//! the parallel schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_case, enumerate_cases, random_case, symbolic_case, IdentityError, Indices, LemmaId,
    Status, ALL_LEMMAS,
};
use crate::ring::Ring;

/// Coefficient ring for the randomized modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingChoice {
    Rationals,
    Modular(u64),
}

impl RingChoice {
    fn build(self) -> Result<Ring, IdentityError> {
        Ok(match self {
            RingChoice::Rationals => Ring::rationals(),
            RingChoice::Modular(p) => Ring::modular(p)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Random,
    Both,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub lemmas: Vec<LemmaId>,
    pub ring: RingChoice,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub mode: Mode,
    pub negative_control: bool,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            lemmas: ALL_LEMMAS.to_vec(),
            ring: RingChoice::Modular(10007),
            m: 4,
            n: 3,
            seed: 0,
            trials: 8,
            mode: Mode::Random,
            negative_control: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchSummary {
    pub predicate: String,
    pub cases: u64,
    pub matches_both: u64,
    #[serde(rename = "proof_only")]
    pub matches_proof_only: u64,
    #[serde(rename = "statement_only")]
    pub matches_statement_only: u64,
    #[serde(rename = "neither")]
    pub matches_neither: u64,
    pub statement_absent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub id: String,
    pub branches: Vec<BranchSummary>,
}

/// A fully rendered verdict, kept for every `matches_neither` case.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub lemma: String,
    pub branch: String,
    pub indices: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub status: Status,
    pub lhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_statement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_proof: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub lemmas: Vec<LemmaReport>,
    pub failures: Vec<VerdictRecord>,
    pub total_cases: u64,
    pub neither_count: u64,
}

impl SuiteReport {
    /// True iff no case landed in `matches_neither`.
    pub fn all_confirmed(&self) -> bool {
        self.neither_count == 0
    }
}

#[derive(Clone, Copy)]
enum JobMode {
    Symbolic,
    Random { trial: usize },
}

struct Job {
    lemma_pos: usize,
    lemma: LemmaId,
    ix: Indices,
    branch: usize,
    mode: JobMode,
}

/// SplitMix64-style mix of the suite seed with a case's coordinates.
fn case_seed(seed: u64, lemma: LemmaId, branch: usize, trial: usize) -> u64 {
    let lemma_tag = ALL_LEMMAS.iter().position(|&l| l == lemma).unwrap() as u64;
    let mut z = seed
        ^ lemma_tag.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (branch as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
        ^ (trial as u64).wrapping_mul(0x94d0_49bb_1331_11eb);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn verify_suite(cfg: &SuiteConfig) -> Result<SuiteReport, IdentityError> {
    let mut jobs = Vec::new();
    for (lemma_pos, &lemma) in cfg.lemmas.iter().enumerate() {
        let cases = enumerate_cases(cfg.m, cfg.n, lemma)?;
        let branch_count = lemma.branches().len();
        let mut by_branch: Vec<Vec<Indices>> = vec![Vec::new(); branch_count];
        for (ix, branch) in cases {
            by_branch[branch].push(ix);
        }
        for (branch, tuples) in by_branch.iter().enumerate() {
            if tuples.is_empty() {
                continue;
            }
            if matches!(cfg.mode, Mode::Symbolic | Mode::Both) {
                jobs.push(Job {
                    lemma_pos,
                    lemma,
                    ix: tuples[0],
                    branch,
                    mode: JobMode::Symbolic,
                });
            }
            if matches!(cfg.mode, Mode::Random | Mode::Both) {
                for trial in 0..cfg.trials {
                    jobs.push(Job {
                        lemma_pos,
                        lemma,
                        ix: tuples[trial % tuples.len()],
                        branch,
                        mode: JobMode::Random { trial },
                    });
                }
            }
        }
    }

    let ring = cfg.ring.build()?;
    let verdicts: Vec<Result<super::Verdict, IdentityError>> = jobs
        .par_iter()
        .map(|job| {
            let case = match job.mode {
                JobMode::Symbolic => symbolic_case(job.lemma, job.ix, cfg.m, cfg.n)?,
                JobMode::Random { trial } => {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(case_seed(cfg.seed, job.lemma, job.branch, trial));
                    random_case(job.lemma, job.ix, cfg.m, cfg.n, &ring, &mut rng)?
                }
            };
            check_case(&case, cfg.negative_control)
        })
        .collect();

    let mut reports: Vec<LemmaReport> = cfg
        .lemmas
        .iter()
        .map(|l| LemmaReport {
            id: l.name().to_string(),
            branches: l
                .branches()
                .iter()
                .map(|p| BranchSummary {
                    predicate: (*p).to_string(),
                    cases: 0,
                    matches_both: 0,
                    matches_proof_only: 0,
                    matches_statement_only: 0,
                    matches_neither: 0,
                    statement_absent: 0,
                })
                .collect(),
        })
        .collect();
    let mut failures = Vec::new();
    let mut total = 0u64;
    let mut neither = 0u64;

    for (job, verdict) in jobs.iter().zip(verdicts) {
        let verdict = verdict?;
        let summary = &mut reports[job.lemma_pos].branches[job.branch];
        summary.cases += 1;
        total += 1;
        match verdict.status {
            Status::MatchesBoth => summary.matches_both += 1,
            Status::MatchesProofOnly => summary.matches_proof_only += 1,
            Status::MatchesStatementOnly => summary.matches_statement_only += 1,
            Status::MatchesNeither => summary.matches_neither += 1,
            Status::StatementAbsent => summary.statement_absent += 1,
        }
        if verdict.status == Status::MatchesNeither {
            neither += 1;
            let (mode, trial) = match job.mode {
                JobMode::Symbolic => ("symbolic", None),
                JobMode::Random { trial } => ("random", Some(trial)),
            };
            failures.push(VerdictRecord {
                lemma: job.lemma.name().to_string(),
                branch: job.lemma.branches()[job.branch].to_string(),
                indices: job.ix.describe(job.lemma.arity()),
                mode: mode.to_string(),
                trial,
                status: verdict.status,
                lhs: verdict.lhs.to_string(),
                rhs_statement: verdict.rhs_statement.as_ref().map(|m| m.to_string()),
                rhs_proof: verdict.rhs_proof.as_ref().map(|m| m.to_string()),
            });
        }
    }

    Ok(SuiteReport {
        lemmas: reports,
        failures,
        total_cases: total,
        neither_count: neither,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            lemmas: vec![LemmaId::L01, LemmaId::L02, LemmaId::C01],
            ring: RingChoice::Modular(10007),
            m: 2,
            n: 1,
            seed: 7,
            trials: 3,
            mode: Mode::Both,
            negative_control: false,
        }
    }

    #[test]
    fn suite_runs_clean() {
        let report = verify_suite(&small_config()).unwrap();
        assert!(report.all_confirmed());
        assert_eq!(report.lemmas.len(), 3);
        // L01 has two branches, each with 1 symbolic + 3 random cases.
        let l01 = &report.lemmas[0];
        assert_eq!(l01.branches.len(), 2);
        for b in &l01.branches {
            assert_eq!(b.cases, 4);
            assert_eq!(b.matches_both, 4);
        }
        assert!(report.failures.is_empty());
    }

    #[test]
    fn suite_is_deterministic() {
        let a = verify_suite(&small_config()).unwrap();
        let b = verify_suite(&small_config()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn negative_control_is_detected() {
        let mut cfg = small_config();
        cfg.negative_control = true;
        let report = verify_suite(&cfg).unwrap();
        assert!(!report.all_confirmed());
        assert!(report.failures.iter().all(|f| f.lemma == "L01"));
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn rank_too_small_surfaces() {
        let mut cfg = small_config();
        cfg.lemmas = vec![LemmaId::L08];
        cfg.m = 3;
        assert!(matches!(
            verify_suite(&cfg),
            Err(IdentityError::RankTooSmall { m: 3, required: 4, .. })
        ));
    }

    #[test]
    fn distinct_seeds_change_instances_not_verdicts() {
        let mut cfg = small_config();
        cfg.mode = Mode::Random;
        let a = verify_suite(&cfg).unwrap();
        cfg.seed = 8;
        let b = verify_suite(&cfg).unwrap();
        assert!(a.all_confirmed() && b.all_confirmed());
        assert_eq!(a.total_cases, b.total_cases);
    }
}
