//! Instances, verdicts and configuration.

use crate::semialg::{QeLimits, SemialgebraicSet};
use crate::spectral::RationalMatrix;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Debug)]
pub enum Source {
    Point(Vec<BigRational>),
    Set(SemialgebraicSet),
}

impl Source {
    pub fn as_set(&self) -> SemialgebraicSet {
        match self {
            Source::Point(p) => SemialgebraicSet::point(p),
            Source::Set(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitInstance {
    pub matrix: RationalMatrix,
    pub source: Source,
    pub target: SemialgebraicSet,
}

impl OrbitInstance {
    pub fn point(matrix: RationalMatrix, s: Vec<BigRational>, target: SemialgebraicSet) -> Self {
        OrbitInstance {
            matrix,
            source: Source::Point(s),
            target,
        }
    }

    pub fn set(matrix: RationalMatrix, s: SemialgebraicSet, target: SemialgebraicSet) -> Self {
        OrbitInstance {
            matrix,
            source: Source::Set(s),
            target,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn check(&self) -> crate::Result<()> {
        let n = self.dim();
        let ok = n >= 1
            && self.target.num_vars == n
            && match &self.source {
                Source::Point(p) => p.len() == n,
                Source::Set(s) => s.num_vars == n,
            };
        if ok {
            Ok(())
        } else {
            Err(crate::Error::Dimension(format!(
                "matrix is {n}x{n} but source or target has another dimension"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Reachable,
    NotReachable,
    Unknown,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Reachable => "REACHABLE",
            Outcome::NotReachable => "NOT_REACHABLE",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness_n: Option<u64>,
    /// Coordinates of a witness point for set sources, as decimal approximations plus defining data.
    pub witness_point: Option<Vec<String>>,
    /// Every n <= bound was checked; no n > bound can be a witness.
    pub bound: Option<u64>,
    pub baker_exponent_used: u32,
    pub path: String,
    pub reason: Option<String>,
    pub diagnostics: Vec<String>,
}

impl Verdict {
    pub fn reachable(n: u64, cfg: &Config) -> Self {
        Verdict {
            outcome: Outcome::Reachable,
            witness_n: Some(n),
            ..Self::blank(cfg)
        }
    }

    pub fn not_reachable(bound: u64, cfg: &Config) -> Self {
        Verdict {
            outcome: Outcome::NotReachable,
            bound: Some(bound),
            ..Self::blank(cfg)
        }
    }

    pub fn unknown(reason: impl Into<String>, cfg: &Config) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            reason: Some(reason.into()),
            ..Self::blank(cfg)
        }
    }

    fn blank(cfg: &Config) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            witness_n: None,
            witness_point: None,
            bound: None,
            baker_exponent_used: cfg.baker_d,
            path: String::new(),
            reason: None,
            diagnostics: vec![],
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.outcome {
            Outcome::Reachable => write!(f, "REACHABLE n={}", self.witness_n.unwrap_or(0)),
            Outcome::NotReachable => write!(f, "NOT_REACHABLE N*={}", self.bound.unwrap_or(0)),
            Outcome::Unknown => write!(
                f,
                "UNKNOWN reason: {}",
                self.reason.as_deref().unwrap_or("")
            ),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Exponent d of the gap |gamma^n - xi| >= n^-(size(gamma)+size(xi))^d.
    pub baker_d: u32,
    pub qe: QeLimits,
    /// Largest n the exhaustive search will visit.
    pub search_cap: u64,
    /// Emit a witness point for set sources.
    pub witness: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            baker_d: 3,
            qe: QeLimits::default(),
            search_cap: 200_000,
            witness: false,
        }
    }
}

impl Config {
    pub fn with_qe_max_degree(mut self, k: u32) -> Self {
        self.qe.max_degree = k;
        self
    }
}
