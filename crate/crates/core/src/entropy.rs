//! Growth of word-metric balls, entropy lower bounds from free subgroups, and the
//! entropy-cardinality check.
//!
//! All values are natural logarithms.

use serde::Serialize;

use crate::group::{
    enumerate_ball, symmetrize, BallOptions, GraphOfGroups, GroupError, NormalForm,
};
use crate::schottky::{
    rank_bound, theorem_a_pipeline, verify_freeness, PipelineRun, SchottkyCertificate,
    SchottkyError,
};

/// Right-hand sides within this of zero or below count as vacuous.
pub const VACUOUS_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EntropyError {
    #[error("certificate fails the freeness check: relation {0}")]
    UnverifiedCertificate(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Schottky(#[from] SchottkyError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthProfile {
    /// `|S^0|, ..., |S^N|`.
    pub sizes: Vec<usize>,
    /// `log|S^n| / n` for `n = 1..=N`.
    pub upper_estimates: Vec<f64>,
    /// Minimum of the estimates, or 0 when `N = 0`.
    pub best_upper: f64,
}

impl GrowthProfile {
    pub fn from_sizes(sizes: Vec<usize>) -> Self {
        let upper_estimates: Vec<f64> = sizes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &a)| (a as f64).ln() / n as f64)
            .collect();
        let best_upper = upper_estimates
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let best_upper = if best_upper.is_finite() {
            best_upper
        } else {
            0.0
        };
        Self {
            sizes,
            upper_estimates,
            best_upper,
        }
    }

    /// Checks monotonicity and `|S^(m+n)| <= |S^m| |S^n|` over all computed pairs.
    pub fn is_consistent(&self) -> bool {
        let a = &self.sizes;
        let monotone = a.windows(2).all(|w| w[0] <= w[1]);
        let sub = (0..a.len())
            .all(|m| (0..a.len() - m).all(|n| (a[m + n] as u128) <= a[m] as u128 * a[n] as u128));
        monotone && sub
    }
}

/// Exact ball sizes up to radius `n` and the Fekete upper estimates for the entropy.
pub fn growth(
    g: &GraphOfGroups,
    s: &[NormalForm],
    n: usize,
    opts: &BallOptions,
) -> Result<GrowthProfile, GroupError> {
    let ball = enumerate_ball(g, s, n, opts)?;
    Ok(GrowthProfile::from_sizes(ball.sizes()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntropyCertificate {
    pub lower: f64,
    pub rank: usize,
    pub max_s_length: usize,
    /// Relations up to this length were ruled out before the bound was issued.
    pub verified_length: usize,
}

/// `log(2r - 1) / L` for a certificate of rank `r` whose generators have S-length at most `L`.
/// The certificate is first checked free on reduced words of length up to `verify_len`.
pub fn lower_from_schottky(
    g: &GraphOfGroups,
    cert: &SchottkyCertificate,
    verify_len: usize,
) -> Result<EntropyCertificate, EntropyError> {
    let v = verify_freeness(g, cert, verify_len);
    if !v.ok {
        return Err(EntropyError::UnverifiedCertificate(
            v.witness.unwrap_or_default(),
        ));
    }
    Ok(EntropyCertificate {
        lower: schottky_lower(cert.rank, cert.max_s_length),
        rank: cert.rank,
        max_s_length: cert.max_s_length,
        verified_length: verify_len,
    })
}

pub fn schottky_lower(rank: usize, max_s_length: usize) -> f64 {
    if rank == 0 || max_s_length == 0 {
        return 0.0;
    }
    ((2 * rank - 1) as f64).ln() / max_s_length as f64
}

/// `log(n^(1/32) - 1) / (80 (k + 3))`, or `None` when `n^(1/32) <= 1` and the logarithm is `-inf`.
pub fn cardinality_rhs(n: usize, k: u64) -> Option<f64> {
    let root = (n as f64).powf(1.0 / 32.0);
    (root > 1.0 + VACUOUS_EPS).then(|| (root - 1.0).ln() / (80 * (k + 3)) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    VacuouslyCertified,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::VacuouslyCertified => "vacuously certified",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CardinalityReport {
    /// Size of the symmetrized generating set.
    pub n: usize,
    pub k: u64,
    /// `None` stands for `-inf`.
    pub rhs: Option<f64>,
    pub lower: f64,
    pub rank: usize,
    pub max_s_length: usize,
    pub rank_bound: usize,
    /// `80 (k + 3)`, the denominator used here.
    pub length_bound: u64,
    /// `80 k + 3`, the alternative printed form of the same exponent, kept for comparison.
    pub alternative_length_bound: u64,
    pub verdict: Verdict,
}

/// Runs the extraction pipeline on `S` and compares its entropy lower bound with the
/// cardinality bound `log(n^(1/32) - 1) / (80 (k + 3))`.
pub fn certify_entropy_cardinality(
    g: &GraphOfGroups,
    s: &[NormalForm],
    k: u64,
    verify_len: usize,
) -> Result<CardinalityReport, EntropyError> {
    Ok(certify_with_run(g, s, k, verify_len)?.0)
}

/// As [`certify_entropy_cardinality`], also returning the pipeline run behind the verdict.
pub fn certify_with_run(
    g: &GraphOfGroups,
    s: &[NormalForm],
    k: u64,
    verify_len: usize,
) -> Result<(CardinalityReport, PipelineRun), EntropyError> {
    let n = symmetrize(g, s).len();
    let run = theorem_a_pipeline(g, s, k)?;
    let cert = lower_from_schottky(g, &run.certificate, verify_len)?;
    let rhs = cardinality_rhs(n, k);
    let verdict = match rhs {
        Some(r) if r > VACUOUS_EPS => {
            if cert.lower >= r {
                Verdict::Certified
            } else {
                Verdict::Violated
            }
        }
        _ => Verdict::VacuouslyCertified,
    };
    let report = CardinalityReport {
        n,
        k,
        rhs,
        lower: cert.lower,
        rank: cert.rank,
        max_s_length: cert.max_s_length,
        rank_bound: rank_bound(n),
        length_bound: 80 * (k + 3),
        alternative_length_bound: 80 * k + 3,
        verdict,
    };
    Ok((report, run))
}
