//! The full extraction: harvest, family, refinement, certificate.

use super::extract::{extract_schottky, SchottkyCertificate};
use super::family::{build_ps_family, FamilyConfig};
use super::harvest::HarvestBranch;
use super::nerve::{refine_disjoint, NerveGraph};
use super::refine::{refine_one_axis, Refined};
use super::{SchottkyError, SymSet};
use crate::group::{GraphOfGroups, NormalForm};

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub certificate: SchottkyCertificate,
    pub symmetric: SymSet,
    pub k: u64,
    pub tau: u64,
    pub branch: HarvestBranch,
    pub family_size: usize,
    pub config: FamilyConfig,
    pub refined: Refined,
    pub nerve: Option<NerveGraph>,
    /// `ceil(n^(1/32) / 2^(1/4))` for `n = |S|`.
    pub rank_bound: usize,
    /// `80 (k + 3)`.
    pub length_bound: usize,
}

/// Smallest `r` with `r >= n^(1/32) / 2^(1/4)`, that is `2^8 r^32 >= n`.
pub fn rank_bound(n: usize) -> usize {
    let mut r: u128 = 1;
    while r
        .checked_pow(32)
        .map_or(false, |p| p.saturating_mul(256) < n as u128)
    {
        r += 1;
    }
    r as usize
}

pub fn theorem_a_pipeline(
    g: &GraphOfGroups,
    s: &[NormalForm],
    k: u64,
) -> Result<PipelineRun, SchottkyError> {
    let sym = SymSet::new(g, s)?;
    let family = build_ps_family(g, &sym, k)?;
    let (nerve, refined): (Option<NerveGraph>, Refined) = match family.config {
        FamilyConfig::OneAxisIntersecting { .. } => (None, refine_one_axis(&family)?),
        _ => {
            let (n, r) = refine_disjoint(g, &family)?;
            (Some(n), r)
        }
    };
    let certificate = extract_schottky(g, &sym, &family, &refined)?;
    let bound = rank_bound(sym.len());
    if certificate.rank < bound {
        return Err(SchottkyError::Shortfall {
            stage: "certificate rank",
            needed: bound,
            got: certificate.rank,
        });
    }
    let length_bound = 80 * (k as usize + 3);
    if certificate.max_s_length > length_bound {
        return Err(SchottkyError::HypothesisFailed(format!(
            "generator S-length {} exceeds 80(k+3) = {length_bound}",
            certificate.max_s_length
        )));
    }
    Ok(PipelineRun {
        certificate,
        k,
        tau: family.tau,
        branch: family.branch.expect("set by build_ps_family"),
        family_size: family.len(),
        config: family.config.clone(),
        refined,
        nerve,
        rank_bound: bound,
        length_bound,
        symmetric: sym,
    })
}
