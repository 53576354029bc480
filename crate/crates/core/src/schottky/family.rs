//! Pairwise-Schottky families: hyperbolic elements of one translation length whose axes
//! pairwise share fewer than `tau` edges.

use rayon::prelude::*;

use super::harvest::{harvest_distinct_axes, HarvestBranch};
use super::{SchottkyError, SymSet, Tracked};
use crate::group::GraphOfGroups;
use crate::tree::{acylindricity_probe, Axis, Overlap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyConfig {
    Unresolved,
    /// `members` are the indices (other than `pivot`) whose axes meet the pivot axis.
    OneAxisIntersecting {
        pivot: usize,
        members: Vec<usize>,
    },
    /// Indices of a subfamily with pairwise disjoint axes.
    PairwiseDisjoint {
        members: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct PSFamily {
    pub members: Vec<Tracked>,
    pub axes: Vec<Axis>,
    pub tau: u64,
    pub k: u64,
    /// `overlaps[i][j]` compares axis `i` with axis `j`, positions taken on axis `i`.
    pub overlaps: Vec<Vec<Overlap>>,
    pub config: FamilyConfig,
    pub branch: Option<HarvestBranch>,
}

impl PSFamily {
    /// Checks the family conditions and resolves the configuration.
    pub fn new(g: &GraphOfGroups, members: Vec<Tracked>, k: u64) -> Result<Self, SchottkyError> {
        let axes: Vec<Axis> = members
            .iter()
            .map(|x| {
                g.axis(&x.nf).ok_or_else(|| {
                    SchottkyError::HypothesisFailed(format!("{} is elliptic", g.format(&x.nf)))
                })
            })
            .collect::<Result<_, _>>()?;
        let tau = axes.first().map_or(0, |a| a.tau);
        if let Some(a) = axes.iter().find(|a| a.tau != tau) {
            return Err(SchottkyError::HypothesisFailed(format!(
                "translation lengths differ: {} and {tau}",
                a.tau
            )));
        }
        let overlaps: Vec<Vec<Overlap>> = (0..axes.len())
            .into_par_iter()
            .map(|i| {
                (0..axes.len())
                    .map(|j| g.axis_overlap(&axes[i], &axes[j], tau))
                    .collect()
            })
            .collect();
        for i in 0..axes.len() {
            for j in i + 1..axes.len() {
                if let Overlap::Intersect {
                    resolved: false, ..
                } = overlaps[i][j]
                {
                    return Err(SchottkyError::HypothesisFailed(format!(
                        "axes of members {i} and {j} share at least tau = {tau} edges"
                    )));
                }
            }
        }
        let mut f = Self {
            members,
            axes,
            tau,
            k,
            overlaps,
            config: FamilyConfig::Unresolved,
            branch: None,
        };
        f.config = f.resolve();
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn meets(&self, i: usize, j: usize) -> bool {
        i != j && !self.overlaps[i][j].is_empty()
    }

    /// The pivot of largest intersection degree against a greedy disjoint subfamily; the larger
    /// candidate wins, with the pivot preferred on ties.
    fn resolve(&self) -> FamilyConfig {
        let m = self.len();
        let deg: Vec<usize> = (0..m)
            .map(|i| (0..m).filter(|&j| self.meets(i, j)).count())
            .collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (deg[i], i));
        let mut indep: Vec<usize> = Vec::new();
        for i in order {
            if indep.iter().all(|&j| !self.meets(i, j)) {
                indep.push(i);
            }
        }
        indep.sort_unstable();
        let pivot = (0..m).max_by_key(|&i| (deg[i], std::cmp::Reverse(i)));
        match pivot {
            Some(p) if deg[p] > 0 && deg[p] + 1 >= indep.len() => {
                FamilyConfig::OneAxisIntersecting {
                    pivot: p,
                    members: (0..m).filter(|&j| self.meets(p, j)).collect(),
                }
            }
            _ => FamilyConfig::PairwiseDisjoint { members: indep },
        }
    }

    /// Largest S-length among the members.
    pub fn max_s_length(&self) -> usize {
        self.members
            .iter()
            .map(Tracked::s_length)
            .max()
            .unwrap_or(0)
    }
}

/// Harvests distinct axes and raises each element to the power `k + 3`.
pub fn build_ps_family(g: &GraphOfGroups, s: &SymSet, k: u64) -> Result<PSFamily, SchottkyError> {
    let probe = acylindricity_probe(g, &s.elems, 1, 2 * k + 4)?;
    if probe.k_lower > k {
        return Err(SchottkyError::KTooSmall {
            declared: k,
            lower: probe.k_lower,
        });
    }
    let harvest = harvest_distinct_axes(g, s)?;
    let members: Vec<Tracked> = harvest
        .elements
        .par_iter()
        .map(|h| s.pow(g, h, k as i64 + 3))
        .collect();
    let mut f = PSFamily::new(g, members, k)?;
    f.branch = Some(harvest.branch);
    Ok(f)
}
