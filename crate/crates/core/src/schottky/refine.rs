//! Refinement of a family whose axes all meet one pivot axis.

use super::family::{FamilyConfig, PSFamily};
use super::{ceil_root, SchottkyError};
use crate::tree::Overlap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefinedKind {
    Agglomerated,
    Sparse,
    SmallProjections,
    Sequential,
}

/// A subfamily selected by one of the refinements. `members` never contains the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refined {
    pub kind: RefinedKind,
    pub pivot: Option<usize>,
    pub members: Vec<usize>,
    /// The segment `I` of length `2 tau` on the pivot axis, for the agglomerated case.
    pub segment: Option<(i64, i64)>,
}

impl Refined {
    /// Number of family elements that the extracted generating set is built from.
    pub fn size(&self) -> usize {
        self.members.len()
            + usize::from(self.kind == RefinedKind::Agglomerated && self.pivot.is_some())
    }
}

/// Orders the intersections `J_{1,i}` along the pivot axis by initial vertex, then final vertex,
/// then index, and sweeps them with segments of length `2 tau`. A segment collecting at least
/// `ceil(sqrt m) - 1` intersections gives an agglomerated subfamily; otherwise the first
/// element of every segment gives a sparse one.
pub fn refine_one_axis(f: &PSFamily) -> Result<Refined, SchottkyError> {
    let FamilyConfig::OneAxisIntersecting { pivot, members } = &f.config else {
        return Err(SchottkyError::WrongConfig);
    };
    let pivot = *pivot;
    let m = members.len() + 1;
    let want = ceil_root(m, 2).saturating_sub(1).max(1);
    let tau = f.tau as i64;
    let mut spans: Vec<(i64, i64, usize)> = members
        .iter()
        .map(|&i| match f.overlaps[pivot][i] {
            Overlap::Intersect { lo, hi, .. } => Ok((lo, hi, i)),
            Overlap::Disjoint { .. } => Err(SchottkyError::WrongConfig),
        })
        .collect::<Result<_, _>>()?;
    spans.sort_unstable();
    if spans.is_empty() {
        return Ok(Refined {
            kind: RefinedKind::Agglomerated,
            pivot: Some(pivot),
            members: Vec::new(),
            segment: None,
        });
    }
    let mut left = spans;
    let mut starters = Vec::new();
    while let Some(&(start, _, first)) = left.first() {
        let end = start + 2 * tau;
        let (inside, rest): (Vec<_>, Vec<_>) = left.into_iter().partition(|s| s.1 <= end);
        if inside.len() >= want {
            let mut chosen: Vec<usize> = inside.iter().map(|s| s.2).collect();
            chosen.sort_unstable();
            return Ok(Refined {
                kind: RefinedKind::Agglomerated,
                pivot: Some(pivot),
                members: chosen,
                segment: Some((start, end)),
            });
        }
        starters.push(first);
        left = rest;
    }
    let got = starters.len() + 1;
    let need = ceil_root(m, 2) + 1;
    if got < need {
        return Err(SchottkyError::Shortfall {
            stage: "sparse refinement",
            needed: need,
            got,
        });
    }
    Ok(Refined {
        kind: RefinedKind::Sparse,
        pivot: Some(pivot),
        members: starters,
        segment: None,
    })
}
