//! Extraction of free Schottky subgroups from a finite generating set.
//!
//! The stages run in order: a short hyperbolic element, a harvest of conjugates with pairwise
//! distinct axes, a pairwise-Schottky family of common translation length, a refinement into
//! one of four axis configurations, and a certificate whose hypothesis is re-checked exactly.

mod extract;
mod family;
mod harvest;
mod nerve;
mod pipeline;
mod refine;
mod verify;

pub use extract::{
    extract_schottky, free_basis_certificate, Core, HypothesisData, LemmaKind, SchottkyCertificate,
};
pub use family::{build_ps_family, FamilyConfig, PSFamily};
pub use harvest::{harvest_distinct_axes, short_hyperbolic, Harvest, HarvestBranch};
pub use nerve::{nerve_graph, refine_disjoint, tree_shape, NerveGraph, NerveNode, TreeShape};
pub use pipeline::{rank_bound, theorem_a_pipeline, PipelineRun};
pub use refine::{refine_one_axis, Refined, RefinedKind};
pub use verify::{recheck_hypothesis, verify_freeness, verify_pingpong, Verification};

use std::collections::HashMap;

use crate::group::{symmetrize, GraphOfGroups, GroupError, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchottkyError {
    #[error("every element of S and S^2 is elliptic")]
    EllipticAction,
    #[error("the action is elementary: every generator stabilises the axis of {0}")]
    ElementaryAction(String),
    #[error("declared k = {declared} is below the probed lower bound {lower}")]
    KTooSmall { declared: u64, lower: u64 },
    #[error("family is not in the configuration this refinement needs")]
    WrongConfig,
    #[error("nerve reaches beyond the search window of {0} edges")]
    WindowExceeded(u64),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("{stage}: found {got} elements, need {needed}")]
    Shortfall {
        stage: &'static str,
        needed: usize,
        got: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The symmetrized generating set `S ∪ S^-1` without the identity.
#[derive(Clone, Debug)]
pub struct SymSet {
    pub elems: Vec<NormalForm>,
    inv: Vec<u32>,
}

impl SymSet {
    pub fn new(g: &GraphOfGroups, s: &[NormalForm]) -> Result<Self, GroupError> {
        if s.iter().any(|x| x.gid() != g.gid()) {
            return Err(GroupError::MixedGroups);
        }
        let elems = symmetrize(g, s);
        let pos: HashMap<&NormalForm, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i as u32))
            .collect();
        let inv = elems.iter().map(|x| pos[&g.inverse(x)]).collect();
        Ok(Self { elems, inv })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn letter(&self, i: usize) -> Tracked {
        Tracked {
            nf: self.elems[i].clone(),
            word: vec![i as u32],
        }
    }

    pub fn mul(&self, g: &GraphOfGroups, a: &Tracked, b: &Tracked) -> Tracked {
        let mut word = a.word.clone();
        for &l in &b.word {
            if word.last() == Some(&self.inv[l as usize]) {
                word.pop();
            } else {
                word.push(l);
            }
        }
        Tracked {
            nf: g.mul(&a.nf, &b.nf),
            word,
        }
    }

    pub fn inverse(&self, g: &GraphOfGroups, a: &Tracked) -> Tracked {
        Tracked {
            nf: g.inverse(&a.nf),
            word: a.word.iter().rev().map(|&l| self.inv[l as usize]).collect(),
        }
    }

    pub fn pow(&self, g: &GraphOfGroups, a: &Tracked, n: i64) -> Tracked {
        let base = if n < 0 { self.inverse(g, a) } else { a.clone() };
        let mut acc = Tracked {
            nf: g.identity(),
            word: Vec::new(),
        };
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(g, &acc, &base);
        }
        acc
    }

    /// `c a c^-1`.
    pub fn conj(&self, g: &GraphOfGroups, c: &Tracked, a: &Tracked) -> Tracked {
        self.mul(g, &self.mul(g, c, a), &self.inverse(g, c))
    }

    /// A word as text, each letter being the formatted generator.
    pub fn format_word(&self, g: &GraphOfGroups, word: &[u32]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&l| format!("({})", g.format(&self.elems[l as usize])))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A group element together with a word in the symmetrized generating set that spells it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tracked {
    pub nf: NormalForm,
    pub word: Vec<u32>,
}

impl Tracked {
    /// Upper bound for the word length `|x|_S`.
    pub fn s_length(&self) -> usize {
        self.word.len()
    }
}

/// `ceil(n^(1/root))`, computed exactly on integers.
pub fn ceil_root(n: usize, root: u32) -> usize {
    if n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / root as f64).round() as usize;
    while r > 1 && (r - 1).checked_pow(root).map_or(false, |p| p >= n) {
        r -= 1;
    }
    while r.checked_pow(root).map_or(false, |p| p < n) {
        r += 1;
    }
    r
}
