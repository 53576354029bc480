//! Breadth-first enumeration of word-metric balls.

use std::collections::HashSet;

use rayon::prelude::*;

use super::graph::GraphOfGroups;
use super::nf::NormalForm;
use super::GroupError;

pub const DEFAULT_BALL_CAP: usize = 10_000_000;

/// Reads the ball cap from `ACYL_CAP`, falling back to [`DEFAULT_BALL_CAP`].
pub fn ball_cap_from_env() -> usize {
    std::env::var("ACYL_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BALL_CAP)
}

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    pub cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        Self {
            cap: ball_cap_from_env(),
        }
    }
}

/// The ball `S^0 ∪ ... ∪ S^N`, stored sphere by sphere.
#[derive(Clone, Debug)]
pub struct Ball {
    pub spheres: Vec<Vec<NormalForm>>,
}

impl Ball {
    /// Cumulative sizes `|S^n|` for `n = 0..=N`.
    pub fn sizes(&self) -> Vec<usize> {
        let mut acc = 0;
        self.spheres
            .iter()
            .map(|s| {
                acc += s.len();
                acc
            })
            .collect()
    }

    /// All elements, ordered by word length and then by normal form.
    pub fn elements(&self) -> Vec<NormalForm> {
        self.spheres.iter().flatten().cloned().collect()
    }

    /// Elements with their word lengths.
    pub fn with_lengths(&self) -> Vec<(NormalForm, usize)> {
        self.spheres
            .iter()
            .enumerate()
            .flat_map(|(n, s)| s.iter().map(move |x| (x.clone(), n)))
            .collect()
    }
}

/// `S ∪ S^-1` without the identity and without repeats, preserving first appearance.
pub fn symmetrize(g: &GraphOfGroups, s: &[NormalForm]) -> Vec<NormalForm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in s {
        if !x.is_identity() && seen.insert(x.clone()) {
            out.push(x.clone());
        }
    }
    for x in s {
        let xi = g.inverse(x);
        if !xi.is_identity() && seen.insert(xi.clone()) {
            out.push(xi);
        }
    }
    out
}

/// Enumerates the ball of radius `n` for the (symmetrized) generating set `s`.
/// Each sphere is sorted, so the result does not depend on the thread count.
pub fn enumerate_ball(
    g: &GraphOfGroups,
    s: &[NormalForm],
    n: usize,
    opts: &BallOptions,
) -> Result<Ball, GroupError> {
    for x in s {
        if x.gid() != g.gid() {
            return Err(GroupError::MixedGroups);
        }
    }
    let gens = symmetrize(g, s);
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let id = g.identity();
    seen.insert(id.clone());
    let mut spheres = vec![vec![id]];
    for _ in 0..n {
        let last = spheres.last().expect("nonempty");
        let mut next: Vec<NormalForm> = last
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |s| g.mul(s, x)))
            .filter(|y| !seen.contains(y))
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if seen.len() + next.len() > opts.cap {
            return Err(GroupError::BallOverflow { cap: opts.cap });
        }
        seen.extend(next.iter().cloned());
        spheres.push(next);
    }
    Ok(Ball { spheres })
}
