//! Exhaustive check of the axis-intersection law over a ball.
//!
//! For a k-acylindrical action, two hyperbolic elements whose axes share more than
//! `tau_1 + tau_2 + k` edges have the same axis. Candidate pairs are found through an index:
//! when two axes meet, their common segment contains the projection of `v_0` onto the axis
//! farther from `v_0`, and it reaches `(tau_1 + tau_2 + k + 1) / 2` edges (rounded up) to one
//! side of that point.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use super::{Axis, AxisCursor, Overlap, Vertex};
use crate::group::{enumerate_ball, BallOptions, GraphOfGroups, GroupError, NormalForm};

#[derive(Clone, Debug)]
pub struct LawViolation {
    pub h1: NormalForm,
    pub h2: NormalForm,
    pub overlap: i64,
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub struct AxisLawReport {
    pub hyperbolic_elements: usize,
    /// Pairs whose overlap was walked.
    pub candidate_pairs: usize,
    /// Pairs reaching the bound whose axes coincide (`h1^tau2 = h2^(±tau1)`).
    pub same_axis_pairs: usize,
    /// Distinct unordered pairs whose common segment exceeds the bound.
    pub long_pairs: usize,
    pub violations: Vec<LawViolation>,
}

/// Length that a common segment longer than `tau_far + tau_near + k` reaches on one side of
/// the far axis base.
fn reach(tau_far: u64, tau_near: u64, k: u64) -> i64 {
    ((tau_far + tau_near + k + 2) / 2) as i64
}

fn key(u: &Vertex, w: &Vertex, tau_near: u64) -> u64 {
    let mut h = DefaultHasher::new();
    (u, w, tau_near).hash(&mut h);
    h.finish()
}

/// Checks every pair of hyperbolic elements of word length at most `len`.
pub fn axis_law_check(
    g: &GraphOfGroups,
    s: &[NormalForm],
    len: usize,
    k: u64,
) -> Result<AxisLawReport, GroupError> {
    let ball = enumerate_ball(g, s, len, &BallOptions::default())?;
    let axes: Vec<Axis> = ball
        .elements()
        .par_iter()
        .filter_map(|x| g.axis(x))
        .collect();
    let v0 = g.base_vertex(0);
    let depth: Vec<u64> = axes.par_iter().map(|a| g.distance(&v0, &a.base)).collect();
    let radius = depth.iter().copied().max().unwrap_or(0);

    // index: hash of (u, vertex m steps further along the axis, tau) for every reach m
    let mut taus: Vec<u64> = axes.iter().map(|a| a.tau).collect();
    taus.sort_unstable();
    taus.dedup();
    let (tau_min, tau_max) = (
        taus.first().copied().unwrap_or(1),
        taus.last().copied().unwrap_or(1),
    );
    let mut index: Vec<(u64, u32)> = axes
        .par_iter()
        .zip(depth.par_iter())
        .enumerate()
        .flat_map_iter(|(i, (a, &d))| {
            let span = (radius - d) as i64;
            let mut cur = AxisCursor::new(g, a);
            let (m_lo, m_hi) = (reach(tau_min, a.tau, k), reach(tau_max, a.tau, k));
            let off = span + m_hi;
            let pts: Vec<Vertex> = (-off..=off).map(|p| g.canonical(&cur.at(p))).collect();
            let mut keys = Vec::new();
            for c in m_hi..=(2 * span + m_hi) {
                for m in m_lo..=m_hi {
                    let u = &pts[c as usize];
                    keys.push((key(u, &pts[(c + m) as usize], a.tau), i as u32));
                    keys.push((key(u, &pts[(c - m) as usize], a.tau), i as u32));
                }
            }
            keys
        })
        .collect();
    index.par_sort_unstable();
    index.dedup();

    let results: Vec<(usize, usize, Vec<LawViolation>, Vec<(usize, usize)>)> = (0..axes.len())
        .into_par_iter()
        .map(|j| {
            let a2 = &axes[j];
            let mut cur = AxisCursor::new(g, a2);
            let p = g.canonical(&a2.base);
            let mut cands: Vec<usize> = Vec::new();
            for (t, w) in taus.iter().flat_map(|&t| {
                let m = reach(a2.tau, t, k);
                [(t, m), (t, -m)]
            }) {
                let h = key(&p, &g.canonical(&cur.at(w)), t);
                let from = index.partition_point(|e| e.0 < h);
                cands.extend(
                    index[from..]
                        .iter()
                        .take_while(|e| e.0 == h)
                        .map(|e| e.1 as usize)
                        .filter(|&i| i != j),
                );
            }
            cands.sort_unstable();
            cands.dedup();
            let (mut walked, mut same, mut bad, mut long) = (0, 0, Vec::new(), Vec::new());
            for i in cands {
                let a1 = &axes[i];
                let bound = a1.tau + a2.tau + k;
                walked += 1;
                let o = g.axis_overlap(a1, a2, bound + 1);
                if let Overlap::Intersect { lo, hi, .. } = o {
                    if (hi - lo) as u64 > bound {
                        long.push((i.min(j), i.max(j)));
                        if same_axis(g, a1, a2) {
                            same += 1;
                        } else {
                            bad.push(LawViolation {
                                h1: a1.g.clone(),
                                h2: a2.g.clone(),
                                overlap: hi - lo,
                                bound,
                            });
                        }
                    }
                }
            }
            (walked, same, bad, long)
        })
        .collect();
    let mut report = AxisLawReport {
        hyperbolic_elements: axes.len(),
        candidate_pairs: 0,
        same_axis_pairs: 0,
        long_pairs: 0,
        violations: Vec::new(),
    };
    let mut long_pairs = Vec::new();
    for (w, s, b, l) in results {
        report.candidate_pairs += w;
        report.same_axis_pairs += s;
        report.violations.extend(b);
        long_pairs.extend(l);
    }
    long_pairs.sort_unstable();
    long_pairs.dedup();
    report.long_pairs = long_pairs.len();
    Ok(report)
}

/// Algebraic same-axis test: `h1^tau2 = h2^(±tau1)` forces equal axes.
pub fn same_axis(g: &GraphOfGroups, a1: &Axis, a2: &Axis) -> bool {
    let lhs = g.pow(&a1.g, a2.tau as i64);
    lhs == g.pow(&a2.g, a1.tau as i64) || lhs == g.pow(&a2.g, -(a1.tau as i64))
}
