//! Empirical lower bound for the acylindricity constant.

use rayon::prelude::*;

use super::Vertex;
use crate::group::{enumerate_ball, BallOptions, GraphOfGroups, GroupError, NormalForm};

#[derive(Clone, Debug)]
pub struct ProbeWitness {
    pub element: NormalForm,
    pub u: Vertex,
    pub w: Vertex,
}

/// `k_lower` is the largest diameter of `Fix(g)` within the probe radius, over the nontrivial
/// elements `g` of the probed ball. Every vertex pair at distance greater than the true
/// constant is fixed only by the identity, so `k_lower` never exceeds the true constant.
#[derive(Clone, Debug)]
pub struct AcylindricityProbe {
    pub k_lower: u64,
    pub witness: Option<ProbeWitness>,
    pub elements_checked: usize,
    /// The witness fixed set reaches the probe boundary and continues beyond it.
    pub window_limited: bool,
}

/// Probes the nontrivial elements of word length at most `word_len` (for the generating set `s`)
/// and their fixed sets within distance `radius` of the base vertex.
pub fn acylindricity_probe(
    g: &GraphOfGroups,
    s: &[NormalForm],
    word_len: usize,
    radius: u64,
) -> Result<AcylindricityProbe, GroupError> {
    let ball = enumerate_ball(g, s, word_len, &BallOptions::default())?;
    let elems: Vec<NormalForm> = ball
        .elements()
        .into_iter()
        .filter(|x| !x.is_identity())
        .collect();
    let v0 = g.base_vertex(0);
    let keep = |w: &Vertex| g.distance(&v0, w) <= radius;
    let results: Vec<Option<(u64, Vertex, Vertex)>> = elems
        .par_iter()
        .map(|x| {
            if g.is_hyperbolic(x) {
                return None;
            }
            let m = g.nearest_fixed_vertex(x);
            if !keep(&m) {
                return None;
            }
            let t = g.fixed_subtree(x, m, radius as i64, &keep);
            let (d, a, b) = t.diameter();
            Some((d, t.vertices[a].clone(), t.vertices[b].clone()))
        })
        .collect();
    let mut best: Option<(u64, usize)> = None;
    for (i, r) in results.iter().enumerate() {
        if let Some((d, _, _)) = r {
            if best.map_or(true, |(bd, _)| *d > bd) {
                best = Some((*d, i));
            }
        }
    }
    let Some((k_lower, i)) = best else {
        return Ok(AcylindricityProbe {
            k_lower: 0,
            witness: None,
            elements_checked: elems.len(),
            window_limited: false,
        });
    };
    let (_, u, w) = results[i].clone().expect("present");
    let x = &elems[i];
    let m = g.nearest_fixed_vertex(x);
    let t = g.fixed_subtree(x, m, radius as i64, &keep);
    let window_limited = t.vertices.iter().any(|v| {
        g.distance(&v0, v) == radius
            && g.neighbors(v, radius as i64)
                .iter()
                .any(|n| !keep(n) && g.displacement(x, n) == 0)
    });
    Ok(AcylindricityProbe {
        k_lower,
        witness: Some(ProbeWitness {
            element: x.clone(),
            u,
            w,
        }),
        elements_checked: elems.len(),
        window_limited,
    })
}
