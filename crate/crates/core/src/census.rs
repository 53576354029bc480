//! Explicit finiteness bounds, evaluated in log space, and triangular presentations read off a
//! ball in the Cayley graph.

use std::collections::HashMap;

use serde::Serialize;

use crate::group::{
    enumerate_ball, symmetrize, BallOptions, GraphOfGroups, GroupError, NormalForm,
};
use crate::presentation::{CosetError, Presentation};

/// A bound `B` carried as `log B` in nats.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LogBound {
    pub log_value: f64,
    pub expression: String,
    pub inputs: Vec<(String, f64)>,
}

impl LogBound {
    /// `log10 B`.
    pub fn log10(&self) -> f64 {
        self.log_value / std::f64::consts::LN_10
    }

    /// `B` as `m x 10^e` with a four-digit mantissa.
    pub fn scientific(&self) -> String {
        let l = self.log10();
        let e = l.floor();
        format!("{:.3}e{}", 10f64.powf(l - e), e as i64)
    }
}

/// `log(1 + e^x)` without overflow.
pub fn log1p_exp(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `(1 + e^(80 (k+3) E))^32`, the largest generating set compatible with entropy at most `E`
/// under a `k`-acylindrical splitting.
pub fn max_generating_size(k: u64, e: f64) -> LogBound {
    LogBound {
        log_value: 32.0 * log1p_exp((80 * (k + 3)) as f64 * e),
        expression: "(1 + e^(80(k+3)E))^32".into(),
        inputs: vec![("k".into(), k as f64), ("E".into(), e)],
    }
}

/// The same bound with the exponent `(80k + 3) E`.
pub fn max_generating_size_alternative(k: u64, e: f64) -> LogBound {
    LogBound {
        log_value: 32.0 * log1p_exp((80 * k + 3) as f64 * e),
        expression: "(1 + e^((80k+3)E))^32".into(),
        inputs: vec![("k".into(), k as f64), ("E".into(), e)],
    }
}

/// `2^(N + N^l)`, the number of presentations on at most `N` generators with relators of
/// length at most `l`.
pub fn presentation_count_bound(n: u64, l: u32) -> LogBound {
    let nf = n as f64;
    LogBound {
        log_value: (nf + nf.powi(l as i32)) * std::f64::consts::LN_2,
        expression: "2^(N + N^l)".into(),
        inputs: vec![("N".into(), nf), ("l".into(), l as f64)],
    }
}

/// `(e^(1120 E D) + 1)^32`.
pub fn three_manifold_bound(e: f64, d: f64) -> LogBound {
    LogBound {
        log_value: 32.0 * log1p_exp(1120.0 * e * d),
        expression: "(e^(1120ED) + 1)^32".into(),
        inputs: vec![("E".into(), e), ("D".into(), d)],
    }
}

/// `(2N, 3N)`: bounds on the number of surgery curves and on the rank.
pub fn surgery_bounds(n: u64) -> (u64, u64) {
    (2 * n, 3 * n)
}

/// `(2k + n - 2, 3k + 2n - 3)` for a free-rank split `N = n + k`.
pub fn surgery_bounds_split(n: u64, k: u64) -> (u64, u64) {
    (
        (2 * k + n).saturating_sub(2),
        (3 * k + 2 * n).saturating_sub(3),
    )
}

/// A presentation with one generator `x_g` per element of the ball `B` of radius `M` and one
/// relator `x_s x_t x_(st)^-1` for every pair `s, t` in `B` with `st` in `B`.
#[derive(Clone, Debug)]
pub struct TriangularPresentation {
    pub presentation: Presentation,
    /// Ball elements in generator order.
    pub elements: Vec<NormalForm>,
    pub radius: usize,
}

pub fn triangular_presentation(
    g: &GraphOfGroups,
    s: &[NormalForm],
    m: usize,
    opts: &BallOptions,
) -> Result<TriangularPresentation, GroupError> {
    let elements = enumerate_ball(g, s, m, opts)?.elements();
    let index: HashMap<&NormalForm, i32> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x, i as i32 + 1))
        .collect();
    let names = elements
        .iter()
        .map(|x| format!("x[{}]", g.format(x)))
        .collect();
    let mut presentation = Presentation::new(names);
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if let Some(&k) = index.get(&g.mul(a, b)) {
                presentation
                    .relators
                    .push(vec![i as i32 + 1, j as i32 + 1, -k]);
            }
        }
    }
    Ok(TriangularPresentation {
        presentation,
        elements,
        radius: m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallComparison {
    pub original: Vec<usize>,
    pub presented: Vec<usize>,
    pub order: usize,
}

impl BallComparison {
    pub fn matches(&self) -> bool {
        self.original == self.presented
    }
}

impl TriangularPresentation {
    /// Enumerates the presented group (which must be finite within `cap` cosets) and compares its
    /// ball sizes for the generators `x_s`, `s` in `S`, with those of `(G, S)`.
    pub fn compare_balls(
        &self,
        g: &GraphOfGroups,
        s: &[NormalForm],
        radius: usize,
        cap: usize,
    ) -> Result<BallComparison, TriangularError> {
        let table = self.presentation.enumerate_cosets(cap)?;
        let pos: HashMap<&NormalForm, i32> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i as i32 + 1))
            .collect();
        let letters: Vec<i32> = symmetrize(g, s)
            .iter()
            .filter_map(|x| pos.get(x).copied())
            .collect();
        let original = enumerate_ball(g, s, radius, &BallOptions { cap })?.sizes();
        Ok(BallComparison {
            original,
            presented: table.ball_sizes(&letters, radius),
            order: table.index(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangularError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cosets(#[from] CosetError),
}
