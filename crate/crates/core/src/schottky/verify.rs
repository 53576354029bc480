//! Independent checks of a certificate: exhaustive short relations and sampled ping-pong.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extract::{
    agglomerated_data, axes_of, basis_factor, cores_of, sparse_data, HypothesisData,
    SchottkyCertificate,
};
use super::SchottkyError;
use crate::group::{GraphOfGroups, NormalForm};
use crate::tree::{Axis, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// A relation among the generators, or a vertex breaking the ping-pong containments.
    pub witness: Option<String>,
    pub checked: usize,
}

impl Verification {
    fn pass(checked: usize) -> Self {
        Self {
            ok: true,
            witness: None,
            checked,
        }
    }

    fn fail(witness: String, checked: usize) -> Self {
        Self {
            ok: false,
            witness: Some(witness),
            checked,
        }
    }
}

/// Letter `2i` is generator `i`, letter `2i + 1` its inverse.
fn format_word(w: &[u32]) -> String {
    w.iter()
        .map(|&l| {
            let i = l / 2 + 1;
            if l % 2 == 0 {
                format!("g{i}")
            } else {
                format!("g{i}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Checks that no nonempty reduced word of length at most `max_len` in the generators is the
/// identity. Words of length up to `ceil(max_len / 2)` are grouped by normal form; two distinct
/// words `u`, `v` with equal normal forms give the relation `u v^-1`.
pub fn verify_freeness(
    g: &GraphOfGroups,
    cert: &SchottkyCertificate,
    max_len: usize,
) -> Verification {
    let letters: Vec<NormalForm> = cert
        .generators
        .iter()
        .flat_map(|x| [x.clone(), g.inverse(x)])
        .collect();
    let half = max_len.div_ceil(2);
    let mut buckets: HashMap<NormalForm, Vec<Vec<u32>>> = HashMap::new();
    buckets.insert(g.identity(), vec![Vec::new()]);
    let mut frontier: Vec<(Vec<u32>, NormalForm)> = vec![(Vec::new(), g.identity())];
    let mut checked = 1;
    for _ in 0..half {
        let mut next = Vec::new();
        for (w, x) in &frontier {
            for (l, y) in letters.iter().enumerate() {
                let l = l as u32;
                if w.last() == Some(&(l ^ 1)) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(l);
                let x2 = g.mul(x, y);
                buckets.entry(x2.clone()).or_default().push(w2.clone());
                next.push((w2, x2));
            }
        }
        checked += next.len();
        frontier = next;
    }
    let mut best: Option<Vec<u32>> = None;
    for words in buckets.values().filter(|b| b.len() > 1) {
        for (a, u) in words.iter().enumerate() {
            for v in &words[a + 1..] {
                let mut rel = u.clone();
                for &l in v.iter().rev() {
                    if rel.last() == Some(&l) {
                        rel.pop();
                    } else {
                        rel.push(l ^ 1);
                    }
                }
                if !rel.is_empty()
                    && rel.len() <= max_len
                    && best
                        .as_ref()
                        .map_or(true, |b| (rel.len(), &rel) < (b.len(), b))
                {
                    best = Some(rel);
                }
            }
        }
    }
    match best {
        Some(rel) => Verification::fail(format_word(&rel), checked),
        None => Verification::pass(checked),
    }
}

/// How membership in the domains `X_i` is decided.
enum Domains {
    /// Projection onto the axis of generator `i` falls outside its core.
    Axes(Vec<Axis>),
    /// The geodesic from the fixed base vertex of factor `i` leaves it through an edge other than
    /// the two base edges.
    Factors(Vec<u8>),
}

impl Domains {
    fn contains(
        &self,
        g: &GraphOfGroups,
        cert: &SchottkyCertificate,
        i: usize,
        v: &Vertex,
    ) -> bool {
        match self {
            Domains::Axes(axes) => !cert.cores[i].contains(g.projected_position(&axes[i], v)),
            Domains::Factors(f) => {
                let vi = g.base_vertex(f[i]);
                if g.distance(&vi, v) == 0 {
                    return false;
                }
                let first = g.canonical(&g.geodesic(&vi, v).vertices[1]);
                first.rep != g.identity()
            }
        }
    }
}

/// Samples vertices within distance `radius` of the base vertex by seeded random walks started
/// at the core endpoints, and checks on each that it lies in at most one domain `X_i` and that
/// `g_i^(±1)` moves it into `X_i` whenever it lies outside `X_i`. For a free basis of factors the
/// second check is made only on points of some other domain `X_j`.
pub fn verify_pingpong(
    g: &GraphOfGroups,
    cert: &SchottkyCertificate,
    radius: u64,
    samples: usize,
    seed: u64,
) -> Verification {
    let v0 = g.base_vertex(0);
    let mut starts = vec![v0.clone()];
    let domains = if let HypothesisData::FreeBasis { factors } = &cert.hypothesis {
        let ok = factors.len() == cert.generators.len()
            && cert
                .generators
                .iter()
                .zip(factors)
                .all(|(x, f)| basis_factor(g, x) == Some(*f));
        if !ok || !cert.hypothesis.holds() {
            return Verification::fail(
                "generators are not a basis of distinct free factors".into(),
                0,
            );
        }
        starts.extend(factors.iter().map(|&f| g.base_vertex(f)));
        Domains::Factors(factors.clone())
    } else {
        let axes = match axes_of(g, &cert.generators) {
            Ok(a) => a,
            Err(e) => return Verification::fail(e.to_string(), 0),
        };
        if cert.cores.len() != axes.len() {
            return Verification::fail("core count differs from rank".into(), 0);
        }
        for (i, (c, a)) in cert.cores.iter().zip(&axes).enumerate() {
            if c.tau != a.tau || c.length() >= a.tau as i64 {
                return Verification::fail(
                    format!("core of g{} is not shorter than tau", i + 1),
                    0,
                );
            }
            let w = g.axis_window(a, c.lo - 1, c.hi + 1).vertices;
            starts.extend(w.into_iter().filter(|v| g.distance(&v0, v) <= radius));
        }
        Domains::Axes(axes)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<Vertex> = starts.clone();
    while seen.len() < samples.max(starts.len()) {
        let mut v = starts.choose(&mut rng).expect("nonempty").clone();
        for _ in 0..=radius {
            let next: Vec<Vertex> = g
                .neighbors(&v, 3)
                .into_iter()
                .filter(|w| g.distance(&v0, w) <= radius)
                .collect();
            match next.choose(&mut rng) {
                Some(w) => v = w.clone(),
                None => break,
            }
            seen.push(v.clone());
        }
    }
    let rank = cert.generators.len();
    for v in &seen {
        let inside: Vec<usize> = (0..rank)
            .filter(|&i| domains.contains(g, cert, i, v))
            .collect();
        if inside.len() > 1 {
            return Verification::fail(
                format!(
                    "vertex {} lies in X_{} and X_{}",
                    describe(g, v),
                    inside[0] + 1,
                    inside[1] + 1
                ),
                seen.len(),
            );
        }
        // factor generators fix their own base vertex, so only points of another domain must be
        // pushed in; outside the factor case every point off `X_i` must be
        let targets: Vec<usize> = match (&domains, inside.first()) {
            (Domains::Factors(_), None) => Vec::new(),
            (_, j) => (0..rank).filter(|i| Some(i) != j).collect(),
        };
        for i in targets {
            let x = &cert.generators[i];
            for (y, sign) in [(x.clone(), ""), (g.inverse(x), "^-1")] {
                if !domains.contains(g, cert, i, &g.act(&y, v)) {
                    return Verification::fail(
                        format!(
                            "g{}{sign} keeps vertex {} outside X_{}",
                            i + 1,
                            describe(g, v),
                            i + 1
                        ),
                        seen.len(),
                    );
                }
            }
        }
    }
    Verification::pass(seen.len())
}

fn describe(g: &GraphOfGroups, v: &Vertex) -> String {
    format!("({})·v{}", g.format(&v.rep), v.orbit)
}

/// Recomputes the hypothesis data and cores from the generators alone and compares them with
/// the recorded values.
pub fn recheck_hypothesis(
    g: &GraphOfGroups,
    cert: &SchottkyCertificate,
) -> Result<(), SchottkyError> {
    if let HypothesisData::FreeBasis { factors } = &cert.hypothesis {
        let fresh: Option<Vec<u8>> = cert.generators.iter().map(|x| basis_factor(g, x)).collect();
        if fresh.as_ref() != Some(factors) || !cert.hypothesis.holds() {
            return Err(SchottkyError::HypothesisFailed(cert.hypothesis.describe()));
        }
        return Ok(());
    }
    let axes = axes_of(g, &cert.generators)?;
    let cores = cores_of(g, &axes);
    let spreads: Vec<i64> = cores.iter().map(|c| c.length()).collect();
    let fresh = match &cert.hypothesis {
        HypothesisData::Agglomerated { tau, .. } => {
            let (segment_length, diam_t_prime) = agglomerated_data(g, &axes);
            HypothesisData::Agglomerated {
                tau: *tau,
                segment_length,
                diam_t_prime,
            }
        }
        HypothesisData::Sparse { tau, pivot, .. } => {
            let p = g
                .axis(pivot)
                .ok_or_else(|| SchottkyError::HypothesisFailed("pivot is elliptic".into()))?;
            HypothesisData::Sparse {
                tau: *tau,
                pivot: pivot.clone(),
                intersections: sparse_data(g, &p, &axes),
            }
        }
        HypothesisData::SmallProjections { tau, .. } => {
            HypothesisData::SmallProjections { tau: *tau, spreads }
        }
        HypothesisData::Sequential { tau, signs, .. } => HypothesisData::Sequential {
            tau: *tau,
            signs: signs.clone(),
            spreads,
        },
        HypothesisData::FreeBasis { .. } => unreachable!("handled above"),
    };
    if fresh != cert.hypothesis || cores != cert.cores {
        return Err(SchottkyError::HypothesisFailed(format!(
            "recorded data differ from recomputed: {}",
            fresh.describe()
        )));
    }
    if !fresh.holds() {
        return Err(SchottkyError::HypothesisFailed(fresh.describe()));
    }
    Ok(())
}
