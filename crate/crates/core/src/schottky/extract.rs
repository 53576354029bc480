//! Schottky certificates for the four refined configurations.
//!
//! Besides the finite hypothesis of the lemma that applies, every certificate records a core
//! segment `C_i` on the axis of each generator `g_i`: the hull of the projections of all other
//! generator axes. With `X_i` the vertices projecting outside `C_i`, the sets `X_i` are pairwise
//! disjoint, and `|C_i| < tau(g_i)` gives `g_i^(±1) (T \ X_i) ⊆ X_i`, which is ping-pong.

use super::family::PSFamily;
use super::refine::{Refined, RefinedKind};
use super::{SchottkyError, SymSet, Tracked};
use crate::group::{GraphOfGroups, Kind, NormalForm};
use crate::tree::{Axis, Overlap, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaKind {
    Agglomerated4thPowers,
    SparseDropPivot,
    SmallProjections,
    SequentialConjugated,
    /// Generators of distinct infinite cyclic factors of a free product.
    FreeBasis,
}

impl LemmaKind {
    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::Agglomerated4thPowers => "Agglomerated4thPowers",
            LemmaKind::SparseDropPivot => "SparseDropPivot",
            LemmaKind::SmallProjections => "SmallProjections",
            LemmaKind::SequentialConjugated => "SequentialConjugated",
            LemmaKind::FreeBasis => "FreeBasis",
        }
    }
}

/// The finite quantities each lemma needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisData {
    /// `diam(T') < 4 tau`, where `T'` is the segment `I` together with the pairwise overlaps.
    Agglomerated {
        tau: u64,
        segment_length: i64,
        diam_t_prime: u64,
    },
    /// Intersections with the pivot axis, in pivot positions: pairwise disjoint, each shorter
    /// than `tau`.
    Sparse {
        tau: u64,
        pivot: NormalForm,
        intersections: Vec<(i64, i64)>,
    },
    /// Spread of the external projections on each axis, each below `tau`.
    SmallProjections { tau: u64, spreads: Vec<i64> },
    /// Orientation signs of the interior chain axes and the spreads after conjugation.
    Sequential {
        tau: u64,
        signs: Vec<i8>,
        spreads: Vec<i64>,
    },
    /// Factor index of each generator; the factors are infinite cyclic and pairwise distinct.
    FreeBasis { factors: Vec<u8> },
}

impl HypothesisData {
    pub fn holds(&self) -> bool {
        match self {
            HypothesisData::Agglomerated {
                tau,
                segment_length,
                diam_t_prime,
            } => *segment_length <= 2 * *tau as i64 && *diam_t_prime < 4 * tau,
            HypothesisData::Sparse {
                tau, intersections, ..
            } => {
                intersections.iter().all(|(lo, hi)| hi - lo < *tau as i64)
                    && intersections.windows(2).all(|w| w[0].1 < w[1].0)
            }
            HypothesisData::SmallProjections { tau, spreads }
            | HypothesisData::Sequential { tau, spreads, .. } => {
                spreads.iter().all(|s| *s < *tau as i64)
            }
            HypothesisData::FreeBasis { factors } => {
                let mut f = factors.clone();
                f.sort_unstable();
                f.dedup();
                !factors.is_empty() && f.len() == factors.len()
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            HypothesisData::Agglomerated {
                tau,
                segment_length,
                diam_t_prime,
            } => {
                format!(
                    "diam(I) = {segment_length} <= {}, diam(T') = {diam_t_prime} < {}",
                    2 * tau,
                    4 * tau
                )
            }
            HypothesisData::Sparse {
                tau, intersections, ..
            } => format!(
                "{} disjoint intersections with the pivot axis, longest {} < {tau}",
                intersections.len(),
                intersections
                    .iter()
                    .map(|(lo, hi)| hi - lo)
                    .max()
                    .unwrap_or(0)
            ),
            HypothesisData::SmallProjections { tau, spreads } => {
                format!(
                    "largest projection spread {} < {tau}",
                    spreads.iter().max().unwrap_or(&0)
                )
            }
            HypothesisData::Sequential {
                tau,
                signs,
                spreads,
            } => format!(
                "signs {signs:?}, largest projection spread after conjugation {} < {tau}",
                spreads.iter().max().unwrap_or(&0)
            ),
            HypothesisData::FreeBasis { factors } => {
                format!("generators of the distinct infinite cyclic factors {factors:?}")
            }
        }
    }
}

/// Core segment `[lo, hi]` in positions of the generator's own axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Core {
    pub tau: u64,
    pub lo: i64,
    pub hi: i64,
}

impl Core {
    pub fn length(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn contains(&self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

#[derive(Clone, Debug)]
pub struct SchottkyCertificate {
    pub generators: Vec<NormalForm>,
    /// Words in the symmetrized generating set spelling each generator.
    pub words: Vec<Vec<u32>>,
    pub rank: usize,
    pub lemma: LemmaKind,
    pub hypothesis: HypothesisData,
    pub cores: Vec<Core>,
    pub max_s_length: usize,
    pub source_size: usize,
}

pub(crate) fn axes_of(g: &GraphOfGroups, gens: &[NormalForm]) -> Result<Vec<Axis>, SchottkyError> {
    gens.iter()
        .map(|x| {
            g.axis(x).ok_or_else(|| {
                SchottkyError::HypothesisFailed(format!("generator {} is elliptic", g.format(x)))
            })
        })
        .collect()
}

/// Hull of the projections of the other axes onto each axis. An overlap reaching `tau` makes
/// the core at least `tau` long, which is all the check needs.
pub(crate) fn cores_of(g: &GraphOfGroups, axes: &[Axis]) -> Vec<Core> {
    (0..axes.len())
        .map(|i| {
            let a = &axes[i];
            let mut pts = Vec::new();
            for (j, b) in axes.iter().enumerate() {
                if j == i {
                    continue;
                }
                match g.axis_overlap(a, b, a.tau) {
                    Overlap::Intersect { lo, hi, .. } => pts.extend([lo, hi]),
                    Overlap::Disjoint { near1, .. } => pts.push(g.axis_position(a, &near1)),
                }
            }
            let lo = pts.iter().copied().min().unwrap_or(0);
            let hi = pts.iter().copied().max().unwrap_or(0);
            Core { tau: a.tau, lo, hi }
        })
        .collect()
}

fn endpoints(g: &GraphOfGroups, ax: &Axis, lo: i64, hi: i64) -> [Vertex; 2] {
    let w = g.axis_window(ax, lo, hi).vertices;
    [w[0].clone(), w[w.len() - 1].clone()]
}

/// `(|I|, diam T')` for an agglomerated set whose first axis is the pivot.
pub(crate) fn agglomerated_data(g: &GraphOfGroups, axes: &[Axis]) -> (i64, u64) {
    let pivot = &axes[0];
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for b in &axes[1..] {
        if let Overlap::Intersect { lo: l, hi: h, .. } = g.axis_overlap(pivot, b, pivot.tau) {
            lo = lo.min(l);
            hi = hi.max(h);
        }
    }
    if lo > hi {
        (lo, hi) = (0, 0);
    }
    let mut pts: Vec<Vertex> = endpoints(g, pivot, lo, hi).to_vec();
    for i in 1..axes.len() {
        for j in 1..axes.len() {
            if i == j {
                continue;
            }
            if let Overlap::Intersect { lo, hi, .. } =
                g.axis_overlap(&axes[i], &axes[j], axes[i].tau)
            {
                pts.extend(endpoints(g, &axes[i], lo, hi));
            }
        }
    }
    let mut diam = 0;
    for (x, u) in pts.iter().enumerate() {
        for w in &pts[x + 1..] {
            diam = diam.max(g.distance(u, w));
        }
    }
    (hi - lo, diam)
}

/// Sorted intersections of each axis with the pivot axis, in pivot positions.
pub(crate) fn sparse_data(g: &GraphOfGroups, pivot: &Axis, axes: &[Axis]) -> Vec<(i64, i64)> {
    let mut spans: Vec<(i64, i64)> = axes
        .iter()
        .map(|b| match g.axis_overlap(pivot, b, pivot.tau) {
            Overlap::Intersect { lo, hi, .. } => (lo, hi),
            // an axis missing the pivot axis cannot satisfy the hypothesis
            Overlap::Disjoint { .. } => (0, pivot.tau as i64),
        })
        .collect();
    spans.sort_unstable();
    spans
}

/// Builds the generating set for a refined family and checks the lemma's hypothesis together
/// with the ping-pong cores. Never returns a certificate whose checks fail.
pub fn extract_schottky(
    g: &GraphOfGroups,
    s: &SymSet,
    f: &PSFamily,
    r: &Refined,
) -> Result<SchottkyCertificate, SchottkyError> {
    let tau = f.tau;
    let (lemma, gens, hypothesis): (LemmaKind, Vec<Tracked>, Option<HypothesisData>) = match r.kind
    {
        RefinedKind::Agglomerated => {
            let pivot = r.pivot.ok_or(SchottkyError::WrongConfig)?;
            let set: Vec<usize> = std::iter::once(pivot)
                .chain(r.members.iter().copied())
                .collect();
            let axes: Vec<Axis> = set.iter().map(|&i| f.axes[i].clone()).collect();
            let (segment_length, diam_t_prime) = agglomerated_data(g, &axes);
            let gens = set.iter().map(|&i| s.pow(g, &f.members[i], 4)).collect();
            (
                LemmaKind::Agglomerated4thPowers,
                gens,
                Some(HypothesisData::Agglomerated {
                    tau,
                    segment_length,
                    diam_t_prime,
                }),
            )
        }
        RefinedKind::Sparse => {
            let pivot = r.pivot.ok_or(SchottkyError::WrongConfig)?;
            let axes: Vec<Axis> = r.members.iter().map(|&i| f.axes[i].clone()).collect();
            let intersections = sparse_data(g, &f.axes[pivot], &axes);
            let gens = r.members.iter().map(|&i| f.members[i].clone()).collect();
            let pivot = f.members[pivot].nf.clone();
            (
                LemmaKind::SparseDropPivot,
                gens,
                Some(HypothesisData::Sparse {
                    tau,
                    pivot,
                    intersections,
                }),
            )
        }
        RefinedKind::SmallProjections => {
            let gens = r.members.iter().map(|&i| f.members[i].clone()).collect();
            (LemmaKind::SmallProjections, gens, None)
        }
        RefinedKind::Sequential => {
            let h: Vec<&Tracked> = r.members.iter().map(|&i| &f.members[i]).collect();
            let m = h.len();
            let mut signs = Vec::new();
            let mut gens = vec![h[0].clone()];
            if m >= 3 {
                for k in 1..m - 1 {
                    let (prev, here, next) = (r.members[k - 1], r.members[k], r.members[k + 1]);
                    let pos = |other: usize| match &f.overlaps[here][other] {
                        Overlap::Disjoint { near1, .. } => {
                            Ok(g.axis_position(&f.axes[here], near1))
                        }
                        Overlap::Intersect { .. } => Err(SchottkyError::WrongConfig),
                    };
                    let eps: i8 = if pos(next)? >= pos(prev)? { 1 } else { -1 };
                    signs.push(eps);
                    let c = s.pow(g, h[k], eps as i64);
                    gens.push(s.conj(g, &c, h[k + 1]));
                }
            }
            if m >= 2 {
                gens.push(h[m - 1].clone());
            }
            (
                LemmaKind::SequentialConjugated,
                gens,
                Some(HypothesisData::Sequential {
                    tau,
                    signs,
                    spreads: vec![],
                }),
            )
        }
    };
    let nfs: Vec<NormalForm> = gens.iter().map(|x| x.nf.clone()).collect();
    let axes = axes_of(g, &nfs)?;
    let cores = cores_of(g, &axes);
    let spreads: Vec<i64> = cores.iter().map(Core::length).collect();
    let hypothesis = match hypothesis {
        None => HypothesisData::SmallProjections { tau, spreads },
        Some(HypothesisData::Sequential { tau, signs, .. }) => HypothesisData::Sequential {
            tau,
            signs,
            spreads,
        },
        Some(h) => h,
    };
    if !hypothesis.holds() {
        return Err(SchottkyError::HypothesisFailed(hypothesis.describe()));
    }
    if let Some((i, c)) = cores
        .iter()
        .enumerate()
        .find(|(_, c)| c.length() >= c.tau as i64)
    {
        return Err(SchottkyError::HypothesisFailed(format!(
            "core of generator {i} has length {} >= tau = {}",
            c.length(),
            c.tau
        )));
    }
    Ok(SchottkyCertificate {
        rank: gens.len(),
        max_s_length: gens.iter().map(Tracked::s_length).max().unwrap_or(0),
        words: gens.iter().map(|x| x.word.clone()).collect(),
        generators: nfs,
        lemma,
        hypothesis,
        cores,
        source_size: s.len(),
    })
}

/// Factor of a free product generated by `x`, when `x` is a generator of an infinite cyclic factor.
pub(crate) fn basis_factor(g: &GraphOfGroups, x: &NormalForm) -> Option<u8> {
    if g.kind() != Kind::FreeProduct || x.syllable_length() != 1 {
        return None;
    }
    let s = x.syl(0);
    (!g.vg(s.tag).is_finite() && s.val.abs() == 1).then_some(s.tag)
}

/// The elements of `S` generating distinct infinite cyclic free factors (first occurrence of
/// each factor). They form a free basis by the normal form theorem.
pub fn free_basis_certificate(
    g: &GraphOfGroups,
    s: &SymSet,
) -> Result<SchottkyCertificate, SchottkyError> {
    let mut factors: Vec<u8> = Vec::new();
    let mut gens = Vec::new();
    for (i, x) in s.elems.iter().enumerate() {
        if let Some(f) = basis_factor(g, x) {
            if !factors.contains(&f) {
                factors.push(f);
                gens.push(s.letter(i));
            }
        }
    }
    let hypothesis = HypothesisData::FreeBasis { factors };
    if !hypothesis.holds() {
        return Err(SchottkyError::HypothesisFailed(
            "no generator of an infinite cyclic factor".into(),
        ));
    }
    Ok(SchottkyCertificate {
        rank: gens.len(),
        max_s_length: 1,
        words: gens.iter().map(|x| x.word.clone()).collect(),
        generators: gens.into_iter().map(|x| x.nf).collect(),
        lemma: LemmaKind::FreeBasis,
        hypothesis,
        cores: Vec::new(),
        source_size: s.len(),
    })
}
