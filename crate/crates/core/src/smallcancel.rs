//! Small cancellation over the free product `Z_p * Z_r = <a> * <c>` for the triangle groups
//! `G(p,q,r) = Z_p * Z_r / <<(ca)^q>>`.
//!
//! Lengths are syllable lengths and pieces are syllable-aligned common prefixes of two distinct
//! relators.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmallCancelError {
    #[error("signature ({0},{1},{2}) needs 3 <= p <= q <= r and r >= 4")]
    BadSignature(u32, u32, u32),
    #[error("relator set satisfies neither C'(1/6) nor C'(1/4) with T(4)")]
    UnverifiedMetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    A,
    C,
}

/// `a^exp` or `c^exp` with `0 < exp < order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: Factor,
    pub exp: u32,
}

/// A normal form `x_1 x_2 ... x_n` with successive syllables in different factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FPWord(pub Vec<Syllable>);

impl FPWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            let x = if s.factor == Factor::A { 'a' } else { 'c' };
            if s.exp == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// The free product `<a | a^p> * <c | c^r>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    pub p: u32,
    pub r: u32,
}

impl FreeProduct {
    pub fn order(&self, f: Factor) -> u32 {
        match f {
            Factor::A => self.p,
            Factor::C => self.r,
        }
    }

    pub fn syl(&self, factor: Factor, exp: i64) -> Option<Syllable> {
        let e = exp.rem_euclid(self.order(factor) as i64) as u32;
        (e != 0).then_some(Syllable { factor, exp: e })
    }

    /// Reads words like `c^2*a*c^-1`; exponents are taken modulo the factor order.
    pub fn parse(&self, text: &str) -> Option<FPWord> {
        let mut w = FPWord::default();
        for tok in text
            .split('*')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "1")
        {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<i64>().ok()?),
                None => (tok, 1),
            };
            let factor = match name {
                "a" => Factor::A,
                "c" => Factor::C,
                _ => return None,
            };
            let letter = FPWord(self.syl(factor, exp).into_iter().collect());
            w = self.mul(&w, &letter);
        }
        Some(w)
    }

    pub fn mul(&self, x: &FPWord, y: &FPWord) -> FPWord {
        let mut out = x.0.clone();
        for &s in &y.0 {
            match out.last().copied() {
                Some(t) if t.factor == s.factor => {
                    out.pop();
                    if let Some(m) = self.syl(s.factor, t.exp as i64 + s.exp as i64) {
                        out.push(m);
                    }
                }
                _ => out.push(s),
            }
        }
        FPWord(out)
    }

    pub fn inverse(&self, x: &FPWord) -> FPWord {
        FPWord(
            x.0.iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    exp: self.order(s.factor) - s.exp,
                })
                .collect(),
        )
    }

    /// `u x u^-1`.
    pub fn conj(&self, u: &FPWord, x: &FPWord) -> FPWord {
        self.mul(&self.mul(u, x), &self.inverse(u))
    }

    /// Length at most one, or last and first syllables not mutually inverse.
    pub fn weakly_cyclically_reduced(&self, x: &FPWord) -> bool {
        match (x.0.first(), x.0.last()) {
            (Some(f), Some(l)) if x.len() > 1 => {
                f.factor != l.factor || (f.exp + l.exp) % self.order(f.factor) != 0
            }
            _ => true,
        }
    }

    /// A uniformly chosen normal form of exactly `len` syllables.
    pub fn random_word(&self, len: usize, rng: &mut impl Rng) -> FPWord {
        let mut factor = if rng.gen() { Factor::A } else { Factor::C };
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(Syllable {
                factor,
                exp: rng.gen_range(1..self.order(factor)),
            });
            factor = if factor == Factor::A {
                Factor::C
            } else {
                Factor::A
            };
        }
        FPWord(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Metric {
    /// `C'(1/6)`.
    C16,
    /// `C'(1/4)` together with `T(4)`.
    C14T4,
    Fail,
}

impl Metric {
    /// Minimal length of a relator prefix that every nontrivial element of the normal closure
    /// contains.
    pub fn threshold(self) -> Option<usize> {
        match self {
            Metric::C16 => Some(5),
            Metric::C14T4 => Some(4),
            Metric::Fail => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelatorSet {
    pub group: FreeProduct,
    pub q: u32,
    /// Sorted, without repeats.
    pub relators: Vec<FPWord>,
    pub verdict: Metric,
    pub max_piece_syllables: usize,
    pub c16: bool,
    pub c14: bool,
    pub t4: bool,
    prefixes: HashSet<FPWord>,
}

fn common_prefix(x: &FPWord, y: &FPWord) -> usize {
    x.0.iter().zip(&y.0).take_while(|(s, t)| s == t).count()
}

/// No cancellation at the junction of `x y`: the syllables meeting there are in different
/// factors or multiply to a nontrivial element.
fn joins_without_cancellation(g: &FreeProduct, x: &FPWord, y: &FPWord) -> bool {
    match (x.0.last(), y.0.first()) {
        (Some(l), Some(f)) => l.factor != f.factor || (l.exp + f.exp) % g.order(l.factor) != 0,
        _ => true,
    }
}

/// The weakly cyclically reduced conjugates of `(ca)^q` and its inverse, with their metric
/// verdict.
pub fn relator_set(p: u32, q: u32, r: u32) -> Result<RelatorSet, SmallCancelError> {
    if !(3 <= p && p <= q && q <= r && r >= 4) {
        return Err(SmallCancelError::BadSignature(p, q, r));
    }
    let g = FreeProduct { p, r };
    let ca = FPWord(vec![
        Syllable {
            factor: Factor::C,
            exp: 1,
        },
        Syllable {
            factor: Factor::A,
            exp: 1,
        },
    ]);
    let mut base = FPWord::default();
    for _ in 0..q {
        base = g.mul(&base, &ca);
    }
    let mut cyclic = BTreeSet::new();
    for w in [base.clone(), g.inverse(&base)] {
        for k in 0..w.len() {
            let mut v = w.0.clone();
            v.rotate_left(k);
            cyclic.insert(FPWord(v));
        }
    }
    let mut all: BTreeSet<FPWord> = cyclic.clone();
    for w in &cyclic {
        let first = w.0[0];
        for e in 1..g.order(first.factor) {
            if e + first.exp == g.order(first.factor) {
                continue;
            }
            let x = FPWord(vec![Syllable {
                factor: first.factor,
                exp: e,
            }]);
            all.insert(g.conj(&x, w));
        }
    }
    let relators: Vec<FPWord> = all.into_iter().collect();
    debug_assert!(relators.iter().all(|w| g.weakly_cyclically_reduced(w)));
    let pieces: Vec<usize> = relators
        .iter()
        .enumerate()
        .map(|(i, x)| {
            relators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, y)| common_prefix(x, y))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let metric = |den: usize| {
        relators
            .iter()
            .zip(&pieces)
            .all(|(w, &b)| w.len() > den && den * b < w.len())
    };
    let (c16, c14) = (metric(6), metric(4));
    let t4 = satisfies_t4(&g, &relators);
    let verdict = if c16 {
        Metric::C16
    } else if c14 && t4 {
        Metric::C14T4
    } else {
        Metric::Fail
    };
    let prefixes = match verdict.threshold() {
        Some(t) => relators
            .iter()
            .filter(|w| w.len() >= t)
            .map(|w| FPWord(w.0[..t].to_vec()))
            .collect(),
        None => HashSet::new(),
    };
    Ok(RelatorSet {
        group: g,
        q,
        max_piece_syllables: pieces.into_iter().max().unwrap_or(0),
        relators,
        verdict,
        c16,
        c14,
        t4,
        prefixes,
    })
}

/// `T(4)`: for any three relators with no successive pair mutually inverse, at least one of the
/// cyclic products `r1 r2`, `r2 r3`, `r3 r1` has no cancellation.
fn satisfies_t4(g: &FreeProduct, rel: &[FPWord]) -> bool {
    let n = rel.len();
    let inv: Vec<usize> = rel
        .iter()
        .map(|w| {
            let wi = g.inverse(w);
            rel.binary_search(&wi).expect("closed under inverses")
        })
        .collect();
    // cancel[i][j]: the product rel[i] rel[j] cancels at the junction
    let cancel: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| !joins_without_cancellation(g, &rel[i], &rel[j]))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in (0..n).filter(|&j| cancel[i][j] && inv[i] != j) {
            for k in (0..n).filter(|&k| cancel[j][k] && inv[j] != k) {
                if cancel[k][i] && inv[k] != i {
                    return false;
                }
            }
        }
    }
    true
}

impl RelatorSet {
    pub fn contains(&self, w: &FPWord) -> bool {
        self.relators.binary_search(w).is_ok()
    }

    /// Whether the normal form of `w` contains, as consecutive syllables, a prefix of some
    /// relator of the threshold length for the verdict. A `false` answer shows that `w` is not
    /// in the normal closure unless `w` is trivial.
    pub fn greendlinger_contains(&self, w: &FPWord) -> Result<bool, SmallCancelError> {
        let t = self
            .verdict
            .threshold()
            .ok_or(SmallCancelError::UnverifiedMetric)?;
        Ok(w.len() >= t
            && w.0
                .windows(t)
                .any(|s| self.prefixes.contains(&FPWord(s.to_vec()))))
    }

    /// A product of `factors` conjugates `u x u^-1` of random relators by random words of at
    /// most `conj_len` syllables.
    pub fn random_closure_element(
        &self,
        factors: usize,
        conj_len: usize,
        rng: &mut impl Rng,
    ) -> FPWord {
        let g = &self.group;
        let mut w = FPWord::default();
        for _ in 0..factors {
            let x = &self.relators[rng.gen_range(0..self.relators.len())];
            let u = g.random_word(rng.gen_range(0..=conj_len), rng);
            w = g.mul(&w, &g.conj(&u, x));
        }
        w
    }

    /// All conjugates `u x u^-1` of relators by words of at most `conj_len` syllables.
    pub fn conjugates(&self, conj_len: usize) -> HashSet<FPWord> {
        let g = &self.group;
        let mut words = vec![FPWord::default()];
        let mut layer = vec![FPWord::default()];
        for _ in 0..conj_len {
            let mut next = Vec::new();
            for u in &layer {
                for factor in [Factor::A, Factor::C] {
                    if u.0.last().is_some_and(|s| s.factor == factor) {
                        continue;
                    }
                    for e in 1..g.order(factor) {
                        let mut v = u.clone();
                        v.0.push(Syllable { factor, exp: e });
                        next.push(v);
                    }
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        words
            .iter()
            .flat_map(|u| self.relators.iter().map(move |x| g.conj(u, x)))
            .collect()
    }

    /// Partial membership oracle: is `w` a product of at most two conjugated relators with
    /// conjugators of at most `conj_len` syllables? Sound but incomplete.
    pub fn closure_contains_bounded(&self, w: &FPWord, conj_len: usize) -> bool {
        let g = &self.group;
        if w.is_empty() {
            return true;
        }
        let set = self.conjugates(conj_len);
        set.contains(w) || set.iter().any(|t| set.contains(&g.mul(&g.inverse(t), w)))
    }

    /// Draws `samples` nontrivial seeded elements of the normal closure and checks that each
    /// contains a long relator prefix.
    pub fn soundness_check(
        &self,
        samples: usize,
        seed: u64,
    ) -> Result<Soundness, SmallCancelError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tested = 0;
        while tested < samples {
            let w = self.random_closure_element(rng.gen_range(1..=3), 4, &mut rng);
            if w.is_empty() {
                continue;
            }
            tested += 1;
            if !self.greendlinger_contains(&w)? {
                return Ok(Soundness {
                    samples: tested,
                    holds: false,
                    witness: Some(w.to_string()),
                });
            }
        }
        Ok(Soundness {
            samples: tested,
            holds: true,
            witness: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Soundness {
    pub samples: usize,
    pub holds: bool,
    /// A closure element in which no long relator prefix was found.
    pub witness: Option<String>,
}

/// The words `c^j1 a c^j2 a ... c^jm a` with `2 <= j_i <= r/2` and `1 <= m <= blocks`.
pub fn wr_enumerate(r: u32, blocks: usize) -> Vec<FPWord> {
    let js: Vec<u32> = (2..=r / 2).collect();
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..blocks {
        let mut next = Vec::new();
        for w in &layer {
            for &j in &js {
                let mut v: Vec<Syllable> = w.clone();
                v.push(Syllable {
                    factor: Factor::C,
                    exp: j,
                });
                v.push(Syllable {
                    factor: Factor::A,
                    exp: 1,
                });
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(FPWord));
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Injection {
    pub holds: bool,
    pub words: usize,
    pub pairs: usize,
    /// A pair whose quotient was not ruled out of the normal closure.
    pub witness: Option<(String, String)>,
}

/// Checks that distinct words of `W_r` with at most `blocks` blocks have distinct images in
/// `G(p,q,r)`, by showing `w1 w2^-1` avoids every long relator prefix.
pub fn verify_wr_injection(
    p: u32,
    q: u32,
    r: u32,
    blocks: usize,
) -> Result<Injection, SmallCancelError> {
    let rs = relator_set(p, q, r)?;
    let g = rs.group;
    let words = wr_enumerate(r, blocks);
    let mut pairs = 0;
    for (i, w1) in words.iter().enumerate() {
        for w2 in &words[i + 1..] {
            pairs += 1;
            if rs.greendlinger_contains(&g.mul(w1, &g.inverse(w2)))? {
                let witness = Some((w1.to_string(), w2.to_string()));
                return Ok(Injection {
                    holds: false,
                    words: words.len(),
                    pairs,
                    witness,
                });
            }
        }
    }
    Ok(Injection {
        holds: true,
        words: words.len(),
        pairs,
        witness: None,
    })
}

/// Largest `r` with `floor(r/2) - 1 <= e^(2ED)`.
pub fn triangle_order_bound(e: f64, d: f64) -> u64 {
    2 * half_bound(e, d) + 1
}

/// The same bound reading the bracket as `ceil(r/2) - 1`.
pub fn triangle_order_bound_ceiling(e: f64, d: f64) -> u64 {
    2 * half_bound(e, d)
}

fn half_bound(e: f64, d: f64) -> u64 {
    (1.0 + (2.0 * e * d).exp()).floor() as u64
}
