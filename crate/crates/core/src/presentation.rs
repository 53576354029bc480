//! Finite presentations: free words, abelian invariants and coset enumeration.
//!
//! A letter is `i + 1` for generator `i` and `-(i + 1)` for its inverse.

use std::fmt;

use serde::Serialize;

pub type Word = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn power(w: &[i32], n: u32) -> Word {
    w.iter()
        .copied()
        .cycle()
        .take(w.len() * n as usize)
        .collect()
}

/// `a b a^-1 b^-1`.
pub fn commutator(a: i32, b: i32) -> Word {
    vec![a, b, -a, -b]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosetError {
    #[error("coset enumeration exceeded {0} cosets")]
    TooManyCosets(usize),
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Self {
        Self {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn generator(&self, name: &str) -> Option<i32> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as i32 + 1)
    }

    /// Appends a generator and returns its letter.
    pub fn add_generator(&mut self, name: impl Into<String>) -> i32 {
        self.generators.push(name.into());
        self.generators.len() as i32
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[w[i].unsigned_abs() as usize - 1];
            let e = (j - i) as i64 * w[i].signum() as i64;
            parts.push(if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            });
            i = j;
        }
        parts.join("*")
    }

    /// Relators as text, one per entry.
    pub fn formatted_relators(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.format_word(r)).collect()
    }

    /// Invariants of the abelianization, from the Smith normal form of the exponent-sum matrix.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let n = self.generators.len();
        let mut m: Vec<Vec<i128>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![0i128; n];
                for &l in r {
                    row[l.unsigned_abs() as usize - 1] += l.signum() as i128;
                }
                row
            })
            .collect();
        let diag = smith_diagonal(&mut m, n);
        let rank = diag.len();
        let torsion = diag
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| d as u64)
            .collect();
        AbelianInvariants {
            free_rank: n - rank,
            torsion,
        }
    }

    /// Todd-Coxeter enumeration of the cosets of the trivial subgroup, that is the regular
    /// action of the presented group when it is finite.
    pub fn enumerate_cosets(&self, cap: usize) -> Result<CosetTable, CosetError> {
        let mut tc = ToddCoxeter::new(2 * self.generators.len(), cap);
        let rels: Vec<Vec<usize>> = self
            .relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().map(|&l| col(l)).collect())
            .collect();
        let mut c = 0;
        while c < tc.table.len() {
            if tc.live(c) {
                for r in &rels {
                    tc.scan_and_fill(c, r)?;
                    if !tc.live(c) {
                        break;
                    }
                }
                for x in 0..tc.cols {
                    if tc.live(c) && tc.table[c][x] == NONE {
                        tc.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(tc.compact())
    }
}

fn col(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// Nonzero diagonal entries (absolute values) of the Smith normal form, in divisibility order.
fn smith_diagonal(m: &mut [Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t] / m[t][t];
            if q != 0 {
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            if q != 0 {
                for row in m.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % m[t][t] != 0);
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = m[i][j];
                m[t][j] += v;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

const NONE: usize = usize::MAX;

/// A complete coset table; column `2i` is generator `i`, column `2i + 1` its inverse.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    pub fn act(&self, c: usize, l: i32) -> usize {
        self.table[c][col(l)]
    }

    /// Sizes of the balls around coset 0 for the given letters (closed under inversion).
    pub fn ball_sizes(&self, letters: &[i32], radius: usize) -> Vec<usize> {
        let mut seen = vec![false; self.table.len()];
        seen[0] = true;
        let mut frontier = vec![0];
        let mut sizes = vec![1];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &c in &frontier {
                for &l in letters {
                    for d in [self.act(c, l), self.act(c, -l)] {
                        if !seen[d] {
                            seen[d] = true;
                            next.push(d);
                        }
                    }
                }
            }
            sizes.push(sizes.last().copied().unwrap_or(0) + next.len());
            frontier = next;
        }
        sizes
    }
}

struct ToddCoxeter {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cols: usize,
    cap: usize,
    alive: usize,
}

impl ToddCoxeter {
    fn new(cols: usize, cap: usize) -> Self {
        Self {
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            cols,
            cap,
            alive: 1,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CosetError> {
        if self.alive >= self.cap {
            return Err(CosetError::TooManyCosets(self.cap));
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.alive += 1;
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.alive -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CosetError> {
        loop {
            let (mut f, mut b) = (c, c);
            let (mut i, mut j) = (0usize, w.len());
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i && self.table[b][w[j - 1] ^ 1] != NONE {
                b = self.table[b][w[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn compact(mut self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.live(c)).collect();
        let mut index = vec![NONE; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let table = live
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|x| index[self.rep(self.table[c][x])])
                    .collect()
            })
            .collect();
        CosetTable { table }
    }
}
