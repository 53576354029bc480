//! Reduced normal forms and the group operations built on them.

use super::graph::{GraphOfGroups, Kind, Letter, Structure};
use super::GroupError;

/// One syllable of a normal form.
///
/// Free products: `tag` is the factor and `val` a non-identity element of it.
/// Amalgams: `tag` is the side (0 = A, 1 = B) and `val` a non-identity right-coset representative.
/// HNN extensions: `tag` 0 stands for `t`, 1 for `t^-1`, and `val` is the representative that follows it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syl {
    pub tag: u8,
    pub val: i64,
}

/// Canonical reduced form of a group element. Equal elements have equal normal forms.
///
/// Syllables are stored last-first so that left multiplication is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub(crate) gid: u64,
    /// Edge-group index for amalgams, vertex-group element for HNN, unused for free products.
    pub(crate) head: i64,
    pub(crate) rsyl: Vec<Syl>,
}

impl NormalForm {
    pub(crate) fn new(gid: u64, head: i64) -> Self {
        Self {
            gid,
            head,
            rsyl: Vec::new(),
        }
    }

    pub fn gid(&self) -> u64 {
        self.gid
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    /// Syllables in reading order.
    pub fn syllables(&self) -> impl DoubleEndedIterator<Item = Syl> + ExactSizeIterator + '_ {
        self.rsyl.iter().rev().copied()
    }

    /// Syllable at reading position `i`.
    pub fn syl(&self, i: usize) -> Syl {
        self.rsyl[self.rsyl.len() - 1 - i]
    }

    /// Number of syllables: the syllable length in free products and amalgams,
    /// the number of stable letters in HNN extensions.
    pub fn syllable_length(&self) -> usize {
        self.rsyl.len()
    }

    /// True for the identity. Relies on the identity head being 0 (or the identity element).
    pub fn is_identity(&self) -> bool {
        self.rsyl.is_empty() && self.head == 0
    }

    /// The normal form consisting of the head and the first `k` syllables.
    pub fn prefix(&self, k: usize) -> Self {
        let n = self.rsyl.len();
        Self {
            gid: self.gid,
            head: self.head,
            rsyl: self.rsyl[n - k..].to_vec(),
        }
    }

    /// Appends a syllable at the end (reading order). The caller keeps the form reduced.
    pub(crate) fn push_syl(&mut self, s: Syl) {
        self.rsyl.insert(0, s);
    }

    pub(crate) fn pop_syl(&mut self) -> Option<Syl> {
        if self.rsyl.is_empty() {
            None
        } else {
            Some(self.rsyl.remove(0))
        }
    }

    pub(crate) fn last_syl_mut(&mut self) -> Option<&mut Syl> {
        self.rsyl.first_mut()
    }
}

impl GraphOfGroups {
    /// Left-multiplies `nf` by a single letter.
    pub fn prepend(&self, nf: &mut NormalForm, l: Letter) -> Result<(), GroupError> {
        match (&self.structure, l) {
            (_, Letter::Elem { v, .. }) if v as usize >= self.vertices().len() => {
                Err(GroupError::UnresolvedToken(format!("vertex {v}")))
            }
            (Structure::Free, Letter::Elem { v, x }) => {
                let g = self.vg(v);
                if g.is_identity(x) {
                    return Ok(());
                }
                match nf.rsyl.last_mut() {
                    Some(first) if first.tag == v => {
                        let y = g.mul(x, first.val);
                        if g.is_identity(y) {
                            nf.rsyl.pop();
                        } else {
                            first.val = y;
                        }
                    }
                    _ => nf.rsyl.push(Syl { tag: v, val: x }),
                }
                Ok(())
            }
            (Structure::Free, Letter::Stable(_))
            | (Structure::Amalgam { .. }, Letter::Stable(_)) => {
                Err(GroupError::StableLetterInNonHnn)
            }
            (Structure::Amalgam { c, cos }, Letter::Elem { v, x }) => {
                let g = self.vg(v);
                let side = v as usize;
                let y = g.mul(x, c[side][nf.head as usize] as i64);
                let id = g.identity();
                match nf.rsyl.last_mut() {
                    Some(first) if first.tag == v => {
                        let z = g.mul(y, first.val);
                        let (ci, r) = cos[side].dec[z as usize];
                        nf.head = ci as i64;
                        if r as i64 == id {
                            nf.rsyl.pop();
                        } else {
                            first.val = r as i64;
                        }
                    }
                    _ => {
                        let (ci, r) = cos[side].dec[y as usize];
                        nf.head = ci as i64;
                        if r as i64 != id {
                            nf.rsyl.push(Syl {
                                tag: v,
                                val: r as i64,
                            });
                        }
                    }
                }
                Ok(())
            }
            (Structure::Hnn { .. }, Letter::Elem { v: _, x }) => {
                nf.head = self.vg(0).mul(x, nf.head);
                Ok(())
            }
            (
                Structure::Hnn {
                    cm,
                    cp,
                    cos_m,
                    cos_p,
                },
                Letter::Stable(e),
            ) => {
                let g = self.vg(0);
                let id = g.identity();
                let mut apply = |plus: bool| {
                    // t g0 = phi^-1(d) t r  (g0 = d r, d in C+);  t^-1 g0 = phi(c) t^-1 r  (g0 = c r, c in C-)
                    let (ci, r) = if plus {
                        cos_p.dec[nf.head as usize]
                    } else {
                        cos_m.dec[nf.head as usize]
                    };
                    let new_head = if plus {
                        cm[ci as usize]
                    } else {
                        cp[ci as usize]
                    } as i64;
                    let (tag, anti) = if plus { (0u8, 1u8) } else { (1u8, 0u8) };
                    match nf.rsyl.last() {
                        Some(first) if r as i64 == id && first.tag == anti => {
                            let g1 = first.val;
                            nf.rsyl.pop();
                            nf.head = g.mul(new_head, g1);
                        }
                        _ => {
                            nf.rsyl.push(Syl { tag, val: r as i64 });
                            nf.head = new_head;
                        }
                    }
                };
                for _ in 0..e.unsigned_abs() {
                    apply(e > 0);
                }
                Ok(())
            }
        }
    }

    /// Reduces an arbitrary word to normal form.
    pub fn reduce(&self, w: &[Letter]) -> Result<NormalForm, GroupError> {
        let mut nf = self.identity();
        for &l in w.iter().rev() {
            self.prepend(&mut nf, l)?;
        }
        Ok(nf)
    }

    /// A word spelling the normal form.
    pub fn letters(&self, nf: &NormalForm) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * nf.rsyl.len() + 1);
        match &self.structure {
            Structure::Free => {}
            Structure::Amalgam { c, .. } => {
                if nf.head != 0 {
                    out.push(Letter::Elem {
                        v: 0,
                        x: c[0][nf.head as usize] as i64,
                    });
                }
            }
            Structure::Hnn { .. } => {
                if nf.head != self.vg(0).identity() {
                    out.push(Letter::Elem { v: 0, x: nf.head });
                }
            }
        }
        for s in nf.syllables() {
            match self.kind() {
                Kind::Hnn => {
                    out.push(Letter::Stable(if s.tag == 0 { 1 } else { -1 }));
                    if s.val != self.vg(0).identity() {
                        out.push(Letter::Elem { v: 0, x: s.val });
                    }
                }
                _ => out.push(Letter::Elem { v: s.tag, x: s.val }),
            }
        }
        out
    }

    fn check(&self, a: &NormalForm) -> Result<(), GroupError> {
        if a.gid != self.gid() {
            Err(GroupError::MixedGroups)
        } else {
            Ok(())
        }
    }

    /// Product `a * b`, checking that both belong to this group.
    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Product `a * b` for elements known to belong to this group.
    pub fn mul(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut out = b.clone();
        self.lmul_in_place(a, &mut out);
        out
    }

    /// Replaces `b` by `a * b`.
    pub fn lmul_in_place(&self, a: &NormalForm, b: &mut NormalForm) {
        for l in self.letters(a).into_iter().rev() {
            self.prepend(b, l)
                .expect("letters of a normal form are valid");
        }
    }

    pub fn inverse(&self, a: &NormalForm) -> NormalForm {
        let mut nf = self.identity();
        for l in self.letters(a) {
            self.prepend(&mut nf, self.inverse_letter(l))
                .expect("valid letter");
        }
        nf
    }

    pub fn pow(&self, a: &NormalForm, n: i64) -> NormalForm {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            self.lmul_in_place(&base, &mut acc);
        }
        acc
    }

    /// Conjugate `g h g^-1`.
    pub fn conj(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        let gi = self.inverse(g);
        self.mul(g, &self.mul(h, &gi))
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let ab = self.mul(a, b);
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.mul(&ab, &self.mul(&ai, &bi))
    }

    /// Human-readable word for the normal form; re-parseable by [`GraphOfGroups::parse_word`].
    pub fn format(&self, nf: &NormalForm) -> String {
        let parts: Vec<String> = self
            .letters(nf)
            .into_iter()
            .map(|l| match l {
                Letter::Elem { v, x } => self.element_name(v, x),
                Letter::Stable(1) => self.stable_name().to_string(),
                Letter::Stable(e) => format!("{}^{}", self.stable_name(), e),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
