//! A short hyperbolic element and a harvest of conjugates with pairwise distinct axes.

use std::collections::HashSet;

use super::{ceil_root, SchottkyError, SymSet, Tracked};
use crate::group::{GraphOfGroups, NormalForm};

/// Every harvested element has S-length at most this.
pub const HARVEST_LENGTH: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarvestBranch {
    /// The conjugates `s h s^-1` alone provide enough distinct axes.
    ConjugacyClass,
    /// Too few conjugates by single generators; powers of `h` conjugate them further apart.
    PowerConjugates,
}

#[derive(Clone, Debug)]
pub struct Harvest {
    pub h: Tracked,
    /// Conjugates of `h`, so they share its translation length.
    pub elements: Vec<Tracked>,
    pub branch: HarvestBranch,
    pub needed: usize,
}

/// A hyperbolic element of S-length at most 2: the first hyperbolic generator, or else the
/// first hyperbolic product of two generators in index order.
pub fn short_hyperbolic(g: &GraphOfGroups, s: &SymSet) -> Result<Tracked, SchottkyError> {
    for i in 0..s.len() {
        if g.is_hyperbolic(&s.elems[i]) {
            return Ok(s.letter(i));
        }
    }
    for i in 0..s.len() {
        for j in 0..s.len() {
            let p = s.mul(g, &s.letter(i), &s.letter(j));
            if g.is_hyperbolic(&p.nf) {
                return Ok(p);
            }
        }
    }
    Err(SchottkyError::EllipticAction)
}

/// Conjugates of one hyperbolic element share its translation length, and in an acylindrical
/// action two of them share an axis exactly when they are equal or mutually inverse. The
/// registry keeps one element per axis on that basis.
struct AxisRegistry {
    seen: HashSet<NormalForm>,
    kept: Vec<Tracked>,
}

impl AxisRegistry {
    fn offer(&mut self, g: &GraphOfGroups, x: Tracked) -> bool {
        if x.s_length() > HARVEST_LENGTH || self.seen.contains(&x.nf) {
            return false;
        }
        self.seen.insert(g.inverse(&x.nf));
        self.seen.insert(x.nf.clone());
        self.kept.push(x);
        true
    }
}

/// At least `ceil(|S|^(1/4))` conjugates of a short hyperbolic element with pairwise distinct
/// axes, each of S-length at most 20.
pub fn harvest_distinct_axes(g: &GraphOfGroups, s: &SymSet) -> Result<Harvest, SchottkyError> {
    let needed = ceil_root(s.len(), 4).max(2);
    let h = short_hyperbolic(g, s)?;
    let mut reg = AxisRegistry {
        seen: HashSet::new(),
        kept: Vec::new(),
    };
    reg.offer(g, h.clone());
    for i in 0..s.len() {
        reg.offer(g, s.conj(g, &s.letter(i), &h));
    }
    if reg.kept.len() < 2 {
        return Err(SchottkyError::ElementaryAction(g.format(&h.nf)));
    }
    if reg.kept.len() >= needed {
        return Ok(Harvest {
            h,
            elements: reg.kept,
            branch: HarvestBranch::ConjugacyClass,
            needed,
        });
    }
    let reps = reg.kept.clone();
    let max_j = (HARVEST_LENGTH / (2 * h.s_length())) as i64;
    for j in 1..=max_j {
        for e in [j, -j] {
            let c = s.pow(g, &h, e);
            for r in &reps[1..] {
                reg.offer(g, s.conj(g, &c, r));
            }
        }
    }
    if reg.kept.len() < needed {
        return Err(SchottkyError::Shortfall {
            stage: "harvest",
            needed,
            got: reg.kept.len(),
        });
    }
    Ok(Harvest {
        h,
        elements: reg.kept,
        branch: HarvestBranch::PowerConjugates,
        needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    fn f2() -> GraphOfGroups {
        parse_group("[group]\nkind = free_product\nvertex A = infinite x\nvertex B = infinite y\n")
            .unwrap()
    }

    #[test]
    fn free_group_product_of_generators() {
        let g = f2();
        let s = SymSet::new(&g, &g.generator_elements()).unwrap();
        let h = short_hyperbolic(&g, &s).unwrap();
        assert_eq!(h.nf, g.parse_word("x*y").unwrap());
        assert_eq!(g.translation_length(&h.nf), 2);
    }

    #[test]
    fn single_hyperbolic_generator_is_elementary() {
        let g = f2();
        let s = SymSet::new(&g, &[g.parse_word("x*y").unwrap()]).unwrap();
        assert!(matches!(
            harvest_distinct_axes(&g, &s),
            Err(SchottkyError::ElementaryAction(_))
        ));
    }

    #[test]
    fn vertex_group_generators_are_elliptic() {
        let g = f2();
        let s = SymSet::new(
            &g,
            &[g.parse_word("x").unwrap(), g.parse_word("x^2").unwrap()],
        )
        .unwrap();
        assert_eq!(short_hyperbolic(&g, &s), Err(SchottkyError::EllipticAction));
    }
}
