//! Axes of hyperbolic elements: walking, projections and overlaps.

use std::collections::HashMap;

use super::{Geodesic, Vertex};
use crate::group::{GraphOfGroups, NormalForm};

/// The axis of a hyperbolic element `g`, parametrised by signed positions.
///
/// Position `0` is `base`, the axis vertex nearest to the base vertex `v_0`;
/// positive positions lie in the direction of translation.
#[derive(Clone, Debug)]
pub struct Axis {
    pub g: NormalForm,
    pub g_inv: NormalForm,
    pub tau: u64,
    pub base: Vertex,
    /// `seg[r]` is the vertex at position `r` for `0 <= r < tau`.
    seg: Vec<Vertex>,
}

/// Result of comparing two axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// Disjoint axes; `near1` on the first axis and `near2` on the second span the bridge.
    Disjoint {
        near1: Vertex,
        near2: Vertex,
        distance: u64,
    },
    /// The axes share the segment `[lo, hi]` (positions on the first axis).
    /// `resolved` is false when the walk stopped at the cap, so the overlap may be longer.
    Intersect { lo: i64, hi: i64, resolved: bool },
}

impl Overlap {
    /// Number of shared edges, or -1 when the axes are disjoint.
    pub fn diameter(&self) -> i64 {
        match self {
            Overlap::Disjoint { .. } => -1,
            Overlap::Intersect { lo, hi, .. } => hi - lo,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Overlap::Disjoint { .. })
    }
}

/// Caches powers of the axis element while walking along it.
pub struct AxisCursor<'a> {
    ax: &'a Axis,
    g: &'a GraphOfGroups,
    powers: HashMap<i64, NormalForm>,
}

impl<'a> AxisCursor<'a> {
    pub fn new(g: &'a GraphOfGroups, ax: &'a Axis) -> Self {
        Self {
            ax,
            g,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, q: i64) -> NormalForm {
        if let Some(p) = self.powers.get(&q) {
            return p.clone();
        }
        let p = if q == 0 {
            self.g.identity()
        } else {
            let prev = self.power(q - q.signum());
            let step = if q > 0 { &self.ax.g } else { &self.ax.g_inv };
            self.g.mul(step, &prev)
        };
        self.powers.insert(q, p.clone());
        p
    }

    /// The axis vertex at signed position `i` (non-canonical representative).
    pub fn at(&mut self, i: i64) -> Vertex {
        let t = self.ax.tau as i64;
        let (q, r) = (i.div_euclid(t), i.rem_euclid(t));
        let p = self.power(q);
        self.g.act(&p, &self.ax.seg[r as usize])
    }
}

impl GraphOfGroups {
    /// `d(v, g·v)`.
    pub fn displacement(&self, g: &NormalForm, v: &Vertex) -> u64 {
        let x = self.mul(&self.inverse(&v.rep), &self.mul(g, &v.rep));
        self.dist_base(v.orbit, &x, v.orbit)
    }

    /// The axis of `g`, or `None` when `g` is elliptic.
    pub fn axis(&self, g: &NormalForm) -> Option<Axis> {
        let tau = self.translation_length(g);
        if tau == 0 {
            return None;
        }
        let d1 = self.dist_base(0, g, 0);
        let path = self.path_base(0, g, 0);
        let base = self.canonical(&path[((d1 - tau) / 2) as usize]);
        let x = self.mul(&self.inverse(&base.rep), &self.mul(g, &base.rep));
        let seg = self
            .path_base(base.orbit, &x, base.orbit)
            .into_iter()
            .take(tau as usize)
            .map(|w| self.act(&base.rep, &w))
            .collect();
        Some(Axis {
            g: g.clone(),
            g_inv: self.inverse(g),
            tau,
            base,
            seg,
        })
    }

    pub fn on_axis(&self, v: &Vertex, ax: &Axis) -> bool {
        self.displacement(&ax.g, v) == ax.tau
    }

    /// Nearest-point projection of `v` onto the axis.
    pub fn project_to_axis(&self, v: &Vertex, ax: &Axis) -> Vertex {
        let gv = self.act(&ax.g, v);
        let d = self.distance(v, &gv);
        self.point_on(v, &gv, (d - ax.tau) / 2)
    }

    /// Signed position of an axis vertex.
    pub fn axis_position(&self, ax: &Axis, v: &Vertex) -> i64 {
        let d0 = self.distance(&ax.base, v);
        if d0 == 0 {
            return 0;
        }
        let gp = self.act(&ax.g, &ax.base);
        if self.distance(&gp, v) < d0 + ax.tau {
            d0 as i64
        } else {
            -(d0 as i64)
        }
    }

    /// Position on `ax` of the projection of `v`.
    pub fn projected_position(&self, ax: &Axis, v: &Vertex) -> i64 {
        let p = self.project_to_axis(v, ax);
        self.axis_position(ax, &p)
    }

    /// Compares two axes, walking the common segment until its length reaches `cap`.
    pub fn axis_overlap(&self, a1: &Axis, a2: &Axis, cap: u64) -> Overlap {
        let q = self.project_to_axis(&a2.base, a1);
        if !self.on_axis(&q, a2) {
            let r = self.project_to_axis(&q, a2);
            let distance = self.distance(&q, &r);
            return Overlap::Disjoint {
                near1: self.canonical(&q),
                near2: self.canonical(&r),
                distance,
            };
        }
        let pq = self.axis_position(a1, &q);
        let mut cur = AxisCursor::new(self, a1);
        let cap = cap as i64;
        let (mut lo, mut hi) = (pq, pq);
        while hi - lo < cap && self.on_axis(&cur.at(hi + 1), a2) {
            hi += 1;
        }
        while hi - lo < cap && self.on_axis(&cur.at(lo - 1), a2) {
            lo -= 1;
        }
        Overlap::Intersect {
            lo,
            hi,
            resolved: hi - lo < cap,
        }
    }

    /// Axis vertices at positions `lo..=hi`, canonical.
    pub fn axis_window(&self, ax: &Axis, lo: i64, hi: i64) -> Geodesic {
        let mut cur = AxisCursor::new(self, ax);
        Geodesic {
            vertices: (lo..=hi).map(|i| self.canonical(&cur.at(i))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::group::parse_group;

    #[test]
    fn modular_axis_overlaps() {
        let g = parse_group(
            "[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cyclic 3 b\n",
        )
        .unwrap();
        let h = g.parse_word("a*b").unwrap();
        let ax = g.axis(&h).unwrap();
        assert_eq!(ax.tau, 2);
        let same = g.axis_overlap(&ax, &ax, 10);
        assert_eq!(same.diameter(), 10);
        assert!(matches!(
            same,
            super::Overlap::Intersect {
                resolved: false,
                ..
            }
        ));
        // a conjugate by a far-away element has a disjoint axis
        let c = g.parse_word("(b*a)^3*b").unwrap();
        let ax2 = g.axis(&g.conj(&c, &h)).unwrap();
        let o = g.axis_overlap(&ax, &ax2, 10);
        assert!(o.diameter() < 10);
    }
}
