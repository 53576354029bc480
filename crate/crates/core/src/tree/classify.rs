//! Elliptic/hyperbolic classification and fixed-point sets.

use std::collections::{HashMap, VecDeque};

use super::{Geodesic, Vertex};
use crate::group::{GraphOfGroups, Kind, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("empty axis window")]
    EmptyAxis,
}

#[derive(Clone, Debug)]
pub enum Classification {
    /// `fix_window` is the fixed set of the element within `window` of `center`,
    /// the fixed vertex nearest to the base vertex.
    Elliptic {
        fix_window: Vec<Vertex>,
        diameter: u64,
        center: Vertex,
    },
    /// `axis_window` lists axis positions `-window..=window` around the axis vertex nearest `v_0`.
    Hyperbolic {
        translation_length: u64,
        axis_window: Geodesic,
    },
}

/// A finite subtree discovered by breadth-first search, with its own adjacency.
pub(crate) struct Subtree {
    pub vertices: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
}

impl Subtree {
    fn farthest(&self, from: usize) -> (usize, u64) {
        let mut dist = vec![u64::MAX; self.vertices.len()];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        let mut best = (from, 0);
        while let Some(u) = q.pop_front() {
            if dist[u] > best.1 || (dist[u] == best.1 && u < best.0) {
                best = (u, dist[u]);
            }
            for &w in &self.adj[u] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        best
    }

    /// Diameter with a pair of vertices realising it.
    pub fn diameter(&self) -> (u64, usize, usize) {
        let (a, _) = self.farthest(0);
        let (b, d) = self.farthest(a);
        (d, a.min(b), a.max(b))
    }
}

impl GraphOfGroups {
    /// `tau(g) = max(0, d(v_0, g^2 v_0) - d(v_0, g v_0))`, which equals `min_v d(v, g v)`.
    pub fn translation_length(&self, g: &NormalForm) -> u64 {
        let d1 = self.dist_base(0, g, 0);
        let d2 = self.dist_base(0, &self.mul(g, g), 0);
        d2.saturating_sub(d1)
    }

    pub fn is_hyperbolic(&self, g: &NormalForm) -> bool {
        self.translation_length(g) > 0
    }

    /// The fixed vertex of an elliptic element nearest to `v_0`.
    pub fn nearest_fixed_vertex(&self, g: &NormalForm) -> Vertex {
        let d1 = self.dist_base(0, g, 0);
        let path = self.path_base(0, g, 0);
        self.canonical(&path[(d1 / 2) as usize])
    }

    /// Vertices of `Fix(g)` reachable from `start` (which must be fixed) and satisfying `keep`,
    /// explored through fixed neighbours. Links of infinite vertex groups are truncated to
    /// exponents at most `z_bound`.
    pub(crate) fn fixed_subtree(
        &self,
        g: &NormalForm,
        start: Vertex,
        z_bound: i64,
        keep: &dyn Fn(&Vertex) -> bool,
    ) -> Subtree {
        let mut vertices = vec![start.clone()];
        let mut adj = vec![Vec::new()];
        let mut index: HashMap<Vertex, usize> = HashMap::from([(start, 0)]);
        // nontrivial elements fix no edge of a free product tree
        let explore = g.is_identity() || self.kind() != Kind::FreeProduct;
        let mut i = 0;
        while explore && i < vertices.len() {
            let v = vertices[i].clone();
            for w in self.neighbors(&v, z_bound) {
                if index.contains_key(&w) || !keep(&w) {
                    continue;
                }
                if !g.is_identity() && self.displacement(g, &w) != 0 {
                    continue;
                }
                let j = vertices.len();
                index.insert(w.clone(), j);
                vertices.push(w);
                adj.push(vec![i]);
                adj[i].push(j);
            }
            i += 1;
        }
        Subtree { vertices, adj }
    }

    /// Classifies `g` and returns a finite window of its axis or fixed set.
    pub fn classify(&self, g: &NormalForm, window: u64) -> Classification {
        let tau = self.translation_length(g);
        if tau > 0 {
            let ax = self.axis(g).expect("hyperbolic");
            let w = window as i64;
            return Classification::Hyperbolic {
                translation_length: tau,
                axis_window: self.axis_window(&ax, -w, w),
            };
        }
        let center = self.nearest_fixed_vertex(g);
        let c = center.clone();
        let tree = self.fixed_subtree(g, center.clone(), window as i64, &|w| {
            self.distance(&c, w) <= window
        });
        let (diameter, _, _) = tree.diameter();
        let mut fix_window = tree.vertices;
        fix_window.sort();
        Classification::Elliptic {
            fix_window,
            diameter,
            center,
        }
    }

    /// Axes overlap of two hyperbolic elements, restricted to `window` positions on either
    /// side of the first common vertex found.
    pub fn axes_overlap(
        &self,
        h1: &NormalForm,
        h2: &NormalForm,
        window: u64,
    ) -> Result<(Geodesic, i64), TreeError> {
        let a1 = self.axis(h1).ok_or(TreeError::NotHyperbolic)?;
        let a2 = self.axis(h2).ok_or(TreeError::NotHyperbolic)?;
        match self.axis_overlap(&a1, &a2, 2 * window) {
            super::Overlap::Disjoint { .. } => Ok((
                Geodesic {
                    vertices: Vec::new(),
                },
                -1,
            )),
            super::Overlap::Intersect { lo, hi, .. } => {
                let seg = self.axis_window(&a1, lo, hi);
                Ok((seg, hi - lo))
            }
        }
    }

    /// Projection of `v` onto a finite geodesic. When `axis_of` is given the projection is
    /// taken onto that element's full axis, and `clamped` reports that it fell outside the window.
    pub fn project(
        &self,
        v: &Vertex,
        seg: &Geodesic,
        axis_of: Option<&NormalForm>,
    ) -> Result<(Vertex, bool), TreeError> {
        let (Some(a), Some(b)) = (seg.vertices.first(), seg.vertices.last()) else {
            return Err(TreeError::EmptyAxis);
        };
        let dab = self.distance(a, b);
        let da = self.distance(a, v);
        let db = self.distance(b, v);
        let k = (da + dab - db) / 2;
        let p = self.canonical(&self.point_on(a, b, k));
        if let Some(h) = axis_of {
            let ax = self.axis(h).ok_or(TreeError::NotHyperbolic)?;
            let true_p = self.canonical(&self.project_to_axis(v, &ax));
            let clamped = true_p != p;
            return Ok((p, clamped));
        }
        Ok((p, false))
    }
}
