//! The Bass-Serre tree: vertices, distances, geodesics and the group action.
//!
//! A vertex is a pair `(rep, orbit)` standing for `rep · v_orbit`, where `v_orbit` is a base
//! vertex. Free products use a chain of base vertices `v_0 - v_1 - ... - v_{n-1}` (one per
//! factor, trivial edge groups); amalgams use `v_A - v_B`; HNN extensions use a single base
//! vertex with the edge `v_0 - t·v_0`.

mod axis;
mod classify;
mod law;
mod probe;

pub use axis::{Axis, AxisCursor, Overlap};
pub use classify::{Classification, TreeError};
pub use law::{axis_law_check, same_axis, AxisLawReport, LawViolation};
pub use probe::{acylindricity_probe, AcylindricityProbe, ProbeWitness};

use std::collections::HashSet;

use crate::group::{GraphOfGroups, Kind, Letter, NormalForm, Syl};
use crate::group::{Structure, VertexGroup};

/// A vertex `rep · v_orbit`. Representatives are not unique; see [`GraphOfGroups::canonical`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub orbit: u8,
    pub rep: NormalForm,
}

/// A finite geodesic segment, listed from one end to the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geodesic {
    pub vertices: Vec<Vertex>,
}

impl Geodesic {
    /// Number of edges, or -1 for the empty segment.
    pub fn length(&self) -> i64 {
        self.vertices.len() as i64 - 1
    }
}

impl GraphOfGroups {
    pub fn base_vertex(&self, orbit: u8) -> Vertex {
        Vertex {
            orbit,
            rep: self.identity(),
        }
    }

    /// `d(v_i, x · v_j)`.
    pub fn dist_base(&self, i: u8, x: &NormalForm, j: u8) -> u64 {
        if self.kind() == Kind::Hnn {
            return x.syllable_length() as u64;
        }
        let mut prev = i as i64;
        let mut d = 0u64;
        for s in x.syllables() {
            d += (prev - s.tag as i64).unsigned_abs();
            prev = s.tag as i64;
        }
        d + (prev - j as i64).unsigned_abs()
    }

    pub fn distance(&self, u: &Vertex, v: &Vertex) -> u64 {
        let x = self.mul(&self.inverse(&u.rep), &v.rep);
        self.dist_base(u.orbit, &x, v.orbit)
    }

    /// The geodesic from `v_i` to `x · v_j`, with non-canonical representatives.
    pub fn path_base(&self, i: u8, x: &NormalForm, j: u8) -> Vec<Vertex> {
        let mut out = Vec::new();
        if self.kind() == Kind::Hnn {
            let id = self.vg(0).identity();
            let mut pre = x.prefix(0);
            out.push(Vertex {
                orbit: 0,
                rep: pre.clone(),
            });
            for s in x.syllables() {
                pre.push_syl(Syl {
                    tag: s.tag,
                    val: id,
                });
                out.push(Vertex {
                    orbit: 0,
                    rep: pre.clone(),
                });
                pre.last_syl_mut().expect("just pushed").val = s.val;
            }
            return out;
        }
        let mut pre = x.prefix(0);
        let mut cur = i as i64;
        out.push(Vertex {
            orbit: i,
            rep: pre.clone(),
        });
        let walk = |out: &mut Vec<Vertex>, pre: &NormalForm, from: i64, to: i64| {
            let step = if to > from { 1 } else { -1 };
            let mut l = from;
            while l != to {
                l += step;
                out.push(Vertex {
                    orbit: l as u8,
                    rep: pre.clone(),
                });
            }
        };
        for s in x.syllables() {
            walk(&mut out, &pre, cur, s.tag as i64);
            cur = s.tag as i64;
            pre.push_syl(s);
        }
        walk(&mut out, &pre, cur, j as i64);
        out
    }

    /// Left action `g · v`.
    pub fn act(&self, g: &NormalForm, v: &Vertex) -> Vertex {
        Vertex {
            orbit: v.orbit,
            rep: self.mul(g, &v.rep),
        }
    }

    /// The geodesic `[u, v]`, canonical representatives.
    pub fn geodesic(&self, u: &Vertex, v: &Vertex) -> Geodesic {
        let x = self.mul(&self.inverse(&u.rep), &v.rep);
        let vertices = self
            .path_base(u.orbit, &x, v.orbit)
            .into_iter()
            .map(|w| self.canonical(&self.act(&u.rep, &w)))
            .collect();
        Geodesic { vertices }
    }

    /// The vertex at distance `k` from `u` on `[u, v]` (non-canonical representative).
    pub fn point_on(&self, u: &Vertex, v: &Vertex, k: u64) -> Vertex {
        let x = self.mul(&self.inverse(&u.rep), &v.rep);
        let p = self.path_base(u.orbit, &x, v.orbit);
        let w = &p[(k as usize).min(p.len() - 1)];
        self.act(&u.rep, w)
    }

    /// The unique representative of a vertex: the least normal form of minimal length.
    pub fn canonical(&self, v: &Vertex) -> Vertex {
        let mut y = v.rep.clone();
        let o = v.orbit;
        match self.kind() {
            Kind::FreeProduct => {
                if y.syllables().next_back().is_some_and(|s| s.tag == o) {
                    y.pop_syl();
                }
                Vertex { orbit: o, rep: y }
            }
            Kind::Amalgam => {
                if y.syllables().next_back().is_some_and(|s| s.tag == o) {
                    y.pop_syl();
                }
                if y.syllable_length() == 0 {
                    return self.base_vertex(o);
                }
                let best = self
                    .edge_elements(o)
                    .into_iter()
                    .map(|c| self.mul(&y, &c))
                    .min()
                    .expect("edge group is nonempty");
                Vertex {
                    orbit: o,
                    rep: best,
                }
            }
            Kind::Hnn => {
                let Some(last) = y.syllables().next_back() else {
                    return self.base_vertex(0);
                };
                let id = self.vg(0).identity();
                y.last_syl_mut().expect("nonempty").val = id;
                let best = self
                    .hnn_side_elements(last.tag == 0)
                    .into_iter()
                    .map(|c| self.mul(&y, &c))
                    .min()
                    .expect("edge group is nonempty");
                Vertex {
                    orbit: 0,
                    rep: best,
                }
            }
        }
    }

    /// Elements `iota_o(c)` for `c` in the edge group of an amalgam.
    fn edge_elements(&self, o: u8) -> Vec<NormalForm> {
        match &self.structure {
            Structure::Amalgam { c, .. } => c[o as usize]
                .iter()
                .map(|&x| self.vertex_element(o, x as i64))
                .collect(),
            _ => vec![self.identity()],
        }
    }

    /// `C+` (if `plus`) or `C-` of an HNN extension as group elements.
    fn hnn_side_elements(&self, plus: bool) -> Vec<NormalForm> {
        match &self.structure {
            Structure::Hnn { cm, cp, .. } => {
                let list = if plus { cp } else { cm };
                list.iter()
                    .map(|&x| self.vertex_element(0, x as i64))
                    .collect()
            }
            _ => vec![self.identity()],
        }
    }

    /// Neighbours of `v`, canonical and sorted. Links of infinite cyclic vertex groups are
    /// truncated to exponents in `[-z_bound, z_bound]`.
    pub fn neighbors(&self, v: &Vertex, z_bound: i64) -> Vec<Vertex> {
        let mut out: HashSet<Vertex> = HashSet::new();
        let o = v.orbit;
        match self.kind() {
            Kind::FreeProduct => {
                let n = self.vertices().len() as i64;
                for l in [o as i64 - 1, o as i64 + 1] {
                    if l < 0 || l >= n {
                        continue;
                    }
                    for x in self.vg(o).elements(z_bound) {
                        let rep = self.mul(&v.rep, &self.vertex_element(o, x));
                        out.insert(self.canonical(&Vertex {
                            orbit: l as u8,
                            rep,
                        }));
                    }
                }
            }
            Kind::Amalgam => {
                for x in self.vg(o).elements(z_bound) {
                    let rep = self.mul(&v.rep, &self.vertex_element(o, x));
                    out.insert(self.canonical(&Vertex { orbit: 1 - o, rep }));
                }
            }
            Kind::Hnn => {
                for x in self.vg(0).elements(z_bound) {
                    let a = self.mul(&v.rep, &self.vertex_element(0, x));
                    for e in [1i8, -1] {
                        let mut rep = self.reduce(&[Letter::Stable(e)]).expect("hnn");
                        rep = self.mul(&a, &rep);
                        out.insert(self.canonical(&Vertex { orbit: 0, rep }));
                    }
                }
            }
        }
        let mut v: Vec<Vertex> = out.into_iter().collect();
        v.sort();
        v
    }

    /// True when every vertex group of the tree is finite (the tree is locally finite).
    pub fn locally_finite(&self) -> bool {
        self.vertices()
            .iter()
            .all(|s| matches!(s.group, VertexGroup::Finite(_)))
    }
}
