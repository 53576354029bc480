//! Graphs of groups with a single edge, or a single vertex-orbit chain for free products.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::nf::NormalForm;
use super::table::VertexGroup;
use super::GroupError;

/// The shape of the splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    FreeProduct,
    Amalgam,
    Hnn,
}

/// A named vertex group. `gen` is the generator symbol of a cyclic or infinite cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSpec {
    pub name: String,
    pub group: VertexGroup,
    pub gen: Option<String>,
}

/// A letter of a word: an element of a vertex group, or a power of the stable letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Elem { v: u8, x: i64 },
    Stable(i8),
}

/// Right-coset decomposition `x = c * r` of a finite group relative to a subgroup `C`.
/// `dec[x] = (index of c in the subgroup list, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Cosets {
    pub dec: Vec<(u32, u32)>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Structure {
    Free,
    Amalgam {
        /// `c[side][i]` is the image of the i-th element of the edge group in side A (0) or B (1).
        c: [Vec<u32>; 2],
        cos: [Cosets; 2],
    },
    Hnn {
        /// `cm[i]` runs over `C-` and `cp[i] = phi(cm[i])` over `C+`.
        cm: Vec<u32>,
        cp: Vec<u32>,
        cos_m: Cosets,
        cos_p: Cosets,
    },
}

/// Non-triviality conditions of the splitting; all must hold for the action to be non-elementary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NonTriviality {
    /// Every edge group is a proper subgroup of its vertex groups.
    pub proper: bool,
    /// Some relevant index is at least three.
    pub index_condition: bool,
    pub non_elementary: bool,
}

/// A finite graph of groups whose fundamental group acts on the Bass-Serre tree.
#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    pub name: String,
    kind: Kind,
    vertices: Vec<VertexSpec>,
    pub(crate) structure: Structure,
    stable: String,
    generators: Vec<(String, NormalForm)>,
    names: HashMap<String, Letter>,
    gid: u64,
}

fn subgroup_closure(
    a: &VertexGroup,
    b: &VertexGroup,
    pairs: &[(i64, i64)],
) -> Result<(Vec<u32>, Vec<u32>), GroupError> {
    let (VertexGroup::Finite(ta), VertexGroup::Finite(tb)) = (a, b) else {
        return Err(GroupError::InfiniteEdgeGroup);
    };
    let mut la = vec![ta.identity()];
    let mut lb = vec![tb.identity()];
    let mut map: HashMap<u32, u32> = HashMap::from([(ta.identity(), tb.identity())]);
    let mut back: HashMap<u32, u32> = HashMap::from([(tb.identity(), ta.identity())]);
    let gens: Vec<(u32, u32)> = pairs.iter().map(|&(x, y)| (x as u32, y as u32)).collect();
    let mut i = 0;
    while i < la.len() {
        let (x, y) = (la[i], lb[i]);
        for &(gx, gy) in &gens {
            let (px, py) = (ta.mul(x, gx), tb.mul(y, gy));
            match (map.get(&px), back.get(&py)) {
                (Some(&my), _) if my != py => return Err(GroupError::NotAHomomorphism),
                (_, Some(&mx)) if mx != px => return Err(GroupError::NotAHomomorphism),
                (Some(_), _) => {}
                _ => {
                    map.insert(px, py);
                    back.insert(py, px);
                    la.push(px);
                    lb.push(py);
                }
            }
        }
        i += 1;
    }
    Ok((la, lb))
}

fn cosets(t: &super::table::FiniteGroupTable, sub: &[u32]) -> Cosets {
    let n = t.order();
    let pos: HashMap<u32, u32> = sub
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();
    let mut dec = vec![(u32::MAX, u32::MAX); n];
    let mut index = 0;
    for x in 0..n as u32 {
        if dec[x as usize].0 != u32::MAX {
            continue;
        }
        index += 1;
        // representative: identity for C itself, otherwise the least index in the coset
        let rep = if pos.contains_key(&x) {
            t.identity()
        } else {
            x
        };
        for &c in sub {
            let y = t.mul(c, rep);
            dec[y as usize] = (pos[&c], rep);
        }
    }
    Cosets { dec, index }
}

impl GraphOfGroups {
    fn finish(
        name: String,
        kind: Kind,
        vertices: Vec<VertexSpec>,
        structure: Structure,
        stable: String,
    ) -> Result<Self, GroupError> {
        let mut h = DefaultHasher::new();
        kind.hash(&mut h);
        vertices.hash(&mut h);
        structure.hash(&mut h);
        stable.hash(&mut h);
        let gid = h.finish();
        let mut names = HashMap::new();
        let mut add = |s: &str, l: Letter| -> Result<(), GroupError> {
            if s == "1" {
                return Ok(());
            }
            if names.insert(s.to_string(), l).is_some_and(|old| old != l) {
                return Err(GroupError::DuplicateName(s.to_string()));
            }
            Ok(())
        };
        for (v, spec) in vertices.iter().enumerate() {
            let v8 = v as u8;
            match &spec.group {
                VertexGroup::Finite(t) => {
                    for x in 0..t.order() as u32 {
                        if x != t.identity() {
                            add(t.name(x), Letter::Elem { v: v8, x: x as i64 })?;
                        }
                    }
                    if let Some(g) = &spec.gen {
                        if t.order() > 1 {
                            add(g, Letter::Elem { v: v8, x: 1 })?;
                        }
                    }
                }
                VertexGroup::InfiniteCyclic => {
                    let g = spec.gen.as_deref().ok_or(GroupError::MissingGenerator)?;
                    add(g, Letter::Elem { v: v8, x: 1 })?;
                }
            }
        }
        if kind == Kind::Hnn {
            add(&stable, Letter::Stable(1))?;
        }
        let mut g = GraphOfGroups {
            name,
            kind,
            vertices,
            structure,
            stable,
            generators: Vec::new(),
            names,
            gid,
        };
        g.generators = g.default_generators();
        Ok(g)
    }

    fn default_generators(&self) -> Vec<(String, NormalForm)> {
        let mut out = Vec::new();
        for (v, spec) in self.vertices.iter().enumerate() {
            let gens: Vec<i64> = match &spec.group {
                VertexGroup::Finite(t) if spec.gen.is_some() && t.order() > 1 => vec![1],
                VertexGroup::Finite(t) => (0..t.order() as i64)
                    .filter(|&x| x != t.identity() as i64)
                    .collect(),
                VertexGroup::InfiniteCyclic => vec![1],
            };
            for x in gens {
                let nf = self
                    .reduce(&[Letter::Elem { v: v as u8, x }])
                    .expect("letter");
                if !nf.is_identity() && !out.iter().any(|(_, y)| *y == nf) {
                    out.push((self.format(&nf), nf));
                }
            }
        }
        if self.kind == Kind::Hnn {
            let t = self.reduce(&[Letter::Stable(1)]).expect("stable letter");
            out.push((self.stable.clone(), t));
        }
        out
    }

    /// Free product of the given factors; the tree is a chain of vertex orbits.
    pub fn free_product(name: &str, factors: Vec<VertexSpec>) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.len() > 200 {
            return Err(GroupError::BadShape(
                "free product needs 1 to 200 factors".into(),
            ));
        }
        Self::finish(
            name.into(),
            Kind::FreeProduct,
            factors,
            Structure::Free,
            "t".into(),
        )
    }

    /// Amalgam `A *_C B`; `pairs` generate the edge group as pairs `(iota_A(c), iota_B(c))`.
    pub fn amalgam(
        name: &str,
        a: VertexSpec,
        b: VertexSpec,
        pairs: &[(i64, i64)],
    ) -> Result<Self, GroupError> {
        let (ca, cb) = subgroup_closure(&a.group, &b.group, pairs)?;
        let (VertexGroup::Finite(ta), VertexGroup::Finite(tb)) = (&a.group, &b.group) else {
            return Err(GroupError::InfiniteEdgeGroup);
        };
        let cos = [cosets(ta, &ca), cosets(tb, &cb)];
        let structure = Structure::Amalgam { c: [ca, cb], cos };
        Self::finish(
            name.into(),
            Kind::Amalgam,
            vec![a, b],
            structure,
            "t".into(),
        )
    }

    /// HNN extension `A*_phi`; `pairs` generate `phi: C- -> C+` as pairs `(c, phi(c))`.
    /// The stable letter satisfies `t^-1 c t = phi(c)`.
    pub fn hnn(
        name: &str,
        a: VertexSpec,
        pairs: &[(i64, i64)],
        stable: &str,
    ) -> Result<Self, GroupError> {
        let (cm, cp) = subgroup_closure(&a.group, &a.group, pairs)?;
        let VertexGroup::Finite(ta) = &a.group else {
            return Err(GroupError::InfiniteEdgeGroup);
        };
        let structure = Structure::Hnn {
            cos_m: cosets(ta, &cm),
            cos_p: cosets(ta, &cp),
            cm,
            cp,
        };
        Self::finish(name.into(), Kind::Hnn, vec![a], structure, stable.into())
    }

    /// Replaces the default generating set (one generator per vertex-group generator).
    pub fn set_generators(&mut self, gens: Vec<(String, NormalForm)>) {
        self.generators = gens;
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn gid(&self) -> u64 {
        self.gid
    }

    pub fn vertices(&self) -> &[VertexSpec] {
        &self.vertices
    }

    #[inline]
    pub fn vg(&self, v: u8) -> &VertexGroup {
        &self.vertices[v as usize].group
    }

    pub fn stable_name(&self) -> &str {
        &self.stable
    }

    pub fn generators(&self) -> &[(String, NormalForm)] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<NormalForm> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names.get(name).copied()
    }

    /// Number of vertex orbits of the Bass-Serre tree.
    pub fn orbit_count(&self) -> u8 {
        match self.kind {
            Kind::FreeProduct => self.vertices.len() as u8,
            Kind::Amalgam => 2,
            Kind::Hnn => 1,
        }
    }

    /// Size of the edge group (1 for free products).
    pub fn edge_group_order(&self) -> usize {
        match &self.structure {
            Structure::Free => 1,
            Structure::Amalgam { c, .. } => c[0].len(),
            Structure::Hnn { cm, .. } => cm.len(),
        }
    }

    pub fn non_triviality(&self) -> NonTriviality {
        match &self.structure {
            Structure::Free => {
                let orders: Vec<Option<usize>> = self
                    .vertices
                    .iter()
                    .filter(|v| !v.group.is_trivial())
                    .map(|v| v.group.order())
                    .collect();
                let two_by_two = orders.len() == 2 && orders.iter().all(|o| *o == Some(2));
                let index = orders.len() >= 3 || orders.iter().any(|o| o.map_or(true, |n| n >= 3));
                NonTriviality {
                    proper: orders.len() >= 2,
                    index_condition: index && orders.len() >= 2,
                    non_elementary: orders.len() >= 2 && !two_by_two,
                }
            }
            Structure::Amalgam { cos, .. } => {
                let proper = cos[0].index >= 2 && cos[1].index >= 2;
                let index = cos[0].index >= 3 || cos[1].index >= 3;
                NonTriviality {
                    proper,
                    index_condition: index,
                    non_elementary: proper && index,
                }
            }
            Structure::Hnn { cos_m, cos_p, .. } => {
                let index = cos_m.index + cos_p.index >= 3;
                NonTriviality {
                    proper: true,
                    index_condition: index,
                    non_elementary: index,
                }
            }
        }
    }

    /// The identity element.
    pub fn identity(&self) -> NormalForm {
        let head = match self.kind {
            Kind::Hnn => self.vg(0).identity(),
            _ => 0,
        };
        NormalForm::new(self.gid, head)
    }

    pub fn inverse_letter(&self, l: Letter) -> Letter {
        match l {
            Letter::Elem { v, x } => Letter::Elem {
                v,
                x: self.vg(v).inv(x),
            },
            Letter::Stable(e) => Letter::Stable(-e),
        }
    }

    /// Element of vertex group `v` viewed as a group element.
    pub fn vertex_element(&self, v: u8, x: i64) -> NormalForm {
        self.reduce(&[Letter::Elem { v, x }])
            .expect("vertex letter")
    }

    /// Name of the element `x` of vertex group `v`.
    pub fn element_name(&self, v: u8, x: i64) -> String {
        let spec = &self.vertices[v as usize];
        match &spec.group {
            VertexGroup::Finite(t) => t.name(x as u32).to_string(),
            VertexGroup::InfiniteCyclic => {
                let g = spec.gen.as_deref().unwrap_or("z");
                match x {
                    0 => "1".into(),
                    1 => g.into(),
                    _ => format!("{g}^{x}"),
                }
            }
        }
    }
}
