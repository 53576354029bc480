//! The graph of nerves of a family with pairwise disjoint axes.
//!
//! The convex hull of the axes, with the axes themselves removed, splits into components called
//! nerves. Each nerve touches an axis in at most one vertex (its nervertex). Axes and nerves
//! form a bipartite tree whose leaves are axes.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::family::{FamilyConfig, PSFamily};
use super::refine::{Refined, RefinedKind};
use super::{ceil_root, SchottkyError};
use crate::group::GraphOfGroups;
use crate::tree::{Overlap, Vertex};

/// Bridges longer than this are not walked.
pub const BRIDGE_WINDOW: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NerveNode {
    /// A member axis, by family index.
    Axis(usize),
    Nerve(usize),
}

#[derive(Clone, Debug)]
pub struct NerveGraph {
    pub nodes: Vec<NerveNode>,
    /// Node index pairs `(axis, nerve)`.
    pub edges: Vec<(usize, usize)>,
    /// `(family index, nerve id)` to the nervertex on that axis.
    pub nervertices: BTreeMap<(usize, usize), Vertex>,
}

impl NerveGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }
}

/// Leaves, diameter and a diametral path of a finite tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeShape {
    pub vertices: usize,
    pub leaves: usize,
    pub diameter: usize,
    pub path: Vec<usize>,
}

fn bfs(adj: &[Vec<usize>], from: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                q.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Shape of a tree given by adjacency lists. Returns `None` unless the graph is a tree.
pub fn tree_shape(adj: &[Vec<usize>]) -> Option<TreeShape> {
    let n = adj.len();
    if n == 0 {
        return None;
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let (d0, _) = bfs(adj, 0);
    if edges + 1 != n || d0.contains(&usize::MAX) {
        return None;
    }
    let far = |d: &[usize]| {
        (0..n)
            .max_by_key(|&i| (d[i], std::cmp::Reverse(i)))
            .unwrap_or(0)
    };
    let a = far(&d0);
    let (da, parent) = bfs(adj, a);
    let b = far(&da);
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    let leaves = if n == 1 {
        1
    } else {
        adj.iter().filter(|l| l.len() == 1).count()
    };
    Some(TreeShape {
        vertices: n,
        leaves,
        diameter: da[b],
        path,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the graph of nerves of the selected members, which must have pairwise disjoint axes.
pub fn nerve_graph(
    g: &GraphOfGroups,
    f: &PSFamily,
    sel: &[usize],
) -> Result<NerveGraph, SchottkyError> {
    let mut on_axis: HashMap<Vertex, Option<usize>> = HashMap::new();
    let mut classify = |v: &Vertex| -> Option<usize> {
        *on_axis
            .entry(v.clone())
            .or_insert_with(|| sel.iter().copied().find(|&i| g.on_axis(v, &f.axes[i])))
    };
    let mut uf = UnionFind(Vec::new());
    let mut piece: HashMap<Vertex, usize> = HashMap::new();
    // a bridge edge joining two axes directly is a nerve on its own
    let mut link: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut attach: Vec<(usize, usize, Vertex)> = Vec::new();
    for (x, &a) in sel.iter().enumerate() {
        for &b in &sel[x + 1..] {
            let Overlap::Disjoint {
                near1,
                near2,
                distance,
            } = &f.overlaps[a][b]
            else {
                return Err(SchottkyError::WrongConfig);
            };
            if *distance > BRIDGE_WINDOW {
                return Err(SchottkyError::WindowExceeded(BRIDGE_WINDOW));
            }
            let bridge: Vec<Vertex> = g
                .geodesic(near1, near2)
                .vertices
                .iter()
                .map(|v| g.canonical(v))
                .collect();
            let kinds: Vec<Option<usize>> = bridge.iter().map(&mut classify).collect();
            for e in 0..bridge.len() - 1 {
                let (u, w) = (&bridge[e], &bridge[e + 1]);
                match (kinds[e], kinds[e + 1]) {
                    (Some(i), Some(j)) if i == j => {}
                    (Some(i), Some(j)) => {
                        let key = if u < w {
                            (u.clone(), w.clone())
                        } else {
                            (w.clone(), u.clone())
                        };
                        let id = *link.entry(key).or_insert_with(|| uf.add());
                        attach.push((i, id, u.clone()));
                        attach.push((j, id, w.clone()));
                    }
                    (Some(i), None) | (None, Some(i)) => {
                        let (av, nv) = if kinds[e].is_some() { (u, w) } else { (w, u) };
                        let id = *piece.entry(nv.clone()).or_insert_with(|| uf.add());
                        attach.push((i, id, av.clone()));
                    }
                    (None, None) => {
                        let iu = *piece.entry(u.clone()).or_insert_with(|| uf.add());
                        let iw = *piece.entry(w.clone()).or_insert_with(|| uf.add());
                        uf.union(iu, iw);
                    }
                }
            }
        }
    }
    let mut nodes: Vec<NerveNode> = sel.iter().map(|&i| NerveNode::Axis(i)).collect();
    let axis_node: HashMap<usize, usize> = sel.iter().enumerate().map(|(n, &i)| (i, n)).collect();
    let mut nerve_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut nervertices = BTreeMap::new();
    for (i, id, v) in attach {
        let root = uf.find(id);
        let next = nerve_id.len();
        let j = *nerve_id.entry(root).or_insert(next);
        if j == nodes.len() - sel.len() {
            nodes.push(NerveNode::Nerve(j));
        }
        let e = (axis_node[&i], sel.len() + j);
        match nervertices.get(&(i, j)) {
            Some(prev) if *prev != v => {
                return Err(SchottkyError::HypothesisFailed(format!(
                    "nerve {j} touches axis {i} in two vertices"
                )))
            }
            Some(_) => {}
            None => {
                nervertices.insert((i, j), v);
                edges.push(e);
            }
        }
    }
    let graph = NerveGraph {
        nodes,
        edges,
        nervertices,
    };
    let m = sel.len();
    let adj = graph.adjacency();
    let shape = tree_shape(&adj)
        .ok_or_else(|| SchottkyError::HypothesisFailed("graph of nerves is not a tree".into()))?;
    let leaves_ok = (0..adj.len()).all(|n| adj[n].len() != 1 || n < m);
    let size_ok = m < 2 || (m + 1..=2 * m - 1).contains(&shape.vertices);
    if !leaves_ok || !size_ok {
        return Err(SchottkyError::HypothesisFailed(format!(
            "graph of nerves has {} vertices for {m} axes",
            shape.vertices
        )));
    }
    Ok(graph)
}

/// Leaves-versus-diameter dichotomy: at least `ceil(sqrt m)` leaves gives a family with small
/// projections; otherwise the axes along a diametral path form a sequential family.
pub fn refine_disjoint(
    g: &GraphOfGroups,
    f: &PSFamily,
) -> Result<(NerveGraph, Refined), SchottkyError> {
    let FamilyConfig::PairwiseDisjoint { members } = &f.config else {
        return Err(SchottkyError::WrongConfig);
    };
    let graph = nerve_graph(g, f, members)?;
    let shape = tree_shape(&graph.adjacency()).expect("checked tree");
    let m = members.len();
    let want = ceil_root(m, 2);
    let axis_of = |n: usize| match graph.nodes[n] {
        NerveNode::Axis(i) => Some(i),
        NerveNode::Nerve(_) => None,
    };
    let leaves: Vec<usize> = if m == 1 {
        members.clone()
    } else {
        let adj = graph.adjacency();
        (0..m)
            .filter(|&n| adj[n].len() == 1)
            .filter_map(axis_of)
            .collect()
    };
    if leaves.len() >= want {
        let refined = Refined {
            kind: RefinedKind::SmallProjections,
            pivot: None,
            members: leaves,
            segment: None,
        };
        return Ok((graph, refined));
    }
    let chain: Vec<usize> = shape
        .path
        .iter()
        .step_by(2)
        .filter_map(|&n| axis_of(n))
        .collect();
    if chain.len() < want {
        return Err(SchottkyError::Shortfall {
            stage: "sequential refinement",
            needed: want,
            got: chain.len(),
        });
    }
    Ok((
        graph,
        Refined {
            kind: RefinedKind::Sequential,
            pivot: None,
            members: chain,
            segment: None,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    #[test]
    fn shapes_of_small_trees() {
        let star = tree_shape(&adj(4, &[(0, 1), (0, 2), (0, 3)])).unwrap();
        assert_eq!((star.leaves, star.diameter), (3, 2));
        let path = tree_shape(&adj(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap();
        assert_eq!((path.leaves, path.diameter), (2, 4));
        assert_eq!(path.path.len(), 5);
        assert!(tree_shape(&adj(3, &[(0, 1), (1, 2), (2, 0)])).is_none());
        assert!(tree_shape(&adj(3, &[(0, 1)])).is_none());
    }
}
