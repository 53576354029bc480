//! Finite groups given by full multiplication tables, plus the infinite cyclic group.

use super::GroupError;

/// A finite group stored as an `n x n` multiplication table over indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl FiniteGroupTable {
    /// Builds and validates a table. `rows[i][j]` is the index of `names[i] * names[j]`.
    pub fn new(names: Vec<String>, rows: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidTable(format!("table must be {n} x {n}")));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &rows {
            for &v in row {
                if v as usize >= n {
                    return Err(GroupError::InvalidTable(format!("entry {v} out of range")));
                }
                mul.push(v);
            }
        }
        let identity = {
            let at = |a: usize, b: usize| mul[a * n + b] as usize;
            (0..n)
                .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
                .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?
        };
        // the identity always gets index 0; other elements keep their load order
        let mut names = names;
        if identity != 0 {
            let swap = |i: usize| match i {
                0 => identity,
                i if i == identity => 0,
                i => i,
            };
            let mut relabeled = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    relabeled[swap(a) * n + swap(b)] = swap(mul[a * n + b] as usize) as u32;
                }
            }
            mul = relabeled;
            names.swap(0, identity);
        }
        let identity = 0usize;
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| {
                    GroupError::InvalidTable(format!("element {} has no inverse", names[x]))
                })?;
            inv[x] = y as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            names,
            mul,
            inv,
            identity: identity as u32,
        })
    }

    /// The cyclic group of order `n`, with elements named `1, g, g^2, ...`.
    pub fn cyclic(n: usize, gen: &str) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => gen.to_string(),
                _ => format!("{gen}^{k}"),
            })
            .collect();
        let rows = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        Self::new(names, rows).expect("cyclic table is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.names.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|s| s == name).map(|i| i as u32)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// A vertex group: either finite (tabulated) or infinite cyclic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexGroup {
    Finite(FiniteGroupTable),
    InfiniteCyclic,
}

impl VertexGroup {
    #[inline]
    pub fn identity(&self) -> i64 {
        match self {
            VertexGroup::Finite(t) => t.identity() as i64,
            VertexGroup::InfiniteCyclic => 0,
        }
    }

    #[inline]
    pub fn is_identity(&self, x: i64) -> bool {
        x == self.identity()
    }

    #[inline]
    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            VertexGroup::Finite(t) => t.mul(a as u32, b as u32) as i64,
            VertexGroup::InfiniteCyclic => a + b,
        }
    }

    #[inline]
    pub fn inv(&self, a: i64) -> i64 {
        match self {
            VertexGroup::Finite(t) => t.inv(a as u32) as i64,
            VertexGroup::InfiniteCyclic => -a,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroup::Finite(t) => Some(t.order()),
            VertexGroup::InfiniteCyclic => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, VertexGroup::Finite(_))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// Elements in load order; for the infinite cyclic group, exponents in `[-bound, bound]`.
    pub fn elements(&self, bound: i64) -> Vec<i64> {
        match self {
            VertexGroup::Finite(t) => (0..t.order() as i64).collect(),
            VertexGroup::InfiniteCyclic => {
                let mut v = vec![0];
                for e in 1..=bound {
                    v.push(e);
                    v.push(-e);
                }
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroupTable {
        // permutations of {0,1,2} in a fixed order
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroupTable::new((0..6).map(|i| format!("p{i}")).collect(), rows).unwrap()
    }

    #[test]
    fn cyclic_tables_behave() {
        let z5 = FiniteGroupTable::cyclic(5, "g");
        assert_eq!(z5.mul(3, 4), 2);
        assert_eq!(z5.inv(2), 3);
        assert_eq!(z5.name(2), "g^2");
        assert_eq!(z5.element_order(1), 5);
    }

    #[test]
    fn nonabelian_table_validates() {
        let t = s3();
        assert_eq!(t.identity(), 0);
        assert_eq!(t.element_order(1), 2);
        assert_eq!(t.element_order(4), 3);
        assert_ne!(t.mul(1, 2), t.mul(2, 1));
    }

    #[test]
    fn rejects_non_associative() {
        // a Latin square with identity 0 that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names = (0..5).map(|i| format!("x{i}")).collect();
        assert!(matches!(
            FiniteGroupTable::new(names, rows),
            Err(GroupError::InvalidTable(_))
        ));
    }

    #[test]
    fn rejects_missing_identity() {
        let rows = vec![vec![1, 0], vec![0, 0]];
        let names = vec!["a".into(), "b".into()];
        assert!(FiniteGroupTable::new(names, rows).is_err());
    }
}
