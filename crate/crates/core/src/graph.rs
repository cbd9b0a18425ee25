//! Simple undirected graphs on arbitrary `usize` labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Vertices `0..n` and the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.adj.entry(v).or_default();
    }

    pub fn remove_vertex(&mut self, v: usize) -> Result<BTreeSet<usize>> {
        let nb = self.adj.remove(&v).ok_or(Error::MissingVertex(v))?;
        for u in &nb {
            if let Some(s) = self.adj.get_mut(u) {
                s.remove(&v);
            }
        }
        Ok(nb)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    fn require(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::MissingVertex(v))
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.require(a)?;
        self.require(b)?;
        if a == b {
            return Err(Error::Precondition(alloc::format!("self-loop at {a}")));
        }
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if let Some(s) = self.adj.get_mut(&a) {
            s.remove(&b);
        }
        if let Some(s) = self.adj.get_mut(&b) {
            s.remove(&a);
        }
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && self.contains(a) && self.contains(b));
        if self.has_edge(a, b) {
            self.remove_edge(a, b);
        } else {
            self.adj.get_mut(&a).unwrap().insert(b);
            self.adj.get_mut(&b).unwrap().insert(a);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, v: usize) -> Result<&BTreeSet<usize>> {
        self.adj.get(&v).ok_or(Error::MissingVertex(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .flat_map(|(&a, s)| s.range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }

    /// Complement the subgraph induced on `N(v)`.
    pub fn local_complement(&mut self, v: usize) -> Result<()> {
        let nb: Vec<usize> = self.neighbors(v)?.iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                self.toggle_edge(a, b);
            }
        }
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, s)| (v, s.intersection(keep).copied().collect()))
            .collect();
        Graph { adj }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_complement_is_involution() {
        let mut g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]).unwrap();
        let orig = g.clone();
        g.local_complement(0).unwrap();
        assert!(!g.has_edge(1, 2));
        assert!(g.has_edge(1, 3) && g.has_edge(2, 3));
        g.local_complement(0).unwrap();
        assert_eq!(g, orig);
    }

    #[test]
    fn edge_errors() {
        let mut g = Graph::from_edges(2, &[]).unwrap();
        assert!(g.add_edge(0, 0).is_err());
        assert!(matches!(g.add_edge(0, 7), Err(Error::MissingVertex(7))));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.edges(), [(0, 1)]);
        assert_eq!(g.remove_vertex(1).unwrap().len(), 1);
        assert_eq!(g.num_edges(), 0);
    }
}
