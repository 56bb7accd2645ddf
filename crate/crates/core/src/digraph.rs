//! Immutable dense-id digraphs.
//!
//! Vertices are `0..n`. Arcs are ordered pairs and loops are allowed; the
//! arc set has no multiplicity. Adjacency is stored twice, once per
//! direction, in compressed sparse row form with sorted neighbor slices.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A digraph on the dense vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_off: Vec<usize>,
    out_adj: Vec<usize>,
    in_off: Vec<usize>,
    in_adj: Vec<usize>,
    deg: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Size and sparseness measures of a digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Maximum of `|N⁺(v) ∪ N⁻(v)|`.
    pub max_degree: usize,
    /// Largest `k` such that at least `k` vertices have degree `>= k`.
    pub h_index: usize,
}

/// Arc direction: `Out` follows arcs forward, `In` backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Out,
    In,
}

impl Dir {
    pub fn opposite(self) -> Dir {
        match self {
            Dir::Out => Dir::In,
            Dir::In => Dir::Out,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Dir::Out => 0,
            Dir::In => 1,
        }
    }
}

impl Digraph {
    /// Builds a digraph on `n` vertices. Every id must be `< n` and no arc
    /// may repeat.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Builds from arcs already known to be in range and distinct.
    pub(crate) fn from_unique_arcs(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        debug_assert!(arcs.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(arcs.iter().all(|&(u, v)| u < n && v < n));
        Self::from_sorted(n, arcs)
    }

    fn from_sorted(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let m = arcs.len();
        let mut out_off = vec![0usize; n + 1];
        let mut in_off = vec![0usize; n + 1];
        for &(u, v) in &arcs {
            out_off[u + 1] += 1;
            in_off[v + 1] += 1;
        }
        for i in 0..n {
            out_off[i + 1] += out_off[i];
            in_off[i + 1] += in_off[i];
        }
        // Arcs are sorted by (tail, head), so heads land sorted per tail and,
        // filling by increasing tail, tails land sorted per head.
        let out_adj: Vec<usize> = arcs.iter().map(|&(_, v)| v).collect();
        let mut in_adj = vec![0usize; m];
        let mut fill = in_off.clone();
        for &(u, v) in &arcs {
            in_adj[fill[v]] = u;
            fill[v] += 1;
        }
        let mut g = Digraph {
            n,
            out_off,
            out_adj,
            in_off,
            in_adj,
            deg: Vec::new(),
            labels: None,
        };
        g.deg = (0..n).map(|v| merged_len(g.out_neighbors(v), g.in_neighbors(v))).collect();
        g
    }

    /// Attaches external labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.out_adj.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External label of `v`, or its decimal id when unlabeled.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[self.out_off[v]..self.out_off[v + 1]]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[self.in_off[v]..self.in_off[v + 1]]
    }

    pub fn neighbors_in(&self, v: usize, dir: Dir) -> &[usize] {
        match dir {
            Dir::Out => self.out_neighbors(v),
            Dir::In => self.in_neighbors(v),
        }
    }

    /// `N⁺(v) ∪ N⁻(v)`, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let (a, b) = (self.out_neighbors(v), self.in_neighbors(v));
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (_, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        out
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_off[v + 1] - self.out_off[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_off[v + 1] - self.in_off[v]
    }

    /// `|N⁺(v) ∪ N⁻(v)|`; a loop contributes `v` once.
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_index(u, v).is_some()
    }

    /// Position of `u -> v` in the arc order of [`Digraph::arcs`].
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.out_neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|p| self.out_off[u] + p)
    }

    /// Arcs in `(tail, head)` lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Tail of the arc at position `e`.
    pub(crate) fn arc_tails(&self) -> Vec<usize> {
        let mut tails = Vec::with_capacity(self.m());
        for u in 0..self.n {
            tails.extend(std::iter::repeat_n(u, self.out_degree(u)));
        }
        tails
    }

    pub(crate) fn arc_heads(&self) -> &[usize] {
        &self.out_adj
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_arc(v, v))
    }

    /// `u -> v` and `v -> u` together only when `u == v`.
    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| u == v || !self.has_arc(v, u))
    }

    /// Every vertex is a source or a sink. A loop disqualifies its vertex.
    pub fn is_st_graph(&self) -> bool {
        (0..self.n).all(|v| self.in_degree(v) == 0 || self.out_degree(v) == 0)
    }

    /// Adds every missing loop.
    pub fn reflexive_closure(&self) -> Digraph {
        let mut arcs: Vec<(usize, usize)> = self.arcs().collect();
        arcs.extend((0..self.n).filter(|&v| !self.has_arc(v, v)).map(|v| (v, v)));
        let mut g = Digraph::from_unique_arcs(self.n, arcs);
        g.labels = self.labels.clone();
        g
    }

    /// Subdigraph induced by `keep` (sorted, distinct). Vertex `keep[i]`
    /// becomes `i`; labels follow their vertices.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let arcs = keep
            .iter()
            .flat_map(|&u| {
                let new_id = &new_id;
                self.out_neighbors(u)
                    .iter()
                    .filter(move |&&v| new_id[v] != usize::MAX)
                    .map(move |&v| (new_id[u], new_id[v]))
            })
            .collect();
        let mut g = Digraph::from_unique_arcs(keep.len(), arcs);
        g.labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v].clone()).collect());
        g
    }

    /// Same vertex ids, with every arc touching a `removed` vertex dropped.
    pub fn without_vertices(&self, removed: &[bool]) -> Digraph {
        let arcs = self
            .arcs()
            .filter(|&(u, v)| !removed[u] && !removed[v])
            .collect();
        let mut g = Digraph::from_unique_arcs(self.n, arcs);
        g.labels = self.labels.clone();
        g
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        let mut d = self.deg.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        let h_index = d
            .iter()
            .enumerate()
            .take_while(|&(i, &deg)| deg > i)
            .count();
        GraphStats {
            n: self.n,
            m: self.m(),
            max_degree: d.first().copied().unwrap_or(0),
            h_index,
        }
    }
}

fn merged_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - common
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fork() -> Digraph {
        // a=0, b=1, c=2, d=3: a->b, a->d, c->b
        Digraph::new(4, [(0, 1), (0, 3), (2, 1)]).unwrap()
    }

    #[test]
    fn single_arc() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.in_degree(1), 1);
    }

    #[test]
    fn loop_counts_once_in_degree() {
        let g = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.in_degree(0), 1);
    }

    #[test]
    fn fork_degrees() {
        let g = fork();
        assert_eq!(g.m(), 3);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(3), 1);
        assert_eq!(g.in_neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Digraph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { id: 2, n: 2 })
        );
        assert_eq!(
            Digraph::new(2, [(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        );
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            g.clone().with_labels(vec!["x".into(), "x".into()]),
            Err(Error::DuplicateLabel("x".into()))
        );
        assert!(matches!(
            g.with_labels(vec!["x".into()]),
            Err(Error::LabelCount { .. })
        ));
    }

    #[test]
    fn reflexive_closure_cases() {
        let p = Digraph::new(2, [(0, 1)]).unwrap();
        let c = p.reflexive_closure();
        assert_eq!(c.arcs().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(c.reflexive_closure(), c);
        let e = Digraph::empty(3).reflexive_closure();
        assert_eq!(e.m(), 3);
        assert!(e.is_reflexive());
    }

    #[test]
    fn st_graph_cases() {
        assert!(fork().is_st_graph());
        assert!(!Digraph::new(3, [(0, 1), (1, 2)]).unwrap().is_st_graph());
        assert!(!Digraph::new(1, [(0, 0)]).unwrap().is_st_graph());
    }

    #[test]
    fn stats_cases() {
        let k22 = Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let s = k22.stats();
        assert_eq!((s.h_index, s.max_degree), (2, 2));
        let star = Digraph::new(6, (1..6).map(|t| (0, t))).unwrap();
        let s = star.stats();
        assert_eq!((s.h_index, s.max_degree), (1, 5));
        let s = Digraph::empty(0).stats();
        assert_eq!((s.h_index, s.max_degree), (0, 0));
    }

    #[test]
    fn induced_and_removal() {
        let g = fork();
        let h = g.induced(&[0, 1, 3]);
        assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        let r = g.without_vertices(&[true, false, false, false]);
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(2, 1)]);
        assert_eq!(r.n(), 4);
    }

    #[test]
    fn neighbors_union() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 1), (2, 1)]).unwrap();
        assert_eq!(g.neighbors(1), vec![0, 1, 2]);
        assert_eq!(g.degree(1), 3);
    }
}
