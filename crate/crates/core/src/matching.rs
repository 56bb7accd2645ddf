//! Matchings and thin arcs.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A set of pairwise independent arcs. A loop `v -> v` occupies `v` alone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates independence; the arcs are stored sorted.
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        arcs.dedup();
        let mut owner: std::collections::HashMap<usize, (usize, usize)> =
            std::collections::HashMap::with_capacity(arcs.len() * 2);
        for &(u, v) in &arcs {
            let ends: &[usize] = if u == v { &[u] } else { &[u, v] };
            for &x in ends {
                if let Some(&other) = owner.get(&x) {
                    return Err(Error::NotAMatching(other, (u, v)));
                }
                owner.insert(x, (u, v));
            }
        }
        Ok(Matching { arcs })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    /// Covered vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .arcs
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Fails unless every arc belongs to `g`.
    pub fn check_subset_of(&self, g: &Digraph) -> Result<()> {
        match self.arcs.iter().find(|&&(u, v)| !g.has_arc(u, v)) {
            Some(&(u, v)) => Err(Error::ArcAbsent(u, v)),
            None => Ok(()),
        }
    }

    /// Every vertex of `g` is covered.
    pub fn is_perfect_for(&self, g: &Digraph) -> bool {
        self.vertices().len() == g.n()
    }
}

/// The unique neighbor of `v` whose degree is strictly smaller than that of
/// every other neighbor, if any.
pub fn thin_neighbor(g: &Digraph, v: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut tied = false;
    for w in g.neighbors(v) {
        match best {
            None => best = Some(w),
            Some(b) if g.degree(w) < g.degree(b) => {
                best = Some(w);
                tied = false;
            }
            Some(b) if g.degree(w) == g.degree(b) => tied = true,
            _ => {}
        }
    }
    if tied {
        None
    } else {
        best
    }
}

/// Arcs `v -> w` with `w` the thin neighbor of `v` and `v` the thin neighbor
/// of `w`. When both `v -> w` and `w -> v` qualify only the one leaving the
/// smaller id is kept, so the result is always a matching.
pub fn thin_arcs(g: &Digraph) -> Matching {
    let theta: Vec<Option<usize>> = (0..g.n()).map(|v| thin_neighbor(g, v)).collect();
    let mut arcs = Vec::new();
    for (v, t) in theta.iter().enumerate() {
        let Some(w) = *t else { continue };
        if theta[w] != Some(v) || v > w {
            continue;
        }
        if g.has_arc(v, w) {
            arcs.push((v, w));
        } else if g.has_arc(w, v) {
            arcs.push((w, v));
        }
    }
    arcs.sort_unstable();
    Matching { arcs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_rejects_shared_endpoints() {
        assert!(Matching::new(vec![(0, 1), (2, 3)]).is_ok());
        assert_eq!(
            Matching::new(vec![(0, 1), (1, 2)]),
            Err(Error::NotAMatching((0, 1), (1, 2)))
        );
        assert!(Matching::new(vec![(0, 0), (1, 2)]).is_ok());
        assert!(Matching::new(vec![(0, 0), (0, 2)]).is_err());
    }

    #[test]
    fn thin_single_arc() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(thin_arcs(&g).arcs(), &[(0, 1)]);
    }

    #[test]
    fn thin_k22_is_empty() {
        let g = Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(thin_arcs(&g).is_empty());
    }

    #[test]
    fn thin_fork() {
        let g = Digraph::new(4, [(0, 1), (0, 3), (2, 1)]).unwrap();
        assert_eq!(thin_neighbor(&g, 0), Some(3));
        assert_eq!(thin_neighbor(&g, 1), Some(2));
        assert_eq!(thin_arcs(&g).arcs(), &[(0, 3), (2, 1)]);
    }

    #[test]
    fn thin_two_cycle_keeps_one_direction() {
        let g = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(thin_arcs(&g).arcs(), &[(0, 1)]);
    }
}
