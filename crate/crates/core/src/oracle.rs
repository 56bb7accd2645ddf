//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions, on a dense adjacency
//! matrix or plain arc lookups, and shares no code with the fast algorithms.
//! The enumerating oracles are exponential and refuse inputs above their
//! size caps.

use crate::digraph::Digraph;

/// Cap for [`enumerate_maximal_dicliques`] and the oracles built on it.
pub const MAX_DICLIQUE_VERTICES: usize = 20;
/// Cap for [`naive_is_dedekind`].
pub const MAX_DEDEKIND_VERTICES: usize = 12;

/// Dense adjacency matrix.
pub struct AdjMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjMatrix {
    pub fn new(g: &Digraph) -> Self {
        let n = g.n();
        let mut bits = vec![false; n * n];
        for (u, v) in g.arcs() {
            bits[u * n + v] = true;
        }
        AdjMatrix { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    fn out_set(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.arc(v, y)).collect()
    }

    fn in_set(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.arc(x, v)).collect()
    }
}

/// A diclique `tails -> heads`, both sides nonempty, as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diclique {
    pub tails: Vec<usize>,
    pub heads: Vec<usize>,
}

impl Diclique {
    pub fn contains_arc(&self, u: usize, v: usize) -> bool {
        self.tails.binary_search(&u).is_ok() && self.heads.binary_search(&v).is_ok()
    }
}

fn disimplicial_in(a: &AdjMatrix, v: usize, w: usize) -> bool {
    let tails = a.in_set(w);
    let heads = a.out_set(v);
    tails.iter().all(|&x| heads.iter().all(|&y| a.arc(x, y)))
}

/// `v -> w` is an arc and `N⁻(w) -> N⁺(v)` is a diclique. Double loop over
/// the two neighborhoods with binary-searched arc lookups.
pub fn naive_is_disimplicial(g: &Digraph, v: usize, w: usize) -> bool {
    g.has_arc(v, w)
        && g.in_neighbors(w)
            .iter()
            .all(|&x| g.out_neighbors(v).iter().all(|&y| g.has_arc(x, y)))
}

/// All disimplicial arcs, sorted.
pub fn naive_disimplicial_arcs(g: &Digraph) -> Vec<(usize, usize)> {
    let a = AdjMatrix::new(g);
    let mut out = Vec::new();
    for v in 0..a.n() {
        for w in 0..a.n() {
            if a.arc(v, w) && disimplicial_in(&a, v, w) {
                out.push((v, w));
            }
        }
    }
    out
}

/// Vertices `v` such that `x -> y` for every `x ∈ N⁻(v)`, `y ∈ N⁺(v)`.
pub fn naive_transitive_vertices(d: &Digraph) -> Vec<bool> {
    let a = AdjMatrix::new(d);
    (0..a.n())
        .map(|v| {
            (0..a.n()).all(|x| {
                !a.arc(x, v) || (0..a.n()).all(|y| !a.arc(v, y) || a.arc(x, y))
            })
        })
        .collect()
}

pub fn naive_is_transitive(d: &Digraph) -> bool {
    naive_transitive_vertices(d).into_iter().all(|t| t)
}

/// Every maximal diclique with both sides nonempty.
///
/// Such dicliques are the pairs `(λ(W), W)` with `W = μ(V)` for some tail
/// set `V`; all tail sets are swept as bitmasks.
///
/// # Panics
///
/// When the digraph has more than [`MAX_DICLIQUE_VERTICES`] vertices.
pub fn enumerate_maximal_dicliques(g: &Digraph) -> Vec<Diclique> {
    let n = g.n();
    assert!(
        n <= MAX_DICLIQUE_VERTICES,
        "diclique oracle is capped at {MAX_DICLIQUE_VERTICES} vertices, got {n}"
    );
    let a = AdjMatrix::new(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let out_mask: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&y| a.arc(v, y)).fold(0, |m, y| m | 1 << y))
        .collect();
    let in_mask: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&x| a.arc(x, v)).fold(0, |m, x| m | 1 << x))
        .collect();
    let common = |set: u32, masks: &[u32]| -> u32 {
        (0..n)
            .filter(|&i| set >> i & 1 == 1)
            .fold(full, |acc, i| acc & masks[i])
    };
    let mut found = Vec::new();
    for tails in 1..=full {
        let heads = common(tails, &out_mask);
        if heads == 0 || common(heads, &in_mask) != tails {
            continue;
        }
        let bits = |m: u32| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>();
        found.push(Diclique {
            tails: bits(tails),
            heads: bits(heads),
        });
    }
    found.sort();
    found
}

fn reduced(a: &AdjMatrix, b: &Diclique) -> bool {
    b.tails
        .iter()
        .any(|&x| b.heads.iter().any(|&y| disimplicial_in(a, x, y)))
}

/// Every arc lies in a maximal diclique that contains a disimplicial arc.
pub fn naive_is_wdi(g: &Digraph) -> bool {
    let a = AdjMatrix::new(g);
    let reduced: Vec<Diclique> = enumerate_maximal_dicliques(g)
        .into_iter()
        .filter(|b| reduced(&a, b))
        .collect();
    g.arcs()
        .all(|(u, v)| reduced.iter().any(|b| b.contains_arc(u, v)))
}

/// Every maximal diclique contains a disimplicial arc.
pub fn naive_is_di(g: &Digraph) -> bool {
    let a = AdjMatrix::new(g);
    enumerate_maximal_dicliques(g)
        .iter()
        .all(|b| reduced(&a, b))
}

/// Every nonempty vertex set with an upper bound has a supremum, i.e. an
/// upper bound below every other upper bound.
///
/// # Panics
///
/// When the digraph has more than [`MAX_DEDEKIND_VERTICES`] vertices.
pub fn naive_is_dedekind(d: &Digraph) -> bool {
    let n = d.n();
    assert!(
        n <= MAX_DEDEKIND_VERTICES,
        "dedekind oracle is capped at {MAX_DEDEKIND_VERTICES} vertices, got {n}"
    );
    let a = AdjMatrix::new(d);
    for set in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let upper: Vec<usize> = (0..n)
            .filter(|&u| members.iter().all(|&v| a.arc(v, u)))
            .collect();
        if upper.is_empty() {
            continue;
        }
        let has_sup = upper
            .iter()
            .any(|&u| upper.iter().all(|&z| a.arc(u, z)));
        if !has_sup {
            return false;
        }
    }
    true
}
