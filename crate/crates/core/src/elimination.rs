//! Disimplicial elimination schemes.
//!
//! A scheme `v₁ -> w₁, …, v_k -> w_k` eliminates arcs one at a time, each
//! disimplicial once the endpoints of the earlier ones are gone. It is
//! *maximal* when the residual digraph has no disimplicial arc and *perfect*
//! when the residual has no arc at all. On the bipartite graph of a sparse
//! matrix the eliminated arcs are zero fill-in pivots.
//!
//! Two algorithms live here:
//!
//! * [`maximal_elimination`] works in rounds. Round one takes a greedy
//!   matching of all disimplicial arcs. Later rounds only look at vertices
//!   that lost a neighbor in the previous round, and for each of them test a
//!   single arc towards a minimum-degree neighbor.
//! * [`matched_elimination`] restricts the scheme to an input matching `M`
//!   and runs a transitive-vertex elimination on the join of `split(G)`
//!   along the lifted matching instead.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::arcs::all_disimplicial_arcs;
use crate::digraph::{Digraph, Dir};
use crate::error::{Error, Result};
use crate::hdigraph::HDigraph;
use crate::matching::Matching;
use crate::oracle::naive_is_disimplicial;
use crate::transforms::{join, split, Origin};

/// An elimination scheme and the digraph it leaves behind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationScheme {
    pub steps: Vec<(usize, usize)>,
    /// The residual has no arcs.
    pub perfect: bool,
    /// Input digraph minus the endpoints of all steps. Vertex ids are kept;
    /// eliminated vertices are isolated.
    pub residual: Digraph,
}

impl EliminationScheme {
    /// Marks of the vertices covered by the steps.
    pub fn eliminated(&self) -> Vec<bool> {
        let mut out = vec![false; self.residual.n()];
        for &(v, w) in &self.steps {
            out[v] = true;
            out[w] = true;
        }
        out
    }
}

/// Vertices to revisit in a round: `out_side` lost an out-neighbor in the
/// previous round, `in_side` lost an in-neighbor. Both ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Frontier {
    pub out_side: Vec<usize>,
    pub in_side: Vec<usize>,
}

/// How rounds after the first pick their arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundStrategy {
    /// Only revisit the frontier of the previous round.
    Frontier,
    /// Recompute every disimplicial arc of the current digraph.
    FullScan,
}

/// Greedy matching over arcs sorted by `(min endpoint, max endpoint)`.
fn greedy_matching(mut arcs: Vec<(usize, usize)>, n: usize) -> Vec<(usize, usize)> {
    arcs.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v), u, v));
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for (u, v) in arcs {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            out.push((u, v));
        }
    }
    out
}

fn frontier_round(h: &mut HDigraph, frontier: &Frontier) -> Vec<(usize, usize)> {
    let mut taken = vec![false; h.n()];
    let mut round = Vec::new();
    for (dir, side) in [(Dir::Out, &frontier.out_side), (Dir::In, &frontier.in_side)] {
        for &v in side {
            if taken[v] || h.degree(v, dir).unwrap_or(0) == 0 {
                continue;
            }
            let candidates = h.min_n(v, dir).expect("nonempty neighborhood");
            let probe = candidates[0];
            let (tail, head) = match dir {
                Dir::Out => (v, probe),
                Dir::In => (probe, v),
            };
            if !h.is_disimplicial(tail, head) {
                continue;
            }
            if let Some(&w) = candidates.iter().find(|&&w| !taken[w]) {
                taken[v] = true;
                taken[w] = true;
                round.push(match dir {
                    Dir::Out => (v, w),
                    Dir::In => (w, v),
                });
            }
        }
    }
    round
}

/// Maximal disimplicial elimination with frontier-driven rounds.
pub fn maximal_elimination(g: &Digraph) -> EliminationScheme {
    maximal_elimination_with(g, RoundStrategy::Frontier)
}

pub fn maximal_elimination_with(g: &Digraph, strategy: RoundStrategy) -> EliminationScheme {
    let n = g.n();
    let mut h = HDigraph::new(g);
    let mut removed = vec![false; n];
    let mut steps = Vec::new();
    let mut round = greedy_matching(all_disimplicial_arcs(g), n);
    while !round.is_empty() {
        let mut frontier = Frontier::default();
        for &(v, w) in &round {
            for y in [v, w] {
                if removed[y] {
                    continue;
                }
                frontier.out_side.extend(h.neighbors(y, Dir::In));
                frontier.in_side.extend(h.neighbors(y, Dir::Out));
                removed[y] = true;
            }
        }
        for &(v, w) in &round {
            for y in [v, w] {
                if h.is_live(y) {
                    h.remove(y).expect("endpoint is live");
                }
            }
        }
        for side in [&mut frontier.out_side, &mut frontier.in_side] {
            side.retain(|&x| !removed[x]);
            side.sort_unstable();
            side.dedup();
        }
        steps.append(&mut round);
        round = match strategy {
            RoundStrategy::Frontier => frontier_round(&mut h, &frontier),
            RoundStrategy::FullScan => greedy_matching(all_disimplicial_arcs(&h.live_digraph()), n),
        };
    }
    let residual = g.without_vertices(&removed);
    EliminationScheme {
        steps,
        perfect: residual.m() == 0,
        residual,
    }
}

/// Incremental state of a transitive-vertex elimination.
///
/// `t(v)` counts the live arcs from `N⁻(v)` to `N⁺(v)`; a vertex is
/// transitive exactly when `t(v) = d⁻(v)·d⁺(v)`. Transitivity survives
/// vertex removal, so the pool of transitive eligible vertices only grows.
#[derive(Clone, Debug)]
pub struct TransitiveEliminationState {
    h: HDigraph,
    eligible: Vec<bool>,
    queued: Vec<bool>,
    pool: BinaryHeap<Reverse<usize>>,
    t: Vec<usize>,
}

impl TransitiveEliminationState {
    pub fn new(d: &Digraph, eligible: &[usize]) -> Self {
        let mut h = HDigraph::new(d);
        let t: Vec<usize> = (0..d.n())
            .map(|v| h.count_arcs(d.in_neighbors(v), d.out_neighbors(v)))
            .collect();
        let mut mask = vec![false; d.n()];
        for &v in eligible {
            mask[v] = true;
        }
        let mut state = TransitiveEliminationState {
            h,
            eligible: mask,
            queued: vec![false; d.n()],
            pool: BinaryHeap::new(),
            t,
        };
        for v in 0..d.n() {
            state.offer(v);
        }
        state
    }

    fn is_transitive(&self, v: usize) -> bool {
        self.t[v] == self.h.in_degree(v) * self.h.out_degree(v)
    }

    fn offer(&mut self, v: usize) {
        if self.eligible[v] && !self.queued[v] && self.h.is_live(v) && self.is_transitive(v) {
            self.queued[v] = true;
            self.pool.push(Reverse(v));
        }
    }

    /// Maintained `t(v)` for every vertex; stale for removed ones.
    pub fn counters(&self) -> &[usize] {
        &self.t
    }

    pub fn hdigraph(&self) -> &HDigraph {
        &self.h
    }

    /// `t(v)` counted from scratch on the live digraph.
    pub fn recount(&mut self, v: usize) -> usize {
        let ins = self.h.neighbors(v, Dir::In);
        let outs = self.h.neighbors(v, Dir::Out);
        self.h.count_arcs(&ins, &outs)
    }

    /// Live vertices whose maintained counter disagrees with a recount.
    pub fn stale_counters(&mut self) -> Vec<usize> {
        self.h
            .live_vertices()
            .into_iter()
            .filter(|&v| self.t[v] != self.recount(v))
            .collect()
    }

    /// Removes the smallest transitive eligible vertex, if any.
    pub fn step(&mut self) -> Option<usize> {
        while let Some(Reverse(v)) = self.pool.pop() {
            if self.h.is_live(v) {
                self.remove(v);
                return Some(v);
            }
        }
        None
    }

    /// Removes any live vertex, keeping the counters exact.
    pub fn remove(&mut self, v: usize) {
        // Arcs z -> w inside N⁻(v) lose the counted arc z -> v of t(w); arcs
        // w -> y inside N⁺(v) lose v -> y. The loop v -> v would be seen from
        // both sides, so it is only taken from the second.
        let inside_in = self.h.n_prime(v, Dir::In).expect("live");
        let inside_out = self.h.n_prime(v, Dir::Out).expect("live");
        for (z, w) in inside_in {
            if z != v && w != v {
                self.t[w] -= 1;
            }
        }
        for (w, _) in inside_out {
            if w != v {
                self.t[w] -= 1;
            }
        }
        let mut around = self.h.neighbors(v, Dir::Out);
        around.extend(self.h.neighbors(v, Dir::In));
        self.h.remove(v).expect("live");
        for w in around {
            if w != v {
                self.offer(w);
            }
        }
    }
}

/// A maximal sequence of vertices from `eligible`, each transitive once the
/// earlier ones are removed. Ties go to the smallest id.
pub fn transitive_v_elimination(d: &Digraph, eligible: &[usize]) -> Vec<usize> {
    let mut state = TransitiveEliminationState::new(d, eligible);
    std::iter::from_fn(|| state.step()).collect()
}

/// Maximal disimplicial elimination using only arcs of `m`.
///
/// Works on `D = join(split(g), M')` with `M' = {out(v) -> in(w)}`: the join
/// vertex of `out(v) -> in(w)` is transitive exactly when `v -> w` is
/// disimplicial in the current graph. Splitting first matters when `g` is not
/// an ST graph, since a join of `g` itself would drop the arcs leaving matched
/// heads and entering matched tails. Eliminating `v -> w` removes its join
/// vertex together with the singleton vertices of `in(v)` and `out(w)`.
pub fn matched_elimination(g: &Digraph, m: &Matching) -> Result<EliminationScheme> {
    m.check_subset_of(g)?;
    let (s, smap) = split(g);
    let lifted = m
        .arcs()
        .iter()
        .map(|&(v, w)| (smap.out_vertex(v).unwrap(), smap.in_vertex(w).unwrap()))
        .collect();
    let lifted = Matching::new(lifted).expect("split keeps matched arcs independent");
    let (d, jmap) = join(&s, &lifted)?;
    // Matched arcs come first in the join vertex order.
    let eligible: Vec<usize> = (0..m.len()).collect();
    let mut state = TransitiveEliminationState::new(&d, &eligible);
    let mut removed = vec![false; g.n()];
    let mut steps = Vec::new();
    while let Some(p) = state.step() {
        let Origin::Joined(a, b) = jmap.origin(p) else { unreachable!() };
        let (Origin::Out(v), Origin::In(w)) = (smap.origin(a), smap.origin(b)) else {
            unreachable!("matched join vertices pair an out-vertex with an in-vertex")
        };
        let companions = [
            smap.in_vertex(v).and_then(|x| jmap.joined_by_head(x)),
            smap.out_vertex(w).and_then(|x| jmap.joined_by_tail(x)),
        ];
        for q in companions.into_iter().flatten() {
            if state.hdigraph().is_live(q) {
                state.remove(q);
            }
        }
        removed[v] = true;
        removed[w] = true;
        steps.push((v, w));
    }
    let residual = g.without_vertices(&removed);
    Ok(EliminationScheme {
        steps,
        perfect: residual.m() == 0,
        residual,
    })
}

/// Decides whether an ST graph admits a perfect elimination scheme. On ST
/// graphs every maximal scheme of a perfect elimination graph is perfect,
/// so one maximal scheme settles the question.
pub fn is_perfect_elimination_st(g: &Digraph) -> Result<(bool, EliminationScheme)> {
    if let Some(v) = (0..g.n()).find(|&v| g.in_degree(v) > 0 && g.out_degree(v) > 0) {
        return Err(Error::NotStGraph(v));
    }
    let scheme = maximal_elimination(g);
    Ok((scheme.perfect, scheme))
}

/// Replays a scheme against the brute-force disimpliciality test and checks
/// independence, maximality (restricted to `m` when given), the residual and
/// the perfect flag.
pub fn check_scheme(
    g: &Digraph,
    s: &EliminationScheme,
    m: Option<&Matching>,
) -> std::result::Result<(), String> {
    let mut removed = vec![false; g.n()];
    for (i, &(v, w)) in s.steps.iter().enumerate() {
        if v >= g.n() || w >= g.n() || !g.has_arc(v, w) {
            return Err(format!("step {i}: {v} -> {w} is not an arc"));
        }
        if removed[v] || removed[w] {
            return Err(format!("step {i}: {v} -> {w} reuses an eliminated vertex"));
        }
        if let Some(m) = m {
            if !m.contains(v, w) {
                return Err(format!("step {i}: {v} -> {w} is not in the matching"));
            }
        }
        let current = g.without_vertices(&removed);
        if !naive_is_disimplicial(&current, v, w) {
            return Err(format!("step {i}: {v} -> {w} is not disimplicial"));
        }
        removed[v] = true;
        removed[w] = true;
    }
    let residual = g.without_vertices(&removed);
    if residual != s.residual {
        return Err("residual does not match the steps".into());
    }
    if s.perfect != (residual.m() == 0) {
        return Err(format!("perfect flag is {} but residual has {} arcs", s.perfect, residual.m()));
    }
    let leftover: Vec<(usize, usize)> = match m {
        Some(m) => m
            .arcs()
            .iter()
            .copied()
            .filter(|&(v, w)| !removed[v] && !removed[w])
            .collect(),
        None => residual.arcs().collect(),
    };
    if let Some(&(v, w)) = leftover.iter().find(|&&(v, w)| naive_is_disimplicial(&residual, v, w)) {
        return Err(format!("not maximal: {v} -> {w} is disimplicial in the residual"));
    }
    Ok(())
}

pub fn verify_scheme(g: &Digraph, s: &EliminationScheme, m: Option<&Matching>) -> bool {
    check_scheme(g, s, m).is_ok()
}
