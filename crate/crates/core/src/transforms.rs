//! Split, Join and twin reduction, each with a provenance map.
//!
//! * `split(D)` turns every non-sink `v` into a source `out(v)` and every
//!   non-source `w` into a sink `in(w)`, with `out(v) -> in(w)` exactly when
//!   `v -> w`. The result is an ST graph.
//! * `join(G, M)` merges the endpoints of every arc `v -> w` of the matching
//!   `M` into one vertex `(v, w)`; unmatched vertices `v` become `(v, v)`.
//!   `(v, w) -> (x, y)` is an arc exactly when `v -> y` is an arc of `G`.
//! * `repr_reduction(G)` keeps one vertex per twin block.
//!
//! Downstream algorithms pull answers back through these maps, so every
//! transform returns its [`TransformMap`].

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matching::{thin_arcs, Matching};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TransformKind {
    Split,
    Join,
    Repr,
}

/// What a vertex of a transformed digraph stands for in the source digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Origin {
    /// `out(v)` of a split.
    Out(usize),
    /// `in(v)` of a split.
    In(usize),
    /// `(v, w)` of a join: the matched arc `v -> w`, or `v == w` for an
    /// unmatched vertex (or a matched loop).
    Joined(usize, usize),
    /// The representative of a twin block.
    Vertex(usize),
}

/// Provenance of a transform: maps source entities to target vertices and
/// back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMap {
    kind: TransformKind,
    backward: Vec<Origin>,
    // Split: out(v), in(v). Join: vertex whose tail is v, vertex whose head
    // is v. Repr: target of v's block, representative of v.
    fwd: [Vec<usize>; 2],
}

impl TransformMap {
    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// Number of vertices of the transformed digraph.
    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }

    pub fn origin(&self, target: usize) -> Origin {
        self.backward[target]
    }

    /// Target vertex standing for `origin`. For twin reductions every member
    /// of a block maps to the block's vertex.
    pub fn target(&self, origin: Origin) -> Option<usize> {
        let get = |side: usize, v: usize| {
            self.fwd[side]
                .get(v)
                .copied()
                .filter(|&t| t != NONE)
        };
        match (self.kind, origin) {
            (TransformKind::Split, Origin::Out(v)) => get(0, v),
            (TransformKind::Split, Origin::In(v)) => get(1, v),
            (TransformKind::Join, Origin::Joined(v, w)) => {
                let t = get(0, v)?;
                (get(1, w) == Some(t)).then_some(t)
            }
            (TransformKind::Repr, Origin::Vertex(v)) => get(0, v),
            _ => None,
        }
    }

    pub fn out_vertex(&self, v: usize) -> Option<usize> {
        self.target(Origin::Out(v))
    }

    pub fn in_vertex(&self, v: usize) -> Option<usize> {
        self.target(Origin::In(v))
    }

    /// The join vertex `(v, w)`, if it exists.
    pub fn joined(&self, v: usize, w: usize) -> Option<usize> {
        self.target(Origin::Joined(v, w))
    }

    /// Join vertex containing `v` as its first (tail) component.
    pub fn joined_by_tail(&self, v: usize) -> Option<usize> {
        debug_assert_eq!(self.kind, TransformKind::Join);
        self.fwd[0].get(v).copied().filter(|&t| t != NONE)
    }

    /// Join vertex containing `v` as its second (head) component.
    pub fn joined_by_head(&self, v: usize) -> Option<usize> {
        debug_assert_eq!(self.kind, TransformKind::Join);
        self.fwd[1].get(v).copied().filter(|&t| t != NONE)
    }

    /// Representative (source id) of `v`'s twin block.
    pub fn representative(&self, v: usize) -> usize {
        debug_assert_eq!(self.kind, TransformKind::Repr);
        self.fwd[1][v]
    }
}

/// Partition of the vertices into twin blocks: `u` and `v` share a block when
/// `N⁺(u) = N⁺(v)` and `N⁻(u) = N⁻(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    block: Vec<usize>,
    repr: Vec<usize>,
}

impl TwinPartition {
    pub fn block_of(&self, v: usize) -> usize {
        self.block[v]
    }

    /// Minimum id of `v`'s block.
    pub fn representative(&self, v: usize) -> usize {
        self.repr[self.block[v]]
    }

    pub fn block_count(&self) -> usize {
        self.repr.len()
    }

    /// Blocks as sorted vertex lists, ordered by representative.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.repr.len()];
        for (v, &b) in self.block.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        self.repr.len() == self.block.len()
    }
}

pub fn twin_partition(g: &Digraph) -> TwinPartition {
    let n = g.n();
    // Group by a cheap fingerprint of both neighbor lists, then split each
    // group by exact comparison. Sorting by (fingerprint, id) puts the
    // minimum of every twin class first within its group.
    let fingerprint = |v: usize| {
        let mix = |h: u64, x: usize| (h ^ x as u64).wrapping_mul(0x0100_0000_01b3).rotate_left(17);
        let h = g.out_neighbors(v).iter().fold(0xcbf2_9ce4_8422_2325, |h, &x| mix(h, x));
        let h = mix(h, usize::MAX);
        g.in_neighbors(v).iter().fold(h, |h, &x| mix(h, x))
    };
    let mut order: Vec<(u64, usize)> = (0..n).map(|v| (fingerprint(v), v)).collect();
    order.sort_unstable();
    let same = |u: usize, v: usize| {
        g.out_neighbors(u) == g.out_neighbors(v) && g.in_neighbors(u) == g.in_neighbors(v)
    };
    let mut least = vec![0usize; n];
    let mut heads: Vec<usize> = Vec::new();
    for (i, &(h, v)) in order.iter().enumerate() {
        if i == 0 || order[i - 1].0 != h {
            heads.clear();
        }
        match heads.iter().find(|&&u| same(u, v)) {
            Some(&u) => least[v] = u,
            None => {
                heads.push(v);
                least[v] = v;
            }
        }
    }
    let mut block = vec![0usize; n];
    let mut repr = Vec::new();
    for v in 0..n {
        if least[v] == v {
            block[v] = repr.len();
            repr.push(v);
        } else {
            block[v] = block[least[v]];
        }
    }
    TwinPartition { block, repr }
}

/// Subdigraph induced by one representative per twin block.
pub fn repr_reduction(g: &Digraph) -> (Digraph, TransformMap) {
    let twins = twin_partition(g);
    let keep = twins.repr.clone();
    let reduced = g.induced(&keep);
    let fwd0 = (0..g.n()).map(|v| twins.block_of(v)).collect();
    let fwd1 = (0..g.n()).map(|v| twins.representative(v)).collect();
    let map = TransformMap {
        kind: TransformKind::Repr,
        backward: keep.iter().map(|&v| Origin::Vertex(v)).collect(),
        fwd: [fwd0, fwd1],
    };
    (reduced, map)
}

/// `out(v)` for every non-sink `v` in ascending order, then `in(w)` for every
/// non-source `w` in ascending order.
pub fn split(d: &Digraph) -> (Digraph, TransformMap) {
    let n = d.n();
    let mut out_id = vec![NONE; n];
    let mut in_id = vec![NONE; n];
    let mut backward = Vec::new();
    for v in (0..n).filter(|&v| d.out_degree(v) > 0) {
        out_id[v] = backward.len();
        backward.push(Origin::Out(v));
    }
    for v in (0..n).filter(|&v| d.in_degree(v) > 0) {
        in_id[v] = backward.len();
        backward.push(Origin::In(v));
    }
    let arcs = d.arcs().map(|(v, w)| (out_id[v], in_id[w])).collect();
    let g = Digraph::from_unique_arcs(backward.len(), arcs);
    let map = TransformMap {
        kind: TransformKind::Split,
        backward,
        fwd: [out_id, in_id],
    };
    (g, map)
}

/// Joins the endpoints of every arc of `m`. Vertices are the matched arcs in
/// sorted order followed by the unmatched vertices in ascending order.
pub fn join(g: &Digraph, m: &Matching) -> Result<(Digraph, TransformMap)> {
    m.check_subset_of(g)?;
    let n = g.n();
    let mut tail_of = vec![NONE; n];
    let mut head_of = vec![NONE; n];
    let mut backward = Vec::with_capacity(n);
    for &(v, w) in m.arcs() {
        let id = backward.len();
        tail_of[v] = id;
        head_of[w] = id;
        backward.push(Origin::Joined(v, w));
    }
    let mut covered = vec![false; n];
    for &(v, w) in m.arcs() {
        covered[v] = true;
        covered[w] = true;
    }
    for v in (0..n).filter(|&v| !covered[v]) {
        let id = backward.len();
        tail_of[v] = id;
        head_of[v] = id;
        backward.push(Origin::Joined(v, v));
    }
    let mut arcs = Vec::with_capacity(g.m());
    for (p, origin) in backward.iter().enumerate() {
        let Origin::Joined(v, _) = *origin else { unreachable!() };
        for &y in g.out_neighbors(v) {
            if head_of[y] != NONE {
                arcs.push((p, head_of[y]));
            }
        }
    }
    let d = Digraph::from_unique_arcs(backward.len(), arcs);
    let map = TransformMap {
        kind: TransformKind::Join,
        backward,
        fwd: [tail_of, head_of],
    };
    Ok((d, map))
}

/// `join(g, thin_arcs(g))`.
pub fn join_thin(g: &Digraph) -> (Digraph, TransformMap) {
    join(g, &thin_arcs(g)).expect("thin arcs are arcs of the digraph")
}

/// A vertex bijection `map[v]` between two digraphs that preserves arcs in
/// both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub map: Vec<usize>,
}

fn verify_isomorphism(from: &Digraph, to: &Digraph, map: &[usize]) -> Result<Isomorphism> {
    if from.n() != to.n() || from.m() != to.m() {
        return Err(Error::IsomorphismFailed(format!(
            "sizes differ: ({}, {}) vs ({}, {})",
            from.n(),
            from.m(),
            to.n(),
            to.m()
        )));
    }
    let mut hit = vec![false; to.n()];
    for &t in map {
        if t >= to.n() || std::mem::replace(&mut hit[t], true) {
            return Err(Error::IsomorphismFailed("map is not a bijection".into()));
        }
    }
    // Equal arc counts plus injectivity make arc preservation sufficient.
    if let Some((u, v)) = from.arcs().find(|&(u, v)| !to.has_arc(map[u], map[v])) {
        return Err(Error::IsomorphismFailed(format!("arc {u} -> {v} not preserved")));
    }
    Ok(Isomorphism { map: map.to_vec() })
}

/// Checks that a reflexive `d` is isomorphic to
/// `join(split(d), {out(v) -> in(v)})` via `v ↦ (out(v), in(v))`.
pub fn split_join_roundtrip_check(d: &Digraph) -> Result<Isomorphism> {
    if let Some(v) = (0..d.n()).find(|&v| !d.has_arc(v, v)) {
        return Err(Error::NotReflexive(v));
    }
    let (s, smap) = split(d);
    let pairs = (0..d.n())
        .map(|v| (smap.out_vertex(v).unwrap(), smap.in_vertex(v).unwrap()))
        .collect();
    let m = Matching::new(pairs)?;
    let (j, jmap) = join(&s, &m)?;
    let f: Vec<usize> = (0..d.n())
        .map(|v| {
            jmap.joined(smap.out_vertex(v).unwrap(), smap.in_vertex(v).unwrap())
                .ok_or_else(|| Error::IsomorphismFailed(format!("no joined vertex for {v}")))
        })
        .collect::<Result<_>>()?;
    verify_isomorphism(d, &j, &f)
}

/// Checks that an ST graph `g` with perfect matching `m` is isomorphic to
/// `split(join(g, m))`: a source `v` matched to `w` maps to `out((v, w))`,
/// and a sink `w` matched from `v` maps to `in((v, w))`.
pub fn join_split_roundtrip_check(g: &Digraph, m: &Matching) -> Result<Isomorphism> {
    if let Some(v) = (0..g.n()).find(|&v| g.in_degree(v) > 0 && g.out_degree(v) > 0) {
        return Err(Error::NotStGraph(v));
    }
    m.check_subset_of(g)?;
    let mut covered = vec![false; g.n()];
    for &(v, w) in m.arcs() {
        covered[v] = true;
        covered[w] = true;
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Error::NotPerfectMatching(v));
    }
    let (j, jmap) = join(g, m)?;
    let (h, smap) = split(&j);
    let mut f = vec![NONE; g.n()];
    for &(v, w) in m.arcs() {
        let p = jmap.joined(v, w).expect("matched arcs are join vertices");
        f[v] = smap
            .out_vertex(p)
            .ok_or_else(|| Error::IsomorphismFailed(format!("out of ({v}, {w}) missing")))?;
        f[w] = smap
            .in_vertex(p)
            .ok_or_else(|| Error::IsomorphismFailed(format!("in of ({v}, {w}) missing")))?;
    }
    verify_isomorphism(g, &h, &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fork() -> Digraph {
        Digraph::new(4, [(0, 1), (0, 3), (2, 1)]).unwrap()
    }

    fn k22() -> Digraph {
        Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn twins() {
        let t = twin_partition(&k22());
        assert_eq!(t.blocks(), vec![vec![0, 1], vec![2, 3]]);
        assert!(twin_partition(&fork()).is_twin_free());
        assert_eq!(twin_partition(&Digraph::empty(3)).blocks(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn repr_cases() {
        let (r, map) = repr_reduction(&k22());
        assert_eq!(r.n(), 2);
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.representative(3), 2);
        assert_eq!(map.target(Origin::Vertex(3)), Some(1));

        let (r, _) = repr_reduction(&fork());
        assert_eq!(r, fork());

        // a->c, b->c: a and b are twins
        let g = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        let (r, map) = repr_reduction(&g);
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.origin(1), Origin::Vertex(2));
    }

    #[test]
    fn split_cases() {
        let (s, map) = split(&Digraph::new(1, [(0, 0)]).unwrap());
        assert_eq!(s.n(), 2);
        assert_eq!(s.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.origin(0), Origin::Out(0));
        assert_eq!(map.origin(1), Origin::In(0));

        let (s, _) = split(&Digraph::new(2, [(0, 1)]).unwrap());
        assert_eq!((s.n(), s.m()), (2, 1));

        // a->a, a->b, b->b: out(a)=0, out(b)=1, in(a)=2, in(b)=3
        let d = Digraph::new(2, [(0, 1)]).unwrap().reflexive_closure();
        let (s, map) = split(&d);
        assert!(s.is_st_graph());
        assert_eq!(s.arcs().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(map.in_vertex(1), Some(3));
    }

    #[test]
    fn join_cases() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        let (d, _) = join(&g, &Matching::new(vec![(0, 1)]).unwrap()).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 0)]);

        let (d, map) = join(&g, &Matching::empty()).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.origin(1), Origin::Joined(1, 1));

        // A=(a,d)=0, C=(c,b)=1
        let m = Matching::new(vec![(0, 3), (2, 1)]).unwrap();
        let (d, map) = join(&fork(), &m).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(map.joined(2, 1), Some(1));
        assert_eq!(map.joined(0, 1), None);

        let bad = Matching::new(vec![(3, 0)]).unwrap();
        assert_eq!(join(&fork(), &bad), Err(Error::ArcAbsent(3, 0)));
    }

    #[test]
    fn join_thin_cases() {
        let (d, _) = join_thin(&fork());
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        let (d, _) = join_thin(&k22());
        assert_eq!((d.n(), d.m()), (4, 4));
        let (d, _) = join_thin(&Digraph::new(2, [(0, 1)]).unwrap());
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn roundtrips() {
        let fork_star = fork().reflexive_closure();
        assert!(split_join_roundtrip_check(&fork_star).is_ok());
        assert!(split_join_roundtrip_check(&Digraph::new(1, [(0, 0)]).unwrap()).is_ok());
        assert_eq!(split_join_roundtrip_check(&fork()), Err(Error::NotReflexive(0)));

        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(join_split_roundtrip_check(&g, &Matching::new(vec![(0, 1)]).unwrap()).is_ok());
        let m = Matching::new(vec![(0, 2), (1, 3)]).unwrap();
        assert!(join_split_roundtrip_check(&k22(), &m).is_ok());
        let m = Matching::new(vec![(0, 3), (2, 1)]).unwrap();
        assert!(join_split_roundtrip_check(&fork(), &m).is_ok());
        let partial = Matching::new(vec![(0, 3)]).unwrap();
        assert_eq!(
            join_split_roundtrip_check(&fork(), &partial),
            Err(Error::NotPerfectMatching(1))
        );
    }

    #[test]
    fn maps_are_mutually_inverse() {
        let d = fork().reflexive_closure();
        let (_, smap) = split(&d);
        for t in 0..smap.len() {
            assert_eq!(smap.target(smap.origin(t)), Some(t));
        }
        let (_, jmap) = join_thin(&fork());
        for t in 0..jmap.len() {
            assert_eq!(jmap.target(jmap.origin(t)), Some(t));
        }
    }
}
