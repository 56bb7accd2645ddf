//! Order graphs, dedekind graphs, and the diclique irreducible classes.
//!
//! WDI and DI are decided on a normal form: split the input into an ST
//! graph, drop twins, and join along the thin arcs. The class questions then
//! become transitivity and order questions about that join.

use serde::Serialize;

use crate::arcs::{is_transitive_digraph, transitive_vertices};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matching::thin_arcs;
use crate::transforms::{join_thin, repr_reduction, split, twin_partition, Origin, TransformMap};

/// Upper and lower bounds of a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSets {
    /// `μ(V)`: vertices `u` with `v -> u` for every `v ∈ V`.
    pub upper: Vec<usize>,
    /// `λ(V)`: vertices `l` with `l -> v` for every `v ∈ V`.
    pub lower: Vec<usize>,
    /// Member of `μ(V)` below every member of `μ(V)`.
    pub supremum: Option<usize>,
    /// Member of `λ(V)` above every member of `λ(V)`.
    pub infimum: Option<usize>,
}

fn intersect(lists: impl Iterator<Item = Vec<usize>>) -> Vec<usize> {
    lists
        .reduce(|acc, next| acc.into_iter().filter(|x| next.binary_search(x).is_ok()).collect())
        .unwrap_or_default()
}

pub fn bounds(d: &Digraph, vs: &[usize]) -> Result<BoundSets> {
    if vs.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if let Some(&v) = vs.iter().find(|&&v| v >= d.n()) {
        return Err(Error::VertexOutOfRange { id: v, n: d.n() });
    }
    let upper = intersect(vs.iter().map(|&v| d.out_neighbors(v).to_vec()));
    let lower = intersect(vs.iter().map(|&v| d.in_neighbors(v).to_vec()));
    let supremum = upper
        .iter()
        .copied()
        .find(|&u| upper.iter().all(|&z| d.has_arc(u, z)));
    let infimum = lower
        .iter()
        .copied()
        .find(|&l| lower.iter().all(|&z| d.has_arc(z, l)));
    Ok(BoundSets { upper, lower, supremum, infimum })
}

/// Reflexive, oriented and transitive.
pub fn is_order_graph(d: &Digraph) -> bool {
    d.is_reflexive() && d.is_oriented() && is_transitive_digraph(d)
}

/// First pair `v, w` whose common upper bounds have no supremum.
///
/// Upper bounds of `{v, w}` are the common out-neighbors. A supremum `u` has
/// all of them, and only them, as out-neighbors, so a degree comparison
/// against `|μ({v, w})|` suffices.
fn dedekind_violation(d: &Digraph) -> Option<(usize, usize, Vec<usize>)> {
    let n = d.n();
    let mut mark = vec![usize::MAX; n];
    let mut common = Vec::new();
    for v in 0..n {
        for &u in d.out_neighbors(v) {
            mark[u] = v;
        }
        for w in v + 1..n {
            common.clear();
            common.extend(d.out_neighbors(w).iter().copied().filter(|&u| mark[u] == v));
            if !common.is_empty() && !common.iter().any(|&u| d.out_degree(u) == common.len()) {
                return Some((v, w, common.clone()));
            }
        }
    }
    None
}

/// Every nonempty set with an upper bound has a supremum.
pub fn is_dedekind(d: &Digraph) -> Result<bool> {
    if !is_order_graph(d) {
        return Err(Error::NotOrderGraph(order_failure(d).unwrap_or_default()));
    }
    Ok(dedekind_violation(d).is_none())
}

fn order_failure(d: &Digraph) -> Option<String> {
    if let Some(v) = (0..d.n()).find(|&v| !d.has_arc(v, v)) {
        return Some(format!("vertex {v} has no loop"));
    }
    if let Some((u, v)) = d.arcs().find(|&(u, v)| u != v && d.has_arc(v, u)) {
        return Some(format!("{u} -> {v} and {v} -> {u}"));
    }
    let report = transitive_vertices(d);
    (0..d.n())
        .find(|&v| !report.transitive[v])
        .map(|v| format!("vertex {v} is not transitive"))
}

/// The twin-free ST normal form of `g` together with the join along its thin
/// arcs.
struct Normalized {
    split_map: TransformMap,
    repr_map: TransformMap,
    reduced: Digraph,
    join: Digraph,
    join_map: TransformMap,
}

impl Normalized {
    fn new(g: &Digraph) -> Self {
        let (s, split_map) = split(g);
        let (reduced, repr_map) = repr_reduction(&s);
        let (join, join_map) = join_thin(&reduced);
        Normalized { split_map, repr_map, reduced, join, join_map }
    }

    /// Vertex of `g` behind a vertex of the reduced split.
    fn source(&self, r: usize) -> Origin {
        let Origin::Vertex(s) = self.repr_map.origin(r) else { unreachable!() };
        self.split_map.origin(s)
    }

    /// Arc of `g` behind a join vertex.
    fn arc_of(&self, p: usize) -> Option<(usize, usize)> {
        let Origin::Joined(a, b) = self.join_map.origin(p) else { unreachable!() };
        match (self.source(a), self.source(b)) {
            (Origin::Out(v), Origin::In(w)) => Some((v, w)),
            _ => None,
        }
    }

    fn wdi_violation(&self) -> Option<Witness> {
        let d = &self.join;
        let report = transitive_vertices(d);
        if let Some(p) = (0..d.n()).find(|&p| !report.transitive[p]) {
            return Some(Witness::Wdi { arc: self.arc_of(p), next: None });
        }
        let mut mark = vec![usize::MAX; d.n()];
        for a in 0..d.n() {
            for &c in d.out_neighbors(a) {
                mark[c] = a;
            }
            for &b in d.out_neighbors(a) {
                if !d.in_neighbors(b).iter().any(|&c| mark[c] == a) {
                    return Some(Witness::Wdi { arc: self.arc_of(a), next: self.arc_of(b) });
                }
            }
        }
        None
    }

    fn di_violation(&self) -> Option<Witness> {
        let thin = thin_arcs(&self.reduced);
        let covered = thin.vertices();
        if covered.len() != self.reduced.n() {
            let r = (0..self.reduced.n())
                .find(|v| covered.binary_search(v).is_err())
                .expect("uncovered vertex");
            let (side, vertex) = match self.source(r) {
                Origin::Out(v) => (Side::Out, v),
                Origin::In(v) => (Side::In, v),
                _ => unreachable!(),
            };
            return Some(Witness::DiThinArcs { side, vertex });
        }
        let d = &self.join;
        if !is_order_graph(d) {
            let report = transitive_vertices(d);
            let p = (0..d.n())
                .find(|&p| !d.has_arc(p, p) || !report.transitive[p])
                .or_else(|| d.arcs().find(|&(u, v)| u != v && d.has_arc(v, u)).map(|a| a.0))
                .expect("order failure");
            return Some(Witness::DiOrder { arc: self.arc_of(p) });
        }
        dedekind_violation(d).map(|(a, b, _)| Witness::DiSupremum {
            first: self.arc_of(a),
            second: self.arc_of(b),
        })
    }
}

/// Every arc lies in a maximal diclique holding a disimplicial arc.
pub fn is_wdi(g: &Digraph) -> bool {
    Normalized::new(g).wdi_violation().is_none()
}

/// Every maximal diclique holds a disimplicial arc.
pub fn is_di(g: &Digraph) -> bool {
    Normalized::new(g).di_violation().is_none()
}

/// `is_di(split(d))`, which agrees with [`is_dedekind`] on order graphs.
pub fn dedekind_via_split_check(d: &Digraph) -> Result<bool> {
    if !is_order_graph(d) {
        return Err(Error::NotOrderGraph(order_failure(d).unwrap_or_default()));
    }
    Ok(is_di(&split(d).0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Out,
    In,
}

/// A counterexample to one of the classes. Arcs refer to the input digraph;
/// `None` marks a join vertex that stands for a vertex instead of an arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Witness {
    /// A vertex with both in- and out-arcs.
    St { vertex: usize },
    TwinFree { first: usize, second: usize },
    Reflexive { vertex: usize },
    Oriented { tail: usize, head: usize },
    /// `from -> vertex -> to` without `from -> to`.
    Transitive { vertex: usize, from: usize, to: usize },
    /// `first` and `second` are bounded above by `upper` with no supremum.
    Dedekind { first: usize, second: usize, upper: Vec<usize> },
    /// In the thin join, the vertex of `arc` is intransitive (`next` absent)
    /// or its arc towards the vertex of `next` has no midpoint.
    Wdi { arc: Option<(usize, usize)>, next: Option<(usize, usize)> },
    /// The reduced split vertex `side(vertex)` is on no thin arc.
    DiThinArcs { side: Side, vertex: usize },
    /// The thin join is not an order graph around the vertex of `arc`.
    DiOrder { arc: Option<(usize, usize)> },
    /// The thin join vertices of `first` and `second` lack a supremum.
    DiSupremum { first: Option<(usize, usize)>, second: Option<(usize, usize)> },
}

impl Witness {
    /// Human-readable form using the digraph's labels.
    pub fn describe(&self, g: &Digraph) -> String {
        let l = |v: usize| g.label(v);
        let arc = |a: &Option<(usize, usize)>| match a {
            Some((v, w)) => format!("{} -> {}", l(*v), l(*w)),
            None => "an unmatched vertex".to_string(),
        };
        match self {
            Witness::St { vertex } => format!("{} is neither a source nor a sink", l(*vertex)),
            Witness::TwinFree { first, second } => {
                format!("{} and {} are twins", l(*first), l(*second))
            }
            Witness::Reflexive { vertex } => format!("{} has no loop", l(*vertex)),
            Witness::Oriented { tail, head } => {
                format!("{} and {} form a 2-cycle", l(*tail), l(*head))
            }
            Witness::Transitive { vertex, from, to } => format!(
                "{} -> {} -> {} without {} -> {}",
                l(*from),
                l(*vertex),
                l(*to),
                l(*from),
                l(*to)
            ),
            Witness::Dedekind { first, second, upper } => format!(
                "{{{}, {}}} has upper bounds {{{}}} but no supremum",
                l(*first),
                l(*second),
                upper.iter().map(|&u| l(u)).collect::<Vec<_>>().join(", ")
            ),
            Witness::Wdi { arc: a, next: None } => {
                format!("thin join vertex of {} is not transitive", arc(a))
            }
            Witness::Wdi { arc: a, next: Some(b) } => format!(
                "thin join arc from {} to {} has no midpoint",
                arc(a),
                arc(&Some(*b))
            ),
            Witness::DiThinArcs { side, vertex } => format!(
                "{}({}) is on no thin arc",
                match side {
                    Side::Out => "out",
                    Side::In => "in",
                },
                l(*vertex)
            ),
            Witness::DiOrder { arc: a } => {
                format!("thin join is not an order graph at {}", arc(a))
            }
            Witness::DiSupremum { first, second } => format!(
                "thin join vertices of {} and {} have no supremum",
                arc(first),
                arc(second)
            ),
        }
    }
}

/// Class membership flags plus one witness per failed property.
///
/// `is_dedekind` is only meaningful for order graphs and is `false`
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_st: bool,
    pub is_twin_free: bool,
    pub is_reflexive: bool,
    pub is_oriented: bool,
    pub is_transitive: bool,
    pub is_order: bool,
    pub is_dedekind: bool,
    pub is_wdi: bool,
    pub is_di: bool,
    pub witness: Vec<Witness>,
}

pub fn classify(g: &Digraph) -> ClassReport {
    let mut witness = Vec::new();
    let n = g.n();

    let not_st = (0..n).find(|&v| g.in_degree(v) > 0 && g.out_degree(v) > 0);
    witness.extend(not_st.map(|vertex| Witness::St { vertex }));

    let twins = twin_partition(g);
    let twin_pair = twins.blocks().into_iter().find(|b| b.len() > 1);
    witness.extend(twin_pair.as_ref().map(|b| Witness::TwinFree { first: b[0], second: b[1] }));

    let no_loop = (0..n).find(|&v| !g.has_arc(v, v));
    witness.extend(no_loop.map(|vertex| Witness::Reflexive { vertex }));

    let two_cycle = g.arcs().find(|&(u, v)| u < v && g.has_arc(v, u));
    witness.extend(two_cycle.map(|(tail, head)| Witness::Oriented { tail, head }));

    let report = transitive_vertices(g);
    let intransitive = (0..n).find(|&v| !report.transitive[v]).map(|v| {
        let (from, to) = g
            .in_neighbors(v)
            .iter()
            .flat_map(|&x| g.out_neighbors(v).iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !g.has_arc(x, y))
            .expect("intransitive vertex has a missing arc");
        Witness::Transitive { vertex: v, from, to }
    });
    let is_transitive = intransitive.is_none();
    witness.extend(intransitive);

    let is_order = no_loop.is_none() && two_cycle.is_none() && is_transitive;
    let mut is_dedekind = false;
    if is_order {
        let violation = dedekind_violation(g);
        is_dedekind = violation.is_none();
        witness.extend(
            violation.map(|(first, second, upper)| Witness::Dedekind { first, second, upper }),
        );
    }

    let normal = Normalized::new(g);
    let wdi = normal.wdi_violation();
    let di = normal.di_violation();
    let (is_wdi, is_di) = (wdi.is_none(), di.is_none());
    witness.extend(wdi);
    witness.extend(di);

    ClassReport {
        is_st: not_st.is_none(),
        is_twin_free: twin_pair.is_none(),
        is_reflexive: no_loop.is_none(),
        is_oriented: two_cycle.is_none(),
        is_transitive,
        is_order,
        is_dedekind,
        is_wdi,
        is_di,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Digraph {
        Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])
            .unwrap()
            .reflexive_closure()
    }

    fn two_tops() -> Digraph {
        Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
            .unwrap()
            .reflexive_closure()
    }

    fn chain(n: usize) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j)))).unwrap()
    }

    fn fork() -> Digraph {
        Digraph::new(4, [(0, 1), (0, 3), (2, 1)]).unwrap()
    }

    fn k22() -> Digraph {
        Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn c6() -> Digraph {
        Digraph::new(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)]).unwrap()
    }

    #[test]
    fn order_graphs() {
        assert!(is_order_graph(&diamond()));
        assert!(!is_order_graph(&Digraph::new(2, [(0, 1), (1, 0), (0, 0), (1, 1)]).unwrap()));
        let open = Digraph::new(3, [(0, 1), (1, 2)]).unwrap().reflexive_closure();
        assert!(!is_order_graph(&open));
    }

    #[test]
    fn bound_sets() {
        let b = bounds(&diamond(), &[1, 2]).unwrap();
        assert_eq!(b.upper, vec![3]);
        assert_eq!(b.supremum, Some(3));
        assert_eq!(b.lower, vec![0]);
        assert_eq!(b.infimum, Some(0));
        assert_eq!(bounds(&diamond(), &[2]).unwrap().supremum, Some(2));
        let b = bounds(&two_tops(), &[0, 1]).unwrap();
        assert_eq!(b.upper, vec![2, 3]);
        assert_eq!(b.supremum, None);
        assert_eq!(bounds(&diamond(), &[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(is_dedekind(&diamond()), Ok(true));
        assert_eq!(is_dedekind(&two_tops()), Ok(false));
        assert_eq!(is_dedekind(&chain(5)), Ok(true));
        assert!(matches!(is_dedekind(&fork()), Err(Error::NotOrderGraph(_))));
    }

    #[test]
    fn wdi_and_di_examples() {
        assert!(is_wdi(&k22()) && is_di(&k22()));
        assert!(is_wdi(&fork()));
        assert!(is_di(&fork()));
        assert!(!is_wdi(&c6()) && !is_di(&c6()));
        assert!(is_wdi(&Digraph::empty(3)) && is_di(&Digraph::empty(3)));
    }

    #[test]
    fn split_cross_check() {
        assert_eq!(dedekind_via_split_check(&diamond()), Ok(true));
        assert_eq!(dedekind_via_split_check(&two_tops()), Ok(false));
        assert_eq!(dedekind_via_split_check(&chain(1)), Ok(true));
    }

    #[test]
    fn report_fields_and_witnesses() {
        let r = classify(&c6());
        assert!(r.is_st && r.is_twin_free && !r.is_wdi && !r.is_di && !r.is_order);
        assert!(r.witness.iter().any(|w| matches!(w, Witness::Wdi { .. })));
        let r = classify(&two_tops());
        assert!(r.is_order && !r.is_dedekind);
        assert!(r.witness.contains(&Witness::Dedekind { first: 0, second: 1, upper: vec![2, 3] }));
    }
}
