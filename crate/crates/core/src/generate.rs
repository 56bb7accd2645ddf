//! Seeded random instances for tests, benchmarks and the CLI generator.
//!
//! Every function takes the RNG explicitly, so a seeded `ChaCha8Rng` gives
//! reproducible output.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::Digraph;
use crate::matching::Matching;

/// `m` distinct pairs from `0..n × 0..n`, loops allowed when `loops` is set.
/// `m` is clamped to the number of available pairs.
fn distinct_pairs<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, loops: bool) -> Vec<(usize, usize)> {
    let total = if loops { n * n } else { n * n.saturating_sub(1) };
    let m = m.min(total);
    if m * 2 > total {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| loops || u != v)
            .collect();
        all.shuffle(rng);
        all.truncate(m);
        return all;
    }
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let arc = (rng.gen_range(0..n), rng.gen_range(0..n));
        if (loops || arc.0 != arc.1) && seen.insert(arc) {
            out.push(arc);
        }
    }
    out
}

/// Uniform digraph with `n` vertices and `m` arcs.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, loops: bool) -> Digraph {
    Digraph::new(n, distinct_pairs(rng, n, m, loops)).expect("distinct in-range pairs")
}

/// Random digraph plus every loop.
pub fn random_reflexive_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Digraph {
    random_digraph(rng, n, m, false).reflexive_closure()
}

/// ST graph with sources `0..sources`, sinks `sources..sources + sinks`, and
/// `m` arcs (clamped) from sources to sinks.
pub fn random_st_graph<R: Rng + ?Sized>(rng: &mut R, sources: usize, sinks: usize, m: usize) -> Digraph {
    let m = m.min(sources * sinks);
    let arcs: Vec<(usize, usize)> = if sources == 0 || sinks == 0 {
        Vec::new()
    } else if m * 2 > sources * sinks {
        let mut all: Vec<_> = (0..sources)
            .flat_map(|s| (0..sinks).map(move |t| (s, sources + t)))
            .collect();
        all.shuffle(rng);
        all.truncate(m);
        all
    } else {
        let mut seen = HashSet::with_capacity(m);
        while seen.len() < m {
            seen.insert((rng.gen_range(0..sources), sources + rng.gen_range(0..sinks)));
        }
        seen.into_iter().collect()
    };
    Digraph::new(sources + sinks, arcs).expect("distinct in-range pairs")
}

/// Reflexive, transitive closure of a random DAG: a random partial order
/// on `n` elements. Each pair is related in the DAG with probability `p`.
#[allow(clippy::needless_range_loop)] // triangular indexing reads better
pub fn random_order_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        for j in i + 1..n {
            reach[i][j] = rng.gen_bool(p);
        }
    }
    // Closure in topological order: reach[i] absorbs reach[j] for j > i.
    for i in (0..n).rev() {
        for j in i + 1..n {
            if reach[i][j] {
                for k in j + 1..n {
                    if reach[j][k] {
                        reach[i][k] = true;
                    }
                }
            }
        }
    }
    let arcs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| reach[i][j])
        .map(|(i, j)| (perm[i], perm[j]))
        .collect::<Vec<_>>();
    Digraph::new(n, arcs).expect("distinct in-range pairs")
}

/// ST graph with a perfect disimplicial elimination, built in reverse.
///
/// Pair `i` adds a source `v_i`, a sink `w_i` and the arc `v_i -> w_i`. The
/// source also points at a random set `Y` of earlier sinks and the sink is
/// entered from a random set `X` of earlier sources, with `Y` chosen among
/// the common out-neighbors of `X`. `X -> Y` is then already complete, so
/// `v_i -> w_i` is disimplicial once the later pairs are gone. Vertex ids
/// are shuffled at the end.
pub fn perfect_elimination_st<R: Rng + ?Sized>(rng: &mut R, pairs: usize, spread: usize) -> Digraph {
    let mut out: Vec<Vec<usize>> = Vec::new(); // sinks of each source, as pair indices
    let mut arcs: Vec<(usize, usize)> = Vec::new(); // (source pair, sink pair)
    for i in 0..pairs {
        let mut earlier: Vec<usize> = (0..i).collect();
        earlier.shuffle(rng);
        let x: Vec<usize> = earlier.iter().copied().take(rng.gen_range(0..=spread.min(i))).collect();
        let mut candidates: Vec<usize> = (0..i)
            .filter(|t| x.iter().all(|&s| out[s].contains(t)))
            .collect();
        candidates.shuffle(rng);
        let take = rng.gen_range(0..=spread.min(candidates.len()));
        let y = &candidates[..take];
        let mut mine = vec![i];
        mine.extend_from_slice(y);
        out.push(mine);
        arcs.push((i, i));
        arcs.extend(y.iter().map(|&t| (i, t)));
        for &s in &x {
            out[s].push(i);
            arcs.push((s, i));
        }
    }
    let mut perm: Vec<usize> = (0..2 * pairs).collect();
    perm.shuffle(rng);
    let mapped = arcs.into_iter().map(|(s, t)| (perm[s], perm[pairs + t]));
    Digraph::new(2 * pairs, mapped).expect("distinct in-range pairs")
}

/// Even cycle on `2k` vertices, oriented so that even vertices are sources:
/// `2i -> 2i+1` and `2i+2 -> 2i+1` (indices mod `2k`). For `k ≥ 3` it has
/// no disimplicial arc.
pub fn alternating_cycle(k: usize) -> Digraph {
    assert!(k >= 2, "alternating cycles need k >= 2");
    let n = 2 * k;
    let arcs = (0..k).flat_map(|i| [(2 * i, 2 * i + 1), ((2 * i + 2) % n, 2 * i + 1)]);
    Digraph::new(n, arcs).expect("distinct in-range pairs")
}

/// Random structural pattern of a `rows × cols` matrix, each entry present
/// with probability `density`. Zero-based, sorted.
pub fn random_sparse_pattern<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    density: f64,
) -> Vec<(usize, usize)> {
    let target = ((rows * cols) as f64 * density).round() as usize;
    let mut seen = HashSet::with_capacity(target);
    while seen.len() < target.min(rows * cols) {
        seen.insert((rng.gen_range(0..rows), rng.gen_range(0..cols)));
    }
    let mut entries: Vec<_> = seen.into_iter().collect();
    entries.sort_unstable();
    entries
}

/// Greedy matching over the arcs of `g` in random order, keeping each
/// independent arc with probability `keep`.
pub fn random_matching<R: Rng + ?Sized>(rng: &mut R, g: &Digraph, keep: f64) -> Matching {
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    arcs.shuffle(rng);
    let mut used = vec![false; g.n()];
    let mut chosen = Vec::new();
    for (u, v) in arcs {
        if !used[u] && !used[v] && rng.gen_bool(keep) {
            used[u] = true;
            used[v] = true;
            chosen.push((u, v));
        }
    }
    Matching::new(chosen).expect("greedy choice is independent")
}

/// ST graph on `2k` vertices with the perfect matching `i -> k + i` plus
/// `extra` random source-to-sink arcs.
pub fn random_st_with_perfect_matching<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    extra: usize,
) -> (Digraph, Matching) {
    let mut arcs: HashSet<(usize, usize)> = (0..k).map(|i| (i, k + i)).collect();
    let target = (k + extra).min(k * k);
    while arcs.len() < target {
        arcs.insert((rng.gen_range(0..k), k + rng.gen_range(0..k)));
    }
    let g = Digraph::new(2 * k, arcs).expect("distinct in-range pairs");
    let m = Matching::new((0..k).map(|i| (i, k + i)).collect()).expect("independent arcs");
    (g, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::is_transitive_digraph;
    use crate::elimination::is_perfect_elimination_st;
    use crate::oracle::naive_disimplicial_arcs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_digraph(&mut rng, 10, 30, false);
        assert_eq!((g.n(), g.m()), (10, 30));
        assert!(g.arcs().all(|(u, v)| u != v));
        assert_eq!(random_digraph(&mut rng, 3, 100, true).m(), 9);
        let st = random_st_graph(&mut rng, 4, 5, 12);
        assert!(st.is_st_graph());
        assert_eq!(st.m(), 12);
        let order = random_order_graph(&mut rng, 8, 0.3);
        assert!(order.is_reflexive() && order.is_oriented() && is_transitive_digraph(&order));
    }

    #[test]
    fn constructions_have_the_promised_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let g = perfect_elimination_st(&mut rng, 8, 3);
            assert!(g.is_st_graph());
            assert!(is_perfect_elimination_st(&g).unwrap().0);
        }
        for k in 3..6 {
            assert!(naive_disimplicial_arcs(&alternating_cycle(k)).is_empty());
        }
        let (g, m) = random_st_with_perfect_matching(&mut rng, 5, 7);
        assert!(m.is_perfect_for(&g));
        assert_eq!(g.m(), 12);
    }
}
