//! The h-digraph: a vertex-deletion structure with degree-bucketed
//! neighborhoods.
//!
//! For every live vertex `v` and direction `•` (with `∘` the opposite one)
//! the `•`-neighbors of `v` are split by their `∘`-degree:
//!
//! * the *bucket list* holds the nonempty sets `N•(v, i) = {z : d∘(z) = i}`
//!   for `i < d•(v)`, in increasing `i`;
//! * the *H-set* `H•(v)` holds the neighbors with `d∘(z) >= d•(v)`.
//!
//! Every arc `v -> w` has `v ∈ H⁻(w)` or `w ∈ H⁺(v)`, so scanning all H-sets
//! touches every arc. Each arc is stored twice, once in the out-structure of
//! its tail and once in the in-structure of its head; these two
//! *occurrences* are relocated in O(1) when a degree changes.
//!
//! A degree change `d∘(z): k -> k - 1` only moves the occurrences of `z`
//! owned by vertices in `H∘(z)`, which all land in the bucket of key `k - 1`:
//! either the predecessor of their current bucket, or the new last bucket.
//! That keeps bucket lists sorted without searching them.

use std::fmt::Write as _;

use crate::digraph::{Digraph, Dir};
use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;
const IN_H: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Bucket {
    key: usize,
    prev: u32,
    next: u32,
    members: Vec<u32>,
}

/// Dynamic digraph supporting vertex removal, neighborhood arc listing and
/// minimum-degree neighbor queries.
#[derive(Clone, Debug)]
pub struct HDigraph {
    n: usize,
    live: Vec<bool>,
    live_count: usize,
    deg: [Vec<usize>; 2],
    tail: Vec<usize>,
    head: Vec<usize>,
    // arcs of v: out_off[v]..out_off[v+1] are ids; in_arcs[in_off[v]..] too
    out_off: Vec<usize>,
    in_off: Vec<usize>,
    in_arcs: Vec<usize>,
    occ_bucket: Vec<u32>,
    occ_pos: Vec<u32>,
    hset: [Vec<Vec<u32>>; 2],
    first: [Vec<u32>; 2],
    last: [Vec<u32>; 2],
    buckets: Vec<Bucket>,
    free: Vec<u32>,
    epoch: u32,
    mark_a: Vec<u32>,
    mark_b: Vec<u32>,
    arc_mark: Vec<u32>,
}

/// Bucket contents of one side of one vertex, members sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideSnapshot {
    pub buckets: Vec<(usize, Vec<usize>)>,
    pub h: Vec<usize>,
}

/// Bucket contents of a live vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSnapshot {
    pub vertex: usize,
    pub out: SideSnapshot,
    pub inn: SideSnapshot,
}

#[inline]
fn side_of(occ: u32) -> Dir {
    if occ & 1 == 0 {
        Dir::Out
    } else {
        Dir::In
    }
}

impl HDigraph {
    pub fn new(d: &Digraph) -> Self {
        let n = d.n();
        let m = d.m();
        assert!(2 * m < u32::MAX as usize, "too many arcs for 32-bit occurrence ids");
        let tail = d.arc_tails();
        let head = d.arc_heads().to_vec();
        let mut out_off = vec![0usize; n + 1];
        let mut in_off = vec![0usize; n + 1];
        for v in 0..n {
            out_off[v + 1] = out_off[v] + d.out_degree(v);
            in_off[v + 1] = in_off[v] + d.in_degree(v);
        }
        let mut in_arcs = vec![0usize; m];
        let mut fill = in_off.clone();
        for e in 0..m {
            in_arcs[fill[head[e]]] = e;
            fill[head[e]] += 1;
        }
        let deg = [
            (0..n).map(|v| d.out_degree(v)).collect::<Vec<_>>(),
            (0..n).map(|v| d.in_degree(v)).collect::<Vec<_>>(),
        ];
        let mut h = HDigraph {
            n,
            live: vec![true; n],
            live_count: n,
            deg,
            tail,
            head,
            out_off,
            in_off,
            in_arcs,
            occ_bucket: vec![IN_H; 2 * m],
            occ_pos: vec![0; 2 * m],
            hset: [vec![Vec::new(); n], vec![Vec::new(); n]],
            first: [vec![NIL; n], vec![NIL; n]],
            last: [vec![NIL; n], vec![NIL; n]],
            buckets: Vec::new(),
            free: Vec::new(),
            epoch: 0,
            mark_a: vec![0; n],
            mark_b: vec![0; n],
            arc_mark: vec![0; m],
        };
        // Counting sort of bucketed occurrences by key, then append in key
        // order so every bucket list comes out sorted.
        let mut by_key: Vec<Vec<u32>> = Vec::new();
        for occ in 0..(2 * m) as u32 {
            let key = h.occ_key(occ);
            if key >= h.threshold(occ) {
                h.push_h(occ);
            } else {
                if by_key.len() <= key {
                    by_key.resize_with(key + 1, Vec::new);
                }
                by_key[key].push(occ);
            }
        }
        for (key, occs) in by_key.into_iter().enumerate() {
            for occ in occs {
                let (owner, dir) = (h.occ_owner(occ), side_of(occ));
                let last = h.last[dir.index()][owner];
                let b = if last != NIL && h.buckets[last as usize].key == key {
                    last
                } else {
                    h.new_bucket_after(owner, dir, last, key)
                };
                h.push_bucket(b, occ);
            }
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_live(&self, v: usize) -> bool {
        self.live[v]
    }

    // ---- occurrence helpers ----

    #[inline]
    fn occ_owner(&self, occ: u32) -> usize {
        let e = (occ >> 1) as usize;
        match side_of(occ) {
            Dir::Out => self.tail[e],
            Dir::In => self.head[e],
        }
    }

    #[inline]
    fn occ_member(&self, occ: u32) -> usize {
        let e = (occ >> 1) as usize;
        match side_of(occ) {
            Dir::Out => self.head[e],
            Dir::In => self.tail[e],
        }
    }

    /// Opposite-direction degree of the member.
    #[inline]
    fn occ_key(&self, occ: u32) -> usize {
        self.deg[side_of(occ).opposite().index()][self.occ_member(occ)]
    }

    #[inline]
    fn threshold(&self, occ: u32) -> usize {
        self.deg[side_of(occ).index()][self.occ_owner(occ)]
    }

    fn push_h(&mut self, occ: u32) {
        let (owner, dir) = (self.occ_owner(occ), side_of(occ));
        let set = &mut self.hset[dir.index()][owner];
        self.occ_bucket[occ as usize] = IN_H;
        self.occ_pos[occ as usize] = set.len() as u32;
        set.push(occ);
    }

    fn push_bucket(&mut self, b: u32, occ: u32) {
        let members = &mut self.buckets[b as usize].members;
        self.occ_bucket[occ as usize] = b;
        self.occ_pos[occ as usize] = members.len() as u32;
        members.push(occ);
    }

    fn alloc_bucket(&mut self, key: usize) -> u32 {
        let fresh = Bucket {
            key,
            prev: NIL,
            next: NIL,
            members: Vec::new(),
        };
        match self.free.pop() {
            Some(b) => {
                self.buckets[b as usize] = fresh;
                b
            }
            None => {
                self.buckets.push(fresh);
                (self.buckets.len() - 1) as u32
            }
        }
    }

    /// Links a new bucket right after `after` (or at the front when NIL).
    fn new_bucket_after(&mut self, owner: usize, dir: Dir, after: u32, key: usize) -> u32 {
        let b = self.alloc_bucket(key);
        let di = dir.index();
        let next = if after == NIL {
            self.first[di][owner]
        } else {
            self.buckets[after as usize].next
        };
        self.buckets[b as usize].prev = after;
        self.buckets[b as usize].next = next;
        if after == NIL {
            self.first[di][owner] = b;
        } else {
            self.buckets[after as usize].next = b;
        }
        if next == NIL {
            self.last[di][owner] = b;
        } else {
            self.buckets[next as usize].prev = b;
        }
        b
    }

    fn unlink_bucket(&mut self, owner: usize, dir: Dir, b: u32) {
        let di = dir.index();
        let (prev, next) = {
            let bk = &self.buckets[b as usize];
            (bk.prev, bk.next)
        };
        if prev == NIL {
            self.first[di][owner] = next;
        } else {
            self.buckets[prev as usize].next = next;
        }
        if next == NIL {
            self.last[di][owner] = prev;
        } else {
            self.buckets[next as usize].prev = prev;
        }
        self.buckets[b as usize].members = Vec::new();
        self.free.push(b);
    }

    /// Detaches `occ` from its bucket or H-set.
    fn detach(&mut self, occ: u32) {
        let (owner, dir) = (self.occ_owner(occ), side_of(occ));
        let b = self.occ_bucket[occ as usize];
        let pos = self.occ_pos[occ as usize] as usize;
        let list = if b == IN_H {
            &mut self.hset[dir.index()][owner]
        } else {
            &mut self.buckets[b as usize].members
        };
        list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            self.occ_pos[moved as usize] = pos as u32;
        }
        if b != IN_H && self.buckets[b as usize].members.is_empty() {
            self.unlink_bucket(owner, dir, b);
        }
    }

    /// Moves `occ` to the bucket of key `key - 1`, where `key` is its
    /// current (not yet decremented) key.
    fn shift_down(&mut self, occ: u32, key: usize) {
        let (owner, dir) = (self.occ_owner(occ), side_of(occ));
        let b = self.occ_bucket[occ as usize];
        let anchor = if b == IN_H {
            self.last[dir.index()][owner]
        } else {
            debug_assert_eq!(self.buckets[b as usize].key, key);
            self.buckets[b as usize].prev
        };
        let target = if anchor != NIL && self.buckets[anchor as usize].key == key - 1 {
            anchor
        } else {
            debug_assert!(anchor == NIL || self.buckets[anchor as usize].key < key - 1);
            self.new_bucket_after(owner, dir, anchor, key - 1)
        };
        self.detach(occ);
        self.push_bucket(target, occ);
    }

    /// `d_dir(v)` drops by one; occurrences keyed by it and `v`'s own
    /// threshold are rebalanced.
    fn decrement(&mut self, v: usize, dir: Dir) {
        let di = dir.index();
        let k = self.deg[di][v];
        debug_assert!(k > 0);
        // H_dir(v) lists the owners whose structures key v by a value that
        // reaches their threshold or sits in a bucket: exactly the ones to move.
        for i in 0..self.hset[di][v].len() {
            let occ = self.hset[di][v][i];
            self.shift_down(occ ^ 1, k);
        }
        self.deg[di][v] = k - 1;
        let last = self.last[di][v];
        if last != NIL && self.buckets[last as usize].key == k - 1 {
            let members = std::mem::take(&mut self.buckets[last as usize].members);
            for occ in members {
                self.push_h(occ);
            }
            self.unlink_bucket(v, dir, last);
        }
    }

    fn side_occurrences(&self, v: usize, dir: Dir) -> Vec<u32> {
        let di = dir.index();
        let mut out = Vec::with_capacity(self.deg[di][v]);
        let mut b = self.first[di][v];
        while b != NIL {
            out.extend_from_slice(&self.buckets[b as usize].members);
            b = self.buckets[b as usize].next;
        }
        out.extend_from_slice(&self.hset[di][v]);
        out
    }

    fn check_live(&self, v: usize) -> Result<()> {
        if v >= self.n || !self.live[v] {
            Err(Error::DeadVertex(v))
        } else {
            Ok(())
        }
    }

    // ---- public operations ----

    /// Deletes `v` and every arc touching it.
    pub fn remove(&mut self, v: usize) -> Result<()> {
        self.check_live(v)?;
        let outs = self.side_occurrences(v, Dir::Out);
        let ins = self.side_occurrences(v, Dir::In);
        let mut lost_in = Vec::with_capacity(outs.len());
        let mut lost_out = Vec::with_capacity(ins.len());
        for &occ in &outs {
            let w = self.occ_member(occ);
            if w != v {
                self.detach(occ ^ 1);
                lost_in.push(w);
            }
        }
        for &occ in &ins {
            let u = self.occ_member(occ);
            if u != v {
                self.detach(occ ^ 1);
                lost_out.push(u);
            }
        }
        for dir in [Dir::Out, Dir::In] {
            let di = dir.index();
            let mut b = self.first[di][v];
            while b != NIL {
                let next = self.buckets[b as usize].next;
                self.buckets[b as usize].members = Vec::new();
                self.free.push(b);
                b = next;
            }
            self.first[di][v] = NIL;
            self.last[di][v] = NIL;
            self.hset[di][v] = Vec::new();
            self.deg[di][v] = 0;
        }
        self.live[v] = false;
        self.live_count -= 1;
        for w in lost_in {
            self.decrement(w, Dir::In);
        }
        for u in lost_out {
            self.decrement(u, Dir::Out);
        }
        Ok(())
    }

    /// Current `d_dir(v)`.
    pub fn degree(&self, v: usize, dir: Dir) -> Result<usize> {
        self.check_live(v)?;
        Ok(self.deg[dir.index()][v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.deg[0][v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.deg[1][v]
    }

    /// Live `dir`-neighbors of `v`, bucketed ones first.
    pub fn neighbors(&self, v: usize, dir: Dir) -> Vec<usize> {
        self.side_occurrences(v, dir)
            .into_iter()
            .map(|o| self.occ_member(o))
            .collect()
    }

    /// Members of `H_dir(v)`.
    pub fn h_set(&self, v: usize, dir: Dir) -> impl Iterator<Item = usize> + '_ {
        self.hset[dir.index()][v].iter().map(move |&o| self.occ_member(o))
    }

    /// `max(|H⁺(v)|, |H⁻(v)|)`.
    pub fn h(&self, v: usize) -> usize {
        self.hset[0][v].len().max(self.hset[1][v].len())
    }

    /// The `dir`-neighbors of `v` with minimum opposite degree, ascending.
    pub fn min_n(&self, v: usize, dir: Dir) -> Result<Vec<usize>> {
        self.check_live(v)?;
        let di = dir.index();
        let first = self.first[di][v];
        let mut out: Vec<usize> = if first != NIL {
            self.buckets[first as usize]
                .members
                .iter()
                .map(|&o| self.occ_member(o))
                .collect()
        } else {
            let set = &self.hset[di][v];
            let Some(min) = set.iter().map(|&o| self.occ_key(o)).min() else {
                return Err(Error::EmptyNeighborhood(v));
            };
            set.iter()
                .filter(|&&o| self.occ_key(o) == min)
                .map(|&o| self.occ_member(o))
                .collect()
        };
        out.sort_unstable();
        Ok(out)
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark_a.iter_mut().for_each(|x| *x = 0);
            self.mark_b.iter_mut().for_each(|x| *x = 0);
            self.arc_mark.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Live arcs with both endpoints in `N_dir(v)`, sorted.
    pub fn n_prime(&mut self, v: usize, dir: Dir) -> Result<Vec<(usize, usize)>> {
        self.check_live(v)?;
        let members = self.neighbors(v, dir);
        let ep = self.next_epoch();
        for &x in &members {
            self.mark_a[x] = ep;
        }
        let mut arcs = Vec::new();
        for &x in &members {
            for &o in &self.hset[0][x] {
                let e = (o >> 1) as usize;
                let y = self.head[e];
                if self.mark_a[y] == ep && self.arc_mark[e] != ep {
                    self.arc_mark[e] = ep;
                    arcs.push((x, y));
                }
            }
            for &o in &self.hset[1][x] {
                let e = (o >> 1) as usize;
                let u = self.tail[e];
                if self.mark_a[u] == ep && self.arc_mark[e] != ep {
                    self.arc_mark[e] = ep;
                    arcs.push((u, x));
                }
            }
        }
        arcs.sort_unstable();
        Ok(arcs)
    }

    /// Number of live arcs `x -> y` with `x ∈ sources` and `y ∈ targets`.
    /// Both slices must list distinct live vertices.
    ///
    /// Runs over the H-sets of the members only: each such arc is reached
    /// from `H⁻(y)` or `H⁺(x)` and counted once thanks to arc stamps.
    pub fn count_arcs(&mut self, sources: &[usize], targets: &[usize]) -> usize {
        let ep = self.next_epoch();
        for &x in sources {
            self.mark_a[x] = ep;
        }
        for &y in targets {
            self.mark_b[y] = ep;
        }
        let mut count = 0;
        for &y in targets {
            for &o in &self.hset[1][y] {
                let e = (o >> 1) as usize;
                if self.mark_a[self.tail[e]] == ep {
                    self.arc_mark[e] = ep;
                    count += 1;
                }
            }
        }
        for &x in sources {
            for &o in &self.hset[0][x] {
                let e = (o >> 1) as usize;
                if self.mark_b[self.head[e]] == ep && self.arc_mark[e] != ep {
                    count += 1;
                }
            }
        }
        count
    }

    /// `v -> w` is live and `N⁻(w) -> N⁺(v)` is a diclique, by counting the
    /// arcs between the two neighborhoods.
    pub fn is_disimplicial(&mut self, v: usize, w: usize) -> bool {
        if !self.is_live(v) || !self.is_live(w) || !self.has_live_arc(v, w) {
            return false;
        }
        let heads = self.neighbors(v, Dir::Out);
        let tails = self.neighbors(w, Dir::In);
        self.count_arcs(&tails, &heads) == heads.len() * tails.len()
    }

    /// Whether the arc `u -> v` exists with both endpoints live.
    pub fn has_live_arc(&self, u: usize, v: usize) -> bool {
        if !self.live[u] || !self.live[v] {
            return false;
        }
        let ids = &self.head[self.out_off[u]..self.out_off[u + 1]];
        ids.binary_search(&v).is_ok()
    }

    /// Live vertices in ascending order.
    pub fn live_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.live[v]).collect()
    }

    /// The surviving digraph with the original ids; removed vertices are
    /// isolated.
    pub fn live_digraph(&self) -> Digraph {
        let arcs = (0..self.tail.len())
            .filter(|&e| self.live[self.tail[e]] && self.live[self.head[e]])
            .map(|e| (self.tail[e], self.head[e]))
            .collect();
        Digraph::from_unique_arcs(self.n, arcs)
    }

    fn side_snapshot(&self, v: usize, dir: Dir) -> SideSnapshot {
        let di = dir.index();
        let mut buckets = Vec::new();
        let mut b = self.first[di][v];
        while b != NIL {
            let bk = &self.buckets[b as usize];
            let mut ms: Vec<usize> = bk.members.iter().map(|&o| self.occ_member(o)).collect();
            ms.sort_unstable();
            buckets.push((bk.key, ms));
            b = bk.next;
        }
        let mut h: Vec<usize> = self.h_set(v, dir).collect();
        h.sort_unstable();
        SideSnapshot { buckets, h }
    }

    /// Bucket contents of every live vertex, for comparisons in tests.
    pub fn snapshot(&self) -> Vec<VertexSnapshot> {
        self.live_vertices()
            .into_iter()
            .map(|v| VertexSnapshot {
                vertex: v,
                out: self.side_snapshot(v, Dir::Out),
                inn: self.side_snapshot(v, Dir::In),
            })
            .collect()
    }

    /// Human-readable per-vertex bucket listing:
    /// `v +: [key: members] ... | H: members`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for snap in self.snapshot() {
            for (sign, side) in [("+", &snap.out), ("-", &snap.inn)] {
                let _ = write!(s, "{} {sign}:", snap.vertex);
                for (key, ms) in &side.buckets {
                    let list: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                    let _ = write!(s, " [{key}: {}]", list.join(" "));
                }
                let list: Vec<String> = side.h.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(s, " | H: {}", list.join(" "));
            }
        }
        s
    }

    /// Checks every structural invariant; returns a description of the
    /// first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let m = self.tail.len();
        let mut seen = vec![false; 2 * m];
        for v in 0..self.n {
            for dir in [Dir::Out, Dir::In] {
                let di = dir.index();
                if !self.live[v] {
                    if self.first[di][v] != NIL || !self.hset[di][v].is_empty() {
                        return Err(format!("dead vertex {v} still has {dir:?} entries"));
                    }
                    continue;
                }
                let threshold = self.deg[di][v];
                let mut count = 0;
                let mut prev_key: Option<usize> = None;
                let mut prev = NIL;
                let mut b = self.first[di][v];
                while b != NIL {
                    let bk = &self.buckets[b as usize];
                    if bk.prev != prev {
                        return Err(format!("broken bucket links at {v} {dir:?}"));
                    }
                    if bk.members.is_empty() {
                        return Err(format!("empty bucket at {v} {dir:?}"));
                    }
                    if bk.key >= threshold || prev_key.is_some_and(|p| p >= bk.key) {
                        return Err(format!("bucket key {} out of order at {v} {dir:?}", bk.key));
                    }
                    for (pos, &o) in bk.members.iter().enumerate() {
                        if self.occ_owner(o) != v || side_of(o) != dir {
                            return Err(format!("foreign occurrence in bucket of {v}"));
                        }
                        if self.occ_key(o) != bk.key {
                            return Err(format!(
                                "member {} of {v} {dir:?} keyed {} in bucket {}",
                                self.occ_member(o),
                                self.occ_key(o),
                                bk.key
                            ));
                        }
                        if self.occ_bucket[o as usize] != b || self.occ_pos[o as usize] as usize != pos {
                            return Err(format!("stale handle for occurrence {o}"));
                        }
                        seen[o as usize] = true;
                        count += 1;
                    }
                    prev_key = Some(bk.key);
                    prev = b;
                    b = bk.next;
                }
                if self.last[di][v] != prev {
                    return Err(format!("stale last bucket at {v} {dir:?}"));
                }
                for (pos, &o) in self.hset[di][v].iter().enumerate() {
                    if self.occ_owner(o) != v || side_of(o) != dir {
                        return Err(format!("foreign occurrence in H of {v}"));
                    }
                    if self.occ_key(o) < threshold {
                        return Err(format!(
                            "member {} of H {dir:?}({v}) below threshold",
                            self.occ_member(o)
                        ));
                    }
                    if self.occ_bucket[o as usize] != IN_H || self.occ_pos[o as usize] as usize != pos {
                        return Err(format!("stale handle for occurrence {o}"));
                    }
                    seen[o as usize] = true;
                    count += 1;
                }
                if count != threshold {
                    return Err(format!("degree {threshold} but {count} entries at {v} {dir:?}"));
                }
            }
        }
        for e in 0..m {
            let alive = self.live[self.tail[e]] && self.live[self.head[e]];
            for occ in [2 * e, 2 * e + 1] {
                if seen[occ] != alive {
                    return Err(format!(
                        "arc {} -> {} occurrence presence {} but arc live {}",
                        self.tail[e], self.head[e], seen[occ], alive
                    ));
                }
            }
            if alive
                && self.occ_bucket[2 * e] != IN_H
                && self.occ_bucket[2 * e + 1] != IN_H
            {
                return Err(format!(
                    "arc {} -> {} is in no H-set",
                    self.tail[e], self.head[e]
                ));
            }
        }
        // Degrees must equal live neighbor counts.
        for v in (0..self.n).filter(|&v| self.live[v]) {
            let outs = self.out_off[v]..self.out_off[v + 1];
            let live_out = outs.filter(|&e| self.live[self.head[e]]).count();
            let live_in = self.in_arcs[self.in_off[v]..self.in_off[v + 1]]
                .iter()
                .filter(|&&e| self.live[self.tail[e]])
                .count();
            if live_out != self.deg[0][v] || live_in != self.deg[1][v] {
                return Err(format!("stale degrees at {v}"));
            }
        }
        Ok(())
    }
}
