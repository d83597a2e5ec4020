//! Connectivity patterns on points of a circle and the chord relations that
//! generate them.
//!
//! Points are vertex ids listed in clockwise order. Relations are bit
//! matrices over boundary positions, so a boundary holds at most 64 points.

use std::collections::BTreeSet;

use crate::digraph::{DiGraph, Vertex, VertexSet};
use crate::error::{Error, Result};

pub const MAX_BOUNDARY: usize = 64;

/// Rotation of a cyclic order starting at its smallest element.
pub fn canonical_rotation(t: &[Vertex]) -> Vec<Vertex> {
    match t.iter().enumerate().min_by_key(|&(_, v)| v) {
        None => Vec::new(),
        Some((i, _)) => t[i..].iter().chain(&t[..i]).copied().collect(),
    }
}

fn check_boundary(t: &[Vertex]) -> Result<()> {
    if t.len() > MAX_BOUNDARY {
        return Err(Error::CapExceeded { what: "boundary size", limit: MAX_BOUNDARY, actual: t.len() });
    }
    let distinct: BTreeSet<Vertex> = t.iter().copied().collect();
    if distinct.len() != t.len() {
        return Err(Error::invalid(format!("boundary {t:?} repeats a point")));
    }
    Ok(())
}

fn position(t: &[Vertex], v: Vertex) -> Result<usize> {
    t.iter().position(|&w| w == v).ok_or_else(|| Error::invalid(format!("{v} is not a boundary point")))
}

/// Whether chords `{a,b}` and `{c,d}` cross on the circle `t`: endpoints all
/// distinct and alternating.
pub fn crossing(c1: (Vertex, Vertex), c2: (Vertex, Vertex), t: &[Vertex]) -> bool {
    let p = |v| t.iter().position(|&w| w == v).expect("chord endpoint on the circle");
    let (a, b, c, d) = (p(c1.0), p(c1.1), p(c2.0), p(c2.1));
    cross_pos(a, b, c, d)
}

fn cross_pos(a: usize, b: usize, c: usize, d: usize) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

/// Arbitrary relation on boundary points without loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordRelation {
    boundary: Vec<Vertex>,
    rows: Vec<u64>,
}

impl ChordRelation {
    /// Loops among `pairs` are dropped.
    pub fn new(boundary: Vec<Vertex>, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        check_boundary(&boundary)?;
        let mut rows = vec![0u64; boundary.len()];
        for (s, t) in pairs {
            let (i, j) = (position(&boundary, s)?, position(&boundary, t)?);
            if i != j {
                rows[i] |= 1 << j;
            }
        }
        Ok(ChordRelation { boundary, rows })
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn contains(&self, s: Vertex, t: Vertex) -> bool {
        match (self.boundary.iter().position(|&w| w == s), self.boundary.iter().position(|&w| w == t)) {
            (Some(i), Some(j)) => self.rows[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Directed chords in row-major position order.
    pub fn chords(&self) -> Vec<(Vertex, Vertex)> {
        self.pos_chords().into_iter().map(|(i, j)| (self.boundary[i], self.boundary[j])).collect()
    }

    fn pos_chords(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((i, j));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of crossing pairs of chords.
    pub fn crossings(&self) -> usize {
        let ch = self.pos_chords();
        let mut c = 0;
        for (k, &(a, b)) in ch.iter().enumerate() {
            for &(x, y) in &ch[k + 1..] {
                if cross_pos(a, b, x, y) {
                    c += 1;
                }
            }
        }
        c
    }
}

/// Reflexive, transitive relation on boundary points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectivityPattern {
    boundary: Vec<Vertex>,
    rows: Vec<u64>,
}

impl ConnectivityPattern {
    /// Checks reflexivity and transitivity of `pairs` (loops are implied).
    pub fn new(boundary: Vec<Vertex>, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let r = ChordRelation::new(boundary, pairs)?;
        let mut rows = r.rows;
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= 1 << i;
        }
        let p = ConnectivityPattern { boundary: r.boundary, rows };
        if !p.is_transitive() {
            return Err(Error::invalid("relation is not transitive"));
        }
        Ok(p)
    }

    /// Reflexive-transitive closure of `pairs`.
    pub fn closure(boundary: Vec<Vertex>, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let r = ChordRelation::new(boundary, pairs)?;
        let mut rows = r.rows;
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= 1 << i;
        }
        close(&mut rows);
        Ok(ConnectivityPattern { boundary: r.boundary, rows })
    }

    pub fn identity(boundary: Vec<Vertex>) -> Result<Self> {
        Self::new(boundary, [])
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn contains(&self, s: Vertex, t: Vertex) -> bool {
        match (self.boundary.iter().position(|&w| w == s), self.boundary.iter().position(|&w| w == t)) {
            (Some(i), Some(j)) => self.rows[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// All pairs, loops included, in position order.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.boundary.len();
        (0..k)
            .flat_map(|i| (0..k).filter(move |&j| self.rows[i] >> j & 1 == 1).map(move |j| (i, j)))
            .map(|(i, j)| (self.boundary[i], self.boundary[j]))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        let mut closed = self.rows.clone();
        close(&mut closed);
        closed == self.rows
    }

    /// The pattern minus its loops, as a chord relation.
    pub fn as_relation(&self) -> ChordRelation {
        let rows = self.rows.iter().enumerate().map(|(i, r)| r & !(1 << i)).collect();
        ChordRelation { boundary: self.boundary.clone(), rows }
    }

    /// Same pattern with the boundary rotated to start at its smallest id.
    pub fn canonical(&self) -> ConnectivityPattern {
        let b = canonical_rotation(&self.boundary);
        ConnectivityPattern::new(b, self.pairs()).expect("rotation keeps the pattern valid")
    }
}

/// In-place transitive closure of bit rows.
pub(crate) fn close(rows: &mut [u64]) {
    for k in 0..rows.len() {
        let rk = rows[k];
        for row in rows.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= rk;
            }
        }
    }
}

/// Reachability between points of `t` in `g`, in the cyclic order of `t`.
pub fn induced_pattern(g: &DiGraph, t: &[Vertex]) -> Result<ConnectivityPattern> {
    check_boundary(t)?;
    if let Some(&v) = t.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::invalid(format!("boundary point {v} is not a vertex")));
    }
    let set: VertexSet = t.iter().copied().collect();
    ConnectivityPattern::new(t.to_vec(), g.reachability(&set))
}

/// Bitmask of the positions in the cyclic interval of positions `from+1 ..= to`
/// (gap-indexed: the cuts sit in gaps `from` and `to`).
fn arc_mask(n: usize, from: usize, to: usize) -> u64 {
    let mut m = 0u64;
    let mut i = (from + 1) % n;
    loop {
        m |= 1 << i;
        if i == to {
            return m;
        }
        i = (i + 1) % n;
    }
}

/// The pattern generated by `r`: `(s,t)` is in it iff every split of the
/// circle into two arcs, one holding `s` and the other `t`, is crossed by some
/// pair of `r` from the `s` side to the `t` side.
pub fn generate(r: &ChordRelation) -> ConnectivityPattern {
    let n = r.boundary.len();
    let mut rows = vec![0u64; n];
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    // each partition: a pair of distinct gaps; gap g sits after position g
    let mut parts = Vec::new();
    for g1 in 0..n {
        for g2 in g1 + 1..n {
            let side = arc_mask(n, g1, g2);
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            parts.push((side, full & !side));
        }
    }
    let crossed = |xs: u64, xt: u64| {
        let mut bits = xs;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if r.rows[i] & xt != 0 {
                return true;
            }
        }
        false
    };
    for (s, row) in rows.iter_mut().enumerate() {
        for t in 0..n {
            if s == t {
                continue;
            }
            let all = parts.iter().all(|&(a, b)| {
                if a >> s & 1 == 1 && b >> t & 1 == 1 {
                    crossed(a, b)
                } else if b >> s & 1 == 1 && a >> t & 1 == 1 {
                    crossed(b, a)
                } else {
                    true
                }
            });
            if all {
                *row |= 1 << t;
            }
        }
    }
    ConnectivityPattern { boundary: r.boundary.clone(), rows }
}

pub const MAX_CLIQUE_CHORDS: usize = 64;

fn crossing_graph(ch: &[(usize, usize)]) -> Vec<u64> {
    let mut adj = vec![0u64; ch.len()];
    for (i, &(a, b)) in ch.iter().enumerate() {
        for (j, &(c, d)) in ch.iter().enumerate() {
            if cross_pos(a, b, c, d) {
                adj[i] |= 1 << j;
            }
        }
    }
    adj
}

/// Bron–Kerbosch with pivoting; returns a maximum clique as a mask.
fn max_clique(adj: &[u64]) -> u64 {
    fn rec(adj: &[u64], r: u64, mut p: u64, mut x: u64, best: &mut u64) {
        if p == 0 && x == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        let px = p | x;
        let pivot = (0..adj.len())
            .filter(|&u| px >> u & 1 == 1)
            .max_by_key(|&u| (adj[u] & p).count_ones())
            .expect("p or x nonempty");
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(adj, r | 1 << v, p & adj[v], x & adj[v], best);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = 0;
    rec(adj, 0, all, 0, &mut best);
    best
}

/// Largest set of pairwise crossing chords of `r`.
pub fn clique_number(r: &ChordRelation) -> Result<usize> {
    let ch = r.pos_chords();
    if ch.len() > MAX_CLIQUE_CHORDS {
        return Err(Error::CapExceeded {
            what: "chord count for clique search",
            limit: MAX_CLIQUE_CHORDS,
            actual: ch.len(),
        });
    }
    Ok(max_clique(&crossing_graph(&ch)).count_ones() as usize)
}

/// Points `(a,b,c,d,x,y,z,u)` in clockwise order such that `(a,x)`, `(b,y)`,
/// `(c,z)`, `(d,u)` are pairwise crossing chords of `r`. Found only when `r`
/// has seven pairwise crossing chords.
pub fn find_ordered_4clique(r: &ChordRelation) -> Result<Option<[Vertex; 8]>> {
    let ch = r.pos_chords();
    if ch.len() > MAX_CLIQUE_CHORDS {
        return Err(Error::CapExceeded {
            what: "chord count for clique search",
            limit: MAX_CLIQUE_CHORDS,
            actual: ch.len(),
        });
    }
    let clique = max_clique(&crossing_graph(&ch));
    if clique.count_ones() < 7 {
        return Ok(None);
    }
    let members: Vec<(usize, usize)> = (0..ch.len()).filter(|&i| clique >> i & 1 == 1).map(|i| ch[i]).take(7).collect();
    let n = r.boundary.len();
    let (a, b) = members[0];
    // clockwise open arcs a→b and b→a
    let in_c1 = |p: usize| (p + n - a) % n < (b + n - a) % n && p != a;
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for &c in &members[1..] {
        if in_c1(c.0) {
            first.push(c);
        } else {
            second.push(c);
        }
    }
    let (three, start) = if first.len() >= 3 { (&first[..3], a) } else { (&second[..3], b) };
    let mut picked = vec![(a, b)];
    picked.extend_from_slice(three);
    // X1 runs clockwise from `start` (exclusive of `b` when starting at `b`)
    let key = |p: usize| (p + n - start) % n;
    let key1 = |p: usize| if start == b { (key(p) + n - 1) % n } else { key(p) };
    let mut tails: Vec<usize> = picked.iter().map(|c| c.0).collect();
    tails.sort_by_key(|&p| key1(p));
    let mut heads: Vec<usize> = picked.iter().map(|c| c.1).collect();
    heads.sort_by_key(|&p| key1(p));
    let pts = [tails[0], tails[1], tails[2], tails[3], heads[0], heads[1], heads[2], heads[3]];
    let out = pts.map(|p| r.boundary[p]);
    debug_assert!(is_ordered_4clique(r, &out));
    Ok(Some(out))
}

/// Whether `w = (a,b,c,d,x,y,z,u)` lists distinct points in clockwise order
/// and `(a,x),(b,y),(c,z),(d,u)` are pairwise crossing chords of `r`.
pub fn is_ordered_4clique(r: &ChordRelation, w: &[Vertex; 8]) -> bool {
    let t = &r.boundary;
    let Some(p) = w.iter().map(|&v| t.iter().position(|&x| x == v)).collect::<Option<Vec<usize>>>() else {
        return false;
    };
    let n = t.len();
    let rel: Vec<usize> = p.iter().map(|&q| (q + n - p[0]) % n).collect();
    if rel.windows(2).any(|x| x[0] >= x[1]) {
        return false;
    }
    let chords: Vec<(Vertex, Vertex)> = (0..4).map(|i| (w[i], w[i + 4])).collect();
    chords.iter().all(|&(s, e)| r.contains(s, e))
        && (0..4).all(|i| (i + 1..4).all(|j| crossing(chords[i], chords[j], t)))
}

/// Replaces `(b,y),(c,z)` by `(b,z),(c,y)`.
pub fn rewrite_step(r: &ChordRelation, w: &[Vertex; 8]) -> Result<ChordRelation> {
    if !is_ordered_4clique(r, w) {
        return Err(Error::invalid("witness is not four pairwise crossing chords in clockwise order"));
    }
    let [_, b, c, _, _, y, z, _] = *w;
    let pairs = r.chords().into_iter().filter(|&p| p != (b, y) && p != (c, z)).chain([(b, z), (c, y)]);
    ChordRelation::new(r.boundary.clone(), pairs)
}

/// Result of [`simplify`]: the final relation and the crossing count before
/// each rewrite and after the last one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub relation: ChordRelation,
    pub crossings: Vec<usize>,
}

/// Rewrites until no seven chords pairwise cross.
pub fn simplify(r: &ChordRelation) -> Result<Simplified> {
    let mut cur = r.clone();
    let mut crossings = vec![cur.crossings()];
    while let Some(w) = find_ordered_4clique(&cur)? {
        cur = rewrite_step(&cur, &w)?;
        crossings.push(cur.crossings());
    }
    Ok(Simplified { relation: cur, crossings })
}

/// Little Schröder numbers `s_0..=s_n`.
pub fn little_schroeder(n: usize) -> Vec<u128> {
    let mut s = vec![1u128; n + 1];
    for k in 2..=n {
        let k128 = k as u128;
        s[k] = (3 * (2 * k128 - 1) * s[k - 1] - (k128 - 2) * s[k - 2]) / (k128 + 1);
    }
    s
}

/// Number of sets of pairwise non-crossing chords on `n >= 3` points:
/// `s_{n-2} · 2^n`.
pub fn count_noncrossing(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::invalid("count_noncrossing needs at least 3 points"));
    }
    if n > 100 {
        return Err(Error::CapExceeded { what: "point count", limit: 100, actual: n });
    }
    Ok(little_schroeder(n - 2)[n - 2] << n)
}

/// Exhaustive count of non-crossing chord sets on `n` points and the largest
/// such set, by enumerating all subsets of the `n(n-1)/2` chords.
pub fn enumerate_noncrossing(n: usize) -> Result<(u128, usize)> {
    let chords: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    if chords.len() > 28 {
        return Err(Error::CapExceeded { what: "chords for exhaustive enumeration", limit: 28, actual: chords.len() });
    }
    let conflict: Vec<u64> = chords
        .iter()
        .map(|&(a, b)| {
            chords.iter().enumerate().filter(|&(_, &(c, d))| cross_pos(a, b, c, d)).fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    // depth-first over chords, keeping the chosen set pairwise non-crossing
    fn go(i: usize, chosen: u64, conflict: &[u64], count: &mut u128, best: &mut usize) {
        if i == conflict.len() {
            *count += 1;
            *best = (*best).max(chosen.count_ones() as usize);
            return;
        }
        go(i + 1, chosen, conflict, count, best);
        if conflict[i] & chosen == 0 {
            go(i + 1, chosen | 1 << i, conflict, count, best);
        }
    }
    let (mut count, mut best) = (0, 0);
    go(0, 0, &conflict, &mut count, &mut best);
    Ok((count, best))
}

/// Joins two patterns: the union of both relations (shared points identified)
/// must have no cycle other than loops; the result is its reachability
/// restricted to `med_parent` minus `x`, in the order of `med_parent`.
pub fn join(
    p1: &ConnectivityPattern,
    p2: &ConnectivityPattern,
    med_parent: &[Vertex],
    x: &VertexSet,
) -> Result<Option<ConnectivityPattern>> {
    let mut pts: Vec<Vertex> = p1.boundary.iter().chain(&p2.boundary).copied().collect();
    pts.sort_unstable();
    pts.dedup();
    let target: Vec<Vertex> = med_parent.iter().copied().filter(|v| !x.contains(v)).collect();
    if let Some(v) = target.iter().find(|v| pts.binary_search(v).is_err()) {
        return Err(Error::invalid(format!("parent boundary point {v} is in neither pattern")));
    }
    if pts.len() > MAX_BOUNDARY {
        return Err(Error::CapExceeded { what: "joined boundary size", limit: MAX_BOUNDARY, actual: pts.len() });
    }
    let idx = |v: Vertex| pts.binary_search(&v).expect("point present");
    let mut rows = vec![0u64; pts.len()];
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    for (s, t) in p1.pairs().into_iter().chain(p2.pairs()) {
        rows[idx(s)] |= 1 << idx(t);
    }
    close(&mut rows);
    for i in 0..pts.len() {
        let others = rows[i] & !(1 << i);
        let mut bits = others;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if rows[j] >> i & 1 == 1 {
                return Ok(None);
            }
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = target
        .iter()
        .flat_map(|&s| target.iter().map(move |&t| (s, t)))
        .filter(|&(s, t)| rows[idx(s)] >> idx(t) & 1 == 1)
        .collect();
    Ok(Some(ConnectivityPattern::new(target, pairs)?))
}
