//! Dynamic programming over nice tree decompositions.
//!
//! For DFVS a node `x` stores `T_x[X, σ]` for every deleted subset `X` of the
//! bag and every ordering `σ` of the remaining bag vertices: the fewest
//! vertices forgotten below `x` that must be deleted so that the subgraph seen
//! so far, minus `X`, has a topological ordering restricted to `σ` on the bag.
//! For DFAS a node stores `T_x[σ]` for orderings of the whole bag.
//!
//! Cells live in flat arrays: subsets are laid out in mask order and, within
//! one subset, orderings by Lehmer rank.

use crate::digraph::{ArcSet, DiGraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::{OracleResult, Witness};
use crate::treewidth::nice::{NiceTreeDecomposition, NodeKind};

const INF: u32 = u32::MAX;

/// Largest bag the dense tables accept (about 10^7 cells for DFVS).
pub const MAX_DP_BAG: usize = 10;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer rank of a sequence of distinct values among all its rearrangements.
fn lehmer_rank(seq: &[u8]) -> usize {
    let mut rank = 0;
    for (i, &a) in seq.iter().enumerate() {
        let smaller = seq[i + 1..].iter().filter(|&&b| b < a).count();
        rank = rank * (seq.len() - i) + smaller;
    }
    rank
}

/// Inverse of [`lehmer_rank`] over the sorted values `items`.
fn lehmer_unrank(mut rank: usize, items: &[u8]) -> Vec<u8> {
    let len = items.len();
    let mut digits = vec![0; len];
    for i in (0..len).rev() {
        let base = len - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool = items.to_vec();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Cell layout of one DFVS table.
#[derive(Debug, Clone)]
struct Layout {
    b: usize,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(b: usize) -> Self {
        let mut offsets = Vec::with_capacity(1 << b);
        let mut total = 0;
        for mask in 0..(1usize << b) {
            offsets.push(total);
            total += factorial(b - mask.count_ones() as usize);
        }
        Layout { b, offsets, total }
    }

    fn index(&self, mask: usize, sigma: &[u8]) -> usize {
        self.offsets[mask] + lehmer_rank(sigma)
    }

    /// All `(mask, σ)` pairs in index order.
    fn cells(&self) -> impl Iterator<Item = (usize, Vec<u8>)> + '_ {
        (0..(1usize << self.b)).flat_map(move |mask| {
            let kept: Vec<u8> = (0..self.b as u8).filter(|&q| mask >> q & 1 == 0).collect();
            (0..factorial(kept.len())).map(move |r| (mask, lehmer_unrank(r, &kept)))
        })
    }
}

fn check_bags(nice: &NiceTreeDecomposition) -> Result<()> {
    let widest = nice.nodes().iter().map(|x| x.bag.len()).max().unwrap_or(0);
    if widest > MAX_DP_BAG {
        return Err(Error::CapExceeded { what: "tree decomposition bag size", limit: MAX_DP_BAG, actual: widest });
    }
    Ok(())
}

/// Position of `v` in a sorted bag.
fn pos(bag: &[Vertex], v: Vertex) -> usize {
    bag.binary_search(&v).expect("vertex in bag")
}

/// Drops bit `p` from a mask and shifts the higher bits down.
fn remove_bit(mask: usize, p: usize) -> usize {
    let low = mask & ((1 << p) - 1);
    let high = mask >> (p + 1);
    low | high << p
}

/// Opens a zero bit at position `p`.
fn insert_bit(mask: usize, p: usize) -> usize {
    let low = mask & ((1 << p) - 1);
    let high = mask >> p;
    low | high << (p + 1)
}

/// Complete DFVS tables for every node of a nice decomposition.
#[derive(Debug, Clone)]
pub struct DfvsTables {
    nice: NiceTreeDecomposition,
    layouts: Vec<Layout>,
    values: Vec<Vec<u32>>,
    /// Forget nodes only: 0 = forgotten vertex deleted, `1 + i` = inserted at
    /// position `i` of σ.
    choices: Vec<Vec<u8>>,
}

impl DfvsTables {
    pub fn nice(&self) -> &NiceTreeDecomposition {
        &self.nice
    }

    pub fn entry_count(&self, node: usize) -> usize {
        self.values[node].len()
    }

    /// `T_x[X, σ]`, `None` for infinity. `x` is a subset of the bag and
    /// `sigma` an ordering of the rest of it.
    pub fn value(&self, node: usize, x: &VertexSet, sigma: &[Vertex]) -> Option<usize> {
        let bag = &self.nice.nodes()[node].bag;
        let mask = x.iter().fold(0usize, |m, &v| m | 1 << pos(bag, v));
        let sig: Vec<u8> = sigma.iter().map(|&v| pos(bag, v) as u8).collect();
        assert_eq!(mask.count_ones() as usize + sig.len(), bag.len(), "X and σ must partition the bag");
        let val = self.values[node][self.layouts[node].index(mask, &sig)];
        (val != INF).then_some(val as usize)
    }

    /// Every `(X, σ, value)` of a node, in table order.
    pub fn entries(&self, node: usize) -> Vec<(VertexSet, Vec<Vertex>, Option<usize>)> {
        let bag = &self.nice.nodes()[node].bag;
        self.layouts[node]
            .cells()
            .zip(&self.values[node])
            .map(|((mask, sig), &val)| {
                let x = (0..bag.len()).filter(|&q| mask >> q & 1 == 1).map(|q| bag[q]).collect();
                let s = sig.iter().map(|&q| bag[q as usize]).collect();
                (x, s, (val != INF).then_some(val as usize))
            })
            .collect()
    }

    pub fn optimum(&self) -> usize {
        self.values[self.nice.root()][0] as usize
    }
}

/// Fills the DFVS tables bottom-up.
pub fn dfvs_tables(g: &DiGraph, nice: &NiceTreeDecomposition) -> Result<DfvsTables> {
    nice.validate(g)?;
    check_bags(nice)?;
    let nodes = nice.nodes();
    let layouts: Vec<Layout> = nodes.iter().map(|x| Layout::new(x.bag.len())).collect();
    let mut values: Vec<Vec<u32>> = Vec::with_capacity(nodes.len());
    let mut choices: Vec<Vec<u8>> = Vec::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        let lay = &layouts[i];
        let bag = &node.bag;
        let mut table = vec![INF; lay.total];
        let mut choice = Vec::new();
        match node.kind {
            NodeKind::Leaf => table[0] = 0,
            NodeKind::Introduce(v) => {
                let y = node.children[0];
                let p = pos(bag, v);
                for (idx, (mask, sig)) in lay.cells().enumerate() {
                    let child_mask = remove_bit(mask, p);
                    let child_sig: Vec<u8> =
                        sig.iter().filter(|&&q| q as usize != p).map(|&q| q - (q as usize > p) as u8).collect();
                    if mask >> p & 1 == 0 {
                        let at = sig.iter().position(|&q| q as usize == p).expect("v kept");
                        let fits = sig.iter().enumerate().all(|(j, &q)| {
                            let w = bag[q as usize];
                            !(j < at && g.has_arc(v, w) || j > at && g.has_arc(w, v))
                        });
                        if !fits {
                            continue;
                        }
                    }
                    table[idx] = values[y][layouts[y].index(child_mask, &child_sig)];
                }
            }
            NodeKind::Forget(v) => {
                let y = node.children[0];
                let cbag = &nodes[y].bag;
                let p = pos(cbag, v);
                choice = vec![0u8; lay.total];
                for (idx, (mask, sig)) in lay.cells().enumerate() {
                    let cmask = insert_bit(mask, p);
                    let csig: Vec<u8> = sig.iter().map(|&q| q + (q as usize >= p) as u8).collect();
                    let del = values[y][layouts[y].index(cmask | 1 << p, &csig)];
                    let mut best = del.saturating_add(1);
                    let mut pick = 0u8;
                    let mut ext = csig.clone();
                    ext.insert(0, p as u8);
                    for at in 0..=csig.len() {
                        if at > 0 {
                            ext.swap(at - 1, at);
                        }
                        let val = values[y][layouts[y].index(cmask, &ext)];
                        if val < best {
                            best = val;
                            pick = 1 + at as u8;
                        }
                    }
                    table[idx] = best;
                    choice[idx] = pick;
                }
            }
            NodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                for (idx, cell) in table.iter_mut().enumerate() {
                    let (l, r) = (values[a][idx], values[b][idx]);
                    *cell = if l == INF || r == INF { INF } else { l + r };
                }
            }
        }
        values.push(table);
        choices.push(choice);
    }
    Ok(DfvsTables { nice: nice.clone(), layouts, values, choices })
}

/// Minimum DFVS through the tree-decomposition dynamic program.
pub fn solve_dfvs_tw(g: &DiGraph, nice: &NiceTreeDecomposition) -> Result<OracleResult> {
    let t = dfvs_tables(g, nice)?;
    let nodes = nice.nodes();
    let mut witness = VertexSet::new();
    let mut stack: Vec<(usize, usize, Vec<u8>)> = vec![(nice.root(), 0, Vec::new())];
    while let Some((i, mask, sig)) = stack.pop() {
        let node = &nodes[i];
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let p = pos(&node.bag, v);
                let csig = sig.iter().filter(|&&q| q as usize != p).map(|&q| q - (q as usize > p) as u8).collect();
                stack.push((node.children[0], remove_bit(mask, p), csig));
            }
            NodeKind::Forget(v) => {
                let y = node.children[0];
                let p = pos(&nodes[y].bag, v);
                let cmask = insert_bit(mask, p);
                let mut csig: Vec<u8> = sig.iter().map(|&q| q + (q as usize >= p) as u8).collect();
                match t.choices[i][t.layouts[i].index(mask, &sig)] {
                    0 => {
                        witness.insert(v);
                        stack.push((y, cmask | 1 << p, csig));
                    }
                    c => {
                        csig.insert(c as usize - 1, p as u8);
                        stack.push((y, cmask, csig));
                    }
                }
            }
            NodeKind::Join => {
                stack.push((node.children[0], mask, sig.clone()));
                stack.push((node.children[1], mask, sig));
            }
        }
    }
    let result = OracleResult { optimum: t.optimum(), witness: Witness::Vertices(witness) };
    recheck(g, result)
}

fn recheck(g: &DiGraph, r: OracleResult) -> Result<OracleResult> {
    if r.witness.len() != r.optimum || !r.witness.breaks_all_cycles(g) {
        return Err(Error::decomposition("reconstructed witness failed re-validation"));
    }
    Ok(r)
}

/// Complete DFAS tables: one value per ordering of each bag.
#[derive(Debug, Clone)]
pub struct DfasTables {
    nice: NiceTreeDecomposition,
    values: Vec<Vec<u32>>,
    choices: Vec<Vec<u8>>,
}

impl DfasTables {
    pub fn entry_count(&self, node: usize) -> usize {
        self.values[node].len()
    }

    /// `T_x[σ]` for an ordering `sigma` of the whole bag, `None` for infinity.
    pub fn value(&self, node: usize, sigma: &[Vertex]) -> Option<usize> {
        let bag = &self.nice.nodes()[node].bag;
        assert_eq!(sigma.len(), bag.len(), "σ must order the whole bag");
        let sig: Vec<u8> = sigma.iter().map(|&v| pos(bag, v) as u8).collect();
        let val = self.values[node][lehmer_rank(&sig)];
        (val != INF).then_some(val as usize)
    }

    pub fn optimum(&self) -> usize {
        self.values[self.nice.root()][0] as usize
    }
}

/// Arcs between `v` (at index `at` of `sig`) and other bag vertices that
/// `sig` orders backwards.
fn backward_at<'a>(
    g: &'a DiGraph,
    bag: &'a [Vertex],
    sig: &'a [u8],
    at: usize,
) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
    let v = bag[sig[at] as usize];
    sig.iter().enumerate().filter_map(move |(j, &q)| {
        let w = bag[q as usize];
        if j < at && g.has_arc(v, w) {
            Some((v, w))
        } else if j > at && g.has_arc(w, v) {
            Some((w, v))
        } else {
            None
        }
    })
}

fn backward_inside(g: &DiGraph, bag: &[Vertex], sig: &[u8]) -> u32 {
    let mut c = 0;
    for (i, &a) in sig.iter().enumerate() {
        for &b in &sig[i + 1..] {
            if g.has_arc(bag[b as usize], bag[a as usize]) {
                c += 1;
            }
        }
    }
    c
}

pub fn dfas_tables(g: &DiGraph, nice: &NiceTreeDecomposition) -> Result<DfasTables> {
    nice.validate(g)?;
    check_bags(nice)?;
    let nodes = nice.nodes();
    let mut values: Vec<Vec<u32>> = Vec::with_capacity(nodes.len());
    let mut choices: Vec<Vec<u8>> = Vec::with_capacity(nodes.len());
    for node in nodes {
        let bag = &node.bag;
        let b = bag.len();
        let all: Vec<u8> = (0..b as u8).collect();
        let total = factorial(b);
        let mut table = vec![INF; total];
        let mut choice = Vec::new();
        match node.kind {
            NodeKind::Leaf => table[0] = 0,
            NodeKind::Introduce(v) => {
                let y = node.children[0];
                let p = pos(bag, v);
                for (r, cell) in table.iter_mut().enumerate() {
                    let sig = lehmer_unrank(r, &all);
                    let at = sig.iter().position(|&q| q as usize == p).expect("v in σ");
                    let paid = backward_at(g, bag, &sig, at).count() as u32;
                    let csig: Vec<u8> =
                        sig.iter().filter(|&&q| q as usize != p).map(|&q| q - (q as usize > p) as u8).collect();
                    let child = values[y][lehmer_rank(&csig)];
                    *cell = if child == INF { INF } else { child + paid };
                }
            }
            NodeKind::Forget(v) => {
                let y = node.children[0];
                let p = pos(&nodes[y].bag, v);
                choice = vec![0u8; total];
                for r in 0..total {
                    let sig = lehmer_unrank(r, &all);
                    let mut ext: Vec<u8> = sig.iter().map(|&q| q + (q as usize >= p) as u8).collect();
                    ext.insert(0, p as u8);
                    let mut best = INF;
                    let mut pick = 0u8;
                    for at in 0..=sig.len() {
                        if at > 0 {
                            ext.swap(at - 1, at);
                        }
                        let val = values[y][lehmer_rank(&ext)];
                        if val < best {
                            best = val;
                            pick = at as u8;
                        }
                    }
                    table[r] = best;
                    choice[r] = pick;
                }
            }
            NodeKind::Join => {
                let (a, c) = (node.children[0], node.children[1]);
                for (r, cell) in table.iter_mut().enumerate() {
                    let (l, rr) = (values[a][r], values[c][r]);
                    if l != INF && rr != INF {
                        let sig = lehmer_unrank(r, &all);
                        *cell = l + rr - backward_inside(g, bag, &sig);
                    }
                }
            }
        }
        values.push(table);
        choices.push(choice);
    }
    Ok(DfasTables { nice: nice.clone(), values, choices })
}

/// Minimum DFAS through the tree-decomposition dynamic program.
pub fn solve_dfas_tw(g: &DiGraph, nice: &NiceTreeDecomposition) -> Result<OracleResult> {
    let t = dfas_tables(g, nice)?;
    let nodes = nice.nodes();
    let mut witness = ArcSet::new();
    let mut stack: Vec<(usize, Vec<u8>)> = vec![(nice.root(), Vec::new())];
    while let Some((i, sig)) = stack.pop() {
        let node = &nodes[i];
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let p = pos(&node.bag, v);
                let at = sig.iter().position(|&q| q as usize == p).expect("v in σ");
                witness.extend(backward_at(g, &node.bag, &sig, at));
                let csig = sig.iter().filter(|&&q| q as usize != p).map(|&q| q - (q as usize > p) as u8).collect();
                stack.push((node.children[0], csig));
            }
            NodeKind::Forget(v) => {
                let y = node.children[0];
                let p = pos(&nodes[y].bag, v);
                let at = t.choices[i][lehmer_rank(&sig)] as usize;
                let mut csig: Vec<u8> = sig.iter().map(|&q| q + (q as usize >= p) as u8).collect();
                csig.insert(at, p as u8);
                stack.push((y, csig));
            }
            NodeKind::Join => {
                stack.push((node.children[0], sig.clone()));
                stack.push((node.children[1], sig));
            }
        }
    }
    let result = OracleResult { optimum: t.optimum(), witness: Witness::Arcs(witness) };
    recheck(g, result)
}
