//! Brute-force ground truth.
//!
//! Everything here is deliberately plain exhaustive search; the other solvers
//! are validated against it.
//!
//! Deletion sets are enumerated by increasing cardinality and, within one
//! cardinality, in lexicographic order, so the first acyclic hit is both
//! optimal and the lexicographically smallest optimum. The candidate pool is
//! restricted to vertices (arcs) lying inside a non-trivial strongly connected
//! component: an element on no cycle can be dropped from any deletion set, so
//! no optimum contains one.
//!
//! Permutation formulas are decided by selecting one constraint per clause.
//! A permutation satisfying the formula satisfies one selected constraint per
//! clause, and the union of the selected ordering arcs is then acyclic since
//! the permutation is a topological order of it. Conversely any topological
//! order of an acyclic union satisfies every selected constraint. So the
//! formula is satisfiable iff some selection has an acyclic union.

use crate::digraph::{Arc, ArcSet, DiGraph, Vertex, VertexOrder, VertexSet};
use crate::error::{Error, Result};
use crate::generators::hardness::{HittingSetInstance, PermFormula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(VertexSet),
    Arcs(ArcSet),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Vertices(s) => s.len(),
            Witness::Arcs(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether deleting the witness from `g` leaves an acyclic graph.
    pub fn breaks_all_cycles(&self, g: &DiGraph) -> bool {
        match self {
            Witness::Vertices(x) => g.delete(x, &ArcSet::new()).is_acyclic(),
            Witness::Arcs(y) => g.delete(&VertexSet::new(), y).is_acyclic(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_arcs: usize,
    pub max_selections: u64,
    pub max_hitting_set_k: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 24, max_arcs: 64, max_selections: 10_000_000, max_hitting_set_k: 6 }
    }
}

/// Compact bitmask view of a graph with at most 64 vertices.
struct MaskGraph {
    ids: Vec<Vertex>,
    arcs: Vec<(usize, usize)>,
}

impl MaskGraph {
    fn new(g: &DiGraph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut pos = vec![usize::MAX; g.id_bound() + 1];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let arcs = g.arcs().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
        MaskGraph { ids, arcs }
    }

    fn in_masks(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.ids.len()];
        for &(u, v) in &self.arcs {
            m[v] |= 1 << u;
        }
        m
    }

    /// Peels sources until none remain; acyclic iff everything got peeled.
    fn acyclic(in_mask: &[u64], mut rem: u64) -> bool {
        loop {
            let before = rem;
            let mut bits = rem;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if in_mask[v] & rem == 0 {
                    rem &= !(1 << v);
                }
            }
            if rem == 0 {
                return true;
            }
            if rem == before {
                return false;
            }
        }
    }

    /// Vertices (as positions) inside non-trivial strongly connected components.
    fn cyclic_vertices(&self) -> u64 {
        let n = self.ids.len();
        let mut out = vec![0u64; n];
        for &(u, v) in &self.arcs {
            out[u] |= 1 << v;
        }
        // transitive closure by repeated squaring of reachability masks
        let mut reach = out.clone();
        loop {
            let mut changed = false;
            for v in 0..n {
                let mut acc = reach[v];
                let mut bits = reach[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    acc |= reach[w];
                }
                if acc != reach[v] {
                    reach[v] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&v| reach[v] >> v & 1 == 1).fold(0, |m, v| m | 1 << v)
    }
}

/// Visits all `k`-subsets of `0..n` in lexicographic order until `f` returns true.
fn first_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn min_dfvs_bruteforce(g: &DiGraph) -> Result<OracleResult> {
    min_dfvs_within(g, usize::MAX, &OracleLimits::default())
        .map(|r| r.expect("an unbounded search always finds an optimum"))
}

/// Minimum DFVS if it is at most `budget`, else `None`.
pub fn min_dfvs_within(g: &DiGraph, budget: usize, limits: &OracleLimits) -> Result<Option<OracleResult>> {
    let n = g.vertex_count();
    if n > limits.max_vertices.min(64) {
        return Err(Error::CapExceeded {
            what: "brute-force DFVS vertex count",
            limit: limits.max_vertices.min(64),
            actual: n,
        });
    }
    let mg = MaskGraph::new(g);
    let in_mask = mg.in_masks();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cyc = mg.cyclic_vertices();
    let pool: Vec<usize> = (0..n).filter(|&v| cyc >> v & 1 == 1).collect();
    for k in 0..=pool.len().min(budget) {
        let hit = first_combination(pool.len(), k, |c| {
            let del = c.iter().fold(0u64, |m, &i| m | 1 << pool[i]);
            MaskGraph::acyclic(&in_mask, full & !del)
        });
        if let Some(c) = hit {
            let witness: VertexSet = c.iter().map(|&i| mg.ids[pool[i]]).collect();
            return Ok(Some(OracleResult { optimum: k, witness: Witness::Vertices(witness) }));
        }
    }
    Ok(None)
}

pub fn min_dfas_bruteforce(g: &DiGraph) -> Result<OracleResult> {
    min_dfas_within(g, usize::MAX, &OracleLimits::default())
        .map(|r| r.expect("an unbounded search always finds an optimum"))
}

/// Minimum DFAS if it is at most `budget`, else `None`. Arcs are compared as
/// `(tail, head)` pairs for the lexicographic tie-break.
pub fn min_dfas_within(g: &DiGraph, budget: usize, limits: &OracleLimits) -> Result<Option<OracleResult>> {
    let n = g.vertex_count();
    let m = g.arc_count();
    if m > limits.max_arcs || n > 64 {
        return Err(Error::CapExceeded { what: "brute-force DFAS arc count", limit: limits.max_arcs, actual: m });
    }
    let mg = MaskGraph::new(g);
    let base = mg.in_masks();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cyc = mg.cyclic_vertices();
    // arcs with both ends in cycles; arcs between different SCCs are filtered by the check below
    let mut pool: Vec<(Arc, (usize, usize))> = g
        .arcs()
        .iter()
        .zip(&mg.arcs)
        .filter(|(_, &(u, v))| cyc >> u & 1 == 1 && cyc >> v & 1 == 1)
        .map(|(&a, &p)| (a, p))
        .collect();
    pool.sort();
    let mut in_mask = base.clone();
    for k in 0..=pool.len().min(budget) {
        let hit = first_combination(pool.len(), k, |c| {
            for &i in c {
                let (_, (u, v)) = pool[i];
                in_mask[v] &= !(1 << u);
            }
            let ok = MaskGraph::acyclic(&in_mask, full);
            for &i in c {
                let (_, (_, v)) = pool[i];
                in_mask[v] = base[v];
            }
            ok
        });
        if let Some(c) = hit {
            let witness: ArcSet = c.iter().map(|&i| pool[i].0).collect();
            return Ok(Some(OracleResult { optimum: k, witness: Witness::Arcs(witness) }));
        }
    }
    Ok(None)
}

/// True iff `g` has a topological ordering whose restriction to the listed
/// vertices is exactly `fixed`: equivalently, `g` plus a directed path
/// threading `fixed` in order is acyclic.
pub fn extendable_ordering(g: &DiGraph, fixed: &VertexOrder) -> bool {
    let mut indeg = vec![0usize; g.id_bound() + 1];
    let mut extra: Vec<Option<Vertex>> = vec![None; g.id_bound() + 1];
    for w in fixed.windows(2) {
        extra[w[0]] = Some(w[1]);
        indeg[w[1]] += 1;
    }
    for &(_, v) in g.arcs() {
        indeg[v] += 1;
    }
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = stack.pop() {
        done += 1;
        for &w in g.out_neighbors(v).iter().chain(extra[v].iter()) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    done == g.vertex_count()
}

/// Satisfiability of a permutation formula by selection search.
pub fn perm_formula_sat(f: &PermFormula) -> Result<bool> {
    perm_formula_sat_with(f, &OracleLimits::default())
}

pub fn perm_formula_sat_with(f: &PermFormula, limits: &OracleLimits) -> Result<bool> {
    let mut product: u64 = 1;
    for c in &f.clauses {
        product = product.saturating_mul(c.len() as u64);
        if product > limits.max_selections {
            return Err(Error::CapExceeded {
                what: "clause selection product",
                limit: limits.max_selections as usize,
                actual: product.min(usize::MAX as u64) as usize,
            });
        }
    }
    if f.clauses.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    let mut count = vec![vec![0u32; f.n + 1]; f.n + 1];
    Ok(select(f, 0, &mut count))
}

fn union_acyclic(n: usize, count: &[Vec<u32>]) -> bool {
    let mut indeg = vec![0usize; n + 1];
    for row in count.iter() {
        for (v, &c) in row.iter().enumerate() {
            if c > 0 {
                indeg[v] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(u) = stack.pop() {
        done += 1;
        for v in 1..=n {
            if count[u][v] > 0 {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
    }
    done == n
}

fn select(f: &PermFormula, clause: usize, count: &mut Vec<Vec<u32>>) -> bool {
    if clause == f.clauses.len() {
        return true;
    }
    for con in &f.clauses[clause] {
        for w in con.indices().windows(2) {
            count[w[0]][w[1]] += 1;
        }
        let ok = union_acyclic(f.n, count) && select(f, clause + 1, count);
        for w in con.indices().windows(2) {
            count[w[0]][w[1]] -= 1;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Exhaustive search over the `k^k` row selectors.
pub fn hs_bruteforce(inst: &HittingSetInstance) -> Result<bool> {
    hs_bruteforce_with(inst, &OracleLimits::default())
}

pub fn hs_bruteforce_with(inst: &HittingSetInstance, limits: &OracleLimits) -> Result<bool> {
    let k = inst.k;
    if k > limits.max_hitting_set_k {
        return Err(Error::CapExceeded { what: "hitting-set k", limit: limits.max_hitting_set_k, actual: k });
    }
    if k == 0 {
        return Ok(inst.sets.is_empty());
    }
    // cols[row-1] is the chosen column of that row
    let mut cols = vec![1usize; k];
    loop {
        let hits_all = inst.sets.iter().all(|set| set.iter().any(|&(r, c)| cols[r - 1] == c));
        if hits_all {
            return Ok(true);
        }
        let mut i = 0;
        while i < k && cols[i] == k {
            cols[i] = 1;
            i += 1;
        }
        if i == k {
            return Ok(false);
        }
        cols[i] += 1;
    }
}
