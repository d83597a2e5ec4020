//! Exact DFVS over a sphere-cut decomposition. Each tree edge keeps, for every
//! choice of deleted middle vertices and every realisable connectivity
//! pattern among the survivors, the fewest deletions strictly below it.

use std::collections::HashMap;

use crate::digraph::{DiGraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::{OracleResult, Witness};
use crate::patterns::{close, ConnectivityPattern};
use crate::planar::{build_sc_heuristic, preprocess_planar, validate_sc, Embedding, ScDecomposition};

pub const MAX_PLANAR_WIDTH: usize = 30;

#[derive(Debug, Clone)]
enum Back {
    Leaf(Vec<Vertex>),
    Merge(usize, usize, Vec<Vertex>),
}

#[derive(Debug, Clone)]
struct Entry {
    /// Deleted middle vertices, by position in the middle set.
    x: u64,
    /// Reachability rows over middle positions; rows of deleted positions are 0.
    rel: Vec<u64>,
    value: u32,
    back: Back,
}

/// Sparse table of one tree edge: finite entries only, keyed by the deleted
/// part of the middle set and the pattern on the rest.
#[derive(Debug, Clone, Default)]
pub struct PlanarDpTable {
    med: Vec<Vertex>,
    entries: Vec<Entry>,
    index: HashMap<(u64, Vec<u64>), usize>,
}

impl PlanarDpTable {
    fn empty(med: &[Vertex]) -> Self {
        PlanarDpTable { med: med.to_vec(), ..Default::default() }
    }

    pub fn med(&self) -> &[Vertex] {
        &self.med
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn decode(&self, e: &Entry) -> (VertexSet, ConnectivityPattern) {
        let med = &self.med;
        let x: VertexSet = med.iter().enumerate().filter(|(i, _)| e.x & bit(*i) != 0).map(|(_, &v)| v).collect();
        let live: Vec<Vertex> = med.iter().copied().filter(|v| !x.contains(v)).collect();
        let pairs = med.iter().enumerate().flat_map(|(i, &s)| {
            med.iter().enumerate().filter(move |(j, _)| e.rel[i] & bit(*j) != 0).map(move |(_, &t)| (s, t))
        });
        let p = ConnectivityPattern::new(live, pairs).expect("stored patterns are transitive");
        (x, p)
    }

    /// `(X, pattern, value)` for every entry, in insertion order.
    pub fn entries(&self) -> Vec<(VertexSet, ConnectivityPattern, usize)> {
        self.entries
            .iter()
            .map(|e| {
                let (x, p) = self.decode(e);
                (x, p, e.value as usize)
            })
            .collect()
    }

    /// Value stored for `(x, p)`, if finite.
    pub fn get(&self, x: &VertexSet, p: &ConnectivityPattern) -> Option<usize> {
        let mut xm = 0u64;
        let mut rel = vec![0u64; self.med.len()];
        for (i, &v) in self.med.iter().enumerate() {
            if x.contains(&v) {
                xm |= bit(i);
                continue;
            }
            for (j, &w) in self.med.iter().enumerate() {
                if !x.contains(&w) && p.contains(v, w) {
                    rel[i] |= bit(j);
                }
            }
        }
        self.index.get(&(xm, rel)).map(|&i| self.entries[i].value as usize)
    }

    fn offer(&mut self, x: u64, rel: Vec<u64>, value: u32, back: Back) {
        match self.index.get(&(x, rel.clone())) {
            Some(&i) => {
                if value < self.entries[i].value {
                    self.entries[i].value = value;
                    self.entries[i].back = back;
                }
            }
            None => {
                self.index.insert((x, rel.clone()), self.entries.len());
                self.entries.push(Entry { x, rel, value, back });
            }
        }
    }
}

/// One node of an optimal solution traced back through the tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub node: usize,
    /// Deleted vertices of the middle set.
    pub x: VertexSet,
    /// Deletions charged strictly below the tree edge.
    pub deleted_below: VertexSet,
    pub pattern: ConnectivityPattern,
    pub value: usize,
}

/// Filled tables for every non-root node.
#[derive(Debug)]
pub struct PlanarTables {
    scd: ScDecomposition,
    tables: Vec<PlanarDpTable>,
    top: usize,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn position(list: &[Vertex], v: Vertex) -> Option<usize> {
    list.iter().position(|&w| w == v)
}

/// Table of a leaf edge carrying arc `arc` of `g`.
pub fn leaf_table(g: &DiGraph, arc: usize, med: &[Vertex]) -> PlanarDpTable {
    let (u, v) = g.arcs()[arc];
    let free: Vec<Vertex> = [u, v].into_iter().filter(|w| !med.contains(w)).collect();
    let mut t = PlanarDpTable::empty(med);
    for x in 0..bit(med.len()) {
        for s in 0..bit(free.len()) {
            let deleted = |w: Vertex| match position(med, w) {
                Some(p) => x & bit(p) != 0,
                None => s & bit(position(&free, w).expect("endpoint")) != 0,
            };
            let mut rel: Vec<u64> = (0..med.len()).map(|i| if x & bit(i) == 0 { bit(i) } else { 0 }).collect();
            if !deleted(u) && !deleted(v) {
                if let (Some(pu), Some(pv)) = (position(med, u), position(med, v)) {
                    rel[pu] |= bit(pv);
                }
            }
            let gone: Vec<Vertex> =
                free.iter().enumerate().filter(|(i, _)| s & bit(*i) != 0).map(|(_, &w)| w).collect();
            t.offer(x, rel, gone.len() as u32, Back::Leaf(gone));
        }
    }
    t
}

/// Table of the edge with middle set `med` from the tables of its two
/// children. A pair of child entries combines when both agree on which shared
/// vertices are deleted and the union of their patterns closes without a
/// cycle through two distinct points; deleted vertices leaving the boundary
/// are paid for here.
pub fn dp_merge(med: &[Vertex], left: &PlanarDpTable, right: &PlanarDpTable) -> PlanarDpTable {
    let (med1, t1) = (&left.med[..], &left.entries[..]);
    let (med2, t2) = (&right.med[..], &right.entries[..]);
    let mut u: Vec<Vertex> = med1.iter().chain(med2).copied().collect();
    u.sort_unstable();
    u.dedup();
    let at = |v: Vertex| u.binary_search(&v).expect("in union");
    let map1: Vec<usize> = med1.iter().map(|&v| at(v)).collect();
    let map2: Vec<usize> = med2.iter().map(|&v| at(v)).collect();
    let map_c: Vec<usize> = med.iter().map(|&v| at(v)).collect();
    let lift = |mask: u64, map: &[usize]| {
        map.iter().enumerate().filter(|(i, _)| mask & bit(*i) != 0).fold(0u64, |acc, (_, &j)| acc | bit(j))
    };
    let span = |map: &[usize]| map.iter().fold(0u64, |acc, &j| acc | bit(j));
    let shared = span(&map1) & span(&map2);
    let in_c = span(&map_c);

    let lifted = |e: &Entry, map: &[usize]| -> (u64, Vec<u64>) {
        let x = lift(e.x, map);
        let mut rows = vec![0u64; u.len()];
        for (i, &r) in e.rel.iter().enumerate() {
            rows[map[i]] |= lift(r, map);
        }
        (x, rows)
    };
    let side2: Vec<(u64, Vec<u64>)> = t2.iter().map(|e| lifted(e, &map2)).collect();
    let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
    for (j, (x2, _)) in side2.iter().enumerate() {
        groups.entry(x2 & shared).or_default().push(j);
    }
    let mut out = PlanarDpTable::empty(med);
    for (i, e1) in t1.iter().enumerate() {
        let (x1, rows1) = lifted(e1, &map1);
        let Some(group) = groups.get(&(x1 & shared)) else { continue };
        for &j in group {
            let (x2, rows2) = &side2[j];
            let z = x1 | x2;
            let mut rows: Vec<u64> =
                (0..u.len()).map(|k| if z & bit(k) == 0 { bit(k) | rows1[k] | rows2[k] } else { 0 }).collect();
            close(&mut rows);
            let cyclic = (0..u.len()).any(|k| {
                let mut others = rows[k] & !bit(k);
                while others != 0 {
                    let l = others.trailing_zeros() as usize;
                    others &= others - 1;
                    if rows[l] & bit(k) != 0 {
                        return true;
                    }
                }
                false
            });
            if cyclic {
                continue;
            }
            let y: Vec<Vertex> =
                (0..u.len()).filter(|&k| z & bit(k) != 0 && in_c & bit(k) == 0).map(|k| u[k]).collect();
            let x: u64 = map_c.iter().enumerate().filter(|(_, &k)| z & bit(k) != 0).fold(0, |acc, (p, _)| acc | bit(p));
            let rel: Vec<u64> = map_c
                .iter()
                .map(|&k| {
                    map_c
                        .iter()
                        .enumerate()
                        .filter(|(_, &l)| z & bit(k) == 0 && rows[k] & bit(l) != 0)
                        .fold(0, |acc, (p, _)| acc | bit(p))
                })
                .collect();
            let value = e1.value + t2[j].value + y.len() as u32;
            out.offer(x, rel, value, Back::Merge(i, j, y));
        }
    }
    out
}

/// Runs the table computation over `scd`, which must validate against `g`
/// and `emb`.
pub fn planar_tables(g: &DiGraph, emb: &Embedding, scd: &ScDecomposition) -> Result<PlanarTables> {
    let width = validate_sc(g, emb, scd)?;
    if width > MAX_PLANAR_WIDTH {
        return Err(Error::CapExceeded { what: "sphere-cut width", limit: MAX_PLANAR_WIDTH, actual: width });
    }
    let mut tables: Vec<PlanarDpTable> = vec![PlanarDpTable::default(); scd.node_count()];
    let root = scd.root();
    for x in scd.postorder() {
        if x == root {
            continue;
        }
        let t = match scd.children(x) {
            [] => leaf_table(g, scd.leaf_arc(x).expect("leaf has an arc"), scd.med(x)),
            [c1, c2] => dp_merge(scd.med(x), &tables[*c1], &tables[*c2]),
            _ => unreachable!("validated shape"),
        };
        tables[x] = t;
    }
    let top = scd.children(root)[0];
    Ok(PlanarTables { scd: scd.clone(), tables, top })
}

impl PlanarTables {
    pub fn decomposition(&self) -> &ScDecomposition {
        &self.scd
    }

    pub fn table(&self, node: usize) -> &PlanarDpTable {
        &self.tables[node]
    }

    pub fn total_entries(&self) -> usize {
        self.tables.iter().map(PlanarDpTable::len).sum()
    }

    pub fn optimum(&self) -> usize {
        self.tables[self.top].entries.iter().map(|e| e.value as usize).min().expect("deleting everything is feasible")
    }

    /// The optimal solution, traced from the edge below the root. Steps are
    /// listed children first.
    pub fn trace(&self) -> Vec<TraceStep> {
        let top = &self.tables[self.top].entries;
        let start = (0..top.len()).min_by_key(|&i| top[i].value).expect("top table is non-empty");
        let mut steps = Vec::new();
        self.walk(self.top, start, &mut steps);
        steps
    }

    fn walk(&self, node: usize, idx: usize, steps: &mut Vec<TraceStep>) -> VertexSet {
        let t = &self.tables[node];
        let e = &t.entries[idx];
        let mut below = VertexSet::new();
        match &e.back {
            Back::Leaf(s) => below.extend(s.iter().copied()),
            Back::Merge(i, j, y) => {
                let [c1, c2] = self.scd.children(node) else { unreachable!("merge entries sit on internal nodes") };
                below.extend(self.walk(*c1, *i, steps));
                below.extend(self.walk(*c2, *j, steps));
                below.extend(y.iter().copied());
            }
        }
        let (x, pattern) = t.decode(e);
        steps.push(TraceStep { node, x, deleted_below: below.clone(), pattern, value: e.value as usize });
        below
    }

    pub fn witness(&self) -> VertexSet {
        self.trace().pop().map(|s| s.deleted_below).unwrap_or_default()
    }
}

/// Minimum DFVS of a connected, bridgeless plane digraph via `scd`.
pub fn solve_dfvs_planar(g: &DiGraph, emb: &Embedding, scd: &ScDecomposition) -> Result<OracleResult> {
    let t = planar_tables(g, emb, scd)?;
    let witness = t.witness();
    if witness.len() != t.optimum() || !g.delete(&witness, &Default::default()).is_acyclic() {
        return Err(Error::decomposition("reconstructed witness failed its re-check"));
    }
    Ok(OracleResult { optimum: t.optimum(), witness: Witness::Vertices(witness) })
}

/// Result of the full planar pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarRun {
    pub result: OracleResult,
    /// Largest sphere-cut width over the pieces.
    pub width: usize,
    pub pieces: usize,
}

/// Removes bridges, splits into components, builds a decomposition for each
/// piece and sums the piece optima.
pub fn solve_dfvs_planar_full(g: &DiGraph, emb: &Embedding) -> Result<PlanarRun> {
    let mut witness = VertexSet::new();
    let mut optimum = 0;
    let mut width = 0;
    let pieces = preprocess_planar(g, emb)?;
    for p in &pieces {
        let scd = build_sc_heuristic(&p.piece.graph, &p.embedding)?;
        let r = solve_dfvs_planar(&p.piece.graph, &p.embedding, &scd)?;
        width = width.max(scd.width());
        optimum += r.optimum;
        if let Witness::Vertices(w) = r.witness {
            witness.extend(w.into_iter().map(|v| p.piece.to_original(v)));
        }
    }
    Ok(PlanarRun { result: OracleResult { optimum, witness: Witness::Vertices(witness) }, width, pieces: pieces.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_random_subgrid};
    use crate::oracle::min_dfvs_bruteforce;
    use crate::planar::grid_rotation;

    #[test]
    fn directed_four_cycle() {
        let g = DiGraph::from_arcs(4, [(1, 2), (2, 4), (4, 3), (3, 1)]).unwrap();
        let emb = Embedding::from_neighbors(&g, &[vec![], vec![2, 3], vec![4, 1], vec![1, 4], vec![3, 2]]).unwrap();
        let scd = build_sc_heuristic(&g, &emb).unwrap();
        let r = solve_dfvs_planar(&g, &emb, &scd).unwrap();
        assert_eq!(r.optimum, 1);
        assert!(r.witness.breaks_all_cycles(&g));
    }

    #[test]
    fn acyclic_square_needs_nothing() {
        let g = DiGraph::from_arcs(4, [(1, 2), (2, 4), (3, 4), (1, 3)]).unwrap();
        let emb = Embedding::from_neighbors(&g, &grid_rotation(2, 2)).unwrap();
        let r = solve_dfvs_planar_full(&g, &emb).unwrap();
        assert_eq!(r.result.optimum, 0);
    }

    #[test]
    fn bigon_needs_one() {
        let g = DiGraph::from_arcs(2, [(1, 2), (2, 1)]).unwrap();
        let emb = Embedding::from_neighbors(&g, &[vec![], vec![2, 2], vec![1, 1]]).unwrap();
        assert_eq!(solve_dfvs_planar_full(&g, &emb).unwrap().result.optimum, 1);
    }

    #[test]
    fn grids_match_bruteforce() {
        for seed in 0..6 {
            let inst = gen_grid(3, 3, seed).unwrap();
            let r = solve_dfvs_planar(&inst.graph, &inst.embedding, &inst.scd).unwrap();
            assert_eq!(r.optimum, min_dfvs_bruteforce(&inst.graph).unwrap().optimum);
            assert!(r.witness.breaks_all_cycles(&inst.graph));
        }
    }

    #[test]
    fn subgrids_match_bruteforce() {
        for seed in 0..30 {
            let inst = gen_random_subgrid(3, 4, true, seed).unwrap();
            let r = solve_dfvs_planar_full(&inst.graph, &inst.embedding).unwrap();
            let want = min_dfvs_bruteforce(&inst.graph).unwrap().optimum;
            assert_eq!(r.result.optimum, want, "seed {seed}");
            assert_eq!(r.result.witness.len(), want);
            assert!(r.result.witness.breaks_all_cycles(&inst.graph));
        }
    }

    fn pat(b: &[Vertex], pairs: &[(Vertex, Vertex)]) -> ConnectivityPattern {
        ConnectivityPattern::new(b.to_vec(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn leaf_and_merge_examples() {
        let g = DiGraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        let none = VertexSet::new();
        let l1 = leaf_table(&g, 0, &[1, 2]);
        assert_eq!(l1.len(), 4);
        assert_eq!(l1.get(&none, &pat(&[1, 2], &[(1, 2)])), Some(0));
        assert_eq!(l1.get(&none, &pat(&[1, 2], &[])), None);
        assert_eq!(l1.get(&VertexSet::from([1]), &pat(&[2], &[])), Some(0));
        assert_eq!(l1.get(&VertexSet::from([1, 2]), &pat(&[], &[])), Some(0));
        let l2 = leaf_table(&g, 1, &[2, 3]);
        let m = dp_merge(&[1, 3], &l1, &l2);
        assert_eq!(m.get(&none, &pat(&[1, 3], &[(1, 3)])), Some(0));
        assert_eq!(m.get(&none, &pat(&[1, 3], &[])), Some(1));
        assert_eq!(m.get(&VertexSet::from([1]), &pat(&[3], &[])), Some(0));
    }

    #[test]
    fn merge_rejects_cycles() {
        let g = DiGraph::from_arcs(2, [(1, 2), (2, 1)]).unwrap();
        let m = dp_merge(&[], &leaf_table(&g, 0, &[1, 2]), &leaf_table(&g, 1, &[1, 2]));
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&VertexSet::new(), &pat(&[], &[])), Some(1));
    }

    #[test]
    fn trace_is_consistent() {
        let inst = gen_grid(2, 3, 3).unwrap();
        let t = planar_tables(&inst.graph, &inst.embedding, &inst.scd).unwrap();
        let steps = t.trace();
        assert_eq!(steps.len(), inst.scd.node_count() - 1);
        for s in &steps {
            assert_eq!(s.deleted_below.len(), s.value);
            assert!(s.x.is_disjoint(&s.deleted_below));
        }
    }
}
