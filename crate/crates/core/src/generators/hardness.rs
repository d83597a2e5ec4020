//! The reduction chain from k×k hitting set with thin sets to DFVS/DFAS:
//! hitting set → 3-constraint permutation formula → structured 2-constraint
//! formula (with a star decomposition of its incidence graph) → digraph built
//! from or-gadgets.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Arc, DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::treewidth::TreeDecomposition;

/// Cells `(row, col)` in `[k]×[k]`, 1-based.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub k: usize,
    pub sets: Vec<Vec<Cell>>,
}

impl HittingSetInstance {
    /// Rejects out-of-range cells and sets with two cells in one row.
    pub fn new(k: usize, sets: Vec<Vec<Cell>>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            let mut rows = BTreeSet::new();
            for &(r, c) in set {
                if r == 0 || c == 0 || r > k || c > k {
                    return Err(Error::invalid(format!("set {}: cell ({r},{c}) outside [{k}]x[{k}]", i + 1)));
                }
                if !rows.insert(r) {
                    return Err(Error::invalid(format!("set {} is not thin: row {r} used twice", i + 1)));
                }
            }
        }
        Ok(HittingSetInstance { k, sets })
    }

    pub fn is_thin(&self) -> bool {
        self.sets.iter().all(|s| {
            let rows: BTreeSet<usize> = s.iter().map(|c| c.0).collect();
            rows.len() == s.len()
        })
    }
}

/// Tuple of distinct indices that a permutation must place in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermConstraint(Vec<usize>);

impl PermConstraint {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::invalid("a constraint needs at least two indices"));
        }
        let distinct: BTreeSet<usize> = indices.iter().copied().collect();
        if distinct.len() != indices.len() || distinct.contains(&0) {
            return Err(Error::invalid(format!("constraint {indices:?} must list distinct positive indices")));
        }
        Ok(PermConstraint(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Whether `pos` (position of each index, indexed by index) satisfies it.
    pub fn satisfied_by(&self, pos: &[usize]) -> bool {
        self.0.windows(2).all(|w| pos[w[0]] < pos[w[1]])
    }
}

/// Conjunction of clauses, each a disjunction of constraints over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermFormula {
    pub n: usize,
    pub clauses: Vec<Vec<PermConstraint>>,
}

impl PermFormula {
    pub fn new(n: usize, clauses: Vec<Vec<PermConstraint>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::invalid(format!("clause {} is empty", i + 1)));
            }
            if let Some(bad) = c.iter().flat_map(|x| x.indices()).find(|&&j| j > n) {
                return Err(Error::invalid(format!("clause {} uses index {bad} > {n}", i + 1)));
            }
        }
        Ok(PermFormula { n, clauses })
    }

    /// Every clause has length 1 or 3 and repeats no index.
    pub fn is_structured(&self) -> bool {
        self.clauses.iter().all(|c| {
            let idx: Vec<usize> = c.iter().flat_map(|x| x.indices().iter().copied()).collect();
            let distinct: BTreeSet<usize> = idx.iter().copied().collect();
            (c.len() == 1 || c.len() == 3) && distinct.len() == idx.len()
        })
    }

    /// Whether the permutation listing indices in the order `perm` satisfies
    /// every clause.
    pub fn satisfied_by(&self, perm: &[usize]) -> bool {
        let mut pos = vec![0; self.n + 1];
        for (p, &i) in perm.iter().enumerate() {
            pos[i] = p;
        }
        self.clauses.iter().all(|c| c.iter().any(|x| x.satisfied_by(&pos)))
    }

    /// Incidence graph: indices `1..=n`, clause `c` is vertex `n + c + 1`,
    /// with an arc from each clause to every index it mentions.
    pub fn incidence_graph(&self) -> DiGraph {
        let mut g = DiGraph::new(self.n + self.clauses.len());
        for (c, clause) in self.clauses.iter().enumerate() {
            let idx: BTreeSet<usize> = clause.iter().flat_map(|x| x.indices().iter().copied()).collect();
            for i in idx {
                g.add_arc(self.n + c + 1, i).expect("fresh arc");
            }
        }
        g
    }
}

fn constraint(v: &[usize]) -> PermConstraint {
    PermConstraint::new(v.to_vec()).expect("distinct indices by construction")
}

/// Hitting set to a k-clause-length (2k+1)-index 3-formula.
///
/// The construction assumes `k >= 3`; `allow_small_k` admits `k = 2` (still
/// equivalent, used to keep brute-force checks small).
pub fn reduce_hs_to_3formula(inst: &HittingSetInstance, allow_small_k: bool) -> Result<PermFormula> {
    let k = inst.k;
    let min_k = if allow_small_k { 2 } else { 3 };
    if k < min_k {
        return Err(Error::invalid(format!("k = {k} is below {min_k}")));
    }
    if !inst.is_thin() {
        return Err(Error::invalid("hitting-set instance has a non-thin set"));
    }
    let mut clauses = Vec::new();
    for a in k + 1..=2 * k - 1 {
        clauses.push(vec![constraint(&[a, a + 1, a + 2])]);
    }
    for i in 1..=k {
        clauses.push(vec![constraint(&[k + 1, i, 2 * k + 1])]);
    }
    for (s, set) in inst.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::invalid(format!("set {} is empty and can never be hit", s + 1)));
        }
        clauses.push(set.iter().map(|&(i, j)| constraint(&[k + j, i, k + j + 1])).collect());
    }
    PermFormula::new(2 * k + 1, clauses)
}

/// Output of the 3-formula to 2-formula step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredFormula {
    pub psi: PermFormula,
    /// Star decomposition of the incidence graph of `psi`.
    pub incidence_td: TreeDecomposition,
    /// Number of indices of the source formula (the star centre is `[k]`).
    pub k: usize,
}

/// Replaces each clause of 3-constraints over `[k]` (`k = phi.n`) by a block
/// of 2-constraint clauses over fresh indices.
pub fn reduce_3formula_to_2formula(phi: &PermFormula) -> Result<StructuredFormula> {
    let k = phi.n;
    if phi.clauses.len() > k {
        return Err(Error::invalid(format!("{} clauses exceed the budget of k = {k}", phi.clauses.len())));
    }
    for (c, clause) in phi.clauses.iter().enumerate() {
        if clause.len() > k {
            return Err(Error::invalid(format!("clause {} has length {} > k = {k}", c + 1, clause.len())));
        }
        if clause.iter().any(|x| x.indices().len() != 3) {
            return Err(Error::invalid(format!("clause {} must consist of 3-constraints", c + 1)));
        }
    }
    let block = 2 * k + 2;
    let n = k + block * k;
    let mut clauses = Vec::new();
    // per source clause: the psi clause ids and fresh indices it owns
    let mut owned: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (c, clause) in phi.clauses.iter().enumerate() {
        let base = k + c * block;
        let kp = clause.len();
        let j = |t: usize| base + t;
        let first = clauses.len();
        for (i, con) in clause.iter().enumerate() {
            let i = i + 1;
            let [a, b, cc] = [con.indices()[0], con.indices()[1], con.indices()[2]];
            let left = constraint(&[j(2 * i), j(2 * i - 1)]);
            let right = constraint(&[j(2 * i + 1), j(2 * i + 2)]);
            clauses.push(vec![left.clone(), constraint(&[a, b]), right.clone()]);
            clauses.push(vec![left, constraint(&[b, cc]), right]);
        }
        clauses.push(vec![constraint(&[j(1), j(2)])]);
        clauses.push(vec![constraint(&[j(2 * kp + 2), j(2 * kp + 1)])]);
        owned.push(((first..clauses.len()).collect(), (1..=2 * kp + 2).map(j).collect()));
    }
    let psi = PermFormula::new(n, clauses)?;

    let centre: Vec<Vertex> = (1..=k).collect();
    let mut bags = vec![centre.clone()];
    let mut used = vec![false; n + 1];
    for (cl, idx) in &owned {
        let mut bag = centre.clone();
        bag.extend(idx.iter().copied());
        bag.extend(cl.iter().map(|&c| n + c + 1));
        for &i in idx {
            used[i] = true;
        }
        bags.push(bag);
    }
    for (i, u) in used.iter().enumerate().skip(k + 1) {
        if !u {
            bags.push(vec![i]);
        }
    }
    let edges = (1..bags.len()).map(|p| (0, p)).collect();
    let incidence_td = TreeDecomposition::new(bags, edges)?;
    Ok(StructuredFormula { psi, incidence_td, k })
}

/// The or-gadget: terminals `x1=1, x1'=2, x2=3, x2'=4, x3=5, x3'=6` and
/// internals `v1a=7, v1b=8, v2a=9, v2b=10, v3a=11, v3b=12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrGadget {
    pub graph: DiGraph,
    /// `[x1, x1', x2, x2', x3, x3']`.
    pub terminals: [Vertex; 6],
    /// `[v1a, v1b, v2a, v2b, v3a, v3b]`.
    pub internals: [Vertex; 6],
}

impl OrGadget {
    /// `e_i = v_ia → v_ib` for `i` in `1..=3`.
    pub fn internal_arc(&self, i: usize) -> Arc {
        assert!((1..=3).contains(&i), "or-gadget arcs are e1, e2, e3");
        (self.internals[2 * i - 2], self.internals[2 * i - 1])
    }
}

/// Gadget arcs in terms of slots: `0..6` terminals, `6..12` internals.
const GADGET_ARCS: [(usize, usize); 15] = [
    (0, 6),
    (7, 1),
    (2, 8),
    (9, 3),
    (4, 10),
    (11, 5),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 6),
    (7, 10),
    (9, 6),
    (11, 8),
];

pub fn or_gadget() -> OrGadget {
    let slots: Vec<Vertex> = (1..=12).collect();
    let graph = DiGraph::from_arcs(12, GADGET_ARCS.iter().map(|&(a, b)| (slots[a], slots[b]))).expect("gadget arcs");
    OrGadget { graph, terminals: [1, 2, 3, 4, 5, 6], internals: [7, 8, 9, 10, 11, 12] }
}

/// A DFVS/DFAS decision instance produced from a structured 2-formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: DiGraph,
    pub budget: usize,
    /// `terminals[i - 1]` is the vertex standing for index `i`.
    pub terminals: Vec<Vertex>,
    pub td: Option<TreeDecomposition>,
}

/// Digraph whose optimum is at most `budget` iff `psi` is satisfiable.
///
/// When a decomposition of the incidence graph of `psi` is supplied it is
/// lifted to a decomposition of the output graph.
pub fn reduce_2formula_to_dfvs(psi: &PermFormula, incidence_td: Option<&TreeDecomposition>) -> Result<ReductionOutput> {
    if !psi.is_structured() {
        return Err(Error::invalid(
            "formula is not structured: clauses must have length 1 or 3 without repeated indices",
        ));
    }
    if psi.clauses.iter().flatten().any(|c| c.indices().len() != 2) {
        return Err(Error::invalid("formula must consist of 2-constraints"));
    }
    let n = psi.n;
    let long = psi.clauses.iter().filter(|c| c.len() == 3).count();
    let mut g = DiGraph::new(n + 6 * long);
    // replacement[c] = vertices standing in for clause c in a lifted bag
    let mut replacement: Vec<Vec<Vertex>> = Vec::with_capacity(psi.clauses.len());
    let mut next = n;
    for clause in &psi.clauses {
        if clause.len() == 1 {
            let (a, b) = (clause[0].indices()[0], clause[0].indices()[1]);
            if !g.has_arc(a, b) {
                g.add_arc(a, b)?;
            }
            replacement.push(vec![a]);
        } else {
            let mut slot = [0; 12];
            for (i, con) in clause.iter().enumerate() {
                slot[2 * i] = con.indices()[0];
                slot[2 * i + 1] = con.indices()[1];
            }
            for (s, v) in slot.iter_mut().skip(6).zip(next + 1..) {
                *s = v;
            }
            for &(a, b) in &GADGET_ARCS {
                g.add_arc(slot[a], slot[b])?;
            }
            replacement.push(slot[6..].to_vec());
            next += 6;
        }
    }
    let td = match incidence_td {
        None => None,
        Some(td) => {
            let bags = td
                .bags()
                .iter()
                .map(|bag| {
                    bag.iter().flat_map(|&v| if v <= n { vec![v] } else { replacement[v - n - 1].clone() }).collect()
                })
                .collect();
            let lifted = TreeDecomposition::new(bags, td.edges().to_vec())?.with_root(td.root());
            lifted.validate(&g)?;
            Some(lifted)
        }
    };
    Ok(ReductionOutput { graph: g, budget: 2 * long, terminals: (1..=n).collect(), td })
}

/// `sets` thin sets over `[k]×[k]`; each row is skipped or gets a uniform
/// column. Empty draws are redrawn.
pub fn gen_hitting_set(k: usize, sets: usize, seed: u64) -> HittingSetInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(sets);
    if k > 0 {
        while out.len() < sets {
            let set: Vec<Cell> = (1..=k)
                .filter_map(|r| {
                    let pick = rng.gen_range(0..=k);
                    (pick > 0).then_some((r, pick))
                })
                .collect();
            if !set.is_empty() {
                out.push(set);
            }
        }
    }
    HittingSetInstance::new(k, out).expect("sampled sets are thin")
}

fn random_distinct(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    for i in 0..d {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(d);
    pool
}

/// Random formula of 3-constraints over `[n]` (`n >= 3`) with `clauses`
/// clauses of length `1..=max_len`.
pub fn gen_3formula(n: usize, clauses: usize, max_len: usize, seed: u64) -> PermFormula {
    assert!(n >= 3 && max_len >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cl = (0..clauses)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| PermConstraint(random_distinct(&mut rng, n, 3))).collect()
        })
        .collect();
    PermFormula::new(n, cl).expect("valid by construction")
}

/// Random structured formula of 2-constraints over `[n]` (`n >= 6`):
/// `long` clauses of length 3 and `unit` clauses of length 1.
pub fn gen_structured_2formula(n: usize, long: usize, unit: usize, seed: u64) -> PermFormula {
    assert!(n >= 6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cl: Vec<Vec<PermConstraint>> = Vec::new();
    for _ in 0..long {
        let idx = random_distinct(&mut rng, n, 6);
        cl.push(idx.chunks(2).map(|p| PermConstraint(p.to_vec())).collect());
    }
    for _ in 0..unit {
        cl.push(vec![PermConstraint(random_distinct(&mut rng, n, 2))]);
    }
    PermFormula::new(n, cl).expect("valid by construction")
}
