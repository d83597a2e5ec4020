use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::planar::embedding::Embedding;
use crate::planar::scd::{middle_set, noose_for, Noose, ScDecomposition};

const SEEDS: usize = 12;
const EXHAUSTIVE_LIMIT: usize = 16;

/// Tree under construction: per node its parent and arc (for leaves).
struct Draft {
    parent: Vec<Option<usize>>,
    leaf_arc: Vec<Option<usize>>,
}

impl Draft {
    fn new() -> Self {
        Draft { parent: vec![None], leaf_arc: vec![None] }
    }

    fn add(&mut self, parent: usize, arc: Option<usize>) -> usize {
        self.parent.push(Some(parent));
        self.leaf_arc.push(arc);
        self.parent.len() - 1
    }

    /// Fills in middle sets and nooses, failing if some split has no noose.
    fn finish(self, g: &DiGraph, emb: &Embedding) -> Result<ScDecomposition> {
        let m = g.arc_count();
        let k = self.parent.len();
        let shell =
            ScDecomposition::new(self.parent.clone(), self.leaf_arc.clone(), vec![Vec::new(); k], vec![Vec::new(); k])?;
        let below = shell.arcs_below(m);
        let top = shell.children(shell.root())[0];
        let mut med = vec![Vec::new(); k];
        let mut nooses: Vec<Noose> = vec![Vec::new(); k];
        for x in 0..k {
            if x == shell.root() || x == top {
                continue;
            }
            let n = noose_for(emb, &below[x])
                .ok_or_else(|| Error::decomposition(format!("tree edge {}: no noose separates this split", x + 1)))?;
            med[x] = n.iter().map(|&(v, _)| v).collect();
            nooses[x] = n;
        }
        ScDecomposition::new(self.parent, self.leaf_arc, med, nooses)
    }
}

fn require_connected_bridgeless(g: &DiGraph) -> Result<()> {
    if g.arc_count() == 0 {
        return Err(Error::invalid("graph has no arcs"));
    }
    let comps = g.weak_components().into_iter().filter(|c| c.len() > 1).count();
    if comps != 1 || g.vertices().any(|v| g.undirected_neighbors(v).is_empty()) {
        return Err(Error::invalid("graph must be connected"));
    }
    if !g.bridge_arcs().is_empty() {
        return Err(Error::invalid("graph must be bridgeless"));
    }
    Ok(())
}

/// Sphere-cut decomposition whose internal nodes form a path: the tree edge
/// above the k-th spine node carries the first k arcs of `order`.
pub fn caterpillar(g: &DiGraph, emb: &Embedding, order: &[usize]) -> Result<ScDecomposition> {
    require_connected_bridgeless(g)?;
    let m = g.arc_count();
    let mut seen = vec![false; m];
    for &a in order {
        if a >= m || std::mem::replace(&mut seen[a], true) {
            return Err(Error::invalid("arc order must list every arc once"));
        }
    }
    if order.len() != m {
        return Err(Error::invalid("arc order must list every arc once"));
    }
    let mut d = Draft::new();
    if m == 1 {
        d.add(0, Some(order[0]));
        return d.finish(g, emb);
    }
    let mut spine = d.add(0, None);
    for i in (2..m).rev() {
        d.add(spine, Some(order[i]));
        spine = d.add(spine, None);
    }
    d.add(spine, Some(order[1]));
    d.add(spine, Some(order[0]));
    d.finish(g, emb)
}

/// Incremental middle-set size for a growing arc set.
struct Grower<'a> {
    g: &'a DiGraph,
    deg: Vec<usize>,
    cnt: Vec<usize>,
}

impl<'a> Grower<'a> {
    fn new(g: &'a DiGraph) -> Self {
        let mut deg = vec![0; g.id_bound() + 1];
        for &(u, v) in g.arcs() {
            deg[u] += 1;
            deg[v] += 1;
        }
        Grower { g, cnt: vec![0; deg.len()], deg }
    }

    fn in_med(&self, v: Vertex, c: usize) -> bool {
        c > 0 && c < self.deg[v]
    }

    fn delta(&self, a: usize) -> isize {
        let (u, v) = self.g.arcs()[a];
        [u, v].iter().map(|&w| self.in_med(w, self.cnt[w] + 1) as isize - self.in_med(w, self.cnt[w]) as isize).sum()
    }

    fn add(&mut self, a: usize) {
        let (u, v) = self.g.arcs()[a];
        self.cnt[u] += 1;
        self.cnt[v] += 1;
    }
}

struct Candidate {
    part: Vec<bool>,
    small: usize,
    cost: usize,
}

fn better(a: &Candidate, b: &Candidate, total: usize) -> bool {
    let ra = 4 * a.small >= total;
    let rb = 4 * b.small >= total;
    match (ra, rb) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => (a.cost, std::cmp::Reverse(a.small)) < (b.cost, std::cmp::Reverse(b.small)),
        (false, false) => (std::cmp::Reverse(a.small), a.cost) < (std::cmp::Reverse(b.small), b.cost),
    }
}

/// Evaluates `part` (a subset of `set`) as a split of `set`.
fn evaluate(g: &DiGraph, emb: &Embedding, set: &[usize], part: &[bool]) -> Option<Candidate> {
    let m = g.arc_count();
    let inside = set.iter().filter(|&&a| part[a]).count();
    if inside == 0 || inside == set.len() {
        return None;
    }
    let mut rest = vec![false; m];
    for &a in set {
        rest[a] = !part[a];
    }
    noose_for(emb, part)?;
    noose_for(emb, &rest)?;
    let cost = middle_set(g, part).len().max(middle_set(g, &rest).len());
    Some(Candidate { part: part.to_vec(), small: inside.min(set.len() - inside), cost })
}

fn split(g: &DiGraph, emb: &Embedding, set: &[usize]) -> Option<Vec<bool>> {
    let m = g.arc_count();
    let total = set.len();
    let mut best: Option<Candidate> = None;
    let offer = |c: Option<Candidate>, best: &mut Option<Candidate>| {
        if let Some(c) = c {
            if best.as_ref().is_none_or(|b| better(&c, b, total)) {
                *best = Some(c);
            }
        }
    };
    let seeds = SEEDS.min(total);
    for s in 0..seeds {
        let seed = set[s * total / seeds];
        let mut grow = Grower::new(g);
        let mut part = vec![false; m];
        part[seed] = true;
        grow.add(seed);
        let mut touched = vec![false; g.id_bound() + 1];
        let (u, v) = g.arcs()[seed];
        touched[u] = true;
        touched[v] = true;
        for _ in 1..total {
            offer(evaluate(g, emb, set, &part), &mut best);
            let pick = set
                .iter()
                .copied()
                .filter(|&a| !part[a])
                .map(|a| {
                    let (x, y) = g.arcs()[a];
                    let adjacent = touched[x] || touched[y];
                    (!adjacent, grow.delta(a), a)
                })
                .min();
            let Some((_, _, a)) = pick else { break };
            part[a] = true;
            grow.add(a);
            let (x, y) = g.arcs()[a];
            touched[x] = true;
            touched[y] = true;
        }
    }
    if best.is_none() && total <= EXHAUSTIVE_LIMIT {
        for mask in 1u32..(1u32 << (total - 1)) {
            let mut part = vec![false; m];
            for (i, &a) in set.iter().enumerate().skip(1) {
                part[a] = mask >> (i - 1) & 1 == 1;
            }
            offer(evaluate(g, emb, set, &part), &mut best);
        }
    }
    best.map(|c| c.part)
}

/// Builds a sphere-cut decomposition top-down by repeatedly splitting an arc
/// set into two parts that both have nooses, preferring balanced splits with
/// small middle sets. `g` must be connected and bridgeless.
pub fn build_sc_heuristic(g: &DiGraph, emb: &Embedding) -> Result<ScDecomposition> {
    require_connected_bridgeless(g)?;
    let m = g.arc_count();
    let mut d = Draft::new();
    let top = d.add(0, None);
    if m == 1 {
        d.leaf_arc[top] = Some(0);
        return d.finish(g, emb);
    }
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(top, (0..m).collect())];
    while let Some((node, set)) = stack.pop() {
        let part = split(g, emb, &set)
            .ok_or_else(|| Error::invalid(format!("no sphere-cut split found for a set of {} arcs", set.len())))?;
        let (a, b): (Vec<usize>, Vec<usize>) = set.iter().partition(|&&x| part[x]);
        for side in [a, b] {
            if side.len() == 1 {
                d.add(node, Some(side[0]));
            } else {
                let c = d.add(node, None);
                stack.push((c, side));
            }
        }
    }
    d.finish(g, emb)
}

/// Vertex id of grid cell `(r, c)`, both 1-based.
pub fn grid_vertex(cols: usize, r: usize, c: usize) -> Vertex {
    (r - 1) * cols + c
}

/// Clockwise rotation of the standard `rows x cols` grid drawing
/// (up, right, down, left) as neighbour lists.
pub fn grid_rotation(rows: usize, cols: usize) -> Vec<Vec<Vertex>> {
    let mut rot = vec![Vec::new(); rows * cols + 1];
    for r in 1..=rows {
        for c in 1..=cols {
            let nb = &mut rot[grid_vertex(cols, r, c)];
            if r > 1 {
                nb.push(grid_vertex(cols, r - 1, c));
            }
            if c < cols {
                nb.push(grid_vertex(cols, r, c + 1));
            }
            if r < rows {
                nb.push(grid_vertex(cols, r + 1, c));
            }
            if c > 1 {
                nb.push(grid_vertex(cols, r, c - 1));
            }
        }
    }
    rot
}

/// Caterpillar decomposition of an oriented `rows x cols` grid of width
/// `max(min(rows, cols), 2)`, sweeping across the longer side.
pub fn grid_sc_decomposition(g: &DiGraph, emb: &Embedding, rows: usize, cols: usize) -> Result<ScDecomposition> {
    let find = |p: Vertex, q: Vertex| {
        g.arc_index(p, q)
            .or_else(|| g.arc_index(q, p))
            .ok_or_else(|| Error::invalid(format!("grid edge {p}-{q} missing")))
    };
    let (long, short) = if cols >= rows { (cols, rows) } else { (rows, cols) };
    let cell = |i: usize, j: usize| {
        // i along the short side, j along the long side
        if cols >= rows {
            grid_vertex(cols, i, j)
        } else {
            grid_vertex(cols, j, i)
        }
    };
    let mut order = Vec::with_capacity(g.arc_count());
    for j in 1..=long {
        for i in 1..=short {
            if j > 1 {
                order.push(find(cell(i, j - 1), cell(i, j))?);
            }
            if i > 1 {
                order.push(find(cell(i - 1, j), cell(i, j))?);
            }
        }
    }
    if order.len() != g.arc_count() {
        return Err(Error::invalid("graph is not an oriented grid"));
    }
    caterpillar(g, emb, &order)
}
