//! Plain tree decompositions: validation, the `.td` text format and two
//! builders (exact subset search for small graphs, min-fill otherwise).

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};

/// Tree of bags. Nodes are indexed `0..bags.len()`; in files they are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
    root: usize,
}

impl TreeDecomposition {
    /// Builds a decomposition, checking only that the node graph is a tree.
    /// Bags are sorted and deduplicated.
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let k = bags.len();
        if k == 0 {
            return Err(Error::decomposition("a tree decomposition needs at least one bag"));
        }
        if edges.len() != k - 1 {
            return Err(Error::decomposition(format!("{k} bags need {} tree edges, found {}", k - 1, edges.len())));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &edges {
            if a >= k || b >= k || a == b {
                return Err(Error::decomposition(format!("bad tree edge ({}, {})", a + 1, b + 1)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::decomposition(format!("bag {} is not connected to the tree", x + 1)));
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition { bags, edges, root: 0 })
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn with_root(mut self, root: usize) -> Self {
        assert!(root < self.bags.len(), "root out of range");
        self.root = root;
        self
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Checks the three decomposition axioms against `g` and returns the width.
    pub fn validate(&self, g: &DiGraph) -> Result<usize> {
        let n = g.id_bound();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if !g.contains(v) {
                    return Err(Error::decomposition(format!("bag {} contains unknown vertex {v}", x + 1)));
                }
                holders[v].push(x);
            }
        }
        for v in g.vertices() {
            if holders[v].is_empty() {
                return Err(Error::decomposition(format!("vertex {v} is in no bag")));
            }
        }
        for &(u, v) in g.arcs() {
            let covered = self.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok());
            if !covered {
                return Err(Error::decomposition(format!("arc ({u},{v}) is not covered by any bag")));
            }
        }
        let adj = self.adjacency();
        for v in g.vertices() {
            let inside: BTreeSet<usize> = holders[v].iter().copied().collect();
            let start = holders[v][0];
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != inside.len() {
                return Err(Error::decomposition(format!(
                    "bags containing vertex {v} do not form a connected subtree"
                )));
            }
        }
        Ok(self.width())
    }
}

/// Parses a `.td` file and validates it against `g`.
pub fn parse_td(text: &str, g: &DiGraph) -> Result<TreeDecomposition> {
    let td = parse_td_unchecked(text)?;
    td.validate(g)?;
    Ok(td)
}

/// Parses a `.td` file, checking syntax and tree shape only.
pub fn parse_td_unchecked(text: &str) -> Result<TreeDecomposition> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('c'));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 5 || h[0] != "s" || h[1] != "td" {
        return Err(Error::parse(hl, "header must be \"s td <#bags> <maxbagsize> <n>\""));
    }
    let num = |line: usize, tok: &str| -> Result<usize> {
        tok.parse::<usize>().map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {tok:?}")))
    };
    let k = num(hl, h[2])?;
    let max_bag = num(hl, h[3])?;
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; k];
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(Error::parse(ln, "bag line must be \"b <id> <v...>\""));
            }
            let id = num(ln, toks[1])?;
            if id == 0 || id > k {
                return Err(Error::parse(ln, format!("bag id {id} out of range")));
            }
            if bags[id - 1].is_some() {
                return Err(Error::parse(ln, format!("bag {id} defined twice")));
            }
            let vs = toks[2..].iter().map(|t| num(ln, t)).collect::<Result<Vec<_>>>()?;
            if vs.len() > max_bag {
                return Err(Error::parse(ln, format!("bag {id} exceeds declared max bag size {max_bag}")));
            }
            bags[id - 1] = Some(vs);
        } else {
            if toks.len() != 2 {
                return Err(Error::parse(ln, "tree edge line must be \"<i> <j>\""));
            }
            let (a, b) = (num(ln, toks[0])?, num(ln, toks[1])?);
            if a == 0 || b == 0 || a > k || b > k {
                return Err(Error::parse(ln, format!("tree edge ({a},{b}) out of range")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    TreeDecomposition::new(bags, edges)
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    let max_bag = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(s, "s td {} {} {}", td.bags.len(), max_bag, n);
    for (i, b) in td.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in b {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// Underlying simple undirected adjacency as neighbour sets over ids.
fn undirected(g: &DiGraph) -> Vec<BTreeSet<Vertex>> {
    let mut adj = vec![BTreeSet::new(); g.id_bound() + 1];
    for &(u, v) in g.arcs() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

/// Decomposition induced by eliminating vertices in `order` (which must list
/// every vertex of `g` once).
pub fn from_elimination_order(g: &DiGraph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.id_bound();
    let mut adj = undirected(g);
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(order.len());
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        parent.push(later.iter().map(|&w| pos[w]).min());
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    if bags.is_empty() {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new()).expect("single bag");
    }
    let mut edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => edges.push((i, *p)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    let root = bags.len() - 1;
    TreeDecomposition::new(bags, edges).expect("elimination yields a tree").with_root(root)
}

pub const EXACT_TREEWIDTH_CAP: usize = 12;

/// Width-optimal decomposition by memoised search over elimination orderings
/// (subset dynamic programming), for graphs with at most 12 vertices.
pub fn td_exact_small(g: &DiGraph) -> Result<TreeDecomposition> {
    let ids: Vec<Vertex> = g.vertices().collect();
    let n = ids.len();
    if n > EXACT_TREEWIDTH_CAP {
        return Err(Error::CapExceeded { what: "exact treewidth vertex count", limit: EXACT_TREEWIDTH_CAP, actual: n });
    }
    let order = optimal_elimination_order(g, &ids);
    Ok(from_elimination_order(g, &order))
}

/// Exact treewidth of `g` (at most 12 vertices).
pub fn exact_treewidth(g: &DiGraph) -> Result<usize> {
    td_exact_small(g).map(|td| td.width())
}

fn optimal_elimination_order(g: &DiGraph, ids: &[Vertex]) -> Vec<Vertex> {
    let n = ids.len();
    if n == 0 {
        return Vec::new();
    }
    let mut pos = vec![usize::MAX; g.id_bound() + 1];
    for (i, &v) in ids.iter().enumerate() {
        pos[v] = i;
    }
    let mut nb = vec![0u32; n];
    for &(u, v) in g.arcs() {
        nb[pos[u]] |= 1 << pos[v];
        nb[pos[v]] |= 1 << pos[u];
    }
    // degree of v when eliminated right after the set `s`
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut bits = frontier;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let fresh = nb[x] & !seen;
                seen |= fresh;
                outside |= fresh & !s;
                next |= fresh & s;
            }
            frontier = next;
        }
        outside.count_ones()
    };
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; full + 1];
    let mut last = vec![0u8; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let w = best[rest].max(q(rest as u32, v));
            if w < best[s] {
                best[s] = w;
                last[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s] as usize;
        order.push(ids[v]);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Min-fill elimination heuristic; ties go to the smallest id.
pub fn td_heuristic(g: &DiGraph) -> TreeDecomposition {
    let mut adj = undirected(g);
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut order = Vec::with_capacity(alive.len());
    while !alive.is_empty() {
        let mut best: Option<(usize, Vertex)> = None;
        for &v in &alive {
            let nb: Vec<Vertex> = adj[v].iter().copied().filter(|w| alive.contains(w)).collect();
            let mut fill = 0;
            for (a, &x) in nb.iter().enumerate() {
                for &y in &nb[a + 1..] {
                    if !adj[x].contains(&y) {
                        fill += 1;
                    }
                }
            }
            if best.is_none_or(|(f, _)| fill < f) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.expect("alive is non-empty");
        let nb: Vec<Vertex> = adj[v].iter().copied().filter(|w| alive.contains(w)).collect();
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        alive.remove(&v);
        order.push(v);
    }
    from_elimination_order(g, &order)
}
