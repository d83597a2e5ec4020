//! Directed graph substrate shared by every solver.
//!
//! Vertices are 1-based integer ids below an id bound `n`. Deleting vertices
//! keeps the remaining ids unchanged, so a graph may have "holes"; solutions
//! computed on a reduced graph therefore map back to the input without any
//! translation table. Arcs are ordered pairs; loops and duplicate arcs are
//! rejected, antiparallel pairs are allowed.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Arc = (Vertex, Vertex);
pub type VertexSet = BTreeSet<Vertex>;
pub type ArcSet = BTreeSet<Arc>;
/// A sequence of distinct vertices, e.g. a (partial) topological ordering.
pub type VertexOrder = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    present: Vec<bool>,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl DiGraph {
    /// Graph on vertices `1..=n` with no arcs.
    pub fn new(n: usize) -> Self {
        let mut present = vec![true; n + 1];
        present[0] = false;
        DiGraph { n, present, arcs: Vec::new(), out_adj: vec![Vec::new(); n + 1], in_adj: vec![Vec::new(); n + 1] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut g = DiGraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::invalid(format!("arc ({u},{v}) has an endpoint outside the graph")));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at {u}")));
        }
        if self.has_arc(u, v) {
            return Err(Error::invalid(format!("duplicate arc ({u},{v})")));
        }
        self.arcs.push((u, v));
        self.out_adj[u].push(v);
        self.in_adj[v].push(u);
        Ok(())
    }

    /// Upper bound on vertex ids (ids live in `1..=id_bound()`).
    pub fn id_bound(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.n).filter(move |&v| self.present[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.out_adj[u].contains(&v)
    }

    /// Position of arc `(u,v)` in [`DiGraph::arcs`].
    pub fn arc_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.arcs.iter().position(|&a| a == (u, v))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    /// Distinct neighbours in the underlying undirected graph, sorted.
    pub fn undirected_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut nb: Vec<Vertex> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
        nb.sort_unstable();
        nb.dedup();
        nb
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; among available vertices the smallest id goes first.
    pub fn topological_order(&self) -> Option<VertexOrder> {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, v) in &self.arcs {
            indeg[v] += 1;
        }
        let mut heap: BinaryHeap<Reverse<Vertex>> = self.vertices().filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        (order.len() == self.vertex_count()).then_some(order)
    }

    /// Vertices reachable from `s` (including `s`) as a membership vector.
    pub fn reachable_from(&self, s: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.n + 1];
        if !self.contains(s) {
            return seen;
        }
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.out_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Reachability relation restricted to `t`: `(s,u)` iff a directed path
    /// (possibly of length 0) leads from `s` to `u`.
    pub fn reachability(&self, t: &VertexSet) -> BTreeSet<(Vertex, Vertex)> {
        let mut rel = BTreeSet::new();
        for &s in t {
            if !self.contains(s) {
                continue;
            }
            let seen = self.reachable_from(s);
            for &u in t {
                if self.contains(u) && seen[u] {
                    rel.insert((s, u));
                }
            }
        }
        rel
    }

    /// Removes the arcs in `y`, then the vertices in `x` with all incident
    /// arcs. Remaining vertices keep their ids.
    pub fn delete(&self, x: &VertexSet, y: &ArcSet) -> DiGraph {
        let mut g = DiGraph::new(self.n);
        for &v in x {
            if v <= self.n {
                g.present[v] = false;
            }
        }
        for v in 1..=self.n {
            if !self.present[v] {
                g.present[v] = false;
            }
        }
        for &(u, v) in &self.arcs {
            if g.present[u] && g.present[v] && !y.contains(&(u, v)) {
                g.arcs.push((u, v));
                g.out_adj[u].push(v);
                g.in_adj[v].push(u);
            }
        }
        g
    }

    /// Induced subgraph on `keep`, ids preserved.
    pub fn induced(&self, keep: &VertexSet) -> DiGraph {
        let drop: VertexSet = self.vertices().filter(|v| !keep.contains(v)).collect();
        self.delete(&drop, &ArcSet::new())
    }

    /// Arcs of the underlying undirected multigraph that are bridges, by arc index.
    /// An antiparallel pair is two parallel edges and so never a bridge.
    pub fn bridge_arcs(&self) -> Vec<usize> {
        let n = self.n;
        // incidence: (neighbour, arc index)
        let mut inc: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n + 1];
        for (i, &(u, v)) in self.arcs.iter().enumerate() {
            inc[u].push((v, i));
            inc[v].push((u, i));
        }
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut timer = 1;
        let mut bridges = Vec::new();
        for root in self.vertices() {
            if disc[root] != 0 {
                continue;
            }
            // frames: (vertex, arc used to enter, next incidence position)
            let mut stack: Vec<(Vertex, Option<usize>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
                if *pos < inc[v].len() {
                    let (w, id) = inc[v][*pos];
                    *pos += 1;
                    if Some(id) == via {
                        continue;
                    }
                    if disc[w] == 0 {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(id), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(via.expect("non-root frame has an entry arc"));
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Weakly connected components, each as a sorted vertex list, ordered by
    /// smallest member.
    pub fn weak_components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Copy of the induced subgraph on `members` relabelled to `1..=k`,
    /// in the order given.
    pub fn compact(&self, members: &[Vertex]) -> DiGraph {
        let mut pos = vec![0usize; self.n + 1];
        for (i, &v) in members.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut g = DiGraph::new(members.len());
        for &(u, v) in &self.arcs {
            if pos[u] != 0 && pos[v] != 0 {
                g.arcs.push((pos[u], pos[v]));
                g.out_adj[pos[u]].push(pos[v]);
                g.in_adj[pos[v]].push(pos[u]);
            }
        }
        g
    }
}

/// A connected, bridgeless piece of a graph, relabelled to `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub graph: DiGraph,
    /// `mapping[i-1]` is the original id of piece vertex `i`.
    pub mapping: Vec<Vertex>,
}

impl Piece {
    pub fn to_original(&self, v: Vertex) -> Vertex {
        self.mapping[v - 1]
    }
}

/// Deletes every bridge of the underlying multigraph and splits the rest into
/// weakly connected components. Neither step changes the DFVS or DFAS
/// optimum, which is the sum over the pieces.
pub fn bridges_and_components(g: &DiGraph) -> Vec<Piece> {
    let bridges: ArcSet = g.bridge_arcs().into_iter().map(|i| g.arcs()[i]).collect();
    let h = g.delete(&VertexSet::new(), &bridges);
    h.weak_components().into_iter().map(|members| Piece { graph: h.compact(&members), mapping: members }).collect()
}

/// Raw contents of a digraph file: the graph plus the optional rotation
/// section (`v -> clockwise neighbour list`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: DiGraph,
    pub rotation: Option<Vec<Vec<Vertex>>>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn parse_fields(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_digraph(text: &str) -> Result<DiGraph> {
    parse_graph_file(text).map(|f| f.graph)
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
    let h = parse_fields(hl, header)?;
    if h.len() != 2 {
        return Err(Error::parse(hl, "header must be \"n m\""));
    }
    let (n, m) = (h[0], h[1]);
    let mut g = DiGraph::new(n);
    for i in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| Error::parse(hl, format!("expected {m} arcs, found {i}")))?;
        let f = parse_fields(ln, l)?;
        if f.len() != 2 {
            return Err(Error::parse(ln, "arc line must be \"u v\""));
        }
        let (u, v) = (f[0], f[1]);
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::parse(ln, format!("endpoint out of range in arc ({u},{v})")));
        }
        if u == v {
            return Err(Error::parse(ln, format!("self-loop at {u}")));
        }
        if g.has_arc(u, v) {
            return Err(Error::parse(ln, format!("duplicate arc ({u},{v})")));
        }
        g.add_arc(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    let mut rotation = None;
    if let Some((ln, l)) = lines.next() {
        if l != "embedding" {
            return Err(Error::parse(ln, format!("unexpected line after arcs: {l:?}")));
        }
        let mut rot = vec![Vec::new(); n + 1];
        let mut seen = vec![false; n + 1];
        for _ in 0..n {
            let (ln, l) =
                lines.next().ok_or_else(|| Error::parse(ln, "embedding section needs one line per vertex"))?;
            let f = parse_fields(ln, l)?;
            if f.len() < 2 || f[0] == 0 || f[0] > n {
                return Err(Error::parse(ln, "rotation line must be \"v d w1 ... wd\""));
            }
            let (v, d) = (f[0], f[1]);
            if f.len() != d + 2 {
                return Err(Error::parse(ln, format!("vertex {v}: declared degree {d}, listed {}", f.len() - 2)));
            }
            if seen[v] {
                return Err(Error::parse(ln, format!("vertex {v} listed twice")));
            }
            seen[v] = true;
            rot[v] = f[2..].to_vec();
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data after embedding"));
        }
        rotation = Some(rot);
    }
    Ok(GraphFile { graph: g, rotation })
}

/// Serialises `g` in the digraph file format. Vertices missing from a sparse
/// graph simply have no arcs; the header keeps the id bound.
pub fn write_digraph(g: &DiGraph, rotation: Option<&[Vec<Vertex>]>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.id_bound(), g.arc_count());
    for &(u, v) in g.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    if let Some(rot) = rotation {
        s.push_str("embedding\n");
        for v in 1..=g.id_bound() {
            let nb = rot.get(v).map(Vec::as_slice).unwrap_or(&[]);
            let _ = write!(s, "{v} {}", nb.len());
            for w in nb {
                let _ = write!(s, " {w}");
            }
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> DiGraph {
        DiGraph::from_arcs(3, [(1, 2), (2, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn parses_smallest_graph() {
        let g = parse_digraph("2 1\n1 2\n").unwrap();
        assert_eq!(g.id_bound(), 2);
        assert_eq!(g.arcs(), &[(1, 2)]);
    }

    #[test]
    fn parses_triangle_with_comments() {
        let g = parse_digraph("% a triangle\n3 3\n1 2\n2 3\n% mid\n3 1\n").unwrap();
        assert_eq!(g, triangle());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_digraph("2 1\n1 1\n") {
            Err(Error::Parse { line: 2, msg }) => assert!(msg.contains("self-loop")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_digraph("2 2\n1 2\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_digraph("2 1\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_digraph("2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_digraph("2 2\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_digraph("x y\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn antiparallel_allowed() {
        let g = parse_digraph("2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn embedding_section_round_trips() {
        let text = "4 4\n1 2\n2 3\n3 4\n4 1\nembedding\n1 2 2 4\n2 2 3 1\n3 2 4 2\n4 2 1 3\n";
        let f = parse_graph_file(text).unwrap();
        let rot = f.rotation.clone().unwrap();
        assert_eq!(rot[1], vec![2, 4]);
        assert_eq!(write_digraph(&f.graph, Some(&rot)), text);
    }

    #[test]
    fn topological_order_examples() {
        let path = DiGraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.topological_order(), Some(vec![1, 2, 3]));
        assert_eq!(triangle().topological_order(), None);
        assert_eq!(DiGraph::new(2).topological_order(), Some(vec![1, 2]));
        let rev = DiGraph::from_arcs(3, [(3, 1), (2, 1)]).unwrap();
        assert_eq!(rev.topological_order(), Some(vec![2, 3, 1]));
    }

    #[test]
    fn reachability_examples() {
        let path = DiGraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        let t: VertexSet = [1, 3].into();
        let want: BTreeSet<_> = [(1, 1), (3, 3), (1, 3)].into();
        assert_eq!(path.reachability(&t), want);
        let t: VertexSet = [1, 2].into();
        assert_eq!(triangle().reachability(&t).len(), 4);
    }

    #[test]
    fn delete_examples() {
        let g = triangle();
        let h = g.delete(&[1].into(), &ArcSet::new());
        assert_eq!(h.arcs(), &[(2, 3)]);
        assert!(!h.contains(1));
        assert_eq!(h.id_bound(), 3);
        let h = g.delete(&VertexSet::new(), &[(3, 1)].into());
        assert_eq!(h.arcs(), &[(1, 2), (2, 3)]);
        let h = g.delete(&[1, 2, 3].into(), &ArcSet::new());
        assert_eq!(h.vertex_count(), 0);
        assert_eq!(h.arc_count(), 0);
    }

    #[test]
    fn bridges_and_components_examples() {
        let path = DiGraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        let pieces = bridges_and_components(&path);
        assert_eq!(pieces.len(), 3);
        assert!(pieces.iter().all(|p| p.graph.vertex_count() == 1));

        let pieces = bridges_and_components(&triangle());
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].graph, triangle());

        let two = DiGraph::from_arcs(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (3, 4)]).unwrap();
        let pieces = bridges_and_components(&two);
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[1].mapping, vec![4, 5, 6]);
        assert_eq!(pieces[1].graph.arc_count(), 3);
    }

    #[test]
    fn antiparallel_pair_is_not_a_bridge() {
        let g = DiGraph::from_arcs(3, [(1, 2), (2, 1), (2, 3)]).unwrap();
        let b: Vec<Arc> = g.bridge_arcs().into_iter().map(|i| g.arcs()[i]).collect();
        assert_eq!(b, vec![(2, 3)]);
    }
}
