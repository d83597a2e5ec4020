use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::planar::embedding::{arc_of, Dart, Embedding};

/// A closed curve through the radial graph: alternating vertices and faces,
/// `[(v1, f1), (v2, f2), ...]` meaning v1, f1, v2, f2, ... and back to v1.
pub type Noose = Vec<(Vertex, usize)>;

/// Darts `d` where the arc class changes between `pred(d)` and `d`.
fn boundary_darts(emb: &Embedding, side: &[bool]) -> Vec<Dart> {
    (0..emb.dart_count()).filter(|&d| side[arc_of(d)] != side[arc_of(emb.pred(d))]).collect()
}

/// Vertices incident to arcs on both sides of the split, sorted.
pub fn middle_set(g: &DiGraph, side: &[bool]) -> Vec<Vertex> {
    let mut has = vec![[false; 2]; g.id_bound() + 1];
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        let s = side[a] as usize;
        has[u][s] = true;
        has[v][s] = true;
    }
    (1..=g.id_bound()).filter(|&v| has[v][0] && has[v][1]).collect()
}

/// The noose separating the arcs with `side[a] == true` from the rest, if
/// there is one. It meets every face at most once and passes through exactly
/// the vertices incident to both sides. The result is canonical: it starts at
/// the smallest such vertex and leaves it into the face where the marked arcs
/// begin clockwise. An all-marked or unmarked split yields an empty noose.
pub fn noose_for(emb: &Embedding, side: &[bool]) -> Option<Noose> {
    let bd = boundary_darts(emb, side);
    if bd.is_empty() {
        return Some(Vec::new());
    }
    let mut at_vertex: Vec<Vec<Dart>> = Vec::new();
    let mut at_face: Vec<Vec<Dart>> = vec![Vec::new(); emb.face_count()];
    for &d in &bd {
        let v = emb.tail(d);
        if at_vertex.len() <= v {
            at_vertex.resize(v + 1, Vec::new());
        }
        at_vertex[v].push(d);
        at_face[emb.face_of(d)].push(d);
    }
    if at_vertex.iter().any(|x| x.len() > 2) || at_face.iter().any(|x| x.len() > 2) {
        return None;
    }
    let start_v = bd.iter().map(|&d| emb.tail(d)).min()?;
    let first = *at_vertex[start_v].iter().find(|&&d| side[arc_of(d)])?;
    let other = |list: &[Dart], d: Dart| list.iter().copied().find(|&x| x != d);
    let mut noose = Vec::new();
    let mut d = first;
    loop {
        let f = emb.face_of(d);
        noose.push((emb.tail(d), f));
        let d2 = other(&at_face[f], d)?;
        let d3 = other(&at_vertex[emb.tail(d2)], d2)?;
        d = d3;
        if d == first {
            break;
        }
        if noose.len() > bd.len() {
            return None;
        }
    }
    (2 * noose.len() == bd.len()).then_some(noose)
}

/// Rooted tree whose leaves are the arcs. Node 0.. are internal ids; files
/// use 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScDecomposition {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    leaf_arc: Vec<Option<usize>>,
    med: Vec<Vec<Vertex>>,
    noose: Vec<Noose>,
    root: usize,
}

impl ScDecomposition {
    /// Assembles a decomposition from per-node data. Children are ordered by
    /// id. Only the shape of the parent array is checked here; see
    /// [`validate_sc`] for everything else.
    pub fn new(
        parent: Vec<Option<usize>>,
        leaf_arc: Vec<Option<usize>>,
        med: Vec<Vec<Vertex>>,
        noose: Vec<Noose>,
    ) -> Result<Self> {
        let k = parent.len();
        if k == 0 || leaf_arc.len() != k || med.len() != k || noose.len() != k {
            return Err(Error::decomposition("node arrays disagree in length"));
        }
        let mut children = vec![Vec::new(); k];
        let mut roots = Vec::new();
        for (i, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(i),
                Some(p) if p >= k || p == i => {
                    return Err(Error::decomposition(format!("tree edge {}: bad parent", i + 1)))
                }
                Some(p) => children[p].push(i),
            }
        }
        if roots.len() != 1 {
            return Err(Error::decomposition(format!("expected one root, found {}", roots.len())));
        }
        Ok(ScDecomposition { parent, children, leaf_arc, med, noose, root: roots[0] })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn leaf_arc(&self, x: usize) -> Option<usize> {
        self.leaf_arc[x]
    }

    /// Middle set of the tree edge above `x`, in noose order.
    pub fn med(&self, x: usize) -> &[Vertex] {
        &self.med[x]
    }

    pub fn noose(&self, x: usize) -> &[(Vertex, usize)] {
        &self.noose[x]
    }

    pub fn width(&self) -> usize {
        self.med.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Children before parents; the root comes last.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            order.push(x);
            stack.extend(self.children[x].iter().rev());
        }
        order.reverse();
        order
    }

    /// Per node, the arcs on leaves below it (`out[x][a]`).
    pub fn arcs_below(&self, m: usize) -> Vec<Vec<bool>> {
        let mut below = vec![vec![false; m]; self.node_count()];
        for x in self.postorder() {
            if let Some(a) = self.leaf_arc[x] {
                if a < m {
                    below[x][a] = true;
                }
            }
            for &c in &self.children[x] {
                let child = below[c].clone();
                for (b, cb) in below[x].iter_mut().zip(child) {
                    *b |= cb;
                }
            }
        }
        below
    }
}

fn equal_up_to_rotation<T: PartialEq + Clone>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let rev: Vec<T> = b.iter().rev().cloned().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(i + s) % n]) || (0..n).all(|i| a[i] == rev[(i + s) % n]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    V(Vertex),
    F(usize),
}

fn tokens(noose: &[(Vertex, usize)]) -> Vec<Tok> {
    noose.iter().flat_map(|&(v, f)| [Tok::V(v), Tok::F(f)]).collect()
}

/// Checks `scd` against `g` and its embedding and returns the width. The
/// graph must be connected and bridgeless.
pub fn validate_sc(g: &DiGraph, emb: &Embedding, scd: &ScDecomposition) -> Result<usize> {
    let m = g.arc_count();
    let bad = |x: usize, msg: &str| Error::decomposition(format!("tree edge {}: {msg}", x + 1));
    if m == 0 {
        return Err(Error::decomposition("graph has no arcs"));
    }
    let k = scd.node_count();
    if k != 2 * m {
        return Err(Error::decomposition(format!("expected {} nodes for {m} arcs, found {k}", 2 * m)));
    }
    let root = scd.root();
    if scd.children(root).len() != 1 || scd.leaf_arc(root).is_some() {
        return Err(Error::decomposition("root must have exactly one child and no arc"));
    }
    let order = scd.postorder();
    if order.len() != k {
        return Err(Error::decomposition("tree is not connected"));
    }
    let mut leaf_for = vec![None; m];
    for x in 0..k {
        if x == root {
            continue;
        }
        match (scd.children(x).len(), scd.leaf_arc(x)) {
            (0, Some(a)) if a < m => {
                if leaf_for[a].is_some() {
                    return Err(bad(x, &format!("arc {} sits on two leaves", a + 1)));
                }
                leaf_for[a] = Some(x);
            }
            (0, _) => return Err(bad(x, "leaf without a valid arc")),
            (2, None) => {}
            _ => return Err(bad(x, "internal node must have two children and no arc")),
        }
    }
    if let Some(a) = leaf_for.iter().position(Option::is_none) {
        return Err(Error::decomposition(format!("arc {} has no leaf", a + 1)));
    }
    let below = scd.arcs_below(m);
    let top = scd.children(root)[0];
    for &x in &order {
        if x == root {
            continue;
        }
        let want = middle_set(g, &below[x]);
        let got: BTreeSet<Vertex> = scd.med(x).iter().copied().collect();
        if got.len() != scd.med(x).len() || got.iter().copied().ne(want.iter().copied()) {
            return Err(bad(x, &format!("middle set {:?} should be {:?}", scd.med(x), want)));
        }
        if x == top {
            if !scd.noose(x).is_empty() {
                return Err(bad(x, "the edge below the root carries no noose"));
            }
            continue;
        }
        let expect = noose_for(emb, &below[x]).ok_or_else(|| bad(x, "no noose separates this split"))?;
        if !equal_up_to_rotation(&tokens(&expect), &tokens(scd.noose(x))) {
            return Err(bad(x, "noose does not bound the arcs below"));
        }
        let along: Vec<Vertex> = scd.noose(x).iter().map(|&(v, _)| v).collect();
        if !equal_up_to_rotation(&along, scd.med(x)) {
            return Err(bad(x, "middle set is not listed in noose order"));
        }
        if let [c1, c2] = scd.children(x) {
            if let Some(v) = scd.med(x).iter().find(|v| !scd.med(*c1).contains(v) && !scd.med(*c2).contains(v)) {
                return Err(bad(x, &format!("vertex {v} missing from both child middle sets")));
            }
        }
    }
    Ok(scd.width())
}

/// Serialises in the sphere-cut file format (1-based node, arc and face ids).
pub fn write_sc(scd: &ScDecomposition, m: usize) -> String {
    let mut s = String::new();
    let k = scd.node_count();
    let _ = writeln!(s, "s sc {k} {} {m}", scd.width());
    for x in 0..k {
        let _ = writeln!(s, "t {} {}", x + 1, scd.parent(x).map_or(0, |p| p + 1));
    }
    for x in 0..k {
        if let Some(a) = scd.leaf_arc(x) {
            let _ = writeln!(s, "l {} {}", x + 1, a + 1);
        }
    }
    for x in 0..k {
        if x == scd.root() {
            continue;
        }
        let _ = write!(s, "d {}", x + 1);
        for v in scd.med(x) {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    for x in 0..k {
        if x == scd.root() {
            continue;
        }
        let _ = write!(s, "c {}", x + 1);
        for (v, f) in scd.noose(x) {
            let _ = write!(s, " {v} {}", f + 1);
        }
        s.push('\n');
    }
    s
}

pub fn parse_sc(text: &str) -> Result<ScDecomposition> {
    let mut header = None;
    let mut parent: Vec<Option<Option<usize>>> = Vec::new();
    let mut leaf_arc: Vec<Option<usize>> = Vec::new();
    let mut med: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut noose: Vec<Option<Noose>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap_or_default();
        if kind == "s" {
            if header.is_some() {
                return Err(Error::parse(ln, "second header"));
            }
            if tok.next() != Some("sc") {
                return Err(Error::parse(ln, "header must start with \"s sc\""));
            }
            let f = nums(ln, tok)?;
            if f.len() != 3 {
                return Err(Error::parse(ln, "header must be \"s sc <nodes> <width> <arcs>\""));
            }
            header = Some((f[0], f[1], f[2]));
            parent = vec![None; f[0]];
            leaf_arc = vec![None; f[0]];
            med = vec![None; f[0]];
            noose = vec![None; f[0]];
            continue;
        }
        let (k, _, m) = header.ok_or_else(|| Error::parse(ln, "data before header"))?;
        let f = nums(ln, tok)?;
        let node = *f.first().ok_or_else(|| Error::parse(ln, "missing node id"))?;
        if node == 0 || node > k {
            return Err(Error::parse(ln, format!("node {node} out of range")));
        }
        let x = node - 1;
        let rest = &f[1..];
        match kind {
            "t" => {
                if rest.len() != 1 || rest[0] > k {
                    return Err(Error::parse(ln, "tree line must be \"t <node> <parent or 0>\""));
                }
                if parent[x].is_some() {
                    return Err(Error::parse(ln, format!("node {node} has two tree lines")));
                }
                parent[x] = Some(rest[0].checked_sub(1));
            }
            "l" => {
                if rest.len() != 1 || rest[0] == 0 || rest[0] > m {
                    return Err(Error::parse(ln, "leaf line must be \"l <node> <arc>\""));
                }
                if leaf_arc[x].is_some() {
                    return Err(Error::parse(ln, format!("node {node} has two leaf lines")));
                }
                leaf_arc[x] = Some(rest[0] - 1);
            }
            "d" => {
                if med[x].is_some() {
                    return Err(Error::parse(ln, format!("node {node} has two middle-set lines")));
                }
                med[x] = Some(rest.to_vec());
            }
            "c" => {
                if rest.len() % 2 != 0 || rest.chunks(2).any(|p| p[1] == 0) {
                    return Err(Error::parse(ln, "noose line must alternate vertices and 1-based faces"));
                }
                if noose[x].is_some() {
                    return Err(Error::parse(ln, format!("node {node} has two noose lines")));
                }
                noose[x] = Some(rest.chunks(2).map(|p| (p[0], p[1] - 1)).collect());
            }
            other => return Err(Error::parse(ln, format!("unknown line type {other:?}"))),
        }
    }
    header.ok_or_else(|| Error::parse(0, "missing header"))?;
    let parent: Vec<Option<usize>> = parent
        .into_iter()
        .enumerate()
        .map(|(x, p)| p.ok_or_else(|| Error::parse(0, format!("node {} has no tree line", x + 1))))
        .collect::<Result<_>>()?;
    let med: Vec<Vec<Vertex>> = med.into_iter().map(Option::unwrap_or_default).collect();
    let noose: Vec<Noose> = noose.into_iter().map(Option::unwrap_or_default).collect();
    ScDecomposition::new(parent, leaf_arc, med, noose)
}

fn nums<'a>(ln: usize, tok: impl Iterator<Item = &'a str>) -> Result<Vec<usize>> {
    tok.map(|t| t.parse::<usize>().map_err(|_| Error::parse(ln, format!("expected an integer, found {t:?}")))).collect()
}
