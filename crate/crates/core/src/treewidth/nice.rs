use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::treewidth::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Nice tree decomposition with nodes stored children-first; the root is the
/// last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// The same tree as a plain decomposition (node ids preserved).
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self.nodes.iter().enumerate().flat_map(|(p, x)| x.children.iter().map(move |&c| (c, p))).collect();
        TreeDecomposition::new(bags, edges).expect("nice decomposition is a tree").with_root(self.root())
    }

    /// Checks node kinds against bags, children-first storage, empty root and
    /// leaf bags, and the decomposition axioms against `g`.
    pub fn validate(&self, g: &DiGraph) -> Result<usize> {
        if self.nodes.is_empty() {
            return Err(Error::decomposition("empty nice decomposition"));
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            let bad = |what: &str| Error::decomposition(format!("node {}: {what}", i + 1));
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("bag not sorted"));
            }
            for &c in &x.children {
                if c >= i {
                    return Err(bad("child stored after its parent"));
                }
                if has_parent[c] {
                    return Err(bad("child with two parents"));
                }
                has_parent[c] = true;
            }
            let child_bag = |k: usize| &self.nodes[x.children[k]].bag;
            match x.kind {
                NodeKind::Leaf => {
                    if !x.children.is_empty() || !x.bag.is_empty() {
                        return Err(bad("leaf must have no children and an empty bag"));
                    }
                }
                NodeKind::Introduce(v) => {
                    if x.children.len() != 1 {
                        return Err(bad("introduce node needs one child"));
                    }
                    let mut expect = child_bag(0).clone();
                    if expect.contains(&v) {
                        return Err(bad("introduced vertex already in child bag"));
                    }
                    expect.push(v);
                    expect.sort_unstable();
                    if expect != x.bag {
                        return Err(bad("introduce bag mismatch"));
                    }
                }
                NodeKind::Forget(v) => {
                    if x.children.len() != 1 {
                        return Err(bad("forget node needs one child"));
                    }
                    let expect: Vec<Vertex> = child_bag(0).iter().copied().filter(|&w| w != v).collect();
                    if !child_bag(0).contains(&v) || expect != x.bag {
                        return Err(bad("forget bag mismatch"));
                    }
                }
                NodeKind::Join => {
                    if x.children.len() != 2 || child_bag(0) != &x.bag || child_bag(1) != &x.bag {
                        return Err(bad("join needs two children with identical bags"));
                    }
                }
            }
        }
        if has_parent.iter().filter(|p| !**p).count() != 1 || has_parent[self.root()] {
            return Err(Error::decomposition("nice decomposition must have exactly one root, stored last"));
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return Err(Error::decomposition("root bag must be empty"));
        }
        self.to_tree_decomposition().validate(g)
    }
}

/// Converts `td`, rooted at `root`, into a nice decomposition of the same
/// width. Vertices are introduced and forgotten in increasing id order.
pub fn make_nice(td: &TreeDecomposition, root: usize) -> NiceTreeDecomposition {
    let adj = td.adjacency();
    let mut nodes: Vec<NiceNode> = Vec::new();

    // iterative post-order over the rooted tree
    let mut order = Vec::with_capacity(td.node_count());
    let mut parent = vec![usize::MAX; td.node_count()];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in adj[x].iter().rev() {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    // built[x] = nice node whose bag equals td bag x
    let mut built = vec![usize::MAX; td.node_count()];
    for &x in order.iter().rev() {
        let bag = &td.bags()[x];
        let children: Vec<usize> = adj[x].iter().copied().filter(|&y| y != parent[x]).collect();
        let mut branches = Vec::new();
        if children.is_empty() {
            let leaf = push(&mut nodes, NodeKind::Leaf, Vec::new(), vec![]);
            branches.push(retarget(&mut nodes, leaf, bag));
        }
        for &c in &children {
            branches.push(retarget(&mut nodes, built[c], bag));
        }
        let mut top = branches[0];
        for &b in &branches[1..] {
            top = push(&mut nodes, NodeKind::Join, bag.clone(), vec![top, b]);
        }
        built[x] = top;
    }
    retarget(&mut nodes, built[root], &[]);
    NiceTreeDecomposition { nodes }
}

fn push(nodes: &mut Vec<NiceNode>, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
    nodes.push(NiceNode { kind, bag, children });
    nodes.len() - 1
}

/// Chains forget then introduce nodes on top of `from` until its bag equals `target`.
fn retarget(nodes: &mut Vec<NiceNode>, from: usize, target: &[Vertex]) -> usize {
    let mut cur = from;
    let mut bag = nodes[from].bag.clone();
    let drop: Vec<Vertex> = bag.iter().copied().filter(|v| !target.contains(v)).collect();
    for v in drop {
        bag.retain(|&w| w != v);
        cur = push(nodes, NodeKind::Forget(v), bag.clone(), vec![cur]);
    }
    let add: Vec<Vertex> = target.iter().copied().filter(|v| !bag.contains(v)).collect();
    for v in add {
        bag.push(v);
        bag.sort_unstable();
        cur = push(nodes, NodeKind::Introduce(v), bag.clone(), vec![cur]);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> DiGraph {
        DiGraph::from_arcs(3, [(1, 2), (2, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn one_bag_triangle_becomes_a_chain() {
        let td = TreeDecomposition::new(vec![vec![1, 2, 3]], vec![]).unwrap();
        let nice = make_nice(&td, 0);
        let kinds: Vec<NodeKind> = nice.nodes().iter().map(|x| x.kind).collect();
        use NodeKind::*;
        assert_eq!(kinds, vec![Leaf, Introduce(1), Introduce(2), Introduce(3), Forget(1), Forget(2), Forget(3)]);
        assert_eq!(nice.validate(&triangle()).unwrap(), 2);
    }

    #[test]
    fn already_nice_input_is_reproduced() {
        let td = TreeDecomposition::new(vec![vec![1, 2, 3]], vec![]).unwrap();
        let nice = make_nice(&td, 0);
        let plain = nice.to_tree_decomposition();
        let again = make_nice(&plain, plain.root());
        assert_eq!(again.width(), nice.width());
        assert_eq!(again.nodes().len(), nice.nodes().len());
        assert_eq!(again, nice);
        again.validate(&triangle()).unwrap();
    }

    #[test]
    fn star_decomposition_with_joins() {
        // star: centre {1}, petals {1,2}, {1,3}, {1,4}
        let g = DiGraph::from_arcs(4, [(1, 2), (3, 1), (1, 4)]).unwrap();
        let td =
            TreeDecomposition::new(vec![vec![1], vec![1, 2], vec![1, 3], vec![1, 4]], vec![(0, 1), (0, 2), (0, 3)])
                .unwrap();
        td.validate(&g).unwrap();
        for root in 0..4 {
            let nice = make_nice(&td, root);
            assert_eq!(nice.validate(&g).unwrap(), 1);
            assert!(nice.nodes().iter().any(|x| x.kind == NodeKind::Join));
        }
    }

    #[test]
    fn validator_rejects_tampering() {
        let td = TreeDecomposition::new(vec![vec![1, 2, 3]], vec![]).unwrap();
        let mut nice = make_nice(&td, 0);
        nice.nodes[2].kind = NodeKind::Introduce(3);
        assert!(nice.validate(&triangle()).is_err());
    }
}
