use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};

/// A dart is one direction of an arc slot: dart `2a` runs tail to head of arc
/// `a`, dart `2a+1` runs head to tail.
pub type Dart = usize;

pub fn arc_of(d: Dart) -> usize {
    d / 2
}

pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

/// Combinatorial embedding: a clockwise rotation of darts around every
/// vertex, together with the faces it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    ends: Vec<(Vertex, Vertex)>,
    rotation: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
}

impl Embedding {
    /// Builds and checks an embedding from dart rotations indexed by vertex id.
    /// Every dart must occur exactly once, at its tail, and each weak component
    /// must satisfy Euler's formula for the sphere.
    pub fn from_darts(g: &DiGraph, rotation: Vec<Vec<Dart>>) -> Result<Embedding> {
        let n = g.id_bound();
        let m = g.arc_count();
        let mut rotation = rotation;
        if rotation.len() > n + 1 {
            return Err(Error::invalid("rotation lists a vertex beyond the id bound"));
        }
        rotation.resize(n + 1, Vec::new());
        let ends: Vec<(Vertex, Vertex)> = g.arcs().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        let mut rot_pos = vec![usize::MAX; 2 * m];
        for (v, darts) in rotation.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d >= 2 * m {
                    return Err(Error::invalid(format!("vertex {v}: dangling slot {d}")));
                }
                if ends[d].0 != v {
                    return Err(Error::invalid(format!(
                        "vertex {v}: slot of arc {} does not leave {v}",
                        arc_of(d) + 1
                    )));
                }
                if rot_pos[d] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v}: slot of arc {} repeated", arc_of(d) + 1)));
                }
                rot_pos[d] = i;
            }
        }
        if let Some(d) = rot_pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::invalid(format!("arc {} is missing from the rotation at {}", arc_of(d) + 1, ends[d].0)));
        }
        let mut emb = Embedding { ends, rotation, rot_pos, face_of: vec![usize::MAX; 2 * m], faces: Vec::new() };
        for d in 0..2 * m {
            if emb.face_of[d] != usize::MAX {
                continue;
            }
            let id = emb.faces.len();
            let mut walk = Vec::new();
            let mut e = d;
            while emb.face_of[e] == usize::MAX {
                emb.face_of[e] = id;
                walk.push(e);
                e = emb.next_in_face(e);
            }
            emb.faces.push(walk);
        }
        emb.check_euler(g)?;
        Ok(emb)
    }

    /// Builds an embedding from clockwise neighbour lists as stored in graph
    /// files. The k-th occurrence of `w` around `v` is the k-th arc between
    /// `v` and `w`, counted by increasing arc index when `v < w` and by
    /// decreasing index otherwise.
    pub fn from_neighbors(g: &DiGraph, neighbors: &[Vec<Vertex>]) -> Result<Embedding> {
        let n = g.id_bound();
        let mut rotation = vec![Vec::new(); n + 1];
        for (v, nb) in neighbors.iter().enumerate() {
            if nb.is_empty() {
                continue;
            }
            if v == 0 || v > n {
                return Err(Error::invalid(format!("rotation for unknown vertex {v}")));
            }
            let mut used: Vec<(Vertex, usize)> = Vec::new();
            for &w in nb {
                let mut between: Vec<Dart> = g
                    .arcs()
                    .iter()
                    .enumerate()
                    .filter_map(|(a, &(x, y))| {
                        if (x, y) == (v, w) {
                            Some(2 * a)
                        } else if (x, y) == (w, v) {
                            Some(2 * a + 1)
                        } else {
                            None
                        }
                    })
                    .collect();
                if v > w {
                    between.reverse();
                }
                let k = used.iter().filter(|&&(x, _)| x == w).count();
                used.push((w, k));
                let d = *between.get(k).ok_or_else(|| {
                    Error::invalid(format!("vertex {v}: neighbour {w} listed without a matching arc"))
                })?;
                rotation[v].push(d);
            }
        }
        Embedding::from_darts(g, rotation)
    }

    /// Clockwise neighbour lists in the file convention.
    pub fn neighbor_lists(&self) -> Vec<Vec<Vertex>> {
        self.rotation.iter().map(|ds| ds.iter().map(|&d| self.ends[d].1).collect()).collect()
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        self.rotation.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dart_count(&self) -> usize {
        self.ends.len()
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        self.ends[d].0
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.ends[d].1
    }

    /// Clockwise successor of `d` around its tail.
    pub fn succ(&self, d: Dart) -> Dart {
        let r = &self.rotation[self.tail(d)];
        r[(self.rot_pos[d] + 1) % r.len()]
    }

    /// Clockwise predecessor of `d` around its tail.
    pub fn pred(&self, d: Dart) -> Dart {
        let r = &self.rotation[self.tail(d)];
        r[(self.rot_pos[d] + r.len() - 1) % r.len()]
    }

    /// The dart following `d` along its face.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.succ(rev(d))
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face ids are 0-based, numbered by smallest dart.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    /// Darts of face `f` in walk order, starting from its smallest dart.
    pub fn face(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    /// Vertices on the boundary of face `f`, sorted.
    pub fn face_vertices(&self, f: usize) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.faces[f].iter().map(|&d| self.tail(d)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Corner of `d`: the angle at `tail(d)` between `pred(d)` and `d`, which
    /// lies in `face_of(d)`. One radial edge per corner.
    pub fn corner(&self, d: Dart) -> (Vertex, usize) {
        (self.tail(d), self.face_of[d])
    }

    /// Edges of the radial graph, one per dart.
    pub fn radial_edges(&self) -> Vec<(Vertex, usize)> {
        (0..self.dart_count()).map(|d| self.corner(d)).collect()
    }

    fn check_euler(&self, g: &DiGraph) -> Result<()> {
        for comp in g.weak_components() {
            let mut arcs = 0;
            let mut faces = std::collections::BTreeSet::new();
            for &v in &comp {
                for &d in &self.rotation[v] {
                    arcs += 1;
                    faces.insert(self.face_of[d]);
                }
            }
            let arcs = arcs / 2;
            let f = faces.len().max(1);
            if comp.len() + f != arcs + 2 {
                return Err(Error::invalid(format!(
                    "component of vertex {}: V - E + F = {} - {} + {} is not 2",
                    comp[0],
                    comp.len(),
                    arcs,
                    f
                )));
            }
        }
        Ok(())
    }

    /// The embedding of a subgraph that keeps only the listed arcs. `keep[a]`
    /// is the new index of arc `a`, or `None` if it is dropped; `relabel[v]`
    /// maps vertex ids (0 drops the vertex).
    pub fn restrict(&self, sub: &DiGraph, keep: &[Option<usize>], relabel: &[Vertex]) -> Result<Embedding> {
        let mut rotation = vec![Vec::new(); sub.id_bound() + 1];
        for (v, darts) in self.rotation.iter().enumerate() {
            let nv = relabel.get(v).copied().unwrap_or(0);
            if nv == 0 {
                continue;
            }
            for &d in darts {
                if let Some(na) = keep[arc_of(d)] {
                    let forward = sub.arcs()[na].0 == nv;
                    rotation[nv].push(if forward { 2 * na } else { 2 * na + 1 });
                }
            }
        }
        Embedding::from_darts(sub, rotation)
    }
}

/// Bipartite vertex/face incidence graph, one edge per corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialGraph {
    pub vertex_count: usize,
    pub face_count: usize,
    /// `(vertex, face)` per corner, indexed by dart.
    pub edges: Vec<(Vertex, usize)>,
}

pub fn radial_graph(g: &DiGraph, emb: &Embedding) -> RadialGraph {
    RadialGraph { vertex_count: g.vertex_count(), face_count: emb.face_count(), edges: emb.radial_edges() }
}

/// Face summary returned by [`validate_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReport {
    pub face_count: usize,
    /// Boundary vertices per face, sorted.
    pub faces: Vec<Vec<Vertex>>,
}

/// Checks a neighbour-list rotation against `g` and reports its faces.
pub fn validate_embedding(g: &DiGraph, neighbors: &[Vec<Vertex>]) -> Result<FaceReport> {
    let emb = Embedding::from_neighbors(g, neighbors)?;
    Ok(FaceReport {
        face_count: emb.face_count(),
        faces: (0..emb.face_count()).map(|f| emb.face_vertices(f)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (DiGraph, Vec<Vec<Vertex>>) {
        // 1 2
        // 3 4
        let g = DiGraph::from_arcs(4, [(1, 2), (2, 4), (4, 3), (3, 1)]).unwrap();
        let rot = vec![vec![], vec![2, 3], vec![4, 1], vec![1, 4], vec![3, 2]];
        (g, rot)
    }

    #[test]
    fn four_cycle_has_two_faces() {
        let (g, rot) = square();
        let rep = validate_embedding(&g, &rot).unwrap();
        assert_eq!(rep.face_count, 2);
        assert_eq!(rep.faces, vec![vec![1, 2, 3, 4], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn bigon_from_antiparallel_pair() {
        let g = DiGraph::from_arcs(2, [(1, 2), (2, 1)]).unwrap();
        let emb = Embedding::from_neighbors(&g, &[vec![], vec![2, 2], vec![1, 1]]).unwrap();
        assert_eq!(emb.face_count(), 2);
        assert!(emb.face(0).len() == 2 && emb.face(1).len() == 2);
    }

    #[test]
    fn k4_faces() {
        let g = DiGraph::from_arcs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)]).unwrap();
        // 1 in the centre of triangle 2-3-4
        let rot = vec![vec![], vec![2, 3, 4], vec![1, 4, 3], vec![1, 2, 4], vec![1, 3, 2]];
        let rep = validate_embedding(&g, &rot).unwrap();
        assert_eq!(rep.face_count, 4);
        assert!(rep.faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        let g = DiGraph::from_arcs(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)]).unwrap();
        let rot = vec![vec![], vec![2, 3, 4], vec![1, 3, 4], vec![1, 2, 4], vec![1, 3, 2]];
        assert!(validate_embedding(&g, &rot).is_err());
    }

    #[test]
    fn dangling_and_missing_slots() {
        let (g, mut rot) = square();
        rot[1].push(4);
        assert!(validate_embedding(&g, &rot).is_err());
        let (g, mut rot) = square();
        rot[1].pop();
        assert!(validate_embedding(&g, &rot).is_err());
    }

    #[test]
    fn isolated_vertex_counts_one_face() {
        let g = DiGraph::from_arcs(3, [(1, 2), (2, 1)]).unwrap();
        let emb = Embedding::from_neighbors(&g, &[vec![], vec![2, 2], vec![1, 1], vec![]]).unwrap();
        assert_eq!(emb.face_count(), 2);
    }

    #[test]
    fn radial_graph_of_three_by_three_grid() {
        let mut g = DiGraph::new(9);
        let mut rot = vec![Vec::new(); 10];
        for r in 0..3 {
            for c in 0..3 {
                let v = 3 * r + c + 1;
                if c < 2 {
                    g.add_arc(v, v + 1).unwrap();
                }
                if r < 2 {
                    g.add_arc(v, v + 3).unwrap();
                }
                if r > 0 {
                    rot[v].push(v - 3);
                }
                if c < 2 {
                    rot[v].push(v + 1);
                }
                if r < 2 {
                    rot[v].push(v + 3);
                }
                if c > 0 {
                    rot[v].push(v - 1);
                }
            }
        }
        let emb = Embedding::from_neighbors(&g, &rot).unwrap();
        let rg = radial_graph(&g, &emb);
        assert_eq!((rg.vertex_count, rg.face_count, rg.edges.len()), (9, 5, 24));
    }

    #[test]
    fn face_walk_follows_rotation() {
        let (g, rot) = square();
        let emb = Embedding::from_neighbors(&g, &rot).unwrap();
        for d in 0..emb.dart_count() {
            let e = emb.next_in_face(d);
            assert_eq!(emb.tail(e), emb.head(d));
            assert_eq!(emb.face_of(e), emb.face_of(d));
        }
        assert_eq!(emb.radial_edges().len(), 8);
    }
}
