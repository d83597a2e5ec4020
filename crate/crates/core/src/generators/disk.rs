use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{DiGraph, Vertex};

/// A digraph drawn in a closed disk; `boundary` lists the vertices on the
/// boundary circle in clockwise order.
#[derive(Debug, Clone)]
pub struct DiskInstance {
    pub graph: DiGraph,
    pub boundary: Vec<Vertex>,
}

fn triangulate(poly: &[Vertex], rng: &mut ChaCha8Rng, tris: &mut Vec<[Vertex; 3]>, edges: &mut Vec<(Vertex, Vertex)>) {
    if poly.len() < 3 {
        return;
    }
    let k = rng.gen_range(1..poly.len() - 1);
    let (a, b, apex) = (poly[0], poly[poly.len() - 1], poly[k]);
    tris.push([a, apex, b]);
    if k > 1 {
        edges.push((a, apex));
    }
    if k < poly.len() - 2 {
        edges.push((apex, b));
    }
    triangulate(&poly[..=k], rng, tris, edges);
    triangulate(&poly[k..], rng, tris, edges);
}

/// Polygon `1..=boundary` with a random triangulation and `interior`
/// vertices stacked into random triangles. Each edge of that drawing is kept
/// with probability `keep` and gets a random direction; one kept edge in
/// eight becomes an antiparallel pair.
pub fn gen_disk_digraph(boundary: usize, interior: usize, keep: f64, seed: u64) -> DiskInstance {
    assert!(boundary >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly: Vec<Vertex> = (1..=boundary).collect();
    let mut edges: Vec<(Vertex, Vertex)> = (1..boundary).map(|i| (i, i + 1)).collect();
    if boundary >= 3 {
        edges.push((boundary, 1));
    }
    let mut tris = Vec::new();
    triangulate(&poly, &mut rng, &mut tris, &mut edges);
    let n = boundary + interior;
    for v in boundary + 1..=n {
        if tris.is_empty() {
            let u = rng.gen_range(1..v);
            edges.push((u, v));
            continue;
        }
        let [a, b, c] = tris.swap_remove(rng.gen_range(0..tris.len()));
        edges.extend([(a, v), (b, v), (c, v)]);
        tris.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let mut g = DiGraph::new(n);
    for (p, q) in edges {
        if !rng.gen_bool(keep) {
            continue;
        }
        let arcs: &[(Vertex, Vertex)] = match rng.gen_range(0..8) {
            0 => &[(p, q), (q, p)],
            r if r % 2 == 0 => &[(p, q)],
            _ => &[(q, p)],
        };
        for &(u, v) in arcs {
            g.add_arc(u, v).expect("polygon vertices are in range");
        }
    }
    DiskInstance { graph: g, boundary: poly }
}
