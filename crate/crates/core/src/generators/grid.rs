use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::planar::{grid_sc_decomposition, grid_vertex, Embedding, ScDecomposition};

/// Oriented `rows x cols` grid with its standard drawing and caterpillar
/// sphere-cut decomposition.
#[derive(Debug, Clone)]
pub struct GridInstance {
    pub rows: usize,
    pub cols: usize,
    pub graph: DiGraph,
    pub embedding: Embedding,
    pub scd: ScDecomposition,
}

/// A connected, bridgeless plane digraph.
#[derive(Debug, Clone)]
pub struct PlanarInstance {
    pub graph: DiGraph,
    pub embedding: Embedding,
}

/// Undirected edges of the grid, horizontal before vertical per cell.
fn grid_edges(rows: usize, cols: usize) -> Vec<(Vertex, Vertex)> {
    let mut e = Vec::new();
    for r in 1..=rows {
        for c in 1..=cols {
            if c < cols {
                e.push((grid_vertex(cols, r, c), grid_vertex(cols, r, c + 1)));
            }
            if r < rows {
                e.push((grid_vertex(cols, r, c), grid_vertex(cols, r + 1, c)));
            }
        }
    }
    e
}

/// Orients each edge and lays out the darts in grid rotation order. An
/// antiparallel pair is drawn as a bigon, lower arc index first clockwise at
/// the smaller endpoint, matching the file convention.
fn orient(rows: usize, cols: usize, edges: &[(Vertex, Vertex)], rng: &mut ChaCha8Rng, both: bool) -> PlanarInstance {
    let n = rows * cols;
    let mut g = DiGraph::new(n);
    // arcs between each unordered pair, by increasing index
    let mut between = std::collections::BTreeMap::<(Vertex, Vertex), Vec<usize>>::new();
    for &(p, q) in edges {
        let roll = rng.gen_range(0..8);
        let arcs: Vec<(Vertex, Vertex)> = if both && roll == 0 {
            vec![(p, q), (q, p)]
        } else if roll % 2 == 0 {
            vec![(p, q)]
        } else {
            vec![(q, p)]
        };
        for (u, v) in arcs {
            between.entry((p.min(q), p.max(q))).or_default().push(g.arc_count());
            g.add_arc(u, v).expect("grid arcs are distinct");
        }
    }
    let mut rotation = vec![Vec::new(); n + 1];
    let around = |r: usize, c: usize| {
        let mut nb = Vec::new();
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
        nb
    };
    for r in 1..=rows {
        for c in 1..=cols {
            let v = grid_vertex(cols, r, c);
            for w in around(r, c) {
                let Some(list) = between.get(&(v.min(w), v.max(w))) else { continue };
                let mut list = list.clone();
                if v > w {
                    list.reverse();
                }
                for a in list {
                    let tail = g.arcs()[a].0;
                    rotation[v].push(if tail == v { 2 * a } else { 2 * a + 1 });
                }
            }
        }
    }
    let embedding = Embedding::from_darts(&g, rotation).expect("subgrid drawing is planar");
    PlanarInstance { graph: g, embedding }
}

/// Grid with every edge oriented by the seeded generator.
pub fn gen_grid(rows: usize, cols: usize, seed: u64) -> Result<GridInstance> {
    if rows < 2 || cols < 2 {
        return Err(Error::invalid("grid needs at least 2 rows and 2 columns"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = orient(rows, cols, &grid_edges(rows, cols), &mut rng, false);
    let scd = grid_sc_decomposition(&inst.graph, &inst.embedding, rows, cols)?;
    Ok(GridInstance { rows, cols, graph: inst.graph, embedding: inst.embedding, scd })
}

fn connected_bridgeless(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    let g = DiGraph::from_arcs(n, edges.iter().copied()).expect("edges are distinct");
    g.weak_components().len() == 1 && g.bridge_arcs().is_empty()
}

/// Random connected, bridgeless spanning subgraph of a random grid with
/// `2..=max_rows` rows and `2..=max_cols` columns, randomly oriented.
/// With `antiparallel`, about one edge in eight becomes a pair of opposite arcs.
pub fn gen_random_subgrid(max_rows: usize, max_cols: usize, antiparallel: bool, seed: u64) -> Result<PlanarInstance> {
    if max_rows < 2 || max_cols < 2 {
        return Err(Error::invalid("subgrid needs at least 2 rows and 2 columns"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.gen_range(2..=max_rows);
    let cols = rng.gen_range(2..=max_cols);
    let mut edges = grid_edges(rows, cols);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut rng);
    let mut removed = vec![false; edges.len()];
    for i in order {
        if rng.gen_bool(0.5) {
            removed[i] = true;
            let kept: Vec<(Vertex, Vertex)> =
                edges.iter().zip(&removed).filter(|(_, r)| !**r).map(|(e, _)| *e).collect();
            if !connected_bridgeless(rows * cols, &kept) {
                removed[i] = false;
            }
        }
    }
    let mut i = 0;
    edges.retain(|_| {
        i += 1;
        !removed[i - 1]
    });
    Ok(orient(rows, cols, &edges, &mut rng, antiparallel))
}

/// Random plane digraph on a subgrid of side at most `ceil(sqrt(n))`.
pub fn gen_random_planar(n: usize, seed: u64) -> Result<PlanarInstance> {
    let side = ((n as f64).sqrt().ceil() as usize).max(2);
    gen_random_subgrid(side, side, true, seed)
}
