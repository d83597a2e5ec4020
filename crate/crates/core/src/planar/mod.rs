pub mod builder;
pub mod embedding;
pub mod scd;

pub use builder::{build_sc_heuristic, caterpillar, grid_rotation, grid_sc_decomposition, grid_vertex};
pub use embedding::{radial_graph, validate_embedding, Dart, Embedding, FaceReport, RadialGraph};
pub use scd::{middle_set, noose_for, parse_sc, validate_sc, write_sc, Noose, ScDecomposition};

use crate::digraph::{bridges_and_components, DiGraph, Piece};
use crate::error::Result;

/// A connected, bridgeless piece together with its inherited embedding.
#[derive(Debug, Clone)]
pub struct PlanarPiece {
    pub piece: Piece,
    pub embedding: Embedding,
}

/// Deletes bridges, splits into weak components and restricts the embedding
/// to each piece. Pieces without arcs are dropped.
pub fn preprocess_planar(g: &DiGraph, emb: &Embedding) -> Result<Vec<PlanarPiece>> {
    let mut out = Vec::new();
    for piece in bridges_and_components(g) {
        if piece.graph.arc_count() == 0 {
            continue;
        }
        let mut relabel = vec![0; g.id_bound() + 1];
        for (i, &v) in piece.mapping.iter().enumerate() {
            relabel[v] = i + 1;
        }
        let keep: Vec<Option<usize>> =
            g.arcs()
                .iter()
                .map(|&(u, v)| {
                    if relabel[u] == 0 || relabel[v] == 0 {
                        None
                    } else {
                        piece.graph.arc_index(relabel[u], relabel[v])
                    }
                })
                .collect();
        let embedding = emb.restrict(&piece.graph, &keep, &relabel)?;
        out.push(PlanarPiece { piece, embedding });
    }
    Ok(out)
}
