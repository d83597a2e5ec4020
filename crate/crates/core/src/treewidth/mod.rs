//! Tree decompositions and the dynamic programs over them.

pub mod dp;
pub mod nice;
pub mod td;

pub use dp::{dfas_tables, dfvs_tables, solve_dfas_tw, solve_dfvs_tw, DfasTables, DfvsTables, MAX_DP_BAG};
pub use nice::{make_nice, NiceNode, NiceTreeDecomposition, NodeKind};
pub use td::{
    exact_treewidth, from_elimination_order, parse_td, parse_td_unchecked, td_exact_small, td_heuristic, write_td,
    TreeDecomposition, EXACT_TREEWIDTH_CAP,
};

use crate::digraph::DiGraph;
use crate::error::Result;

/// Nice decomposition of `g`: width-optimal when `g` is small enough for the
/// exact search, min-fill otherwise.
pub fn auto_nice(g: &DiGraph) -> Result<NiceTreeDecomposition> {
    let td = if g.vertex_count() <= EXACT_TREEWIDTH_CAP { td_exact_small(g)? } else { td_heuristic(g) };
    Ok(make_nice(&td, td.root()))
}
