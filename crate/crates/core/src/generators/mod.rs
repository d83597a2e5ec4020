//! Seeded instance generators.

pub mod disk;
pub mod grid;
pub mod hardness;

pub use disk::{gen_disk_digraph, DiskInstance};
pub use grid::{gen_grid, gen_random_planar, gen_random_subgrid, GridInstance, PlanarInstance};
pub use hardness::{
    gen_3formula, gen_hitting_set, gen_structured_2formula, or_gadget, reduce_2formula_to_dfvs,
    reduce_3formula_to_2formula, reduce_hs_to_3formula, HittingSetInstance, OrGadget, PermConstraint, PermFormula,
    ReductionOutput, StructuredFormula,
};
