//! Brute-force ground truth on small unitary groups.

pub mod datum;
pub mod group;
pub mod matrix;

pub use datum::{
    classify_matrix, datum_of, gl_datum, ClassFamily, ConjugacyDatum, DatumEntry, FactorKind,
    MatrixClassKind, Partition,
};
pub use group::{
    block_matrix, block_matrix_from, build_group, build_group_with, check_block_power,
    power_image_counts, BuildMethod, BuildOptions, ConjClass, FamilyCounts, GroupTable,
    HermitianForm, PowerImageCounts, DEFAULT_CLOSURE_BOUND, DEFAULT_SCAN_BOUND,
};
pub use matrix::{char_poly, companion, eval_poly, MatrixRep};
