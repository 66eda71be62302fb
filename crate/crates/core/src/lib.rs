//! M-th powers in finite unitary groups `U(n, q)`: polynomial counts,
//! exact generating functions, and a brute-force oracle on small groups.

pub mod arith;
pub mod counts;
pub mod error;
pub mod genfun;
pub mod gf;
pub mod oracle;
pub mod polyalg;
pub mod series;

pub use counts::CountRecord;
pub use error::{Error, Result};
pub use genfun::{centralizer_order, FactorCounts, SeriesKind, SeriesRequest, DEFAULT_TRUNCATION};
pub use gf::{FieldDesc, FieldElem, PrimePower};
pub use oracle::{
    build_group, ClassFamily, ConjugacyDatum, GroupTable, HermitianForm, MatrixClassKind,
    MatrixRep, PowerImageCounts,
};
pub use polyalg::{Poly, PolyClass, PolyRing};
pub use series::Series;
