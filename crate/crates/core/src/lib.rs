//! Lines on the degree-(q+1) Fermat (Hermitian) surface over GF(q^2), the
//! skew-line graph, maximal-clique censuses with and without orbit pruning,
//! and the quadric construction of large skew sets.

pub mod clique;
pub mod field;
pub mod geometry;
pub mod graph;
mod linalg;
pub mod perm;
pub mod spread;

pub use field::{build_field, build_field_with_modulus, Elem, FieldError, FieldSpec};
pub use geometry::{
    enumerate_lines, line_on_surface, lines_meet, star_points, verify_gq, GeometryError,
    LineTable, ProjLine, ProjPoint, StarPointTable,
};
pub use graph::{build_skew_graph, common_neighbors, complement, GraphError, SkewGraph, VertexSet};

/// Index triple (L_0, L_{q+2}, L_{2q+4}) used as the initial skew triple of
/// the orbit search.
pub fn initial_triple(q: u64) -> [u16; 3] {
    [0, (q + 2) as u16, (2 * q + 4) as u16]
}
