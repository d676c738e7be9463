//! Quadrature, meshes and tabulated trial spaces.

mod basis;
mod mesh;
mod product;
mod quadrature;

pub use basis::{
    default_sine_subintervals, hermite_basis, hermite_quadrature_points, sine_basis, sine_basis_on,
    BasisKind, BasisTable, Boundary, Cell,
};
pub use mesh::Mesh;
pub use product::ProductBasis;
pub use quadrature::{gauss_legendre, QuadratureRule};

/// Quadrature points per subinterval used with sine bases.
pub const SINE_QUADRATURE_POINTS: usize = 8;
