//! The FRT coordinate Hopf algebras `O(G_q)` for G = GL, SL, O, Sp.

pub mod algebra;
pub mod group;
pub mod pbw;
pub mod rmatrix;

pub use algebra::{AlgebraElement, Letter, Monomial};
pub use group::{Family, GroupSpec};
pub use pbw::Pbw;
pub use rmatrix::RMatrix;
