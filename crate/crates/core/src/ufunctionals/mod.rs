//! L-functionals, their pairing with the coordinate algebra, and exact
//! linear algebra over the fraction field.

pub mod functional;
pub mod linsolve;
pub mod pairing;
pub mod span;

pub use functional::{Atom, Factor, FunctionalElement, GroupLike, Product, Sign};
pub use pairing::{PairingEngine, RepKind, SparseMat};
pub use span::{express_in_span, words_up_to, SpanResult};
