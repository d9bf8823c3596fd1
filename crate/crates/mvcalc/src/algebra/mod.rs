//! Exterior/Clifford algebra kernel: blades, multivectors, the four
//! products, reciprocal frames, and extensors.

mod blade;
mod extensor;
mod frame;
mod multivector;

pub use blade::{binomial, ordered_blades, BladeIndex, MAX_DIM};
pub use extensor::Extensor;
pub use frame::{coordinates, from_coordinates, reciprocal_basis, CoordKind, Frame};
pub use multivector::Multivector;
