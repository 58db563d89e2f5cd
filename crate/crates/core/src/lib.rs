//! Exact computations in lattice vertex operator algebras of rank at most
//! three: Fock-space arithmetic, vertex operators, conformal vectors,
//! automorphisms, characters and highest-weight censuses.

pub mod autos;
pub mod chars;
pub mod conformal;
pub mod error;
pub mod fock;
pub mod hwv;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod vertex;

use num_rational::Ratio;

pub use chars::{QSeries, Sign};
pub use error::{Error, Result};
pub use fock::{FockElement, FockMonomial};
pub use lattice::{Coset, Lattice, LatticeVector, NamedLattice};
pub use scalar::{Coord, Scalar};

/// Default exact scalar.
pub type Q = Ratio<i128>;
/// Fock-space element over [`Q`].
pub type Element = FockElement<Q>;
/// q-series over [`Q`].
pub type Series = QSeries<Q>;
