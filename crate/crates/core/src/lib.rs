//! Executable finite models of X-to-join representations.
//!
//! The crate works entirely with finite instances:
//!
//! * [`semilattice`]: meet-semilattices with bottom, covers, characters and
//!   spectra cut out by relation sets `X ⊆ E × P_fin(E)`.
//! * [`boolalg`]: finite Boolean algebras, semilattice representations and the
//!   Booleanization `B_X(E)` with its universal property.
//! * [`invsgp`]: finite inverse semigroups with zero given by tables.
//! * [`germoid`]: groupoids of germs of the natural action on a spectrum.
//! * [`bis`]: Boolean inverse semigroups of local bisections, congruences and
//!   additive morphisms.
//! * [`lcmhull`]: right LCM monoids, left inverse hulls and Zappa-Szép products.
//!
//! Inner loops that enumerate subsets or triples run on rayon when the
//! `parallel` feature is enabled (the default); see [`exec`].

pub mod bis;
pub mod bits;
pub mod boolalg;
pub mod dot;
mod error;
pub mod exec;
pub mod gen;
pub mod germoid;
pub mod invsgp;
pub mod lcmhull;
pub mod semilattice;
pub mod suite;

pub use error::{Error, Result};
pub use exec::Exec;
