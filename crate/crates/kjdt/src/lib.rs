//! Jeu de taquin for increasing tableaux, with applications to the K-theory
//! Schubert calculus of Grassmannians.
//!
//! The library is organized around the combinatorial pipeline:
//!
//! - [`shapes`]: partitions, skew shapes, corners, and the Young lattice.
//! - [`tableau`]: increasing tableaux, reading words, shape sequences, and
//!   enumeration of `INC(nu/lambda)`.
//! - [`slides`]: the `switch` primitive, K-jdt and reverse slides, and
//!   K-rectification under arbitrary rectification orders.
//! - [`growth`]: K-theory growth diagrams, the local rules, diagram counting,
//!   and K-evacuation.
//! - [`infusion`]: the K-infusion involution on abutting tableau pairs.
//! - [`coeff`]: signed structure constants by counting rectifications to
//!   superstandard tableaux, the Pieri closed form, product expansions and
//!   product differences, and algebraic identity checks.
//! - [`grothendieck`]: an independent oracle via set-valued tableaux and
//!   Grothendieck polynomial arithmetic.

pub mod coeff;
pub mod error;
pub mod grothendieck;
pub mod growth;
pub mod infusion;
pub mod shapes;
pub mod slides;
pub mod tableau;

pub use error::Error;
pub use shapes::{BoxPos, Partition, Rectangle, SkewShape};
pub use tableau::IncreasingTableau;

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
