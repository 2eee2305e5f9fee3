//! Exact computational algebra for cylinder (type B) braid groups and the
//! finite dimensional algebras they map onto.
//!
//! The crate is organized around a small exact-arithmetic kernel
//! ([`ring`]) on top of which the remaining modules are built:
//!
//! - [`braid`]: words in the cylinder braid group, free reduction, Markov
//!   moves, relation shuffles and the signed-permutation quotient.
//! - [`algebra`]: a generic rewriting engine that closes a finitely
//!   presented algebra into a basis with structure constants, instances
//!   for the Hecke, Birman-Wenzl and cylinder Birman-Wenzl algebras, and a
//!   linear solver for Markov trace functionals.
//! - [`tlb`]: the blob-diagram realization of the cylinder Temperley-Lieb
//!   algebra with diagrammatic multiplication and an annular trace.
//! - [`bratteli`]: pairs-of-partitions level combinatorics and path counts.
//! - [`baxter`]: spectral-parameter elements and exact verification of the
//!   Yang-Baxter and reflection equations.
//! - [`links`]: solid-torus link invariants evaluated through the traces.
//! - [`potts`]: the wall-coupled Potts partition function, by brute force
//!   and through the diagram-algebra transfer expression.

pub mod algebra;
pub mod baxter;
pub mod braid;
pub mod bratteli;
pub mod links;
pub mod potts;
pub mod ring;
pub mod tlb;

pub use ring::{LaurentPoly, RationalFn, Registry, Var};
