//! heapstone computes the (possibly empty) abelian heap of fibrewise
//! homotopy classes `[X, Y]^A_B` for finite simplicial inputs.
//!
//! The target is presented as a Moore-Postnikov tower of stages over the
//! base; each stage carries an algorithmically constructed weak Mal'cev
//! operation, which is what turns the class sets into abelian heaps and
//! lets the stage-by-stage computation run without ever choosing a
//! basepoint. A slower suspension-based route is included as a cross-check.
//!
//! The crate is organized bottom-up:
//!
//! - [`intlinalg`]: exact Smith normal form and integer linear solving,
//!   the arithmetic engine under everything else.
//! - [`abelian`]: finitely generated abelian groups as presentations,
//!   homomorphisms, cohomology of finite complexes.
//! - [`heap`]: abelian heaps as affine subsets of presented groups.
//! - [`simplicial`]: finite simplicial sets, products, fibered products,
//!   diagonal subspaces, prisms, cylinders, fibrewise suspension.
//! - [`em`]: Eilenberg-MacLane and path-space models via normalized
//!   cochains on standard simplices, cup and cup-1 products.
//! - [`complex`]: cochain complexes of simplicial pairs and their
//!   cohomology.
//! - [`stage`]: Moore-Postnikov stages, towers, lifting of maps and
//!   homotopies, the stability gate.
//! - [`malcev`]: weak Mal'cev operations on stages and the induced
//!   operation on homotopy classes.
//! - [`classes`]: the two top-level algorithms producing heaps of
//!   homotopy classes.
//! - [`fmt`]: the `heapstone-v1` text formats.
//! - [`runner`]: job execution shared by the CLI and the examples.
//!
//! See the crate examples for runnable entry points into each layer, and
//! the `heapstone` binary for the batch interface.

pub mod abelian;
pub mod classes;
pub mod complex;
pub mod em;
pub mod error;
pub mod fmt;
pub mod heap;
pub mod intlinalg;
pub mod malcev;
pub mod runner;
pub mod simplicial;
pub mod stage;

pub use error::{Error, Result};
