//! Exact-arithmetic obstruction calculator for exact submanifolds.
//!
//! A closed manifold is modelled by a finite-dimensional dg-algebra over
//! the rationals (for nilmanifolds, the Chevalley–Eilenberg model).  For
//! a closed direction form `η` the crate builds truncated formal
//! Lichnerowicz–de Rham complexes, decides `L`-jet deformability of
//! cohomology classes, and assembles the resulting obstructions to
//! representing a class by a closed exact submanifold.
//!
//! Everything is exact rational linear algebra: no floats, no tolerances,
//! and deterministic output for fixed input.
//!
//! The `examples/` directory is the guided tour; the `jet-obstruct`
//! binary exposes the same operations as subcommands.

pub mod cohomology;
pub mod deformability;
pub mod element;
pub mod error;
pub mod expr;
pub mod jet;
pub mod linalg;
pub mod model;
pub mod model_io;
pub mod monomial;
pub mod obstruction;
pub mod report;
pub mod scalar;

pub mod check;

pub use element::{Element, ModelId};
pub use error::{Error, Result};
pub use model::{DgaModel, ElementDegree, Generator, GeneratorSet, ModelMetadata};
pub use monomial::Monomial;
pub use scalar::Rational;
