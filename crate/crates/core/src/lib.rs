//! Exact algebra for equivariant deformations of ordinary curves.
//!
//! The crate is `no_std` with `alloc`. It provides finite fields and linear
//! algebra, the local cohomology of wild ramification modules, dual-number
//! lifts of local actions, Chebyshev-type matrix lifts over hull rings, the
//! global deformation-dimension formula, and graphs of groups for Mumford
//! curves.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod arith;
pub mod chebyshev;
pub mod cohomology;
pub mod deformation;
pub mod dual_lift;
pub mod error;
pub mod families;
pub mod field;
pub mod graph;
pub mod hull;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
pub use field::{element_of_order, make_field, ExtField, FieldElement};
pub use matrix::Matrix;
pub use ring::{Field, Rationals, Ring};
