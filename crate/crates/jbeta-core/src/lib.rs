//! Exact models of Bruhat-Tits buildings of classical groups through
//! self-dual lattice functions.
//!
//! The ground field is the rationals with a `p`-adic valuation. Every
//! lattice is an `o`-module of full rank in some rational vector space, so
//! all comparisons are exact equalities of canonical forms.
//!
//! Module map:
//!
//! * [`field_tower`]: the base field, quadratic layers, involutions and the
//!   equivariant linear forms used to descend hermitian forms.
//! * [`herm_forms`]: ε-hermitian forms, adjoints, Witt decompositions and
//!   dual lattices.
//! * [`latt_fun`]: lattices over the valuation ring, lattice functions,
//!   norms, barycenters and apartments.
//! * [`endo_filt`]: square lattice functions and Lie algebra filtrations.
//! * [`centralizer_embed`]: decomposition of a Lie algebra element and the
//!   embedding of the building of its centralizer.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod centralizer_embed;
pub mod endo_filt;
pub mod error;
pub mod field_tower;
pub mod herm_forms;
pub mod latt_fun;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
