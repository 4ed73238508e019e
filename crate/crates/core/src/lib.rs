#![no_std]
//! Exact intersection-theory toolkit: polynomial arithmetic, Gröbner bases,
//! Chow rings of smooth projective varieties presented by generators and
//! relations, characteristic-class calculus and a staged reconstruction of
//! the Chow ring of the moduli space of one-dimensional sheaves with
//! Hilbert polynomial 4m+1 on the projective plane.

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod chow;
pub mod exactpoly;
pub mod groebner;
pub mod linalg;
pub mod pipeline;
pub mod sheafcalc;

pub use error::{Error, Result};
