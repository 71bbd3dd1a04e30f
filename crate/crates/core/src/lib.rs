//! Koszul homology, Massey products and the Golod property for rings
//! `S/I` with `I` a monomial ideal.

pub mod cli;
pub mod dga;
pub mod error;
pub mod field;
pub mod golod;
pub mod homology;
pub mod koszul;
pub mod linalg;
pub mod massey;
pub mod monomial;
pub mod search;
pub mod series;
pub mod simplicial;
pub mod taylor;

pub use error::{Error, Result};
