//! Exact localization of motivic Chern classes on finite and affine flag varieties.

pub mod battery;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod extaffine;
pub mod hecke;
pub mod locaffine;
pub mod locfinite;
pub mod pipedream;
pub mod richardson;
pub mod ring;
pub mod subword;

pub use error::{Error, Result};
