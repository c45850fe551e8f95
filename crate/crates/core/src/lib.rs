//! Semifields `S_f = K[t;σ]/K[t;σ]f` over finite fields and the analysis of
//! their multiplicative loops.

pub mod arith;
pub mod autgroup;
pub mod census;
pub mod error;
pub mod gf;
pub mod gfpoly;
pub mod linalg;
pub mod loops;
pub mod permgroup;
pub mod semifield;
pub mod skewpoly;

pub use error::{Error, Result};
pub use gf::{FieldAutomorphism, FieldCtx, FieldElement, TowerCtx};
pub use skewpoly::SkewPoly;
pub use semifield::{NucleiReport, SemifieldCtx};
