//! Exact computations with truncated polynomial algebras over small
//! finite fields: Hopf structure catalogs, nilpotent-tuple modules,
//! tensor decompositions, pi-point supports, and Green-ring tables.

pub mod algebra;
pub mod aut;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod field;
pub mod geometry;
pub mod greenring;
pub mod hopf;
pub mod linalg;
pub mod modrep;
pub mod par;
pub mod poly;
