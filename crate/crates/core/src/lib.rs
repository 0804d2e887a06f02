//! Invariants of GGS-groups: defining-tuple classification, circulant
//! linear algebra over F_p, self-similar tree automorphisms, a permutation
//! group engine for congruence quotients, closed-form index formulas and a
//! verifier that checks the formulas against brute force.

pub mod circulant;
pub mod cli;
pub mod error;
pub mod fplinalg;
pub mod formulas;
pub mod permgrp;
pub mod treeauto;
pub mod verify;
pub mod tuples;

pub use error::{Error, Result};
