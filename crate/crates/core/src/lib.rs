//! Subtraction-free arithmetic circuits for Schur-type polynomials and
//! spanning-tree generating functions.

pub mod arrangement;
pub mod batch;
pub mod circuit;
pub mod gap;
pub mod oracles;
pub mod schur;
pub mod semifield;
pub mod spanning;
pub mod verify;
