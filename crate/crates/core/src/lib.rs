//! Formal degree of the discrete series of GL(md) over a p-adic field from the
//! formal degree of a cuspidal representation of GL(m), by exact iterated
//! residues of the Harish-Chandra mu-function, with a contour-quadrature oracle.

pub mod qcas;
pub mod coords;
pub mod model;
pub mod mu;
pub mod fault;
pub mod report;
pub mod resdata;
pub mod degree;
pub mod verify;
pub mod contour;

#[cfg(test)]
mod properties;
