//! Hilbert series of Coulomb branches of 3d N=4 gauge theories, computed
//! exactly from the monopole formula, plus several independent routes to the
//! same numbers.

pub mod abelian;
pub mod lattice;
pub mod monopole;
pub mod motivic;
pub mod rootdata;
pub mod series;
pub mod symprod;
pub mod theory;
