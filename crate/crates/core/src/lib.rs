//! Finite fields, generalised dihedral groups, wreath products and the
//! homomorphism machinery used to separate generalised knot groups of the
//! square and granny analogues of torus knots.

pub mod arith;
pub mod ffield;
pub mod gdihedral;
pub mod group;
pub mod homsearch;
pub mod knotpres;
pub mod suites;
pub mod wreath;
