//! Exact-arithmetic toolkit for studying how the geometric Picard rank of a
//! K3 surface over ℚ varies under reduction modulo primes.
//!
//! The crate computes, without any floating point:
//!
//! * quadratic residue symbols, square classes and factorisations ([`qnum`]),
//! * exact multivariate polynomials with a text grammar ([`mpoly`]),
//! * finite fields `F_{p^k}` and GF(2) linear algebra ([`gfield`]),
//! * point counts of quartic surfaces in P³ and double sextic covers of P²,
//!   with a persistent count cache ([`count`]),
//! * characteristic polynomials of Frobenius via the functional equation and
//!   the closed-form eigenvalue pairs of the two diagonal families ([`zeta`]),
//! * the determinant characters `Δ_{H²}`, `Δ_Pic` and the jump character,
//!   including the two character-determination algorithms and the jump-prime
//!   census ([`jumpchar`]),
//! * Macaulay resultants, divided discriminants of ternary quartics/sextics,
//!   the special-quartic factorisation and double-cover discriminants with
//!   their canonical sign ([`disc`]).
//!
//! All arithmetic is over unbounded integers and exact rationals. Hot loops
//! (point counting, big determinants) are data-parallel with `rayon` when the
//! default `parallel` feature is enabled; disabling it yields a fully
//! sequential build that returns bit-identical results.

pub mod count;
pub mod disc;
pub mod gfield;
pub mod jumpchar;
pub mod mpoly;
pub mod qnum;
pub mod zeta;
