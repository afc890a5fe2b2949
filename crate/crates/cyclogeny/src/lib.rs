//! Exact-arithmetic analysis of Weil-central isogeny classes of abelian
//! varieties over finite fields.
//!
//! A Weil-central isogeny class `(a, q)_g` is one whose Weil polynomial has
//! the shape `t^{2g} + a t^g + q^g`. This crate computes, in exact integer
//! arithmetic throughout:
//!
//! * point counts `N_n` and full Weil polynomials of every base-field
//!   extension, via companion-matrix powers and Newton's identities
//!   ([`central`]);
//! * cyclicity of the group of rational points, globally and prime by prime,
//!   from the criterion `gcd(f'(1), f(1)/rad(f(1))) = 1` ([`cyclicity`]);
//! * the growth set `g_l` and cyclic-growth set `c_l` of extension degrees
//!   where the l-part of the point count strictly increases, together with
//!   the proven lower-bound subsets and their containment verification
//!   ([`cyclicity`]);
//! * an independent brute-force oracle for dimension 1: exhaustive
//!   enumeration of short-Weierstrass curves over small prime fields and
//!   their rational-point group structures ([`ec`]).
//!
//! Supporting integer utilities (valuations, factorization with an explicit
//! completeness flag, multiplicative orders, prime-power decomposition) live
//! in [`arith`].

pub mod arith;
pub mod central;
mod companion;
pub mod cyclicity;
pub mod ec;
pub mod poly;

pub use arith::{FactorBudget, Factorization};
pub use central::WeilCentralClass;
pub use cyclicity::{Cyclicity, LocalReport, SetReport};
pub use poly::WeilPolynomial;
