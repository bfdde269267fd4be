//! Exact-arithmetic combinatorics of sigma-conjugacy classes and connected
//! components of affine Deligne-Lusztig varieties for unramified groups.
//!
//! The library is organized bottom-up:
//!
//! * [`linalg`]: integer/rational matrices, Hermite and Smith normal forms with
//!   certified transforms, lattice and quotient-structure utilities.
//! * [`rootdata`]: based root data with a finite-order automorphism, Weyl
//!   groups with word certificates, dominance, norms, closures, orthogonal
//!   decompositions of minuscule differences.
//! * [`pi1lat`]: fundamental-group lattices pi1(L), Galois invariants and
//!   coinvariants, transition maps between Levi subgroups, coset descriptors.
//! * [`isocrystal`]: decorated representatives b = p^lambda w, Newton and
//!   Kottwitz points, (super)basic tests, standard forms.
//! * [`hnstrat`]: admissible-set membership, Harder-Narasimhan classification
//!   (decomposable / irreducible / central), reduction to an indecomposable
//!   pair, central-factor splitting.
//! * [`connect`]: the finite pi1-indexing sets of minuscule cocharacters,
//!   adaptedness, move graphs, convexity chains and their refinement into
//!   immediate steps, coroot-generation checks, Weyl-orbit conjugators.
//! * [`pi0`]: component-set descriptors combining everything above, plus the
//!   transfer along the central quotient.
//! * [`latoracle`]: an independent brute-force lattice model over F_q((t))
//!   used to validate the predictions on small general linear groups.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals); all
//! reported structures are canonicalized so that equal mathematical objects
//! serialize to identical bytes.

pub mod error;
pub mod serial;
pub mod linalg;
pub mod rootdata;
pub mod pi1lat;
pub mod isocrystal;
pub mod hnstrat;
pub mod connect;
pub mod pi0;
pub mod latoracle;

pub use error::{Error, Result};

/// Arbitrary-precision integer used everywhere.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used everywhere.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for `Int`.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for `Rat`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer vector from `i64` slice.
pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Rational vector from an integer vector.
pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Exact equality of a rational vector with an integer vector.
pub fn rat_vec_is(v: &[Rat], w: &[Int]) -> bool {
    v.len() == w.len() && v.iter().zip(w).all(|(a, b)| a.is_integer() && a.numer() == b)
}

/// Downgrade a rational vector to integers, if exact.
pub fn rat_vec_to_int(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter()
        .map(|x| if x.is_integer() { Some(x.numer().clone()) } else { None })
        .collect()
}
