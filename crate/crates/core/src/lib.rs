//! Exact computer algebra and certified numerics for genus-1 knots.
//!
//! Starting from a Seifert matrix (or a braid word for a derivative curve),
//! this crate computes the Alexander module and its lagrangians, the
//! Blanchfield pairing, certified Levine-Tristram signature functions and
//! their circle integrals, and assembles these into a count of homotopy
//! ribbon discs for the knot.
//!
//! All core arithmetic is exact: arbitrary-precision integers and rationals,
//! with interval enclosures (of controlled width) wherever transcendental
//! values enter. Floating point appears only in test oracles.

pub mod alexander;
pub mod blanchfield;
pub mod braid;
pub mod classify;
pub mod interval;
pub mod laurent;
pub mod matrix;
pub mod roots;
pub mod seifert;
pub mod signature;

mod hermitian;

pub use alexander::{alexander_polynomial, ext1_linear_pair, lagrangian_set, metabolizer_image,
                    module_type, Lagrangian, LagrangianFactor, ModElt, ModuleFacts, ModuleKind};
pub use blanchfield::{bl_pair, bl_vanishes_on, blanchfield_matrix, BlanchfieldForm,
                      FractionModRing, RatFunc};
pub use braid::{alexander_via_burau, braid_to_seifert, gamma_braid, BraidWord};
pub use classify::{classify_knot, kn_derivatives, ClassificationReport, DerivativeSpec,
                   DiscStatus, LagrangianVerdict};
pub use hermitian::{hermitian_signature_certified, HermitianIntervalMatrix};
pub use interval::{ComplexInterval, RatInterval};
pub use laurent::LaurentPolyOf;
pub use matrix::{finite_quotient_group, smith_normal_form, AbelianGroup, Matrix,
                 SmithDecomposition};
pub use roots::{isolate_real_roots, RootIsolation};
pub use seifert::{genus1_metabolizers, kn_seifert, Metabolizer, SeifertMatrix};
pub use signature::{rho0, signature_at, signature_function, Rho0Result, Rho0Sign,
                    SignatureFunction};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer-coefficient Laurent polynomial, the ambient ring for the module algebra.
pub type LaurentPoly = LaurentPolyOf<BigInt>;
/// Laurent polynomial with rational coefficients.
pub type QLaurentPoly = LaurentPolyOf<BigRational>;
/// Exact integer matrix.
pub type IntMatrix = Matrix<BigInt>;
/// Exact rational matrix.
pub type RatMatrix = Matrix<BigRational>;

/// Default starting precision (fractional bits) for certification loops.
pub const DEFAULT_PRECISION_BITS: u32 = 64;
/// Hard cap on certification precision.
pub const MAX_PRECISION_BITS: u32 = 4096;

/// Errors surfaced by the toolkit.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),
    #[error("closure is a link, not a knot")]
    LinkClosure,
    #[error("invalid braid word: {0}")]
    BadBraid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resultant undefined for zero polynomial")]
    ZeroResultant,
    #[error("not palindromic up to units")]
    NotPalindromic,
    #[error("Ext group infinite (shared factor)")]
    ExtInfinite,
    #[error("cannot certify (possible singularity)")]
    CannotCertify,
    #[error("at a jump point")]
    AtJumpPoint,
    #[error("generator search failed (bound: {0})")]
    GeneratorSearchFailed(String),
    #[error("metabolizer does not represent a lagrangian")]
    MetabolizerMismatch,
    #[error("sign undetermined at max precision (enclosure [{0}, {1}])")]
    SignUndetermined(String, String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Ring-like coefficient bound used by the generic polynomial and matrix types.
///
/// Implemented for anything with exact ring operations and equality, in
/// particular `BigInt`, `BigRational` and `f64` (the latter only feeds the
/// floating-point test oracles).
pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + num_traits::Zero
    + num_traits::One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
{
    fn mul_ref(&self, other: &Self) -> Self;
}

impl Coeff for BigInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for BigRational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for f64 {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Exact division in an integral domain; panics if the division is not exact.
///
/// Required by the fraction-free determinant; every division performed there
/// is exact by construction.
pub trait ExactDiv: Sized {
    fn exact_div(&self, d: &Self) -> Self;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        use num_integer::Integer;
        let (q, r) = self.div_rem(d);
        debug_assert!(r == BigInt::from(0), "inexact integer division");
        q
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}
