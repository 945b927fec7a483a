//! Exact rational interval arithmetic and certified enclosures of points on
//! the unit circle.
//!
//! Interval endpoints are arbitrary-precision rationals, so the arithmetic
//! itself introduces no rounding: width comes only from genuinely
//! transcendental quantities (`π`, `cos`, `sin`), and shrinks monotonically as
//! the requested precision grows. `round_out` trades endpoint size for a
//! controlled width increase, which keeps elimination pipelines fast.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::LaurentPoly;

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl std::fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point in the interval, when uniform: `1`, `-1`, or `0`
    /// (exact zero); `None` while the interval straddles zero.
    pub fn certified_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            RatInterval { lo: BigRational::zero(), hi: m.hi }
        } else {
            m
        }
    }

    /// Division; the divisor must exclude zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.contains_zero(), "interval division through zero");
        let cands = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let r = BigRational::from(c.clone());
        let a = &self.lo * &r;
        let b = &self.hi * &r;
        if c.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn hull(&self, other: &Self) -> Self {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Outward rounding to endpoints with denominator `2^bits`; sound and keeps
    /// endpoint sizes bounded through long computations.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigRational::from(BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / scale.clone();
        let hi = (&self.hi * &scale).ceil() / scale;
        RatInterval { lo, hi }
    }
}

/// Rectangular complex interval enclosure.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexInterval {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: RatInterval) -> Self {
        ComplexInterval { re, im: RatInterval::zero() }
    }

    pub fn zero() -> Self {
        Self::real(RatInterval::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexInterval { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexInterval { re, im }
    }

    /// Enclosure of `|z|^2`.
    pub fn abs_sq(&self) -> RatInterval {
        self.re.square().add(&self.im.square())
    }

    /// Division by a real interval excluding zero.
    pub fn div_real(&self, d: &RatInterval) -> Self {
        ComplexInterval { re: self.re.div(d), im: self.im.div(d) }
    }

    /// Division by a complex interval whose `|·|^2` excludes zero.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.abs_sq();
        self.mul(&other.conj()).div_real(&d)
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexInterval { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

/// Dyadic interval `[lo, hi]·2^-F` on integer mantissas: the workhorse for
/// inner certification loops, where `BigRational`'s gcd normalization would
/// dominate. All operations round outward.
#[derive(Clone, Debug)]
pub(crate) struct Fix {
    pub(crate) lo: BigInt,
    pub(crate) hi: BigInt,
}

pub(crate) fn shr_floor(x: &BigInt, f: u64) -> BigInt {
    num_integer::Integer::div_floor(x, &(BigInt::one() << f))
}

pub(crate) fn shr_ceil(x: &BigInt, f: u64) -> BigInt {
    num_integer::Integer::div_ceil(x, &(BigInt::one() << f))
}

impl Fix {
    pub(crate) fn zero() -> Self {
        Fix { lo: BigInt::zero(), hi: BigInt::zero() }
    }

    pub(crate) fn from_int(n: i64, f: u64) -> Self {
        let v = BigInt::from(n) << f;
        Fix { lo: v.clone(), hi: v }
    }

    pub(crate) fn from_rat(r: &RatInterval, f: u64) -> Self {
        let scale = BigRational::from(BigInt::one() << f);
        Fix { lo: (&r.lo * &scale).floor().to_integer(), hi: (&r.hi * &scale).ceil().to_integer() }
    }

    pub(crate) fn to_rat(&self, f: u64) -> RatInterval {
        let scale = BigRational::from(BigInt::one() << f);
        RatInterval::new(
            BigRational::from(self.lo.clone()) / scale.clone(),
            BigRational::from(self.hi.clone()) / scale,
        )
    }

    pub(crate) fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub(crate) fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub(crate) fn add(&self, o: &Fix) -> Fix {
        Fix { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub(crate) fn sub(&self, o: &Fix) -> Fix {
        Fix { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub(crate) fn neg(&self) -> Fix {
        Fix { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    /// Product, rescaled back by `2^-F` with outward rounding.
    pub(crate) fn mul(&self, o: &Fix, f: u64) -> Fix {
        let c1 = &self.lo * &o.lo;
        let c2 = &self.lo * &o.hi;
        let c3 = &self.hi * &o.lo;
        let c4 = &self.hi * &o.hi;
        let lo = (&c1).min(&c2).min(&c3).min(&c4).clone();
        let hi = (&c1).max(&c2).max(&c3).max(&c4).clone();
        Fix { lo: shr_floor(&lo, f), hi: shr_ceil(&hi, f) }
    }

    pub(crate) fn square(&self, f: u64) -> Fix {
        let m = self.mul(self, f);
        if self.contains_zero() {
            Fix { lo: BigInt::zero(), hi: m.hi }
        } else {
            m
        }
    }

    /// Quotient at scale `F`; the divisor must exclude zero.
    pub(crate) fn div(&self, o: &Fix, f: u64) -> Fix {
        debug_assert!(!o.contains_zero());
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&self.lo, &self.hi] {
            let scaled = n << f;
            for d in [&o.lo, &o.hi] {
                let down = num_integer::Integer::div_floor(&scaled, d);
                let up = num_integer::Integer::div_ceil(&scaled, d);
                lo = Some(match lo {
                    Some(x) => x.min(down),
                    None => down,
                });
                hi = Some(match hi {
                    Some(x) => x.max(up),
                    None => up,
                });
            }
        }
        Fix { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Division by an exact positive integer, outward.
    pub(crate) fn div_uint(&self, d: &BigInt) -> Fix {
        debug_assert!(d.is_positive());
        Fix {
            lo: num_integer::Integer::div_floor(&self.lo, d),
            hi: num_integer::Integer::div_ceil(&self.hi, d),
        }
    }

    /// Multiplication by an exact rational `p/q` (`q > 0`), outward.
    pub(crate) fn mul_rat(&self, p: &BigInt, q: &BigInt) -> Fix {
        debug_assert!(q.is_positive());
        let a = &self.lo * p;
        let b = &self.hi * p;
        let (lo, hi) = if p.is_negative() { (b, a) } else { (a, b) };
        Fix {
            lo: num_integer::Integer::div_floor(&lo, q),
            hi: num_integer::Integer::div_ceil(&hi, q),
        }
    }
}

thread_local! {
    static PI_CACHE: RefCell<Option<(u32, RatInterval)>> = const { RefCell::new(None) };
}

/// Enclosure of `π` of width at most `2^-bits` (Machin's formula).
pub fn pi_interval(bits: u32) -> RatInterval {
    if let Some(hit) = PI_CACHE.with(|c| {
        c.borrow().as_ref().and_then(|(b, v)| if *b >= bits { Some(v.clone()) } else { None })
    }) {
        return hit;
    }
    let eps = pow2_inv(bits + 6);
    let a = arctan_inv_int(5, &eps);
    let b = arctan_inv_int(239, &eps);
    let pi = a.scale_int(&BigInt::from(16)).sub(&b.scale_int(&BigInt::from(4)));
    let pi = pi.round_out(bits + 4);
    PI_CACHE.with(|c| *c.borrow_mut() = Some((bits, pi.clone())));
    pi
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Alternating-series enclosure of `arctan(1/x)` for an integer `x ≥ 2`.
fn arctan_inv_int(x: i64, eps: &BigRational) -> RatInterval {
    let x = BigRational::from(BigInt::from(x));
    let x2 = &x * &x;
    let mut term = BigRational::one() / x;
    let mut acc = BigRational::zero();
    let mut k = 0u32;
    loop {
        let contrib = &term / BigRational::from(BigInt::from(2 * k as i64 + 1));
        if contrib < *eps {
            // |tail| ≤ first omitted term for this alternating series.
            return RatInterval::new(&acc - contrib.clone(), &acc + contrib);
        }
        if k % 2 == 0 {
            acc += contrib;
        } else {
            acc -= contrib;
        }
        term = term / &x2;
        k += 1;
    }
}

/// Certified enclosures of `(cos 2πs, sin 2πs)` with width at most `2^-bits`.
pub fn cos_sin_2pi(s: &BigRational, bits: u32) -> (RatInterval, RatInterval) {
    let one = BigRational::one();
    let mut u = s.clone() - s.floor();
    // Octant folding onto [0, 1/8].
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    let mut octant = 0u8;
    while u >= (BigRational::from(BigInt::from(octant as i64 + 1))) * eighth.clone() {
        octant += 1;
    }
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    // (reduced argument, cos source, cos sign, sin source, sin sign);
    // sources: 0 = cos(2πu'), 1 = sin(2πu').
    let (arg, cs, csign, ss, ssign): (BigRational, u8, i32, u8, i32) = match octant {
        0 => (u.clone(), 0, 1, 1, 1),
        1 => (&quarter - &u, 1, 1, 0, 1),
        2 => (&u - &quarter, 1, -1, 0, 1),
        3 => (&half - &u, 0, -1, 1, 1),
        4 => (&u - &half, 0, -1, 1, -1),
        5 => (&three_quarters - &u, 1, -1, 0, -1),
        6 => (&u - &three_quarters, 1, 1, 0, -1),
        _ => (&one - &u, 0, 1, 1, -1),
    };
    let _ = &mut u;
    let work = (bits + 12) as u64;
    let pi = Fix::from_rat(&pi_interval(bits + 12), work);
    // θ = 2π·u' in fixed point (u' = arg, exact rational ≥ 0).
    let two_num = arg.numer() * BigInt::from(2);
    let theta = pi.mul_rat(&two_num, arg.denom());
    let theta2 = theta.square(work);
    let eps = BigInt::from(8); // 8·2^-work < 2^-bits margin

    // cos θ and sin θ by alternating Taylor series with fixed-point terms.
    let mut cos_acc = Fix::from_int(1, work);
    let mut term = theta2.clone();
    let mut k = 1u64;
    let mut denom = BigInt::from(2); // (2k)!
    loop {
        let contrib = term.div_uint(&denom);
        if contrib.hi < eps {
            cos_acc = cos_acc.add(&Fix { lo: -contrib.hi.clone(), hi: contrib.hi });
            break;
        }
        if k % 2 == 1 {
            cos_acc = cos_acc.sub(&contrib);
        } else {
            cos_acc = cos_acc.add(&contrib);
        }
        k += 1;
        term = term.mul(&theta2, work);
        denom *= BigInt::from((2 * k - 1) * 2 * k);
    }

    let mut sin_acc = theta.clone();
    let mut term = theta2.mul(&theta, work);
    let mut k = 1u64;
    let mut denom = BigInt::from(6); // (2k+1)!
    loop {
        let contrib = term.div_uint(&denom);
        if contrib.hi < eps {
            sin_acc = sin_acc.add(&Fix { lo: -contrib.hi.clone(), hi: contrib.hi });
            break;
        }
        if k % 2 == 1 {
            sin_acc = sin_acc.sub(&contrib);
        } else {
            sin_acc = sin_acc.add(&contrib);
        }
        k += 1;
        term = term.mul(&theta2, work);
        denom *= BigInt::from(2 * k * (2 * k + 1));
    }

    let pick = |src: u8, sign: i32| -> RatInterval {
        let v = if src == 0 { cos_acc.clone() } else { sin_acc.clone() };
        let v = if sign < 0 { v.neg() } else { v };
        v.to_rat(work)
    };
    (pick(cs, csign), pick(ss, ssign))
}

/// Certified rational enclosure of `p(e^{2πis})`.
///
/// Widths shrink monotonically as `precision` grows; the real and imaginary
/// parts each have width at most `2^-precision`.
pub fn lp_eval_circle(p: &LaurentPoly, s: &BigRational, precision: u32) -> ComplexInterval {
    if p.is_zero() {
        return ComplexInterval::zero();
    }
    // Margin for summing |coeffs| many enclosures.
    let mut mag = BigInt::one();
    for c in p.coeffs() {
        mag += c.abs();
    }
    let margin = mag.bits() as u32 + 2;
    let work = precision + margin;
    let mut re = RatInterval::zero();
    let mut im = RatInterval::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = p.low_exp() + i as i64;
        let arg = s * BigRational::from(BigInt::from(k));
        let (ck, sk) = cos_sin_2pi(&arg, work);
        re = re.add(&ck.scale_int(c));
        im = im.add(&sk.scale_int(c));
    }
    ComplexInterval { re: re.round_out(precision + 2), im: im.round_out(precision + 2) }
}
