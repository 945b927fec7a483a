//! Exact Laurent polynomial arithmetic.
//!
//! `LaurentPolyOf<C>` is a dense Laurent polynomial `c_0·t^low + … + c_m·t^(low+m)`
//! in canonical form: the zero polynomial has an empty coefficient vector (and
//! `low = 0`), and otherwise the first and last coefficients are nonzero. The
//! integer instantiation [`crate::LaurentPoly`] carries the ring `Z[t^±1]` in
//! which all of the module algebra happens.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::roots::IntPoly;
use crate::{Coeff, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolyOf<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> LaurentPolyOf<C> {
    /// Builds from the exponent of the lowest listed term and its coefficients,
    /// trimming to canonical form.
    pub fn new(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPolyOf { low, coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        LaurentPolyOf { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Difference between highest and lowest exponent (0 for constants and zero).
    pub fn width(&self) -> i64 {
        if self.is_zero() { 0 } else { self.coeffs.len() as i64 - 1 }
    }

    pub fn coeff(&self, exp: i64) -> C {
        if self.is_zero() || exp < self.low || exp > self.high_exp() {
            C::zero()
        } else {
            self.coeffs[(exp - self.low) as usize].clone()
        }
    }

    /// Coefficients from `t^low` upward.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn trailing_coeff(&self) -> C {
        self.coeffs.first().cloned().unwrap_or_else(C::zero)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let strip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if strip > 0 {
            self.coeffs.drain(..strip);
            self.low += strip as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// Multiplication by the unit `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolyOf { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Self::new(low, coeffs)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPolyOf { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul_ref(b);
                coeffs[i + j] += &prod;
            }
        }
        Self::new(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// The conjugate `p(t^{-1})`.
    pub fn conj(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolyOf { low: -self.high_exp(), coeffs }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPolyOf<D> {
        LaurentPolyOf::new(self.low, self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Add for LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn add(self, rhs: Self) -> LaurentPolyOf<C> {
        self.add_ref(&rhs)
    }
}

impl<C: Coeff> Sub for LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn sub(self, rhs: Self) -> LaurentPolyOf<C> {
        self.sub_ref(&rhs)
    }
}

impl<C: Coeff> Mul for LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn mul(self, rhs: Self) -> LaurentPolyOf<C> {
        self.mul_ref(&rhs)
    }
}

impl<C: Coeff> Neg for LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn neg(self) -> LaurentPolyOf<C> {
        self.neg_ref()
    }
}

impl<C: Coeff> std::ops::AddAssign<&LaurentPolyOf<C>> for LaurentPolyOf<C> {
    fn add_assign(&mut self, rhs: &LaurentPolyOf<C>) {
        *self = self.add_ref(rhs);
    }
}

impl<C: Coeff> std::ops::SubAssign<&LaurentPolyOf<C>> for LaurentPolyOf<C> {
    fn sub_assign(&mut self, rhs: &LaurentPolyOf<C>) {
        *self = self.sub_ref(rhs);
    }
}

impl<C: Coeff> num_traits::Zero for LaurentPolyOf<C> {
    fn zero() -> Self {
        LaurentPolyOf::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPolyOf::is_zero(self)
    }
}

impl<C: Coeff> num_traits::One for LaurentPolyOf<C> {
    fn one() -> Self {
        LaurentPolyOf::one()
    }
}

impl<C: Coeff> Coeff for LaurentPolyOf<C> {
    fn mul_ref(&self, other: &Self) -> Self {
        LaurentPolyOf::mul_ref(self, other)
    }
}

impl crate::ExactDiv for LaurentPolyOf<BigInt> {
    fn exact_div(&self, d: &Self) -> Self {
        self.div_exact(d).expect("inexact Laurent polynomial division")
    }
}

impl<C: Coeff> Add for &LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn add(self, rhs: Self) -> LaurentPolyOf<C> {
        self.add_ref(rhs)
    }
}

impl<C: Coeff> Sub for &LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn sub(self, rhs: Self) -> LaurentPolyOf<C> {
        self.sub_ref(rhs)
    }
}

impl<C: Coeff> Mul for &LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn mul(self, rhs: Self) -> LaurentPolyOf<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coeff> Neg for &LaurentPolyOf<C> {
    type Output = LaurentPolyOf<C>;
    fn neg(self) -> LaurentPolyOf<C> {
        self.neg_ref()
    }
}

impl<C: Coeff> fmt::Debug for LaurentPolyOf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < self.coeffs.len() {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*t^{}", c, self.low + i as i64)?;
        }
        Ok(())
    }
}

type LaurentPoly = LaurentPolyOf<BigInt>;

impl LaurentPoly {
    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The canonical representative of the `≐`-class: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn unit_canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut p = self.shifted(-self.low);
        if p.leading_coeff().is_negative() {
            p = p.neg_ref();
        }
        p
    }

    /// Equality up to multiplication by units `±t^k`.
    pub fn doteq_equal(&self, other: &Self) -> bool {
        self.unit_canonical() == other.unit_canonical()
    }

    /// Evaluation at a nonzero rational point.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero(), "Laurent polynomial evaluated at 0");
        // Horner on the ordinary part, then the t^low factor.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        let mut unit = BigRational::one();
        let e = self.low.unsigned_abs() as usize;
        for _ in 0..e {
            if self.low >= 0 {
                unit *= x;
            } else {
                unit /= x;
            }
        }
        acc * unit
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    /// Ordinary-polynomial representative `t^{-low}·p` as a dense coefficient list.
    pub fn ordinary(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn from_ordinary(p: &IntPoly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    /// Exact division; `None` if `self` is not a multiple of `d` over `Z[t^±1]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = self.ordinary().div_exact(&d.ordinary())?;
        Some(Self::from_ordinary(&q).shifted(self.low - d.low))
    }

    /// Resultant of the ordinary-polynomial representatives, as an absolute value.
    pub fn resultant(&self, other: &Self) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroResultant);
        }
        let f = self.ordinary();
        let g = other.ordinary();
        let m = f.degree();
        let n = g.degree();
        if m == 0 {
            return Ok(f.coeffs()[0].abs().pow(n as u32));
        }
        if n == 0 {
            return Ok(g.coeffs()[0].abs().pow(m as u32));
        }
        // Sylvester matrix: n shifted rows of f, then m shifted rows of g.
        let size = m + n;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        let det = crate::matrix::Matrix::from_rows(rows).det();
        Ok(det.abs())
    }

    /// Rewrites a `≐`-palindromic polynomial in the variable `x = t + t^{-1}`.
    ///
    /// Returns `q` with `q(t + t^{-1}) ≐ t^{-d}·p(t)`; unit-circle roots of `p`
    /// other than `t = ±1` correspond bijectively (conjugate pairs collapsing)
    /// to roots of `q` in the open interval `(-2, 2)`. Factors of `t ∓ 1` are
    /// divided out first: their images `x = ±2` sit on the window boundary.
    pub fn symmetric_reduce(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::NotPalindromic);
        }
        let mut r = self.ordinary();
        let rev = r.reversed();
        if rev != r && rev != r.neg() {
            return Err(Error::NotPalindromic);
        }
        let one = BigRational::one();
        let minus_one = -BigRational::one();
        let t_minus_1 = IntPoly::from_i64(&[-1, 1]);
        let t_plus_1 = IntPoly::from_i64(&[1, 1]);
        while r.degree() > 0 && r.eval_rat(&one).is_zero() {
            r = r.div_exact(&t_minus_1).expect("root at 1 divides");
        }
        while r.degree() > 0 && r.eval_rat(&minus_one).is_zero() {
            r = r.div_exact(&t_plus_1).expect("root at -1 divides");
        }
        if r.reversed() != r || r.degree() % 2 != 0 {
            return Err(Error::NotPalindromic);
        }
        let d = r.degree() / 2;
        // t^j + t^{-j} = C_j(x), with C_0 = 2, C_1 = x, C_{j+1} = x·C_j - C_{j-1}.
        let x = IntPoly::from_i64(&[0, 1]);
        let mut c_prev = IntPoly::from_i64(&[2]);
        let mut c_cur = x.clone();
        let mut q = IntPoly::new(vec![r.coeffs()[d].clone()]);
        for j in 1..=d {
            q = q.add(&c_cur.scale(&r.coeffs()[d + j]));
            let next = x.mul(&c_cur).sub(&c_prev);
            c_prev = std::mem::replace(&mut c_cur, next);
        }
        Ok(q)
    }

    /// Renders in the text form `c*t^k ± …` with descending exponents.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.low + i as i64;
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            let coeff_part = if mag.is_one() && exp != 0 { String::new() } else { mag.to_string() };
            let t_part = match exp {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", exp),
            };
            out.push_str(&coeff_part);
            if !coeff_part.is_empty() && !t_part.is_empty() {
                out.push('*');
            }
            out.push_str(&t_part);
        }
        out
    }

    /// Parses the text form accepted by [`LaurentPoly::to_text`]; terms in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut acc = Self::zero();
        while pos < bytes.len() {
            let mut sign = 1i64;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            if pos >= bytes.len() {
                return Err(Error::Parse("trailing sign".into()));
            }
            let mut coeff: Option<BigInt> = None;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos > start {
                let v: BigInt = s[start..pos].parse().map_err(|_| Error::Parse("bad integer".into()))?;
                coeff = Some(v);
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err(Error::Parse("expected t after '*'".into()));
                }
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let mut esign = 1i64;
                    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                        if bytes[pos] == b'-' {
                            esign = -1;
                        }
                        pos += 1;
                    }
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == estart {
                        return Err(Error::Parse("missing exponent".into()));
                    }
                    let e: i64 = s[estart..pos].parse().map_err(|_| Error::Parse("bad exponent".into()))?;
                    exp = esign * e;
                }
            } else if coeff.is_none() {
                return Err(Error::Parse(format!("unexpected character at {pos}")));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * BigInt::from(sign);
            acc = acc.add_ref(&Self::monomial(c, exp));
        }
        Ok(acc)
    }

    pub fn to_rational(&self) -> LaurentPolyOf<BigRational> {
        self.map(|c| BigRational::from(c.clone()))
    }
}

impl LaurentPolyOf<BigRational> {
    /// Clears denominators, returning the primitive integer polynomial and the
    /// rational factor taking it back to `self`.
    pub fn clear_denominators(&self) -> (LaurentPoly, BigRational) {
        if self.is_zero() {
            return (LaurentPoly::zero(), BigRational::one());
        }
        let mut den = BigInt::one();
        for c in self.coeffs() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self.coeffs().iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
        let p = LaurentPoly::new(self.low_exp(), ints);
        let content = p.content();
        let prim = p.map(|c| c / &content);
        (prim, BigRational::new(content, den))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64(low, coeffs)
    }

    #[test]
    fn mul_matches_paper_product() {
        // (t-2)(2t-1) = 2t^2 - 5t + 2
        let p = lp(0, &[-2, 1]);
        let q = lp(0, &[-1, 2]);
        assert_eq!(&p * &q, lp(0, &[2, -5, 2]));
    }

    #[test]
    fn ring_identities() {
        let p = lp(-1, &[3, 0, -2]);
        assert_eq!(&p * &LaurentPoly::zero(), LaurentPoly::zero());
        assert_eq!(&p * &LaurentPoly::one(), p);
        assert_eq!(p.width(), 2);
    }

    #[test]
    fn mul_with_negative_exponents() {
        // (t^-1 - 2)·t = 1 - 2t
        let p = lp(-1, &[1, -2]);
        assert_eq!(&p * &LaurentPoly::t(), lp(0, &[1, -2]));
    }

    #[test]
    fn width_additive() {
        let p = lp(-2, &[1, 1, 7]);
        let q = lp(1, &[-3, 0, 0, 5]);
        assert_eq!((&p * &q).width(), p.width() + q.width());
    }

    #[test]
    fn doteq_examples() {
        let d = lp(0, &[2, -5, 2]);
        let neg_shift = lp(-1, &[-2, 5, -2]);
        assert!(d.doteq_equal(&neg_shift));
        let square = &lp(0, &[-2, 1]) * &lp(0, &[-2, 1]);
        assert!(!d.doteq_equal(&square));
        assert!(LaurentPoly::one().doteq_equal(&lp(5, &[-1])));
    }

    #[test]
    fn canonicalization_idempotent() {
        let p = lp(-3, &[-1, 4, 0, -2]);
        assert_eq!(p.unit_canonical(), p.unit_canonical().unit_canonical());
    }

    #[test]
    fn resultant_examples() {
        let t2 = lp(0, &[-2, 1]);
        let two_t1 = lp(0, &[-1, 2]);
        assert_eq!(t2.resultant(&two_t1).unwrap(), BigInt::from(3));
        assert_eq!(t2.resultant(&LaurentPoly::one()).unwrap(), BigInt::one());
        let tre = lp(0, &[1, -1, 1]);
        assert_eq!(tre.resultant(&t2).unwrap(), BigInt::from(3));
        assert!(LaurentPoly::zero().resultant(&t2).is_err());
    }

    #[test]
    fn symmetric_reduce_examples() {
        let tre = lp(0, &[1, -1, 1]);
        assert_eq!(tre.symmetric_reduce().unwrap(), IntPoly::from_i64(&[-1, 1]));
        let d = lp(0, &[2, -5, 2]);
        assert_eq!(d.symmetric_reduce().unwrap(), IntPoly::from_i64(&[-5, 2]));
        assert_eq!(LaurentPoly::one().symmetric_reduce().unwrap(), IntPoly::from_i64(&[1]));
        assert!(lp(0, &[1, 1, 0, 1]).symmetric_reduce().is_err());
    }

    #[test]
    fn symmetric_reduce_strips_unit_roots() {
        // (t-1)(t+1)(t^2-t+1) is anti-palindromic; roots at ±1 are stripped.
        let p = &(&lp(0, &[-1, 1]) * &lp(0, &[1, 1])) * &lp(0, &[1, -1, 1]);
        assert_eq!(p.symmetric_reduce().unwrap(), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn parse_print_round_trip() {
        for text in ["2*t^2-5*t+2", "t^-1-2", "0", "1", "-t", "t^3", "-4*t^-2+t"] {
            let p = LaurentPoly::parse(text).unwrap();
            assert_eq!(LaurentPoly::parse(&p.to_text()).unwrap(), p, "round trip for {text}");
        }
        assert_eq!(LaurentPoly::parse("2*t^2-5*t+2").unwrap(), lp(0, &[2, -5, 2]));
        assert_eq!(LaurentPoly::parse("t^-1-2").unwrap(), lp(-1, &[1, -2]));
    }

    #[test]
    fn conj_reverses() {
        let p = lp(-1, &[1, -2, 3]);
        assert_eq!(p.conj(), lp(-1, &[3, -2, 1]));
        assert_eq!(p.conj().conj(), p);
    }

    #[test]
    fn eval_rat_works() {
        let p = lp(-1, &[1, -2]); // t^-1 - 2
        let x = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(p.eval_rat(&x), BigRational::from(BigInt::from(0)));
    }
}
