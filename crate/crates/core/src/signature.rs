//! Certified Levine-Tristram signature functions and their integrals over the
//! circle.
//!
//! The signature at `ω = e^{2πis}` is the signature of the Hermitian matrix
//! `(1-ω)V + (1-ω̄)Vᵀ`, certified through interval enclosures of `cos 2πs`
//! and `sin 2πs`. Jumps happen exactly at unit-circle roots of the Alexander
//! polynomial; these are isolated on the real line through the substitution
//! `x = t + t^{-1}` and transported to isolating rational intervals for
//! `s ∈ (0, 1)` by certified bisection on `2cos(2πs)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alexander::alexander_polynomial;
use crate::hermitian::{hermitian_signature_certified, HermitianIntervalMatrix};
use crate::interval::{cos_sin_2pi, ComplexInterval, RatInterval};
use crate::roots::{isolate_real_roots, IntPoly, RootIsolation};
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Interval Hermitian matrix `(1-ω)V + (1-ω̄)Vᵀ` at `ω = e^{2πis}`:
/// the diagonal is `2(1-cos 2πs)·V_ii` and the entry above the diagonal is
/// `(1-cos)·(V_ij + V_ji) + i·sin·(V_ji - V_ij)`.
fn hermitian_at(v: &SeifertMatrix, s: &BigRational, bits: u32) -> HermitianIntervalMatrix {
    let (c, sn) = cos_sin_2pi(s, bits);
    let one_minus_c = RatInterval::point(BigRational::one()).sub(&c);
    let m = v.matrix();
    HermitianIntervalMatrix::from_fn(
        v.size(),
        |i| one_minus_c.scale_int(&(&m[(i, i)] * BigInt::from(2))),
        |i, j| {
            let re = one_minus_c.scale_int(&(&m[(i, j)] + &m[(j, i)]));
            let im = sn.scale_int(&(&m[(j, i)] - &m[(i, j)]));
            ComplexInterval::new(re, im)
        },
    )
}

/// Cyclotomic polynomial `Φ_q`.
fn cyclotomic(q: u32) -> IntPoly {
    assert!(q >= 1);
    let mut num = vec![BigInt::zero(); q as usize + 1];
    num[0] = -BigInt::one();
    num[q as usize] = BigInt::one();
    let mut phi = IntPoly::new(num);
    for d in 1..q {
        if q % d == 0 {
            phi = phi.div_exact(&cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    phi
}

fn euler_phi(mut q: u64) -> u64 {
    let mut result = q;
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            while q % p == 0 {
                q /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if q > 1 {
        result -= result / q;
    }
    result
}

/// Exact test: is `e^{2πis}` a root of the palindromic part behind `reduced`?
/// `reduced` is the `x = t + t^{-1}` image of the Alexander polynomial, so
/// this holds iff the minimal polynomial of `2cos(2πs)` (degree `φ(q)/2`)
/// divides it; denominators with `φ(q) > 2·deg` are rejected outright.
fn is_jump_exact(reduced: &IntPoly, s: &BigRational) -> Result<bool> {
    let q = s.denom().clone();
    if q <= BigInt::from(2) {
        // ω = ±1 is never a root of a knot Alexander polynomial.
        return Ok(false);
    }
    let q_u64 = u64::try_from(&q)
        .map_err(|_| Error::Unsupported("jump test at an angle with a huge denominator".into()))?;
    if euler_phi(q_u64) > 2 * reduced.degree() as u64 {
        return Ok(false);
    }
    let phi = cyclotomic(q_u64 as u32);
    let phi_laurent = crate::LaurentPoly::from_ordinary(&phi);
    let minpoly = phi_laurent.symmetric_reduce().expect("cyclotomic polynomials are palindromic");
    let g = minpoly.gcd(reduced);
    Ok(g.degree() > 0)
}

/// Levine-Tristram signature at `ω = e^{2πis}`, `s ∈ (0, 1)` rational and not
/// a jump angle.
pub fn signature_at(v: &SeifertMatrix, s: &BigRational, start_bits: u32, max_bits: u32) -> Result<i64> {
    if !(s > &BigRational::zero() && s < &BigRational::one()) {
        return Err(Error::Unsupported(format!("signature angle s = {} outside (0, 1)", s)));
    }
    if v.size() == 0 {
        return Ok(0);
    }
    let delta = alexander_polynomial(v);
    let reduced = delta.symmetric_reduce()?;
    if !isolate_real_roots(&reduced, &rat(-2, 1), &rat(2, 1)).is_empty() && is_jump_exact(&reduced, s)? {
        return Err(Error::AtJumpPoint);
    }
    signature_at_unchecked(v, s, start_bits, max_bits)
}

fn signature_at_unchecked(v: &SeifertMatrix, s: &BigRational, start_bits: u32, max_bits: u32) -> Result<i64> {
    hermitian_signature_certified(|bits| hermitian_at(v, s, bits), start_bits, max_bits)
}

/// One jump of the signature function: an isolating rational interval for the
/// angle `s ∈ (0, 1)` and the multiplicity of the underlying root of `Δ`.
#[derive(Clone, Debug)]
pub struct Jump {
    pub s_lo: BigRational,
    pub s_hi: BigRational,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
struct HalfJump {
    s_lo: BigRational,
    s_hi: BigRational,
    multiplicity: u32,
    root_index: usize,
}

/// Piecewise-constant signature function on the circle: jump enclosures in
/// `(0, 1/2)` (the full circle follows by the symmetry `s ↔ 1-s`) and the
/// even arc values between them.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    seifert: SeifertMatrix,
    roots: RootIsolation,
    half_jumps: Vec<HalfJump>,
    half_values: Vec<i64>,
}

impl SignatureFunction {
    pub fn seifert(&self) -> &SeifertMatrix {
        &self.seifert
    }

    /// Jump enclosures over the whole circle `(0, 1)`, sorted.
    pub fn jumps(&self) -> Vec<Jump> {
        let mut out: Vec<Jump> = self
            .half_jumps
            .iter()
            .map(|j| Jump { s_lo: j.s_lo.clone(), s_hi: j.s_hi.clone(), multiplicity: j.multiplicity })
            .collect();
        for j in self.half_jumps.iter().rev() {
            out.push(Jump {
                s_lo: BigRational::one() - &j.s_hi,
                s_hi: BigRational::one() - &j.s_lo,
                multiplicity: j.multiplicity,
            });
        }
        out
    }

    /// Arc values over the whole circle: one per open arc between consecutive
    /// jumps, including the two arcs adjacent to `s = 0`.
    pub fn arc_values(&self) -> Vec<i64> {
        let m = self.half_jumps.len();
        let mut out = self.half_values.clone();
        for i in (0..m).rev() {
            out.push(self.half_values[i]);
        }
        debug_assert_eq!(out.len(), 2 * m + 1);
        out
    }

    pub fn jump_count(&self) -> usize {
        2 * self.half_jumps.len()
    }

    /// Value at a jump angle: average of the one-sided limits (measure-zero
    /// convention; never enters the integral).
    pub fn jump_value(&self, index: usize) -> BigRational {
        let values = self.arc_values();
        rat(values[index] + values[index + 1], 2)
    }

    /// Shrinks every jump enclosure below `width`.
    pub fn refine_jumps(&mut self, width: &BigRational) -> Result<()> {
        for j in &mut self.half_jumps {
            if &(&j.s_hi - &j.s_lo) <= width {
                continue;
            }
            let (lo, hi) = s_enclosure_for_root(&mut self.roots, j.root_index, width)?;
            j.s_lo = lo;
            j.s_hi = hi;
        }
        Ok(())
    }

    /// Plot-ready JSON: certified arc sub-intervals with their values, plus
    /// the jump enclosures.
    pub fn to_plot_json(&self) -> serde_json::Value {
        let jumps = self.jumps();
        let values = self.arc_values();
        let mut bounds: Vec<(BigRational, BigRational)> = Vec::new();
        bounds.push((BigRational::zero(), BigRational::zero()));
        for j in &jumps {
            bounds.push((j.s_lo.clone(), j.s_hi.clone()));
        }
        bounds.push((BigRational::one(), BigRational::one()));
        let arcs: Vec<serde_json::Value> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let lo = &bounds[i].1;
                let hi = &bounds[i + 1].0;
                serde_json::json!({
                    "s_interval": [rat_to_f64(lo), rat_to_f64(hi)],
                    "s_interval_exact": [lo.to_string(), hi.to_string()],
                    "value": v,
                })
            })
            .collect();
        let jump_json: Vec<serde_json::Value> = jumps
            .iter()
            .map(|j| {
                serde_json::json!({
                    "s_interval": [rat_to_f64(&j.s_lo), rat_to_f64(&j.s_hi)],
                    "s_interval_exact": [j.s_lo.to_string(), j.s_hi.to_string()],
                    "multiplicity": j.multiplicity,
                })
            })
            .collect();
        serde_json::json!({ "arcs": arcs, "jumps": jump_json })
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    let scale = BigInt::one() << 60u32;
    let scaled = (r * BigRational::from(scale.clone())).round().to_integer();
    let (num, den) = (scaled, scale);
    // Both fit comfortably in f64 for the plot ranges used here (s ∈ [0, 1]).
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Certified isolating `s`-interval in `(0, 1/2)` of width at most `width`
/// for the root `roots[index]` under `x = 2cos(2πs)`.
///
/// Bisection on `s`, steered by certified cosine enclosures; when a
/// comparison stays undecided the root interval itself is tightened (the
/// bisection point may genuinely map inside it). Occasional exact ties
/// (`cos 2πs` rational at a rational angle) are dodged by sliding the
/// bisection point.
fn s_enclosure_for_root(
    roots: &mut RootIsolation,
    index: usize,
    width: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let two = rat(2, 1);
    let (mut a, mut b) = (BigRational::zero(), rat(1, 2));
    while &(&b - &a) > width {
        let mut placed = false;
        let fracs = [rat(1, 2), rat(5, 11), rat(4, 7), rat(3, 7)];
        'attempts: for frac in fracs {
            let mid = &a + (&b - &a) * frac;
            let mut bits = 48u32;
            loop {
                let x = &roots.roots[index];
                let (c, _) = cos_sin_2pi(&mid, bits);
                let c2 = c.scale_rat(&two);
                if c2.lo > x.hi {
                    a = mid;
                    placed = true;
                    break 'attempts;
                }
                if c2.hi < x.lo {
                    b = mid;
                    placed = true;
                    break 'attempts;
                }
                if !x.is_exact() && x.width() > c2.width() {
                    let target = x.width() / rat(16, 1);
                    roots.refine_one(index, &target);
                    continue;
                }
                if bits >= 1024 {
                    break;
                }
                bits *= 2;
            }
        }
        if !placed {
            return Err(Error::CannotCertify);
        }
    }
    Ok((a, b))
}

/// Computes the full signature function of a Seifert matrix.
pub fn signature_function(v: &SeifertMatrix, start_bits: u32, max_bits: u32) -> Result<SignatureFunction> {
    let delta = alexander_polynomial(v);
    let reduced = delta.symmetric_reduce()?;
    let mut iso = isolate_real_roots(&reduced, &rat(-2, 1), &rat(2, 1));
    iso.refine_to_width(&rat(1, 64));
    // Keep every interval strictly inside (-2, 2).
    let mut guard = 0;
    while iso
        .roots
        .iter()
        .any(|r| r.lo <= rat(-2, 1) || r.hi >= rat(2, 1))
    {
        let w: BigRational = iso.roots.iter().map(|r| r.width()).fold(rat(1, 64), |acc, x| acc.min(x));
        iso.refine_to_width(&(w / rat(4, 1)));
        guard += 1;
        if guard > 64 {
            return Err(Error::CannotCertify);
        }
    }

    // Transport x-roots to s-enclosures; x descending ↔ s ascending.
    let root_count = iso.roots.len();
    let mut jumps: Vec<HalfJump> = Vec::new();
    for i in (0..root_count).rev() {
        let multiplicity = iso.roots[i].multiplicity;
        let (s_lo, s_hi) = s_enclosure_for_root(&mut iso, i, &rat(1, 64))?;
        jumps.push(HalfJump { s_lo, s_hi, multiplicity, root_index: i });
    }
    // Disjoint, ordered enclosures strictly inside (0, 1/2); refine until
    // separated.
    let mut guard = 0;
    loop {
        let mut ok = jumps[..].windows(2).all(|w| w[0].s_hi < w[1].s_lo);
        ok = ok && jumps.first().map_or(true, |j| j.s_lo > BigRational::zero());
        ok = ok && jumps.last().map_or(true, |j| j.s_hi < rat(1, 2));
        if ok {
            break;
        }
        guard += 1;
        if guard > 64 {
            return Err(Error::CannotCertify);
        }
        let w: BigRational = jumps
            .iter()
            .map(|j| &j.s_hi - &j.s_lo)
            .fold(rat(1, 64), |acc, x| acc.min(x))
            / rat(4, 1);
        for j in &mut jumps {
            let (lo, hi) = s_enclosure_for_root(&mut iso, j.root_index, &w)?;
            j.s_lo = lo;
            j.s_hi = hi;
        }
    }

    // Arc sample points and certified values.
    let mut half_values = Vec::with_capacity(jumps.len() + 1);
    for i in 0..=jumps.len() {
        let sample = if jumps.is_empty() {
            rat(1, 2)
        } else if i == 0 {
            &jumps[0].s_lo / rat(2, 1)
        } else if i == jumps.len() {
            rat(1, 2)
        } else {
            (&jumps[i - 1].s_hi + &jumps[i].s_lo) / rat(2, 1)
        };
        let value = signature_at_unchecked(v, &sample, start_bits, max_bits)?;
        debug_assert!(value % 2 == 0, "Levine-Tristram signatures of knots are even");
        half_values.push(value);
    }
    if !jumps.is_empty() {
        debug_assert_eq!(half_values[0], 0, "signature vanishes near ω = 1");
    }
    Ok(SignatureFunction { seifert: v.clone(), roots: iso, half_jumps: jumps, half_values })
}

/// Sign of the integral `ρ⁰`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Rho0Sign {
    Positive,
    Negative,
    Zero,
    Undetermined,
}

/// Certified enclosure of `ρ⁰ = ∫ σ(ω)` over the circle, normalized to total
/// measure 1, with its sign when determined.
#[derive(Clone, Debug)]
pub struct Rho0Result {
    pub enclosure: RatInterval,
    pub sign: Rho0Sign,
}

impl Rho0Result {
    pub fn is_nonzero_certified(&self) -> bool {
        matches!(self.sign, Rho0Sign::Positive | Rho0Sign::Negative)
    }
}

impl std::fmt::Display for Rho0Result {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rho0 in [{}, {}] ({:?})", self.enclosure.lo, self.enclosure.hi, self.sign)
    }
}

/// Integral of the signature function over the circle (total measure 1).
///
/// Jump values are measure zero and ignored; the enclosure is tightened until
/// its sign is determined, all arc values are zero, or the refinement budget
/// is exhausted (`Undetermined`).
pub fn rho0(v: &SeifertMatrix, start_bits: u32, max_bits: u32) -> Result<Rho0Result> {
    let sf = signature_function(v, start_bits, max_bits)?;
    rho0_of_function(sf, max_bits)
}

pub fn rho0_of_function(mut sf: SignatureFunction, max_bits: u32) -> Result<Rho0Result> {
    if sf.half_values.iter().all(|&v| v == 0) {
        return Ok(Rho0Result { enclosure: RatInterval::zero(), sign: Rho0Sign::Zero });
    }
    let mut width = rat(1, 64);
    let width_floor = BigRational::new(BigInt::one(), BigInt::one() << max_bits.min(512));
    loop {
        sf.refine_jumps(&width)?;
        let enclosure = rho0_enclosure(&sf);
        if enclosure.lo.is_positive() {
            return Ok(Rho0Result { enclosure, sign: Rho0Sign::Positive });
        }
        if enclosure.hi.is_negative() {
            return Ok(Rho0Result { enclosure, sign: Rho0Sign::Negative });
        }
        if width < width_floor {
            return Ok(Rho0Result { enclosure, sign: Rho0Sign::Undetermined });
        }
        width = width / rat(16, 1);
    }
}

/// `ρ⁰ = 2·[v₀·s₁ + v₁·(s₂-s₁) + … + v_m·(1/2 - s_m)]` with interval
/// endpoints for the jump angles.
fn rho0_enclosure(sf: &SignatureFunction) -> RatInterval {
    let m = sf.half_jumps.len();
    if m == 0 {
        return RatInterval::zero();
    }
    let jump_iv =
        |i: usize| RatInterval::new(sf.half_jumps[i].s_lo.clone(), sf.half_jumps[i].s_hi.clone());
    let mut acc = RatInterval::zero();
    for (i, &value) in sf.half_values.iter().enumerate() {
        if value == 0 {
            continue;
        }
        let lo_end = if i == 0 { RatInterval::zero() } else { jump_iv(i - 1) };
        let hi_end = if i == m { RatInterval::point(rat(1, 2)) } else { jump_iv(i) };
        let len = hi_end.sub(&lo_end);
        acc = acc.add(&len.scale_int(&BigInt::from(value)));
    }
    acc.scale_int(&BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DEFAULT_PRECISION_BITS as DP, MAX_PRECISION_BITS as MP};

    fn trefoil_negative() -> SeifertMatrix {
        // Closure of σ₁⁻³; positive definite symmetrized form.
        crate::braid::braid_to_seifert(&crate::braid::gamma_braid(1)).unwrap()
    }

    #[test]
    fn trefoil_signature_values() {
        let v = trefoil_negative();
        assert_eq!(signature_at(&v, &rat(1, 2), DP, MP).unwrap(), 2);
        assert_eq!(signature_at(&v, &rat(1, 12), DP, MP).unwrap(), 0);
        assert!(matches!(signature_at(&v, &rat(1, 6), DP, MP), Err(Error::AtJumpPoint)));
    }

    #[test]
    fn unknot_signature() {
        let v = SeifertMatrix::unknot();
        assert_eq!(signature_at(&v, &rat(1, 3), DP, MP).unwrap(), 0);
        let sf = signature_function(&v, DP, MP).unwrap();
        assert_eq!(sf.jump_count(), 0);
        assert_eq!(sf.arc_values(), vec![0]);
        let r = rho0(&v, DP, MP).unwrap();
        assert_eq!(r.sign, Rho0Sign::Zero);
    }

    #[test]
    fn trefoil_signature_function() {
        let v = trefoil_negative();
        let sf = signature_function(&v, DP, MP).unwrap();
        assert_eq!(sf.jump_count(), 2);
        assert_eq!(sf.arc_values(), vec![0, 2, 0]);
        let jumps = sf.jumps();
        assert!(jumps[0].s_lo < rat(1, 6) && rat(1, 6) < jumps[0].s_hi);
        assert!(jumps[1].s_lo < rat(5, 6) && rat(5, 6) < jumps[1].s_hi);
        assert_eq!(sf.jump_value(0), rat(1, 1));
    }

    #[test]
    fn trefoil_rho0_positive_four_thirds() {
        let v = trefoil_negative();
        let r = rho0(&v, DP, MP).unwrap();
        assert_eq!(r.sign, Rho0Sign::Positive);
        assert!(r.enclosure.contains(&rat(4, 3)), "enclosure {:?}", r.enclosure);
        assert!(r.enclosure.width() < rat(1, 4));
    }

    #[test]
    fn family_has_constant_zero_signature() {
        for n in [-3i64, 0, 2, 3] {
            let v = crate::seifert::kn_seifert(n);
            let sf = signature_function(&v, DP, MP).unwrap();
            assert_eq!(sf.jump_count(), 0, "Δ of K_n has no unit-circle roots");
            assert_eq!(sf.arc_values(), vec![0]);
            let r = rho0(&v, DP, MP).unwrap();
            assert_eq!(r.sign, Rho0Sign::Zero);
        }
    }

    #[test]
    fn rho0_additive_under_block_sum() {
        let t = trefoil_negative();
        let sum = t.direct_sum(&t);
        let r1 = rho0(&t, DP, MP).unwrap();
        let r2 = rho0(&sum, DP, MP).unwrap();
        // Enclosures must be consistent with additivity.
        let doubled = r1.enclosure.scale_int(&BigInt::from(2));
        assert!(r2.enclosure.lo <= doubled.hi && doubled.lo <= r2.enclosure.hi);
        assert_eq!(r2.sign, Rho0Sign::Positive);
    }

    #[test]
    fn plot_json_shape() {
        let v = trefoil_negative();
        let sf = signature_function(&v, DP, MP).unwrap();
        let j = sf.to_plot_json();
        assert_eq!(j["arcs"].as_array().unwrap().len(), 3);
        assert_eq!(j["jumps"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn jump_detection_via_cyclotomic() {
        let reduced = IntPoly::from_i64(&[-1, 1]); // x - 1, root x = 1 = 2cos(2π/6)
        assert!(is_jump_exact(&reduced, &rat(1, 6)).unwrap());
        assert!(!is_jump_exact(&reduced, &rat(1, 5)).unwrap());
        assert!(!is_jump_exact(&reduced, &rat(1, 2)).unwrap());
    }
}
