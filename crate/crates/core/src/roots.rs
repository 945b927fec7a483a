//! Sturm-sequence real root isolation for integer polynomials.
//!
//! Roots are isolated inside a rational window as disjoint rational intervals,
//! refinable to any width, with multiplicities recovered from a square-free
//! decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense univariate integer polynomial, coefficients ascending, trailing zeros
/// trimmed (zero polynomial: empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})x^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    /// Coefficient list reversed (the reciprocal polynomial).
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division over `Z[x]`; `None` on any nonzero remainder or
    /// non-integral quotient coefficient.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.leading();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, &lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= c * &q;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Primitive gcd via rational remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a: Vec<BigRational> = self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
        let mut b: Vec<BigRational> = other.coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
        loop {
            trim(&mut b);
            if b.is_empty() {
                break;
            }
            let r = rat_rem(&a, &b);
            a = b;
            b = r;
        }
        trim(&mut a);
        let q = crate::LaurentPolyOf::<BigRational>::new(0, a);
        let (p, _) = q.clear_denominators();
        let mut g = p.ordinary();
        if g.leading().is_negative() {
            g = g.neg();
        }
        g
    }

    /// Largest square-free divisor (product of the distinct irreducible factors).
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    /// Square-free decomposition (Yun): returns `(f_i, i)` with
    /// `self = content · Π f_i^i`, each `f_i` square-free, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero());
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides derivative");
        let mut out = Vec::new();
        let mut i = 1u32;
        while b.degree() > 0 {
            let d = c.sub(&b.derivative());
            let p = b.gcd(&d);
            if p.degree() > 0 {
                out.push((p.clone(), i));
            }
            b = b.div_exact(&p).expect("yun step");
            c = d.div_exact(&p).expect("yun step");
            i += 1;
        }
        out
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Remainder of rational-coefficient polynomial division.
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let q = rem.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            let s = c * &q;
            rem[k + i] -= s;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() <= db {
            break;
        }
    }
    rem
}

/// One isolated real root: a rational interval and the root's multiplicity in
/// the original polynomial. `lo == hi` marks an exact rational root.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: u32,
}

impl IsolatedRoot {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Disjoint, sorted isolating intervals for the distinct real roots of a
/// polynomial inside a window, refinable to any requested width.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    sqfree: IntPoly,
    pub roots: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Bisects every interval until each is narrower than `width`.
    pub fn refine_to_width(&mut self, width: &BigRational) {
        let chain = sturm_chain(&self.sqfree);
        for root in &mut self.roots {
            refine_root(&chain, &self.sqfree, root, width);
        }
    }

    /// Bisects one interval until narrower than `width`.
    pub fn refine_one(&mut self, index: usize, width: &BigRational) {
        let chain = sturm_chain(&self.sqfree);
        refine_root(&chain, &self.sqfree, &mut self.roots[index], width);
    }
}

fn refine_root(chain: &[Vec<BigRational>], sqfree: &IntPoly, root: &mut IsolatedRoot, width: &BigRational) {
    while !root.is_exact() && root.width() > *width {
        let mid = root.midpoint();
        if sqfree.sign_at(&mid) == 0 {
            root.lo = mid.clone();
            root.hi = mid;
            return;
        }
        // Exactly one root lies in (lo, hi); keep the half that contains it.
        if count_roots_half_open(chain, &root.lo, &mid) == 1 {
            root.hi = mid;
        } else {
            root.lo = mid;
        }
    }
}

/// Isolates the distinct real roots of `q` in the open window `(lo, hi)`.
///
/// A square-free reduction is applied first; multiplicities refer to the input
/// polynomial. Panics if `q` is zero (precondition).
pub fn isolate_real_roots(q: &IntPoly, window_lo: &BigRational, window_hi: &BigRational) -> RootIsolation {
    assert!(!q.is_zero(), "root isolation of the zero polynomial");
    assert!(window_lo < window_hi, "empty window");
    let sqfree = q.squarefree_part();
    if sqfree.degree() == 0 {
        return RootIsolation { sqfree, roots: Vec::new() };
    }
    let chain = sturm_chain(&sqfree);
    let mut stack = vec![(window_lo.clone(), window_hi.clone())];
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let mut n = count_roots_half_open(&chain, &a, &b);
        // Open window: a root exactly at b is not ours.
        let b_is_root = sqfree.sign_at(&b) == 0;
        if b_is_root {
            n -= 1;
        }
        if n == 0 {
            continue;
        }
        let mid = (&a + &b) / BigRational::from(BigInt::from(2));
        if n == 1 && !b_is_root && sqfree.sign_at(&a) != 0 {
            // Nudge the right end off any root of the chain for cleanliness.
            if sqfree.sign_at(&mid) == 0 {
                intervals.push((mid.clone(), mid));
            } else if count_roots_half_open(&chain, &a, &mid) == 1 {
                intervals.push((a, mid));
            } else {
                intervals.push((mid, b));
            }
            continue;
        }
        if sqfree.sign_at(&mid) == 0 {
            intervals.push((mid.clone(), mid.clone()));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    intervals.sort_by(|x, y| x.0.cmp(&y.0));
    intervals.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);

    // Multiplicities from the square-free decomposition.
    let decomp = q.squarefree_decomposition();
    let uniform = decomp.len() == 1 && decomp[0].1 == 1;
    let mut roots = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        let mut root = IsolatedRoot { lo, hi, multiplicity: 1 };
        if !uniform {
            root.multiplicity = multiplicity_of(&root, &decomp);
        }
        roots.push(root);
    }
    RootIsolation { sqfree, roots }
}

fn multiplicity_of(root: &IsolatedRoot, decomp: &[(IntPoly, u32)]) -> u32 {
    if root.is_exact() {
        for (f, m) in decomp {
            if f.sign_at(&root.lo) == 0 {
                return *m;
            }
        }
        unreachable!("root of the square-free part belongs to some Yun factor");
    }
    // The interval contains exactly one root of the square-free part, hence
    // exactly one root of exactly one pairwise-coprime Yun factor.
    for (f, m) in decomp {
        let fc = sturm_chain(f);
        if count_roots_half_open(&fc, &root.lo, &root.hi) == 1 {
            return *m;
        }
    }
    unreachable!("isolated root belongs to some Yun factor");
}

/// Sturm chain of a square-free polynomial, rational coefficients.
fn sturm_chain(p: &IntPoly) -> Vec<Vec<BigRational>> {
    let p0: Vec<BigRational> = p.coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
    let p1: Vec<BigRational> = p.derivative().coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
    let mut chain = vec![p0];
    if p1.is_empty() {
        return chain;
    }
    chain.push(p1);
    while chain.last().unwrap().len() > 1 {
        let n = chain.len();
        let mut r = rat_rem(&chain[n - 2], &chain[n - 1]);
        for c in &mut r {
            *c = -std::mem::take(c);
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn eval_chain(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c.clone();
    }
    acc
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut prev = 0i32;
    let mut v = 0usize;
    for p in chain {
        let s = {
            let val = eval_chain(p, x);
            if val.is_zero() { 0 } else if val.is_positive() { 1 } else { -1 }
        };
        if s != 0 {
            if prev != 0 && s != prev {
                v += 1;
            }
            prev = s;
        }
    }
    v
}

/// Number of distinct roots in `(a, b]` of the square-free polynomial behind `chain`.
fn count_roots_half_open(chain: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn linear_root_isolated() {
        let q = IntPoly::from_i64(&[-1, 1]);
        let iso = isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1));
        assert_eq!(iso.len(), 1);
        let r = &iso.roots[0];
        assert!(r.lo <= rat(1, 1) && rat(1, 1) <= r.hi);
        assert_eq!(r.multiplicity, 1);
    }

    #[test]
    fn root_outside_window_ignored() {
        // 2x - 5 has its root at 5/2, outside (-2, 2).
        let q = IntPoly::from_i64(&[-5, 2]);
        let iso = isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1));
        assert!(iso.is_empty());
    }

    #[test]
    fn constant_has_no_roots() {
        let q = IntPoly::from_i64(&[1]);
        let iso = isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1));
        assert!(iso.is_empty());
    }

    #[test]
    fn window_endpoints_excluded() {
        // (x-2)(x+2)x: only the root at 0 lies inside the open window.
        let q = IntPoly::from_i64(&[0, -4, 0, 1]);
        let iso = isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1));
        assert_eq!(iso.len(), 1);
        assert!(iso.roots[0].lo <= rat(0, 1) && rat(0, 1) <= iso.roots[0].hi);
    }

    #[test]
    fn multiplicities_recovered() {
        // (x-1)^2 (x+1) (2x-3)^3
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        let c = IntPoly::from_i64(&[-3, 2]);
        let q = a.mul(&a).mul(&b).mul(&c).mul(&c).mul(&c);
        let mut iso = isolate_real_roots(&q, &rat(-10, 1), &rat(10, 1));
        assert_eq!(iso.len(), 3);
        iso.refine_to_width(&rat(1, 1000));
        let mults: Vec<u32> = iso.roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        for (r, target) in iso.roots.iter().zip([rat(-1, 1), rat(1, 1), rat(3, 2)]) {
            assert!(r.lo <= target && target <= r.hi);
        }
    }

    #[test]
    fn refinement_shrinks() {
        let q = IntPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let mut iso = isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1));
        assert_eq!(iso.len(), 2);
        iso.refine_to_width(&rat(1, 1 << 20));
        for r in &iso.roots {
            assert!(r.width() <= rat(1, 1 << 20));
        }
        // Intervals stay disjoint and sorted.
        assert!(iso.roots[0].hi < iso.roots[1].lo);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[2, 1]);
        let p = a.mul(&a).mul(&b);
        let g = p.gcd(&p.derivative());
        assert_eq!(g, a);
        assert_eq!(p.squarefree_part(), a.mul(&b));
    }

    #[test]
    fn exact_rational_root_detected() {
        let q = IntPoly::from_i64(&[0, 1]); // x
        let iso = isolate_real_roots(&q, &rat(-1, 1), &rat(1, 1));
        assert_eq!(iso.len(), 1);
        assert!(iso.roots[0].is_exact());
        assert!(iso.roots[0].lo.is_zero());
    }
}
