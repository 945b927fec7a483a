//! Certified signatures of Hermitian matrices given by interval enclosures.
//!
//! The signature is read off a pivoted triangular decomposition performed in
//! interval arithmetic: only the signs of pivots are needed, so a pivot is
//! usable as soon as its enclosure excludes zero. Exactly-zero diagonals
//! (which occur routinely, e.g. whenever a Seifert matrix has a zero diagonal
//! entry) are handled by 2×2 block pivots with certified negative
//! determinant, which contribute zero to the signature.
//!
//! The elimination itself runs on fixed-point dyadic intervals (integer
//! mantissas at a common scale `2^-F`, outward rounding on every operation),
//! which keeps the arithmetic in plain `BigInt` territory.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::interval::{ComplexInterval, Fix, RatInterval};
use crate::{Error, Result};

/// Hermitian matrix of complex interval enclosures, stored as the real
/// diagonal plus the strict upper triangle (the lower triangle is implied by
/// conjugate symmetry).
#[derive(Clone, Debug)]
pub struct HermitianIntervalMatrix {
    n: usize,
    diag: Vec<RatInterval>,
    upper: Vec<ComplexInterval>,
}

impl HermitianIntervalMatrix {
    pub fn new(diag: Vec<RatInterval>, upper: Vec<ComplexInterval>) -> Self {
        let n = diag.len();
        assert_eq!(upper.len(), n * n.saturating_sub(1) / 2, "upper triangle size");
        HermitianIntervalMatrix { n, diag, upper }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn upper_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // Row-major packing of the strict upper triangle.
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn diagonal(&self, i: usize) -> &RatInterval {
        &self.diag[i]
    }

    /// Entry `(i, j)` with the lower triangle produced by conjugation.
    pub fn entry(&self, i: usize, j: usize) -> ComplexInterval {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => ComplexInterval::real(self.diag[i].clone()),
            Ordering::Less => self.upper[self.upper_index(i, j)].clone(),
            Ordering::Greater => self.upper[self.upper_index(j, i)].clone().conj(),
        }
    }

    pub fn from_fn(
        n: usize,
        mut diag: impl FnMut(usize) -> RatInterval,
        mut upper: impl FnMut(usize, usize) -> ComplexInterval,
    ) -> Self {
        let d = (0..n).map(&mut diag).collect();
        let mut u = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                u.push(upper(i, j));
            }
        }
        Self::new(d, u)
    }
}

#[derive(Clone, Debug)]
struct FixComplex {
    re: Fix,
    im: Fix,
}

impl FixComplex {
    fn real(re: Fix) -> Self {
        FixComplex { re, im: Fix::zero() }
    }

    fn conj(&self) -> Self {
        FixComplex { re: self.re.clone(), im: self.im.neg() }
    }

    fn add(&self, o: &Self) -> Self {
        FixComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &Self) -> Self {
        FixComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &Self, f: u64) -> Self {
        FixComplex {
            re: self.re.mul(&o.re, f).sub(&self.im.mul(&o.im, f)),
            im: self.re.mul(&o.im, f).add(&self.im.mul(&o.re, f)),
        }
    }

    fn abs_sq(&self, f: u64) -> Fix {
        self.re.square(f).add(&self.im.square(f))
    }

    fn div_real(&self, d: &Fix, f: u64) -> Self {
        FixComplex { re: self.re.div(d, f), im: self.im.div(d, f) }
    }
}

fn to_fix(r: &RatInterval, f: u64) -> Fix {
    Fix::from_rat(r, f)
}

fn to_fix_complex(c: &ComplexInterval, f: u64) -> FixComplex {
    FixComplex { re: to_fix(&c.re, f), im: to_fix(&c.im, f) }
}

/// Signature (`#positive − #negative` eigenvalues) of the exact Hermitian
/// matrix enclosed by `build(bits)`, certified by interval pivoting.
///
/// `build` is called with doubling precision starting at `start_bits` until
/// every pivot decision is certified or `max_bits` is exceeded; the enclosed
/// exact matrix must be nonsingular for termination.
pub fn hermitian_signature_certified(
    mut build: impl FnMut(u32) -> HermitianIntervalMatrix,
    start_bits: u32,
    max_bits: u32,
) -> Result<i64> {
    let mut bits = start_bits.max(4);
    loop {
        let m = build(bits);
        if let Some(sig) = try_signature(&m, bits) {
            return Ok(sig);
        }
        if bits >= max_bits {
            return Err(Error::CannotCertify);
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// One certification attempt at fixed precision; `None` requests refinement.
fn try_signature(m: &HermitianIntervalMatrix, bits: u32) -> Option<i64> {
    let n = m.size();
    let f = bits as u64 + 32;
    let mut diag: Vec<Fix> = (0..n).map(|i| to_fix(m.diagonal(i), f)).collect();
    let mut upper: Vec<Vec<FixComplex>> = (0..n)
        .map(|i| (i + 1..n).map(|j| to_fix_complex(&m.entry(i, j), f)).collect())
        .collect();
    let entry = |diag: &[Fix], upper: &[Vec<FixComplex>], i: usize, j: usize| -> FixComplex {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => FixComplex::real(diag[i].clone()),
            Ordering::Less => upper[i][j - i - 1].clone(),
            Ordering::Greater => upper[j][i - j - 1].conj(),
        }
    };

    let mut active: Vec<usize> = (0..n).collect();
    let mut signature = 0i64;
    while !active.is_empty() {
        // Best certified 1×1 pivot: maximal distance from zero.
        let mut best: Option<(usize, i32, BigInt)> = None;
        for &i in &active {
            if let Some(s) = diag[i].sign() {
                let margin = diag[i].lo.abs().min(diag[i].hi.abs());
                if best.as_ref().map_or(true, |(_, _, bm)| margin > *bm) {
                    best = Some((i, s, margin));
                }
            }
        }
        if let Some((k, s, _)) = best {
            signature += s as i64;
            active.retain(|&i| i != k);
            let d = diag[k].clone();
            // Schur complement: A'_ij = A_ij - A_ik·A_kj / d.
            for (ai, &i) in active.iter().enumerate() {
                let a_ik = entry(&diag, &upper, i, k);
                diag[i] = diag[i].sub(&a_ik.abs_sq(f).div(&d, f));
                for &j in &active[ai + 1..] {
                    let a_kj = entry(&diag, &upper, k, j);
                    let delta = a_ik.mul(&a_kj, f).div_real(&d, f);
                    let cur = entry(&diag, &upper, i, j);
                    upper[i][j - i - 1] = cur.sub(&delta);
                }
            }
            continue;
        }

        // No certified 1×1 pivot: look for a 2×2 block with certified
        // negative determinant (zero net signature).
        let mut block: Option<(usize, usize, Fix)> = None;
        'outer: for (ai, &p) in active.iter().enumerate() {
            for &q in &active[ai + 1..] {
                let a_pq = entry(&diag, &upper, p, q);
                let det = diag[p].mul(&diag[q], f).sub(&a_pq.abs_sq(f));
                if det.sign() == Some(-1) {
                    block = Some((p, q, det));
                    break 'outer;
                }
            }
        }
        let Some((p, q, det)) = block else { return None };
        active.retain(|&i| i != p && i != q);
        let a_pq = entry(&diag, &upper, p, q);
        let (dp, dq) = (diag[p].clone(), diag[q].clone());
        // M^{-1} = adj(M)/det for the block M = [[dp, a_pq], [conj, dq]].
        for (ai, &i) in active.iter().enumerate() {
            let a_ip = entry(&diag, &upper, i, p);
            let a_iq = entry(&diag, &upper, i, q);
            for &j in active[ai..].iter() {
                let a_pj = entry(&diag, &upper, p, j);
                let a_qj = entry(&diag, &upper, q, j);
                // [a_ip a_iq]·adj(M)·[a_pj a_qj]^T
                let t1 = a_ip.mul(&a_pj, f).mul(&FixComplex::real(dq.clone()), f);
                let t2 = a_ip.mul(&a_pq, f).mul(&a_qj, f);
                let t3 = a_iq.mul(&a_pq.conj(), f).mul(&a_pj, f);
                let t4 = a_iq.mul(&a_qj, f).mul(&FixComplex::real(dp.clone()), f);
                let num = t1.sub(&t2).sub(&t3).add(&t4);
                let delta = num.div_real(&det, f);
                if i == j {
                    debug_assert!(delta.im.contains_zero());
                    diag[i] = diag[i].sub(&delta.re);
                } else {
                    let cur = entry(&diag, &upper, i, j);
                    upper[i][j - i - 1] = cur.sub(&delta);
                }
            }
        }
    }
    Some(signature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn exact(n: i64) -> RatInterval {
        RatInterval::point(BigRational::from(BigInt::from(n)))
    }

    fn real_matrix(rows: &[&[i64]]) -> HermitianIntervalMatrix {
        let n = rows.len();
        HermitianIntervalMatrix::from_fn(
            n,
            |i| exact(rows[i][i]),
            |i, j| ComplexInterval::real(exact(rows[i][j])),
        )
    }

    fn signature_of(m: HermitianIntervalMatrix) -> i64 {
        hermitian_signature_certified(move |_| m.clone(), 16, 256).unwrap()
    }

    #[test]
    fn definite_examples() {
        assert_eq!(signature_of(real_matrix(&[&[4, 2], &[2, 4]])), 2);
        assert_eq!(signature_of(real_matrix(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(signature_of(real_matrix(&[&[-1, 0], &[0, -1]])), -2);
    }

    #[test]
    fn zero_diagonal_needs_block_pivot() {
        // ((0, i), (-i, 0)): eigenvalues ±1.
        let m = HermitianIntervalMatrix::from_fn(
            2,
            |_| exact(0),
            |_, _| ComplexInterval::new(exact(0), exact(1)),
        );
        assert_eq!(signature_of(m), 0);
    }

    #[test]
    fn indefinite_real() {
        assert_eq!(signature_of(real_matrix(&[&[0, 3], &[3, 0]])), 0);
        assert_eq!(signature_of(real_matrix(&[&[1, 2], &[2, 1]])), 0);
        assert_eq!(signature_of(real_matrix(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), 3);
    }

    #[test]
    fn singular_matrix_fails_certification() {
        let m = real_matrix(&[&[1, 1], &[1, 1]]);
        let r = hermitian_signature_certified(move |_| m.clone(), 16, 64);
        assert!(matches!(r, Err(Error::CannotCertify)));
    }

    #[test]
    fn empty_matrix() {
        let m = HermitianIntervalMatrix::new(vec![], vec![]);
        assert_eq!(signature_of(m), 0);
    }

    #[test]
    fn fix_interval_rounding_is_outward() {
        let f = 8u64;
        let a = Fix { lo: BigInt::from(3), hi: BigInt::from(5) };
        let b = Fix { lo: BigInt::from(-7), hi: BigInt::from(2) };
        let p = a.mul(&b, f);
        // Exact products live at scale 2^-16; rescaled bounds must contain them.
        assert!(&p.lo * BigInt::from(256) <= BigInt::from(-35));
        assert!(&p.hi * BigInt::from(256) >= BigInt::from(10));
        let d = Fix { lo: BigInt::from(512), hi: BigInt::from(1024) };
        let q = a.div(&d, f);
        assert!(q.lo <= BigInt::from(0) || q.lo.is_positive());
        assert!(q.hi >= q.lo);
    }
}
