//! Exact dense matrices over a ring, Smith normal form, and presented
//! abelian groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Coeff, ExactDiv};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Coeff> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let p = self[(i, k)].mul_ref(&other[(k, j)]);
                acc += &p;
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let p = self[(i, k)].mul_ref(&v[k]);
                    acc += &p;
                }
                acc
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Appends extra columns on the right.
    pub fn augment_columns(&self, extra: &[Vec<T>]) -> Self {
        assert!(extra.iter().all(|c| c.len() == self.rows));
        Self::from_fn(self.rows, self.cols + extra.len(), |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                extra[j - self.cols][i].clone()
            }
        })
    }
}

impl<T: Coeff + ExactDiv> Matrix<T> {
    /// Determinant by fraction-free (Bareiss) elimination; every division is exact.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let pivot_row = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match pivot_row {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t1 = a[(k, k)].mul_ref(&a[(i, j)]);
                    let t2 = a[(i, k)].mul_ref(&a[(k, j)]);
                    a[(i, j)] = (t1 - t2).exact_div(&prev);
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self[(rr, cc)].clone()
        })
    }

    /// Adjugate: `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        Self::from_fn(n, n, |i, j| {
            // Cofactor expansion with the transposition built in.
            let d = self.minor_matrix(j, i).det();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: std::fmt::Debug> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|c| BigRational::from(c.clone()))
    }

    /// Basis of the rational kernel, as primitive integer vectors.
    pub fn kernel_primitive(&self) -> Vec<Vec<BigInt>> {
        let mut a = self.to_rational();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let pivot = (r..rows).find(|&i| !a[(i, c)].is_zero());
            let Some(p) = pivot else { continue };
            for k in 0..cols {
                let tmp = a[(p, k)].clone();
                a[(p, k)] = a[(r, k)].clone();
                a[(r, k)] = tmp;
            }
            let inv = a[(r, c)].clone();
            for k in 0..cols {
                a[(r, k)] = &a[(r, k)] / &inv;
            }
            for i in 0..rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for k in 0..cols {
                        let s = &a[(r, k)] * &f;
                        a[(i, k)] = &a[(i, k)] - &s;
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let pivot_cols: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -a[(row, free)].clone();
            }
            basis.push(primitive_integer(&v));
        }
        basis
    }
}

/// Clears denominators of a rational vector without touching the content:
/// multiplies by the lcm of the denominators only.
pub fn primitive_scaled(v: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = num_integer::lcm(den, x.denom().clone());
    }
    v.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect()
}

/// Scales a rational vector to a primitive integer vector (gcd 1, first
/// nonzero entry positive).
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = num_integer::lcm(den, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = num_integer::gcd(g, c.clone());
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c = &*c / &g;
        }
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in &mut ints {
                *c = -&*c;
            }
        }
    }
    ints
}

/// Smith normal form `S = U·A·W` with `U`, `W` unimodular and the diagonal of
/// `S` a nonnegative divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: Matrix<BigInt>,
    pub u: Matrix<BigInt>,
    pub w: Matrix<BigInt>,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &Matrix<BigInt>) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::<BigInt>::identity(m);
    let mut w = Matrix::<BigInt>::identity(n);

    let mut k = 0usize;
    'stage: while k < m.min(n) {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block,
            // re-selected after every reduction to keep quotients small.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if !s[(i, j)].is_zero()
                        && pivot.map_or(true, |(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'stage };
            swap_rows(&mut s, &mut u, k, pi);
            swap_cols(&mut s, &mut w, k, pj);

            // One remainder step against the pivot, then re-select.
            let p = s[(k, k)].clone();
            if let Some(i) = (k + 1..m).find(|&i| !(&s[(i, k)] % &p).is_zero()) {
                let q = div_nearest(&s[(i, k)], &p);
                row_op(&mut s, &mut u, i, k, &q);
                continue;
            }
            if let Some(j) = (k + 1..n).find(|&j| !(&s[(k, j)] % &p).is_zero()) {
                let q = div_nearest(&s[(k, j)], &p);
                col_op(&mut s, &mut w, j, k, &q);
                continue;
            }
            // The pivot divides its row and column: clear them exactly.
            for i in k + 1..m {
                if !s[(i, k)].is_zero() {
                    let q = &s[(i, k)] / &p;
                    row_op(&mut s, &mut u, i, k, &q);
                }
            }
            for j in k + 1..n {
                if !s[(k, j)].is_zero() {
                    let q = &s[(k, j)] / &p;
                    col_op(&mut s, &mut w, j, k, &q);
                }
            }
            // Divisibility repair: fold a row holding a bad entry into row k,
            // so the next remainder step shrinks the pivot.
            let mut repaired = false;
            'scan: for i in k + 1..m {
                for j in k + 1..n {
                    if !(&s[(i, j)] % &p).is_zero() {
                        add_row(&mut s, &mut u, k, i);
                        repaired = true;
                        break 'scan;
                    }
                }
            }
            if !repaired {
                break;
            }
        }
        if s[(k, k)].is_negative() {
            negate_row(&mut s, &mut u, k);
        }
        k += 1;
    }
    SmithDecomposition { s, u, w }
}

fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    // Round-to-nearest quotient keeps remainders at most |b|/2.
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    if (&r + &r).abs() > b.abs() {
        if r.is_negative() == b.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn swap_rows(s: &mut Matrix<BigInt>, u: &mut Matrix<BigInt>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..s.cols() {
        let tmp = s[(i, k)].clone();
        s[(i, k)] = s[(j, k)].clone();
        s[(j, k)] = tmp;
    }
    for k in 0..u.cols() {
        let tmp = u[(i, k)].clone();
        u[(i, k)] = u[(j, k)].clone();
        u[(j, k)] = tmp;
    }
}

fn swap_cols(s: &mut Matrix<BigInt>, w: &mut Matrix<BigInt>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..s.rows() {
        let tmp = s[(k, i)].clone();
        s[(k, i)] = s[(k, j)].clone();
        s[(k, j)] = tmp;
    }
    for k in 0..w.rows() {
        let tmp = w[(k, i)].clone();
        w[(k, i)] = w[(k, j)].clone();
        w[(k, j)] = tmp;
    }
}

/// `row_i -= q·row_k` on `s`, mirrored on `u`.
fn row_op(s: &mut Matrix<BigInt>, u: &mut Matrix<BigInt>, i: usize, k: usize, q: &BigInt) {
    for c in 0..s.cols() {
        let d = &s[(k, c)] * q;
        s[(i, c)] = &s[(i, c)] - &d;
    }
    for c in 0..u.cols() {
        let d = &u[(k, c)] * q;
        u[(i, c)] = &u[(i, c)] - &d;
    }
}

/// `col_j -= q·col_k` on `s`, mirrored on `w`.
fn col_op(s: &mut Matrix<BigInt>, w: &mut Matrix<BigInt>, j: usize, k: usize, q: &BigInt) {
    for r in 0..s.rows() {
        let d = &s[(r, k)] * q;
        s[(r, j)] = &s[(r, j)] - &d;
    }
    for r in 0..w.rows() {
        let d = &w[(r, k)] * q;
        w[(r, j)] = &w[(r, j)] - &d;
    }
}

fn add_row(s: &mut Matrix<BigInt>, u: &mut Matrix<BigInt>, k: usize, i: usize) {
    for c in 0..s.cols() {
        let d = s[(i, c)].clone();
        s[(k, c)] += &d;
    }
    for c in 0..u.cols() {
        let d = u[(i, c)].clone();
        u[(k, c)] += &d;
    }
}

fn negate_row(s: &mut Matrix<BigInt>, u: &mut Matrix<BigInt>, k: usize) {
    for c in 0..s.cols() {
        s[(k, c)] = -s[(k, c)].clone();
    }
    for c in 0..u.cols() {
        u[(k, c)] = -u[(k, c)].clone();
    }
}

/// Finitely generated abelian group: free rank plus a divisibility chain of
/// torsion orders `d_1 | d_2 | …`, each `> 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            AbelianGroup { free_rank: 1, torsion: vec![] }
        } else if n == 1 {
            Self::trivial()
        } else {
            AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(n)] }
        }
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.torsion {
            o *= d;
        }
        Some(o)
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The abelian group presented by the columns of `rel` as relations on
/// `rel.rows()` free generators.
pub fn finite_quotient_group(rel: &Matrix<BigInt>) -> AbelianGroup {
    let m = rel.rows();
    if rel.cols() == 0 {
        return AbelianGroup { free_rank: m, torsion: Vec::new() };
    }
    let snf = smith_normal_form(rel);
    let mut torsion = Vec::new();
    let mut rank = 0usize;
    for d in snf.diagonal() {
        if d.is_zero() {
            continue;
        }
        rank += 1;
        if !d.is_one() {
            torsion.push(d);
        }
    }
    AbelianGroup { free_rank: m - rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small_examples() {
        let a = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.w), snf.s);

        let id = Matrix::<BigInt>::identity(3);
        assert_eq!(smith_normal_form(&id).diagonal(), vec![BigInt::one(); 3]);

        let one = Matrix::from_i64_rows(&[&[3]]);
        assert_eq!(smith_normal_form(&one).diagonal(), vec![BigInt::from(3)]);
    }

    #[test]
    fn det_examples() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.det(), BigInt::from(-2));
        let b = Matrix::from_i64_rows(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(b.det(), BigInt::from(-2));
        assert_eq!(Matrix::<BigInt>::identity(0).det(), BigInt::one());
    }

    #[test]
    fn quotient_groups() {
        // Z^2 with no relations.
        let empty = Matrix::<BigInt>::zero(2, 0);
        assert_eq!(finite_quotient_group(&empty), AbelianGroup { free_rank: 2, torsion: vec![] });
        // Identity relations kill everything.
        let id = Matrix::<BigInt>::identity(2);
        assert!(finite_quotient_group(&id).is_trivial());
        // Z^2 / <(2,0),(0,3)> = Z/6 up to iso (divisibility chain [1,6]).
        let a = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(finite_quotient_group(&a), AbelianGroup::cyclic(6));
    }

    #[test]
    fn kernel_primitive_vector() {
        let a = Matrix::from_i64_rows(&[&[3, 3], &[0, 0]]);
        let k = a.kernel_primitive();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn snf_unimodular_factors() {
        let a = Matrix::from_i64_rows(&[&[4, 6, 2], &[2, -2, 8], &[6, 0, 0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.w), snf.s);
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.w.det().abs(), BigInt::one());
        let d = snf.diagonal();
        for i in 1..d.len() {
            if !d[i].is_zero() {
                assert!((&d[i] % &d[i - 1]).is_zero());
            }
        }
    }
}
