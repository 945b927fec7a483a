//! Seifert matrices, the built-in twist family, and genus-1 metabolizers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::{Error, IntMatrix, Result};

/// A Seifert matrix: square, even-sized, with unimodular skew part
/// `det(V - Vᵀ) = 1`. Size 0 is the unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    /// Validates the defining conditions, naming the failing one.
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::NotSeifert(format!("matrix is {}x{}, not square", v.rows(), v.cols())));
        }
        if v.rows() % 2 != 0 {
            return Err(Error::NotSeifert(format!("size {} is odd", v.rows())));
        }
        let skew = v.sub(&v.transpose());
        let det = skew.det();
        if !det.is_one() {
            return Err(Error::NotSeifert(format!("det(V - Vᵀ) = {}, expected 1", det)));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix { v: Matrix::zero(0, 0) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn transpose(&self) -> Self {
        SeifertMatrix { v: self.v.transpose() }
    }

    /// Block sum, the Seifert matrix of a connected sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        SeifertMatrix { v: self.v.direct_sum(&other.v) }
    }

    /// A valid Seifert matrix built from the standard genus-`g` skew base plus
    /// an arbitrary symmetric integer matrix; useful for generating test
    /// corpora deterministically.
    pub fn from_base_plus_symmetric(genus: usize, symmetric: &IntMatrix) -> Result<Self> {
        let n = 2 * genus;
        assert_eq!(symmetric.rows(), n);
        assert_eq!(symmetric.cols(), n);
        let mut v = Matrix::<BigInt>::zero(n, n);
        for g in 0..genus {
            v[(2 * g, 2 * g + 1)] = BigInt::one();
        }
        for i in 0..n {
            for j in 0..n {
                let s = if i <= j { symmetric[(i, j)].clone() } else { symmetric[(j, i)].clone() };
                v[(i, j)] += &s;
            }
        }
        Self::new(v)
    }
}

/// The genus-1 family: Seifert matrix `((n, 2), (1, 0))`.
pub fn kn_seifert(n: i64) -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&[&[n, 2], &[1, 0]]).expect("family matrix is valid")
}

/// A metabolizer: a primitive isotropic vector of the Seifert form on a
/// genus-1 surface, in canonical sign (first nonzero entry positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metabolizer {
    vector: [BigInt; 2],
}

impl Metabolizer {
    pub fn new(v: SeifertMatrix, x: BigInt, y: BigInt) -> Result<Self> {
        let m = Self::canonical(x, y);
        let q = m.evaluate_form(&v);
        if !q.is_zero() {
            return Err(Error::Unsupported(format!("vector not isotropic: q = {}", q)));
        }
        Ok(m)
    }

    fn canonical(x: BigInt, y: BigInt) -> Self {
        let g = num_integer::gcd(x.clone(), y.clone());
        let (mut x, mut y) = if g.is_zero() || g.is_one() { (x, y) } else { (&x / &g, &y / &g) };
        let flip = if !x.is_zero() { x.is_negative() } else { y.is_negative() };
        if flip {
            x = -x;
            y = -y;
        }
        Metabolizer { vector: [x, y] }
    }

    pub fn coords(&self) -> &[BigInt; 2] {
        &self.vector
    }

    fn evaluate_form(&self, v: &SeifertMatrix) -> BigInt {
        let m = v.matrix();
        let [x, y] = &self.vector;
        &m[(0, 0)] * x * x + (&m[(0, 1)] + &m[(1, 0)]) * x * y + &m[(1, 1)] * y * y
    }
}

impl std::fmt::Display for Metabolizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.vector[0], self.vector[1])
    }
}

/// All primitive isotropic classes of the Seifert form `vᵀVv` on a genus-1
/// surface, up to sign. The binary form factors over `Q` into zero, one or two
/// rational lines; anisotropic forms give the empty list.
pub fn genus1_metabolizers(v: &SeifertMatrix) -> Vec<Metabolizer> {
    assert_eq!(v.size(), 2, "metabolizer enumeration needs a genus-1 matrix");
    let m = v.matrix();
    let a = m[(0, 0)].clone();
    let b = &m[(0, 1)] + &m[(1, 0)];
    let c = m[(1, 1)].clone();
    let mut out: Vec<Metabolizer> = Vec::new();
    if a.is_zero() {
        // q = y·(b·x + c·y); for a valid Seifert matrix b is odd, so the form
        // is not identically zero.
        out.push(Metabolizer::canonical(BigInt::one(), BigInt::zero()));
        if !b.is_zero() {
            out.push(Metabolizer::canonical(-c.clone(), b.clone()));
        }
    } else {
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if disc.is_positive() {
            let s = disc.sqrt();
            if &s * &s == disc {
                let two_a = BigInt::from(2) * &a;
                out.push(Metabolizer::canonical(-&b + &s, two_a.clone()));
                if !s.is_zero() {
                    out.push(Metabolizer::canonical(-&b - &s, two_a));
                }
            }
        } else if disc.is_zero() {
            out.push(Metabolizer::canonical(-b.clone(), BigInt::from(2) * &a));
        }
    }
    out.sort_by(|p, q| p.vector[0].cmp(&q.vector[0]).then(p.vector[1].cmp(&q.vector[1])));
    out.dedup();
    debug_assert!(out.iter().all(|mb| mb.evaluate_form(v).is_zero()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        assert!(SeifertMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]).is_ok());
        let err = SeifertMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotSeifert(_)));
        assert!(SeifertMatrix::new(Matrix::zero(0, 0)).is_ok());
        assert!(SeifertMatrix::from_i64_rows(&[&[1]]).is_err());
    }

    #[test]
    fn family_matrices() {
        for n in [-1i64, 0, 3] {
            let v = kn_seifert(n);
            assert_eq!(v.matrix()[(0, 0)], BigInt::from(n));
            assert_eq!(v.matrix()[(0, 1)], BigInt::from(2));
            assert_eq!(v.matrix()[(1, 0)], BigInt::from(1));
            assert_eq!(v.matrix()[(1, 1)], BigInt::from(0));
        }
    }

    fn coords(ms: &[Metabolizer]) -> Vec<(i64, i64)> {
        ms.iter()
            .map(|m| {
                let c = m.coords();
                (
                    i64::try_from(&c[0]).unwrap(),
                    i64::try_from(&c[1]).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn metabolizers_of_the_family() {
        assert_eq!(coords(&genus1_metabolizers(&kn_seifert(3))), vec![(0, 1), (1, -1)]);
        assert_eq!(coords(&genus1_metabolizers(&kn_seifert(1))), vec![(0, 1), (3, -1)]);
        assert_eq!(coords(&genus1_metabolizers(&kn_seifert(0))), vec![(0, 1), (1, 0)]);
        for n in -12..=12i64 {
            let ms = genus1_metabolizers(&kn_seifert(n));
            assert_eq!(ms.len(), 2, "K_{n}");
            if n % 3 == 0 {
                assert_eq!(coords(&ms), vec![(0, 1), (1, -n / 3)]);
            } else {
                let mut expect = vec![(0, 1), (3, -n)];
                expect.sort();
                assert_eq!(coords(&ms), expect);
            }
        }
    }

    #[test]
    fn anisotropic_form_has_no_metabolizer() {
        let v = SeifertMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(genus1_metabolizers(&v).is_empty());
    }

    #[test]
    fn base_plus_symmetric_is_valid() {
        let sym = IntMatrix::from_i64_rows(&[&[2, -1, 3, 0], &[-1, 0, 1, 1], &[3, 1, -2, 2], &[0, 1, 2, 1]]);
        let v = SeifertMatrix::from_base_plus_symmetric(2, &sym).unwrap();
        assert_eq!(v.size(), 4);
    }
}
