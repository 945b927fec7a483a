//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the checked statement. Run with `cargo test --test acceptance`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ribbon_core::alexander::{delta_target, t_minus_2, two_t_minus_1};
use ribbon_core::classify::{classify_kn, classify_knot, DerivativeInput, DerivativeSpec};
use ribbon_core::{
    alexander_polynomial, alexander_via_burau, bl_pair, bl_vanishes_on, blanchfield_matrix,
    braid_to_seifert, ext1_linear_pair, gamma_braid, genus1_metabolizers, kn_seifert,
    lagrangian_set, module_type, rho0, signature_at, signature_function, smith_normal_form,
    AbelianGroup, BraidWord, FractionModRing, IntMatrix, LaurentPoly, Matrix, ModuleKind,
    Rho0Sign, SeifertMatrix, DEFAULT_PRECISION_BITS as DP, MAX_PRECISION_BITS as MP,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Deterministic valid Seifert matrix: standard skew base plus a random
/// symmetric matrix, entries within [-3, 3].
fn random_seifert(rng: &mut ChaCha8Rng, genus: usize) -> SeifertMatrix {
    let n = 2 * genus;
    let mut sym = Matrix::<BigInt>::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let hi = if j == i + 1 && i % 2 == 0 { 2 } else { 3 };
            let e = rng.gen_range(-3..=hi);
            sym[(i, j)] = BigInt::from(e);
            sym[(j, i)] = BigInt::from(e);
        }
    }
    SeifertMatrix::from_base_plus_symmetric(genus, &sym).expect("base-plus-symmetric is valid")
}

fn random_knot_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    loop {
        let strands = rng.gen_range(2..=max_strands);
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let idx = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    idx
                } else {
                    -idx
                }
            })
            .collect();
        let w = BraidWord::new(strands, letters).unwrap();
        if w.is_knot_closure() {
            return w;
        }
    }
}

/// Floating-point eigenvalue-count oracle for the signature at `ω = e^{2πis}`,
/// via the real 2n×2n embedding of the Hermitian matrix.
fn float_signature_at(v: &SeifertMatrix, s: f64) -> i64 {
    let n = v.size();
    if n == 0 {
        return 0;
    }
    let c = (2.0 * std::f64::consts::PI * s).cos();
    let sn = (2.0 * std::f64::consts::PI * s).sin();
    let m = v.matrix();
    let as_f = |x: &BigInt| -> f64 { x.to_string().parse().unwrap() };
    let a = |i: usize, j: usize| (1.0 - c) * (as_f(&m[(i, j)]) + as_f(&m[(j, i)]));
    let b = |i: usize, j: usize| sn * (as_f(&m[(j, i)]) - as_f(&m[(i, j)]));
    let big = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, cidx| {
        let (i, j) = (r % n, cidx % n);
        match (r / n, cidx / n) {
            (0, 0) | (1, 1) => a(i, j),
            (0, 1) => -b(i, j),
            _ => b(i, j),
        }
    });
    let eig = big.symmetric_eigenvalues();
    let scale = eig.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let tol = 1e-9 * scale;
    let pos = eig.iter().filter(|&&x| x > tol).count() as i64;
    let neg = eig.iter().filter(|&&x| x < -tol).count() as i64;
    (pos - neg) / 2
}

#[test]
fn criterion_01_alexander_polynomial_of_the_family() {
    for n in -6..=6 {
        let d = alexander_polynomial(&kn_seifert(n));
        assert_eq!(
            d.unit_canonical(),
            delta_target().unit_canonical(),
            "K_{n}: canonical Alexander polynomial"
        );
    }
    println!("criterion 01 PASS: alexander_polynomial(K_n) ≐ (t-2)(2t-1) for n in [-6, 6]");
}

#[test]
fn criterion_02_module_dichotomy() {
    for n in -12..=12i64 {
        let kind = module_type(&kn_seifert(n)).unwrap().kind;
        let expect = if n % 3 == 0 { ModuleKind::SplitT2T1 } else { ModuleKind::CyclicT2T1 };
        assert_eq!(kind, expect, "K_{n}");
    }
    println!("criterion 02 PASS: module of K_n split iff 3 | n, cyclic otherwise, n in [-12, 12]");
}

#[test]
fn criterion_03_ext_computation() {
    let e = ext1_linear_pair(&t_minus_2(), &two_t_minus_1()).unwrap();
    assert_eq!(e, AbelianGroup::cyclic(3));
    assert_eq!(t_minus_2().resultant(&two_t_minus_1()).unwrap(), BigInt::from(3));
    println!("criterion 03 PASS: Ext of (t-2, 2t-1) is Z/3; resultant is 3");
}

#[test]
fn criterion_04_blanchfield_isometry() {
    for n in [1i64, 2] {
        let v = kn_seifert(n);
        let facts = module_type(&v).unwrap();
        let g = facts.cyclic_generator().unwrap();
        let b = blanchfield_matrix(&v);
        let got = bl_pair(&b, g, g);
        let t1sq = LaurentPoly::from_i64(0, &[-1, 1]).pow(2);
        let expected = FractionModRing::from_num_den(t1sq.scale(&BigInt::from(-n)), delta_target());
        assert_eq!(got, expected, "K_{n} self-pairing");
    }
    println!("criterion 04 PASS: cyclic-generator self-pairing is -x(t-1)^2/((t-2)(2t-1)), x = n mod 3, for n = 1, 2");
}

#[test]
fn criterion_05_two_lagrangians_vanishing() {
    for n in -6..=6i64 {
        let v = kn_seifert(n);
        let facts = module_type(&v).unwrap();
        let lags = lagrangian_set(&facts);
        assert_eq!(lags.len(), 2, "K_{n}");
        assert_ne!(lags[0].factor, lags[1].factor);
        let pres = facts.presentation();
        assert!(!pres.eq_elt(&lags[0].generator, &lags[1].generator), "K_{n} distinct");
        let b = blanchfield_matrix(&v);
        for l in &lags {
            assert!(bl_vanishes_on(&b, l), "K_{n} vanishing on {:?}", l.factor);
        }
        let cross = bl_pair(&b, &lags[0].generator, &lags[1].generator);
        assert!(!cross.is_zero(), "K_{n} cross-pairing nonzero");
    }
    println!("criterion 05 PASS: exactly two distinct lagrangians for every K_n, n in [-6, 6]; pairing vanishes on each, cross-pairing nonzero");
}

#[test]
fn criterion_06_negative_braid_signatures() {
    for k in 1..=4u32 {
        let w = gamma_braid(k);
        let v = braid_to_seifert(&w).unwrap();
        let sf = signature_function(&v, DP, MP).unwrap();
        assert!(sf.arc_values().iter().all(|&x| x >= 0), "γ_{k} arc values nonnegative");
        let at_half = signature_at(&v, &rat(1, 2), DP, MP).unwrap();
        assert!(at_half > 0, "γ_{k}: signature at ω = -1 is {at_half}");
        let r = rho0(&v, DP, MP).unwrap();
        assert_eq!(r.sign, Rho0Sign::Positive, "γ_{k}: rho0 enclosure {:?}", r.enclosure);
        assert!(r.enclosure.lo.is_positive());
    }
    println!("criterion 06 PASS: γ_k (k = 1..4) closures have nonnegative signature functions, σ(-1) > 0, certified rho0 > 0");
}

#[test]
fn criterion_07_twist_family_counts() {
    for k in [-3i64, -2, -1, 0, 1, 2, 3] {
        let r = classify_kn(3 * k, DP, MP).unwrap();
        let expect = if k == 0 || k == -1 { (2, 2) } else { (1, 1) };
        assert_eq!(
            (r.disc_count.min, r.disc_count.max),
            expect,
            "K_{} count",
            3 * k
        );
    }
    println!("criterion 07 PASS: K_3k has disc count [2,2] for k in {{0,-1}} and [1,1] for k in {{-3,-2,1,2,3}}");
}

#[test]
fn criterion_08_unknotted_derivative_counts() {
    for n in [-1i64, -2] {
        let spec = DerivativeSpec { p1: DerivativeInput::Unknot, p2: DerivativeInput::Unknot };
        let r = classify_knot(&kn_seifert(n), &spec, DP, MP).unwrap();
        assert_eq!((r.disc_count.min, r.disc_count.max), (2, 2), "K_{n}");
    }
    println!("criterion 08 PASS: K_-1 and K_-2 with unknotted derivatives have exactly two discs");
}

#[test]
fn criterion_09_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    // Exact signature vs floating eigenvalue counts.
    let mut points = 0usize;
    for i in 0..50 {
        let genus = 1 + (i % 3);
        let v = random_seifert(&mut rng, genus);
        let mut done = 0usize;
        while done < 200 {
            let den = rng.gen_range(3..=997u64);
            let num = rng.gen_range(1..den);
            let s = BigRational::new(BigInt::from(num), BigInt::from(den));
            match signature_at(&v, &s, 48, MP) {
                Ok(sig) => {
                    let sf = s.numer().to_string().parse::<f64>().unwrap()
                        / s.denom().to_string().parse::<f64>().unwrap();
                    assert_eq!(sig, float_signature_at(&v, sf), "matrix {i}, s = {s}");
                    done += 1;
                    points += 1;
                }
                Err(ribbon_core::Error::AtJumpPoint) => continue,
                Err(e) => panic!("unexpected error at s = {s}: {e}"),
            }
        }
    }
    assert_eq!(points, 50 * 200);
    // Burau route vs Seifert-matrix route for the Alexander polynomial.
    for _ in 0..50 {
        let w = random_knot_braid(&mut rng, 4, 12);
        let via_burau = alexander_via_burau(&w).unwrap();
        let via_seifert = alexander_polynomial(&braid_to_seifert(&w).unwrap());
        assert!(via_burau.doteq_equal(&via_seifert), "braid {w}");
    }
    println!("criterion 09 PASS: exact signature matches the floating oracle at 200 points on each of 50 matrices; Burau and Seifert-matrix Alexander polynomials agree on 50 braids");
}

#[test]
fn criterion_10_invariant_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0010);
    // Alexander polynomial invariants on random valid Seifert matrices.
    for i in 0..40 {
        let v = random_seifert(&mut rng, 1 + (i % 3));
        let d = alexander_polynomial(&v);
        assert!(d.doteq_equal(&d.conj()), "palindromic");
        assert!(d.eval_rat(&rat(1, 1)).is_one(), "Δ(1) = 1");
        let at_minus1 = d.eval_rat(&rat(-1, 1));
        assert!(at_minus1.is_integer());
        assert!((at_minus1.to_integer() % 2i64).abs().is_one(), "|Δ(-1)| odd");
    }
    // Signature-function invariants.
    for i in 0..10 {
        let v = random_seifert(&mut rng, 1 + (i % 2));
        let sf = signature_function(&v, DP, MP).unwrap();
        let values = sf.arc_values();
        assert!(values.iter().all(|v| v % 2 == 0), "even values");
        let mut rev = values.clone();
        rev.reverse();
        assert_eq!(values, rev, "symmetric under s ↔ 1-s");
        assert_eq!(*values.first().unwrap(), 0, "zero near ω = 1");
        assert_eq!(*values.last().unwrap(), 0, "zero near ω = 1");
    }
    // Smith normal form invariants.
    for _ in 0..25 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let a = Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9)));
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.w), snf.s, "S = UAW");
        assert!(snf.u.det().abs().is_one(), "U unimodular");
        assert!(snf.w.det().abs().is_one(), "W unimodular");
        let d = snf.diagonal();
        for k in 1..d.len() {
            if !d[k].is_zero() {
                assert!(!d[k - 1].is_zero() && (&d[k] % &d[k - 1]).is_zero(), "divisibility chain");
            }
        }
        for i in 0..rows.min(cols) {
            for j in 0..cols.min(rows) {
                if i != j && i < rows && j < cols {
                    assert!(snf.s[(i, j)].is_zero(), "diagonal");
                }
            }
        }
    }
    // rho0 additivity under block sums.
    let g1 = braid_to_seifert(&gamma_braid(1)).unwrap();
    let g2 = braid_to_seifert(&gamma_braid(2)).unwrap();
    for (a, b) in [(&g1, &g1), (&g1, &g2)] {
        let ra = rho0(a, DP, MP).unwrap();
        let rb = rho0(b, DP, MP).unwrap();
        let rsum = rho0(&a.direct_sum(b), DP, MP).unwrap();
        let combined = ra.enclosure.add(&rb.enclosure);
        assert!(
            rsum.enclosure.lo <= combined.hi && combined.lo <= rsum.enclosure.hi,
            "additivity enclosures intersect: {:?} vs {:?}",
            rsum.enclosure,
            combined
        );
    }
    println!("criterion 10 PASS: Δ palindromic with Δ(1)=1 and |Δ(-1)| odd; σ even/symmetric/0 near ω=1; SNF chain with unimodular factors; rho0 additive under block sums");
}

#[test]
fn report_schema_round_trip() {
    let r = classify_kn(0, DP, MP).unwrap();
    let json = r.render_json();
    assert!(json.contains("\"disc_count\""));
    let back = ribbon_core::ClassificationReport::parse_json(&json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn metabolizer_lagrangian_pairing_examples() {
    // K_3: (1,-1) represents the ⟨kα+β⟩ lagrangian, (0,1) the ⟨α⟩ one.
    let v = kn_seifert(3);
    let facts = module_type(&v).unwrap();
    let mets = genus1_metabolizers(&v);
    let images: Vec<_> = mets
        .iter()
        .map(|m| ribbon_core::metabolizer_image(&v, m, &facts).unwrap().factor)
        .collect();
    assert_eq!(images.len(), 2);
    assert_ne!(images[0], images[1]);
}

#[test]
fn validate_seifert_reported_conditions() {
    let bad = IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]);
    let err = SeifertMatrix::new(bad).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("det"), "names the failing condition: {msg}");
}
