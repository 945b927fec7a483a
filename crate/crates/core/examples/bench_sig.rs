// temporary profiling harness
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::*;
use std::time::Instant;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut sym = Matrix::<BigInt>::zero(6, 6);
    for i in 0..6 {
        for j in i..6 {
            let e = rng.gen_range(-3..=2);
            sym[(i, j)] = BigInt::from(e);
            sym[(j, i)] = BigInt::from(e);
        }
    }
    let v = SeifertMatrix::from_base_plus_symmetric(3, &sym).unwrap();

    let t0 = Instant::now();
    for _ in 0..100 {
        let _ = alexander_polynomial(&v);
    }
    println!("alexander_polynomial x100: {:?}", t0.elapsed());

    let d = alexander_polynomial(&v);
    let t0 = Instant::now();
    for _ in 0..100 {
        let _ = d.symmetric_reduce().unwrap();
    }
    println!("symmetric_reduce x100: {:?}", t0.elapsed());

    let red = d.symmetric_reduce().unwrap();
    let t0 = Instant::now();
    for _ in 0..100 {
        let _ = isolate_real_roots(&red, &BigRational::from(BigInt::from(-2)), &BigRational::from(BigInt::from(2)));
    }
    println!("isolate x100: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let mut n = 0;
    for i in 0..100u64 {
        let s = BigRational::new(BigInt::from(2*i+1), BigInt::from(997));
        if signature_at(&v, &s, 48, 4096).is_ok() { n += 1; }
    }
    println!("signature_at x100: {:?} ({n} ok)", t0.elapsed());

    let t0 = Instant::now();
    for i in 0..100u64 {
        let s = BigRational::new(BigInt::from(2*i+1), BigInt::from(997));
        let _ = interval::cos_sin_2pi(&s, 56);
    }
    println!("cos_sin x100: {:?}", t0.elapsed());
}
