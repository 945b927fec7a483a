use num_bigint::BigInt;
use num_traits::{Signed, Zero, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::*;
use std::time::Instant;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xABCD);
    let t0 = Instant::now();
    for _ in 0..500 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let a = Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9)));
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.w), snf.s);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.w.det().abs().is_one());
        let d = snf.diagonal();
        for i in 1..d.len() {
            if !d[i].is_zero() {
                assert!((&d[i] % &d[i - 1]).is_zero());
            }
        }
    }
    println!("500 SNF cases OK in {:?}", t0.elapsed());
}
