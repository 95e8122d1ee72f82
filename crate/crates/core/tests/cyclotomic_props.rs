use charcodes::cyclotomic::CycInt;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn cyc(p: u32, raw: &[i64]) -> CycInt {
    CycInt::from_counts(p, &raw[..p as usize])
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..50, 7)
}

proptest! {
    #[test]
    fn ring_axioms(pi in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let p = PRIMES[pi];
        let (a, b, c) = (cyc(p, &a), cyc(p, &b), cyc(p, &c));
        prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn sigma_is_an_automorphism(pi in 0usize..4, a in coeffs(), b in coeffs(), k in 1i64..7) {
        let p = PRIMES[pi];
        let k = (k - 1) % (p as i64 - 1) + 1;
        let (a, b) = (cyc(p, &a), cyc(p, &b));
        let s = |z: &CycInt| z.galois_sigma(k).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
    }

    #[test]
    fn conjugation_is_an_involution(pi in 0usize..4, a in coeffs()) {
        let p = PRIMES[pi];
        let a = cyc(p, &a);
        prop_assert_eq!(a.galois_sigma(p as i64 - 1).unwrap(), a.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }
}

// The Galois trace against summing the complex embeddings numerically; the
// coefficients stay small enough for f64 to resolve the integer exactly.
#[test]
fn galois_sum_matches_numeric_embeddings() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for i in 0..1000 {
        let p = PRIMES[i % 4];
        let raw: Vec<i64> = (0..p).map(|_| rng.random_range(-1000..1000)).collect();
        let z = CycInt::from_counts(p, &raw);
        let numeric: f64 = (1..p).map(|k| z.embed(k).0).sum();
        assert_eq!(z.galois_sum().unwrap(), BigInt::from(numeric.round() as i64), "{z}");
        assert!((numeric - numeric.round()).abs() < 1e-6);
    }
}
