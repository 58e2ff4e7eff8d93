//! Factorization soundness on 10^5 random monic polynomials per field.

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regzeta::oracle::{factor, is_irreducible, make_field, FFElement, FqPoly};

#[test]
fn recombination_over_small_fields() {
    for (p, f) in [(3u64, 1u32), (5, 1), (2, 2), (3, 2), (5, 2)] {
        let k = make_field(p, f).unwrap();
        let q = u64::from(k.size());
        let mut rng = ChaCha8Rng::seed_from_u64(p * 100 + u64::from(f));
        for _ in 0..100_000 {
            let deg = 1 + (rng.next_u64() % 6) as usize;
            let lower: Vec<FFElement> = (0..deg).map(|_| FFElement((rng.next_u64() % q) as u32)).collect();
            let poly = FqPoly::monic_from_lower(&lower);
            let factors = factor(&poly, &k);
            let product = factors
                .iter()
                .fold(FqPoly::one(), |acc, (g, m)| (0..*m).fold(acc, |acc, _| acc.mul(g, &k)));
            assert_eq!(product, poly, "F_{p}^{f}: {}", poly.display());
            // spot-check irreducibility, which is slower than factoring
            if rng.next_u64() % 64 == 0 {
                assert!(factors.iter().all(|(g, _)| is_irreducible(g, &k)));
            }
        }
    }
}
