//! Dense polynomials over a [`FieldDesc`] and their factorization.

use std::cmp::Ordering;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FFElement, FieldDesc};

const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Coefficients constant term first, no trailing zeros. The field is passed
/// to each operation rather than stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FqPoly {
    coeffs: Vec<FFElement>,
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl FqPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FFElement::ONE)
    }

    pub fn constant(c: FFElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![FFElement::ZERO, FFElement::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<FFElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Monic polynomial `t^n + sum_{i<n} lower[i] t^i`.
    pub fn monic_from_lower(lower: &[FFElement]) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(FFElement::ONE);
        Self { coeffs }
    }

    /// The `index`-th monic polynomial of degree `n`: lower coefficients are the
    /// base-`q` digits of `index`.
    pub fn monic_by_index(field: &FieldDesc, n: u32, mut index: u64) -> Self {
        let q = u64::from(field.size());
        let lower: Vec<_> = (0..n)
            .map(|_| {
                let c = FFElement((index % q) as u32);
                index /= q;
                c
            })
            .collect();
        Self::monic_from_lower(&lower)
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElement {
        self.coeffs.get(i).copied().unwrap_or(FFElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FFElement::ONE]
    }

    /// Degree, with `deg 0 = 0` by convention (check [`is_zero`](Self::is_zero) first).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FFElement {
        self.coeffs.last().copied().unwrap_or(FFElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FFElement::ONE
    }

    pub fn add(&self, other: &Self, k: &FieldDesc) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, k: &FieldDesc) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: FFElement, k: &FieldDesc) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, k: &FieldDesc) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FFElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self, k: &FieldDesc) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree();
        let inv_lead = k.inv(divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![FFElement::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = k.mul(rem[top], inv_lead);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = k.sub(rem[shift + i], k.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, k: &FieldDesc) -> Self {
        self.div_rem(divisor, k).1
    }

    /// Quotient of an exact division.
    pub fn div_exact(&self, divisor: &Self, k: &FieldDesc) -> Self {
        let (q, r) = self.div_rem(divisor, k);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, k: &FieldDesc) -> Self {
        match k.inv(self.leading()) {
            Some(inv) => self.scale(inv, k),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self, k: &FieldDesc) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &FieldDesc) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(k.from_prime((i % k.p() as usize) as u32), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: FFElement, k: &FieldDesc) -> FFElement {
        self.coeffs.iter().rev().fold(FFElement::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self, k: &FieldDesc) -> Self {
        let mut base = self.rem(modulus, k);
        let mut acc = Self::one().rem(modulus, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(modulus, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k).rem(modulus, k);
            }
        }
        acc
    }

    /// Applies a coefficient map.
    pub fn map_coeffs(&self, f: impl Fn(FFElement) -> FFElement) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("#{}", c.0),
                1 => format!("#{}*t", c.0),
                _ => format!("#{}*t^{i}", c.0),
            })
            .collect();
        terms.join(" + ")
    }
}

/// `q^d`, which must fit in `u128`.
fn field_power(k: &FieldDesc, d: usize) -> u128 {
    u128::from(k.size()).checked_pow(d as u32).expect("extension too large for exponent arithmetic")
}

/// Square-free decomposition: pairs `(g, m)` with `f = prod g^m`, each `g`
/// square-free, monic, of positive degree.
fn square_free(f: &FqPoly, k: &FieldDesc) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative(k);
    let mut c = f.gcd(&df, k);
    let mut w = f.div_exact(&c, k);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, k);
        let z = w.div_exact(&y, k);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, k);
    }
    if !c.is_one() {
        // c is a polynomial in t^p; take its p-th root coefficientwise
        let p = k.p() as usize;
        let root_exp = u64::from(k.size() / k.p());
        let root = FqPoly::from_coeffs(c.coeffs.iter().step_by(p).map(|&a| k.pow(a, root_exp)).collect());
        for (g, m) in square_free(&root, k) {
            out.push((g, m * k.p()));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn distinct_degree(f: &FqPoly, k: &FieldDesc) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let t = FqPoly::t();
    let mut h = t.rem(&rest, k);
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(u128::from(k.size()), &rest, k);
        let g = rest.gcd(&h.sub(&t, k), k);
        if !g.is_one() {
            rest = rest.div_exact(&g, k);
            h = h.rem(&rest, k);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

fn random_poly(deg_bound: usize, k: &FieldDesc, rng: &mut ChaCha8Rng) -> FqPoly {
    let q = u64::from(k.size());
    FqPoly::from_coeffs((0..deg_bound).map(|_| FFElement((rng.next_u64() % q) as u32)).collect())
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a square-free product of
/// irreducibles of degree `d`.
fn equal_degree(f: &FqPoly, d: usize, k: &FieldDesc, rng: &mut ChaCha8Rng, out: &mut Vec<FqPoly>) {
    if f.degree() == d {
        out.push(f.clone());
        return;
    }
    loop {
        let a = random_poly(f.degree(), k, rng);
        if a.degree() == 0 {
            continue;
        }
        let b = if k.p() == 2 {
            // trace of a from F_{q^d} down to F_2
            let steps = k.degree() as usize * d;
            let mut term = a.rem(f, k);
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.mul(&term, k).rem(f, k);
                acc = acc.add(&term, k);
            }
            acc
        } else {
            a.pow_mod((field_power(k, d) - 1) / 2, f, k).sub(&FqPoly::one(), k)
        };
        let g = f.gcd(&b, k);
        if !g.is_one() && g.degree() < f.degree() {
            let other = f.div_exact(&g, k);
            equal_degree(&g, d, k, rng, out);
            equal_degree(&other, d, k, rng, out);
            return;
        }
    }
}

/// Factors a monic nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor(f: &FqPoly, k: &FieldDesc) -> Vec<(FqPoly, u32)> {
    assert!(f.is_monic(), "factor expects a monic polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (g, m) in square_free(f, k) {
        for (part, d) in distinct_degree(&g, k) {
            let mut pieces = Vec::new();
            equal_degree(&part, d, k, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|p| (p, m)));
        }
    }
    out.sort();
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FqPoly, k: &FieldDesc) -> bool {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return false;
    }
    let f = f.monic(k);
    let t = FqPoly::t();
    let frob_power = |m: usize| {
        // t^{q^m} mod f via m successive q-th powers
        (0..m).fold(t.rem(&f, k), |h, _| h.pow_mod(u128::from(k.size()), &f, k))
    };
    if frob_power(n).sub(&t.rem(&f, k), k).rem(&f, k).is_zero() {
        let mut primes = Vec::new();
        let mut m = n;
        let mut r = 2;
        while m > 1 {
            if m.is_multiple_of(r) {
                primes.push(r);
                while m.is_multiple_of(r) {
                    m /= r;
                }
            }
            r += 1;
        }
        primes.iter().all(|&r| f.gcd(&frob_power(n / r).sub(&t, k), k).is_one())
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::field::make_field;
    use proptest::prelude::*;

    fn el(c: u32) -> FFElement {
        FFElement(c)
    }

    fn poly(cs: &[u32]) -> FqPoly {
        FqPoly::from_coeffs(cs.iter().map(|&c| el(c)).collect())
    }

    fn recombine(factors: &[(FqPoly, u32)], k: &FieldDesc) -> FqPoly {
        factors.iter().fold(FqPoly::one(), |acc, (g, m)| {
            (0..*m).fold(acc, |acc, _| acc.mul(g, k))
        })
    }

    #[test]
    fn small_factorizations() {
        let f3 = make_field(3, 1).unwrap();
        // t^2 - 1 = (t + 1)(t - 1) = (t + 1)(t + 2)
        assert_eq!(factor(&poly(&[2, 0, 1]), &f3), vec![(poly(&[1, 1]), 1), (poly(&[2, 1]), 1)]);
        assert_eq!(factor(&poly(&[1, 0, 1]), &f3), vec![(poly(&[1, 0, 1]), 1)]);
        // t^9 - t: all monic irreducibles of degree 1 and 2
        let mut cs = vec![0u32; 10];
        cs[1] = 2;
        cs[9] = 1;
        let fs = factor(&poly(&cs), &f3);
        assert_eq!(fs.iter().filter(|(g, _)| g.degree() == 1).count(), 3);
        assert_eq!(fs.iter().filter(|(g, _)| g.degree() == 2).count(), 3);
        assert!(fs.iter().all(|(_, m)| *m == 1));
        // repeated factors, including a p-th power
        let g = poly(&[1, 1]).mul(&poly(&[1, 0, 1]), &f3);
        let f = (0..6).fold(FqPoly::one(), |acc, _| acc.mul(&g, &f3));
        assert_eq!(factor(&f, &f3), vec![(poly(&[1, 1]), 6), (poly(&[1, 0, 1]), 6)]);
    }

    #[test]
    fn even_characteristic() {
        let f4 = make_field(2, 2).unwrap();
        for idx in 0..4u64.pow(4) {
            let f = FqPoly::monic_by_index(&f4, 4, idx);
            let fs = factor(&f, &f4);
            assert_eq!(recombine(&fs, &f4), f);
            assert!(fs.iter().all(|(g, _)| is_irreducible(g, &f4)));
        }
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 3 over F_4 is (64 - 4) / 3 = 20
        let f4 = make_field(2, 2).unwrap();
        let count = (0..64u64)
            .filter(|&i| is_irreducible(&FqPoly::monic_by_index(&f4, 3, i), &f4))
            .count();
        assert_eq!(count, 20);
        // and of degree 4 over F_3: (81 - 9) / 4 = 18
        let f3 = make_field(3, 1).unwrap();
        let count = (0..81u64)
            .filter(|&i| is_irreducible(&FqPoly::monic_by_index(&f3, 4, i), &f3))
            .count();
        assert_eq!(count, 18);
    }

    #[test]
    fn division_identity() {
        let k = make_field(5, 2).unwrap();
        let a = FqPoly::monic_by_index(&k, 5, 123_456);
        let b = FqPoly::monic_by_index(&k, 2, 77);
        let (q, r) = a.div_rem(&b, &k);
        assert!(r.is_zero() || r.degree() < 2);
        assert_eq!(q.mul(&b, &k).add(&r, &k), a);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factorization_recombines(
            field in prop::sample::select(vec![(3u64, 1u32), (5, 1), (3, 2), (2, 3), (7, 1)]),
            deg in 1u32..7,
            seed in any::<u64>(),
        ) {
            let k = make_field(field.0, field.1).unwrap();
            let idx = seed % u64::from(k.size()).pow(deg);
            let f = FqPoly::monic_by_index(&k, deg, idx);
            let fs = factor(&f, &k);
            prop_assert_eq!(recombine(&fs, &k), f);
            for (g, _) in &fs {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible(g, &k));
            }
            let mut distinct: Vec<_> = fs.iter().map(|(g, _)| g.clone()).collect();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), fs.len());
        }
    }
}
