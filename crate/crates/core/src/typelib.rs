//! n-types, group forms, and the combinatorics attached to them.
//!
//! An n-type records, for every pair `(d, e)`, how many distinct building
//! block polynomials of degree `d` occur with multiplicity `e` in a
//! characteristic polynomial. Its weight `sum d * e * mult` is `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_integer, Integer, RatPoly, Rational};

/// Largest n accepted by [`enumerate_types`]. There are 848_209 types of
/// weight 32 and the count grows roughly tenfold every eight steps.
pub const MAX_TYPE_N: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    GL,
    GU,
    SL,
    SU,
}

/// One of the four group forms together with the sign `eps` (+1 for the
/// linear forms, -1 for the unitary ones).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupForm(pub Family);

impl GroupForm {
    pub const GL: GroupForm = GroupForm(Family::GL);
    pub const GU: GroupForm = GroupForm(Family::GU);
    pub const SL: GroupForm = GroupForm(Family::SL);
    pub const SU: GroupForm = GroupForm(Family::SU);
    pub const ALL: [GroupForm; 4] = [Self::GL, Self::GU, Self::SL, Self::SU];

    pub fn family(self) -> Family {
        self.0
    }

    pub fn epsilon(self) -> i64 {
        match self.0 {
            Family::GL | Family::SL => 1,
            Family::GU | Family::SU => -1,
        }
    }

    pub fn is_special(self) -> bool {
        matches!(self.0, Family::SL | Family::SU)
    }

    pub fn is_unitary(self) -> bool {
        self.epsilon() < 0
    }

    /// The full (GL or GU) form with the same sign.
    pub fn ambient(self) -> GroupForm {
        if self.is_unitary() {
            Self::GU
        } else {
            Self::GL
        }
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            Family::GL => "GL",
            Family::GU => "GU",
            Family::SL => "SL",
            Family::SU => "SU",
        }
    }
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Self::GL),
            "GU" => Ok(Self::GU),
            "SL" => Ok(Self::SL),
            "SU" => Ok(Self::SU),
            _ => Err(Error::InvalidArgument(format!("unknown group form `{s}`"))),
        }
    }
}

/// An n-type: a sparse matrix of positive multiplicities indexed by `(d, e)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NType {
    n: u32,
    entries: BTreeMap<(u32, u32), u32>,
}

impl NType {
    /// Builds a type from `(d, e, multiplicity)` triples. Zero multiplicities
    /// are dropped and repeated `(d, e)` pairs are summed.
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, u32)>,
    {
        let mut map = BTreeMap::new();
        let mut n: u64 = 0;
        for (d, e, m) in entries {
            if d == 0 || e == 0 {
                return Err(Error::InvalidArgument(format!(
                    "type entry ({d}, {e}) must have positive degree and exponent"
                )));
            }
            if m == 0 {
                continue;
            }
            n += u64::from(d) * u64::from(e) * u64::from(m);
            *map.entry((d, e)).or_insert(0) += m;
        }
        if n == 0 {
            return Err(Error::InvalidArgument("empty type".into()));
        }
        let n = u32::try_from(n).map_err(|_| Error::bound("type weight", n, u32::MAX))?;
        Ok(Self { n, entries: map })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, d: u32, e: u32) -> u32 {
        self.entries.get(&(d, e)).copied().unwrap_or(0)
    }

    /// Canonical `(d, e, multiplicity)` triples, sorted by `(d, e)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.entries.iter().map(|(&(d, e), &m)| (d, e, m))
    }

    pub fn triples(&self) -> Vec<[u32; 3]> {
        self.entries().map(|(d, e, m)| [d, e, m]).collect()
    }

    /// Distinct exponents `e` that occur.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        let mut seen: Vec<u32> = self.entries.keys().map(|&(_, e)| e).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }

    /// `sum_e tau_{d,e}`: number of distinct building blocks of degree `d`.
    pub fn blocks_of_degree(&self, d: u32) -> u32 {
        self.entries.range((d, 0)..=(d, u32::MAX)).map(|(_, &m)| m).sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        let mut ds: Vec<u32> = self.entries.keys().map(|&(d, _)| d).collect();
        ds.dedup();
        ds.into_iter()
    }
}

impl Ord for NType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.entries()
            .cmp(other.entries())
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for NType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, e, m)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({d},{e}):{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for NType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NType{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct NTypeWire {
    n: u32,
    entries: Vec<[u32; 3]>,
}

impl Serialize for NType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NTypeWire { n: self.n, entries: self.triples() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = NTypeWire::deserialize(d)?;
        let ty = NType::from_entries(wire.entries.iter().map(|t| (t[0], t[1], t[2])))
            .map_err(serde::de::Error::custom)?;
        if ty.n != wire.n {
            return Err(serde::de::Error::custom(format!(
                "type entries have weight {} but n = {}",
                ty.n, wire.n
            )));
        }
        Ok(ty)
    }
}

/// All n-types in canonical order.
pub fn enumerate_types(n: u32) -> Result<Vec<NType>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_TYPE_N {
        return Err(Error::bound("n", n, MAX_TYPE_N));
    }
    let blocks: Vec<(u32, u32)> = (1..=n)
        .flat_map(|d| (1..=n / d).map(move |e| (d, e)))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_types(&blocks, 0, n, &mut current, &mut out);
    let mut types: Vec<NType> = out
        .into_iter()
        .map(|e| NType { n, entries: e.into_iter().map(|(d, e, m)| ((d, e), m)).collect() })
        .collect();
    types.sort();
    Ok(types)
}

fn fill_types(
    blocks: &[(u32, u32)],
    start: usize,
    remaining: u32,
    current: &mut Vec<(u32, u32, u32)>,
    out: &mut Vec<Vec<(u32, u32, u32)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &(d, e)) in blocks.iter().enumerate().skip(start) {
        let w = d * e;
        for m in 1..=remaining / w {
            current.push((d, e, m));
            fill_types(blocks, i + 1, remaining - m * w, current, out);
            current.pop();
        }
    }
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `w_d(x) = (1/d) sum_{m | d} mu(d/m) x^m`; `w_d(q)` counts monic
/// irreducible polynomials of degree `d` over a field with `q` elements.
pub fn w_poly(d: u32) -> RatPoly {
    assert!(d >= 1, "w_poly needs d >= 1");
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    for m in (1..=d).filter(|m| d.is_multiple_of(*m)) {
        let mu = mobius(u64::from(d / m));
        coeffs[m as usize] = Rational::new(Integer::from(mu), Integer::from(d));
    }
    RatPoly::from_coeffs(coeffs)
}

/// `w_d(q)` as an exact integer.
pub fn w_value(d: u32, q: &Integer) -> Integer {
    rational_to_integer(&w_poly(d).eval(q)).expect("w_d(q) is integral for integer q")
}

/// gcd of all exponents present in `ty` together with `r`.
pub fn iota(ty: &NType, r: &Integer) -> Integer {
    ty.exponents().fold(r.clone(), |g, e| g.gcd(&Integer::from(e)))
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}

pub fn multinomial(total: u64, parts: &[u64]) -> Result<Integer> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(Error::PartsMismatch { total, parts: sum });
    }
    let mut acc = Integer::one();
    let mut filled = 0u64;
    // product of binomials C(filled + part, part) avoids large factorials
    for &part in parts {
        for k in 1..=part {
            acc = acc * Integer::from(filled + k) / Integer::from(k);
        }
        filled += part;
    }
    Ok(acc)
}

/// `C(top, k)` for an integer (possibly smaller than `k`) top.
pub fn binomial(top: &Integer, k: u64) -> Integer {
    if top < &Integer::from(k) || top < &Integer::zero() {
        return Integer::zero();
    }
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (top - Integer::from(i)) / Integer::from(i + 1);
    }
    acc
}

/// `prod_d multinomial(sum_e tau_{d,e}; tau_{d,1}, tau_{d,2}, ...) * C(w_d(q), sum_e tau_{d,e})`.
///
/// This is the number of characteristic polynomials of type `ty` over a field
/// of `q` elements (and likewise for the unitary building blocks).
pub fn type_combinatorial_factor(ty: &NType, q: &Integer) -> Integer {
    let mut acc = Integer::one();
    for d in ty.degrees() {
        let parts: Vec<u64> = (1..=ty.n()).map(|e| u64::from(ty.get(d, e))).collect();
        let total: u64 = parts.iter().sum();
        let multi = multinomial(total, &parts).expect("parts sum by construction");
        acc *= multi * binomial(&w_value(d, q), total);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn ty(entries: &[(u32, u32, u32)]) -> NType {
        NType::from_entries(entries.iter().copied()).unwrap()
    }

    /// Brute-force count of monic irreducible polynomials over F_p by sieving
    /// products of smaller irreducibles, independent of the Mobius formula.
    fn irreducible_count_prime_field(p: u64, d: u32) -> u64 {
        // Represent polynomials as base-p digit vectors; total = p^d monic of degree d.
        let total = p.pow(d);
        let mut reducible = std::collections::HashSet::new();
        for d1 in 1..d {
            let d2 = d - d1;
            for a in 0..p.pow(d1) {
                for b in 0..p.pow(d2) {
                    let mut fa = digits(a, p, d1);
                    fa.push(1);
                    let mut fb = digits(b, p, d2);
                    fb.push(1);
                    let mut prod = vec![0u64; (d + 1) as usize];
                    for (i, x) in fa.iter().enumerate() {
                        for (j, y) in fb.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    reducible.insert(prod);
                }
            }
        }
        total - reducible.len() as u64
    }

    fn digits(mut v: u64, p: u64, len: u32) -> Vec<u64> {
        (0..len)
            .map(|_| {
                let r = v % p;
                v /= p;
                r
            })
            .collect()
    }

    #[test]
    fn types_of_small_n() {
        assert_eq!(enumerate_types(1).unwrap(), vec![ty(&[(1, 1, 1)])]);
        assert_eq!(
            enumerate_types(2).unwrap(),
            vec![ty(&[(1, 1, 2)]), ty(&[(1, 2, 1)]), ty(&[(2, 1, 1)])]
        );
        let three = enumerate_types(3).unwrap();
        let mut expected = vec![
            ty(&[(1, 1, 3)]),
            ty(&[(1, 1, 1), (1, 2, 1)]),
            ty(&[(1, 3, 1)]),
            ty(&[(1, 1, 1), (2, 1, 1)]),
            ty(&[(3, 1, 1)]),
        ];
        expected.sort();
        assert_eq!(three, expected);
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn type_counts_match_generating_function() {
        // coefficients of prod_k (1 - x^k)^{-sigma_0(k)}
        let expected = [1usize, 3, 5, 11, 17, 34, 52, 94, 145];
        for (i, &c) in expected.iter().enumerate() {
            let n = i as u32 + 1;
            let types = enumerate_types(n).unwrap();
            assert_eq!(types.len(), c, "n = {n}");
            assert!(types.iter().all(|t| t.n() == n));
        }
    }

    #[test]
    fn type_guard() {
        assert!(matches!(enumerate_types(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(enumerate_types(MAX_TYPE_N + 1), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(w_poly(1), RatPoly::x());
        assert_eq!(w_value(2, &int(3)), int(irreducible_count_prime_field(3, 2) as i64));
        assert_eq!(w_value(2, &int(3)), int(3));
        assert_eq!(w_value(3, &int(2)), int(irreducible_count_prime_field(2, 3) as i64));
        assert_eq!(w_value(3, &int(2)), int(2));
        for (p, d) in [(2, 4), (3, 3), (5, 2), (2, 5)] {
            assert_eq!(
                w_value(d, &int(p as i64)),
                int(irreducible_count_prime_field(p, d) as i64),
                "p = {p}, d = {d}"
            );
        }
    }

    #[test]
    fn necklace_identity() {
        for q in [2i64, 3, 5] {
            let q = int(q);
            for d in 1..=12u32 {
                let sum: Integer = (1..=d)
                    .filter(|m| d % m == 0)
                    .map(|m| Integer::from(m) * w_value(m, &q))
                    .sum();
                assert_eq!(sum, q.pow(d));
            }
        }
        for d in 1..=12 {
            let scaled = w_poly(d).scale(&Rational::from_integer(Integer::from(d)));
            assert!(scaled.to_integer().is_some());
        }
    }

    #[test]
    fn self_dual_exclusion_identity() {
        for q in [2i64, 3, 5] {
            let q = int(q);
            let q2 = &q * &q;
            for n in (2..=12u32).step_by(2) {
                let half = n / 2;
                let lhs = w_value(half, &q2);
                let rhs = Integer::from(2) * w_value(n, &q);
                if half % 2 == 0 {
                    assert_eq!(lhs, rhs, "n = {n}");
                } else {
                    assert_eq!(lhs - w_value(half, &q), rhs, "n = {n}");
                }
            }
        }
        // the uncorrected identity fails as soon as n/2 is odd
        assert_ne!(w_value(1, &int(9)), Integer::from(2) * w_value(2, &int(3)));
    }

    #[test]
    fn iota_values() {
        assert_eq!(iota(&ty(&[(1, 1, 2)]), &int(2)), int(1));
        assert_eq!(iota(&ty(&[(1, 2, 1)]), &int(2)), int(2));
        assert_eq!(iota(&ty(&[(2, 1, 1)]), &int(4)), int(1));
        assert_eq!(iota(&ty(&[(1, 2, 1), (1, 4, 1)]), &int(8)), int(2));
        assert_eq!(iota(&ty(&[(1, 3, 1)]), &int(4)), int(1));
        for t in enumerate_types(6).unwrap() {
            for r in 1..=12i64 {
                let g = iota(&t, &int(r));
                assert!((int(r) % &g).is_zero());
                assert!(t.exponents().all(|e| (Integer::from(e) % &g).is_zero()));
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), int(2));
        assert_eq!(multinomial(2, &[2]).unwrap(), int(1));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), int(12));
        assert_eq!(multinomial(0, &[]).unwrap(), int(1));
        assert_eq!(
            multinomial(3, &[1, 1]),
            Err(Error::PartsMismatch { total: 3, parts: 2 })
        );
        assert_eq!(multinomial(10, &[3, 3, 4]).unwrap(), factorial(10) / (int(36) * int(24)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&int(3), 2), int(3));
        assert_eq!(binomial(&int(2), 3), int(0));
        assert_eq!(binomial(&int(0), 0), int(1));
        assert_eq!(binomial(&int(10), 5), int(252));
    }

    #[test]
    fn combinatorial_factor() {
        assert_eq!(type_combinatorial_factor(&ty(&[(1, 1, 2)]), &int(3)), int(3));
        assert_eq!(type_combinatorial_factor(&ty(&[(2, 1, 1)]), &int(3)), int(3));
        assert_eq!(type_combinatorial_factor(&ty(&[(1, 1, 1), (1, 2, 1)]), &int(3)), int(6));
    }

    #[test]
    fn factors_partition_monic_polynomials() {
        for q in [2i64, 3, 4, 5, 7] {
            for n in 1..=7 {
                let q = int(q);
                let total: Integer = enumerate_types(n)
                    .unwrap()
                    .iter()
                    .map(|t| type_combinatorial_factor(t, &q))
                    .sum();
                assert_eq!(total, q.pow(n));
            }
        }
    }

    #[test]
    fn json_shape() {
        let t = ty(&[(1, 1, 2)]);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"n":2,"entries":[[1,1,2]]}"#);
        let back: NType = serde_json::from_str(r#"{"n":3,"entries":[[1,1,1],[2,1,1]]}"#).unwrap();
        assert_eq!(back, ty(&[(2, 1, 1), (1, 1, 1)]));
        assert!(serde_json::from_str::<NType>(r#"{"n":4,"entries":[[1,1,1]]}"#).is_err());
    }

    #[test]
    fn forms() {
        assert_eq!("su".parse::<GroupForm>().unwrap(), GroupForm::SU);
        assert!("sp".parse::<GroupForm>().is_err());
        assert_eq!(GroupForm::SU.epsilon(), -1);
        assert!(GroupForm::SL.is_special());
        assert_eq!(GroupForm::SU.ambient(), GroupForm::GU);
        assert_eq!(serde_json::to_string(&GroupForm::GU).unwrap(), r#""GU""#);
    }
}
