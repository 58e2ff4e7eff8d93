//! The involution `h -> h~` on monic polynomials over `F_{q^2}` and the
//! classification of its fixed points.
//!
//! `h~(t) = sum_i (-1)^{deg h - i} conj(c_i) t^i`. A matrix is conjugate to an
//! anti-hermitian one iff its characteristic polynomial is fixed by `~`; the
//! fixed monic polynomials factor uniquely into self-dual irreducibles and
//! dual pairs `g g~`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::field::{FFElement, FieldTower};
use super::poly::{factor, is_irreducible, FqPoly};
use crate::error::{Error, Result};
use crate::exactnum::Integer;
use crate::typelib::{w_value, NType};

pub fn tilde(h: &FqPoly, tower: &FieldTower) -> FqPoly {
    let k = &tower.ext;
    let deg = h.degree();
    FqPoly::from_coeffs(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let c = tower.conj(c);
                if (deg - i) % 2 == 1 {
                    k.neg(c)
                } else {
                    c
                }
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuFactorKind {
    SelfDual,
    DualPair,
}

/// A building block of a `~`-fixed polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuFactor {
    pub kind: GuFactorKind,
    /// The self-dual irreducible, or the product `g g~`.
    pub poly: FqPoly,
    pub degree: u32,
}

/// Decomposes a `~`-fixed monic polynomial into building blocks with multiplicities.
pub fn gu_factors(f: &FqPoly, tower: &FieldTower) -> Result<Vec<(GuFactor, u32)>> {
    let k = &tower.ext;
    if !f.is_monic() || tilde(f, tower) != *f {
        return Err(Error::NotAntihermitianClass);
    }
    let factors = factor(f, k);
    let mut out = Vec::new();
    for (g, e) in &factors {
        let g_dual = tilde(g, tower);
        if g_dual == *g {
            let degree = g.degree() as u32;
            out.push((GuFactor { kind: GuFactorKind::SelfDual, poly: g.clone(), degree }, *e));
        } else if *g < g_dual {
            let partner = factors.iter().find(|(h, _)| *h == g_dual);
            // multiplicativity of ~ forces the partner to appear equally often
            assert_eq!(partner.map(|p| p.1), Some(*e), "dual factor missing or unbalanced");
            let poly = g.mul(&g_dual, k);
            let degree = poly.degree() as u32;
            out.push((GuFactor { kind: GuFactorKind::DualPair, poly, degree }, *e));
        }
    }
    Ok(out)
}

/// Type of a `~`-fixed polynomial: each building block of degree `d`
/// occurring with multiplicity `e` contributes to `tau_{d,e}`.
pub fn gu_type_of(f: &FqPoly, tower: &FieldTower) -> Result<NType> {
    let mut tally: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for (block, e) in gu_factors(f, tower)? {
        *tally.entry((block.degree, e)).or_default() += 1;
    }
    NType::from_entries(tally.into_iter().map(|((d, e), m)| (d, e, m)))
}

/// All `~`-fixed monic polynomials of degree `d`, in a fixed order.
///
/// Fixedness pins coefficient `c_i` to the `q` elements with
/// `conj(c) = (-1)^{d-i} c`: the base field when `d - i` is even, the
/// trace-zero line when it is odd. So there are exactly `q^d` of them.
pub fn self_dual_monics(d: u32, tower: &FieldTower) -> impl Iterator<Item = FqPoly> + '_ {
    let fixed: Vec<FFElement> = tower.base.elements().map(|a| tower.embed(a)).collect();
    let trace_zero = tower.trace_zero();
    let q = tower.q();
    (0..q.pow(d)).map(move |mut idx| {
        let lower: Vec<FFElement> = (0..d)
            .map(|i| {
                let digit = (idx % q) as usize;
                idx /= q;
                if (d - i).is_multiple_of(2) {
                    fixed[digit]
                } else {
                    trace_zero[digit]
                }
            })
            .collect();
        FqPoly::monic_from_lower(&lower)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualRow {
    pub degree: u32,
    #[serde(with = "crate::exactnum::decimal")]
    pub count: Integer,
    /// `w_d(q)` for odd `d`, zero for even `d`.
    #[serde(with = "crate::exactnum::decimal")]
    pub expected: Integer,
    /// Irreducibles whose root `xi` fails `xi + xi^{q^d} = 0`.
    pub trace_failures: u64,
    pub pass: bool,
}

/// Scans the self-dual irreducibles of degree `<= d_max` over `F_{q^2}`:
/// they must have odd degree, their roots must have trace zero down to
/// `F_{q^d}`, and there must be `w_d(q)` of them in each odd degree.
pub fn check_self_dual_irreducibles(d_max: u32, tower: &FieldTower) -> Vec<SelfDualRow> {
    let k = &tower.ext;
    let q = tower.q();
    (1..=d_max)
        .map(|d| {
            let mut count = 0u64;
            let mut trace_failures = 0u64;
            for f in self_dual_monics(d, tower).filter(|f| is_irreducible(f, k)) {
                count += 1;
                // xi = t in F_{q^2}[t]/(f); xi^{q^d} by d successive q-th powers
                let t = FqPoly::t();
                let xi = t.rem(&f, k);
                let frob = (0..d).fold(xi.clone(), |h, _| h.pow_mod(u128::from(q), &f, k));
                if !xi.add(&frob, k).rem(&f, k).is_zero() {
                    trace_failures += 1;
                }
            }
            let count = Integer::from(count);
            let expected = if d % 2 == 1 { w_value(d, &Integer::from(q)) } else { Integer::from(0) };
            let pass = count == expected && trace_failures == 0;
            SelfDualRow { degree: d, count, expected, trace_failures, pass }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tower9() -> FieldTower {
        FieldTower::new(3).unwrap()
    }

    #[test]
    fn tilde_examples() {
        let tw = tower9();
        let k = &tw.ext;
        assert_eq!(tilde(&FqPoly::t(), &tw), FqPoly::t());
        for a in k.elements() {
            // t - a  ->  t + a^3
            let h = FqPoly::monic_from_lower(&[k.neg(a)]);
            let expected = FqPoly::monic_from_lower(&[k.pow(a, 3)]);
            assert_eq!(tilde(&h, &tw), expected);
        }
    }

    proptest! {
        #[test]
        fn tilde_is_multiplicative_involution(
            q in prop::sample::select(vec![2u64, 3, 4, 5]),
            da in 0u32..5, db in 0u32..5, ia in any::<u64>(), ib in any::<u64>(),
        ) {
            let tw = FieldTower::new(q).unwrap();
            let k = &tw.ext;
            let size = u64::from(k.size());
            let g = FqPoly::monic_by_index(k, da, ia % size.pow(da));
            let h = FqPoly::monic_by_index(k, db, ib % size.pow(db));
            prop_assert_eq!(tilde(&tilde(&g, &tw), &tw), g.clone());
            prop_assert!(tilde(&g, &tw).is_monic());
            prop_assert_eq!(tilde(&g.mul(&h, k), &tw), tilde(&g, &tw).mul(&tilde(&h, &tw), k));
        }
    }

    #[test]
    fn types_of_fixed_polynomials() {
        let tw = tower9();
        let k = &tw.ext;
        let ty = |e: &[(u32, u32, u32)]| NType::from_entries(e.iter().copied()).unwrap();
        assert_eq!(gu_type_of(&FqPoly::t(), &tw).unwrap(), ty(&[(1, 1, 1)]));
        for a in k.elements() {
            let b = k.neg(k.pow(a, 3));
            if a == b {
                continue;
            }
            // (t - a)(t + a^3) with t - a not self-dual
            let f = FqPoly::monic_from_lower(&[k.neg(a)]).mul(&FqPoly::monic_from_lower(&[k.pow(a, 3)]), k);
            assert_eq!(gu_type_of(&f, &tw).unwrap(), ty(&[(2, 1, 1)]));
            let blocks = gu_factors(&f, &tw).unwrap();
            assert_eq!(blocks.len(), 1);
            assert_eq!(blocks[0].0.kind, GuFactorKind::DualPair);
        }
        let not_fixed = FqPoly::monic_from_lower(&[FFElement::ONE]);
        assert_eq!(gu_type_of(&not_fixed, &tw), Err(Error::NotAntihermitianClass));
    }

    #[test]
    fn parameterization_matches_brute_force() {
        for q in [2u64, 3, 4, 5] {
            let tw = FieldTower::new(q).unwrap();
            let k = &tw.ext;
            let size = u64::from(k.size());
            for d in 1..=3u32 {
                let mut brute: Vec<FqPoly> = (0..size.pow(d))
                    .map(|i| FqPoly::monic_by_index(k, d, i))
                    .filter(|f| tilde(f, &tw) == *f)
                    .collect();
                let mut param: Vec<FqPoly> = self_dual_monics(d, &tw).collect();
                brute.sort();
                param.sort();
                assert_eq!(brute, param, "q = {q}, d = {d}");
            }
        }
    }

    #[test]
    fn self_dual_irreducibles_small() {
        let rows = check_self_dual_irreducibles(4, &tower9());
        let counts: Vec<_> = rows.iter().map(|r| r.count.clone()).collect();
        assert_eq!(counts, [3, 0, 8, 0].map(Integer::from));
        assert!(rows.iter().all(|r| r.pass));
        // even characteristic: the trace condition is 2 xi = 0
        let rows = check_self_dual_irreducibles(3, &FieldTower::new(2).unwrap());
        assert_eq!(rows[0].count, Integer::from(2));
        assert!(rows.iter().all(|r| r.pass));
    }
}
