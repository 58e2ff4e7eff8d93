//! Group and centralizer orders as polynomials in the residue field size.
//!
//! `v_eps(x) = x^{n^2} prod_{d=1..n} (1 - eps^d x^{-d})` evaluates to the
//! order of GL_n (eps = 1) or GU_n (eps = -1) over the residue field, and
//! `u_eps^tau(x) = x^n prod_{d,e} (1 - eps^d x^{-d})^{tau_{d,e}}` to the order
//! of the centralizer of a regular element of type `tau`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{IntPoly, Integer};
use crate::typelib::NType;

fn sign_pow(eps: i64, d: u32) -> i64 {
    if eps < 0 && d % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `x^d - eps^d`, i.e. `x^d (1 - eps^d x^{-d})`.
fn cyclotomic_like(d: u32, eps: i64) -> IntPoly {
    let mut coeffs = vec![Integer::from(0); d as usize + 1];
    coeffs[0] = Integer::from(-sign_pow(eps, d));
    coeffs[d as usize] = Integer::one();
    IntPoly::from_coeffs(coeffs)
}

fn check_eps(eps: i64) {
    assert!(eps == 1 || eps == -1, "eps must be +1 or -1, got {eps}");
}

type VKey = (u32, i64);
type UKey = (NType, i64);

#[derive(Default)]
struct Cache {
    v: RwLock<HashMap<VKey, Arc<IntPoly>>>,
    u: RwLock<HashMap<UKey, Arc<IntPoly>>>,
    quotient: RwLock<HashMap<UKey, Arc<IntPoly>>>,
}

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Cache::default)
}

fn cached<K, F>(map: &RwLock<HashMap<K, Arc<IntPoly>>>, key: K, build: F) -> Result<Arc<IntPoly>>
where
    K: std::hash::Hash + Eq,
    F: FnOnce() -> Result<IntPoly>,
{
    if let Some(hit) = map.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let value = Arc::new(build()?);
    Ok(map.write().unwrap().entry(key).or_insert(value).clone())
}

/// `v_eps(x)` expanded in Z[x].
pub fn v_poly(n: u32, eps: i64) -> Arc<IntPoly> {
    check_eps(eps);
    assert!(n >= 1, "v_poly needs n >= 1");
    cached(&cache().v, (n, eps), || {
        let shift = (n * n - n * (n + 1) / 2) as usize;
        let prod = (1..=n).fold(IntPoly::one(), |acc, d| &acc * &cyclotomic_like(d, eps));
        Ok(prod.shift(shift))
    })
    .expect("building v cannot fail")
}

/// `u_eps^tau(x)` expanded in Z[x].
pub fn u_poly(ty: &NType, eps: i64) -> Arc<IntPoly> {
    check_eps(eps);
    cached(&cache().u, (ty.clone(), eps), || {
        let mut prod = IntPoly::one();
        let mut lowered = 0u32;
        for (d, _e, m) in ty.entries() {
            prod = &prod * &cyclotomic_like(d, eps).pow(m);
            lowered += d * m;
        }
        Ok(prod.shift((ty.n() - lowered) as usize))
    })
    .expect("building u cannot fail")
}

/// `v_eps / u_eps^tau` as an exact element of Z[x].
pub fn orbit_degree_poly(ty: &NType, eps: i64) -> Result<Arc<IntPoly>> {
    check_eps(eps);
    cached(&cache().quotient, (ty.clone(), eps), || {
        v_poly(ty.n(), eps).div_exact(&u_poly(ty, eps))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum UnitFamily {
    /// Units of `k_d[t]/(t^e)`.
    GL1,
    /// Norm-one units of `k_{2d}[t]/(t^e)` relative to `k_d[t]/(t^e)`.
    GU1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeFactor {
    pub family: UnitFamily,
    pub d: u32,
    pub e: u32,
    pub multiplicity: u32,
}

/// Product decomposition of the centralizer of a regular element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub factors: Vec<ShapeFactor>,
}

/// One rank-one factor per nonzero `tau_{d,e}`. For the unitary sign the
/// factor is a one-dimensional unitary group exactly when `d` is odd (the
/// self-dual irreducible case); even `d` comes from a dual pair and gives
/// plain units of `k_d[t]/(t^e)`.
pub fn centralizer_shape(ty: &NType, eps: i64) -> CentralizerShape {
    check_eps(eps);
    let factors = ty
        .entries()
        .map(|(d, e, multiplicity)| {
            let family = if eps < 0 && d % 2 == 1 { UnitFamily::GU1 } else { UnitFamily::GL1 };
            ShapeFactor { family, d, e, multiplicity }
        })
        .collect();
    CentralizerShape { factors }
}

/// `|GL_1(k_d[t]/(t^e))| = q^{d(e-1)} (q^d - 1)` and
/// `|GU_1(k_d[t]/(t^e))| = q^{d(e-1)} (q^d + 1)`: the radical `1 + t(...)`
/// contributes `q^{d(e-1)}` in both cases and the residue contributes
/// `k_d^x` or the norm-one torus of `k_{2d}/k_d`.
pub fn shape_order(shape: &CentralizerShape, q: &Integer) -> Integer {
    shape.factors.iter().fold(Integer::one(), |acc, f| {
        let qd = q.pow(f.d);
        let torus = match f.family {
            UnitFamily::GL1 => &qd - 1u32,
            UnitFamily::GU1 => &qd + 1u32,
        };
        let one: Integer = qd.pow(f.e - 1) * torus;
        acc * one.pow(f.multiplicity)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::typelib::enumerate_types;

    fn ty(entries: &[(u32, u32, u32)]) -> NType {
        NType::from_entries(entries.iter().copied()).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(*v_poly(1, 1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(v_poly(2, 1).eval_i64(3), int(48));
        assert_eq!(v_poly(2, -1).eval_i64(3), int(96));
        assert_eq!(v_poly(3, -1).eval_i64(2), int(648));
        assert_eq!(v_poly(3, 1).eval_i64(2), int(168));
    }

    #[test]
    fn classical_linear_order() {
        for n in 1..=6u32 {
            for q in [2i64, 3, 5] {
                let q = int(q);
                let expected: Integer = (1..=n).map(|d| q.pow(n) - q.pow(n - d)).product();
                assert_eq!(v_poly(n, 1).eval(&q), expected);
            }
        }
    }

    #[test]
    fn centralizer_polynomials() {
        assert_eq!(*u_poly(&ty(&[(1, 1, 2)]), 1), IntPoly::from_i64(&[-1, 1]).pow(2));
        assert_eq!(*u_poly(&ty(&[(1, 2, 1)]), 1), IntPoly::from_i64(&[0, -1, 1]));
        assert_eq!(*u_poly(&ty(&[(2, 1, 1)]), -1), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(*u_poly(&ty(&[(1, 1, 2)]), -1), IntPoly::from_i64(&[1, 1]).pow(2));
    }

    #[test]
    fn orbit_degrees() {
        assert_eq!(*orbit_degree_poly(&ty(&[(2, 1, 1)]), 1).unwrap(), IntPoly::from_i64(&[0, -1, 1]));
        assert_eq!(*orbit_degree_poly(&ty(&[(2, 1, 1)]), -1).unwrap(), IntPoly::from_i64(&[0, 1, 1]));
        for eps in [1, -1] {
            assert_eq!(*orbit_degree_poly(&ty(&[(1, 1, 1)]), eps).unwrap(), IntPoly::one());
        }
    }

    #[test]
    fn u_divides_v() {
        for n in 1..=8 {
            for t in enumerate_types(n).unwrap() {
                for eps in [1, -1] {
                    let quot = orbit_degree_poly(&t, eps).unwrap();
                    assert_eq!(&*quot * &*u_poly(&t, eps), *v_poly(n, eps));
                }
            }
        }
    }

    #[test]
    fn shapes() {
        let s = centralizer_shape(&ty(&[(2, 1, 1)]), 1);
        assert_eq!(s.factors, vec![ShapeFactor { family: UnitFamily::GL1, d: 2, e: 1, multiplicity: 1 }]);
        let s = centralizer_shape(&ty(&[(1, 2, 1)]), -1);
        assert_eq!(s.factors, vec![ShapeFactor { family: UnitFamily::GU1, d: 1, e: 2, multiplicity: 1 }]);
        let s = centralizer_shape(&ty(&[(2, 1, 1)]), -1);
        assert_eq!(s.factors[0].family, UnitFamily::GL1);

        let f = |family, d, e, multiplicity| CentralizerShape {
            factors: vec![ShapeFactor { family, d, e, multiplicity }],
        };
        assert_eq!(shape_order(&f(UnitFamily::GL1, 1, 1, 2), &int(3)), int(4));
        assert_eq!(shape_order(&f(UnitFamily::GU1, 1, 2, 1), &int(3)), int(12));
        assert_eq!(shape_order(&f(UnitFamily::GL1, 2, 1, 1), &int(3)), int(8));
    }

    #[test]
    fn structural_order_matches_polynomial() {
        for n in 1..=7 {
            for t in enumerate_types(n).unwrap() {
                for eps in [1, -1] {
                    for q in [3i64, 5, 7] {
                        let q = int(q);
                        assert_eq!(shape_order(&centralizer_shape(&t, eps), &q), u_poly(&t, eps).eval(&q));
                    }
                }
            }
        }
    }

    #[test]
    fn sign_reflection_of_orders() {
        for n in 1..=6u32 {
            for q in [3i64, 5] {
                let plus = v_poly(n, 1).eval_i64(-q);
                assert_eq!(v_poly(n, -1).eval_i64(q), num_traits::Signed::abs(&plus));
            }
            for t in enumerate_types(n).unwrap() {
                for q in [3i64, 5] {
                    let plus = u_poly(&t, 1).eval_i64(-q);
                    let minus = u_poly(&t, -1).eval_i64(q);
                    assert_eq!(num_traits::Signed::abs(&minus), num_traits::Signed::abs(&plus));
                }
            }
        }
    }
}
