//! Degrees and numbers of regular characters, per form, level and type.
//!
//! For the full forms (eps = +1 for GL, -1 for GU) a regular character of
//! level `l` and type `tau` has degree `q^{C(n,2)(l-1)} v_eps(q) / u_eps^tau(q)`
//! and there are `q^{(l-1)n} u_eps^tau(q) M_tau(q)` of them, where `M_tau` is
//! [`type_combinatorial_factor`]. For the special forms the degree is further
//! divided by `iota = iota(tau, q - eps)` and the count (summed over the
//! `iota` split orbits) is `q^{(l-1)(n-1)} iota^2 u M / ((q - eps) q)`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{div_exact, IntPoly, Integer, Rational};
use crate::orders::{orbit_degree_poly, u_poly, v_poly};
use crate::typelib::{enumerate_types, iota, type_combinatorial_factor, GroupForm, NType};

/// Factors `q = p^f`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p.saturating_mul(p) > q {
        p = q;
    }
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

/// Conditions under which the closed formulas are evaluated outside the
/// range where they are known to describe actual characters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityFlags {
    /// `q <= n`: the degree list is a superset of the degrees that occur.
    pub q_le_n: bool,
    /// Even residue characteristic is outside the verified setting.
    pub even_p_unchecked: bool,
    /// Special form with `p | n`.
    pub p_divides_n: bool,
    /// `q` is not a prime power; the formulas are still evaluated as polynomials.
    pub not_prime_power: bool,
    /// `n = 1`: the group is abelian and the regular part is degenerate.
    pub degenerate_n1: bool,
}

impl ValidityFlags {
    pub fn compute(form: GroupForm, n: u32, q: u64) -> Self {
        let pp = prime_power(q);
        Self {
            q_le_n: q <= u64::from(n),
            even_p_unchecked: q.is_multiple_of(2),
            p_divides_n: form.is_special() && pp.is_some_and(|(p, _)| u64::from(n) % p == 0),
            not_prime_power: pp.is_none(),
            degenerate_n1: n == 1,
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.q_le_n {
            out.push("q_le_n");
        }
        if self.even_p_unchecked {
            out.push("even_p_unchecked");
        }
        if self.p_divides_n {
            out.push("p_divides_n");
        }
        if self.not_prime_power {
            out.push("not_prime_power");
        }
        if self.degenerate_n1 {
            out.push("degenerate_n1");
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.names().is_empty()
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            q_le_n: self.q_le_n || other.q_le_n,
            even_p_unchecked: self.even_p_unchecked || other.even_p_unchecked,
            p_divides_n: self.p_divides_n || other.p_divides_n,
            not_prime_power: self.not_prime_power || other.not_prime_power,
            degenerate_n1: self.degenerate_n1 || other.degenerate_n1,
        }
    }
}

/// One row of a degree/count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharClass {
    pub form: GroupForm,
    pub n: u32,
    pub q: u64,
    pub level: u32,
    pub ty: NType,
    pub degree: Integer,
    pub count: Integer,
    pub flags: ValidityFlags,
}

fn check_args(q: u64, level: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q must be at least 2, got {q}")));
    }
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    Ok(())
}

pub fn binom2(n: u32) -> u32 {
    n * (n.saturating_sub(1)) / 2
}

/// `iota(tau, q - eps)`.
pub fn split_index(form: GroupForm, q: u64, ty: &NType) -> Integer {
    iota(ty, &(Integer::from(q) - form.epsilon()))
}

/// Degree of the regular characters of level `level` and type `ty`.
pub fn degree(form: GroupForm, q: u64, level: u32, ty: &NType) -> Result<Integer> {
    check_args(q, level)?;
    let eps = form.epsilon();
    let qi = Integer::from(q);
    let base = orbit_degree_poly(ty, eps)
        .map_err(|e| Error::InternalInexact(format!("v/u for {ty}: {e}")))?
        .eval(&qi);
    let base = if form.is_special() {
        div_exact(&base, &split_index(form, q, ty))
            .map_err(|e| Error::InternalInexact(format!("degree of {form} type {ty}: {e}")))?
    } else {
        base
    };
    Ok(qi.pow(binom2(ty.n()) * (level - 1)) * base)
}

/// Number of regular characters of level `level` and type `ty`.
pub fn count(form: GroupForm, q: u64, level: u32, ty: &NType) -> Result<Integer> {
    check_args(q, level)?;
    let n = ty.n();
    let eps = form.epsilon();
    let qi = Integer::from(q);
    let u = u_poly(ty, eps).eval(&qi);
    let factor = type_combinatorial_factor(ty, &qi);
    if !form.is_special() {
        return Ok(qi.pow((level - 1) * n) * u * factor);
    }
    let iota = split_index(form, q, ty);
    let numerator = &iota * &iota * u * factor;
    let denominator = (&qi - eps) * &qi;
    let base = div_exact(&numerator, &denominator).map_err(|_| {
        let what = format!("{form}_{n} count for type {ty} at q = {q}: {numerator}/{denominator}");
        if ValidityFlags::compute(form, n, q).p_divides_n {
            Error::NonIntegral(what)
        } else {
            Error::InternalInexact(what)
        }
    })?;
    Ok(qi.pow((level - 1) * (n - 1)) * base)
}

/// The count formula as an exact rational, without requiring integrality.
/// Differs from [`count`] only for the special forms when `p | n`, where the
/// formula need not produce an integer.
pub fn count_rational(form: GroupForm, q: u64, level: u32, ty: &NType) -> Result<Rational> {
    check_args(q, level)?;
    if !form.is_special() {
        return count(form, q, level, ty).map(Rational::from_integer);
    }
    let n = ty.n();
    let eps = form.epsilon();
    let qi = Integer::from(q);
    let iota = split_index(form, q, ty);
    let numerator = &iota * &iota * u_poly(ty, eps).eval(&qi) * type_combinatorial_factor(ty, &qi);
    let base = Rational::new(numerator, (&qi - eps) * &qi);
    Ok(base * Rational::from_integer(qi.pow((level - 1) * (n - 1))))
}

pub fn char_class(form: GroupForm, q: u64, level: u32, ty: &NType) -> Result<CharClass> {
    Ok(CharClass {
        form,
        n: ty.n(),
        q,
        level,
        ty: ty.clone(),
        degree: degree(form, q, level, ty)?,
        count: count(form, q, level, ty)?,
        flags: ValidityFlags::compute(form, ty.n(), q),
    })
}

/// One row per n-type, in canonical type order.
pub fn degree_table(form: GroupForm, n: u32, q: u64, level: u32) -> Result<Vec<CharClass>> {
    enumerate_types(n)?
        .iter()
        .map(|ty| char_class(form, q, level, ty))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnnolaReport {
    pub holds: bool,
    #[serde(serialize_with = "serialize_display")]
    pub gl_poly: IntPoly,
    #[serde(serialize_with = "serialize_display")]
    pub gu_poly: IntPoly,
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Degree polynomials of GL and GU for a type, and whether the GU one is
/// `(-1)^{deg f} f(-x)` for the GL polynomial `f`.
pub fn ennola_check(level: u32, ty: &NType) -> Result<EnnolaReport> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let lift = binom2(ty.n()) as usize * (level as usize - 1);
    let f = orbit_degree_poly(ty, 1)?.shift(lift);
    let g = orbit_degree_poly(ty, -1)?.shift(lift);
    let mirrored = match f.degree() {
        Some(deg) if deg % 2 == 1 => -f.reflect(),
        _ => f.reflect(),
    };
    Ok(EnnolaReport { holds: mirrored == g, gl_poly: f, gu_poly: g })
}

/// `sum_tau count * degree^2` at level one.
pub fn sum_of_squares(form: GroupForm, n: u32, q: u64) -> Result<Integer> {
    let mut total = Integer::zero();
    for row in degree_table(form, n, q, 1)? {
        total += row.count * &row.degree * &row.degree;
    }
    Ok(total)
}

/// `|G(k)|` for any of the four forms.
pub fn group_order(form: GroupForm, n: u32, q: u64) -> Integer {
    let qi = Integer::from(q);
    let full = v_poly(n, form.epsilon()).eval(&qi);
    if form.is_special() {
        full / (qi - form.epsilon())
    } else {
        full
    }
}

/// Number of regular elements of each type predicted by the closed formulas:
/// `M_tau(q) v/u` orbits-times-size, divided by `q` for the trace-zero forms.
pub fn regular_element_count(form: GroupForm, q: u64, ty: &NType) -> Result<Integer> {
    let qi = Integer::from(q);
    let per_orbit = orbit_degree_poly(ty, form.epsilon())?.eval(&qi);
    let orbits = type_combinatorial_factor(ty, &qi);
    let total = per_orbit * orbits;
    if form.is_special() {
        div_exact(&total, &qi)
    } else {
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn ty(entries: &[(u32, u32, u32)]) -> NType {
        NType::from_entries(entries.iter().copied()).unwrap()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(1024), Some((2, 10)));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(GroupForm::GL, 3, 1, &ty(&[(1, 1, 2)])).unwrap(), int(12));
        assert_eq!(degree(GroupForm::GL, 3, 2, &ty(&[(1, 1, 2)])).unwrap(), int(36));
        assert_eq!(degree(GroupForm::SL, 3, 1, &ty(&[(1, 2, 1)])).unwrap(), int(4));
        assert_eq!(degree(GroupForm::GU, 3, 1, &ty(&[(2, 1, 1)])).unwrap(), int(12));
    }

    #[test]
    fn counts() {
        assert_eq!(count(GroupForm::GL, 3, 1, &ty(&[(1, 1, 2)])).unwrap(), int(12));
        assert_eq!(count(GroupForm::GL, 3, 2, &ty(&[(1, 1, 1)])).unwrap(), int(18));
        assert_eq!(count(GroupForm::SL, 3, 1, &ty(&[(1, 2, 1)])).unwrap(), int(12));
        assert_eq!(count(GroupForm::GU, 3, 1, &ty(&[(2, 1, 1)])).unwrap(), int(24));
    }

    #[test]
    fn argument_errors() {
        let t = ty(&[(1, 1, 1)]);
        assert!(matches!(degree(GroupForm::GL, 3, 0, &t), Err(Error::InvalidArgument(_))));
        assert!(matches!(count(GroupForm::GL, 1, 1, &t), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn tables() {
        let rows = degree_table(GroupForm::GL, 1, 7, 4).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].degree, int(1));
        assert!(rows[0].flags.degenerate_n1);

        let degs = |form| -> Vec<Integer> {
            degree_table(form, 2, 3, 1).unwrap().into_iter().map(|r| r.degree).collect()
        };
        assert_eq!(degs(GroupForm::GL), vec![int(12), int(8), int(6)]);
        // v_{-1}(3) = 96 over u_{-1}^tau(3) = 16, 12, 8
        assert_eq!(degs(GroupForm::GU), vec![int(6), int(8), int(12)]);
    }

    #[test]
    fn ennola() {
        let r = ennola_check(1, &ty(&[(2, 1, 1)])).unwrap();
        assert!(r.holds);
        assert_eq!(r.gl_poly, IntPoly::from_i64(&[0, -1, 1]));
        assert_eq!(r.gu_poly, IntPoly::from_i64(&[0, 1, 1]));
        let r = ennola_check(5, &ty(&[(1, 1, 1)])).unwrap();
        assert!(r.holds);
        assert_eq!(r.gl_poly, IntPoly::one());
        assert!(ennola_check(2, &ty(&[(1, 2, 1)])).unwrap().holds);
    }

    #[test]
    fn squares() {
        assert_eq!(sum_of_squares(GroupForm::GL, 2, 3).unwrap(), int(3744));
        assert_eq!(sum_of_squares(GroupForm::SL, 2, 3).unwrap(), int(624));
        assert_eq!(group_order(GroupForm::SL, 2, 3), int(24));
    }

    #[test]
    fn flags() {
        let f = ValidityFlags::compute(GroupForm::SL, 3, 3);
        assert!(f.q_le_n && f.p_divides_n && !f.even_p_unchecked);
        assert_eq!(f.names(), vec!["q_le_n", "p_divides_n"]);
        assert!(ValidityFlags::compute(GroupForm::GL, 3, 3).names() == vec!["q_le_n"]);
        assert!(ValidityFlags::compute(GroupForm::GL, 2, 3).is_clean());
        assert!(ValidityFlags::compute(GroupForm::GU, 2, 6).not_prime_power);
    }

    #[test]
    fn special_count_outside_domain() {
        // p = 3 divides n = 3; (q-1)^3 / ((q-1) q) = 8/6 is not integral
        let t = ty(&[(1, 1, 3)]);
        assert!(matches!(count(GroupForm::SL, 3, 1, &t), Err(Error::NonIntegral(_))));
        assert_eq!(count_rational(GroupForm::SL, 3, 1, &t).unwrap(), crate::exactnum::rat(4, 3));
        assert_eq!(count_rational(GroupForm::SL, 3, 2, &t).unwrap(), crate::exactnum::rat(36, 3));
        for form in GroupForm::ALL {
            for t in enumerate_types(3).unwrap() {
                let exact = count_rational(form, 5, 2, &t).unwrap();
                assert_eq!(exact, Rational::from_integer(count(form, 5, 2, &t).unwrap()));
            }
        }
    }

    #[test]
    fn level_scaling() {
        for form in GroupForm::ALL {
            for n in 2..=4u32 {
                for q in [3u64, 5] {
                    if ValidityFlags::compute(form, n, q).p_divides_n {
                        continue;
                    }
                    for t in enumerate_types(n).unwrap() {
                        let c1 = count(form, q, 1, &t).unwrap();
                        let c2 = count(form, q, 2, &t).unwrap();
                        let d1 = degree(form, q, 1, &t).unwrap();
                        let d2 = degree(form, q, 2, &t).unwrap();
                        let k = if form.is_special() { n - 1 } else { n };
                        assert_eq!(c2, c1 * Integer::from(q).pow(k));
                        assert_eq!(d2, d1 * Integer::from(q).pow(binom2(n)));
                    }
                }
            }
        }
    }

    #[test]
    fn unitary_and_linear_share_the_type_factor() {
        for n in 1..=4 {
            for t in enumerate_types(n).unwrap() {
                let q = 5u64;
                let gl = count(GroupForm::GL, q, 1, &t).unwrap();
                let gu = count(GroupForm::GU, q, 1, &t).unwrap();
                let ugl = u_poly(&t, 1).eval(&Integer::from(q));
                let ugu = u_poly(&t, -1).eval(&Integer::from(q));
                assert_eq!(gl / ugl, gu / ugu);
            }
        }
    }
}
