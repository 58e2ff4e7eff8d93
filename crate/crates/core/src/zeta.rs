//! Regular representation zeta functions.
//!
//! Summing the per-level data over all levels gives
//! `zeta(s) = (sum_tau c_tau D_tau^{-s}) / (1 - q^{a - b s})` with `b = C(n,2)`
//! and `a = n` (full forms) or `a = n - 1` (special forms). `c_tau` is the
//! level-one count and `D_tau` the level-one degree of type `tau`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::counts::{binom2, count, degree, split_index, ValidityFlags};
use crate::error::{Error, Result};
use crate::exactnum::{div_exact, ln_integer, ln_rational, rational_string, Integer, Rational};
use crate::orders::{orbit_degree_poly, u_poly};
use crate::typelib::{enumerate_types, type_combinatorial_factor, GroupForm, NType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaTerm {
    pub ty: NType,
    pub coefficient: Rational,
    pub base_degree: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaExpr {
    pub form: GroupForm,
    pub n: u32,
    pub q: u64,
    /// `a` in the geometric prefactor `1 / (1 - q^{a - b s})`.
    pub prefactor_base_exponent: i64,
    /// `b` in the geometric prefactor.
    pub prefactor_s_exponent: u32,
    pub terms: Vec<ZetaTerm>,
    pub flags: ValidityFlags,
}

pub fn build_zeta(form: GroupForm, n: u32, q: u64) -> Result<ZetaExpr> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q must be at least 2, got {q}")));
    }
    let eps = form.epsilon();
    let qi = Integer::from(q);
    let mut terms = Vec::new();
    for ty in enumerate_types(n)? {
        let u = u_poly(&ty, eps).eval(&qi);
        let factor = type_combinatorial_factor(&ty, &qi);
        let base = orbit_degree_poly(&ty, eps)?.eval(&qi);
        let (coefficient, base_degree) = if form.is_special() {
            let iota = split_index(form, q, &ty);
            let c = Rational::new(&iota * &iota * u * factor, (&qi - eps) * &qi);
            (c, div_exact(&base, &iota)?)
        } else {
            (Rational::from_integer(u * factor), base)
        };
        // q <= n can make the combinatorial factor vanish; such types carry no characters.
        if coefficient.is_zero() {
            continue;
        }
        terms.push(ZetaTerm { ty, coefficient, base_degree });
    }
    let a = if form.is_special() { i64::from(n) - 1 } else { i64::from(n) };
    Ok(ZetaExpr {
        form,
        n,
        q,
        prefactor_base_exponent: a,
        prefactor_s_exponent: binom2(n),
        terms,
        flags: ValidityFlags::compute(form, n, q),
    })
}

impl ZetaExpr {
    /// `a / b`, or `None` when `b = 0` (n = 1, never convergent).
    pub fn abscissa(&self) -> Option<Rational> {
        (self.prefactor_s_exponent > 0).then(|| {
            Rational::new(
                Integer::from(self.prefactor_base_exponent),
                Integer::from(self.prefactor_s_exponent),
            )
        })
    }

    fn check_convergent(&self, s: f64) -> Result<()> {
        let Some(abscissa) = self.abscissa() else {
            return Err(Error::Diverges(format!(
                "{}_{} has no abscissa of convergence",
                self.form, self.n
            )));
        };
        let bound = abscissa.to_f64().unwrap();
        if s.is_nan() || s <= bound {
            return Err(Error::Diverges(format!("s = {s} is not beyond the abscissa {abscissa}")));
        }
        Ok(())
    }

    /// Ratio `q^{a - b s}` of the geometric level sum.
    pub fn level_ratio(&self, s: f64) -> f64 {
        let exponent = self.prefactor_base_exponent as f64 - f64::from(self.prefactor_s_exponent) * s;
        (exponent * (self.q as f64).ln()).exp()
    }

    /// `sum_tau c_tau D_tau^{-s}`: the level-one contribution.
    pub fn level_one_sum(&self, s: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for t in &self.terms {
            let term = (ln_rational(&t.coefficient) - s * ln_integer(&t.base_degree)).exp();
            // Neumaier summation
            let next = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - next) + term;
            } else {
                comp += (term - next) + sum;
            }
            sum = next;
        }
        sum + comp
    }

    pub fn evaluate(&self, s: f64) -> Result<f64> {
        self.check_convergent(s)?;
        Ok(self.level_one_sum(s) / (1.0 - self.level_ratio(s)))
    }

    /// Regular characters of degree at most `bound`, grouped by degree.
    pub fn dirichlet_coeffs(&self, bound: &Integer) -> Result<DirichletSlice> {
        if self.prefactor_s_exponent == 0 {
            return Err(Error::Unbounded(format!(
                "{}_1 has infinitely many regular characters of degree 1",
                self.form
            )));
        }
        if !bound.is_positive() {
            return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
        }
        let mut coeffs = BTreeMap::new();
        let Some(min_base) = self.terms.iter().map(|t| &t.base_degree).min() else {
            return Ok(DirichletSlice { bound: bound.clone(), coeffs });
        };
        let q = Integer::from(self.q);
        let step = q.pow(self.prefactor_s_exponent);
        let mut lift = Integer::from(1);
        let mut level = 1u32;
        while &lift * min_base <= *bound {
            for t in &self.terms {
                if &lift * &t.base_degree > *bound {
                    continue;
                }
                let d = degree(self.form, self.q, level, &t.ty)?;
                let c = count(self.form, self.q, level, &t.ty)?;
                *coeffs.entry(d).or_insert_with(Integer::zero) += c;
            }
            lift *= &step;
            level += 1;
        }
        Ok(DirichletSlice { bound: bound.clone(), coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletSlice {
    pub bound: Integer,
    pub coeffs: BTreeMap<Integer, Integer>,
}

impl DirichletSlice {
    /// `sum_{m <= M} r_m m^{-s}`.
    pub fn partial_sum(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(m, r)| (ln_integer(r) - s * ln_integer(m)).exp())
            .sum()
    }
}

/// `{"type": [[d,e,m],..], "c": "12", "D": "12"}`.
impl Serialize for ZetaTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZetaTerm", 3)?;
        st.serialize_field("type", &self.ty.triples())?;
        st.serialize_field("c", &rational_string(&self.coefficient))?;
        st.serialize_field("D", &self.base_degree.to_string())?;
        st.end()
    }
}

#[derive(Serialize)]
struct Prefactor {
    a: i64,
    b: u32,
}

impl Serialize for ZetaExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZetaExpr", 6)?;
        st.serialize_field("form", &self.form)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("q", &self.q)?;
        let prefactor = Prefactor { a: self.prefactor_base_exponent, b: self.prefactor_s_exponent };
        st.serialize_field("prefactor", &prefactor)?;
        st.serialize_field("abscissa", &self.abscissa().map(|a| rational_string(&a)))?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}

/// `{"M": "12", "coeffs": {"6": "24", ..}}` with degrees in increasing order.
impl Serialize for DirichletSlice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<Integer, Integer>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (d, c) in self.0 {
                    map.serialize_entry(&d.to_string(), &c.to_string())?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("DirichletSlice", 2)?;
        st.serialize_field("M", &self.bound.to_string())?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}
