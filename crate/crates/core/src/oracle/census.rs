//! Exhaustive type census of monic polynomials and the report format shared
//! by all oracles.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{field_of_size, FieldDesc, FieldTower};
use super::poly::{factor, FqPoly};
use super::unitary::{check_self_dual_irreducibles, gu_type_of, tilde, SelfDualRow};
use crate::error::{Error, Result};
use crate::exactnum::Integer;
use crate::typelib::{enumerate_types, type_combinatorial_factor, GroupForm, NType};

/// Largest number of polynomials a census may enumerate.
pub const MAX_POLYNOMIALS: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Per-type counts of monic polynomials (and of `~`-fixed ones over `F_{q^2}`).
    TypeCensus,
    /// Self-dual irreducibles: odd degree, trace-zero roots, `w_d(q)` of each degree.
    SelfDualDegrees,
    /// Per-type regular-element counts and centralizer orders in the Lie algebra.
    CentralizerOrders,
    /// Determinant images of centralizers.
    DeterminantIndex,
}

/// Per-type tally against the closed formula. Optional columns are filled by
/// the oracles that measure them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeTally {
    #[serde(rename = "type")]
    pub ty: NType,
    #[serde(with = "crate::exactnum::decimal")]
    pub expected: Integer,
    #[serde(with = "crate::exactnum::decimal")]
    pub observed: Integer,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::exactnum::decimal::option")]
    pub unitary_observed: Option<Integer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::exactnum::decimal::option")]
    pub centralizer_order: Option<Integer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_mismatches: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_image: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_image_mismatches: Option<u64>,
    pub pass: bool,
}

impl TypeTally {
    pub(crate) fn new(ty: NType, expected: Integer, observed: Integer) -> Self {
        let pass = expected == observed;
        Self {
            ty,
            expected,
            observed,
            unitary_observed: None,
            sampled: None,
            centralizer_order: None,
            centralizer_mismatches: None,
            det_image: None,
            det_image_mismatches: None,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportRows {
    Types(Vec<TypeTally>),
    Degrees(Vec<SelfDualRow>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<GroupForm>,
    pub n: u32,
    pub q: u64,
    /// Objects enumerated (polynomials or matrices).
    #[serde(with = "crate::exactnum::decimal")]
    pub enumerated: Integer,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::exactnum::decimal::option")]
    pub regular_elements: Option<Integer>,
    pub rows: ReportRows,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl CensusReport {
    pub fn type_rows(&self) -> &[TypeTally] {
        match &self.rows {
            ReportRows::Types(rows) => rows,
            ReportRows::Degrees(_) => &[],
        }
    }

    /// Drops the wall-clock field so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.seconds = None;
        self
    }
}

fn check_size(what: &'static str, size: u64, exponent: u32) -> Result<u64> {
    size.checked_pow(exponent)
        .filter(|&total| total <= MAX_POLYNOMIALS)
        .ok_or_else(|| Error::bound(what, format!("{size}^{exponent}"), MAX_POLYNOMIALS))
}

fn merge(mut a: BTreeMap<NType, u64>, b: BTreeMap<NType, u64>) -> BTreeMap<NType, u64> {
    for (ty, c) in b {
        *a.entry(ty).or_default() += c;
    }
    a
}

fn linear_type(f: &FqPoly, k: &FieldDesc) -> NType {
    let mut tally: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for (g, e) in factor(f, k) {
        *tally.entry((g.degree() as u32, e)).or_default() += 1;
    }
    NType::from_entries(tally.into_iter().map(|((d, e), m)| (d, e, m)))
        .expect("factor degrees sum to the polynomial degree")
}

/// Types of all `q^n` monic degree-`n` polynomials over `k`.
pub fn census_types_gl(n: u32, k: &FieldDesc) -> Result<BTreeMap<NType, u64>> {
    let total = check_size("monic polynomials", u64::from(k.size()), n)?;
    enumerate_types(n)?;
    Ok((0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, idx| {
            let f = FqPoly::monic_by_index(k, n, idx);
            *acc.entry(linear_type(&f, k)).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, merge))
}

/// Types of all `~`-fixed monic degree-`n` polynomials over `F_{q^2}`, found
/// by scanning every monic polynomial of degree `n` over `F_{q^2}`.
pub fn census_types_gu(n: u32, tower: &FieldTower) -> Result<BTreeMap<NType, u64>> {
    let k = &tower.ext;
    let total = check_size("monic polynomials over the quadratic extension", u64::from(k.size()), n)?;
    enumerate_types(n)?;
    Ok((0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, idx| {
            let f = FqPoly::monic_by_index(k, n, idx);
            if tilde(&f, tower) == f {
                let ty = gu_type_of(&f, tower).expect("fixed polynomials have a unitary type");
                *acc.entry(ty).or_default() += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, merge))
}

/// Compares both polynomial censuses with the combinatorial factor of each
/// type. The unitary census is skipped for even `q`.
pub fn type_census(n: u32, q: u64) -> Result<CensusReport> {
    let start = Instant::now();
    let k = field_of_size(q)?;
    let gl = census_types_gl(n, &k)?;
    let gu = if q % 2 == 1 {
        let tower = FieldTower::new(q)?;
        Some(census_types_gu(n, &tower)?)
    } else {
        None
    };
    let qi = Integer::from(q);
    let lookup = |map: &BTreeMap<NType, u64>, ty: &NType| Integer::from(map.get(ty).copied().unwrap_or(0));
    let types = enumerate_types(n)?;
    // every observed type must be a genuine n-type
    let stray = gl.keys().chain(gu.iter().flat_map(|m| m.keys())).any(|t| !types.contains(t));
    let rows: Vec<TypeTally> = types
        .into_iter()
        .map(|ty| {
            let expected = type_combinatorial_factor(&ty, &qi);
            let observed = lookup(&gl, &ty);
            let mut row = TypeTally::new(ty.clone(), expected, observed);
            if let Some(gu) = &gu {
                let unitary = lookup(gu, &ty);
                row.pass &= unitary == row.expected;
                row.unitary_observed = Some(unitary);
            }
            row
        })
        .collect();
    let enumerated: Integer = gl.values().map(|&c| Integer::from(c)).sum();
    let pass = !stray && rows.iter().all(|r| r.pass) && enumerated == qi.pow(n);
    Ok(CensusReport {
        check: Check::TypeCensus,
        form: None,
        n,
        q,
        enumerated,
        regular_elements: None,
        rows: ReportRows::Types(rows),
        pass,
        seconds: Some(start.elapsed().as_secs_f64()),
    })
}

/// Self-dual irreducibles over `F_{q^2}` up to degree `d_max`.
pub fn self_dual_census(d_max: u32, q: u64) -> Result<CensusReport> {
    let start = Instant::now();
    let tower = FieldTower::new(q)?;
    check_size("self-dual candidates", q, d_max)?;
    let rows = check_self_dual_irreducibles(d_max, &tower);
    let enumerated = (1..=d_max).map(|d| Integer::from(q).pow(d)).fold(Integer::zero(), |a, b| a + b);
    let pass = rows.iter().all(|r| r.pass);
    Ok(CensusReport {
        check: Check::SelfDualDegrees,
        form: None,
        n: d_max,
        q,
        enumerated,
        regular_elements: None,
        rows: ReportRows::Degrees(rows),
        pass,
        seconds: Some(start.elapsed().as_secs_f64()),
    })
}
