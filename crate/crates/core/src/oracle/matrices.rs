//! Exhaustive census of regular elements of `gl_n(F_q)` and of the
//! anti-hermitian algebra `gu_n(F_q)`, with brute-force centralizers.
//!
//! A matrix `x` is regular when `I, x, .., x^{n-1}` are linearly independent;
//! its centralizer in `M_n` is then the algebra `k[x]`, so the centralizer in
//! the group is found by scanning `k[x]` for invertible (or unitary) elements.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::census::{CensusReport, Check, ReportRows, TypeTally};
use super::field::{FFElement, FieldDesc, FieldTower};
use super::poly::FqPoly;
use super::unitary::gu_type_of;
use crate::counts::{regular_element_count, split_index};
use crate::error::{Error, Result};
use crate::exactnum::Integer;
use crate::orders::u_poly;
use crate::typelib::{enumerate_types, GroupForm, NType};

/// Largest number of matrices a census may enumerate.
pub const MAX_MATRICES: u64 = 1 << 22;
/// Default number of regular elements per type whose centralizer is computed.
pub const DEFAULT_SAMPLE_CAP: usize = 200;

const MAX_N: usize = 4;
type Mat = [FFElement; MAX_N * MAX_N];

/// The Lie algebra being enumerated, with a fixed bijection from
/// `0..q^{n^2}` onto its elements.
struct MatrixSpace {
    n: usize,
    unitary: bool,
    tower: FieldTower,
    trace_zero: Vec<FFElement>,
    /// Entry values for the base field, embedded into the extension when unitary.
    base_values: Vec<FFElement>,
}

impl MatrixSpace {
    fn new(form: GroupForm, n: u32, q: u64) -> Result<Self> {
        if q.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "matrix oracles need odd q, got {q}"
            )));
        }
        if n == 0 || n as usize > MAX_N {
            return Err(Error::bound("matrix size", n, MAX_N));
        }
        q.checked_pow(n * n)
            .filter(|&total| total <= MAX_MATRICES)
            .ok_or_else(|| Error::bound("matrices", format!("{q}^{}", n * n), MAX_MATRICES))?;
        let tower = FieldTower::new(q)?;
        let trace_zero = tower.trace_zero();
        let base_values = tower.base.elements().collect();
        Ok(Self { n: n as usize, unitary: form.is_unitary(), tower, trace_zero, base_values })
    }

    /// Field the matrix entries live in.
    fn field(&self) -> &FieldDesc {
        if self.unitary {
            &self.tower.ext
        } else {
            &self.tower.base
        }
    }

    fn q(&self) -> u64 {
        self.tower.q()
    }

    fn size(&self) -> u64 {
        self.q().pow((self.n * self.n) as u32)
    }

    fn decode(&self, mut idx: u64) -> Mat {
        let n = self.n;
        let q = self.q();
        let mut m = [FFElement::ZERO; MAX_N * MAX_N];
        let mut digit = |base: u64| {
            let d = idx % base;
            idx /= base;
            d as usize
        };
        if !self.unitary {
            for i in 0..n {
                for j in 0..n {
                    m[i * MAX_N + j] = self.base_values[digit(q)];
                }
            }
            return m;
        }
        let k = &self.tower.ext;
        for i in 0..n {
            m[i * MAX_N + i] = self.trace_zero[digit(q)];
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = FFElement(digit(q * q) as u32);
                m[i * MAX_N + j] = a;
                m[j * MAX_N + i] = k.neg(self.tower.conj(a));
            }
        }
        m
    }

    fn trace(&self, m: &Mat) -> FFElement {
        let k = self.field();
        k.sum((0..self.n).map(|i| m[i * MAX_N + i]))
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let k = self.field();
        let n = self.n;
        let mut out = [FFElement::ZERO; MAX_N * MAX_N];
        for i in 0..n {
            for l in 0..n {
                let a_il = a[i * MAX_N + l];
                if a_il.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * MAX_N + j] = k.add(out[i * MAX_N + j], k.mul(a_il, b[l * MAX_N + j]));
                }
            }
        }
        out
    }

    fn identity(&self) -> Mat {
        let mut m = [FFElement::ZERO; MAX_N * MAX_N];
        for i in 0..self.n {
            m[i * MAX_N + i] = FFElement::ONE;
        }
        m
    }

    /// Minimal polynomial (monic, constant term first) from the first linear
    /// dependence among `I, x, x^2, ..`.
    fn minimal_polynomial(&self, x: &Mat) -> Vec<FFElement> {
        let k = self.field();
        let n = self.n;
        let mut basis: Vec<(usize, Mat, [FFElement; MAX_N + 1])> = Vec::with_capacity(n);
        let mut power = self.identity();
        for deg in 0..=n {
            let mut v = power;
            let mut combo = [FFElement::ZERO; MAX_N + 1];
            combo[deg] = FFElement::ONE;
            for (pivot, row, row_combo) in &basis {
                let c = v[*pivot];
                if c.is_zero() {
                    continue;
                }
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = k.sub(*vi, k.mul(c, *ri));
                }
                for (ci, ri) in combo.iter_mut().zip(row_combo) {
                    *ci = k.sub(*ci, k.mul(c, *ri));
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return combo[..=deg].to_vec(),
                Some(pivot) => {
                    let inv = k.inv(v[pivot]).unwrap();
                    v.iter_mut().for_each(|c| *c = k.mul(*c, inv));
                    combo.iter_mut().for_each(|c| *c = k.mul(*c, inv));
                    basis.push((pivot, v, combo));
                }
            }
            power = self.mul(&power, x);
        }
        unreachable!("a matrix satisfies a polynomial of degree n")
    }

    fn det(&self, m: &Mat) -> FFElement {
        let k = self.field();
        let n = self.n;
        let mut a = *m;
        let mut det = FFElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * MAX_N + col].is_zero()) else {
                return FFElement::ZERO;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * MAX_N + j, col * MAX_N + j);
                }
                det = k.neg(det);
            }
            let p = a[col * MAX_N + col];
            det = k.mul(det, p);
            let inv = k.inv(p).unwrap();
            for r in col + 1..n {
                let f = k.mul(a[r * MAX_N + col], inv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * MAX_N + j] = k.sub(a[r * MAX_N + j], k.mul(f, a[col * MAX_N + j]));
                }
            }
        }
        det
    }

    /// `g^o g = I` with `g^o` the conjugate transpose.
    fn is_unitary(&self, g: &Mat) -> bool {
        let k = &self.tower.ext;
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let entry = k.sum((0..n).map(|l| k.mul(self.tower.conj(g[l * MAX_N + i]), g[l * MAX_N + j])));
                if entry != if i == j { FFElement::ONE } else { FFElement::ZERO } {
                    return false;
                }
            }
        }
        true
    }

    fn type_of(&self, charpoly: &[FFElement]) -> NType {
        let f = FqPoly::from_coeffs(charpoly.to_vec());
        if self.unitary {
            gu_type_of(&f, &self.tower).expect("anti-hermitian matrices have fixed characteristic polynomials")
        } else {
            let mut tally = std::collections::BTreeMap::<(u32, u32), u32>::new();
            for (g, e) in super::poly::factor(&f, &self.tower.base) {
                *tally.entry((g.degree() as u32, e)).or_default() += 1;
            }
            NType::from_entries(tally.into_iter().map(|((d, e), m)| (d, e, m))).unwrap()
        }
    }

    /// Order of the centralizer of a regular `x` in `GL_n` or `GU_n`, and the
    /// number of distinct determinants on it.
    fn centralizer(&self, x: &Mat) -> (u64, u64) {
        let k = self.field();
        let n = self.n;
        let size = u64::from(k.size());
        let mut powers = vec![self.identity()];
        for i in 1..n {
            powers.push(self.mul(&powers[i - 1], x));
        }
        let mut order = 0u64;
        let mut dets = vec![false; k.size() as usize];
        for mut idx in 0..size.pow(n as u32) {
            let mut g = [FFElement::ZERO; MAX_N * MAX_N];
            for p in &powers {
                let c = FFElement((idx % size) as u32);
                idx /= size;
                if c.is_zero() {
                    continue;
                }
                for (gi, pi) in g.iter_mut().zip(p) {
                    *gi = k.add(*gi, k.mul(c, *pi));
                }
            }
            let member = if self.unitary { self.is_unitary(&g) } else { true };
            if !member {
                continue;
            }
            let d = self.det(&g);
            if d.is_zero() {
                continue;
            }
            order += 1;
            dets[d.0 as usize] = true;
        }
        (order, dets.iter().filter(|&&b| b).count() as u64)
    }
}

#[derive(Default)]
struct Tally {
    counts: Vec<u64>,
    samples: Vec<Vec<u64>>,
    enumerated: u64,
    cache: HashMap<Vec<FFElement>, usize>,
}

impl Tally {
    fn with_types(len: usize) -> Self {
        Self { counts: vec![0; len], samples: vec![Vec::new(); len], ..Self::default() }
    }

    fn merge(mut self, other: Self, cap: usize) -> Self {
        self.enumerated += other.enumerated;
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        for (a, b) in self.samples.iter_mut().zip(other.samples) {
            a.extend(b);
            a.sort_unstable();
            a.truncate(cap);
        }
        self
    }
}

/// Result of one exhaustive scan of `gl_n` or `gu_n` (optionally restricted
/// to trace zero), with centralizer data for the first `sample_cap` regular
/// elements of each type in enumeration order.
pub struct MatrixCensus {
    pub form: GroupForm,
    pub n: u32,
    pub q: u64,
    pub trace_zero_only: bool,
    pub types: Vec<NType>,
    pub counts: Vec<u64>,
    pub enumerated: u64,
    /// Per type: `(centralizer order, determinant image size)` of each sample.
    pub samples: Vec<Vec<(u64, u64)>>,
    pub seconds: f64,
}

impl MatrixCensus {
    /// Scans the Lie algebra of `form` (its trace-zero part for the special
    /// forms).
    pub fn run(form: GroupForm, n: u32, q: u64, sample_cap: usize) -> Result<Self> {
        let start = Instant::now();
        let space = MatrixSpace::new(form, n, q)?;
        let types = enumerate_types(n)?;
        let index: HashMap<&NType, usize> = types.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let trace_zero_only = form.is_special();
        let tally = (0..space.size())
            .into_par_iter()
            .fold(
                || Tally::with_types(types.len()),
                |mut acc, idx| {
                    let x = space.decode(idx);
                    if trace_zero_only && !space.trace(&x).is_zero() {
                        return acc;
                    }
                    acc.enumerated += 1;
                    let min = space.minimal_polynomial(&x);
                    if min.len() != space.n + 1 {
                        return acc;
                    }
                    let slot = match acc.cache.get(&min) {
                        Some(&slot) => slot,
                        None => {
                            let slot = index[&space.type_of(&min)];
                            acc.cache.insert(min, slot);
                            slot
                        }
                    };
                    acc.counts[slot] += 1;
                    if acc.samples[slot].len() < sample_cap {
                        acc.samples[slot].push(idx);
                    }
                    acc
                },
            )
            .reduce(|| Tally::with_types(types.len()), |a, b| a.merge(b, sample_cap));
        let samples = tally
            .samples
            .par_iter()
            .map(|idxs| idxs.iter().map(|&i| space.centralizer(&space.decode(i))).collect())
            .collect();
        Ok(Self {
            form,
            n,
            q,
            trace_zero_only,
            types,
            counts: tally.counts,
            enumerated: tally.enumerated,
            samples,
            seconds: start.elapsed().as_secs_f64(),
        })
    }

    pub fn regular_elements(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn report(&self, check: Check, form: GroupForm, rows: Vec<TypeTally>) -> CensusReport {
        let pass = rows.iter().all(|r| r.pass);
        CensusReport {
            check,
            form: Some(form),
            n: self.n,
            q: self.q,
            enumerated: Integer::from(self.enumerated),
            regular_elements: Some(Integer::from(self.regular_elements())),
            rows: ReportRows::Types(rows),
            pass,
            seconds: Some(self.seconds),
        }
    }

    /// Per-type regular-element counts against `M_tau v / u` (divided by `q`
    /// on the trace-zero part) and sampled centralizer orders against `u`.
    pub fn centralizer_report(&self) -> Result<CensusReport> {
        let qi = Integer::from(self.q);
        let eps = self.form.epsilon();
        let mut rows = Vec::with_capacity(self.types.len());
        for (i, ty) in self.types.iter().enumerate() {
            let expected = regular_element_count(self.form, self.q, ty)?;
            let mut row = TypeTally::new(ty.clone(), expected, Integer::from(self.counts[i]));
            let order = u_poly(ty, eps).eval(&qi);
            let target = order.to_u64();
            let mismatches = self.samples[i].iter().filter(|(o, _)| Some(*o) != target).count() as u64;
            row.sampled = Some(self.samples[i].len() as u64);
            row.centralizer_order = Some(order);
            row.centralizer_mismatches = Some(mismatches);
            row.pass &= mismatches == 0;
            rows.push(row);
        }
        Ok(self.report(Check::CentralizerOrders, self.form, rows))
    }

    /// Sampled determinant images of centralizers against `(q - eps) / iota`.
    /// Only the sample columns are checked; element counts are informational.
    pub fn det_index_report(&self) -> CensusReport {
        let special = if self.form.is_unitary() { GroupForm::SU } else { GroupForm::SL };
        let q_eps = (self.q as i64 - self.form.epsilon()) as u64;
        let rows = self
            .types
            .iter()
            .enumerate()
            .map(|(i, ty)| {
                let iota = split_index(special, self.q, ty).to_u64().unwrap();
                let image = q_eps / iota;
                let count = Integer::from(self.counts[i]);
                let mut row = TypeTally::new(ty.clone(), count.clone(), count);
                let mismatches = self.samples[i].iter().filter(|(_, d)| *d != image).count() as u64;
                row.sampled = Some(self.samples[i].len() as u64);
                row.det_image = Some(image);
                row.det_image_mismatches = Some(mismatches);
                row.pass = mismatches == 0;
                row
            })
            .collect();
        self.report(Check::DeterminantIndex, special, rows)
    }
}

/// Exhaustive census of `gl_n(F_q)` (`GL`) or `gu_n(F_q)` (`GU`) with
/// centralizer checks on up to `sample_cap` elements per type.
pub fn census_regular_matrices(form: GroupForm, n: u32, q: u64, sample_cap: usize) -> Result<CensusReport> {
    if form.is_special() {
        return Err(Error::InvalidArgument(format!("{form}: use the full form for the matrix census")));
    }
    MatrixCensus::run(form, n, q, sample_cap)?.centralizer_report()
}

/// Determinant images of centralizers of regular elements of `gl_n` (`SL`)
/// or `gu_n` (`SU`): their size is the index of the centralizer in `SL_n`
/// (`SU_n`) inside that in `GL_n` (`GU_n`).
pub fn verify_det_index(form: GroupForm, n: u32, q: u64, sample_cap: usize) -> Result<CensusReport> {
    if !form.is_special() {
        return Err(Error::InvalidArgument(format!("{form}: determinant index needs SL or SU")));
    }
    Ok(MatrixCensus::run(form.ambient(), n, q, sample_cap)?.det_index_report())
}

/// Number of regular elements of the Lie algebra of `form` (trace zero for
/// the special forms).
pub fn count_regular_elements(form: GroupForm, n: u32, q: u64) -> Result<Integer> {
    Ok(Integer::from(MatrixCensus::run(form, n, q, 0)?.regular_elements()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(entries: &[(u32, u32, u32)]) -> NType {
        NType::from_entries(entries.iter().copied()).unwrap()
    }

    fn row<'a>(report: &'a CensusReport, t: &NType) -> &'a TypeTally {
        report.type_rows().iter().find(|r| r.ty == *t).unwrap()
    }

    #[test]
    fn gl2_over_f3() {
        let report = census_regular_matrices(GroupForm::GL, 2, 3, 50).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.regular_elements, Some(Integer::from(78)));
        assert_eq!(report.enumerated, Integer::from(81));
        let observed = |e: &[(u32, u32, u32)]| row(&report, &ty(e)).observed.clone();
        assert_eq!(observed(&[(1, 1, 2)]), Integer::from(36));
        assert_eq!(observed(&[(1, 2, 1)]), Integer::from(24));
        assert_eq!(observed(&[(2, 1, 1)]), Integer::from(18));
    }

    #[test]
    fn gu2_over_f3() {
        let report = census_regular_matrices(GroupForm::GU, 2, 3, 50).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.enumerated, Integer::from(81));
    }

    #[test]
    fn rank_one() {
        let report = census_regular_matrices(GroupForm::GL, 1, 3, 10).unwrap();
        assert!(report.pass);
        assert_eq!(report.regular_elements, Some(Integer::from(3)));
        assert_eq!(report.type_rows()[0].centralizer_order, Some(Integer::from(2)));
    }

    #[test]
    fn determinant_images() {
        let report = verify_det_index(GroupForm::SL, 2, 3, 50).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(row(&report, &ty(&[(1, 2, 1)])).det_image, Some(1));
        assert_eq!(row(&report, &ty(&[(1, 1, 2)])).det_image, Some(2));
        let report = verify_det_index(GroupForm::SU, 2, 3, 50).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(row(&report, &ty(&[(2, 1, 1)])).det_image, Some(4));
    }

    #[test]
    fn trace_zero_counts() {
        assert_eq!(count_regular_elements(GroupForm::SL, 2, 3).unwrap(), Integer::from(26));
        assert_eq!(count_regular_elements(GroupForm::GL, 2, 3).unwrap(), Integer::from(78));
        assert_eq!(count_regular_elements(GroupForm::GL, 1, 3).unwrap(), Integer::from(3));
        let report = MatrixCensus::run(GroupForm::SU, 2, 5, 0).unwrap().centralizer_report().unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn guards() {
        assert!(matches!(census_regular_matrices(GroupForm::GL, 2, 4, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(census_regular_matrices(GroupForm::GL, 4, 3, 1), Err(Error::BoundExceeded { .. })));
        assert!(matches!(census_regular_matrices(GroupForm::SL, 2, 3, 1), Err(Error::InvalidArgument(_))));
    }

    /// Centralizers computed inside `k[x]` agree with a scan of all of `GL_2(F_3)`.
    #[test]
    fn centralizer_matches_full_group_scan() {
        let space = MatrixSpace::new(GroupForm::GL, 2, 3).unwrap();
        let all: Vec<Mat> = (0..space.size()).map(|i| space.decode(i)).collect();
        for x in &all {
            if space.minimal_polynomial(x).len() != 3 {
                continue;
            }
            let direct = all
                .iter()
                .filter(|g| !space.det(g).is_zero() && space.mul(g, x) == space.mul(x, g))
                .count() as u64;
            assert_eq!(space.centralizer(x).0, direct);
        }
    }

    #[test]
    fn anti_hermitian_decoding() {
        let space = MatrixSpace::new(GroupForm::GU, 2, 3).unwrap();
        let k = &space.tower.ext;
        let mut seen = std::collections::HashSet::new();
        for i in 0..space.size() {
            let m = space.decode(i);
            for r in 0..2 {
                for c in 0..2 {
                    let sum = k.add(m[r * MAX_N + c], space.tower.conj(m[c * MAX_N + r]));
                    assert!(sum.is_zero());
                }
            }
            assert!(seen.insert(m));
        }
    }
}
