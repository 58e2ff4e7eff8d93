//! Small finite fields `F_{p^f}` with explicit modulus, and quadratic towers.
//!
//! An element is stored as the index `sum_i c_i p^i` of its coordinate
//! vector `(c_0, .., c_{f-1})` in the basis `1, t, .., t^{f-1}` of
//! `F_p[t]/(modulus)`. Index `c < p` is the prime-field element `c`.

use std::fmt;

use crate::counts::prime_power;
use crate::error::{Error, Result};

/// Upper bound on the field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 512;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElement(pub u32);

impl FFElement {
    pub const ZERO: FFElement = FFElement(0);
    pub const ONE: FFElement = FFElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone)]
pub struct FieldDesc {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive `g`, stored twice over for
    /// reduction-free multiplication.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.p, self.f, self.modulus)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

// Polynomials over F_p as coefficient vectors, used only while building the field.
fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn prime_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r.last().copied().unwrap() * inv_lead % p;
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    result as u32
}

fn digits(mut idx: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Irreducible iff no monic factor of degree `1..=deg/2` divides it.
fn prime_poly_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        for lower in 0..p.pow(k as u32) {
            let mut g = digits(lower, p, k as u32);
            g.push(1);
            if prime_poly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn slow_mul(a: u32, b: u32, p: u32, f: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, f);
    let db = digits(b, p, f);
    let mut prod = vec![0u32; (2 * f) as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = prime_poly_rem(&prod, modulus, p);
    r.resize(f as usize, 0);
    undigits(&r, p)
}

fn slow_pow(mut a: u32, mut e: u64, p: u32, f: u32, modulus: &[u32]) -> u32 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(acc, a, p, f, modulus);
        }
        a = slow_mul(a, a, p, f, modulus);
        e >>= 1;
    }
    acc
}

/// `F_{p^f}` with the least irreducible modulus: candidates `t^f + sum c_i t^i`
/// are tried in increasing order of the index `sum c_i p^i`.
pub fn make_field(p: u64, f: u32) -> Result<FieldDesc> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= MAX_FIELD_SIZE)
        .ok_or_else(|| Error::bound("field size", format!("{p}^{f}"), MAX_FIELD_SIZE))?;
    let (p, q) = (p as u32, q as u32);

    let modulus = (0..q)
        .map(|lower| {
            let mut m = digits(lower, p, f);
            m.push(1);
            m
        })
        .find(|m| prime_poly_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists");

    let order = u64::from(q - 1);
    let factors = prime_factors(order);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r, p, f, &modulus) != 1))
        .expect("the multiplicative group is cyclic");

    let mut exp = Vec::with_capacity(2 * order as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..order as u32 {
        exp.push(cur);
        log[cur as usize] = i;
        cur = slow_mul(cur, generator, p, f, &modulus);
    }
    exp.extend_from_within(..);

    let neg = (0..q)
        .map(|a| undigits(&digits(a, p, f).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p))
        .collect();

    let mut field = FieldDesc { p, f, q, modulus, exp, log, neg, add_table: None };
    if q <= ADD_TABLE_LIMIT {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                table[(a * q + b) as usize] = field.add_digits(a, b);
            }
        }
        field.add_table = Some(table);
    }
    Ok(field)
}

/// Builds `F_q` from a prime power.
pub fn field_of_size(q: u64) -> Result<FieldDesc> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, f)
}

impl FieldDesc {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over `F_p`, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElement> {
        (0..self.q).map(FFElement)
    }

    pub fn from_prime(&self, c: u32) -> FFElement {
        FFElement(c % self.p)
    }

    pub fn coordinates(&self, a: FFElement) -> Vec<u32> {
        digits(a.0, self.p, self.f)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.f {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * scale;
            scale *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FFElement, b: FFElement) -> FFElement {
        match &self.add_table {
            Some(t) => FFElement(t[(a.0 * self.q + b.0) as usize]),
            None => FFElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FFElement) -> FFElement {
        FFElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FFElement, b: FFElement) -> FFElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FFElement, b: FFElement) -> FFElement {
        if a.0 == 0 || b.0 == 0 {
            return FFElement::ZERO;
        }
        FFElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FFElement) -> Option<FFElement> {
        if a.0 == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(FFElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn pow(&self, a: FFElement, e: u64) -> FFElement {
        if e == 0 {
            return FFElement::ONE;
        }
        if a.0 == 0 {
            return FFElement::ZERO;
        }
        let order = u64::from(self.q - 1);
        let l = u64::from(self.log[a.0 as usize]) * (e % order) % order;
        FFElement(self.exp[l as usize])
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: FFElement) -> FFElement {
        self.pow(a, u64::from(self.p))
    }

    /// Discrete logarithm with respect to the fixed primitive element.
    pub fn log(&self, a: FFElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn primitive(&self) -> FFElement {
        FFElement(self.exp[1])
    }

    pub fn sum<I: IntoIterator<Item = FFElement>>(&self, items: I) -> FFElement {
        items.into_iter().fold(FFElement::ZERO, |acc, x| self.add(acc, x))
    }
}

/// `F_q` inside `F_{q^2}` with the conjugation `x -> x^q`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub base: FieldDesc,
    pub ext: FieldDesc,
    /// `embed[a]` is the image in `ext` of the base element with index `a`.
    embed: Vec<FFElement>,
}

impl FieldTower {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let base = make_field(p, f)?;
        let ext = make_field(p, 2 * f)?;
        // a root of the base modulus generates the copy of F_q inside F_{q^2}
        let root = ext
            .elements()
            .find(|&b| {
                let coeffs = base.modulus().iter().rev();
                coeffs.fold(FFElement::ZERO, |acc, &c| ext.add(ext.mul(acc, b), ext.from_prime(c)))
                    == FFElement::ZERO
            })
            .expect("the base modulus splits over the extension");
        let embed = base
            .elements()
            .map(|a| {
                let coords = base.coordinates(a);
                let mut acc = FFElement::ZERO;
                let mut power = FFElement::ONE;
                for c in coords {
                    acc = ext.add(acc, ext.mul(ext.from_prime(c), power));
                    power = ext.mul(power, root);
                }
                acc
            })
            .collect();
        Ok(Self { base, ext, embed })
    }

    pub fn q(&self) -> u64 {
        u64::from(self.base.size())
    }

    pub fn embed(&self, a: FFElement) -> FFElement {
        self.embed[a.0 as usize]
    }

    /// Inverse of [`embed`](Self::embed) on the fixed field of conjugation.
    pub fn restrict(&self, a: FFElement) -> Option<FFElement> {
        self.embed.iter().position(|&b| b == a).map(|i| FFElement(i as u32))
    }

    /// `x -> x^q`, the nontrivial automorphism of `F_{q^2} / F_q`.
    #[inline]
    pub fn conj(&self, a: FFElement) -> FFElement {
        self.ext.pow(a, self.q())
    }

    /// Elements with `a + a^q = 0`.
    pub fn trace_zero(&self) -> Vec<FFElement> {
        self.ext
            .elements()
            .filter(|&a| self.ext.add(a, self.conj(a)).is_zero())
            .collect()
    }

    /// Elements of norm one, `a^{q+1} = 1`.
    pub fn norm_one(&self) -> Vec<FFElement> {
        self.ext
            .elements()
            .filter(|&a| self.ext.pow(a, self.q() + 1) == FFElement::ONE)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_axioms(k: &FieldDesc) {
        let els: Vec<_> = k.elements().collect();
        for &a in &els {
            assert_eq!(k.add(a, k.neg(a)), FFElement::ZERO);
            if let Some(inv) = k.inv(a) {
                assert_eq!(k.mul(a, inv), FFElement::ONE);
            }
            for &b in els.iter().step_by(3) {
                assert_eq!(k.add(a, b), k.add(b, a));
                assert_eq!(k.mul(a, b), k.mul(b, a));
                for &c in els.iter().step_by(5) {
                    let lhs = k.mul(a, k.add(b, c));
                    let rhs = k.add(k.mul(a, b), k.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.size(), 3);
        assert_eq!(f3.mul(FFElement(2), FFElement(2)), FFElement(1));
        field_axioms(&f3);
        field_axioms(&make_field(7, 1).unwrap());
    }

    #[test]
    fn extension_fields() {
        for (p, f) in [(3, 2), (5, 2), (2, 3), (2, 4), (3, 3)] {
            let k = make_field(p, f).unwrap();
            field_axioms(&k);
            // Frobenius has order exactly f
            let mut x = k.primitive();
            for i in 1..=f {
                x = k.frobenius(x);
                assert_eq!(x == k.primitive(), i == f, "p = {p}, f = {f}, i = {i}");
            }
        }
    }

    #[test]
    fn guards() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 21), Err(Error::BoundExceeded { .. })));
        assert!(matches!(field_of_size(12), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn conjugation_fixes_base_field() {
        for q in [3u64, 5, 4, 9] {
            let tower = FieldTower::new(q).unwrap();
            let fixed: Vec<_> = tower.ext.elements().filter(|&a| tower.conj(a) == a).collect();
            assert_eq!(fixed.len() as u64, q);
            let mut image: Vec<_> = tower.base.elements().map(|a| tower.embed(a)).collect();
            image.sort();
            assert_eq!(image, fixed);
            for a in tower.base.elements() {
                for b in tower.base.elements() {
                    let (ea, eb) = (tower.embed(a), tower.embed(b));
                    assert_eq!(tower.embed(tower.base.mul(a, b)), tower.ext.mul(ea, eb));
                    assert_eq!(tower.embed(tower.base.add(a, b)), tower.ext.add(ea, eb));
                }
                assert_eq!(tower.restrict(tower.embed(a)), Some(a));
            }
            assert_eq!(tower.trace_zero().len() as u64, q);
            assert_eq!(tower.norm_one().len() as u64, q + 1);
        }
    }
}
