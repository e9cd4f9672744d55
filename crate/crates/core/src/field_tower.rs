//! The tower GF(p) ⊂ GF(q) ⊂ GF(r) with q = p^s and r = q^m.
//!
//! GF(r) is built as GF(p)[x]/(f) for a primitive f of degree sm, so the
//! residue of x is a generator α of GF(r)*. Nonzero elements are stored as
//! their discrete logarithm to base α; addition goes through a Zech
//! logarithm table. GF(q) is the subfield fixed by x ↦ x^q, generated by
//! α^((r-1)/(q-1)).
//!
//! Besides the log representation each element has a *vector encoding*: the
//! integer Σ cᵢ pⁱ built from its coefficients in the polynomial basis. The
//! encoding is what the defining polynomial, the trace tables and
//! [`FieldTower::from_int`] speak.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on r.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

/// A handle to an element of some [`FieldTower`]: either zero or a discrete
/// logarithm. Handles from different towers must not be mixed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(NONE);

    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    /// The discrete logarithm, or `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "α^{k}"),
        }
    }
}

pub struct FieldTower {
    p: u32,
    s: u32,
    m: u32,
    q: u32,
    r: u32,
    degree: u32,
    poly: Vec<u32>,
    pow_p: Vec<u32>,
    // log -> vector encoding
    exp: Vec<u32>,
    // vector encoding -> log
    log: Vec<u32>,
    // k -> log(1 + α^k)
    zech: Vec<u32>,
    trace_p: Vec<u32>,
    trace_q: Vec<FieldElement>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("r", &self.r)
            .field("poly", &self.poly)
            .finish()
    }
}

/// Configures cap and defining polynomial before building a tower.
#[derive(Debug, Clone)]
pub struct TowerBuilder {
    p: u64,
    s: u32,
    m: u32,
    cap: u64,
    poly: Option<Vec<u32>>,
}

impl TowerBuilder {
    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    /// Override the defining polynomial: monic, coefficients from the
    /// constant term upward, degree sm, and primitive.
    pub fn polynomial(mut self, coeffs: Vec<u32>) -> Self {
        self.poly = Some(coeffs);
        self
    }

    pub fn build(self) -> Result<FieldTower> {
        let TowerBuilder { p, s, m, cap, poly } = self;
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if s == 0 || m == 0 {
            return Err(Error::BadParameters("s and m must be positive".into()));
        }
        let degree = s
            .checked_mul(m)
            .ok_or_else(|| Error::BadParameters("s·m overflows".into()))?;
        let size = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        // The log tables index with u32 and reserve u32::MAX.
        let cap = cap.min(u32::MAX as u64 / 2);
        if size > cap as u128 {
            return Err(Error::FieldTooLarge { size, cap });
        }
        let p = p as u32;
        let poly = match poly {
            Some(coeffs) => {
                validate_polynomial(&coeffs, p, degree)?;
                if !is_primitive_polynomial(&coeffs, p) {
                    return Err(Error::InvalidPolynomial(format!(
                        "{} is not primitive over GF({p})",
                        format_polynomial(&coeffs)
                    )));
                }
                coeffs
            }
            None => primitive_polynomials(p, degree).next().ok_or(
                Error::NoPrimitivePolynomialFound {
                    p: p as u64,
                    degree,
                },
            )?,
        };
        FieldTower::from_polynomial(p, s, m, poly)
    }
}

/// Build GF(p) ⊂ GF(p^s) ⊂ GF(p^(sm)) with the default defining polynomial.
pub fn build_tower(p: u64, s: u32, m: u32) -> Result<FieldTower> {
    FieldTower::builder(p, s, m).build()
}

impl FieldTower {
    pub fn builder(p: u64, s: u32, m: u32) -> TowerBuilder {
        TowerBuilder {
            p,
            s,
            m,
            cap: DEFAULT_FIELD_CAP,
            poly: None,
        }
    }

    fn from_polynomial(p: u32, s: u32, m: u32, poly: Vec<u32>) -> Result<Self> {
        let degree = s * m;
        let d = degree as usize;
        let q = p.pow(s);
        let r = p.pow(degree);
        let order = r - 1;
        let pow_p: Vec<u32> = (0..=degree).map(|i| p.pow(i)).collect();

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NONE; r as usize];
        let mut digits = vec![0u32; d];
        digits[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let enc = digits.iter().zip(&pow_p).map(|(c, w)| c * w).sum::<u32>();
            if log[enc as usize] != NONE {
                return Err(Error::InvalidPolynomial(format!(
                    "{} is not primitive over GF({p})",
                    format_polynomial(&poly)
                )));
            }
            *slot = enc;
            log[enc as usize] = k as u32;
            // multiply by x and reduce by the monic defining polynomial
            let top = digits[d - 1];
            for i in (1..d).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for (c, &f) in digits.iter_mut().zip(&poly) {
                    *c = ((*c as u64 + (p - top) as u64 * f as u64) % p as u64) as u32;
                }
            }
        }

        let zech = exp
            .iter()
            .map(|&enc| {
                let shifted = if enc % p == p - 1 {
                    enc + 1 - p
                } else {
                    enc + 1
                };
                log[shifted as usize]
            })
            .collect();

        let mut tower = FieldTower {
            p,
            s,
            m,
            q,
            r,
            degree,
            poly,
            pow_p,
            exp,
            log,
            zech,
            trace_p: Vec::new(),
            trace_q: Vec::new(),
        };
        tower.fill_trace_tables();
        Ok(tower)
    }

    /// Trace tables by linearity: traces of the basis xⁱ come from the
    /// defining sums, every other element is a GF(p)-combination of them.
    fn fill_trace_tables(&mut self) {
        let p = self.p;
        let d = self.degree as usize;
        let basis_p: Vec<u32> = (0..d)
            .map(|i| {
                let t = self.frobenius_sum(self.from_log(i as u64), self.p as u64, self.degree);
                let enc = self.encoding(t);
                assert!(enc < p, "absolute trace left GF(p)");
                enc
            })
            .collect();
        let basis_q: Vec<u32> = (0..d)
            .map(|i| {
                let t = self.frobenius_sum(self.from_log(i as u64), self.q as u64, self.m);
                self.encoding(t)
            })
            .collect();

        let r = self.r as usize;
        let mut tp = vec![0u32; r];
        let mut tq = vec![0u32; r];
        for v in 1..r as u32 {
            let mut t = v;
            let mut i = 0;
            while t % p == 0 {
                t /= p;
                i += 1;
            }
            let prev = (v - self.pow_p[i]) as usize;
            tp[v as usize] = (tp[prev] + basis_p[i]) % p;
            tq[v as usize] = self.add_encodings(tq[prev], basis_q[i]);
        }
        self.trace_p = self.exp.iter().map(|&enc| tp[enc as usize]).collect();
        self.trace_q = self
            .exp
            .iter()
            .map(|&enc| self.from_encoding(tq[enc as usize]))
            .collect();
    }

    /// Σ_{i<terms} x^(base^i).
    fn frobenius_sum(&self, x: FieldElement, base: u64, terms: u32) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = 1u64;
        for _ in 0..terms {
            acc = self.add(acc, self.pow(x, power as i64));
            power = power * base % self.group_order() as u64;
        }
        acc
    }

    fn add_encodings(&self, u: u32, v: u32) -> u32 {
        if self.p == 2 {
            return u ^ v;
        }
        let p = self.p;
        let (mut u, mut v) = (u, v);
        let mut out = 0;
        for w in &self.pow_p[..self.degree as usize] {
            out += ((u % p + v % p) % p) * w;
            u /= p;
            v /= p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Order r − 1 of GF(r)*.
    pub fn group_order(&self) -> u32 {
        self.r - 1
    }

    /// Defining polynomial, constant term first.
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn alpha(&self) -> FieldElement {
        self.from_log(1)
    }

    /// α^k, for any k (reduced mod r − 1).
    pub fn from_log(&self, k: u64) -> FieldElement {
        FieldElement((k % self.group_order() as u64) as u32)
    }

    /// The element with the given vector encoding.
    pub fn from_encoding(&self, enc: u32) -> FieldElement {
        FieldElement(self.log[enc as usize])
    }

    pub fn encoding(&self, x: FieldElement) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    /// The prime-field element c mod p.
    pub fn from_int(&self, c: i64) -> FieldElement {
        self.from_encoding(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x.log(), y.log()) {
            (None, _) => y,
            (_, None) => x,
            (Some(a), Some(b)) => self.add_logs(a, b),
        }
    }

    /// α^a + α^b.
    #[inline]
    pub(crate) fn add_logs(&self, a: u32, b: u32) -> FieldElement {
        let order = self.group_order();
        let diff = if b >= a { b - a } else { b + order - a };
        let z = self.zech[diff as usize];
        if z == NONE {
            FieldElement::ZERO
        } else {
            let sum = a as u64 + z as u64;
            FieldElement((sum % order as u64) as u32)
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x;
        }
        self.mul(x, self.from_log(self.group_order() as u64 / 2))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x.log(), y.log()) {
            (Some(a), Some(b)) => self.from_log(a as u64 + b as u64),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let k = self.dlog(x)?;
        Ok(self.from_log((self.group_order() - k) as u64))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^e; negative exponents invert. 0^0 = 1, 0^e = 0 otherwise.
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        match x.log() {
            None if e == 0 => self.one(),
            None => FieldElement::ZERO,
            Some(k) => {
                let order = self.group_order() as i128;
                let t = (k as i128 * e as i128).rem_euclid(order);
                FieldElement(t as u32)
            }
        }
    }

    pub fn dlog(&self, x: FieldElement) -> Result<u32> {
        x.log().ok_or(Error::LogOfZero)
    }

    /// Index of the coset of C^(N,r) = ⟨α^N⟩ containing x.
    pub fn coset_index(&self, x: FieldElement, modulus: u32) -> Result<u32> {
        self.check_modulus(modulus)?;
        Ok(self.dlog(x)? % modulus)
    }

    pub(crate) fn check_modulus(&self, modulus: u32) -> Result<()> {
        if modulus == 0 || !self.group_order().is_multiple_of(modulus) {
            return Err(Error::BadModulus {
                modulus: modulus as u64,
                group_order: self.group_order() as u64,
            });
        }
        Ok(())
    }

    /// Relative trace Σ_{i<m} x^(q^i), an element of GF(q).
    pub fn trace_to_q(&self, x: FieldElement) -> FieldElement {
        match x.log() {
            None => FieldElement::ZERO,
            Some(k) => self.trace_q[k as usize],
        }
    }

    /// Absolute trace Σ_{i<sm} x^(p^i) as a residue in [0, p).
    pub fn trace_to_p(&self, x: FieldElement) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.trace_p[k as usize],
        }
    }

    #[inline]
    pub(crate) fn trace_q_is_zero_at(&self, log: u32) -> bool {
        self.trace_q[log as usize].is_zero()
    }

    #[inline]
    pub(crate) fn trace_p_at(&self, log: u32) -> u32 {
        self.trace_p[log as usize]
    }

    /// x ∈ GF(q), i.e. x^q = x.
    pub fn is_in_subfield(&self, x: FieldElement) -> bool {
        match x.log() {
            None => true,
            Some(k) => k % self.subfield_step() == 0,
        }
    }

    fn subfield_step(&self) -> u32 {
        self.group_order() / (self.q - 1)
    }

    /// Canonical label in [0, q) of a subfield element: 0 for zero, otherwise
    /// 1 + its log to base α^((r−1)/(q−1)).
    pub fn subfield_label(&self, x: FieldElement) -> Option<u32> {
        match x.log() {
            None => Some(0),
            Some(k) if k % self.subfield_step() == 0 => Some(1 + k / self.subfield_step()),
            Some(_) => None,
        }
    }

    /// All r elements, zero first, then α^0, α^1, ….
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO).chain(self.nonzero_elements())
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.group_order()).map(FieldElement)
    }
}

fn validate_polynomial(coeffs: &[u32], p: u32, degree: u32) -> Result<()> {
    if coeffs.len() != degree as usize + 1 {
        return Err(Error::InvalidPolynomial(format!(
            "expected {} coefficients for degree {degree}, got {}",
            degree + 1,
            coeffs.len()
        )));
    }
    if coeffs.last() != Some(&1) {
        return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c >= p) {
        return Err(Error::InvalidPolynomial(format!(
            "coefficient {c} is not reduced mod {p}"
        )));
    }
    Ok(())
}

/// Render constant-term-first coefficients as a polynomial in x.
pub fn format_polynomial(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Monic polynomials of the given degree over GF(p) that are primitive, in
/// lexicographic order of (c_{d−1}, …, c_0).
pub fn primitive_polynomials(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).filter_map(move |k| {
        let mut coeffs: Vec<u32> = Vec::with_capacity(degree as usize + 1);
        let mut t = k;
        for _ in 0..degree {
            coeffs.push((t % p as u64) as u32);
            t /= p as u64;
        }
        coeffs.push(1);
        is_primitive_polynomial(&coeffs, p).then_some(coeffs)
    })
}

/// Whether x has multiplicative order p^d − 1 modulo the monic `coeffs`.
/// That forces irreducibility, since any other quotient ring has fewer units.
pub fn is_primitive_polynomial(coeffs: &[u32], p: u32) -> bool {
    let Some(degree) = coeffs.len().checked_sub(1).filter(|&d| d > 0) else {
        return false;
    };
    if coeffs[degree] != 1 || coeffs[0] == 0 || coeffs.iter().any(|&c| c >= p) {
        return false;
    }
    let f: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let order = match p.checked_pow(degree as u32) {
        Some(v) => v - 1,
        None => return false,
    };
    let mut one = vec![0u64; degree];
    one[0] = 1;
    let x = poly_reduce(vec![0, 1], &f, p);
    if poly_powmod(&x, order, &f, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|l| poly_powmod(&x, order / l, &f, p) != one)
}

// Remainder modulo a monic f, returned with exactly deg f coefficients.
fn poly_reduce(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    for k in (d..a.len()).rev() {
        let c = a[k] % p;
        if c != 0 {
            for i in 0..d {
                a[k - d + i] = (a[k - d + i] + (p - c) * f[i]) % p;
            }
        }
        a[k] = 0;
    }
    a.resize(d, 0);
    a.iter_mut().for_each(|c| *c %= p);
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_reduce(prod, f, p)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut acc = vec![0u64; d];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf49() -> FieldTower {
        build_tower(7, 1, 2).unwrap()
    }

    fn gf64() -> FieldTower {
        build_tower(2, 2, 3).unwrap()
    }

    // x^(base^i) summed by repeated multiplication, no tables involved
    fn naive_trace(t: &FieldTower, x: FieldElement, base: u32, terms: u32) -> FieldElement {
        let mut acc = t.zero();
        let mut power = x;
        for _ in 0..terms {
            acc = t.add(acc, power);
            let mut next = t.one();
            for _ in 0..base {
                next = t.mul(next, power);
            }
            power = next;
        }
        acc
    }

    #[test]
    fn build_examples() {
        let t = gf49();
        assert_eq!((t.q(), t.r()), (7, 49));
        assert_eq!(t.group_order(), 48);
        let t = gf64();
        assert_eq!((t.q(), t.r()), (4, 64));
        assert_eq!(t.group_order(), 63);
        assert_eq!(build_tower(4, 1, 3).unwrap_err(), Error::NonPrime(4));
    }

    #[test]
    fn cap_is_enforced() {
        let err = FieldTower::builder(2, 5, 5)
            .cap(1 << 20)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::FieldTooLarge { .. }));
        assert!(FieldTower::builder(2, 4, 5).cap(1 << 20).build().is_ok());
    }

    #[test]
    fn alpha_is_primitive() {
        for t in [gf49(), gf64(), build_tower(3, 2, 2).unwrap()] {
            let order = t.group_order() as u64;
            let mut x = t.one();
            for k in 1..order {
                x = t.mul(x, t.alpha());
                assert_ne!(x, t.one(), "α^{k} = 1");
            }
            assert_eq!(t.mul(x, t.alpha()), t.one());
            // vector-encoding route agrees with the log route
            for k in 0..order {
                let y = t.from_log(k);
                assert_eq!(t.from_encoding(t.encoding(y)), y);
            }
        }
    }

    #[test]
    fn default_polynomial_is_first_lexicographic() {
        let t = gf49();
        let first = primitive_polynomials(7, 2).next().unwrap();
        assert_eq!(t.defining_polynomial(), first.as_slice());
        // every monic quadratic before it fails the order test
        let before = (0..49u32)
            .map(|k| vec![k % 7, k / 7, 1])
            .take_while(|c| *c != first)
            .filter(|c| is_primitive_polynomial(c, 7))
            .count();
        assert_eq!(before, 0);
    }

    #[test]
    fn primitive_count_matches_euler_phi() {
        // φ(p^d − 1)/d primitive polynomials of degree d
        assert_eq!(primitive_polynomials(7, 2).count(), 16 / 2); // φ(48)=16
        assert_eq!(primitive_polynomials(2, 6).count(), 36 / 6); // φ(63)=36
        assert_eq!(primitive_polynomials(2, 4).count(), 8 / 4); // φ(15)=8
    }

    #[test]
    fn polynomial_override() {
        let all: Vec<_> = primitive_polynomials(7, 2).collect();
        let last = all.last().unwrap().clone();
        let t = FieldTower::builder(7, 1, 2)
            .polynomial(last.clone())
            .build()
            .unwrap();
        assert_eq!(t.defining_polynomial(), last.as_slice());
        // x^2 + 1 is irreducible over GF(7) but x has order 4
        let err = FieldTower::builder(7, 1, 2)
            .polynomial(vec![1, 0, 1])
            .build();
        assert!(matches!(err, Err(Error::InvalidPolynomial(_))));
        let err = FieldTower::builder(7, 1, 2).polynomial(vec![3, 1]).build();
        assert!(matches!(err, Err(Error::InvalidPolynomial(_))));
    }

    #[test]
    fn dlog_examples() {
        let t = gf49();
        assert_eq!(t.dlog(t.alpha()).unwrap(), 1);
        assert_eq!(t.dlog(t.one()).unwrap(), 0);
        let x = t.mul(t.from_log(5), t.from_log(7));
        assert_eq!(t.dlog(x).unwrap(), 12);
        assert_eq!(t.mul(t.from_log(40), t.from_log(20)), t.from_log(12));
        assert_eq!(t.dlog(t.zero()), Err(Error::LogOfZero));
    }

    #[test]
    fn coset_index_examples() {
        let t = gf49();
        for n in [1, 2, 3, 4, 6, 8, 12, 16, 24, 48] {
            assert_eq!(t.coset_index(t.from_log(n as u64), n).unwrap(), 0);
            if n > 1 {
                assert_eq!(t.coset_index(t.alpha(), n).unwrap(), 1);
            }
        }
        assert!(matches!(
            t.coset_index(t.alpha(), 5),
            Err(Error::BadModulus { .. })
        ));
        assert_eq!(t.coset_index(t.zero(), 2), Err(Error::LogOfZero));
        // β = α^((r−1)/3) lies in C^(2,49)
        let beta = t.from_log(16);
        assert_eq!(t.coset_index(beta, 2).unwrap(), 0);
    }

    #[test]
    fn traces_match_direct_sums() {
        for t in [
            gf49(),
            gf64(),
            build_tower(3, 2, 2).unwrap(),
            build_tower(5, 1, 3).unwrap(),
        ] {
            for x in t.elements() {
                assert_eq!(t.trace_to_q(x), naive_trace(&t, x, t.q(), t.m()));
                let abs = naive_trace(&t, x, t.p(), t.s() * t.m());
                assert_eq!(t.from_int(t.trace_to_p(x) as i64), abs);
            }
        }
    }

    #[test]
    fn trace_gf49_alpha() {
        let t = gf49();
        let a = t.alpha();
        assert_eq!(t.trace_to_q(a), t.add(a, t.pow(a, 7)));
        assert_eq!(t.trace_to_q(t.zero()), t.zero());
        assert_eq!(t.trace_to_p(t.zero()), 0);
    }

    #[test]
    fn trace_transitivity_and_kernel() {
        for t in [gf49(), gf64(), build_tower(3, 2, 2).unwrap()] {
            let mut kernel = 0;
            for x in t.elements() {
                let y = t.trace_to_q(x);
                assert!(t.is_in_subfield(y));
                // GF(q) -> GF(p) trace of y
                let inner = naive_trace(&t, y, t.p(), t.s());
                assert_eq!(t.from_int(t.trace_to_p(x) as i64), inner);
                if t.trace_to_p(x) == 0 {
                    kernel += 1;
                }
            }
            assert_eq!(kernel, t.r() / t.p());
        }
    }

    #[test]
    fn trace_q_is_linear_and_balanced() {
        for t in [gf49(), gf64()] {
            let sub: Vec<_> = t.elements().filter(|&a| t.is_in_subfield(a)).collect();
            assert_eq!(sub.len() as u32, t.q());
            let mut fibers = vec![0u32; t.q() as usize];
            for x in t.elements() {
                fibers[t.subfield_label(t.trace_to_q(x)).unwrap() as usize] += 1;
                for y in t.elements().step_by(5) {
                    for &a in &sub {
                        let lhs = t.trace_to_q(t.add(t.mul(a, x), y));
                        let rhs = t.add(t.mul(a, t.trace_to_q(x)), t.trace_to_q(y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            assert!(fibers.iter().all(|&f| f == t.r() / t.q()));
        }
    }

    #[test]
    fn subfield_is_closed() {
        let t = gf64();
        let sub: Vec<_> = t.elements().filter(|&a| t.is_in_subfield(a)).collect();
        assert_eq!(sub.len(), 4);
        for &a in &sub {
            assert_eq!(t.pow(a, t.q() as i64), a);
            for &b in &sub {
                assert!(t.is_in_subfield(t.add(a, b)));
                assert!(t.is_in_subfield(t.mul(a, b)));
            }
        }
    }

    #[test]
    fn cube_root_of_unity() {
        for t in [gf49(), gf64()] {
            let beta = t.from_log((t.group_order() / 3) as u64);
            assert_eq!(t.pow(beta, 3), t.one());
            let s = t.add(t.add(t.one(), beta), t.mul(beta, beta));
            assert_eq!(s, t.zero());
        }
    }

    #[test]
    fn negation_and_inverse() {
        let t = gf49();
        for x in t.elements() {
            assert_eq!(t.add(x, t.neg(x)), t.zero());
            if !x.is_zero() {
                assert_eq!(t.mul(x, t.inv(x).unwrap()), t.one());
            }
        }
        assert_eq!(t.from_int(-1), t.neg(t.one()));
    }

    proptest! {
        #[test]
        fn dlog_is_a_homomorphism(a in 0u64..48, b in 0u64..48) {
            let t = gf49();
            let x = t.from_log(a);
            let y = t.from_log(b);
            let lhs = t.dlog(t.mul(x, y)).unwrap() as u64;
            prop_assert_eq!(lhs, (t.dlog(x).unwrap() as u64 + t.dlog(y).unwrap() as u64) % 48);
        }

        #[test]
        fn addition_is_associative(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            let t = gf64();
            let (x, y, z) = (t.from_encoding(a), t.from_encoding(b), t.from_encoding(c));
            prop_assert_eq!(t.add(t.add(x, y), z), t.add(x, t.add(y, z)));
            prop_assert_eq!(t.encoding(t.add(x, y)), a ^ b);
        }
    }
}
