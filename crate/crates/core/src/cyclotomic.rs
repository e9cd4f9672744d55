//! Exact arithmetic in Z[ζ_n].
//!
//! An element is stored as its residue modulo the n-th cyclotomic polynomial
//! Φ_n: a coefficient vector of length φ(n) over the power basis
//! 1, ζ, …, ζ^(φ(n)−1). That residue is unique, so structural equality is
//! ring equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of Φ_n, constant term first. Computed by dividing x^n − 1 by
/// Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    let phi = Arc::new(num);
    phi_cache().write().unwrap().insert(n, phi.clone());
    phi
}

// Quotient by a monic divisor; panics if the remainder is nonzero.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, read off as deg Φ_n.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

// Reduce a coefficient vector over powers 0..len modulo Φ_n.
fn reduce_i128(mut a: Vec<i128>, phi: &[i64]) -> Option<Vec<i128>> {
    let d = phi.len() - 1;
    for k in (d..a.len()).rev() {
        let c = a[k];
        if c != 0 {
            for i in 0..d {
                let t = c.checked_mul(phi[i] as i128)?;
                a[k - d + i] = a[k - d + i].checked_sub(t)?;
            }
            a[k] = 0;
        }
    }
    a.truncate(d);
    a.resize(d, 0);
    Some(a)
}

fn reduce_big(mut a: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    for k in (d..a.len()).rev() {
        if a[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut a[k]);
        for i in 0..d {
            if phi[i] != 0 {
                a[k - d + i] -= &c * phi[i];
            }
        }
    }
    a.truncate(d);
    a.resize(d, BigInt::zero());
    a
}

impl CycInt {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycInt {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order)],
        }
    }

    pub fn from_integer(order: u32, value: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value.into();
        out
    }

    /// ζ_n^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_power_counts(order, &counts)
    }

    /// Σ_k counts[k]·ζ_n^k, where `counts` may be longer than n.
    pub fn from_power_counts(order: u32, counts: &[i64]) -> Self {
        let wide: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        Self::from_wide_counts(order, wide)
    }

    fn from_wide_counts(order: u32, counts: Vec<i128>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let coeffs = match reduce_i128(counts.clone(), &phi) {
            Some(small) => small.into_iter().map(BigInt::from).collect(),
            None => reduce_big(counts.into_iter().map(BigInt::from).collect(), &phi),
        };
        CycInt { order, coeffs }
    }

    fn from_big_counts(order: u32, counts: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(order);
        CycInt {
            order,
            coeffs: reduce_big(counts, &phi),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients over 1, ζ, …, ζ^(φ(n)−1).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_big_counts(self.order, prod))
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Image under ζ_n ↦ ζ_{n_new}^(n_new/n).
    pub fn embed(&self, new_order: u32) -> Result<CycInt> {
        if new_order == 0 || !new_order.is_multiple_of(self.order) {
            return Err(Error::NotDivisible {
                from: self.order,
                to: new_order,
            });
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = (new_order / self.order) as usize;
        let mut counts = vec![BigInt::zero(); new_order as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            counts[k * step] = c.clone();
        }
        Ok(Self::from_big_counts(new_order, counts))
    }

    /// Complex conjugate, ζ ↦ ζ^(−1).
    pub fn conj(&self) -> CycInt {
        let n = self.order as usize;
        let mut counts = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            counts[(n - k) % n] += c;
        }
        Self::from_big_counts(self.order, counts)
    }

    /// a·ā.
    pub fn conj_norm(&self) -> CycInt {
        self.checked_mul(&self.conj()).expect("same order")
    }

    fn same_order(&self, other: &CycInt) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "ζ{}^{k}", self.order)?,
                _ => write!(f, "{mag}·ζ{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    /// Panics if the orders differ; see [`CycInt::checked_add`].
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// Fold small counts in power-basis form, used by the character sums that
/// accumulate exponents before reducing once.
pub(crate) fn from_u64_counts(order: u32, counts: &[u64]) -> CycInt {
    let wide = counts.iter().map(|&c| c as i128).collect();
    CycInt::from_wide_counts(order, wide)
}
