//! Applicability test for the semiprimitive e = 3 family and the four
//! closed-form weight distributions it yields.
//!
//! Each table is a list of symbolic rows in (r, √r, N, h, q, (−1)^γ). Rows
//! are instantiated with exact integer arithmetic; a row whose weight or
//! frequency does not divide out signals a misapplied case.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclic_code::{CodeShape, WeightDistribution};
use crate::error::{Error, Result};

/// Why a parameter set falls outside the closed-form family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotApplicable {
    WrongE { e: u32 },
    TooFewClasses { n_classes: u32 },
    NoSemiprimitiveExponent { p: u32, n_classes: u32 },
    DegreeNotDivisible { degree: u32, j: u32 },
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotApplicable::WrongE { e } => write!(f, "e = {e}, closed forms need e = 3"),
            NotApplicable::TooFewClasses { n_classes } => {
                write!(f, "N = {n_classes}, closed forms need N >= 2")
            }
            NotApplicable::NoSemiprimitiveExponent { p, n_classes } => {
                write!(f, "no j with {p}^j = -1 (mod {n_classes})")
            }
            NotApplicable::DegreeNotDivisible { degree, j } => {
                write!(f, "2j = {} does not divide sm = {degree}", 2 * j)
            }
        }
    }
}

impl std::error::Error for NotApplicable {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Table {
    /// γ, p, (p^j+1)/N all odd and N | (q−1)/h.
    Case11,
    /// γ, p, (p^j+1)/N all odd and N ∤ (q−1)/h.
    Case12,
    /// one of γ, p, (p^j+1)/N even and N | (q−1)/h.
    Case21,
    /// one of γ, p, (p^j+1)/N even and N ∤ (q−1)/h.
    Case22,
}

impl Table {
    pub const ALL: [Table; 4] = [Table::Case11, Table::Case12, Table::Case21, Table::Case22];

    pub fn label(self) -> &'static str {
        match self {
            Table::Case11 => "1.1",
            Table::Case12 => "1.2",
            Table::Case21 => "2.1",
            Table::Case22 => "2.2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub p: u32,
    pub n_classes: u32,
    /// Least j with p^j ≡ −1 (mod N).
    pub j: u32,
    /// sm / 2j.
    pub gamma: u32,
    pub case_major: u8,
    pub case_minor: u8,
    pub sqrt_r: u64,
}

impl TheoremCase {
    pub fn table(&self) -> Table {
        match (self.case_major, self.case_minor) {
            (1, 1) => Table::Case11,
            (1, _) => Table::Case12,
            (_, 1) => Table::Case21,
            _ => Table::Case22,
        }
    }

    pub fn label(&self) -> &'static str {
        self.table().label()
    }

    /// (−1)^γ.
    pub fn gamma_sign(&self) -> i64 {
        if self.gamma.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Whether p^j ≡ −1 (mod N) still holds for the stored fields.
    pub fn is_semiprimitive(&self) -> bool {
        let n = self.n_classes as u64;
        n >= 2 && pow_mod(self.p as u64, self.j, n) == n - 1
    }
}

fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    for _ in 0..exp {
        acc = acc * (base % modulus) % modulus;
    }
    acc
}

/// Decide whether the closed forms apply and which table is selected.
pub fn classify(shape: &CodeShape) -> std::result::Result<TheoremCase, NotApplicable> {
    if shape.e != 3 {
        return Err(NotApplicable::WrongE { e: shape.e });
    }
    let n = shape.n_classes;
    if n < 2 {
        return Err(NotApplicable::TooFewClasses { n_classes: n });
    }
    let p = shape.p;
    let j = (1..=n)
        .find(|&j| pow_mod(p as u64, j, n as u64) == n as u64 - 1)
        .ok_or(NotApplicable::NoSemiprimitiveExponent { p, n_classes: n })?;
    let degree = shape.s * shape.m;
    if !degree.is_multiple_of(2 * j) {
        return Err(NotApplicable::DegreeNotDivisible { degree, j });
    }
    let gamma = degree / (2 * j);
    let pj_plus_1 = (p as u64).pow(j) + 1;
    let all_odd = gamma % 2 == 1 && p % 2 == 1 && (pj_plus_1 / n as u64) % 2 == 1;
    let case_major = if all_odd { 1 } else { 2 };
    let case_minor = if ((shape.q - 1) / shape.h).is_multiple_of(n) {
        1
    } else {
        2
    };
    let sqrt_r = (p as u64).pow(degree / 2);
    debug_assert_eq!(sqrt_r * sqrt_r, shape.r);
    Ok(TheoremCase {
        p,
        n_classes: n,
        j,
        gamma,
        case_major,
        case_minor,
        sqrt_r,
    })
}

/// Numbers a table row is a function of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableInputs {
    pub r: u64,
    pub sqrt_r: u64,
    pub n_classes: u32,
    pub h: u32,
    pub q: u32,
    pub gamma: u32,
}

impl TableInputs {
    pub fn new(shape: &CodeShape, case: &TheoremCase) -> Self {
        TableInputs {
            r: shape.r,
            sqrt_r: case.sqrt_r,
            n_classes: shape.n_classes,
            h: shape.h,
            q: shape.q,
            gamma: case.gamma,
        }
    }
}

/// A row as two exact fractions: weight = w_num/w_den, frequency = f_num/f_den.
struct Row {
    w_num: BigInt,
    w_den: BigInt,
    f_num: BigInt,
    f_den: BigInt,
}

fn rows(table: Table, t: &TableInputs) -> Vec<Row> {
    let r = BigInt::from(t.r);
    let sr = BigInt::from(t.sqrt_r);
    let n = BigInt::from(t.n_classes);
    let h = BigInt::from(t.h);
    let q = BigInt::from(t.q);
    let sg = BigInt::from(if t.gamma.is_multiple_of(2) { 1 } else { -1 });
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let rm1 = &r - &one;
    let n1 = &n - &one;
    let n2 = &n - &two;
    let n3 = &n - &three;
    let n_cubed = &n * &n * &n;
    let q3 = &three * &q;
    let row = |w_num: BigInt, w_den: &BigInt, f_num: BigInt, f_den: &BigInt| Row {
        w_num,
        w_den: w_den.clone(),
        f_num,
        f_den: f_den.clone(),
    };

    match table {
        Table::Case11 => vec![
            row(
                &h * (&r - &sr * &n1),
                &q,
                &rm1 * (&r + &sr * (&n * &n - 3 * &n + 2) - 3 * &n + 1),
                &n_cubed,
            ),
            row(
                &h * (&r + &sr),
                &q,
                &rm1 * &n1 * (&r * &n1 * &n1 - &sr * &n2 - &n1 * (2 * &n + 1)),
                &n_cubed,
            ),
            row(
                &h * (3 * &r - &sr * &n3),
                &q3,
                3 * (&sr + 1) * &rm1 * &n1 * (&sr * &n1 - 1),
                &n_cubed,
            ),
            row(
                &h * (3 * &r - &sr * (2 * &n - 3)),
                &q3,
                3 * (&sr + 1) * &rm1 * &n1 * (&sr - &n + 1),
                &n_cubed,
            ),
            row(2 * &h * (&r - &sr * &n1), &q3, 3 * &rm1, &n),
            row(2 * &h * (&r + &sr), &q3, 3 * &rm1 * &n1, &n),
        ],
        Table::Case12 => vec![
            row(
                &h * (&r - &sr * &n1),
                &q,
                &rm1 * (&sr + 1) * (&sr + 1),
                &n_cubed,
            ),
            row(
                &h * (&r + &sr),
                &q,
                &rm1 * (&r * &n1 * &n1 * &n1 - 2 * &sr - &n1 * (2 * &n * &n - 4 * &n - 1)),
                &n_cubed,
            ),
            row(
                &h * (3 * &r - &sr * &n3),
                &q3,
                3 * &rm1 * (&r * &n1 * &n1 + 2 * &sr - 2 * &n * &n + 2 * &n + 1),
                &n_cubed,
            ),
            row(
                &h * (3 * &r - &sr * (2 * &n - 3)),
                &q3,
                3 * (&sr + 1) * &rm1 * (&sr * &n1 - &n - 1),
                &n_cubed,
            ),
            row(&h * (2 * &r - &sr * &n2), &q3, 6 * &rm1, &n),
            row(2 * &h * (&r + &sr), &q3, 3 * &rm1 * &n2, &n),
        ],
        Table::Case21 => {
            let s = &sr * &sg;
            vec![
                row(
                    &h * (&r + &s * &n1),
                    &q,
                    &rm1 * (&r - &s * (&n * &n - 3 * &n + 2) - 3 * &n + 1),
                    &n_cubed,
                ),
                row(
                    &h * (&r - &s),
                    &q,
                    &rm1 * &n1 * (&r * &n1 * &n1 + &s * &n2 - &n1 * (2 * &n + 1)),
                    &n_cubed,
                ),
                row(
                    &h * (3 * &r + &s * &n3),
                    &q3,
                    3 * &rm1 * &n1 * (&r * &n1 - &s * &n2 - 1),
                    &n_cubed,
                ),
                row(
                    &h * (3 * &r + &s * (2 * &n - 3)),
                    &q3,
                    3 * &rm1 * &n1 * (&r + &s * &n2 - &n + 1),
                    &n_cubed,
                ),
                row(2 * &h * (&r + &s * &n1), &q3, 3 * &rm1, &n),
                row(2 * &h * (&r - &s), &q3, 3 * &rm1 * &n1, &n),
            ]
        }
        Table::Case22 => {
            let s = &sr * &sg;
            vec![
                row(&h * (&r + &s * &n1), &q, &rm1 * (&r - 2 * &s + 1), &n_cubed),
                row(
                    &h * (&r - &s),
                    &q,
                    &rm1 * (&r * &n1 * &n1 * &n1 + 2 * &s - &n1 * (2 * &n * &n - 4 * &n - 1)),
                    &n_cubed,
                ),
                row(
                    &h * (3 * &r + &s * &n3),
                    &q3,
                    3 * &rm1 * (&r * &n1 * &n1 - 2 * &s - 2 * &n * &n + 2 * &n + 1),
                    &n_cubed,
                ),
                row(
                    &h * (3 * &r + &s * (2 * &n - 3)),
                    &q3,
                    3 * &rm1 * (&r * &n1 + 2 * &s - &n - 1),
                    &n_cubed,
                ),
                row(&h * (2 * &r + &s * &n2), &q3, 6 * &rm1, &n),
                row(2 * &h * (&r - &s), &q3, 3 * &rm1 * &n2, &n),
            ]
        }
    }
}

fn exact_quotient(num: &BigInt, den: &BigInt, what: &str) -> std::result::Result<BigInt, String> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(format!("{what}: {num}/{den} is not an integer"));
    }
    if quot.is_negative() {
        return Err(format!("{what}: {num}/{den} is negative"));
    }
    Ok(quot)
}

/// Instantiate a table without checking that its hypotheses hold. Adds the
/// zero codeword, drops empty rows and merges rows of equal weight.
pub fn instantiate_table(table: Table, inputs: &TableInputs) -> Result<WeightDistribution> {
    let mut dist = WeightDistribution::new();
    dist.add(0, BigUint::from(1u32));
    for (idx, row) in rows(table, inputs).into_iter().enumerate() {
        let label = format!("table {} row {}", table.label(), idx + 1);
        let freq =
            exact_quotient(&row.f_num, &row.f_den, &label).map_err(Error::NonIntegerFrequency)?;
        if freq.is_zero() {
            continue;
        }
        let weight =
            exact_quotient(&row.w_num, &row.w_den, &label).map_err(Error::NonIntegerResult)?;
        let weight = weight
            .to_u64()
            .ok_or_else(|| Error::NonIntegerResult(format!("{label}: weight overflows")))?;
        dist.add(weight, freq.to_biguint().expect("checked nonnegative"));
    }
    Ok(dist)
}

/// The closed-form distribution for a classified parameter set. The case is
/// re-derived from `shape` and must match.
pub fn table_distribution(case: &TheoremCase, shape: &CodeShape) -> Result<WeightDistribution> {
    let fresh = classify(shape)?;
    if fresh != *case {
        return Err(Error::BadParameters(format!(
            "case {} does not match parameters (classified as {})",
            case.label(),
            fresh.label()
        )));
    }
    let dist = instantiate_table(case.table(), &TableInputs::new(shape, case))?;
    if let Some(w) = dist.iter().map(|(w, _)| w).find(|&w| w > shape.length) {
        return Err(Error::NonIntegerResult(format!(
            "weight {w} exceeds length {}",
            shape.length
        )));
    }
    Ok(dist)
}
