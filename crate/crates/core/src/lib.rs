//! Exact weight distributions for the two-zero cyclic codes C_(q,m,h,e).
//!
//! For a prime power q = p^s, r = q^m, a divisor h of q − 1 and e | h, the
//! code is
//!
//! ```text
//! C = { (tr(a gⁱ + b (βg)ⁱ))_{0 ≤ i < n} : a, b ∈ GF(r) }
//! ```
//!
//! with g = α^((q−1)/h), β = α^((r−1)/e) and n = h(r−1)/(q−1). The crate
//! computes its weight distribution by exhaustive enumeration, by a
//! semi-analytic assembly from Gaussian periods and class counts, and from
//! closed-form tables in the semiprimitive e = 3 case, all in exact
//! arithmetic.
//!
//! ```
//! use std::sync::Arc;
//! use cyclotome::{build_code, build_tower, brute_distribution, classify, table_distribution};
//!
//! let tower = Arc::new(build_tower(7, 1, 2).unwrap());
//! let code = build_code(tower, 3, 3).unwrap();
//! let case = classify(code.shape()).unwrap();
//! assert_eq!(brute_distribution(&code).unwrap(), table_distribution(&case, code.shape()).unwrap());
//! ```

pub mod character_sums;
pub mod cli;
pub mod cyclic_code;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod field_tower;
pub mod theorem_tables;

pub use character_sums::{
    f_closed, f_enumerate, f_enumerate_all, gauss_sum_closed, gaussian_period_closed, xi_mu,
    CharSystem, CosetVector, FCounts, XiMu,
};
pub use cyclic_code::{
    brute_distribution, brute_distribution_with, build_code, codeword, hamming_weight,
    lambda_weight, semi_analytic_distribution, CodeParams, CodeShape, WeightDistribution,
    DEFAULT_BRUTE_BUDGET,
};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycInt};
pub use error::{Error, Result};
pub use exec::Exec;
pub use field_tower::{build_tower, FieldElement, FieldTower, TowerBuilder};
pub use theorem_tables::{
    classify, instantiate_table, table_distribution, NotApplicable, Table, TableInputs, TheoremCase,
};
