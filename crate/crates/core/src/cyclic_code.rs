//! The codes C_(q,m,h,e) = { (tr(a gⁱ + b (βg)ⁱ))_{i<n} : a, b ∈ GF(r) }.
//!
//! Weight distributions come out of two routes here: exhaustive enumeration
//! of all r² codewords, and a semi-analytic assembly that prices each
//! cyclotomic class vector with closed-form Gaussian periods and class
//! counts. [`crate::theorem_tables`] provides the third, fully closed route.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::character_sums::{f_closed, gaussian_period_closed, CharSystem, CosetVector};
use crate::error::{Error, Result};
use crate::exec::{fold_range, merge_counts, Exec};
use crate::field_tower::{is_prime, FieldElement, FieldTower};
use crate::theorem_tables::TheoremCase;

/// Default cap on r²·n for exhaustive enumeration.
pub const DEFAULT_BRUTE_BUDGET: u128 = 4_000_000_000;

/// The integers describing a code, validated but without a field attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeShape {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub q: u32,
    pub r: u64,
    pub h: u32,
    pub e: u32,
    /// Code length n = h(r−1)/(q−1).
    pub length: u64,
    /// N = gcd(m, e(q−1)/h).
    pub n_classes: u32,
}

impl CodeShape {
    pub fn new(p: u32, s: u32, m: u32, h: u32, e: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if s == 0 || m == 0 {
            return Err(Error::BadParameters("s and m must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(s)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::BadParameters(format!("q = {p}^{s} is too large")))?
            as u32;
        let r = (q as u64)
            .checked_pow(m)
            .filter(|&r| r < 1 << 40)
            .ok_or_else(|| Error::BadParameters(format!("r = {q}^{m} is too large")))?;
        if e < 2 {
            return Err(Error::BadParameters(format!("e = {e} must exceed 1")));
        }
        if h < e || !h.is_multiple_of(e) {
            return Err(Error::BadParameters(format!(
                "e = {e} must divide h = {h} with h >= e"
            )));
        }
        if !(q - 1).is_multiple_of(h) {
            return Err(Error::BadParameters(format!(
                "h = {h} must divide q - 1 = {}",
                q - 1
            )));
        }
        let length = h as u64 * (r - 1) / (q as u64 - 1);
        let n_classes = m.gcd(&(e * ((q - 1) / h)));
        Ok(CodeShape {
            p,
            s,
            m,
            q,
            r,
            h,
            e,
            length,
            n_classes,
        })
    }

    /// h(r−1)/q − λ, checked to be a nonnegative integer no larger than n.
    pub fn weight_from_lambda(&self, lambda: &BigRational) -> Result<u64> {
        let base = BigRational::new(BigInt::from(self.h) * (self.r - 1), BigInt::from(self.q));
        let w = base - lambda;
        if !w.is_integer() {
            return Err(Error::NonIntegerResult(format!(
                "weight {w} is not an integer"
            )));
        }
        w.to_integer()
            .to_u64()
            .filter(|&w| w <= self.length)
            .ok_or_else(|| Error::NonIntegerResult(format!("weight {w} out of range")))
    }
}

/// A code together with its field and distinguished elements g and β.
#[derive(Debug, Clone)]
pub struct CodeParams {
    shape: CodeShape,
    tower: Arc<FieldTower>,
    g: FieldElement,
    beta: FieldElement,
}

/// Validate (h, e) against the tower and fix g = α^((q−1)/h), β = α^((r−1)/e).
pub fn build_code(tower: Arc<FieldTower>, h: u32, e: u32) -> Result<CodeParams> {
    let shape = CodeShape::new(tower.p(), tower.s(), tower.m(), h, e)?;
    let order = tower.group_order() as u64;
    let g = tower.from_log(((shape.q - 1) / h) as u64);
    let beta = tower.from_log(order / e as u64);
    let g_order = order / order.gcd(&(((shape.q - 1) / h) as u64));
    if g_order != shape.length {
        return Err(Error::BadParameters(format!(
            "order of g is {g_order}, expected n = {}",
            shape.length
        )));
    }
    Ok(CodeParams {
        shape,
        tower,
        g,
        beta,
    })
}

impl CodeParams {
    pub fn shape(&self) -> &CodeShape {
        &self.shape
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn g(&self) -> FieldElement {
        self.g
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn length(&self) -> u64 {
        self.shape.length
    }

    pub fn n_classes(&self) -> u32 {
        self.shape.n_classes
    }

    /// The character system of order N over this code's field.
    pub fn char_system(&self) -> CharSystem {
        CharSystem::new(self.tower.clone(), self.shape.n_classes).expect("N divides r - 1")
    }

    /// Work units for exhaustive enumeration: r²·n.
    pub fn brute_work(&self) -> u128 {
        let r = self.shape.r as u128;
        r * r * self.shape.length as u128
    }
}

/// Sparse weight → frequency map. Zero frequencies are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightDistribution {
    entries: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, BigUint)>) -> Self {
        let mut d = Self::new();
        for (w, f) in pairs {
            d.add(w, f);
        }
        d
    }

    /// Histogram indexed by weight.
    pub fn from_histogram(counts: &[u64]) -> Self {
        Self::from_pairs(
            counts
                .iter()
                .enumerate()
                .map(|(w, &c)| (w as u64, BigUint::from(c))),
        )
    }

    pub fn add(&mut self, weight: u64, freq: BigUint) {
        if freq.is_zero() {
            return;
        }
        *self.entries.entry(weight).or_default() += freq;
    }

    pub fn get(&self, weight: u64) -> BigUint {
        self.entries.get(&weight).cloned().unwrap_or_default()
    }

    /// (weight, frequency) pairs in ascending weight order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.entries.iter().map(|(&w, f)| (w, f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Σ_w w·A_w.
    pub fn weight_sum(&self) -> BigUint {
        self.entries.iter().map(|(&w, f)| f * w).sum()
    }

    /// Smallest weight at which the two distributions differ, with the two
    /// frequencies found there.
    pub fn first_difference(&self, other: &Self) -> Option<(u64, BigUint, BigUint)> {
        let mut weights: Vec<u64> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .collect();
        weights.sort_unstable();
        weights.dedup();
        weights
            .into_iter()
            .map(|w| (w, self.get(w), other.get(w)))
            .find(|(_, a, b)| a != b)
    }

    /// Total r², a single zero-weight word and all weights ≤ n.
    pub fn check_invariants(&self, r: u64, length: u64) -> std::result::Result<(), String> {
        let r2 = BigUint::from(r) * r;
        if self.total() != r2 {
            return Err(format!("total frequency {} != r^2 = {r2}", self.total()));
        }
        if self.get(0) != BigUint::from(1u32) {
            return Err(format!("frequency of weight 0 is {}", self.get(0)));
        }
        if let Some((&w, _)) = self.entries.iter().next_back().filter(|(&w, _)| w > length) {
            return Err(format!("weight {w} exceeds length {length}"));
        }
        Ok(())
    }
}

/// The codeword c_(a,b) as subfield elements.
pub fn codeword(params: &CodeParams, a: FieldElement, b: FieldElement) -> Vec<FieldElement> {
    let t = &params.tower;
    let bg = t.mul(params.beta, params.g);
    (0..params.length())
        .map(|i| {
            let x = t.add(
                t.mul(a, t.pow(params.g, i as i64)),
                t.mul(b, t.pow(bg, i as i64)),
            );
            t.trace_to_q(x)
        })
        .collect()
}

/// Hamming weight of a codeword.
pub fn hamming_weight(word: &[FieldElement]) -> u64 {
    word.iter().filter(|x| !x.is_zero()).count() as u64
}

/// Exact weight histogram over all (a, b) ∈ GF(r)², within the default budget.
pub fn brute_distribution(params: &CodeParams) -> Result<WeightDistribution> {
    brute_distribution_with(params, Exec::default(), DEFAULT_BRUTE_BUDGET)
}

pub fn brute_distribution_with(
    params: &CodeParams,
    exec: Exec,
    budget: u128,
) -> Result<WeightDistribution> {
    let work = params.brute_work();
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let t = &params.tower;
    let order = t.group_order();
    let n = params.length() as usize;
    let lg = params.g.log().expect("g is nonzero");
    let lbg = t.mul(params.beta, params.g).log().expect("βg is nonzero");
    // logs of gⁱ and (βg)ⁱ
    let g_pow: Vec<u32> = (0..n)
        .map(|i| ((i as u64 * lg as u64) % order as u64) as u32)
        .collect();
    let bg_pow: Vec<u32> = (0..n)
        .map(|i| ((i as u64 * lbg as u64) % order as u64) as u32)
        .collect();
    let add_mod = |x: u32, y: u32| {
        let s = x as u64 + y as u64;
        (if s >= order as u64 {
            s - order as u64
        } else {
            s
        }) as u32
    };

    // index 0 is b = 0, index k+1 is b = α^k
    let counts = fold_range(
        exec,
        0..t.r(),
        || vec![0u64; n + 1],
        |mut hist, b_idx| {
            let lb = b_idx.checked_sub(1);
            for a_idx in 0..t.r() {
                let la = a_idx.checked_sub(1);
                let weight = match (la, lb) {
                    (None, None) => 0,
                    (Some(la), None) => (0..n)
                        .filter(|&i| !t.trace_q_is_zero_at(add_mod(la, g_pow[i])))
                        .count(),
                    (None, Some(lb)) => (0..n)
                        .filter(|&i| !t.trace_q_is_zero_at(add_mod(lb, bg_pow[i])))
                        .count(),
                    (Some(la), Some(lb)) => (0..n)
                        .filter(|&i| {
                            let x = t.add_logs(add_mod(la, g_pow[i]), add_mod(lb, bg_pow[i]));
                            x.log().is_some_and(|k| !t.trace_q_is_zero_at(k))
                        })
                        .count(),
                };
                hist[weight] += 1;
            }
            hist
        },
        merge_counts,
    );
    Ok(WeightDistribution::from_histogram(&counts))
}

/// The modified weight λ(a,b) = (hN/(eq)) Σ_{i=1..e} η_{(a+βⁱb)gⁱ}, with
/// Gaussian periods taken from direct enumeration.
pub fn lambda_weight(
    params: &CodeParams,
    chars: &CharSystem,
    a: FieldElement,
    b: FieldElement,
) -> Result<BigRational> {
    let t = &params.tower;
    let shape = &params.shape;
    let mut sum_int = BigInt::zero();
    let mut sum_cyc = crate::cyclotomic::CycInt::zero(shape.p);
    for i in 1..=shape.e as i64 {
        let x = t.mul(
            t.add(a, t.mul(t.pow(params.beta, i), b)),
            t.pow(params.g, i),
        );
        match x.log() {
            None => sum_int += chars.eta_zero(),
            Some(k) => sum_cyc = &sum_cyc + &chars.gaussian_period(k % shape.n_classes),
        }
    }
    let periods = sum_cyc
        .as_integer()
        .ok_or_else(|| Error::NonIntegerResult(format!("Σ η = {sum_cyc} is not rational")))?;
    let sum = sum_int + periods;
    Ok(BigRational::new(
        BigInt::from(shape.h) * shape.n_classes * sum,
        BigInt::from(shape.e) * shape.q,
    ))
}

/// Weight distribution assembled from class counts and Gaussian-period
/// closed forms, without enumerating codewords.
pub fn semi_analytic_distribution(
    params: &CodeParams,
    case: &TheoremCase,
) -> Result<WeightDistribution> {
    let shape = &params.shape;
    if shape.e != 3 || case.n_classes != shape.n_classes {
        return Err(Error::BadParameters(format!(
            "case {} does not describe this code",
            case.label()
        )));
    }
    let n = shape.n_classes;
    let t = &params.tower;
    let eta = |coset: u32| gaussian_period_closed(coset, case);
    let mut dist = WeightDistribution::new();
    dist.add(0, BigUint::from(1u32));

    // λ = (hN/3q)·S
    let lambda_of =
        |s: BigInt| BigRational::new(BigInt::from(shape.h) * n * s, BigInt::from(3 * shape.q));

    for c in CosetVector::all(n) {
        let freq = f_closed(&c, shape, case)?;
        if freq == 0 {
            continue;
        }
        let mut s = BigInt::zero();
        for &ci in &c.0 {
            s += eta((n - ci) % n)?;
        }
        dist.add(
            shape.weight_from_lambda(&lambda_of(s))?,
            BigUint::from(freq),
        );
    }

    // a = −βᵗb with b ≠ 0: λ = (hN/3q){(r−1)/N + Σ_{i≠t} η_{b gⁱ(βⁱ−βᵗ)}}
    let per_coset = (shape.r - 1) / n as u64;
    for tt in 1..=3i64 {
        let beta_t = t.pow(params.beta, tt);
        for k in 0..n {
            let b = t.from_log(k as u64);
            let mut s = BigInt::from(per_coset);
            for i in (1..=3i64).filter(|&i| i != tt) {
                let diff = t.sub(t.pow(params.beta, i), beta_t);
                let x = t.mul(t.mul(b, t.pow(params.g, i)), diff);
                s += eta(t.coset_index(x, n)?)?;
            }
            dist.add(
                shape.weight_from_lambda(&lambda_of(s))?,
                BigUint::from(per_coset),
            );
        }
    }
    Ok(dist)
}
