//! Gaussian periods, Gauss sums, Jacobi sums and the class counts f(c⃗).
//!
//! χ is the multiplicative character of order N with χ(α) = ζ_N and ψ the
//! canonical additive character x ↦ ζ_p^tr(x). Every multiplicative
//! character, the principal one included, takes the value 0 at 0.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclic_code::{CodeParams, CodeShape};
use crate::cyclotomic::{from_u64_counts, CycInt};
use crate::error::{Error, Result};
use crate::exec::{fold_range, merge_counts, Exec};
use crate::field_tower::{FieldElement, FieldTower};
use crate::theorem_tables::{NotApplicable, TheoremCase};

/// Cyclotomic class labels (c₁, c₂, c₃); label k stands for the
/// representative α^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetVector(pub [u32; 3]);

impl CosetVector {
    /// All N³ vectors in lexicographic order.
    pub fn all(n: u32) -> impl Iterator<Item = CosetVector> {
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| (0..n).map(move |c| CosetVector([a, b, c])))
        })
    }

    /// Position in the order produced by [`CosetVector::all`].
    pub fn index(&self, n: u32) -> usize {
        let [a, b, c] = self.0;
        ((a * n + b) * n + c) as usize
    }
}

/// χ of order N and ψ over a fixed field, with the enumeration data needed
/// by every sum in this module.
#[derive(Debug)]
pub struct CharSystem {
    tower: Arc<FieldTower>,
    n: u32,
    /// buckets[u·p + t] = #{x ≠ 0 : ind x ≡ u (mod N), tr x = t}
    buckets: Vec<u64>,
    jacobi: OnceLock<Vec<CycInt>>,
}

impl CharSystem {
    pub fn new(tower: Arc<FieldTower>, n: u32) -> Result<Self> {
        tower.check_modulus(n)?;
        let p = tower.p() as usize;
        let mut buckets = vec![0u64; n as usize * p];
        for k in 0..tower.group_order() {
            buckets[(k % n) as usize * p + tower.trace_p_at(k) as usize] += 1;
        }
        Ok(CharSystem {
            tower,
            n,
            buckets,
            jacobi: OnceLock::new(),
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// χ^power(x) in Z[ζ_N].
    pub fn chi_eval(&self, x: FieldElement, power: u32) -> CycInt {
        match x.log() {
            None => CycInt::zero(self.n),
            Some(k) => {
                CycInt::root_of_unity(self.n, (k as u64 * power as u64 % self.n as u64) as i64)
            }
        }
    }

    /// ψ(x) in Z[ζ_p].
    pub fn psi_eval(&self, x: FieldElement) -> CycInt {
        CycInt::root_of_unity(self.tower.p(), self.tower.trace_to_p(x) as i64)
    }

    /// η₀ = (r−1)/N, the value standing in for a period at 0.
    pub fn eta_zero(&self) -> BigInt {
        BigInt::from(self.tower.group_order() / self.n)
    }

    /// Σ_{z ∈ C^(N,r)} ψ(z·α^u).
    pub fn gaussian_period(&self, u: u32) -> CycInt {
        let p = self.tower.p() as usize;
        let u = (u % self.n) as usize;
        from_u64_counts(self.tower.p(), &self.buckets[u * p..(u + 1) * p])
    }

    /// τ(χ^i) = Σ_{x ≠ 0} χ^i(x)ψ(x), in Z[ζ_pN].
    pub fn gauss_sum(&self, i: u32) -> CycInt {
        let (p, n) = (self.tower.p(), self.n);
        let order = p * n;
        let mut counts = vec![0u64; order as usize];
        for u in 0..n {
            for t in 0..p {
                let c = self.buckets[(u * p + t) as usize];
                let exp = ((i as u64 * u as u64 % n as u64) * p as u64 + t as u64 * n as u64)
                    % order as u64;
                counts[exp as usize] += c;
            }
        }
        from_u64_counts(order, &counts)
    }

    /// J(χ^i, χ^j) = Σ_{a+b=1} χ^i(a)χ^j(b) for 1 ≤ i, j ≤ N.
    pub fn jacobi_sum(&self, i: u32, j: u32) -> CycInt {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "powers must lie in 1..=N"
        );
        let n = self.n as usize;
        self.jacobi_table()[(i as usize - 1) * n + j as usize - 1].clone()
    }

    fn jacobi_table(&self) -> &[CycInt] {
        self.jacobi.get_or_init(|| {
            let t = &self.tower;
            let n = self.n;
            // pairs[u·N + v] = #{a ∉ {0,1} : ind a ≡ u, ind(1−a) ≡ v}
            let mut pairs = vec![0u64; (n * n) as usize];
            for k in 0..t.group_order() {
                let a = t.from_log(k as u64);
                if let Some(l) = t.sub(t.one(), a).log() {
                    pairs[((k % n) * n + l % n) as usize] += 1;
                }
            }
            let mut table = Vec::with_capacity((n * n) as usize);
            for i in 1..=n {
                for j in 1..=n {
                    let mut counts = vec![0u64; n as usize];
                    for u in 0..n {
                        for v in 0..n {
                            let e = (i * u + j * v) % n;
                            counts[e as usize] += pairs[(u * n + v) as usize];
                        }
                    }
                    table.push(from_u64_counts(n, &counts));
                }
            }
            table
        })
    }

    /// f(c⃗) through the Jacobi-sum identity, with exact divisibility checked.
    pub fn f_charsum(&self, c: &CosetVector, params: &CodeParams) -> Result<u64> {
        let n = self.n;
        if params.n_classes() != n || params.shape().e != 3 {
            return Err(Error::BadParameters(
                "character system does not match the code".into(),
            ));
        }
        let xm = xi_mu(c, params);
        let r = params.shape().r;
        let deltas = [xm.ximu1_coset, xm.ximu2_coset, xm.xi_ratio_coset]
            .iter()
            .filter(|&&k| k == 0)
            .count() as u64;
        let mut a = CycInt::zero(n);
        for i in 1..n {
            for j in (1..n).filter(|&j| i + j != n) {
                let e = (i * xm.ximu1_coset + j * xm.ximu2_coset) % n;
                a = &a + &(&CycInt::root_of_unity(n, e as i64) * &self.jacobi_sum(i, j));
            }
        }
        let a = a.as_integer().ok_or_else(|| {
            Error::NonIntegerResult(format!("A-sum {a} for {c:?} is not rational"))
        })?;
        let brace = BigInt::from(r + 1) - BigInt::from(n as u64 * deltas) + a;
        let total = brace * (r - 1);
        let n3 = BigInt::from(n).pow(3);
        let (quot, rem) = total.div_rem(&n3);
        if !rem.is_zero() {
            return Err(Error::NonIntegerResult(format!(
                "{total} is not divisible by N^3 = {n3} for {c:?}"
            )));
        }
        quot.to_u64()
            .ok_or_else(|| Error::NonIntegerResult(format!("f({c:?}) = {quot} is negative")))
    }
}

/// Class labels of ξ₁, ξ₂, ξ₁μ, ξ₂μ and ξ₁ξ₂⁻¹ for a coset vector, with
/// ξᵢ = gⁱ(1−βⁱ)cᵢc₃⁻¹ and μ = β/(1−β²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiMu {
    pub xi1_coset: u32,
    pub xi2_coset: u32,
    pub ximu1_coset: u32,
    pub ximu2_coset: u32,
    pub xi_ratio_coset: u32,
}

/// Computes the labels from the field elements and checks them against the
/// reduced forms g c₁c₃⁻¹, g² c₂c₃⁻¹ and (g c₂c₁⁻¹)⁻¹.
pub fn xi_mu(c: &CosetVector, params: &CodeParams) -> XiMu {
    let t = params.tower();
    let n = params.n_classes();
    let (g, beta) = (params.g(), params.beta());
    let [c1, c2, c3] = c.0.map(|k| t.from_log(k as u64));
    let c3_inv = t.inv(c3).expect("nonzero");
    let one = t.one();
    let beta2 = t.pow(beta, 2);
    let xi1 = t.mul(t.mul(g, t.sub(one, beta)), t.mul(c1, c3_inv));
    let xi2 = t.mul(t.mul(t.pow(g, 2), t.sub(one, beta2)), t.mul(c2, c3_inv));
    let mu = t.div(beta, t.sub(one, beta2)).expect("β² ≠ 1");
    let idx = |x| t.coset_index(x, n).expect("nonzero element");
    let out = XiMu {
        xi1_coset: idx(xi1),
        xi2_coset: idx(xi2),
        ximu1_coset: idx(t.mul(xi1, mu)),
        ximu2_coset: idx(t.mul(xi2, mu)),
        xi_ratio_coset: idx(t.div(xi1, xi2).expect("nonzero")),
    };
    let lg = g.log().expect("nonzero");
    let [k1, k2, k3] = c.0;
    let reduced = |terms: i64| terms.rem_euclid(n as i64) as u32;
    let (lg, k1, k2, k3) = (lg as i64, k1 as i64, k2 as i64, k3 as i64);
    assert_eq!(
        out.ximu1_coset,
        reduced(lg + k1 - k3),
        "ξ₁μ reduction failed for {c:?}"
    );
    assert_eq!(
        out.ximu2_coset,
        reduced(2 * lg + k2 - k3),
        "ξ₂μ reduction failed for {c:?}"
    );
    assert_eq!(
        out.xi_ratio_coset,
        reduced(-(lg + k2 - k1)),
        "ξ₁ξ₂⁻¹ reduction failed for {c:?}"
    );
    out
}

/// Closed-form Gaussian period of the class α^i C^(N,r).
pub fn gaussian_period_closed(i: u32, case: &TheoremCase) -> Result<BigInt> {
    require_semiprimitive(case)?;
    let n = case.n_classes as i64;
    let sqrt_r = case.sqrt_r as i64;
    let i = i % case.n_classes;
    let num = if case.case_major == 1 {
        if i == case.n_classes / 2 {
            (n - 1) * sqrt_r - 1
        } else {
            -sqrt_r - 1
        }
    } else {
        let sign = case.gamma_sign();
        if i == 0 {
            -sign * (n - 1) * sqrt_r - 1
        } else {
            sign * sqrt_r - 1
        }
    };
    if num % n != 0 {
        return Err(Error::NonIntegerResult(format!("period {num}/{n}")));
    }
    Ok(BigInt::from(num / n))
}

/// Closed-form τ(χ^i), 1 ≤ i ≤ N.
pub fn gauss_sum_closed(i: u32, case: &TheoremCase) -> Result<BigInt> {
    require_semiprimitive(case)?;
    let sqrt_r = BigInt::from(case.sqrt_r);
    Ok(if i.is_multiple_of(case.n_classes) {
        BigInt::from(-1)
    } else if case.case_major == 1 {
        if i.is_multiple_of(2) {
            sqrt_r
        } else {
            -sqrt_r
        }
    } else {
        -case.gamma_sign() * sqrt_r
    })
}

fn require_semiprimitive(case: &TheoremCase) -> Result<()> {
    if !case.is_semiprimitive() {
        return Err(Error::NotSemiprimitive(format!(
            "{}^{} is not -1 mod {}",
            case.p, case.j, case.n_classes
        )));
    }
    Ok(())
}

/// f(c⃗) by the closed δ formula. `g` enters only through ind g = (q−1)/h.
pub fn f_closed(c: &CosetVector, shape: &CodeShape, case: &TheoremCase) -> Result<u64> {
    require_semiprimitive(case)?;
    if shape.e != 3 {
        return Err(NotApplicable::WrongE { e: shape.e }.into());
    }
    let n = shape.n_classes as i64;
    if case.n_classes as i64 != n {
        return Err(Error::BadParameters(
            "case does not describe this shape".into(),
        ));
    }
    let lg = ((shape.q - 1) / shape.h) as i64;
    let [k1, k2, k3] = c.0.map(|k| k as i64);
    let delta = |x: i64| (x.rem_euclid(n) == 0) as i64;
    let d_a = delta(lg + k2 - k1);
    let d_b = delta(2 * lg + k2 - k3);
    let d_c = delta(lg + k1 - k3);
    let sum = d_a + d_b + d_c;
    let sign = if case.case_major == 1 {
        1
    } else {
        -case.gamma_sign()
    };
    let brace = BigInt::from(shape.r + 1) - BigInt::from(n * sum)
        + BigInt::from(sign * case.sqrt_r as i64) * (n * n * d_b * d_c - n * sum + 2);
    let total = brace * (shape.r - 1);
    let (quot, rem) = total.div_rem(&BigInt::from(n * n * n));
    if !rem.is_zero() {
        return Err(Error::NonIntegerResult(format!(
            "closed f({c:?}) = {total}/N^3"
        )));
    }
    quot.to_u64()
        .ok_or_else(|| Error::NonIntegerResult(format!("closed f({c:?}) = {quot} is negative")))
}

/// #{(a,b) : (a+βⁱb)gⁱcᵢ ∈ C^(N,r), i = 1,2,3} by a direct double loop.
pub fn f_enumerate(c: &CosetVector, params: &CodeParams) -> u64 {
    let t = params.tower();
    let n = params.n_classes();
    let targets: Vec<u32> = c.0.iter().map(|&k| (n - k % n) % n).collect();
    let factors = class_factors(params);
    fold_range(
        Exec::default(),
        0..t.r(),
        || 0u64,
        |acc, b_idx| {
            let b = index_element(t, b_idx);
            let hits = t
                .elements()
                .filter(|&a| {
                    (0..3).all(|i| {
                        let x = t.mul(t.add(a, t.mul(factors[i].0, b)), factors[i].1);
                        x.log().is_some_and(|k| k % n == targets[i])
                    })
                })
                .count();
            acc + hits as u64
        },
        |x, y| x + y,
    )
}

/// Counts for every coset vector at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FCounts {
    pub n_classes: u32,
    /// Indexed by [`CosetVector::index`].
    pub counts: Vec<u64>,
    /// Pairs with some (a+βⁱb) = 0.
    pub degenerate: u64,
}

impl FCounts {
    pub fn get(&self, c: &CosetVector) -> u64 {
        self.counts[c.index(self.n_classes)]
    }
}

/// One pass over GF(r)², sorting each pair into its coset vector.
pub fn f_enumerate_all(params: &CodeParams, exec: Exec) -> FCounts {
    let t = params.tower();
    let n = params.n_classes();
    let factors = class_factors(params);
    let slots = (n * n * n) as usize;
    let counts = fold_range(
        exec,
        0..t.r(),
        || vec![0u64; slots + 1],
        |mut hist, b_idx| {
            let b = index_element(t, b_idx);
            let shifted = factors.map(|(bi, _)| t.mul(bi, b));
            for a in t.elements() {
                let mut slot = 0usize;
                let mut degenerate = false;
                for i in 0..3 {
                    match t.mul(t.add(a, shifted[i]), factors[i].1).log() {
                        None => {
                            degenerate = true;
                            break;
                        }
                        Some(k) => slot = slot * n as usize + ((n - k % n) % n) as usize,
                    }
                }
                hist[if degenerate { slots } else { slot }] += 1;
            }
            hist
        },
        merge_counts,
    );
    FCounts {
        n_classes: n,
        degenerate: counts[slots],
        counts: counts[..slots].to_vec(),
    }
}

// (βⁱ, gⁱ) for i = 1, 2, 3
fn class_factors(params: &CodeParams) -> [(FieldElement, FieldElement); 3] {
    let t = params.tower();
    [1i64, 2, 3].map(|i| (t.pow(params.beta(), i), t.pow(params.g(), i)))
}

// 0 ↦ 0, k+1 ↦ α^k
fn index_element(t: &FieldTower, idx: u32) -> FieldElement {
    match idx.checked_sub(1) {
        None => t.zero(),
        Some(k) => t.from_log(k as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_code::build_code;
    use crate::field_tower::build_tower;
    use crate::theorem_tables::classify;

    fn code(p: u64, s: u32, m: u32, h: u32) -> CodeParams {
        build_code(Arc::new(build_tower(p, s, m).unwrap()), h, 3).unwrap()
    }

    fn desk() -> Vec<CodeParams> {
        vec![code(7, 1, 2, 3), code(2, 2, 3, 3)]
    }

    fn int(order: u32, v: i64) -> CycInt {
        CycInt::from_integer(order, v)
    }

    #[test]
    fn chi_basics() {
        for c in desk() {
            let chars = c.char_system();
            let t = c.tower();
            let n = chars.order();
            assert_eq!(chars.chi_eval(t.alpha(), 1), CycInt::root_of_unity(n, 1));
            assert_eq!(chars.chi_eval(c.beta(), 1), int(n, 1));
            assert_eq!(chars.chi_eval(t.neg(t.one()), 1), int(n, 1));
            for a in t.nonzero_elements().filter(|&x| t.is_in_subfield(x)) {
                assert_eq!(chars.chi_eval(a, 1), int(n, 1));
            }
            assert!(chars.chi_eval(t.zero(), n).is_zero());
            assert_eq!(chars.psi_eval(t.zero()), int(t.p(), 1));
        }
    }

    #[test]
    fn orthogonality() {
        for c in desk() {
            let chars = c.char_system();
            let t = c.tower();
            let n = chars.order();
            for j in 1..=n {
                let sum = t
                    .elements()
                    .fold(CycInt::zero(n), |acc, b| &acc + &chars.chi_eval(b, j));
                let expected = if j == n { t.group_order() as i64 } else { 0 };
                assert_eq!(sum, int(n, expected));
            }
            for a in t.nonzero_elements().step_by(5) {
                let sum = (1..=n).fold(CycInt::zero(n), |acc, j| &acc + &chars.chi_eval(a, j));
                let delta = (t.coset_index(a, n).unwrap() == 0) as i64;
                assert_eq!(sum, int(n, n as i64 * delta));
            }
        }
    }

    #[test]
    fn periods_by_direct_sum() {
        let c = code(7, 1, 2, 3);
        let chars = c.char_system();
        let t = c.tower();
        for u in 0..2u32 {
            let direct = t
                .nonzero_elements()
                .filter(|x| t.coset_index(*x, 2).unwrap() == 0)
                .fold(CycInt::zero(7), |acc, z| {
                    &acc + &chars.psi_eval(t.mul(z, t.from_log(u as u64)))
                });
            assert_eq!(chars.gaussian_period(u), direct);
        }
    }

    #[test]
    fn period_examples() {
        let c = code(7, 1, 2, 3);
        let chars = c.char_system();
        // η at u = α⁰ = 1 is the class C^(2,49) itself
        assert_eq!(chars.gaussian_period(0), int(7, 3));
        assert_eq!(chars.gaussian_period(1), int(7, -4));
        assert_eq!(chars.eta_zero(), BigInt::from(24));
        for c in desk() {
            let chars = c.char_system();
            let p = c.tower().p();
            let sum =
                (0..chars.order()).fold(CycInt::zero(p), |acc, i| &acc + &chars.gaussian_period(i));
            assert_eq!(sum, int(p, -1));
        }
    }

    #[test]
    fn periods_closed_form() {
        for c in [
            code(7, 1, 2, 3),
            code(2, 2, 3, 3),
            code(13, 1, 2, 3),
            code(5, 2, 2, 3),
        ] {
            let case = classify(c.shape()).unwrap();
            let chars = c.char_system();
            let n = case.n_classes as i64;
            for i in 0..case.n_classes {
                let closed = gaussian_period_closed(i, &case).unwrap();
                assert_eq!(chars.gaussian_period(i).as_integer(), Some(closed.clone()));
                if case.case_major == 2 && i == 0 {
                    let rhs = -case.gamma_sign() * (n - 1) * case.sqrt_r as i64;
                    assert_eq!(closed * n + 1, BigInt::from(rhs));
                }
            }
        }
        let case = classify(code(7, 1, 2, 3).shape()).unwrap();
        assert_eq!(gaussian_period_closed(0, &case).unwrap(), BigInt::from(3));
        assert_eq!(gaussian_period_closed(1, &case).unwrap(), BigInt::from(-4));
    }

    #[test]
    fn closed_forms_need_semiprimitive_case() {
        let mut case = classify(code(7, 1, 2, 3).shape()).unwrap();
        // 7 ≡ 1 (mod 3), so no power of 7 is −1 mod 3
        case.n_classes = 3;
        assert!(matches!(
            gaussian_period_closed(0, &case),
            Err(Error::NotSemiprimitive(_))
        ));
        assert!(matches!(
            gauss_sum_closed(1, &case),
            Err(Error::NotSemiprimitive(_))
        ));
    }

    #[test]
    fn bucket_regularity() {
        for c in desk() {
            let chars = c.char_system();
            let p = c.tower().p() as usize;
            for u in 0..chars.order() as usize {
                let row = &chars.buckets[u * p..(u + 1) * p];
                assert!(row[1..].iter().all(|&x| x == row[1]));
            }
        }
    }

    #[test]
    fn gauss_sums() {
        for c in [code(7, 1, 2, 3), code(2, 2, 3, 3), code(13, 1, 2, 3)] {
            let case = classify(c.shape()).unwrap();
            let chars = c.char_system();
            let n = chars.order();
            let order = c.tower().p() * n;
            let r = c.shape().r as i64;
            assert_eq!(chars.gauss_sum(n), int(order, -1));
            for i in 1..n {
                let tau = chars.gauss_sum(i);
                assert_eq!(tau.conj_norm(), int(order, r));
                let closed = gauss_sum_closed(i, &case).unwrap();
                assert_eq!(tau.as_integer(), Some(closed));
            }
        }
    }

    #[test]
    fn jacobi_identities() {
        for c in [code(7, 1, 2, 3), code(2, 2, 3, 3), code(13, 1, 2, 3)] {
            let case = classify(c.shape()).unwrap();
            let chars = c.char_system();
            let n = chars.order();
            let r = c.shape().r as i64;
            let big = c.tower().p() * n;
            assert_eq!(chars.jacobi_sum(n, n), int(n, r - 2));
            for i in 1..n {
                for j in 1..n {
                    let jac = chars.jacobi_sum(i, j);
                    if i + j == n {
                        assert_eq!(jac, int(n, -1));
                        continue;
                    }
                    assert_eq!(jac.conj_norm(), int(n, r));
                    let lhs = &chars.gauss_sum((i + j) % n) * &jac.embed(big).unwrap();
                    let rhs = &chars.gauss_sum(i) * &chars.gauss_sum(j);
                    assert_eq!(lhs, rhs);
                    if case.case_major == 2 {
                        assert_eq!(jac, int(n, -case.gamma_sign() * case.sqrt_r as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn beta_differences() {
        for c in desk() {
            let t = c.tower();
            let n = c.n_classes();
            let base = t.coset_index(t.sub(t.one(), c.beta()), n).unwrap();
            for i in 1..=3i64 {
                for j in (1..=3i64).filter(|&j| j != i) {
                    let d = t.sub(t.pow(c.beta(), i), t.pow(c.beta(), j));
                    assert_eq!(t.coset_index(d, n).unwrap(), base);
                }
            }
            assert_eq!(t.coset_index(t.add(t.one(), c.beta()), n).unwrap(), 0);
        }
    }

    #[test]
    fn xi_mu_examples() {
        let c = code(7, 1, 2, 3);
        let xm = xi_mu(&CosetVector([0, 0, 0]), &c);
        assert_eq!(
            (xm.ximu1_coset, xm.ximu2_coset, xm.xi_ratio_coset),
            (0, 0, 0)
        );
        for c in desk() {
            let n = c.n_classes();
            for v in CosetVector::all(n) {
                let xm = xi_mu(&v, &c);
                assert_eq!((xm.ximu1_coset + n - xm.ximu2_coset) % n, xm.xi_ratio_coset);
            }
        }
    }

    #[test]
    fn f_three_ways() {
        for c in [code(7, 1, 2, 3), code(2, 2, 3, 3)] {
            let case = classify(c.shape()).unwrap();
            let chars = c.char_system();
            let n = c.n_classes();
            let all = f_enumerate_all(&c, Exec::default());
            let r = c.shape().r;
            assert_eq!(all.counts.iter().sum::<u64>(), r * r - 1 - 3 * (r - 1));
            assert_eq!(all.degenerate, 3 * (r - 1) + 1);
            for v in CosetVector::all(n) {
                let e = all.get(&v);
                assert_eq!(chars.f_charsum(&v, &c).unwrap(), e, "{v:?}");
                assert_eq!(f_closed(&v, c.shape(), &case).unwrap(), e, "{v:?}");
            }
        }
    }

    #[test]
    fn f_single_vector_matches_pass() {
        let c = code(7, 1, 2, 3);
        let all = f_enumerate_all(&c, Exec::Sequential);
        for v in CosetVector::all(2) {
            assert_eq!(f_enumerate(&v, &c), all.get(&v));
        }
    }

    #[test]
    fn f_all_zero_case_two() {
        let c = code(7, 1, 2, 3);
        let case = classify(c.shape()).unwrap();
        let (r, n, s) = (49i64, 2i64, 7i64);
        let expected =
            (r - 1) * (r + 1 - 3 * n - case.gamma_sign() * s * (n * n - 3 * n + 2)) / n.pow(3);
        assert_eq!(
            f_closed(&CosetVector([0, 0, 0]), c.shape(), &case).unwrap() as i64,
            expected
        );
    }

    #[test]
    fn f_depends_on_class_not_representative() {
        let c = code(7, 1, 2, 3);
        let t = c.tower().clone();
        let factors = class_factors(&c);
        // representatives α^(k+2) instead of α^k
        let count = |v: &CosetVector| {
            let reps = v.0.map(|k| t.from_log(k as u64 + 2));
            let mut hits = 0;
            for a in t.elements() {
                for b in t.elements() {
                    let ok = (0..3).all(|i| {
                        let x = t.mul(
                            t.mul(t.add(a, t.mul(factors[i].0, b)), factors[i].1),
                            reps[i],
                        );
                        x.log().is_some_and(|k| k % 2 == 0)
                    });
                    hits += ok as u64;
                }
            }
            hits
        };
        for v in CosetVector::all(2) {
            assert_eq!(count(&v), f_enumerate(&v, &c));
        }
    }

    #[test]
    fn sequential_and_parallel_counts_agree() {
        let c = code(2, 2, 3, 3);
        assert_eq!(
            f_enumerate_all(&c, Exec::Sequential),
            f_enumerate_all(&c, Exec::Parallel)
        );
    }

    #[test]
    fn coset_vector_indexing() {
        let all: Vec<_> = CosetVector::all(3).collect();
        assert_eq!(all.len(), 27);
        for (i, v) in all.iter().enumerate() {
            assert_eq!(v.index(3), i);
        }
    }
}
