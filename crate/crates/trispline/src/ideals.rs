//! Graded dimensions of ideals generated by powers of linear forms: the
//! closed form coming from the two-variable resolution, the Fröberg and
//! expected-dimension sequences for three variables, and a brute-force rank
//! route that is exact in every case.

use thiserror::Error;

use crate::forms::{binom, form_power_times_monomial, LinearForm, MonomialBasis, RationalMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealsError {
    /// The resolution applies to ideals with at least one generator.
    #[error("resolution data requires at least one form, got s = 0")]
    NoGenerators,
}

/// Twist and multiplicities of the free resolution of an ideal generated by
/// the `(r+1)`-st powers of `s` pairwise distinct two-variable linear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    pub s: u32,
    pub r: u32,
    pub omega: i64,
    pub a: i64,
    pub b: i64,
}

/// Computes the resolution twist `Ω = ⌊s·r/(s−1)⌋ + 1` and multiplicities
/// `a = s(r+1) + (1−s)Ω`, `b = s − 1 − a`. For a single form (`s = 1`) the
/// ideal is principal and all three values are zero.
pub fn resolution_data(s: u32, r: u32) -> Result<ResolutionData, IdealsError> {
    if s == 0 {
        return Err(IdealsError::NoGenerators);
    }
    if s == 1 {
        return Ok(ResolutionData {
            s,
            r,
            omega: 0,
            a: 0,
            b: 0,
        });
    }
    let (s_i, r_i) = (i64::from(s), i64::from(r));
    let omega = (s_i * r_i).div_euclid(s_i - 1) + 1;
    let a = s_i * (r_i + 1) + (1 - s_i) * omega;
    let b = s_i - 1 - a;
    debug_assert!((0..=s_i - 1).contains(&a) && a + b == s_i - 1);
    Ok(ResolutionData { s, r, omega, a, b })
}

/// Degree-`k` dimension (inside the four-variable ring) of the ideal
/// generated by the `(r+1)`-st powers of `s ≥ 1` pairwise distinct linear
/// forms in two variables:
/// `s·C(k+2−r,3) − b·C(k+3−Ω,3) − a·C(k+2−Ω,3)`.
pub fn edge_ideal_dim_closed(s: u32, r: u32, k: u32) -> i64 {
    let data = resolution_data(s, r).expect("s >= 1 required");
    let k = i64::from(k);
    i64::from(s) * binom(k + 2 - i64::from(r), 3)
        - data.b * binom(k + 3 - data.omega, 3)
        - data.a * binom(k + 2 - data.omega, 3)
}

/// Degree-`k` dimension of the ideal generated by the `d`-th powers of the
/// given pairwise distinct forms, computed as the exact rank of the matrix
/// of all products `ℓ^d·m` over monomials `m` of degree `k − d`. This is the
/// ground-truth route, valid for any form configuration.
pub fn ideal_dim_rank(forms: &[LinearForm], d: u32, k: u32) -> usize {
    ideal_dim_rank_in_vars(forms, d, k, 4)
}

/// Same as [`ideal_dim_rank`] inside the polynomial ring on the first
/// `vars` variables; every form must be supported on those variables.
pub fn ideal_dim_rank_in_vars(forms: &[LinearForm], d: u32, k: u32, vars: usize) -> usize {
    assert!(!forms.is_empty(), "need at least one form");
    assert!(
        forms.iter().all(|f| f.supported_on(vars)),
        "forms must be supported on the first {vars} variables"
    );
    if k < d {
        return 0;
    }
    let basis = MonomialBasis::new(k, vars);
    let multipliers = MonomialBasis::new(k - d, vars);
    let mut rows = Vec::with_capacity(forms.len() * multipliers.len());
    for form in forms {
        for m in multipliers.iter() {
            rows.push(
                form_power_times_monomial(form, d, m, &basis)
                    .expect("degrees match by construction"),
            );
        }
    }
    RationalMatrix::from_rows(rows).rank()
}

/// Fröberg sequence `F(t, d, 3)` together with its prefix sums, evaluated
/// through a chosen maximal index.
#[derive(Clone, Debug)]
pub struct FrobergSeq {
    pub t: u32,
    pub d: u32,
    /// `values[i] = F(t, d, 3)_i`.
    pub values: Vec<i64>,
    /// `prefix[i] = Σ_{j ≤ i} F(t, d, 3)_j`.
    pub prefix: Vec<i64>,
}

impl FrobergSeq {
    pub fn new(t: u32, d: u32, max_index: u32) -> Self {
        let mut values = Vec::with_capacity(max_index as usize + 1);
        let mut prefix = Vec::with_capacity(max_index as usize + 1);
        let mut truncated = false;
        let mut sum = 0;
        for i in 0..=i64::from(max_index) {
            let raw = froberg_raw(t, d, i);
            if raw <= 0 {
                truncated = true;
            }
            let value = if truncated { 0 } else { raw };
            sum += value;
            values.push(value);
            prefix.push(sum);
        }
        Self {
            t,
            d,
            values,
            prefix,
        }
    }
}

/// Untruncated term `F'(t, d, 3)_i`: the alternating sum
/// `Σ_{j=0..3} (−1)^j C(t,j)·dim R3_{i−d·j}` with `dim R3_m = C(m+2, 2)`.
fn froberg_raw(t: u32, d: u32, i: i64) -> i64 {
    assert!(d >= 1, "form degree must be positive");
    let t = i64::from(t);
    let d = i64::from(d);
    let mut total = 0;
    for j in 0..=3i64 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * binom(t, j as u32) * binom(i - d * j + 2, 2);
    }
    total
}

/// `F(t, d, 3)_i`: the raw alternating sum truncated to zero from the first
/// index where it fails to be positive.
pub fn froberg_f(t: u32, d: u32, i: u32) -> i64 {
    for u in 0..=i64::from(i) {
        if froberg_raw(t, d, u) <= 0 {
            return 0;
        }
        if u == i64::from(i) {
            return froberg_raw(t, d, u);
        }
    }
    unreachable!()
}

/// Prefix sum `Σ_{j=0..k} F(t, d, 3)_j`.
pub fn froberg_sum(t: u32, d: u32, k: u32) -> i64 {
    (0..=k).map(|j| froberg_f(t, d, j)).sum()
}

/// Expected Hilbert function `E(t, r+1, 3)_k` of the quotient by `t` powers
/// of generic linear forms: `max(0, ½((k+1)(k+2) − t(k−r)(k−r+1)))`, with
/// the subtracted product treated as zero when `k ≤ r`.
pub fn expected_e(t: u32, r: u32, k: u32) -> i64 {
    let (t, r, k) = (i64::from(t), i64::from(r), i64::from(k));
    let full = (k + 1) * (k + 2);
    let constrained = if k <= r { 0 } else { t * (k - r) * (k - r + 1) };
    ((full - constrained) / 2).max(0)
}
