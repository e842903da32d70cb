//! Closed-form quantities around `k`-domination in `G(n, 1/2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={n}")));
    }
    Ok(())
}

fn check_l(k: usize, l: usize) -> Result<()> {
    if k == 0 || l >= k {
        return Err(Error::InvalidParameter(format!("need 0 <= l < k, got k = {k}, l = {l}")));
    }
    Ok(())
}

/// `log2(1 - 2^-k)`, accurate for large `k`.
fn log2_undominated_complement(k: usize) -> f64 {
    (-(2f64.powi(-(k as i32)))).ln_1p() / std::f64::consts::LN_2
}

fn log2_binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).log2()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstMoment {
    pub value: f64,
    pub log2: f64,
}

/// Expected number of dominating `k`-sets in `G(n, 1/2)`:
/// `C(n,k) (1 - 2^-k)^(n-k)`, evaluated in log space.
pub fn kdom_first_moment(n: usize, k: usize) -> Result<FirstMoment> {
    check_k(n, k)?;
    let log2 = log2_binomial(n, k) + (n - k) as f64 * log2_undominated_complement(k);
    Ok(FirstMoment { value: log2.exp2(), log2 })
}

/// Exact `C(n,k) (2^k - 1)^(n-k) / 2^(k(n-k))`.
pub fn kdom_first_moment_exact(n: usize, k: usize) -> Result<Dyadic> {
    check_k(n, k)?;
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    let base = Dyadic::new((BigInt::from(1) << k) - 1, k as u32);
    Ok(&Dyadic::integer(c) * &base.pow((n - k) as u32))
}

/// Base-2 logarithm of the asymptotic count of labelled `k`-cop-win graphs,
/// `(1-2^-k)^-k C(n,k) 2^(n^2/2 - (1/2 - log2(1-2^-k)) n)`.
pub fn labelled_count_formula(n: usize, k: usize) -> Result<f64> {
    check_k(n, k)?;
    let l = log2_undominated_complement(k);
    let nf = n as f64;
    Ok(-(k as f64) * l + log2_binomial(n, k) + nf * nf / 2.0 - (0.5 - l) * nf)
}

/// Probability that a vertex outside `S ∪ T` is dominated by both, where
/// `|S| = |T| = k` and `|S ∩ T| = l`: `(1 - 2^-l) + (1 - 2^-(k-l))^2 2^-l`.
pub fn pair_domination_probability(k: usize, l: usize) -> Result<Dyadic> {
    check_l(k, l)?;
    let one = Dyadic::one();
    let shared = &one - &Dyadic::pow2_neg(l as u32);
    let private = (&one - &Dyadic::pow2_neg((k - l) as u32)).pow(2);
    let value = &shared + &(&private * &Dyadic::pow2_neg(l as u32));
    debug_assert_eq!(value, pair_domination_closed_form(k, l)?);
    Ok(value)
}

/// The simplified right-hand side `1 - 2^-k - 2^-k (1 - 2^-(k-l))`.
pub fn pair_domination_closed_form(k: usize, l: usize) -> Result<Dyadic> {
    check_l(k, l)?;
    let one = Dyadic::one();
    let pk = Dyadic::pow2_neg(k as u32);
    let tail = &pk * &(&one - &Dyadic::pow2_neg((k - l) as u32));
    Ok(&(&one - &pk) - &tail)
}

/// Upper bound `1 - (3/2) 2^-k` on [`pair_domination_probability`].
pub fn pair_domination_bound(k: usize) -> Dyadic {
    &Dyadic::one() - &Dyadic::new(3, k as u32 + 1)
}

/// `P(u misses T | u is dominated by S)` for `T ⊂ S`, `|T| = l < k = |S|`:
/// `2^-l (1 - 2^-(k-l)) / (1 - 2^-k)`.
pub fn eta(k: usize, l: usize) -> Result<BigRational> {
    check_l(k, l)?;
    let one = Dyadic::one();
    let num = &Dyadic::pow2_neg(l as u32) * &(&one - &Dyadic::pow2_neg((k - l) as u32));
    let den = &one - &Dyadic::pow2_neg(k as u32);
    Ok(num.to_rational() / den.to_rational())
}

/// Chernoff tail `2 exp(-eps^2 mean / 3)` for `|X - E X| >= eps E X`, valid for
/// `0 < eps < 3/2`. Not capped; see [`chernoff_probability_bound`].
pub fn chernoff_bound(mean: f64, eps: f64) -> Result<f64> {
    if !mean.is_finite() || mean < 0.0 {
        return Err(Error::InvalidParameter(format!("mean = {mean} must be finite and >= 0")));
    }
    if !(eps > 0.0 && eps < 1.5) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 3/2)")));
    }
    Ok(2.0 * (-eps * eps * mean / 3.0).exp())
}

pub fn chernoff_probability_bound(mean: f64, eps: f64) -> Result<f64> {
    Ok(chernoff_bound(mean, eps)?.min(1.0))
}
