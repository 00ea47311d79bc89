//! Binomial probabilities, exact-coefficient for small `n` and in log
//! space beyond.

/// Largest `n` whose binomial coefficients are computed as exact integers;
/// dyadic `q` such as `1/2` then gives exact probabilities.
const EXACT_COEFFICIENTS: usize = 60;

/// `ln(k!)` for `k = 0..=n`, accumulated as a running sum of logarithms.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// `P(j successes in n trials)` for `j = 0..=n` with success probability `q`.
pub fn binomial_pmf(n: usize, q: f64) -> Vec<f64> {
    binomial_pmf_with(&ln_factorials(n), n, q)
}

pub(crate) fn binomial_pmf_with(ln_fact: &[f64], n: usize, q: f64) -> Vec<f64> {
    if q <= 0.0 || q >= 1.0 {
        let hit = if q <= 0.0 { 0 } else { n };
        return (0..=n).map(|j| if j == hit { 1.0 } else { 0.0 }).collect();
    }
    if n <= EXACT_COEFFICIENTS {
        let mut choose: u64 = 1;
        return (0..=n)
            .map(|j| {
                if j > 0 {
                    choose = choose * (n - j + 1) as u64 / j as u64;
                }
                choose as f64 * q.powi(j as i32) * (1.0 - q).powi((n - j) as i32)
            })
            .collect();
    }
    let (lq, lp) = (q.ln(), (-q).ln_1p());
    (0..=n)
        .map(|j| {
            let ln_choose = ln_fact[n] - ln_fact[j] - ln_fact[n - j];
            (ln_choose + j as f64 * lq + (n - j) as f64 * lp).exp()
        })
        .collect()
}

/// Cumulative tails of a pmf over `j = 0..=n`, indexed by threshold
/// `k = 0..=n+1`: `lower[k] = P(j < k)` and `upper[k] = P(j >= k)`.
///
/// Both are summed from their own small end to avoid cancellation.
pub fn tails(pmf: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let len = pmf.len() + 1;
    let mut lower = vec![0.0; len];
    let mut upper = vec![0.0; len];
    for k in 1..len {
        lower[k] = lower[k - 1] + pmf[k - 1];
    }
    for k in (0..pmf.len()).rev() {
        upper[k] = upper[k + 1] + pmf[k];
    }
    (lower, upper)
}
