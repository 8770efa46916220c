//! Counting combinatorics: projective point counts, (Gaussian) binomials,
//! lexicographic ranking of exponent tuples and the Heijnen–Pellikaan
//! numbers `H_r(d, m)`.
//!
//! Ranks are 1-based and refer to *descending* lexicographic order unless a
//! function says otherwise.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

/// `q^exp` for `exp >= 0`, and `0` (the floor of a proper fraction) for
/// negative `exp`.
pub fn floor_pow(q: u64, exp: i64) -> BigUint {
    if exp < 0 {
        BigUint::zero()
    } else {
        BigUint::from(q).pow(exp as u32)
    }
}

/// `p_k = |P^k(F_q)| = q^k + ... + q + 1` for `k >= 0`, else `0`.
pub fn pk(k: i64, q: u64) -> BigUint {
    (0..=k).fold(BigUint::zero(), |acc, i| acc + floor_pow(q, i))
}

/// `C(n, k)` in machine arithmetic, `None` on overflow or `k > n`.
pub fn binom_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return None;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c.checked_mul(n as u128 - k as u128 + i)? / i;
        if c > u64::MAX as u128 {
            return None;
        }
    }
    Some(c as u64)
}

pub fn binom(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return domain(format!("binomial C({n}, {k}) requires k <= n"));
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 1..=k {
        c = c * BigUint::from(n - k + i) / BigUint::from(i);
    }
    Ok(c)
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gauss_binom(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if k > n {
        return domain(format!("Gaussian binomial [{n} {k}] requires k <= n"));
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((i + 1) as u32) - 1u32;
    }
    Ok(num / den)
}

fn count(n: u64, k: u64) -> Result<u64> {
    binom_u64(n, k).ok_or_else(|| Error::Domain(format!("C({n}, {k}) does not fit in 64 bits")))
}

/// Number of tuples of length `len` with entries summing to at most `s`.
fn sigma_count(s: u64, len: u64) -> Result<u64> {
    count(len + s, s)
}

/// Number of tuples of length `len` with entries summing to exactly `s`.
fn exact_count(s: u64, len: u64) -> Result<u64> {
    if len == 0 {
        return Ok((s == 0) as u64);
    }
    count(len - 1 + s, s)
}

/// `|Sigma(d, m)| = C(m + d, d)`.
pub fn sigma_size(d: u32, m: u32) -> Result<u64> {
    sigma_count(d as u64, m as u64)
}

/// The `r`-th element of `Sigma(d, m)` in descending lexicographic order.
pub fn unrank_sigma(d: u32, m: u32, r: u64) -> Result<Vec<u32>> {
    let total = sigma_size(d, m)?;
    if r == 0 || r > total {
        return domain(format!("rank {r} outside 1..={total} for Sigma({d}, {m})"));
    }
    let mut rest = r;
    let mut budget = d as u64;
    let mut out = Vec::with_capacity(m as usize);
    for pos in 0..m as u64 {
        let remaining = m as u64 - pos - 1;
        let mut v = budget;
        loop {
            let block = sigma_count(budget - v, remaining)?;
            if rest <= block {
                break;
            }
            rest -= block;
            v -= 1;
        }
        out.push(v as u32);
        budget -= v;
    }
    debug_assert_eq!(rest, 1);
    Ok(out)
}

/// Inverse of [`unrank_sigma`].
pub fn rank_sigma(gamma: &[u32], d: u32) -> Result<u64> {
    let sum: u64 = gamma.iter().map(|&g| g as u64).sum();
    if sum > d as u64 {
        return domain(format!("{gamma:?} is not in Sigma({d}, {})", gamma.len()));
    }
    let m = gamma.len() as u64;
    let mut rank = 1;
    let mut budget = d as u64;
    for (pos, &g) in gamma.iter().enumerate() {
        let remaining = m - pos as u64 - 1;
        for v in (g as u64 + 1)..=budget {
            rank += sigma_count(budget - v, remaining)?;
        }
        budget -= g as u64;
    }
    Ok(rank)
}

/// The `r`-th `n`-tuple of nonnegative integers summing to exactly `d`, in
/// descending lexicographic order.
pub fn unrank_exact(d: u32, n: u32, r: u64) -> Result<Vec<u32>> {
    let total = exact_count(d as u64, n as u64)?;
    if r == 0 || r > total {
        return domain(format!("rank {r} outside 1..={total} for {n}-tuples summing to {d}"));
    }
    let mut rest = r;
    let mut budget = d as u64;
    let mut out = Vec::with_capacity(n as usize);
    for pos in 0..n as u64 {
        if pos + 1 == n as u64 {
            out.push(budget as u32);
            break;
        }
        let remaining = n as u64 - pos - 1;
        let mut v = budget;
        loop {
            let block = exact_count(budget - v, remaining)?;
            if rest <= block {
                break;
            }
            rest -= block;
            v -= 1;
        }
        out.push(v as u32);
        budget -= v;
    }
    Ok(out)
}

/// Inverse of [`unrank_exact`]; the degree is the tuple's sum.
pub fn rank_exact(nu: &[u32]) -> Result<u64> {
    if nu.is_empty() {
        return domain("empty tuple has no rank");
    }
    let n = nu.len() as u64;
    let mut budget: u64 = nu.iter().map(|&x| x as u64).sum();
    let mut rank = 1;
    for (pos, &g) in nu.iter().enumerate().take(nu.len() - 1) {
        let remaining = n - pos as u64 - 1;
        for v in (g as u64 + 1)..=budget {
            rank += exact_count(budget - v, remaining)?;
        }
        budget -= g as u64;
    }
    Ok(rank)
}

fn check_h_domain(r: u64, d: u32, m: u32, q: u64) -> Result<()> {
    if m == 0 {
        return domain("H_r(d, m) requires m >= 1");
    }
    if d == 0 || d as u64 >= q {
        return domain(format!("H_r(d, m) requires 1 <= d < q (d = {d}, q = {q})"));
    }
    let total = sigma_size(d, m)?;
    if r == 0 || r > total {
        return domain(format!("H_r({d}, {m}) requires 1 <= r <= {total}, got {r}"));
    }
    Ok(())
}

/// `H_r(d, m) = sum_j beta_j q^(m-j)` with `beta` the `r`-th element of
/// `Sigma(d, m)` in descending lexicographic order. Requires `1 <= d < q`.
pub fn h(r: u64, d: u32, m: u32, q: u64) -> Result<BigUint> {
    check_h_domain(r, d, m, q)?;
    let beta = unrank_sigma(d, m, r)?;
    Ok(beta
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (j, &b)| {
            acc + BigUint::from(b) * floor_pow(q, (m as usize - 1 - j) as i64)
        }))
}

/// The unique `(i, j)` with `1 <= i <= j <= m + 1` and
/// `r = (i - 1) m - C(i - 1, 2) + j`.
pub fn ij_from_r(r: u64, m: u32) -> Result<(u64, u64)> {
    let m = m as u64;
    let total = count(m + 2, 2)?;
    if r == 0 || r > total {
        return domain(format!("rank {r} outside 1..={total}"));
    }
    for i in 1..=m + 1 {
        let offset = (i - 1) * m - (i - 1) * (i.saturating_sub(2)) / 2;
        if r > offset {
            let j = r - offset;
            if j >= i && j <= m + 1 {
                return Ok((i, j));
            }
        }
    }
    unreachable!("every rank up to C(m+2, 2) has an (i, j) pair")
}

/// Closed form `(d-2) q^(m-1) + floor(q^(m-i)) + floor(q^(m-j))` valid for
/// `2 <= d < q` and `r <= C(m+2, 2)`.
pub fn h_closed_small_r(r: u64, d: u32, m: u32, q: u64) -> Result<BigUint> {
    if d < 2 || d as u64 >= q {
        return domain(format!("closed form needs 2 <= d < q (d = {d}, q = {q})"));
    }
    if m == 0 {
        return domain("closed form needs m >= 1");
    }
    let (i, j) = ij_from_r(r, m)?;
    let m = m as i64;
    Ok(BigUint::from(d - 2) * floor_pow(q, m - 1)
        + floor_pow(q, m - i as i64)
        + floor_pow(q, m - j as i64))
}

/// The original Heijnen–Pellikaan form `q^m - (1 + sum alpha_j q^(m-j))`,
/// with `alpha` the `r`-th tuple in *ascending* lexicographic order among
/// tuples over `{0, .., q-1}` with coordinate sum at least `m(q-1) - d`.
/// Enumerates `q^m` tuples, so it is meant for small parameters.
pub fn h_ascending_form(r: u64, d: u32, m: u32, q: u64) -> Result<BigUint> {
    check_h_domain(r, d, m, q)?;
    let space = q.checked_pow(m).filter(|&s| s <= 50_000_000);
    let Some(space) = space else {
        return domain("ascending form enumeration too large");
    };
    let threshold = m as i64 * (q as i64 - 1) - d as i64;
    let mut seen = 0u64;
    let mut digits = vec![0u64; m as usize];
    for _ in 0..space {
        let sum: i64 = digits.iter().map(|&x| x as i64).sum();
        if sum >= threshold {
            seen += 1;
            if seen == r {
                let weighted = digits.iter().enumerate().fold(BigUint::zero(), |acc, (j, &a)| {
                    acc + BigUint::from(a) * floor_pow(q, (m as usize - 1 - j) as i64)
                });
                return Ok(floor_pow(q, m as i64) - (weighted + 1u32));
            }
        }
        for pos in (0..m as usize).rev() {
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
        }
    }
    domain("rank exceeds the number of admissible tuples")
}
