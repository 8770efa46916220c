//! Closed-form bounds and exact values for `e_r(d, m)`, and the regime
//! dispatcher that picks the applicable one.
//!
//! The dispatcher tries its branches in a fixed order and the first match
//! wins. A proved value always beats a conjectural one; overlapping proved
//! branches agree (this is checked by `verify::regime_consistency`).
//!
//! | order | regime                                   | tag             |
//! |-------|------------------------------------------|-----------------|
//! | 1     | `m = 1`                                  | `eq:ermone`     |
//! | 2     | `d = 1`                                  | `eq:ermone`     |
//! | 3     | `d = q >= 3`, `r <= m`                   | `thm:erdm3`     |
//! | 4     | `d = q >= 3`, `r = m + 1`                | `thm:erdm4`     |
//! | 5     | `r = 1`                                  | `thm:SerreSorr` |
//! | 6     | `d = 2`                                  | `thm:Z`         |
//! | 7     | `2 < d < q`, `r <= C(m+2, 2)`            | `thm:main`      |
//! | 8     | `d < q - 1`, `r >= C(m+d, d) - d`        | `eq:elastr`     |
//! | 9     | `2 < d <= q - 1`, `r <= C(m+d-1, d-1)`   | `conj:2.11`     |
//! | 10    | anything else                            | unknown         |

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{Map, Number, Value};

use crate::combinat::{binom_u64, floor_pow, h, pk, sigma_size, unrank_exact};
use crate::error::{domain, Error, Result};
use crate::gf::prime_power;

pub const SERRE: &str = "thm:SerreSorr";
pub const ZANELLA: &str = "thm:Z";
pub const MAIN: &str = "thm:main";
pub const DQ_SMALL_R: &str = "thm:erdm3";
pub const DQ_R_M_PLUS_1: &str = "thm:erdm4";
pub const INITIAL: &str = "eq:ermone";
pub const TERMINAL: &str = "eq:elastr";
pub const CONJECTURE: &str = "conj:2.11";
pub const OPEN: &str = "open";
pub const AFFINE: &str = "eq:Hrdm";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    Conjectural,
    LowerBound,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Conjectural => "conjectural",
            Status::LowerBound => "lower_bound",
            Status::Unknown => "unknown",
        }
    }
}

/// An answer for `e_r(d, m)` together with how it is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Option<BigUint>,
    pub status: Status,
    pub theorem: &'static str,
    pub lower: Option<BigUint>,
    pub upper: Option<BigUint>,
}

impl BoundValue {
    pub fn exact(value: BigUint, theorem: &'static str) -> BoundValue {
        BoundValue {
            value: Some(value),
            status: Status::Exact,
            theorem,
            lower: None,
            upper: None,
        }
    }

    fn conjectural(value: BigUint) -> BoundValue {
        BoundValue {
            value: Some(value),
            status: Status::Conjectural,
            theorem: CONJECTURE,
            lower: None,
            upper: None,
        }
    }

    pub fn lower_bound(value: BigUint, theorem: &'static str) -> BoundValue {
        BoundValue {
            value: Some(value),
            status: Status::LowerBound,
            theorem,
            lower: None,
            upper: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Exact value as `u64`, when the status is exact and it fits.
    pub fn exact_u64(&self) -> Option<u64> {
        if !self.is_exact() {
            return None;
        }
        self.value.as_ref().and_then(|v| u64::try_from(v).ok())
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("value".into(), self.value.as_ref().map_or(Value::Null, big_json));
        map.insert("status".into(), Value::String(self.status.as_str().into()));
        map.insert("theorem".into(), Value::String(self.theorem.into()));
        if let Some(l) = &self.lower {
            map.insert("lower".into(), big_json(l));
        }
        if let Some(u) = &self.upper {
            map.insert("upper".into(), big_json(u));
        }
        Value::Object(map)
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// An arbitrary-size integer as a JSON number.
pub fn big_json(v: &BigUint) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integers are valid JSON numbers"))
}

fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return domain(format!("q = {q} is not a prime power"));
    }
    Ok(())
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `d q^(m-1) + p_(m-2)`, the largest number of points on a degree-`d`
/// hypersurface in `P^m`.
pub fn serre_bound(d: u32, m: u32, q: u64) -> Result<BigUint> {
    if d == 0 || m == 0 {
        return domain("serre bound needs d >= 1 and m >= 1");
    }
    Ok(big(d as u64) * floor_pow(q, m as i64 - 1) + pk(m as i64 - 2, q))
}

/// `(d-1) q^(m-1) + d q^(m-2) + p_(m-3)` for hypersurfaces without a
/// rational linear component.
pub fn homma_kim_bound(d: u32, m: u32, q: u64) -> Result<BigUint> {
    if d == 0 {
        return domain("homma-kim bound needs d >= 1");
    }
    if m < 2 {
        return domain("homma-kim bound needs m >= 2");
    }
    let m = m as i64;
    Ok(big(d as u64 - 1) * floor_pow(q, m - 1) + big(d as u64) * floor_pow(q, m - 2) + pk(m - 3, q))
}

/// `deg f_1 ... deg f_r * q^s` for an affine variety of dimension `s`.
pub fn lachaud_rolland_bound(degrees: &[u32], s: u32, q: u64) -> Result<BigUint> {
    if degrees.contains(&0) {
        return domain("degrees must be positive");
    }
    Ok(degrees.iter().fold(BigUint::one(), |acc, &d| acc * big(d as u64)) * floor_pow(q, s as i64))
}

/// `(d-1) d q^(m-2)`, or `(d-1)^2 q^(m-2)` when two of the polynomials have
/// degree at most `d - 1`.
pub fn refined_affine_bounds(d: u32, q: u64, m: u32, both_small: bool) -> Result<BigUint> {
    if d < 2 || m < 2 {
        return domain("refined affine bound needs d >= 2 and m >= 2");
    }
    let d = d as u64;
    let factor = if both_small { (d - 1) * (d - 1) } else { (d - 1) * d };
    Ok(big(factor) * floor_pow(q, m as i64 - 2))
}

/// Affine maximum `e_r^A(d, m) = H_r(d, m)`.
pub fn e_affine(r: u64, d: u32, m: u32, q: u64) -> Result<BigUint> {
    h(r, d, m, q)
}

/// `e_r(2, m)` for intersections of quadrics.
pub fn zanella_e(r: u64, m: u32, q: u64) -> Result<BigUint> {
    let m64 = m as u64;
    let top = binom_u64(m64 + 2, 2).ok_or_else(|| Error::Domain("m too large".into()))?;
    if r == 0 || r > top {
        return domain(format!("e_r(2, {m}) requires 1 <= r <= {top}"));
    }
    let tri = |n: i64| -> u64 { if n < 2 { 0 } else { (n * (n - 1) / 2) as u64 } };
    for k in -1..m as i64 {
        let lo = top - tri(k + 3);
        let hi = top - tri(k + 2);
        if lo < r && r <= hi {
            let exponent = hi as i64 - r as i64 - 1;
            return Ok(floor_pow(q, exponent) + pk(k, q));
        }
    }
    unreachable!("the ranges for k = -1..m cover 1..=C(m+2, 2)")
}

/// Tsfasman–Boguslavsky value built from the `r`-th exact-degree tuple.
pub fn tbc_value(r: u64, d: u32, m: u32, q: u64) -> Result<BigUint> {
    if d == 0 || m == 0 {
        return domain("tbc value needs d >= 1 and m >= 1");
    }
    let nu = unrank_exact(d, m + 1, r)?;
    let Some(first) = nu.iter().position(|&x| x != 0) else {
        return domain("the tuple is zero, so j is undefined");
    };
    let j = first as i64 + 1;
    let m = m as i64;
    let mut acc = pk(m - 2 * j, q);
    for i in j..=m {
        let nu_i = nu[i as usize - 1];
        if nu_i > 0 {
            acc += big(nu_i as u64) * (pk(m - i, q) - pk(m - i - j, q));
        }
    }
    Ok(acc)
}

/// `e_2(d, m) = (d-1) q^(m-1) + q^(m-2) + p_(m-2)` for `1 < d < q - 1`.
pub fn boguslavsky_e2(d: u32, m: u32, q: u64) -> Result<BigUint> {
    if !(d > 1 && (d as u64) + 1 < q) || m < 2 {
        return domain("second weight formula needs 1 < d < q - 1 and m >= 2");
    }
    let m = m as i64;
    Ok(big(d as u64 - 1) * floor_pow(q, m - 1) + floor_pow(q, m - 2) + pk(m - 2, q))
}

fn validate(r: u64, d: u32, m: u32, q: u64) -> Result<u64> {
    check_q(q)?;
    if m == 0 {
        return domain("m must be at least 1");
    }
    if d == 0 {
        return domain("d must be at least 1");
    }
    if d as u64 > q {
        return domain(format!("d = {d} exceeds q = {q}; this regime is not covered"));
    }
    let top = sigma_size(d, m)?;
    if r == 0 || r > top {
        return domain(format!("r must lie in 1..={top} for d = {d}, m = {m}"));
    }
    Ok(top)
}

/// `e_r(d, m)` with status and provenance.
pub fn e_value(r: u64, d: u32, m: u32, q: u64) -> Result<BoundValue> {
    let top = validate(r, d, m, q)?;
    let (d64, m64, mi) = (d as u64, m as u64, m as i64);

    if m == 1 {
        return Ok(BoundValue::exact(big(d64 + 1 - r), INITIAL));
    }
    if d == 1 {
        return Ok(BoundValue::exact(pk(mi - r as i64, q), INITIAL));
    }
    if d64 == q && q >= 3 && r <= m64 {
        return Ok(BoundValue::exact(floor_pow(q, mi) + pk(mi - r as i64 - 1, q), DQ_SMALL_R));
    }
    if d64 == q && q >= 3 && r == m64 + 1 {
        return Ok(BoundValue::exact(
            big(q - 1) * floor_pow(q, mi - 1) + pk(mi - 2, q),
            DQ_R_M_PLUS_1,
        ));
    }
    if r == 1 {
        return Ok(BoundValue::exact(serre_bound(d, m, q)?, SERRE));
    }
    if d == 2 {
        return Ok(BoundValue::exact(zanella_e(r, m, q)?, ZANELLA));
    }
    let quadric_ranks = binom_u64(m64 + 2, 2).unwrap_or(u64::MAX);
    if d > 2 && d64 < q && r <= quadric_ranks {
        return Ok(BoundValue::exact(h(r, d - 1, m, q)? + pk(mi - 1, q), MAIN));
    }
    if d64 + 1 < q && r >= top - d64 {
        return Ok(BoundValue::exact(big(top - r), TERMINAL));
    }
    let divisible_ranks = binom_u64(m64 + d64 - 1, d64 - 1).unwrap_or(u64::MAX);
    if d > 2 && d64 < q && r <= divisible_ranks {
        return Ok(BoundValue::conjectural(h(r, d - 1, m, q)? + pk(mi - 1, q)));
    }

    // The hyperplane-containing family gives a proved lower bound whenever
    // it exists; e_r <= e_1 bounds from above.
    let lower = if r <= divisible_ranks {
        Some(h(r, d - 1, m, q)? + pk(mi - 1, q))
    } else {
        None
    };
    Ok(BoundValue {
        value: None,
        status: Status::Unknown,
        theorem: OPEN,
        lower,
        upper: Some(serre_bound(d, m, q)?),
    })
}

/// `e_r(q, m) - (H_r(q-1, m) + p_(m-1))` for `q >= 3`, `1 < r <= m`.
pub fn dq_excess(r: u64, m: u32, q: u64) -> Result<BigUint> {
    if q < 3 || r < 2 || r > m as u64 {
        return domain("excess is defined for q >= 3 and 1 < r <= m");
    }
    let exact = e_value(r, q as u32, m, q)?
        .value
        .expect("d = q, r <= m is an exact regime");
    let conj = h(r, q as u32 - 1, m, q)? + pk(m as i64 - 1, q);
    let diff = BigInt::from(exact) - BigInt::from(conj);
    diff.to_biguint()
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::Domain(format!("excess is not positive: {diff}")))
}

/// `(q-2)(q^(m-1) - q^(m-r)) / (q-1)`.
pub fn dq_excess_closed_form(r: u64, m: u32, q: u64) -> Result<BigUint> {
    if q < 3 || r < 2 || r > m as u64 {
        return domain("excess is defined for q >= 3 and 1 < r <= m");
    }
    let m = m as i64;
    Ok(big(q - 2) * (floor_pow(q, m - 1) - floor_pow(q, m - r as i64)) / big(q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn serre_examples() {
        assert_eq!(serre_bound(2, 2, 3).unwrap(), b(7));
        assert_eq!(serre_bound(1, 3, 4).unwrap(), pk(2, 4));
        assert_eq!(serre_bound(3, 2, 3).unwrap(), b(10));
    }

    #[test]
    fn homma_kim_examples() {
        assert_eq!(homma_kim_bound(3, 2, 4).unwrap(), b(11));
        assert_eq!(homma_kim_bound(1, 3, 5).unwrap(), b(5 + 1));
        assert_eq!(homma_kim_bound(2, 2, 3).unwrap(), b(5));
        assert!(homma_kim_bound(2, 1, 3).is_err());
    }

    #[test]
    fn lachaud_rolland_examples() {
        assert_eq!(lachaud_rolland_bound(&[2, 2], 0, 3).unwrap(), b(4));
        assert_eq!(lachaud_rolland_bound(&[4], 2, 5).unwrap(), b(100));
        assert_eq!(lachaud_rolland_bound(&[1, 1, 1], 2, 5).unwrap(), b(25));
    }

    #[test]
    fn refined_affine_examples() {
        assert_eq!(refined_affine_bounds(3, 4, 2, false).unwrap(), b(6));
        assert_eq!(refined_affine_bounds(3, 4, 2, true).unwrap(), b(4));
        assert_eq!(refined_affine_bounds(2, 7, 4, true).unwrap(), b(49));
    }

    #[test]
    fn affine_examples() {
        assert_eq!(e_affine(1, 3, 3, 5).unwrap(), b(75));
        assert_eq!(e_affine(2, 2, 2, 3).unwrap(), b(4));
        assert_eq!(e_affine(10, 3, 2, 5).unwrap(), b(0));
        assert!(e_affine(1, 3, 2, 3).is_err());
    }

    #[test]
    fn zanella_examples() {
        for r in 1..=3 {
            assert_eq!(zanella_e(r, 2, 5).unwrap(), floor_pow(5, 2 - r as i64) + pk(1, 5));
        }
        assert_eq!(zanella_e(4, 2, 3).unwrap(), b(2));
        assert_eq!(zanella_e(6, 2, 3).unwrap(), b(0));
        assert!(zanella_e(7, 2, 3).is_err());
    }

    #[test]
    fn tbc_examples() {
        assert_eq!(tbc_value(1, 3, 3, 5).unwrap(), serre_bound(3, 3, 5).unwrap());
        assert_eq!(tbc_value(5, 3, 2, 4).unwrap(), b(6));
        // (d-1) q^(m-1) + floor(q^(m-r)) + p_(m-2), d = 3, m = 3, q = 7, r = 2
        assert_eq!(tbc_value(2, 3, 3, 7).unwrap(), b(2 * 49 + 7 + 8));
        // last rank: the tuple is (0, .., 0, d) and the value collapses to 0
        assert_eq!(tbc_value(10, 3, 2, 5).unwrap(), b(0));
    }

    #[test]
    fn dispatcher_examples() {
        let v = e_value(2, 3, 2, 4).unwrap();
        assert_eq!((v.value, v.status, v.theorem), (Some(b(10)), Status::Exact, MAIN));
        let v = e_value(1, 3, 2, 3).unwrap();
        assert_eq!((v.value, v.status, v.theorem), (Some(b(10)), Status::Exact, DQ_SMALL_R));
        let v = e_value(8, 4, 2, 5).unwrap();
        assert_eq!((v.value, v.status, v.theorem), (Some(b(8)), Status::Conjectural, CONJECTURE));
        let v = e_value(2, 3, 1, 4).unwrap();
        assert_eq!((v.value, v.status, v.theorem), (Some(b(2)), Status::Exact, INITIAL));
        assert!(e_value(1, 4, 2, 3).is_err());
        assert!(e_value(7, 2, 2, 3).is_err());
        assert!(e_value(1, 2, 2, 6).is_err());
    }

    #[test]
    fn unknown_regime_carries_a_bracket() {
        // d = q = 3, m = 2, r = 4 > m + 1
        let v = e_value(4, 3, 2, 3).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.value, None);
        assert_eq!(v.lower, Some(h(4, 2, 2, 3).unwrap() + pk(1, 3)));
        assert_eq!(v.upper, Some(b(10)));
        assert!(v.lower <= v.upper);
    }

    #[test]
    fn boguslavsky_examples() {
        assert_eq!(boguslavsky_e2(3, 2, 5).unwrap(), b(12));
        assert_eq!(boguslavsky_e2(2, 2, 5).unwrap(), b(7));
        assert_eq!(boguslavsky_e2(2, 2, 5).unwrap(), zanella_e(2, 2, 5).unwrap());
        assert!(boguslavsky_e2(3, 2, 4).is_err());
    }

    #[test]
    fn dq_excess_examples() {
        assert_eq!(dq_excess(2, 2, 3).unwrap(), b(1));
        assert_eq!(dq_excess_closed_form(2, 2, 3).unwrap(), b(1));
        assert_eq!(dq_excess(2, 3, 4).unwrap(), b(8));
        assert_eq!(dq_excess_closed_form(2, 3, 4).unwrap(), b(8));
        assert!(dq_excess(1, 3, 4).is_err());
    }

    #[test]
    fn json_shape() {
        let v = e_value(2, 3, 2, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"value":10,"status":"exact","theorem":"thm:main"}"#
        );
        let u = e_value(4, 3, 2, 3).unwrap();
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"value":null,"status":"unknown","theorem":"open","lower":6,"upper":10}"#
        );
    }
}
