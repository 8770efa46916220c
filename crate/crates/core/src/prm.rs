//! Projective Reed–Muller codes: evaluation of all degree-`d` forms at the
//! rational points of `P^m`, and their generalized Hamming weights, both
//! from the closed forms (`d_r = p_m - e_r(d, m)`) and by brute force.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{e_value, BoundValue};
use crate::combinat::{gauss_binom, pk};
use crate::error::{domain, Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{enumerate_subspaces, pattern_count, rref, support_weight};
use crate::poly::{projective_points, MonomialBasis};
use crate::verify::thread_pool;

/// The code `PRM_q(d, m)` with its generator matrix: one row per degree-`d`
/// monomial (descending lex), one column per rational point (in
/// enumeration order).
#[derive(Clone, Debug)]
pub struct PrmCode {
    field: Arc<Field>,
    d: u32,
    m: u32,
    generator: Vec<Vec<Elem>>,
}

impl PrmCode {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn length(&self) -> usize {
        self.generator.first().map_or(0, Vec::len)
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    /// Image of a message (coefficient vector) under the generator matrix.
    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.length())
            .map(|j| {
                message
                    .iter()
                    .zip(&self.generator)
                    .fold(Elem::ZERO, |acc, (&c, row)| f.add(acc, f.mul(c, row[j])))
            })
            .collect()
    }

    /// Generator matrix as CSV of element indices, one row per line.
    pub fn generator_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|e| e.index().to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Builds `PRM_q(d, m)` for `1 <= d <= q`, checking that the evaluation
/// map is injective and that no coordinate is identically zero.
pub fn prm_code(d: u32, m: u32, field: &Arc<Field>) -> Result<PrmCode> {
    let q = field.q();
    if d == 0 || d > q || m == 0 {
        return domain(format!("projective Reed-Muller codes need 1 <= d <= q and m >= 1 (d = {d}, q = {q}, m = {m})"));
    }
    let basis = MonomialBasis::homogeneous(m as usize + 1, d)?;
    let points: Vec<Vec<Elem>> = projective_points(m as usize, field).collect();
    let generator: Vec<Vec<Elem>> = basis
        .monomials()
        .iter()
        .map(|mono| {
            points
                .iter()
                .map(|pt| {
                    pt.iter()
                        .zip(mono)
                        .fold(Elem::ONE, |acc, (&x, &e)| field.mul(acc, field.pow(x, e as u64)))
                })
                .collect()
        })
        .collect();
    let rank = rref(field, points.len(), &generator)?.rank();
    if rank != basis.len() {
        return Err(Error::Domain(format!(
            "evaluation map has rank {rank} < {} for d = {d}, q = {q}",
            basis.len()
        )));
    }
    if let Some(j) = (0..points.len()).find(|&j| generator.iter().all(|row| row[j].is_zero())) {
        return Err(Error::Domain(format!("coordinate {j} is identically zero")));
    }
    Ok(PrmCode {
        field: field.clone(),
        d,
        m,
        generator,
    })
}

/// `d_r(PRM_q(d, m)) = p_m - e_r(d, m)`, with the status and provenance of
/// the underlying value; an unknown value gives the flipped bracket.
pub fn ghw_formula(r: u64, d: u32, m: u32, q: u64) -> Result<BoundValue> {
    let e = e_value(r, d, m, q)?;
    let pm = pk(m as i64, q);
    let flip = |v: &BigUint| &pm - v;
    Ok(BoundValue {
        value: e.value.as_ref().map(flip),
        status: e.status,
        theorem: e.theorem,
        lower: e.upper.as_ref().map(flip),
        upper: e.lower.as_ref().map(flip),
    })
}

/// Smallest support of an `r`-dimensional subcode, by enumerating every
/// subcode. Shards over pivot patterns on `threads` workers.
pub fn ghw_bruteforce(r: u64, code: &PrmCode, budget: u64, threads: usize) -> Result<u64> {
    let k = code.dimension();
    let q = code.field.q() as u64;
    if r == 0 || r > k as u64 {
        return domain(format!("r must lie in 1..={k}, got {r}"));
    }
    let needed = gauss_binom(k as u64, r, q)?;
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    let patterns = pattern_count(k, r as usize).expect("budget bounds the pattern count") as usize;
    let n = code.length();
    let pool = thread_pool(threads)?;
    let minima: Vec<Result<Option<u64>>> = pool.install(|| {
        (0..patterns)
            .into_par_iter()
            .map(|p| {
                let mut best: Option<u64> = None;
                for messages in enumerate_subspaces(&code.field, k, r as usize, Some(p..p + 1))? {
                    let words: Vec<Vec<Elem>> = messages.rows().iter().map(|msg| code.encode(msg)).collect();
                    let weight = support_weight(&rref(&code.field, n, &words)?)? as u64;
                    best = Some(best.map_or(weight, |b| b.min(weight)));
                }
                Ok(best)
            })
            .collect()
    });
    let mut best: Option<u64> = None;
    for m in minima {
        if let Some(w) = m? {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    Ok(best.expect("at least one subcode exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Status;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(Field::of_size(q).unwrap())
    }

    #[test]
    fn code_parameters() {
        let code = prm_code(2, 2, &field(3)).unwrap();
        assert_eq!((code.length(), code.dimension()), (13, 6));
        let code = prm_code(1, 3, &field(4)).unwrap();
        assert_eq!((code.length(), code.dimension()), (85, 4));
        assert!(prm_code(4, 2, &field(3)).is_err());
        let csv = prm_code(1, 1, &field(2)).unwrap().generator_csv();
        // Points (1,0), (1,1), (0,1); rows X_0 and X_1.
        assert_eq!(csv, "1,1,0\n0,1,1\n");
    }

    #[test]
    fn formula_examples() {
        assert_eq!(ghw_formula(1, 2, 2, 3).unwrap().exact_u64(), Some(6));
        assert_eq!(ghw_formula(6, 2, 2, 3).unwrap().exact_u64(), Some(13));
        assert_eq!(ghw_formula(2, 3, 2, 3).unwrap().exact_u64(), Some(4));
        // e_7(3, 2) over F_3 is open with upper bracket 10 and no lower one,
        // so the weight is only bounded below by 13 - 10.
        let unknown = ghw_formula(7, 3, 2, 3).unwrap();
        assert_eq!(unknown.status, Status::Unknown);
        assert_eq!(unknown.lower, Some(BigUint::from(3u32)));
        assert_eq!(unknown.upper, None);
    }

    #[test]
    fn brute_force_examples() {
        let code = prm_code(2, 2, &field(3)).unwrap();
        assert_eq!(ghw_bruteforce(1, &code, 1_000_000, 1).unwrap(), 6);
        assert_eq!(ghw_bruteforce(2, &code, 1_000_000, 1).unwrap(), 8);
        assert_eq!(ghw_bruteforce(6, &code, 1_000_000, 1).unwrap(), 13);
        assert!(ghw_bruteforce(3, &code, 10, 1).is_err());
    }
}
