//! Polynomial families attaining the maxima. Every constructor recounts the
//! common zeros of what it built and refuses to return an uncertified family.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::bounds::{e_value, BoundValue, AFFINE};
use crate::combinat::{binom_u64, floor_pow, h, pk, sigma_size, unrank_sigma};
use crate::error::{domain, Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::rref;
use crate::poly::{count_affine_zeros, count_projective_zeros, MonomialBasis, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Products of affine linear factors, one per exponent tuple.
    HeijnenPellikaan,
    /// `X_0` times the homogenized product family.
    Hyperplane,
    /// `X_i^q - X_0^(q-1) X_i`.
    FieldEquations,
    /// Coordinate hyperplanes.
    Linear,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::HeijnenPellikaan => "hp",
            FamilyKind::Hyperplane => "conj",
            FamilyKind::FieldEquations => "dq",
            FamilyKind::Linear => "linear",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertifiedFamily {
    pub kind: FamilyKind,
    pub polys: Vec<Polynomial>,
    pub claimed_count: u64,
    pub certified: bool,
    pub target: BoundValue,
}

impl CertifiedFamily {
    pub fn is_projective(&self) -> bool {
        self.polys.first().is_some_and(Polynomial::is_homogeneous)
    }

    /// Recounts common zeros from scratch.
    pub fn recount(&self) -> Result<u64> {
        if self.is_projective() {
            count_projective_zeros(&self.polys)
        } else {
            count_affine_zeros(&self.polys)
        }
    }
}

fn to_u64(v: &BigUint) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Domain(format!("{v} points is too many to enumerate")))
}

fn certify(kind: FamilyKind, polys: Vec<Polynomial>, claimed: BigUint, target: BoundValue) -> Result<CertifiedFamily> {
    let first = &polys[0];
    let basis = if first.is_homogeneous() {
        MonomialBasis::homogeneous(first.nvars(), first.degree())?
    } else {
        MonomialBasis::affine(first.nvars(), first.degree())?
    };
    let rows = polys
        .iter()
        .map(|f| f.coefficients(&basis))
        .collect::<Result<Vec<_>>>()?;
    let rank = rref(first.field(), basis.len(), &rows)?.rank();
    if rank != polys.len() {
        return Err(Error::Certification(format!(
            "{} family of {} polynomials has rank {rank}",
            kind.name(),
            polys.len()
        )));
    }
    let claimed_count = to_u64(&claimed)?;
    let mut family = CertifiedFamily {
        kind,
        polys,
        claimed_count,
        certified: false,
        target,
    };
    let counted = family.recount()?;
    if counted != claimed_count {
        return Err(Error::Certification(format!(
            "{} family counts {counted} common zeros, expected {claimed_count}",
            kind.name()
        )));
    }
    family.certified = true;
    Ok(family)
}

/// `prod_i prod_{j < gamma_i} (x_i - a_j)` over the first `r` tuples of
/// `Sigma(d, m)`, with `a_0, a_1, ..` the field elements in index order.
fn product_polys(r: u64, d: u32, m: u32, field: &Arc<Field>) -> Result<Vec<Polynomial>> {
    let nvars = m as usize;
    (1..=r)
        .map(|k| {
            let gamma = unrank_sigma(d, m, k)?;
            let mut g = Polynomial::constant(field.clone(), nvars, Elem::ONE);
            for (i, &gi) in gamma.iter().enumerate() {
                for a in field.elements().take(gi as usize) {
                    let mut e = vec![0; nvars];
                    e[i] = 1;
                    let factor = Polynomial::from_terms(
                        field.clone(),
                        nvars,
                        1,
                        false,
                        [(e, Elem::ONE), (vec![0; nvars], field.neg(a))],
                    )?;
                    g = g.mul(&factor)?;
                }
            }
            g.with_degree_bound(d)
        })
        .collect()
}

/// Affine family in `m` variables with exactly `H_r(d, m)` common zeros.
pub fn hp_affine_family(r: u64, d: u32, m: u32, field: &Arc<Field>) -> Result<CertifiedFamily> {
    let q = field.q() as u64;
    let value = h(r, d, m, q)?;
    let polys = product_polys(r, d, m, field)?;
    certify(
        FamilyKind::HeijnenPellikaan,
        polys,
        value.clone(),
        BoundValue::exact(value, AFFINE),
    )
}

/// Degree-`d` forms `X_0 * homogenization` of the affine family for
/// `d - 1`; they share the hyperplane `X_0 = 0` and have
/// `H_r(d-1, m) + p_(m-1)` common zeros.
pub fn conjecture_family(r: u64, d: u32, m: u32, field: &Arc<Field>) -> Result<CertifiedFamily> {
    let q = field.q() as u64;
    if d < 2 || d as u64 > q {
        return domain(format!("hyperplane family needs 1 < d <= q (d = {d}, q = {q})"));
    }
    let limit = binom_u64(m as u64 + d as u64 - 1, d as u64 - 1).unwrap_or(u64::MAX);
    if r == 0 || r > limit {
        return domain(format!("hyperplane family needs 1 <= r <= {limit}"));
    }
    let affine = product_polys(r, d - 1, m, field)?;
    let x0 = Polynomial::var(field.clone(), m as usize + 1, 0);
    let polys = affine
        .iter()
        .map(|f| x0.mul(&f.homogenize(d - 1)?))
        .collect::<Result<Vec<_>>>()?;
    let claimed = h(r, d - 1, m, q)? + pk(m as i64 - 1, q);
    certify(FamilyKind::Hyperplane, polys, claimed, e_value(r, d, m, q)?)
}

/// `X_i^q - X_0^(q-1) X_i` for `1 <= i <= r`, with `q^m + p_(m-r-1)`
/// common zeros.
pub fn dq_family(r: u64, m: u32, field: &Arc<Field>) -> Result<CertifiedFamily> {
    if m == 0 || r == 0 || r > m as u64 {
        return domain(format!("field-equation family needs 1 <= r <= m (r = {r}, m = {m})"));
    }
    let q = field.q();
    let nvars = m as usize + 1;
    let minus_one = field.neg(Elem::ONE);
    let polys = (1..=r as usize)
        .map(|i| {
            let mut pure = vec![0; nvars];
            pure[i] = q;
            let mut mixed = vec![0; nvars];
            mixed[0] = q - 1;
            mixed[i] = 1;
            Polynomial::from_terms(field.clone(), nvars, q, true, [(pure, Elem::ONE), (mixed, minus_one)])
        })
        .collect::<Result<Vec<_>>>()?;
    let q64 = q as u64;
    let claimed = floor_pow(q64, m as i64) + pk(m as i64 - r as i64 - 1, q64);
    certify(FamilyKind::FieldEquations, polys, claimed, e_value(r, q, m, q64)?)
}

/// `X_0, .., X_(r-1)`, meeting in a `P^(m-r)`.
pub fn linear_family(r: u64, m: u32, field: &Arc<Field>) -> Result<CertifiedFamily> {
    if m == 0 || r == 0 || r > m as u64 + 1 {
        return domain(format!("linear family needs 1 <= r <= m + 1 (r = {r}, m = {m})"));
    }
    let nvars = m as usize + 1;
    let polys = (0..r as usize)
        .map(|i| Polynomial::var(field.clone(), nvars, i))
        .collect();
    let q = field.q() as u64;
    let claimed = pk(m as i64 - r as i64, q);
    certify(FamilyKind::Linear, polys, claimed, e_value(r, 1, m, q)?)
}

/// Number of ranks for which [`hp_affine_family`] is defined.
pub fn hp_rank_limit(d: u32, m: u32) -> Result<u64> {
    sigma_size(d, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Status;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(Field::of_size(q).unwrap())
    }

    #[test]
    fn hp_examples() {
        let f3 = field(3);
        let fam = hp_affine_family(1, 2, 2, &f3).unwrap();
        assert_eq!(fam.claimed_count, 6);
        assert!(fam.certified);
        assert_eq!(fam.polys[0].to_string(), "X0^2 + 2*X0");
        let fam = hp_affine_family(2, 2, 2, &f3).unwrap();
        assert_eq!(fam.claimed_count, 4);
        let last = hp_affine_family(6, 2, 2, &f3).unwrap();
        assert_eq!(last.claimed_count, 0);
        assert_eq!(last.polys[5].to_string(), "1");
        assert!(hp_affine_family(1, 3, 2, &f3).is_err());
    }

    #[test]
    fn hyperplane_family_examples() {
        let fam = conjecture_family(1, 3, 2, &field(4)).unwrap();
        assert_eq!(fam.claimed_count, 13);
        assert_eq!(fam.recount().unwrap(), 13);
        let fam = conjecture_family(3, 3, 2, &field(3)).unwrap();
        assert_eq!(fam.claimed_count, 7);
        assert_eq!(fam.target.exact_u64(), Some(7));
        let fam = conjecture_family(2, 2, 2, &field(3)).unwrap();
        assert_eq!(fam.claimed_count, 5);
        assert!(conjecture_family(1, 1, 2, &field(3)).is_err());
        assert!(conjecture_family(7, 3, 2, &field(3)).is_err());
    }

    #[test]
    fn field_equation_family_examples() {
        let f3 = field(3);
        assert_eq!(dq_family(1, 2, &f3).unwrap().claimed_count, 10);
        assert_eq!(dq_family(2, 2, &f3).unwrap().claimed_count, 9);
        let fam = dq_family(3, 3, &field(4)).unwrap();
        assert_eq!(fam.claimed_count, 64);
        assert_eq!(fam.target.status, Status::Exact);
        assert!(dq_family(3, 2, &f3).is_err());
    }

    #[test]
    fn linear_family_examples() {
        let f5 = field(5);
        assert_eq!(linear_family(1, 3, &f5).unwrap().claimed_count, 31);
        assert_eq!(linear_family(4, 3, &f5).unwrap().claimed_count, 0);
        assert_eq!(linear_family(2, 2, &field(3)).unwrap().claimed_count, 1);
        assert!(linear_family(4, 2, &f5).is_err());
    }
}
