//! Multivariate polynomials over `F_q`, point enumeration and zero counting.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::combinat::{rank_exact, rank_sigma, sigma_size, unrank_exact, unrank_sigma};
use crate::error::{domain, Error, Result};
use crate::gf::{Elem, Field};

pub type Exponents = Vec<u32>;

/// The monomials of one graded piece, in descending lexicographic order.
///
/// Homogeneous bases hold the degree-`d` monomials in `nvars` variables,
/// affine bases hold every monomial of degree at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    homogeneous: bool,
    monomials: Vec<Exponents>,
}

impl MonomialBasis {
    pub fn homogeneous(nvars: usize, degree: u32) -> Result<MonomialBasis> {
        if nvars == 0 {
            return domain("a homogeneous basis needs at least one variable");
        }
        let size = crate::combinat::binom_u64(nvars as u64 - 1 + degree as u64, degree as u64)
            .ok_or_else(|| Error::Domain("monomial basis too large".into()))?;
        let monomials = (1..=size)
            .map(|r| unrank_exact(degree, nvars as u32, r))
            .collect::<Result<_>>()?;
        Ok(MonomialBasis {
            nvars,
            degree,
            homogeneous: true,
            monomials,
        })
    }

    pub fn affine(nvars: usize, degree: u32) -> Result<MonomialBasis> {
        let size = sigma_size(degree, nvars as u32)?;
        let monomials = (1..=size)
            .map(|r| unrank_sigma(degree, nvars as u32, r))
            .collect::<Result<_>>()?;
        Ok(MonomialBasis {
            nvars,
            degree,
            homogeneous: false,
            monomials,
        })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn monomial(&self, index: usize) -> Option<&Exponents> {
        self.monomials.get(index)
    }

    pub fn index_of(&self, exps: &[u32]) -> Result<usize> {
        monomial_index(exps, self.degree, self.homogeneous)
            .and_then(|i| if exps.len() == self.nvars { Ok(i) } else { domain("wrong arity") })
    }

    /// The polynomial with the given coefficient vector.
    pub fn polynomial(&self, field: &Arc<Field>, coeffs: &[Elem]) -> Result<Polynomial> {
        if coeffs.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                self.len()
            )));
        }
        let mut f = Polynomial::zero(field.clone(), self.nvars, self.degree, self.homogeneous);
        for (mono, &c) in self.monomials.iter().zip(coeffs) {
            f.add_term(mono.clone(), c)?;
        }
        Ok(f)
    }
}

/// Position of a monomial in descending lexicographic order among the
/// degree-`d` monomials (homogeneous) or degree-`<= d` monomials (affine).
pub fn monomial_index(exps: &[u32], d: u32, homogeneous: bool) -> Result<usize> {
    let sum: u64 = exps.iter().map(|&e| e as u64).sum();
    if homogeneous {
        if sum != d as u64 {
            return domain(format!("{exps:?} does not have degree {d}"));
        }
        Ok(rank_exact(exps)? as usize - 1)
    } else {
        Ok(rank_sigma(exps, d)? as usize - 1)
    }
}

/// Inverse of [`monomial_index`].
pub fn monomial_from_index(index: usize, d: u32, nvars: usize, homogeneous: bool) -> Result<Exponents> {
    if homogeneous {
        unrank_exact(d, nvars as u32, index as u64 + 1)
    } else {
        unrank_sigma(d, nvars as u32, index as u64 + 1)
    }
}

/// A polynomial with a degree bound. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Arc<Field>,
    nvars: usize,
    degree: u32,
    homogeneous: bool,
    terms: BTreeMap<Exponents, Elem>,
}

impl Polynomial {
    pub fn zero(field: Arc<Field>, nvars: usize, degree: u32, homogeneous: bool) -> Polynomial {
        Polynomial {
            field,
            nvars,
            degree,
            homogeneous,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: Arc<Field>, nvars: usize, degree: u32, homogeneous: bool, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (Exponents, Elem)>,
    {
        let mut f = Polynomial::zero(field, nvars, degree, homogeneous);
        for (e, c) in terms {
            f.add_term(e, c)?;
        }
        Ok(f)
    }

    /// The constant `c` as an affine polynomial of degree bound 0.
    pub fn constant(field: Arc<Field>, nvars: usize, c: Elem) -> Polynomial {
        let mut f = Polynomial::zero(field, nvars, 0, false);
        if !c.is_zero() {
            f.terms.insert(vec![0; nvars], c);
        }
        f
    }

    /// The variable `X_i`, homogeneous of degree one.
    pub fn var(field: Arc<Field>, nvars: usize, i: usize) -> Polynomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut f = Polynomial::zero(field, nvars, 1, true);
        f.terms.insert(e, Elem::ONE);
        f
    }

    /// The linear form `sum c_i X_i`.
    pub fn linear_form(field: Arc<Field>, coeffs: &[Elem]) -> Polynomial {
        let n = coeffs.len();
        let mut f = Polynomial::zero(field, n, 1, true);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                f.terms.insert(e, c);
            }
        }
        f
    }

    pub fn add_term(&mut self, exps: Exponents, c: Elem) -> Result<()> {
        if exps.len() != self.nvars {
            return Err(Error::Shape(format!(
                "monomial {exps:?} in a polynomial with {} variables",
                self.nvars
            )));
        }
        if c.index() >= self.field.q() as usize {
            return Err(Error::ElementOutOfRange {
                index: c.index() as u64,
                q: self.field.q(),
            });
        }
        let deg: u64 = exps.iter().map(|&e| e as u64).sum();
        if self.homogeneous && deg != self.degree as u64 {
            return domain(format!("monomial {exps:?} in a homogeneous polynomial of degree {}", self.degree));
        }
        if deg > self.degree as u64 {
            return domain(format!("monomial {exps:?} exceeds degree bound {}", self.degree));
        }
        let field = self.field.clone();
        let entry = self.terms.entry(exps).or_insert(Elem::ZERO);
        *entry = field.add(*entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degree bound (exact degree for nonzero homogeneous polynomials).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree among stored terms, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Terms in descending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Elem)> {
        self.terms.iter().rev().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Elem {
        self.terms.get(exps).copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficient vector in the given monomial basis.
    pub fn coefficients(&self, basis: &MonomialBasis) -> Result<Vec<Elem>> {
        if basis.nvars() != self.nvars {
            return Err(Error::Shape("basis arity differs from polynomial arity".into()));
        }
        let mut out = vec![Elem::ZERO; basis.len()];
        for (e, &c) in &self.terms {
            let i = basis.index_of(e)?;
            out[i] = c;
        }
        Ok(out)
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return domain("polynomials over different fields");
        }
        if self.nvars != other.nvars {
            return Err(Error::Shape(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn with_terms(&self, degree: u32, homogeneous: bool, terms: BTreeMap<Exponents, Elem>) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            degree,
            homogeneous,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let homogeneous = self.homogeneous && other.homogeneous && self.degree == other.degree;
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert(Elem::ZERO);
            *slot = self.field.add(*slot, c);
        }
        Ok(self.with_terms(self.degree.max(other.degree), homogeneous, terms))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(self.field.neg(Elem::ONE)))
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(e, &x)| (e.clone(), self.field.mul(x, c)))
            .collect();
        self.with_terms(self.degree, self.homogeneous, terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut terms: BTreeMap<Exponents, Elem> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = terms.entry(e).or_insert(Elem::ZERO);
                *slot = self.field.add(*slot, self.field.mul(ca, cb));
            }
        }
        Ok(self.with_terms(
            self.degree + other.degree,
            self.homogeneous && other.homogeneous,
            terms,
        ))
    }

    /// Same polynomial with a different degree bound.
    pub fn with_degree_bound(&self, degree: u32) -> Result<Polynomial> {
        if self.homogeneous && degree != self.degree && !self.is_zero() {
            return domain("cannot change the degree of a homogeneous polynomial");
        }
        if self.total_degree().is_some_and(|d| d > degree) {
            return domain(format!("polynomial has degree above {degree}"));
        }
        Ok(Polynomial {
            degree,
            ..self.clone()
        })
    }

    /// Value at a point; `0^0 = 1`.
    pub fn eval(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.nvars {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let q = self.field.q() as usize;
        if let Some(bad) = point.iter().find(|x| x.index() >= q) {
            return Err(Error::ElementOutOfRange {
                index: bad.index() as u64,
                q: self.field.q(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        self.terms.iter().fold(Elem::ZERO, |acc, (e, &c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(c, |v, (&k, &x)| f.mul(v, f.pow(x, k as u64)));
            f.add(acc, mono)
        })
    }

    /// Homogenizes to degree `target` with a new leading variable `X_0`;
    /// old variable `x_i` becomes `X_i`.
    pub fn homogenize(&self, target: u32) -> Result<Polynomial> {
        if let Some(deg) = self.total_degree() {
            if deg > target {
                return domain(format!("cannot homogenize degree {deg} to degree {target}"));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let deg: u32 = e.iter().sum();
                let mut lifted = Vec::with_capacity(e.len() + 1);
                lifted.push(target - deg);
                lifted.extend_from_slice(e);
                (lifted, c)
            })
            .collect();
        Ok(Polynomial {
            field: self.field.clone(),
            nvars: self.nvars + 1,
            degree: target,
            homogeneous: true,
            terms,
        })
    }

    /// Sets variable `var` to one and drops it.
    pub fn dehomogenize(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::Shape(format!("no variable {var}")));
        }
        let mut f = Polynomial::zero(self.field.clone(), self.nvars - 1, self.degree, false);
        for (e, &c) in &self.terms {
            let mut lowered = e.clone();
            lowered.remove(var);
            f.add_term(lowered, c)?;
        }
        Ok(f)
    }

    /// Values at each of the given points.
    pub fn value_vector(&self, points: &[Vec<Elem>]) -> Vec<Elem> {
        points.iter().map(|p| self.eval_unchecked(p)).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("X{i}") } else { format!("X{i}^{x}") })
                .collect();
            match (c.index(), vars.is_empty()) {
                (_, true) => write!(f, "{}", c.index())?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (i, false) => write!(f, "{i}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Canonical representatives of `P^m(F_q)`: leftmost nonzero coordinate is
/// one. Points are ordered by the position of that leading one, then
/// lexicographically by the indices of the trailing coordinates.
pub struct ProjectivePoints {
    q: u32,
    len: usize,
    lead: usize,
    tail: Vec<u32>,
    done: bool,
}

impl Iterator for ProjectivePoints {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let mut point = vec![Elem::ZERO; self.len];
        point[self.lead] = Elem::ONE;
        for (k, &t) in self.tail.iter().enumerate() {
            point[self.lead + 1 + k] = Elem::raw(t);
        }
        // advance the odometer on the trailing coordinates
        let mut carried = true;
        for digit in self.tail.iter_mut().rev() {
            *digit += 1;
            if *digit < self.q {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if carried {
            self.lead += 1;
            if self.lead == self.len {
                self.done = true;
            } else {
                self.tail = vec![0; self.len - self.lead - 1];
            }
        }
        Some(point)
    }
}

pub fn projective_points(m: usize, field: &Field) -> ProjectivePoints {
    ProjectivePoints {
        q: field.q(),
        len: m + 1,
        lead: 0,
        tail: vec![0; m],
        done: false,
    }
}

/// All of `F_q^m` in lexicographic order of coordinate indices.
pub fn affine_points(m: usize, field: &Field) -> Vec<Vec<Elem>> {
    let q = field.q();
    let total = (q as usize).pow(m as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u32; m];
    for _ in 0..total {
        out.push(digits.iter().map(|&d| Elem::raw(d)).collect());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

fn check_family(polys: &[Polynomial]) -> Result<()> {
    let Some(first) = polys.first() else {
        return domain("empty polynomial list");
    };
    for f in &polys[1..] {
        first.same_ring(f)?;
    }
    Ok(())
}

/// `|V(F_1, .., F_r)|` over `P^m(F_q)`.
pub fn count_projective_zeros(polys: &[Polynomial]) -> Result<u64> {
    check_family(polys)?;
    if let Some(f) = polys.iter().find(|f| !f.is_homogeneous()) {
        return domain(format!("inhomogeneous polynomial {f}"));
    }
    if polys.iter().all(Polynomial::is_zero) {
        return domain("all polynomials are zero");
    }
    let first = &polys[0];
    let m = first.nvars() - 1;
    Ok(projective_points(m, first.field())
        .filter(|p| polys.iter().all(|f| f.eval_unchecked(p).is_zero()))
        .count() as u64)
}

/// `|Z(f_1, .., f_r)|` over `F_q^m`.
pub fn count_affine_zeros(polys: &[Polynomial]) -> Result<u64> {
    check_family(polys)?;
    let first = &polys[0];
    Ok(affine_points(first.nvars(), first.field())
        .iter()
        .filter(|p| polys.iter().all(|f| f.eval_unchecked(p).is_zero()))
        .count() as u64)
}

/// Decides `L | F` exactly by solving `L = 0` for one variable and
/// substituting into `F`.
pub fn linear_divisibility(poly: &Polynomial, linear: &Polynomial) -> Result<bool> {
    poly.same_ring(linear)?;
    if !poly.is_homogeneous() {
        return domain("dividend must be homogeneous");
    }
    if !linear.is_homogeneous() || linear.degree() != 1 || linear.is_zero() {
        return domain("divisor must be a nonzero linear form");
    }
    let field = poly.field().clone();
    let n = poly.nvars();
    let (pivot, lead) = linear
        .terms
        .iter()
        .map(|(e, &c)| (e.iter().position(|&x| x == 1).unwrap(), c))
        .min_by_key(|&(i, _)| i)
        .expect("nonzero linear form");
    // X_pivot = sum_{i != pivot} (-l_i / l_pivot) X_i
    let scale = field.neg(field.inv(lead)?);
    let mut solved = Polynomial::zero(field.clone(), n, 1, true);
    for (e, &c) in &linear.terms {
        let i = e.iter().position(|&x| x == 1).unwrap();
        if i != pivot {
            solved.add_term(e.clone(), field.mul(c, scale))?;
        }
    }
    let mut powers = vec![Polynomial::from_terms(field.clone(), n, 0, true, [(vec![0; n], Elem::ONE)])?];
    for k in 1..=poly.degree() as usize {
        let next = powers[k - 1].mul(&solved)?;
        powers.push(next);
    }
    let mut result = Polynomial::zero(field.clone(), n, poly.degree(), true);
    for (e, &c) in &poly.terms {
        let mut rest = e.clone();
        let k = rest[pivot] as usize;
        rest[pivot] = 0;
        let partial_degree: u32 = rest.iter().sum();
        let mono = Polynomial::from_terms(field.clone(), n, partial_degree, true, [(rest, c)])?;
        result = result.add(&mono.mul(&powers[k])?)?;
    }
    Ok(result.is_zero())
}

/// First normalized linear form (in projective point order of its
/// coefficient vector) dividing every polynomial, if one exists.
pub fn has_common_linear_factor(polys: &[Polynomial]) -> Result<Option<Polynomial>> {
    check_family(polys)?;
    if let Some(f) = polys.iter().find(|f| !f.is_homogeneous()) {
        return domain(format!("inhomogeneous polynomial {f}"));
    }
    let field = polys[0].field().clone();
    let m = polys[0].nvars() - 1;
    let points: Vec<Vec<Elem>> = projective_points(m, &field).collect();
    let values: Vec<Vec<Elem>> = polys.iter().map(|f| f.value_vector(&points)).collect();
    for coeffs in projective_points(m, &field) {
        // L | F forces F to vanish on every rational point of V(L); only
        // forms passing that test go through the symbolic check.
        let vanish_on_hyperplane = points.iter().enumerate().all(|(k, pt)| {
            let on = coeffs
                .iter()
                .zip(pt)
                .fold(Elem::ZERO, |acc, (&a, &x)| field.add(acc, field.mul(a, x)))
                .is_zero();
            !on || values.iter().all(|v| v[k].is_zero())
        });
        if !vanish_on_hyperplane {
            continue;
        }
        let form = Polynomial::linear_form(field.clone(), &coeffs);
        let mut divides_all = true;
        for f in polys {
            if !linear_divisibility(f, &form)? {
                divides_all = false;
                break;
            }
        }
        if divides_all {
            return Ok(Some(form));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(Field::of_size(q).unwrap())
    }

    fn hom(f: &Arc<Field>, nvars: usize, d: u32, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            f.clone(),
            nvars,
            d,
            true,
            terms.iter().map(|(e, c)| (e.to_vec(), f.from_int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn monomial_indexing() {
        assert_eq!(monomial_index(&[2, 0, 0], 2, true).unwrap(), 0);
        assert_eq!(monomial_index(&[0, 0, 2], 2, true).unwrap(), 5);
        assert_eq!(monomial_from_index(0, 2, 3, true).unwrap(), vec![2, 0, 0]);
        assert!(monomial_index(&[1, 0, 0], 2, true).is_err());
        let b = MonomialBasis::homogeneous(3, 2).unwrap();
        for (i, mono) in b.monomials().iter().enumerate() {
            assert_eq!(b.index_of(mono).unwrap(), i);
        }
    }

    #[test]
    fn evaluation() {
        let f3 = field(3);
        let x0 = hom(&f3, 3, 1, &[(&[1, 0, 0], 1)]);
        let pt = [Elem::ZERO, Elem::ONE, Elem::ONE];
        assert_eq!(x0.eval(&pt).unwrap(), Elem::ZERO);
        let g = hom(&f3, 3, 3, &[(&[0, 3, 0], 1), (&[2, 1, 0], -1)]);
        assert_eq!(g.eval(&[Elem::ONE, f3.from_int(2), Elem::ZERO]).unwrap(), Elem::ZERO);
        let c = Polynomial::constant(f3.clone(), 3, f3.from_int(2));
        assert_eq!(c.eval(&[Elem::ZERO; 3]).unwrap(), f3.from_int(2));
        assert!(c.eval(&[Elem::ZERO; 2]).is_err());
    }

    #[test]
    fn point_enumeration() {
        let f2 = field(2);
        let pts: Vec<Vec<usize>> = projective_points(1, &f2)
            .map(|p| p.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(projective_points(2, &field(3)).count(), 13);
        assert_eq!(projective_points(0, &field(5)).count(), 1);
    }

    #[test]
    fn projective_counts() {
        let f3 = field(3);
        let x0 = hom(&f3, 3, 1, &[(&[1, 0, 0], 1)]);
        assert_eq!(count_projective_zeros(std::slice::from_ref(&x0)).unwrap(), 4);
        let g = hom(&f3, 3, 3, &[(&[0, 3, 0], 1), (&[2, 1, 0], -1)]);
        assert_eq!(count_projective_zeros(&[g]).unwrap(), 10);
        let vars: Vec<_> = (0..3).map(|i| Polynomial::var(f3.clone(), 3, i)).collect();
        assert_eq!(count_projective_zeros(&vars).unwrap(), 0);
        assert!(count_projective_zeros(&[]).is_err());
        let affine = Polynomial::constant(f3.clone(), 3, Elem::ONE);
        assert!(count_projective_zeros(&[affine]).is_err());
    }

    #[test]
    fn affine_counts() {
        let f3 = field(3);
        let x1 = Polynomial::from_terms(f3.clone(), 2, 1, false, [(vec![1, 0], Elem::ONE)]).unwrap();
        let lin = |a: Elem| x1.sub(&Polynomial::constant(f3.clone(), 2, a)).unwrap();
        let quad = lin(f3.from_int(0)).mul(&lin(f3.from_int(1))).unwrap();
        assert_eq!(count_affine_zeros(&[quad]).unwrap(), 6);
        let cube = x1.mul(&x1).unwrap().mul(&x1).unwrap();
        assert_eq!(count_affine_zeros(&[cube.sub(&x1).unwrap()]).unwrap(), 9);
        let one = Polynomial::constant(f3.clone(), 2, Elem::ONE);
        assert_eq!(count_affine_zeros(&[one]).unwrap(), 0);
        assert!(count_affine_zeros(&[]).is_err());
    }

    #[test]
    fn homogenize_roundtrip() {
        let f3 = field(3);
        let f = Polynomial::from_terms(
            f3.clone(),
            1,
            1,
            false,
            [(vec![1], Elem::ONE), (vec![0], Elem::ONE)],
        )
        .unwrap();
        let h = f.homogenize(2).unwrap();
        let expected = hom(&f3, 2, 2, &[(&[1, 1], 1), (&[2, 0], 1)]);
        assert_eq!(h, expected);
        let back = h.dehomogenize(0).unwrap();
        assert_eq!(back.terms().collect::<Vec<_>>(), f.terms().collect::<Vec<_>>());
        assert!(f.homogenize(0).is_err());

        let g = hom(&f3, 3, 2, &[(&[0, 2, 0], 1), (&[1, 0, 1], 1)]);
        let dg = g.dehomogenize(0).unwrap();
        let terms: Vec<_> = dg.terms().map(|(e, c)| (e.clone(), c.index())).collect();
        assert_eq!(terms, vec![(vec![2, 0], 1), (vec![0, 1], 1)]);
    }

    #[test]
    fn divisibility() {
        let f3 = field(3);
        let x0x1 = hom(&f3, 3, 2, &[(&[1, 1, 0], 1)]);
        let x0 = Polynomial::var(f3.clone(), 3, 0);
        assert!(linear_divisibility(&x0x1, &x0).unwrap());
        let diff_sq = hom(&f3, 3, 2, &[(&[0, 2, 0], 1), (&[0, 0, 2], -1)]);
        let l = hom(&f3, 3, 1, &[(&[0, 1, 0], 1), (&[0, 0, 1], -1)]);
        assert!(linear_divisibility(&diff_sq, &l).unwrap());
        let dq = hom(&f3, 3, 3, &[(&[0, 3, 0], 1), (&[2, 1, 0], -1)]);
        assert!(!linear_divisibility(&dq, &x0).unwrap());
        let zero_form = Polynomial::zero(f3.clone(), 3, 1, true);
        assert!(linear_divisibility(&dq, &zero_form).is_err());
        assert!(linear_divisibility(&dq, &x0x1).is_err());
    }

    #[test]
    fn common_linear_factor() {
        let f3 = field(3);
        let a = hom(&f3, 3, 2, &[(&[1, 1, 0], 1)]);
        let b = hom(&f3, 3, 2, &[(&[1, 0, 1], 1)]);
        let x0 = Polynomial::var(f3.clone(), 3, 0);
        assert_eq!(has_common_linear_factor(&[a, b]).unwrap(), Some(x0.clone()));
        let s1 = hom(&f3, 3, 2, &[(&[0, 2, 0], 1)]);
        let s2 = hom(&f3, 3, 2, &[(&[0, 0, 2], 1)]);
        assert_eq!(has_common_linear_factor(&[s1, s2]).unwrap(), None);
        let sq = hom(&f3, 3, 2, &[(&[2, 0, 0], 1)]);
        assert_eq!(has_common_linear_factor(&[sq]).unwrap(), Some(x0));
    }
}
