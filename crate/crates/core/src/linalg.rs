//! Linear algebra over `F_q`: reduced row-echelon forms, subspace
//! enumeration, the t-invariant of a space of forms and support weights.

use std::ops::Range;

use crate::combinat::binom_u64;
use crate::error::{domain, Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::{projective_points, MonomialBasis};

/// A subspace of `F_q^N` stored as its (unique) reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Row entries as element indices.
    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.index() as u32).collect())
            .collect()
    }
}

/// Canonical RREF of the row space of `rows`, each of length `ncols`.
pub fn rref(field: &Field, ncols: usize, rows: &[Vec<Elem>]) -> Result<SubspaceBasis> {
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(Error::Shape(format!("row of length {} in a {ncols}-column matrix", bad.len())));
    }
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, found);
        let inv = field.inv(m[top][col])?;
        for x in m[top].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != top && !m[i][col].is_zero() {
                let factor = m[i][col];
                for j in col..ncols {
                    let sub = field.mul(factor, m[top][j]);
                    m[i][j] = field.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    Ok(SubspaceBasis {
        ambient: ncols,
        rows: m,
        pivots,
    })
}

/// `dim(A ∩ B) = rank A + rank B - rank(A + B)`.
pub fn intersection_dim(field: &Field, a: &SubspaceBasis, b: &SubspaceBasis) -> Result<usize> {
    if a.ambient != b.ambient {
        return Err(Error::Shape(format!(
            "ambient dimensions {} and {}",
            a.ambient, b.ambient
        )));
    }
    let stacked: Vec<Vec<Elem>> = a.rows.iter().chain(&b.rows).cloned().collect();
    let sum = rref(field, a.ambient, &stacked)?;
    Ok(a.rank() + b.rank() - sum.rank())
}

/// Result of [`t_invariant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TInvariant {
    pub t: usize,
    /// Coefficients of the first linear form attaining `t` (none when `t = 0`).
    pub witness: Option<Vec<Elem>>,
}

/// Rows spanning `L · S_{d-1}` inside `S_d` (coordinates in the
/// descending-lex monomial basis of `S_d`).
pub fn linear_multiples(
    field: &Field,
    form: &[Elem],
    lower: &MonomialBasis,
    target: &MonomialBasis,
) -> Result<Vec<Vec<Elem>>> {
    lower
        .monomials()
        .iter()
        .map(|mono| {
            let mut row = vec![Elem::ZERO; target.len()];
            for (i, &c) in form.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = mono.clone();
                e[i] += 1;
                let k = target.index_of(&e)?;
                row[k] = field.add(row[k], c);
            }
            Ok(row)
        })
        .collect()
}

/// `t_W = max_L dim(W ∩ L · S_{d-1})` over nonzero linear forms `L` in
/// `m + 1` variables, scanning normalized forms in projective point order.
pub fn t_invariant(field: &Field, w: &SubspaceBasis, d: u32, m: usize) -> Result<TInvariant> {
    if w.rank() == 0 {
        return domain("t-invariant of the zero space");
    }
    if d == 0 {
        return domain("t-invariant needs degree at least 1");
    }
    let target = MonomialBasis::homogeneous(m + 1, d)?;
    if w.ambient != target.len() {
        return Err(Error::Shape(format!(
            "subspace of F_q^{} is not inside S_{d} (dimension {})",
            w.ambient,
            target.len()
        )));
    }
    let lower = MonomialBasis::homogeneous(m + 1, d - 1)?;
    let mut best = TInvariant { t: 0, witness: None };
    for form in projective_points(m, field) {
        let multiples = linear_multiples(field, &form, &lower, &target)?;
        let span = rref(field, target.len(), &multiples)?;
        let t = intersection_dim(field, w, &span)?;
        if t > best.t {
            best = TInvariant {
                t,
                witness: Some(form),
            };
            if t == w.rank() {
                break;
            }
        }
    }
    Ok(best)
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn pivot_patterns(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut comb: Vec<usize> = (0..r).collect();
    loop {
        out.push(comb.clone());
        let Some(i) = (0..r).rev().find(|&i| comb[i] < n - r + i) else {
            break;
        };
        comb[i] += 1;
        for j in i + 1..r {
            comb[j] = comb[j - 1] + 1;
        }
    }
    out
}

/// For each pivot row, the columns that hold free entries.
pub fn free_columns(pattern: &[usize], n: usize) -> Vec<Vec<usize>> {
    pattern
        .iter()
        .map(|&p| (p + 1..n).filter(|c| !pattern.contains(c)).collect())
        .collect()
}

/// Number of pivot patterns, `C(n, r)`.
pub fn pattern_count(n: usize, r: usize) -> Option<u64> {
    binom_u64(n as u64, r as u64)
}

/// Every `r`-dimensional subspace of `F_q^n`, exactly once: grouped by pivot
/// pattern, with free entries in odometer order (last entry fastest).
pub struct SubspaceEnumerator<'a> {
    field: &'a Field,
    n: usize,
    patterns: Vec<Vec<usize>>,
    current: usize,
    slots: Vec<(usize, usize)>,
    digits: Vec<u32>,
    fresh: bool,
}

impl<'a> SubspaceEnumerator<'a> {
    fn load_pattern(&mut self) {
        let pattern = &self.patterns[self.current];
        self.slots = free_columns(pattern, self.n)
            .into_iter()
            .enumerate()
            .flat_map(|(row, cols)| cols.into_iter().map(move |c| (row, c)))
            .collect();
        self.digits = vec![0; self.slots.len()];
        self.fresh = true;
    }
}

impl Iterator for SubspaceEnumerator<'_> {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        loop {
            if self.current >= self.patterns.len() {
                return None;
            }
            if !self.fresh {
                let q = self.field.q();
                let mut carried = true;
                for d in self.digits.iter_mut().rev() {
                    *d += 1;
                    if *d < q {
                        carried = false;
                        break;
                    }
                    *d = 0;
                }
                if carried {
                    self.current += 1;
                    if self.current < self.patterns.len() {
                        self.load_pattern();
                    }
                    continue;
                }
            }
            self.fresh = false;
            let pattern = &self.patterns[self.current];
            let mut rows = vec![vec![Elem::ZERO; self.n]; pattern.len()];
            for (row, &p) in pattern.iter().enumerate() {
                rows[row][p] = Elem::ONE;
            }
            for (&(row, col), &d) in self.slots.iter().zip(&self.digits) {
                rows[row][col] = Elem::raw(d);
            }
            return Some(SubspaceBasis {
                ambient: self.n,
                rows,
                pivots: pattern.clone(),
            });
        }
    }
}

/// Enumerates the `r`-dimensional subspaces of `F_q^n`, optionally only
/// those whose pivot pattern index falls in `range`.
pub fn enumerate_subspaces(field: &Field, n: usize, r: usize, range: Option<Range<usize>>) -> Result<SubspaceEnumerator<'_>> {
    if r > n {
        return domain(format!("no {r}-dimensional subspaces of F_q^{n}"));
    }
    let all = pivot_patterns(n, r);
    let range = range.unwrap_or(0..all.len());
    if range.start > range.end || range.end > all.len() {
        return domain(format!("pattern range {range:?} outside 0..{}", all.len()));
    }
    let patterns = all[range].to_vec();
    let mut it = SubspaceEnumerator {
        field,
        n,
        patterns,
        current: 0,
        slots: Vec::new(),
        digits: Vec::new(),
        fresh: true,
    };
    if !it.patterns.is_empty() {
        it.load_pattern();
    }
    Ok(it)
}

/// Number of coordinates where some basis row is nonzero.
pub fn support_weight(subcode: &SubspaceBasis) -> Result<usize> {
    if subcode.rank() == 0 {
        return domain("support weight of the zero code");
    }
    Ok((0..subcode.ambient)
        .filter(|&j| subcode.rows.iter().any(|r| !r[j].is_zero()))
        .count())
}
