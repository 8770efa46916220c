//! JSON file format for families of polynomials:
//!
//! ```json
//! {"field": {"p": 3, "e": 1, "modulus": [0, 1]}, "nvars": 3, "homogeneous": true,
//!  "degree": 2, "polys": [[{"e": [2, 0, 0], "c": 1}, ...], ...]}
//! ```
//!
//! Coefficients are element indices; terms are written in descending
//! lexicographic order of their exponents.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldDesc};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub e: Vec<u32>,
    pub c: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub field: FieldDesc,
    pub nvars: usize,
    pub homogeneous: bool,
    pub degree: u32,
    pub polys: Vec<Vec<TermRecord>>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl PolyFile {
    /// Describes a nonempty family of polynomials from one ring.
    pub fn from_polys(polys: &[Polynomial]) -> Result<PolyFile> {
        let first = polys.first().ok_or_else(|| format_err("no polynomials to write"))?;
        let same_ring = polys.iter().all(|f| {
            f.field() == first.field()
                && f.nvars() == first.nvars()
                && f.degree() == first.degree()
                && f.is_homogeneous() == first.is_homogeneous()
        });
        if !same_ring {
            return Err(format_err("polynomials from different rings"));
        }
        Ok(PolyFile {
            field: first.field().desc(),
            nvars: first.nvars(),
            homogeneous: first.is_homogeneous(),
            degree: first.degree(),
            polys: polys
                .iter()
                .map(|f| {
                    f.terms()
                        .map(|(e, c)| TermRecord {
                            e: e.clone(),
                            c: c.index() as u64,
                        })
                        .collect()
                })
                .collect(),
        })
    }

    /// Rebuilds the polynomials, validating every field of the file.
    pub fn to_polys(&self) -> Result<Vec<Polynomial>> {
        if self.polys.is_empty() {
            return Err(format_err("the polys array is empty"));
        }
        let field = Arc::new(Field::from_desc(&self.field).map_err(|e| format_err(e.to_string()))?);
        self.polys
            .iter()
            .map(|terms| {
                let mut f = Polynomial::zero(field.clone(), self.nvars, self.degree, self.homogeneous);
                for t in terms {
                    let c = field.elem(t.c).map_err(|e| format_err(e.to_string()))?;
                    f.add_term(t.e.clone(), c).map_err(|e| format_err(e.to_string()))?;
                }
                Ok(f)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// Reads a polynomial file. A certified-family document (with the file
/// under `"family"`) is accepted as well.
pub fn parse_poly_file(text: &str) -> Result<Vec<Polynomial>> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    if let Some(inner) = value.get_mut("family") {
        value = inner.take();
    }
    let file: PolyFile = serde_json::from_value(value).map_err(|e| format_err(e.to_string()))?;
    file.to_polys()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Elem;

    #[test]
    fn roundtrip() {
        let f = Arc::new(Field::of_size(4).unwrap());
        let mut g = Polynomial::zero(f.clone(), 3, 2, true);
        g.add_term(vec![1, 1, 0], f.generator()).unwrap();
        g.add_term(vec![0, 0, 2], Elem::ONE).unwrap();
        let h = Polynomial::var(f.clone(), 3, 2).mul(&Polynomial::var(f, 3, 0)).unwrap();
        let file = PolyFile::from_polys(&[g.clone(), h.clone()]).unwrap();
        let text = serde_json::to_string(&file.to_json()).unwrap();
        assert!(text.starts_with(r#"{"field":{"p":2,"e":2,"modulus":[1,1,1]},"nvars":3"#));
        assert_eq!(parse_poly_file(&text).unwrap(), vec![g, h]);
    }

    #[test]
    fn rejects_bad_files() {
        let empty = r#"{"field":{"p":3,"e":1,"modulus":[0,1]},"nvars":3,"homogeneous":true,"degree":1,"polys":[]}"#;
        assert!(matches!(parse_poly_file(empty), Err(Error::Format(_))));
        let wrong_degree = r#"{"field":{"p":3,"e":1,"modulus":[0,1]},"nvars":2,"homogeneous":true,"degree":1,"polys":[[{"e":[2,0],"c":1}]]}"#;
        assert!(matches!(parse_poly_file(wrong_degree), Err(Error::Format(_))));
        let bad_coeff = r#"{"field":{"p":3,"e":1,"modulus":[0,1]},"nvars":2,"homogeneous":true,"degree":1,"polys":[[{"e":[1,0],"c":3}]]}"#;
        assert!(matches!(parse_poly_file(bad_coeff), Err(Error::Format(_))));
        assert!(parse_poly_file("not json").is_err());
    }
}
