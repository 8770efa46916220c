//! Field arithmetic checked against schoolbook polynomial arithmetic modulo
//! the field's defining polynomial, written independently here.

use homzeros::gf::{prime_power, Elem};
use homzeros::Field;

/// Base-`p` digits of an element index, lowest first.
fn digits(index: u32, p: u32, e: u32) -> Vec<u32> {
    let mut n = index;
    (0..e)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn index_of(digits: &[u32], p: u32) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

/// Product of two residues modulo the monic `modulus` (coefficients lowest
/// first, leading one included).
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (e..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (k, &mk) in modulus.iter().enumerate() {
                let slot = top - e + k;
                prod[slot] = (prod[slot] + p * p - c * mk % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

fn sizes() -> Vec<u64> {
    (2..=32).filter(|&q| prime_power(q).is_some()).collect()
}

#[test]
fn addition_and_multiplication_match_polynomial_arithmetic() {
    for q in sizes() {
        let f = Field::of_size(q).unwrap();
        let (p, e) = (f.p(), f.e());
        let modulus = f.modulus().to_vec();
        assert_eq!(modulus.len() as u32, e + 1);
        assert_eq!(*modulus.last().unwrap(), 1);
        for a in f.elements() {
            let da = digits(a.index() as u32, p, e);
            assert_eq!(f.digits(a), da);
            for b in f.elements() {
                let db = digits(b.index() as u32, p, e);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                assert_eq!(f.add(a, b).index() as u64, index_of(&sum, p), "q={q}: {a:?} + {b:?}");
                let prod = mul_mod(&da, &db, &modulus, p);
                assert_eq!(f.mul(a, b).index() as u64, index_of(&prod, p), "q={q}: {a:?} * {b:?}");
            }
        }
    }
}

#[test]
fn inverses_powers_and_frobenius() {
    for q in sizes() {
        let f = Field::of_size(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            assert_eq!(f.pow(a, q), a, "a^q = a in F_{q}");
            if a.is_zero() {
                assert!(f.inv(a).is_err());
            } else {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                assert_eq!(f.pow(a, q - 1), Elem::ONE);
            }
            // Frobenius is additive.
            let p = f.p() as u64;
            for b in f.elements() {
                assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
            }
        }
    }
}

#[test]
fn generator_is_primitive() {
    for q in sizes() {
        let f = Field::of_size(q).unwrap();
        let g = f.generator();
        let order = (1..q).find(|&k| f.pow(g, k) == Elem::ONE).unwrap();
        assert_eq!(order, q - 1, "generator of F_{q}");
    }
}

#[test]
fn explicit_moduli_give_isomorphic_arithmetic() {
    // x^2 + 1 is irreducible over F_3; x^2 + 2 is not.
    let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
    let modulus = f.modulus().to_vec();
    for a in f.elements() {
        for b in f.elements() {
            let prod = mul_mod(&f.digits(a), &f.digits(b), &modulus, 3);
            assert_eq!(f.mul(a, b).index() as u64, index_of(&prod, 3));
        }
    }
    assert!(Field::new(3, 2, Some(vec![2, 0, 1])).is_err());
    assert!(Field::new(4, 1, None).is_err());
    assert!(Field::of_size(6).is_err());
}
