//! Canonical representatives of `k* / (k*)^2`.
//!
//! * F_q: `1` or the first nonresidue in enumeration order.
//! * Q: the squarefree integer kernel, sign kept.
//! * F_p(t): (canonical F_p class of the leading coefficient) times the
//!   product of the monic irreducibles occurring to an odd power.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_prime::FactorizationConfig;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::tpoly::{self, TPoly};
use super::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::poly::{factor_finite, Poly};

/// A canonical square-class representative (never zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(FieldElement);

impl SquareClass {
    pub fn rep(&self) -> &FieldElement {
        &self.0
    }

    pub fn into_rep(self) -> FieldElement {
        self.0
    }
}

/// Euler criterion over a finite field.
fn is_square_finite(k: &FieldDescriptor, a: &FieldElement) -> bool {
    let q = k.order().expect("finite field");
    let e = (q - 1u32) >> 1;
    k.is_one(&k.pow_big(a, &e))
}

fn smallest_nonresidue_prime(p: u64) -> u64 {
    (2..p)
        .find(|&a| tpoly::powmod(a, (p - 1) / 2, p) != 1)
        .expect("odd prime has a nonresidue")
}

/// First nonsquare of a finite quotient field, enumerating coefficient vectors
/// in base-`p` order of `Σ c_i p^i`.
fn smallest_nonresidue_quotient(k: &FieldDescriptor) -> FieldElement {
    let q = k.quotient().expect("quotient");
    let d = q.modulus.deg().unwrap();
    let base_elems = enumerate_finite(&q.base);
    let b = base_elems.len();
    let mut idx = 1usize;
    loop {
        let mut n = idx;
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(base_elems[n % b].clone());
            n /= b;
        }
        let lifted = crate::poly::dense::trimmed(&q.base, coeffs);
        let a = FieldElement::Extension(lifted);
        if !is_square_finite(k, &a) {
            return a;
        }
        idx += 1;
    }
}

/// All elements of a (small) finite field in canonical enumeration order.
pub(crate) fn enumerate_finite(k: &FieldDescriptor) -> Vec<FieldElement> {
    match k {
        FieldDescriptor::PrimeField(p) => (0..*p).map(FieldElement::Residue).collect(),
        FieldDescriptor::QuotientExtension(q) => {
            let base = enumerate_finite(&q.base);
            let d = q.modulus.deg().unwrap();
            let total = base.len().pow(d as u32);
            (0..total)
                .map(|mut n| {
                    let mut coeffs = Vec::with_capacity(d);
                    for _ in 0..d {
                        coeffs.push(base[n % base.len()].clone());
                        n /= base.len();
                    }
                    FieldElement::Extension(crate::poly::dense::trimmed(&q.base, coeffs))
                })
                .collect()
        }
        _ => panic!("enumerate_finite on infinite field"),
    }
}

thread_local! {
    // the same kernels recur across stability rechecks and Hasse fingerprints
    static FACTOR_CACHE: RefCell<HashMap<BigUint, BTreeMap<BigUint, usize>>> = RefCell::new(HashMap::new());
}

/// Complete factorization of `n > 1`, or an error naming the unfactored cofactors.
pub(crate) fn factor_integer(n: &BigUint) -> Result<BTreeMap<BigUint, usize>> {
    if let Some(hit) = FACTOR_CACHE.with(|c| c.borrow().get(n).cloned()) {
        return Ok(hit);
    }
    let mut config = FactorizationConfig::default();
    config.rho_trials = 64;
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), Some(config));
    if let Some(rest) = rest {
        let rest: Vec<String> = rest.iter().map(|r| r.to_string()).collect();
        return Err(Error::IntegerFactorizationLimit(format!("{} (cofactors {})", n, rest.join(", "))));
    }
    FACTOR_CACHE.with(|c| c.borrow_mut().insert(n.clone(), found.clone()));
    Ok(found)
}

/// Squarefree kernel of a nonzero integer, sign preserved.
///
/// Factoring uses trial division, Pollard rho and a strong probable-prime
/// test; if a cofactor resists, an error is returned instead of guessing.
pub fn rational_squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mag: BigUint = n.magnitude().clone();
    let mut kernel = BigUint::one();
    if mag > BigUint::one() {
        for (prime, exp) in factor_integer(&mag)? {
            if exp % 2 == 1 {
                kernel *= prime;
            }
        }
    }
    Ok(BigInt::from_biguint(if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus }, kernel))
}

/// Kernel of `a·b` for squarefree `a`, `b`: `ab / gcd(a, b)²`.
pub(crate) fn squarefree_product(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    (a / &g) * (b / &g)
}

pub(crate) fn tpoly_to_poly(a: &TPoly, p: u64) -> Poly {
    let k = FieldDescriptor::PrimeField(p);
    Poly::new(&k, a.coeffs().iter().map(|&c| FieldElement::Residue(c)).collect(), 't')
}

pub(crate) fn poly_to_tpoly(a: &Poly) -> TPoly {
    TPoly::from_coeffs(
        a.coeffs()
            .iter()
            .map(|c| match c {
                FieldElement::Residue(r) => *r,
                _ => panic!("expected F_p coefficients"),
            })
            .collect(),
    )
}

/// Odd-multiplicity part of a monic polynomial over F_p.
fn odd_part(a: &TPoly, p: u64) -> Result<TPoly> {
    if a.degree().unwrap_or(0) == 0 {
        return Ok(TPoly::constant(1, p));
    }
    let fact = factor_finite(&tpoly_to_poly(a, p))?;
    let mut acc = TPoly::constant(1, p);
    for f in fact.factors {
        if f.multiplicity % 2 == 1 {
            acc = acc.mul(&poly_to_tpoly(&f.poly), p);
        }
    }
    Ok(acc)
}

/// Canonical representative of the square class of `a`.
pub fn square_class_rep(k: &FieldDescriptor, a: &FieldElement) -> Result<SquareClass> {
    if !k.contains(a) {
        return Err(Error::FieldMismatch);
    }
    if k.is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let rep = match (k, a) {
        (FieldDescriptor::PrimeField(p), FieldElement::Residue(r)) => {
            if tpoly::powmod(*r, (p - 1) / 2, *p) == 1 {
                FieldElement::Residue(1)
            } else {
                FieldElement::Residue(smallest_nonresidue_prime(*p))
            }
        }
        (FieldDescriptor::Rationals, FieldElement::Rational(r)) => {
            // a = n/d is in the class of n·d
            let nd = r.numer() * r.denom();
            FieldElement::Rational(BigRational::from_integer(rational_squarefree_kernel(&nd)?))
        }
        (FieldDescriptor::RationalFunctionField(p), FieldElement::Function { num, den }) => {
            let p = *p;
            let unit = num.lc(); // den is monic
            let unit_rep = if tpoly::powmod(unit, (p - 1) / 2, p) == 1 { 1 } else { smallest_nonresidue_prime(p) };
            let monic_num = num.monic(p);
            let odd = odd_part(&monic_num, p)?.mul(&odd_part(den, p)?, p);
            FieldElement::Function { num: odd.scale(unit_rep, p), den: TPoly::constant(1, p) }
        }
        (FieldDescriptor::QuotientExtension(_), _) if k.is_finite() => {
            if is_square_finite(k, a) {
                k.one()
            } else {
                smallest_nonresidue_quotient(k)
            }
        }
        _ => return Err(Error::UnsupportedField),
    };
    Ok(SquareClass(rep))
}

/// Whether `a` is a nonzero square.
pub fn is_square(k: &FieldDescriptor, a: &FieldElement) -> Result<bool> {
    Ok(k.is_one(square_class_rep(k, a)?.rep()))
}
