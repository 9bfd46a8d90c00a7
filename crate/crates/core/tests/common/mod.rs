#![allow(dead_code)]

use a1h::field::{FieldDescriptor, FieldElement, TPoly};
use a1h::poly::{Poly, RationalFunc};
use rand::Rng;

pub fn fields() -> Vec<FieldDescriptor> {
    vec![
        FieldDescriptor::PrimeField(3),
        FieldDescriptor::PrimeField(5),
        FieldDescriptor::PrimeField(7),
        FieldDescriptor::Rationals,
        FieldDescriptor::RationalFunctionField(3),
        FieldDescriptor::RationalFunctionField(5),
    ]
}

fn random_tpoly(p: u64, deg: usize, rng: &mut impl Rng) -> TPoly {
    TPoly::from_coeffs((0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

pub fn random_elem(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    match k {
        FieldDescriptor::Rationals => {
            let n = rng.gen_range(-9..=9);
            let d = rng.gen_range(1..=5);
            k.div(&k.from_i64(n), &k.from_i64(d)).unwrap()
        }
        FieldDescriptor::PrimeField(p) => k.from_i64(rng.gen_range(0..*p as i64)),
        FieldDescriptor::RationalFunctionField(p) => {
            let num = random_tpoly(*p, rng.gen_range(0..=2), rng);
            let mut den = random_tpoly(*p, rng.gen_range(0..=1), rng);
            if den.is_zero() {
                den = TPoly::constant(1, *p);
            }
            k.function(num, den).unwrap()
        }
        FieldDescriptor::QuotientExtension(_) => unimplemented!(),
    }
}

pub fn random_nonzero(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    loop {
        let a = random_elem(k, rng);
        if !k.is_zero(&a) {
            return a;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn random_poly(k: &FieldDescriptor, deg: usize, var: char, rng: &mut impl Rng) -> Poly {
    let mut c: Vec<_> = (0..deg).map(|_| random_elem(k, rng)).collect();
    c.push(random_nonzero(k, rng));
    Poly::new(k, c, var)
}

pub fn random_monic(k: &FieldDescriptor, deg: usize, var: char, rng: &mut impl Rng) -> Poly {
    let mut c: Vec<_> = (0..deg).map(|_| random_elem(k, rng)).collect();
    c.push(k.one());
    Poly::new(k, c, var)
}

/// Map coefficients: over Q small integers, since canonical classes need the
/// integer factorization of discriminant-sized numbers.
fn map_coeff(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    match k {
        FieldDescriptor::Rationals => k.from_i64(rng.gen_range(-3..=3)),
        _ => random_elem(k, rng),
    }
}

fn map_poly(k: &FieldDescriptor, deg: usize, monic: bool, rng: &mut impl Rng) -> Poly {
    let mut c: Vec<_> = (0..deg).map(|_| map_coeff(k, rng)).collect();
    c.push(if monic {
        k.one()
    } else {
        loop {
            let a = map_coeff(k, rng);
            if !k.is_zero(&a) {
                break a;
            }
        }
    });
    Poly::new(k, c, 'y')
}

/// Nonconstant reduced `N/D` with `max(deg N, deg D) ≤ max_deg`.
pub fn random_map(k: &FieldDescriptor, max_deg: usize, rng: &mut impl Rng) -> RationalFunc {
    loop {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg);
        let num = map_poly(k, a, false, rng);
        let den = map_poly(k, b, true, rng);
        let f = RationalFunc::new(num, den).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

/// As [`random_map`], but with nonzero Wronskian.
pub fn random_separable_map(k: &FieldDescriptor, max_deg: usize, rng: &mut impl Rng) -> RationalFunc {
    loop {
        let f = random_map(k, max_deg, rng);
        let w = &(&f.num().derivative() * f.den()) - &(f.num() * &f.den().derivative());
        if !w.is_zero() {
            return f;
        }
    }
}

pub fn random_invertible(k: &FieldDescriptor, n: usize, rng: &mut impl Rng) -> Vec<Vec<FieldElement>> {
    loop {
        let m: Vec<Vec<_>> = (0..n).map(|_| (0..n).map(|_| random_elem(k, rng)).collect()).collect();
        if !k.is_zero(&a1h::linalg::det(k, &m)) {
            return m;
        }
    }
}

pub fn random_symmetric(k: &FieldDescriptor, n: usize, rng: &mut impl Rng) -> Vec<Vec<FieldElement>> {
    let mut m = vec![vec![k.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let a = random_elem(k, rng);
            m[i][j] = a.clone();
            m[j][i] = a;
        }
    }
    m
}
