//! Dense univariate polynomials and reduced rational functions over any
//! [`FieldDescriptor`].

pub mod dense;
mod factor;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};

pub use factor::{
    factor_finite, factor_finite_with_rng, factor_seed, is_irreducible_finite, squarefree_split,
    with_factor_seed, CoprimeFactorization, Factor, DEFAULT_FACTOR_SEED,
};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
    var: char,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(k: &FieldDescriptor, coeffs: Vec<FieldElement>, var: char) -> Self {
        Poly { field: k.clone(), coeffs: dense::trimmed(k, coeffs), var }
    }

    pub fn zero(k: &FieldDescriptor, var: char) -> Self {
        Poly { field: k.clone(), coeffs: Vec::new(), var }
    }

    pub fn one(k: &FieldDescriptor, var: char) -> Self {
        Self::constant(k, k.one(), var)
    }

    pub fn constant(k: &FieldDescriptor, c: FieldElement, var: char) -> Self {
        Self::new(k, vec![c], var)
    }

    /// `c · var^n`.
    pub fn monomial(k: &FieldDescriptor, c: FieldElement, n: usize, var: char) -> Self {
        let mut v = vec![k.zero(); n];
        v.push(c);
        Self::new(k, v, var)
    }

    /// The indeterminate itself.
    pub fn x(k: &FieldDescriptor, var: char) -> Self {
        Self::monomial(k, k.one(), 1, var)
    }

    /// Integer coefficients, ascending.
    pub fn from_i64s(k: &FieldDescriptor, coeffs: &[i64], var: char) -> Self {
        Self::new(k, coeffs.iter().map(|&c| k.from_i64(c)).collect(), var)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option (`None` for zero).
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.lc())
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn same(&self, coeffs: Vec<FieldElement>) -> Self {
        Poly { field: self.field.clone(), coeffs: dense::trimmed(&self.field, coeffs), var: self.var }
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.same(dense::scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Poly::one(&self.field, self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `a = q·b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = dense::divrem(&self.field, &self.coeffs, &b.coeffs);
        Ok((self.same(q), self.same(r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient of an exact division; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, a: &Poly) -> bool {
        !self.is_zero() && a.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero");
        self.scale(&inv)
    }

    /// `(g, s, u)` with `s·self + u·b = g`, `g` monic.
    pub fn gcd_extended(&self, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(b);
        if self.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (g, s, u) = dense::ext_gcd(&self.field, &self.coeffs, &b.coeffs);
        let out = (self.same(g), self.same(s), self.same(u));
        debug_assert_eq!(&(&out.1 * self) + &(&out.2 * b), out.0);
        Ok(out)
    }

    /// Monic gcd (`gcd(0, 0) = 0`).
    pub fn gcd(&self, b: &Poly) -> Poly {
        self.check(b);
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Formal derivative; `i·c_i` is reduced in the coefficient field.
    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.mul(&k.from_i64(i as i64), c)).collect();
        self.same(coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let k = &self.field;
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Largest `m` with `pi^m | self`; `pi` nonconstant, `self` nonzero.
    pub fn multiplicity_of(&self, pi: &Poly) -> usize {
        assert!(!self.is_zero() && !pi.is_constant());
        let mut m = 0;
        let mut a = self.clone();
        loop {
            let (q, r) = a.divrem(pi).expect("nonzero");
            if !r.is_zero() {
                return m;
            }
            m += 1;
            a = q;
        }
    }

    /// `self^exp mod m`.
    pub fn powmod(&self, exp: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field, self.var).rem(m).expect("nonzero modulus");
        let base = self.rem(m).expect("nonzero modulus");
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(m).unwrap();
            if exp.bit(i) {
                acc = (&acc * &base).rem(m).unwrap();
            }
        }
        acc
    }

    /// Writes `self = s(x^p)` and returns `s`, if possible.
    pub(crate) fn contract(&self, p: usize) -> Option<Poly> {
        if self.coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !self.field.is_zero(c)) {
            return None;
        }
        Some(self.same(self.coeffs.iter().step_by(p).cloned().collect()))
    }

    /// `self(x^p)`.
    pub(crate) fn expand(&self, p: usize) -> Poly {
        let k = &self.field;
        let mut out = vec![k.zero(); self.coeffs.len().saturating_sub(1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * p] = c.clone();
        }
        self.same(out)
    }

    /// Coefficient-wise map into another field.
    pub fn map_coeffs(&self, k: &FieldDescriptor, f: impl Fn(&FieldElement) -> FieldElement) -> Poly {
        Poly::new(k, self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Truncates to terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        self.same(self.coeffs.iter().take(n).cloned().collect())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down. Field and variable
/// are ignored; comparing across fields is meaningless anyway.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        self.same(dense::add(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        self.same(dense::sub(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        self.same(dense::mul(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.same(self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            let negative = k.sign(c) == Some(-1);
            let mag = if negative { k.neg(c) } else { c.clone() };
            let body = if mono.is_empty() {
                let s = k.render(&mag);
                if k.is_atomic(&mag) { s } else { format!("({s})") }
            } else if k.is_one(&mag) {
                mono
            } else if k.is_atomic(&mag) {
                format!("{}*{}", k.render(&mag), mono)
            } else {
                format!("({})*{}", k.render(&mag), mono)
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

/// A reduced fraction `num/den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: Poly,
    den: Poly,
}

impl RationalFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        num.check(&den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let var = num.var;
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let inv = den.field.inv(&den.lc())?;
        Ok(RationalFunc { num: num.scale(&inv).with_var(var), den: den.scale(&inv).with_var(var) })
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.field(), num.var());
        RationalFunc { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.num.field()
    }

    pub fn var(&self) -> char {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`, the degree of the induced map of P^1.
    pub fn map_degree(&self) -> usize {
        self.num.deg().unwrap_or(0).max(self.den.deg().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.map_degree() == 0
    }

    pub fn with_var(self, var: char) -> Self {
        RationalFunc { num: self.num.with_var(var), den: self.den.with_var(var) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn pow(&self, n: usize) -> Self {
        RationalFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero den")
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Rational-root test over Q (complete for irreducibility in degrees 2 and 3).
pub fn has_rational_root(a: &Poly) -> bool {
    if *a.field() != FieldDescriptor::Rationals || a.is_zero() {
        return false;
    }
    if a.deg() == Some(0) {
        return false;
    }
    if a.field().is_zero(&a.coeff(0)) {
        return true;
    }
    // clear denominators
    let mut lcm = BigInt::from(1);
    for c in a.coeffs() {
        if let FieldElement::Rational(r) = c {
            lcm = num_integer::lcm(lcm, r.denom().clone());
        }
    }
    let ints: Vec<BigInt> = a
        .coeffs()
        .iter()
        .map(|c| match c {
            FieldElement::Rational(r) => (r * num_rational::BigRational::from_integer(lcm.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let map = num_prime::nt_funcs::factorize(n.magnitude().clone());
        let mut ds = vec![BigInt::from(1)];
        for (prime, e) in map {
            let prime = BigInt::from(prime);
            let mut next = Vec::new();
            for d in &ds {
                let mut pk = BigInt::from(1);
                for _ in 0..=e {
                    next.push(d * &pk);
                    pk *= &prime;
                }
            }
            ds = next;
        }
        ds
    };
    let lead = ints.last().unwrap();
    let k = a.field();
    for num in divisors(&ints[0]) {
        for den in divisors(lead) {
            for sign in [1, -1] {
                let r = num_rational::BigRational::new(&num * sign, den.clone());
                if k.is_zero(&a.eval(&FieldElement::Rational(r))) {
                    return true;
                }
            }
        }
    }
    false
}
