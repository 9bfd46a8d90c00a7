//! Exact arithmetic for Q, F_p, F_p(t) and simple extensions k[x]/(m).
//!
//! A [`FieldDescriptor`] is a cheap, clonable handle describing a field; a
//! [`FieldElement`] is a canonical value that only makes sense together with
//! its descriptor. All arithmetic goes through the descriptor.

mod square_class;
pub mod tpoly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{dense, Poly};

pub use square_class::{
    is_square, rational_squarefree_kernel, square_class_rep, SquareClass,
};
pub use tpoly::TPoly;
pub(crate) use square_class::{factor_integer, poly_to_tpoly, squarefree_product, tpoly_to_poly};

/// Largest accepted characteristic; keeps every intermediate sum inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
    /// `F_p(t)`.
    RationalFunctionField(u64),
    QuotientExtension(Arc<Quotient>),
}

/// Data of a simple extension `base[x]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quotient {
    pub base: FieldDescriptor,
    /// Monic, irreducible over `base`.
    pub modulus: Poly,
    /// `true` when irreducibility was checked rather than assumed.
    pub irreducibility_verified: bool,
}

/// Canonical field element. Structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue(u64),
    /// Reduced fraction with monic denominator.
    Function { num: TPoly, den: TPoly },
    /// Coefficients over the base field, trailing zeros trimmed, degree below the modulus degree.
    Extension(Vec<FieldElement>),
}

/// User-facing description of a field, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    RationalFunctionField(u64),
    QuotientExtension { base: Box<FieldSpec>, modulus: Poly },
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `Fp:<p>` and `Fpt:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_p = |rest: &str| {
            rest.trim()
                .parse::<u64>()
                .map_err(|_| Error::BadFieldSpec(s.to_string()))
        };
        if s == "Q" {
            Ok(FieldSpec::Rationals)
        } else if let Some(rest) = s.strip_prefix("Fpt:") {
            Ok(FieldSpec::RationalFunctionField(parse_p(rest)?))
        } else if let Some(rest) = s.strip_prefix("Fp:") {
            Ok(FieldSpec::PrimeField(parse_p(rest)?))
        } else {
            Err(Error::BadFieldSpec(s.to_string()))
        }
    }
}

fn check_characteristic(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::BadFieldSpec(format!("characteristic {p} too large")));
    }
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Validates a specification and returns the canonical descriptor.
pub fn make_field(spec: &FieldSpec) -> Result<FieldDescriptor> {
    match spec {
        FieldSpec::Rationals => Ok(FieldDescriptor::Rationals),
        FieldSpec::PrimeField(p) => {
            check_characteristic(*p)?;
            Ok(FieldDescriptor::PrimeField(*p))
        }
        FieldSpec::RationalFunctionField(p) => {
            check_characteristic(*p)?;
            Ok(FieldDescriptor::RationalFunctionField(*p))
        }
        FieldSpec::QuotientExtension { base, modulus } => {
            let base = make_field(base)?;
            if modulus.field() != &base {
                return Err(Error::FieldMismatch);
            }
            quotient_field(&base, modulus)
        }
    }
}

/// `base[x]/(modulus)`.
///
/// Irreducibility is verified over finite bases. Over Q only a rational root
/// test is run (complete in degrees 2 and 3); over `F_p(t)` the modulus is
/// trusted and the descriptor records that.
pub fn quotient_field(base: &FieldDescriptor, modulus: &Poly) -> Result<FieldDescriptor> {
    if modulus.field() != base {
        return Err(Error::FieldMismatch);
    }
    let deg = modulus.deg().ok_or(Error::InvalidModulus)?;
    if deg == 0 || !base.is_one(&modulus.lc()) {
        return Err(Error::InvalidModulus);
    }
    let verified = if base.is_finite() {
        if !crate::poly::is_irreducible_finite(modulus)? {
            return Err(Error::ReducibleModulus);
        }
        true
    } else if *base == FieldDescriptor::Rationals {
        if crate::poly::has_rational_root(modulus) {
            return Err(Error::ReducibleModulus);
        }
        deg <= 3
    } else {
        false
    };
    Ok(FieldDescriptor::QuotientExtension(Arc::new(Quotient {
        base: base.clone(),
        modulus: modulus.clone(),
        irreducibility_verified: verified,
    })))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl FieldDescriptor {
    /// Characteristic, 0 for Q and its extensions.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) | FieldDescriptor::RationalFunctionField(p) => *p,
            FieldDescriptor::QuotientExtension(q) => q.base.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            FieldDescriptor::PrimeField(_) => true,
            FieldDescriptor::QuotientExtension(q) => q.base.is_finite(),
            _ => false,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            FieldDescriptor::PrimeField(p) => Some(BigUint::from(*p)),
            FieldDescriptor::QuotientExtension(q) => {
                let d = q.modulus.deg()?;
                q.base.order().map(|b| b.pow(d as u32))
            }
            _ => None,
        }
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        match self {
            FieldDescriptor::QuotientExtension(q) => Some(q),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldDescriptor::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldDescriptor::PrimeField(_) => FieldElement::Residue(0),
            FieldDescriptor::RationalFunctionField(_) => FieldElement::Function {
                num: TPoly::zero(),
                den: TPoly::from_coeffs(vec![1]),
            },
            FieldDescriptor::QuotientExtension(_) => FieldElement::Extension(Vec::new()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            FieldDescriptor::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::PrimeField(p) => FieldElement::Residue(bigint_mod(n, *p)),
            FieldDescriptor::RationalFunctionField(p) => FieldElement::Function {
                num: TPoly::constant(bigint_mod(n, *p), *p),
                den: TPoly::constant(1, *p),
            },
            FieldDescriptor::QuotientExtension(q) => {
                FieldElement::Extension(dense::trimmed(&q.base, vec![q.base.from_bigint(n)]))
            }
        }
    }

    /// Embeds a rational number; fails when the denominator vanishes in this field.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    /// The transcendental `t` of `F_p(t)`.
    pub fn t(&self) -> Option<FieldElement> {
        match self {
            FieldDescriptor::RationalFunctionField(p) => Some(FieldElement::Function {
                num: TPoly::t(),
                den: TPoly::constant(1, *p),
            }),
            _ => None,
        }
    }

    /// Class of `x` in `base[x]/(m)`.
    pub fn generator(&self) -> Option<FieldElement> {
        let q = self.quotient()?;
        let coeffs = vec![q.base.zero(), q.base.one()];
        Some(self.reduce_ext(coeffs))
    }

    /// Image of a base-field element in a quotient extension.
    pub fn embed(&self, a: &FieldElement) -> Option<FieldElement> {
        let q = self.quotient()?;
        Some(FieldElement::Extension(dense::trimmed(&q.base, vec![a.clone()])))
    }

    /// Builds an `F_p(t)` element from numerator and denominator polynomials in `t`.
    pub fn function(&self, num: TPoly, den: TPoly) -> Result<FieldElement> {
        match self {
            FieldDescriptor::RationalFunctionField(p) => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(canonical_function(num, den, *p))
            }
            _ => Err(Error::WrongField),
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue(r) => *r == 0,
            FieldElement::Function { num, .. } => num.is_zero(),
            FieldElement::Extension(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (FieldDescriptor::Rationals, FieldElement::Rational(r)) => r.denom().is_positive(),
            (FieldDescriptor::PrimeField(p), FieldElement::Residue(r)) => r < p,
            (FieldDescriptor::RationalFunctionField(p), FieldElement::Function { num, den }) => {
                num.coeffs().iter().chain(den.coeffs()).all(|c| c < p)
                    && !den.is_zero()
                    && den.lc() == 1
                    && num.gcd(den, *p).is_one()
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(c)) => {
                let d = q.modulus.deg().unwrap_or(0);
                c.len() <= d
                    && c.last().map_or(true, |l| !q.base.is_zero(l))
                    && c.iter().all(|x| q.base.contains(x))
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldDescriptor::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (FieldDescriptor::PrimeField(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue((x + y) % p)
            }
            (
                FieldDescriptor::RationalFunctionField(p),
                FieldElement::Function { num: an, den: ad },
                FieldElement::Function { num: bn, den: bd },
            ) => {
                let p = *p;
                if ad == bd {
                    return canonical_function(an.add(bn, p), ad.clone(), p);
                }
                let num = an.mul(bd, p).add(&bn.mul(ad, p), p);
                canonical_function(num, ad.mul(bd, p), p)
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(x), FieldElement::Extension(y)) => {
                FieldElement::Extension(dense::add(&q.base, x, y))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (FieldDescriptor::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (FieldDescriptor::PrimeField(p), FieldElement::Residue(x)) => FieldElement::Residue((p - x) % p),
            (FieldDescriptor::RationalFunctionField(p), FieldElement::Function { num, den }) => {
                FieldElement::Function { num: num.neg(*p), den: den.clone() }
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(x)) => {
                FieldElement::Extension(x.iter().map(|c| q.base.neg(c)).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldDescriptor::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (FieldDescriptor::PrimeField(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(tpoly::mulmod(*x, *y, *p))
            }
            (
                FieldDescriptor::RationalFunctionField(p),
                FieldElement::Function { num: an, den: ad },
                FieldElement::Function { num: bn, den: bd },
            ) => {
                let p = *p;
                if an.is_zero() || bn.is_zero() {
                    return self.zero();
                }
                // cross-cancel before multiplying to keep degrees small
                let g1 = an.gcd(bd, p);
                let g2 = bn.gcd(ad, p);
                let n = an.divrem(&g1, p).0.mul(&bn.divrem(&g2, p).0, p);
                let d = ad.divrem(&g2, p).0.mul(&bd.divrem(&g1, p).0, p);
                let c = tpoly::invmod(d.lc(), p);
                FieldElement::Function { num: n.scale(c, p), den: d.scale(c, p) }
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(x), FieldElement::Extension(y)) => {
                let prod = dense::mul(&q.base, x, y);
                self.reduce_ext(prod)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldDescriptor::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(x.recip()),
            (FieldDescriptor::PrimeField(p), FieldElement::Residue(x)) => {
                FieldElement::Residue(tpoly::invmod(*x, *p))
            }
            (FieldDescriptor::RationalFunctionField(p), FieldElement::Function { num, den }) => {
                let c = tpoly::invmod(num.lc(), *p);
                FieldElement::Function { num: den.scale(c, *p), den: num.scale(c, *p) }
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(x)) => {
                let (g, s, _) = dense::ext_gcd(&q.base, x, q.modulus.coeffs());
                // modulus irreducible and x nonzero, so g is a nonzero constant
                debug_assert_eq!(g.len(), 1);
                let ginv = q.base.inv(&g[0])?;
                let s = dense::scale(&q.base, &s, &ginv);
                self.reduce_ext(s)
            }
            _ => panic!("element does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, exp: u64) -> FieldElement {
        self.pow_big(a, &BigUint::from(exp))
    }

    pub fn pow_big(&self, a: &FieldElement, exp: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.square(&acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a^{1/p}` when it exists in this field (characteristic `p > 0`).
    pub fn pth_root(&self, a: &FieldElement) -> Option<FieldElement> {
        match (self, a) {
            (FieldDescriptor::PrimeField(_), FieldElement::Residue(_)) => Some(a.clone()),
            (FieldDescriptor::RationalFunctionField(p), FieldElement::Function { num, den }) => {
                Some(FieldElement::Function { num: num.pth_root(*p)?, den: den.pth_root(*p)? })
            }
            (FieldDescriptor::QuotientExtension(q), _) if q.base.is_finite() => {
                // Frobenius has order k on F_{p^k}; its inverse is a ↦ a^{p^{k-1}}.
                let p = BigUint::from(self.characteristic());
                let order = self.order()?;
                Some(self.pow_big(a, &(order / p)))
            }
            _ => None,
        }
    }

    fn reduce_ext(&self, coeffs: Vec<FieldElement>) -> FieldElement {
        let q = self.quotient().expect("quotient field");
        FieldElement::Extension(dense::rem_monic(&q.base, coeffs, q.modulus.coeffs()))
    }

    /// Sign of a rational number (`None` outside Q).
    pub fn sign(&self, a: &FieldElement) -> Option<i32> {
        match a {
            FieldElement::Rational(r) => Some(match r.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }),
            _ => None,
        }
    }

    /// Renders an element in the expression syntax used by the CLI.
    pub fn render(&self, a: &FieldElement) -> String {
        match (self, a) {
            (_, FieldElement::Rational(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (_, FieldElement::Residue(r)) => r.to_string(),
            (FieldDescriptor::RationalFunctionField(_), FieldElement::Function { num, den }) => {
                let n = render_tpoly(num);
                if den.is_one() {
                    n
                } else {
                    let n = if num.coeffs().iter().filter(|&&c| c != 0).count() > 1 { format!("({n})") } else { n };
                    // den is monic, so a single term is a bare power of t
                    if den.coeffs().iter().filter(|&&c| c != 0).count() == 1 {
                        format!("{n}/{}", render_tpoly(den))
                    } else {
                        format!("{n}/({})", render_tpoly(den))
                    }
                }
            }
            (FieldDescriptor::QuotientExtension(q), FieldElement::Extension(c)) => {
                let p = Poly::new(&q.base, c.clone(), q.modulus.var());
                p.to_string()
            }
            _ => format!("{a:?}"),
        }
    }

    /// Whether the rendering of `a` is a single signed product (no `+` or `-` between terms).
    pub(crate) fn is_atomic(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(_) | FieldElement::Residue(_) => true,
            FieldElement::Function { num, den } => {
                den.is_one() && num.coeffs().iter().filter(|&&c| c != 0).count() <= 1
            }
            FieldElement::Extension(c) => c.iter().filter(|x| !self.quotient().unwrap().base.is_zero(x)).count() <= 1
                && c.iter().all(|x| self.quotient().unwrap().base.is_atomic(x)),
        }
    }
}

fn canonical_function(num: TPoly, den: TPoly, p: u64) -> FieldElement {
    if num.is_zero() {
        return FieldElement::Function { num, den: TPoly::constant(1, p) };
    }
    let g = num.gcd(&den, p);
    let (mut n, mut d) = if g.is_one() {
        (num, den)
    } else {
        (num.divrem(&g, p).0, den.divrem(&g, p).0)
    };
    if d.lc() != 1 {
        let c = tpoly::invmod(d.lc(), p);
        n = n.scale(c, p);
        d = d.scale(c, p);
    }
    FieldElement::Function { num: n, den: d }
}

pub(crate) fn render_tpoly(a: &TPoly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    terms.join(" + ")
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
            FieldDescriptor::RationalFunctionField(p) => write!(f, "Fpt:{p}"),
            FieldDescriptor::QuotientExtension(q) => write!(f, "{}[{}]/({})", q.base, q.modulus.var(), q.modulus),
        }
    }
}

/// Operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Element(FieldElement),
    Bool(bool),
}

/// Checked arithmetic: validates membership of both operands before computing.
/// Unary operations ignore `b`.
pub fn arith(k: &FieldDescriptor, a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<ArithValue> {
    if !k.contains(a) || !k.contains(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => ArithValue::Element(k.add(a, b)),
        ArithOp::Sub => ArithValue::Element(k.sub(a, b)),
        ArithOp::Mul => ArithValue::Element(k.mul(a, b)),
        ArithOp::Div => ArithValue::Element(k.div(a, b)?),
        ArithOp::Neg => ArithValue::Element(k.neg(a)),
        ArithOp::Inv => ArithValue::Element(k.inv(a)?),
        ArithOp::Eq => ArithValue::Bool(a == b),
    })
}

/// Convenience for building rationals in tests and examples.
pub fn q(n: i64, d: i64) -> FieldElement {
    FieldElement::Rational(rat(n) / rat(d))
}
