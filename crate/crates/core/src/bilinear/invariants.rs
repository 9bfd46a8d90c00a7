//! Complete invariants and the equality decision for GW classes.
//!
//! * Finite fields: rank and determinant class.
//! * Q: rank, determinant class, signature and the Hasse invariant at every
//!   prime dividing 2·(entries).
//! * F_p(t): rank, second residues at every finite place dividing an entry,
//!   and both residues at infinity (uniformizer 1/t). If all finite second
//!   residues of A − B vanish, A − B comes from W(F_p), and the first residue
//!   at infinity recovers that constant part.
//!
//! Witt classes over the (finite) residue fields are compared through rank
//! parity and signed discriminant `(−1)^{n(n−1)/2}·det`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::GWClass;
use crate::error::{Error, Result};
use crate::field::{
    factor_integer, poly_to_tpoly, quotient_field, square_class_rep, tpoly_to_poly, FieldDescriptor, FieldElement, SquareClass,
    TPoly,
};
use crate::poly::{dense, factor_finite, is_irreducible_finite, Poly};

/// A place of `F_p(t)` trivial on `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// Monic irreducible polynomial in `t` over `F_p`.
    Finite(Poly),
    /// Uniformizer `1/t`.
    Infinity,
}

/// Witt class over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittData {
    pub rank_parity: u8,
    pub signed_disc: SquareClass,
}

impl WittData {
    fn of(k: &FieldDescriptor, entries: &[FieldElement]) -> Result<Self> {
        let n = entries.len();
        let mut d = entries.iter().fold(k.one(), |acc, x| k.mul(&acc, x));
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            d = k.neg(&d);
        }
        Ok(WittData { rank_parity: (n % 2) as u8, signed_disc: square_class_rep(k, &d)? })
    }

    fn is_trivial(&self, k: &FieldDescriptor) -> bool {
        self.rank_parity == 0 && k.is_one(self.signed_disc.rep())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittFingerprint {
    pub rank: usize,
    pub det_class: SquareClass,
    /// Q only.
    pub signature: Option<i64>,
    /// Q only: primes where the Hasse invariant is −1.
    pub hasse: BTreeSet<BigUint>,
    /// F_p(t) only: nontrivial second residues at finite places.
    pub residues: BTreeMap<Poly, WittData>,
    /// F_p(t) only: first and second residue at infinity.
    pub infinity: Option<(WittData, WittData)>,
}

fn valuation(n: &BigInt, p: &BigUint) -> (u64, BigInt) {
    let p = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    (v, n)
}

fn legendre(u: &BigInt, p: &BigUint) -> i8 {
    let r = u.mod_floor(&BigInt::from(p.clone())).to_biguint().unwrap();
    if r.modpow(&((p - 1u32) >> 1), p).is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` of nonzero integers at a finite prime `p`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigUint) -> i8 {
    assert!(!a.is_zero() && !b.is_zero());
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if *p == BigUint::from(2u32) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u64().unwrap();
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let (u8_, v8) = (m8(&u), m8(&v));
        let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let mut s: i8 = 1;
    let half = ((p - 1u32) >> 1u32).to_u64().map_or(1, |x| x % 2);
    if alpha * beta % 2 == 1 && half == 1 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

fn rational_integer(a: &FieldElement) -> BigInt {
    match a {
        FieldElement::Rational(r) if r.is_integer() => r.numer().clone(),
        _ => panic!("square-class representatives over Q are integers"),
    }
}

fn prime_divisors(n: &BigInt) -> Result<Vec<BigUint>> {
    let mag = n.magnitude().clone();
    if mag <= BigUint::one() {
        return Ok(Vec::new());
    }
    Ok(factor_integer(&mag)?.into_keys().collect())
}

fn hasse_invariant(entries: &[BigInt], p: &BigUint) -> i8 {
    let mut s = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_symbol(&entries[i], &entries[j], p);
        }
    }
    s
}

/// Residue field of `F_p(t)` at a finite place, with the reduction map.
struct ResidueField {
    field: FieldDescriptor,
    pi: TPoly,
    p: u64,
}

impl ResidueField {
    fn new(p: u64, pi: &Poly) -> Result<Self> {
        if pi.field() != &FieldDescriptor::PrimeField(p) || !pi.is_monic() || pi.is_constant() {
            return Err(Error::NotIrreducible);
        }
        if !is_irreducible_finite(pi)? {
            return Err(Error::NotIrreducible);
        }
        let field = if pi.deg() == Some(1) {
            FieldDescriptor::PrimeField(p)
        } else {
            quotient_field(&FieldDescriptor::PrimeField(p), pi)?
        };
        Ok(ResidueField { field, pi: poly_to_tpoly(pi), p })
    }

    fn reduce(&self, a: &TPoly) -> FieldElement {
        let r = a.divrem(&self.pi, self.p).1;
        match &self.field {
            FieldDescriptor::PrimeField(_) => {
                let root = (self.p - self.pi.coeffs()[0]) % self.p;
                FieldElement::Residue(r.eval(root, self.p))
            }
            _ => {
                let base = FieldDescriptor::PrimeField(self.p);
                FieldElement::Extension(dense::trimmed(
                    &base,
                    r.coeffs().iter().map(|&c| FieldElement::Residue(c)).collect(),
                ))
            }
        }
    }

    /// `(valuation, unit residue)` of `num/den`.
    fn split(&self, num: &TPoly, den: &TPoly) -> (i64, FieldElement) {
        let strip = |mut a: TPoly| {
            let mut v = 0i64;
            loop {
                let (q, r) = a.divrem(&self.pi, self.p);
                if !r.is_zero() {
                    return (v, a);
                }
                a = q;
                v += 1;
            }
        };
        let (vn, n) = strip(num.clone());
        let (vd, d) = strip(den.clone());
        let u = self.field.div(&self.reduce(&n), &self.reduce(&d)).expect("unit");
        (vn - vd, u)
    }
}

fn function_parts(a: &FieldElement) -> (&TPoly, &TPoly) {
    match a {
        FieldElement::Function { num, den } => (num, den),
        _ => panic!("expected an element of F_p(t)"),
    }
}

/// Residue units of `a` at `place`: entries whose valuation parity is odd
/// (second residue) or even (first residue).
fn residue_units(a: &GWClass, place: &Place, odd: bool) -> Result<(FieldDescriptor, Vec<FieldElement>)> {
    let FieldDescriptor::RationalFunctionField(p) = *a.field() else {
        return Err(Error::WrongField);
    };
    let entries = a.diagonal_entries();
    match place {
        Place::Finite(pi) => {
            let rf = ResidueField::new(p, pi)?;
            let units = entries
                .iter()
                .filter_map(|x| {
                    let (num, den) = function_parts(x);
                    let (v, u) = rf.split(num, den);
                    ((v.rem_euclid(2) == 1) == odd).then_some(u)
                })
                .collect();
            Ok((rf.field, units))
        }
        Place::Infinity => {
            let k = FieldDescriptor::PrimeField(p);
            let units = entries
                .iter()
                .filter_map(|x| {
                    let (num, den) = function_parts(x);
                    let v = den.degree().unwrap() as i64 - num.degree().unwrap() as i64;
                    let u = k.div(&FieldElement::Residue(num.lc()), &FieldElement::Residue(den.lc())).unwrap();
                    ((v.rem_euclid(2) == 1) == odd).then_some(u)
                })
                .collect();
            Ok((k, units))
        }
    }
}

/// Second residue `∂²_π`: `⟨u·π^e⟩ ↦ ⟨ū⟩` for odd `e`, `0` otherwise.
pub fn second_residue(a: &GWClass, place: &Place) -> Result<GWClass> {
    let (k, units) = residue_units(a, place, true)?;
    super::gw_normalize(&k, &units)
}

/// First residue `∂¹_π`: `⟨u·π^e⟩ ↦ ⟨ū⟩` for even `e`, `0` otherwise.
pub fn first_residue(a: &GWClass, place: &Place) -> Result<GWClass> {
    let (k, units) = residue_units(a, place, false)?;
    super::gw_normalize(&k, &units)
}

/// Finite places dividing some residual entry of `a`.
fn finite_places(a: &GWClass, p: u64) -> Result<BTreeSet<Poly>> {
    let mut out = BTreeSet::new();
    for c in a.residual() {
        let (num, den) = function_parts(c.rep());
        for part in [num, den] {
            if part.degree().unwrap_or(0) > 0 {
                for f in factor_finite(&tpoly_to_poly(&part.monic(p), p))?.factors {
                    out.insert(f.poly);
                }
            }
        }
    }
    Ok(out)
}

pub fn witt_fingerprint(a: &GWClass) -> Result<WittFingerprint> {
    let k = a.field();
    let mut fp = WittFingerprint {
        rank: a.rank(),
        det_class: a.det_class(),
        signature: None,
        hasse: BTreeSet::new(),
        residues: BTreeMap::new(),
        infinity: None,
    };
    match k {
        FieldDescriptor::Rationals => {
            fp.signature = Some(a.signature()?);
            let entries: Vec<BigInt> = a.diagonal_entries().iter().map(rational_integer).collect();
            let mut primes: BTreeSet<BigUint> = BTreeSet::from([BigUint::from(2u32)]);
            for e in a.residual() {
                primes.extend(prime_divisors(&rational_integer(e.rep()))?);
            }
            for p in primes {
                if hasse_invariant(&entries, &p) == -1 {
                    fp.hasse.insert(p);
                }
            }
        }
        FieldDescriptor::RationalFunctionField(p) => {
            for pi in finite_places(a, *p)? {
                let place = Place::Finite(pi.clone());
                let (rk, units) = residue_units(a, &place, true)?;
                let w = WittData::of(&rk, &units)?;
                if !w.is_trivial(&rk) {
                    fp.residues.insert(pi, w);
                }
            }
            let (k0, first) = residue_units(a, &Place::Infinity, false)?;
            let (_, second) = residue_units(a, &Place::Infinity, true)?;
            fp.infinity = Some((WittData::of(&k0, &first)?, WittData::of(&k0, &second)?));
        }
        _ if k.is_finite() => {}
        _ => return Err(Error::UnsupportedField),
    }
    Ok(fp)
}

/// Decides equality in GW(k).
pub fn gw_equal(a: &GWClass, b: &GWClass) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.rank() != b.rank() {
        return Ok(false);
    }
    if a == b {
        return Ok(true);
    }
    Ok(witt_fingerprint(a)? == witt_fingerprint(b)?)
}
