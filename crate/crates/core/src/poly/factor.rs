//! Squarefree splitting over any supported field and complete factorization
//! over finite fields (distinct-degree plus Cantor–Zassenhaus).

use std::cell::Cell;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, TPoly};

pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_a1a1;

thread_local! {
    static FACTOR_SEED: Cell<u64> = const { Cell::new(DEFAULT_FACTOR_SEED) };
}

/// Seed used by [`factor_finite`] on this thread.
pub fn factor_seed() -> u64 {
    FACTOR_SEED.with(|s| s.get())
}

/// Runs `f` with the factorization seed set to `seed`, restoring the previous
/// value afterwards.
pub fn with_factor_seed<R>(seed: u64, f: impl FnOnce() -> R) -> R {
    let prev = FACTOR_SEED.with(|s| s.replace(seed));
    let out = f();
    FACTOR_SEED.with(|s| s.set(prev));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Monic, nonconstant.
    pub poly: Poly,
    pub multiplicity: usize,
    /// Known to be irreducible (always true for [`factor_finite`] output).
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeFactorization {
    pub unit: FieldElement,
    /// Pairwise coprime, sorted.
    pub factors: Vec<Factor>,
}

impl CoprimeFactorization {
    /// `unit · Π factor^multiplicity`.
    pub fn expand(&self, k: &FieldDescriptor, var: char) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(k, self.unit.clone(), var), |acc, f| &acc * &f.poly.pow(f.multiplicity))
    }
}

fn sqf_monic(a: &Poly, out: &mut Vec<(Poly, usize)>, scale: usize) {
    if a.is_constant() {
        return;
    }
    let da = a.derivative();
    if da.is_zero() {
        sqf_inseparable(a, out, scale);
        return;
    }
    let mut c = a.gcd(&da);
    let mut w = a.div_exact(&c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_constant() {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_constant() {
        // c' = 0 here, so c lies in k[x^p]
        sqf_inseparable(&c, out, scale);
    }
}

/// `a` monic with `a' = 0` (characteristic p).
fn sqf_inseparable(a: &Poly, out: &mut Vec<(Poly, usize)>, scale: usize) {
    let k = a.field();
    let p = k.characteristic() as usize;
    assert!(p > 0, "zero derivative of nonconstant polynomial in characteristic 0");
    let s = a.contract(p).expect("zero derivative implies a polynomial in x^p");
    if let Some(r) = pth_root_poly(&s) {
        sqf_monic(&r, out, scale * p);
        return;
    }
    let mut inner = Vec::new();
    sqf_monic(&s, &mut inner, 1);
    for (g, e) in inner {
        // g squarefree; A = gcd(g, ∂_t g) collects the monic irreducible factors
        // with coefficients in k^p, whose expansions are p-th powers.
        let a_part = match t_derivative(&g) {
            Some(dg) if !dg.is_zero() => g.gcd(&dg),
            _ => g.clone(),
        };
        let b_part = g.div_exact(&a_part);
        if !b_part.is_constant() {
            out.push((b_part.expand(p), e * scale));
        }
        if !a_part.is_constant() {
            match pth_root_poly(&a_part) {
                Some(r) => sqf_monic(&r, out, e * scale * p),
                None => out.push((a_part.expand(p), e * scale)),
            }
        }
    }
}

/// Coefficientwise p-th root: `r` with `r(x)^p = a(x^p)`.
fn pth_root_poly(a: &Poly) -> Option<Poly> {
    let k = a.field();
    let roots: Option<Vec<FieldElement>> = a.coeffs().iter().map(|c| k.pth_root(c)).collect();
    roots.map(|r| Poly::new(k, r, a.var()))
}

/// Coefficientwise `d/dt` over `F_p(t)`; `None` on other fields.
fn t_derivative(a: &Poly) -> Option<Poly> {
    let k = a.field();
    let p = match k {
        FieldDescriptor::RationalFunctionField(p) => *p,
        _ => return None,
    };
    let dpoly = |x: &TPoly| {
        TPoly::from_coeffs(x.coeffs().iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
    };
    let coeffs = a
        .coeffs()
        .iter()
        .map(|c| match c {
            FieldElement::Function { num, den } => {
                let n = dpoly(num).mul(den, p).sub(&num.mul(&dpoly(den), p), p);
                k.function(n, den.mul(den, p)).expect("nonzero denominator")
            }
            _ => unreachable!(),
        })
        .collect();
    Some(Poly::new(k, coeffs, a.var()))
}

/// Pairwise-coprime factorization `a = unit · Π f_i^{m_i}` with monic `f_i`.
///
/// Over perfect fields every `f_i` is squarefree. Over `F_p(t)` a factor whose
/// derivative vanishes and whose coefficients are not all p-th powers (such as
/// `y^p - t`) is kept whole with the multiplicity it has in `a`.
pub fn squarefree_split(a: &Poly) -> Result<CoprimeFactorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = a.lc();
    let mut raw = Vec::new();
    sqf_monic(&a.monic(), &mut raw, 1);
    let finite = a.field().is_finite();
    let mut factors: Vec<Factor> = raw
        .into_iter()
        .map(|(poly, multiplicity)| {
            let irreducible = poly.deg() == Some(1) || (finite && is_irreducible_finite(&poly).unwrap_or(false));
            Factor { poly, multiplicity, irreducible }
        })
        .collect();
    factors.sort_by(|a, b| a.poly.cmp(&b.poly).then(a.multiplicity.cmp(&b.multiplicity)));
    Ok(CoprimeFactorization { unit, factors })
}

fn random_element(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    match k {
        FieldDescriptor::PrimeField(p) => FieldElement::Residue(rng.gen_range(0..*p)),
        FieldDescriptor::QuotientExtension(q) => {
            let d = q.modulus.deg().unwrap();
            let coeffs = (0..d).map(|_| random_element(&q.base, rng)).collect();
            FieldElement::Extension(super::dense::trimmed(&q.base, coeffs))
        }
        _ => unreachable!("random elements only for finite fields"),
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Poly, q: &BigUint) -> Vec<(Poly, usize)> {
    let k = f.field();
    let x = Poly::x(k, f.var());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg().unwrap_or(0) >= 2 * d {
        h = h.powmod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let n = rest.deg().unwrap();
        out.push((rest, n));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles (odd `q`).
fn equal_degree(f: &Poly, d: usize, q: &BigUint, rng: &mut impl Rng, out: &mut Vec<Poly>) {
    let n = f.deg().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let k = f.field();
    let exp = (q.pow(d as u32) - 1u32) >> 1;
    let one = Poly::one(k, f.var());
    loop {
        let r = Poly::new(k, (0..n).map(|_| random_element(k, rng)).collect(), f.var());
        if r.is_constant() {
            continue;
        }
        let b = &r.powmod(&exp, f) - &one;
        let g = b.gcd(f);
        if !g.is_constant() && g.deg() != Some(n) {
            let other = f.div_exact(&g);
            equal_degree(&g, d, q, rng, out);
            equal_degree(&other, d, q, rng, out);
            return;
        }
    }
}

/// Complete factorization over a finite field into monic irreducibles, using
/// the thread's factorization seed.
pub fn factor_finite(a: &Poly) -> Result<CoprimeFactorization> {
    let mut rng = ChaCha8Rng::seed_from_u64(factor_seed());
    factor_finite_with_rng(a, &mut rng)
}

pub fn factor_finite_with_rng(a: &Poly, rng: &mut impl Rng) -> Result<CoprimeFactorization> {
    let k = a.field();
    if !k.is_finite() {
        return Err(Error::NotFiniteField);
    }
    if a.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let q = k.order().unwrap();
    let sqf = squarefree_split_raw(a);
    let mut factors = Vec::new();
    for (g, m) in sqf {
        for (h, d) in distinct_degree(&g, &q) {
            let mut irr = Vec::new();
            equal_degree(&h, d, &q, rng, &mut irr);
            factors.extend(irr.into_iter().map(|poly| Factor { poly, multiplicity: m, irreducible: true }));
        }
    }
    factors.sort_by(|a, b| a.poly.cmp(&b.poly));
    Ok(CoprimeFactorization { unit: a.lc(), factors })
}

fn squarefree_split_raw(a: &Poly) -> Vec<(Poly, usize)> {
    let mut raw = Vec::new();
    sqf_monic(&a.monic(), &mut raw, 1);
    raw
}

/// Irreducibility over a finite field.
pub fn is_irreducible_finite(a: &Poly) -> Result<bool> {
    let k = a.field();
    if !k.is_finite() {
        return Err(Error::NotFiniteField);
    }
    let n = match a.deg() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = a.monic();
    if f.derivative().is_zero() || !f.gcd(&f.derivative()).is_one() {
        return Ok(false);
    }
    let dd = distinct_degree(&f, &k.order().unwrap());
    Ok(dd.len() == 1 && dd[0].1 == n)
}
