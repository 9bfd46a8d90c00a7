//! Grothendieck–Witt classes `n·h + Σ⟨a_i⟩`.
//!
//! Normal form: each diagonal entry is replaced by its canonical square-class
//! representative and `{⟨a⟩, ⟨−a⟩}` pairs are moved into the hyperbolic count.
//! On top of that,
//! * over finite fields the residual is fully canonical (determined by rank
//!   and determinant), so structural equality is GW equality;
//! * over `F_p(t)` entries sharing the same monic part `g` are canonicalized
//!   as `⟨g⟩ ⊗ (form over F_p)`.
//!
//! Structural equality is therefore sound but not complete off finite fields;
//! use [`super::gw_equal`] to decide equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{is_square, square_class_rep, squarefree_product, FieldDescriptor, FieldElement, SquareClass, TPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWClass {
    field: FieldDescriptor,
    hyperbolic_count: usize,
    /// Sorted.
    residual: Vec<SquareClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GwOp {
    Add,
    Tensor,
}

impl GWClass {
    pub fn zero(k: &FieldDescriptor) -> Self {
        GWClass { field: k.clone(), hyperbolic_count: 0, residual: Vec::new() }
    }

    /// `n·h`.
    pub fn hyperbolic(k: &FieldDescriptor, n: usize) -> Self {
        GWClass { field: k.clone(), hyperbolic_count: n, residual: Vec::new() }
    }

    /// `⟨a⟩`.
    pub fn unit(k: &FieldDescriptor, a: &FieldElement) -> Result<Self> {
        gw_normalize(k, std::slice::from_ref(a))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn hyperbolic_count(&self) -> usize {
        self.hyperbolic_count
    }

    pub fn residual(&self) -> &[SquareClass] {
        &self.residual
    }

    pub fn rank(&self) -> usize {
        2 * self.hyperbolic_count + self.residual.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Diagonal entries of a representative form, with each `h` written as `⟨1⟩ + ⟨−1⟩`.
    pub fn diagonal_entries(&self) -> Vec<FieldElement> {
        let k = &self.field;
        let mut out = Vec::with_capacity(self.rank());
        for _ in 0..self.hyperbolic_count {
            out.push(k.one());
            out.push(k.neg(&k.one()));
        }
        out.extend(self.residual.iter().map(|c| c.rep().clone()));
        out
    }

    /// Square class of the determinant of any representative.
    pub fn det_class(&self) -> SquareClass {
        let k = &self.field;
        if *k == FieldDescriptor::Rationals {
            // representatives are squarefree integers: merge kernels without refactoring
            let mut d = BigInt::from(if self.hyperbolic_count % 2 == 1 { -1 } else { 1 });
            for c in &self.residual {
                let FieldElement::Rational(r) = c.rep() else { unreachable!() };
                d = squarefree_product(&d, r.numer());
            }
            return square_class_rep(k, &k.from_bigint(&d)).expect("squarefree integer");
        }
        let d = self.diagonal_entries().iter().fold(k.one(), |acc, x| k.mul(&acc, x));
        square_class_rep(k, &d).expect("nonzero determinant")
    }

    pub fn add(&self, other: &GWClass) -> Result<GWClass> {
        gw_ring_op(self, other, GwOp::Add)
    }

    pub fn tensor(&self, other: &GWClass) -> Result<GWClass> {
        gw_ring_op(self, other, GwOp::Tensor)
    }

    /// `⟨a⟩ ⊗ self`.
    pub fn scale(&self, a: &FieldElement) -> Result<GWClass> {
        self.tensor(&GWClass::unit(&self.field, a)?)
    }

    /// `n·self`.
    pub fn times(&self, n: usize) -> GWClass {
        let mut acc = GWClass::zero(&self.field);
        for _ in 0..n {
            acc = acc.add(self).expect("same field");
        }
        acc
    }

    /// Signature over Q: positive minus negative residual entries.
    pub fn signature(&self) -> Result<i64> {
        if self.field != FieldDescriptor::Rationals {
            return Err(Error::WrongField);
        }
        Ok(self
            .residual
            .iter()
            .map(|c| self.field.sign(c.rep()).unwrap() as i64)
            .sum())
    }

    /// Residual representatives rendered in the field's syntax.
    pub fn residual_strings(&self) -> Vec<String> {
        self.residual.iter().map(|c| self.field.render(c.rep())).collect()
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.hyperbolic_count {
            0 => {}
            1 => terms.push("h".to_string()),
            n => terms.push(format!("{n}h")),
        }
        terms.extend(self.residual_strings().into_iter().map(|s| format!("<{s}>")));
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `(hyperbolic count, residual)` for a diagonal form over a finite field,
/// determined by rank and determinant class.
fn canonical_finite(k: &FieldDescriptor, entries: &[FieldElement]) -> Result<(usize, Vec<SquareClass>)> {
    let r = entries.len();
    if r == 0 {
        return Ok((0, Vec::new()));
    }
    let d = entries.iter().fold(k.one(), |acc, x| k.mul(&acc, x));
    let minus_one = k.neg(&k.one());
    let sign_pow = |e: usize| if e % 2 == 0 { k.one() } else { minus_one.clone() };
    if r % 2 == 1 {
        let last = k.mul(&d, &sign_pow((r - 1) / 2));
        return Ok(((r - 1) / 2, vec![square_class_rep(k, &last)?]));
    }
    let half = r / 2;
    if is_square(k, &k.mul(&d, &sign_pow(half)))? {
        return Ok((half, Vec::new()));
    }
    let last = k.mul(&d, &sign_pow(half - 1));
    let mut res = vec![square_class_rep(k, &k.one())?, square_class_rep(k, &last)?];
    res.sort();
    Ok((half - 1, res))
}

/// Greedy removal of `{⟨a⟩, ⟨−a⟩}` pairs.
fn extract_pairs(k: &FieldDescriptor, classes: Vec<SquareClass>) -> Result<(usize, Vec<SquareClass>)> {
    let mut pool: Vec<SquareClass> = Vec::with_capacity(classes.len());
    let mut h = 0;
    for c in classes {
        let neg = square_class_rep(k, &k.neg(c.rep()))?;
        if let Some(pos) = pool.iter().position(|x| *x == neg) {
            pool.swap_remove(pos);
            h += 1;
        } else {
            pool.push(c);
        }
    }
    pool.sort();
    Ok((h, pool))
}

fn normalize_function_field(p: u64, classes: Vec<SquareClass>) -> Result<(usize, Vec<SquareClass>)> {
    let k = FieldDescriptor::RationalFunctionField(p);
    let base = FieldDescriptor::PrimeField(p);
    let mut groups: BTreeMap<TPoly, Vec<FieldElement>> = BTreeMap::new();
    for c in classes {
        let FieldElement::Function { num, .. } = c.rep() else { unreachable!() };
        groups.entry(num.monic(p)).or_default().push(FieldElement::Residue(num.lc()));
    }
    let mut h = 0;
    let mut residual = Vec::new();
    for (g, units) in groups {
        let (gh, gres) = canonical_finite(&base, &units)?;
        h += gh;
        for u in gres {
            let FieldElement::Residue(c) = u.rep() else { unreachable!() };
            let a = k.function(g.scale(*c, p), TPoly::constant(1, p))?;
            residual.push(square_class_rep(&k, &a)?);
        }
    }
    residual.sort();
    Ok((h, residual))
}

/// Class of the diagonal form `⟨d_1, …, d_n⟩`.
pub fn gw_normalize(k: &FieldDescriptor, diag: &[FieldElement]) -> Result<GWClass> {
    let mut classes = Vec::with_capacity(diag.len());
    for d in diag {
        if !k.contains(d) {
            return Err(Error::FieldMismatch);
        }
        if k.is_zero(d) {
            return Err(Error::ZeroDiagonalEntry);
        }
        classes.push(square_class_rep(k, d)?);
    }
    let (hyperbolic_count, residual) = if k.is_finite() {
        let reps: Vec<_> = classes.into_iter().map(SquareClass::into_rep).collect();
        canonical_finite(k, &reps)?
    } else if let FieldDescriptor::RationalFunctionField(p) = k {
        normalize_function_field(*p, classes)?
    } else {
        extract_pairs(k, classes)?
    };
    Ok(GWClass { field: k.clone(), hyperbolic_count, residual })
}

pub fn gw_ring_op(a: &GWClass, b: &GWClass, op: GwOp) -> Result<GWClass> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let k = &a.field;
    match op {
        GwOp::Add => {
            let reps: Vec<_> = a.residual.iter().chain(&b.residual).map(|c| c.rep().clone()).collect();
            let mut out = gw_normalize(k, &reps)?;
            out.hyperbolic_count += a.hyperbolic_count + b.hyperbolic_count;
            Ok(out)
        }
        GwOp::Tensor => {
            // h⊗h = 2h and h⊗⟨a⟩ = h
            let hyp = 2 * a.hyperbolic_count * b.hyperbolic_count
                + a.hyperbolic_count * b.residual.len()
                + b.hyperbolic_count * a.residual.len();
            let mut prods = Vec::with_capacity(a.residual.len() * b.residual.len());
            for x in &a.residual {
                for y in &b.residual {
                    prods.push(k.mul(x.rep(), y.rep()));
                }
            }
            let mut out = gw_normalize(k, &prods)?;
            out.hyperbolic_count += hyp;
            Ok(out)
        }
    }
}
