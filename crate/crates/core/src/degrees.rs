//! Global and local A¹-degrees of univariate germs, by the Bézoutian and by
//! the Scheja–Storch form.

use crate::bilinear::{diagonalize, gw_equal, gw_normalize, GWClass, GramMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{self, Matrix};
use crate::poly::{factor_finite, squarefree_split, Poly, RationalFunc};

/// Gram matrix `[c_ij]` of `(f1(x)f2(y) − f1(y)f2(x))/(x − y) = Σ c_ij x^i y^j`.
pub fn bezoutian(f1: &Poly, f2: &Poly) -> Result<GramMatrix> {
    if f1.is_zero() && f2.is_zero() {
        return Err(Error::BothZero);
    }
    let n = f1.deg().unwrap_or(0).max(f2.deg().unwrap_or(0));
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let k = f1.field();
    let mut c = vec![vec![k.zero(); n]; n];
    for (a, fa) in f1.coeffs().iter().enumerate() {
        if k.is_zero(fa) {
            continue;
        }
        for (b, gb) in f2.coeffs().iter().enumerate() {
            if a == b || k.is_zero(gb) {
                continue;
            }
            // (x^a y^b − x^b y^a)/(x − y) = ±(xy)^lo Σ_{i<hi−lo} x^i y^{hi−lo−1−i}
            let (lo, hi) = (a.min(b), a.max(b));
            let w = k.mul(fa, gb);
            let w = if a > b { w } else { k.neg(&w) };
            for i in 0..hi - lo {
                let (r, s) = (lo + i, hi - 1 - i);
                c[r][s] = k.add(&c[r][s], &w);
            }
        }
    }
    GramMatrix::new(k, c)
}

/// Global degree of `f = num/den` as the class of its Bézoutian.
pub fn global_degree(f: &RationalFunc) -> Result<GWClass> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let b = bezoutian(f.num(), f.den())?;
    let (diag, _) = diagonalize(&b)?;
    if diag.iter().any(|d| f.field().is_zero(d)) {
        return Err(Error::DegenerateBezoutian);
    }
    gw_normalize(f.field(), &diag)
}

/// A germ model `F` together with the modulus presenting its local algebra
/// `k[x]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSContext {
    f: Poly,
    modulus: Poly,
}

impl SSContext {
    /// `modulus` must be nonconstant and divide `f`.
    pub fn new(f: Poly, modulus: Poly) -> Result<Self> {
        if modulus.is_constant() {
            return Err(Error::DegreeZero);
        }
        if f.is_zero() || !modulus.divides(&f) {
            return Err(Error::ModulusDoesNotDivide);
        }
        Ok(SSContext { f, modulus: modulus.monic() })
    }

    /// The global algebra `k[x]/(F)`.
    pub fn global(f: Poly) -> Result<Self> {
        Self::new(f.clone(), f)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.deg().unwrap()
    }
}

/// Coefficient vector of length `d`.
fn padded(p: &Poly, d: usize) -> Vec<FieldElement> {
    (0..d).map(|i| p.coeff(i)).collect()
}

/// Scheja–Storch form on `k[x]/(modulus)` in the monomial basis.
///
/// With `r_i = x^i mod M`, the divided difference reduces to
/// `Δ[α][β] = Σ_{i,j} F_{i+j+1} r_i[α] r_j[β]`; the functional `η` solves
/// `Σ_α η(x^α) Δ[α][·] = 1`, and `Gram[a][b] = η(x^{a+b})`.
pub fn scheja_storch_form(ctx: &SSContext) -> Result<GramMatrix> {
    let k = ctx.f.field();
    let d = ctx.dim();
    let m = &ctx.modulus;
    let nf = ctx.f.deg().unwrap();
    let x = Poly::x(k, ctx.f.var());

    // r_i for i < max(nf, 2d − 1)
    let count = nf.max(2 * d - 1);
    let mut r: Matrix = Vec::with_capacity(count);
    let mut cur = Poly::one(k, ctx.f.var()).rem(m)?;
    for _ in 0..count {
        r.push(padded(&cur, d));
        cur = (&cur * &x).rem(m)?;
    }

    // H[i][β] = Σ_j F_{i+j+1} r_j[β], then Δ = Rᵀ H over i < nf
    let fc: Vec<FieldElement> = (0..=nf).map(|i| ctx.f.coeff(i)).collect();
    let mut h: Matrix = vec![vec![k.zero(); d]; nf];
    for i in 0..nf {
        for j in 0..nf - i {
            let c = &fc[i + j + 1];
            if k.is_zero(c) {
                continue;
            }
            for beta in 0..d {
                if !k.is_zero(&r[j][beta]) {
                    let v = k.add(&h[i][beta], &k.mul(c, &r[j][beta]));
                    h[i][beta] = v;
                }
            }
        }
    }
    let rt = linalg::transpose(&r[..nf].to_vec());
    let delta = linalg::mat_mul(k, &rt, &h);

    // Σ_α η_α Δ[α][β] = δ_{β0}
    let theta = linalg::transpose(&delta);
    let mut rhs = vec![k.zero(); d];
    rhs[0] = k.one();
    let eta = linalg::solve(k, &theta, &rhs)?;

    let eta_of = |v: &[FieldElement]| {
        v.iter().zip(&eta).fold(k.zero(), |acc, (a, e)| if k.is_zero(a) { acc } else { k.add(&acc, &k.mul(a, e)) })
    };
    let gram = (0..d).map(|a| (0..d).map(|b| eta_of(&r[a + b])).collect()).collect();
    GramMatrix::new(k, gram)
}

/// Class of the Scheja–Storch form.
pub fn scheja_storch_class(ctx: &SSContext) -> Result<GWClass> {
    scheja_storch_form(ctx)?.class()
}

fn local_class_at(num: &Poly, den: &Poly, pi: &Poly, m: usize, n: usize) -> Result<GWClass> {
    let big = pi.pow(n);
    let (g, inv, _) = den.gcd_extended(&big)?;
    if !g.is_one() {
        return Err(Error::DenominatorVanishes);
    }
    let f = (num * &inv).rem(&big)?;
    scheja_storch_class(&SSContext::new(f, pi.pow(m))?)
}

/// Local degree of `f` at the cluster `π` where `π^m` exactly divides the numerator.
///
/// The germ is modelled by `num · den⁻¹ mod π^{2m+1}`; the class is
/// recomputed with `π^{2m+2}` and must agree.
pub fn local_degree(f: &RationalFunc, pi: &Poly, m: usize) -> Result<GWClass> {
    if m == 0 {
        return Err(Error::NotAZero);
    }
    if pi.is_constant() {
        return Err(Error::DegreeZero);
    }
    let pi = pi.monic();
    if !f.den().gcd(&pi).is_one() {
        return Err(Error::DenominatorVanishes);
    }
    if f.num().is_zero() || f.num().multiplicity_of(&pi) != m {
        return Err(Error::WrongMultiplicity);
    }
    let rest = f.num().div_exact(&pi.pow(m));
    if !rest.gcd(&pi).is_one() {
        return Err(Error::WrongMultiplicity);
    }
    let a = local_class_at(f.num(), f.den(), &pi, m, 2 * m + 1)?;
    let b = local_class_at(f.num(), f.den(), &pi, m, 2 * m + 2)?;
    if !gw_equal(&a, &b)? {
        return Err(Error::UnstableTruncation);
    }
    Ok(a)
}

/// Sum of local degrees over the fibre of `f` above `0`: the coprime clusters
/// of the numerator, plus `v = 0` when `deg num < deg den`.
///
/// Independent of the Bézoutian; the two agree for every nonconstant reduced `f`.
pub fn fibre_degree(f: &RationalFunc) -> Result<GWClass> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let k = f.field();
    let mut total = GWClass::zero(k);
    if !f.num().is_constant() {
        let split = if k.is_finite() { factor_finite(f.num())? } else { squarefree_split(f.num())? };
        for fac in split.factors {
            total = total.add(&local_degree(f, &fac.poly, fac.multiplicity)?)?;
        }
    }
    let (dn, dd) = (f.num().deg().unwrap_or(0), f.den().deg().unwrap_or(0));
    if dn < dd {
        let g = crate::hurwitz::in_v_chart(f);
        total = total.add(&local_degree(&g, &Poly::x(k, 'v'), dd - dn)?)?;
    }
    Ok(total)
}
