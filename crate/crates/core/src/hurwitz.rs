//! The differential of a rational self-map of P¹ in charts, its zero locus,
//! and the Riemann–Hurwitz check in GW(k).
//!
//! Atlas: `y` and `v = −1/y` on the source, `x` and `z = −1/x` on the target.
//! Both transition derivatives are squares, so chart expressions of `df`
//! agree up to square units on overlaps.

use std::fmt;

use crate::bilinear::{gw_equal, GWClass};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::poly::{factor_finite, squarefree_split, Poly, RationalFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SourceChart {
    Y,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TargetChart {
    X,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chart {
    pub source: SourceChart,
    pub target: TargetChart,
}

impl Chart {
    pub const YX: Chart = Chart { source: SourceChart::Y, target: TargetChart::X };
    pub const YZ: Chart = Chart { source: SourceChart::Y, target: TargetChart::Z };
    pub const VX: Chart = Chart { source: SourceChart::V, target: TargetChart::X };
    pub const VZ: Chart = Chart { source: SourceChart::V, target: TargetChart::Z };
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.source {
            SourceChart::Y => "Y",
            SourceChart::V => "V",
        };
        let t = match self.target {
            TargetChart::X => "X",
            TargetChart::Z => "Z",
        };
        write!(f, "({s},{t})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// Monic polynomial in the source variable `y`.
    Finite(Poly),
    /// `v = 0`.
    AtInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCluster {
    pub chart: Chart,
    pub locus: Locus,
    /// Exact order of the cluster polynomial in the chart Wronskian.
    pub multiplicity: usize,
    pub residue_degree: usize,
    pub local_index: Option<GWClass>,
}

impl ZeroCluster {
    /// Uniformizing polynomial in the chart variable.
    pub fn pi(&self, k: &FieldDescriptor) -> Poly {
        match &self.locus {
            Locus::Finite(p) => p.clone(),
            Locus::AtInfinity => Poly::x(k, 'v'),
        }
    }
}

/// `(1 − g)·h`, possibly a negative (virtual) multiple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerClass {
    pub hyperbolic_multiple: i64,
}

impl EulerClass {
    pub fn is_virtual(&self) -> bool {
        self.hyperbolic_multiple < 0
    }

    pub fn class(&self, k: &FieldDescriptor) -> Result<GWClass> {
        if self.is_virtual() {
            return Err(Error::VirtualClass);
        }
        Ok(GWClass::hyperbolic(k, self.hyperbolic_multiple as usize))
    }
}

impl fmt::Display for EulerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hyperbolic_multiple {
            0 => write!(f, "0"),
            1 => write!(f, "h"),
            -1 => write!(f, "-h"),
            n => write!(f, "{n}h"),
        }
    }
}

pub fn euler_char_a1(genus: u64) -> EulerClass {
    EulerClass { hyperbolic_multiple: 1 - genus as i64 }
}

/// Expected total index `h·(g(Y) − 1 + d·(1 − g(X)))` for a degree-`d` map `Y → X`.
pub fn expected_total(d: usize, genus_source: u64, genus_target: u64) -> EulerClass {
    let src = euler_char_a1(genus_source).hyperbolic_multiple;
    let tgt = euler_char_a1(genus_target).hyperbolic_multiple;
    EulerClass { hyperbolic_multiple: d as i64 * tgt - src }
}

/// `f(−1/v)` as a reduced fraction in `v`.
pub fn in_v_chart(f: &RationalFunc) -> RationalFunc {
    let k = f.field();
    let d = f.map_degree();
    // v^d·P(−1/v): coefficient of v^{d−i} is (−1)^i p_i
    let flip = |p: &Poly| {
        let mut c = vec![k.zero(); d + 1];
        for (i, a) in p.coeffs().iter().enumerate() {
            c[d - i] = if i % 2 == 0 { a.clone() } else { k.neg(a) };
        }
        Poly::new(k, c, 'v')
    };
    RationalFunc::new(flip(f.num()), flip(f.den())).expect("nonzero denominator")
}

fn wronskian(f: &RationalFunc) -> Poly {
    &(&f.num().derivative() * f.den()) - &(f.num() * &f.den().derivative())
}

/// `df` as a scalar function in the given chart.
pub fn df_expression(f: &RationalFunc, chart: Chart) -> Result<RationalFunc> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let g = match chart.source {
        SourceChart::Y => f.clone(),
        SourceChart::V => in_v_chart(f),
    };
    let w = wronskian(&g);
    let den = match chart.target {
        TargetChart::X => g.den().pow(2),
        TargetChart::Z => g.num().pow(2),
    };
    RationalFunc::new(w, den)
}

/// Splits `g` into the part sharing roots with `d` and the part coprime to it.
fn split_by(g: &Poly, d: &Poly) -> (Poly, Poly) {
    let mut coprime = g.clone();
    loop {
        let h = coprime.gcd(d);
        if h.is_constant() {
            break;
        }
        coprime = coprime.div_exact(&h);
    }
    let coprime = coprime.monic();
    (g.div_exact(&coprime).monic(), coprime)
}

/// Zero clusters of `df`: coprime clusters on the `y` chart, plus `v = 0`.
pub fn critical_locus(f: &RationalFunc) -> Result<Vec<ZeroCluster>> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let k = f.field();
    let w = wronskian(f);
    if w.is_zero() {
        return Err(Error::NonSeparable);
    }
    let mut clusters = Vec::new();
    if !w.is_constant() {
        let factors = if k.is_finite() { factor_finite(&w)? } else { squarefree_split(&w)? };
        for fac in factors.factors {
            let (at_pole, regular) = split_by(&fac.poly, f.den());
            for (pi, target) in [(regular, TargetChart::X), (at_pole, TargetChart::Z)] {
                if pi.is_constant() {
                    continue;
                }
                clusters.push(ZeroCluster {
                    chart: Chart { source: SourceChart::Y, target },
                    residue_degree: pi.deg().unwrap(),
                    locus: Locus::Finite(pi),
                    multiplicity: fac.multiplicity,
                    local_index: None,
                });
            }
        }
    }
    clusters.sort_by(|a, b| match (&a.locus, &b.locus) {
        (Locus::Finite(p), Locus::Finite(q)) => p.cmp(q),
        _ => std::cmp::Ordering::Equal,
    });

    let g = in_v_chart(f);
    let wv = wronskian(&g);
    let v = Poly::x(k, 'v');
    if v.divides(&wv) {
        let target = if v.divides(g.den()) { TargetChart::Z } else { TargetChart::X };
        clusters.push(ZeroCluster {
            chart: Chart { source: SourceChart::V, target },
            locus: Locus::AtInfinity,
            multiplicity: wv.multiplicity_of(&v),
            residue_degree: 1,
            local_index: None,
        });
    }
    Ok(clusters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub got: i64,
    pub want: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RHReport {
    pub map: RationalFunc,
    pub field: FieldDescriptor,
    pub degree: usize,
    pub separable: bool,
    pub clusters: Vec<ZeroCluster>,
    pub total: GWClass,
    pub expected: GWClass,
    pub verdict: bool,
    pub rank_check: Check,
    /// Q only.
    pub signature_check: Option<Check>,
    /// Human-readable remarks; not part of the machine-readable record.
    pub notes: Vec<String>,
}

/// Local index of `df` at `cluster`, computed on `α·(chart expression)`.
pub fn cluster_index(f: &RationalFunc, cluster: &ZeroCluster, alpha: &FieldElement) -> Result<GWClass> {
    let k = f.field();
    let expr = df_expression(f, cluster.chart)?.scale(alpha);
    crate::degrees::local_degree(&expr, &cluster.pi(k), cluster.multiplicity)
}

pub fn rh_verify(f: &RationalFunc) -> Result<RHReport> {
    rh_verify_scaled(f, &f.field().one())
}

/// As [`rh_verify`] with every chart expression multiplied by the unit `alpha`.
pub fn rh_verify_scaled(f: &RationalFunc, alpha: &FieldElement) -> Result<RHReport> {
    let k = f.field();
    if k.is_zero(alpha) {
        return Err(Error::ZeroUnit);
    }
    let mut clusters = critical_locus(f)?;
    let mut total = GWClass::zero(k);
    let mut rank = 0;
    for c in clusters.iter_mut() {
        let idx = cluster_index(f, c, alpha)?;
        rank += idx.rank();
        total = total.add(&idx)?;
        c.local_index = Some(idx);
    }
    let d = f.map_degree();
    let expected = expected_total(d, 0, 0).class(k)?;
    let verdict = gw_equal(&total, &expected)?;
    let rank_check = Check { got: rank as i64, want: 2 * d as i64 - 2, pass: rank + 2 == 2 * d };
    let signature_check = if *k == FieldDescriptor::Rationals {
        let s = total.signature()?;
        Some(Check { got: s, want: 0, pass: s == 0 })
    } else {
        None
    };
    let notes = wild_infinity_note(f, &clusters);
    Ok(RHReport {
        map: f.clone(),
        field: k.clone(),
        degree: d,
        separable: true,
        clusters,
        total,
        expected,
        verdict,
        rank_check,
        signature_check,
        notes,
    })
}

/// `a·y^p + b·y + c` in characteristic `p`: everything is concentrated at a
/// wild point at infinity of rank `2p − 2`.
fn wild_infinity_note(f: &RationalFunc, clusters: &[ZeroCluster]) -> Vec<String> {
    let p = f.field().characteristic() as usize;
    let only_infinity = clusters.len() == 1 && clusters[0].locus == Locus::AtInfinity;
    if p == 0 || !f.den().is_one() || f.num().deg() != Some(p) || !only_infinity {
        return Vec::new();
    }
    let c = &clusters[0];
    let idx = c.local_index.as_ref().map_or("?".into(), |i| i.to_string());
    vec![format!(
        "index at infinity is {idx} on a local algebra of dimension {m} = 2p-2; a hyperbolic coefficient of (p-1)/2 \
         would have rank p-1, inconsistent with this {m}x{m} nondegenerate form and with the total (d-1)h = {}h",
        p - 1,
        m = c.multiplicity,
    )]
}

/// `⟨a·e⟩ · Σ_{i=0}^{e−2} ⟨(−1)^i⟩`.
pub fn tame_branch_index(k: &FieldDescriptor, a: &FieldElement, e: usize) -> Result<GWClass> {
    if e == 0 {
        return Err(Error::NotAZero);
    }
    let ae = k.mul(a, &k.from_i64(e as i64));
    if k.is_zero(&ae) {
        return Err(Error::ZeroUnit);
    }
    let mut sum = GWClass::zero(k);
    let mut sign = k.one();
    for _ in 0..e - 1 {
        sum = sum.add(&GWClass::unit(k, &sign)?)?;
        sign = k.neg(&sign);
    }
    sum.scale(&ae)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealReport {
    pub signature_finite: i64,
    pub parity_expected: i64,
    pub pass: bool,
}

/// Signature of the affine part of the index of `df` for a monic real polynomial;
/// minima count `+1`, so the expected value is `0` for odd degree and `+1` for even.
pub fn real_critical_report(f: &Poly) -> Result<RealReport> {
    if *f.field() != FieldDescriptor::Rationals {
        return Err(Error::WrongField);
    }
    if f.deg().unwrap_or(0) < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let map = RationalFunc::from_poly(f.clone());
    let one = f.field().one();
    let mut total = GWClass::zero(f.field());
    for c in critical_locus(&map)? {
        if c.chart.source == SourceChart::Y {
            total = total.add(&cluster_index(&map, &c, &one)?)?;
        }
    }
    let signature_finite = total.signature()?;
    let parity_expected = if f.deg().unwrap() % 2 == 0 { 1 } else { 0 };
    Ok(RealReport { signature_finite, parity_expected, pass: signature_finite == parity_expected })
}
