//! Symmetric bilinear forms: congruence diagonalization, Grothendieck–Witt
//! classes and their invariants, and transfer along finite extensions.

mod gw;
mod invariants;
mod transfer;

pub use gw::{gw_normalize, gw_ring_op, GWClass, GwOp};
pub use invariants::{
    first_residue, gw_equal, hilbert_symbol, second_residue, witt_fingerprint, Place, WittData, WittFingerprint,
};
pub use transfer::{field_trace, trace_transfer};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg::{self, Matrix};

/// Gram matrix of a symmetric bilinear form on `k^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    field: FieldDescriptor,
    entries: Matrix,
}

impl GramMatrix {
    pub fn new(k: &FieldDescriptor, entries: Matrix) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        if entries.iter().flatten().any(|x| !k.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramMatrix { field: k.clone(), entries })
    }

    pub fn diagonal(k: &FieldDescriptor, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { k.zero() }).collect())
            .collect();
        GramMatrix { field: k.clone(), entries }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i][j]
    }

    /// `PᵀGP`.
    pub fn congruent(&self, p: &Matrix) -> GramMatrix {
        GramMatrix { field: self.field.clone(), entries: linalg::congruence(&self.field, &self.entries, p) }
    }

    pub fn det(&self) -> FieldElement {
        linalg::det(&self.field, &self.entries)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.field.is_zero(&self.det())
    }

    /// Grothendieck–Witt class; fails on degenerate forms.
    pub fn class(&self) -> Result<GWClass> {
        let (diag, _) = diagonalize(self)?;
        gw_normalize(&self.field, &diag)
    }

    /// Entries rendered row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|x| self.field.render(x)).collect()).collect()
    }
}

/// `G[:,a] += c·G[:,b]`, `G[a,:] += c·G[b,:]`, `P[:,a] += c·P[:,b]`.
fn add_multiple(k: &FieldDescriptor, g: &mut Matrix, p: &mut Matrix, a: usize, b: usize, c: &FieldElement) {
    let n = g.len();
    for r in 0..n {
        let v = k.add(&g[r][a], &k.mul(c, &g[r][b]));
        g[r][a] = v;
    }
    for col in 0..n {
        let v = k.add(&g[a][col], &k.mul(c, &g[b][col]));
        g[a][col] = v;
    }
    for row in p.iter_mut() {
        let v = k.add(&row[a], &k.mul(c, &row[b]));
        row[a] = v;
    }
}

fn swap(g: &mut Matrix, p: &mut Matrix, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    for row in p.iter_mut() {
        row.swap(a, b);
    }
}

/// Congruence diagonalization: returns `(diag, P)` with `PᵀGP = diag(diag)`.
/// Zero entries in `diag` mean the form is degenerate.
pub fn diagonalize(g: &GramMatrix) -> Result<(Vec<FieldElement>, Matrix)> {
    let k = &g.field;
    if k.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = g.dim();
    let mut m = g.entries.clone();
    let mut p = linalg::identity(k, n);
    let one = k.one();
    for i in 0..n {
        if k.is_zero(&m[i][i]) {
            if let Some(j) = (i + 1..n).find(|&j| !k.is_zero(&m[j][j])) {
                swap(&mut m, &mut p, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !k.is_zero(&m[i][j])) {
                // new pivot 2·G_ij, nonzero in odd characteristic
                add_multiple(k, &mut m, &mut p, i, j, &one);
            } else {
                continue;
            }
        }
        let inv = k.inv(&m[i][i])?;
        for j in i + 1..n {
            if k.is_zero(&m[i][j]) {
                continue;
            }
            let c = k.neg(&k.mul(&m[i][j], &inv));
            add_multiple(k, &mut m, &mut p, j, i, &c);
        }
    }
    Ok(((0..n).map(|i| m[i][i].clone()).collect(), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_diagonalization(g: &GramMatrix) -> Vec<FieldElement> {
        let k = g.field();
        let (diag, p) = diagonalize(g).unwrap();
        assert_eq!(g.congruent(&p), GramMatrix::diagonal(k, &diag));
        assert!(!k.is_zero(&linalg::det(k, &p)));
        diag
    }

    #[test]
    fn hyperbolic_plane_over_function_field() {
        for p in [3u64, 5, 7] {
            let k = FieldDescriptor::RationalFunctionField(p);
            let t = k.t().unwrap();
            let g = GramMatrix::new(&k, vec![vec![k.zero(), t.clone()], vec![t.clone(), k.zero()]]).unwrap();
            let diag = check_diagonalization(&g);
            let two_t = k.mul(&k.from_i64(2), &t);
            let classes: Vec<_> =
                diag.iter().map(|d| crate::field::square_class_rep(&k, d).unwrap()).collect();
            assert!(classes.contains(&crate::field::square_class_rep(&k, &two_t).unwrap()));
            assert!(classes.contains(&crate::field::square_class_rep(&k, &k.neg(&two_t)).unwrap()));
        }
    }

    #[test]
    fn saito_bezoutian_at_three() {
        let k = FieldDescriptor::RationalFunctionField(3);
        let t = k.t().unwrap();
        let z = k.zero();
        let g = GramMatrix::new(
            &k,
            vec![vec![z.clone(), t.clone(), z.clone()], vec![t.clone(), z.clone(), z.clone()], vec![z.clone(), z, k.one()]],
        )
        .unwrap();
        check_diagonalization(&g);
        let c = g.class().unwrap();
        assert_eq!(c.hyperbolic_count(), 1);
        assert_eq!(c.residual().len(), 1);
        assert!(k.is_one(c.residual()[0].rep()));
    }

    #[test]
    fn rejects_asymmetric() {
        let k = FieldDescriptor::PrimeField(5);
        let g = GramMatrix::new(&k, vec![vec![k.one(), k.one()], vec![k.zero(), k.one()]]);
        assert_eq!(g, Err(Error::NotSymmetric));
    }

    #[test]
    fn degenerate_reports_zero() {
        let k = FieldDescriptor::Rationals;
        let one = k.one();
        let g = GramMatrix::new(&k, vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]).unwrap();
        let diag = check_diagonalization(&g);
        assert!(diag.iter().any(|d| k.is_zero(d)));
        assert_eq!(g.class(), Err(Error::ZeroDiagonalEntry));
    }

    #[test]
    fn identity_is_already_diagonal() {
        let k = FieldDescriptor::Rationals;
        let g = GramMatrix::new(&k, vec![vec![k.one()]]).unwrap();
        assert_eq!(diagonalize(&g).unwrap().0, vec![k.one()]);
    }
}
