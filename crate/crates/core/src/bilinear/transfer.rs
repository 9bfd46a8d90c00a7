//! Trace transfer of forms along a finite simple extension `L = k[x]/(m)`.

use super::GramMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg;
use crate::poly::dense;

/// `Tr_{L/k}(a)` as the trace of multiplication by `a` on the basis `1, x, …`.
pub fn field_trace(l: &FieldDescriptor, a: &FieldElement) -> Result<FieldElement> {
    let q = l.quotient().ok_or(Error::WrongField)?;
    let k = &q.base;
    let d = q.modulus.deg().unwrap();
    let FieldElement::Extension(c) = a else {
        return Err(Error::FieldMismatch);
    };
    let mut tr = k.zero();
    for i in 0..d {
        let mut shifted = vec![k.zero(); i];
        shifted.extend(c.iter().cloned());
        let prod = dense::rem_monic(k, shifted, q.modulus.coeffs());
        if let Some(x) = prod.get(i) {
            tr = k.add(&tr, x);
        }
    }
    Ok(tr)
}

/// Gram matrix over `k` of `Tr_{L/k} ∘ β` on the basis `x^a·e_i`, index `i·deg(m) + a`.
/// Over a field that is not a quotient extension the form is returned unchanged.
pub fn trace_transfer(beta: &GramMatrix) -> Result<GramMatrix> {
    let l = beta.field();
    let Some(q) = l.quotient() else {
        return Ok(beta.clone());
    };
    let k = &q.base;
    let d = q.modulus.deg().unwrap();
    let x = l.generator().unwrap();
    let powers: Vec<FieldElement> = (0..2 * d.max(1)).map(|e| l.pow(&x, e as u64)).collect();

    let trace_form: Vec<Vec<FieldElement>> =
        (0..d).map(|a| (0..d).map(|b| field_trace(l, &powers[a + b])).collect::<Result<_>>()).collect::<Result<_>>()?;
    if k.is_zero(&linalg::det(k, &trace_form)) {
        return Err(Error::InseparableModulus);
    }

    let n = beta.dim();
    let mut out = vec![vec![k.zero(); n * d]; n * d];
    for i in 0..n {
        for j in 0..n {
            for a in 0..d {
                for b in 0..d {
                    out[i * d + a][j * d + b] = field_trace(l, &l.mul(beta.get(i, j), &powers[a + b]))?;
                }
            }
        }
    }
    GramMatrix::new(k, out)
}
