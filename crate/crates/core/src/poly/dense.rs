//! Coefficient-vector kernels shared by `Poly` and quotient-field arithmetic.
//!
//! Vectors are in ascending degree order. Every function returns a trimmed
//! vector (no trailing zeros).

use crate::field::{FieldDescriptor, FieldElement};

pub fn trimmed(k: &FieldDescriptor, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn add(k: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = k.add(o, s);
    }
    trimmed(k, out)
}

pub fn sub(k: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let nb: Vec<_> = b.iter().map(|c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn scale(k: &FieldDescriptor, a: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    if k.is_zero(c) {
        return Vec::new();
    }
    trimmed(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub fn mul(k: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if k.is_zero(y) {
                continue;
            }
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trimmed(k, out)
}

/// Euclidean division by a nonzero `b`.
pub fn divrem(k: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lc_inv = k.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    let mut quo = vec![k.zero(); a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = k.mul(&rem[i + db], &lc_inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, y));
        }
        quo[i] = c;
    }
    rem.truncate(db);
    (trimmed(k, quo), trimmed(k, rem))
}

/// Remainder modulo a monic polynomial.
pub fn rem_monic(k: &FieldDescriptor, a: Vec<FieldElement>, m: &[FieldElement]) -> Vec<FieldElement> {
    let a = trimmed(k, a);
    if a.len() < m.len() {
        return a;
    }
    divrem(k, &a, m).1
}

/// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic (empty when both inputs vanish).
pub fn ext_gcd(
    k: &FieldDescriptor,
    a: &[FieldElement],
    b: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>) {
    let (mut r0, mut r1) = (trimmed(k, a.to_vec()), trimmed(k, b.to_vec()));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(lc) = r0.last().cloned() {
        let inv = k.inv(&lc).expect("nonzero");
        (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
    } else {
        (r0, s0, t0)
    }
}
