//! Dense polynomials over F_p in the function-field parameter `t`.
//!
//! These back the numerator/denominator pairs of `F_p(t)` elements. The
//! characteristic is passed to every operation; a `TPoly` on its own does
//! not know it.

/// Coefficients in ascending order, trailing zeros trimmed. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPoly(Vec<u64>);

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime. `a` must be nonzero mod `p`.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::from_coeffs(vec![c % p])
    }

    /// `t`.
    pub fn t() -> Self {
        TPoly(vec![0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let n = self.0.len().max(other.0.len());
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Self::from_coeffs(out)
    }

    pub fn neg(&self, p: u64) -> Self {
        TPoly(self.0.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        Self::from_coeffs(self.0.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; `other` must be nonzero.
    pub fn divrem(&self, other: &Self, p: u64) -> (Self, Self) {
        assert!(!other.is_zero(), "TPoly division by zero");
        let db = other.0.len() - 1;
        if self.0.len() < other.0.len() {
            return (Self::zero(), self.clone());
        }
        let inv_lc = invmod(other.lc(), p);
        let mut rem = self.0.clone();
        let mut quo = vec![0u64; self.0.len() - db];
        for i in (0..quo.len()).rev() {
            let c = mulmod(rem[i + db], inv_lc, p);
            quo[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mulmod(c, b, p)) % p;
            }
        }
        rem.truncate(db);
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(invmod(self.lc(), p), p)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b, p).1;
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.0.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
    }

    /// Returns `s` with `s(t)^p = self(t)` when `self ∈ F_p[t^p]`.
    pub fn pth_root(&self, p: u64) -> Option<Self> {
        let pu = p as usize;
        if self.0.iter().enumerate().any(|(i, &c)| c != 0 && i % pu != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.0.iter().step_by(pu).copied().collect()))
    }

    /// Multiplicity of `t` as a factor (0 for the zero polynomial).
    pub fn t_adic_valuation(&self) -> usize {
        self.0.iter().take_while(|&&c| c == 0).count()
    }
}
