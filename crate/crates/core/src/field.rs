//! Finite fields: the prime field F_p and extensions F_p[t]/(pi).
//!
//! A [`FieldSpec`] is a cheap-to-clone description of the coefficient field.
//! Elements ([`FFElem`]) are reduced representatives: a residue in `0..p` for
//! the prime field, or the coefficient vector of a representative of degree
//! below `deg pi` for an extension. Arithmetic lives on the spec so elements
//! stay plain data.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::Result;
use crate::fp;

/// Coefficient field: F_p, or F_p[t]/(pi) when a modulus is present.
///
/// The modulus, when present, is monic and irreducible over F_p; the checked
/// constructor lives next to the irreducibility test (`FieldSpec::extension`
/// in the factor module).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    modulus: Option<Arc<Vec<u64>>>,
}

/// An element of a finite field: ascending coefficients of its reduced
/// representative, with no trailing zeros. The empty vector is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFElem {
    c: Vec<u64>,
}

impl FFElem {
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// The residue as an integer, when the element lies in the prime field.
    pub fn as_u64(&self) -> Option<u64> {
        match self.c.len() {
            0 => Some(0),
            1 => Some(self.c[0]),
            _ => None,
        }
    }

    /// Ascending coefficients of the reduced representative.
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }


    /// Total order used for canonical output: by representative degree, then
    /// coefficients from the constant term up.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.cmp(&other.c))
    }
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        fp::check_characteristic(p)?;
        Ok(FieldSpec { p, modulus: None })
    }

    /// Extension field from a validated modulus; callers must have checked
    /// monicity and irreducibility (see `FieldSpec::extension`).
    pub(crate) fn extension_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        debug_assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1);
        FieldSpec {
            p,
            modulus: Some(Arc::new(modulus)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over F_p (1 for the prime field).
    pub fn ext_degree(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn is_prime_field(&self) -> bool {
        self.modulus.is_none()
    }

    /// Ascending coefficients of the defining modulus, if any.
    pub fn modulus_coeffs(&self) -> Option<&[u64]> {
        self.modulus.as_deref().map(|m| m.as_slice())
    }

    /// Field order p^m as a u128, or None on overflow.
    pub fn order(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.ext_degree() {
            acc = acc.checked_mul(self.p as u128)?;
        }
        Some(acc)
    }

    pub fn zero(&self) -> FFElem {
        FFElem { c: Vec::new() }
    }

    pub fn one(&self) -> FFElem {
        self.elem_from_u64(1)
    }

    pub fn elem_from_u64(&self, v: u64) -> FFElem {
        let v = v % self.p;
        if v == 0 {
            self.zero()
        } else {
            FFElem { c: vec![v] }
        }
    }

    pub fn elem_from_i64(&self, v: i64) -> FFElem {
        let p = self.p as i64;
        self.elem_from_u64(v.rem_euclid(p) as u64)
    }

    /// Element from ascending representative coefficients, reduced.
    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> FFElem {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        if let Some(m) = &self.modulus {
            c = raw_rem(&c, m, self.p);
        }
        trim(&mut c);
        FFElem { c }
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FFElem {
            c: raw_add(&a.c, &b.c, self.p),
        }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FFElem {
            c: raw_sub(&a.c, &b.c, self.p),
        }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        FFElem {
            c: raw_neg(&a.c, self.p),
        }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut c = raw_mul(&a.c, &b.c, self.p);
        if let Some(m) = &self.modulus {
            c = raw_rem(&c, m, self.p);
        }
        FFElem { c }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &FFElem) -> FFElem {
        assert!(!a.is_zero(), "inverse of zero");
        match &self.modulus {
            None => FFElem {
                c: vec![fp::inv_mod(a.c[0], self.p)],
            },
            Some(m) => FFElem {
                c: raw_inv_mod(&a.c, m, self.p),
            },
        }
    }

    pub fn pow(&self, a: &FFElem, mut exp: u128) -> FFElem {
        if exp == 0 {
            return self.one();
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: &FFElem) -> FFElem {
        self.pow(a, self.p as u128)
    }

    /// Norm down to F_p: the product of all Frobenius conjugates.
    pub fn norm(&self, a: &FFElem) -> u64 {
        if self.is_prime_field() {
            return a.as_u64().unwrap_or(0);
        }
        let mut conj = a.clone();
        let mut acc = a.clone();
        for _ in 1..self.ext_degree() {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        acc.as_u64().expect("norm lands in the prime field")
    }

    /// Quadratic-residue test. Zero is a square; in characteristic 2 every
    /// element is a square. For extensions this goes through the norm, since
    /// an element is a square in F_q exactly when its norm is one in F_p.
    pub fn is_square_elem(&self, a: &FFElem) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        fp::fp_is_square(self.p, self.norm(a))
    }

    /// Iterator over all field elements, in canonical order. Intended for
    /// brute-force loops; check `order()` against a budget first.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        let m = self.ext_degree();
        let p = self.p;
        let total = self.order().expect("field too large to enumerate");
        (0..total).map(move |mut ix| {
            let mut c = Vec::with_capacity(m);
            for _ in 0..m {
                c.push((ix % p as u128) as u64);
                ix /= p as u128;
            }
            trim(&mut c);
            FFElem { c }
        })
    }

    /// Renders an element; extension elements print as polynomials in the
    /// residue class of t.
    pub fn fmt_elem(&self, a: &FFElem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        if let Some(v) = a.as_u64() {
            return v.to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".into(),
                (1, _) => format!("{c}t"),
                (_, 1) => format!("t^{i}"),
                (_, _) => format!("{c}t^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

// ---- raw kernels: dense polynomials over F_p as bare coefficient vectors.
// These back both extension-field element arithmetic (above) and, through
// `poly`, the generic polynomial layer.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn raw_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fp::add_mod(x, y, p);
    }
    trim(&mut out);
    out
}

pub(crate) fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fp::sub_mod(x, y, p);
    }
    trim(&mut out);
    out
}

pub(crate) fn raw_neg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&x| fp::neg_mod(x, p)).collect()
}

pub(crate) fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + fp::mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m monic is not required; its lead is
/// inverted). `m` must be nonzero.
pub(crate) fn raw_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp::inv_mod(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = fp::mul_mod(*r.last().unwrap(), lead_inv, p);
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[k + i] = fp::sub_mod(r[k + i], fp::mul_mod(c, mc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

/// Inverse of `a` modulo the irreducible `m` via the extended Euclidean
/// algorithm over F_p[x]. Panics if a is zero or shares a factor with m.
pub(crate) fn raw_inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // invariant: r_i = s_i * a (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = raw_rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, rem) = raw_divmod(&r0, &r1, p);
        let s2 = raw_sub(&s0, &raw_mul(&q, &s1, p), p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 is now gcd(a, m), a nonzero constant since m is irreducible
    assert_eq!(r0.len(), 1, "inverse modulo a reducible modulus");
    let scale = fp::inv_mod(r0[0], p);
    let scaled: Vec<u64> = s0.iter().map(|&c| fp::mul_mod(c, scale, p)).collect();
    raw_rem(&scaled, m, p)
}

pub(crate) fn raw_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = fp::inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = fp::mul_mod(*r.last().unwrap(), lead_inv, p);
        q[k] = c;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = fp::sub_mod(r[k + i], fp::mul_mod(c, bc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.elem_from_u64(3);
        let b = f.elem_from_u64(4);
        assert_eq!(f.add(&a, &b).as_u64(), Some(2));
        assert_eq!(f.mul(&a, &b).as_u64(), Some(2));
        assert_eq!(f.mul(&a, &f.inv(&a)).as_u64(), Some(1));
        assert!(FieldSpec::prime(6).is_err());
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_9 = F_3[t]/(t^2+1)
        let f = FieldSpec::extension_unchecked(3, vec![1, 0, 1]);
        let t = f.elem_from_coeffs(&[0, 1]);
        let t2 = f.mul(&t, &t);
        assert_eq!(t2, f.elem_from_i64(-1)); // t^2 = -1
        // every nonzero element has an inverse; the group has order 8
        let mut count = 0;
        for e in f.elements() {
            if !e.is_zero() {
                assert_eq!(f.mul(&e, &f.inv(&e)), f.one());
                count += 1;
            }
        }
        assert_eq!(count, 8);
        // multiplicative order of t in F_9^x divides 8
        assert_eq!(f.pow(&t, 8), f.one());
    }

    #[test]
    fn norm_and_squares_in_extension() {
        // F_9: squares are exactly the elements with norm a square in F_3.
        let f = FieldSpec::extension_unchecked(3, vec![1, 0, 1]);
        let squares: Vec<FFElem> = f.elements().map(|e| f.mul(&e, &e)).collect();
        for e in f.elements() {
            let truth = squares.contains(&e);
            assert_eq!(f.is_square_elem(&e), truth, "{:?}", e);
        }
        // every element of F_3 becomes a square in F_9
        for v in 0..3 {
            assert!(f.is_square_elem(&f.elem_from_u64(v)));
        }
    }

    #[test]
    fn raw_divmod_roundtrip() {
        let p = 7;
        let a = vec![1, 2, 3, 4, 5];
        let b = vec![3, 1, 2];
        let (q, r) = raw_divmod(&a, &b, p);
        let back = raw_add(&raw_mul(&q, &b, p), &r, p);
        let mut a2 = a.clone();
        trim(&mut a2);
        assert_eq!(back, a2);
        assert!(r.len() < b.len());
    }
}
