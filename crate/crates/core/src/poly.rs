//! Dense univariate polynomials over a finite field.
//!
//! `Poly` serves double duty: elements of F_p[t] (the ring whose monic
//! irreducibles are the finite places), and univariate polynomials over a
//! residue field F_p[t]/(pi) produced by reduction at a place. The zero
//! polynomial has an empty coefficient vector and degree `None`.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::field::{FFElem, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FFElem>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().map_or(false, FFElem::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &FieldSpec, c: FFElem) -> Self {
        Poly::new(field.clone(), vec![c])
    }

    /// The generator of the polynomial ring (t, or x for reduced bivariates).
    pub fn gen(field: &FieldSpec) -> Self {
        Poly::new(field.clone(), vec![field.zero(), field.one()])
    }

    /// Convenience constructor from ascending integer coefficients.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(
            field.clone(),
            coeffs.iter().map(|&c| field.elem_from_i64(c)).collect(),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FFElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.field.one())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(&self.coeff(i), &rhs.coeff(i)));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.sub(&self.coeff(i), &rhs.coeff(i)));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn mul_elem(&self, c: &FFElem) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly::new(self.field.clone(), out)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        debug_assert_eq!(self.field, divisor.field);
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(&self.field), self.clone());
        }
        let f = &self.field;
        let lead_inv = f.inv(&divisor.lc());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - divisor.coeffs.len() + 1];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - divisor.coeffs.len();
            let c = f.mul(rem.last().unwrap(), &lead_inv);
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
                }
            }
            quot[k] = c;
            rem.pop();
            while rem.last().map_or(false, FFElem::is_zero) {
                rem.pop();
            }
        }
        (
            Poly::new(self.field.clone(), quot),
            Poly::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_elem(&self.field.inv(&self.lc()))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul(c, &f.elem_from_u64((i + 1) as u64)))
            .collect();
        Poly::new(self.field.clone(), out)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Substitution: self(g), with self read as a polynomial in its variable.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(&self.field, c.clone()));
        }
        acc
    }

    /// self^exp mod m, by square and multiply.
    pub fn pow_mod(&self, mut exp: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            exp >>= 1;
        }
        acc
    }

    /// self^q mod m where q is the order of the coefficient field, computed
    /// as an iterated p-th power so the exponent never needs to fit anywhere.
    pub fn frobenius_pow_mod(&self, m: &Poly) -> Poly {
        let p = self.field.characteristic() as u128;
        let mut acc = self.rem(m);
        for _ in 0..self.field.ext_degree() {
            acc = acc.pow_mod(p, m);
        }
        acc
    }

    /// Uniformly random polynomial of degree strictly below `deg_bound`.
    pub fn random_below<R: Rng>(rng: &mut R, field: &FieldSpec, deg_bound: usize) -> Poly {
        let p = field.characteristic();
        let m = field.ext_degree();
        let coeffs = (0..deg_bound)
            .map(|_| {
                let raw: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
                field.elem_from_coeffs(&raw)
            })
            .collect();
        Poly::new(field.clone(), coeffs)
    }

    /// Canonical order: by degree, then lexicographically on the ascending
    /// coefficient sequence. The zero polynomial sorts first.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        debug_assert_eq!(self.field, other.field);
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                    match a.cmp_canonical(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }

    /// Canonical text: monomials in descending degree, coefficients reduced,
    /// e.g. `t^4+4t+1`.
    pub fn to_text(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let cs = f.fmt_elem(c);
            let needs_parens = !f.is_prime_field() && cs.contains('+');
            let cs = if needs_parens { format!("({cs})") } else { cs };
            match i {
                0 => out.push_str(&cs),
                _ => {
                    if cs != "1" {
                        out.push_str(&cs);
                    }
                    out.push(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }

    /// Machine format: ascending integer coefficients. Prime fields only.
    pub fn to_int_coeffs(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(FFElem::as_u64).collect()
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_canonical(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('t'))
    }
}

/// Decodes `digit` in `0..q` into a field element; digits order elements
/// consistently with `FFElem::cmp_canonical` for prime fields.
fn decode_elem(field: &FieldSpec, mut digit: u128) -> FFElem {
    let p = field.characteristic();
    let mut raw = Vec::with_capacity(field.ext_degree());
    for _ in 0..field.ext_degree() {
        raw.push((digit % p as u128) as u64);
        digit /= p as u128;
    }
    field.elem_from_coeffs(&raw)
}

/// Enumerates monic polynomials of the given degree in canonical order:
/// lexicographic on the ascending coefficient sequence, so the constant
/// term is the most significant position.
pub fn monic_polys(field: &FieldSpec, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order().expect("field too large to enumerate");
    let total = q.checked_pow(degree as u32).expect("too many polynomials");
    let field = field.clone();
    (0..total).map(move |ix| {
        // digits[0] (the constant term) is the most significant position
        let mut digits = vec![0u128; degree];
        let mut rest = ix;
        for d in digits.iter_mut().rev() {
            *d = rest % q;
            rest /= q;
        }
        let mut coeffs: Vec<FFElem> = digits.iter().map(|&d| decode_elem(&field, d)).collect();
        coeffs.push(field.one());
        Poly::new(field.clone(), coeffs)
    })
}
