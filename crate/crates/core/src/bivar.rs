//! Polynomials in x with coefficients in F_p[t].
//!
//! These are the defining polynomials of the extensions under study, e.g.
//! `x^4+(t^2+2)*x^2+(t^4+2)`. The discriminant goes through a fraction-free
//! (Bareiss) determinant of the Sylvester matrix, so everything stays exact
//! in F_p[t].

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::field::FieldSpec;
use crate::poly::Poly;

/// Polynomial in x over F_p[t]; coefficients ascending in x, no trailing
/// zeros, and always over a prime coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    field: FieldSpec,
    coeffs: Vec<Poly>,
}

/// Result of a discriminant computation. `inseparable` marks the derivative
/// collapsing to zero (e.g. x^p - t), where the discriminant is reported as
/// zero rather than an error so callers can decide.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub value: Poly,
    pub inseparable: bool,
}

impl XPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Poly>) -> Self {
        assert!(field.is_prime_field(), "XPoly coefficients live in F_p[t]");
        while coeffs.last().map_or(false, Poly::is_zero) {
            coeffs.pop();
        }
        XPoly { field, coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        XPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// x^4 + a x^2 + b.
    pub fn biquadratic(a: &Poly, b: &Poly) -> Self {
        let field = a.field().clone();
        XPoly::new(
            field.clone(),
            vec![
                b.clone(),
                Poly::zero(&field),
                a.clone(),
                Poly::zero(&field),
                Poly::one(&field),
            ],
        )
    }

    /// x^3 + c1 x + c0.
    pub fn depressed_cubic(c1: &Poly, c0: &Poly) -> Self {
        let field = c1.field().clone();
        XPoly::new(
            field.clone(),
            vec![c0.clone(), c1.clone(), Poly::zero(&field), Poly::one(&field)],
        )
    }

    /// x^2 - d.
    pub fn quadratic_sqrt(d: &Poly) -> Self {
        let field = d.field().clone();
        XPoly::new(
            field.clone(),
            vec![d.neg(), Poly::zero(&field), Poly::one(&field)],
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_x(&self, i: usize) -> Poly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn lc_x(&self) -> Poly {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_monic_x(&self) -> bool {
        self.coeffs.last().map_or(false, Poly::is_one)
    }

    pub fn add(&self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n)
            .map(|i| self.coeff_x(i).add(&rhs.coeff_x(i)))
            .collect();
        XPoly::new(self.field.clone(), out)
    }

    pub fn sub(&self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n)
            .map(|i| self.coeff_x(i).sub(&rhs.coeff_x(i)))
            .collect();
        XPoly::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> XPoly {
        XPoly::new(self.field.clone(), self.coeffs.iter().map(Poly::neg).collect())
    }

    pub fn mul(&self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero(&self.field);
        }
        let mut out = vec![Poly::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        XPoly::new(self.field.clone(), out)
    }

    /// Scale by an element of F_p[t].
    pub fn mul_poly(&self, c: &Poly) -> XPoly {
        XPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Derivative with respect to x.
    pub fn derivative_x(&self) -> XPoly {
        if self.coeffs.len() <= 1 {
            return XPoly::zero(&self.field);
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&Poly::from_ints(&self.field, &[(i + 1) as i64])))
            .collect();
        XPoly::new(self.field.clone(), out)
    }

    /// Substitute an element of F_p[t] for x.
    pub fn eval_at_poly(&self, r: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc
    }

    /// Coefficientwise reduction modulo a monic irreducible place pi,
    /// yielding a univariate polynomial over the residue field.
    pub fn reduce_mod_place(&self, pi: &Poly) -> Result<Poly> {
        if !pi.is_monic() || pi.is_constant() {
            return Err(Error::NotIrreducible(pi.to_text('t')));
        }
        if !is_irreducible(pi)? {
            return Err(Error::NotIrreducible(pi.to_text('t')));
        }
        let ext = FieldSpec::extension(pi)?;
        let elems = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.rem(pi);
                let ints = r.to_int_coeffs().expect("prime-field coefficients");
                ext.elem_from_coeffs(&ints)
            })
            .collect();
        Ok(Poly::new(ext, elems))
    }

    /// Canonical text, e.g. `x^4+(t^2+2)*x^2+(t^4+2)`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let xpart = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let terms = c.coeffs().iter().filter(|e| !e.is_zero()).count();
            let cs = if c.is_one() && i > 0 {
                String::new()
            } else if terms > 1 {
                format!("({})", c.to_text('t'))
            } else {
                c.to_text('t')
            };
            match (cs.is_empty(), xpart.is_empty()) {
                (true, _) => out.push_str(&xpart),
                (false, true) => out.push_str(&cs),
                (false, false) => {
                    out.push_str(&cs);
                    out.push('*');
                    out.push_str(&xpart);
                }
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Resultant of f and g with respect to x, as a fraction-free Sylvester
/// determinant over F_p[t]. Degenerate degrees follow the usual conventions
/// (constant g gives g^{deg f}; zero gives zero unless both are constants).
pub fn resultant(f: &XPoly, g: &XPoly) -> Poly {
    let field = f.field().clone();
    let (n, m) = match (f.degree_x(), g.degree_x()) {
        (None, _) | (_, None) => return Poly::zero(&field),
        (Some(n), Some(m)) => (n, m),
    };
    if n == 0 && m == 0 {
        return Poly::one(&field);
    }
    if m == 0 {
        return pow_poly(&g.coeff_x(0), n);
    }
    if n == 0 {
        return pow_poly(&f.coeff_x(0), m);
    }
    let size = n + m;
    let mut mat = vec![vec![Poly::zero(&field); size]; size];
    for (i, row) in mat.iter_mut().take(m).enumerate() {
        for k in 0..=n {
            row[i + k] = f.coeff_x(n - k);
        }
    }
    for i in 0..n {
        for k in 0..=m {
            mat[m + i][i + k] = g.coeff_x(m - k);
        }
    }
    bareiss_det(mat)
}

fn pow_poly(base: &Poly, e: usize) -> Poly {
    let mut acc = Poly::one(base.field());
    for _ in 0..e {
        acc = acc.mul(base);
    }
    acc
}

/// Fraction-free Gaussian elimination (Bareiss): every division is exact in
/// F_p[t], so the determinant comes out without ever forming fractions.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut sign_flip = false;
    let mut prev = Poly::one(&field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(&field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = Poly::zero(&field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Discriminant of f with respect to x:
/// (-1)^{n(n-1)/2} Res(f, f') / lc(f), with lc(f) a nonzero constant.
///
/// A vanishing derivative (an inseparable family) yields a flagged zero
/// rather than an error.
pub fn discriminant(f: &XPoly) -> Result<Discriminant> {
    let n = f.degree_x().unwrap_or(0);
    if n < 2 {
        return Err(Error::WrongDegree {
            expected: "degree >= 2 in x",
            got: f.degree_x().map_or(-1, |d| d as i64),
        });
    }
    let lead = f.lc_x();
    if !lead.is_constant() {
        return Err(Error::NotMonic);
    }
    let deriv = f.derivative_x();
    if deriv.is_zero() {
        return Ok(Discriminant {
            value: Poly::zero(f.field()),
            inseparable: true,
        });
    }
    let res = resultant(f, &deriv);
    let field = f.field();
    let mut value = res.mul_elem(&field.inv(&lead.lc()));
    if (n * (n - 1) / 2) % 2 == 1 {
        value = value.neg();
    }
    Ok(Discriminant {
        value,
        inseparable: false,
    })
}
