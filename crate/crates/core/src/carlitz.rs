//! Carlitz polynomials and the module action they induce on extensions of
//! F_p(t).
//!
//! An additive polynomial is a sum of c_i x^{p^i}; only those coefficients
//! are stored, which keeps [M] representable even when deg M is large enough
//! that the dense x-degree p^{deg M} would not be. The defining recursion is
//!
//! ```text
//! [1](x) = x,  [t](x) = x^p + t x,  [t^n](x) = [t]([t^{n-1}](x)),
//! [c_n t^n + ... + c_0](x) = c_n [t^n](x) + ... + c_0 [1](x)
//! ```
//!
//! and M . a = [M](a) makes any extension of F_p(t) an F_p[t]-module. The
//! same recursion with a fresh variable u in place of t gives the torsion
//! attached to the infinite place (read u = 1/t); the group-theoretic
//! content is identical, so no Laurent arithmetic is carried here.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::phi;
use crate::field::FieldSpec;
use crate::poly::Poly;

/// A p-power-additive polynomial: taus[i] is the coefficient of x^{p^i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly {
    field: FieldSpec,
    taus: Vec<Poly>,
}

impl AdditivePoly {
    pub fn new(field: FieldSpec, mut taus: Vec<Poly>) -> Self {
        assert!(field.is_prime_field());
        while taus.last().map_or(false, Poly::is_zero) {
            taus.pop();
        }
        AdditivePoly { field, taus }
    }

    /// The identity additive polynomial x.
    pub fn identity(field: &FieldSpec) -> Self {
        AdditivePoly::new(field.clone(), vec![Poly::one(field)])
    }

    pub fn zero(field: &FieldSpec) -> Self {
        AdditivePoly::new(field.clone(), Vec::new())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn taus(&self) -> &[Poly] {
        &self.taus
    }

    pub fn tau(&self, i: usize) -> Poly {
        self.taus
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// Index of the top x^{p^i} term, so the x-degree is p^frob_degree.
    pub fn frob_degree(&self) -> Option<usize> {
        self.taus.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn add(&self, rhs: &AdditivePoly) -> AdditivePoly {
        let n = self.taus.len().max(rhs.taus.len());
        let taus = (0..n).map(|i| self.tau(i).add(&rhs.tau(i))).collect();
        AdditivePoly::new(self.field.clone(), taus)
    }

    pub fn scale(&self, c: &Poly) -> AdditivePoly {
        AdditivePoly::new(
            self.field.clone(),
            self.taus.iter().map(|t| t.mul(c)).collect(),
        )
    }

    /// Evaluation at a residue class: sum of taus[i] * a^{p^i} mod `modulus`.
    pub fn eval_mod(&self, a: &Poly, modulus: &Poly) -> Result<Poly> {
        if modulus.is_zero() || modulus.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let p = self.field.characteristic() as u128;
        let mut acc = Poly::zero(&self.field);
        let mut apow = a.rem(modulus);
        for (i, tau) in self.taus.iter().enumerate() {
            if i > 0 {
                apow = apow.pow_mod(p, modulus);
            }
            acc = acc.add(&tau.mul(&apow)).rem(modulus);
        }
        Ok(acc)
    }

    /// Renders as a sum of (c_i)*x^(p^i) terms, descending.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let p = self.field.characteristic() as u128;
        let mut parts = Vec::new();
        for (i, tau) in self.taus.iter().enumerate().rev() {
            if tau.is_zero() {
                continue;
            }
            let xpart = match p.checked_pow(i as u32) {
                Some(1) => "x".to_string(),
                Some(e) => format!("x^{e}"),
                None => format!("x^(p^{i})"),
            };
            parts.push(format!("({})*{}", tau.to_text('t'), xpart));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for AdditivePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Coefficientwise Frobenius power: for b over F_p, raising to p^i spreads
/// each monomial c t^k to c t^{k p^i}.
fn poly_frobenius_power(b: &Poly, i: usize) -> Poly {
    if i == 0 || b.is_zero() {
        return b.clone();
    }
    let field = b.field().clone();
    let p = field.characteristic() as usize;
    let stride = p.checked_pow(i as u32).expect("frobenius stride overflow");
    let deg = b.degree().unwrap();
    let mut coeffs = vec![field.zero(); deg * stride + 1];
    for (k, c) in b.coeffs().iter().enumerate() {
        coeffs[k * stride] = c.clone();
    }
    Poly::new(field, coeffs)
}

/// Composition of additive polynomials: (A o B)(x) = A(B(x)).
///
/// With A = sum a_i x^{p^i} and B = sum b_j x^{p^j} the coefficient of
/// x^{p^k} in the composition is sum_{i+j=k} a_i * b_j^{p^i}.
pub fn compose(a: &AdditivePoly, b: &AdditivePoly) -> AdditivePoly {
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return AdditivePoly::zero(&field);
    }
    let da = a.taus().len();
    let db = b.taus().len();
    let mut taus = vec![Poly::zero(&field); da + db - 1];
    for (i, ai) in a.taus().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.taus().iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let term = ai.mul(&poly_frobenius_power(bj, i));
            taus[i + j] = taus[i + j].add(&term);
        }
    }
    AdditivePoly::new(field, taus)
}

/// The Carlitz polynomial [M](x) for nonzero M in F_p[t].
pub fn carlitz_poly(m: &Poly) -> Result<AdditivePoly> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = m.field().clone();
    let t_action = AdditivePoly::new(field.clone(), vec![Poly::gen(&field), Poly::one(&field)]);
    let mut acc = AdditivePoly::zero(&field);
    let mut t_power = AdditivePoly::identity(&field); // [t^0]
    for (i, c) in m.coeffs().iter().enumerate() {
        if i > 0 {
            t_power = compose(&t_action, &t_power);
        }
        if !c.is_zero() {
            acc = acc.add(&t_power.scale(&Poly::constant(&field, c.clone())));
        }
    }
    Ok(acc)
}

/// The module action M . a = [M](a), computed in F_p[t]/(modulus).
pub fn carlitz_action(m: &Poly, a: &Poly, modulus: &Poly) -> Result<Poly> {
    carlitz_poly(m)?.eval_mod(a, modulus)
}

/// Order of Gal(F_p(t, Lambda_M) / F_p(t)), which is Phi(M): the Galois
/// group of the M-th cyclotomic function field is (F_p[t]/M)^x acting on the
/// torsion module Lambda_M. The infinite place carries ramification index
/// p - 1 in the full cyclotomic field (see [`infinity_ramification_index`]),
/// so the fixed field of the constants F_p^x is the subfield unramified at
/// infinity.
pub fn cyclotomic_group_order(m: &Poly) -> Result<u128> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    phi(m)
}

/// Ramification index of the infinite place in the full M-th cyclotomic
/// function field: always p - 1, independent of M.
pub fn infinity_ramification_index(p: u64) -> u64 {
    p - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn poly(p: u64, coeffs: &[i64]) -> Poly {
        Poly::from_ints(&field(p), coeffs)
    }

    #[test]
    fn base_cases() {
        for p in [2u64, 3, 5] {
            let one = carlitz_poly(&poly(p, &[1])).unwrap();
            assert_eq!(one, AdditivePoly::identity(&field(p)));

            // [t](x) = x^p + t x
            let t = carlitz_poly(&poly(p, &[0, 1])).unwrap();
            assert_eq!(t.taus(), &[poly(p, &[0, 1]), poly(p, &[1])]);
        }
        assert!(matches!(
            carlitz_poly(&Poly::zero(&field(3))),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn t_squared_expansion() {
        // [t^2](x) = x^{p^2} + (t^p + t) x^p + t^2 x
        for p in [2u64, 3, 5] {
            let got = carlitz_poly(&poly(p, &[0, 0, 1])).unwrap();
            let mut tp_plus_t = vec![0i64; p as usize + 1];
            tp_plus_t[1] = 1;
            tp_plus_t[p as usize] += 1;
            assert_eq!(
                got.taus(),
                &[
                    poly(p, &[0, 0, 1]),
                    Poly::from_ints(&field(p), &tp_plus_t),
                    poly(p, &[1])
                ],
                "p={p}"
            );
            // oracle: direct composition [t] o [t]
            let t = carlitz_poly(&poly(p, &[0, 1])).unwrap();
            assert_eq!(got, compose(&t, &t));
        }
    }

    #[test]
    fn compose_identity() {
        let b = carlitz_poly(&poly(3, &[1, 2, 1])).unwrap();
        let id = AdditivePoly::identity(&field(3));
        assert_eq!(compose(&id, &b), b);
        assert_eq!(compose(&b, &id), b);
    }

    #[test]
    fn ring_homomorphism_small_exhaustive() {
        // [M+N] = [M] + [N] and [MN] = [M] o [N] = [N] o [M],
        // exhaustively for deg <= 2 over F_3 (the acceptance suite runs
        // deg <= 3 over F_2 and F_3)
        let fld = field(3);
        let mut polys = Vec::new();
        for ix in 1..27u64 {
            let c: Vec<i64> = vec![(ix % 3) as i64, (ix / 3 % 3) as i64, (ix / 9) as i64];
            polys.push(Poly::from_ints(&fld, &c));
        }
        for m in &polys {
            let cm = carlitz_poly(m).unwrap();
            for n in &polys {
                let cn = carlitz_poly(n).unwrap();
                let sum = m.add(n);
                if !sum.is_zero() {
                    assert_eq!(carlitz_poly(&sum).unwrap(), cm.add(&cn));
                }
                let prod = carlitz_poly(&m.mul(n)).unwrap();
                assert_eq!(prod, compose(&cm, &cn));
                assert_eq!(prod, compose(&cn, &cm));
            }
        }
    }

    #[test]
    fn taus_structure_invariants() {
        // taus[0] = M (so the x-derivative is M != 0: [M] is separable and
        // has exactly p^{deg M} roots) and taus[deg M] = lc(M)
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let fld = field(p);
            let m = Poly::random_below(&mut rng, &fld, 5);
            if m.is_zero() {
                continue;
            }
            let cm = carlitz_poly(&m).unwrap();
            assert_eq!(cm.tau(0), m);
            assert_eq!(cm.frob_degree(), m.degree());
            assert_eq!(cm.tau(m.degree().unwrap()).lc(), m.lc());
        }
    }

    #[test]
    fn action_examples() {
        // [1](a) = a
        let modulus = poly(3, &[0, 0, 0, 1]); // t^3
        let a = poly(3, &[2, 1]);
        assert_eq!(carlitz_action(&poly(3, &[1]), &a, &modulus).unwrap(), a);
        // [t](1) = 1^3 + t*1 = 1 + t mod t^3 over F_3
        assert_eq!(
            carlitz_action(&poly(3, &[0, 1]), &poly(3, &[1]), &modulus).unwrap(),
            poly(3, &[1, 1])
        );
        // zero modulus rejected
        assert!(carlitz_action(&poly(3, &[0, 1]), &a, &Poly::zero(&field(3))).is_err());
    }

    #[test]
    fn action_is_associative_and_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let fld = field(3);
        let mut done = 0;
        while done < 100 {
            let deg_mod = rng.gen_range(1..=4);
            let modulus = Poly::one(&fld)
                .shift(deg_mod)
                .add(&Poly::random_below(&mut rng, &fld, deg_mod));
            let m = Poly::random_below(&mut rng, &fld, 3);
            let n = Poly::random_below(&mut rng, &fld, 3);
            let a = Poly::random_below(&mut rng, &fld, deg_mod);
            if m.is_zero() || n.is_zero() {
                continue;
            }
            // (MN).a = M.(N.a)
            let lhs = carlitz_action(&m.mul(&n), &a, &modulus).unwrap();
            let inner = carlitz_action(&n, &a, &modulus).unwrap();
            let rhs = carlitz_action(&m, &inner, &modulus).unwrap();
            assert_eq!(lhs, rhs);
            // additivity and F_p-linearity of [M]
            let b = Poly::random_below(&mut rng, &fld, deg_mod);
            let sum = carlitz_action(&m, &a.add(&b), &modulus).unwrap();
            let parts = carlitz_action(&m, &a, &modulus)
                .unwrap()
                .add(&carlitz_action(&m, &b, &modulus).unwrap())
                .rem(&modulus);
            assert_eq!(sum, parts);
            for c in 0..3i64 {
                let ce = Poly::from_ints(&fld, &[c]);
                let lhs = carlitz_action(&m, &a.mul(&ce), &modulus).unwrap();
                let rhs = carlitz_action(&m, &a, &modulus)
                    .unwrap()
                    .mul(&ce)
                    .rem(&modulus);
                assert_eq!(lhs, rhs);
            }
            done += 1;
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(cyclotomic_group_order(&poly(5, &[0, 1])).unwrap(), 4);
        assert_eq!(cyclotomic_group_order(&poly(3, &[1, 0, 1])).unwrap(), 8);
        assert_eq!(cyclotomic_group_order(&poly(3, &[0, 0, 1])).unwrap(), 6);
        assert_eq!(infinity_ramification_index(5), 4);
    }

    #[test]
    fn rendering() {
        let t = carlitz_poly(&poly(3, &[0, 1])).unwrap();
        assert_eq!(t.to_text(), "(1)*x^3 + (t)*x");
    }
}
