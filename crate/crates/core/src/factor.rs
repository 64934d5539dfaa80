//! Factorization and related predicates over finite fields.
//!
//! Complete factorization runs squarefree decomposition (with p-th root
//! extraction when the derivative vanishes), then distinct-degree splitting,
//! then Cantor-Zassenhaus equal-degree splitting. The equal-degree stage is
//! randomized but draws from a fixed-seed generator, so identical inputs
//! factor identically run to run.
//!
//! Irreducibility uses Rabin's criterion instead of full factorization, which
//! keeps the search loops cheap.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FFElem, FieldSpec};
use crate::poly::{monic_polys, Poly};

/// Internal seed for the equal-degree splitting randomness.
const SPLIT_SEED: u64 = 0x5eed_cafe_f00d_0001;

/// A complete factorization: `unit * prod factors[i].0 ^ factors[i].1`.
///
/// Factors are distinct monic irreducibles in canonical order (degree, then
/// lexicographic on ascending coefficient sequences).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FFElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn recompose(&self, field: &FieldSpec) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

impl FieldSpec {
    /// Extension field F_p[t]/(modulus); the modulus must be monic and
    /// irreducible over the prime field.
    pub fn extension(modulus: &Poly) -> Result<FieldSpec> {
        if !modulus.field().is_prime_field() {
            return Err(Error::UnsupportedFamily(
                "towers of extensions are not supported".into(),
            ));
        }
        if modulus.is_zero() || modulus.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(modulus)? {
            return Err(Error::NotIrreducible(modulus.to_text('t')));
        }
        let coeffs = modulus.to_int_coeffs().expect("prime-field coefficients");
        Ok(FieldSpec::extension_unchecked(
            modulus.field().characteristic(),
            coeffs,
        ))
    }
}

/// Rabin irreducibility: f of degree n is irreducible over F_q iff
/// x^{q^n} = x (mod f) and gcd(x^{q^{n/l}} - x, f) = 1 for every prime l | n.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field().clone();
    let x = Poly::gen(&field);

    // iterated Frobenius powers: frob[k] = x^{q^k} mod f
    let mut frob = x.clone();
    let mut powers = vec![x.clone()];
    for _ in 0..n {
        frob = frob.frobenius_pow_mod(&f);
        powers.push(frob.clone());
    }
    if powers[n] != x.rem(&f) {
        return Ok(false);
    }
    for l in prime_divisors(n as u64) {
        let k = n / l as usize;
        let g = powers[k].sub(&x).gcd(&f);
        if !g.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Complete factorization into monic irreducibles times a unit.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.lc();
    if f.is_constant() {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
        });
    }
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(&monic) {
        for (h, d) in distinct_degree_split(&g) {
            for irr in equal_degree_split(&h, d, &mut rng)? {
                match factors.iter_mut().find(|(p, _)| *p == irr) {
                    Some((_, e)) => *e += mult,
                    None => factors.push((irr, mult)),
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    let result = Factorization { unit, factors };
    debug_assert_eq!(result.recompose(&field), *f);
    Ok(result)
}

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with g monic
/// squarefree, pairwise coprime, and f = prod g^m. Handles the char-p case
/// f' = 0 through p-th root extraction.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(f);
        let p = f.field().characteristic() as u32;
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_constant() {
            out.push((z, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_constant() {
        // c collected the p-th power part
        let root = pth_root(&c);
        let p = f.field().characteristic() as u32;
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// p-th root of a polynomial all of whose exponents are multiples of p.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let m = field.ext_degree();
    let mut coeffs = Vec::new();
    for i in (0..f.coeffs().len()).step_by(p) {
        let c = f.coeff(i);
        // inverse Frobenius: c^{p^{m-1}}
        let mut root = c;
        for _ in 0..m.saturating_sub(1) {
            root = field.frobenius(&root);
        }
        coeffs.push(root);
    }
    Poly::new(field, coeffs)
}

/// Distinct-degree stage: pairs (h, d) where h is the product of all
/// irreducible factors of degree d of the monic squarefree input.
fn distinct_degree_split(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let x = Poly::gen(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            // what remains is itself irreducible
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = h.frobenius_pow_mod(&rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            out.push((g.clone(), d));
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree h whose
/// irreducible factors all have degree d.
fn equal_degree_split(h: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let field = h.field().clone();
    let n = h.degree().unwrap();
    if n == d {
        return Ok(vec![h.clone()]);
    }
    let q = field
        .order()
        .ok_or(Error::Overflow("field order in equal-degree splitting"))?;
    let mut stack = vec![h.clone()];
    let mut done = Vec::new();
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap();
        if dg == d {
            done.push(g);
            continue;
        }
        loop {
            let r = Poly::random_below(rng, &field, dg);
            if r.is_constant() {
                continue;
            }
            let split = if field.characteristic() == 2 {
                // trace map over F_2: r + r^2 + r^4 + ... has each factor's
                // residue landing in F_2, so the gcd separates factors
                let rounds = d * field.ext_degree();
                let mut tr = Poly::zero(&field);
                let mut cur = r.rem(&g);
                for _ in 0..rounds {
                    tr = tr.add(&cur).rem(&g);
                    cur = cur.pow_mod(2, &g);
                }
                tr.gcd(&g)
            } else {
                let exp = q
                    .checked_pow(d as u32)
                    .ok_or(Error::Overflow("exponent in equal-degree splitting"))?;
                let s = r.pow_mod((exp - 1) / 2, &g);
                s.sub(&Poly::one(&field)).gcd(&g)
            };
            if !split.is_constant() && split.degree() < g.degree() {
                stack.push(g.exact_div(&split));
                stack.push(split);
                break;
            }
        }
    }
    Ok(done)
}

/// Square test in the polynomial ring: f = g^2 for some polynomial g.
/// Equivalently every irreducible exponent is even and the unit is a square
/// in the coefficient field. The zero polynomial is a square.
pub fn is_square(f: &Poly) -> bool {
    if f.is_zero() {
        return true;
    }
    let fac = factor(f).expect("nonzero");
    fac.factors.iter().all(|(_, e)| e % 2 == 0) && f.field().is_square_elem(&fac.unit)
}

/// The squarefree part together with the residual unit and its squareness.
#[derive(Clone, Debug)]
pub struct SquarefreePart {
    /// Monic product of the irreducibles dividing f to odd multiplicity.
    pub part: Poly,
    /// Leading unit of the input.
    pub unit: FFElem,
    /// Whether that unit is a square in the coefficient field.
    pub unit_is_square: bool,
}

/// Monic product of odd-multiplicity irreducible divisors, with the unit
/// reported separately. f is a square in F_p(t) exactly when the part is 1
/// and the unit is a square.
pub fn squarefree_part(f: &Poly) -> Result<SquarefreePart> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = factor(f)?;
    let mut part = Poly::one(f.field());
    for (g, e) in &fac.factors {
        if e % 2 == 1 {
            part = part.mul(g);
        }
    }
    let unit_is_square = f.field().is_square_elem(&fac.unit);
    Ok(SquarefreePart {
        part,
        unit: fac.unit,
        unit_is_square,
    })
}

/// Order of the unit group of F_p[t]/(M): the product over irreducible
/// divisors pi^e of M of p^{de} - p^{d(e-1)} with d = deg pi.
pub fn phi(m: &Poly) -> Result<u128> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !m.field().is_prime_field() {
        return Err(Error::UnsupportedFamily(
            "unit counts are defined over F_p[t]".into(),
        ));
    }
    let p = m.field().characteristic() as u128;
    let mut acc: u128 = 1;
    for (g, e) in factor(m)?.factors {
        let d = g.degree().unwrap() as u32;
        let qd = p
            .checked_pow(d * e)
            .ok_or(Error::Overflow("phi"))?;
        let qd1 = p
            .checked_pow(d * (e - 1))
            .ok_or(Error::Overflow("phi"))?;
        acc = acc
            .checked_mul(qd - qd1)
            .ok_or(Error::Overflow("phi"))?;
    }
    Ok(acc)
}

/// Lexicographically smallest monic irreducible of the given degree.
pub fn first_irreducible(field: &FieldSpec, degree: usize) -> Poly {
    monic_polys(field, degree)
        .find(|f| is_irreducible(f).unwrap_or(false))
        .expect("irreducibles exist in every degree")
}
