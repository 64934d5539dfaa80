//! Galois-group classification for the polynomial families over F_p(t):
//! quadratics, cubics (C3 vs S3 by the square-discriminant criterion), and
//! biquadratic quartics (V4 / C4 / D8 by the squareness trichotomy).
//!
//! Irreducibility over F_p(t) is decided exactly for degree at most 4. The
//! fast path specializes t to constants and intersects factor-degree
//! patterns, which can only ever *prove* irreducibility; the deciding path
//! searches for roots in F_p[t] (divisors of the constant coefficient) and,
//! for quartics, for a split into two monic quadratics (divisor pairs of the
//! constant coefficient plus an exact linear solve).

use serde::{Deserialize, Serialize};

use crate::bivar::{discriminant, XPoly};
use crate::error::{Error, Result};
use crate::factor::{factor, is_square};
use crate::poly::Poly;

/// Classification outcome. `Reducible` is only emitted after an actual
/// factorization witness was found; `Unknown` flags inputs outside the
/// supported families (or internally inconsistent squareness patterns).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupTag {
    C2,
    C3,
    S3,
    V4,
    C4,
    D8,
    Reducible,
    Unknown,
}

impl GroupTag {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::C2 => "C2",
            GroupTag::C3 => "C3",
            GroupTag::S3 => "S3",
            GroupTag::V4 => "V4",
            GroupTag::C4 => "C4",
            GroupTag::D8 => "D8",
            GroupTag::Reducible => "Reducible",
            GroupTag::Unknown => "Unknown",
        }
    }
}

/// All roots of a monic f in the polynomial ring F_p[t]. A root divides the
/// constant coefficient, so candidates are unit multiples of its monic
/// divisors.
pub fn poly_ring_roots(f: &XPoly) -> Result<Vec<Poly>> {
    if !f.is_monic_x() {
        return Err(Error::NotMonic);
    }
    let field = f.field().clone();
    let c0 = f.coeff_x(0);
    let mut roots = Vec::new();
    if c0.is_zero() {
        roots.push(Poly::zero(&field));
        return Ok(roots);
    }
    for d in monic_divisors(&c0)? {
        for v in 1..field.characteristic() {
            let r = d.mul_elem(&field.elem_from_u64(v));
            if f.eval_at_poly(&r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Monic divisors of a nonzero polynomial, from its factorization.
fn monic_divisors(f: &Poly) -> Result<Vec<Poly>> {
    let fac = factor(f)?;
    let count: u64 = fac
        .factors
        .iter()
        .map(|(_, e)| *e as u64 + 1)
        .product();
    if count > 1 << 20 {
        return Err(Error::ResourceLimit(format!(
            "{count} divisors while enumerating factors"
        )));
    }
    let mut out = vec![Poly::one(f.field())];
    for (g, e) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(g);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

/// A factorization of a monic quartic into two monic quadratics, if any.
fn quartic_quadratic_split(f: &XPoly) -> Result<Option<(XPoly, XPoly)>> {
    let field = f.field().clone();
    let c3 = f.coeff_x(3);
    let c2 = f.coeff_x(2);
    let c1 = f.coeff_x(1);
    let c0 = f.coeff_x(0);
    debug_assert!(!c0.is_zero(), "zero constant term is handled by the root path");

    let make = |alpha: &Poly, beta: &Poly, gamma: &Poly, delta: &Poly| {
        let q1 = XPoly::new(
            field.clone(),
            vec![beta.clone(), alpha.clone(), Poly::one(&field)],
        );
        let q2 = XPoly::new(
            field.clone(),
            vec![delta.clone(), gamma.clone(), Poly::one(&field)],
        );
        (q1, q2)
    };

    for d in monic_divisors(&c0)? {
        for v in 1..field.characteristic() {
            let beta = d.mul_elem(&field.elem_from_u64(v));
            let delta = c0.exact_div(&d).mul_elem(&field.inv(&field.elem_from_u64(v)));
            if beta != delta {
                // alpha (delta - beta) = c1 - c3 beta, then gamma = c3 - alpha
                let denom = delta.sub(&beta);
                let num = c1.sub(&c3.mul(&beta));
                let (alpha, rem) = num.div_rem(&denom);
                if !rem.is_zero() {
                    continue;
                }
                let gamma = c3.sub(&alpha);
                if beta.add(&delta).add(&alpha.mul(&gamma)) == c2 {
                    return Ok(Some(make(&alpha, &beta, &gamma, &delta)));
                }
            } else {
                // beta^2 = c0; need c1 = c3 beta, then alpha + gamma = c3
                // and alpha gamma = c2 - 2 beta
                if c3.mul(&beta) != c1 {
                    continue;
                }
                let k = c2.sub(&beta.add(&beta));
                let quad = XPoly::new(
                    field.clone(),
                    vec![k.clone(), c3.neg(), Poly::one(&field)],
                );
                if let Some(alpha) = poly_ring_roots(&quad)?.into_iter().next() {
                    let gamma = c3.sub(&alpha);
                    return Ok(Some(make(&alpha, &beta, &gamma, &delta)));
                }
            }
        }
    }
    Ok(None)
}

/// Exact irreducibility over F_p(t) for monic f of degree at most 4.
///
/// For a monic polynomial, Gauss reduction makes irreducibility over the
/// rational function field the same as irreducibility in F_p[t][x], so
/// degrees 2 and 3 come down to roots in F_p[t] and degree 4 additionally
/// to a quadratic-times-quadratic split.
pub fn xpoly_is_irreducible(f: &XPoly) -> Result<bool> {
    if !f.is_monic_x() {
        return Err(Error::NotMonic);
    }
    let n = f.degree_x().unwrap();
    if n == 0 || n > 4 {
        return Err(Error::UnsupportedFamily(format!(
            "irreducibility is decided for x-degrees 1..=4, got {n}"
        )));
    }
    if n == 1 {
        return Ok(true);
    }
    if specializations_prove_irreducible(f, n)? {
        return Ok(true);
    }
    if !poly_ring_roots(f)?.is_empty() {
        return Ok(false);
    }
    if n == 4 {
        if f.coeff_x(0).is_zero() {
            return Ok(false); // x divides f
        }
        if quartic_quadratic_split(f)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fast path: if f = g h nontrivially over F_p(t) then every specialization
/// t -> c factors compatibly; a handful of specializations whose factor
/// degree patterns jointly rule out every nontrivial pattern prove f
/// irreducible. Never proves reducibility.
fn specializations_prove_irreducible(f: &XPoly, n: usize) -> Result<bool> {
    let field = f.field().clone();
    let mut remaining = partitions(n);
    remaining.retain(|pat| pat.len() > 1); // nontrivial factor shapes
    let tries = field.characteristic().min(12);
    for c in 0..tries {
        let ce = field.elem_from_u64(c);
        let spec = Poly::new(
            field.clone(),
            f.coeffs().iter().map(|ci| ci.eval(&ce)).collect(),
        );
        debug_assert_eq!(spec.degree(), Some(n));
        let pattern: Vec<usize> = factor(&spec)?
            .factors
            .iter()
            .flat_map(|(g, e)| {
                std::iter::repeat(g.degree().unwrap()).take(*e as usize)
            })
            .collect();
        remaining.retain(|pat| refines(&pattern, pat));
        if remaining.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All partitions of n (as descending vectors).
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Can the multiset `fine` be grouped into blocks summing to the parts of
/// `coarse`?
fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    if coarse.is_empty() {
        return fine.is_empty();
    }
    let target = coarse[0];
    let m = fine.len();
    // subsets of `fine` summing to target, then recurse on the rest
    for mask in 1u32..(1 << m) {
        let sum: usize = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| fine[i]).sum();
        if sum != target {
            continue;
        }
        let rest: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| fine[i]).collect();
        if refines(&rest, &coarse[1..]) {
            return true;
        }
    }
    false
}

/// Quadratics: C2 when irreducible.
pub fn classify_quadratic(f: &XPoly) -> Result<GroupTag> {
    if f.degree_x() != Some(2) {
        return Err(Error::WrongDegree {
            expected: "2",
            got: f.degree_x().map_or(-1, |d| d as i64),
        });
    }
    Ok(if xpoly_is_irreducible(f)? {
        GroupTag::C2
    } else {
        GroupTag::Reducible
    })
}

/// Cubics: S3 when the discriminant is not a square in F_p(t), C3 when it
/// is. Applies verbatim in characteristic 3 as well; degenerate (zero or
/// inseparable) discriminants return Unknown.
pub fn classify_cubic(f: &XPoly) -> Result<GroupTag> {
    if f.degree_x() != Some(3) {
        return Err(Error::WrongDegree {
            expected: "3",
            got: f.degree_x().map_or(-1, |d| d as i64),
        });
    }
    if !f.is_monic_x() {
        return Err(Error::NotMonic);
    }
    if !xpoly_is_irreducible(f)? {
        return Ok(GroupTag::Reducible);
    }
    let disc = discriminant(f)?;
    if disc.inseparable || disc.value.is_zero() {
        return Ok(GroupTag::Unknown);
    }
    Ok(if is_square(&disc.value) {
        GroupTag::C3
    } else {
        GroupTag::S3
    })
}

/// Biquadratics x^4 + a x^2 + b, p odd:
/// V4 when b is a square, C4 when b(a^2-4b) is a square (b not), D8 when b,
/// a^2-4b and b(a^2-4b) are all nonsquares. A pattern outside the trichotomy
/// (only possible if it contradicts the irreducibility just established)
/// comes back Unknown rather than guessed.
pub fn classify_biquadratic(a: &Poly, b: &Poly) -> Result<GroupTag> {
    let field = a.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedFamily(
            "biquadratic classification requires odd characteristic".into(),
        ));
    }
    let f = XPoly::biquadratic(a, b);
    if !xpoly_is_irreducible(&f)? {
        return Ok(GroupTag::Reducible);
    }
    let four = Poly::from_ints(&field, &[4]);
    let d = a.mul(a).sub(&four.mul(b));
    let sq_b = is_square(b);
    let sq_d = is_square(&d);
    let sq_bd = is_square(&b.mul(&d));
    Ok(match (sq_b, sq_d, sq_bd) {
        (true, _, _) => GroupTag::V4,
        (false, _, true) => GroupTag::C4,
        (false, false, false) => GroupTag::D8,
        // sq_d true with the others false contradicts irreducibility
        _ => GroupTag::Unknown,
    })
}

/// Dispatch on degree for the supported families; quartics must be
/// biquadratic.
pub fn classify(f: &XPoly) -> Result<GroupTag> {
    match f.degree_x() {
        Some(2) => classify_quadratic(f),
        Some(3) => classify_cubic(f),
        Some(4) => {
            if f.coeff_x(3).is_zero() && f.coeff_x(1).is_zero() {
                classify_biquadratic(&f.coeff_x(2), &f.coeff_x(0))
            } else {
                Ok(GroupTag::Unknown)
            }
        }
        other => Err(Error::WrongDegree {
            expected: "2, 3 or 4",
            got: other.map_or(-1, |d| d as i64),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn poly(p: u64, coeffs: &[i64]) -> Poly {
        Poly::from_ints(&field(p), coeffs)
    }

    fn s3_poly(p: u64, u: i64, w: &Poly) -> XPoly {
        let ue = Poly::from_ints(w.field(), &[u]);
        XPoly::depressed_cubic(&ue.mul(w).neg(), &ue.mul(&ue).neg())
    }

    #[test]
    fn cubic_examples() {
        // x^3-(t^2+1)x+(t-1) over F_3
        let f = XPoly::depressed_cubic(&poly(3, &[-1, 0, -1]), &poly(3, &[-1, 1]));
        assert_eq!(classify_cubic(&f).unwrap(), GroupTag::S3);

        // u=6, w=t^2+3 over F_7
        let f = s3_poly(7, 6, &poly(7, &[3, 0, 1]));
        assert_eq!(classify_cubic(&f).unwrap(), GroupTag::S3);

        // explicit composite: (x-1)(x^2+x+1) over F_5
        let fld = field(5);
        let lin = XPoly::new(fld.clone(), vec![poly(5, &[-1]), Poly::one(&fld)]);
        let quad = XPoly::new(
            fld.clone(),
            vec![Poly::one(&fld), Poly::one(&fld), Poly::one(&fld)],
        );
        assert_eq!(classify_cubic(&lin.mul(&quad)).unwrap(), GroupTag::Reducible);
    }

    #[test]
    fn biquadratic_examples() {
        // table instances: (t^2+2, t^4+2) over F_5 and the char-3 row with
        // b = 2(t+2)^4
        assert_eq!(
            classify_biquadratic(&poly(5, &[2, 0, 1]), &poly(5, &[2, 0, 0, 0, 1])).unwrap(),
            GroupTag::D8
        );
        assert_eq!(
            classify_biquadratic(&poly(3, &[1, 1, 2]), &poly(3, &[2, 1, 0, 1, 2])).unwrap(),
            GroupTag::D8
        );
        // square b with f irreducible: V4
        let b = poly(5, &[2, 0, 1]);
        assert_eq!(
            classify_biquadratic(&poly(5, &[0, 0, 1]), &b.mul(&b)).unwrap(),
            GroupTag::V4
        );
        // b nonsquare, b(a^2-4b) square: C4
        assert_eq!(
            classify_biquadratic(&poly(5, &[0]), &poly(5, &[0, 0, 2])).unwrap(),
            GroupTag::C4
        );
        // p = 2 unsupported
        assert!(classify_biquadratic(&poly(2, &[1]), &poly(2, &[1, 1])).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        // x^3 - uwx - u^2 with u=2, w=t^2 over F_13, against a brute oracle:
        // a root r in F_13[t] would have degree <= 1, so scan deg <= 2
        let f = s3_poly(13, 2, &poly(13, &[0, 0, 1]));
        assert!(xpoly_is_irreducible(&f).unwrap());
        let fld = field(13);
        for c0 in 0..13i64 {
            for c1 in 0..13i64 {
                for c2 in 0..13i64 {
                    let r = Poly::from_ints(&fld, &[c0, c1, c2]);
                    assert!(!f.eval_at_poly(&r).is_zero(), "unexpected root {r}");
                }
            }
        }

        // x^2 - t^2 = (x-t)(x+t)
        let sq = XPoly::quadratic_sqrt(&poly(5, &[0, 0, 1]));
        assert!(!xpoly_is_irreducible(&sq).unwrap());

        // x^4+(t^2+2)x^2+(t^4+2) over F_5
        let f = XPoly::biquadratic(&poly(5, &[2, 0, 1]), &poly(5, &[2, 0, 0, 0, 1]));
        assert!(xpoly_is_irreducible(&f).unwrap());

        // degree out of range
        let fld = field(5);
        let mut cs = vec![Poly::one(&fld); 6];
        cs[5] = Poly::one(&fld);
        let quintic = XPoly::new(fld.clone(), cs);
        assert!(xpoly_is_irreducible(&quintic).is_err());
    }

    #[test]
    fn reducible_products_are_detected() {
        // products of random monic factors must never pass as irreducible
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let mut done = 0;
        while done < 80 {
            let p = [3u64, 5, 7][rng.gen_range(0..3)];
            let fld = field(p);
            let split = rng.gen_range(1..=2u32);
            let (d1, d2) = if split == 1 { (1, rng.gen_range(1..=3)) } else { (2, 2) };
            let mk = |rng: &mut ChaCha8Rng, d: usize| {
                let mut cs: Vec<Poly> = (0..d)
                    .map(|_| Poly::random_below(rng, &fld, 3))
                    .collect();
                cs.push(Poly::one(&fld));
                XPoly::new(fld.clone(), cs)
            };
            let f = mk(&mut rng, d1).mul(&mk(&mut rng, d2));
            if f.degree_x().unwrap() < 2 {
                continue;
            }
            assert!(
                !xpoly_is_irreducible(&f).unwrap(),
                "p={p} f={f} slipped through"
            );
            done += 1;
        }
    }

    #[test]
    fn biquadratic_irreducibility_matches_classical_criterion() {
        // independent route: x^4+ax^2+b is irreducible iff a^2-4b is a
        // nonsquare and there is no beta with beta^2 = b and (2beta - a) or
        // (-2beta - a) a square
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut done = 0;
        while done < 100 {
            let p = [3u64, 5, 7][rng.gen_range(0..3)];
            let fld = field(p);
            let a = Poly::random_below(&mut rng, &fld, 3);
            let b = Poly::random_below(&mut rng, &fld, 4);
            if b.is_zero() {
                continue;
            }
            let four = Poly::from_ints(&fld, &[4]);
            let d = a.mul(&a).sub(&four.mul(&b));
            let classical = if is_square(&d) {
                false
            } else if is_square(&b) {
                let beta = sqrt_poly(&b);
                let two_beta = beta.add(&beta);
                !(is_square(&two_beta.sub(&a)) || is_square(&two_beta.neg().sub(&a)))
            } else {
                true
            };
            let f = XPoly::biquadratic(&a, &b);
            assert_eq!(
                xpoly_is_irreducible(&f).unwrap(),
                classical,
                "p={p} a={a} b={b}"
            );
            done += 1;
        }
    }

    /// Square root of a known polynomial square.
    fn sqrt_poly(b: &Poly) -> Poly {
        let field = b.field().clone();
        let fac = factor(b).unwrap();
        let mut root = Poly::one(&field);
        for (g, e) in &fac.factors {
            for _ in 0..e / 2 {
                root = root.mul(g);
            }
        }
        let u = fac.unit.as_u64().unwrap();
        let p = field.characteristic();
        let r = (0..p).find(|r| r * r % p == u).expect("square unit");
        root.mul_elem(&field.elem_from_u64(r))
    }

    #[test]
    fn quadratic_and_dispatch() {
        let f = XPoly::quadratic_sqrt(&poly(5, &[0, 1]));
        assert_eq!(classify(&f).unwrap(), GroupTag::C2);
        let g = XPoly::quadratic_sqrt(&poly(5, &[0, 0, 1]));
        assert_eq!(classify(&g).unwrap(), GroupTag::Reducible);
        // non-biquadratic quartic dispatches to Unknown
        let fld = field(5);
        let mut cs = vec![Poly::one(&fld), Poly::one(&fld), Poly::zero(&fld), Poly::zero(&fld)];
        cs.push(Poly::one(&fld));
        let q = XPoly::new(fld, cs);
        assert_eq!(classify(&q).unwrap(), GroupTag::Unknown);
    }

    #[test]
    fn cubic_disc_square_iff_c3_with_counting_oracle() {
        // C3 cubics never show factorization type (1,2) at good places;
        // S3 cubics do at a positive fraction. Statistical cross-check on a
        // a few dozen random irreducible cubics over 40 places each.
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        let mut checked = 0;
        while checked < 25 {
            let p = [5u64, 7][rng.gen_range(0..2)];
            let fld = field(p);
            let c1 = Poly::random_below(&mut rng, &fld, 3);
            let c0 = Poly::random_below(&mut rng, &fld, 3);
            let f = XPoly::depressed_cubic(&c1, &c0);
            if !xpoly_is_irreducible(&f).unwrap() {
                continue;
            }
            let disc = discriminant(&f).unwrap();
            if disc.inseparable || disc.value.is_zero() {
                continue;
            }
            let tag = classify_cubic(&f).unwrap();
            // count (1,2) factorization patterns over places of degree 1..2
            let mut saw_12 = false;
            let mut places = 0;
            'outer: for deg in 1..=2 {
                for pi in crate::poly::monic_polys(&fld, deg) {
                    if !crate::factor::is_irreducible(&pi).unwrap() {
                        continue;
                    }
                    if disc.value.rem(&pi).is_zero() {
                        continue;
                    }
                    places += 1;
                    let fbar = f.reduce_mod_place(&pi).unwrap();
                    let pattern: Vec<usize> = factor(&fbar)
                        .unwrap()
                        .factors
                        .iter()
                        .map(|(g, _)| g.degree().unwrap())
                        .collect();
                    if pattern.contains(&2) {
                        saw_12 = true;
                    }
                    if places >= 40 {
                        break 'outer;
                    }
                }
            }
            match tag {
                GroupTag::C3 => assert!(!saw_12, "C3 cubic {f} showed a (1,2) place"),
                GroupTag::S3 => assert!(saw_12, "S3 cubic {f} never showed a (1,2) place"),
                other => panic!("unexpected tag {other:?}"),
            }
            checked += 1;
        }
    }
}
