//! Ramified places of F_p(t) under the splitting field of a given
//! polynomial.
//!
//! Finite places are monic irreducibles of F_p[t]; the one infinite place is
//! the degree valuation. Three routes are implemented:
//!
//! - [`finite_ramified_places`]: irreducible divisors of the discriminant
//!   whose residue reduction acquires a repeated root. Operational and
//!   exact for the tame families handled here; it can over-report only when
//!   a reduction becomes inseparable.
//! - [`infinity_check`]: the substitution procedure x -> x t^b, divide by
//!   t^{b deg f}, reduce mod 1/t, then look for a repeated root. The test is
//!   one-directional, hence the verdict is Unramified or Inconclusive, never
//!   "Ramified".
//! - [`quadratic_places`]: for x^2 = D with p odd the answer is exact: the
//!   odd-multiplicity factors of D ramify, and the infinite place ramifies
//!   exactly when the squarefree part has odd degree.

use serde::{Deserialize, Serialize};

use crate::bivar::{discriminant, XPoly};
use crate::error::{Error, Result};
use crate::factor::{factor, is_square, squarefree_part};
use crate::poly::Poly;

/// Verdict at the infinite place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfinityVerdict {
    Unramified,
    Inconclusive,
    RamifiedQuadratic,
}

impl InfinityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            InfinityVerdict::Unramified => "Unramified",
            InfinityVerdict::Inconclusive => "Inconclusive",
            InfinityVerdict::RamifiedQuadratic => "RamifiedQuadratic",
        }
    }
}

/// How a place ended up in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    DiscriminantResidue,
    QuadraticRule,
    InfinityProcedure,
}

/// The set of ramified finite places plus the infinite-place verdict.
#[derive(Clone, Debug)]
pub struct RamReport {
    /// Monic irreducible places, canonically ordered.
    pub finite: Vec<Poly>,
    pub infinity: InfinityVerdict,
    /// Provenance of the finite places (one tag for the whole set) and of
    /// the infinity verdict.
    pub finite_method: Method,
    pub infinity_method: Method,
}

impl RamReport {
    /// Confirmed ramified places: finite ones plus infinity when the exact
    /// quadratic rule says it ramifies.
    pub fn total(&self) -> usize {
        self.finite.len()
            + match self.infinity {
                InfinityVerdict::RamifiedQuadratic => 1,
                _ => 0,
            }
    }

    pub fn to_json(&self) -> RamReportJson {
        RamReportJson {
            finite: self.finite.iter().map(|p| p.to_text('t')).collect(),
            infinity: self.infinity.as_str().to_string(),
            counts: RamCounts {
                finite: self.finite.len(),
                total: self.total(),
            },
        }
    }
}

/// Wire format: `{"finite":["t^2+1"],"infinity":"Unramified","counts":{...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RamReportJson {
    pub finite: Vec<String>,
    pub infinity: String,
    pub counts: RamCounts,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RamCounts {
    pub finite: usize,
    pub total: usize,
}

/// Finite places where the splitting field of f ramifies: the monic
/// irreducible divisors pi of disc(f) such that f mod pi has a repeated
/// root in the residue field.
pub fn finite_ramified_places(f: &XPoly) -> Result<Vec<Poly>> {
    let disc = discriminant(f)?;
    if disc.inseparable || disc.value.is_zero() {
        return Err(Error::Inseparable);
    }
    let mut out = Vec::new();
    for (pi, _) in factor(&disc.value)?.factors {
        let fbar = f.reduce_mod_place(&pi)?;
        let dbar = fbar.derivative();
        let repeated = if dbar.is_zero() {
            // inseparable reduction; treat as ramified (may over-report)
            true
        } else {
            !fbar.gcd(&dbar).is_constant()
        };
        if repeated {
            out.push(pi);
        }
    }
    out.sort();
    Ok(out)
}

/// The substitution procedure at the infinite place.
///
/// With f = x^n + sum c_i x^i monic, let b be the least integer such that
/// substituting x t^b and dividing by t^{bn} leaves no positive powers of t;
/// explicitly b = max over nonzero c_i of ceil(deg c_i / (n-i)), and b = 0
/// when every coefficient is constant. Reducing mod 1/t keeps exactly the
/// terms with deg c_i = b(n-i), with their leading coefficients:
///
///   g(x) = x^n + sum_{deg c_i = b(n-i)} lc(c_i) x^i  over F_p.
///
/// If g has no repeated root the infinite place is unramified; otherwise
/// nothing is concluded.
pub fn infinity_check(f: &XPoly) -> Result<InfinityVerdict> {
    if !f.is_monic_x() {
        return Err(Error::NotMonic);
    }
    let n = f.degree_x().unwrap();
    if n == 0 {
        return Err(Error::WrongDegree {
            expected: "positive degree in x",
            got: 0,
        });
    }
    let field = f.field().clone();
    let mut b = 0usize;
    for i in 0..n {
        let c = f.coeff_x(i);
        if let Some(d) = c.degree() {
            // ceil(d / (n - i))
            b = b.max(d.div_ceil(n - i));
        }
    }
    let mut g = vec![field.zero(); n + 1];
    g[n] = field.one();
    for i in 0..n {
        let c = f.coeff_x(i);
        if c.degree() == Some(b * (n - i)) {
            g[i] = c.lc();
        }
    }
    let g = Poly::new(field.clone(), g);
    let gd = g.derivative();
    let squarefree = !gd.is_zero() && g.gcd(&gd).is_constant();
    Ok(if squarefree {
        InfinityVerdict::Unramified
    } else {
        InfinityVerdict::Inconclusive
    })
}

/// Exact ramification of the quadratic extension F_p(t)(sqrt D), p odd.
///
/// The finite places are the odd-multiplicity irreducible factors of D, and
/// the infinite place ramifies exactly when the squarefree part has odd
/// degree.
pub fn quadratic_places(d: &Poly) -> Result<RamReport> {
    if d.field().characteristic() == 2 {
        return Err(Error::UnsupportedFamily(
            "quadratic places require odd characteristic".into(),
        ));
    }
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if is_square(d) {
        return Err(Error::SquareRadicand);
    }
    let sq = squarefree_part(d)?;
    let mut finite: Vec<Poly> = factor(&sq.part)?.factors.into_iter().map(|(g, _)| g).collect();
    finite.sort();
    let infinity = if sq.part.degree().unwrap_or(0) % 2 == 1 {
        InfinityVerdict::RamifiedQuadratic
    } else {
        InfinityVerdict::Unramified
    };
    Ok(RamReport {
        finite,
        infinity,
        finite_method: Method::QuadraticRule,
        infinity_method: Method::QuadraticRule,
    })
}

/// Combined report for a monic separable f: discriminant-residue finite
/// places plus the substitution verdict at infinity.
pub fn ramification_report(f: &XPoly) -> Result<RamReport> {
    let finite = finite_ramified_places(f)?;
    let infinity = infinity_check(f)?;
    Ok(RamReport {
        finite,
        infinity,
        finite_method: Method::DiscriminantResidue,
        infinity_method: Method::InfinityProcedure,
    })
}
