//! Closed-form minimum distances and bounds.

use num_integer::{Integer, Roots};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::make_field;
use crate::polytope::{width1_representative, Family, LatticePolytope, Width1Sig};
use crate::toriccode::{DistanceMethod, DistanceResult};

/// Which closed form produced a [`DistanceResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaId {
    Dim4,
    Degenerate(u8),
    Dim5Sig21,
    Dim5Sig22,
    Dim5Sig31,
    Dim5Sig32,
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormulaId::Dim4 => f.write_str("DIM4"),
            FormulaId::Degenerate(i) => write!(f, "DEGEN({i})"),
            FormulaId::Dim5Sig21 => f.write_str("DIM5_21"),
            FormulaId::Dim5Sig22 => f.write_str("DIM5_22"),
            FormulaId::Dim5Sig31 => f.write_str("DIM5_31"),
            FormulaId::Dim5Sig32 => f.write_str("DIM5_32"),
        }
    }
}

fn require_field(q: u32, min: u32, what: &str) -> Result<i64> {
    make_field(q).map_err(|e| Error::InvalidField(format!("q={q}: {e}")))?;
    if q < min {
        return Err(Error::InvalidField(format!(
            "{what} needs q >= {min}, got q={q}"
        )));
    }
    Ok(q as i64)
}

fn cube(q: i64) -> i64 {
    (q - 1).pow(3)
}

/// Least integer N with N >= n - c - 2(q-1)√q (`strict = false`) or
/// N > n - c - 2(q-1)√q (`strict = true`), in exact integer arithmetic.
///
/// Writing D = n - c - N, the condition is D <= 2(q-1)√q (resp. <), i.e.
/// D < 0 or D^2 <= 4(q-1)^2 q (resp. <).
fn sqrt_bound(n: i64, c: i64, q: i64, strict: bool) -> i64 {
    let rhs = 4 * (q - 1) * (q - 1) * q;
    let holds = |big_n: i64| {
        let d = n - c - big_n;
        d < 0 || if strict { d * d < rhs } else { d * d <= rhs }
    };
    // isqrt(rhs) <= 2(q-1)√q < isqrt(rhs) + 1
    let mut big_n = n - c - rhs.sqrt() - 1;
    while !holds(big_n) {
        big_n += 1;
    }
    big_n
}

/// Minimum distance of C_T(s,t); it does not depend on s.
pub fn dim4_distance(q: u32, t: i64) -> Result<DistanceResult> {
    let q = require_field(q, 3, "dim4_distance")?;
    if t < 1 {
        return Err(Error::InvalidParams(format!("t must be >= 1, got {t}")));
    }
    let g = t.gcd(&(q - 1));
    let d = if g == 1 {
        cube(q) - (q - 1).pow(2)
    } else {
        cube(q) - (q - 1) * (q - 3) - q * g
    };
    Ok(DistanceResult::exact(d as u64, DistanceMethod::Formula))
}

/// Distances of the codes from the four-point polygons `E:i` placed in
/// three-space. Exact for i in 1..=3; for the exceptional triangle (i = 4)
/// a strict lower bound with upper = n.
pub fn degenerate_distance(i: u8, q: u32) -> Result<DistanceResult> {
    if !(1..=4).contains(&i) {
        return Err(Error::OutOfRange {
            what: "polygon class",
            value: i as i64,
            lo: 1,
            hi: 4,
        });
    }
    // x^3 and x^2 must stay below the exponent modulus q-1.
    let min_q = match i {
        1 => 5,
        2 => 4,
        _ => 3,
    };
    let q = require_field(q, min_q, "this polygon")?;
    let n = cube(q);
    let result = match i {
        1 => DistanceResult::exact((n - 3 * (q - 1).pow(2)) as u64, DistanceMethod::Formula),
        2 => DistanceResult::exact((n - 2 * (q - 1).pow(2)) as u64, DistanceMethod::Formula),
        3 => DistanceResult::exact((n - (2 * q - 3) * (q - 1)) as u64, DistanceMethod::Formula),
        _ => {
            let lower = sqrt_bound(n, (q - 1) * (1 + q), q, true);
            DistanceResult::interval(lower, n, n as u64, DistanceMethod::Bound)
        }
    };
    Ok(result)
}

/// Distances for the five-point polytopes of width 1. (2,1) and (2,2) are
/// exact; (3,1) is a lower bound; (3,2) is an interval.
pub fn dim5_distance(sig: Width1Sig, q: u32, s: i64, t: i64) -> Result<DistanceResult> {
    width1_representative(sig, s, t)?;
    let q = require_field(q, 5, "dim5_distance")?;
    let n = cube(q);
    let result = match sig {
        Width1Sig::Sig21 => {
            DistanceResult::exact((n - 2 * (q - 1).pow(2)) as u64, DistanceMethod::Formula)
        }
        Width1Sig::Sig22 => DistanceResult::exact(
            (n - (2 * q * q - 5 * q + 3)) as u64,
            DistanceMethod::Formula,
        ),
        Width1Sig::Sig31 => {
            let lower = sqrt_bound(n, (q - 1) * (1 + q), q, false);
            DistanceResult::interval(lower, n, n as u64, DistanceMethod::Bound)
        }
        Width1Sig::Sig32 => {
            let lower = n - (q - 2).pow(2) - (s + t) * q;
            let upper = n - (q - 1) * (q - 3) - q * (s + t).gcd(&(q - 1));
            DistanceResult::interval(lower, upper, n as u64, DistanceMethod::Bound)
        }
    };
    Ok(result)
}

/// The closed form that applies to `p`'s family.
pub fn formula_for(p: &LatticePolytope, q: u32) -> Result<(FormulaId, DistanceResult)> {
    match p.family() {
        Family::EmptyTetra { t, .. } => Ok((FormulaId::Dim4, dim4_distance(q, t)?)),
        Family::Sig21 { s, t } => Ok((
            FormulaId::Dim5Sig21,
            dim5_distance(Width1Sig::Sig21, q, s, t)?,
        )),
        Family::Sig22 => Ok((
            FormulaId::Dim5Sig22,
            dim5_distance(Width1Sig::Sig22, q, 0, 0)?,
        )),
        Family::Sig31 => Ok((
            FormulaId::Dim5Sig31,
            dim5_distance(Width1Sig::Sig31, q, 0, 0)?,
        )),
        Family::Sig32 { s, t } => Ok((
            FormulaId::Dim5Sig32,
            dim5_distance(Width1Sig::Sig32, q, s, t)?,
        )),
        Family::EmbeddedPolygon(i) => Ok((FormulaId::Degenerate(i), degenerate_distance(i, q)?)),
        other @ (Family::Width2Row(_) | Family::Custom) => {
            Err(Error::NoFormulaForFamily(other.to_string()))
        }
    }
}
