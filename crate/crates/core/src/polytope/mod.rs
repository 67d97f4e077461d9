//! Lattice polytopes in Z^3: the families used for dimension-4 and
//! dimension-5 codes, affine dependences and signatures, lattice width,
//! normalized volume, and White's normal form for empty tetrahedra.

mod map;
mod parse;

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub use map::{white_canonical, white_equivalence_map, white_orbit, AffineUnimodularMap};
pub use parse::parse_polytope;

pub type Point = [i64; 3];

/// Which construction produced a polytope. Parameters live in the variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// White's empty tetrahedron T(s, t).
    EmptyTetra {
        s: i64,
        t: i64,
    },
    /// Width-1 five-point polytopes by signature.
    Sig21 {
        s: i64,
        t: i64,
    },
    Sig22,
    Sig31,
    Sig32 {
        s: i64,
        t: i64,
    },
    /// Row 1..=9 of the width-2 five-point table.
    Width2Row(u8),
    /// Four-point polygon class 1..=4 placed in the plane z = 0.
    EmbeddedPolygon(u8),
    Custom,
}

impl Family {
    pub fn params(&self) -> Option<(i64, i64)> {
        match *self {
            Family::EmptyTetra { s, t } | Family::Sig21 { s, t } | Family::Sig32 { s, t } => {
                Some((s, t))
            }
            _ => None,
        }
    }

    /// Short family name used in tables: `T`, `P21`, `P22`, `P31`, `P32`,
    /// `W2`, `E`, `CUSTOM`.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::EmptyTetra { .. } => "T",
            Family::Sig21 { .. } => "P21",
            Family::Sig22 => "P22",
            Family::Sig31 => "P31",
            Family::Sig32 { .. } => "P32",
            Family::Width2Row(_) => "W2",
            Family::EmbeddedPolygon(_) => "E",
            Family::Custom => "CUSTOM",
        }
    }

    /// The width-1 signature class, if this is one of the width-1 families.
    pub fn width1_sig(&self) -> Option<Width1Sig> {
        match self {
            Family::Sig21 { .. } => Some(Width1Sig::Sig21),
            Family::Sig22 => Some(Width1Sig::Sig22),
            Family::Sig31 => Some(Width1Sig::Sig31),
            Family::Sig32 { .. } => Some(Width1Sig::Sig32),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::EmptyTetra { s, t } => write!(f, "T({s},{t})"),
            Family::Sig21 { s, t } => write!(f, "P21({s},{t})"),
            Family::Sig22 => write!(f, "P22"),
            Family::Sig31 => write!(f, "P31"),
            Family::Sig32 { s, t } => write!(f, "P32({s},{t})"),
            Family::Width2Row(i) => write!(f, "W2:{i}"),
            Family::EmbeddedPolygon(i) => write!(f, "E:{i}"),
            Family::Custom => write!(f, "CUSTOM"),
        }
    }
}

/// The four signature classes of five-point polytopes of width 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Width1Sig {
    Sig21,
    Sig22,
    Sig31,
    Sig32,
}

impl Width1Sig {
    /// The unordered (positive, negative) count pair, larger first.
    pub fn pair(self) -> (usize, usize) {
        match self {
            Width1Sig::Sig21 => (2, 1),
            Width1Sig::Sig22 => (2, 2),
            Width1Sig::Sig31 => (3, 1),
            Width1Sig::Sig32 => (3, 2),
        }
    }
}

/// An ordered list of distinct lattice points with the family that made it.
///
/// The order is meaningful: it fixes the row order of generator matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    points: Vec<Point>,
    family: Family,
}

impl LatticePolytope {
    /// A `CUSTOM` polytope from explicit points. Points must be distinct.
    pub fn custom(points: Vec<Point>) -> Result<Self> {
        Self::with_family(points, Family::Custom)
    }

    fn with_family(points: Vec<Point>, family: Family) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParams(
                "polytope needs at least one point".into(),
            ));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(Error::InvalidParams(format!("repeated point {a:?}")));
            }
        }
        Ok(LatticePolytope { points, family })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family != Family::Custom {
            return write!(f, "{}", self.family);
        }
        write!(f, "[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({},{},{})", p[0], p[1], p[2])?;
        }
        write!(f, "]")
    }
}

fn require_coprime(s: i64, t: i64) -> Result<()> {
    if t < 1 {
        return Err(Error::InvalidParams(format!("t = {t} must be >= 1")));
    }
    if s.gcd(&t) != 1 {
        return Err(Error::InvalidParams(format!("gcd({s}, {t}) != 1")));
    }
    Ok(())
}

/// T(s,t) = Conv{(0,0,0), (1,0,0), (0,0,1), (s,t,1)} in that vertex order.
pub fn empty_tetrahedron(s: i64, t: i64) -> Result<LatticePolytope> {
    require_coprime(s, t)?;
    LatticePolytope::with_family(
        vec![[0, 0, 0], [1, 0, 0], [0, 0, 1], [s, t, 1]],
        Family::EmptyTetra { s, t },
    )
}

/// Width-1 five-point representative. `s` and `t` are ignored for the
/// parameter-free classes (2,2) and (3,1).
pub fn width1_representative(sig: Width1Sig, s: i64, t: i64) -> Result<LatticePolytope> {
    match sig {
        Width1Sig::Sig21 => {
            require_coprime(s, t)?;
            if s < 0 || 2 * s > t {
                return Err(Error::InvalidParams(format!(
                    "(2,1) needs 0 <= s <= t/2, got s={s}, t={t}"
                )));
            }
            LatticePolytope::with_family(
                vec![[0, 0, 0], [1, 0, 0], [0, 0, 1], [-1, 0, 0], [s, t, 1]],
                Family::Sig21 { s, t },
            )
        }
        Width1Sig::Sig22 => LatticePolytope::with_family(
            vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]],
            Family::Sig22,
        ),
        Width1Sig::Sig31 => LatticePolytope::with_family(
            vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1]],
            Family::Sig31,
        ),
        Width1Sig::Sig32 => {
            require_coprime(s, t)?;
            if s <= 0 || s > t {
                return Err(Error::InvalidParams(format!(
                    "(3,2) needs 0 < s <= t, got s={s}, t={t}"
                )));
            }
            LatticePolytope::with_family(
                vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [s, t, 1]],
                Family::Sig32 { s, t },
            )
        }
    }
}

const WIDTH2_ROWS: [[Point; 5]; 9] = [
    [[0, 0, 0], [1, 0, 0], [0, 1, 0], [-1, -1, 0], [1, 2, 3]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [1, 1, 1], [-2, -1, -2]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [1, 2, 1], [-1, -1, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [1, 3, 1], [-1, -2, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 5, 1], [-1, -2, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 5, 1], [-1, -1, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 7, 1], [-1, -2, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [3, 7, 1], [-2, -3, -1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 5, 1], [-3, -5, -2]],
];

/// Five-point polytope of width 2, table row 1..=9.
pub fn width2_representative(row: u8) -> Result<LatticePolytope> {
    if !(1..=9).contains(&row) {
        return Err(Error::OutOfRange {
            what: "width-2 row",
            value: row as i64,
            lo: 1,
            hi: 9,
        });
    }
    LatticePolytope::with_family(
        WIDTH2_ROWS[row as usize - 1].to_vec(),
        Family::Width2Row(row),
    )
}

/// The four lattice classes of four-point polygons, embedded at z = 0:
/// 1: 1, x, x^2, x^3; 2: 1, x, x^2, y; 3: the unit square;
/// 4: 1, x, y, x^-1 y^-1 (the exceptional triangle).
pub fn embedded_polygon(i: u8) -> Result<LatticePolytope> {
    let points = match i {
        1 => vec![[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]],
        2 => vec![[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0]],
        3 => vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]],
        4 => vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [-1, -1, 0]],
        _ => {
            return Err(Error::OutOfRange {
                what: "polygon class",
                value: i as i64,
                lo: 1,
                hi: 4,
            })
        }
    };
    LatticePolytope::with_family(points, Family::EmbeddedPolygon(i))
}

fn det3(a: Point, b: Point, c: Point) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// |det(p1-p0, p2-p0, p3-p0)|; the unit tetrahedron has volume 1.
pub fn normalized_volume_tetra(p0: Point, p1: Point, p2: Point, p3: Point) -> u64 {
    det3(sub(p1, p0), sub(p2, p0), sub(p3, p0)).unsigned_abs()
}

/// All lattice points of the (closed) tetrahedron on four vertices, found by
/// scanning the bounding box with exact barycentric sign tests.
pub fn tetrahedron_lattice_points(v: [Point; 4]) -> Vec<Point> {
    let e1 = sub(v[1], v[0]);
    let e2 = sub(v[2], v[0]);
    let e3 = sub(v[3], v[0]);
    let d = det3(e1, e2, e3);
    if d == 0 {
        return Vec::new();
    }
    let lo: Vec<i64> = (0..3)
        .map(|k| v.iter().map(|p| p[k]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..3)
        .map(|k| v.iter().map(|p| p[k]).max().unwrap())
        .collect();
    let sign = d.signum();
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let r = sub([x, y, z], v[0]);
                // Cramer: r = l1 e1 + l2 e2 + l3 e3 with l_i = D_i / d.
                let l1 = det3(r, e2, e3) * sign;
                let l2 = det3(e1, r, e3) * sign;
                let l3 = det3(e1, e2, r) * sign;
                if l1 >= 0 && l2 >= 0 && l3 >= 0 && l1 + l2 + l3 <= d.abs() {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Affine dependence of five points and the signature it induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    /// Larger of the positive/negative coefficient counts.
    pub pos: usize,
    /// Smaller of the two counts.
    pub neg: usize,
    /// Primitive integer coefficients, first nonzero entry negative.
    pub dependence: [i64; 5],
    /// The same dependence before division by the gcd: signed volumes of
    /// the sub-tetrahedra, with the same sign normalization.
    pub volumes: [i64; 5],
}

impl Signature {
    pub fn pair(&self) -> (usize, usize) {
        (self.pos, self.neg)
    }
}

/// The unique (up to scale) affine dependence Σ λ_i = 0, Σ λ_i p_i = 0.
///
/// λ_i is the signed 4x4 minor of the homogeneous coordinate matrix with
/// column i removed, which is (up to sign) the normalized volume of the
/// tetrahedron on the other four points.
pub fn affine_dependence(p: &LatticePolytope) -> Result<Signature> {
    let pts = p.points();
    if pts.len() != 5 {
        return Err(Error::InvalidParams(format!(
            "affine dependence needs 5 points, got {}",
            pts.len()
        )));
    }
    let mut lambda = [0i64; 5];
    for (i, l) in lambda.iter_mut().enumerate() {
        let rest: Vec<Point> = (0..5).filter(|&j| j != i).map(|j| pts[j]).collect();
        // det of [[1,1,1,1],[x..],[y..],[z..]] = det(p1-p0, p2-p0, p3-p0)
        let minor = det3(
            sub(rest[1], rest[0]),
            sub(rest[2], rest[0]),
            sub(rest[3], rest[0]),
        );
        *l = if i % 2 == 0 { minor } else { -minor };
    }
    if lambda.iter().all(|&l| l == 0) {
        return Err(Error::DegenerateConfiguration(kernel_dim(pts)));
    }
    if lambda.iter().find(|&&l| l != 0).is_some_and(|&l| l > 0) {
        for l in lambda.iter_mut() {
            *l = -*l;
        }
    }
    let volumes = lambda;
    let g = lambda.iter().fold(0i64, |acc, &l| acc.gcd(&l));
    for l in lambda.iter_mut() {
        *l /= g;
    }
    let plus = lambda.iter().filter(|&&l| l > 0).count();
    let minus = lambda.iter().filter(|&&l| l < 0).count();
    Ok(Signature {
        pos: plus.max(minus),
        neg: plus.min(minus),
        dependence: lambda,
        volumes,
    })
}

/// 5 - rank of the homogeneous 4x5 matrix, by fraction-free elimination.
fn kernel_dim(pts: &[Point]) -> usize {
    let mut rows: Vec<Vec<i128>> = vec![vec![1; pts.len()]];
    for k in 0..3 {
        rows.push(pts.iter().map(|p| p[k] as i128).collect());
    }
    let cols = pts.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let (a, b) = (pivot[c], row[c]);
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = *x * a - y * b;
                }
            }
        }
        rank += 1;
    }
    cols - rank
}

/// Lattice width: min over nonzero integer functionals u of
/// max<u,p> - min<u,p>. A polytope between two adjacent lattice planes has
/// width 1.
pub fn lattice_width(p: &LatticePolytope) -> u64 {
    width_with_direction(p).0
}

/// Lattice width together with a functional that achieves it.
///
/// The search box is |u_i| <= 1 + (largest coordinate spread of P), which
/// covers every polytope in the built-in families.
pub fn width_with_direction(p: &LatticePolytope) -> (u64, Point) {
    let pts = p.points();
    let spread = (0..3)
        .map(|k| {
            let lo = pts.iter().map(|q| q[k]).min().unwrap_or(0);
            let hi = pts.iter().map(|q| q[k]).max().unwrap_or(0);
            hi - lo
        })
        .max()
        .unwrap_or(0);
    let bound = 1 + spread;
    let mut best: Option<(u64, Point)> = None;
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let vals = pts.iter().map(|q| a * q[0] + b * q[1] + c * q[2]);
                let (lo, hi) =
                    vals.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
                let w = (hi - lo) as u64;
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, [a, b, c]));
                }
            }
        }
    }
    best.unwrap_or((0, [1, 0, 0]))
}
