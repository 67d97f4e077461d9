use serde::Serialize;

use super::{det3, empty_tetrahedron, Family, LatticePolytope, Point};
use crate::error::{Error, Result};
use crate::galois::mod_inverse;

/// p -> M p + b with det M = ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineUnimodularMap {
    matrix: [[i64; 3]; 3],
    translation: Point,
}

impl AffineUnimodularMap {
    pub fn new(matrix: [[i64; 3]; 3], translation: Point) -> Result<Self> {
        let d = det3(matrix[0], matrix[1], matrix[2]);
        if d.abs() != 1 {
            return Err(Error::InvalidParams(format!(
                "matrix {matrix:?} has determinant {d}, not ±1"
            )));
        }
        Ok(AffineUnimodularMap {
            matrix,
            translation,
        })
    }

    pub fn identity() -> Self {
        AffineUnimodularMap {
            matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            translation: [0, 0, 0],
        }
    }

    pub fn matrix(&self) -> [[i64; 3]; 3] {
        self.matrix
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn det(&self) -> i64 {
        det3(self.matrix[0], self.matrix[1], self.matrix[2])
    }

    pub fn apply_point(&self, p: Point) -> Point {
        let m = &self.matrix;
        let b = self.translation;
        [
            m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2] + b[0],
            m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2] + b[1],
            m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2] + b[2],
        ]
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineUnimodularMap) -> AffineUnimodularMap {
        let a = &self.matrix;
        let b = &inner.matrix;
        let mut matrix = [[0i64; 3]; 3];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        let shifted = self.apply_point(inner.translation);
        AffineUnimodularMap {
            matrix,
            translation: shifted,
        }
    }

    /// Pointwise image, keeping point order. The result is `CUSTOM`.
    pub fn apply(&self, p: &LatticePolytope) -> LatticePolytope {
        let points = p.points().iter().map(|&q| self.apply_point(q)).collect();
        // Unimodular maps are injective, so distinctness is preserved.
        LatticePolytope {
            points,
            family: Family::Custom,
        }
    }
}

fn residue(s: i64, t: i64) -> i64 {
    s.rem_euclid(t)
}

/// {s, -s, s^-1, -s^-1} mod t, sorted and deduplicated.
pub fn white_orbit(s: i64, t: i64) -> Result<Vec<i64>> {
    // Validates gcd(s, t) = 1 and t >= 1.
    empty_tetrahedron(s, t)?;
    let inv = mod_inverse(s, t).unwrap_or(0);
    let mut orbit = vec![
        residue(s, t),
        residue(-s, t),
        residue(inv, t),
        residue(-inv, t),
    ];
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit)
}

/// Smallest residue in [0, t) lattice-equivalent to s, i.e. the minimum of
/// {±s^{±1}} mod t. T(s,t) and T(s',t) are lattice equivalent exactly when
/// their canonical values agree.
pub fn white_canonical(s: i64, t: i64) -> Result<i64> {
    Ok(white_orbit(s, t)?[0])
}

fn exact_div(a: i64, t: i64) -> i64 {
    debug_assert_eq!(a.rem_euclid(t), 0);
    a / t
}

/// shear (x,y,z) -> (x + k y, y, z), k = (s1 - s2)/t.
fn same_residue_map(s1: i64, s2: i64, t: i64) -> AffineUnimodularMap {
    let k = exact_div(s1 - s2, t);
    AffineUnimodularMap {
        matrix: [[1, k, 0], [0, 1, 0], [0, 0, 1]],
        translation: [0, 0, 0],
    }
}

/// For s1 s2 ≡ 1 (mod t).
fn inverse_residue_map(s1: i64, s2: i64, t: i64) -> AffineUnimodularMap {
    let k = exact_div(1 - s1 * s2, t);
    AffineUnimodularMap {
        matrix: [[s1, k, 0], [t, -s2, 0], [0, 0, -1]],
        translation: [0, 0, 1],
    }
}

/// For s1 ≡ -s2 (mod t).
fn negated_residue_map(s1: i64, s2: i64, t: i64) -> AffineUnimodularMap {
    let k = exact_div(s1 + s2, t);
    AffineUnimodularMap {
        matrix: [[-1, k, -1], [0, 1, 0], [0, 0, 1]],
        translation: [1, 0, 0],
    }
}

/// An affine unimodular map sending the vertices of T(s2,t) onto those of
/// T(s1,t), or `None` when s1 is not in {±s2^{±1}} mod t.
///
/// The four cases are tried in order: s1 ≡ s2, s1 ≡ s2^-1, s1 ≡ -s2 and
/// s1 ≡ -s2^-1. The last is the inverse-residue map to T(-s1, t) followed by
/// the negated-residue map.
pub fn white_equivalence_map(s1: i64, s2: i64, t: i64) -> Result<Option<AffineUnimodularMap>> {
    empty_tetrahedron(s1, t)?;
    empty_tetrahedron(s2, t)?;
    let inv2 = mod_inverse(s2, t).unwrap_or(0);
    let r1 = residue(s1, t);
    let map = if r1 == residue(s2, t) {
        Some(same_residue_map(s1, s2, t))
    } else if r1 == residue(inv2, t) {
        Some(inverse_residue_map(s1, s2, t))
    } else if r1 == residue(-s2, t) {
        Some(negated_residue_map(s1, s2, t))
    } else if r1 == residue(-inv2, t) {
        let mid = -s1;
        let first = inverse_residue_map(mid, s2, t);
        let second = negated_residue_map(s1, mid, t);
        Some(second.compose(&first))
    } else {
        None
    };
    Ok(map)
}
