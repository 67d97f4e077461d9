//! Toric codes C_P over GF(q): generator matrix, zero counting, brute-force
//! minimum distance and weight enumerator.
//!
//! Columns are the torus points (α^i, α^j, α^l) in lexicographic order of
//! (i, j, l) in [0, q-2]^3; rows follow the polytope's point order. Entry
//! (r, c) is x^a y^b z^c for the r-th lattice point (a, b, c), with negative
//! exponents taken through unit inverses.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldSpec, SlotTables};
use crate::polytope::{LatticePolytope, Point};

/// How a distance value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DistanceMethod {
    Brute,
    Formula,
    Bound,
}

/// A minimum distance, exact when `lower == upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DistanceResult {
    pub lower: u64,
    pub upper: u64,
    pub method: DistanceMethod,
    /// Set when the closed-form lower bound fell to zero or below and was
    /// clamped to 1.
    pub lower_vacuous: bool,
}

impl DistanceResult {
    pub fn exact(value: u64, method: DistanceMethod) -> Self {
        DistanceResult {
            lower: value,
            upper: value,
            method,
            lower_vacuous: false,
        }
    }

    /// `[lower, upper]` clamped into `[1, n]`.
    pub fn interval(lower: i64, upper: i64, n: u64, method: DistanceMethod) -> Self {
        let n = n as i64;
        let clamped_upper = upper.clamp(1, n);
        DistanceResult {
            lower: lower.clamp(1, clamped_upper) as u64,
            upper: clamped_upper as u64,
            method,
            lower_vacuous: lower < 1,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, d: u64) -> bool {
        self.lower <= d && d <= self.upper
    }
}

impl std::fmt::Display for DistanceResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}

/// Weight -> number of codewords of that weight.
pub type WeightEnumerator = BTreeMap<usize, u64>;

/// The code C_P for a polytope P over GF(q), on the torus (F_q*)^d with
/// d = 3 for [`build_code`] (d = 1 or 2 via [`build_code_on_torus`]).
#[derive(Clone, Debug)]
pub struct ToricCode {
    field: FieldSpec,
    polytope: LatticePolytope,
    torus_dim: usize,
    n: usize,
    /// Row-major k x n matrix of slot-encoded entries.
    slots: Vec<u8>,
    tables: std::sync::Arc<SlotTables>,
}

impl std::fmt::Debug for SlotTables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SlotTables")
    }
}

/// Builds C_P on the 3-dimensional torus.
pub fn build_code(field: &FieldSpec, polytope: &LatticePolytope) -> Result<ToricCode> {
    build_code_on_torus(field, polytope, 3)
}

/// Builds C_P on (F_q*)^d, d in 1..=3. Coordinates past `d` must be zero.
///
/// Fails with `ExponentCollision` if two points agree componentwise mod q-1,
/// in which case the rows would coincide.
pub fn build_code_on_torus(
    field: &FieldSpec,
    polytope: &LatticePolytope,
    torus_dim: usize,
) -> Result<ToricCode> {
    if !(1..=3).contains(&torus_dim) {
        return Err(Error::InvalidParams(format!(
            "torus dimension {torus_dim} not in 1..=3"
        )));
    }
    let points = polytope.points();
    if let Some(p) = points
        .iter()
        .find(|p| p[torus_dim..].iter().any(|&c| c != 0))
    {
        return Err(Error::InvalidParams(format!(
            "point {p:?} does not lie in the first {torus_dim} coordinates"
        )));
    }
    let order = field.alpha_order() as i64;
    let reduce = |p: &Point| -> Point {
        [
            p[0].rem_euclid(order),
            p[1].rem_euclid(order),
            p[2].rem_euclid(order),
        ]
    };
    for (i, a) in points.iter().enumerate() {
        for b in &points[..i] {
            if reduce(a) == reduce(b) {
                return Err(Error::ExponentCollision {
                    a: *b,
                    b: *a,
                    modulus: order as u32,
                });
            }
        }
    }

    let units = order as usize;
    let n = units.pow(torus_dim as u32);
    let mut slots = Vec::with_capacity(points.len() * n);
    for p in points {
        let exps = reduce(p);
        for c in 0..n {
            let logs = column_logs(c, units, torus_dim);
            let e: i64 = (0..torus_dim).map(|d| exps[d] * logs[d] as i64).sum();
            slots.push(field.slot(field.alpha_pow(e)));
        }
    }
    Ok(ToricCode {
        field: field.clone(),
        polytope: polytope.clone(),
        torus_dim,
        n,
        slots,
        tables: std::sync::Arc::new(field.slot_tables()),
    })
}

/// Discrete logs (i, j, l) of torus column `c`; unused trailing entries are 0.
fn column_logs(c: usize, units: usize, torus_dim: usize) -> [usize; 3] {
    let mut out = [0usize; 3];
    let mut rest = c;
    for d in (0..torus_dim).rev() {
        out[d] = rest % units;
        rest /= units;
    }
    out
}

impl ToricCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    /// Length (q-1)^d.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension: the number of lattice points.
    pub fn k(&self) -> usize {
        self.polytope.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> FieldElement {
        self.field.slot_element(self.slots[row * self.n + col])
    }

    pub fn row(&self, row: usize) -> Vec<FieldElement> {
        (0..self.n).map(|c| self.entry(row, c)).collect()
    }

    pub fn column(&self, col: usize) -> Vec<FieldElement> {
        (0..self.k()).map(|r| self.entry(r, col)).collect()
    }

    /// The torus point of column `c`, as (x, y, z) with unused trailing
    /// coordinates set to 1.
    pub fn column_point(&self, col: usize) -> [FieldElement; 3] {
        let logs = column_logs(col, self.field.alpha_order() as usize, self.torus_dim);
        let mut out = [FieldElement::ONE; 3];
        for d in 0..self.torus_dim {
            out[d] = self.field.alpha_pow(logs[d] as i64);
        }
        out
    }

    pub(crate) fn slot_row(&self, row: usize) -> &[u8] {
        &self.slots[row * self.n..(row + 1) * self.n]
    }

    /// Codeword uG.
    pub fn encode(&self, u: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(u)?;
        let us: Vec<u8> = u.iter().map(|&a| self.field.slot(a)).collect();
        let t = &self.tables;
        Ok((0..self.n)
            .map(|c| {
                let mut acc = t.zero;
                for (r, &a) in us.iter().enumerate() {
                    acc = t.add(acc, t.mul(a, self.slots[r * self.n + c]));
                }
                self.field.slot_element(acc)
            })
            .collect())
    }

    fn check_len(&self, u: &[FieldElement]) -> Result<()> {
        if u.len() != self.k() {
            return Err(Error::CoefficientLength {
                expected: self.k(),
                got: u.len(),
            });
        }
        Ok(())
    }

    /// Number of torus points where f = Σ u_r x^{p_r} vanishes.
    pub fn count_zeros(&self, u: &[FieldElement]) -> Result<usize> {
        self.check_len(u)?;
        if u.iter().all(|a| a.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.encode(u)?.iter().filter(|a| a.is_zero()).count())
    }

    /// Work units for enumeration: fixed coefficient prefixes whose
    /// completions partition the target set of coefficient vectors.
    fn prefixes(&self, projective: bool) -> Vec<Vec<u8>> {
        let k = self.k();
        let q = self.field.order() as u8;
        let zero = self.tables.zero;
        let one = self.field.slot(FieldElement::ONE);
        let mut out = Vec::new();
        if projective {
            // Leading nonzero coefficient is 1, split again on the next one.
            for lead in 0..k {
                let mut base = vec![zero; lead];
                base.push(one);
                if lead + 1 < k {
                    for a in 0..q {
                        let mut p = base.clone();
                        p.push(a);
                        out.push(p);
                    }
                } else {
                    out.push(base);
                }
            }
        } else {
            for a in 0..q {
                if k >= 2 {
                    for b in 0..q {
                        out.push(vec![a, b]);
                    }
                } else {
                    out.push(vec![a]);
                }
            }
        }
        out
    }

    /// Visits every coefficient vector extending `prefix` with its codeword
    /// (both slot-encoded). Partial sums are kept per level so each leaf
    /// costs one pass over the columns.
    fn walk(&self, prefix: &[u8], visit: &mut impl FnMut(&[u8], &[u8])) {
        let k = self.k();
        let n = self.n;
        let t = &*self.tables;
        let q = self.field.order() as u8;
        let mut partial = vec![t.zero; n];
        for (r, &a) in prefix.iter().enumerate() {
            if a != t.zero {
                let row = self.slot_row(r);
                for c in 0..n {
                    partial[c] = t.add(partial[c], t.mul(a, row[c]));
                }
            }
        }
        let mut u = prefix.to_vec();
        u.resize(k, t.zero);
        if prefix.len() == k {
            visit(&u, &partial);
            return;
        }
        let depth = k - prefix.len();
        let mut levels = vec![partial; depth + 1];
        self.walk_level(prefix.len(), &mut u, &mut levels, 0, q, visit);
    }

    fn walk_level(
        &self,
        row: usize,
        u: &mut Vec<u8>,
        levels: &mut Vec<Vec<u8>>,
        level: usize,
        q: u8,
        visit: &mut impl FnMut(&[u8], &[u8]),
    ) {
        let t = &*self.tables;
        let n = self.n;
        let g = self.slot_row(row);
        for a in 0..q {
            u[row] = a;
            let (lo, hi) = levels.split_at_mut(level + 1);
            let src = &lo[level];
            let dst = &mut hi[0];
            if a == t.zero {
                dst.copy_from_slice(src);
            } else {
                for c in 0..n {
                    dst[c] = t.add(src[c], t.mul(a, g[c]));
                }
            }
            if row + 1 == self.k() {
                visit(u, &levels[level + 1]);
            } else {
                self.walk_level(row + 1, u, levels, level + 1, q, visit);
            }
        }
    }

    /// Maximum number of torus zeros over nonzero f in L(P), with a
    /// polynomial achieving it (first in enumeration order).
    ///
    /// One representative per scaling class is enumerated (leading nonzero
    /// coefficient 1): (q^k - 1)/(q - 1) polynomials. This is exact since
    /// scaling by a unit does not move zeros.
    pub fn max_zeros_with_witness(&self) -> (usize, Vec<FieldElement>) {
        let zero = self.tables.zero;
        let best = self
            .prefixes(true)
            .into_par_iter()
            .enumerate()
            .map(|(task, prefix)| {
                let mut best: (usize, usize, Vec<u8>) = (0, usize::MAX, Vec::new());
                let mut idx = 0usize;
                self.walk(&prefix, &mut |u, word| {
                    let z = word.iter().filter(|&&s| s == zero).count();
                    if best.2.is_empty() || z > best.0 {
                        best = (z, idx, u.to_vec());
                    }
                    idx += 1;
                });
                (best.0, task, best.1, best.2)
            })
            .reduce(
                || (0, usize::MAX, usize::MAX, Vec::new()),
                |a, b| {
                    if a.3.is_empty() {
                        return b;
                    }
                    if b.3.is_empty() {
                        return a;
                    }
                    // max zeros, ties to the earliest polynomial
                    if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
                        b
                    } else {
                        a
                    }
                },
            );
        let poly = best.3.iter().map(|&s| self.field.slot_element(s)).collect();
        (best.0, poly)
    }

    pub fn max_zeros(&self) -> usize {
        self.max_zeros_with_witness().0
    }

    /// Weight distribution over all q^k codewords.
    ///
    /// Computed from scaling-class representatives: each nonzero class
    /// contributes q-1 codewords of equal weight, plus the zero word.
    pub fn weight_enumerator(&self) -> WeightEnumerator {
        let zero = self.tables.zero;
        let scale = self.field.alpha_order() as u64;
        let mut out = self
            .prefixes(true)
            .into_par_iter()
            .map(|prefix| {
                let mut local = WeightEnumerator::new();
                self.walk(&prefix, &mut |_, word| {
                    let w = word.iter().filter(|&&s| s != zero).count();
                    *local.entry(w).or_insert(0) += scale;
                });
                local
            })
            .reduce(WeightEnumerator::new, merge_counts);
        *out.entry(0).or_insert(0) += 1;
        out
    }

    /// Weight distribution by plain enumeration of every coefficient vector
    /// in GF(q)^k, without using scaling classes.
    pub fn weight_enumerator_exhaustive(&self) -> WeightEnumerator {
        let zero = self.tables.zero;
        self.prefixes(false)
            .into_par_iter()
            .map(|prefix| {
                let mut local = WeightEnumerator::new();
                self.walk(&prefix, &mut |_, word| {
                    let w = word.iter().filter(|&&s| s != zero).count();
                    *local.entry(w).or_insert(0) += 1;
                });
                local
            })
            .reduce(WeightEnumerator::new, merge_counts)
    }

    /// Minimum distance n - max Z(f), checked against the least nonzero
    /// weight from the exhaustive enumeration.
    pub fn min_distance_brute(&self) -> Result<DistanceResult> {
        let by_zeros = (self.n - self.max_zeros()) as u64;
        let by_weight = min_nonzero_weight(&self.weight_enumerator_exhaustive())
            .ok_or_else(|| Error::Inconsistent("code has no nonzero codeword".into()))?;
        if by_zeros != by_weight as u64 {
            return Err(Error::Inconsistent(format!(
                "n - max zeros = {by_zeros} but least codeword weight = {by_weight}"
            )));
        }
        Ok(DistanceResult::exact(by_zeros, DistanceMethod::Brute))
    }

    /// One line per row: discrete logs of the entries, `-inf` for zero.
    pub fn matrix_dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.k() {
            for c in 0..self.n {
                if c > 0 {
                    out.push(' ');
                }
                match self.entry(r, c).log() {
                    Some(l) => write!(out, "{l}").unwrap(),
                    None => out.push_str("-inf"),
                }
            }
            out.push('\n');
        }
        out
    }
}

fn merge_counts(mut a: WeightEnumerator, b: WeightEnumerator) -> WeightEnumerator {
    for (w, c) in b {
        *a.entry(w).or_insert(0) += c;
    }
    a
}

/// Least weight with a nonzero count, excluding weight 0.
pub fn min_nonzero_weight(e: &WeightEnumerator) -> Option<usize> {
    e.iter().find(|&(&w, &c)| w > 0 && c > 0).map(|(&w, _)| w)
}
