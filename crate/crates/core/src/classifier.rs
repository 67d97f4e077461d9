//! Monomial equivalence of toric codes: closed-form verdicts for the
//! tetrahedron and width-1 families, a constructive witness search, and a
//! census that cross-checks the two.
//!
//! Two codes are monomially equivalent when G2 = M G1 Δ Π for an invertible
//! M, an invertible diagonal Δ and a permutation Π. The witness search
//! restricts M to row permutations, so a witness is always a valid
//! certificate, while failure to find one is only evidence. Inequivalence is
//! claimed only when an invariant (minimum distance, weight enumerator)
//! separates the codes.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::formula_for;
use crate::galois::{make_field, FieldElement};
use crate::polytope::{
    empty_tetrahedron, white_orbit, width1_representative, Family, LatticePolytope, Width1Sig,
};
use crate::toriccode::{build_code, min_nonzero_weight, ToricCode, WeightEnumerator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquivalenceStatus {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

impl fmt::Display for EquivalenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceStatus::Equivalent => "EQUIVALENT",
            EquivalenceStatus::Inequivalent => "INEQUIVALENT",
            EquivalenceStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// The closed-form rule a theorem verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// T(s1,t), T(s2,t): s1 ≡ s2 mod gcd(t, q-1) or s1 ∈ {±s2^{±1}} mod t.
    TetraSameT,
    /// T(s,t1), T(s,t2): gcd(t1, q-1) = gcd(t2, q-1).
    TetraSameS,
    /// Width-1 polytopes of different signature.
    Signature,
    /// (2,2) and (3,1) each form a single class.
    SingleClass,
    /// (3,2): equivalent only for equal (s,t).
    Sig32Parameters,
    /// (2,1) with equal s: gcd(t, q-1) = gcd(t', q-1).
    Sig21SameS,
    /// (2,1) with equal t: s ≡ s' mod gcd(t, q-1).
    Sig21SameT,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::TetraSameT => "tetra-same-t",
            Criterion::TetraSameS => "tetra-same-s",
            Criterion::Signature => "signature",
            Criterion::SingleClass => "single-class",
            Criterion::Sig32Parameters => "sig32-parameters",
            Criterion::Sig21SameS => "sig21-same-s",
            Criterion::Sig21SameT => "sig21-same-t",
        })
    }
}

/// G2[r][j] = G1[row_perm[r]][pi[j]] · delta[j].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row_perm: Vec<usize>,
    pub pi: Vec<usize>,
    pub delta: Vec<FieldElement>,
}

impl Witness {
    pub fn rows_fixed(&self) -> bool {
        self.row_perm.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn delta_trivial(&self) -> bool {
        self.delta.iter().all(|&d| d == FieldElement::ONE)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Theorem(Criterion),
    Witness(Witness),
    Invariant { name: String, a: String, b: String },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    pub evidence: Evidence,
}

impl EquivalenceVerdict {
    fn theorem(equivalent: bool, c: Criterion) -> Self {
        EquivalenceVerdict {
            status: if equivalent {
                EquivalenceStatus::Equivalent
            } else {
                EquivalenceStatus::Inequivalent
            },
            evidence: Evidence::Theorem(c),
        }
    }

    fn inconclusive() -> Self {
        EquivalenceVerdict {
            status: EquivalenceStatus::Inconclusive,
            evidence: Evidence::None,
        }
    }

    pub fn is_decisive(&self) -> bool {
        self.status != EquivalenceStatus::Inconclusive
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        match &self.evidence {
            Evidence::Theorem(c) => write!(f, " (theorem: {c})"),
            Evidence::Witness(w) => {
                write!(f, " (witness: row order {:?}", w.row_perm)?;
                if !w.delta_trivial() {
                    f.write_str(", nontrivial column scaling")?;
                }
                f.write_str(")")
            }
            Evidence::Invariant { name, a, b } => write!(f, " ({name}: {a} vs {b})"),
            Evidence::None => Ok(()),
        }
    }
}

/// Columns of a T(s,t) or (2,1)(s,t) code grouped by (x, z, y^t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPartition {
    t: i64,
    units: u32,
    cells: BTreeMap<(FieldElement, FieldElement, FieldElement), Vec<usize>>,
}

impl ColumnPartition {
    pub fn t(&self) -> i64 {
        self.t
    }

    /// Keyed by (x0, z0, A) with A = y^t.
    pub fn cells(&self) -> &BTreeMap<(FieldElement, FieldElement, FieldElement), Vec<usize>> {
        &self.cells
    }

    /// Every cell has gcd(t, q-1) columns and each (x0, z0) carries
    /// (q-1)/gcd(t, q-1) distinct A-values.
    pub fn satisfies_size_law(&self) -> bool {
        let g = self.t.gcd(&(self.units as i64)) as usize;
        let mut per_xz: BTreeMap<(FieldElement, FieldElement), usize> = BTreeMap::new();
        for (&(x, z, _), cols) in &self.cells {
            if cols.len() != g {
                return false;
            }
            *per_xz.entry((x, z)).or_insert(0) += 1;
        }
        let units = self.units as usize;
        per_xz.len() == units * units && per_xz.values().all(|&c| c == units / g)
    }
}

pub fn column_partition(code: &ToricCode) -> Result<ColumnPartition> {
    let t = match code.polytope().family() {
        Family::EmptyTetra { t, .. } | Family::Sig21 { t, .. } => t,
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    let f = code.field();
    let mut cells: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for c in 0..code.n() {
        let [x, y, z] = code.column_point(c);
        let a = f.pow(y, t)?;
        cells.entry((x, z, a)).or_default().push(c);
    }
    Ok(ColumnPartition {
        t,
        units: f.alpha_order(),
        cells,
    })
}

fn check_shapes(c1: &ToricCode, c2: &ToricCode) -> Result<()> {
    if c1.field().order() != c2.field().order() || c1.field().modulus() != c2.field().modulus() {
        return Err(Error::ShapeMismatch(format!(
            "fields GF({}) and GF({}) differ",
            c1.field().order(),
            c2.field().order()
        )));
    }
    if (c1.n(), c1.k()) != (c2.n(), c2.k()) {
        return Err(Error::ShapeMismatch(format!(
            "[n,k] = [{},{}] vs [{},{}]",
            c1.n(),
            c1.k(),
            c2.n(),
            c2.k()
        )));
    }
    Ok(())
}

/// Scales a column so its first nonzero entry is 1.
fn normalize(code: &ToricCode, col: impl Iterator<Item = FieldElement>) -> Vec<FieldElement> {
    let f = code.field();
    let col: Vec<FieldElement> = col.collect();
    match col.iter().find(|a| !a.is_zero()) {
        Some(&lead) => {
            let inv = f.inv(lead).expect("nonzero");
            col.into_iter().map(|a| f.mul(a, inv)).collect()
        }
        None => col,
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Searches for G2 = (R G1) Δ Π with R a row permutation.
///
/// Row orders are tried lexicographically, identity first. For each, columns
/// of both matrices are scaled to lead with 1 and compared as multisets; a
/// match yields Π by pairing the sorted columns in order (stable on column
/// index) and Δ from the leading entries.
pub fn witness_search(c1: &ToricCode, c2: &ToricCode) -> Result<Option<Witness>> {
    check_shapes(c1, c2)?;
    let (k, n) = (c1.k(), c1.n());
    let f = c1.field();
    let sorted_cols = |code: &ToricCode, rows: &[usize]| {
        let mut cols: Vec<(Vec<FieldElement>, usize)> = (0..n)
            .map(|c| (normalize(code, rows.iter().map(|&r| code.entry(r, c))), c))
            .collect();
        cols.sort();
        cols
    };
    let identity: Vec<usize> = (0..k).collect();
    let target = sorted_cols(c2, &identity);
    let mut rows = identity.clone();
    loop {
        let candidate = sorted_cols(c1, &rows);
        if candidate.iter().zip(&target).all(|(a, b)| a.0 == b.0) {
            let mut pi = vec![0; n];
            for (a, b) in candidate.iter().zip(&target) {
                pi[b.1] = a.1;
            }
            let delta = (0..n)
                .map(|j| {
                    let r = (0..k).find(|&r| !c2.entry(r, j).is_zero());
                    match r {
                        Some(r) => f
                            .div(c2.entry(r, j), c1.entry(rows[r], pi[j]))
                            .expect("nonzero"),
                        None => FieldElement::ONE,
                    }
                })
                .collect();
            return Ok(Some(Witness {
                row_perm: rows,
                pi,
                delta,
            }));
        }
        if !next_permutation(&mut rows) {
            return Ok(None);
        }
    }
}

/// Checks G2[r][j] = G1[row_perm[r]][pi[j]] · delta[j] entrywise.
pub fn verify_witness(c1: &ToricCode, c2: &ToricCode, w: &Witness) -> bool {
    if check_shapes(c1, c2).is_err() {
        return false;
    }
    let (k, n) = (c1.k(), c1.n());
    let is_perm = |p: &[usize], len: usize| {
        let mut seen = vec![false; len];
        p.len() == len
            && p.iter()
                .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
    };
    if !is_perm(&w.row_perm, k) || !is_perm(&w.pi, n) || w.delta.len() != n {
        return false;
    }
    if w.delta.iter().any(|d| d.is_zero()) {
        return false;
    }
    let f = c1.field();
    (0..k).all(|r| {
        (0..n).all(|j| c2.entry(r, j) == f.mul(c1.entry(w.row_perm[r], w.pi[j]), w.delta[j]))
    })
}

fn format_enumerator(e: &WeightEnumerator) -> String {
    let terms: Vec<String> = e.iter().map(|(w, c)| format!("{w}:{c}")).collect();
    format!("{{{}}}", terms.join(", "))
}

/// Verdict from invariants alone, for when no witness was found.
fn invariant_verdict(e1: &WeightEnumerator, e2: &WeightEnumerator) -> EquivalenceVerdict {
    let (d1, d2) = (min_nonzero_weight(e1), min_nonzero_weight(e2));
    if d1 != d2 {
        let show = |d: Option<usize>| d.map_or("none".to_string(), |d| d.to_string());
        return EquivalenceVerdict {
            status: EquivalenceStatus::Inequivalent,
            evidence: Evidence::Invariant {
                name: "min_distance".into(),
                a: show(d1),
                b: show(d2),
            },
        };
    }
    if e1 != e2 {
        return EquivalenceVerdict {
            status: EquivalenceStatus::Inequivalent,
            evidence: Evidence::Invariant {
                name: "weight_enumerator".into(),
                a: format_enumerator(e1),
                b: format_enumerator(e2),
            },
        };
    }
    EquivalenceVerdict::inconclusive()
}

fn decide(
    c1: &ToricCode,
    e1: &WeightEnumerator,
    c2: &ToricCode,
    e2: &WeightEnumerator,
) -> Result<EquivalenceVerdict> {
    Ok(match witness_search(c1, c2)? {
        Some(w) => EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            evidence: Evidence::Witness(w),
        },
        None => invariant_verdict(e1, e2),
    })
}

/// Witness search, falling back to invariants: EQUIVALENT with a witness,
/// INEQUIVALENT with a separating invariant, otherwise INCONCLUSIVE.
pub fn witness_equivalence(c1: &ToricCode, c2: &ToricCode) -> Result<EquivalenceVerdict> {
    check_shapes(c1, c2)?;
    if let Some(w) = witness_search(c1, c2)? {
        return Ok(EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            evidence: Evidence::Witness(w),
        });
    }
    Ok(invariant_verdict(
        &c1.weight_enumerator(),
        &c2.weight_enumerator(),
    ))
}

fn check_order(q: u32) -> Result<i64> {
    make_field(q)?;
    Ok(q as i64 - 1)
}

/// Closed-form verdict for C_T(s1,t1) vs C_T(s2,t2). Decisive when the
/// pairs share t or share s; otherwise INCONCLUSIVE.
pub fn dim4_theorem_verdict(
    q: u32,
    s1: i64,
    t1: i64,
    s2: i64,
    t2: i64,
) -> Result<EquivalenceVerdict> {
    let units = check_order(q)?;
    empty_tetrahedron(s1, t1)?;
    empty_tetrahedron(s2, t2)?;
    if t1 == t2 {
        let t = t1;
        let g = t.gcd(&units);
        let same_class =
            (s1 - s2).rem_euclid(g) == 0 || white_orbit(s2, t)?.contains(&s1.rem_euclid(t));
        return Ok(EquivalenceVerdict::theorem(
            same_class,
            Criterion::TetraSameT,
        ));
    }
    if s1 == s2 {
        return Ok(EquivalenceVerdict::theorem(
            t1.gcd(&units) == t2.gcd(&units),
            Criterion::TetraSameS,
        ));
    }
    Ok(EquivalenceVerdict::inconclusive())
}

/// True when gcd(t, q-1) = 1, in which case all T(s,t) for this t give
/// equivalent codes.
pub fn dim4_gcd_corollary(q: u32, t: i64) -> bool {
    t.gcd(&(q as i64 - 1)) == 1
}

/// Closed-form verdict for two width-1 five-point polytopes. Parameters are
/// ignored for (2,2) and (3,1).
pub fn dim5_theorem_verdict(
    q: u32,
    sig_a: Width1Sig,
    params_a: (i64, i64),
    sig_b: Width1Sig,
    params_b: (i64, i64),
) -> Result<EquivalenceVerdict> {
    let units = check_order(q)?;
    width1_representative(sig_a, params_a.0, params_a.1)?;
    width1_representative(sig_b, params_b.0, params_b.1)?;
    if sig_a != sig_b {
        return Ok(EquivalenceVerdict::theorem(false, Criterion::Signature));
    }
    let ((s1, t1), (s2, t2)) = (params_a, params_b);
    Ok(match sig_a {
        Width1Sig::Sig22 | Width1Sig::Sig31 => {
            EquivalenceVerdict::theorem(true, Criterion::SingleClass)
        }
        Width1Sig::Sig32 => {
            EquivalenceVerdict::theorem(params_a == params_b, Criterion::Sig32Parameters)
        }
        Width1Sig::Sig21 if s1 == s2 => {
            EquivalenceVerdict::theorem(t1.gcd(&units) == t2.gcd(&units), Criterion::Sig21SameS)
        }
        Width1Sig::Sig21 if t1 == t2 => EquivalenceVerdict::theorem(
            (s1 - s2).rem_euclid(t1.gcd(&units)) == 0,
            Criterion::Sig21SameT,
        ),
        Width1Sig::Sig21 => EquivalenceVerdict::inconclusive(),
    })
}

/// Closed-form verdict for two tetrahedra or two width-1 polytopes;
/// INCONCLUSIVE for any other combination.
pub fn theorem_verdict(q: u32, a: Family, b: Family) -> Result<EquivalenceVerdict> {
    match (a, b) {
        (Family::EmptyTetra { s: s1, t: t1 }, Family::EmptyTetra { s: s2, t: t2 }) => {
            dim4_theorem_verdict(q, s1, t1, s2, t2)
        }
        _ => match (a.width1_sig(), b.width1_sig()) {
            (Some(sa), Some(sb)) => dim5_theorem_verdict(
                q,
                sa,
                a.params().unwrap_or((0, 0)),
                sb,
                b.params().unwrap_or((0, 0)),
            ),
            _ => Ok(EquivalenceVerdict::inconclusive()),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CensusDim {
    /// Empty tetrahedra T(s,t).
    Four,
    /// Width-1 five-point polytopes.
    Five,
}

impl CensusDim {
    pub fn from_k(k: u32) -> Result<Self> {
        match k {
            4 => Ok(CensusDim::Four),
            5 => Ok(CensusDim::Five),
            _ => Err(Error::OutOfRange {
                what: "census dimension",
                value: k as i64,
                lo: 4,
                hi: 5,
            }),
        }
    }
}

/// The census sweep for GF(q) in (family, t, s) order, with t <= q-2.
pub fn census_polytopes(q: u32, dim: CensusDim) -> Result<Vec<LatticePolytope>> {
    make_field(q)?;
    let tmax = q as i64 - 2;
    let coprime = |s: i64, t: i64| s.gcd(&t) == 1;
    let mut out = Vec::new();
    match dim {
        CensusDim::Four => {
            for t in 1..=tmax {
                for s in (0..t).filter(|&s| coprime(s, t)) {
                    out.push(empty_tetrahedron(s, t)?);
                }
            }
        }
        CensusDim::Five => {
            if q < 5 {
                return Err(Error::InvalidField(format!(
                    "width-1 census needs q >= 5, got q={q}"
                )));
            }
            for t in 1..=tmax {
                for s in (0..=t / 2).filter(|&s| coprime(s, t)) {
                    out.push(width1_representative(Width1Sig::Sig21, s, t)?);
                }
            }
            out.push(width1_representative(Width1Sig::Sig22, 0, 0)?);
            out.push(width1_representative(Width1Sig::Sig31, 0, 0)?);
            for t in 1..=tmax {
                for s in (1..=t).filter(|&s| coprime(s, t)) {
                    out.push(width1_representative(Width1Sig::Sig32, s, t)?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub q: u32,
    pub family: String,
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub n: usize,
    pub k: usize,
    pub d_formula_lower: Option<u64>,
    pub d_formula_upper: Option<u64>,
    pub d_brute: u64,
    pub class_id: usize,
    pub theorem_agrees: bool,
}

/// A pair where a decisive theorem verdict differs from the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub a: String,
    pub b: String,
    pub theorem: EquivalenceVerdict,
    pub computed: EquivalenceVerdict,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vs {}: theorem says {}, computation says {}",
            self.a, self.b, self.theorem, self.computed
        )
    }
}

/// Verdicts for one unordered pair of census rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub a: usize,
    pub b: usize,
    pub theorem: EquivalenceVerdict,
    pub computed: EquivalenceVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub q: u32,
    pub dim: CensusDim,
    pub rows: Vec<CensusRow>,
    #[serde(skip)]
    pub polytopes: Vec<LatticePolytope>,
    #[serde(skip)]
    pub pairs: Vec<PairVerdict>,
    pub mismatches: Vec<Mismatch>,
}

impl CensusReport {
    /// Fails with `TheoremWitnessMismatch` if any theorem verdict disagrees
    /// with the computed grouping.
    pub fn check(&self) -> Result<()> {
        if self.mismatches.is_empty() {
            Ok(())
        } else {
            Err(Error::TheoremWitnessMismatch(
                self.mismatches
                    .iter()
                    .map(|m| format!("q={}: {m}", self.q))
                    .collect(),
            ))
        }
    }

    /// Polytope indices grouped by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let count = self.rows.iter().map(|r| r.class_id + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (i, r) in self.rows.iter().enumerate() {
            out[r.class_id].push(i);
        }
        out
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<&PairVerdict> {
        let (a, b) = (a.min(b), a.max(b));
        self.pairs.iter().find(|p| p.a == a && p.b == b)
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groups every polytope of the sweep by computed equivalence and compares
/// with the closed-form verdicts. Mismatches are reported, not raised; use
/// [`CensusReport::check`] to turn them into an error.
///
/// Fails with `Inconsistent` if two codes certified equivalent differ in
/// minimum distance or weight enumerator.
pub fn census(q: u32, dim: CensusDim) -> Result<CensusReport> {
    let polytopes = census_polytopes(q, dim)?;
    let field = make_field(q)?;
    struct Entry {
        code: ToricCode,
        enumerator: WeightEnumerator,
        d_brute: u64,
    }
    let entries: Vec<Entry> = polytopes
        .par_iter()
        .map(|p| {
            let code = build_code(&field, p)?;
            let d_brute = code.min_distance_brute()?.lower;
            let enumerator = code.weight_enumerator();
            Ok(Entry {
                code,
                enumerator,
                d_brute,
            })
        })
        .collect::<Result<_>>()?;

    let index_pairs: Vec<(usize, usize)> = (0..polytopes.len())
        .flat_map(|a| (a + 1..polytopes.len()).map(move |b| (a, b)))
        .collect();
    let pairs: Vec<PairVerdict> = index_pairs
        .par_iter()
        .map(|&(a, b)| {
            let (ea, eb) = (&entries[a], &entries[b]);
            Ok(PairVerdict {
                a,
                b,
                theorem: theorem_verdict(q, polytopes[a].family(), polytopes[b].family())?,
                computed: decide(&ea.code, &ea.enumerator, &eb.code, &eb.enumerator)?,
            })
        })
        .collect::<Result<_>>()?;

    let mut parent: Vec<usize> = (0..polytopes.len()).collect();
    let mut agrees = vec![true; polytopes.len()];
    let mut mismatches = Vec::new();
    for p in &pairs {
        if p.computed.status == EquivalenceStatus::Equivalent {
            let (ea, eb) = (&entries[p.a], &entries[p.b]);
            if ea.d_brute != eb.d_brute || ea.enumerator != eb.enumerator {
                return Err(Error::Inconsistent(format!(
                    "{} and {} have a witness but different invariants",
                    polytopes[p.a], polytopes[p.b]
                )));
            }
            let (ra, rb) = (find(&mut parent, p.a), find(&mut parent, p.b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        if p.theorem.is_decisive() && p.theorem.status != p.computed.status {
            agrees[p.a] = false;
            agrees[p.b] = false;
            mismatches.push(Mismatch {
                a: polytopes[p.a].to_string(),
                b: polytopes[p.b].to_string(),
                theorem: p.theorem.clone(),
                computed: p.computed.clone(),
            });
        }
    }

    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rows = Vec::with_capacity(polytopes.len());
    for (i, p) in polytopes.iter().enumerate() {
        let root = find(&mut parent, i);
        let next = class_of_root.len();
        let class_id = *class_of_root.entry(root).or_insert(next);
        let formula = formula_for(p, q).ok().map(|(_, d)| d);
        let (s, t) = match p.family().params() {
            Some((s, t)) => (Some(s), Some(t)),
            None => (None, None),
        };
        rows.push(CensusRow {
            q,
            family: p.family().tag().to_string(),
            s,
            t,
            n: entries[i].code.n(),
            k: entries[i].code.k(),
            d_formula_lower: formula.map(|d| d.lower),
            d_formula_upper: formula.map(|d| d.upper),
            d_brute: entries[i].d_brute,
            class_id,
            theorem_agrees: agrees[i],
        });
    }
    Ok(CensusReport {
        q,
        dim,
        rows,
        polytopes,
        pairs,
        mismatches,
    })
}

/// [`census`] followed by [`CensusReport::check`].
pub fn census_checked(q: u32, dim: CensusDim) -> Result<CensusReport> {
    let report = census(q, dim)?;
    report.check()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::parse_polytope;

    fn code(q: u32, spec: &str) -> ToricCode {
        build_code(&make_field(q).unwrap(), &parse_polytope(spec).unwrap()).unwrap()
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn self_witness_is_identity() {
        let c = code(5, "T(1,2)");
        let w = witness_search(&c, &c).unwrap().unwrap();
        assert!(w.rows_fixed() && w.delta_trivial());
        assert_eq!(w.pi, (0..c.n()).collect::<Vec<_>>());
    }

    #[test]
    fn tetra_witness_q5() {
        let (a, b) = (code(5, "T(1,2)"), code(5, "T(3,2)"));
        let v = witness_equivalence(&a, &b).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Equivalent);
        let Evidence::Witness(w) = &v.evidence else {
            panic!("{v}")
        };
        assert!(verify_witness(&a, &b, w));
        // tampering breaks it
        let mut bad = w.clone();
        bad.pi.swap(0, 1);
        assert!(!verify_witness(&a, &b, &bad));
    }

    #[test]
    fn separated_by_distance() {
        let v = witness_equivalence(&code(5, "T(0,1)"), &code(5, "T(1,2)")).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Inequivalent);
        assert_eq!(
            v.evidence,
            Evidence::Invariant {
                name: "min_distance".into(),
                a: "48".into(),
                b: "46".into()
            }
        );
    }

    #[test]
    fn shape_mismatch() {
        assert!(matches!(
            witness_equivalence(&code(5, "T(1,2)"), &code(5, "P22")),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            witness_equivalence(&code(5, "T(1,2)"), &code(7, "T(1,2)")),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn dim4_theorem_examples() {
        let eq = EquivalenceStatus::Equivalent;
        let ne = EquivalenceStatus::Inequivalent;
        assert_eq!(dim4_theorem_verdict(7, 1, 1, 1, 5).unwrap().status, eq);
        assert_eq!(dim4_theorem_verdict(7, 1, 4, 3, 4).unwrap().status, eq);
        assert_eq!(dim4_theorem_verdict(13, 1, 9, 2, 9).unwrap().status, ne);
        assert_eq!(dim4_theorem_verdict(7, 1, 2, 1, 3).unwrap().status, ne);
        assert_eq!(
            dim4_theorem_verdict(7, 1, 2, 2, 3).unwrap().status,
            EquivalenceStatus::Inconclusive
        );
        assert!(dim4_theorem_verdict(7, 2, 4, 1, 4).is_err());
    }

    #[test]
    fn gcd_corollary() {
        assert!(dim4_gcd_corollary(7, 5));
        assert!(!dim4_gcd_corollary(7, 4));
        assert!(!dim4_gcd_corollary(8, 7));
    }

    #[test]
    fn dim5_theorem_examples() {
        use Width1Sig::*;
        let v = dim5_theorem_verdict(11, Sig22, (0, 0), Sig31, (0, 0)).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Inequivalent);
        assert_eq!(v.evidence, Evidence::Theorem(Criterion::Signature));
        let v = dim5_theorem_verdict(7, Sig32, (1, 2), Sig32, (1, 2)).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Equivalent);
        let v = dim5_theorem_verdict(7, Sig32, (1, 1), Sig32, (1, 2)).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Inequivalent);
        let v = dim5_theorem_verdict(7, Sig21, (1, 2), Sig21, (1, 4)).unwrap();
        assert_eq!(v.evidence, Evidence::Theorem(Criterion::Sig21SameS));
        assert_eq!(v.status, EquivalenceStatus::Equivalent);
        let v = dim5_theorem_verdict(7, Sig21, (0, 1), Sig21, (1, 3)).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Inconclusive);
    }

    #[test]
    fn partition_cells() {
        let p = column_partition(&code(5, "T(1,2)")).unwrap();
        assert!(p.satisfies_size_law());
        assert!(p.cells().values().all(|c| c.len() == 2));
        let p = column_partition(&code(5, "T(0,1)")).unwrap();
        assert!(p.cells().values().all(|c| c.len() == 1));
        assert_eq!(p.cells().len(), 64);
        let p = column_partition(&code(7, "P21(1,6)")).unwrap();
        assert!(p.cells().values().all(|c| c.len() == 6));
        assert!(p.satisfies_size_law());
        assert!(matches!(
            column_partition(&code(5, "P22")),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn census_q5_dim4() {
        let r = census(5, CensusDim::Four).unwrap();
        let specs: Vec<String> = r.polytopes.iter().map(|p| p.to_string()).collect();
        assert_eq!(specs, ["T(0,1)", "T(1,2)", "T(1,3)", "T(2,3)"]);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        // d = 48, 46, 48, 48; T(0,1) ~ T(1,3) ~ T(2,3)
        let ids: Vec<usize> = r.rows.iter().map(|row| row.class_id).collect();
        assert_eq!(ids, [0, 1, 0, 0]);
        assert!(r
            .rows
            .iter()
            .all(|row| row.d_formula_lower == Some(row.d_brute)));
    }

    #[test]
    fn census_rejects_small_fields_for_width_one() {
        assert!(matches!(
            census(4, CensusDim::Five),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            census(6, CensusDim::Four),
            Err(Error::NotPrimePower(6))
        ));
    }
}
