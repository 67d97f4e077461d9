//! Per-field check suite: closed forms against brute force, census
//! concordance and structural invariants.

use serde::Serialize;

use crate::classifier::{census, column_partition, CensusDim, CensusReport};
use crate::error::Result;
use crate::formulas::{degenerate_distance, dim4_distance};
use crate::galois::make_field;
use crate::polytope::{
    affine_dependence, embedded_polygon, empty_tetrahedron, lattice_width, white_equivalence_map,
    white_orbit, width1_representative, width2_representative, Width1Sig,
};
use crate::toriccode::{build_code, build_code_on_torus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub q: u32,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn outcome(name: &'static str, failures: Vec<String>, total: usize) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{total} case(s)")
        } else {
            format!(
                "{} of {total} failed: {}",
                failures.len(),
                failures.join("; ")
            )
        },
    }
}

/// Formula bounds against brute force over the census rows.
fn formula_check(name: &'static str, report: &CensusReport, exact: bool) -> CheckOutcome {
    let mut failures = Vec::new();
    for (row, p) in report.rows.iter().zip(&report.polytopes) {
        let (Some(lo), Some(hi)) = (row.d_formula_lower, row.d_formula_upper) else {
            failures.push(format!("{p}: no formula"));
            continue;
        };
        let ok = if exact && lo == hi {
            row.d_brute == lo
        } else {
            lo <= row.d_brute && row.d_brute <= hi
        };
        if !ok {
            failures.push(format!(
                "{p}: brute {} vs formula [{lo}, {hi}]",
                row.d_brute
            ));
        }
    }
    outcome(name, failures, report.rows.len())
}

fn concordance_check(name: &'static str, report: &CensusReport) -> CheckOutcome {
    let failures = report.mismatches.iter().map(|m| m.to_string()).collect();
    outcome(name, failures, report.pairs.len())
}

fn degenerate_check(q: u32) -> Result<CheckOutcome> {
    let field = make_field(q)?;
    let mut failures = Vec::new();
    let mut total = 0;
    for i in 1..=4u8 {
        let Ok(formula) = degenerate_distance(i, q) else {
            continue;
        };
        total += 1;
        let p = embedded_polygon(i)?;
        let d3 = build_code(&field, &p)?.min_distance_brute()?.lower;
        let d2 = build_code_on_torus(&field, &p, 2)?
            .min_distance_brute()?
            .lower;
        if !formula.contains(d3) {
            failures.push(format!("E:{i}: brute {d3} vs formula {formula}"));
        }
        if d3 != (q as u64 - 1) * d2 {
            failures.push(format!("E:{i}: 3D {d3} != (q-1) x 2D {d2}"));
        }
    }
    Ok(outcome("degenerate", failures, total))
}

fn structure_check(report: &CensusReport) -> Result<CheckOutcome> {
    let field = make_field(report.q)?;
    let units = field.alpha_order() as u64;
    let mut failures = Vec::new();
    for p in &report.polytopes {
        let code = build_code(&field, p)?;
        let e = code.weight_enumerator();
        if e.iter().any(|(&w, &c)| w > 0 && c % units != 0) {
            failures.push(format!("{p}: enumerator not divisible by q-1"));
        }
        if let Ok(part) = column_partition(&code) {
            if !part.satisfies_size_law() {
                failures.push(format!("{p}: column partition cell sizes"));
            }
        }
    }
    Ok(outcome("structure", failures, report.polytopes.len()))
}

/// Runs every check for GF(q). Width-1 checks need q >= 5.
pub fn verify_q(q: u32) -> Result<VerifyReport> {
    make_field(q)?;
    let mut checks = Vec::new();

    let dim4 = census(q, CensusDim::Four)?;
    let mut c = formula_check("dim4-formula", &dim4, true);
    if q >= 3 {
        // T(1,1) is not in the sweep's normal form but is a valid tetrahedron.
        let d = build_code(&make_field(q)?, &empty_tetrahedron(1, 1)?)?.min_distance_brute()?;
        if d.lower != dim4_distance(q, 1)?.lower {
            c.passed = false;
            c.detail.push_str(&format!("; T(1,1): brute {}", d.lower));
        }
    }
    checks.push(c);
    checks.push(concordance_check("dim4-concordance", &dim4));
    checks.push(structure_check(&dim4)?);

    if q >= 5 {
        let dim5 = census(q, CensusDim::Five)?;
        checks.push(formula_check("dim5-formula", &dim5, true));
        checks.push(concordance_check("dim5-concordance", &dim5));
        checks.push(structure_check(&dim5)?);
    }
    checks.push(degenerate_check(q)?);
    Ok(VerifyReport { q, checks })
}

/// Checks that do not depend on q: White orbit maps for t <= 12 and the
/// affine dependences and widths of the five-point tables.
pub fn verify_tables() -> Result<Vec<CheckOutcome>> {
    let mut failures = Vec::new();
    let mut total = 0;
    for t in 1..=12i64 {
        for s1 in (0..t).filter(|&s| num_integer::gcd(s, t) == 1) {
            for s2 in (0..t).filter(|&s| num_integer::gcd(s, t) == 1) {
                total += 1;
                let in_orbit = white_orbit(s2, t)?.contains(&s1);
                let map = white_equivalence_map(s1, s2, t)?;
                match map {
                    Some(m) => {
                        let mut image = m.apply(&empty_tetrahedron(s2, t)?).points().to_vec();
                        let mut target = empty_tetrahedron(s1, t)?.points().to_vec();
                        image.sort();
                        target.sort();
                        if !in_orbit || m.det().abs() != 1 || image != target {
                            failures.push(format!("T({s2},{t}) -> T({s1},{t})"));
                        }
                    }
                    None if in_orbit => {
                        failures.push(format!("missing map T({s2},{t}) -> T({s1},{t})"))
                    }
                    None => {}
                }
            }
        }
    }
    let white = outcome("white-orbits", failures, total);

    let mut failures = Vec::new();
    let width1 = [
        width1_representative(Width1Sig::Sig21, 1, 3)?,
        width1_representative(Width1Sig::Sig22, 0, 0)?,
        width1_representative(Width1Sig::Sig31, 0, 0)?,
        width1_representative(Width1Sig::Sig32, 2, 5)?,
    ];
    for p in &width1 {
        if lattice_width(p) != 1 {
            failures.push(format!("{p}: width {}", lattice_width(p)));
        }
        affine_dependence(p)?;
    }
    for row in 1..=9 {
        let p = width2_representative(row)?;
        if lattice_width(&p) != 2 {
            failures.push(format!("{p}: width {}", lattice_width(&p)));
        }
        affine_dependence(&p)?;
    }
    let widths = outcome("table-widths", failures, 13);
    Ok(vec![white, widths])
}
