//! Toric codes from lattice polytopes in three-space over small finite fields:
//! field arithmetic, polytope families, code construction, brute-force and
//! closed-form minimum distances, and monomial-equivalence classification.

pub mod classifier;
pub mod error;
pub mod formulas;
pub mod galois;
pub mod polytope;
pub mod toriccode;
pub mod verify;

pub use classifier::{
    census, census_checked, census_polytopes, column_partition, dim4_gcd_corollary,
    dim4_theorem_verdict, dim5_theorem_verdict, theorem_verdict, verify_witness,
    witness_equivalence, witness_search, CensusDim, CensusReport, CensusRow, ColumnPartition,
    Criterion, EquivalenceStatus, EquivalenceVerdict, Evidence, Mismatch, PairVerdict, Witness,
};
pub use error::{Error, Result};
pub use formulas::{degenerate_distance, dim4_distance, dim5_distance, formula_for, FormulaId};
pub use galois::{make_field, FieldElement, FieldSpec};
pub use polytope::{
    affine_dependence, embedded_polygon, empty_tetrahedron, lattice_width, parse_polytope,
    white_canonical, white_equivalence_map, white_orbit, width1_representative,
    width2_representative, AffineUnimodularMap, Family, LatticePolytope, Point, Signature,
    Width1Sig,
};
pub use toriccode::{
    build_code, build_code_on_torus, DistanceMethod, DistanceResult, ToricCode, WeightEnumerator,
};
