//! `toric3`: parameters, minimum distances, equivalence verdicts and census
//! tables for toric codes over GF(q).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use toric_core::verify::{verify_q, verify_tables, CheckOutcome};
use toric_core::{
    build_code, census, formula_for, make_field, parse_polytope, theorem_verdict,
    witness_equivalence, CensusDim, CensusReport, CensusRow, Error, Evidence, FieldElement,
    Mismatch,
};

#[derive(Parser)]
#[command(
    name = "toric3",
    version,
    about = "Toric codes from lattice polytopes in three-space"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print generator matrices and witness permutations.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters and the power table of the primitive element.
    FieldInfo {
        #[arg(long)]
        q: u32,
    },
    /// Minimum distance of C_P.
    Mindist {
        #[arg(long)]
        q: u32,
        /// Polytope, e.g. "T(1,2)", "P32(1,1)", "W2:3", "E:4" or "[(0,0,0);(1,0,0)]".
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Monomial equivalence of C_A and C_B.
    Equiv {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = EquivMethod::Both)]
        method: EquivMethod,
    },
    /// Classify every tetrahedron (dim 4) or width-1 five-point polytope
    /// (dim 5) fitting in [0, q-2]^3.
    Census {
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=5))]
        dim: u32,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the check suite for each q.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquivMethod {
    Theorem,
    Witness,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    /// A check ran and did not hold.
    Verification(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Io(_) => 1,
            Failure::Core(Error::TheoremWitnessMismatch(_) | Error::Inconsistent(_)) => 1,
            Failure::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Verification(msg) => write!(f, "verification failed: {msg}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::FieldInfo { q } => field_info(&mut out, q, cli.verbose),
        Command::Mindist { q, poly, method } => mindist(&mut out, q, &poly, method, cli.verbose),
        Command::Equiv { q, a, b, method } => equiv(&mut out, q, &a, &b, method, cli.verbose),
        Command::Census {
            q,
            dim,
            out: path,
            format,
        } => run_census(&mut out, q, dim, path, format),
        Command::Verify { q } => verify(&mut out, &q),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn field_info(out: &mut impl Write, q: u32, verbose: bool) -> Outcome {
    let f = make_field(q)?;
    writeln!(out, "GF({q}) = GF({}^{})", f.characteristic(), f.degree())?;
    let terms: Vec<String> = f
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    writeln!(out, "modulus: {}", terms.join(" + "))?;
    writeln!(
        out,
        "primitive element: alpha = x mod modulus, order {}",
        f.alpha_order()
    )?;
    let powers: Vec<String> = (0..f.alpha_order() as i64)
        .map(|i| f.to_int(f.alpha_pow(i)).to_string())
        .collect();
    writeln!(
        out,
        "alpha^i as integers (base-p digits, low first): {}",
        powers.join(" ")
    )?;
    if verbose {
        writeln!(out, "zech table: i -> log(1 + alpha^i)")?;
        for i in 0..f.alpha_order() as i64 {
            let s = f.add(FieldElement::ONE, f.alpha_pow(i));
            let shown = s.log().map_or("-inf".to_string(), |l| l.to_string());
            writeln!(out, "  {i} -> {shown}")?;
        }
    }
    Ok(())
}

fn mindist(out: &mut impl Write, q: u32, spec: &str, method: Method, verbose: bool) -> Outcome {
    let field = make_field(q)?;
    let p = parse_polytope(spec)?;
    let code = build_code(&field, &p)?;
    writeln!(
        out,
        "code: {p} over GF({q}), n = {}, k = {}",
        code.n(),
        code.k()
    )?;
    let formula = match method {
        Method::Formula => Some(formula_for(&p, q)?),
        Method::Both => match formula_for(&p, q) {
            Ok(f) => Some(f),
            Err(Error::NoFormulaForFamily(_)) => {
                writeln!(out, "formula: none for this family")?;
                None
            }
            Err(e) => return Err(e.into()),
        },
        Method::Brute => None,
    };
    if let Some((id, d)) = &formula {
        let kind = if d.is_exact() { "exact" } else { "bounds" };
        let vacuous = if d.lower_vacuous {
            " (lower bound vacuous)"
        } else {
            ""
        };
        writeln!(out, "formula: {d} [{id}, {kind}]{vacuous}")?;
    }
    if method == Method::Formula {
        return Ok(());
    }
    let brute = code.min_distance_brute()?;
    writeln!(out, "brute: {}", brute.lower)?;
    if verbose {
        let (zeros, f) = code.max_zeros_with_witness();
        let coeffs: Vec<String> = f.iter().map(|&a| field.to_int(a).to_string()).collect();
        writeln!(
            out,
            "max zeros {zeros} attained by coefficients [{}]",
            coeffs.join(", ")
        )?;
        writeln!(out, "generator matrix (discrete logs):")?;
        write!(out, "{}", code.matrix_dump())?;
    }
    if let Some((_, d)) = formula {
        if d.contains(brute.lower) {
            writeln!(out, "OK")?;
        } else {
            writeln!(out, "MISMATCH")?;
            return Err(Failure::Verification(format!(
                "brute-force distance {} outside formula {d}",
                brute.lower
            )));
        }
    }
    Ok(())
}

fn equiv(
    out: &mut impl Write,
    q: u32,
    a: &str,
    b: &str,
    method: EquivMethod,
    verbose: bool,
) -> Outcome {
    let field = make_field(q)?;
    let (pa, pb) = (parse_polytope(a)?, parse_polytope(b)?);
    let theorem = if method != EquivMethod::Witness {
        let v = theorem_verdict(q, pa.family(), pb.family())?;
        writeln!(out, "theorem: {v}")?;
        Some(v)
    } else {
        None
    };
    let computed = if method != EquivMethod::Theorem {
        let (ca, cb) = (build_code(&field, &pa)?, build_code(&field, &pb)?);
        let v = witness_equivalence(&ca, &cb)?;
        writeln!(out, "witness: {v}")?;
        if verbose {
            if let Evidence::Witness(w) = &v.evidence {
                writeln!(out, "row order: {:?}", w.row_perm)?;
                writeln!(out, "column permutation (target <- source): {:?}", w.pi)?;
                let logs: Vec<String> = w
                    .delta
                    .iter()
                    .map(|d| d.log().map_or("-inf".to_string(), |l| l.to_string()))
                    .collect();
                writeln!(out, "column scaling (discrete logs): [{}]", logs.join(", "))?;
            }
        }
        Some(v)
    } else {
        None
    };
    let verdict = match (&theorem, &computed) {
        (Some(t), Some(c)) if t.is_decisive() && c.is_decisive() && t.status != c.status => {
            writeln!(out, "agreement: NO")?;
            return Err(Failure::Verification(format!(
                "theorem verdict {} contradicts computed {}",
                t.status, c.status
            )));
        }
        (Some(t), Some(c)) => {
            if t.is_decisive() && c.is_decisive() {
                writeln!(out, "agreement: yes")?;
            }
            if c.is_decisive() {
                c.status
            } else {
                t.status
            }
        }
        (Some(v), None) | (None, Some(v)) => v.status,
        (None, None) => unreachable!("at least one method runs"),
    };
    writeln!(out, "{verdict}")?;
    Ok(())
}

#[derive(Serialize)]
struct CensusJson<'a> {
    q: u32,
    dim: u32,
    rows: &'a [CensusRow],
    mismatches: &'a [Mismatch],
}

fn write_census(w: impl Write, report: &CensusReport, dim: u32, format: Format) -> Outcome {
    match format {
        Format::Json => {
            let doc = CensusJson {
                q: report.q,
                dim,
                rows: &report.rows,
                mismatches: &report.mismatches,
            };
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
            w.flush()?;
        }
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(w);
            for row in &report.rows {
                wtr.serialize(row).map_err(io::Error::from)?;
            }
            wtr.flush()?;
        }
    }
    Ok(())
}

fn run_census(
    out: &mut impl Write,
    q: u32,
    dim: u32,
    path: Option<PathBuf>,
    format: Format,
) -> Outcome {
    let kind = CensusDim::from_k(dim)?;
    let report = census(q, kind)?;
    match &path {
        Some(p) => write_census(BufWriter::new(File::create(p)?), &report, dim, format)?,
        None => write_census(&mut *out, &report, dim, format)?,
    }
    let classes = report.classes().len();
    eprintln!(
        "census q={q} dim={dim}: {} polytopes, {classes} classes, {} theorem mismatch(es)",
        report.rows.len(),
        report.mismatches.len()
    );
    for m in &report.mismatches {
        eprintln!("  mismatch: {m}");
    }
    report.check()?;
    Ok(())
}

fn print_check(out: &mut impl Write, label: &str, c: &CheckOutcome) -> io::Result<()> {
    let status = if c.passed { "PASS" } else { "FAIL" };
    writeln!(out, "{label:<6} {:<18} {status}  {}", c.name, c.detail)
}

fn verify(out: &mut impl Write, qs: &[u32]) -> Outcome {
    // Validate every q before spending time on any of them.
    for &q in qs {
        make_field(q)?;
    }
    let mut failed = Vec::new();
    for c in verify_tables()? {
        print_check(out, "any", &c)?;
        if !c.passed {
            failed.push(c.name.to_string());
        }
    }
    for &q in qs {
        let report = verify_q(q)?;
        for c in &report.checks {
            print_check(out, &format!("q={q}"), c)?;
            if !c.passed {
                failed.push(format!("q={q} {}", c.name));
            }
        }
    }
    if failed.is_empty() {
        writeln!(out, "all checks passed")?;
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}
