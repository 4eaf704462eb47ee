//! `matroot`: exact matrix roots and ESL₃(ℤ) relation checks from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification failure (claims or sweep),
//! 2 usage or input error, 3 valid input without a root or word,
//! 4 search budget exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matroot::esl3::{
    bounded_word_search, evaluate_word, is_esl3_member, run_claim_registry, Esl3Error,
    GeneratorCatalog, SearchConfig, DEFAULT_NODE_LIMIT, MAX_SEARCH_LEN,
};
use matroot::oracle::{sl3_f2_universal_sqrt, sqrt_sl3_f2, sweep_non_scalar, OracleError};
use matroot::roots::{
    cube_roots_m2, nth_root_candidates, sqrt_criterion_fp, sqrt_criterion_sl3z,
    sqrt_reconstruct_sl3, RootCandidate, RootError, RootSolution, SqrtPair,
};
use matroot::{Ring, SquareMatrix, VerificationReport};

const NODE_LIMIT_VAR: &str = "MATROOT_NODE_LIMIT";

#[derive(Parser, Debug)]
#[command(
    name = "matroot",
    version,
    about = "Exact matrix roots and ESL3(Z) relation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n-th roots (n >= 3) of a 2x2 matrix over F_p.
    Root {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u64,
        /// Inline matrix JSON or a path to a file containing it.
        #[arg(long)]
        matrix: String,
    },
    /// Square roots in SL3(Z) via the integer quartic criterion.
    #[command(name = "sqrt-sl3z")]
    SqrtSl3z {
        #[arg(long)]
        matrix: String,
    },
    /// Square roots in SL3(F_p); p = 2 is answered by enumeration.
    #[command(name = "sqrt-sl3fp")]
    SqrtSl3fp {
        #[arg(long, required_unless_present = "universal_f2")]
        matrix: Option<String>,
        /// Check whether every element of SL3(F_2) is a square.
        #[arg(long, conflicts_with = "matrix")]
        universal_f2: bool,
    },
    /// Evaluate the relation registry and write the report.
    Claims {
        #[arg(long)]
        out: PathBuf,
        /// Run with an empty registry.
        #[arg(long, hide = true)]
        empty_registry: bool,
    },
    /// Shortest word over named generators evaluating to a target.
    #[command(name = "word-search")]
    WordSearch {
        /// Catalog name (e.g. t13) or inline/file matrix JSON.
        #[arg(long)]
        target: String,
        /// Comma-separated generator names.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = MAX_SEARCH_LEN)]
        max_len: usize,
    },
    /// Compare the n-th root candidates against enumeration for every
    /// non-scalar 2x2 matrix over F_p.
    #[command(name = "oracle-sweep")]
    OracleSweep {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Test membership in ESL3(Z) (det = +-1).
    Member {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Root { prime, n, matrix } => cmd_root(prime, n, &matrix),
        Command::SqrtSl3z { matrix } => cmd_sqrt_sl3z(&matrix),
        Command::SqrtSl3fp {
            matrix,
            universal_f2,
        } => match (matrix, universal_f2) {
            (_, true) => cmd_universal_f2(),
            (Some(m), false) => cmd_sqrt_sl3fp(&m),
            (None, false) => Err(Failure::input("--matrix is required")),
        },
        Command::Claims {
            out,
            empty_registry,
        } => cmd_claims(&out, empty_registry),
        Command::WordSearch {
            target,
            generators,
            max_len,
        } => cmd_word_search(&target, &generators, max_len),
        Command::OracleSweep { prime, n, format } => cmd_oracle_sweep(prime, n, format),
        Command::Member { matrix } => cmd_member(&matrix),
    }
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_matrix(arg: &str) -> Result<SquareMatrix, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| Failure::input(format!("cannot read matrix file {arg}: {e}")))?
    };
    SquareMatrix::from_json(&text)
        .map_err(|e| Failure::input(format!("malformed matrix JSON: {e}")))
}

fn node_limit() -> Result<usize, Failure> {
    match std::env::var(NODE_LIMIT_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::input(format!(
                "{NODE_LIMIT_VAR} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_NODE_LIMIT),
    }
}

fn search_config() -> Result<SearchConfig, Failure> {
    Ok(SearchConfig {
        node_limit: node_limit()?,
        ..SearchConfig::default()
    })
}

fn root_error(e: RootError) -> Failure {
    match e {
        RootError::ScalarMatrixInput(c) => Failure::input(format!(
            "scalar matrix {c}*E excluded: the n-th root formula requires a non-scalar matrix"
        )),
        other => Failure::input(other.to_string()),
    }
}

fn found(yes: bool) -> u8 {
    if yes {
        0
    } else {
        3
    }
}

fn cmd_root(prime: u64, n: u64, matrix: &str) -> Outcome {
    if n < 3 {
        return Err(Failure::input(format!(
            "unsupported root degree {n}: candidates need n >= 3 (n = 3 uses the cube-root path)"
        )));
    }
    let ring = Ring::prime_field(prime).map_err(|e| Failure::input(e.to_string()))?;
    let a = read_matrix(matrix)?;
    if a.ring() != ring || a.dim() != 2 {
        return Err(Failure::input(format!(
            "expected a 2x2 matrix over {ring}, got a {d}x{d} matrix over {}",
            a.ring(),
            d = a.dim()
        )));
    }
    let solution = if n == 3 {
        cube_roots_m2(&a).map_err(root_error)?
    } else {
        solution_from_candidates(nth_root_candidates(&a, n).map_err(root_error)?)
    };
    emit(&json!({
        "ring": ring.to_string(),
        "n": n,
        "matrix": a.rows_as_numbers(),
        "solution": solution,
    }));
    Ok(found(solution.has_root()))
}

fn solution_from_candidates(candidates: Vec<RootCandidate>) -> RootSolution {
    let mut roots: Vec<RootCandidate> = Vec::new();
    let mut rejected = Vec::new();
    for c in candidates {
        if c.verified {
            if !roots.iter().any(|r| r.matrix == c.matrix) {
                roots.push(c);
            }
        } else {
            rejected.push(c);
        }
    }
    if roots.is_empty() {
        RootSolution::Empty { rejected }
    } else {
        RootSolution::FiniteSet { roots, rejected }
    }
}

fn reconstruction(a: &SquareMatrix, pair: &SqrtPair) -> (Value, Option<SquareMatrix>) {
    let base = |outcome: Value| json!({ "p": pair.p, "q": pair.q, "outcome": outcome });
    match sqrt_reconstruct_sl3(a, pair) {
        Ok(c) => {
            let m = c.matrix.clone().expect("reconstruction yields a matrix");
            let value = base(json!({ "matrix": m.rows_as_numbers(), "verified": c.verified }));
            (value, c.verified.then_some(m))
        }
        Err(RootError::SingularDenominator) => (base(json!({ "denominator_zero": true })), None),
        Err(e) => (base(json!({ "unavailable": e.to_string() })), None),
    }
}

fn sqrt_output(a: &SquareMatrix, pairs: &[SqrtPair]) -> Outcome {
    let mut reconstructions = Vec::new();
    let mut roots: Vec<SquareMatrix> = Vec::new();
    for pair in pairs {
        let (value, root) = reconstruction(a, pair);
        reconstructions.push(value);
        if let Some(r) = root {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    emit(&json!({
        "ring": a.ring().to_string(),
        "matrix": a.rows_as_numbers(),
        "pairs": pairs,
        "reconstructions": reconstructions,
        "roots": roots.iter().map(SquareMatrix::rows_as_numbers).collect::<Vec<_>>(),
    }));
    Ok(found(!roots.is_empty()))
}

fn cmd_sqrt_sl3z(matrix: &str) -> Outcome {
    let a = read_matrix(matrix)?;
    let pairs = sqrt_criterion_sl3z(&a).map_err(root_error)?;
    sqrt_output(&a, &pairs)
}

fn cmd_sqrt_sl3fp(matrix: &str) -> Outcome {
    let a = read_matrix(matrix)?;
    if a.ring().modulus() == Some(2) {
        let roots = sqrt_sl3_f2(&a).map_err(root_error)?;
        emit(&json!({
            "ring": a.ring().to_string(),
            "matrix": a.rows_as_numbers(),
            "method": "enumeration of SL3(F_2)",
            "roots": roots.iter().map(SquareMatrix::rows_as_numbers).collect::<Vec<_>>(),
        }));
        return Ok(found(!roots.is_empty()));
    }
    let pairs = sqrt_criterion_fp(&a).map_err(root_error)?;
    sqrt_output(&a, &pairs)
}

fn cmd_universal_f2() -> Outcome {
    let outcome = sl3_f2_universal_sqrt();
    let report = outcome.report();
    emit(&json!({
        "group_size": outcome.group_size,
        "image_size": outcome.image_size,
        "every_element_is_square": outcome.every_element_is_square,
        "non_squares": outcome.non_squares.iter().map(SquareMatrix::rows_as_numbers).collect::<Vec<_>>(),
        "report": report,
    }));
    Ok(0)
}

fn cmd_claims(out: &PathBuf, empty: bool) -> Outcome {
    let report = if empty {
        VerificationReport::new(Vec::new())
    } else {
        run_claim_registry(&GeneratorCatalog::standard(), search_config()?)
            .map_err(|e| Failure::input(e.to_string()))?
    };
    fs::write(out, report.to_json_pretty() + "\n")
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", out.display())))?;
    emit(&json!({ "out": out.display().to_string(), "summary": report.summary }));
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_word_search(target: &str, generators: &[String], max_len: usize) -> Outcome {
    let catalog = GeneratorCatalog::standard();
    let (target_name, goal) = match catalog.get(target) {
        Some(m) => (Some(target), m.clone()),
        None if target.trim_start().starts_with('{') || std::path::Path::new(target).exists() => {
            (None, read_matrix(target)?)
        }
        None => return Err(Failure::input(format!("unknown generator {target:?}"))),
    };
    let names: Vec<&str> = generators.iter().map(|g| g.trim()).collect();
    let config = search_config()?;
    match bounded_word_search(&goal, &names, max_len, &catalog, config) {
        Ok(word) => {
            let verified = match &word {
                Some(w) => {
                    evaluate_word(w, &catalog).map_err(|e| Failure::input(e.to_string()))? == goal
                }
                None => false,
            };
            emit(&json!({
                "target": target_name,
                "target_matrix": goal.rows_as_numbers(),
                "generators": names,
                "max_len": max_len,
                "word": word.as_ref().map(|w| w.to_string()),
                "length": word.as_ref().map(|w| w.len()),
                "verified": verified,
            }));
            Ok(found(word.is_some()))
        }
        Err(Esl3Error::SearchBudgetExceeded { limit }) => Err(Failure {
            code: 4,
            message: format!("search explored more than {limit} states (raise {NODE_LIMIT_VAR})"),
        }),
        Err(e) => Err(Failure::input(e.to_string())),
    }
}

fn cmd_oracle_sweep(prime: u64, n: u64, format: Format) -> Outcome {
    if prime == 7 && n != 3 {
        return Err(Failure::input("p = 7 sweeps are limited to n = 3"));
    }
    let outcome = sweep_non_scalar(prime, n).map_err(|e| match e {
        OracleError::Root(r) => root_error(r),
        other => Failure::input(other.to_string()),
    })?;
    match format {
        Format::Csv => print!("{}", outcome.to_csv()),
        Format::Json => emit(&json!({
            "prime": outcome.prime,
            "n": outcome.n,
            "matrices": outcome.rows.len(),
            "inclusion_violations": outcome.inclusion_violations,
            "equality_violations": outcome.equality_violations,
            "rows": outcome.rows.iter().map(|r| json!({
                "index": r.index,
                "matrix": r.matrix.rows_as_numbers(),
                "root_count": r.root_count,
                "candidate_count": r.candidate_count,
                "verified_count": r.verified_count,
                "inclusion": r.inclusion,
                "equality": r.equality,
            })).collect::<Vec<_>>(),
        })),
    }
    Ok(if outcome.inclusion_violations == 0 {
        0
    } else {
        1
    })
}

fn cmd_member(matrix: &str) -> Outcome {
    let a = read_matrix(matrix)?;
    if a.ring() != Ring::Integers || a.dim() != 3 {
        return Err(Failure::input("expected a 3x3 integer matrix"));
    }
    emit(&json!({
        "matrix": a.rows_as_numbers(),
        "det": a.det(),
        "member": is_esl3_member(&a),
    }));
    Ok(0)
}
