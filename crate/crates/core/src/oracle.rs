//! Brute-force ground truth at small scale.
//!
//! The oracle keeps its own fixed-width arithmetic (2×2 matrices as `u32`
//! quadruples mod p, and 3×3 matrices over 𝔽₂ as 9-bit masks) so its
//! answers do not share code paths with the solvers they check.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::Ring;
use crate::matrix::SquareMatrix;
use crate::report::{Expectation, ReportEntry, Verdict, VerificationReport};
use crate::roots::{cube_roots_m2, nth_root_candidates, RootError};

/// Primes the oracle enumerates over.
pub const ORACLE_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle supports primes 2, 3, 5, 7; got {0}")]
    UnsupportedPrime(u64),
    #[error("oracle expects a 2x2 matrix over F_p")]
    WrongShape,
    #[error("matrix is over {found}, oracle is configured for {expected}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("enumeration of {size} matrices exceeds the limit {limit}")]
    BudgetExceeded { size: usize, limit: usize },
    #[error("root degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Enumeration settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub n: u64,
    /// Maximum number of matrices enumerated per query.
    pub node_limit: usize,
    /// Number of contiguous index ranges processed in parallel.
    pub partitions: usize,
}

impl OracleConfig {
    pub const MAX_ENUMERATION: usize = 2401;

    pub fn new(prime: u64, n: u64) -> Result<Self, OracleError> {
        if !ORACLE_PRIMES.contains(&prime) {
            return Err(OracleError::UnsupportedPrime(prime));
        }
        if n == 0 {
            return Err(OracleError::ZeroDegree);
        }
        Ok(OracleConfig {
            prime,
            n,
            node_limit: Self::MAX_ENUMERATION,
            partitions: rayon::current_num_threads().max(1),
        })
    }

    pub fn with_partitions(mut self, partitions: usize) -> Self {
        self.partitions = partitions.max(1);
        self
    }

    pub fn ring(&self) -> Ring {
        Ring::prime_field(self.prime).expect("oracle primes are prime")
    }
}

type M2 = [u32; 4];

fn m2_mul(a: &M2, b: &M2, p: u32) -> M2 {
    let f = |x: u32, y: u32, z: u32, w: u32| (x * y + z * w) % p;
    [
        f(a[0], b[0], a[1], b[2]),
        f(a[0], b[1], a[1], b[3]),
        f(a[2], b[0], a[3], b[2]),
        f(a[2], b[1], a[3], b[3]),
    ]
}

fn m2_pow(b: &M2, mut n: u64, p: u32) -> M2 {
    let mut acc = [1 % p, 0, 0, 1 % p];
    let mut base = *b;
    while n > 0 {
        if n & 1 == 1 {
            acc = m2_mul(&acc, &base, p);
        }
        base = m2_mul(&base, &base, p);
        n >>= 1;
    }
    acc
}

/// Row-major index decoding; index order is lexicographic in the entries.
fn m2_from_index(mut idx: usize, p: u32) -> M2 {
    let mut out = [0u32; 4];
    for slot in out.iter_mut().rev() {
        *slot = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    out
}

fn m2_to_matrix(m: &M2, ring: Ring) -> SquareMatrix {
    let e: Vec<i64> = m.iter().map(|&v| v as i64).collect();
    SquareMatrix::from_i64(ring, 2, &e)
}

fn m2_from_matrix(a: &SquareMatrix, config: &OracleConfig) -> Result<M2, OracleError> {
    if a.dim() != 2 || !a.ring().is_field() {
        return Err(OracleError::WrongShape);
    }
    if a.ring() != config.ring() {
        return Err(OracleError::RingMismatch {
            expected: config.ring(),
            found: a.ring(),
        });
    }
    let mut out = [0u32; 4];
    for (slot, v) in out.iter_mut().zip(a.raw_entries()) {
        *slot = v.to_u32().expect("canonical residue fits");
    }
    Ok(out)
}

fn partition_ranges(total: usize, parts: usize) -> Vec<(usize, usize)> {
    let parts = parts.clamp(1, total.max(1));
    let chunk = total.div_ceil(parts);
    (0..parts)
        .map(|i| (i * chunk, ((i + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

fn roots_by_index(target: &M2, config: &OracleConfig) -> Result<Vec<usize>, OracleError> {
    let p = config.prime as u32;
    let size = (config.prime as usize).pow(4);
    if size > config.node_limit {
        return Err(OracleError::BudgetExceeded {
            size,
            limit: config.node_limit,
        });
    }
    let chunks: Vec<Vec<usize>> = partition_ranges(size, config.partitions)
        .into_par_iter()
        .map(|(lo, hi)| {
            (lo..hi)
                .filter(|&i| m2_pow(&m2_from_index(i, p), config.n, p) == *target)
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `{B ∈ M₂(𝔽ₚ) : Bⁿ = A}` by trying all p⁴ matrices.
pub fn exhaustive_roots_m2(
    a: &SquareMatrix,
    config: &OracleConfig,
) -> Result<BTreeSet<SquareMatrix>, OracleError> {
    let target = m2_from_matrix(a, config)?;
    let p = config.prime as u32;
    Ok(roots_by_index(&target, config)?
        .into_iter()
        .map(|i| m2_to_matrix(&m2_from_index(i, p), config.ring()))
        .collect())
}

fn rows_of(set: &BTreeSet<SquareMatrix>) -> Value {
    Value::Array(set.iter().map(|m| json!(m.rows_as_numbers())).collect())
}

fn listing(set: &BTreeSet<SquareMatrix>) -> String {
    let parts: Vec<String> = set
        .iter()
        .map(|m| json!(m.rows_as_numbers()).to_string())
        .collect();
    parts.join(", ")
}

type NamedSet<'a> = (&'a str, &'a BTreeSet<SquareMatrix>);

fn set_entry(
    id: String,
    convention: String,
    holds: bool,
    (lhs, lhs_set): NamedSet,
    (rhs, rhs_set): NamedSet,
    offending: &BTreeSet<SquareMatrix>,
) -> ReportEntry {
    ReportEntry {
        id,
        source: SRC_INCLUSION.to_string(),
        convention,
        expected: Expectation::Holds,
        verdict: Verdict::from_bool(holds),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        lhs_value: rows_of(lhs_set),
        rhs_value: rows_of(rhs_set),
        detail: (!offending.is_empty()).then(|| format!("offending: {}", listing(offending))),
    }
}

/// Sets compared for one input matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub exhaustive: BTreeSet<SquareMatrix>,
    /// Every matrix the candidate formula produced.
    pub candidates: BTreeSet<SquareMatrix>,
    /// Candidates that passed exact verification.
    pub verified: BTreeSet<SquareMatrix>,
}

impl Comparison {
    pub fn inclusion_holds(&self) -> bool {
        self.exhaustive.is_subset(&self.candidates)
    }

    pub fn equality_holds(&self) -> bool {
        self.exhaustive == self.verified
    }
}

/// Oracle versus `nth_root_candidates` for non-scalar `A` and `n ≥ 3`.
pub fn compare_sets(a: &SquareMatrix, n: u64) -> Result<Comparison, OracleError> {
    let prime = a.ring().modulus().ok_or(OracleError::WrongShape)?;
    let config = OracleConfig::new(prime, n)?;
    let exhaustive = exhaustive_roots_m2(a, &config)?;
    let cands = nth_root_candidates(a, n)?;
    let candidates = cands.iter().filter_map(|c| c.matrix.clone()).collect();
    let verified = cands
        .iter()
        .filter(|c| c.verified)
        .filter_map(|c| c.matrix.clone())
        .collect();
    Ok(Comparison {
        exhaustive,
        candidates,
        verified,
    })
}

const SRC_INCLUSION: &str = "n-th root candidate inclusion";

/// Report with an inclusion entry (oracle ⊆ candidates) and an equality
/// entry (oracle = verified candidates).
pub fn compare_with_solver(a: &SquareMatrix, n: u64) -> Result<VerificationReport, OracleError> {
    let c = compare_sets(a, n)?;
    let tag = a.to_json();
    let missing: BTreeSet<_> = c.exhaustive.difference(&c.candidates).cloned().collect();
    let sym: BTreeSet<_> = c
        .exhaustive
        .symmetric_difference(&c.verified)
        .cloned()
        .collect();
    Ok(VerificationReport::new(vec![
        set_entry(
            format!("inclusion.n{n}"),
            format!("A = {tag}; exhaustive roots vs candidate matrices"),
            c.inclusion_holds(),
            ("exhaustive", &c.exhaustive),
            ("candidates", &c.candidates),
            &missing,
        ),
        set_entry(
            format!("equality.n{n}"),
            format!("A = {tag}; exhaustive roots vs verified candidates"),
            c.equality_holds(),
            ("exhaustive", &c.exhaustive),
            ("verified", &c.verified),
            &sym,
        ),
    ]))
}

/// Oracle versus the expanded cube-root solution, for any `A` (scalar,
/// zero and generic).
pub fn compare_cube_solver(
    a: &SquareMatrix,
) -> Result<(BTreeSet<SquareMatrix>, BTreeSet<SquareMatrix>), OracleError> {
    let prime = a.ring().modulus().ok_or(OracleError::WrongShape)?;
    let config = OracleConfig::new(prime, 3)?;
    let exhaustive = exhaustive_roots_m2(a, &config)?;
    let solved = cube_roots_m2(a)?.expand()?;
    Ok((exhaustive, solved))
}

/// One row of a sweep: the input's row-major index and the root counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub matrix: SquareMatrix,
    pub root_count: usize,
    pub candidate_count: usize,
    pub verified_count: usize,
    pub inclusion: bool,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub prime: u64,
    pub n: u64,
    pub rows: Vec<SweepRow>,
    pub inclusion_violations: usize,
    pub equality_violations: usize,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.inclusion_violations == 0 && self.equality_violations == 0
    }

    /// `index,root_count,candidate_count,verified_count,inclusion,equality`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("index,root_count,candidate_count,verified_count,inclusion,equality\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.index, r.root_count, r.candidate_count, r.verified_count, r.inclusion, r.equality
            );
        }
        out
    }
}

/// Compares oracle and solver on every non-scalar `A ∈ M₂(𝔽ₚ)`.
pub fn sweep_non_scalar(prime: u64, n: u64) -> Result<SweepOutcome, OracleError> {
    let config = OracleConfig::new(prime, n)?;
    if n < 3 {
        return Err(RootError::UnsupportedDegree(n).into());
    }
    let ring = config.ring();
    let p = prime as u32;
    let size = (prime as usize).pow(4);
    let rows: Vec<SweepRow> = (0..size)
        .into_par_iter()
        .filter_map(|index| {
            let m = m2_from_index(index, p);
            let is_scalar = m[1] == 0 && m[2] == 0 && m[0] == m[3];
            (!is_scalar).then_some((index, m))
        })
        .map(|(index, m)| {
            let matrix = m2_to_matrix(&m, ring);
            let c = compare_sets(&matrix, n)?;
            Ok(SweepRow {
                index,
                root_count: c.exhaustive.len(),
                candidate_count: c.candidates.len(),
                verified_count: c.verified.len(),
                inclusion: c.inclusion_holds(),
                equality: c.equality_holds(),
                matrix,
            })
        })
        .collect::<Result<_, OracleError>>()?;
    Ok(SweepOutcome {
        prime,
        n,
        inclusion_violations: rows.iter().filter(|r| !r.inclusion).count(),
        equality_violations: rows.iter().filter(|r| !r.equality).count(),
        rows,
    })
}

/// A 3×3 matrix over 𝔽₂; bit `3i + j` is entry `(i, j)`.
type F2Mat = u16;

#[cfg(test)]
const F2_IDENTITY: F2Mat = 0b100_010_001;

fn f2_bit(m: F2Mat, i: usize, j: usize) -> u16 {
    (m >> (3 * i + j)) & 1
}

fn f2_row(m: F2Mat, i: usize) -> u16 {
    (m >> (3 * i)) & 0b111
}

fn f2_mul(a: F2Mat, b: F2Mat) -> F2Mat {
    let mut out = 0;
    for i in 0..3 {
        let mut row = 0;
        for k in 0..3 {
            if f2_bit(a, i, k) == 1 {
                row ^= f2_row(b, k);
            }
        }
        out |= row << (3 * i);
    }
    out
}

fn f2_det(m: F2Mat) -> u16 {
    let e = |i, j| f2_bit(m, i, j);
    (e(0, 0) & (e(1, 1) & e(2, 2) ^ e(1, 2) & e(2, 1)))
        ^ (e(0, 1) & (e(1, 0) & e(2, 2) ^ e(1, 2) & e(2, 0)))
        ^ (e(0, 2) & (e(1, 0) & e(2, 1) ^ e(1, 1) & e(2, 0)))
}

fn f2_to_matrix(m: F2Mat) -> SquareMatrix {
    let e: Vec<i64> = (0..9).map(|k| ((m >> k) & 1) as i64).collect();
    SquareMatrix::from_i64(Ring::prime_field(2).expect("2 is prime"), 3, &e)
}

fn f2_from_matrix(a: &SquareMatrix) -> Option<F2Mat> {
    if a.dim() != 3 || a.ring().modulus() != Some(2) {
        return None;
    }
    Some(
        a.raw_entries()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.to_u8() == Some(1))
            .fold(0, |acc, (k, _)| acc | (1 << k)),
    )
}

/// Row-major lexicographic order on entries, as for `SquareMatrix`.
fn f2_sort_key(m: F2Mat) -> u16 {
    (0..9).fold(0, |acc, k| (acc << 1) | ((m >> k) & 1))
}

/// All 168 elements of SL₃(𝔽₂) in row-major lexicographic order.
fn sl3_f2_elements() -> Vec<F2Mat> {
    let mut group: Vec<F2Mat> = (0..512u16).filter(|&m| f2_det(m) == 1).collect();
    group.sort_by_key(|&m| f2_sort_key(m));
    group
}

/// Square roots of `A` inside SL₃(𝔽₂), by enumeration.
pub fn sqrt_sl3_f2(a: &SquareMatrix) -> Result<Vec<SquareMatrix>, RootError> {
    let target = f2_from_matrix(a).ok_or(RootError::WrongShape {
        dim: 3,
        what: "F_2",
    })?;
    if f2_det(target) != 1 {
        return Err(RootError::NotUnimodular(a.det()));
    }
    Ok(sl3_f2_elements()
        .into_iter()
        .filter(|&b| f2_mul(b, b) == target)
        .map(f2_to_matrix)
        .collect())
}

/// Outcome of testing whether every element of SL₃(𝔽₂) is a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalSqrtOutcome {
    pub group_size: usize,
    pub image_size: usize,
    pub every_element_is_square: bool,
    /// Elements with no square root, in row-major order.
    pub non_squares: Vec<SquareMatrix>,
}

impl UniversalSqrtOutcome {
    pub fn report(&self) -> VerificationReport {
        let source = "every element of SL3(F_2) is a square";
        let witnesses: Vec<Value> = self
            .non_squares
            .iter()
            .map(|m| json!(m.rows_as_numbers()))
            .collect();
        VerificationReport::new(vec![
            ReportEntry {
                id: "sl3f2.group_size".into(),
                source: source.into(),
                convention: "enumeration of all 512 3x3 matrices over F_2, filtered by det = 1"
                    .into(),
                expected: Expectation::Holds,
                verdict: Verdict::from_bool(self.group_size == 168),
                lhs: "|SL3(F_2)|".into(),
                rhs: "168".into(),
                lhs_value: json!(self.group_size),
                rhs_value: json!(168),
                detail: None,
            },
            ReportEntry {
                id: "sl3f2.squaring_surjective".into(),
                source: source.into(),
                convention: "image of B -> B^2 on SL3(F_2)".into(),
                expected: Expectation::Holds,
                verdict: Verdict::from_bool(self.every_element_is_square),
                lhs: "|{B^2}|".into(),
                rhs: "|SL3(F_2)|".into(),
                lhs_value: json!(self.image_size),
                rhs_value: json!(self.group_size),
                detail: (!self.non_squares.is_empty()).then(|| {
                    format!(
                        "{} non-squares: {}",
                        self.non_squares.len(),
                        Value::Array(witnesses)
                    )
                }),
            },
        ])
    }
}

/// Enumerates SL₃(𝔽₂), squares every element and reports the elements
/// outside the image.
pub fn sl3_f2_universal_sqrt() -> UniversalSqrtOutcome {
    let group = sl3_f2_elements();
    let mut is_square = [false; 512];
    for &b in &group {
        is_square[f2_mul(b, b) as usize] = true;
    }
    let non_squares: Vec<SquareMatrix> = group
        .iter()
        .filter(|&&m| !is_square[m as usize])
        .map(|&m| f2_to_matrix(m))
        .collect();
    UniversalSqrtOutcome {
        group_size: group.len(),
        image_size: group.len() - non_squares.len(),
        every_element_is_square: non_squares.is_empty(),
        non_squares,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, e: &[i64]) -> SquareMatrix {
        SquareMatrix::from_i64(Ring::prime_field(p).unwrap(), 2, e)
    }

    #[test]
    fn config_rejects_large_primes() {
        assert_eq!(
            OracleConfig::new(11, 3),
            Err(OracleError::UnsupportedPrime(11))
        );
        assert!(OracleConfig::new(7, 3).is_ok());
    }

    #[test]
    fn degree_one_returns_input() {
        for p in ORACLE_PRIMES {
            let a = fp(p, &[1, 1, 0, 1]);
            let roots = exhaustive_roots_m2(&a, &OracleConfig::new(p, 1).unwrap()).unwrap();
            assert_eq!(roots, BTreeSet::from([a]));
        }
    }

    #[test]
    fn identity_has_itself_as_root() {
        let e = fp(2, &[1, 0, 0, 1]);
        let roots = exhaustive_roots_m2(&e, &OracleConfig::new(2, 3).unwrap()).unwrap();
        assert!(roots.contains(&e));
        // Elements of GL2(F2) of order 1 or 3: E plus the two 3-cycles.
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn unipotent_cube_roots_mod3() {
        let a = fp(3, &[1, 1, 0, 1]);
        let roots = exhaustive_roots_m2(&a, &OracleConfig::new(3, 3).unwrap()).unwrap();
        for b in &roots {
            assert_eq!(b.power(3), a);
        }
        // (E + N)^3 = E + 3N = E over F_3, so no unipotent element cubes to A.
        assert!(roots
            .iter()
            .all(|b| !(b - &SquareMatrix::identity(b.ring(), 2))
                .power(2)
                .raw_entries()
                .iter()
                .all(|v| *v == 0.into())));
    }

    #[test]
    fn partitioning_does_not_change_results() {
        let a = fp(5, &[1, 1, 0, 1]);
        let one = OracleConfig::new(5, 3).unwrap().with_partitions(1);
        let many = one.with_partitions(7);
        assert_eq!(
            exhaustive_roots_m2(&a, &one).unwrap(),
            exhaustive_roots_m2(&a, &many).unwrap()
        );
    }

    #[test]
    fn unipotent_example_mod5() {
        let a = fp(5, &[1, 1, 0, 1]);
        let report = compare_with_solver(&a, 3).unwrap();
        assert!(report.passed(), "{}", report.to_json_pretty());
        let c = compare_sets(&a, 3).unwrap();
        assert!(c.exhaustive.contains(&fp(5, &[1, 2, 0, 1])));
    }

    #[test]
    fn swap_matrix_mod2() {
        let report = compare_with_solver(&fp(2, &[0, 1, 1, 0]), 3).unwrap();
        assert_eq!(report.summary.total, 2);
        assert!(report.passed());
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = fp(3, &[1, 1, 0, 1]);
        assert!(matches!(
            exhaustive_roots_m2(&a, &OracleConfig::new(5, 3).unwrap()),
            Err(OracleError::RingMismatch { .. })
        ));
    }

    #[test]
    fn sl3_f2_enumeration() {
        let out = sl3_f2_universal_sqrt();
        assert_eq!(out.group_size, 168);
        assert_eq!(out.image_size + out.non_squares.len(), 168);
        let e = f2_to_matrix(F2_IDENTITY);
        assert!(!out.non_squares.contains(&e));
        for w in &out.non_squares {
            assert!(sqrt_sl3_f2(w).unwrap().is_empty());
        }
        assert!(sqrt_sl3_f2(&e).unwrap().contains(&e));
    }

    #[test]
    fn f2_mask_round_trip() {
        for m in sl3_f2_elements() {
            let big = f2_to_matrix(m);
            assert_eq!(f2_from_matrix(&big), Some(m));
            assert!(big.det().is_one());
        }
        let elems = sl3_f2_elements();
        let mats: Vec<SquareMatrix> = elems.iter().map(|&m| f2_to_matrix(m)).collect();
        assert!(mats.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sweep_csv_shape() {
        let out = sweep_non_scalar(2, 3).unwrap();
        assert_eq!(out.rows.len(), 16 - 2);
        assert!(out.passed());
        let csv = out.to_csv();
        assert_eq!(csv.lines().count(), 15);
        assert!(csv.starts_with("index,root_count"));
    }
}
