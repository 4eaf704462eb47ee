//! Root extraction: cube and n-th roots in M₂(𝔽ₚ), square roots in SL₃.
//!
//! Every solver works on characteristic-polynomial data only. A candidate
//! root is assembled from a (trace, determinant) guess and then checked by
//! exact powering, so a `verified` flag is always backed by arithmetic.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{
    integer_roots, is_perfect_square, nth_roots_of_scalar, roots_over_field, ArithError,
    ExactScalar, Ring, UnivariatePolynomial,
};
use crate::matrix::{MatrixError, SquareMatrix};
use crate::sympoly::{complete_homogeneous_pair, SymPolyParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("scalar matrix {0}·E excluded: the n-th root formula needs a non-scalar input")]
    ScalarMatrixInput(ExactScalar),
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(ExactScalar),
    #[error("denominator 1 - p·q vanishes")]
    SingularDenominator,
    #[error("p^2 + tr A is odd, so the reconstruction has no integer coefficient")]
    ParityObstruction,
    #[error("reconstructed numerator is not divisible by 1 - p·q")]
    NonIntegralQuotient,
    #[error("square-root reconstruction divides by 2 and is unavailable in characteristic 2")]
    CharacteristicTwo,
    #[error("root degree {0} is not supported here")]
    UnsupportedDegree(u64),
    #[error("expected a {dim}x{dim} matrix over {what}")]
    WrongShape { dim: usize, what: &'static str },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A putative root built from a (trace, determinant) guess.
///
/// `matrix` is `None` when the construction's denominator vanished. When
/// `verified` is set the matrix raised to the root degree equals the input
/// exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCandidate {
    pub trace_b: ExactScalar,
    pub det_b: ExactScalar,
    pub matrix: Option<SquareMatrix>,
    pub verified: bool,
}

impl RootCandidate {
    pub fn is_denominator_zero(&self) -> bool {
        self.matrix.is_none()
    }
}

impl Serialize for RootCandidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RootCandidate", 5)?;
        s.serialize_field("trace_b", &self.trace_b)?;
        s.serialize_field("det_b", &self.det_b)?;
        s.serialize_field(
            "matrix",
            &self.matrix.as_ref().map(SquareMatrix::rows_as_numbers),
        )?;
        s.serialize_field("denominator_zero", &self.matrix.is_none())?;
        s.serialize_field("verified", &self.verified)?;
        s.end()
    }
}

/// Result shapes of the cube-root solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSolution {
    /// No root; `rejected` keeps formula candidates that failed verification.
    Empty { rejected: Vec<RootCandidate> },
    /// Verified roots (pairwise distinct) plus rejected candidates.
    FiniteSet {
        roots: Vec<RootCandidate>,
        rejected: Vec<RootCandidate>,
    },
    /// Every matrix with this trace and determinant.
    TraceDetFamily {
        trace: ExactScalar,
        det: ExactScalar,
    },
    /// `{scale·B : B^n = E}`.
    ScaledUnitRoots { scale: ExactScalar, n: u64 },
}

impl RootSolution {
    pub fn kind(&self) -> &'static str {
        match self {
            RootSolution::Empty { .. } => "empty",
            RootSolution::FiniteSet { .. } => "finite_set",
            RootSolution::TraceDetFamily { .. } => "trace_det_family",
            RootSolution::ScaledUnitRoots { .. } => "scaled_unit_roots",
        }
    }

    pub fn has_root(&self) -> bool {
        !matches!(self, RootSolution::Empty { .. })
    }

    /// Materialize the full root set of a 2×2 problem over a small field.
    pub fn expand(&self) -> Result<BTreeSet<SquareMatrix>, RootError> {
        match self {
            RootSolution::Empty { .. } => Ok(BTreeSet::new()),
            RootSolution::FiniteSet { roots, .. } => {
                Ok(roots.iter().filter_map(|c| c.matrix.clone()).collect())
            }
            RootSolution::TraceDetFamily { trace, det } => matrices_with_invariants(trace, det),
            RootSolution::ScaledUnitRoots { scale, n } => Ok(unit_roots_m2(scale.ring(), *n)?
                .iter()
                .map(|b| b.scale(scale))
                .collect()),
        }
    }
}

impl Serialize for RootSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RootSolution", 3)?;
        s.serialize_field("kind", self.kind())?;
        match self {
            RootSolution::Empty { rejected } => {
                s.serialize_field("roots", &Vec::<RootCandidate>::new())?;
                s.serialize_field("rejected", rejected)?;
            }
            RootSolution::FiniteSet { roots, rejected } => {
                s.serialize_field("roots", roots)?;
                s.serialize_field("rejected", rejected)?;
            }
            RootSolution::TraceDetFamily { trace, det } => {
                s.serialize_field("trace", trace)?;
                s.serialize_field("det", det)?;
            }
            RootSolution::ScaledUnitRoots { scale, n } => {
                s.serialize_field("scale", scale)?;
                s.serialize_field("n", n)?;
            }
        }
        s.end()
    }
}

fn require_m2_field(a: &SquareMatrix) -> Result<Ring, RootError> {
    if a.dim() != 2 || !a.ring().is_field() {
        return Err(RootError::WrongShape {
            dim: 2,
            what: "a prime field",
        });
    }
    a.ring().exhaustive_modulus()?;
    Ok(a.ring())
}

/// All 2×2 matrices over a small field with the given trace and determinant.
///
/// Writes `B = [[x, y], [z, tr − x]]`: for `y ≠ 0` the determinant fixes `z`;
/// for `y = 0` the diagonal must satisfy `x(tr − x) = det` and `z` is free.
pub fn matrices_with_invariants(
    trace: &ExactScalar,
    det: &ExactScalar,
) -> Result<BTreeSet<SquareMatrix>, RootError> {
    let ring = trace.ring();
    ring.check_same(det.ring())?;
    let elements: Vec<ExactScalar> = ring.elements()?.collect();
    let mut out = BTreeSet::new();
    for x in &elements {
        let w = trace - x;
        let diag = x * &w;
        for y in &elements {
            if y.is_zero() {
                if &diag == det {
                    for z in &elements {
                        out.insert(m2(ring, x, y, z, &w));
                    }
                }
            } else {
                let z = (&diag - det)
                    .checked_div(y)
                    .expect("nonzero field element is invertible");
                out.insert(m2(ring, x, y, &z, &w));
            }
        }
    }
    Ok(out)
}

fn m2(
    ring: Ring,
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    d: &ExactScalar,
) -> SquareMatrix {
    SquareMatrix::from_rows(
        ring,
        &[
            vec![a.value().clone(), b.value().clone()],
            vec![c.value().clone(), d.value().clone()],
        ],
    )
    .expect("2x2 shape")
}

/// `{B ∈ M₂(𝔽ₚ) : B^n = E}` without enumerating M₂.
///
/// Since `B^n = s_n·B + t_n·E`, a non-scalar `B` is a unit root exactly when
/// `s_n = 0` and `t_n = 1`, a condition on (tr B, det B) alone; the identity
/// holds for every matrix with such invariants. Scalar roots `ωE` are added
/// separately.
pub fn unit_roots_m2(ring: Ring, n: u64) -> Result<BTreeSet<SquareMatrix>, RootError> {
    if n == 0 {
        return Err(RootError::UnsupportedDegree(n));
    }
    let elements: Vec<ExactScalar> = ring.elements()?.collect();
    let mut out: BTreeSet<SquareMatrix> = nth_roots_of_scalar(&ring.one(), n)?
        .iter()
        .map(|w| SquareMatrix::scalar(w, 2))
        .collect();
    for a in &elements {
        for b in &elements {
            let params = SymPolyParams::new(a.clone(), b.clone())?;
            let (s, q_prev) = complete_homogeneous_pair(n - 1, &params);
            let t = -(b * &q_prev);
            if s.is_zero() && t.is_one() {
                out.extend(matrices_with_invariants(a, b)?);
            }
        }
    }
    Ok(out)
}

fn verify_power(b: &SquareMatrix, a: &SquareMatrix, n: u64) -> bool {
    b.power(n) == *a
}

/// Cube roots of a 2×2 matrix over 𝔽ₚ.
///
/// `A = 0` gives the nilpotent family, `A = c³·E` the scaled unit cube roots,
/// and every other input goes through `B = (A + ab·E)/(a² − b)` with
/// `b³ = det A` and `a³ − 3ab = tr A`.
pub fn cube_roots_m2(a: &SquareMatrix) -> Result<RootSolution, RootError> {
    let ring = require_m2_field(a)?;
    if let Some(c) = a.as_scalar() {
        if c.is_zero() {
            return Ok(RootSolution::TraceDetFamily {
                trace: ring.zero(),
                det: ring.zero(),
            });
        }
        if let Some(scale) = nth_roots_of_scalar(&c, 3)?.into_iter().next() {
            return Ok(RootSolution::ScaledUnitRoots { scale, n: 3 });
        }
    }

    let inv = a.invariants();
    let x = UnivariatePolynomial::x(ring);
    let x3 = &(&x * &x) * &x;
    let mut roots: Vec<RootCandidate> = Vec::new();
    let mut rejected = Vec::new();
    for b in nth_roots_of_scalar(&inv.det, 3)? {
        // x^3 - 3b·x - tr A
        let cubic = &(&x3 - &x.scale(&(&ring.scalar(3) * &b)))
            - &UnivariatePolynomial::constant(inv.trace.clone());
        for tr_b in roots_over_field(&cubic)? {
            let denom = &(&tr_b * &tr_b) - &b;
            let candidate = match denom.inverse() {
                None => RootCandidate {
                    trace_b: tr_b,
                    det_b: b.clone(),
                    matrix: None,
                    verified: false,
                },
                Some(d_inv) => {
                    let shift = SquareMatrix::scalar(&(&tr_b * &b), 2);
                    let m = (a + &shift).scale(&d_inv);
                    let verified = verify_power(&m, a, 3);
                    RootCandidate {
                        trace_b: tr_b,
                        det_b: b.clone(),
                        matrix: Some(m),
                        verified,
                    }
                }
            };
            if candidate.verified {
                if !roots.iter().any(|r| r.matrix == candidate.matrix) {
                    roots.push(candidate);
                }
            } else {
                rejected.push(candidate);
            }
        }
    }
    Ok(if roots.is_empty() {
        RootSolution::Empty { rejected }
    } else {
        RootSolution::FiniteSet { roots, rejected }
    })
}

/// `P_n(x, b)` as a polynomial in `x`.
fn power_sum_in_trace(n: u64, b: &ExactScalar) -> UnivariatePolynomial {
    let ring = b.ring();
    let x = UnivariatePolynomial::x(ring);
    let mut prev = UnivariatePolynomial::constant(ring.scalar(2));
    let mut cur = x.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&x * &cur) - &prev.scale(b);
        prev = cur;
        cur = next;
    }
    cur
}

/// Every candidate `B = (A + b·Q_{n-2}(a,b)·E) / Q_{n-1}(a,b)` with
/// `b^n = det A` and `P_n(a, b) = tr A`, sorted by `(b, a)`.
///
/// Each true n-th root of a non-scalar `A` appears among the verified
/// candidates. Pairs whose denominator vanishes are kept with no matrix.
pub fn nth_root_candidates(a: &SquareMatrix, n: u64) -> Result<Vec<RootCandidate>, RootError> {
    require_m2_field(a)?;
    if n < 3 {
        return Err(RootError::UnsupportedDegree(n));
    }
    if let Some(c) = a.as_scalar() {
        return Err(RootError::ScalarMatrixInput(c));
    }
    let inv = a.invariants();
    let mut out = Vec::new();
    for b in nth_roots_of_scalar(&inv.det, n)? {
        let equation =
            &power_sum_in_trace(n, &b) - &UnivariatePolynomial::constant(inv.trace.clone());
        for tr_b in roots_over_field(&equation)? {
            let params = SymPolyParams::new(tr_b.clone(), b.clone())?;
            let (q_n1, q_n2) = complete_homogeneous_pair(n - 1, &params);
            let candidate = match q_n1.inverse() {
                None => RootCandidate {
                    trace_b: tr_b,
                    det_b: b.clone(),
                    matrix: None,
                    verified: false,
                },
                Some(d_inv) => {
                    let shift = SquareMatrix::scalar(&(&b * &q_n2), 2);
                    let m = (a + &shift).scale(&d_inv);
                    let verified = verify_power(&m, a, n);
                    RootCandidate {
                        trace_b: tr_b,
                        det_b: b.clone(),
                        matrix: Some(m),
                        verified,
                    }
                }
            };
            out.push(candidate);
        }
    }
    Ok(out)
}

/// `(p, q)`: trace and second invariant of a putative square root `B`,
/// whose characteristic polynomial is `x³ − p·x² + q·x − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqrtPair {
    pub p: ExactScalar,
    pub q: ExactScalar,
}

fn require_sl3(a: &SquareMatrix, field: bool) -> Result<(), RootError> {
    let ok_ring = if field {
        a.ring().is_field()
    } else {
        a.ring() == Ring::Integers
    };
    if a.dim() != 3 || !ok_ring {
        return Err(RootError::WrongShape {
            dim: 3,
            what: if field {
                "a prime field"
            } else {
                "the integers"
            },
        });
    }
    let det = a.det();
    if !det.is_one() {
        return Err(RootError::NotUnimodular(det));
    }
    Ok(())
}

/// Integer solutions of `p⁴ − 2a·p² − 8p + a² − 4b = 0` that extend to the
/// system `q² − 2p = b`, `p² − 2q = a`, where `(a, b)` are the trace and
/// second invariant of `A ∈ SL₃(ℤ)`.
pub fn sqrt_criterion_sl3z(a: &SquareMatrix) -> Result<Vec<SqrtPair>, RootError> {
    require_sl3(a, false)?;
    let z = Ring::Integers;
    let inv = a.invariants();
    let (tr, b) = (inv.trace, inv.second_sym);
    let constant = &(&tr * &tr) - &(&z.scalar(4) * &b);
    let quartic = UnivariatePolynomial::new(
        z,
        vec![
            constant,
            z.scalar(-8),
            &z.scalar(-2) * &tr,
            z.zero(),
            z.one(),
        ],
    )?;
    let two = z.scalar(2);
    let mut pairs = Vec::new();
    for p in integer_roots(&quartic)? {
        let Some(q) = (&(&p * &p) - &tr).checked_div(&two) else {
            continue;
        };
        if &(&q * &q) - &(&two * &p) == b {
            pairs.push(SqrtPair { p, q });
        }
    }
    Ok(pairs)
}

/// Exhaustive solutions over 𝔽ₚ of `q² − 2t = b`, `t² − 2q = a`.
pub fn sqrt_criterion_fp(a: &SquareMatrix) -> Result<Vec<SqrtPair>, RootError> {
    require_sl3(a, true)?;
    let ring = a.ring();
    let inv = a.invariants();
    let two = ring.scalar(2);
    let elements: Vec<ExactScalar> = ring.elements()?.collect();
    let mut pairs = Vec::new();
    for t in &elements {
        for q in &elements {
            if &(q * q) - &(&two * t) == inv.second_sym && &(t * t) - &(&two * q) == inv.trace {
                pairs.push(SqrtPair {
                    p: t.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    Ok(pairs)
}

/// Square root of `A ∈ SL₃` from its `(p, q)` data.
///
/// Cayley–Hamilton for `B` gives `B⁴ = (p² − q)·B² + (1 − pq)·B + p·E`; with
/// `B² = A` and `q = (p² − tr A)/2` this solves to
/// `B = (A² − ((p² + tr A)/2)·A − p·E) / (1 − pq)`.
/// The candidate is verified when `B² = A` and `det B = 1`.
pub fn sqrt_reconstruct_sl3(a: &SquareMatrix, pair: &SqrtPair) -> Result<RootCandidate, RootError> {
    let ring = a.ring();
    require_sl3(a, ring.is_field())?;
    ring.check_same(pair.p.ring())?;
    ring.check_same(pair.q.ring())?;
    if ring.modulus() == Some(2) {
        return Err(RootError::CharacteristicTwo);
    }
    let p = &pair.p;
    let tr = a.trace();
    let half_sum = (&(p * p) + &tr)
        .checked_div(&ring.scalar(2))
        .ok_or(RootError::ParityObstruction)?;
    let denom = &ring.one() - &(p * &pair.q);
    if denom.is_zero() {
        return Err(RootError::SingularDenominator);
    }
    let a2 = a * a;
    let numerator = &(&a2 - &a.scale(&half_sum)) - &SquareMatrix::scalar(p, 3);
    let b = numerator
        .checked_div_scalar(&denom)
        .ok_or(RootError::NonIntegralQuotient)?;
    let verified = &b * &b == *a && b.det().is_one();
    Ok(RootCandidate {
        trace_b: p.clone(),
        det_b: ring.one(),
        matrix: Some(b),
        verified,
    })
}

/// Whether `tr A + 2q` is a perfect square; necessary for `q` to be the
/// second invariant of an integer square root of `A`.
pub fn sqrt_necessary_condition(a: &SquareMatrix, q: &ExactScalar) -> Result<bool, RootError> {
    if a.ring() != Ring::Integers || a.dim() != 3 {
        return Err(RootError::WrongShape {
            dim: 3,
            what: "the integers",
        });
    }
    let value = &a.trace() + &(&a.ring().scalar(2) * q);
    Ok(is_perfect_square(&value)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn z3(v: &[i64]) -> SquareMatrix {
        SquareMatrix::from_i64(Ring::Integers, 3, v)
    }

    #[test]
    fn cube_root_of_unipotent_mod5() {
        let f5 = fp(5);
        let a = SquareMatrix::from_i64(f5, 2, &[1, 1, 0, 1]);
        let sol = cube_roots_m2(&a).unwrap();
        let RootSolution::FiniteSet { roots, .. } = &sol else {
            panic!("expected finite set, got {sol:?}");
        };
        let root = roots
            .iter()
            .find(|c| c.matrix == Some(SquareMatrix::from_i64(f5, 2, &[1, 2, 0, 1])))
            .expect("[[1,2],[0,1]] is a cube root");
        assert_eq!(
            (root.trace_b.clone(), root.det_b.clone()),
            (f5.scalar(2), f5.one())
        );
        assert!(root.verified);
    }

    #[test]
    fn cube_root_special_cases() {
        let f5 = fp(5);
        assert_eq!(
            cube_roots_m2(&SquareMatrix::zero(f5, 2)).unwrap(),
            RootSolution::TraceDetFamily {
                trace: f5.zero(),
                det: f5.zero()
            }
        );
        assert_eq!(
            cube_roots_m2(&SquareMatrix::identity(f5, 2)).unwrap(),
            RootSolution::ScaledUnitRoots {
                scale: f5.one(),
                n: 3
            }
        );
    }

    #[test]
    fn cube_root_rejects_integer_matrices() {
        let a = SquareMatrix::from_i64(Ring::Integers, 2, &[1, 1, 0, 1]);
        assert!(matches!(
            cube_roots_m2(&a),
            Err(RootError::WrongShape { .. })
        ));
    }

    #[test]
    fn non_cube_scalar_has_no_roots() {
        // 3 is not a cube mod 7, and a 2x2 matrix cannot hold the needed
        // degree-3 eigenvalues.
        let f7 = fp(7);
        let sol = cube_roots_m2(&SquareMatrix::scalar(&f7.scalar(3), 2)).unwrap();
        assert!(!sol.has_root());
        assert!(sol.expand().unwrap().is_empty());
    }

    #[test]
    fn nth_root_examples() {
        let f5 = fp(5);
        let a = SquareMatrix::from_i64(f5, 2, &[1, 1, 0, 1]);
        let cands = nth_root_candidates(&a, 3).unwrap();
        assert!(cands.iter().any(|c| c.verified
            && c.trace_b == f5.scalar(2)
            && c.det_b == f5.one()
            && c.matrix == Some(SquareMatrix::from_i64(f5, 2, &[1, 2, 0, 1]))));
        let cands = nth_root_candidates(&a, 4).unwrap();
        assert!(cands
            .iter()
            .any(|c| c.verified && c.matrix == Some(SquareMatrix::from_i64(f5, 2, &[1, 4, 0, 1]))));
    }

    #[test]
    fn nth_root_rejects_scalars_and_small_degrees() {
        let f5 = fp(5);
        let s = SquareMatrix::scalar(&f5.scalar(2), 2);
        assert_eq!(
            nth_root_candidates(&s, 4),
            Err(RootError::ScalarMatrixInput(f5.scalar(2)))
        );
        let a = SquareMatrix::from_i64(f5, 2, &[1, 1, 0, 1]);
        assert_eq!(
            nth_root_candidates(&a, 2),
            Err(RootError::UnsupportedDegree(2))
        );
    }

    #[test]
    fn candidates_sorted_by_det_then_trace() {
        let f7 = fp(7);
        let a = SquareMatrix::from_i64(f7, 2, &[0, 1, 1, 0]);
        for n in 3..=6 {
            let cands = nth_root_candidates(&a, n).unwrap();
            let keys: Vec<_> = cands
                .iter()
                .map(|c| (c.det_b.clone(), c.trace_b.clone()))
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn worked_sl3_square_root() {
        let a = z3(&[1, 2, 1, 0, 1, 2, 0, 0, 1]);
        let pairs = sqrt_criterion_sl3z(&a).unwrap();
        let z = Ring::Integers;
        let pair = SqrtPair {
            p: z.scalar(3),
            q: z.scalar(3),
        };
        assert!(pairs.contains(&pair));
        let cand = sqrt_reconstruct_sl3(&a, &pair).unwrap();
        assert_eq!(cand.matrix, Some(z3(&[1, 1, 0, 0, 1, 1, 0, 0, 1])));
        assert!(cand.verified);
    }

    #[test]
    fn identity_square_root() {
        let e = SquareMatrix::identity(Ring::Integers, 3);
        let pairs = sqrt_criterion_sl3z(&e).unwrap();
        let z = Ring::Integers;
        let good = SqrtPair {
            p: z.scalar(3),
            q: z.scalar(3),
        };
        assert!(pairs.contains(&good));
        let cand = sqrt_reconstruct_sl3(&e, &good).unwrap();
        assert_eq!(cand.matrix, Some(e.clone()));
        assert!(cand.verified);
        // p = -1 solves the quartic too, but 1 - pq = 0
        let bad = SqrtPair {
            p: z.scalar(-1),
            q: z.scalar(-1),
        };
        assert!(pairs.contains(&bad));
        assert_eq!(
            sqrt_reconstruct_sl3(&e, &bad),
            Err(RootError::SingularDenominator)
        );
    }

    #[test]
    fn sl3z_criterion_rejects_det_minus_one() {
        let d1 = z3(&[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(
            sqrt_criterion_sl3z(&d1),
            Err(RootError::NotUnimodular(Ring::Integers.scalar(-1)))
        );
    }

    #[test]
    fn sl3z_criterion_can_be_empty() {
        // Quarter turn in the 1-2 plane: order 4, so a root would need order
        // 8, which no element of SL3(Z) has. Invariants (1, 1) leave the
        // quartic p^4 - 2p^2 - 8p - 3 without integer roots.
        let r = z3(&[0, -1, 0, 1, 0, 0, 0, 0, 1]);
        assert!(sqrt_criterion_sl3z(&r).unwrap().is_empty());
    }

    #[test]
    fn fp_criterion_examples() {
        let f3 = fp(3);
        let pairs = sqrt_criterion_fp(&SquareMatrix::identity(f3, 3)).unwrap();
        assert!(pairs.contains(&SqrtPair {
            p: f3.zero(),
            q: f3.zero()
        }));
        let f5 = fp(5);
        let pairs = sqrt_criterion_fp(&SquareMatrix::identity(f5, 3)).unwrap();
        assert!(pairs.contains(&SqrtPair {
            p: f5.scalar(3),
            q: f5.scalar(3)
        }));
    }

    #[test]
    fn fp_reconstruction_refuses_characteristic_two() {
        let f2 = fp(2);
        let e = SquareMatrix::identity(f2, 3);
        let pair = SqrtPair {
            p: f2.one(),
            q: f2.one(),
        };
        assert_eq!(
            sqrt_reconstruct_sl3(&e, &pair),
            Err(RootError::CharacteristicTwo)
        );
    }

    #[test]
    fn necessary_condition_examples() {
        let z = Ring::Integers;
        let a = z3(&[1, 2, 1, 0, 1, 2, 0, 0, 1]);
        assert!(sqrt_necessary_condition(&a, &z.scalar(3)).unwrap());
        let e = SquareMatrix::identity(z, 3);
        assert!(sqrt_necessary_condition(&e, &z.scalar(3)).unwrap());
        // 3 + 2·2 = 7
        assert!(!sqrt_necessary_condition(&e, &z.scalar(2)).unwrap());
    }

    #[test]
    fn family_expansion_counts() {
        // Nilpotent 2x2 matrices over F_p number p^2.
        for p in [2u64, 3, 5, 7] {
            let r = fp(p);
            let set = matrices_with_invariants(&r.zero(), &r.zero()).unwrap();
            assert_eq!(set.len() as u64, p * p);
            assert!(set.iter().all(|m| m.power(2) == SquareMatrix::zero(r, 2)));
        }
    }
}
