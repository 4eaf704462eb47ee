//! Two-variable symmetric polynomials expressed through the elementary
//! symmetric values `e1 = x + y`, `e2 = xy`, and the Cayley–Hamilton
//! sequences `s_n`, `t_n` with `X^n ≡ s_n·X + t_n·E (mod χ_X)`.

use crate::arith::{ArithError, ExactScalar, Ring};

/// Values of the elementary symmetric polynomials, typically the trace and
/// determinant of a 2×2 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPolyParams {
    e1: ExactScalar,
    e2: ExactScalar,
}

impl SymPolyParams {
    pub fn new(e1: ExactScalar, e2: ExactScalar) -> Result<Self, ArithError> {
        e1.ring().check_same(e2.ring())?;
        Ok(SymPolyParams { e1, e2 })
    }

    pub fn ring(&self) -> Ring {
        self.e1.ring()
    }

    pub fn e1(&self) -> &ExactScalar {
        &self.e1
    }

    pub fn e2(&self) -> &ExactScalar {
        &self.e2
    }

    fn step(&self, prev: &ExactScalar, prev2: &ExactScalar) -> ExactScalar {
        &(&self.e1 * prev) - &(&self.e2 * prev2)
    }
}

/// `Q_n(e1, e2) = h_n(x, y)`, the complete homogeneous polynomial.
///
/// Uses `Q_n = e1·Q_{n-1} − e2·Q_{n-2}` from `Q_0 = 1`, `Q_1 = e1`.
pub fn complete_homogeneous(n: u64, params: &SymPolyParams) -> ExactScalar {
    complete_homogeneous_pair(n, params).0
}

/// `(Q_n, Q_{n-1})` with the convention `Q_{-1} = 0`.
pub fn complete_homogeneous_pair(n: u64, params: &SymPolyParams) -> (ExactScalar, ExactScalar) {
    let ring = params.ring();
    let mut prev = ring.zero();
    let mut cur = ring.one();
    for _ in 0..n {
        let next = params.step(&cur, &prev);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `P_n(e1, e2) = x^n + y^n` via the Newton recurrence
/// `P_n = e1·P_{n-1} − e2·P_{n-2}`, `P_1 = e1`, `P_2 = e1² − 2e2`.
///
/// `P_0 = 2` is accepted as the natural extension.
pub fn power_sum(n: u64, params: &SymPolyParams) -> ExactScalar {
    let ring = params.ring();
    let two = ring.scalar(2);
    let mut prev = two;
    let mut cur = params.e1.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = params.step(&cur, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `(s_n, t_n)` for a 2×2 matrix with the given trace and determinant,
/// iterating `s_n = tr·s_{n-1} + t_{n-1}`, `t_n = −det·s_{n-1}` from
/// `s_1 = 1`, `t_1 = 0`.
pub fn st_sequences(
    trace: &ExactScalar,
    det: &ExactScalar,
    n: u64,
) -> Result<(ExactScalar, ExactScalar), ArithError> {
    trace.ring().check_same(det.ring())?;
    if n == 0 {
        return Err(ArithError::InvalidIndex(n));
    }
    let ring = trace.ring();
    let mut s = ring.one();
    let mut t = ring.zero();
    for _ in 1..n {
        let next_s = &(trace * &s) + &t;
        t = -(det * &s);
        s = next_s;
    }
    Ok((s, t))
}
