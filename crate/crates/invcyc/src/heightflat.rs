//! Height and flatness of Psi_pqr over the family r = alpha*p + beta*q:
//! the two-term height formula, the witness indices that realize it inside
//! the auxiliary factor, the four-condition flatness classifier, and the
//! 1996 height bound used as a consistency check.

use crate::coeffengine::e_closed;
use crate::error::{Error, Result};
use crate::numtheory::{ceil_div, FamilyTriple};
use crate::polyoracle::{height_of, inverse_cyclotomic_budgeted, DEFAULT_DEGREE_BUDGET};

/// Formula height, witness height, the exponents that certify them, and
/// (optionally) the height read off the oracle polynomial.
///
/// Invariants: c_formula = h_formula; e(m1) = +min{ceil(p'/alpha),
/// ceil(q'/beta)} and e(m2) = -min{ceil((q-p')/alpha), ceil((p-q')/beta)};
/// both witnesses sit below pq; when present, c_oracle = c_formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightReport {
    pub c_formula: u64,
    pub h_formula: u64,
    pub m1: i64,
    pub m2: i64,
    pub c_oracle: Option<u64>,
}

/// Flat flag plus the truth values of the four sufficient-and-exhaustive
/// conditions; flat holds exactly when one of them does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatnessVerdict {
    pub flat: bool,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub cond_d: bool,
}

/// The two witness minima: h1 = min{ceil(p'/alpha), ceil(q'/beta)} and
/// h2 = min{ceil((q-p')/alpha), ceil((p-q')/beta)}. Both are >= 1.
fn witness_minima(t: &FamilyTriple) -> (i64, i64) {
    let h1 = ceil_div(t.p_prime, t.alpha).min(ceil_div(t.q_prime, t.beta));
    let h2 = ceil_div(t.q - t.p_prime, t.alpha).min(ceil_div(t.p - t.q_prime, t.beta));
    (h1, h2)
}

/// Height of Psi_pqr by formula: the larger of the two witness minima.
pub fn height_formula(t: &FamilyTriple) -> u64 {
    let (h1, h2) = witness_minima(t);
    h1.max(h2) as u64
}

/// Witness indices and the height they certify, without the self-check.
pub fn h_witnesses_raw(t: &FamilyTriple) -> HeightReport {
    let (h1, h2) = witness_minima(t);
    HeightReport {
        c_formula: height_formula(t),
        h_formula: h1.max(h2) as u64,
        m1: (h1 - 1) * t.r,
        m2: (h2 - 1) * t.r + 1,
        c_oracle: None,
    }
}

/// Witness indices plus a self-check that evaluates e at both witnesses
/// and verifies they realize the formula height. A failure here falsifies
/// the implementation, never the input.
pub fn h_witnesses(t: &FamilyTriple) -> Result<HeightReport> {
    let report = h_witnesses_raw(t);
    let (h1, h2) = witness_minima(t);
    let check = |ok: bool, what: String| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::InternalCheck { what })
        }
    };
    let id = (t.p, t.q, t.r);
    let pq = t.p * t.q;
    check(
        report.m1 < pq,
        format!("witness m1 = {} not below pq for {id:?}", report.m1),
    )?;
    check(
        report.m2 < pq,
        format!("witness m2 = {} not below pq for {id:?}", report.m2),
    )?;
    let e1 = e_closed(t, report.m1);
    let e2 = e_closed(t, report.m2);
    check(e1 == h1, format!("e(m1) = {e1}, expected {h1} for {id:?}"))?;
    check(
        e2 == -h2,
        format!("e(m2) = {e2}, expected {} for {id:?}", -h2),
    )?;
    check(
        report.c_formula == report.h_formula,
        format!("formula heights disagree for {id:?}"),
    )?;
    Ok(report)
}

/// As [`h_witnesses`], additionally computing the oracle polynomial and
/// filling `c_oracle`; errs if the oracle height disagrees with the
/// formula.
pub fn h_witnesses_with_oracle(t: &FamilyTriple) -> Result<HeightReport> {
    let mut report = h_witnesses(t)?;
    let psi = inverse_cyclotomic_budgeted(t.n() as u64, DEFAULT_DEGREE_BUDGET)?;
    let oracle = height_of(&psi);
    if oracle != report.c_formula {
        return Err(Error::InternalCheck {
            what: format!(
                "oracle height {oracle} != formula height {} for ({}, {}, {})",
                report.c_formula, t.p, t.q, t.r
            ),
        });
    }
    report.c_oracle = Some(oracle);
    Ok(report)
}

/// Flatness classification: Psi_pqr is flat exactly when one of the four
/// conditions holds:
/// (a) alpha >= max{p', q - p'};
/// (b) beta >= max{q', p - q'};
/// (c) alpha >= p' and beta >= p - q';
/// (d) alpha >= q - p' and beta >= q'.
pub fn is_flat(t: &FamilyTriple) -> FlatnessVerdict {
    let cond_a = t.alpha >= t.p_prime.max(t.q - t.p_prime);
    let cond_b = t.beta >= t.q_prime.max(t.p - t.q_prime);
    let cond_c = t.alpha >= t.p_prime && t.beta >= t.p - t.q_prime;
    let cond_d = t.alpha >= t.q - t.p_prime && t.beta >= t.q_prime;
    FlatnessVerdict {
        flat: cond_a || cond_b || cond_c || cond_d,
        cond_a,
        cond_b,
        cond_c,
        cond_d,
    }
}

/// The 1996 height bound max{min{p', q'}, min{q - p', p - q'}}, applicable
/// only when deg Psi_pqr < 2qr; `None` outside that gate. When present it
/// dominates [`height_formula`].
pub fn moree_bound_1996(t: &FamilyTriple) -> Option<u64> {
    if t.deg_psi < 2 * t.q * t.r {
        let first = t.p_prime.min(t.q_prime);
        let second = (t.q - t.p_prime).min(t.p - t.q_prime);
        Some(first.max(second) as u64)
    } else {
        None
    }
}
