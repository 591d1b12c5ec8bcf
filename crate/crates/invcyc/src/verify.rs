//! Self-verification: rebuild Psi_pqr two independent ways for every
//! family triple up to a bound and check each formula output against
//! them — coefficients from all engines, both heights, witnesses,
//! flatness, coefficient bounds, and the symmetry identities. Failures
//! are collected and reported, never panicked.

use crate::coeffengine::{c_coeff, e_closed, e_summation_total, EvalMethod};
use crate::heightflat::{h_witnesses, height_formula, is_flat, moree_bound_1996};
use crate::numtheory::FamilyTriple;
use crate::parallel::maybe_par_map;
use crate::polyoracle::{
    f_polynomial, height_of, inverse_cyclotomic, poly_mul, psi_product_form, IntPolynomial,
};
use crate::search::enumerate_family_triples;

/// One failed check: the triple, the exponent involved (if any), and what
/// disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub m: Option<i64>,
    pub detail: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "({}, {}, {})", self.p, self.q, self.r)?;
        if let Some(m) = self.m {
            write!(out, " at m = {m}")?;
        }
        write!(out, ": {}", self.detail)
    }
}

/// Totals of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub triples: usize,
    pub coefficients: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    /// True when every check passed.
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Run every cross-engine check on one triple. Returns the number of
/// coefficients compared and whatever disagreements were found.
pub fn verify_triple(t: &FamilyTriple) -> (u64, Vec<Mismatch>) {
    let mut mismatches = Vec::new();
    let mut note = |m: Option<i64>, detail: String| {
        mismatches.push(Mismatch {
            p: t.p,
            q: t.q,
            r: t.r,
            m,
            detail,
        });
    };

    // Two independent constructions of Psi, plus the auxiliary factor.
    let psi = match inverse_cyclotomic(t.n() as u64) {
        Ok(psi) => psi,
        Err(e) => {
            note(None, format!("division oracle failed: {e}"));
            return (0, mismatches);
        }
    };
    let product = match psi_product_form(t.p as u64, t.q as u64, t.r as u64) {
        Ok(product) => product,
        Err(e) => {
            note(None, format!("product oracle failed: {e}"));
            return (0, mismatches);
        }
    };
    if psi != product {
        note(None, "division and product constructions disagree".into());
    }
    let f = match f_polynomial(t) {
        Ok(f) => f,
        Err(e) => {
            note(None, format!("auxiliary factor failed: {e}"));
            return (0, mismatches);
        }
    };

    // Degrees and the factorization identity.
    if psi.degree() != Some(t.deg_psi as usize) {
        note(
            None,
            format!("deg Psi = {:?}, expected {}", psi.degree(), t.deg_psi),
        );
    }
    if f.degree() != Some(t.tau as usize) {
        note(
            None,
            format!("deg f = {:?}, expected tau = {}", f.degree(), t.tau),
        );
    }
    let qr = t.q * t.r;
    match poly_mul(&IntPolynomial::x_pow_minus_one(qr as usize), &f) {
        Ok(recombined) => {
            if recombined != psi {
                note(None, "(x^qr - 1) * f != Psi".into());
            }
        }
        Err(e) => note(None, format!("factor product failed: {e}")),
    }

    // e(m): closed form against the polynomial, the summation, and the
    // palindrome, accumulating the sum identity.
    let mut e_sum = 0i64;
    for m in 0..=t.tau {
        let closed = e_closed(t, m);
        e_sum += closed;
        if closed != f.coeff(m) {
            note(
                Some(m),
                format!("e closed form {closed} != f coefficient {}", f.coeff(m)),
            );
        }
        if closed != e_summation_total(t, m) {
            note(Some(m), "e closed form != e summation".into());
        }
        if closed != e_closed(t, t.tau - m) {
            note(Some(m), "e breaks the palindrome e(m) = e(tau - m)".into());
        }
    }
    if e_sum != t.p {
        note(None, format!("sum of e = {e_sum}, expected p = {}", t.p));
    }

    // c(m): all engines, the coefficient bound, anti-reciprocity, and the
    // zero-sum identity; track the scanned height along the way.
    let deg = t.deg_psi;
    let bound = (t.p - 1) as u64;
    let mut c_sum = 0i64;
    let mut scanned_height = 0u64;
    let mut coefficients = 0u64;
    for m in 0..=deg {
        coefficients += 1;
        let oracle = psi.coeff(m);
        let closed = match c_coeff(t, m, EvalMethod::ClosedForm) {
            Ok(c) => c,
            Err(e) => {
                note(Some(m), format!("closed form errored: {e}"));
                continue;
            }
        };
        c_sum += closed;
        scanned_height = scanned_height.max(closed.unsigned_abs());
        if closed != oracle {
            note(Some(m), format!("closed form {closed} != oracle {oracle}"));
        }
        match c_coeff(t, m, EvalMethod::Summation) {
            Ok(sum) if sum == closed => {}
            Ok(sum) => note(Some(m), format!("summation {sum} != closed form {closed}")),
            Err(e) => note(Some(m), format!("summation errored: {e}")),
        }
        let via_f = f.coeff(m - qr) - f.coeff(m);
        if via_f != closed {
            note(
                Some(m),
                format!("factor lookup {via_f} != closed form {closed}"),
            );
        }
        if closed.unsigned_abs() > bound {
            note(
                Some(m),
                format!("|c| = {} exceeds p - 1 = {bound}", closed.unsigned_abs()),
            );
        }
        if oracle != -psi.coeff(deg - m) {
            note(
                Some(m),
                "c breaks anti-reciprocity c(m) = -c(deg - m)".into(),
            );
        }
    }
    if c_sum != 0 {
        note(None, format!("sum of c = {c_sum}, expected 0"));
    }

    // The full-polynomial engine is the same lookup with a rebuilt f;
    // exercise its code path on a few exponents.
    for m in [0, 1, qr.min(deg), deg] {
        match c_coeff(t, m, EvalMethod::Oracle) {
            Ok(c) if c == psi.coeff(m) => {}
            Ok(c) => note(
                Some(m),
                format!("oracle engine {c} != oracle {}", psi.coeff(m)),
            ),
            Err(e) => note(Some(m), format!("oracle engine errored: {e}")),
        }
    }

    // Heights: formula == height of Psi == height of f == scanned height;
    // witnesses check out; the 1996 bound dominates; flat iff height 1.
    let formula = height_formula(t);
    let oracle_height = height_of(&psi);
    if formula != oracle_height {
        note(
            None,
            format!("formula height {formula} != oracle height {oracle_height}"),
        );
    }
    if formula != height_of(&f) {
        note(
            None,
            format!(
                "formula height {formula} != auxiliary height {}",
                height_of(&f)
            ),
        );
    }
    if formula != scanned_height {
        note(
            None,
            format!("formula height {formula} != scanned height {scanned_height}"),
        );
    }
    if let Err(e) = h_witnesses(t) {
        note(None, format!("witness check failed: {e}"));
    }
    if let Some(bound) = moree_bound_1996(t) {
        if bound < formula {
            note(None, format!("1996 bound {bound} below height {formula}"));
        }
    }
    if is_flat(t).flat != (formula == 1) {
        note(None, "flatness verdict disagrees with height".into());
    }

    (coefficients, mismatches)
}

/// Verify every family triple with p*q*r <= max_pqr (in parallel when the
/// `parallel` feature is on) and collect the totals.
pub fn verify_sweep(max_pqr: i64) -> VerifyReport {
    let triples = enumerate_family_triples(max_pqr);
    let results = maybe_par_map(&triples, verify_triple);
    let mut coefficients = 0;
    let mut mismatches = Vec::new();
    for (count, mut found) in results {
        coefficients += count;
        mismatches.append(&mut found);
    }
    VerifyReport {
        triples: triples.len(),
        coefficients,
        mismatches,
    }
}
