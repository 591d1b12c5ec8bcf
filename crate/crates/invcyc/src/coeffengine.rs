//! Fast coefficient engines for the family r = alpha*p + beta*q:
//! the {-1, 0, +1} coefficients of Phi_pq, the summation and closed-form
//! evaluations of the auxiliary-factor coefficients e(m), their
//! combination c(m) = e(m - qr) - e(m) for Psi_pqr, and the factorization
//! engine that covers r beyond phi(pq).

use crate::error::{Error, Result};
use crate::numtheory::{ceil_div, decompose_mod_pq, mod_inverse, FamilyTriple};
use crate::polyoracle::f_polynomial;

/// Selects one of the three interchangeable coefficient engines.
///
/// They must agree everywhere: `ClosedForm` costs O(1) arithmetic per
/// coefficient, `Summation` O(p), and `Oracle` builds the full auxiliary
/// polynomial (O(n) or worse) before reading one coefficient off it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    ClosedForm,
    Summation,
    Oracle,
}

/// Intermediates of the wrapped-branch closed form, exposed so tests can
/// verify them.
///
/// Invariants: j0 = min of the two wrapped ceilings; a_star = a - j0;
/// 0 <= u_star < q and 0 <= v_star < p whenever j0 < a; the branch result
/// is e_plus - e_minus with both parts nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WrappedCaseTrace {
    pub a: i64,
    pub b: i64,
    pub j0: i64,
    pub a_star: i64,
    pub u_star: i64,
    pub v_star: i64,
    pub e_plus: i64,
    pub e_minus: i64,
}

/// Coefficient of x^m in Phi_pq for distinct primes p, q; zero outside
/// [0, phi(pq)] so summations need no edge guards.
///
/// Splits m as u*p + v*q (mod pq) and classifies: +1 when u < p' and
/// v < q', -1 when u >= p' and v >= q', 0 otherwise.
///
/// Panics if p and q are not distinct primes (precondition).
pub fn a_pq(p: i64, q: i64, m: i64) -> i64 {
    let phi_pq = (p - 1) * (q - 1);
    if m < 0 || m > phi_pq {
        return 0;
    }
    let p_prime = mod_inverse(p, q).expect("p, q must be distinct primes");
    let q_prime = mod_inverse(q, p).expect("p, q must be distinct primes");
    let d = decompose_mod_pq(m, p, q).expect("0 <= m <= phi(pq) < pq");
    if d.u < p_prime && d.v < q_prime {
        1
    } else if d.u >= p_prime && d.v >= q_prime {
        -1
    } else {
        0
    }
}

/// max(0, min(values)). Panics on an empty slice (precondition).
pub fn min_geq0(values: &[i64]) -> i64 {
    values
        .iter()
        .copied()
        .min()
        .expect("min_geq0 requires a nonempty slice")
        .max(0)
}

/// e(m) for 0 <= m < p*r by direct summation: sum of a_pq(m - j*r) over
/// j = 0..=floor(m/r). O(p) terms.
pub fn e_summation(t: &FamilyTriple, m: i64) -> Result<i64> {
    let pr = t.p * t.r;
    if m < 0 || m >= pr {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            lo: 0,
            hi: pr - 1,
        });
    }
    let mut sum = 0;
    let mut index = m;
    while index >= 0 {
        sum += a_pq(t.p, t.q, index);
        index -= t.r;
    }
    Ok(sum)
}

/// Total version of [`e_summation`]: zero outside [0, tau], reflected
/// through the palindrome e(m) = e(tau - m) for m >= p*r.
pub fn e_summation_total(t: &FamilyTriple, m: i64) -> i64 {
    if m < 0 || m > t.tau {
        return 0;
    }
    let index = if m < t.p * t.r { m } else { t.tau - m };
    e_summation(t, index).expect("reflected index lies in [0, p*r)")
}

/// Coefficient e(m) of the auxiliary factor in O(1) arithmetic per call.
///
/// Total over all integers: zero outside [0, tau]. Dispatch: reflect
/// m >= p*r through tau - m; strip whole multiples of r down into
/// (pq - r, pq]; step off the boundary e(pq) = e(pq - r) (the x^pq term
/// of Phi_pq is past its degree, so the j = 0 summand vanishes); then
/// evaluate the split m = (a-1)r + b through the decomposition of b.
pub fn e_closed(t: &FamilyTriple, m: i64) -> i64 {
    e_closed_with_trace(t, m).0
}

/// As [`e_closed`], also returning the wrapped-branch intermediates when
/// the reduced index lands in the wrapped case.
pub fn e_closed_with_trace(t: &FamilyTriple, m: i64) -> (i64, Option<WrappedCaseTrace>) {
    let (p, q, r) = (t.p, t.q, t.r);
    let (alpha, beta) = (t.alpha, t.beta);
    let (pp, qp) = (t.p_prime, t.q_prime);
    let pq = p * q;
    if m < 0 || m > t.tau {
        return (0, None);
    }
    let mut m = m;
    if m >= p * r {
        m = t.tau - m;
    }
    if m > pq {
        m -= r * ceil_div(m - pq, r);
    }
    if m == pq {
        m -= r;
    }
    debug_assert!((0..pq).contains(&m));
    let a = m / r + 1;
    let b = m % r;
    let d = decompose_mod_pq(b, p, q).expect("b < r < pq");
    let (u, v) = (d.u, d.v);
    if !d.wrapped {
        let e = min_geq0(&[a, ceil_div(pp - u, alpha), ceil_div(qp - v, beta)]);
        return (e, None);
    }
    // Wrapped: b + pq = u*p + v*q.
    let cu = ceil_div(q - u, alpha);
    let cv = ceil_div(p - v, beta);
    let j0 = cu.min(cv);
    let a_star = a - j0;
    // On a tie take the u-side branch: a genuine tie forces j0 >= a
    // (otherwise b + j0*r >= pq while b + j0*r <= m < pq), so e_plus
    // vanishes through a_star <= 0 whatever (u_star, v_star) would be.
    let (u_star, v_star) = if cu <= cv {
        (u + j0 * alpha - q, v + j0 * beta)
    } else {
        (u + j0 * alpha, v + j0 * beta - p)
    };
    debug_assert!(cu != cv || a_star <= 0, "tie must force a_star <= 0");
    debug_assert!(
        j0 >= a || ((0..q).contains(&u_star) && (0..p).contains(&v_star)),
        "reduced point must be a residue pair when j0 < a"
    );
    let e_plus = min_geq0(&[
        a_star,
        ceil_div(pp - u_star, alpha),
        ceil_div(qp - v_star, beta),
    ]);
    let reachable = min_geq0(&[a, cu, cv]);
    let blocked = 0.max(ceil_div(pp - u, alpha)).max(ceil_div(qp - v, beta));
    let e_minus = min_geq0(&[reachable - blocked]);
    let trace = WrappedCaseTrace {
        a,
        b,
        j0,
        a_star,
        u_star,
        v_star,
        e_plus,
        e_minus,
    };
    (e_plus - e_minus, Some(trace))
}

/// Coefficient of x^m in Psi_pqr = (x^qr - 1) * f, i.e.
/// e(m - qr) - e(m), under the engine picked by `method`.
pub fn c_coeff(t: &FamilyTriple, m: i64, method: EvalMethod) -> Result<i64> {
    if m < 0 || m > t.deg_psi {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            lo: 0,
            hi: t.deg_psi,
        });
    }
    let qr = t.q * t.r;
    match method {
        EvalMethod::ClosedForm => Ok(e_closed(t, m - qr) - e_closed(t, m)),
        EvalMethod::Summation => Ok(e_summation_total(t, m - qr) - e_summation_total(t, m)),
        EvalMethod::Oracle => {
            let f = f_polynomial(t)?;
            Ok(f.coeff(m - qr) - f.coeff(m))
        }
    }
}

/// Coefficient of x^a in Psi_pq = (x^p - 1)(1 + x + ... + x^{q-1}):
/// -1 on [0, p), 0 on [p, q), +1 on [q, p + q), 0 elsewhere.
fn c_pq(p: i64, q: i64, a: i64) -> i64 {
    if (0..p).contains(&a) {
        -1
    } else if (q..p + q).contains(&a) {
        1
    } else {
        0
    }
}

/// Coefficient of x^m in Psi_pqr when r > phi(pq), where the identity
/// Psi_pqr(x) = Psi_pq(x^r) * Phi_pq(x) collapses every coefficient to a
/// product: with m = a*r + b (0 <= b < r), c(m) = a_pq(b) * c_pq(a).
pub fn c_trivial_case(p: i64, q: i64, r: i64, m: i64) -> Result<i64> {
    for &value in &[p, q, r] {
        if value < 0 || !crate::numtheory::is_prime(value as u64) {
            return Err(Error::NotPrime { value });
        }
    }
    if !(3 <= p && p < q && q < r) {
        return Err(Error::BadOrdering { p, q, r });
    }
    let phi_pq = (p - 1) * (q - 1);
    if r <= phi_pq {
        return Err(Error::RInsideFamily { r, phi_pq });
    }
    let overflow = || Error::Overflow {
        context: "degree of Psi",
    };
    let pq = p.checked_mul(q).ok_or_else(overflow)?;
    let qr = q.checked_mul(r).ok_or_else(overflow)?;
    let rp = r.checked_mul(p).ok_or_else(overflow)?;
    let deg_psi = pq
        .checked_add(qr)
        .and_then(|s| s.checked_add(rp))
        .and_then(|s| s.checked_sub(p + q + r - 1))
        .ok_or_else(overflow)?;
    if m < 0 || m > deg_psi {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            lo: 0,
            hi: deg_psi,
        });
    }
    Ok(a_pq(p, q, m % r) * c_pq(p, q, m / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyoracle::{cyclotomic, inverse_cyclotomic, poly_mul, IntPolynomial};

    fn triple(p: i64, q: i64, r: i64) -> FamilyTriple {
        FamilyTriple::new(p, q, r).unwrap()
    }

    #[test]
    fn a_pq_spot_values() {
        assert_eq!(a_pq(3, 5, 0), 1);
        assert_eq!(a_pq(3, 5, 1), -1);
        assert_eq!(a_pq(3, 5, 2), 0);
        assert_eq!(a_pq(3, 5, -1), 0);
        assert_eq!(a_pq(3, 5, 9), 0, "beyond phi(15) = 8");
    }

    #[test]
    fn a_pq_matches_cyclotomic_coefficients() {
        for &(p, q) in &[(3, 5), (3, 11), (5, 7), (5, 11), (7, 11), (7, 13)] {
            let phi_pq = cyclotomic((p * q) as u64).unwrap();
            for m in -3..=(p * q + 3) {
                assert_eq!(
                    a_pq(p, q, m),
                    phi_pq.coeff(m),
                    "coefficient of x^{m} in Phi_{}",
                    p * q
                );
            }
        }
    }

    #[test]
    fn min_geq0_clamps_at_zero() {
        assert_eq!(min_geq0(&[3, 5]), 3);
        assert_eq!(min_geq0(&[-2, 4]), 0);
        assert_eq!(min_geq0(&[0]), 0);
    }

    #[test]
    fn e_summation_spot_values() {
        let t = triple(3, 11, 17);
        assert_eq!(e_summation(&t, 0).unwrap(), 1);
        assert_eq!(e_summation(&t, 17).unwrap(), 2);
        assert_eq!(e_summation(&t, 1).unwrap(), -1);
        assert!(matches!(e_summation(&t, 51), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn e_closed_spot_values() {
        let t = triple(3, 11, 17);
        assert_eq!(e_closed(&t, 1), -1);
        assert_eq!(e_closed(&t, 17), 2);
        assert_eq!(e_closed(&t, 55), 0, "past tau = 54");
        assert_eq!(e_closed(&t, -1), 0);
        assert_eq!(e_closed(&t, t.tau), 1, "palindrome mate of e(0)");
    }

    #[test]
    fn e_closed_wrapped_trace_for_3_11_17_at_1() {
        let t = triple(3, 11, 17);
        let (e, trace) = e_closed_with_trace(&t, 1);
        assert_eq!(e, -1);
        let trace = trace.expect("m = 1 wraps");
        assert_eq!(trace.a, 1);
        assert_eq!(trace.b, 1);
        assert_eq!(trace.j0, 1);
        assert_eq!(trace.a_star, 0);
        assert_eq!(trace.e_plus, 0);
        assert_eq!(trace.e_minus, 1);
    }

    #[test]
    fn e_closed_agrees_with_summation_below_pr() {
        for &(p, q, r) in &[
            (3, 11, 17),
            (5, 7, 17),
            (5, 7, 19),
            (5, 11, 31),
            (5, 11, 37),
        ] {
            let t = triple(p, q, r);
            for m in 0..(p * r) {
                assert_eq!(
                    e_closed(&t, m),
                    e_summation(&t, m).unwrap(),
                    "e({m}) for ({p}, {q}, {r})"
                );
            }
        }
    }

    #[test]
    fn e_closed_matches_the_auxiliary_polynomial() {
        for &(p, q, r) in &[(3, 11, 17), (5, 7, 19), (3, 13, 19)] {
            let t = triple(p, q, r);
            let f = f_polynomial(&t).unwrap();
            for m in -2..=(t.tau + 2) {
                assert_eq!(e_closed(&t, m), f.coeff(m), "e({m}) for ({p}, {q}, {r})");
            }
        }
    }

    #[test]
    fn e_closed_is_a_palindrome() {
        let t = triple(5, 7, 19);
        for m in 0..=t.tau {
            assert_eq!(e_closed(&t, m), e_closed(&t, t.tau - m));
        }
    }

    #[test]
    fn e_closed_sums_to_p() {
        for &(p, q, r) in &[(3, 11, 17), (5, 7, 17), (5, 11, 31)] {
            let t = triple(p, q, r);
            let total: i64 = (0..=t.tau).map(|m| e_closed(&t, m)).sum();
            assert_eq!(total, p);
        }
    }

    #[test]
    fn c_coeff_spot_values_and_engine_agreement() {
        let t = triple(3, 11, 17);
        for method in [
            EvalMethod::ClosedForm,
            EvalMethod::Summation,
            EvalMethod::Oracle,
        ] {
            assert_eq!(c_coeff(&t, 0, method).unwrap(), -1, "{method:?}");
            assert_eq!(c_coeff(&t, 17, method).unwrap(), -2, "{method:?}");
            assert_eq!(c_coeff(&t, 241, method).unwrap(), 1, "{method:?}");
        }
        assert!(matches!(
            c_coeff(&t, -1, EvalMethod::ClosedForm),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            c_coeff(&t, 242, EvalMethod::ClosedForm),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn c_coeff_matches_the_division_oracle_everywhere() {
        let t = triple(3, 11, 17);
        let psi = inverse_cyclotomic(561).unwrap();
        for m in 0..=t.deg_psi {
            assert_eq!(
                c_coeff(&t, m, EvalMethod::ClosedForm).unwrap(),
                psi.coeff(m),
                "c({m})"
            );
        }
    }

    #[test]
    fn auxiliary_factorization_identity() {
        let t = triple(3, 11, 17);
        let f = f_polynomial(&t).unwrap();
        let psi = inverse_cyclotomic(561).unwrap();
        let product = poly_mul(&IntPolynomial::x_pow_minus_one((t.q * t.r) as usize), &f).unwrap();
        assert_eq!(product, psi);
    }

    #[test]
    fn c_trivial_case_spot_values() {
        assert_eq!(c_trivial_case(3, 5, 23, 0).unwrap(), -1);
        // a = 1, b = 2: a_pq(3, 5, 2) = 0 kills the product.
        assert_eq!(c_trivial_case(3, 5, 23, 25).unwrap(), 0);
    }

    #[test]
    fn c_trivial_case_matches_the_oracle_for_345() {
        let psi = inverse_cyclotomic(345).unwrap();
        let deg = psi.degree().unwrap() as i64;
        for m in 0..=deg {
            assert_eq!(c_trivial_case(3, 5, 23, m).unwrap(), psi.coeff(m), "c({m})");
        }
    }

    #[test]
    fn c_trivial_case_rejects_family_range_r() {
        assert!(matches!(
            c_trivial_case(3, 11, 17, 0),
            Err(Error::RInsideFamily { r: 17, phi_pq: 20 })
        ));
        assert!(matches!(
            c_trivial_case(3, 5, 23, -1),
            Err(Error::OutOfRange { .. })
        ));
    }
}
