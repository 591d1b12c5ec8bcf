//! Exact integer polynomials and the brute-force constructions this crate
//! is validated against: Phi_n, Psi_n = (x^n - 1)/Phi_n, the product form
//! over pairwise coprime triples, and the auxiliary factor
//! f = (1 + x^r + ... + x^{(p-1)r}) * Phi_pq.
//!
//! Everything here trades speed for trustworthiness: schoolbook
//! arithmetic, checked 64-bit coefficients, and divisions that verify a
//! zero remainder coefficient by coefficient.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, FamilyTriple};

/// Default cap on constructed polynomial degrees.
pub const DEFAULT_DEGREE_BUDGET: u64 = 1 << 20;

/// Dense exact-integer polynomial; index = exponent.
///
/// The coefficient vector never carries trailing zeros; the zero
/// polynomial is the empty vector and its degree is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// Build from a dense coefficient list (index = exponent), trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// The monomial c * x^k (zero polynomial if c = 0).
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// x^n - 1 for n >= 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1, "x^0 - 1 is the zero polynomial; pass n >= 1");
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        Self { coeffs }
    }

    /// The dense coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of x^m, zero outside the stored range (including m < 0).
    pub fn coeff(&self, m: i64) -> i64 {
        usize::try_from(m)
            .ok()
            .and_then(|k| self.coeffs.get(k).copied())
            .unwrap_or(0)
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Evaluate at an integer point with checked arithmetic (Horner).
    pub fn eval(&self, x: i64) -> Result<i64> {
        let overflow = || Error::Overflow {
            context: "polynomial evaluation",
        };
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x)
                .and_then(|t| t.checked_add(c))
                .ok_or_else(overflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    /// Sparse rendering: `c*x^k` terms in ascending exponent order,
    /// joined by ` + `, omitting zero terms; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{k}")?;
            first = false;
        }
        Ok(())
    }
}

// ---- ring operations ----

/// Exact product, iterating the sparser factor on the outside.
pub fn poly_mul(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial> {
    if f.is_zero() || g.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let overflow = || Error::Overflow {
        context: "polynomial multiplication",
    };
    let (outer, inner) = if f.support_len() <= g.support_len() {
        (f, g)
    } else {
        (g, f)
    };
    let mut out = vec![0i64; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in outer.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in inner.coeffs.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let term = a.checked_mul(b).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(IntPolynomial::from_coeffs(out))
}

/// Exact quotient f/g; long division that insists on a zero remainder.
///
/// The divisor's nonzero support is gathered once so each reduction step
/// touches only genuine terms.
pub fn poly_exact_div(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial> {
    let dg = g.degree().ok_or(Error::DivisionByZero)?;
    if f.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let df = f.degree().expect("nonzero");
    if df < dg {
        return Err(Error::InexactDivision { index: df });
    }
    let overflow = || Error::Overflow {
        context: "polynomial division",
    };
    let g_lead = g.coeffs[dg];
    let support: Vec<(usize, i64)> = g.coeffs[..dg]
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .collect();
    let mut rem = f.coeffs.clone();
    let mut quot = vec![0i64; df - dg + 1];
    for k in (0..=df - dg).rev() {
        let lead = rem[dg + k];
        if lead == 0 {
            continue;
        }
        if lead % g_lead != 0 {
            return Err(Error::InexactDivision { index: dg + k });
        }
        let qk = lead / g_lead;
        quot[k] = qk;
        rem[dg + k] = 0;
        for &(i, c) in &support {
            let term = qk.checked_mul(c).ok_or_else(overflow)?;
            rem[i + k] = rem[i + k].checked_sub(term).ok_or_else(overflow)?;
        }
    }
    if let Some(index) = rem[..dg].iter().rposition(|&c| c != 0) {
        return Err(Error::InexactDivision { index });
    }
    Ok(IntPolynomial::from_coeffs(quot))
}

// ---- cyclotomic constructions ----

/// Memo table for Phi_d. Only entries with a small coefficient vector are
/// retained: reuse only ever hits the proper divisors (Phi_p, Phi_pq, ...),
/// and holding every one-shot top-level result would pin a lot of memory
/// across large sweeps. All writers compute identical values, so
/// last-writer-wins insertion is sound.
const CACHE_COEFF_LIMIT: usize = 1 << 13;

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn proper_divisors(n: u64) -> Vec<u64> {
    let mut divisors = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divisors.push(i);
            if i != n / i {
                divisors.push(n / i);
            }
        }
        i += 1;
    }
    divisors.sort_unstable();
    divisors.pop(); // drop n itself
    divisors
}

fn cyclotomic_arc(n: u64, budget: u64) -> Result<Arc<IntPolynomial>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    if n > budget {
        return Err(Error::DegreeBudget { degree: n, budget });
    }
    if let Some(hit) = phi_cache().lock().unwrap().get(&n).cloned() {
        return Ok(hit);
    }
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in proper_divisors(n) {
        let phi_d = cyclotomic_arc(d, budget)?;
        acc = poly_exact_div(&acc, &phi_d)?;
    }
    let result = Arc::new(acc);
    if result.coeffs.len() <= CACHE_COEFF_LIMIT {
        phi_cache().lock().unwrap().insert(n, Arc::clone(&result));
    }
    Ok(result)
}

/// Phi_n: (x^n - 1) divided successively by Phi_d over every proper
/// divisor d of n (recursive, memoized). Degree phi(n).
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    cyclotomic_budgeted(n, DEFAULT_DEGREE_BUDGET)
}

/// As [`cyclotomic`] with an explicit degree budget.
pub fn cyclotomic_budgeted(n: u64, budget: u64) -> Result<IntPolynomial> {
    Ok((*cyclotomic_arc(n, budget)?).clone())
}

/// Psi_n = (x^n - 1)/Phi_n for n >= 2. Degree n - phi(n).
pub fn inverse_cyclotomic(n: u64) -> Result<IntPolynomial> {
    inverse_cyclotomic_budgeted(n, DEFAULT_DEGREE_BUDGET)
}

/// As [`inverse_cyclotomic`] with an explicit degree budget.
pub fn inverse_cyclotomic_budgeted(n: u64, budget: u64) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 2,
            hi: i64::MAX,
        });
    }
    let phi_n = cyclotomic_arc(n, budget)?;
    let numerator = IntPolynomial::x_pow_minus_one(n as usize);
    poly_exact_div(&numerator, &phi_n)
}

/// Psi over a pairwise coprime triple (primality not required) via
///
/// ```text
/// (x - 1)(x^pq - 1)(x^qr - 1)(x^rp - 1) / ((x^p - 1)(x^q - 1)(x^r - 1))
/// ```
///
/// For primes p < q < r this equals [`inverse_cyclotomic`] of pqr; for
/// coprime composites it is the inverse inclusion-exclusion polynomial.
/// Runs in O(pqr) time, unlike the division through Phi_pqr.
pub fn psi_product_form(p: u64, q: u64, r: u64) -> Result<IntPolynomial> {
    psi_product_form_budgeted(p, q, r, DEFAULT_DEGREE_BUDGET)
}

/// As [`psi_product_form`] with an explicit degree budget.
pub fn psi_product_form_budgeted(p: u64, q: u64, r: u64, budget: u64) -> Result<IntPolynomial> {
    for &v in &[p, q, r] {
        if v < 2 {
            return Err(Error::OutOfRange {
                what: "p, q, r",
                value: v as i64,
                lo: 2,
                hi: i64::MAX,
            });
        }
    }
    for &(a, b) in &[(p, q), (q, r), (p, r)] {
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime {
                a: a as i64,
                b: b as i64,
            });
        }
    }
    let n = p
        .checked_mul(q)
        .and_then(|pq| pq.checked_mul(r))
        .ok_or(Error::Overflow { context: "p*q*r" })?;
    if n > budget {
        return Err(Error::DegreeBudget { degree: n, budget });
    }
    let mut acc = IntPolynomial::x_pow_minus_one(1);
    for k in [p * q, q * r, r * p] {
        acc = poly_mul(&acc, &IntPolynomial::x_pow_minus_one(k as usize))?;
    }
    for k in [p, q, r] {
        acc = poly_exact_div(&acc, &IntPolynomial::x_pow_minus_one(k as usize))?;
    }
    Ok(acc)
}

/// The auxiliary factor f = (1 + x^r + ... + x^{(p-1)r}) * Phi_pq, whose
/// coefficients e(m) drive every fast engine. Degree tau = (p-1)(q+r-1);
/// its coefficient sequence is a palindrome.
pub fn f_polynomial(t: &FamilyTriple) -> Result<IntPolynomial> {
    let phi_pq = cyclotomic_arc((t.p * t.q) as u64, DEFAULT_DEGREE_BUDGET)?;
    let mut comb = vec![0i64; ((t.p - 1) * t.r) as usize + 1];
    for j in 0..t.p {
        comb[(j * t.r) as usize] = 1;
    }
    poly_mul(&IntPolynomial::from_coeffs(comb), &phi_pq)
}

/// Height: the maximal absolute value among the coefficients (0 for the
/// zero polynomial).
pub fn height_of(f: &IntPolynomial) -> u64 {
    f.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.to_vec())
    }

    /// x^7 + x^6 + x^5 - x^2 - x - 1, the inverse cyclotomic polynomial of 15.
    fn psi_15() -> IntPolynomial {
        poly(&[-1, -1, -1, 0, 0, 1, 1, 1])
    }

    #[test]
    fn construction_normalizes_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[]).degree(), None);
        assert_eq!(poly(&[5]).degree(), Some(0));
    }

    #[test]
    fn coeff_is_zero_outside_range() {
        let f = poly(&[3, 0, -2]);
        assert_eq!(f.coeff(-1), 0);
        assert_eq!(f.coeff(0), 3);
        assert_eq!(f.coeff(2), -2);
        assert_eq!(f.coeff(3), 0);
    }

    #[test]
    fn poly_mul_examples() {
        let one_plus_x = poly(&[1, 1]);
        let one_minus_x = poly(&[1, -1]);
        assert_eq!(
            poly_mul(&one_plus_x, &one_minus_x).unwrap(),
            poly(&[1, 0, -1])
        );

        let x3_minus_1 = IntPolynomial::x_pow_minus_one(3);
        let quintic = poly(&[1, 1, 1, 1, 1]);
        assert_eq!(poly_mul(&x3_minus_1, &quintic).unwrap(), psi_15());

        assert!(poly_mul(&one_plus_x, &IntPolynomial::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn poly_mul_degree_adds() {
        let f = poly(&[2, 0, 1]);
        let g = poly(&[-1, 4]);
        assert_eq!(poly_mul(&f, &g).unwrap().degree(), Some(3));
    }

    #[test]
    fn poly_mul_reports_overflow() {
        let f = poly(&[i64::MAX]);
        let g = poly(&[2]);
        assert!(matches!(poly_mul(&f, &g), Err(Error::Overflow { .. })));
    }

    #[test]
    fn poly_exact_div_examples() {
        let q = poly_exact_div(&poly(&[-1, 0, 1]), &poly(&[-1, 1])).unwrap();
        assert_eq!(q, poly(&[1, 1]));

        let q = poly_exact_div(
            &IntPolynomial::x_pow_minus_one(15),
            &cyclotomic(15).unwrap(),
        );
        assert_eq!(q.unwrap(), psi_15());

        assert!(matches!(
            poly_exact_div(&poly(&[1, 0, 1]), &poly(&[-1, 1])),
            Err(Error::InexactDivision { index: 0 })
        ));
    }

    #[test]
    fn poly_exact_div_rejects_zero_divisor_and_short_dividend() {
        assert!(matches!(
            poly_exact_div(&poly(&[1, 1]), &IntPolynomial::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            poly_exact_div(&poly(&[1, 1]), &poly(&[1, 1, 1])),
            Err(Error::InexactDivision { index: 1 })
        ));
        assert!(poly_exact_div(&IntPolynomial::zero(), &poly(&[1, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn mul_then_div_roundtrips() {
        let f = poly(&[3, -1, 0, 2, 7]);
        let g = poly(&[1, 5, -2]);
        let product = poly_mul(&f, &g).unwrap();
        assert_eq!(poly_exact_div(&product, &g).unwrap(), f);
        assert_eq!(poly_exact_div(&product, &f).unwrap(), g);
    }

    #[test]
    fn cyclotomic_small_indices() {
        assert_eq!(cyclotomic(1).unwrap(), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), poly(&[1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(
            cyclotomic(15).unwrap(),
            poly(&[1, -1, 0, 1, -1, 1, 0, -1, 1])
        );
    }

    #[test]
    fn cyclotomic_561_has_totient_degree() {
        assert_eq!(cyclotomic(561).unwrap().degree(), Some(320));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in [1u64, 2, 6, 12, 15, 30, 105] {
            let mut product = IntPolynomial::one();
            let mut divisors = proper_divisors(n);
            divisors.push(n);
            for d in divisors {
                product = poly_mul(&product, &cyclotomic(d).unwrap()).unwrap();
            }
            assert_eq!(
                product,
                IntPolynomial::x_pow_minus_one(n as usize),
                "product of Phi_d over d | {n}"
            );
        }
    }

    #[test]
    fn cyclotomic_budget_is_enforced() {
        assert!(matches!(
            cyclotomic_budgeted(2_000_000, DEFAULT_DEGREE_BUDGET),
            Err(Error::DegreeBudget { .. })
        ));
        assert!(matches!(cyclotomic(0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn inverse_cyclotomic_small_indices() {
        assert_eq!(inverse_cyclotomic(15).unwrap(), psi_15());
        assert_eq!(inverse_cyclotomic(6).unwrap(), poly(&[-1, -1, 0, 1, 1]));
        assert_eq!(inverse_cyclotomic(561).unwrap().degree(), Some(241));
        assert!(matches!(
            inverse_cyclotomic(1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn psi_product_form_matches_division_oracle() {
        assert_eq!(
            psi_product_form(3, 11, 17).unwrap(),
            inverse_cyclotomic(561).unwrap()
        );
    }

    #[test]
    fn psi_product_form_handles_coprime_composites() {
        let psi = psi_product_form(4, 9, 25).unwrap();
        assert_eq!(psi.degree(), Some(324));
        assert_eq!(psi.coeff(0), -1);
    }

    #[test]
    fn psi_product_form_rejects_shared_factors() {
        assert!(matches!(
            psi_product_form(2, 4, 5),
            Err(Error::NotCoprime { a: 2, b: 4 })
        ));
    }

    #[test]
    fn f_polynomial_shape_for_3_11_17() {
        let t = FamilyTriple::new(3, 11, 17).unwrap();
        let f = f_polynomial(&t).unwrap();
        assert_eq!(f.degree(), Some(54));
        assert_eq!(f.coeff(0), 1);
        assert_eq!(f.eval(1).unwrap(), 3);
    }

    #[test]
    fn height_of_examples() {
        assert_eq!(height_of(&psi_15()), 1);
        assert_eq!(height_of(&poly(&[-5, 1])), 5);
        assert_eq!(height_of(&IntPolynomial::zero()), 0);
        assert_eq!(height_of(&inverse_cyclotomic(561).unwrap()), 2);
    }

    #[test]
    fn display_is_sparse_and_ascending() {
        assert_eq!(poly(&[]).to_string(), "0");
        assert_eq!(poly(&[1, 0, -2]).to_string(), "1*x^0 + -2*x^2");
        assert_eq!(
            psi_15().to_string(),
            "-1*x^0 + -1*x^1 + -1*x^2 + 1*x^5 + 1*x^6 + 1*x^7"
        );
    }

    #[test]
    fn eval_uses_checked_arithmetic() {
        assert_eq!(poly(&[1, 2, 3]).eval(2).unwrap(), 17);
        assert!(matches!(
            poly(&[0, i64::MAX]).eval(2),
            Err(Error::Overflow { .. })
        ));
    }
}
