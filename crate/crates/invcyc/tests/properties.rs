//! Property-based checks: randomized inputs against the brute-force
//! oracles and the structural invariants that hold for every valid input.

use std::sync::OnceLock;

use proptest::prelude::*;

use invcyc::coeffengine::{a_pq, c_trivial_case, e_closed_with_trace, e_summation_total};
use invcyc::heightflat::h_witnesses;
use invcyc::numtheory::{
    decompose_mod_pq, decompose_r, gcd, mod_inverse, primes_upto, FamilyTriple,
};
use invcyc::polyoracle::{
    cyclotomic, inverse_cyclotomic, poly_exact_div, poly_mul, psi_product_form, IntPolynomial,
};
use invcyc::search::{enumerate_family_triples, enumerate_trivial_triples};
use invcyc::Error;

// ---- input pools ----

fn prime_pairs() -> &'static [(i64, i64)] {
    static POOL: OnceLock<Vec<(i64, i64)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let primes = primes_upto(61);
        let mut pairs = Vec::new();
        for (i, &p) in primes.iter().enumerate() {
            if p < 3 {
                continue;
            }
            for &q in &primes[i + 1..] {
                pairs.push((p, q));
            }
        }
        pairs
    })
}

fn family_pool() -> &'static [FamilyTriple] {
    static POOL: OnceLock<Vec<FamilyTriple>> = OnceLock::new();
    POOL.get_or_init(|| enumerate_family_triples(20_000))
}

fn trivial_pool() -> &'static [(i64, i64, i64)] {
    static POOL: OnceLock<Vec<(i64, i64, i64)>> = OnceLock::new();
    POOL.get_or_init(|| enumerate_trivial_triples(8_000))
}

proptest! {
    #[test]
    fn residue_decomposition_roundtrips(
        pair_idx in 0..prime_pairs().len(),
        b_seed in 0i64..1_000_000,
    ) {
        let (p, q) = prime_pairs()[pair_idx];
        let b = b_seed % (p * q);
        let d = decompose_mod_pq(b, p, q).unwrap();
        prop_assert!((0..q).contains(&d.u));
        prop_assert!((0..p).contains(&d.v));
        prop_assert_eq!(d.value(p, q), b);
        prop_assert_eq!(d.wrapped, d.u * p + d.v * q >= p * q);
    }

    #[test]
    fn modular_inverse_inverts_or_shares_a_factor(
        a in 1i64..100_000,
        m in 2i64..100_000,
    ) {
        match mod_inverse(a, m) {
            Ok(x) => {
                prop_assert!((1..m).contains(&x));
                prop_assert_eq!((a as i128 * x as i128).rem_euclid(m as i128), 1);
            }
            Err(Error::NotInvertible { .. }) => {
                prop_assert!(gcd(a as u64, m as u64) > 1);
            }
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }

    #[test]
    fn multiply_then_divide_roundtrips(
        f_coeffs in prop::collection::vec(-50i64..=50, 0..40),
        g_coeffs in prop::collection::vec(-50i64..=50, 1..20),
    ) {
        let f = IntPolynomial::from_coeffs(f_coeffs);
        let mut g = IntPolynomial::from_coeffs(g_coeffs);
        if g.is_zero() {
            g = IntPolynomial::one();
        }
        let product = poly_mul(&f, &g).unwrap();
        let back = poly_exact_div(&product, &g).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn binary_coefficients_match_the_cyclotomic_polynomial(
        pair_idx in 0..prime_pairs().len(),
        m_seed in 0i64..1_000_000,
    ) {
        let (p, q) = prime_pairs()[pair_idx];
        let phi_pq = cyclotomic((p * q) as u64).unwrap();
        let m = m_seed % (p * q + 20) - 10;
        prop_assert_eq!(a_pq(p, q, m), phi_pq.coeff(m));
    }

    #[test]
    fn r_decomposition_matches_an_exhaustive_scan(
        pair_idx in 0..prime_pairs().len(),
        r_seed in 0i64..1_000_000,
    ) {
        let (p, q) = prime_pairs()[pair_idx];
        let phi_pq = (p - 1) * (q - 1);
        prop_assume!(phi_pq > q + 1);
        let r = q + 1 + r_seed % (phi_pq - q);
        let mut scan = None;
        for beta in 1..p {
            let rest = r - beta * q;
            if rest > 0 && rest % p == 0 {
                scan = Some((rest / p, beta));
                break;
            }
        }
        prop_assert_eq!(decompose_r(p, q, r).unwrap(), scan);
    }

    #[test]
    fn family_triples_keep_their_invariants(idx in 0..family_pool().len()) {
        let t = family_pool()[idx];
        prop_assert_eq!(t.alpha * t.p + t.beta * t.q, t.r);
        prop_assert!(t.alpha >= 1);
        prop_assert!((1..t.p).contains(&t.beta));
        prop_assert!(t.r <= t.phi_pq);
        prop_assert_eq!(t.p * t.p_prime + t.q * t.q_prime, t.p * t.q + 1);
        prop_assert_eq!(t.tau, t.deg_psi - t.q * t.r);
        prop_assert_eq!(t.tau, (t.p - 1) * (t.q + t.r - 1));
        // The witness self-check recomputes e at both witness exponents.
        prop_assert!(h_witnesses(&t).is_ok());
    }

    #[test]
    fn closed_form_trace_stays_consistent(
        idx in 0..family_pool().len(),
        m_seed in 0i64..1_000_000_000,
    ) {
        let t = family_pool()[idx];
        let m = m_seed % (t.tau + 1);
        let (e, trace) = e_closed_with_trace(&t, m);
        prop_assert_eq!(e, e_summation_total(&t, m));
        if let Some(trace) = trace {
            prop_assert_eq!(trace.a_star, trace.a - trace.j0);
            prop_assert!(trace.e_plus >= 0);
            prop_assert!(trace.e_minus >= 0);
            prop_assert_eq!(e, trace.e_plus - trace.e_minus);
            if trace.j0 < trace.a {
                prop_assert!((0..t.q).contains(&trace.u_star));
                prop_assert!((0..t.p).contains(&trace.v_star));
            }
        }
    }

    #[test]
    fn factorization_engine_matches_the_product_oracle(
        triple_idx in 0..trivial_pool().len(),
        m_seed in 0i64..1_000_000_000,
    ) {
        let (p, q, r) = trivial_pool()[triple_idx];
        let psi = psi_product_form(p as u64, q as u64, r as u64).unwrap();
        let deg = psi.degree().unwrap() as i64;
        let m = m_seed % (deg + 1);
        prop_assert_eq!(c_trivial_case(p, q, r, m).unwrap(), psi.coeff(m));
        prop_assert_eq!(c_trivial_case(p, q, r, 0).unwrap(), psi.coeff(0));
        prop_assert_eq!(c_trivial_case(p, q, r, deg).unwrap(), psi.coeff(deg));
    }

    #[test]
    fn inverse_polynomials_are_anti_reciprocal(n in 2u64..=300) {
        let psi = inverse_cyclotomic(n).unwrap();
        let deg = psi.degree().unwrap() as i64;
        for m in 0..=deg {
            prop_assert_eq!(psi.coeff(m), -psi.coeff(deg - m));
        }
        // Anti-reciprocity forces a zero at x = 1; check it directly.
        prop_assert_eq!(psi.eval(1).unwrap(), 0);
    }
}
