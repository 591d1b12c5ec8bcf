//! Integer primitives: primality, modular inverses, prime sieving, and the
//! two decompositions every coefficient formula consumes — residues modulo
//! pq split as u*p + v*q, and r split as alpha*p + beta*q.

use crate::error::{Error, Result};

// ---- elementary helpers ----

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ceiling of a/b for b > 0, correct for negative numerators
/// (mathematical ceiling, so ceil_div(-1, 2) = 0).
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0, "ceil_div requires a positive divisor");
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

// ---- primality ----

const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test, exact for every 64-bit input.
///
/// Strong-pseudoprime test against the twelve smallest prime bases, which
/// is known to be free of composite survivors below 2^64. No probabilistic
/// error budget: Carmichael numbers such as 561 = 3*11*17 sit exactly in
/// this crate's input space and must never slip through.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes <= limit, ascending (empty for limit < 2).
pub fn primes_upto(limit: i64) -> Vec<i64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as i64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

// ---- modular inverse ----

/// Inverse of a modulo m, in [1, m-1], via the extended Euclidean
/// algorithm (i128 intermediates, so any i64 modulus is safe).
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "modulus",
            value: m,
            lo: 2,
            hi: i64::MAX,
        });
    }
    let (mut old_r, mut r) = (a.rem_euclid(m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(old_s.rem_euclid(m as i128) as i64)
}

// ---- decomposition of residues modulo pq ----

/// The unique splitting of a residue b in [0, pq) as u*p + v*q, possibly
/// reduced by one whole pq ("wrapped"), with 0 <= u < q and 0 <= v < p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub u: i64,
    pub v: i64,
    pub wrapped: bool,
}

impl Decomposition {
    /// The value this decomposition reconstructs: u*p + v*q - (wrapped ? pq : 0).
    pub fn value(&self, p: i64, q: i64) -> i64 {
        self.u * p + self.v * q - if self.wrapped { p * q } else { 0 }
    }
}

/// Split b in [0, pq) as u*p + v*q (wrapped = false) or u*p + v*q - pq
/// (wrapped = true); exactly one of the two forms holds.
pub fn decompose_mod_pq(b: i64, p: i64, q: i64) -> Result<Decomposition> {
    let pq = p.checked_mul(q).ok_or(Error::Overflow { context: "p*q" })?;
    if b < 0 || b >= pq {
        return Err(Error::OutOfRange {
            what: "b",
            value: b,
            lo: 0,
            hi: pq - 1,
        });
    }
    let p_inv = mod_inverse(p, q)?;
    let q_inv = mod_inverse(q, p)?;
    let u = ((b % q) as i128 * p_inv as i128).rem_euclid(q as i128) as i64;
    let v = ((b % p) as i128 * q_inv as i128).rem_euclid(p as i128) as i64;
    let wrapped = (u as i128 * p as i128 + v as i128 * q as i128) >= pq as i128;
    Ok(Decomposition { u, v, wrapped })
}

// ---- decomposition of r as alpha*p + beta*q ----

/// The unique (alpha, beta) with r = alpha*p + beta*q, alpha >= 1 and
/// 1 <= beta <= p-1, or `None` if r admits no positive representation.
///
/// beta is pinned as the least positive residue of r * q^-1 modulo p; for
/// r < pq that choice makes the representation unique.
pub fn decompose_r(p: i64, q: i64, r: i64) -> Result<Option<(i64, i64)>> {
    if !(3 <= p && p < q && q < r) {
        return Err(Error::BadOrdering { p, q, r });
    }
    let phi_pq = (p - 1)
        .checked_mul(q - 1)
        .ok_or(Error::Overflow { context: "phi(pq)" })?;
    if r > phi_pq {
        return Err(Error::ROutsideFamily { r, phi_pq });
    }
    let q_inv = mod_inverse(q, p)?;
    let beta = ((r % p) as i128 * q_inv as i128).rem_euclid(p as i128) as i64;
    if beta == 0 {
        // Any valid beta would be a positive multiple of p, forcing r >= pq.
        return Ok(None);
    }
    let remainder = r - beta * q;
    if remainder <= 0 {
        return Ok(None);
    }
    debug_assert_eq!(remainder % p, 0, "r - beta*q must be a multiple of p");
    Ok(Some((remainder / p, beta)))
}

// ---- the validated family triple ----

/// A validated triple of odd primes p < q < r with r = alpha*p + beta*q
/// inside the totient bound, plus every derived constant the formulas use.
///
/// Invariants (enforced by [`FamilyTriple::new`]):
/// - p, q, r are odd primes with 3 <= p < q < r;
/// - alpha >= 1, 1 <= beta <= p-1, alpha*p + beta*q = r <= phi_pq;
/// - p * p_prime = 1 (mod q), q * q_prime = 1 (mod p);
/// - tau = deg_psi - q*r and deg_psi = pq + qr + rp - p - q - r + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyTriple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub alpha: i64,
    pub beta: i64,
    /// Inverse of p modulo q, in [1, q-1].
    pub p_prime: i64,
    /// Inverse of q modulo p, in [1, p-1].
    pub q_prime: i64,
    /// (p-1)(q-1).
    pub phi_pq: i64,
    /// Degree of the auxiliary factor: (p-1)(q+r-1).
    pub tau: i64,
    /// Degree of Psi_pqr: pq + qr + rp - p - q - r + 1.
    pub deg_psi: i64,
}

impl FamilyTriple {
    /// Validate (p, q, r) and fill every derived field.
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        for &value in &[p, q, r] {
            if value < 0 || !is_prime(value as u64) {
                return Err(Error::NotPrime { value });
            }
        }
        if !(3 <= p && p < q && q < r) {
            return Err(Error::BadOrdering { p, q, r });
        }
        let (alpha, beta) = decompose_r(p, q, r)?.ok_or(Error::NotRepresentable { p, q, r })?;
        let p_prime = mod_inverse(p, q)?;
        let q_prime = mod_inverse(q, p)?;
        let phi_pq = (p - 1) * (q - 1);
        let overflow = || Error::Overflow {
            context: "triple constants",
        };
        let pq = p.checked_mul(q).ok_or(overflow())?;
        let qr = q.checked_mul(r).ok_or(overflow())?;
        let rp = r.checked_mul(p).ok_or(overflow())?;
        pq.checked_mul(r).ok_or(overflow())?;
        let deg_psi = pq
            .checked_add(qr)
            .and_then(|s| s.checked_add(rp))
            .and_then(|s| s.checked_sub(p + q + r - 1))
            .ok_or(overflow())?;
        let tau = (p - 1).checked_mul(q + r - 1).ok_or(overflow())?;
        debug_assert_eq!(tau, deg_psi - qr);
        debug_assert_eq!((p * p_prime) % q, 1);
        debug_assert_eq!((q * q_prime) % p, 1);
        Ok(Self {
            p,
            q,
            r,
            alpha,
            beta,
            p_prime,
            q_prime,
            phi_pq,
            tau,
            deg_psi,
        })
    }

    /// The modulus n = p*q*r (fits in i64; checked at construction).
    pub fn n(&self) -> i64 {
        self.p * self.q * self.r
    }
}

/// Validate (p, q, r) and build the triple; see [`FamilyTriple::new`].
pub fn make_family_triple(p: i64, q: i64, r: i64) -> Result<FamilyTriple> {
    FamilyTriple::new(p, q, r)
}
