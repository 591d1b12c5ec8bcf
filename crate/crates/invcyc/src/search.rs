//! Enumeration over the family and the experiments built on it: all valid
//! r for a pair (p, q), the flat set S(p, q), the constructive q = tp + 1
//! progressions, ratio statistics, and CSV/JSON export of the records.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heightflat::{height_formula, is_flat};
use crate::numtheory::{decompose_r, is_prime, primes_upto, FamilyTriple};
use crate::parallel::maybe_par_map;
use crate::polyoracle::{height_of, inverse_cyclotomic};

// ---- records ----

/// One enumerated triple with everything the exports carry: the
/// decomposition, both inverses, formula height (plus oracle height when
/// requested), the flatness verdict with its four conditions, and the
/// ratio r / phi(pq) as an unreduced pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub alpha: i64,
    pub beta: i64,
    pub p_prime: i64,
    pub q_prime: i64,
    #[serde(rename = "C_formula")]
    pub c_formula: u64,
    #[serde(rename = "C_oracle")]
    pub c_oracle: Option<u64>,
    pub flat: bool,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub cond_d: bool,
    pub ratio_num: i64,
    pub ratio_den: i64,
}

/// CSV header, matching the JSON field names column for column.
pub const CSV_HEADER: &str = "p,q,r,alpha,beta,p_prime,q_prime,C_formula,C_oracle,\
                              flat,cond_a,cond_b,cond_c,cond_d,ratio_num,ratio_den";

impl SearchRecord {
    /// Assemble the record for a validated triple; `c_oracle` is whatever
    /// height the caller read off an independently built polynomial.
    pub fn from_triple(t: &FamilyTriple, c_oracle: Option<u64>) -> Self {
        let verdict = is_flat(t);
        Self {
            p: t.p,
            q: t.q,
            r: t.r,
            alpha: t.alpha,
            beta: t.beta,
            p_prime: t.p_prime,
            q_prime: t.q_prime,
            c_formula: height_formula(t),
            c_oracle,
            flat: verdict.flat,
            cond_a: verdict.cond_a,
            cond_b: verdict.cond_b,
            cond_c: verdict.cond_c,
            cond_d: verdict.cond_d,
            ratio_num: t.r,
            ratio_den: t.phi_pq,
        }
    }

    /// One CSV data row: booleans as 0/1, absent oracle as an empty field.
    pub fn csv_row(&self) -> String {
        let oracle = self.c_oracle.map(|c| c.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.q,
            self.r,
            self.alpha,
            self.beta,
            self.p_prime,
            self.q_prime,
            self.c_formula,
            oracle,
            u8::from(self.flat),
            u8::from(self.cond_a),
            u8::from(self.cond_b),
            u8::from(self.cond_c),
            u8::from(self.cond_d),
            self.ratio_num,
            self.ratio_den,
        )
    }
}

// ---- enumeration over one (p, q) pair ----

fn validate_pair(p: i64, q: i64) -> Result<()> {
    for &value in &[p, q] {
        if value < 0 || !is_prime(value as u64) {
            return Err(Error::NotPrime { value });
        }
    }
    if !(3 <= p && p < q) {
        return Err(Error::BadPair { p, q });
    }
    Ok(())
}

/// All primes r in (q, phi(pq)] with a positive decomposition
/// r = alpha*p + beta*q, ascending by r, as (r, alpha, beta).
pub fn family_members(p: i64, q: i64) -> Result<Vec<(i64, i64, i64)>> {
    validate_pair(p, q)?;
    let phi_pq = (p - 1)
        .checked_mul(q - 1)
        .ok_or(Error::Overflow { context: "phi(pq)" })?;
    let mut members = Vec::new();
    for r in primes_upto(phi_pq) {
        if r <= q {
            continue;
        }
        if let Some((alpha, beta)) = decompose_r(p, q, r)? {
            members.push((r, alpha, beta));
        }
    }
    Ok(members)
}

/// Build records for already-validated triples, optionally reading the
/// oracle height off an independently constructed polynomial per triple.
fn records_for(triples: &[FamilyTriple], with_oracle: bool) -> Result<Vec<SearchRecord>> {
    let results = maybe_par_map(triples, |t| -> Result<SearchRecord> {
        let c_oracle = if with_oracle {
            Some(height_of(&inverse_cyclotomic(t.n() as u64)?))
        } else {
            None
        };
        Ok(SearchRecord::from_triple(t, c_oracle))
    });
    results.into_iter().collect()
}

/// Records for every family member of (p, q), ascending by r. With
/// `with_oracle` each record also carries the height of the full oracle
/// polynomial, built independently of the formulas.
pub fn search_records(p: i64, q: i64, with_oracle: bool) -> Result<Vec<SearchRecord>> {
    let triples = family_members(p, q)?
        .into_iter()
        .map(|(r, _, _)| FamilyTriple::new(p, q, r))
        .collect::<Result<Vec<_>>>()?;
    records_for(&triples, with_oracle)
}

/// The flat set S(p, q): family members whose inverse polynomial is flat,
/// ascending by r.
pub fn flat_set(p: i64, q: i64) -> Result<Vec<SearchRecord>> {
    Ok(search_records(p, q, false)?
        .into_iter()
        .filter(|record| record.flat)
        .collect())
}

// ---- the q = tp + 1 construction ----

/// Descriptor of the constructive family with q = tp + 1: primes in the
/// progression 2tp + 1, 2tp + 1 + p, ... up to phi(pq) all give flat
/// triples (via condition (d), with p' = q - t and q' = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TpFamily {
    pub p: i64,
    pub t: i64,
    pub q: i64,
    pub progression_start: i64,
    pub step: i64,
    pub limit: i64,
}

/// Build the q = tp + 1 family descriptor for an odd prime p and t >= 1;
/// errs with `NotPrime` when tp + 1 is composite.
pub fn tp_family(p: i64, t: i64) -> Result<TpFamily> {
    if p < 3 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            lo: 3,
            hi: i64::MAX,
        });
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime { value: p });
    }
    if t < 1 {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let overflow = || Error::Overflow { context: "t*p + 1" };
    let q = t
        .checked_mul(p)
        .and_then(|tp| tp.checked_add(1))
        .ok_or_else(overflow)?;
    if !is_prime(q as u64) {
        return Err(Error::NotPrime { value: q });
    }
    let limit = (p - 1).checked_mul(q - 1).ok_or_else(overflow)?;
    Ok(TpFamily {
        p,
        t,
        q,
        progression_start: 2 * (q - 1) + 1,
        step: p,
        limit,
    })
}

impl TpFamily {
    /// Primes in the progression within the limit, ascending. All are
    /// congruent to 1 modulo p.
    pub fn member_primes(&self) -> Vec<i64> {
        (self.progression_start..=self.limit)
            .step_by(self.step as usize)
            .filter(|&r| is_prime(r as u64))
            .collect()
    }

    /// Full records for the member triples (p, q, r), ascending by r.
    pub fn member_records(&self, with_oracle: bool) -> Result<Vec<SearchRecord>> {
        let triples = self
            .member_primes()
            .into_iter()
            .map(|r| FamilyTriple::new(self.p, self.q, r))
            .collect::<Result<Vec<_>>>()?;
        records_for(&triples, with_oracle)
    }
}

// ---- ratio statistics ----

/// Outcome of [`min_ratio_experiment`]: the flat record with the smallest
/// ratio r / phi(pq), and whether it beat the 5/p target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinRatioResult {
    pub best: SearchRecord,
    pub met_target: bool,
}

/// Scan t <= t_max with q = tp + 1 prime and find the flat triple with
/// the smallest ratio r / phi(pq); the whole flat set of each q is
/// considered, not just the progression. Requires p > 5 prime. `None`
/// when no flat triple exists in the scanned range.
pub fn min_ratio_experiment(p: i64, t_max: i64) -> Result<Option<MinRatioResult>> {
    if p <= 5 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            lo: 7,
            hi: i64::MAX,
        });
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime { value: p });
    }
    let mut best: Option<SearchRecord> = None;
    for t in 1..=t_max {
        let family = match tp_family(p, t) {
            Ok(family) => family,
            Err(Error::NotPrime { .. }) => continue,
            Err(other) => return Err(other),
        };
        for record in flat_set(p, family.q)? {
            let better = match &best {
                None => true,
                Some(incumbent) => {
                    (record.ratio_num as i128) * (incumbent.ratio_den as i128)
                        < (incumbent.ratio_num as i128) * (record.ratio_den as i128)
                }
            };
            if better {
                best = Some(record);
            }
        }
    }
    Ok(best.map(|best| MinRatioResult {
        best,
        met_target: (best.ratio_num as i128) * (p as i128) < 5 * (best.ratio_den as i128),
    }))
}

/// One row of the flat-count table: observed #S(p, tp+1) next to the
/// two-term Dirichlet estimate
/// tp/log(t(p^2 - p)) - 2tp/((p - 1) log(2pt)).
/// The estimate is for eyeballing growth, never asserted against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatCountRow {
    pub t: i64,
    pub q: i64,
    pub flat_count: usize,
    pub progression_estimate: f64,
}

/// Observed flat-set sizes over q = tp + 1 for t <= t_max (skipping t
/// with tp + 1 composite), each next to the Dirichlet estimate.
pub fn flat_count_table(p: i64, t_max: i64) -> Result<Vec<FlatCountRow>> {
    if p < 3 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            lo: 3,
            hi: i64::MAX,
        });
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime { value: p });
    }
    let mut rows = Vec::new();
    for t in 1..=t_max {
        let family = match tp_family(p, t) {
            Ok(family) => family,
            // p was validated above, so NotPrime here can only mean tp + 1.
            Err(Error::NotPrime { .. }) => continue,
            Err(other) => return Err(other),
        };
        let flat_count = flat_set(p, family.q)?.len();
        let (tf, pf) = (t as f64, p as f64);
        let progression_estimate = pf * tf / (tf * (pf * pf - pf)).ln()
            - 2.0 * pf * tf / ((pf - 1.0) * (2.0 * pf * tf).ln());
        rows.push(FlatCountRow {
            t,
            q: family.q,
            flat_count,
            progression_estimate,
        });
    }
    Ok(rows)
}

// ---- sweep enumeration ----

/// Every family triple with p*q*r <= max_pqr, ascending by (p, q, r).
pub fn enumerate_family_triples(max_pqr: i64) -> Vec<FamilyTriple> {
    let mut out = Vec::new();
    let primes = primes_upto(max_pqr / 15);
    for (i, &p) in primes.iter().enumerate() {
        if p < 3 {
            continue;
        }
        if p * p * p > max_pqr {
            break;
        }
        for &q in &primes[i + 1..] {
            if p * q * q > max_pqr {
                break;
            }
            let r_cap = ((p - 1) * (q - 1)).min(max_pqr / (p * q));
            for &r in &primes[i + 1..] {
                if r <= q {
                    continue;
                }
                if r > r_cap {
                    break;
                }
                if let Ok(Some(_)) = decompose_r(p, q, r) {
                    out.push(FamilyTriple::new(p, q, r).expect("member triple validates"));
                }
            }
        }
    }
    out
}

/// Every triple of primes 3 <= p < q < r with r > phi(pq) (the range the
/// factorization engine covers) and p*q*r <= max_pqr, ascending.
pub fn enumerate_trivial_triples(max_pqr: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let primes = primes_upto(max_pqr / 15);
    for (i, &p) in primes.iter().enumerate() {
        if p < 3 {
            continue;
        }
        if p * p * p > max_pqr {
            break;
        }
        for &q in &primes[i + 1..] {
            if p * q * q > max_pqr {
                break;
            }
            let phi_pq = (p - 1) * (q - 1);
            let r_cap = max_pqr / (p * q);
            for &r in &primes[i + 1..] {
                if r <= q.max(phi_pq) {
                    continue;
                }
                if r > r_cap {
                    break;
                }
                out.push((p, q, r));
            }
        }
    }
    out
}

// ---- export ----

/// Output format for [`export`] and [`export_to_writer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// Write records to a writer: CSV with the fixed header, or a JSON array
/// of objects with the same field names. Row order is the input order.
pub fn export_to_writer<W: io::Write>(
    records: &[SearchRecord],
    format: ExportFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        ExportFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for record in records {
                writeln!(out, "{}", record.csv_row())?;
            }
        }
        ExportFormat::Json => {
            let text = serde_json::to_string_pretty(records).map_err(io::Error::from)?;
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

/// Write records to a file, carrying the path on any I/O failure.
pub fn export(records: &[SearchRecord], format: ExportFormat, path: &Path) -> Result<()> {
    let wrap = |source: io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut writer = BufWriter::new(file);
    export_to_writer(records, format, &mut writer).map_err(wrap)?;
    writer.flush().map_err(wrap)
}
