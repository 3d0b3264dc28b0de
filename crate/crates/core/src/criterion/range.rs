use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use super::{residue_fast, residue_from_term_mod, trial_division, CriterionVerdict, Strategy, DEFAULT_EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::parallel::map_chunks;
use crate::sequence::Generator;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub exact_limit: u64,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exact_limit: DEFAULT_EXACT_LIMIT,
            workers: 1,
        }
    }
}

/// An `n` where the fast and exact residues differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueDisagreement {
    pub n: u64,
    pub fast: u64,
    pub exact: u64,
}

#[derive(Clone, Debug)]
pub struct RangeReport {
    pub lo: u64,
    pub hi: u64,
    pub strategy: Strategy,
    /// One verdict per `n`, ascending.
    pub verdicts: Vec<CriterionVerdict>,
    pub verdicts_checked: u64,
    /// Verdicts whose classification contradicts trial division.
    pub mismatches: Vec<CriterionVerdict>,
    /// Only populated under [`Strategy::Both`].
    pub residue_disagreements: Vec<ResidueDisagreement>,
    pub residue_histogram: BTreeMap<u64, u64>,
    /// Wall-clock time per evaluation route ("fast", "exact").
    pub elapsed: Vec<(&'static str, Duration)>,
}

impl RangeReport {
    /// No classification mismatch and no fast/exact disagreement.
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.residue_disagreements.is_empty()
    }

    pub fn primes_found(&self) -> u64 {
        self.verdicts.iter().filter(|v| v.oracle_prime).count() as u64
    }

    pub const CSV_HEADER: &'static str = "n,residue,classification,oracle_prime,agree";

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for v in &self.verdicts {
            writeln!(out, "{}", v.csv_row())?;
        }
        Ok(())
    }

    pub fn write_text<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "range {}:{} strategy {}", self.lo, self.hi, self.strategy)?;
        writeln!(
            out,
            "checked {} values, {} primes by trial division",
            self.verdicts_checked,
            self.primes_found()
        )?;
        writeln!(out, "{} mismatches", self.mismatches.len())?;
        for v in &self.mismatches {
            writeln!(out, "  mismatch: {}", v.csv_row())?;
        }
        if self.strategy == Strategy::Both {
            writeln!(out, "{} fast/exact disagreements", self.residue_disagreements.len())?;
            for d in &self.residue_disagreements {
                writeln!(out, "  n={} fast={} exact={}", d.n, d.fast, d.exact)?;
            }
        }
        writeln!(out, "residue histogram:")?;
        for (residue, count) in &self.residue_histogram {
            writeln!(out, "  {residue}: {count}")?;
        }
        for (route, d) in &self.elapsed {
            writeln!(out, "elapsed {route}: {:.3} ms", d.as_secs_f64() * 1e3)?;
        }
        Ok(())
    }
}

/// `E(n) mod n` for `n` in `[lo, hi]` from exact terms `A_(lo-1) ..= A_(hi-1)`.
pub(crate) fn exact_residues(lo: u64, hi: u64, exact_limit: u64) -> Result<Vec<u64>> {
    let generator = Generator::with_limit(exact_limit);
    generator
        .terms(lo - 1, hi - 1)?
        .map(|term| {
            let n = term.index + 1;
            Ok(residue_from_term_mod(term.value.mod_small(n)?, n))
        })
        .collect()
}

pub(crate) fn fast_verdicts(lo: u64, hi: u64) -> Result<Vec<CriterionVerdict>> {
    (lo..=hi)
        .map(|n| Ok(CriterionVerdict::new(n, residue_fast(n)?, trial_division(n)?)))
        .collect()
}

pub(crate) fn check_range(lo: u64, hi: u64, strategy: Strategy, exact_limit: u64) -> Result<()> {
    if lo < 2 {
        return Err(Error::domain(format!("range must start at 2 or above, got {lo}")));
    }
    if lo > hi {
        return Err(Error::domain(format!("empty range {lo}:{hi}")));
    }
    if hi >= 1 << 31 {
        return Err(Error::domain(format!("range end {hi} must be below 2^31")));
    }
    if strategy.needs_exact() && hi > exact_limit {
        return Err(Error::ResourceLimit {
            what: "exact criterion index",
            requested: hi,
            limit: exact_limit,
        });
    }
    Ok(())
}

/// Evaluates the criterion for every `n` in `[lo, hi]` and compares against
/// trial division. Mismatches are recorded in the report, not raised.
///
/// Results are independent of `opts.workers`.
pub fn verify_range(lo: u64, hi: u64, strategy: Strategy, opts: &VerifyOptions) -> Result<RangeReport> {
    check_range(lo, hi, strategy, opts.exact_limit)?;
    let workers = opts.workers.max(1);
    let mut elapsed = Vec::new();

    let exact = if strategy.needs_exact() {
        let start = Instant::now();
        let r = map_chunks(lo, hi, workers, |a, b| exact_residues(a, b, opts.exact_limit))?;
        elapsed.push(("exact", start.elapsed()));
        Some(r)
    } else {
        None
    };

    let mut residue_disagreements = Vec::new();
    let verdicts = match (strategy, exact) {
        (Strategy::Exact, Some(exact)) => {
            let start = Instant::now();
            let v = map_chunks(lo, hi, workers, |a, b| {
                (a..=b)
                    .map(|n| {
                        let residue = exact[(n - lo) as usize];
                        Ok(CriterionVerdict::new(n, residue, trial_division(n)?))
                    })
                    .collect()
            })?;
            elapsed.push(("oracle", start.elapsed()));
            v
        }
        (_, exact) => {
            let start = Instant::now();
            let v = map_chunks(lo, hi, workers, fast_verdicts)?;
            elapsed.insert(0, ("fast", start.elapsed()));
            if let Some(exact) = exact {
                residue_disagreements = v
                    .iter()
                    .zip(&exact)
                    .filter(|(v, &e)| v.residue != e)
                    .map(|(v, &e)| ResidueDisagreement { n: v.n, fast: v.residue, exact: e })
                    .collect();
            }
            v
        }
    };

    let mut residue_histogram = BTreeMap::new();
    for v in &verdicts {
        *residue_histogram.entry(v.residue).or_insert(0) += 1;
    }
    let mismatches = verdicts.iter().filter(|v| !v.agree).copied().collect();

    Ok(RangeReport {
        lo,
        hi,
        strategy,
        verdicts_checked: verdicts.len() as u64,
        verdicts,
        mismatches,
        residue_disagreements,
        residue_histogram,
        elapsed,
    })
}
