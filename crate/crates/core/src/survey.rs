//! Enumeration of fourth-power-free `b` by norm and the Selmer-size survey.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gaussian::{factor_u64, sqrt_minus_one_mod, GaussianInt, PrimaryFactorization};
use crate::selmer::compute_selmer_group;

/// Which representatives of `K*/(K*)⁴` are surveyed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Population {
    /// Every class: all four units and all powers of `1+i` below 4.
    #[default]
    All,
    /// One curve per odd part (`s = t = 0`).
    OddPartOnly,
}

impl std::str::FromStr for Population {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Population::All),
            "odd-part-only" => Ok(Population::OddPartOnly),
            _ => Err(format!("unknown population {s:?} (expected all or odd-part-only)")),
        }
    }
}

impl std::fmt::Display for Population {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Population::All => "all",
            Population::OddPartOnly => "odd-part-only",
        })
    }
}

/// Primary primes of norm at most `max_norm`, in canonical order.
pub fn primary_primes_up_to(max_norm: u64) -> Vec<GaussianInt> {
    let mut out = Vec::new();
    for l in 3..=max_norm {
        if factor_u64(l) != [(l, 1)] {
            continue;
        }
        let li = l as i128;
        if l % 4 == 1 {
            let r = sqrt_minus_one_mod(l as u128) as i128;
            let p = crate::gaussian::gcd(GaussianInt::from_int(li), GaussianInt::new(r, 1));
            let (p, _) = p.primary_associate().expect("odd prime");
            out.push(p);
            out.push(p.conj());
        } else if l.checked_mul(l).is_some_and(|sq| sq <= max_norm) {
            out.push(GaussianInt::from_int(-li));
        }
    }
    out.sort_by_key(|p| p.canonical_key());
    out
}

type SortKey = (u128, u8, u32, Vec<((u128, i128, i128), u32)>);

fn sort_key(f: &PrimaryFactorization) -> SortKey {
    let primes = f.odd_part.iter().map(|&(p, e)| (p.canonical_key(), e)).collect();
    (f.norm(), f.s, f.t, primes)
}

/// Every fourth-power-free odd part of norm at most `max_norm`, as
/// `(norm, primes)`.
fn odd_parts(primes: &[GaussianInt], max_norm: u128) -> Vec<(u128, Vec<(GaussianInt, u32)>)> {
    fn rec(
        primes: &[GaussianInt],
        start: usize,
        norm: u128,
        max_norm: u128,
        current: &mut Vec<(GaussianInt, u32)>,
        out: &mut Vec<(u128, Vec<(GaussianInt, u32)>)>,
    ) {
        out.push((norm, current.clone()));
        for k in start..primes.len() {
            let pn = primes[k].norm();
            if norm * pn > max_norm {
                // primes are sorted by norm
                break;
            }
            let mut n = norm;
            for e in 1..=3 {
                n *= pn;
                if n > max_norm {
                    break;
                }
                current.push((primes[k], e));
                rec(primes, k + 1, n, max_norm, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(primes, 0, 1, max_norm, &mut Vec::new(), &mut out);
    out
}

fn enumerate_up_to(max_norm: u64, population: Population) -> Vec<PrimaryFactorization> {
    let primes = primary_primes_up_to(max_norm);
    let (units, t_max) = match population {
        Population::All => (0..4u8, 3u32),
        Population::OddPartOnly => (0..1u8, 0u32),
    };
    let mut out = Vec::new();
    for (norm, part) in odd_parts(&primes, max_norm as u128) {
        for t in 0..=t_max {
            if norm << t > max_norm as u128 {
                break;
            }
            for s in units.clone() {
                out.push(PrimaryFactorization { s, t, odd_part: part.clone() });
            }
        }
    }
    out.sort_by_cached_key(sort_key);
    out
}

/// Canonical fourth-power-free representatives ordered by
/// `(norm, s, t, prime list)`. Stops at whichever bound is hit first.
pub fn enumerate_b(max_norm: Option<u64>, max_count: Option<usize>, population: Population) -> Vec<PrimaryFactorization> {
    match (max_norm, max_count) {
        (Some(n), count) => {
            let mut all = enumerate_up_to(n, population);
            if let Some(c) = count {
                all.truncate(c);
            }
            all
        }
        (None, Some(count)) => {
            let mut bound = 64u64;
            loop {
                let mut all = enumerate_up_to(bound, population);
                if all.len() >= count {
                    all.truncate(count);
                    return all;
                }
                bound *= 2;
            }
        }
        (None, None) => Vec::new(),
    }
}

/// Selmer sizes reported in their own columns.
pub const SIZE_COLUMNS: [usize; 5] = [1, 2, 4, 8, 16];

/// Cumulative distribution of Selmer sizes over the first `bin_end` curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub bin_end: usize,
    /// Norm of the last curve in the bin.
    pub max_norm: u128,
    pub counts: BTreeMap<usize, usize>,
}

impl SurveyRow {
    pub fn fraction(&self, size: usize) -> f64 {
        *self.counts.get(&size).unwrap_or(&0) as f64 / self.bin_end as f64
    }

    pub fn other_fraction(&self) -> f64 {
        let other: usize = self
            .counts
            .iter()
            .filter(|(s, _)| !SIZE_COLUMNS.contains(s))
            .map(|(_, c)| c)
            .sum();
        other as f64 / self.bin_end as f64
    }
}

/// Selmer sizes for every curve, computed in parallel and returned in input
/// order.
pub fn selmer_sizes(curves: &[PrimaryFactorization]) -> Result<Vec<usize>> {
    curves
        .par_iter()
        .map(|b| compute_selmer_group(b).map(|g| g.size()))
        .collect()
}

/// Cumulative rows every `bin_size` curves, plus a final row for a partial
/// last bin.
pub fn survey_rows(curves: &[PrimaryFactorization], sizes: &[usize], bin_size: usize) -> Vec<SurveyRow> {
    assert!(bin_size >= 1, "bin size must be positive");
    let mut rows = Vec::new();
    let mut counts = BTreeMap::new();
    for (k, (b, &size)) in curves.iter().zip(sizes).enumerate() {
        *counts.entry(size).or_insert(0) += 1;
        if (k + 1) % bin_size == 0 || k + 1 == curves.len() {
            rows.push(SurveyRow { bin_end: k + 1, max_norm: b.norm(), counts: counts.clone() });
        }
    }
    rows
}

pub fn survey(curves: &[PrimaryFactorization], bin_size: usize) -> Result<Vec<SurveyRow>> {
    let sizes = selmer_sizes(curves)?;
    Ok(survey_rows(curves, &sizes, bin_size))
}

pub const CSV_HEADER: &str = "bin_end,n,pct_1,pct_2,pct_4,pct_8,pct_16,pct_other";

/// CSV with fractions to five decimals; `n` is the norm of the last curve in
/// each bin.
pub fn to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        return out;
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        write!(out, "{},{}", row.bin_end, row.max_norm).unwrap();
        for size in SIZE_COLUMNS {
            write!(out, ",{:.5}", row.fraction(size)).unwrap();
        }
        writeln!(out, ",{:.5}", row.other_fraction()).unwrap();
    }
    out
}
