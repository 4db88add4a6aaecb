use std::ops::RangeInclusive;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::certificate::{SearchCertificate, TOOL_VERSION};
use super::sieve::{build_sieve, SieveError, SieveSpec};
use super::{eval_form, QuarticForm, Solution};
use crate::exact::{coprime_pair_count, exact_sqrt_u128, gcd_u64, isqrt_exact, ExactInt};
use crate::exec::{map_reduce_rows, Execution};

/// Largest box side the search accepts.
pub const MAX_BOUND: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bound {0} is outside [1, {MAX_BOUND}]")]
    Bound(String),
    #[error(transparent)]
    Sieve(#[from] SieveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub coprime_only: bool,
    pub exclude_trivial: bool,
    pub sieve_moduli: Vec<ExactInt>,
    /// Rows of the box handed to one worker at a time.
    pub chunk_size: u64,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            coprime_only: true,
            exclude_trivial: true,
            sieve_moduli: vec![3.into(), 4.into()],
            chunk_size: 64,
            execution: Execution::default(),
        }
    }
}

impl SearchOptions {
    pub fn unsieved(mut self) -> Self {
        self.sieve_moduli.clear();
        self
    }
}

/// Number of candidate pairs in the box `[1, bound]^2` under the coprimality setting.
pub fn expected_candidate_count(bound: u64, coprime_only: bool) -> u64 {
    if coprime_only {
        coprime_pair_count(bound)
    } else {
        bound * bound
    }
}

#[derive(Debug, Clone, Default)]
struct Partial {
    scanned: u64,
    sieved_out: u64,
    solutions: Vec<Solution>,
}

impl Partial {
    fn merge(mut self, mut other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.sieved_out += other.sieved_out;
        self.solutions.append(&mut other.solutions);
        self
    }
}

/// Outcome of testing one form value.
enum Value {
    Negative,
    Zero,
    Square(ExactInt),
    NonSquare,
}

struct Kernel<'a> {
    form: &'a QuarticForm,
    small: Option<[i128; 3]>,
    sieves: &'a [SieveSpec],
    bound: u64,
    opts: &'a SearchOptions,
}

impl Kernel<'_> {
    #[inline]
    fn classify_small(coef: [i128; 3], x: u64, y: u64) -> Option<Value> {
        let x2 = (x as i128) * (x as i128);
        let y2 = (y as i128) * (y as i128);
        let v = coef[0]
            .checked_mul(x2.checked_mul(x2)?)?
            .checked_add(coef[1].checked_mul(x2.checked_mul(y2)?)?)?
            .checked_add(coef[2].checked_mul(y2.checked_mul(y2)?)?)?;
        Some(match v {
            v if v < 0 => Value::Negative,
            0 => Value::Zero,
            v => match exact_sqrt_u128(v as u128) {
                Some(r) => Value::Square(r.into()),
                None => Value::NonSquare,
            },
        })
    }

    fn classify_big(&self, x: u64, y: u64) -> Value {
        let v = eval_form(self.form, &x.into(), &y.into());
        if v < ExactInt::zero() {
            Value::Negative
        } else if v.is_zero() {
            Value::Zero
        } else {
            match isqrt_exact(&v).expect("nonnegative") {
                Some(r) => Value::Square(r),
                None => Value::NonSquare,
            }
        }
    }

    fn rows(&self, rows: RangeInclusive<u64>) -> Partial {
        let mut out = Partial::default();
        let mut sieve_rows: Vec<(&[bool], u64)> = Vec::with_capacity(self.sieves.len());
        for x in rows {
            sieve_rows.clear();
            sieve_rows.extend(
                self.sieves
                    .iter()
                    .map(|s| (s.row(x % s.modulus_u64()), s.modulus_u64())),
            );
            for y in 1..=self.bound {
                if self.opts.coprime_only && gcd_u64(x, y) != 1 {
                    continue;
                }
                if !sieve_rows.iter().all(|(row, m)| row[(y % m) as usize]) {
                    out.sieved_out += 1;
                    continue;
                }
                let value = self
                    .small
                    .and_then(|c| Self::classify_small(c, x, y))
                    .unwrap_or_else(|| self.classify_big(x, y));
                let z = match value {
                    Value::Negative => {
                        out.sieved_out += 1;
                        continue;
                    }
                    Value::NonSquare => {
                        out.scanned += 1;
                        continue;
                    }
                    Value::Zero => {
                        out.scanned += 1;
                        if self.opts.exclude_trivial {
                            continue;
                        }
                        ExactInt::zero()
                    }
                    Value::Square(r) => {
                        out.scanned += 1;
                        r
                    }
                };
                out.solutions.push(Solution::new(x.into(), y.into(), z));
            }
        }
        out
    }
}

/// Exhaustive search of the box `[1, bound]^2` for `z^2 = form(x, y)`.
///
/// Pairs rejected by a sieve or with a negative form value count as sieved out;
/// every other candidate is tested exactly and counts as scanned.
pub fn search(
    form: &QuarticForm,
    bound: &ExactInt,
    opts: &SearchOptions,
) -> Result<SearchCertificate, SearchError> {
    let started = Instant::now();
    let b = bound
        .to_u64()
        .filter(|b| (1..=MAX_BOUND).contains(b))
        .ok_or_else(|| SearchError::Bound(bound.to_string()))?;

    let mut moduli = opts.sieve_moduli.clone();
    moduli.sort();
    moduli.dedup();
    let sieves = moduli
        .iter()
        .map(|m| build_sieve(form, m))
        .collect::<Result<Vec<_>, _>>()?;

    let kernel = Kernel {
        form,
        small: form.small_coefficients(),
        sieves: &sieves,
        bound: b,
        opts,
    };
    let mut total = map_reduce_rows(
        opts.execution,
        1..=b,
        opts.chunk_size,
        |rows| kernel.rows(rows),
        Partial::merge,
        Partial::default,
    );
    total.solutions.sort();

    Ok(SearchCertificate {
        form: form.clone(),
        bound: bound.clone(),
        coprime_only: opts.coprime_only,
        exclude_trivial: opts.exclude_trivial,
        sieve_moduli: moduli,
        solutions_found: total.solutions,
        pairs_scanned: total.scanned,
        pairs_sieved_out: total.sieved_out,
        elapsed_ms: started.elapsed().as_millis() as u64,
        tool_version: TOOL_VERSION.to_string(),
    })
}
