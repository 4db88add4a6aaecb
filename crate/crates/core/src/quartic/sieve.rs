use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::QuarticForm;
use crate::exact::ExactInt;

/// Largest modulus accepted by [`build_sieve`]; the table holds `modulus^2` flags.
pub const MAX_SIEVE_MODULUS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error("sieve modulus {0} is outside [2, {MAX_SIEVE_MODULUS}]")]
    Modulus(String),
}

/// Residue pairs `(x mod m, y mod m)` at which the form can take a square value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSpec {
    modulus: u64,
    table: Vec<bool>,
}

impl SieveSpec {
    pub fn modulus(&self) -> ExactInt {
        self.modulus.into()
    }

    pub(crate) fn modulus_u64(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_admissible(&self, x_res: u64, y_res: u64) -> bool {
        self.table[(x_res * self.modulus + y_res) as usize]
    }

    /// Admissibility of an arbitrary pair.
    pub fn admits(&self, x: &ExactInt, y: &ExactInt) -> bool {
        let m = ExactInt::from(self.modulus);
        let r = |v: &ExactInt| {
            let v = ((v % &m) + &m) % &m;
            v.to_u64().expect("residue fits in u64")
        };
        self.is_admissible(r(x), r(y))
    }

    /// Row of the table for a fixed `x` residue, indexed by `y` residue.
    #[inline]
    pub(crate) fn row(&self, x_res: u64) -> &[bool] {
        let m = self.modulus as usize;
        &self.table[x_res as usize * m..(x_res as usize + 1) * m]
    }

    pub fn admissible_pairs(&self) -> BTreeSet<(u64, u64)> {
        let m = self.modulus;
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .filter(|&(x, y)| self.is_admissible(x, y))
            .collect()
    }

    pub fn admissible_count(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

fn residue(v: &ExactInt, m: u64) -> u128 {
    let mm = ExactInt::from(m);
    (((v % &mm) + &mm) % &mm)
        .to_u128()
        .expect("residue fits in u128")
}

/// Tabulates the form modulo `modulus` against the squares modulo `modulus` (0 included).
pub fn build_sieve(f: &QuarticForm, modulus: &ExactInt) -> Result<SieveSpec, SieveError> {
    let m = modulus
        .to_u64()
        .filter(|m| (2..=MAX_SIEVE_MODULUS).contains(m))
        .ok_or_else(|| SieveError::Modulus(modulus.to_string()))?;
    let mw = m as u128;
    let mut squares = vec![false; m as usize];
    for r in 0..mw {
        squares[(r * r % mw) as usize] = true;
    }
    let (a, b, c) = (
        residue(f.coef_a(), m),
        residue(f.coef_b(), m),
        residue(f.coef_c(), m),
    );
    let mut table = vec![false; (m * m) as usize];
    for x in 0..mw {
        let x2 = x * x % mw;
        let ax4 = a * (x2 * x2 % mw) % mw;
        for y in 0..mw {
            let y2 = y * y % mw;
            let v = (ax4 + b * (x2 * y2 % mw) % mw + c * (y2 * y2 % mw) % mw) % mw;
            table[(x * mw + y) as usize] = squares[v as usize];
        }
    }
    Ok(SieveSpec { modulus: m, table })
}
