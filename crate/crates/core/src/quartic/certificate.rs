use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::search::{expected_candidate_count, MAX_BOUND};
use super::sieve::build_sieve;
use super::{QuarticForm, Solution};
use crate::exact::ExactInt;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Record of one completed box search.
///
/// Serialized as a single JSON object whose keys follow the field order below;
/// every integer is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchCertificate {
    pub form: QuarticForm,
    #[serde(with = "crate::decimal")]
    pub bound: ExactInt,
    pub coprime_only: bool,
    pub exclude_trivial: bool,
    #[serde(with = "crate::decimal::vec")]
    pub sieve_moduli: Vec<ExactInt>,
    pub solutions_found: Vec<Solution>,
    #[serde(with = "crate::decimal")]
    pub pairs_scanned: u64,
    #[serde(with = "crate::decimal")]
    pub pairs_sieved_out: u64,
    #[serde(with = "crate::decimal")]
    pub elapsed_ms: u64,
    pub tool_version: String,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate at `{path}`: {message}")]
    Format { path: String, message: String },
}

impl SearchCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| CertificateError::Format {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    /// Solutions with `xyz != 0`.
    pub fn nontrivial_solutions(&self) -> impl Iterator<Item = &Solution> {
        self.solutions_found.iter().filter(|s| !s.trivial)
    }

    /// The same certificate with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        SearchCertificate {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Every internal inconsistency found in `cert`; empty means it verifies.
pub fn certificate_issues(cert: &SearchCertificate) -> Vec<String> {
    let mut issues = Vec::new();

    let bound = cert.bound.to_u64().filter(|b| (1..=MAX_BOUND).contains(b));
    if bound.is_none() {
        issues.push(format!("bound: {} is outside [1, {MAX_BOUND}]", cert.bound));
    }

    let mut sieves = Vec::new();
    for (i, m) in cert.sieve_moduli.iter().enumerate() {
        match build_sieve(&cert.form, m) {
            Ok(s) => sieves.push(s),
            Err(e) => issues.push(format!("sieve_moduli[{i}]: {e}")),
        }
    }
    if cert.sieve_moduli.windows(2).any(|w| w[0] >= w[1]) {
        issues.push("sieve_moduli: not strictly increasing".into());
    }

    for (i, s) in cert.solutions_found.iter().enumerate() {
        let at = format!("solutions_found[{i}]");
        let in_box = |v: &ExactInt| v.is_positive() && *v <= cert.bound;
        if !in_box(&s.x) || !in_box(&s.y) {
            issues.push(format!("{at}: ({}, {}) lies outside the box", s.x, s.y));
        }
        if !s.is_canonical() {
            issues.push(format!("{at}: z = {} is negative", s.z));
        }
        if !s.satisfies(&cert.form) {
            issues.push(format!("{at}: {}^2 != form({}, {})", s.z, s.x, s.y));
        }
        if !s.flags_consistent() {
            issues.push(format!(
                "{at}: primitive/trivial flags do not match the values"
            ));
        }
        if cert.coprime_only && !crate::exact::gcd(&s.x, &s.y).is_one() {
            issues.push(format!("{at}: non-coprime pair in a coprime-only search"));
        }
        if cert.exclude_trivial && s.trivial {
            issues.push(format!(
                "{at}: trivial solution listed although trivial ones are excluded"
            ));
        }
        if let Some(sv) = sieves.iter().find(|sv| !sv.admits(&s.x, &s.y)) {
            issues.push(format!(
                "{at}: rejected by the modulus-{} sieve",
                sv.modulus()
            ));
        }
    }
    let keys: Vec<_> = cert.solutions_found.iter().map(|s| (&s.x, &s.y)).collect();
    if keys.windows(2).any(|w| w[0] >= w[1]) {
        issues.push("solutions_found: not strictly ordered by (x, y)".into());
    }

    if let Some(b) = bound {
        let expected = expected_candidate_count(b, cert.coprime_only);
        let claimed = cert.pairs_scanned.checked_add(cert.pairs_sieved_out);
        if claimed != Some(expected) {
            issues.push(format!(
                "pairs_scanned + pairs_sieved_out = {} + {} but the box holds {expected} candidates",
                cert.pairs_scanned, cert.pairs_sieved_out
            ));
        }
    }
    if (cert.solutions_found.len() as u64) > cert.pairs_scanned {
        issues.push("solutions_found: more solutions than scanned pairs".into());
    }
    issues
}

/// True iff the certificate is internally consistent.
pub fn verify_certificate(cert: &SearchCertificate) -> bool {
    certificate_issues(cert).is_empty()
}
