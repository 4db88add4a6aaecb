use perfiso_core::descent::identities;
use perfiso_core::ExactInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub samples: u64,
    /// Sample points where the identity failed, rendered as `(u, v)`.
    pub failures: Vec<String>,
}

type Identity = fn(&ExactInt, &ExactInt) -> bool;

// (name, identity, coordinate range, coprime pairs only)
const SUITE: [(&str, Identity, (i64, i64), bool); 5] = [
    ("lift", identities::lift, (-100, 100), false),
    ("case2-scaling", identities::case2_scaling, (-50, 50), false),
    (
        "gcd-quotient-coprime",
        identities::gcd_quotient_coprime,
        (1, 200),
        true,
    ),
    ("decomposition", identities::decomposition, (-50, 50), false),
    (
        "odd-branch-expansion",
        identities::odd_branch,
        (-100, 100),
        false,
    ),
];

/// Samples each identity `iters` times from a seeded stream; deterministic per seed.
pub fn identity_fuzz(seed: u64, iters: u64) -> Vec<IdentityResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SUITE
        .iter()
        .map(|&(name, check, (lo, hi), coprime)| {
            let mut failures = Vec::new();
            for _ in 0..iters {
                let (u, v) = loop {
                    let u = rng.gen_range(lo..=hi);
                    let v = rng.gen_range(lo..=hi);
                    if !coprime || num_gcd(u, v) == 1 {
                        break (u, v);
                    }
                };
                if !check(&u.into(), &v.into()) {
                    failures.push(format!("({u}, {v})"));
                }
            }
            IdentityResult {
                name,
                samples: iters,
                failures,
            }
        })
        .collect()
}

fn num_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}
