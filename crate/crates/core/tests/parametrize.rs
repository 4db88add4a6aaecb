use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed};
use perfiso_core::parametrize::{
    conic_decompose, conic_generate, four_split, primitive_pythagorean, pythagorean_decompose,
    ConicParam, ParityCase,
};
use perfiso_core::ExactInt;
use proptest::prelude::*;

fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

fn isqrt(v: i64) -> Option<i64> {
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

/// Every `(x, y, z)` with `x, y > 0`, `z <= max_z`, `z^2 = Dy^2 + x^2` and `gcd(x, Dy) = 1`.
fn conic_solutions(d: i64, max_z: i64) -> BTreeSet<(i64, i64, i64)> {
    let mut out = BTreeSet::new();
    for z in 1..=max_z {
        for y in 1..=z {
            let rest = z * z - d * y * y;
            if rest <= 0 {
                break;
            }
            if let Some(x) = isqrt(rest) {
                if x.gcd(&(d * y)) == 1 {
                    out.insert((x, y, z));
                }
            }
        }
    }
    out
}

/// Triples `(|x|, y, z)` reached by scanning `p, q, m, n <= 40` with `pq = D`.
fn conic_oracle(d: i64, max_z: i64) -> BTreeSet<(i64, i64, i64)> {
    let mut out = BTreeSet::new();
    for p in 1..=40i64 {
        for q in 1..=40i64 {
            if p * q != d {
                continue;
            }
            for m in 1..=40i64 {
                for n in 1..=40i64 {
                    let (u, v) = (p * m * m, q * n * n);
                    // Dy odd: 2x = u - v, y = mn, 2z = u + v
                    if (u - v) % 2 == 0 && (d * m * n) % 2 == 1 {
                        out.insert(((u - v).abs() / 2, m * n, (u + v) / 2));
                    }
                    // Dy even, y even: x = u - v, y = 2mn, z = u + v
                    out.insert(((u - v).abs(), 2 * m * n, u + v));
                }
            }
        }
    }
    out.retain(|&(x, y, z)| z <= max_z && x > 0 && x.gcd(&(d * y)) == 1);
    out
}

#[test]
fn conic_completeness_to_500() {
    for d in [2i64, 3] {
        let truth = conic_solutions(d, 500);
        let oracle = conic_oracle(d, 500);
        assert!(!truth.is_empty());
        assert_eq!(truth, oracle, "D = {d}");
        for &(x, y, z) in &truth {
            let params = conic_decompose(&int(d), &int(x), &int(y), &int(z))
                .unwrap_or_else(|e| panic!("D = {d}, ({x}, {y}, {z}): {e}"));
            assert!(!params.is_empty());
        }
    }
}

#[test]
fn conic_round_trip_to_300() {
    for d in [2i64, 3] {
        for (x, y, z) in conic_solutions(d, 300) {
            for sx in [x, -x] {
                let params = conic_decompose(&int(d), &int(sx), &int(y), &int(z)).unwrap();
                for p in &params {
                    assert_eq!(conic_generate(p).unwrap(), (int(sx), int(y), int(z)));
                    assert_eq!(&p.p * &p.q, int(d));
                }
            }
        }
    }
}

#[test]
fn conic_generate_lands_on_the_conic() {
    for (p, q) in [(1, 3), (3, 1), (1, 2), (2, 1)] {
        for m in 1..=20i64 {
            for n in 1..=20i64 {
                for case in [ParityCase::DyOdd, ParityCase::DyEven] {
                    let param = ConicParam {
                        d: int(p * q),
                        p: int(p),
                        q: int(q),
                        m: int(m),
                        n: int(n),
                        parity_case: case,
                    };
                    if let Ok((x, y, z)) = conic_generate(&param) {
                        assert_eq!(&z * &z, int(p * q) * &y * &y + &x * &x);
                    }
                }
            }
        }
    }
}

#[test]
fn primitive_pythagorean_complete_to_1000() {
    let mut truth = BTreeSet::new();
    for z in 1..=1000i64 {
        for x in 1..z {
            if let Some(y) = isqrt(z * z - x * x) {
                if x.gcd(&y) == 1 && x % 2 == 1 {
                    truth.insert((x, y, z));
                }
            }
        }
    }
    let mut generated = BTreeSet::new();
    for m in 2..=32i64 {
        for n in 1..m {
            if let Ok(t) = primitive_pythagorean(&int(m), &int(n)) {
                let hyp = i64::try_from(t.hyp.clone()).unwrap();
                if hyp <= 1000 {
                    let key = (
                        i64::try_from(t.leg_odd.clone()).unwrap(),
                        i64::try_from(t.leg_even.clone()).unwrap(),
                        hyp,
                    );
                    assert!(generated.insert(key), "duplicate {key:?}");
                }
            }
        }
    }
    assert_eq!(truth, generated);
    for &(x, y, z) in &truth {
        let t = pythagorean_decompose(&int(y), &int(x), &int(z)).unwrap();
        assert_eq!((t.leg_odd, t.leg_even, t.hyp), (int(x), int(y), int(z)));
    }
}

#[test]
fn four_split_reconstructs_all_entries_to_200() {
    let mut count = 0u64;
    for x in 1..=200i64 {
        for z in 1..=200i64 {
            // xy = zt  <=>  (x/g) y = (z/g) t, so y runs over multiples of z/g
            let g = x.gcd(&z);
            let (c, d) = (x / g, z / g);
            let mut k = 1;
            while d * k <= 200 && c * k <= 200 {
                let (y, t) = (d * k, c * k);
                let s = four_split(&int(x), &int(y), &int(z), &int(t)).unwrap();
                assert_eq!(s.reconstruct(), (int(x), int(y), int(z), int(t)));
                if x.gcd(&y) == 1 && z.gcd(&t) == 1 {
                    assert!(s.pairwise_coprime(), "({x}, {y}, {z}, {t})");
                }
                count += 1;
                k += 1;
            }
        }
    }
    assert!(count > 100_000);
}

proptest! {
    #[test]
    fn four_split_on_large_products(a in 1u64..1_000_000, b in 1u64..1_000_000, c in 1u64..1_000_000, d in 1u64..1_000_000) {
        let (a, b, c, d) = (ExactInt::from(a), ExactInt::from(b), ExactInt::from(c), ExactInt::from(d));
        let (x, y, z, t) = (&a * &c, &b * &d, &a * &d, &b * &c);
        let s = four_split(&x, &y, &z, &t).unwrap();
        prop_assert_eq!(s.reconstruct(), (x, y, z, t));
        prop_assert!(s.a.is_positive() && s.b.is_positive());
    }

    #[test]
    fn pythagorean_round_trip(n in 1i64..5000, k in 0i64..5000) {
        let m = n + 2 * k + 1;
        prop_assume!(m.gcd(&n) == 1);
        let t = primitive_pythagorean(&int(m), &int(n)).unwrap();
        prop_assert!(t.leg_odd.gcd(&t.leg_even).is_one());
        let back = pythagorean_decompose(&t.leg_odd, &t.leg_even, &t.hyp).unwrap();
        prop_assert_eq!((back.gen_m, back.gen_n), (int(m), int(n)));
    }
}
