//! Parametrizations used throughout the descent: primitive Pythagorean
//! triples, the four-split of `xy = zt`, and the two-case parametrization of
//! `z^2 = D y^2 + x^2`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{gcd, isqrt_exact, isqrt_floor, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("decomposition error: {0}")]
    Decomposition(String),
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

fn param<T>(msg: impl Into<String>) -> Result<T, ParamError> {
    Err(ParamError::Parameter(msg.into()))
}

fn decomp<T>(msg: impl Into<String>) -> Result<T, ParamError> {
    Err(ParamError::Decomposition(msg.into()))
}

fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

/// Primitive triple `(m^2 - n^2, 2mn, m^2 + n^2)` with its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PythTriple {
    pub leg_odd: ExactInt,
    pub leg_even: ExactInt,
    pub hyp: ExactInt,
    pub gen_m: ExactInt,
    pub gen_n: ExactInt,
}

pub fn primitive_pythagorean(m: &ExactInt, n: &ExactInt) -> Result<PythTriple, ParamError> {
    if !(m > n && n.is_positive()) {
        return param(format!("generators must satisfy m > n > 0, got ({m}, {n})"));
    }
    if !gcd(m, n).is_one() {
        return param(format!("generators ({m}, {n}) are not coprime"));
    }
    if m.is_odd() == n.is_odd() {
        return param(format!("generators ({m}, {n}) must have opposite parity"));
    }
    let (m2, n2) = (m * m, n * n);
    Ok(PythTriple {
        leg_odd: &m2 - &n2,
        leg_even: int(2) * m * n,
        hyp: m2 + n2,
        gen_m: m.clone(),
        gen_n: n.clone(),
    })
}

/// Recovers the generators of a primitive Pythagorean triple; the legs may be
/// given in either order.
pub fn pythagorean_decompose(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
) -> Result<PythTriple, ParamError> {
    if !(x.is_positive() && y.is_positive() && z.is_positive()) {
        return decomp(format!("entries of ({x}, {y}, {z}) must be positive"));
    }
    if x * x + y * y != z * z {
        return decomp(format!("({x}, {y}, {z}) is not Pythagorean"));
    }
    if !gcd(x, y).is_one() {
        return decomp(format!("({x}, {y}, {z}) is not primitive"));
    }
    let (odd, even) = match (x.is_odd(), y.is_odd()) {
        (true, false) => (x, y),
        (false, true) => (y, x),
        _ => return decomp(format!("legs of ({x}, {y}, {z}) need opposite parity")),
    };
    let (m, n) = signed_pythagorean_generators(odd, even, z)?;
    primitive_pythagorean(&m, &n).map_err(|e| ParamError::Decomposition(e.to_string()))
}

/// Generators `(m, n)`, both positive, with `m^2 - n^2 == odd_leg`,
/// `2mn == even_leg` and `m^2 + n^2 == hyp`.
///
/// `odd_leg` keeps its sign, so a negative odd leg yields `n > m`.
pub fn signed_pythagorean_generators(
    odd_leg: &ExactInt,
    even_leg: &ExactInt,
    hyp: &ExactInt,
) -> Result<(ExactInt, ExactInt), ParamError> {
    if odd_leg * odd_leg + even_leg * even_leg != hyp * hyp {
        return decomp(format!("({odd_leg}, {even_leg}, {hyp}) is not Pythagorean"));
    }
    let two = int(2);
    let (m_sq, rem_m) = (hyp + odd_leg).div_rem(&two);
    let (n_sq, rem_n) = (hyp - odd_leg).div_rem(&two);
    if !rem_m.is_zero() || !rem_n.is_zero() {
        return decomp(format!(
            "odd leg {odd_leg} and hypotenuse {hyp} differ in parity"
        ));
    }
    let m = isqrt_exact(&m_sq).ok().flatten().ok_or_else(|| {
        ParamError::Decomposition(format!("(hyp + odd)/2 = {m_sq} is not a square"))
    })?;
    let n = isqrt_exact(&n_sq).ok().flatten().ok_or_else(|| {
        ParamError::Decomposition(format!("(hyp - odd)/2 = {n_sq} is not a square"))
    })?;
    if &(&two * &m * &n) != even_leg {
        return decomp(format!(
            "2mn = {} does not match even leg {even_leg}",
            &two * &m * &n
        ));
    }
    Ok((m, n))
}

/// Witness `(a, b, c, d)` of `x = ac, y = bd, z = ad, t = bc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourSplit {
    #[serde(with = "crate::decimal")]
    pub a: ExactInt,
    #[serde(with = "crate::decimal")]
    pub b: ExactInt,
    #[serde(with = "crate::decimal")]
    pub c: ExactInt,
    #[serde(with = "crate::decimal")]
    pub d: ExactInt,
}

impl FourSplit {
    /// `(x, y, z, t)` rebuilt from the split.
    pub fn reconstruct(&self) -> (ExactInt, ExactInt, ExactInt, ExactInt) {
        (
            &self.a * &self.c,
            &self.b * &self.d,
            &self.a * &self.d,
            &self.b * &self.c,
        )
    }

    pub fn pairwise_coprime(&self) -> bool {
        let v = [&self.a, &self.b, &self.c, &self.d];
        (0..4).all(|i| (i + 1..4).all(|j| gcd(v[i], v[j]).is_one()))
    }
}

/// Canonical four-split: `a = gcd(x, z)`, `c = x / a`, `d = z / a`, `b = t / c`.
pub fn four_split(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
    t: &ExactInt,
) -> Result<FourSplit, ParamError> {
    if !(x.is_positive() && y.is_positive() && z.is_positive() && t.is_positive()) {
        return param(format!(
            "four_split needs positive entries, got ({x}, {y}, {z}, {t})"
        ));
    }
    if x * y != z * t {
        return param(format!("{x}*{y} != {z}*{t}"));
    }
    let a = gcd(x, z);
    let c = x / &a;
    let d = z / &a;
    // cy = dt with gcd(c, d) = 1 forces c | t
    let b = t / &c;
    Ok(FourSplit { a, b, c, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityCase {
    /// `Dy` odd: `2x = pm^2 - qn^2`, `y = mn`, `2z = pm^2 + qn^2`.
    DyOdd,
    /// `Dy` and `y` even: `x = pm^2 - qn^2`, `y = 2mn`, `z = pm^2 + qn^2`.
    DyEven,
}

/// One representation of a solution of `z^2 = D y^2 + x^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConicParam {
    pub d: ExactInt,
    pub p: ExactInt,
    pub q: ExactInt,
    pub m: ExactInt,
    pub n: ExactInt,
    pub parity_case: ParityCase,
}

/// Builds `(x, y, z)` from a representation; the result satisfies `z^2 = D y^2 + x^2`.
pub fn conic_generate(param: &ConicParam) -> Result<(ExactInt, ExactInt, ExactInt), ParamError> {
    let ConicParam {
        d,
        p,
        q,
        m,
        n,
        parity_case,
    } = param;
    if &(p * q) != d {
        return self::param(format!("p*q = {} differs from D = {d}", p * q));
    }
    if !(p.is_positive() && q.is_positive() && m.is_positive() && n.is_positive()) {
        return self::param("p, q, m, n must be positive");
    }
    if !gcd(&(p * m), &(q * n)).is_one() {
        return self::param(format!("gcd(pm, qn) != 1 for p={p}, q={q}, m={m}, n={n}"));
    }
    let pm2 = p * m * m;
    let qn2 = q * n * n;
    let (x, y, z) = match parity_case {
        ParityCase::DyOdd => {
            let diff = &pm2 - &qn2;
            if diff.is_odd() {
                return self::param(format!("pm^2 - qn^2 = {diff} is odd, x is not integral"));
            }
            (diff / 2, m * n, (pm2 + qn2) / 2)
        }
        ParityCase::DyEven => (&pm2 - &qn2, int(2) * m * n, pm2 + qn2),
    };
    debug_assert_eq!(&z * &z, d * &y * &y + &x * &x);
    Ok((x, y, z))
}

fn positive_divisors(d: &ExactInt) -> Vec<ExactInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let limit = isqrt_floor(d);
    let mut k = ExactInt::one();
    while k <= limit {
        if (d % &k).is_zero() {
            let other = d / &k;
            if other != k {
                large.push(other);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Every representation `(p, q, m, n)` of `(x, y, z)` under the applicable
/// parity case, over all ordered factorizations `pq = D`.
pub fn conic_decompose(
    d: &ExactInt,
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
) -> Result<Vec<ConicParam>, ParamError> {
    if !d.is_positive() {
        return decomp(format!("D must be positive, got {d}"));
    }
    if !(y.is_positive() && z.is_positive()) {
        return decomp(format!("y and z must be positive, got y={y}, z={z}"));
    }
    if z * z != d * y * y + x * x {
        return decomp(format!("{z}^2 != {d}*{y}^2 + {x}^2"));
    }
    let dy = d * y;
    if !gcd(x, &dy).is_one() && !gcd(z, &dy).is_one() {
        return decomp(format!(
            "neither gcd(x, Dy) nor gcd(z, Dy) is 1 for ({x}, {y}, {z})"
        ));
    }
    let case = if dy.is_odd() {
        ParityCase::DyOdd
    } else if y.is_even() {
        ParityCase::DyEven
    } else {
        return decomp(format!("Dy = {dy} is even but y = {y} is odd"));
    };

    // pm^2 and qn^2 are fixed by (x, z); only the split of D varies.
    let (pm2, qn2) = match case {
        ParityCase::DyOdd => (x + z, z - x),
        ParityCase::DyEven => {
            if (x + z).is_odd() {
                return decomp(format!("x + z = {} is odd in the even case", x + z));
            }
            ((x + z) / 2, (z - x) / 2)
        }
    };

    let mut out = Vec::new();
    for p in positive_divisors(d) {
        let q = d / &p;
        if !(&pm2 % &p).is_zero() || !(&qn2 % &q).is_zero() {
            continue;
        }
        let (Ok(Some(m)), Ok(Some(n))) = (isqrt_exact(&(&pm2 / &p)), isqrt_exact(&(&qn2 / &q)))
        else {
            continue;
        };
        let y_back = match case {
            ParityCase::DyOdd => &m * &n,
            ParityCase::DyEven => int(2) * &m * &n,
        };
        if &y_back != y || !gcd(&(&p * &m), &(&q * &n)).is_one() {
            continue;
        }
        out.push(ConicParam {
            d: d.clone(),
            p,
            q,
            m,
            n,
            parity_case: case,
        });
    }
    if out.is_empty() {
        return Err(ParamError::InternalConsistency(format!(
            "no representation of ({x}, {y}, {z}) for D = {d}"
        )));
    }
    Ok(out)
}
