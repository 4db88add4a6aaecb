//! Exact triangle geometry: medians, Heron area, the isosceles generator
//! parametrization and desk-scale enumerations.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{
    exact_sqrt_u128, gcd, gcd_u64, isqrt_exact, rational_square_root, ExactInt, ExactRational,
};
use crate::exec::{map_reduce_rows, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("invalid triangle: {0}")]
    Validation(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("degenerate triangle: {0}")]
    Degenerate(String),
}

/// Triangle with positive rational sides obeying the strict triangle inequality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    a: ExactRational,
    b: ExactRational,
    c: ExactRational,
}

impl Triangle {
    pub fn new(
        a: ExactRational,
        b: ExactRational,
        c: ExactRational,
    ) -> Result<Self, TriangleError> {
        if !(a.is_positive() && b.is_positive() && c.is_positive()) {
            return Err(TriangleError::Validation(format!(
                "sides ({a}, {b}, {c}) must be positive"
            )));
        }
        if a >= &b + &c || b >= &a + &c || c >= &a + &b {
            return Err(TriangleError::Validation(format!(
                "sides ({a}, {b}, {c}) violate the strict triangle inequality"
            )));
        }
        Ok(Triangle { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, TriangleError> {
        let r = |v: i64| ExactRational::from_integer(v.into());
        Triangle::new(r(a), r(b), r(c))
    }

    pub fn sides(&self) -> [&ExactRational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn perimeter(&self) -> ExactRational {
        &self.a + &self.b + &self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleMetrics {
    pub median_sq_a: ExactRational,
    pub median_sq_b: ExactRational,
    pub median_sq_c: ExactRational,
    /// `16 * area^2`.
    pub area_sq_times16: ExactRational,
    /// Exact area when it is rational.
    pub area: Option<ExactRational>,
    /// Exact median lengths, `None` where irrational.
    pub medians: [Option<ExactRational>; 3],
    pub rational_median_count: u8,
    pub area_rational: bool,
    pub isosceles: bool,
    pub perfect: bool,
}

impl TriangleMetrics {
    pub fn median_squares(&self) -> [&ExactRational; 3] {
        [&self.median_sq_a, &self.median_sq_b, &self.median_sq_c]
    }
}

fn median_sq(opposite: &ExactRational, s1: &ExactRational, s2: &ExactRational) -> ExactRational {
    let two = ExactRational::from_integer(2.into());
    (&two * s1 * s1 + &two * s2 * s2 - opposite * opposite) / ExactRational::from_integer(4.into())
}

pub fn metrics(t: &Triangle) -> TriangleMetrics {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let median_sq_a = median_sq(a, b, c);
    let median_sq_b = median_sq(b, a, c);
    let median_sq_c = median_sq(c, a, b);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let two = ExactRational::from_integer(2.into());
    let area_sq_times16 =
        &two * &a2 * &b2 + &two * &b2 * &c2 + &two * &c2 * &a2 - &a2 * &a2 - &b2 * &b2 - &c2 * &c2;

    // every quantity is nonnegative for a valid triangle
    let root = |q: &ExactRational| rational_square_root(q).expect("nonnegative");
    let area = root(&area_sq_times16).map(|r| r / ExactRational::from_integer(4.into()));
    let medians = [root(&median_sq_a), root(&median_sq_b), root(&median_sq_c)];
    let rational_median_count = medians.iter().filter(|m| m.is_some()).count() as u8;
    let area_rational = area.is_some();
    TriangleMetrics {
        median_sq_a,
        median_sq_b,
        median_sq_c,
        area_sq_times16,
        area,
        medians,
        rational_median_count,
        area_rational,
        isosceles: a == b || b == c || a == c,
        perfect: rational_median_count == 3 && area_rational,
    }
}

/// `m^4 + 4n^4 - 5m^2 n^2`, which equals `(m^2 - 2n^2)^2 - (mn)^2`.
pub fn h_square(m: &ExactInt, n: &ExactInt) -> ExactInt {
    let m2 = m * m;
    let n2 = n * n;
    &m2 * &m2 + ExactInt::from(4) * &n2 * &n2 - ExactInt::from(5) * &m2 * &n2
}

/// Isosceles triangle `(|A|, |A|, B)` generated by `A = m^2 - 2n^2`, `B = 2mn`.
///
/// The leg median is `w / 2` with `w^2 = 2B^2 + A^2`; the base median is `h`
/// with `h^2 = h_sq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoscelesParams {
    pub m: ExactInt,
    pub n: ExactInt,
    /// `m^2 - 2n^2`, signed.
    pub a: ExactInt,
    pub b: ExactInt,
    pub w: ExactInt,
    pub h_sq: ExactInt,
}

impl IsoscelesParams {
    fn build(m: &ExactInt, n: &ExactInt) -> Self {
        let a = m * m - ExactInt::from(2) * n * n;
        let b = ExactInt::from(2) * m * n;
        IsoscelesParams {
            m: m.clone(),
            n: n.clone(),
            w: m * m + ExactInt::from(2) * n * n,
            h_sq: h_square(m, n),
            a,
            b,
        }
    }

    pub fn leg(&self) -> ExactInt {
        self.a.abs()
    }

    /// `h_sq > 0`, i.e. `2|A| > B`.
    pub fn forms_triangle(&self) -> bool {
        self.h_sq.is_positive()
    }

    /// `h_sq == 0`: the triangle collapses onto its base.
    pub fn is_degenerate(&self) -> bool {
        self.h_sq.is_zero()
    }

    /// A positive perfect square `h_sq` would make every median and the area rational.
    pub fn is_witness(&self) -> bool {
        self.h_sq.is_positive() && matches!(isqrt_exact(&self.h_sq), Ok(Some(_)))
    }

    pub fn triangle(&self) -> Result<Triangle, TriangleError> {
        let leg = ExactRational::from_integer(self.leg());
        Triangle::new(
            leg.clone(),
            leg,
            ExactRational::from_integer(self.b.clone()),
        )
        .map_err(|e| TriangleError::Degenerate(e.to_string()))
    }
}

/// Generator pair for an isosceles triangle with a rational leg median.
///
/// Requires `m, n > 0`, `gcd(m, n) = 1` and `m` odd. The leg is `|m^2 - 2n^2|`,
/// so pairs with `m^2 < 2n^2` are accepted; the triangle must be nondegenerate.
pub fn isosceles_from_params(m: &ExactInt, n: &ExactInt) -> Result<IsoscelesParams, TriangleError> {
    if !(m.is_positive() && n.is_positive()) {
        return Err(TriangleError::Parameter(format!(
            "m = {m}, n = {n} must be positive"
        )));
    }
    if !gcd(m, n).is_one() {
        return Err(TriangleError::Parameter(format!("gcd({m}, {n}) != 1")));
    }
    if m.is_even() {
        return Err(TriangleError::Parameter(format!("m = {m} must be odd")));
    }
    let p = IsoscelesParams::build(m, n);
    if !p.forms_triangle() {
        return Err(TriangleError::Degenerate(format!(
            "(m, n) = ({m}, {n}) gives legs {} and base {}",
            p.leg(),
            p.b
        )));
    }
    Ok(p)
}

/// Every coprime `(m, n)` with `m` odd and `1 <= m, n <= bound`, ordered by `(m, n)`.
///
/// Degenerate and non-triangle pairs are included; filter with
/// [`IsoscelesParams::forms_triangle`].
pub fn enumerate_isosceles_candidates(bound: &ExactInt) -> impl Iterator<Item = IsoscelesParams> {
    let bound = bound.clone();
    num_iter_odd(&bound).flat_map(move |m| {
        let bound = bound.clone();
        let mut n = ExactInt::zero();
        std::iter::from_fn(move || loop {
            n += 1;
            if n > bound {
                return None;
            }
            if gcd(&m, &n).is_one() {
                return Some(IsoscelesParams::build(&m, &n));
            }
        })
    })
}

fn num_iter_odd(bound: &ExactInt) -> impl Iterator<Item = ExactInt> {
    let bound = bound.clone();
    let mut m = ExactInt::from(-1);
    std::iter::from_fn(move || {
        m += 2;
        (m <= bound).then(|| m.clone())
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsoscelesScan {
    /// Coprime pairs with `m` odd.
    pub candidates: u64,
    /// Candidates with `h_sq > 0`.
    pub triangles: u64,
    /// Candidates with `h_sq == 0`.
    pub degenerate: u64,
    pub witnesses: Vec<IsoscelesParams>,
}

/// Counts the candidate box and collects witnesses, row-parallel over `m`.
pub fn scan_isosceles(bound: u64, exec: Execution) -> IsoscelesScan {
    let row = |ms: std::ops::RangeInclusive<u64>| {
        let mut out = IsoscelesScan::default();
        for m in ms.filter(|m| m % 2 == 1) {
            let m2 = (m as i128) * (m as i128);
            for n in 1..=bound {
                if gcd_u64(m, n) != 1 {
                    continue;
                }
                out.candidates += 1;
                let n2 = (n as i128) * (n as i128);
                let a = m2 - 2 * n2;
                let half_b = (m as i128) * (n as i128);
                // h_sq = A^2 - (B/2)^2 = (A - mn)(A + mn)
                let h_sq = (a - half_b) * (a + half_b);
                match h_sq.signum() {
                    0 => out.degenerate += 1,
                    1 => {
                        out.triangles += 1;
                        if exact_sqrt_u128(h_sq as u128).is_some() {
                            out.witnesses
                                .push(IsoscelesParams::build(&m.into(), &n.into()));
                        }
                    }
                    _ => {}
                }
            }
        }
        out
    };
    let mut scan = map_reduce_rows(
        exec,
        1..=bound,
        32,
        row,
        |mut x, mut y| {
            x.candidates += y.candidates;
            x.triangles += y.triangles;
            x.degenerate += y.degenerate;
            x.witnesses.append(&mut y.witnesses);
            x
        },
        IsoscelesScan::default,
    );
    scan.witnesses
        .sort_by(|p, q| (&p.m, &p.n).cmp(&(&q.m, &q.n)));
    scan
}

/// Integer-sided triangle with its metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeronTriangle {
    pub sides: [u64; 3],
    pub triangle: Triangle,
    pub metrics: TriangleMetrics,
}

impl HeronTriangle {
    pub fn perimeter(&self) -> u64 {
        self.sides.iter().sum()
    }
}

/// Every integer triangle `a <= b <= c` with `a + b + c <= max_perimeter` and
/// rational area, sorted by perimeter then sides.
pub fn enumerate_heron(max_perimeter: u64, exec: Execution) -> Vec<HeronTriangle> {
    if max_perimeter < 3 {
        return Vec::new();
    }
    // the longest side is below half the perimeter
    let max_c = (max_perimeter - 1) / 2;
    let rows = |cs: std::ops::RangeInclusive<u64>| {
        let mut out = Vec::new();
        for c in cs {
            for b in 1..=c {
                let lo = (c - b + 1).max(1);
                let hi = b.min(max_perimeter.saturating_sub(b + c));
                for a in lo..=hi {
                    let (aw, bw, cw) = (a as u128, b as u128, c as u128);
                    // 16 area^2 = (a+b+c)(-a+b+c)(a-b+c)(a+b-c); the area filter runs first
                    let v = (aw + bw + cw) * (bw + cw - aw) * (aw + cw - bw) * (aw + bw - cw);
                    if exact_sqrt_u128(v).is_none() {
                        continue;
                    }
                    let triangle = Triangle::from_ints(a as i64, b as i64, c as i64)
                        .expect("enumeration respects the triangle inequality");
                    let metrics = metrics(&triangle);
                    out.push(HeronTriangle {
                        sides: [a, b, c],
                        triangle,
                        metrics,
                    });
                }
            }
        }
        out
    };
    if max_c == 0 {
        return Vec::new();
    }
    let mut all = map_reduce_rows(
        exec,
        1..=max_c,
        8,
        rows,
        |mut x, mut y| {
            x.append(&mut y);
            x
        },
        Vec::new,
    );
    all.sort_by_key(|t| (t.perimeter(), t.sides));
    all
}

/// Integer value of a rational known to be whole, for reporting.
pub fn as_integer(q: &ExactRational) -> Option<i128> {
    q.is_integer().then(|| q.to_integer().to_i128()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        v.into()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    // Independent median oracle: 4 m_a^2 = 2b^2 + 2c^2 - a^2 over plain integers.
    fn median_oracle_times4(a: i64, b: i64, c: i64) -> [i64; 3] {
        [
            2 * b * b + 2 * c * c - a * a,
            2 * a * a + 2 * c * c - b * b,
            2 * a * a + 2 * b * b - c * c,
        ]
    }

    #[test]
    fn metrics_3_4_5() {
        let m = metrics(&Triangle::from_ints(3, 4, 5).unwrap());
        assert_eq!(m.area_sq_times16, q(576, 1));
        assert_eq!(m.area, Some(q(6, 1)));
        assert_eq!(m.median_sq_a, q(73, 4));
        assert_eq!(m.median_sq_b, q(13, 1));
        assert_eq!(m.median_sq_c, q(25, 4));
        assert_eq!(median_oracle_times4(3, 4, 5), [73, 52, 25]);
        // 25/4 is a square, so the median to the hypotenuse (5/2) is rational
        assert_eq!(m.medians[2], Some(q(5, 2)));
        assert_eq!(m.rational_median_count, 1);
        assert!(!m.perfect && !m.isosceles);
    }

    #[test]
    fn metrics_5_5_6() {
        let m = metrics(&Triangle::from_ints(5, 5, 6).unwrap());
        assert_eq!(m.median_sq_c, q(16, 1));
        assert_eq!(m.median_sq_a, q(97, 4));
        assert_eq!(m.medians[0], None);
        assert_eq!(m.area, Some(q(12, 1)));
        assert!(m.isosceles);
    }

    #[test]
    fn invalid_triangles() {
        assert!(matches!(
            Triangle::from_ints(1, 1, 3),
            Err(TriangleError::Validation(_))
        ));
        assert!(Triangle::from_ints(1, 1, 2).is_err());
        assert!(Triangle::from_ints(0, 1, 1).is_err());
        assert!(Triangle::new(q(1, 2), q(1, 3), q(1, 4)).is_ok());
    }

    #[test]
    fn isosceles_examples() {
        let p = isosceles_from_params(&int(3), &int(1)).unwrap();
        assert_eq!(
            (p.a.clone(), p.b.clone(), p.w.clone(), p.h_sq.clone()),
            (int(7), int(6), int(11), int(40))
        );
        assert!(!p.is_witness());
        assert!(matches!(
            isosceles_from_params(&int(3), &int(2)),
            Err(TriangleError::Degenerate(_))
        ));
        assert!(matches!(
            isosceles_from_params(&int(2), &int(1)),
            Err(TriangleError::Parameter(_))
        ));
        assert!(matches!(
            isosceles_from_params(&int(3), &int(3)),
            Err(TriangleError::Parameter(_))
        ));
        assert!(matches!(
            isosceles_from_params(&int(1), &int(1)),
            Err(TriangleError::Degenerate(_))
        ));
        // negative A: legs 17, base 6, leg median 19/2
        let p = isosceles_from_params(&int(1), &int(3)).unwrap();
        assert_eq!(
            (p.leg(), p.b.clone(), p.w.clone()),
            (int(17), int(6), int(19))
        );
        let m = metrics(&p.triangle().unwrap());
        assert_eq!(m.medians[0], Some(q(19, 2)));
    }

    #[test]
    fn h_square_examples() {
        assert_eq!(h_square(&int(1), &int(1)), int(0));
        assert_eq!(h_square(&int(3), &int(1)), int(40));
        assert_eq!(h_square(&int(5), &int(1)), int(504));
    }

    #[test]
    fn candidate_examples() {
        let c: Vec<_> = enumerate_isosceles_candidates(&int(1)).collect();
        assert_eq!(c.len(), 1);
        assert_eq!(
            (c[0].m.clone(), c[0].n.clone(), c[0].h_sq.clone()),
            (int(1), int(1), int(0))
        );
        assert!(!c[0].is_witness());

        let c: Vec<_> = enumerate_isosceles_candidates(&int(3)).collect();
        let pairs: Vec<(ExactInt, ExactInt)> =
            c.iter().map(|p| (p.m.clone(), p.n.clone())).collect();
        let expect = [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2)].map(|(m, n)| (int(m), int(n)));
        assert_eq!(pairs, expect.to_vec());
        // restricted to a positive A = m^2 - 2n^2 and a genuine triangle, only (3, 1) survives
        let positive: Vec<_> = c
            .iter()
            .filter(|p| p.a.is_positive() && p.forms_triangle())
            .map(|p| (p.m.clone(), p.n.clone()))
            .collect();
        assert_eq!(positive, vec![(int(3), int(1))]);
        assert!(c.iter().all(|p| !p.is_witness()));
    }

    #[test]
    fn scan_agrees_with_iterator() {
        let scan = scan_isosceles(60, Execution::Parallel);
        let it: Vec<_> = enumerate_isosceles_candidates(&int(60)).collect();
        assert_eq!(scan.candidates, it.len() as u64);
        assert_eq!(
            scan.triangles,
            it.iter().filter(|p| p.forms_triangle()).count() as u64
        );
        assert_eq!(
            scan.degenerate,
            it.iter().filter(|p| p.is_degenerate()).count() as u64
        );
        assert!(scan.witnesses.is_empty());
        assert_eq!(scan_isosceles(60, Execution::Sequential), scan);
    }

    #[test]
    fn heron_small() {
        let h = enumerate_heron(12, Execution::Parallel);
        assert_eq!(h[0].sides, [3, 4, 5]);
        assert_eq!(h[0].metrics.area, Some(q(6, 1)));
        assert!(enumerate_heron(2, Execution::Parallel).is_empty());
    }

    #[test]
    fn as_integer_helper() {
        assert_eq!(as_integer(&q(12, 1)), Some(12));
        assert_eq!(as_integer(&q(1, 2)), None);
    }
}
