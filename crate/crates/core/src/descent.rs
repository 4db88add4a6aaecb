//! Contract-checked proof steps for `z^2 = x^4 + 10x^2y^2 + 9y^4`.
//!
//! Each step is callable on its own and every algebraic identity it relies on
//! is re-evaluated on the concrete numbers. The two Case 1 branches compose the
//! steps into a [`DescentTrace`]. Their preconditions have no solutions in
//! positive integers, so on real inputs the branches only ever reject; the
//! steps themselves are exercised on solvable sub-instances and by identity
//! fuzzing.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{gcd, ExactInt};
use crate::exec::Execution;
use crate::parametrize::{conic_decompose, four_split, signed_pythagorean_generators, ParityCase};
use crate::quartic::{eval_form, search, QuarticForm, SearchError, SearchOptions, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    /// The input does not meet the operation's stated preconditions.
    #[error("precondition `{step}` not met: {detail}")]
    Precondition { step: &'static str, detail: String },
    /// A proof step failed on the concrete values.
    #[error("proof step `{step}` failed: {detail}")]
    Contract { step: &'static str, detail: String },
    #[error("consistency error: {0}")]
    Consistency(String),
}

impl DescentError {
    pub fn step(&self) -> Option<&'static str> {
        match self {
            DescentError::Precondition { step, .. } | DescentError::Contract { step, .. } => {
                Some(step)
            }
            DescentError::Consistency(_) => None,
        }
    }
}

fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

fn lifted() -> QuarticForm {
    QuarticForm::lifted()
}

/// One logged proof step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub step_name: &'static str,
    pub values: Vec<(&'static str, ExactInt)>,
    pub identity_checked: bool,
}

impl DescentStep {
    pub fn value(&self, name: &str) -> Option<&ExactInt> {
        self.values.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentOutput {
    /// A smaller solution of the lifted form.
    Descended(Solution),
    /// `c^2 = x1^4 + x1^2 y1^2 + y1^4`.
    OddBranchTarget {
        x1: ExactInt,
        y1: ExactInt,
        c: ExactInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace {
    pub input: Solution,
    pub steps: Vec<DescentStep>,
    pub output: DescentOutput,
    pub measure_before: ExactInt,
    pub measure_after: ExactInt,
}

impl DescentTrace {
    pub fn all_identities_checked(&self) -> bool {
        self.steps.iter().all(|s| s.identity_checked)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

struct Decimal<'a>(&'a ExactInt);

impl Serialize for Decimal<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self.0)
    }
}

struct Values<'a>(&'a [(&'static str, ExactInt)]);

impl Serialize for Values<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, &Decimal(v))?;
        }
        map.end()
    }
}

impl Serialize for DescentStep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DescentStep", 3)?;
        st.serialize_field("step_name", self.step_name)?;
        st.serialize_field("values", &Values(&self.values))?;
        st.serialize_field("identity_checked", &self.identity_checked)?;
        st.end()
    }
}

impl Serialize for DescentOutput {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DescentOutput::Descended(sol) => {
                let mut st = s.serialize_struct("Descended", 2)?;
                st.serialize_field("kind", "descended")?;
                st.serialize_field("solution", sol)?;
                st.end()
            }
            DescentOutput::OddBranchTarget { x1, y1, c } => {
                let mut st = s.serialize_struct("OddBranchTarget", 4)?;
                st.serialize_field("kind", "odd-branch-target")?;
                st.serialize_field("x1", &Decimal(x1))?;
                st.serialize_field("y1", &Decimal(y1))?;
                st.serialize_field("c", &Decimal(c))?;
                st.end()
            }
        }
    }
}

impl Serialize for DescentTrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DescentTrace", 5)?;
        st.serialize_field("input", &self.input)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("output", &self.output)?;
        st.serialize_field("measure_before", &Decimal(&self.measure_before))?;
        st.serialize_field("measure_after", &Decimal(&self.measure_after))?;
        st.end()
    }
}

/// Accumulates steps; every `check` either logs a verified step or fails with its name.
#[derive(Default)]
struct Tracer {
    steps: Vec<DescentStep>,
}

impl Tracer {
    fn check(
        &mut self,
        step: &'static str,
        holds: bool,
        values: Vec<(&'static str, ExactInt)>,
        detail: impl FnOnce() -> String,
    ) -> Result<(), DescentError> {
        if !holds {
            return Err(DescentError::Contract {
                step,
                detail: detail(),
            });
        }
        self.steps.push(DescentStep {
            step_name: step,
            values,
            identity_checked: true,
        });
        Ok(())
    }
}

fn require(
    step: &'static str,
    holds: bool,
    detail: impl FnOnce() -> String,
) -> Result<(), DescentError> {
    if holds {
        Ok(())
    } else {
        Err(DescentError::Precondition {
            step,
            detail: detail(),
        })
    }
}

/// Divides out `d = gcd(x, y)`: returns `(x/d, y/d, z/d^2)`.
pub fn normalize(f: &QuarticForm, s: &Solution) -> Result<Solution, DescentError> {
    require(
        "solution-check",
        s.z.clone() * &s.z == eval_form(f, &s.x, &s.y),
        || format!("({}, {}, {}) does not satisfy {f}", s.x, s.y, s.z),
    )?;
    let d = gcd(&s.x, &s.y);
    if d.is_zero() {
        return Ok(Solution::new(s.x.clone(), s.y.clone(), s.z.clone()));
    }
    let d2 = &d * &d;
    let (k, rem) = s.z.div_rem(&d2);
    if !rem.is_zero() {
        return Err(DescentError::Consistency(format!(
            "{} is not divisible by gcd^2 = {d2}",
            s.z
        )));
    }
    Ok(Solution::new(&s.x / &d, &s.y / &d, k.abs()))
}

/// `(gamma, alpha*beta, |4alpha^4 - beta^4|)` on the lifted form.
pub fn lift_to_1_10_9(
    alpha: &ExactInt,
    beta: &ExactInt,
    gamma: &ExactInt,
) -> Result<Solution, DescentError> {
    let value = eval_form(&QuarticForm::isosceles(), alpha, beta);
    if gamma * gamma != value {
        return Err(DescentError::Contract {
            step: "lift-to-1-10-9",
            detail: format!("{gamma}^2 != 4*{alpha}^4 - 5*{alpha}^2*{beta}^2 + {beta}^4 = {value}"),
        });
    }
    let a4 = alpha.pow(4u32);
    let out = Solution::new(
        gamma.clone(),
        alpha * beta,
        (int(4) * a4 - beta.pow(4u32)).abs(),
    );
    if !out.satisfies(&lifted()) {
        return Err(DescentError::Contract {
            step: "lift-to-1-10-9",
            detail: format!(
                "lifted triple ({}, {}, {}) misses the form",
                out.x, out.y, out.z
            ),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSplit {
    DivYBy3,
    DivXBy3,
    /// Neither is divisible by 3, so the form is 2 mod 3 and cannot be a square.
    Mod3Contradiction,
}

pub fn case_split(x: &ExactInt, y: &ExactInt) -> Result<CaseSplit, DescentError> {
    require("mod3-case-split", gcd(x, y).is_one(), || {
        format!("gcd({x}, {y}) != 1")
    })?;
    let three = int(3);
    let (x3, y3) = ((x % &three).is_zero(), (y % &three).is_zero());
    Ok(match (x3, y3) {
        (_, true) => CaseSplit::DivYBy3,
        (true, false) => CaseSplit::DivXBy3,
        (false, false) => {
            debug_assert_eq!(eval_form(&lifted(), x, y).mod_floor(&three), int(2));
            CaseSplit::Mod3Contradiction
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub gcd: ExactInt,
    pub log: Vec<String>,
}

/// Checks `gcd(x^2 - 3y^2, 4xy) = 1` and replays the eliminations behind it.
pub fn coprimality_claim_check(x: &ExactInt, y: &ExactInt) -> Result<ClaimCheck, DescentError> {
    const STEP: &str = "coprimality-claim";
    require(STEP, gcd(x, y).is_one(), || format!("gcd({x}, {y}) != 1"))?;
    require(STEP, (y % int(3)).is_zero(), || {
        format!("3 does not divide y = {y}")
    })?;
    require(STEP, x.is_odd() != y.is_odd(), || {
        format!("({x}, {y}) must have opposite parity")
    })?;

    let u = x * x - int(3) * y * y;
    let v = int(4) * x * y;
    let g = gcd(&u, &v);
    let mut log = Vec::new();
    let fail = |detail: String| Err(DescentError::Contract { step: STEP, detail });

    let mut rest = g.clone();
    for p in [2, 3] {
        while (&rest % int(p)).is_zero() && !rest.is_zero() {
            rest /= int(p);
        }
    }
    if !rest.is_one() {
        return fail(format!("gcd({u}, {v}) = {g} has a prime factor above 3"));
    }
    log.push(format!(
        "p > 3: no prime above 3 divides gcd({u}, {v}), as gcd(x, y) = 1"
    ));

    if (&u % int(3)).is_zero() {
        return fail(format!("3 divides x^2 - 3y^2 = {u}"));
    }
    log.push(format!(
        "p = 3: 3 | y and 3 does not divide x, so x^2 - 3y^2 = {u} is prime to 3"
    ));

    let r4 = u.mod_floor(&int(4));
    if r4.is_zero() {
        return fail(format!("4 divides x^2 - 3y^2 = {u}"));
    }
    log.push(format!(
        "2^a, a >= 2: x^2 - 3y^2 = {r4} mod 4 (squares are 0 or 1 mod 4), so 4 does not divide it"
    ));

    if u.is_even() {
        return fail(format!("x^2 - 3y^2 = {u} is even"));
    }
    log.push(format!(
        "2: exactly one of x, y is even, so x^2 - 3y^2 = {u} is odd"
    ));

    if !g.is_one() {
        return fail(format!("gcd({u}, {v}) = {g}"));
    }
    log.push(format!("gcd(x^2 - 3y^2, 4xy) = {g}"));
    Ok(ClaimCheck { gcd: g, log })
}

/// `x = 3x1` maps `(x, y, z)` to `(y, x1, z/3)` on the same form.
pub fn reduce_case2(x: &ExactInt, y: &ExactInt, z: &ExactInt) -> Result<Solution, DescentError> {
    const STEP: &str = "case2-scaling";
    let contract = |detail: String| DescentError::Contract { step: STEP, detail };
    if !(x % int(3)).is_zero() {
        return Err(contract(format!("3 does not divide x = {x}")));
    }
    let value = eval_form(&lifted(), x, y);
    if z * z != value {
        return Err(contract(format!("{z}^2 != form({x}, {y}) = {value}")));
    }
    let z2 = z * z;
    if !(&z2 % int(9)).is_zero() {
        return Err(contract(format!("9 does not divide z^2 = {z2}")));
    }
    let x1 = x / int(3);
    let out = Solution::new(y.clone(), x1, z.abs() / int(3));
    if !out.satisfies(&lifted()) {
        return Err(contract(format!(
            "reduced ({}, {}, {}) misses the form",
            out.x, out.y, out.z
        )));
    }
    Ok(out)
}

/// `c^2 = a^2 + 3b^2` via the `D = 3` parametrization: returns every `(x1, y1)`
/// with `b = x1 y1` and `2a = x1^2 - 3y1^2` (split `p = 1`) or
/// `2a = 3y1^2 - x1^2` (split `p = 3`, generators exchanged).
pub fn conic_step(
    a: &ExactInt,
    b: &ExactInt,
    c: &ExactInt,
) -> Result<Vec<(ExactInt, ExactInt)>, DescentError> {
    const STEP: &str = "conic-parametrization";
    let contract = |detail: String| DescentError::Contract { step: STEP, detail };
    if !gcd(a, &(int(3) * b)).is_one() {
        return Err(contract(format!("gcd({a}, 3*{b}) != 1")));
    }
    let params = conic_decompose(&int(3), a, b, c).map_err(|e| contract(e.to_string()))?;
    let mut out = Vec::new();
    for p in params {
        if p.parity_case != ParityCase::DyOdd {
            continue;
        }
        // (p, q) = (3, 1) is the (1, 3) split with x1, y1 exchanged:
        // 2a = 3m^2 - n^2 and (2d)^2 = n^4 + 10n^2m^2 + 9m^4.
        let (x1, y1) = if p.p.is_one() { (p.m, p.n) } else { (p.n, p.m) };
        out.push((x1, y1));
    }
    if out.is_empty() {
        return Err(contract(format!(
            "no odd-case representation of {c}^2 = 3*{b}^2 + {a}^2"
        )));
    }
    Ok(out)
}

/// `d^2 = a^2 + (2b)^2` with `a` odd: returns `(x1, y1)` with `a = x1^2 - y1^2`, `b = x1 y1`.
pub fn pythagorean_substitution(
    a: &ExactInt,
    b: &ExactInt,
    d: &ExactInt,
) -> Result<(ExactInt, ExactInt), DescentError> {
    const STEP: &str = "pythagorean-substitution";
    let contract = |detail: String| DescentError::Contract { step: STEP, detail };
    let two_b = int(2) * b;
    if !gcd(a, &two_b).is_one() || a.is_even() {
        return Err(contract(format!(
            "({a}, 2*{b}) is not a primitive odd/even leg pair"
        )));
    }
    let (x1, y1) =
        signed_pythagorean_generators(a, &two_b, d).map_err(|e| contract(e.to_string()))?;
    if &(&x1 * &x1 - &y1 * &y1) != a || &(&x1 * &y1) != b {
        return Err(contract(format!(
            "generators ({x1}, {y1}) do not reproduce a = {a}, b = {b}"
        )));
    }
    Ok((x1, y1))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch {
    XEven,
    XOdd,
}

fn branch_preconditions(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
    branch: Branch,
) -> Result<(), DescentError> {
    let step = match branch {
        Branch::XEven => "even-branch-precondition",
        Branch::XOdd => "odd-branch-precondition",
    };
    require(
        step,
        x.is_positive() && y.is_positive() && z.is_positive(),
        || format!("({x}, {y}, {z}) must be positive"),
    )?;
    require(step, z * z == eval_form(&lifted(), x, y), || {
        format!("{z}^2 != x^4 + 10x^2y^2 + 9y^4 at ({x}, {y})")
    })?;
    require(step, gcd(x, y).is_one(), || format!("gcd({x}, {y}) != 1"))?;
    require(step, (y % int(3)).is_zero(), || {
        format!("3 does not divide y = {y}")
    })?;
    let parity_ok = match branch {
        Branch::XEven => x.is_even() && y.is_odd(),
        Branch::XOdd => x.is_odd() && y.is_even(),
    };
    require(step, parity_ok, || {
        format!("parity of ({x}, {y}) does not match this branch")
    })
}

/// Steps shared by both branches, up to the split into `c^2 = a^2 + 3b^2`
/// and `d^2 = a^2 + 4b^2`. Returns `(a, b, c, d)`.
fn common_chain(
    t: &mut Tracer,
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
    branch: Branch,
) -> Result<[ExactInt; 4], DescentError> {
    let claim = coprimality_claim_check(x, y)?;
    t.check(
        "coprimality-claim",
        claim.gcd.is_one(),
        vec![("r", claim.gcd.clone())],
        String::new,
    )?;

    let odd_leg = x * x - int(3) * y * y;
    let even_leg = int(4) * x * y;
    let (m, n) = signed_pythagorean_generators(&odd_leg, &even_leg, z).map_err(|e| {
        DescentError::Contract {
            step: "pythagorean-decomposition",
            detail: e.to_string(),
        }
    })?;
    t.check(
        "pythagorean-decomposition",
        &m * &m - &n * &n == odd_leg
            && int(2) * &m * &n == even_leg
            && &m * &m + &n * &n == *z
            && gcd(&m, &n).is_one(),
        vec![("m", m.clone()), ("n", n.clone())],
        || format!("({m}, {n}) does not reproduce ({odd_leg}, {even_leg}, {z})"),
    )?;

    t.check(
        "generator-parity",
        odd_leg.mod_floor(&int(4)).is_one() && m.is_odd() && n.is_even(),
        vec![("m", m.clone()), ("n", n.clone())],
        || format!("x^2 - 3y^2 = {odd_leg} with m = {m}, n = {n}: expected 1 mod 4, m odd, n even"),
    )?;
    let n1 = &n / int(2);

    let split = four_split(x, y, &m, &n1).map_err(|e| DescentError::Contract {
        step: "four-split",
        detail: e.to_string(),
    })?;
    let (a, b, c, d) = (
        split.a.clone(),
        split.b.clone(),
        split.c.clone(),
        split.d.clone(),
    );
    let (rx, ry, rm, rn1) = split.reconstruct();
    t.check(
        "four-split",
        rx == *x && ry == *y && rm == m && rn1 == n1 && split.pairwise_coprime(),
        vec![
            ("n1", n1.clone()),
            ("a", a.clone()),
            ("b", b.clone()),
            ("c", c.clone()),
            ("d", d.clone()),
        ],
        || format!("split ({a}, {b}, {c}, {d}) of x*y = m*n1 is not a coprime reconstruction"),
    )?;

    // m = ad is odd in both branches, so a and d are odd; y = bd and x = ac fix b and c.
    let parity_ok = match branch {
        Branch::XEven => a.is_odd() && d.is_odd() && b.is_odd() && c.is_even(),
        Branch::XOdd => a.is_odd() && d.is_odd() && c.is_odd() && b.is_even(),
    };
    t.check("branch-parity", parity_ok, vec![], || {
        format!("parities of (a, b, c, d) = ({a}, {b}, {c}, {d}) do not match the branch")
    })?;

    let (a2, b2) = (&a * &a, &b * &b);
    let four = &a2 + int(4) * &b2;
    let three = &a2 + int(3) * &b2;
    t.check(
        "quotient-identity",
        &four * &c * &c == &three * &d * &d,
        vec![
            ("a2_plus_4b2", four.clone()),
            ("a2_plus_3b2", three.clone()),
        ],
        || format!("({four})*{c}^2 != ({three})*{d}^2"),
    )?;

    let r = gcd(&four, &three);
    t.check(
        "gcd-quotient-coprime",
        r.is_one() && (&b2 % &r).is_zero() && (&a2 % &r).is_zero(),
        vec![("r", r.clone())],
        || format!("gcd(a^2 + 4b^2, a^2 + 3b^2) = {r}"),
    )?;

    t.check(
        "square-split",
        &c * &c == three && &d * &d == four,
        vec![("c", c.clone()), ("d", d.clone())],
        || {
            format!(
                "c^2 = {} vs a^2 + 3b^2 = {three}; d^2 = {} vs a^2 + 4b^2 = {four}",
                &c * &c,
                &d * &d
            )
        },
    )?;
    Ok([a, b, c, d])
}

fn even_chain(x: &ExactInt, y: &ExactInt, z: &ExactInt) -> Result<DescentTrace, DescentError> {
    let mut t = Tracer::default();
    let [a, b, c, d] = common_chain(&mut t, x, y, z, Branch::XEven)?;

    let three_b = int(3) * &b;
    let candidates = conic_step(&a, &b, &c)?;
    let two_d = int(2) * &d;
    let measure_before = x * y;
    let mut last_err = None;
    for (x1, y1) in candidates {
        let mut attempt = Tracer {
            steps: t.steps.clone(),
        };
        let res = (|| {
            let diff = &x1 * &x1 - int(3) * &y1 * &y1;
            attempt.check(
                "conic-parametrization",
                three_b.is_odd()
                    && (int(2) * &a == diff || int(2) * &a == -&diff)
                    && &x1 * &y1 == b,
                vec![("x1", x1.clone()), ("y1", y1.clone())],
                || format!("({x1}, {y1}) does not parametrize {c}^2 = {a}^2 + 3*{b}^2"),
            )?;
            // The descended value is (2d)^2, not d^2.
            let value = eval_form(&lifted(), &x1, &y1);
            attempt.check(
                "descended-solution",
                &two_d * &two_d == value,
                vec![
                    ("d", d.clone()),
                    ("two_d", two_d.clone()),
                    ("x1", x1.clone()),
                    ("y1", y1.clone()),
                ],
                || {
                    format!(
                        "(2d)^2 = {} but x1^4 + 10x1^2y1^2 + 9y1^4 = {value}",
                        &two_d * &two_d
                    )
                },
            )?;
            let measure_after = &x1 * &y1;
            attempt.check(
                "measure-decrease",
                measure_after < measure_before,
                vec![
                    ("measure_before", measure_before.clone()),
                    ("measure_after", measure_after.clone()),
                ],
                || format!("x1*y1 = {measure_after} is not below x*y = {measure_before}"),
            )?;
            Ok::<_, DescentError>(measure_after)
        })();
        match res {
            Ok(measure_after) => {
                return Ok(DescentTrace {
                    input: Solution::new(x.clone(), y.clone(), z.clone()),
                    steps: attempt.steps,
                    output: DescentOutput::Descended(Solution::new(x1, y1, two_d)),
                    measure_before,
                    measure_after,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("conic_step returns at least one candidate"))
}

fn odd_chain(x: &ExactInt, y: &ExactInt, z: &ExactInt) -> Result<DescentTrace, DescentError> {
    let mut t = Tracer::default();
    let [a, b, c, d] = common_chain(&mut t, x, y, z, Branch::XOdd)?;
    let (x1, y1) = pythagorean_substitution(&a, &b, &d)?;
    t.check(
        "pythagorean-substitution",
        true,
        vec![("x1", x1.clone()), ("y1", y1.clone())],
        String::new,
    )?;
    let target = eval_form(&QuarticForm::new(1, 1, 1), &x1, &y1);
    let via_sub = (&x1 * &x1 - &y1 * &y1).pow(2u32) + int(3) * (&x1 * &y1).pow(2u32);
    t.check(
        "odd-branch-target",
        &c * &c == target && via_sub == target,
        vec![("x1", x1.clone()), ("y1", y1.clone()), ("c", c.clone())],
        || format!("c^2 = {} but x1^4 + x1^2y1^2 + y1^4 = {target}", &c * &c),
    )?;
    Ok(DescentTrace {
        input: Solution::new(x.clone(), y.clone(), z.clone()),
        steps: t.steps,
        measure_before: x * y,
        measure_after: &x1 * &y1,
        output: DescentOutput::OddBranchTarget { x1, y1, c },
    })
}

/// Case 1 with `x` even, `y` odd: produces a solution with a smaller `xy`.
pub fn descend_even_branch(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
) -> Result<DescentTrace, DescentError> {
    branch_preconditions(x, y, z, Branch::XEven)?;
    even_chain(x, y, z)
}

/// Case 1 with `x` odd, `y` even: produces `(x1, y1, c)` with `c^2 = x1^4 + x1^2 y1^2 + y1^4`.
pub fn branch_odd_case(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
) -> Result<DescentTrace, DescentError> {
    branch_preconditions(x, y, z, Branch::XOdd)?;
    odd_chain(x, y, z)
}

/// Solutions of the lifted form in `[1, bound]^2` that would enter either Case 1 branch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchInputs {
    pub even_branch: Vec<Solution>,
    pub odd_branch: Vec<Solution>,
    pub pairs_examined: u64,
}

pub fn branch_inputs(bound: u64, exec: Execution) -> Result<BranchInputs, SearchError> {
    let opts = SearchOptions {
        execution: exec,
        ..SearchOptions::default()
    }
    .unsieved();
    let cert = search(&lifted(), &bound.into(), &opts)?;
    let mut out = BranchInputs {
        pairs_examined: cert.pairs_scanned + cert.pairs_sieved_out,
        ..Default::default()
    };
    for s in cert.solutions_found {
        if !(&s.y % int(3)).is_zero() {
            continue;
        }
        if s.x.is_even() && s.y.is_odd() {
            out.even_branch.push(s);
        } else if s.x.is_odd() && s.y.is_even() {
            out.odd_branch.push(s);
        }
    }
    Ok(out)
}

/// Polynomial identities behind the proof steps, evaluated exactly.
pub mod identities {
    use super::*;

    /// `P^2 + 10P(ab)^2 + 9(ab)^4 = (4a^4 - b^4)^2` with `P = 4a^4 - 5a^2b^2 + b^4`.
    pub fn lift(alpha: &ExactInt, beta: &ExactInt) -> bool {
        let p = eval_form(&QuarticForm::isosceles(), alpha, beta);
        let ab2 = (alpha * beta).pow(2u32);
        &p * &p + int(10) * &p * &ab2 + int(9) * &ab2 * &ab2
            == (int(4) * alpha.pow(4u32) - beta.pow(4u32)).pow(2u32)
    }

    /// `form(3x1, y) = 9 form(y, x1)` on the lifted form.
    pub fn case2_scaling(x1: &ExactInt, y: &ExactInt) -> bool {
        eval_form(&lifted(), &(int(3) * x1), y) == int(9) * eval_form(&lifted(), y, x1)
    }

    /// `gcd(a^2 + 4b^2, a^2 + 3b^2) = 1` for coprime `(a, b)`.
    pub fn gcd_quotient_coprime(a: &ExactInt, b: &ExactInt) -> bool {
        if !gcd(a, b).is_one() {
            return true;
        }
        let (a2, b2) = (a * a, b * b);
        gcd(&(&a2 + int(4) * &b2), &(&a2 + int(3) * &b2)).is_one()
    }

    /// `(x^2 - 3y^2)^2 + (4xy)^2 = x^4 + 10x^2y^2 + 9y^4`.
    pub fn decomposition(x: &ExactInt, y: &ExactInt) -> bool {
        (x * x - int(3) * y * y).pow(2u32) + (int(4) * x * y).pow(2u32)
            == eval_form(&lifted(), x, y)
    }

    /// `(x1^2 - y1^2)^2 + 3(x1 y1)^2 = x1^4 + x1^2 y1^2 + y1^4`.
    pub fn odd_branch(x1: &ExactInt, y1: &ExactInt) -> bool {
        (x1 * x1 - y1 * y1).pow(2u32) + int(3) * (x1 * y1).pow(2u32)
            == eval_form(&QuarticForm::new(1, 1, 1), x1, y1)
    }
}
