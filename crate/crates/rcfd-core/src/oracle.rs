//! Existence oracle: decide whether I_k(m, n, q, t) exists, returning a
//! replayable construction plan, a nonexistence citation, or an honest
//! Unknown.
//!
//! A plan is a linear list of named operations; step i may reference the
//! outputs of earlier steps. Executing a plan materializes and verifies
//! the design, so every Exists verdict is backed by a checkable artifact.

use crate::array::{AdmissibilityVerdict, AdmissibilityViolation, DesignSpec, RcDesign};
use crate::combinators::{blowup, glue, kron, project, Axis, Mode};
use crate::error::{Error, Result};
use crate::fixtures::{base_fixture, FixtureName};
use crate::hadamard::{builtin, double_oa, oa2_from_hadamard};
use crate::linear::AbelianWitness;
use crate::strength2::{
    construct_from_witness, construct_prime_power, find_witness, rearrange_cosets,
};
use crate::strength3::construct_strength3;
use crate::util::{for_each_combination, two_adic};
use std::collections::HashMap;
use std::fmt;

/// Existence status of a parameter tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exists,
    NotExists,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exists => "Exists",
            Status::NotExists => "NotExists",
            Status::Unknown => "Unknown",
        })
    }
}

/// One operation of a construction plan. References are indices of
/// earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// An embedded base design.
    Fixture(FixtureName),
    /// The prime-power grid construction I_k(q^M, q^N, q, 2), M <= N.
    PrimePowerGrid {
        k: usize,
        big_m: usize,
        big_n: usize,
        q: usize,
    },
    /// The binary strength-3 grid I_k(2^M, 2^N, 2, 3), M <= N.
    Strength3Grid {
        k: usize,
        big_m: usize,
        big_n: usize,
    },
    /// Witness search over k columns of the array derived from a builtin
    /// Hadamard matrix, then the abelian construction: I_k(4m, 2^(k-2)).
    WitnessDesign {
        builtin: String,
        k: usize,
    },
    /// Doubling chain plus the coset rearrangement:
    /// I_{k+alpha}(2^alpha * b, 2^k, 2, 2).
    CosetRearrangement {
        builtin: String,
        doublings: usize,
        alpha: usize,
        k: usize,
    },
    Glue {
        a: usize,
        b: usize,
        axis: Axis,
    },
    Kron {
        a: usize,
        b: usize,
    },
    Blowup {
        src: usize,
        rows: usize,
        cols: usize,
    },
    Project {
        src: usize,
        k: usize,
    },
    Transpose {
        src: usize,
    },
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanStep::Fixture(name) => write!(f, "fixture {name}"),
            PlanStep::PrimePowerGrid { k, big_m, big_n, q } => {
                write!(f, "prime-power-grid k={k} M={big_m} N={big_n} q={q}")
            }
            PlanStep::Strength3Grid { k, big_m, big_n } => {
                write!(f, "strength3-grid k={k} M={big_m} N={big_n}")
            }
            PlanStep::WitnessDesign { builtin, k } => {
                write!(f, "witness-design {builtin} k={k}")
            }
            PlanStep::CosetRearrangement {
                builtin,
                doublings,
                alpha,
                k,
            } => write!(
                f,
                "coset-rearrangement {builtin} doublings={doublings} alpha={alpha} k={k}"
            ),
            PlanStep::Glue { a, b, axis } => write!(
                f,
                "glue %{a} %{b} along {}",
                if *axis == Axis::Rows {
                    "rows"
                } else {
                    "columns"
                }
            ),
            PlanStep::Kron { a, b } => write!(f, "kron %{a} %{b}"),
            PlanStep::Blowup { src, rows, cols } => {
                write!(f, "blowup %{src} rows={rows} cols={cols}")
            }
            PlanStep::Project { src, k } => write!(f, "project %{src} k={k}"),
            PlanStep::Transpose { src } => write!(f, "transpose %{src}"),
        }
    }
}

/// A replayable construction plan; the last step yields the design.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "%{i} = {s}")?;
        }
        Ok(())
    }
}

/// Oracle verdict with the citation naming the deciding result.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub spec: DesignSpec,
    pub status: Status,
    pub citation: String,
    pub reason: String,
    pub plan: Option<Plan>,
}

impl Verdict {
    /// Text report; plans are listed step by step.
    pub fn report(&self) -> String {
        let mut out = format!(
            "{}: {}\ncitation: {}\nreason: {}\n",
            self.spec, self.status, self.citation, self.reason
        );
        if let Some(plan) = &self.plan {
            out.push_str("plan:\n");
            out.push_str(&plan.to_string());
        }
        out
    }
}

/// A materialized plan: the verified design plus the abelian witness when
/// the final construction carries one.
#[derive(Clone, Debug)]
pub struct Executed {
    pub design: RcDesign,
    pub witness: Option<AbelianWitness>,
}

// ---------------------------------------------------------------------------
// Plan trees (internal): recursive structure flattened into step lists
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Tree {
    Fixture(FixtureName),
    PrimePower {
        k: usize,
        big_m: usize,
        big_n: usize,
        q: usize,
    },
    Strength3 {
        k: usize,
        big_m: usize,
        big_n: usize,
    },
    Witness {
        name: &'static str,
        k: usize,
    },
    Coset {
        name: &'static str,
        doublings: usize,
        alpha: usize,
        k: usize,
    },
    Glue(Box<Tree>, Box<Tree>, Axis),
    Kron(Box<Tree>, Box<Tree>),
    Blowup(Box<Tree>, usize, usize),
    Project(Box<Tree>, usize),
    Transpose(Box<Tree>),
}

impl Tree {
    fn blow(self, rows: usize, cols: usize) -> Tree {
        if rows == 1 && cols == 1 {
            self
        } else {
            Tree::Blowup(Box::new(self), rows, cols)
        }
    }

    fn flatten(&self, steps: &mut Vec<PlanStep>) -> usize {
        let step = match self {
            Tree::Fixture(name) => PlanStep::Fixture(*name),
            Tree::PrimePower { k, big_m, big_n, q } => PlanStep::PrimePowerGrid {
                k: *k,
                big_m: *big_m,
                big_n: *big_n,
                q: *q,
            },
            Tree::Strength3 { k, big_m, big_n } => PlanStep::Strength3Grid {
                k: *k,
                big_m: *big_m,
                big_n: *big_n,
            },
            Tree::Witness { name, k } => PlanStep::WitnessDesign {
                builtin: name.to_string(),
                k: *k,
            },
            Tree::Coset {
                name,
                doublings,
                alpha,
                k,
            } => PlanStep::CosetRearrangement {
                builtin: name.to_string(),
                doublings: *doublings,
                alpha: *alpha,
                k: *k,
            },
            Tree::Glue(a, b, axis) => {
                let ia = a.flatten(steps);
                let ib = b.flatten(steps);
                PlanStep::Glue {
                    a: ia,
                    b: ib,
                    axis: *axis,
                }
            }
            Tree::Kron(a, b) => {
                let ia = a.flatten(steps);
                let ib = b.flatten(steps);
                PlanStep::Kron { a: ia, b: ib }
            }
            Tree::Blowup(src, r, c) => {
                let i = src.flatten(steps);
                PlanStep::Blowup {
                    src: i,
                    rows: *r,
                    cols: *c,
                }
            }
            Tree::Project(src, k) => {
                let i = src.flatten(steps);
                PlanStep::Project { src: i, k: *k }
            }
            Tree::Transpose(src) => {
                let i = src.flatten(steps);
                PlanStep::Transpose { src: i }
            }
        };
        steps.push(step);
        steps.len() - 1
    }

    fn into_plan(self) -> Plan {
        let mut steps = Vec::new();
        self.flatten(&mut steps);
        Plan { steps }
    }
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// Materialize a plan, verifying every step. Any failure is a bug in the
/// planner and surfaces as [`Error::PlanStepFailed`].
pub fn execute(plan: &Plan) -> Result<Executed> {
    execute_with_mode(plan, Mode::Checked)
}

/// [`execute`] with an explicit verification mode.
pub fn execute_with_mode(plan: &Plan, mode: Mode) -> Result<Executed> {
    let mut artifacts: Vec<RcDesign> = Vec::with_capacity(plan.steps.len());
    let mut witness: Option<AbelianWitness> = None;
    for (i, step) in plan.steps.iter().enumerate() {
        let fail = |e: Error| Error::PlanStepFailed {
            step: i,
            reason: e.to_string(),
        };
        let fetch = |idx: usize| -> Result<&RcDesign> {
            artifacts.get(idx).ok_or(Error::PlanStepFailed {
                step: i,
                reason: format!("reference %{idx} is not an earlier step"),
            })
        };
        let out = match step {
            PlanStep::Fixture(name) => base_fixture(*name).map_err(fail)?,
            PlanStep::PrimePowerGrid { k, big_m, big_n, q } => {
                construct_prime_power(*k, *big_m, *big_n, *q, mode).map_err(fail)?
            }
            PlanStep::Strength3Grid { k, big_m, big_n } => {
                construct_strength3(*k, *big_m, *big_n, mode).map_err(fail)?
            }
            PlanStep::WitnessDesign { builtin: name, k } => {
                let (d, w) = witness_design(name, *k, mode).map_err(fail)?;
                witness = Some(w);
                d
            }
            PlanStep::CosetRearrangement {
                builtin: name,
                doublings,
                alpha,
                k,
            } => coset_design(name, *doublings, *alpha, *k, mode).map_err(fail)?,
            PlanStep::Glue { a, b, axis } => {
                let (da, db) = (fetch(*a)?.clone(), fetch(*b)?);
                glue(&da, db, *axis, mode).map_err(fail)?
            }
            PlanStep::Kron { a, b } => {
                let (da, db) = (fetch(*a)?.clone(), fetch(*b)?);
                kron(&da, db, mode).map_err(fail)?
            }
            PlanStep::Blowup { src, rows, cols } => {
                blowup(fetch(*src)?, *rows, *cols, mode).map_err(fail)?
            }
            PlanStep::Project { src, k } => project(fetch(*src)?, *k, mode).map_err(fail)?,
            PlanStep::Transpose { src } => fetch(*src)?.transpose(),
        };
        artifacts.push(out);
    }
    let design = artifacts.pop().ok_or(Error::PlanStepFailed {
        step: 0,
        reason: "empty plan".into(),
    })?;
    Ok(Executed { design, witness })
}

/// Search the columns of the builtin-derived strength-2 array for a
/// witness over k columns (first-k columns first, then other subsets) and
/// run the abelian construction.
fn witness_design(name: &str, k: usize, mode: Mode) -> Result<(RcDesign, AbelianWitness)> {
    let oa = oa2_from_hadamard(&builtin(name)?)?;
    let total = oa.degree();
    if k > total {
        return Err(Error::ParametersOutOfRange(format!(
            "k = {k} exceeds the {total} available columns"
        )));
    }
    let mut found = None;
    for_each_combination(total, k, &mut |cols| {
        if found.is_none() {
            let sub = oa.select_columns(cols).expect("valid columns");
            if let Some(w) = find_witness(&sub) {
                found = Some(w);
            }
        }
    });
    let wit = found.ok_or_else(|| {
        Error::NotConstructible(format!("no witness over any {k} columns of {name}"))
    })?;
    construct_from_witness(&wit, mode)
}

/// Double the builtin-derived array the requested number of times, keep
/// the first k columns plus the full-strength tail, and rearrange.
fn coset_design(
    name: &str,
    doublings: usize,
    alpha: usize,
    k: usize,
    mode: Mode,
) -> Result<RcDesign> {
    let mut oa = oa2_from_hadamard(&builtin(name)?)?;
    let mut tail = 2;
    for _ in 0..doublings {
        oa = double_oa(&oa, tail)?;
        tail += 1;
    }
    if tail != alpha {
        return Err(Error::ParametersOutOfRange(format!(
            "doublings {doublings} give tail {tail}, expected alpha = {alpha}"
        )));
    }
    let total = oa.degree();
    if k + alpha > total {
        return Err(Error::ParametersOutOfRange(format!(
            "k + alpha = {} exceeds degree {total}",
            k + alpha
        )));
    }
    let mut cols: Vec<usize> = (0..k).collect();
    cols.extend(total - alpha..total);
    let seed = oa.select_columns(&cols)?;
    rearrange_cosets(&seed, alpha, mode)
}

// ---------------------------------------------------------------------------
// The decision procedure
// ---------------------------------------------------------------------------

fn violation_citation(violations: &[AdmissibilityViolation]) -> &'static str {
    use AdmissibilityViolation as V;
    if violations
        .iter()
        .any(|v| matches!(v, V::DegreeBoundRows | V::DegreeBoundCols))
    {
        "Lemma 1.4"
    } else if violations
        .iter()
        .any(|v| matches!(v, V::BinaryStrength3BoundRows | V::BinaryStrength3BoundCols))
    {
        "Theorem 6.1"
    } else {
        "Lemma 1.1"
    }
}

/// True iff I_k(q^a, q^b, q, 2) exists by the prime-power grid theorem
/// (a <= b assumed): k <= a + b, k <= (q^a - 1)/(q - 1), and the tuple is
/// not the binary 4 x 4 exception with three factors.
pub fn prime_power_grid_exists(k: usize, a: usize, b: usize, q: usize) -> bool {
    debug_assert!(a <= b);
    k >= 2
        && k <= a + b
        && k <= (q.pow(a as u32) - 1) / (q - 1)
        && !(q == 2 && k == 3 && a == 2 && b == 2)
}

/// True iff I_k(2^a, 2^b, 2, 3) exists (a <= b assumed): 3 <= k <=
/// min(a + b, 2^(a-1)), a >= 3, excluding (4, 3, 3) and (8, 4, 4).
pub fn strength3_grid_exists(k: usize, a: usize, b: usize) -> bool {
    debug_assert!(a <= b);
    a >= 3
        && (3..=(a + b).min(1 << (a - 1))).contains(&k)
        && (k, a, b) != (4, 3, 3)
        && (k, a, b) != (8, 4, 4)
}

/// Decide existence. Admissibility first, then the decided families:
/// prime-power grids at strength 2 (optionally scaled by blowup and level
/// products for composite q), the binary 4m-row machinery at strength 2,
/// and the binary power-of-two grids at strength 3. Anything the covered
/// results do not reach is an honest Unknown.
pub fn decide(spec: DesignSpec) -> Result<Verdict> {
    if spec.t < 2 || spec.t > 3 {
        return Err(Error::UnsupportedStrength(spec.t));
    }
    if spec.k == 0 || spec.m == 0 || spec.n == 0 || spec.q < 2 {
        return Err(Error::ParametersOutOfRange(format!(
            "parameters must be positive with q >= 2: {spec}"
        )));
    }
    if let AdmissibilityVerdict::Fails(violations) = spec.admissible() {
        let listed: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Ok(Verdict {
            spec,
            status: Status::NotExists,
            citation: violation_citation(&violations).into(),
            reason: format!("inadmissible: {}", listed.join("; ")),
            plan: None,
        });
    }
    match (spec.q, spec.t) {
        (2, 2) => Ok(decide_binary_t2(spec)),
        (2, 3) => Ok(decide_binary_t3(spec)),
        (q, 2) if is_prime_power(q) => Ok(decide_prime_power_t2(spec)),
        (_, 2) => Ok(decide_composite_t2(spec)),
        (_, 3) => Ok(Verdict {
            spec,
            status: Status::Unknown,
            citation: "-".into(),
            reason: "strength-3 results cover the binary case only".into(),
            plan: None,
        }),
        _ => unreachable!("strength validated above"),
    }
}

fn is_prime_power(q: usize) -> bool {
    let mut p = 2;
    let mut rest = q;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            return rest == 1;
        }
        p += 1;
    }
    q >= 2
}

/// Largest e with q^e | n, together with n / q^e.
fn strip_power(n: usize, q: usize) -> (usize, usize) {
    let mut e = 0;
    let mut rest = n;
    while rest.is_multiple_of(q) {
        rest /= q;
        e += 1;
    }
    (e, rest)
}

fn decide_prime_power_t2(spec: DesignSpec) -> Verdict {
    let (em, cm) = strip_power(spec.m, spec.q);
    let (en, cn) = strip_power(spec.n, spec.q);
    // q^2 | m and q^2 | n hold by admissibility, so em, en >= 2
    let (a, b, swapped) = if em <= en {
        (em, en, false)
    } else {
        (en, em, true)
    };
    let pure = cm == 1 && cn == 1;
    if prime_power_grid_exists(spec.k, a, b, spec.q) {
        let mut tree = Tree::PrimePower {
            k: spec.k,
            big_m: a,
            big_n: b,
            q: spec.q,
        };
        if swapped {
            tree = Tree::Transpose(Box::new(tree));
        }
        tree = tree.blow(cm, cn);
        Verdict {
            spec,
            status: Status::Exists,
            citation: "Theorem 4.1".into(),
            reason: if pure {
                format!(
                    "k = {} within the grid bounds for exponents ({a}, {b})",
                    spec.k
                )
            } else {
                format!("power core ({a}, {b}) exists; odd cofactors ({cm}, {cn}) by blowup")
            },
            plan: Some(tree.into_plan()),
        }
    } else if pure {
        Verdict {
            spec,
            status: Status::NotExists,
            citation: if spec.q == 2 && spec.k == 3 && a == 2 && b == 2 {
                "Lemma 4.3".into()
            } else {
                "Theorem 4.1".into()
            },
            reason: format!(
                "k = {} violates the grid conditions for exponents ({a}, {b})",
                spec.k
            ),
            plan: None,
        }
    } else {
        Verdict {
            spec,
            status: Status::Unknown,
            citation: "Theorem 4.1".into(),
            reason: format!(
                "the power core ({a}, {b}) fails the grid bounds and no other covered \
                 construction applies to cofactors ({cm}, {cn})"
            ),
            plan: None,
        }
    }
}

fn decide_composite_t2(spec: DesignSpec) -> Verdict {
    // q = q_1 * ... * q_r, powers of distinct primes; the level product of
    // per-factor grids handles pure powers of q, scaled by blowup
    let factors = prime_power_factors(spec.q);
    let (em, cm) = strip_power(spec.m, spec.q);
    let (en, cn) = strip_power(spec.n, spec.q);
    if em < 2 || en < 2 {
        return Verdict {
            spec,
            status: Status::Unknown,
            citation: "Corollary 4.2".into(),
            reason: "m and n are not multiples of q^2 with q-power cores".into(),
            plan: None,
        };
    }
    let (a, b, swapped) = if em <= en {
        (em, en, false)
    } else {
        (en, em, true)
    };
    let all_ok = factors
        .iter()
        .all(|&qi| prime_power_grid_exists(spec.k, a, b, qi));
    if !all_ok {
        return Verdict {
            spec,
            status: Status::Unknown,
            citation: "Corollary 4.2".into(),
            reason: "some prime-power factor fails the grid bounds; existence undecided".into(),
            plan: None,
        };
    }
    // level product, ascending factors: q = ((q_1 x q_2) x q_3) ...
    let mut tree = Tree::PrimePower {
        k: spec.k,
        big_m: a,
        big_n: b,
        q: factors[0],
    };
    for &qi in &factors[1..] {
        tree = Tree::Kron(
            Box::new(tree),
            Box::new(Tree::PrimePower {
                k: spec.k,
                big_m: a,
                big_n: b,
                q: qi,
            }),
        );
    }
    if swapped {
        tree = Tree::Transpose(Box::new(tree));
    }
    tree = tree.blow(cm, cn);
    Verdict {
        spec,
        status: Status::Exists,
        citation: "Corollary 4.2".into(),
        reason: format!(
            "level product over prime-power factors {factors:?} at exponents ({a}, {b})"
        ),
        plan: Some(tree.into_plan()),
    }
}

fn prime_power_factors(q: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = q;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut f = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                f *= p;
            }
            out.push(f);
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out.sort_unstable();
    out
}

fn decide_binary_t3(spec: DesignSpec) -> Verdict {
    let (em, cm) = strip_power(spec.m, 2);
    let (en, cn) = strip_power(spec.n, 2);
    let (a, b, swapped) = if em <= en {
        (em, en, false)
    } else {
        (en, em, true)
    };
    let pure = cm == 1 && cn == 1;
    if strength3_grid_exists(spec.k, a, b) {
        let mut tree = Tree::Strength3 {
            k: spec.k,
            big_m: a,
            big_n: b,
        };
        if swapped {
            tree = Tree::Transpose(Box::new(tree));
        }
        tree = tree.blow(cm, cn);
        return Verdict {
            spec,
            status: Status::Exists,
            citation: "Theorem 6.1".into(),
            reason: format!("binary strength-3 grid at exponents ({a}, {b})"),
            plan: Some(tree.into_plan()),
        };
    }
    if pure {
        let citation = if (spec.k, a, b) == (4, 3, 3) || (spec.k, a, b) == (8, 4, 4) {
            "Corollary 6.4"
        } else {
            "Theorem 6.1"
        };
        return Verdict {
            spec,
            status: Status::NotExists,
            citation: citation.into(),
            reason: format!(
                "(k, M, N) = ({}, {a}, {b}) violates the strength-3 classification",
                spec.k
            ),
            plan: None,
        };
    }
    Verdict {
        spec,
        status: Status::Unknown,
        citation: "Theorem 6.1".into(),
        reason: format!(
            "the power core ({a}, {b}) fails the classification; odd cofactors \
             ({cm}, {cn}) leave existence undecided"
        ),
        plan: None,
    }
}

// ---------------------------------------------------------------------------
// Binary strength 2
// ---------------------------------------------------------------------------

/// The two known nonexistence families beyond admissibility: k = 3 with
/// one side exactly 4 and the other 4 times an odd number.
fn binary_t2_exception(k: usize, m: usize, n: usize) -> bool {
    let odd_quad = |x: usize| x % 8 == 4;
    k == 3 && ((n == 4 && odd_quad(m)) || (m == 4 && odd_quad(n)))
}

fn decide_binary_t2(spec: DesignSpec) -> Verdict {
    if binary_t2_exception(spec.k, spec.m, spec.n) {
        return Verdict {
            spec,
            status: Status::NotExists,
            citation: "Lemma 4.3".into(),
            reason: "a 4-column (or 4-row) side with three factors needs the other \
                     side divisible by 8"
                .into(),
            plan: None,
        };
    }
    let mut planner = Planner::default();
    match planner.plan(spec.k, spec.m, spec.n) {
        Some((tree, citation)) => Verdict {
            spec,
            status: Status::Exists,
            citation: citation.into(),
            reason: "constructive route found".into(),
            plan: Some(tree.into_plan()),
        },
        None => {
            let (_, bm) = two_adic(spec.m);
            let (_, bn) = two_adic(spec.n);
            let conjectural = (bm % 2 == 1 && bm >= 7) || (bn % 2 == 1 && bn >= 7);
            Verdict {
                spec,
                status: Status::Unknown,
                citation: if conjectural { "Conjecture 5.2" } else { "-" }.into(),
                reason: if conjectural {
                    "existence would follow from a witness on a Hadamard matrix of \
                     this order; none is embedded"
                        .into()
                } else {
                    "no covered construction reaches these parameters".into()
                },
                plan: None,
            }
        }
    }
}

/// Recursive planner for binary strength-2 targets. Routes, in preference
/// order: embedded fixtures (with projection/transpose/blowup), the
/// prime-power grid on the 2-power cores, row/column gluing over the piece
/// sizes {12, 8, 16, 20}, the witness construction on the embedded
/// Hadamard matrices, and the doubling/coset rearrangement.
type Routed = Option<(Tree, &'static str)>;

#[derive(Default)]
struct Planner {
    memo: HashMap<(usize, usize, usize), Routed>,
}

const GLUE_PIECES: [usize; 4] = [12, 8, 16, 20];

impl Planner {
    fn plan(&mut self, k: usize, m: usize, n: usize) -> Routed {
        let key = (k, m, n);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let spec = DesignSpec::new(k, m, n, 2, 2);
        let result = if !spec.admissible().is_admissible() || binary_t2_exception(k, m, n) {
            None
        } else {
            self.plan_admissible(k, m, n)
        };
        self.memo.insert(key, result.clone());
        result
    }

    fn plan_admissible(&mut self, k: usize, m: usize, n: usize) -> Routed {
        if let Some(t) = fixture_route(k, m, n) {
            return Some((t, "Theorem 5.12"));
        }
        if let Some(t) = core_route(k, m, n) {
            return Some((t, "Theorem 4.1"));
        }
        // gluing along rows, then along columns
        for &r in &GLUE_PIECES {
            if r < m && m - r >= 4 {
                if let (Some((a, _)), Some((b, _))) = (self.plan(k, r, n), self.plan(k, m - r, n)) {
                    return Some((
                        Tree::Glue(Box::new(a), Box::new(b), Axis::Rows),
                        "Theorem 5.12",
                    ));
                }
            }
        }
        for &c in &GLUE_PIECES {
            if c < n && n - c >= 4 {
                if let (Some((a, _)), Some((b, _))) = (self.plan(k, m, c), self.plan(k, m, n - c)) {
                    return Some((
                        Tree::Glue(Box::new(a), Box::new(b), Axis::Columns),
                        "Theorem 5.12",
                    ));
                }
            }
        }
        if let Some(t) = witness_route(k, m, n) {
            return Some((t, "Theorem 5.1"));
        }
        if let Some(t) = coset_route(k, m, n) {
            return Some((t, "Theorem 5.10"));
        }
        None
    }
}

/// Builtin Hadamard matrix covering 4 * b, for odd b.
fn builtin_for_odd(b: usize) -> Option<&'static str> {
    match b {
        1 => Some("sylvester-4"),
        3 => Some("had.12"),
        5 => Some("had.20.toncheviv"),
        _ => None,
    }
}

fn fixture_route(k: usize, m: usize, n: usize) -> Option<Tree> {
    for name in FixtureName::all() {
        let (kf, mf, nf) = name.params();
        if k > kf {
            continue;
        }
        for (rows, cols, transposed) in [(mf, nf, false), (nf, mf, true)] {
            if !m.is_multiple_of(rows) || !n.is_multiple_of(cols) {
                continue;
            }
            // avoid silently blowing up square fixtures twice
            let mut tree = Tree::Fixture(name);
            if k < kf {
                tree = Tree::Project(Box::new(tree), k);
            }
            if transposed {
                tree = Tree::Transpose(Box::new(tree));
            }
            return Some(tree.blow(m / rows, n / cols));
        }
    }
    None
}

fn core_route(k: usize, m: usize, n: usize) -> Option<Tree> {
    let (em, cm) = {
        let (e, c) = two_adic(m);
        (e as usize, c)
    };
    let (en, cn) = {
        let (e, c) = two_adic(n);
        (e as usize, c)
    };
    let (a, b, swapped) = if em <= en {
        (em, en, false)
    } else {
        (en, em, true)
    };
    if a < 2 || !prime_power_grid_exists(k, a, b, 2) {
        return None;
    }
    let mut tree = Tree::PrimePower {
        k,
        big_m: a,
        big_n: b,
        q: 2,
    };
    if swapped {
        tree = Tree::Transpose(Box::new(tree));
    }
    Some(tree.blow(cm, cn))
}

fn witness_route(k: usize, m: usize, n: usize) -> Option<Tree> {
    if k < 8 {
        return None;
    }
    // rows side: I_k(m, 2^(k-2)) blown up along columns
    let direct = |rows: usize, cols: usize| -> Option<Tree> {
        let name = match rows {
            12 => "had.12",
            20 => "had.20.toncheviv",
            _ => return None,
        };
        if k > rows - 1 {
            return None;
        }
        let base_cols = 1usize << (k - 2);
        if !cols.is_multiple_of(base_cols) {
            return None;
        }
        Some(Tree::Witness { name, k }.blow(1, cols / base_cols))
    };
    if let Some(t) = direct(m, n) {
        return Some(t);
    }
    direct(n, m).map(|t| Tree::Transpose(Box::new(t)))
}

fn coset_route(k: usize, m: usize, n: usize) -> Option<Tree> {
    let attempt = |rows: usize, cols: usize| -> Option<Tree> {
        let (alpha32, b) = two_adic(rows);
        let alpha = alpha32 as usize;
        if alpha < 2 || b == 1 {
            return None;
        }
        let name = builtin_for_odd(b)?;
        let k_inner = k.checked_sub(alpha)?;
        if k_inner < (1usize << alpha) + alpha + 1 {
            return None;
        }
        // the doubled array must still have k_inner + alpha columns
        if k_inner + alpha > rows - 1 {
            return None;
        }
        let base_cols = 1usize << k_inner;
        if !cols.is_multiple_of(base_cols) || k_inner > 22 {
            return None;
        }
        Some(
            Tree::Coset {
                name,
                doublings: alpha - 2,
                alpha,
                k: k_inner,
            }
            .blow(1, cols / base_cols),
        )
    };
    if let Some(t) = attempt(m, n) {
        return Some(t);
    }
    attempt(n, m).map(|t| Tree::Transpose(Box::new(t)))
}
