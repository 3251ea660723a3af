//! End-to-end verification: zero exclusion, both endpoint conditions and the
//! selected non-resonance condition, assembled into a [`Certificate`].

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::rational::fmt_rational;
use crate::algebra::{Rational, RationalInterval, UniPoly};
use crate::degree::{crossing_identity_check, find_resonances, track_roots, AxisEvent, CrossingReport, Resonance, SelectorPath, Sliding};
use crate::descartes::{check_r5ppp, DescartesOutcome};
use crate::error::{Error, Result};
use crate::family::IntervalFamily;
use crate::regions::{certify_r5p, certify_r5pp, fr_extent, validate_disks, BnbVerdict, FrShape, PolygonDisk, DEFAULT_DEPTH_LIMIT};
use crate::stability::{check_r2, q_unstable_certify, QOutcome, R2Outcome};

pub const FORMAT: &str = "hopf-cert/1";
const ASSUMED: &str = "assumed (user-declared)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum R5Mode {
    Disks(Vec<PolygonDisk>),
    NonResonance { j_max: Option<usize> },
    Descartes { q: UniPoly, r: UniPoly },
}

impl R5Mode {
    pub fn condition(&self) -> &'static str {
        match self {
            R5Mode::Disks(_) => "R5'",
            R5Mode::NonResonance { .. } => "R5''",
            R5Mode::Descartes { .. } => "R5'''",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub depth_limit: usize,
    /// Alpha samples for root tracking.
    pub grid_size: usize,
    /// Largest frequency ratio searched for resonances.
    pub max_ratio: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            depth_limit: DEFAULT_DEPTH_LIMIT,
            grid_size: 241,
            max_ratio: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: String,
    pub family: IntervalFamily,
    pub rep_minus: UniPoly,
    pub rep_plus: UniPoly,
    /// Optional representative over the whole range, for the validators.
    pub selector: Option<SelectorPath>,
    pub r5: R5Mode,
    pub nonlinearity: String,
    pub limits: Limits,
}

impl ProblemSpec {
    /// Every violated invariant, or `Ok`.
    pub fn validate(&self) -> Result<()> {
        let fam = &self.family;
        let mut bad = Vec::new();
        for (name, rep, alpha) in [
            ("rep_minus", &self.rep_minus, fam.alpha_minus()),
            ("rep_plus", &self.rep_plus, fam.alpha_plus()),
        ] {
            match fam.instantiate(alpha) {
                Ok(s) if s.contains(rep) => {}
                Ok(_) => bad.push(format!("{name} {rep} is not a member at alpha = {}", fmt_rational(alpha))),
                Err(e) => bad.push(e.to_string()),
            }
        }
        if let Some(sel) = &self.selector {
            if let Err(e) = fam.check_selector(sel.coeffs()) {
                bad.push(format!("selector: {e}"));
            }
            if sel.alpha_range() != fam.alpha_range() {
                bad.push("selector alpha range differs from the family".into());
            }
        }
        match &self.r5 {
            R5Mode::Disks(d) => {
                if d.is_empty() {
                    bad.push("disk mode needs at least one disk".into());
                } else if let Err(e) = validate_disks(fam, d) {
                    bad.push(e.to_string());
                }
            }
            R5Mode::NonResonance { j_max: Some(0 | 1) } => bad.push("j_max must be at least 2".into()),
            R5Mode::NonResonance { .. } => {}
            R5Mode::Descartes { q, r } => {
                if q.is_zero() && r.is_zero() {
                    bad.push("Q and R must not both vanish".into());
                }
            }
        }
        if self.limits.grid_size < 2 {
            bad.push("grid_size must be at least 2".into());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidProblem(bad))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// Process exit code for an overall verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub condition: String,
    pub verdict: Verdict,
    pub evidence: Value,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assumption {
    pub condition: &'static str,
    pub status: &'static str,
    pub declaration: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffSummary {
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub degree: usize,
    pub alpha_range: RationalInterval,
    pub coefficients: Vec<CoeffSummary>,
}

impl FamilySummary {
    pub fn of(fam: &IntervalFamily) -> Self {
        Self {
            degree: fam.degree(),
            alpha_range: fam.alpha_range().clone(),
            coefficients: fam
                .coeffs()
                .iter()
                .map(|c| CoeffSummary {
                    lo: c.lo.to_expr_string("a"),
                    hi: c.hi.to_expr_string("a"),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSummary {
    pub grid_size: usize,
    pub events: Vec<AxisEvent>,
    pub sliding: Vec<Sliding>,
    pub resonances: Vec<Resonance>,
}

/// Floating-point evidence on the selector. Never affects a verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Validators {
    pub normative: bool,
    pub selector: String,
    pub disks: Vec<PolygonDisk>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<CrossingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing_error: Option<String>,
    pub roots: RootSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub format: &'static str,
    pub problem: String,
    pub family: FamilySummary,
    pub assumptions: Vec<Assumption>,
    pub conditions: Vec<ConditionEntry>,
    pub q1: Option<usize>,
    pub q2: Option<usize>,
    pub overall: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validators: Option<Validators>,
}

impl Certificate {
    pub fn entry(&self, condition: &str) -> Option<&ConditionEntry> {
        self.conditions.iter().find(|c| c.condition == condition)
    }

    /// Drops every wall-time field so runs can be compared byte for byte.
    pub fn strip_timing(&mut self) {
        for c in &mut self.conditions {
            c.wall_time_ms = None;
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        self.overall.exit_code()
    }

    /// Short human-readable report.
    pub fn summary(&self) -> String {
        let mut out = format!("problem: {}\n", self.problem);
        for c in &self.conditions {
            out.push_str(&format!("  {:<6} {:?}\n", c.condition, c.verdict));
        }
        if let (Some(q1), Some(q2)) = (self.q1, self.q2) {
            out.push_str(&format!("  q1 = {q1}, q2 = {q2}\n"));
        }
        for a in &self.assumptions {
            out.push_str(&format!("  {:<6} {}\n", a.condition, a.status));
        }
        out.push_str(&format!("overall: {:?}\n", self.overall));
        out
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1e3)
}

fn entry(condition: &str, verdict: Verdict, evidence: Value, parameters: Value, ms: f64) -> ConditionEntry {
    ConditionEntry {
        condition: condition.into(),
        verdict,
        evidence,
        parameters,
        wall_time_ms: Some(ms),
    }
}

fn r2_entry(fam: &IntervalFamily) -> ConditionEntry {
    let (out, ms) = timed(|| check_r2(fam));
    let j0 = &fam.coeffs()[0];
    let params = json!({ "lo": j0.lo.to_expr_string("a"), "hi": j0.hi.to_expr_string("a") });
    let (verdict, evidence) = match out {
        R2Outcome::Certified => (Verdict::Certified, json!({ "zero_excluded": true })),
        R2Outcome::Refuted { alpha } => (Verdict::Refuted, json!({ "alpha": fmt_rational(&alpha) })),
        R2Outcome::Inconclusive { alpha } => (Verdict::Inconclusive, json!({ "alpha_enclosure": alpha })),
    };
    entry("R2", verdict, evidence, params, ms)
}

fn q_evidence(out: &Result<QOutcome>) -> (Verdict, Value) {
    match out {
        Ok(QOutcome::Certified(c)) => (Verdict::Certified, serde_json::to_value(c).expect("serializes")),
        Ok(QOutcome::Refuted(w)) => (
            Verdict::Refuted,
            json!({ "imaginary_root_member": serde_json::to_value(w).expect("serializes") }),
        ),
        Ok(QOutcome::Inconclusive { omega }) => (
            Verdict::Inconclusive,
            json!({ "reason": "cone met only at irrational frequencies", "omega_enclosure": omega }),
        ),
        Err(e) => (Verdict::Inconclusive, json!({ "error": e.to_string() })),
    }
}

fn endpoint(fam: &IntervalFamily, alpha: &Rational, rep: &UniPoly) -> (Result<QOutcome>, f64) {
    timed(|| q_unstable_certify(&fam.instantiate(alpha)?, rep))
}

fn r5_entry(spec: &ProblemSpec) -> ConditionEntry {
    let fam = &spec.family;
    let depth = spec.limits.depth_limit;
    let cond = spec.r5.condition();
    match &spec.r5 {
        R5Mode::Disks(disks) => {
            let (out, ms) = timed(|| certify_r5p(fam, disks, depth));
            let params = json!({ "disks": disks, "depth_limit": depth });
            match out {
                Ok(r) => {
                    let verdict = if r.certified() { Verdict::Certified } else { Verdict::Inconclusive };
                    entry(cond, verdict, serde_json::to_value(&r).expect("serializes"), params, ms)
                }
                Err(e) => entry(cond, Verdict::Inconclusive, json!({ "error": e.to_string() }), params, ms),
            }
        }
        R5Mode::NonResonance { j_max } => {
            let (out, ms) = timed(|| certify_r5pp(fam, *j_max, depth));
            let params = json!({ "j_max": j_max, "depth_limit": depth });
            match out {
                Ok(r) => {
                    let verdict = match r.verdict {
                        BnbVerdict::CertifiedEmpty => Verdict::Certified,
                        BnbVerdict::NonemptyWithWitness => Verdict::Refuted,
                        BnbVerdict::Inconclusive => Verdict::Inconclusive,
                    };
                    entry(cond, verdict, serde_json::to_value(&r).expect("serializes"), params, ms)
                }
                Err(e) => entry(cond, Verdict::Inconclusive, json!({ "error": e.to_string() }), params, ms),
            }
        }
        R5Mode::Descartes { q, r } => {
            let (out, ms) = timed(|| check_r5ppp(fam, q, r));
            let params = json!({ "q": q.to_expr_string("l"), "r": r.to_expr_string("l") });
            match out {
                DescartesOutcome::Certified(ev) => {
                    entry(cond, Verdict::Certified, serde_json::to_value(&ev).expect("serializes"), params, ms)
                }
                DescartesOutcome::Inconclusive(why) => {
                    entry(cond, Verdict::Inconclusive, serde_json::to_value(&why).expect("serializes"), params, ms)
                }
            }
        }
    }
}

/// Disks for the crossing check: the problem's own in disk mode, otherwise one
/// rectangle over the whole strip reaching from just above the real axis to
/// past every root.
pub fn validator_disks(spec: &ProblemSpec) -> Result<Vec<PolygonDisk>> {
    if let R5Mode::Disks(d) = &spec.r5 {
        return Ok(d.clone());
    }
    let fam = &spec.family;
    let floor = Rational::new(1.into(), 1000.into());
    Ok(vec![PolygonDisk::rectangle(
        fam.alpha_minus().clone(),
        fam.alpha_plus().clone(),
        floor,
        fam.beta_bound(),
    )?])
}

fn validators(spec: &ProblemSpec, sel: &SelectorPath) -> Result<Validators> {
    let disks = validator_disks(spec)?;
    let (crossing, path) = rayon::join(
        || crossing_identity_check(sel, &disks),
        || track_roots(sel, spec.limits.grid_size),
    );
    let path = path?;
    let resonances = find_resonances(&path, spec.limits.max_ratio);
    let (crossing, crossing_error) = match crossing {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Validators {
        normative: false,
        selector: selector_string(sel),
        disks,
        crossing,
        crossing_error,
        roots: RootSummary {
            grid_size: spec.limits.grid_size,
            events: path.events,
            sliding: path.sliding,
            resonances,
        },
    })
}

fn selector_string(sel: &SelectorPath) -> String {
    let terms: Vec<String> = sel
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})*l"),
            _ => format!("({c})*l^{k}"),
        })
        .collect();
    terms.join(" + ")
}

/// Runs every check (no short-circuiting) and assembles the certificate.
pub fn verify(spec: &ProblemSpec) -> Result<Certificate> {
    spec.validate()?;
    let fam = &spec.family;
    let ((r2, (minus, plus)), (r5, validators)) = rayon::join(
        || {
            rayon::join(
                || r2_entry(fam),
                || {
                    rayon::join(
                        || endpoint(fam, fam.alpha_minus(), &spec.rep_minus),
                        || endpoint(fam, fam.alpha_plus(), &spec.rep_plus),
                    )
                },
            )
        },
        || {
            rayon::join(
                || r5_entry(spec),
                || spec.selector.as_ref().map(|s| validators(spec, s)).transpose(),
            )
        },
    );
    let validators = validators?;
    let q1 = minus.0.as_ref().ok().and_then(|o| o.q());
    let q2 = plus.0.as_ref().ok().and_then(|o| o.q());

    let (v3, ev3) = q_evidence(&minus.0);
    let r3 = entry(
        "R3",
        v3,
        ev3,
        json!({ "alpha": fmt_rational(fam.alpha_minus()), "representative": spec.rep_minus.to_string() }),
        minus.1,
    );
    let (mut v4, mut ev4) = q_evidence(&plus.0);
    if v4 == Verdict::Certified {
        match (q1, q2) {
            (Some(a), Some(b)) if a == b => {
                v4 = Verdict::Refuted;
                ev4 = json!({ "reason": "q2 equals q1", "certificate": ev4 });
            }
            (None, _) => {
                v4 = Verdict::Inconclusive;
                ev4 = json!({ "reason": "q1 unknown, so q1 != q2 cannot be checked", "certificate": ev4 });
            }
            _ => {}
        }
    }
    let r4 = entry(
        "R4",
        v4,
        ev4,
        json!({ "alpha": fmt_rational(fam.alpha_plus()), "representative": spec.rep_plus.to_string() }),
        plus.1,
    );
    let conditions = vec![r2, r3, r4, r5];
    let overall = if conditions.iter().all(|c| c.verdict == Verdict::Certified) {
        Verdict::Certified
    } else if conditions[0].verdict == Verdict::Certified && fr_extent(fam, &fam.sign_pair()) == FrShape::Empty {
        // No member ever has an imaginary root: nothing can bifurcate.
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    let declaration = spec.nonlinearity.clone();
    Ok(Certificate {
        format: FORMAT,
        problem: spec.name.clone(),
        family: FamilySummary::of(fam),
        assumptions: vec![
            Assumption {
                condition: "R0",
                status: ASSUMED,
                declaration: declaration.clone(),
            },
            Assumption {
                condition: "R1",
                status: ASSUMED,
                declaration,
            },
        ],
        conditions,
        q1,
        q2,
        overall,
        validators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Var};
    use crate::family::CoeffInterval;

    fn a(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Alpha)
    }

    fn l(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Lambda)
    }

    /// `l^2 + [-a - 1/10, -a + 1/10] l + [1, 2]` on `[-1, 1]`: the damping
    /// changes sign, so a pair crosses from left to right.
    fn damped() -> ProblemSpec {
        let tenth = Rational::new(1.into(), 10.into());
        let fam = IntervalFamily::new(
            vec![
                CoeffInterval::new(a(&[1]), a(&[2])),
                CoeffInterval::around(a(&[0, -1]), &tenth),
            ],
            RationalInterval::new(int(-1), int(1)).unwrap(),
        )
        .unwrap();
        let sel = SelectorPath::new(&fam, vec![a(&[1]), a(&[0, -1]), a(&[1])]).unwrap();
        ProblemSpec {
            name: "damped".into(),
            rep_minus: l(&[1, 1, 1]),
            rep_plus: l(&[1, -1, 1]),
            selector: Some(sel),
            family: fam,
            r5: R5Mode::NonResonance { j_max: None },
            nonlinearity: "none".into(),
            limits: Limits::default(),
        }
    }

    #[test]
    fn damped_oscillator_is_certified() {
        let cert = verify(&damped()).unwrap();
        assert_eq!(cert.overall, Verdict::Certified, "{}", cert.to_json());
        assert_eq!((cert.q1, cert.q2), (Some(0), Some(2)));
        let v = cert.validators.as_ref().unwrap();
        let c = v.crossing.as_ref().unwrap();
        assert!(c.holds);
        assert_eq!(c.total_winding, -1);
        assert_eq!(cert.exit_code(), 0);
        for r in ["R2", "R3", "R4", "R5''"] {
            assert_eq!(cert.entry(r).unwrap().verdict, Verdict::Certified);
        }
    }

    #[test]
    fn mode_does_not_touch_endpoint_entries() {
        let mut spec = damped();
        let base = verify(&spec).unwrap();
        spec.r5 = R5Mode::Descartes { q: l(&[1]), r: l(&[0]) };
        let other = verify(&spec).unwrap();
        let strip = |c: &Certificate| {
            let mut c = c.clone();
            c.strip_timing();
            c.conditions[..3].to_vec()
        };
        assert_eq!(strip(&base), strip(&other));
    }

    #[test]
    fn invalid_specs_list_every_problem() {
        let mut spec = damped();
        spec.rep_minus = l(&[5, 1, 1]);
        spec.r5 = R5Mode::Disks(Vec::new());
        match verify(&spec) {
            Err(Error::InvalidProblem(v)) => assert_eq!(v.len(), 2, "{v:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stable_family_is_refuted() {
        let fam = IntervalFamily::new(
            vec![CoeffInterval::new(a(&[1]), a(&[2])), CoeffInterval::new(a(&[3]), a(&[4]))],
            RationalInterval::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        let spec = ProblemSpec {
            name: "stable".into(),
            family: fam,
            rep_minus: l(&[1, 3, 1]),
            rep_plus: l(&[1, 3, 1]),
            selector: None,
            r5: R5Mode::NonResonance { j_max: None },
            nonlinearity: String::new(),
            limits: Limits::default(),
        };
        let cert = verify(&spec).unwrap();
        assert_eq!(cert.entry("R4").unwrap().verdict, Verdict::Refuted);
        assert_eq!(cert.overall, Verdict::Refuted);
        assert_eq!(cert.exit_code(), 2);
    }
}
