//! Interval Descartes test: the combined polynomial
//! `T(w) = Q(w) Re S(iw) + R(w) Im S(iw)` with interval coefficients and the
//! "at most one sign change" pattern.

use num::{Signed, Zero};
use serde::Serialize;

use crate::algebra::roots::{is_nonnegative_on, is_nonpositive_on, isolate_real_roots, sign_on_interval};
use crate::algebra::{Rational, RationalInterval, SignVerdict, UniPoly, Var};
use crate::family::{CoeffInterval, IntervalFamily, IntervalPoly};

/// Polynomial in `w` whose coefficients are intervals with endpoints
/// polynomial in alpha (constants for a fixed interval polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalUniPoly {
    coeffs: Vec<CoeffInterval>,
}

fn zero_interval() -> CoeffInterval {
    CoeffInterval::point(UniPoly::zero(Var::Alpha))
}

fn is_zero_interval(c: &CoeffInterval) -> bool {
    c.lo.is_zero() && c.hi.is_zero()
}

/// `c * [lo, hi]` with the endpoints swapped for `c < 0`.
fn scale(c: &CoeffInterval, s: &Rational) -> CoeffInterval {
    if s.is_negative() {
        CoeffInterval::new(c.hi.scale(s), c.lo.scale(s))
    } else {
        CoeffInterval::new(c.lo.scale(s), c.hi.scale(s))
    }
}

fn add(a: &CoeffInterval, b: &CoeffInterval) -> CoeffInterval {
    CoeffInterval::new(&a.lo + &b.lo, &a.hi + &b.hi)
}

impl IntervalUniPoly {
    pub fn new(mut coeffs: Vec<CoeffInterval>) -> Self {
        while coeffs.last().is_some_and(is_zero_interval) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[CoeffInterval] {
        &self.coeffs
    }

    /// Coefficient of `w^k` (the zero interval beyond the degree).
    pub fn coeff(&self, k: usize) -> CoeffInterval {
        self.coeffs.get(k).cloned().unwrap_or_else(zero_interval)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Fixes alpha.
    pub fn at(&self, alpha: &Rational) -> Vec<RationalInterval> {
        self.coeffs.iter().map(|c| c.at(alpha)).collect()
    }

    /// Enclosure of the values at a real `w`.
    pub fn eval_at(&self, alpha: &Rational, w: &Rational) -> RationalInterval {
        let mut acc = RationalInterval::point(Rational::zero());
        let mut pw = Rational::from_integer(1.into());
        for c in self.at(alpha) {
            acc = acc.add(&c.scale(&pw));
            pw *= w;
        }
        acc
    }

    /// `p * s(w)` for a real polynomial `s`.
    pub fn mul_poly(&self, s: &UniPoly) -> IntervalUniPoly {
        let n = self.coeffs.len() + s.coeffs().len();
        let mut out = vec![zero_interval(); n.saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, v) in s.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                out[i + j] = add(&out[i + j], &scale(c, v));
            }
        }
        IntervalUniPoly::new(out)
    }

    pub fn add(&self, other: &IntervalUniPoly) -> IntervalUniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntervalUniPoly::new((0..n).map(|k| add(&self.coeff(k), &other.coeff(k))).collect())
    }

    /// Human-readable form, e.g. `[-150 - 180*a, -138 - 180*a] w + ...`.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !is_zero_interval(c))
            .map(|(k, c)| {
                format!("[{}, {}] w^{k}", c.lo.to_expr_string("a"), c.hi.to_expr_string("a"))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Re and Im parts of `S(iw)` for a symbolic family; degree `k` contributes
/// `(-1)^(k/2) J_k w^k` (k even) or `(-1)^((k-1)/2) J_k w^k` (k odd).
pub fn re_im_parts(fam: &IntervalFamily) -> (IntervalUniPoly, IntervalUniPoly) {
    let n = fam.degree();
    let all: Vec<CoeffInterval> = fam
        .coeffs()
        .iter()
        .cloned()
        .chain(std::iter::once(CoeffInterval::point(UniPoly::one(Var::Alpha))))
        .collect();
    parts(&all, n)
}

pub fn re_im_parts_fixed(s: &IntervalPoly) -> (IntervalUniPoly, IntervalUniPoly) {
    let all: Vec<CoeffInterval> = s
        .with_leading()
        .iter()
        .map(|i| {
            CoeffInterval::new(
                UniPoly::constant(i.lo().clone(), Var::Alpha),
                UniPoly::constant(i.hi().clone(), Var::Alpha),
            )
        })
        .collect();
    parts(&all, s.degree())
}

fn parts(all: &[CoeffInterval], n: usize) -> (IntervalUniPoly, IntervalUniPoly) {
    let mut re = vec![zero_interval(); n + 1];
    let mut im = vec![zero_interval(); n + 1];
    let minus = -Rational::from_integer(1.into());
    for (k, c) in all.iter().enumerate() {
        let flip = (k / 2) % 2 == 1;
        let v = if flip { scale(c, &minus) } else { c.clone() };
        if k % 2 == 0 {
            re[k] = v;
        } else {
            im[k] = v;
        }
    }
    (IntervalUniPoly::new(re), IntervalUniPoly::new(im))
}

/// `Q(w) Re + R(w) Im` in interval arithmetic.
pub fn combine_t(re: &IntervalUniPoly, im: &IntervalUniPoly, q: &UniPoly, r: &UniPoly) -> IntervalUniPoly {
    re.mul_poly(q).add(&im.mul_poly(r))
}

/// Outcome of the interval sign-change count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignChangeVerdict {
    pub at_most_one: bool,
    /// Index left unconstrained by the pattern.
    pub pivot: Option<usize>,
    /// Two indices forcing a second sign change.
    pub violation: Option<(usize, usize)>,
}

/// Sign class of an interval (or of a symbolic interval over a whole range).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    /// Identically zero; dropped before matching.
    Zero,
    Nonpositive,
    Nonnegative,
    Mixed,
}

impl SignClass {
    pub fn of(i: &RationalInterval) -> Self {
        match (i.is_nonpositive(), i.is_nonnegative()) {
            (true, true) => SignClass::Zero,
            (true, false) => SignClass::Nonpositive,
            (false, true) => SignClass::Nonnegative,
            (false, false) => SignClass::Mixed,
        }
    }
}

/// At most one sign change in the sense of intervals: some `j` with all
/// nonzero coefficients below `j` in `(-inf, 0]` and all above in `[0, inf)`,
/// or the mirrored pattern.
pub fn count_sign_changes(coeffs: &[RationalInterval]) -> SignChangeVerdict {
    let classes: Vec<SignClass> = coeffs.iter().map(SignClass::of).collect();
    pattern(&classes)
}

pub fn pattern(classes: &[SignClass]) -> SignChangeVerdict {
    let kept: Vec<(usize, SignClass)> = classes
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| *c != SignClass::Zero)
        .collect();
    let try_dir = |first_ok: SignClass, last_ok: SignClass| -> std::result::Result<Option<usize>, (usize, usize)> {
        let a = kept.iter().find(|(_, c)| *c != first_ok).map(|(i, _)| *i);
        let b = kept.iter().rev().find(|(_, c)| *c != last_ok).map(|(i, _)| *i);
        match (a, b) {
            (Some(a), Some(b)) if a < b => Err((a, b)),
            (Some(a), _) => Ok(Some(a)),
            (None, _) => Ok(kept.last().map(|(i, _)| *i)),
        }
    };
    match try_dir(SignClass::Nonpositive, SignClass::Nonnegative) {
        Ok(pivot) => SignChangeVerdict {
            at_most_one: true,
            pivot,
            violation: None,
        },
        Err(direct) => match try_dir(SignClass::Nonnegative, SignClass::Nonpositive) {
            Ok(pivot) => SignChangeVerdict {
                at_most_one: true,
                pivot,
                violation: None,
            },
            Err(_) => SignChangeVerdict {
                at_most_one: false,
                pivot: None,
                violation: Some(direct),
            },
        },
    }
}

/// Uniform-in-alpha class of one symbolic coefficient, with exact sign
/// determination of its endpoint polynomials.
pub fn uniform_class(c: &CoeffInterval, range: &RationalInterval) -> SignClass {
    if is_zero_interval(c) {
        return SignClass::Zero;
    }
    let nonpos = is_nonpositive_on(&c.hi, range);
    let nonneg = is_nonnegative_on(&c.lo, range);
    match (nonpos, nonneg) {
        (true, true) => SignClass::Zero,
        (true, false) => SignClass::Nonpositive,
        (false, true) => SignClass::Nonnegative,
        (false, false) => SignClass::Mixed,
    }
}

fn strictly_signed(c: &CoeffInterval, range: &RationalInterval) -> bool {
    sign_on_interval(&c.lo, range) == SignVerdict::StrictlyPositive
        || sign_on_interval(&c.hi, range) == SignVerdict::StrictlyNegative
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescartesEvidence {
    pub t: String,
    pub classes: Vec<SignClass>,
    pub pivot: Option<usize>,
    /// A coefficient that is strictly signed for every alpha, so `T` never
    /// vanishes identically.
    pub nonvanishing_coefficient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescartesInconclusive {
    pub reason: String,
    pub coefficient: Option<usize>,
    /// Where an endpoint of that coefficient changes sign.
    pub alpha: Option<RationalInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescartesOutcome {
    Certified(DescartesEvidence),
    Inconclusive(DescartesInconclusive),
}

/// The symbolic `T` of a family.
pub fn family_t(fam: &IntervalFamily, q: &UniPoly, r: &UniPoly) -> IntervalUniPoly {
    let (re, im) = re_im_parts(fam);
    combine_t(&re, &im, q, r)
}

/// Uniform-in-alpha interval Descartes test. Never refutes.
pub fn check_r5ppp(fam: &IntervalFamily, q: &UniPoly, r: &UniPoly) -> DescartesOutcome {
    let t = family_t(fam, q, r);
    let range = fam.alpha_range();
    let classes: Vec<SignClass> = t.coeffs().iter().map(|c| uniform_class(c, range)).collect();
    let verdict = pattern(&classes);
    if !verdict.at_most_one {
        let (i, k) = verdict.violation.expect("violation recorded");
        let culprit = [i, k]
            .into_iter()
            .find(|&j| classes[j] == SignClass::Mixed)
            .unwrap_or(k);
        return DescartesOutcome::Inconclusive(DescartesInconclusive {
            reason: format!("coefficients {i} and {k} force a second sign change"),
            coefficient: Some(culprit),
            alpha: sign_change_region(&t.coeff(culprit), range),
        });
    }
    let Some(nonvanishing) = (0..t.len()).find(|&k| strictly_signed(&t.coeff(k), range)) else {
        return DescartesOutcome::Inconclusive(DescartesInconclusive {
            reason: "no coefficient excludes 0, T may vanish identically".into(),
            coefficient: None,
            alpha: None,
        });
    };
    DescartesOutcome::Certified(DescartesEvidence {
        t: t.render(),
        classes,
        pivot: verdict.pivot,
        nonvanishing_coefficient: nonvanishing,
    })
}

/// Hull of the sign changes of the endpoints of a coefficient.
fn sign_change_region(c: &CoeffInterval, range: &RationalInterval) -> Option<RationalInterval> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for p in [&c.lo, &c.hi] {
        if p.is_zero() {
            continue;
        }
        for root in isolate_real_roots(p, range).unwrap_or_default() {
            let e = root.enclosure();
            if lo.as_ref().is_none_or(|l| e.lo() < l) {
                lo = Some(e.lo().clone());
            }
            if hi.as_ref().is_none_or(|h| e.hi() > h) {
                hi = Some(e.hi().clone());
            }
        }
    }
    Some(RationalInterval::hull(lo?, hi?))
}

/// Descartes test for one fixed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedDescartes {
    pub s: String,
    pub sign_changes: usize,
    pub at_most_one_pair: bool,
}

/// `S(w) = Q(w) Re P(iw) + R(w) Im P(iw)`, certified when it is nonzero with
/// at most one coefficient sign change.
pub fn check_fixed_descartes(p: &UniPoly, q: &UniPoly, r: &UniPoly) -> FixedDescartes {
    let q = q.clone().with_var(Var::Omega);
    let r = r.clone().with_var(Var::Omega);
    let s = &(&q * &p.re_at_imag()) + &(&r * &p.im_at_imag());
    let changes = s.coefficient_sign_changes();
    FixedDescartes {
        s: s.to_string(),
        sign_changes: changes,
        at_most_one_pair: !s.is_zero() && changes <= 1,
    }
}
