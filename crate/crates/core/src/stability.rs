//! Half-plane root counting, the four-corner Hurwitz test, and endpoint
//! q-instability certification by the cone test plus zero exclusion.

use num::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::fmt_rational;
use crate::algebra::roots::{cauchy_bound, common_nonpositive, isolate_real_roots, CommonNonpositive, ExclusionPiece};
use crate::algebra::{Rational, RationalInterval, UniPoly, Var};
use crate::error::{Error, Result};
use crate::family::{IntervalFamily, IntervalPoly};

/// Roots by half-plane, with multiplicity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct RootCount {
    pub n_neg: usize,
    pub n_imag: usize,
    pub n_pos: usize,
}

impl RootCount {
    pub fn degree(&self) -> usize {
        self.n_neg + self.n_imag + self.n_pos
    }

    pub fn is_hurwitz(&self) -> bool {
        self.n_imag == 0 && self.n_pos == 0
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.n_imag == 0
    }
}

/// Exact root count by half-plane.
///
/// Imaginary-axis roots are the real roots of `r = gcd(Re p(iw), Im p(iw))`
/// with matching multiplicities. The factor `D` of `p` carrying the roots of
/// `r` is symmetric about the imaginary axis, so its other roots split evenly;
/// the cofactor is counted with the Cauchy index of `Re/Im` (Routh-Hurwitz).
pub fn root_count(p: &UniPoly) -> Result<RootCount> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(RootCount::default());
    }
    let p = p.clone().with_var(Var::Lambda);
    let e = p.re_at_imag();
    let o = p.im_at_imag();
    let r = e.gcd(&o);

    let mut n_imag = 0;
    let mut d = UniPoly::one(Var::Lambda);
    if !r.is_constant() {
        let b = cauchy_bound(&r)?;
        let all = RationalInterval::new(-&b, b)?;
        n_imag = isolate_real_roots(&r, &all)?
            .iter()
            .map(|root| root.multiplicity())
            .sum();
        d = axis_factor(&r);
    }
    let rest = p.div_exact(&d).expect("imaginary-axis factor divides");
    let m = rest.degree().expect("nonzero cofactor");
    let split = (d.degree().unwrap_or(0) - n_imag) / 2;

    let e2 = rest.re_at_imag();
    let o2 = rest.im_at_imag();
    let diff = if m % 2 == 1 {
        cauchy_index(&e2, &o2)
    } else {
        -cauchy_index(&o2, &e2)
    };
    let n_neg_rest = (m as i64 + diff) / 2;
    let n_pos_rest = m as i64 - n_neg_rest;
    debug_assert!(n_neg_rest >= 0 && n_pos_rest >= 0 && (m as i64 + diff) % 2 == 0);
    let out = RootCount {
        n_neg: n_neg_rest as usize + split,
        n_imag,
        n_pos: n_pos_rest as usize + split,
    };
    debug_assert_eq!(out.degree(), n);
    Ok(out)
}

/// `r(-i l)` up to a unit: the real polynomial whose roots are `i w` for the
/// roots `w` of `r`. Only one parity of powers occurs in `r`.
fn axis_factor(r: &UniPoly) -> UniPoly {
    let k0 = r
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero gcd");
    let coeffs = r
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.is_zero() {
                c.clone()
            } else if ((k - k0) / 2) % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect();
    UniPoly::new(coeffs, Var::Lambda).monic()
}

/// Cauchy index of `num / den` over the whole real line, from the signed
/// remainder sequence `den, num, -rem, ...`.
fn cauchy_index(num: &UniPoly, den: &UniPoly) -> i64 {
    if num.is_zero() || den.is_zero() {
        return 0;
    }
    let mut seq = vec![den.clone(), num.clone()];
    loop {
        let len = seq.len();
        let (_, r) = seq[len - 2].div_rem(&seq[len - 1]);
        if r.is_zero() {
            break;
        }
        let r = -&r;
        let lead = r.leading().abs().recip();
        seq.push(r.scale(&lead));
    }
    let at = |plus: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .map(|q| {
                let pos = q.leading().is_positive();
                let odd = q.degree().unwrap_or(0) % 2 == 1;
                if plus || !odd {
                    pos
                } else {
                    !pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    at(false) - at(true)
}

/// All four corner polynomials Hurwitz stable.
pub fn kharitonov_hurwitz(s: &IntervalPoly) -> bool {
    let n = s.degree();
    s.corners().kharitonov().iter().all(|k| {
        root_count(k).is_ok_and(|rc| rc.n_neg == n)
    })
}

/// Sign region of `(u1, u2)` excluded at a frequency range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaExclusion {
    pub omega: RationalInterval,
    pub open_lo: bool,
    pub open_hi: bool,
    /// `"u1"` or `"u2"`, the product that is strictly positive there.
    pub positive: &'static str,
}

impl OmegaExclusion {
    fn from_piece(p: ExclusionPiece, names: [&'static str; 2]) -> Self {
        Self {
            omega: p.interval,
            open_lo: p.open_lo,
            open_hi: p.open_hi,
            positive: names[p.positive],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QInstabilityCertificate {
    pub q: usize,
    pub representative: String,
    pub root_count: RootCount,
    pub omega_bound: String,
    pub exclusion_evidence: Vec<OmegaExclusion>,
}

/// A member of the interval polynomial with the root `i omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImaginaryRootWitness {
    pub omega: String,
    pub member: String,
    #[serde(skip)]
    pub member_poly: UniPoly,
    #[serde(skip)]
    pub omega_exact: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QOutcome {
    Certified(QInstabilityCertificate),
    /// Some member has a purely imaginary root, so no `q` works.
    Refuted(ImaginaryRootWitness),
    /// The cone is met only at irrational frequencies; no member was built.
    Inconclusive { omega: RationalInterval },
}

impl QOutcome {
    pub fn q(&self) -> Option<usize> {
        match self {
            QOutcome::Certified(c) => Some(c.q),
            _ => None,
        }
    }
}

/// Certifies that every member of `s` has the representative's number of
/// right half-plane roots and none on the axis.
pub fn q_unstable_certify(s: &IntervalPoly, representative: &UniPoly) -> Result<QOutcome> {
    let rep = representative.clone().with_var(Var::Lambda);
    if !s.contains(&rep) {
        return Err(Error::NotMember(rep.to_string()));
    }
    let rc = root_count(&rep)?;
    if rc.n_imag > 0 {
        return Err(Error::ImaginaryRepresentative);
    }
    let corners = s.corners();
    let (u1, u2) = corners.cone_products();
    let bound = s.root_bound();
    let domain = RationalInterval::new(Rational::zero(), bound.clone())?;
    Ok(match common_nonpositive(&[u1, u2], &domain) {
        CommonNonpositive::Empty(pieces) => QOutcome::Certified(QInstabilityCertificate {
            q: rc.n_pos,
            representative: rep.to_string(),
            root_count: rc,
            omega_bound: fmt_rational(&bound),
            exclusion_evidence: pieces
                .into_iter()
                .map(|p| OmegaExclusion::from_piece(p, ["u1", "u2"]))
                .collect(),
        }),
        CommonNonpositive::Witness(w) => QOutcome::Refuted(imaginary_root_member(s, &w)),
        CommonNonpositive::AlgebraicWitness(r) => QOutcome::Inconclusive {
            omega: r.enclosure().clone(),
        },
    })
}

/// Blends the corners so that `Re P(i w) = Im P(i w) = 0`; needs
/// `u1(w) <= 0` and `u2(w) <= 0`.
pub fn imaginary_root_member(s: &IntervalPoly, w: &Rational) -> ImaginaryRootWitness {
    let c = s.corners();
    let blend = |lo: Rational, hi: Rational| {
        if lo == hi {
            Rational::zero()
        } else {
            &lo / (&lo - &hi)
        }
    };
    let even = blend(c.g1.re_at_imag().eval(w), c.g2.re_at_imag().eval(w));
    let odd = blend(c.h1.im_at_imag().eval(w), c.h2.im_at_imag().eval(w));
    let member = s.blend_member(&even, &odd);
    debug_assert!(member.re_at_imag().eval(w).is_zero() && member.im_at_imag().eval(w).is_zero());
    ImaginaryRootWitness {
        omega: fmt_rational(w),
        member: member.to_string(),
        member_poly: member,
        omega_exact: w.clone(),
    }
}

/// Outcome of the zero-exclusion check on the constant coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum R2Outcome {
    Certified,
    /// `alpha` with `a0(alpha) <= 0 <= b0(alpha)`.
    Refuted { alpha: Rational },
    /// The bad set is a finite set of irrational points.
    Inconclusive { alpha: RationalInterval },
}

/// `0` outside `[a0(alpha), b0(alpha)]` for every alpha in range.
pub fn check_r2(fam: &IntervalFamily) -> R2Outcome {
    let j0 = &fam.coeffs()[0];
    match common_nonpositive(&[j0.lo.clone(), -&j0.hi], fam.alpha_range()) {
        CommonNonpositive::Empty(_) => R2Outcome::Certified,
        CommonNonpositive::Witness(a) => R2Outcome::Refuted { alpha: a },
        CommonNonpositive::AlgebraicWitness(r) => R2Outcome::Inconclusive {
            alpha: r.enclosure().clone(),
        },
    }
}

/// Endpoint checks at both ends of the alpha range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointReport {
    pub minus: QOutcome,
    pub plus: QOutcome,
}

impl EndpointReport {
    pub fn q1(&self) -> Option<usize> {
        self.minus.q()
    }

    pub fn q2(&self) -> Option<usize> {
        self.plus.q()
    }

    /// Both endpoints certified with different instability indices.
    pub fn certified(&self) -> bool {
        matches!((self.q1(), self.q2()), (Some(a), Some(b)) if a != b)
    }
}

pub fn check_r3_r4(
    fam: &IntervalFamily,
    rep_minus: &UniPoly,
    rep_plus: &UniPoly,
) -> Result<EndpointReport> {
    let (minus, plus) = rayon::join(
        || q_unstable_certify(&fam.instantiate(fam.alpha_minus())?, rep_minus),
        || q_unstable_certify(&fam.instantiate(fam.alpha_plus())?, rep_plus),
    );
    Ok(EndpointReport {
        minus: minus?,
        plus: plus?,
    })
}

/// Evaluates a polynomial whose coefficients are polynomials in alpha.
pub fn eval_selector(coeffs: &[UniPoly], alpha: &Rational) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|c| c.eval(alpha)).collect(), Var::Lambda)
}

/// Product of factors in lambda.
pub fn product(factors: &[UniPoly]) -> UniPoly {
    factors
        .iter()
        .fold(UniPoly::one(Var::Lambda), |acc, f| &acc * f)
}
