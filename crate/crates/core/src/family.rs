//! The alpha-parameterized monic interval polynomial family, its corner
//! (Kharitonov) polynomials and the bivariate sign polynomials `W1`, `W2`.
//!
//! For a monic interval polynomial with coefficient intervals
//! `I_k = [a_k, b_k]` the four corner polynomials are
//!
//! ```text
//! g1 = a0 + b2 l^2 + a4 l^4 + ...     g2 = b0 + a2 l^2 + b4 l^4 + ...
//! h1 = a1 l + b3 l^3 + a5 l^5 + ...   h2 = b1 l + a3 l^3 + b5 l^5 + ...
//! ```
//!
//! and every member `P` satisfies `Re g1(iw) <= Re P(iw) <= Re g2(iw)` and
//! `Im h1(iw) <= Im P(iw) <= Im h2(iw)`. The sign polynomials are
//! `W1 = Re g1(i b) * Re g2(i b)` and `W2 = Im h1(i b) * Im h2(i b)`; the set
//! `{W1 <= 0, W2 <= 0}` is exactly where some member has the root `i b`.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::roots::{is_nonnegative_on, isolate_real_roots};
use crate::algebra::{BivariatePoly, Rational, RationalInterval, UniPoly, Var};
use crate::error::{Error, Result};

/// `J_k(alpha) = [lo(alpha), hi(alpha)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffInterval {
    pub lo: UniPoly,
    pub hi: UniPoly,
}

impl CoeffInterval {
    pub fn new(lo: UniPoly, hi: UniPoly) -> Self {
        Self {
            lo: lo.with_var(Var::Alpha),
            hi: hi.with_var(Var::Alpha),
        }
    }

    pub fn point(p: UniPoly) -> Self {
        Self::new(p.clone(), p)
    }

    /// `[center - eps, center + eps]`
    pub fn around(center: UniPoly, eps: &Rational) -> Self {
        let e = UniPoly::constant(eps.clone(), Var::Alpha);
        Self::new(&center - &e, &center + &e)
    }

    pub fn at(&self, alpha: &Rational) -> RationalInterval {
        RationalInterval::hull(self.lo.eval(alpha), self.hi.eval(alpha))
    }
}

/// Which endpoint each corner polynomial takes at degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    G1,
    G2,
    H1,
    H2,
}

impl Corner {
    /// `true` when this corner uses the upper endpoint at degree `k`, `None`
    /// when the corner has no term of that degree.
    pub fn takes_upper(self, k: usize) -> Option<bool> {
        match (self, k % 4) {
            (Corner::G1, 0) | (Corner::G2, 2) | (Corner::H1, 1) | (Corner::H2, 3) => Some(false),
            (Corner::G1, 2) | (Corner::G2, 0) | (Corner::H1, 3) | (Corner::H2, 1) => Some(true),
            _ => None,
        }
    }
}

/// A fixed (alpha already substituted) monic interval polynomial
/// `I_0 + I_1 l + ... + I_{n-1} l^{n-1} + l^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalPoly {
    /// Intervals for degrees `0..n`; the leading coefficient is the point 1.
    intervals: Vec<RationalInterval>,
}

impl IntervalPoly {
    pub fn new(intervals: Vec<RationalInterval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidFamily("degree must be positive".into()));
        }
        Ok(Self { intervals })
    }

    /// The point interval polynomial of a monic `p`.
    pub fn from_point(p: &UniPoly) -> Result<Self> {
        let n = p.degree().filter(|&n| n > 0).ok_or_else(|| {
            Error::InvalidFamily("point polynomial must have positive degree".into())
        })?;
        if !p.leading().is_one() {
            return Err(Error::InvalidFamily("point polynomial must be monic".into()));
        }
        Self::new((0..n).map(|k| RationalInterval::point(p.coeff(k))).collect())
    }

    pub fn degree(&self) -> usize {
        self.intervals.len()
    }

    /// Interval at degree `k`, including the leading point `{1}` at `k = n`.
    pub fn interval(&self, k: usize) -> RationalInterval {
        if k == self.degree() {
            RationalInterval::point(Rational::one())
        } else {
            self.intervals[k].clone()
        }
    }

    /// Intervals for degrees `0..n` (without the leading 1).
    pub fn intervals(&self) -> &[RationalInterval] {
        &self.intervals
    }

    pub fn with_leading(&self) -> Vec<RationalInterval> {
        (0..=self.degree()).map(|k| self.interval(k)).collect()
    }

    pub fn corner(&self, which: Corner) -> UniPoly {
        let coeffs = (0..=self.degree())
            .map(|k| match which.takes_upper(k) {
                Some(true) => self.interval(k).hi().clone(),
                Some(false) => self.interval(k).lo().clone(),
                None => Rational::zero(),
            })
            .collect();
        UniPoly::new(coeffs, Var::Lambda)
    }

    pub fn corners(&self) -> CornerSet {
        CornerSet {
            g1: self.corner(Corner::G1),
            g2: self.corner(Corner::G2),
            h1: self.corner(Corner::H1),
            h2: self.corner(Corner::H2),
        }
    }

    /// Membership of a polynomial: monic of the same degree with every
    /// coefficient inside its interval.
    pub fn contains(&self, p: &UniPoly) -> bool {
        p.degree() == Some(self.degree())
            && (0..=self.degree()).all(|k| self.interval(k).contains(&p.coeff(k)))
    }

    /// `1 + max |endpoint|`: every root of every member has smaller modulus.
    pub fn root_bound(&self) -> Rational {
        let max = self
            .intervals
            .iter()
            .flat_map(|i| [i.lo().abs(), i.hi().abs()])
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max
    }

    /// The member `(1 - s) * lower_choice + s * upper_choice` used to build
    /// explicit members: `even` and `odd` pick the blend per parity.
    pub fn blend_member(&self, even: &Rational, odd: &Rational) -> UniPoly {
        let coeffs = (0..=self.degree())
            .map(|k| {
                let i = self.interval(k);
                let s = if k % 2 == 0 { even } else { odd };
                let first = if k % 2 == 0 { Corner::G1 } else { Corner::H1 };
                let (from, to) = match first.takes_upper(k) {
                    Some(true) => (i.hi(), i.lo()),
                    _ => (i.lo(), i.hi()),
                };
                from + (to - from) * s
            })
            .collect();
        UniPoly::new(coeffs, Var::Lambda)
    }
}

/// Corner polynomials in `l` of a fixed interval polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSet {
    pub g1: UniPoly,
    pub g2: UniPoly,
    pub h1: UniPoly,
    pub h2: UniPoly,
}

impl CornerSet {
    /// `g1+h1, g1+h2, g2+h1, g2+h2`.
    pub fn kharitonov(&self) -> [UniPoly; 4] {
        [
            &self.g1 + &self.h1,
            &self.g1 + &self.h2,
            &self.g2 + &self.h1,
            &self.g2 + &self.h2,
        ]
    }

    /// `(Re g1(iw) Re g2(iw), Im h1(iw) Im h2(iw))` as polynomials in `w`.
    pub fn cone_products(&self) -> (UniPoly, UniPoly) {
        (
            &self.g1.re_at_imag() * &self.g2.re_at_imag(),
            &self.h1.im_at_imag() * &self.h2.im_at_imag(),
        )
    }
}

/// `W1(alpha, beta)` and `W2(alpha, beta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPair {
    pub w1: BivariatePoly,
    pub w2: BivariatePoly,
}

/// The family `Q(alpha)` over `[alpha_minus, alpha_plus]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    coeffs: Vec<CoeffInterval>,
    alpha_range: RationalInterval,
}

impl IntervalFamily {
    /// Checks `lo_k <= hi_k` on the whole alpha range exactly.
    pub fn new(coeffs: Vec<CoeffInterval>, alpha_range: RationalInterval) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidFamily("degree must be positive".into()));
        }
        for (k, c) in coeffs.iter().enumerate() {
            if !is_nonnegative_on(&(&c.hi - &c.lo), &alpha_range) {
                return Err(Error::InvalidFamily(format!(
                    "coefficient {k}: lower end exceeds upper end somewhere on {alpha_range}"
                )));
            }
        }
        Ok(Self {
            coeffs,
            alpha_range,
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[CoeffInterval] {
        &self.coeffs
    }

    pub fn alpha_range(&self) -> &RationalInterval {
        &self.alpha_range
    }

    pub fn alpha_minus(&self) -> &Rational {
        self.alpha_range.lo()
    }

    pub fn alpha_plus(&self) -> &Rational {
        self.alpha_range.hi()
    }

    pub fn with_alpha_range(&self, range: RationalInterval) -> Result<Self> {
        Self::new(self.coeffs.clone(), range)
    }

    /// Endpoint polynomial at degree `k`; the leading degree is the point 1.
    fn endpoint(&self, k: usize, upper: bool) -> UniPoly {
        if k == self.degree() {
            return UniPoly::one(Var::Alpha);
        }
        let c = &self.coeffs[k];
        if upper {
            c.hi.clone()
        } else {
            c.lo.clone()
        }
    }

    pub fn instantiate(&self, alpha: &Rational) -> Result<IntervalPoly> {
        if !self.alpha_range.contains(alpha) {
            return Err(Error::OutOfRange {
                value: crate::algebra::rational::fmt_rational(alpha),
                lo: crate::algebra::rational::fmt_rational(self.alpha_range.lo()),
                hi: crate::algebra::rational::fmt_rational(self.alpha_range.hi()),
            });
        }
        IntervalPoly::new(self.coeffs.iter().map(|c| c.at(alpha)).collect())
    }

    /// Coefficients (in alpha) of the corner polynomial, indexed by degree.
    pub fn symbolic_corner(&self, which: Corner) -> Vec<UniPoly> {
        (0..=self.degree())
            .map(|k| match which.takes_upper(k) {
                Some(up) => self.endpoint(k, up),
                None => UniPoly::zero(Var::Alpha),
            })
            .collect()
    }

    /// `Re corner(i beta)` for an even corner or `Im corner(i beta)` for an
    /// odd one, as a bivariate polynomial.
    pub fn corner_on_axis(&self, which: Corner) -> BivariatePoly {
        let cols: Vec<UniPoly> = self
            .symbolic_corner(which)
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let sign_flip = match which {
                    Corner::G1 | Corner::G2 => (k / 2) % 2 == 1,
                    Corner::H1 | Corner::H2 => ((k.saturating_sub(1)) / 2) % 2 == 1,
                };
                if sign_flip {
                    -&c
                } else {
                    c
                }
            })
            .collect();
        BivariatePoly::from_beta_coeffs(&cols)
    }

    pub fn sign_pair(&self) -> SignPair {
        let rg1 = self.corner_on_axis(Corner::G1);
        let rg2 = self.corner_on_axis(Corner::G2);
        let ih1 = self.corner_on_axis(Corner::H1);
        let ih2 = self.corner_on_axis(Corner::H2);
        SignPair {
            w1: &rg1 * &rg2,
            w2: &ih1 * &ih2,
        }
    }

    /// `B` such that every root of every member at every alpha in range has
    /// modulus `< B`: `1 + max_k sup |endpoint_k|`.
    pub fn beta_bound(&self) -> Rational {
        let max = self
            .coeffs
            .iter()
            .flat_map(|c| [&c.lo, &c.hi])
            .map(|p| sup_abs(p, &self.alpha_range))
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max
    }

    /// Certifies that `coeffs` (indexed by degree, leading one included or
    /// implied) is a selector of the family on the whole alpha range.
    pub fn check_selector(&self, coeffs: &[UniPoly]) -> std::result::Result<(), String> {
        let n = self.degree();
        if coeffs.len() != n + 1 {
            return Err(format!("selector must have degree {n}"));
        }
        if coeffs[n] != UniPoly::one(Var::Alpha) {
            return Err("selector must be monic".into());
        }
        for (k, (c, bounds)) in coeffs.iter().zip(&self.coeffs).enumerate() {
            let c = c.clone().with_var(Var::Alpha);
            if !is_nonnegative_on(&(&c - &bounds.lo), &self.alpha_range)
                || !is_nonnegative_on(&(&bounds.hi - &c), &self.alpha_range)
            {
                return Err(format!("coefficient {k} leaves its interval"));
            }
        }
        Ok(())
    }
}

/// Sound upper bound on `max |p|` over `domain`: exact at the endpoints,
/// interval-evaluated over tight brackets of the critical points.
pub fn sup_abs(p: &UniPoly, domain: &RationalInterval) -> Rational {
    let mut best = p.eval(domain.lo()).abs().max(p.eval(domain.hi()).abs());
    let dp = p.derivative();
    if dp.is_zero() {
        return best;
    }
    let width = domain.width() / crate::algebra::int(1 << 20);
    for mut r in isolate_real_roots(&dp, domain).expect("nonzero derivative") {
        if !width.is_zero() {
            r.refine(&width);
        }
        let e = p.eval_interval(r.enclosure());
        let m = e.lo().abs().max(e.hi().abs());
        if m > best {
            best = m;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn a(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Alpha)
    }

    fn ex1() -> IntervalFamily {
        let eps = ratio(7, 25);
        IntervalFamily::new(
            vec![
                CoeffInterval::point(a(&[4, 0, -4])),
                CoeffInterval::around(a(&[0, 4, -3, 1]), &eps),
                CoeffInterval::around(a(&[5, -3, 0, 1]), &eps),
                CoeffInterval::point(a(&[0, 1, 1])),
            ],
            RationalInterval::new(ratio(-2, 5), ratio(4, 5)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reversed_interval_rejected() {
        let bad = IntervalFamily::new(
            vec![CoeffInterval::new(a(&[0, 1]), a(&[0]))],
            RationalInterval::new(int(-1), int(1)).unwrap(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn instantiate_out_of_range() {
        assert!(ex1().instantiate(&int(1)).is_err());
    }

    #[test]
    fn corners_of_example_one_at_zero() {
        let s = ex1().instantiate(&int(0)).unwrap();
        let c = s.corners();
        let l = |v: Vec<Rational>| UniPoly::new(v, Var::Lambda);
        let z = Rational::zero;
        assert_eq!(c.g1, l(vec![int(4), z(), ratio(132, 25), z(), int(1)]));
        assert_eq!(c.g2, l(vec![int(4), z(), ratio(118, 25), z(), int(1)]));
        assert_eq!(c.h1, l(vec![z(), ratio(-7, 25)]));
        assert_eq!(c.h2, l(vec![z(), ratio(7, 25)]));
    }

    #[test]
    fn point_polynomial_corners() {
        let s = IntervalPoly::from_point(&UniPoly::from_ints(&[1, 0, 1], Var::Lambda)).unwrap();
        let c = s.corners();
        assert_eq!(c.g1, UniPoly::from_ints(&[1, 0, 1], Var::Lambda));
        assert_eq!(c.g1, c.g2);
        assert!(c.h1.is_zero() && c.h2.is_zero());
    }

    #[test]
    fn sign_pair_restricted_to_beta_zero() {
        let sp = ex1().sign_pair();
        let w1_0 = sp.w1.at_beta(&int(0));
        assert_eq!(w1_0, a(&[4, 0, -4]).pow(2));
        assert!(sp.w2.at_beta(&int(0)).is_zero());
    }

    #[test]
    fn blended_member_is_member() {
        let s = ex1().instantiate(&ratio(1, 3)).unwrap();
        let m = s.blend_member(&ratio(1, 3), &ratio(3, 4));
        assert!(s.contains(&m));
        // s = 0 gives g1 + h1, s = 1 gives g2 + h2.
        let c = s.corners();
        assert_eq!(s.blend_member(&int(0), &int(0)), &c.g1 + &c.h1);
        assert_eq!(s.blend_member(&int(1), &int(1)), &c.g2 + &c.h2);
    }

    #[test]
    fn beta_bound_examples() {
        let point = IntervalFamily::new(
            vec![CoeffInterval::point(a(&[-4])), CoeffInterval::point(a(&[0]))],
            RationalInterval::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(point.beta_bound(), int(5));
        let small = IntervalFamily::new(
            vec![
                CoeffInterval::new(a(&[-1]), a(&[1])),
                CoeffInterval::new(a(&[0]), a(&[1])),
            ],
            RationalInterval::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(small.beta_bound(), int(2));
    }
}
