//! Real root isolation with Sturm sequences, exact sign determination on
//! intervals, and emptiness of one-dimensional sets `{x : p_i(x) <= 0 for all i}`.

use num::{One, Signed, Zero};
use serde::Serialize;

use super::interval::RationalInterval;
use super::rational::{midpoint, split_point, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sturm chain `p, p', -rem(p, p'), ...` of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone()];
        let mut prev = p.clone();
        let mut cur = p.derivative();
        while !cur.is_zero() {
            let (_, r) = prev.div_rem(&cur);
            chain.push(cur.clone());
            prev = cur;
            // Positive rescaling keeps the signs and tames coefficient growth.
            cur = -&r;
            if !cur.is_zero() {
                let lead = cur.leading().abs().recip();
                cur = cur.scale(&lead);
            }
        }
        Self { chain }
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.eval(x)))
    }

    /// Number of distinct roots in `(a, b)`; neither endpoint may be a root.
    pub fn count_between(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

fn count_variations(values: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// One real root: either known exactly (point enclosure) or bracketed by an
/// interval whose endpoints are not roots.
#[derive(Clone, Debug)]
pub struct RealRoot {
    enclosure: RationalInterval,
    multiplicity: usize,
    /// Square-free factor that has this root as a simple root.
    factor: UniPoly,
}

impl RealRoot {
    pub fn enclosure(&self) -> &RationalInterval {
        &self.enclosure
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.enclosure.is_point().then(|| self.enclosure.lo())
    }

    pub fn approx(&self) -> f64 {
        super::rational::to_f64(&self.enclosure.mid())
    }

    /// Bisects until the enclosure is narrower than `width` (or exact).
    pub fn refine(&mut self, width: &Rational) {
        while !self.enclosure.is_point() && &self.enclosure.width() >= width {
            self.bisect();
        }
    }

    fn bisect(&mut self) {
        let m = split_point(self.enclosure.lo(), self.enclosure.hi());
        self.bisect_at(m);
    }

    fn bisect_at(&mut self, m: Rational) {
        let a = self.enclosure.lo().clone();
        let b = self.enclosure.hi().clone();
        let vm = self.factor.eval(&m);
        self.enclosure = if vm.is_zero() {
            RationalInterval::point(m)
        } else if self.factor.eval(&a).is_positive() != vm.is_positive() {
            RationalInterval::hull(a, m)
        } else {
            RationalInterval::hull(m, b)
        };
    }

    /// True when the open bracket (or the point) meets the other enclosure.
    fn overlaps(&self, other: &RealRoot) -> bool {
        let (a, b) = (self.enclosure.lo(), self.enclosure.hi());
        let (c, d) = (other.enclosure.lo(), other.enclosure.hi());
        match (self.enclosure.is_point(), other.enclosure.is_point()) {
            (true, true) => a == c,
            (true, false) => c < a && a < d,
            (false, true) => a < c && c < b,
            (false, false) => a < d && c < b,
        }
    }
}

/// Isolates the real roots of `p` in the closed `domain`, sorted increasingly.
/// Each returned root carries its multiplicity.
pub fn isolate_real_roots(p: &UniPoly, domain: &RationalInterval) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    for (i, factor) in p.squarefree_decomposition().into_iter().enumerate() {
        if factor.is_constant() {
            continue;
        }
        for enclosure in isolate_squarefree(&factor, domain) {
            roots.push(RealRoot {
                enclosure,
                multiplicity: i + 1,
                factor: factor.clone(),
            });
        }
    }
    separate(&mut roots);
    roots.sort_by(|x, y| x.enclosure.lo().cmp(y.enclosure.lo()));
    Ok(roots)
}

/// Refines enclosures coming from different (coprime) factors until no two
/// of them overlap.
fn separate(roots: &mut [RealRoot]) {
    loop {
        let mut changed = false;
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if !roots[i].overlaps(&roots[j]) {
                    continue;
                }
                changed = true;
                let (left, right) = roots.split_at_mut(j);
                let (x, y) = (&mut left[i], &mut right[0]);
                match (x.exact().cloned(), y.exact().cloned()) {
                    (Some(p), None) => y.bisect_at(p),
                    (None, Some(p)) => x.bisect_at(p),
                    _ => {
                        if x.enclosure.width() >= y.enclosure.width() {
                            x.bisect();
                        } else {
                            y.bisect();
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn isolate_squarefree(f: &UniPoly, domain: &RationalInterval) -> Vec<RationalInterval> {
    let lo = domain.lo().clone();
    let hi = domain.hi().clone();
    let mut out = Vec::new();
    let mut g = f.clone();
    let lo_root = g.eval(&lo).is_zero();
    let hi_root = lo != hi && g.eval(&hi).is_zero();
    if lo_root {
        out.push(RationalInterval::point(lo.clone()));
        g = deflate(&g, &lo);
    }
    if hi_root {
        g = deflate(&g, &hi);
    }
    if lo < hi && !g.is_constant() {
        let sturm = SturmSequence::new(&g);
        isolate_open(&g, &sturm, lo, hi.clone(), &mut out);
    }
    if hi_root {
        out.push(RationalInterval::point(hi));
    }
    out
}

fn deflate(f: &UniPoly, root: &Rational) -> UniPoly {
    let lin = UniPoly::linear(-root, Rational::one(), f.var());
    f.div_exact(&lin).expect("exact root divides")
}

fn isolate_open(
    f: &UniPoly,
    sturm: &SturmSequence,
    a: Rational,
    b: Rational,
    out: &mut Vec<RationalInterval>,
) {
    match sturm.count_between(&a, &b) {
        0 => {}
        1 => out.push(pin_simple_root(f, a, b)),
        _ => {
            let m = split_point(&a, &b);
            if f.eval(&m).is_zero() {
                let g = deflate(f, &m);
                let sg = SturmSequence::new(&g);
                isolate_open(&g, &sg, a, m.clone(), out);
                out.push(RationalInterval::point(m.clone()));
                isolate_open(&g, &sg, m, b, out);
            } else {
                isolate_open(f, sturm, a, m.clone(), out);
                isolate_open(f, sturm, m, b, out);
            }
        }
    }
}

/// Narrows a bracket holding exactly one simple root, landing on the root
/// exactly when it is a rational of small height.
fn pin_simple_root(f: &UniPoly, mut a: Rational, mut b: Rational) -> RationalInterval {
    if f.degree() == Some(1) {
        return RationalInterval::point(-f.coeff(0) / f.coeff(1));
    }
    let sign_a = f.eval(&a).is_positive();
    for _ in 0..24 {
        let m = split_point(&a, &b);
        let vm = f.eval(&m);
        if vm.is_zero() {
            return RationalInterval::point(m);
        }
        if vm.is_positive() == sign_a {
            a = m;
        } else {
            b = m;
        }
    }
    RationalInterval::hull(a, b)
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_distinct_roots_open(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    if p.is_constant() {
        return 0;
    }
    let f = p.squarefree_part();
    let mut g = f.clone();
    for x in [a, b] {
        if g.eval(x).is_zero() {
            g = deflate(&g, x);
        }
    }
    if g.is_constant() {
        return 0;
    }
    SturmSequence::new(&g).count_between(a, b)
}

/// `1 + max_{k < n} |c_k| / |c_n|`, an upper bound on the modulus of every
/// complex root.
pub fn cauchy_bound(p: &UniPoly) -> Result<Rational> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = p.leading().abs();
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Rational::one() + max)
}

/// Exact sign behaviour of a polynomial over a closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    StrictlyPositive,
    StrictlyNegative,
    /// Vanishes somewhere but never takes both strict signs.
    HasZero,
    /// Takes both strictly positive and strictly negative values.
    Mixed,
}

/// Which signs a polynomial takes on an interval.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignProfile {
    pub positive: bool,
    pub negative: bool,
    pub zero: bool,
}

pub fn sign_profile(p: &UniPoly, domain: &RationalInterval) -> SignProfile {
    if p.is_zero() {
        return SignProfile {
            zero: true,
            ..Default::default()
        };
    }
    let roots = isolate_real_roots(p, domain).expect("nonzero polynomial");
    let mut profile = SignProfile {
        zero: !roots.is_empty(),
        ..Default::default()
    };
    for x in sample_points(&roots, domain) {
        let v = p.eval(&x);
        if v.is_positive() {
            profile.positive = true;
        } else if v.is_negative() {
            profile.negative = true;
        }
    }
    profile
}

/// Verdict computed from root isolation plus evaluation between roots; exact.
pub fn sign_on_interval(p: &UniPoly, domain: &RationalInterval) -> SignVerdict {
    let s = sign_profile(p, domain);
    match (s.positive, s.negative, s.zero) {
        (true, true, _) => SignVerdict::Mixed,
        (_, _, true) => SignVerdict::HasZero,
        (true, false, false) => SignVerdict::StrictlyPositive,
        (false, true, false) => SignVerdict::StrictlyNegative,
        (false, false, false) => unreachable!("nonempty interval has a sample"),
    }
}

pub fn is_nonnegative_on(p: &UniPoly, domain: &RationalInterval) -> bool {
    !sign_profile(p, domain).negative
}

pub fn is_nonpositive_on(p: &UniPoly, domain: &RationalInterval) -> bool {
    !sign_profile(p, domain).positive
}

/// Non-root points covering every sign-constant piece between the roots.
fn sample_points(roots: &[RealRoot], domain: &RationalInterval) -> Vec<Rational> {
    let mut pts = Vec::new();
    let mut prev = domain.lo().clone();
    let mut prev_is_root = roots.first().is_some_and(|r| r.exact() == Some(domain.lo()));
    if !prev_is_root {
        pts.push(prev.clone());
    }
    for r in roots {
        let e = r.enclosure();
        if e.lo() > &prev {
            pts.push(midpoint(&prev, e.lo()));
        }
        if !e.is_point() {
            pts.push(e.lo().clone());
            pts.push(e.hi().clone());
        }
        prev = e.hi().clone();
        prev_is_root = e.is_point();
    }
    if domain.hi() > &prev {
        pts.push(midpoint(&prev, domain.hi()));
        pts.push(domain.hi().clone());
    } else if !prev_is_root {
        pts.push(prev);
    }
    pts
}

/// A piece of the domain on which the polynomial with index `positive` is
/// strictly positive. Open ends sit on exact roots of the other polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionPiece {
    pub interval: RationalInterval,
    pub open_lo: bool,
    pub open_hi: bool,
    pub positive: usize,
}

/// Outcome of deciding whether `{x in domain : p_i(x) <= 0 for all i}` is empty.
#[derive(Clone, Debug)]
pub enum CommonNonpositive {
    /// Empty; the pieces cover the domain.
    Empty(Vec<ExclusionPiece>),
    /// A rational point in the set.
    Witness(Rational),
    /// The set is a finite set of irrational algebraic points; one is given.
    AlgebraicWitness(RealRoot),
}

pub fn common_nonpositive(polys: &[UniPoly], domain: &RationalInterval) -> CommonNonpositive {
    // Identically-zero constraints hold everywhere.
    let live: Vec<(usize, &UniPoly)> = polys
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    if live.is_empty() {
        return CommonNonpositive::Witness(domain.lo().clone());
    }
    let mut h = UniPoly::one(live[0].1.var());
    for (_, p) in &live {
        if !p.is_constant() {
            h = &h * &p.squarefree_part();
        }
    }
    let roots = if h.is_constant() {
        Vec::new()
    } else {
        isolate_real_roots(&h, domain).expect("nonzero product")
    };
    let sq: Vec<UniPoly> = live.iter().map(|(_, p)| p.squarefree_part()).collect();

    let mut pieces = Vec::new();
    let mut algebraic: Option<RealRoot> = None;
    for r in &roots {
        let e = r.enclosure();
        let mut positive = None;
        for (k, (idx, p)) in live.iter().enumerate() {
            let pos = match r.exact() {
                Some(x) => p.eval(x).is_positive(),
                None => {
                    let vanishes = !p.is_constant()
                        && SturmSequence::new(&sq[k]).count_between(e.lo(), e.hi()) == 1;
                    !vanishes && p.eval(e.lo()).is_positive()
                }
            };
            if pos {
                positive = Some(*idx);
                break;
            }
        }
        match positive {
            Some(idx) => pieces.push(ExclusionPiece {
                interval: e.clone(),
                open_lo: false,
                open_hi: false,
                positive: idx,
            }),
            None => match r.exact() {
                Some(x) => return CommonNonpositive::Witness(x.clone()),
                None => {
                    if algebraic.is_none() {
                        algebraic = Some(r.clone());
                    }
                }
            },
        }
    }

    // Gaps between consecutive root enclosures (and the domain ends).
    let mut bounds: Vec<(Rational, bool)> = vec![(domain.lo().clone(), false)];
    for r in &roots {
        let e = r.enclosure();
        bounds.push((e.lo().clone(), e.is_point()));
        bounds.push((e.hi().clone(), e.is_point()));
    }
    bounds.push((domain.hi().clone(), false));
    for pair in bounds.chunks(2) {
        let (a, a_open) = &pair[0];
        let (b, b_open) = &pair[1];
        if a >= b {
            continue;
        }
        let m = midpoint(a, b);
        match live.iter().find(|(_, p)| p.eval(&m).is_positive()) {
            Some((idx, _)) => pieces.push(ExclusionPiece {
                interval: RationalInterval::hull(a.clone(), b.clone()),
                open_lo: *a_open,
                open_hi: *b_open,
                positive: *idx,
            }),
            None => return CommonNonpositive::Witness(m),
        }
    }
    if let Some(r) = algebraic {
        return CommonNonpositive::AlgebraicWitness(r);
    }
    pieces.sort_by(|x, y| x.interval.lo().cmp(y.interval.lo()));
    CommonNonpositive::Empty(merge_pieces(pieces))
}

fn merge_pieces(pieces: Vec<ExclusionPiece>) -> Vec<ExclusionPiece> {
    let mut out: Vec<ExclusionPiece> = Vec::new();
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.positive == p.positive && last.interval.hi() == p.interval.lo() {
                last.interval = RationalInterval::hull(last.interval.lo().clone(), p.interval.hi().clone());
                last.open_hi = p.open_hi;
                continue;
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use crate::algebra::unipoly::Var;

    fn w(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Omega)
    }

    fn iv(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::new(a, b).unwrap()
    }

    #[test]
    fn perfect_square_root_is_exact() {
        // w^2 - 4 on [0, 10]
        let roots = isolate_real_roots(&w(&[-4, 0, 1]), &iv(int(0), int(10))).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact(), Some(&int(2)));
        assert!(roots[0].enclosure().contains(&int(2)));
    }

    #[test]
    fn no_real_roots() {
        let roots = isolate_real_roots(&w(&[1, 0, 1]), &iv(int(-10), int(10))).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let err = isolate_real_roots(&UniPoly::zero(Var::Omega), &iv(int(0), int(1))).unwrap_err();
        assert_eq!(err.to_string(), "zero polynomial has no isolated roots");
    }

    #[test]
    fn irrational_roots_are_bracketed_and_refinable() {
        // w^2 - 2 on [-2, 2]
        let mut roots = isolate_real_roots(&w(&[-2, 0, 1]), &iv(int(-2), int(2))).unwrap();
        assert_eq!(roots.len(), 2);
        let width = ratio(1, 1_000_000);
        roots[1].refine(&width);
        assert!(roots[1].enclosure().width() < width);
        assert!((roots[1].approx() - 2f64.sqrt()).abs() < 1e-6);
        assert!(roots[0].approx() < 0.0);
    }

    #[test]
    fn multiplicities_and_endpoint_roots() {
        // (w - 1)^2 (w + 1) w on [-1, 1]: roots at both endpoints
        let p = &(&w(&[-1, 1]).pow(2) * &w(&[1, 1])) * &w(&[0, 1]);
        let roots = isolate_real_roots(&p, &iv(int(-1), int(1))).unwrap();
        let got: Vec<(Option<Rational>, usize)> = roots
            .iter()
            .map(|r| (r.exact().cloned(), r.multiplicity()))
            .collect();
        assert_eq!(
            got,
            vec![(Some(int(-1)), 1), (Some(int(0)), 1), (Some(int(1)), 2)]
        );
    }

    #[test]
    fn sign_examples() {
        let a = Var::Alpha;
        let unit = iv(int(-1), int(1));
        assert_eq!(
            sign_on_interval(&UniPoly::from_ints(&[1, 0, 1], a), &unit),
            SignVerdict::StrictlyPositive
        );
        assert_eq!(
            sign_on_interval(
                &UniPoly::from_ints(&[4, 0, -4], a),
                &iv(ratio(-2, 5), ratio(4, 5))
            ),
            SignVerdict::StrictlyPositive
        );
        assert_eq!(sign_on_interval(&UniPoly::x(a), &unit), SignVerdict::Mixed);
        assert_eq!(
            sign_on_interval(&UniPoly::from_ints(&[0, 0, 1], a), &unit),
            SignVerdict::HasZero
        );
        assert_eq!(
            sign_on_interval(&UniPoly::from_ints(&[-3], a), &unit),
            SignVerdict::StrictlyNegative
        );
    }

    #[test]
    fn cauchy_bound_examples() {
        assert_eq!(cauchy_bound(&w(&[-4, 0, 1])).unwrap(), int(5));
        assert_eq!(cauchy_bound(&w(&[4, 0, 5, 0, 1])).unwrap(), int(6));
        assert_eq!(cauchy_bound(&w(&[0, 0, 0, 1])).unwrap(), int(1));
        assert!(cauchy_bound(&UniPoly::zero(Var::Omega)).is_err());
    }

    #[test]
    fn common_nonpositive_finds_witnesses_and_covers() {
        let dom = iv(int(-3), int(3));
        // {x <= 0} and {-x <= 0} meet exactly at 0
        match common_nonpositive(&[w(&[0, 1]), w(&[0, -1])], &dom) {
            CommonNonpositive::Witness(x) => assert_eq!(x, int(0)),
            other => panic!("{other:?}"),
        }
        // {x^2 - 2 <= 0} and {2 - x^2 <= 0} meet only at +-sqrt 2
        assert!(matches!(
            common_nonpositive(&[w(&[-2, 0, 1]), w(&[2, 0, -1])], &dom),
            CommonNonpositive::AlgebraicWitness(_)
        ));
        // {x - 1 <= 0} and {2 - x <= 0} are disjoint
        match common_nonpositive(&[w(&[-1, 1]), w(&[2, -1])], &dom) {
            CommonNonpositive::Empty(pieces) => {
                assert_eq!(pieces.first().unwrap().interval.lo(), &int(-3));
                assert_eq!(pieces.last().unwrap().interval.hi(), &int(3));
                for p in &pieces {
                    let m = p.interval.mid();
                    let poly = [w(&[-1, 1]), w(&[2, -1])][p.positive].clone();
                    assert!(poly.eval(&m) > int(0));
                }
            }
            other => panic!("{other:?}"),
        }
    }
}
