//! Generators and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::path::PathBuf;

use hopf_cert::algebra::rational::to_f64;
use hopf_cert::algebra::{int, ratio, Rational, RationalInterval, UniPoly, Var};
use hopf_cert::degree::{crossing_identity_check, poly_roots, track_roots, winding_number, EventKind, SelectorPath};
use hopf_cert::family::IntervalPoly;
use hopf_cert::regions::PolygonDisk;
use hopf_cert::stability::{kharitonov_hurwitz, q_unstable_certify, root_count, QOutcome, RootCount};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KHARITONOV_FAMILIES: usize = 500;
pub const KHARITONOV_SAMPLES: usize = 2000;
pub const SOUNDNESS_FAMILIES: usize = 40;
pub const SOUNDNESS_SAMPLES: usize = 2000;
pub const ROUTH_POLYS: usize = 1000;
/// `|Re|` below this is an imaginary eigenvalue.
pub const AXIS_FILTER: f64 = 1e-6;
pub const ARGUMENT_PAIRS: usize = 200;
/// Smallest distance between a zero and a rectangle boundary.
pub const CLEARANCE: f64 = 1e-3;
pub const CROSSING_SELECTORS: usize = 100;

pub fn problem(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples")).join(format!("{name}.prob"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn iv(lo: Rational, hi: Rational) -> RationalInterval {
    RationalInterval::new(lo, hi).expect("ordered")
}

pub fn lam(c: &[Rational]) -> UniPoly {
    UniPoly::new(c.to_vec(), Var::Lambda)
}

pub fn alpha_poly(c: &[Rational]) -> UniPoly {
    UniPoly::new(c.to_vec(), Var::Alpha)
}

/// `m / 64` with `m` uniform in `0..=64`, a point of `[lo, hi]`.
fn sample_in(r: &mut ChaCha8Rng, i: &RationalInterval) -> Rational {
    i.lo() + i.width() * ratio(r.gen_range(0..=64), 64)
}

pub fn is_hurwitz(p: &UniPoly) -> bool {
    root_count(p).is_ok_and(|rc| rc.is_hurwitz())
}

/// A random monic interval polynomial of degree `1..=6` with integer
/// endpoints in `[-9, 9]`. Half are widened from a stable center so both
/// outcomes occur.
pub fn random_kharitonov_case(r: &mut ChaCha8Rng) -> IntervalPoly {
    let n = r.gen_range(1..=6);
    let center: Option<Vec<i64>> = r.gen_bool(0.5).then(|| {
        (0..400).find_map(|_| {
            let c: Vec<i64> = (0..n).map(|_| r.gen_range(1..=9)).collect();
            let mut full: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
            full.push(int(1));
            is_hurwitz(&lam(&full)).then_some(c)
        })
    }).flatten();
    let intervals = (0..n)
        .map(|k| {
            let (lo, hi) = match &center {
                Some(c) => ((c[k] - r.gen_range(0..=2)).max(-9), (c[k] + r.gen_range(0..=2)).min(9)),
                None => {
                    let lo = r.gen_range(-9..=9);
                    (lo, (lo + r.gen_range(0..=4)).min(9))
                }
            };
            iv(int(lo), int(hi))
        })
        .collect();
    IntervalPoly::new(intervals).expect("positive degree")
}

/// Every vertex member and `samples` random members are Hurwitz.
pub fn brute_force_hurwitz(s: &IntervalPoly, r: &mut ChaCha8Rng, samples: usize) -> bool {
    let n = s.degree();
    let with_lead = |c: Vec<Rational>| {
        let mut c = c;
        c.push(int(1));
        lam(&c)
    };
    for mask in 0..(1u32 << n) {
        let c = (0..n)
            .map(|k| {
                let i = s.interval(k);
                if mask >> k & 1 == 1 { i.hi().clone() } else { i.lo().clone() }
            })
            .collect();
        if !is_hurwitz(&with_lead(c)) {
            return false;
        }
    }
    (0..samples).all(|_| {
        let c = (0..n).map(|k| sample_in(r, &s.interval(k))).collect();
        is_hurwitz(&with_lead(c))
    })
}

pub struct SuiteResult {
    pub cases: usize,
    pub failures: usize,
    /// Suite-specific tally, e.g. how many cases were stable.
    pub note: String,
}

pub fn kharitonov_suite(families: usize, samples: usize) -> SuiteResult {
    let mut r = rng(1);
    let (mut failures, mut stable) = (0, 0);
    for _ in 0..families {
        let s = random_kharitonov_case(&mut r);
        let fast = kharitonov_hurwitz(&s);
        let slow = brute_force_hurwitz(&s, &mut r, samples);
        stable += slow as usize;
        failures += (fast != slow) as usize;
    }
    SuiteResult { cases: families, failures, note: format!("{stable} stable") }
}

/// A random monic polynomial with prescribed real and complex-pair roots,
/// widened into an interval polynomial by `eps` per coefficient.
pub fn random_q_case(r: &mut ChaCha8Rng) -> (IntervalPoly, UniPoly) {
    let mut p = UniPoly::one(Var::Lambda);
    for _ in 0..r.gen_range(0..=2) {
        let mut root = ratio(r.gen_range(1..=6), 2);
        if r.gen_bool(0.4) {
            root = -root;
        }
        p = &p * &lam(&[-root, int(1)]);
    }
    for _ in 0..r.gen_range(1..=2) {
        // l^2 - 2 m l + m^2 + w^2
        let m = ratio(r.gen_range(-6..=6), 4);
        let w = ratio(r.gen_range(1..=8), 2);
        p = &p * &lam(&[&m * &m + &w * &w, int(-2) * &m, int(1)]);
    }
    let n = p.degree().expect("nonzero");
    let eps = ratio(r.gen_range(0..=3), 40);
    let intervals = (0..n).map(|k| iv(p.coeff(k) - &eps, p.coeff(k) + &eps)).collect();
    (IntervalPoly::new(intervals).expect("positive degree"), p)
}

/// On each certified case, `samples` members all have `q` unstable roots and
/// none on the axis.
pub fn soundness_suite(families: usize, samples: usize) -> SuiteResult {
    let mut r = rng(2);
    let (mut certified, mut violations, mut members) = (0, 0, 0);
    for _ in 0..families {
        let (s, rep) = random_q_case(&mut r);
        let Ok(QOutcome::Certified(c)) = q_unstable_certify(&s, &rep) else { continue };
        certified += 1;
        let n = s.degree();
        for _ in 0..samples {
            let mut coeffs: Vec<Rational> = (0..n).map(|k| sample_in(&mut r, &s.interval(k))).collect();
            coeffs.push(int(1));
            let rc = root_count(&lam(&coeffs)).expect("nonzero");
            members += 1;
            if rc.n_pos != c.q || rc.n_imag != 0 {
                violations += 1;
            }
        }
    }
    SuiteResult { cases: members, failures: violations, note: format!("{certified} certified families") }
}

/// Companion-matrix classification. A zero root of multiplicity `m` is read
/// off the vanishing low coefficients, since eigenvalues would scatter it by
/// about `eps^(1/m)`.
pub fn eigen_count(p: &UniPoly) -> RootCount {
    let c = p.to_f64_coeffs();
    let zeros = c.iter().take_while(|x| **x == 0.0).count();
    let mut rc = RootCount { n_imag: zeros, ..RootCount::default() };
    for z in poly_roots(&c[zeros..]) {
        if z.re.abs() < AXIS_FILTER {
            rc.n_imag += 1;
        } else if z.re < 0.0 {
            rc.n_neg += 1;
        } else {
            rc.n_pos += 1;
        }
    }
    rc
}

/// Random integer polynomial of degree `1..=10`; a quarter carry a factor
/// `l^2 + k^2` and some a factor `l`.
pub fn random_routh_case(r: &mut ChaCha8Rng) -> UniPoly {
    let n = r.gen_range(1..=8);
    let mut c: Vec<Rational> = (0..n).map(|_| int(r.gen_range(-9..=9))).collect();
    let mut lead = r.gen_range(1..=9);
    if r.gen_bool(0.5) {
        lead = -lead;
    }
    c.push(int(lead));
    let mut p = lam(&c);
    if r.gen_bool(0.25) {
        let k = r.gen_range(1..=3);
        p = &p * &lam(&[int(k * k), int(0), int(1)]);
    } else if r.gen_bool(0.1) {
        p = &p * &lam(&[int(0), int(1)]);
    }
    p
}

pub fn routh_suite(count: usize) -> SuiteResult {
    let mut r = rng(3);
    let mut failures = 0;
    let mut with_axis = 0;
    for _ in 0..count {
        let p = random_routh_case(&mut r);
        let exact = root_count(&p).expect("nonzero");
        with_axis += (exact.n_imag > 0) as usize;
        if exact != eigen_count(&p) {
            failures += 1;
        }
    }
    SuiteResult { cases: count, failures, note: format!("{with_axis} with axis roots") }
}

/// Zero of `(alpha, beta) -> P(alpha)(i beta)` with `beta > 0` and its
/// winding contribution.
#[derive(Clone, Copy, Debug)]
pub struct PlanarZero {
    pub alpha: f64,
    pub beta: f64,
    pub degree: i64,
}

/// A product of pairs `l^2 - 2 m(a) l + m(a)^2 + w^2` with `m(a) = s (a - c)`
/// (a crossing) or `s (a - c)^2` (a touch), times stable real factors. Zeros
/// sit at `(c, w)` and are kept `2 * CLEARANCE` apart.
pub fn random_structured_selector(r: &mut ChaCha8Rng, range: &RationalInterval) -> (SelectorPath, Vec<PlanarZero>) {
    let mut factors = Vec::new();
    let mut zeros: Vec<PlanarZero> = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let (c, w) = loop {
            let c = range.lo() + range.width() * ratio(r.gen_range(4..=60), 64);
            let w = ratio(r.gen_range(2..=24), 8);
            let (cf, wf) = (to_f64(&c), to_f64(&w));
            if zeros.iter().all(|z| (z.alpha - cf).abs() + (z.beta - wf).abs() > 0.05) {
                break (c, w);
            }
        };
        let mut s = ratio(r.gen_range(1..=6), 2);
        if r.gen_bool(0.5) {
            s = -s;
        }
        let touch = r.gen_bool(0.2);
        // m(a) as a polynomial in a
        let m = if touch {
            alpha_poly(&[&s * &c * &c, int(-2) * &s * &c, s.clone()])
        } else {
            alpha_poly(&[-(&s * &c), s.clone()])
        };
        let w2 = alpha_poly(&[&w * &w]);
        factors.push(vec![&(&m * &m) + &w2, m.scale(&int(-2)), alpha_poly(&[int(1)])]);
        zeros.push(PlanarZero {
            alpha: to_f64(&c),
            beta: to_f64(&w),
            // the pair moves right through the axis when s > 0
            degree: if touch { 0 } else if s > int(0) { -1 } else { 1 },
        });
    }
    for _ in 0..r.gen_range(0..=2) {
        factors.push(vec![alpha_poly(&[int(r.gen_range(1..=3))]), alpha_poly(&[int(1)])]);
    }
    (SelectorPath::from_factors(&factors, range.clone()).expect("monic"), zeros)
}

/// Random rectangle inside `[-1, 1] x [1/8, 4]` keeping `CLEARANCE` from
/// every zero, or `None`. Half of them are drawn around one of the zeros.
pub fn clear_rectangle(r: &mut ChaCha8Rng, zeros: &[PlanarZero]) -> Option<(Rational, Rational, Rational, Rational)> {
    let target = (r.gen_bool(0.5) && !zeros.is_empty()).then(|| zeros[0]);
    let mut pick = |lo: i64, hi: i64, around: Option<f64>| {
        let (a, b) = match around {
            Some(x) => {
                let c = (x * 100.0).round() as i64;
                ((c - r.gen_range(1..=40)).max(lo), (c + r.gen_range(1..=40)).min(hi))
            }
            None => {
                let a = r.gen_range(lo..hi);
                (a, r.gen_range(a + 1..=hi))
            }
        };
        (ratio(a, 100), ratio(b, 100))
    };
    let (a0, a1) = pick(-100, 100, target.map(|z| z.alpha));
    let (b0, b1) = pick(13, 400, target.map(|z| z.beta));
    if a0 >= a1 || b0 >= b1 {
        return None;
    }
    let edges = [to_f64(&a0), to_f64(&a1), to_f64(&b0), to_f64(&b1)];
    zeros.iter().all(|z| clear_of(z, edges)).then_some((a0, a1, b0, b1))
}

/// `z` is at least `CLEARANCE` from the boundary of `[a0, a1] x [b0, b1]`.
pub fn clear_of(z: &PlanarZero, [a0, a1, b0, b1]: [f64; 4]) -> bool {
    let near_a = (z.alpha - a0).abs() < CLEARANCE || (z.alpha - a1).abs() < CLEARANCE;
    let near_b = (z.beta - b0).abs() < CLEARANCE || (z.beta - b1).abs() < CLEARANCE;
    let in_a = z.alpha > a0 - CLEARANCE && z.alpha < a1 + CLEARANCE;
    let in_b = z.beta > b0 - CLEARANCE && z.beta < b1 + CLEARANCE;
    !((near_a && in_b) || (near_b && in_a))
}

pub fn inside(z: &PlanarZero, [a0, a1, b0, b1]: [f64; 4]) -> bool {
    z.alpha > a0 && z.alpha < a1 && z.beta > b0 && z.beta < b1
}

/// Signed count of axis crossings seen by dense eigenvalue tracking inside
/// the rectangle.
pub fn tracked_count(sel: &SelectorPath, [a0, a1, b0, b1]: [f64; 4], grid: usize) -> hopf_cert::Result<i64> {
    let path = track_roots(sel, grid)?;
    Ok(path
        .events
        .iter()
        .filter(|e| e.alpha > a0 && e.alpha < a1 && e.beta > b0 && e.beta < b1)
        .map(|e| match e.kind {
            EventKind::CrossingRight => -1,
            EventKind::CrossingLeft => 1,
            EventKind::Touch => 0,
        })
        .sum())
}

/// Winding number against tracked zero counts on random pairs.
pub fn argument_suite(pairs: usize) -> SuiteResult {
    let mut r = rng(4);
    let range = iv(int(-1), int(1));
    let (mut done, mut failures, mut nonzero) = (0, 0, 0);
    while done < pairs {
        let (sel, zeros) = random_structured_selector(&mut r, &range);
        let Some((a0, a1, b0, b1)) = clear_rectangle(&mut r, &zeros) else { continue };
        let edges = [to_f64(&a0), to_f64(&a1), to_f64(&b0), to_f64(&b1)];
        done += 1;
        let rect = PolygonDisk::rectangle(a0.clone(), a1.clone(), b0, b1).expect("rectangle");
        let local = SelectorPath::free(sel.coeffs().to_vec(), iv(a0, a1)).expect("selector");
        let w = winding_number(&sel, &rect).map(|w| w.winding);
        let t = tracked_count(&local, edges, 401);
        match (w, t) {
            (Ok(w), Ok(t)) if w == t => nonzero += (w != 0) as usize,
            _ => failures += 1,
        }
    }
    SuiteResult { cases: pairs, failures, note: format!("{nonzero} nonzero windings") }
}

/// A random monic selector whose coefficients are random polynomials in
/// alpha, with the constant term bounded away from zero.
pub fn random_general_selector(r: &mut ChaCha8Rng, range: &RationalInterval) -> SelectorPath {
    let n = r.gen_range(2..=5);
    let mut coeffs: Vec<UniPoly> = (0..n)
        .map(|k| {
            if k == 0 {
                alpha_poly(&[int(r.gen_range(1..=9))])
            } else {
                let deg = r.gen_range(0..=2);
                alpha_poly(&(0..=deg).map(|_| ratio(r.gen_range(-12..=12), 4)).collect::<Vec<_>>())
            }
        })
        .collect();
    coeffs.push(alpha_poly(&[int(1)]));
    SelectorPath::free(coeffs, range.clone()).expect("monic")
}

fn hyperbolic_ends(sel: &SelectorPath) -> bool {
    let range = sel.alpha_range();
    [range.lo(), range.hi()]
        .into_iter()
        .all(|a| root_count(&sel.at(a)).is_ok_and(|rc| rc.is_hyperbolic()))
}

/// The crossing identity on random selectors with hyperbolic endpoints,
/// half structured and half general, over one rectangle spanning the strip.
pub fn crossing_suite(count: usize) -> SuiteResult {
    let mut r = rng(5);
    let range = iv(int(-1), int(1));
    let (mut failures, mut moving) = (0, 0);
    let mut done = 0;
    while done < count {
        let sel = if done % 2 == 0 {
            random_structured_selector(&mut r, &range).0
        } else {
            random_general_selector(&mut r, &range)
        };
        if !hyperbolic_ends(&sel) {
            continue;
        }
        done += 1;
        let top = sel
            .coeffs()
            .iter()
            .map(|c| hopf_cert::family::sup_abs(c, &range))
            .fold(int(1), |acc, x| acc + x);
        let disk = PolygonDisk::rectangle(int(-1), int(1), ratio(1, 1000), top).expect("rectangle");
        match crossing_identity_check(&sel, &[disk]) {
            Ok(c) if c.holds => moving += (c.t_minus != c.t_plus) as usize,
            _ => failures += 1,
        }
    }
    SuiteResult { cases: count, failures, note: format!("{moving} with a change in unstable roots") }
}
