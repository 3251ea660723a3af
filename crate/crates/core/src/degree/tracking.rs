use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::numeric::poly_roots;
use super::selector::SelectorPath;
use crate::algebra::rational::to_f64;
use crate::error::{Error, Result};

/// `|Re lambda| / max(1, |lambda|)` below this counts as on the axis.
const AXIS_TOL: f64 = 1e-9;
/// Step halvings allowed when a match is ambiguous.
const MAX_HALVINGS: usize = 8;
const REFINE_STEPS: usize = 80;
/// Relative tolerance on the frequency ratio of a resonance.
const RATIO_TOL: f64 = 1e-6;
/// Events closer than this in alpha are simultaneous.
const SAME_ALPHA: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// Moves into the right half-plane as alpha grows.
    CrossingRight,
    CrossingLeft,
    /// Reaches the axis and returns to the same side.
    Touch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisEvent {
    pub branch: usize,
    pub alpha: f64,
    pub beta: f64,
    pub kind: EventKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sliding {
    pub branch: usize,
    pub alpha_start: f64,
    pub alpha_end: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Resonance {
    pub alpha: f64,
    pub beta_small: f64,
    pub j: usize,
}

/// Roots of a selector on a uniform alpha grid; `roots[k][b]` is branch `b`
/// at `alpha[k]`.
#[derive(Clone, Debug)]
pub struct RootPath {
    pub selector: SelectorPath,
    pub alpha: Vec<f64>,
    pub roots: Vec<Vec<Complex64>>,
    /// Axis events with `beta >= 0`.
    pub events: Vec<AxisEvent>,
    pub sliding: Vec<Sliding>,
}

impl RootPath {
    pub fn branches(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,re,im,branch_id\n");
        for (a, row) in self.alpha.iter().zip(&self.roots) {
            for (b, z) in row.iter().enumerate() {
                let _ = writeln!(out, "{a},{},{},{b}", z.re, z.im);
            }
        }
        out
    }

    /// Largest relative coefficient mismatch between `prod (lambda - r)` and
    /// the selector over all samples.
    pub fn vieta_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, row) in self.alpha.iter().zip(&self.roots) {
            let c = self.selector.coeffs_f64(*a);
            let lead = c[c.len() - 1];
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            for r in row {
                let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (i, p) in prod.iter().enumerate() {
                    next[i + 1] += p;
                    next[i] -= p * r;
                }
                prod = next;
            }
            let scale = c.iter().map(|x| (x / lead).abs()).fold(1.0, f64::max);
            for (k, p) in prod.iter().enumerate() {
                worst = worst.max((p - c[k] / lead).norm() / scale);
            }
        }
        worst
    }
}

fn on_axis(z: Complex64) -> bool {
    z.re.abs() <= AXIS_TOL * z.norm().max(1.0)
}

fn side(z: Complex64) -> i8 {
    if on_axis(z) {
        0
    } else if z.re > 0.0 {
        1
    } else {
        -1
    }
}

fn roots_at(sel: &SelectorPath, alpha: f64) -> Vec<Complex64> {
    poly_roots(&sel.coeffs_f64(alpha))
}

fn nearest(roots: &[Complex64], guess: Complex64) -> Complex64 {
    *roots
        .iter()
        .min_by(|a, b| (*a - guess).norm().total_cmp(&(*b - guess).norm()))
        .expect("positive degree")
}

/// Greedy assignment of `next` to the branches of `prev` by increasing
/// distance.
fn greedy_match(prev: &[Complex64], next: &[Complex64]) -> Vec<Complex64> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.len() * next.len());
    for (i, p) in prev.iter().enumerate() {
        for (j, q) in next.iter().enumerate() {
            pairs.push(((p - q).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut out = vec![None; prev.len()];
    let mut used = vec![false; next.len()];
    for (_, i, j) in pairs {
        if out[i].is_none() && !used[j] {
            out[i] = Some(next[j]);
            used[j] = true;
        }
    }
    out.into_iter().map(|z| z.expect("same count")).collect()
}

/// Some branch has its two nearest candidates within a factor 2.
fn ambiguous(prev: &[Complex64], next: &[Complex64]) -> bool {
    prev.iter().any(|p| {
        let mut d: Vec<f64> = next.iter().map(|q| (p - q).norm()).collect();
        d.sort_by(f64::total_cmp);
        d.len() > 1 && d[1] < 2.0 * d[0] && d[1] > 1e-6 * p.norm().max(1.0)
    })
}

fn advance(sel: &SelectorPath, a0: f64, prev: &[Complex64], a1: f64, next: Vec<Complex64>, halvings: usize) -> Vec<Complex64> {
    if halvings >= MAX_HALVINGS || !ambiguous(prev, &next) {
        return greedy_match(prev, &next);
    }
    let am = 0.5 * (a0 + a1);
    let mid = advance(sel, a0, prev, am, roots_at(sel, am), halvings + 1);
    advance(sel, am, &mid, a1, next, halvings + 1)
}

/// Tracks all roots of `sel` over `grid_size` equally spaced alphas and
/// records axis crossings, touches and sliding runs.
pub fn track_roots(sel: &SelectorPath, grid_size: usize) -> Result<RootPath> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument("grid size must be at least 2".into()));
    }
    let lo = to_f64(sel.alpha_range().lo());
    let hi = to_f64(sel.alpha_range().hi());
    let alpha: Vec<f64> = (0..grid_size)
        .map(|k| lo + (hi - lo) * k as f64 / (grid_size - 1) as f64)
        .collect();
    let raw: Vec<Vec<Complex64>> = alpha.par_iter().map(|a| roots_at(sel, *a)).collect();
    let mut roots = Vec::with_capacity(grid_size);
    let mut iter = raw.into_iter();
    roots.push(iter.next().expect("grid_size >= 2"));
    for (k, next) in iter.enumerate() {
        let matched = advance(sel, alpha[k], &roots[k], alpha[k + 1], next, 0);
        roots.push(matched);
    }
    let mut path = RootPath {
        selector: sel.clone(),
        alpha,
        roots,
        events: Vec::new(),
        sliding: Vec::new(),
    };
    let per_branch: Vec<(Vec<AxisEvent>, Vec<Sliding>)> =
        (0..path.branches()).into_par_iter().map(|b| branch_events(&path, b)).collect();
    for (ev, sl) in per_branch {
        path.events.extend(ev);
        path.sliding.extend(sl);
    }
    path.events
        .sort_by(|x, y| x.alpha.total_cmp(&y.alpha).then(x.beta.total_cmp(&y.beta)));
    Ok(path)
}

/// Bisection on alpha for the point where the branch through `z0` at `a0`
/// changes side of the axis.
fn refine_crossing(sel: &SelectorPath, mut a0: f64, mut z0: Complex64, mut a1: f64, mut z1: Complex64) -> (f64, Complex64) {
    let s0 = side(z0);
    for _ in 0..REFINE_STEPS {
        let am = 0.5 * (a0 + a1);
        if am <= a0 || am >= a1 {
            break;
        }
        let zm = nearest(&roots_at(sel, am), 0.5 * (z0 + z1));
        if side(zm) == 0 {
            return (am, zm);
        }
        if side(zm) == s0 {
            a0 = am;
            z0 = zm;
        } else {
            a1 = am;
            z1 = zm;
        }
    }
    let am = 0.5 * (a0 + a1);
    (am, nearest(&roots_at(sel, am), 0.5 * (z0 + z1)))
}

/// Golden-section minimisation of `|Re|` along the branch near `guess`.
fn refine_touch(sel: &SelectorPath, mut a0: f64, mut a1: f64, guess: Complex64) -> (f64, Complex64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let eval = |a: f64| nearest(&roots_at(sel, a), guess);
    let mut x1 = a1 - g * (a1 - a0);
    let mut x2 = a0 + g * (a1 - a0);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    for _ in 0..REFINE_STEPS {
        if f1.re.abs() <= f2.re.abs() {
            a1 = x2;
            x2 = x1;
            f2 = f1;
            x1 = a1 - g * (a1 - a0);
            f1 = eval(x1);
        } else {
            a0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = a0 + g * (a1 - a0);
            f2 = eval(x2);
        }
    }
    if f1.re.abs() <= f2.re.abs() {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn branch_events(path: &RootPath, b: usize) -> (Vec<AxisEvent>, Vec<Sliding>) {
    let sel = &path.selector;
    let a = &path.alpha;
    let z: Vec<Complex64> = path.roots.iter().map(|r| r[b]).collect();
    let s: Vec<i8> = z.iter().map(|w| side(*w)).collect();
    let n = z.len();
    let mut events = Vec::new();
    let mut sliding = Vec::new();
    let mut push = |alpha: f64, w: Complex64, kind: EventKind| {
        if w.im >= 0.0 {
            events.push(AxisEvent {
                branch: b,
                alpha,
                beta: w.im,
                kind,
            });
        }
    };
    let crossing = |from: i8| {
        if from < 0 {
            EventKind::CrossingRight
        } else {
            EventKind::CrossingLeft
        }
    };
    let mut k = 0;
    while k < n {
        if s[k] != 0 {
            if k + 1 < n && s[k + 1] != 0 && s[k + 1] != s[k] {
                let (am, zm) = refine_crossing(sel, a[k], z[k], a[k + 1], z[k + 1]);
                push(am, zm, crossing(s[k]));
            } else if k > 0 && k + 1 < n && s[k - 1] == s[k] && s[k + 1] == s[k] {
                let local_min = z[k].re.abs() < z[k - 1].re.abs() && z[k].re.abs() <= z[k + 1].re.abs();
                if local_min && z[k].re.abs() < 1e-2 * z[k].norm().max(1.0) {
                    let (am, zm) = refine_touch(sel, a[k - 1], a[k + 1], z[k]);
                    if on_axis(zm) {
                        push(am, zm, EventKind::Touch);
                    }
                }
            }
            k += 1;
            continue;
        }
        // run of on-axis samples
        let start = k;
        while k < n && s[k] == 0 {
            k += 1;
        }
        let end = k - 1;
        if end > start {
            sliding.push(Sliding {
                branch: b,
                alpha_start: a[start],
                alpha_end: a[end],
            });
            continue;
        }
        let before = if start > 0 { s[start - 1] } else { 0 };
        let after = if k < n { s[k] } else { 0 };
        let kind = match (before, after) {
            (x, y) if x != 0 && y != 0 && x != y => crossing(x),
            (x, y) if x != 0 && x == y => EventKind::Touch,
            (0, y) if y != 0 => crossing(-y),
            (x, _) => crossing(x),
        };
        push(a[start], z[start], kind);
    }
    (events, sliding)
}

fn ratio_match(big: f64, small: f64, max_ratio: usize) -> Option<usize> {
    if small <= 0.0 {
        return None;
    }
    let r = big / small;
    let j = r.round();
    (j >= 2.0 && j <= max_ratio as f64 && (r - j).abs() <= RATIO_TOL * j).then_some(j as usize)
}

/// Alphas where two roots sit on the imaginary axis (`beta > 0`) with
/// frequency ratio `j` in `2 ..= max_ratio`.
pub fn find_resonances(path: &RootPath, max_ratio: usize) -> Vec<Resonance> {
    let sel = &path.selector;
    let mut out: Vec<Resonance> = Vec::new();
    let mut record = |alpha: f64, b1: f64, b2: f64| {
        let (small, big) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        if let Some(j) = ratio_match(big, small, max_ratio) {
            if !out.iter().any(|r| (r.alpha - alpha).abs() <= SAME_ALPHA && r.j == j) {
                out.push(Resonance {
                    alpha,
                    beta_small: small,
                    j,
                });
            }
        }
    };
    let ev: Vec<&AxisEvent> = path.events.iter().filter(|e| e.beta > 0.0).collect();
    for (i, e) in ev.iter().enumerate() {
        for f in &ev[i + 1..] {
            if f.branch != e.branch && (e.alpha - f.alpha).abs() <= SAME_ALPHA {
                record(0.5 * (e.alpha + f.alpha), e.beta, f.beta);
            }
        }
        // An event inside another branch's sliding run.
        for sl in &path.sliding {
            if sl.branch != e.branch && sl.alpha_start <= e.alpha && e.alpha <= sl.alpha_end {
                let roots = roots_at(sel, e.alpha);
                let k = path.alpha.partition_point(|a| *a < e.alpha).min(path.alpha.len() - 1);
                let w = nearest(&roots, path.roots[k][sl.branch]);
                if w.im > 0.0 {
                    record(e.alpha, e.beta, w.im);
                }
            }
        }
    }
    // Two sliding runs: bisect on beta_big - j beta_small.
    for (i, p) in path.sliding.iter().enumerate() {
        for q in &path.sliding[i + 1..] {
            let lo = p.alpha_start.max(q.alpha_start);
            let hi = p.alpha_end.min(q.alpha_end);
            if lo > hi {
                continue;
            }
            let ks: Vec<usize> = (0..path.alpha.len())
                .filter(|&k| path.alpha[k] >= lo && path.alpha[k] <= hi)
                .collect();
            for j in 2..=max_ratio {
                let g = |k: usize| {
                    let (x, y) = (path.roots[k][p.branch].im.abs(), path.roots[k][q.branch].im.abs());
                    x.max(y) - j as f64 * x.min(y)
                };
                let mut matched = false;
                for w in ks.windows(2) {
                    let (g0, g1) = (g(w[0]), g(w[1]));
                    let x = path.roots[w[0]][p.branch].im.abs();
                    let y = path.roots[w[0]][q.branch].im.abs();
                    let hit = ratio_match(x.max(y), x.min(y), max_ratio) == Some(j);
                    if hit && !matched {
                        record(path.alpha[w[0]], x, y);
                    } else if !hit && g0 * g1 < 0.0 {
                        let (alpha, x, y) = bisect_ratio(path, p.branch, q.branch, w[0], w[1], j);
                        record(alpha, x, y);
                    }
                    matched = hit;
                }
            }
        }
    }
    out.sort_by(|x, y| x.alpha.total_cmp(&y.alpha).then(x.j.cmp(&y.j)));
    out
}

fn bisect_ratio(path: &RootPath, bp: usize, bq: usize, k0: usize, k1: usize, j: usize) -> (f64, f64, f64) {
    let sel = &path.selector;
    let (mut a0, mut a1) = (path.alpha[k0], path.alpha[k1]);
    let (mut p0, mut q0) = (path.roots[k0][bp], path.roots[k0][bq]);
    let g = |p: Complex64, q: Complex64| {
        let (x, y) = (p.im.abs(), q.im.abs());
        x.max(y) - j as f64 * x.min(y)
    };
    let s0 = g(p0, q0).signum();
    for _ in 0..REFINE_STEPS {
        let am = 0.5 * (a0 + a1);
        let roots = roots_at(sel, am);
        let (pm, qm) = (nearest(&roots, p0), nearest(&roots, q0));
        if g(pm, qm).signum() == s0 {
            a0 = am;
            p0 = pm;
            q0 = qm;
        } else {
            a1 = am;
        }
    }
    (0.5 * (a0 + a1), p0.im.abs(), q0.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio, RationalInterval, UniPoly, Var};

    fn a(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Alpha)
    }

    #[test]
    fn drifting_pair_crosses_once() {
        let s = SelectorPath::free(
            vec![a(&[1, 0, 1]), a(&[0, -2]), a(&[1])],
            RationalInterval::new(ratio(-1, 3), int(1)).unwrap(),
        )
        .unwrap();
        let p = track_roots(&s, 50).unwrap();
        assert_eq!(p.events.len(), 1);
        let e = p.events[0];
        assert_eq!(e.kind, EventKind::CrossingRight);
        assert!(e.alpha.abs() < 1e-10 && (e.beta - 1.0).abs() < 1e-10);
        assert!(p.vieta_residual() < 1e-8);
        assert!(find_resonances(&p, 5).is_empty());
        let csv = p.to_csv();
        assert!(csv.starts_with("alpha,re,im,branch_id\n"));
        assert_eq!(csv.lines().count(), 1 + 50 * 2);
    }

    #[test]
    fn hurwitz_selector_is_quiet() {
        let s = SelectorPath::free(vec![a(&[2]), a(&[3]), a(&[1])], RationalInterval::new(int(0), int(1)).unwrap()).unwrap();
        let p = track_roots(&s, 10).unwrap();
        assert!(p.events.is_empty() && p.sliding.is_empty());
        assert!(track_roots(&s, 1).is_err());
    }

    #[test]
    fn pure_oscillator_slides() {
        // (l^2 + 1)(l^2 + 4) for every alpha: both pairs slide, ratio 2.
        let s = SelectorPath::free(vec![a(&[4]), a(&[0]), a(&[5]), a(&[0]), a(&[1])], RationalInterval::new(int(0), int(1)).unwrap()).unwrap();
        let p = track_roots(&s, 5).unwrap();
        assert_eq!(p.sliding.len(), 4);
        assert!(p.events.is_empty());
        let r = find_resonances(&p, 3);
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].alpha, r[0].j), (0.0, 2));
    }
}
