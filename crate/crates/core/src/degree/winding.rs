use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::selector::SelectorPath;
use crate::algebra::rational::{fmt_rational, to_f64};
use crate::error::{Error, Result};
use crate::regions::PolygonDisk;
use crate::stability::root_count;

/// Uniform samples per edge before adaptive refinement.
const MIN_EDGE_SAMPLES: usize = 64;
const MAX_DEPTH: usize = 40;
/// `|P| / sum |terms|` below this counts as a zero on the boundary.
const RELATIVE_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindingResult {
    pub winding: i64,
    /// Deepest bisection below the uniform edge samples.
    pub depth: usize,
    pub min_modulus: f64,
    pub samples: usize,
}

#[derive(Default)]
struct EdgeSum {
    angle: f64,
    depth: usize,
    min_modulus: f64,
    samples: usize,
}

#[derive(Clone, Copy)]
struct Sample {
    z: Complex64,
    /// `|d/ds log P|`, bounding the turning speed.
    rate: f64,
}

struct Edge<'a> {
    sel: &'a SelectorPath,
    a: (f64, f64),
    b: (f64, f64),
}

impl Edge<'_> {
    fn value(&self, s: f64) -> Result<Sample> {
        let (da, db) = (self.b.0 - self.a.0, self.b.1 - self.a.1);
        let alpha = self.a.0 + s * da;
        let beta = self.a.1 + s * db;
        let (v, scale) = self.sel.on_axis(alpha, beta);
        if v.norm() <= RELATIVE_FLOOR * scale || v.norm() == 0.0 {
            return Err(Error::ZeroOnBoundary);
        }
        Ok(Sample {
            z: v,
            rate: self.sel.log_derivative(alpha, beta, da, db).norm(),
        })
    }

    /// Argument change over `[s0, s1]`, bisecting until every step turns by
    /// less than a quarter, the two halves agree with the whole, and the
    /// turning rate at the three samples cannot carry a full turn.
    fn sweep(&self, s0: f64, s1: f64, p0: Sample, p1: Sample, depth: usize, acc: &mut EdgeSum) -> Result<()> {
        let (z0, z1) = (p0.z, p1.z);
        let whole = (z1 / z0).arg();
        let sm = 0.5 * (s0 + s1);
        let pm = self.value(sm)?;
        let zm = pm.z;
        acc.samples += 1;
        acc.min_modulus = acc.min_modulus.min(zm.norm());
        let left = (zm / z0).arg();
        let right = (z1 / zm).arg();
        let fastest = p0.rate.max(p1.rate).max(pm.rate);
        let settled = whole.abs() < FRAC_PI_2
            && left.abs() < FRAC_PI_2
            && right.abs() < FRAC_PI_2
            && (left + right - whole).abs() < 1e-9
            && fastest * (s1 - s0) < FRAC_PI_2;
        if settled {
            acc.angle += whole;
            acc.depth = acc.depth.max(depth);
            return Ok(());
        }
        if depth >= MAX_DEPTH {
            return Err(Error::ZeroOnBoundary);
        }
        self.sweep(s0, sm, p0, pm, depth + 1, acc)?;
        self.sweep(sm, s1, pm, p1, depth + 1, acc)
    }

    fn total(&self) -> Result<EdgeSum> {
        let mut acc = EdgeSum {
            min_modulus: f64::INFINITY,
            ..EdgeSum::default()
        };
        let mut prev = self.value(0.0)?;
        acc.min_modulus = prev.z.norm();
        for k in 1..=MIN_EDGE_SAMPLES {
            let s0 = (k - 1) as f64 / MIN_EDGE_SAMPLES as f64;
            let s1 = k as f64 / MIN_EDGE_SAMPLES as f64;
            let next = self.value(s1)?;
            acc.samples += 1;
            acc.min_modulus = acc.min_modulus.min(next.z.norm());
            self.sweep(s0, s1, prev, next, 0, &mut acc)?;
            prev = next;
        }
        Ok(acc)
    }
}

/// Winding number of `(alpha, beta) -> P(alpha)(i beta)` along the
/// counterclockwise boundary of `boundary`.
pub fn winding_number(sel: &SelectorPath, boundary: &PolygonDisk) -> Result<WindingResult> {
    let edges: Vec<((f64, f64), (f64, f64))> = boundary
        .edges()
        .map(|(a, b)| ((to_f64(&a.0), to_f64(&a.1)), (to_f64(&b.0), to_f64(&b.1))))
        .collect();
    let sums = edges
        .par_iter()
        .map(|(a, b)| Edge { sel, a: *a, b: *b }.total())
        .collect::<Result<Vec<_>>>()?;
    let angle: f64 = sums.iter().map(|s| s.angle).sum();
    let turns = angle / (2.0 * PI);
    let winding = turns.round();
    if (turns - winding).abs() > 1e-6 {
        return Err(Error::ZeroOnBoundary);
    }
    Ok(WindingResult {
        winding: winding as i64,
        depth: sums.iter().map(|s| s.depth).max().unwrap_or(0),
        min_modulus: sums.iter().map(|s| s.min_modulus).fold(f64::INFINITY, f64::min),
        samples: sums.iter().map(|s| s.samples).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    pub t_minus: usize,
    pub t_plus: usize,
    pub windings: Vec<WindingResult>,
    pub total_winding: i64,
    /// `(t_minus - t_plus) / 2`.
    pub expected: i64,
    pub holds: bool,
}

/// Compares the summed winding over `disks` with half the change in the
/// number of right half-plane roots between the endpoints.
pub fn crossing_identity_check(sel: &SelectorPath, disks: &[PolygonDisk]) -> Result<CrossingReport> {
    let range = sel.alpha_range();
    let mut t = [0usize; 2];
    for (slot, alpha) in t.iter_mut().zip([range.lo(), range.hi()]) {
        let rc = root_count(&sel.at(alpha))?;
        if rc.n_imag > 0 {
            return Err(Error::NotHyperbolic(fmt_rational(alpha)));
        }
        *slot = rc.n_pos;
    }
    let [t_minus, t_plus] = t;
    let diff = t_minus as i64 - t_plus as i64;
    if diff % 2 != 0 {
        return Err(Error::ParityViolation);
    }
    let windings = disks
        .par_iter()
        .map(|d| winding_number(sel, d))
        .collect::<Result<Vec<_>>>()?;
    let total_winding = windings.iter().map(|w| w.winding).sum();
    Ok(CrossingReport {
        t_minus,
        t_plus,
        windings,
        total_winding,
        expected: diff / 2,
        holds: total_winding == diff / 2,
    })
}
