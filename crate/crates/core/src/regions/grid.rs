//! Grid classification of `fR` / `fS_j` for plotting. Floating point decides
//! the shadows; every `fR` cell is confirmed by exact evaluation at its center.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::bnb::{fr_extent, in_fr, ratio_floor, FrShape};
use super::polygon::PolygonDisk;
use crate::algebra::rational::to_f64;
use crate::algebra::{int, ratio, BivariatePoly, Rational};
use crate::error::{Error, Result};
use crate::family::{IntervalFamily, SignPair};

/// Largest shadow index drawn.
const MAX_GRID_J: usize = 64;
/// Relative size below which a float value counts as zero.
const ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellClass {
    InFr,
    InFs(usize),
    Outside,
    Undecided,
}

impl CellClass {
    pub fn label(&self) -> String {
        match self {
            CellClass::InFr => "in_fR".into(),
            CellClass::InFs(j) => format!("in_fS_{j}"),
            CellClass::Outside => "outside".into(),
            CellClass::Undecided => "undecided".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrid {
    /// Cell centers along alpha.
    pub alpha: Vec<f64>,
    /// Cell centers along beta.
    pub beta: Vec<f64>,
    /// Row-major by beta: `cells[ib * alpha.len() + ia]`.
    pub cells: Vec<CellClass>,
    pub alpha_range: (f64, f64),
    pub beta_range: (f64, f64),
    pub j_max: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FloatSign {
    Nonpositive,
    Positive,
    Unsure,
}

fn float_sign(p: &BivariatePoly, a: f64, b: f64) -> FloatSign {
    let v = p.eval_f64(a, b);
    let scale = p.eval_abs_f64(a, b);
    if scale == 0.0 {
        return FloatSign::Nonpositive;
    }
    if v.abs() <= ZERO_TOL * scale {
        FloatSign::Unsure
    } else if v > 0.0 {
        FloatSign::Positive
    } else {
        FloatSign::Nonpositive
    }
}

/// Float membership of `(a, b)` in `fR`: `Some(true)`, `Some(false)` or
/// `None` when too close to call.
fn float_in_fr(sp: &SignPair, a: f64, b: f64) -> Option<bool> {
    let s1 = float_sign(&sp.w1, a, b);
    let s2 = float_sign(&sp.w2, a, b);
    if s1 == FloatSign::Positive || s2 == FloatSign::Positive {
        Some(false)
    } else if s1 == FloatSign::Nonpositive && s2 == FloatSign::Nonpositive {
        Some(true)
    } else {
        None
    }
}

/// Samples `resolution x resolution` cell centers over the alpha range and
/// `0 <= beta <= beta_hi`; `beta_hi` defaults to a little above the
/// certified top of `fR`.
pub fn grid_sample(
    fam: &IntervalFamily,
    resolution: usize,
    beta_hi: Option<Rational>,
) -> Result<RegionGrid> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("resolution must be at least 2".into()));
    }
    let sp = fam.sign_pair();
    let extent = fr_extent(fam, &sp);
    let (beta_hi, j_max) = match &extent {
        FrShape::Extent { beta_min, beta_top } => (
            beta_hi.unwrap_or_else(|| beta_top * ratio(5, 4)),
            ratio_floor(beta_top, beta_min).min(MAX_GRID_J),
        ),
        FrShape::Empty => (beta_hi.unwrap_or_else(|| fam.beta_bound()), 1),
    };
    let n = resolution as i64;
    let a0 = fam.alpha_minus().clone();
    let da = fam.alpha_range().width() / int(n);
    let db = &beta_hi / int(n);
    let center = |lo: &Rational, step: &Rational, i: usize| lo + step * ratio(2 * i as i64 + 1, 2);
    let alphas: Vec<Rational> = (0..resolution).map(|i| center(&a0, &da, i)).collect();
    let betas: Vec<Rational> = (0..resolution).map(|i| center(&int(0), &db, i)).collect();
    let af: Vec<f64> = alphas.iter().map(to_f64).collect();
    let bf: Vec<f64> = betas.iter().map(to_f64).collect();

    let cells: Vec<CellClass> = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (ia, ib) = (idx % resolution, idx / resolution);
            let (a, b) = (af[ia], bf[ib]);
            if float_in_fr(&sp, a, b) != Some(false)
                && in_fr(&sp, &(alphas[ia].clone(), betas[ib].clone()))
            {
                return CellClass::InFr;
            }
            let mut unsure = false;
            for j in 2..=j_max {
                match float_in_fr(&sp, a, j as f64 * b) {
                    Some(true) => return CellClass::InFs(j),
                    None => unsure = true,
                    Some(false) => {}
                }
            }
            if unsure {
                CellClass::Undecided
            } else {
                CellClass::Outside
            }
        })
        .collect();
    Ok(RegionGrid {
        alpha: af,
        beta: bf,
        cells,
        alpha_range: (to_f64(fam.alpha_minus()), to_f64(fam.alpha_plus())),
        beta_range: (0.0, to_f64(&beta_hi)),
        j_max,
    })
}

impl RegionGrid {
    pub fn cell(&self, ia: usize, ib: usize) -> CellClass {
        self.cells[ib * self.alpha.len() + ia]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|c| **c == class).count()
    }

    /// Connected components (4-neighbour) of the `fR` cells.
    pub fn fr_components(&self) -> usize {
        let (na, nb) = (self.alpha.len(), self.beta.len());
        let mut seen = vec![false; self.cells.len()];
        let mut count = 0;
        for start in 0..self.cells.len() {
            if seen[start] || self.cells[start] != CellClass::InFr {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                let (ia, ib) = (i % na, i / na);
                let mut push = |k: usize| {
                    if !seen[k] && self.cells[k] == CellClass::InFr {
                        seen[k] = true;
                        stack.push(k);
                    }
                };
                if ia > 0 {
                    push(i - 1);
                }
                if ia + 1 < na {
                    push(i + 1);
                }
                if ib > 0 {
                    push(i - na);
                }
                if ib + 1 < nb {
                    push(i + na);
                }
            }
        }
        count
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,beta,class\n");
        for (ib, b) in self.beta.iter().enumerate() {
            for (ia, a) in self.alpha.iter().enumerate() {
                let _ = writeln!(out, "{a},{b},{}", self.cell(ia, ib).label());
            }
        }
        out
    }

    /// Filled cells with optional polygon overlays.
    pub fn to_svg(&self, disks: &[PolygonDisk]) -> String {
        let size = 600.0;
        let (a0, a1) = self.alpha_range;
        let (b0, b1) = self.beta_range;
        let x = |a: f64| (a - a0) / (a1 - a0) * size;
        let y = |b: f64| size - (b - b0) / (b1 - b0) * size;
        let cw = size / self.alpha.len() as f64;
        let ch = size / self.beta.len() as f64;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
        );
        for (ib, b) in self.beta.iter().enumerate() {
            for (ia, a) in self.alpha.iter().enumerate() {
                let fill = match self.cell(ia, ib) {
                    CellClass::InFr => "#444444",
                    CellClass::InFs(_) => "#bbbbbb",
                    CellClass::Undecided => "#cc3333",
                    CellClass::Outside => continue,
                };
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"{fill}\"/>",
                    x(*a) - cw / 2.0,
                    y(*b) - ch / 2.0,
                    cw,
                    ch
                );
            }
        }
        for d in disks {
            let pts: Vec<String> = d
                .vertices()
                .iter()
                .map(|(a, b)| format!("{:.3},{:.3}", x(to_f64(a)), y(to_f64(b))))
                .collect();
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>",
                pts.join(" ")
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RationalInterval, UniPoly, Var};
    use crate::family::CoeffInterval;

    fn a(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Alpha)
    }

    #[test]
    fn hurwitz_family_grid_is_outside() {
        let fam = IntervalFamily::new(
            vec![CoeffInterval::new(a(&[1]), a(&[2])), CoeffInterval::new(a(&[3]), a(&[4]))],
            RationalInterval::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        let g = grid_sample(&fam, 20, None).unwrap();
        assert_eq!(g.count(CellClass::Outside), 400);
        assert!(grid_sample(&fam, 1, None).is_err());
    }

    #[test]
    fn oscillator_grid() {
        // l^2 + [1, 4]: fR is beta in [1, 2], fS_2 is beta in [1/2, 1].
        let fam = IntervalFamily::new(
            vec![CoeffInterval::new(a(&[1]), a(&[4])), CoeffInterval::point(a(&[0]))],
            RationalInterval::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        let g = grid_sample(&fam, 10, Some(int(3))).unwrap();
        // beta centers 0.15, 0.45, ..., 2.85
        assert_eq!(g.cell(0, 4), CellClass::InFr); // 1.35
        assert_eq!(g.cell(0, 2), CellClass::InFs(2)); // 0.75
        assert_eq!(g.cell(0, 9), CellClass::Outside);
        assert_eq!(g.fr_components(), 1);
        let csv = g.to_csv();
        assert!(csv.starts_with("alpha,beta,class\n"));
        assert_eq!(csv.lines().count(), 101);
        assert!(g.to_svg(&[]).contains("<svg"));
    }
}
