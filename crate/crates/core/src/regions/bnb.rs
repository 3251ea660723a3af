//! Branch and bound over boxes of the `(alpha, beta)` half-plane with exact
//! interval enclosures: extent of `fR`, emptiness of `fR` meets `fS_j`, and
//! the disk-cover clauses.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::polygon::{Location, Point, PolygonDisk};
use crate::algebra::rational::fmt_rational;
use crate::algebra::roots::{common_nonpositive, CommonNonpositive};
use crate::algebra::{int, BivariatePoly, Box2, Rational, RationalInterval};
use crate::error::{Error, Result};
use crate::family::{IntervalFamily, SignPair};
use crate::stability::{check_r2, R2Outcome};

pub const DEFAULT_DEPTH_LIMIT: usize = 24;
/// Boxes kept per level before giving up as inconclusive.
const MAX_LEVEL_BOXES: usize = 1 << 21;
/// Subdivision depth used when bounding the beta extent of `fR`.
const EXTENT_DEPTH: usize = 16;
const EXTENT_ALPHA_DEPTH: usize = 7;
/// Unresolved boxes listed in a report.
const SHOWN_UNRESOLVED: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BnbVerdict {
    CertifiedEmpty,
    NonemptyWithWitness,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BnbReport {
    pub verdict: BnbVerdict,
    pub witness: Option<[String; 2]>,
    #[serde(skip)]
    pub witness_point: Option<Point>,
    pub unresolved_count: usize,
    pub unresolved: Vec<Box2>,
    pub max_depth: usize,
    pub boxes_processed: usize,
}

impl BnbReport {
    fn empty() -> Self {
        Self {
            verdict: BnbVerdict::CertifiedEmpty,
            witness: None,
            witness_point: None,
            unresolved_count: 0,
            unresolved: Vec::new(),
            max_depth: 0,
            boxes_processed: 0,
        }
    }
}

/// Per-box decision of a branch-and-bound run.
pub enum BoxVerdict {
    Discard,
    Witness(Point),
    Split,
}

/// Level-synchronous subdivision: every level is classified in parallel and
/// kept in a fixed order, so the report does not depend on scheduling.
pub fn branch_and_bound<F>(start: Vec<Box2>, depth_limit: usize, classify: F) -> BnbReport
where
    F: Fn(&Box2) -> BoxVerdict + Sync,
{
    let mut report = BnbReport::empty();
    let mut level = start;
    let mut unresolved = Vec::new();
    let mut depth = 0;
    while !level.is_empty() {
        report.max_depth = depth;
        report.boxes_processed += level.len();
        let verdicts: Vec<BoxVerdict> = level.par_iter().map(&classify).collect();
        let mut next = Vec::new();
        for (bx, v) in level.into_iter().zip(verdicts) {
            match v {
                BoxVerdict::Discard => {}
                BoxVerdict::Witness(p) => {
                    report.verdict = BnbVerdict::NonemptyWithWitness;
                    report.witness = Some([fmt_rational(&p.0), fmt_rational(&p.1)]);
                    report.witness_point = Some(p);
                    return report;
                }
                BoxVerdict::Split if depth >= depth_limit => unresolved.push(bx),
                BoxVerdict::Split => next.extend(bx.quarter()),
            }
        }
        if next.len() > MAX_LEVEL_BOXES {
            unresolved.extend(next);
            break;
        }
        level = next;
        depth += 1;
    }
    if !unresolved.is_empty() {
        report.verdict = BnbVerdict::Inconclusive;
        report.unresolved_count = unresolved.len();
        unresolved.truncate(SHOWN_UNRESOLVED);
        report.unresolved = unresolved;
    }
    report
}

fn positive_on(p: &BivariatePoly, bx: &Box2) -> bool {
    p.box_range(bx).lo().is_positive()
}

fn nonpositive_at(p: &BivariatePoly, pt: &Point) -> bool {
    !p.eval(&pt.0, &pt.1).is_positive()
}

/// Sound test that `bx` misses `fR`.
pub fn outside_fr(sp: &SignPair, bx: &Box2) -> bool {
    positive_on(&sp.w1, bx) || positive_on(&sp.w2, bx)
}

pub fn in_fr(sp: &SignPair, pt: &Point) -> bool {
    nonpositive_at(&sp.w1, pt) && nonpositive_at(&sp.w2, pt)
}

/// Certified beta extent of `fR` inside `beta >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrShape {
    Empty,
    /// `fR` lies in `beta_min <= beta <= beta_top`.
    Extent { beta_min: Rational, beta_top: Rational },
}

/// Best-first search for the lowest (or highest) box that cannot be shown to
/// miss `fR`; `None` when every box is discarded. Beta is refined twice as
/// deep as alpha, which is capped at `EXTENT_ALPHA_DEPTH`.
fn extreme_beta(sp: &SignPair, domain: &Box2, lowest: bool) -> Option<Rational> {
    let mut heap = BinaryHeap::new();
    let mut boxes: Vec<(Box2, usize, usize)> = Vec::new();
    let key = |bx: &Box2| {
        if lowest {
            bx.beta.lo().clone()
        } else {
            -bx.beta.hi()
        }
    };
    heap.push((Reverse(key(domain)), Reverse(0usize)));
    boxes.push((domain.clone(), 0, 0));
    while let Some((Reverse(k), Reverse(idx))) = heap.pop() {
        let (bx, da, db) = boxes[idx].clone();
        if outside_fr(sp, &bx) {
            continue;
        }
        if db >= EXTENT_DEPTH {
            return Some(if lowest { k } else { -k });
        }
        let children = if da < EXTENT_ALPHA_DEPTH && 2 * da < db {
            let (l, r) = bx.alpha.split();
            [(l, bx.beta.clone(), da + 1, db), (r, bx.beta.clone(), da + 1, db)]
        } else {
            let (l, r) = bx.beta.split();
            [(bx.alpha.clone(), l, da, db + 1), (bx.alpha.clone(), r, da, db + 1)]
        };
        for (alpha, beta, ca, cb) in children {
            let child = Box2::new(alpha, beta).expect("halves of a box");
            heap.push((Reverse(key(&child)), Reverse(boxes.len())));
            boxes.push((child, ca, cb));
        }
    }
    None
}

pub fn fr_extent(fam: &IntervalFamily, sp: &SignPair) -> FrShape {
    let b = fam.beta_bound();
    let domain = Box2::new(
        fam.alpha_range().clone(),
        RationalInterval::new(Rational::zero(), b).expect("positive bound"),
    )
    .expect("beta >= 0");
    let (lo, hi) = rayon::join(
        || extreme_beta(sp, &domain, true),
        || extreme_beta(sp, &domain, false),
    );
    match (lo, hi) {
        (Some(beta_min), Some(beta_top)) => FrShape::Extent { beta_min, beta_top },
        _ => FrShape::Empty,
    }
}

/// `floor(top / min)`, saturating when `min` is not positive.
pub fn ratio_floor(top: &Rational, min: &Rational) -> usize {
    if !min.is_positive() {
        return usize::MAX;
    }
    (top / min).floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceCheck {
    pub j: usize,
    pub report: BnbReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonResonanceReport {
    pub verdict: BnbVerdict,
    pub fr_empty: bool,
    pub beta_min: Option<String>,
    pub beta_top: Option<String>,
    pub j_max_auto: usize,
    pub j_max_used: usize,
    pub checks: Vec<ResonanceCheck>,
    pub note: Option<String>,
}

impl NonResonanceReport {
    pub fn witness(&self) -> Option<(usize, &Point)> {
        self.checks
            .iter()
            .find_map(|c| c.report.witness_point.as_ref().map(|p| (c.j, p)))
    }
}

/// Emptiness of `fR` meets `fS_j` for `j = 2 ..= j_max`, where `j_max`
/// defaults to `floor(beta_top / beta_min)`.
pub fn certify_r5pp(
    fam: &IntervalFamily,
    j_max: Option<usize>,
    depth_limit: usize,
) -> Result<NonResonanceReport> {
    if check_r2(fam) != R2Outcome::Certified {
        return Err(Error::R2NotCertified);
    }
    let sp = fam.sign_pair();
    let (beta_min, beta_top) = match fr_extent(fam, &sp) {
        FrShape::Empty => {
            return Ok(NonResonanceReport {
                verdict: BnbVerdict::CertifiedEmpty,
                fr_empty: true,
                beta_min: None,
                beta_top: None,
                j_max_auto: 0,
                j_max_used: 0,
                checks: Vec::new(),
                note: None,
            })
        }
        FrShape::Extent { beta_min, beta_top } => (beta_min, beta_top),
    };
    if !beta_min.is_positive() {
        return Ok(NonResonanceReport {
            verdict: BnbVerdict::Inconclusive,
            fr_empty: false,
            beta_min: Some(fmt_rational(&beta_min)),
            beta_top: Some(fmt_rational(&beta_top)),
            j_max_auto: 0,
            j_max_used: 0,
            checks: Vec::new(),
            note: Some("no positive lower bound on beta over fR".into()),
        });
    }
    let auto = ratio_floor(&beta_top, &beta_min);
    let used = j_max.unwrap_or(auto);
    let mut checks = Vec::new();
    let mut verdict = BnbVerdict::CertifiedEmpty;
    for j in 2..=used.min(auto) {
        let top = &beta_top / int(j as i64);
        let domain = Box2::new(
            fam.alpha_range().clone(),
            RationalInterval::new(beta_min.clone(), top).expect("j <= beta_top / beta_min"),
        )
        .expect("beta >= 0");
        let scale = int(j as i64);
        let polys = [
            sp.w1.clone(),
            sp.w2.clone(),
            sp.w1.scale_beta(&scale),
            sp.w2.scale_beta(&scale),
        ];
        let report = branch_and_bound(vec![domain], depth_limit, |bx| {
            if polys.iter().any(|p| positive_on(p, bx)) {
                return BoxVerdict::Discard;
            }
            let c = bx.center();
            if polys.iter().all(|p| nonpositive_at(p, &c)) {
                BoxVerdict::Witness(c)
            } else {
                BoxVerdict::Split
            }
        });
        let v = report.verdict;
        checks.push(ResonanceCheck { j, report });
        match v {
            BnbVerdict::NonemptyWithWitness => {
                verdict = v;
                break;
            }
            BnbVerdict::Inconclusive => verdict = v,
            BnbVerdict::CertifiedEmpty => {}
        }
    }
    let mut note = None;
    if used < auto && verdict == BnbVerdict::CertifiedEmpty {
        verdict = BnbVerdict::Inconclusive;
        note = Some(format!("j_max {used} is below the certified bound {auto}"));
    }
    Ok(NonResonanceReport {
        verdict,
        fr_empty: false,
        beta_min: Some(fmt_rational(&beta_min)),
        beta_top: Some(fmt_rational(&beta_top)),
        j_max_auto: auto,
        j_max_used: used,
        checks,
        note,
    })
}

/// One polygon edge checked against every `fS_j` it could meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub disk: usize,
    pub edge: usize,
    pub j_checked: usize,
    pub verdict: BnbVerdict,
    pub witness: Option<EdgeWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub j: usize,
    pub point: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskCoverReport {
    pub verdict: BnbVerdict,
    /// `fR` outside the disks.
    pub uncovered: BnbReport,
    /// Disk boundaries meeting `fS`.
    pub edges: Vec<EdgeReport>,
}

impl DiskCoverReport {
    pub fn certified(&self) -> bool {
        self.verdict == BnbVerdict::CertifiedEmpty
    }
}

pub fn validate_disks(fam: &IntervalFamily, disks: &[PolygonDisk]) -> Result<()> {
    for (k, d) in disks.iter().enumerate() {
        if !fam.alpha_range().contains_interval(&d.alpha_span()) {
            return Err(Error::InvalidPolygon(format!(
                "disk {k} escapes the strip {}",
                fam.alpha_range()
            )));
        }
    }
    for i in 0..disks.len() {
        for k in (i + 1)..disks.len() {
            if !disks[i].disjoint_from(&disks[k]) {
                return Err(Error::InvalidPolygon(format!("disks {i} and {k} overlap")));
            }
        }
    }
    Ok(())
}

/// Checks that the disks cover `fR` and that no disk boundary meets `fS`.
pub fn certify_r5p(
    fam: &IntervalFamily,
    disks: &[PolygonDisk],
    depth_limit: usize,
) -> Result<DiskCoverReport> {
    validate_disks(fam, disks)?;
    let sp = fam.sign_pair();
    let beta_top = match fr_extent(fam, &sp) {
        FrShape::Empty => {
            return Ok(DiskCoverReport {
                verdict: BnbVerdict::CertifiedEmpty,
                uncovered: BnbReport::empty(),
                edges: Vec::new(),
            })
        }
        FrShape::Extent { beta_top, .. } => beta_top,
    };

    let domain = Box2::new(
        fam.alpha_range().clone(),
        RationalInterval::new(Rational::zero(), beta_top.clone()).expect("beta_top >= 0"),
    )
    .expect("beta >= 0");
    let uncovered = branch_and_bound(vec![domain], depth_limit, |bx| {
        if outside_fr(&sp, bx) || disks.iter().any(|d| d.contains_box(bx)) {
            return BoxVerdict::Discard;
        }
        let c = bx.center();
        if in_fr(&sp, &c) && disks.iter().all(|d| d.locate(&c) == Location::Outside) {
            BoxVerdict::Witness(c)
        } else {
            BoxVerdict::Split
        }
    });

    let jobs: Vec<(usize, usize, Point, Point)> = disks
        .iter()
        .enumerate()
        .flat_map(|(k, d)| {
            d.edges()
                .enumerate()
                .map(move |(e, (a, b))| (k, e, a.clone(), b.clone()))
        })
        .collect();
    let edges: Vec<EdgeReport> = jobs
        .par_iter()
        .map(|(k, e, a, b)| edge_report(&sp, &beta_top, *k, *e, a, b))
        .collect();

    let mut verdict = uncovered.verdict;
    for e in &edges {
        verdict = match (verdict, e.verdict) {
            (BnbVerdict::NonemptyWithWitness, _) | (_, BnbVerdict::NonemptyWithWitness) => {
                BnbVerdict::NonemptyWithWitness
            }
            (BnbVerdict::Inconclusive, _) | (_, BnbVerdict::Inconclusive) => BnbVerdict::Inconclusive,
            _ => BnbVerdict::CertifiedEmpty,
        };
    }
    Ok(DiskCoverReport {
        verdict,
        uncovered,
        edges,
    })
}

/// Exact test of the segment `a -> b` against `fS_j`, `2 <= j <= top / min beta`.
pub fn edge_report(
    sp: &SignPair,
    beta_top: &Rational,
    disk: usize,
    edge: usize,
    a: &Point,
    b: &Point,
) -> EdgeReport {
    let low = (&a.1).min(&b.1);
    let j_max = ratio_floor(beta_top, low);
    let da = &b.0 - &a.0;
    let db = &b.1 - &a.1;
    let unit = RationalInterval::new(Rational::zero(), int(1)).expect("valid");
    let mut verdict = BnbVerdict::CertifiedEmpty;
    let mut witness = None;
    for j in 2..=j_max {
        let s = int(j as i64);
        let p1 = sp.w1.scale_beta(&s).along_segment(&a.0, &da, &a.1, &db);
        let p2 = sp.w2.scale_beta(&s).along_segment(&a.0, &da, &a.1, &db);
        match common_nonpositive(&[p1, p2], &unit) {
            CommonNonpositive::Empty(_) => {}
            CommonNonpositive::Witness(t) => {
                let pt = (&a.0 + &t * &da, &a.1 + &t * &db);
                verdict = BnbVerdict::NonemptyWithWitness;
                witness = Some(EdgeWitness {
                    j,
                    point: [fmt_rational(&pt.0), fmt_rational(&pt.1)],
                });
                break;
            }
            CommonNonpositive::AlgebraicWitness(_) => verdict = BnbVerdict::Inconclusive,
        }
    }
    EdgeReport {
        disk,
        edge,
        j_checked: j_max.saturating_sub(1),
        verdict,
        witness,
    }
}
