//! Property suites for the exact core and the validators.

mod common;

use hopf_cert::algebra::rational::to_f64;
use hopf_cert::algebra::{int, isolate_real_roots, ratio, BivariatePoly, Box2, Rational, RationalInterval, UniPoly, Var};
use hopf_cert::degree::{track_roots, winding_number, SelectorPath};
use hopf_cert::problem::parse_poly;
use hopf_cert::regions::PolygonDisk;
use hopf_cert::stability::root_count;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn interval() -> impl Strategy<Value = RationalInterval> {
    (rational(), rational()).prop_map(|(a, b)| if a <= b { common::iv(a, b) } else { common::iv(b, a) })
}

/// Relative coefficient error; near-double roots cost about `sqrt(eps)`.
const VIETA_TOL: f64 = 1e-6;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_polynomials_parse_back(c in prop::collection::vec(rational(), 0..8)) {
        let p = UniPoly::new(c, Var::Alpha);
        let q = parse_poly(&p.to_expr_string("a")).unwrap();
        prop_assert_eq!(q.coeffs(), p.coeffs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn box_ranges_enclose_values(
        rows in prop::collection::vec(prop::collection::vec(rational(), 1..4), 1..4),
        a in interval(),
        b in interval(),
        s in 0i64..=8,
        t in 0i64..=8,
    ) {
        let p = BivariatePoly::from_coeffs(rows);
        let x = a.lo() + a.width() * ratio(s, 8);
        let y = b.lo() + b.width() * ratio(t, 8);
        prop_assert!(p.range_over(&a, &b).contains(&p.eval(&x, &y)));
        if b.lo() >= &int(0) {
            let bx = Box2::new(a.clone(), b.clone()).unwrap();
            prop_assert!(p.box_range(&bx).contains(&p.eval(&x, &y)));
        }
    }

    #[test]
    fn interval_horner_encloses_values(c in prop::collection::vec(rational(), 1..7), d in interval(), s in 0i64..=16) {
        let p = UniPoly::new(c, Var::Alpha);
        let x = d.lo() + d.width() * ratio(s, 16);
        prop_assert!(p.eval_interval(&d).contains(&p.eval(&x)));
    }

    #[test]
    fn isolation_finds_planted_roots(
        roots in prop::collection::vec(rational(), 1..5),
        twice in 0usize..3,
        w in 1i64..=5,
    ) {
        // planted rational roots, one of them repeated, times x^2 - w (irrational for w = 2, 3, 5)
        let mut p = UniPoly::from_ints(&[-w, 0, 1], Var::Alpha);
        let mut planted = roots.clone();
        if twice < roots.len() {
            planted.push(roots[twice].clone());
        }
        for r in &planted {
            p = &p * &UniPoly::linear(-r.clone(), int(1), Var::Alpha);
        }
        let domain = common::iv(int(-100), int(100));
        let found = isolate_real_roots(&p, &domain).unwrap();
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        for r in &distinct {
            let hits: Vec<_> = found.iter().filter(|f| f.enclosure().contains(r)).collect();
            prop_assert_eq!(hits.len(), 1);
            let m = planted.iter().filter(|x| *x == r).count() + usize::from(r * r == int(w));
            prop_assert_eq!(hits[0].multiplicity(), m);
        }
        let total: usize = found.iter().map(|f| f.multiplicity()).sum();
        prop_assert_eq!(total, planted.len() + 2);
        if ![1, 4].contains(&w) {
            prop_assert_eq!(found.iter().filter(|f| f.exact().is_none()).count(), 2);
        }
    }

    #[test]
    fn root_count_matches_planted_half_planes(
        reals in prop::collection::vec(rational(), 0..4),
        pairs in prop::collection::vec((rational(), 1i64..=6), 0..3),
    ) {
        let mut p = UniPoly::one(Var::Lambda);
        let mut want = (0, 0, 0);
        let mut tally = |re: &Rational, m: usize| {
            if *re < int(0) { want.0 += m } else if *re > int(0) { want.2 += m } else { want.1 += m }
        };
        for r in &reals {
            p = &p * &UniPoly::linear(-r.clone(), int(1), Var::Lambda);
            tally(r, 1);
        }
        for (m, w) in &pairs {
            p = &p * &UniPoly::new(vec![m * m + int(w * w), int(-2) * m, int(1)], Var::Lambda);
            tally(m, 2);
        }
        prop_assume!(p.degree().unwrap() > 0);
        let rc = root_count(&p).unwrap();
        prop_assert_eq!((rc.n_neg, rc.n_imag, rc.n_pos), want);
    }
}

#[test]
fn winding_is_additive() {
    let mut r = common::rng(6);
    let range = common::iv(int(-1), int(1));
    let mut checked = 0;
    while checked < 60 {
        let (sel, zeros) = common::random_structured_selector(&mut r, &range);
        let Some((a0, a1, b0, b1)) = common::clear_rectangle(&mut r, &zeros) else { continue };
        let am = (&a0 + &a1) / int(2);
        let bm = (&b0 + &b1) / int(2);
        let parts = [
            (a0.clone(), am.clone(), b0.clone(), bm.clone()),
            (am.clone(), a1.clone(), b0.clone(), bm.clone()),
            (a0.clone(), am.clone(), bm.clone(), b1.clone()),
            (am.clone(), a1.clone(), bm.clone(), b1.clone()),
        ];
        let clear = parts.iter().all(|(p, q, s, t)| {
            let e = [to_f64(p), to_f64(q), to_f64(s), to_f64(t)];
            zeros.iter().all(|z| common::clear_of(z, e))
        });
        if !clear {
            continue;
        }
        checked += 1;
        let whole = winding_number(&sel, &PolygonDisk::rectangle(a0, a1, b0, b1).unwrap()).unwrap().winding;
        let sum: i64 = parts
            .into_iter()
            .map(|(p, q, s, t)| winding_number(&sel, &PolygonDisk::rectangle(p, q, s, t).unwrap()).unwrap().winding)
            .sum();
        assert_eq!(whole, sum);
    }
}

#[test]
fn tracked_roots_satisfy_vieta() {
    let mut r = common::rng(7);
    let range = common::iv(int(-1), int(1));
    for k in 0..40 {
        let sel: SelectorPath = if k % 2 == 0 {
            common::random_structured_selector(&mut r, &range).0
        } else {
            common::random_general_selector(&mut r, &range)
        };
        let path = track_roots(&sel, 201).unwrap();
        assert!(path.vieta_residual() < VIETA_TOL, "residual {}", path.vieta_residual());
        assert_eq!(path.branches(), sel.degree());
    }
}

#[test]
fn planted_zeros_give_expected_windings() {
    let mut r = common::rng(8);
    let range = common::iv(int(-1), int(1));
    let mut checked = 0;
    while checked < 100 {
        let (sel, zeros) = common::random_structured_selector(&mut r, &range);
        let Some((a0, a1, b0, b1)) = common::clear_rectangle(&mut r, &zeros) else { continue };
        checked += 1;
        let e = [to_f64(&a0), to_f64(&a1), to_f64(&b0), to_f64(&b1)];
        let want: i64 = zeros.iter().filter(|z| common::inside(z, e)).map(|z| z.degree).sum();
        let got = winding_number(&sel, &PolygonDisk::rectangle(a0, a1, b0, b1).unwrap()).unwrap().winding;
        assert_eq!(got, want);
    }
}
