use num_complex::Complex64;

use super::numeric::eval_complex;
use crate::algebra::{Rational, RationalInterval, UniPoly, Var};
use crate::error::{Error, Result};
use crate::family::IntervalFamily;

/// A concrete characteristic polynomial `P(alpha)(lambda)`: coefficient `k`
/// (of `lambda^k`) is a polynomial in `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectorPath {
    coeffs: Vec<UniPoly>,
    alpha_range: RationalInterval,
}

impl SelectorPath {
    /// A selector certified to be a member of `fam` for every alpha.
    pub fn new(fam: &IntervalFamily, coeffs: Vec<UniPoly>) -> Result<Self> {
        fam.check_selector(&coeffs).map_err(Error::NotMember)?;
        Self::free(coeffs, fam.alpha_range().clone())
    }

    /// Any polynomial path with nonvanishing leading coefficient.
    pub fn free(coeffs: Vec<UniPoly>, alpha_range: RationalInterval) -> Result<Self> {
        let coeffs: Vec<UniPoly> = coeffs.into_iter().map(|c| c.with_var(Var::Alpha)).collect();
        match coeffs.last() {
            Some(lead) if lead.is_constant() && !lead.is_zero() && coeffs.len() >= 2 => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "selector needs positive degree and a nonzero constant leading coefficient".into(),
                ))
            }
        }
        Ok(Self { coeffs, alpha_range })
    }

    /// Product of factors, each given by ascending coefficients in alpha.
    pub fn from_factors(factors: &[Vec<UniPoly>], alpha_range: RationalInterval) -> Result<Self> {
        let mut acc = vec![UniPoly::one(Var::Alpha)];
        for f in factors {
            let mut next = vec![UniPoly::zero(Var::Alpha); acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
            acc = next;
        }
        Self::free(acc, alpha_range)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn alpha_range(&self) -> &RationalInterval {
        &self.alpha_range
    }

    /// `P(alpha)` as an exact polynomial in lambda.
    pub fn at(&self, alpha: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(alpha)).collect(), Var::Lambda)
    }

    pub fn coeffs_f64(&self, alpha: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.eval_f64(alpha)).collect()
    }

    /// `P(alpha)(i beta)` and the matching sum of absolute term values.
    pub fn on_axis(&self, alpha: f64, beta: f64) -> (Complex64, f64) {
        let c = self.coeffs_f64(alpha);
        let (v, _) = eval_complex(&c, Complex64::new(0.0, beta));
        let scale = c
            .iter()
            .enumerate()
            .map(|(k, x)| x.abs() * beta.abs().powi(k as i32))
            .sum();
        (v, scale)
    }

    /// `d/ds log P(alpha + s da)(i (beta + s db))` at `s = 0`.
    pub fn log_derivative(&self, alpha: f64, beta: f64, da: f64, db: f64) -> Complex64 {
        let z = Complex64::new(0.0, beta);
        let c = self.coeffs_f64(alpha);
        let (v, dv) = eval_complex(&c, z);
        let dc: Vec<f64> = self
            .coeffs
            .iter()
            .map(|p| {
                let f = p.to_f64_coeffs();
                f.iter().enumerate().skip(1).rev().fold(0.0, |acc, (i, x)| acc * alpha + i as f64 * x)
            })
            .collect();
        let (va, _) = eval_complex(&dc, z);
        (dv * Complex64::new(0.0, db) + va * da) / v
    }
}
