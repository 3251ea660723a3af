//! Dense polynomials in `(alpha, beta)`.

use std::ops::{Add, Mul, Sub};

use num::{One, Zero};

use super::interval::{Box2, RationalInterval};
use super::rational::{to_f64, Rational};
use super::unipoly::{UniPoly, Var};

/// `sum c[i][j] alpha^i beta^j`, stored densely up to the declared degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    /// `coeffs[i][j]` multiplies `alpha^i beta^j`; every row has the same length.
    coeffs: Vec<Vec<Rational>>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self {
            coeffs: vec![vec![Rational::zero()]],
        }
    }

    pub fn from_coeffs(rows: Vec<Vec<Rational>>) -> Self {
        let width = rows.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut coeffs: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|mut r| {
                r.resize(width, Rational::zero());
                r
            })
            .collect();
        if coeffs.is_empty() {
            coeffs.push(vec![Rational::zero(); width]);
        }
        Self { coeffs }
    }

    /// Lifts a polynomial in alpha.
    pub fn from_alpha(p: &UniPoly) -> Self {
        Self::from_coeffs(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// Lifts a polynomial in beta.
    pub fn from_beta(p: &UniPoly) -> Self {
        Self::from_coeffs(vec![p.coeffs().to_vec()])
    }

    /// Builds `sum_j c_j(alpha) beta^j` from alpha-polynomial coefficients.
    pub fn from_beta_coeffs(cols: &[UniPoly]) -> Self {
        let rows = cols
            .iter()
            .map(|c| c.coeffs().len())
            .max()
            .unwrap_or(1)
            .max(1);
        let mut coeffs = vec![vec![Rational::zero(); cols.len().max(1)]; rows];
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                coeffs[i][j] = v.clone();
            }
        }
        Self { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn alpha_degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn beta_degree_bound(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of `beta^j` as a polynomial in alpha.
    pub fn beta_coeff(&self, j: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|r| r.get(j).cloned().unwrap_or_else(Rational::zero)).collect(), Var::Alpha)
    }

    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for j in (0..self.coeffs[0].len()).rev() {
            let mut cj = Rational::zero();
            for row in self.coeffs.iter().rev() {
                cj = cj * alpha + &row[j];
            }
            acc = acc * beta + cj;
        }
        acc
    }

    pub fn eval_f64(&self, alpha: f64, beta: f64) -> f64 {
        let mut acc = 0.0;
        for j in (0..self.coeffs[0].len()).rev() {
            let mut cj = 0.0;
            for row in self.coeffs.iter().rev() {
                cj = cj * alpha + to_f64(&row[j]);
            }
            acc = acc * beta + cj;
        }
        acc
    }

    /// `sum |c_ij| |alpha|^i |beta|^j`, the scale of rounding errors in
    /// [`Self::eval_f64`].
    pub fn eval_abs_f64(&self, alpha: f64, beta: f64) -> f64 {
        let (alpha, beta) = (alpha.abs(), beta.abs());
        let mut acc = 0.0;
        for j in (0..self.coeffs[0].len()).rev() {
            let mut cj = 0.0;
            for row in self.coeffs.iter().rev() {
                cj = cj * alpha + to_f64(&row[j]).abs();
            }
            acc = acc * beta + cj;
        }
        acc
    }

    /// Restriction to a fixed alpha, as a polynomial in beta.
    pub fn at_alpha(&self, alpha: &Rational) -> UniPoly {
        let cols = (0..self.coeffs[0].len())
            .map(|j| self.beta_coeff(j).eval(alpha))
            .collect();
        UniPoly::new(cols, Var::Beta)
    }

    /// Restriction to a fixed beta, as a polynomial in alpha.
    pub fn at_beta(&self, beta: &Rational) -> UniPoly {
        let rows = self
            .coeffs
            .iter()
            .map(|row| UniPoly::new(row.clone(), Var::Beta).eval(beta))
            .collect();
        UniPoly::new(rows, Var::Alpha)
    }

    /// `p(alpha, c * beta)`
    pub fn scale_beta(&self, c: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        for row in coeffs.iter_mut() {
            let mut pw = Rational::one();
            for v in row.iter_mut() {
                *v *= &pw;
                pw *= c;
            }
        }
        Self { coeffs }
    }

    /// `p(beta -> -beta)`
    pub fn reflect_beta(&self) -> Self {
        self.scale_beta(&-Rational::one())
    }

    /// Restriction to the segment `alpha = a0 + t da`, `beta = b0 + t db`, as a
    /// polynomial in `t`.
    pub fn along_segment(
        &self,
        a0: &Rational,
        da: &Rational,
        b0: &Rational,
        db: &Rational,
    ) -> UniPoly {
        let alpha_t = UniPoly::linear(a0.clone(), da.clone(), Var::T);
        let beta_t = UniPoly::linear(b0.clone(), db.clone(), Var::T);
        let mut acc = UniPoly::zero(Var::T);
        for j in (0..self.coeffs[0].len()).rev() {
            let mut cj = UniPoly::zero(Var::T);
            for row in self.coeffs.iter().rev() {
                cj = &(&cj * &alpha_t) + &UniPoly::constant(row[j].clone(), Var::T);
            }
            acc = &(&acc * &beta_t) + &cj;
        }
        acc
    }

    /// Interval Horner enclosure of the range over `bx`: Horner in alpha for
    /// each beta-coefficient, then Horner in beta.
    pub fn box_range(&self, bx: &Box2) -> RationalInterval {
        self.range_over(&bx.alpha, &bx.beta)
    }

    pub fn range_over(&self, alpha: &RationalInterval, beta: &RationalInterval) -> RationalInterval {
        let zero = RationalInterval::point(Rational::zero());
        let mut acc = zero.clone();
        for j in (0..self.coeffs[0].len()).rev() {
            let mut cj = zero.clone();
            for row in self.coeffs.iter().rev() {
                cj = cj.mul(alpha).add_scalar(&row[j]);
            }
            acc = acc.mul(beta).add(&cj);
        }
        acc
    }

    fn shape(&self, other: &Self) -> (usize, usize) {
        (
            self.coeffs.len().max(other.coeffs.len()),
            self.coeffs[0].len().max(other.coeffs[0].len()),
        )
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let (r, c) = self.shape(rhs);
        let coeffs = (0..r)
            .map(|i| (0..c).map(|j| self.coeff(i, j) + rhs.coeff(i, j)).collect())
            .collect();
        BivariatePoly { coeffs }
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let (r, c) = self.shape(rhs);
        let coeffs = (0..r)
            .map(|i| (0..c).map(|j| self.coeff(i, j) - rhs.coeff(i, j)).collect())
            .collect();
        BivariatePoly { coeffs }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let rows = self.coeffs.len() + rhs.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + rhs.coeffs[0].len() - 1;
        let mut coeffs = vec![vec![Rational::zero(); cols]; rows];
        for (i, ra) in self.coeffs.iter().enumerate() {
            for (j, a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rb) in rhs.coeffs.iter().enumerate() {
                    for (l, b) in rb.iter().enumerate() {
                        coeffs[i + k][j + l] += a * b;
                    }
                }
            }
        }
        BivariatePoly { coeffs }
    }
}
