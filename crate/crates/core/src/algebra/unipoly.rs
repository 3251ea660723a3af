//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::interval::RationalInterval;
use super::rational::{fmt_rational, int, to_f64, Rational};

/// Name of the indeterminate; only used for display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Var {
    Alpha,
    Beta,
    Omega,
    #[default]
    Lambda,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Alpha => "a",
            Var::Beta => "b",
            Var::Omega => "w",
            Var::Lambda => "l",
            Var::T => "t",
        }
    }
}

/// Polynomial `c[0] + c[1] x + ... + c[n] x^n` with the invariant that the
/// last stored coefficient is nonzero (the zero polynomial stores nothing).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: Var,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>, var: Var) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, var }
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        Self {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(Rational::one(), var)
    }

    /// The monomial `x`.
    pub fn x(var: Var) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], var)
    }

    /// `c x^k`
    pub fn monomial(c: Rational, k: usize, var: Var) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    /// `offset + slope * x`
    pub fn linear(offset: Rational, slope: Rational, var: Var) -> Self {
        Self::new(vec![offset, slope], var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Interval Horner evaluation: a sound enclosure of `{p(x) : x in domain}`.
    pub fn eval_interval(&self, domain: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(domain).add_scalar(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
            self.var,
        )
    }

    /// Makes the leading coefficient 1 (the zero polynomial is returned as is).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading().recip();
        self.scale(&lead)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.var);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (UniPoly::zero(self.var), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot, self.var), UniPoly::new(rem, self.var))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // Keeping the remainders monic stops coefficient blow-up.
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's square-free decomposition: returns `(a_1, a_2, ...)` with
    /// `self = lc * a_1 * a_2^2 * a_3^3 ...`, each `a_i` monic, square-free
    /// and pairwise coprime. Entries may be constant.
    pub fn squarefree_decomposition(&self) -> Vec<UniPoly> {
        if self.degree().unwrap_or(0) < 1 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let c = df.div_exact(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut factors = Vec::new();
        loop {
            let ai = b.gcd(&d);
            b = b.div_exact(&ai).expect("gcd divides");
            let c = d.div_exact(&ai).expect("gcd divides");
            d = &c - &b.derivative();
            factors.push(ai);
            if b.is_constant() {
                break;
            }
        }
        while factors.last().is_some_and(|f| f.is_constant()) {
            factors.pop();
        }
        factors
    }

    /// `p(offset + slope * x)` by Horner's scheme.
    pub fn compose_linear(&self, offset: &Rational, slope: &Rational, var: Var) -> UniPoly {
        let inner = UniPoly::linear(offset.clone(), slope.clone(), var);
        let mut acc = UniPoly::zero(var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &UniPoly::constant(c.clone(), var);
        }
        acc
    }

    /// `p(c x)`
    pub fn scale_arg(&self, c: &Rational) -> UniPoly {
        let mut pw = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pw);
            pw *= c;
        }
        UniPoly::new(coeffs, self.var)
    }

    /// Real part of `p(i w)` as a polynomial in `w`.
    pub fn re_at_imag(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k % 4 {
                0 => c.clone(),
                2 => -c,
                _ => Rational::zero(),
            })
            .collect();
        UniPoly::new(coeffs, Var::Omega)
    }

    /// Imaginary part of `p(i w)` as a polynomial in `w`.
    pub fn im_at_imag(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k % 4 {
                1 => c.clone(),
                3 => -c,
                _ => Rational::zero(),
            })
            .collect();
        UniPoly::new(coeffs, Var::Omega)
    }

    /// Number of sign changes between consecutive nonzero coefficients.
    pub fn coefficient_sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Pretty form using the mini-language syntax, e.g. `4 - 4*a^2`.
    pub fn to_expr_string(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{k}"),
            };
            if k == 0 {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string(self.var.symbol()))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::new(coeffs, self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::new(coeffs, self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs, self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, Var::Lambda)
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let q = UniPoly::from_ints(&[1, 2, 0, 0], Var::Alpha);
        assert_eq!(q.degree(), Some(1));
        assert!(UniPoly::from_ints(&[0, 0], Var::Alpha).is_zero());
        assert_eq!(UniPoly::zero(Var::T).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        assert!(a.div_exact(&p(&[5, 1])).is_none());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x+1) (x-2)^2 (x^2+1)^3
        let f = &(&p(&[1, 1]) * &p(&[-2, 1]).pow(2)) * &p(&[1, 0, 1]).pow(3);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], p(&[1, 1]));
        assert_eq!(parts[1], p(&[-2, 1]));
        assert_eq!(parts[2], p(&[1, 0, 1]));
        assert_eq!(f.squarefree_part(), &(&p(&[1, 1]) * &p(&[-2, 1])) * &p(&[1, 0, 1]));
    }

    #[test]
    fn real_and_imaginary_parts_on_axis() {
        // l^2 + 1 -> Re = 1 - w^2, Im = 0
        let q = p(&[1, 0, 1]);
        assert_eq!(q.re_at_imag(), UniPoly::from_ints(&[1, 0, -1], Var::Omega));
        assert!(q.im_at_imag().is_zero());
        // l^5 -> Im = w^5
        let q = p(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(q.im_at_imag(), UniPoly::from_ints(&[0, 0, 0, 0, 0, 1], Var::Omega));
    }

    #[test]
    fn composition_and_interval_evaluation() {
        let q = p(&[0, 0, 1]); // x^2
        let c = q.compose_linear(&int(1), &int(2), Var::T); // (1+2t)^2
        assert_eq!(c, UniPoly::from_ints(&[1, 4, 4], Var::T));
        let dom = RationalInterval::new(int(-1), int(2)).unwrap();
        let e = q.eval_interval(&dom);
        assert!(e.contains(&int(0)) && e.contains(&int(4)));
        assert_eq!(q.scale_arg(&int(3)), p(&[0, 0, 9]));
        assert_eq!(p(&[1, 2]).eval(&ratio(1, 2)), int(2));
    }

    #[test]
    fn expression_rendering() {
        let q = UniPoly::new(vec![int(4), int(0), int(-4)], Var::Alpha);
        assert_eq!(q.to_expr_string("a"), "4 - 4*a^2");
        let q = UniPoly::new(vec![int(0), ratio(-7, 25), int(1)], Var::Alpha);
        assert_eq!(q.to_expr_string("a"), "-7/25*a + a^2");
    }
}
