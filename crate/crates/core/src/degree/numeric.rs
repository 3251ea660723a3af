use nalgebra::DMatrix;
use num_complex::Complex64;

/// Horner evaluation of a real polynomial (ascending coefficients) and its
/// derivative at a complex point.
pub fn eval_complex(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a real polynomial with ascending coefficients:
/// companion-matrix eigenvalues polished by a few Newton steps. Sorted by
/// real part, then imaginary part.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = match coeffs.iter().rposition(|c| *c != 0.0) {
        Some(n) => n,
        None => return Vec::new(),
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs[..=n].iter().map(|c| c / lead).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    let mut roots: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    for r in roots.iter_mut() {
        *r = polish(&monic, *r);
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    let (mut p, _) = eval_complex(coeffs, z);
    for _ in 0..4 {
        let (_, dp) = eval_complex(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let (pn, _) = eval_complex(coeffs, next);
        if pn.norm() >= p.norm() {
            break;
        }
        z = next;
        p = pn;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_product() {
        // (l^2 + 1)(l + 2) = l^3 + 2 l^2 + l + 2
        let r = poly_roots(&[2.0, 1.0, 2.0, 1.0]);
        assert_eq!(r.len(), 3);
        assert!((r[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((r[2] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(poly_roots(&[3.0]).is_empty());
    }
}
