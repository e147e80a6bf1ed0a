//! Gauss-Laguerre and Gauss-Legendre quadrature rules.
//!
//! Nodes are found by Newton iteration on the classical three-term
//! recurrences with standard initial guesses; weights follow from the
//! derivative values. An n-point rule integrates polynomials of degree
//! 2n-1 exactly against its weight function.

/// Nodes and weights for `int_0^inf f(x) e^{-x} dx ~ sum w_i f(x_i)`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n {
        // initial guesses (Stroud & Secrest)
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // recurrence: (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                let kf = k as f64;
                p1 = ((2.0 * kf + 1.0 - z) * p2 - kf * p3) / (kf + 1.0);
            }
            pp = nf * (p1 - p2) / z; // L_n'(z)
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 * z.max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        weights[i] = -1.0 / (pp * nf * poly_laguerre(n - 1, z));
    }
    (nodes, weights)
}

fn poly_laguerre(n: usize, z: f64) -> f64 {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for k in 0..n {
        let p3 = p2;
        p2 = p1;
        let kf = k as f64;
        p1 = ((2.0 * kf + 1.0 - z) * p2 - kf * p3) / (kf + 1.0);
    }
    p1
}

/// Nodes and weights for `int_{-1}^{1} f(x) dx ~ sum w_i f(x_i)`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                let kf = k as f64;
                p1 = ((2.0 * kf + 1.0) * z * p2 - kf * p3) / (kf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Nodes and weights rescaled to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&wi| wi * half).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn laguerre_moments_are_factorials() {
        for n in [4, 8, 16, 32] {
            let (x, w) = gauss_laguerre(n);
            assert!(x.windows(2).all(|p| p[1] > p[0]));
            let mut fact = 1.0;
            // exact for moments up to degree 2n-1
            for k in 0..(2 * n).min(18) {
                if k > 0 {
                    fact *= k as f64;
                }
                let q: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * xi.powi(k as i32))
                    .sum();
                assert_abs_diff_eq!(q / fact, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn laguerre_handles_shifted_exponential() {
        // int_0^inf e^{-x} cos(x) dx = 1/2
        let (x, w) = gauss_laguerre(32);
        let q: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.cos()).sum();
        assert_abs_diff_eq!(q, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn legendre_polynomial_moments() {
        for n in [8, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert_abs_diff_eq!(total, 2.0, epsilon = 1e-13);
            for k in 0..(2 * n - 1).min(24) {
                let q: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * xi.powi(k as i32))
                    .sum();
                let exact = if k % 2 == 0 {
                    2.0 / (k as f64 + 1.0)
                } else {
                    0.0
                };
                assert_abs_diff_eq!(q, exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn legendre_rescaled_gaussian() {
        // int over [-6, 6] of standard normal = 1 - 2e-9 (tail mass)
        let (x, w) = gauss_legendre_on(64, -6.0, 6.0);
        let q: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (-0.5 * xi * xi).exp())
            .sum::<f64>()
            / (2.0 * std::f64::consts::PI).sqrt();
        assert_abs_diff_eq!(q, 1.0, epsilon = 1e-8);
    }
}
