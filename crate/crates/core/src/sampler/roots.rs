//! Simultaneous root finding for dense univariate complex polynomials.
//!
//! Degrees one and two use closed forms; beyond that an Aberth–Ehrlich
//! iteration from staggered circular starting points. Zero roots are
//! deflated first (the torus never sees them) and callers re-check every
//! returned root against a residual bound, so the finder only has to get
//! close.

use num_complex::Complex64;

/// All roots of `Σ coeffs[k] w^k` with nonzero modulus, best effort.
/// `seed` staggers the starting configuration deterministically.
pub fn polynomial_roots(coeffs: &[Complex64], seed: u64) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|l| *l == zero) {
        c.pop();
    }
    // Deflate zero roots.
    let mut low = 0usize;
    while low < c.len() && c[low] == zero {
        low += 1;
    }
    let c = &c[low..];
    if c.len() <= 1 {
        return Vec::new();
    }
    match c.len() {
        2 => vec![-c[0] / c[1]],
        3 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = (b * b - 4.0 * a * cc).sqrt();
            // Pick the same-sign branch to avoid cancellation.
            let q = if (b.conj() * disc).re >= 0.0 {
                -0.5 * (b + disc)
            } else {
                -0.5 * (b - disc)
            };
            let mut roots = Vec::with_capacity(2);
            if q != zero {
                roots.push(q / a);
                roots.push(cc / q);
            } else {
                roots.push(disc / (2.0 * a));
                roots.push(-disc / (2.0 * a));
            }
            roots
        }
        _ => aberth(c, seed),
    }
}

fn eval_and_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &coeff in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + coeff;
    }
    (p, dp)
}

fn aberth(c: &[Complex64], seed: u64) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    // Cauchy-style radius bound.
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|a| (a / lead).norm())
            .fold(0.0f64, f64::max);
    let jitter = 0.37 + (seed % 1024) as f64 * 1e-4;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * (0.7 + 0.25 * (k as f64 / n as f64)),
                std::f64::consts::TAU * k as f64 / n as f64 + jitter,
            )
        })
        .collect();

    for _ in 0..120 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval_and_derivative(c, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = if dp == Complex64::new(0.0, 0.0) {
                Complex64::new(1e-12, 1e-12)
            } else {
                p / dp
            };
            let mut repulse = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d != Complex64::new(0.0, 0.0) {
                        repulse += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * repulse;
            let step = if denom == Complex64::new(0.0, 0.0) {
                newton
            } else {
                newton / denom
            };
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    // A couple of plain Newton polishing steps per root.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_and_derivative(c, *zk);
            if dp == Complex64::new(0.0, 0.0) {
                break;
            }
            *zk -= p / dp;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(c: &[Complex64], z: Complex64) -> f64 {
        let (p, _) = eval_and_derivative(c, z);
        let scale: f64 = c
            .iter()
            .enumerate()
            .map(|(k, a)| a.norm() * z.norm().powi(k as i32))
            .sum();
        p.norm() / scale.max(1e-300)
    }

    #[test]
    fn linear_and_quadratic() {
        let c = [Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)];
        let r = polynomial_roots(&c, 0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);

        // (w - 1)(w - i) = w² - (1+i)w + i
        let c = [
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, 0.0),
        ];
        let mut r = polynomial_roots(&c, 0);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn higher_degree_and_zero_deflation() {
        // w² (w⁴ - 1): four unit roots after deflating w = 0.
        let mut c = vec![Complex64::new(0.0, 0.0); 7];
        c[2] = Complex64::new(-1.0, 0.0);
        c[6] = Complex64::new(1.0, 0.0);
        let roots = polynomial_roots(&c, 7);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(residual(&c[2..], *r) < 1e-12, "residual for {r}");
            assert!((r.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn random_polynomials_have_small_residuals() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for trial in 0..50 {
            let degree = 3 + (trial % 5);
            let c: Vec<Complex64> = (0..=degree)
                .map(|_| Complex64::new(next(), next()))
                .collect();
            if c[degree].norm() < 1e-3 {
                continue;
            }
            let roots = polynomial_roots(&c, trial as u64);
            assert_eq!(roots.len(), degree);
            for r in &roots {
                assert!(
                    residual(&c, *r) < 1e-9,
                    "trial {trial}: residual {} at {r}",
                    residual(&c, *r)
                );
            }
        }
    }
}
