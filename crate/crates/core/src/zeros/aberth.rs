//! Aberth–Ehrlich simultaneous root iteration for squarefree real
//! polynomials, followed by a few Newton polishing steps.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 2000;

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of `c` (low degree first, nonzero leading term).
/// Returns `None` if the iteration fails to settle below `precision`.
pub fn roots(c: &[f64], precision: f64) -> Option<Vec<Complex64>> {
    let n = c.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let lc = c[n];
    let monic: Vec<f64> = c.iter().map(|a| a / lc).collect();
    if n == 1 {
        return Some(vec![Complex64::new(-monic[0], 0.0)]);
    }
    // Fujiwara bound on the root moduli
    let radius = (0..n)
        .map(|i| monic[i].abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = radius.max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / n as f64 + 0.4))
        .collect();

    let target = (f64::EPSILON * 8.0).max(precision * 1e-3);
    let mut settled = false;
    for _ in 0..MAX_SWEEPS {
        let mut worst = 0.0f64;
        for j in 0..n {
            let (p, dp) = horner(&monic, z[j]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&l| l != j).map(|l| (z[j] - z[l]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[j] -= step;
                worst = worst.max(step.norm() / z[j].norm().max(1.0));
            }
        }
        if worst <= target {
            settled = true;
            break;
        }
    }
    for zj in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zj);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zj -= step;
        }
    }
    let residual_ok = z.iter().all(|&zj| {
        let (p, dp) = horner(&monic, zj);
        p.norm() <= precision * dp.norm().max(1.0) * zj.norm().max(1.0)
    });
    (settled || residual_ok).then_some(z)
}
