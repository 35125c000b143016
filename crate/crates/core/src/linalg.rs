//! Small dense linear algebra: characteristic polynomials, closed-form
//! quadratic/cubic roots and a pivoting solver for tiny systems.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::model::{Mat2, Mat3};

/// Eigenvalues with `|Re| < MARGINAL_TOLERANCE` make a verdict marginal.
pub const MARGINAL_TOLERANCE: f64 = 1e-9;

/// Coefficients `(c2, c1, c0)` of the monic characteristic polynomial
/// `λ³ + c2 λ² + c1 λ + c0 = det(λI - M)`.
pub fn char_poly3(m: &Mat3) -> (f64, f64, f64) {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    (-tr, minors, -det3(m))
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat3_vec(m: &Mat3, v: &[f64; 3]) -> [f64; 3] {
    core::array::from_fn(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
}

/// Roots of `λ² + b λ + c`, computed without catastrophic cancellation.
pub fn quadratic_roots(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let sq = libm::sqrt(disc);
        let r1 = if b >= 0.0 { -0.5 * (b + sq) } else { 0.5 * (sq - b) };
        let r2 = if r1 != 0.0 { c / r1 } else { -b - r1 };
        [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -0.5 * b;
        let im = 0.5 * libm::sqrt(-disc);
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn polish_real_root(c2: f64, c1: f64, c0: f64, mut x: f64) -> f64 {
    for _ in 0..3 {
        let f = ((x + c2) * x + c1) * x + c0;
        let df = (3.0 * x + 2.0 * c2) * x + c1;
        if df == 0.0 {
            break;
        }
        let next = x - f / df;
        if !next.is_finite() {
            break;
        }
        let f_next = ((next + c2) * next + c1) * next + c0;
        if libm::fabs(f_next) >= libm::fabs(f) {
            break;
        }
        x = next;
    }
    x
}

/// Roots of the monic cubic `λ³ + c2 λ² + c1 λ + c0`.
///
/// Three real roots use the trigonometric form; otherwise the single real
/// root comes from Cardano's formula and the complex pair from the deflated
/// quadratic. Every real root is polished by Newton steps on the original
/// cubic. Real roots come first.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let disc = 0.25 * q * q + p * p * p / 27.0;

    if disc <= 0.0 && p < 0.0 {
        let m = 2.0 * libm::sqrt(-p / 3.0);
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = libm::acos(arg) / 3.0;
        let mut roots = [0.0; 3];
        for (k, r) in roots.iter_mut().enumerate() {
            let t = m * libm::cos(theta - 2.0 * PI * k as f64 / 3.0);
            *r = polish_real_root(c2, c1, c0, t - shift);
        }
        return roots.map(|r| Complex64::new(r, 0.0));
    }

    let t = if p == 0.0 && q == 0.0 {
        0.0
    } else {
        let sq = libm::sqrt(disc.max(0.0));
        let w = 0.5 * libm::fabs(q) + sq;
        let mag = libm::cbrt(w);
        let u = if q > 0.0 { -mag } else { mag };
        if u == 0.0 { 0.0 } else { u - p / (3.0 * u) }
    };
    let r = polish_real_root(c2, c1, c0, t - shift);
    let b1 = c2 + r;
    let b0 = c1 + r * b1;
    let [z1, z2] = quadratic_roots(b1, b0);
    [Complex64::new(r, 0.0), z1, z2]
}

pub fn eigenvalues2(m: &Mat2) -> [Complex64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    quadratic_roots(-tr, det)
}

pub fn eigenvalues3(m: &Mat3) -> [Complex64; 3] {
    let (c2, c1, c0) = char_poly3(m);
    cubic_roots(c2, c1, c0)
}

/// Linear stability verdict derived from a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stability {
    /// Every eigenvalue has real part `< -MARGINAL_TOLERANCE`.
    pub stable: bool,
    /// Some eigenvalue has `|Re| < MARGINAL_TOLERANCE`.
    pub marginal: bool,
}

pub fn stability_of(eigs: &[Complex64]) -> Stability {
    let marginal = eigs.iter().any(|z| libm::fabs(z.re) < MARGINAL_TOLERANCE);
    let stable = !marginal && eigs.iter().all(|z| z.re < 0.0);
    Stability { stable, marginal }
}

/// Routh–Hurwitz test for `λ³ + c2 λ² + c1 λ + c0`: all roots in the open
/// left half-plane iff `c2 > 0`, `c0 > 0` and `c2 c1 > c0`.
pub fn routh_hurwitz_stable(c2: f64, c1: f64, c0: f64) -> bool {
    c2 > 0.0 && c0 > 0.0 && c2 * c1 > c0
}

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` for a (numerically) singular matrix.
pub fn solve<const N: usize>(mut m: [[f64; N]; N], mut rhs: [f64; N]) -> Option<[f64; N]> {
    let scale = m
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, x| acc.max(libm::fabs(*x)));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&r1, &r2| libm::fabs(m[r1][col]).total_cmp(&libm::fabs(m[r2][col])))
            .unwrap_or(col);
        if libm::fabs(m[pivot][col]) <= scale * 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..N {
            let factor = m[r][col] / m[col][col];
            if factor != 0.0 {
                let pivot_row = m[col];
                for (dst, src) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *dst -= factor * src;
                }
                rhs[r] -= factor * rhs[col];
            }
        }
    }
    let mut x = [0.0; N];
    for r in (0..N).rev() {
        let mut acc = rhs[r];
        for c in r + 1..N {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    if x.iter().all(|v| v.is_finite()) { Some(x) } else { None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(c2: f64, c1: f64, c0: f64, z: Complex64) -> Complex64 {
        ((z + c2) * z + c1) * z + c0
    }

    #[test]
    fn cubic_known_roots() {
        // (λ-1)(λ-2)(λ+3) = λ³ - 7λ + 6
        let mut r: [f64; 3] = cubic_roots(0.0, -7.0, 6.0).map(|z| z.re);
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 3.0).abs() < 1e-14 && (r[1] - 1.0).abs() < 1e-14 && (r[2] - 2.0).abs() < 1e-14);
        // (λ+1)(λ²+4) = λ³ + λ² + 4λ + 4
        let z = cubic_roots(1.0, 4.0, 4.0);
        assert!((z[0].re + 1.0).abs() < 1e-14);
        assert!((z[1].im.abs() - 2.0).abs() < 1e-14 && z[1].re.abs() < 1e-14);
        // triple root at -2
        let z = cubic_roots(6.0, 12.0, 8.0);
        assert!(z.iter().all(|r| (r.re + 2.0).abs() < 1e-5 && r.im.abs() < 1e-5));
    }

    #[test]
    fn cubic_residuals_small() {
        let cases = [(0.3, -2.0, 0.01), (-5.0, 1e-3, 2.0), (1e-4, 3e-3, 2e-7), (2.0, 1.0, 0.0)];
        for (c2, c1, c0) in cases {
            for z in cubic_roots(c2, c1, c0) {
                let scale = 1.0 + z.norm().powi(3) + c2.abs() * z.norm_sqr() + c1.abs() * z.norm();
                assert!(eval(c2, c1, c0, z).norm() / scale < 1e-13, "{c2} {c1} {c0} {z}");
            }
        }
    }

    #[test]
    fn quadratic_stable_small_root() {
        let [r1, r2] = quadratic_roots(1e8, 1.0);
        assert!((r2.re + 1e-8).abs() < 1e-20);
        assert!((r1.re + 1e8).abs() < 1e-6);
    }

    #[test]
    fn routh_hurwitz_examples() {
        assert!(routh_hurwitz_stable(6.0, 11.0, 6.0)); // -1, -2, -3
        assert!(!routh_hurwitz_stable(1.0, 4.0, 4.0)); // pure imaginary pair
        assert!(!routh_hurwitz_stable(0.0, -7.0, 6.0));
    }

    #[test]
    fn stability_verdict_flags_marginal() {
        let v = stability_of(&[Complex64::new(-1.0, 0.0), Complex64::new(1e-12, 1.0)]);
        assert!(!v.stable && v.marginal);
        let v = stability_of(&[Complex64::new(-1.0, 0.0), Complex64::new(-0.5, 1.0)]);
        assert!(v.stable && !v.marginal);
    }

    #[test]
    fn solve_small_system() {
        let m = [[0.0, 2.0, 1.0], [1.0, -1.0, 0.0], [3.0, 0.0, 1.0]];
        let x = solve(m, [5.0, -1.0, 4.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14 && (x[2] - 1.0).abs() < 1e-14);
        assert!(solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0]).is_none());
    }
}
