//! Small dense linear-algebra helpers: complex 2x2 matrices and a real
//! Householder-QR least-squares solver for the boundary-value extrapolation.

use num_complex::Complex64;

use crate::{Error, Result};

/// Complex 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(s: Complex64) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = s;
        m.0[1][1] = s;
        m
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Closed-form inverse. Fails when |det| < 1e-12 * ||M||_F^2, reporting a
    /// condition estimate.
    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        let scale = self.frobenius_norm();
        if d.norm() < 1e-12 * scale * scale {
            return Err(Error::KMatrixSingular(format!(
                "2x2 matrix singular: |det| = {:.3e}, cond >= {:.3e}",
                d.norm(),
                scale * scale / d.norm().max(f64::MIN_POSITIVE)
            )));
        }
        Ok(Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ]))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2([
            [self.0[0][0], self.0[1][0]],
            [self.0[0][1], self.0[1][1]],
        ])
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Eigenvalues of a Hermitian 2x2 matrix (caller asserts Hermitian-ness);
    /// returned ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let tr = a + d;
        let disc = ((a - d) * (a - d) / 4.0 + b.norm_sqr()).max(0.0).sqrt();
        [tr / 2.0 - disc, tr / 2.0 + disc]
    }
}

/// Least-squares solution of `A x = b` (real matrix, complex right-hand side)
/// via Householder QR with column equilibration. `a` is row major, `m >= n`.
pub fn lstsq_complex(a: &[Vec<f64>], b: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { 0 };
    if m < n || n == 0 || b.len() != m {
        return Err(Error::Domain(format!(
            "lstsq: bad shape {m}x{n}, rhs {}",
            b.len()
        )));
    }
    let mut scale = vec![0.0f64; n];
    for (j, s) in scale.iter_mut().enumerate() {
        let mx = a.iter().map(|row| row[j].abs()).fold(0.0f64, f64::max);
        *s = if mx > 0.0 { mx } else { 1.0 };
    }
    let mut q = vec![vec![0.0f64; n]; m];
    for i in 0..m {
        for j in 0..n {
            q[i][j] = a[i][j] / scale[j];
        }
    }
    let mut rhs: Vec<Complex64> = b.to_vec();

    for j in 0..n {
        let norm = (j..m).map(|i| q[i][j] * q[i][j]).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::NonConvergence(
                "lstsq: rank-deficient design matrix".into(),
            ));
        }
        let alpha = if q[j][j] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0f64; m - j];
        v[0] = q[j][j] - alpha;
        for i in j + 1..m {
            v[i - j] = q[i][j];
        }
        let vnorm2 = v.iter().map(|x| x * x).sum::<f64>();
        if vnorm2 == 0.0 {
            continue;
        }
        q[j][j] = alpha;
        for i in j + 1..m {
            q[i][j] = 0.0;
        }
        for col in j + 1..n {
            let mut s = 0.0;
            for i in j..m {
                s += v[i - j] * q[i][col];
            }
            let t = 2.0 * s / vnorm2;
            for i in j..m {
                q[i][col] -= t * v[i - j];
            }
        }
        let mut s = Complex64::new(0.0, 0.0);
        for i in j..m {
            s += v[i - j] * rhs[i];
        }
        let t = 2.0 * s / vnorm2;
        for i in j..m {
            rhs[i] -= t * v[i - j];
        }
    }
    // back substitution on the n x n upper triangle
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for j in (0..n).rev() {
        let mut s = rhs[j];
        for k in j + 1..n {
            s -= q[j][k] * x[k];
        }
        x[j] = s / q[j][j];
    }
    for j in 0..n {
        x[j] /= scale[j];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mat2_inverse_roundtrip() {
        let m = Mat2([[c(1.0, 2.0), c(-0.5, 0.3)], [c(0.0, 1.0), c(2.0, -1.0)]]);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert!((id.sub(&Mat2::identity())).frobenius_norm() < 1e-14);
    }

    #[test]
    fn mat2_singular_detected() {
        let m = Mat2([[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]]);
        assert!(matches!(m.inverse(), Err(Error::KMatrixSingular(_))));
    }

    #[test]
    fn hermitian_eigenvalues_2x2() {
        let m = Mat2([[c(2.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(2.0, 0.0)]]);
        let ev = m.hermitian_eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn lstsq_recovers_exact_coefficients() {
        // b = 3 - 2 eps^0.5 + 0.25 eps over a geometric mesh
        let mut a = Vec::new();
        let mut b = Vec::new();
        for k in 4..18 {
            let eps = 0.5f64.powi(k);
            a.push(vec![1.0, eps.sqrt(), eps]);
            b.push(c(3.0 - 2.0 * eps.sqrt() + 0.25 * eps, 1.0 + eps.sqrt()));
        }
        let x = lstsq_complex(&a, &b).unwrap();
        assert!((x[0] - c(3.0, 1.0)).norm() < 1e-10);
        assert!((x[1] - c(-2.0, 1.0)).norm() < 1e-9);
        assert!((x[2] - c(0.25, 0.0)).norm() < 1e-7);
    }
}
