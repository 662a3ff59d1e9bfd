//! Donoghue m-functions for every self-adjoint extension of the minimal
//! Jacobi operator: 2x2 matrix-valued in the doubly limit-circle regime
//! (separated, coupled, and Krein-von Neumann boundary conditions) and
//! scalar-valued when exactly one endpoint is limit circle.
//!
//! All operator values are returned as matrices in the fixed orthonormal
//! defect basis `{v1(i,.), v2(i,.)}` built from the `u1/u2` system; rank-one
//! correction terms reduce to endpoint data through the Lagrange identity
//! (see [`inner_product_solutions`]).

use num_complex::Complex64;

use crate::boundary::BoundaryData;
use crate::expr::JacobiParams;
use crate::linalg::Mat2;
use crate::mweyl::{self, RegimeCase, UBoundary};
use crate::specfun::{self, EULER_GAMMA};
use crate::{Error, Result};

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which self-adjoint extension to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtensionSpec {
    /// Separated conditions `cos(g) u~ + sin(g) u~' = 0` at each endpoint.
    Separated { gamma: f64, delta: f64 },
    /// Coupled conditions with phase `phi in [0,pi)` and `R in SL(2,R)`.
    Coupled { phi: f64, r: [[f64; 2]; 2] },
    /// One limit-circle endpoint (at `-1`), separated condition there.
    OneLc { gamma: f64 },
    /// The Krein-von Neumann extension (coupled, `phi = 0`, `R = R_K`).
    Krein,
}

/// A Donoghue m-function value: a `dim x dim` complex matrix in the
/// orthonormal defect basis (`dim = 1` stores the scalar in entry (0,0)).
#[derive(Debug, Clone, Copy)]
pub struct DonoghueValue {
    pub dim: u8,
    pub entries: Mat2,
}

impl DonoghueValue {
    fn scalar(m: Complex64) -> Self {
        Self { dim: 1, entries: Mat2::scalar(m) }
    }

    fn matrix(m: Mat2) -> Self {
        Self { dim: 2, entries: m }
    }

    pub fn as_scalar(&self) -> Option<Complex64> {
        (self.dim == 1).then_some(self.entries.0[0][0])
    }

    /// Frobenius distance to `s * Identity` on the active block.
    pub fn distance_to_scalar(&self, s: Complex64) -> f64 {
        if self.dim == 1 {
            (self.entries.0[0][0] - s).norm()
        } else {
            self.entries.sub(&Mat2::scalar(s)).frobenius_norm()
        }
    }

    /// Imaginary part `(M - M*)/(2i)` as a Hermitian matrix.
    pub fn imag_part(&self) -> Mat2 {
        self.entries
            .sub(&self.entries.adjoint())
            .scale(1.0 / (2.0 * I))
    }

    /// Smallest eigenvalue of `Im M / Im z`.
    pub fn min_herglotz_eigenvalue(&self, z: Complex64) -> f64 {
        let im = self.imag_part().scale(cx(1.0 / z.im));
        if self.dim == 1 {
            im.0[0][0].re
        } else {
            im.hermitian_eigenvalues()[0]
        }
    }

    pub fn adjoint(&self) -> Self {
        Self { dim: self.dim, entries: self.entries.adjoint() }
    }
}

/// Quantitative Herglotz lower bound on the smallest eigenvalue of
/// `Im M(z) / Im z` for any Donoghue m-function.
pub fn herglotz_floor(z: Complex64) -> f64 {
    let n2 = z.norm_sqr();
    2.0 / ((n2 + 1.0) + ((n2 - 1.0).powi(2) + 4.0 * z.re * z.re).sqrt())
}

/// Weighted inner product of two tau-eigensolutions from their boundary data
/// via the Lagrange identity:
///
/// ```text
/// (s1, s2) = [W(conj s1, s2)(-1) - W(conj s1, s2)(+1)] / (z2 - conj z1).
/// ```
///
/// Degenerates (and errors) when `z2 = conj z1`; callers fall back to
/// quadrature there.
pub fn inner_product_solutions(
    z1: Complex64,
    bd1: &BoundaryData,
    z2: Complex64,
    bd2: &BoundaryData,
) -> Result<Complex64> {
    let denom = z2 - z1.conj();
    if denom.norm() < 1e-14 * (z1.norm() + z2.norm()).max(1.0) {
        return Err(Error::Degenerate(
            "Lagrange identity degenerates at z2 = conj(z1); use quadrature".into(),
        ));
    }
    let c1 = bd1.conj();
    Ok((c1.wronskian_with(bd2, -1) - c1.wronskian_with(bd2, 1)) / denom)
}

/// Boundary data of `u_j(z, .)` assembled from the `u1/u2` normalization and
/// the derivative data in `ub`.
pub fn u_boundary_data(ub: &UBoundary, j: u8) -> BoundaryData {
    if j == 1 {
        BoundaryData { g_m1: cx(0.0), gp_m1: ub.u1p_a, g_p1: cx(1.0), gp_p1: ub.u1p_b }
    } else {
        BoundaryData { g_m1: cx(1.0), gp_m1: ub.u2p_a, g_p1: cx(0.0), gp_p1: ub.u2p_b }
    }
}

/// Normalization data of the orthonormal defect basis
/// `v1 = c1 u1(i,.)`, `v2 = c2 [u2(i,.) - ratio u1(i,.)]`.
#[derive(Debug, Clone, Copy)]
pub struct DefectBasis {
    pub c1: f64,
    pub c2: f64,
    pub ratio: f64,
    /// Boundary derivative data of `u1, u2` at `z = i` (values at `-i` are
    /// the conjugates).
    pub ub_i: UBoundary,
}

/// Builds the defect basis for `alpha, beta in (-1,1)`.
pub fn defect_basis(params: &JacobiParams) -> Result<DefectBasis> {
    let ub_i = mweyl::u_boundary(params, I)?;
    let norm1_sq = -ub_i.u1p_b.im;
    if norm1_sq <= 0.0 {
        return Err(Error::Param(format!(
            "defect basis degenerate: -Im u1~'(i,1) = {norm1_sq} <= 0"
        )));
    }
    let ratio = ub_i.u2p_b.im / ub_i.u1p_b.im;
    let c2_sq = ub_i.u2p_a.im + ub_i.u2p_b.im * ub_i.u2p_b.im / ub_i.u1p_b.im;
    if c2_sq <= 0.0 {
        return Err(Error::Param(format!(
            "defect basis degenerate: ||v2 direction||^2 = {c2_sq} <= 0"
        )));
    }
    Ok(DefectBasis {
        c1: norm1_sq.powf(-0.5),
        c2: c2_sq.powf(-0.5),
        ratio,
        ub_i,
    })
}

/// The matrix `(W_{j,k}(z))` of the Friedrichs-base Donoghue expansion.
pub fn w_matrix(db: &DefectBasis, ub_z: &UBoundary) -> Mat2 {
    let (c1, c2, rho) = (cx(db.c1), cx(db.c2), cx(db.ratio));
    let u1b_i = db.ub_i.u1p_b;
    let u1a_i = db.ub_i.u1p_a;
    let u2b_i = db.ub_i.u2p_b;
    let u2a_i = db.ub_i.u2p_a;
    // values at -i are conjugates of the values at +i
    let d1b = ub_z.u1p_b - u1b_i.conj();
    let w11 = c1 * c1 * d1b;
    let w12 = c1 * c2 * (rho * (u1b_i.conj() - ub_z.u1p_b) + ub_z.u2p_b + u1a_i.conj());
    let w21 = -c1 * c2 * (rho * d1b + u2b_i.conj() + ub_z.u1p_a);
    let w22 = c2
        * c2
        * ((u2b_i.conj() - ub_z.u2p_b + rho * d1b) * rho + u2a_i.conj() - ub_z.u2p_a
            + rho * (ub_z.u1p_a - u1a_i.conj()));
    Mat2([[w11, w12], [w21, w22]])
}

/// The matrix `(W^{Kr}_{l,k}(z))` entering every extension correction.
pub fn wkr_matrix(db: &DefectBasis, ub_z: &UBoundary) -> Mat2 {
    let (c1, c2, rho) = (cx(db.c1), cx(db.c2), cx(db.ratio));
    let u1b_i = db.ub_i.u1p_b;
    let u1a_i = db.ub_i.u1p_a;
    let u2b_i = db.ub_i.u2p_b;
    let u2a_i = db.ub_i.u2p_a;
    let k11 = c1 * (ub_z.u1p_b - u1b_i.conj());
    let k12 = c1 * (ub_z.u2p_b + u1a_i.conj());
    let k21 = -c2 * (rho * (ub_z.u1p_b - u1b_i.conj()) + u2b_i.conj() + ub_z.u1p_a);
    let k22 = -c2 * (rho * (ub_z.u2p_b + u1a_i.conj()) + ub_z.u2p_a - u2a_i.conj());
    Mat2([[k11, k12], [k21, k22]])
}

/// Gram-type matrix `G_{j,l} = (u_j(conj z, .), v_l(i, .))`, realized through
/// the Lagrange identity on boundary data.
pub fn g_matrix(db: &DefectBasis, ub_z: &UBoundary, z: Complex64) -> Result<Mat2> {
    let bdz = [u_boundary_data(ub_z, 1), u_boundary_data(ub_z, 2)];
    let bdi = [u_boundary_data(&db.ub_i, 1), u_boundary_data(&db.ub_i, 2)];
    let mut ip = [[cx(0.0); 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            // u_j(conj z, .) has boundary data conj(bd of u_j(z, .))
            ip[j][k] = inner_product_solutions(z.conj(), &bdz[j].conj(), I, &bdi[k])?;
        }
    }
    let (c1, c2, rho) = (cx(db.c1), cx(db.c2), cx(db.ratio));
    Ok(Mat2([
        [c1 * ip[0][0], c2 * (ip[0][1] - rho * ip[0][0])],
        [c1 * ip[1][0], c2 * (ip[1][1] - rho * ip[1][0])],
    ]))
}

/// K matrix for separated conditions with `gamma, delta in (0,pi)`.
fn k_separated(gamma: f64, delta: f64, ub_z: &UBoundary) -> Mat2 {
    let cot = |t: f64| cx(t.cos() / t.sin());
    Mat2([
        [cot(delta) + ub_z.u1p_b, -ub_z.u1p_a],
        [ub_z.u2p_b, -cot(gamma) - ub_z.u2p_a],
    ])
}

/// K matrix for coupled conditions with `R_{1,2} != 0`.
fn k_coupled(phi: f64, r: &[[f64; 2]; 2], ub_z: &UBoundary) -> Mat2 {
    let e_m = Complex64::from_polar(1.0, -phi);
    let e_p = Complex64::from_polar(1.0, phi);
    Mat2([
        [cx(-r[1][1] / r[0][1]) + ub_z.u1p_b, e_m / r[0][1] - ub_z.u1p_a],
        [e_p / r[0][1] + ub_z.u2p_b, cx(-r[0][0] / r[0][1]) - ub_z.u2p_a],
    ])
}

/// K matrix for the Krein extension, referenced to the `z = 0` data.
fn k_krein(ub_z: &UBoundary, ub_0: &UBoundary) -> Mat2 {
    Mat2([
        [ub_z.u1p_b - ub_0.u1p_b, ub_0.u1p_a - ub_z.u1p_a],
        [ub_z.u2p_b - ub_0.u2p_b, ub_0.u2p_a - ub_z.u2p_a],
    ])
}

/// The `R_K` matrix of the Krein-von Neumann extension for the five strictly
/// positive parameter windows; `1/Gamma(0)` is read as 0.
pub fn krein_r(params: &JacobiParams) -> Result<[[f64; 2]; 2]> {
    let (alpha, beta) = (params.alpha, params.beta);
    let in_m = |t: f64| -1.0 < t && t < 0.0;
    let in_p = |t: f64| 0.0 < t && t < 1.0;
    let beta_coef = || -> Result<f64> {
        let g = |t: f64| specfun::gamma(cx(t)).map(|v| v.re);
        Ok(2.0f64.powf(-alpha - beta - 1.0)
            * g(-alpha)?
            * g(-beta)?
            * specfun::rgamma(cx(-alpha - beta)).re)
    };
    let psi = |t: f64| specfun::digamma(cx(t)).map(|v| v.re);
    if in_m(alpha) && in_m(beta) {
        let b = beta_coef()?;
        Ok([[1.0, b], [0.0, 1.0]])
    } else if in_m(alpha) && in_p(beta) {
        let b = beta_coef()?;
        Ok([[-b, 1.0], [-1.0, 0.0]])
    } else if in_p(alpha) && in_m(beta) {
        let b = beta_coef()?;
        Ok([[0.0, -1.0], [1.0, b]])
    } else if alpha == 0.0 && in_m(beta) {
        let t = -2.0f64.powf(-beta - 1.0) * (EULER_GAMMA + psi(-beta)?);
        Ok([[0.0, -1.0], [1.0, t]])
    } else if in_m(alpha) && beta == 0.0 {
        let t = 2.0f64.powf(-alpha - 1.0) * (EULER_GAMMA + psi(-alpha)?);
        Ok([[t, 1.0], [-1.0, 0.0]])
    } else {
        Err(Error::NotStrictlyPositive(format!(
            "minimal operator is nonnegative but not strictly positive for \
             alpha = {alpha}, beta = {beta}; no Krein matrix"
        )))
    }
}

fn validate_angle(name: &str, t: f64) -> Result<()> {
    if (0.0..std::f64::consts::PI).contains(&t) {
        Ok(())
    } else {
        Err(Error::Param(format!("{name} = {t} outside [0, pi)")))
    }
}

fn two_lc_correction(
    db: &DefectBasis,
    ub_z: &UBoundary,
    z: Complex64,
    ext: &ExtensionSpec,
    params: &JacobiParams,
) -> Result<Mat2> {
    let wkr = wkr_matrix(db, ub_z);
    let g = g_matrix(db, ub_z, z)?;
    match *ext {
        ExtensionSpec::Separated { gamma, delta } => {
            if gamma == 0.0 && delta == 0.0 {
                return Ok(Mat2::zero());
            }
            if gamma > 0.0 && delta > 0.0 {
                let kinv = k_separated(gamma, delta, ub_z).inverse()?;
                return Ok(wkr.mul(&kinv.transpose()).mul(&g).scale(I - z));
            }
            if gamma > 0.0 {
                // delta = 0: rank-one correction through the u2 data at -1
                let denom = cx(gamma.cos() / gamma.sin()) + ub_z.u2p_a;
                if denom.norm() < 1e-12 * ub_z.u2p_a.norm().max(1.0) {
                    return Err(Error::KMatrixSingular(format!(
                        "cot(gamma) + u2~'(z,-1) vanishes at z = {z}"
                    )));
                }
                let s = (z - I) / denom;
                let mut corr = Mat2::zero();
                for m in 0..2 {
                    for l in 0..2 {
                        corr.0[m][l] = s * wkr.0[m][1] * g.0[1][l];
                    }
                }
                return Ok(corr);
            }
            // gamma = 0, delta > 0
            let denom = cx(delta.cos() / delta.sin()) + ub_z.u1p_b;
            if denom.norm() < 1e-12 * ub_z.u1p_b.norm().max(1.0) {
                return Err(Error::KMatrixSingular(format!(
                    "cot(delta) + u1~'(z,1) vanishes at z = {z}"
                )));
            }
            let s = -(z - I) / denom;
            let mut corr = Mat2::zero();
            for m in 0..2 {
                for l in 0..2 {
                    corr.0[m][l] = s * wkr.0[m][0] * g.0[0][l];
                }
            }
            Ok(corr)
        }
        ExtensionSpec::Coupled { phi, r } => {
            if r[0][1] != 0.0 {
                let kinv = k_coupled(phi, &r, ub_z).inverse()?;
                Ok(wkr.mul(&kinv.transpose()).mul(&g).scale(I - z))
            } else {
                // R12 = 0: scalar correction built on u_{phi,R} = e^{-i phi} R22 u2 + u1
                let e_m = Complex64::from_polar(1.0, -phi);
                let e_p = Complex64::from_polar(1.0, phi);
                let r22 = cx(r[1][1]);
                let up_a = e_m * r22 * ub_z.u2p_a + ub_z.u1p_a;
                let up_b = e_m * r22 * ub_z.u2p_b + ub_z.u1p_b;
                let k_scalar = cx(-r[1][0] * r[1][1]) - e_p * r22 * up_a + up_b;
                let scale = up_a.norm().max(up_b.norm()).max(1.0);
                if k_scalar.norm() < 1e-12 * scale {
                    return Err(Error::KMatrixSingular(format!(
                        "k_(phi,R)(z) vanishes at z = {z}"
                    )));
                }
                let s = -(z - I) / k_scalar;
                let mut corr = Mat2::zero();
                for m in 0..2 {
                    let row = e_m * r22 * wkr.0[m][1] + wkr.0[m][0];
                    for l in 0..2 {
                        let col = e_p * r22 * g.0[1][l] + g.0[0][l];
                        corr.0[m][l] = s * row * col;
                    }
                }
                Ok(corr)
            }
        }
        ExtensionSpec::Krein => {
            let _ = krein_r(params)?; // gate on the strictly positive windows
            let ub_0 = mweyl::u_boundary(params, cx(0.0))?;
            let kinv = k_krein(ub_z, &ub_0).inverse()?;
            Ok(wkr.mul(&kinv.transpose()).mul(&g).scale(I - z))
        }
        ExtensionSpec::OneLc { .. } => unreachable!("handled by the scalar branch"),
    }
}

/// Donoghue m-function of the extension `ext` at `z` (off the real axis).
///
/// The values at `z = +/- i` are the exact normalization `+/- i I` by the
/// explicit branch, never by limits.
pub fn m_donoghue(
    ext: &ExtensionSpec,
    params: &JacobiParams,
    z: Complex64,
) -> Result<DonoghueValue> {
    if z.im == 0.0 {
        return Err(Error::Domain(format!("Donoghue m-function needs Im z != 0, got {z}")));
    }
    let reg = mweyl::regime(params)?;
    match *ext {
        ExtensionSpec::OneLc { gamma } => {
            validate_angle("gamma", gamma)?;
            if reg == RegimeCase::TwoLc {
                return Err(Error::Param(
                    "one-limit-circle extension needs |alpha| >= 1".into(),
                ));
            }
            if z == I {
                return Ok(DonoghueValue::scalar(I));
            }
            if z == -I {
                return Ok(DonoghueValue::scalar(-I));
            }
            let m_z = mweyl::m_weyl(params, z)?;
            let m_i = mweyl::m_weyl(params, I)?;
            let m_mi = m_i.conj();
            let mut m = -I + (m_z - m_mi) / m_i.im;
            if gamma > 0.0 {
                let denom = cx(gamma.cos() / gamma.sin()) + m_z;
                if denom.norm() < 1e-12 * m_z.norm().max(1.0) {
                    return Err(Error::KMatrixSingular(format!(
                        "cot(gamma) + m(z) vanishes at z = {z}"
                    )));
                }
                // (i - z) q(z) (psi(conj z, .), psi(i, .)) with the inner
                // product reduced through the Lagrange identity to m-values
                m += (m_z - m_mi) * (m_i - m_z) / denom / m_i.im;
            }
            Ok(DonoghueValue::scalar(m))
        }
        _ => {
            if reg != RegimeCase::TwoLc {
                return Err(Error::Param(
                    "matrix Donoghue m-functions need both endpoints limit circle".into(),
                ));
            }
            if let ExtensionSpec::Separated { gamma, delta } = *ext {
                validate_angle("gamma", gamma)?;
                validate_angle("delta", delta)?;
            }
            if let ExtensionSpec::Coupled { phi, r } = *ext {
                validate_angle("phi", phi)?;
                let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
                if (det - 1.0).abs() > 1e-10 {
                    return Err(Error::Param(format!("det R = {det} != 1: R not in SL(2,R)")));
                }
            }
            if z == I {
                return Ok(DonoghueValue::matrix(Mat2::scalar(I)));
            }
            if z == -I {
                return Ok(DonoghueValue::matrix(Mat2::scalar(-I)));
            }
            let db = defect_basis(params)?;
            let ub_z = mweyl::u_boundary(params, z)?;
            let base = Mat2::scalar(-I).sub(&w_matrix(&db, &ub_z));
            let corr = two_lc_correction(&db, &ub_z, z, ext, params)?;
            Ok(DonoghueValue::matrix(base.add(&corr)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{boundary, mweyl, oracle};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn defect_norm_identity() {
        // ||u1(i,.)||^2 = -Im u1~'(i,1), checked by the basis-split quadrature
        let p = JacobiParams::new(0.4, -0.3);
        let db = defect_basis(&p).unwrap();
        let comp = mweyl::u_composition(&p, I).unwrap();
        let nrm = oracle::inner_product_quadrature(&p, I, comp[0], I, comp[0], 80).unwrap();
        assert_relative_eq!(nrm.re, -db.ub_i.u1p_b.im, max_relative = 1e-10);
        assert!(nrm.im.abs() < 1e-11);
        // ratio = (u1,u2)/||u1||^2
        let ip12 = oracle::inner_product_quadrature(&p, I, comp[0], I, comp[1], 80).unwrap();
        assert_relative_eq!(ip12.re / nrm.re, db.ratio, max_relative = 1e-9);
    }

    #[test]
    fn defect_basis_gram_identity() {
        let p = JacobiParams::new(0.5, 0.5);
        let db = defect_basis(&p).unwrap();
        let comp = mweyl::u_composition(&p, I).unwrap();
        // v1 = c1 u1, v2 = c2 (u2 - ratio u1) as coefficient vectors
        let v1 = (db.c1 * comp[0].0, db.c1 * comp[0].1);
        let v2 = (
            db.c2 * (comp[1].0 - db.ratio * comp[0].0),
            db.c2 * (comp[1].1 - db.ratio * comp[0].1),
        );
        for (vk, vl, expect, label) in
            [(v1, v1, 1.0, "11"), (v1, v2, 0.0, "12"), (v2, v2, 1.0, "22")]
        {
            let ip = oracle::inner_product_quadrature(&p, I, vk, I, vl, 80).unwrap();
            assert!(
                (ip - expect).norm() < 1e-8,
                "Gram({label}) = {ip}, expected {expect}"
            );
        }
    }

    #[test]
    fn lagrange_identity_against_quadrature() {
        let p = JacobiParams::new(0.3, -0.4);
        let z = c(0.7, 1.2);
        let ub_z = mweyl::u_boundary(&p, z).unwrap();
        let ub_i = mweyl::u_boundary(&p, I).unwrap();
        let comp_zc = mweyl::u_composition(&p, z.conj()).unwrap();
        let comp_i = mweyl::u_composition(&p, I).unwrap();
        for j in [1u8, 2] {
            for k in [1u8, 2] {
                let lagrange = inner_product_solutions(
                    z.conj(),
                    &u_boundary_data(&ub_z, j).conj(),
                    I,
                    &u_boundary_data(&ub_i, k),
                )
                .unwrap();
                let quad = oracle::inner_product_quadrature(
                    &p,
                    z.conj(),
                    comp_zc[(j - 1) as usize],
                    I,
                    comp_i[(k - 1) as usize],
                    80,
                )
                .unwrap();
                assert!(
                    (lagrange - quad).norm() <= 1e-8 * lagrange.norm().max(1.0),
                    "({j},{k}): {lagrange} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn lagrange_identity_norm_anchor() {
        // (u1(i), u1(i)) = -Im u1~'(i,1) through the identity itself
        let p = JacobiParams::new(0.25, 0.65);
        let ub_i = mweyl::u_boundary(&p, I).unwrap();
        let bd = u_boundary_data(&ub_i, 1);
        let ip = inner_product_solutions(I, &bd, I, &bd).unwrap();
        assert_relative_eq!(ip.re, -ub_i.u1p_b.im, max_relative = 1e-12);
        assert!(ip.im.abs() < 1e-13);
    }

    #[test]
    fn lagrange_identity_degenerate_case() {
        let p = JacobiParams::new(0.3, -0.4);
        let ub = mweyl::u_boundary(&p, c(0.5, 1.0)).unwrap();
        let bd = u_boundary_data(&ub, 1);
        assert!(matches!(
            inner_product_solutions(c(0.5, 1.0), &bd, c(0.5, -1.0), &bd),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn w_matrix_display_and_minus_i_limit() {
        let p = JacobiParams::new(0.35, -0.25);
        let db = defect_basis(&p).unwrap();
        let z = c(0.8, -0.9);
        let ub_z = mweyl::u_boundary(&p, z).unwrap();
        let w = w_matrix(&db, &ub_z);
        let expect11 = db.c1 * db.c1 * (ub_z.u1p_b - db.ub_i.u1p_b.conj());
        assert!((w.0[0][0] - expect11).norm() < 1e-14 * expect11.norm().max(1.0));
        // z -> -i: the whole matrix vanishes
        let ub_mi = mweyl::u_boundary(&p, -I).unwrap();
        let w_mi = w_matrix(&db, &ub_mi);
        assert!(w_mi.frobenius_norm() < 1e-10, "W(-i) = {w_mi:?}");
        let wkr_mi = wkr_matrix(&db, &ub_mi);
        assert!(wkr_mi.frobenius_norm() < 1e-10);
    }

    fn sample_extensions(p: &JacobiParams) -> Vec<ExtensionSpec> {
        let mut v = vec![
            ExtensionSpec::Separated { gamma: 0.0, delta: 0.0 },
            ExtensionSpec::Separated { gamma: std::f64::consts::FRAC_PI_4, delta: 0.0 },
            ExtensionSpec::Separated { gamma: 0.0, delta: std::f64::consts::FRAC_PI_3 },
            ExtensionSpec::Separated {
                gamma: std::f64::consts::FRAC_PI_2,
                delta: std::f64::consts::FRAC_PI_4,
            },
            ExtensionSpec::Coupled { phi: 0.8, r: [[2.0, 1.0], [1.0, 1.0]] },
            ExtensionSpec::Coupled { phi: 0.0, r: [[0.5, 0.0], [1.3, 2.0]] },
        ];
        if krein_r(p).is_ok() {
            v.push(ExtensionSpec::Krein);
        }
        v
    }

    #[test]
    fn normalization_at_plus_minus_i() {
        let p = JacobiParams::new(-0.4, -0.6);
        for ext in sample_extensions(&p) {
            let m = m_donoghue(&ext, &p, I).unwrap();
            assert!(m.distance_to_scalar(I) < 1e-12);
            let m = m_donoghue(&ext, &p, -I).unwrap();
            assert!(m.distance_to_scalar(-I) < 1e-12);
        }
        // continuity: the generic formula near i approaches i I
        let ext = ExtensionSpec::Separated { gamma: 0.6, delta: 1.1 };
        let m = m_donoghue(&ext, &p, c(1e-7, 1.0 + 1e-7)).unwrap();
        assert!(m.distance_to_scalar(I) < 1e-4, "dist = {}", m.distance_to_scalar(I));
        // the generic formula at exactly -i hits -iI with no special branch
        let ub_mi = mweyl::u_boundary(&p, -I).unwrap();
        let db = defect_basis(&p).unwrap();
        let base = Mat2::scalar(-I).sub(&w_matrix(&db, &ub_mi));
        assert!(base.sub(&Mat2::scalar(-I)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn adjoint_symmetry() {
        let p = JacobiParams::new(0.45, -0.15);
        let z = c(0.6, 1.7);
        for ext in sample_extensions(&p) {
            let m = m_donoghue(&ext, &p, z).unwrap();
            let mc = m_donoghue(&ext, &p, z.conj()).unwrap();
            let d = mc.entries.sub(&m.adjoint().entries).frobenius_norm();
            assert!(d < 1e-9 * m.entries.frobenius_norm().max(1.0), "{ext:?}: {d}");
        }
    }

    #[test]
    fn herglotz_floor_two_lc() {
        let p = JacobiParams::new(0.45, -0.15);
        for ext in sample_extensions(&p) {
            for (re, im) in [(0.0, 1.0_f64), (1.5, 0.7), (-2.0, 2.0), (0.3, -1.2), (5.0, 0.4)] {
                let z = c(re, im);
                if z == I {
                    continue;
                }
                let m = m_donoghue(&ext, &p, z).unwrap();
                let lo = m.min_herglotz_eigenvalue(z);
                let floor = herglotz_floor(z);
                assert!(
                    lo >= floor - 1e-9,
                    "{ext:?} at {z}: min eig {lo} < floor {floor}"
                );
            }
        }
    }

    #[test]
    fn one_lc_matches_weyl_substitution() {
        // the Friedrichs scalar case is an explicit m-function transform
        let p = JacobiParams::new(1.0, -0.5);
        let z = c(0.4, 1.3);
        let m_z = mweyl::m_weyl(&p, z).unwrap();
        let m_i = mweyl::m_weyl(&p, I).unwrap();
        let expect = -I + (m_z - m_i.conj()) / m_i.im;
        let got = m_donoghue(&ExtensionSpec::OneLc { gamma: 0.0 }, &p, z)
            .unwrap()
            .as_scalar()
            .unwrap();
        assert!((got - expect).norm() < 1e-13 * expect.norm().max(1.0));
        // Herglotz floor for gamma in {0, pi/3}
        for gamma in [0.0, std::f64::consts::FRAC_PI_3] {
            for (re, im) in [(0.0, 1.0), (2.0, 0.5), (-1.0, -1.5), (0.7, 2.2)] {
                let z = c(re, im);
                if z == I {
                    continue;
                }
                let m = m_donoghue(&ExtensionSpec::OneLc { gamma }, &p, z).unwrap();
                assert!(
                    m.min_herglotz_eigenvalue(z) >= herglotz_floor(z) - 1e-9,
                    "gamma={gamma} z={z}"
                );
            }
        }
    }

    #[test]
    fn friedrichs_poles_match_spectrum() {
        // singularities of z -> M_{T_{0,0}} entries on R sit on the spectrum;
        // evaluate just off the axis and scan the (0,0) entry
        let p = JacobiParams::new(0.5, 0.5);
        let ext = ExtensionSpec::Separated { gamma: 0.0, delta: 0.0 };
        let spec = mweyl::friedrichs_spectrum(&p, 2).unwrap();
        let f = |x: f64| m_donoghue(&ext, &p, c(x, 1e-9)).map(|m| m.entries.0[0][0]);
        let poles = oracle::find_poles(f, (spec[0] - 0.5, spec[2] + 0.5), 3).unwrap();
        for (pole, lam) in poles.iter().zip(spec.iter()) {
            assert!((pole - lam).abs() < 1e-5, "{pole} vs {lam}");
        }
    }

    #[test]
    fn krein_r_values() {
        // alpha, beta in (-1,0): upper triangular with the Beta-integral entry
        let p = JacobiParams::new(-0.5, -0.5);
        let r = krein_r(&p).unwrap();
        assert_relative_eq!(r[0][1], std::f64::consts::PI, max_relative = 1e-13);
        assert_eq!([r[0][0], r[1][0], r[1][1]], [1.0, 0.0, 1.0]);
        // det = 1 in all five windows
        for (a, b) in [(-0.5, -0.5), (-0.3, 0.6), (0.6, -0.3), (0.0, -0.4), (-0.4, 0.0)] {
            let r = krein_r(&JacobiParams::new(a, b)).unwrap();
            let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
            assert_relative_eq!(det, 1.0, max_relative = 1e-12);
        }
        // excluded combinations
        for (a, b) in [(0.0, 0.0), (0.5, 0.5), (0.0, 0.5), (0.5, 0.0)] {
            assert!(matches!(
                krein_r(&JacobiParams::new(a, b)),
                Err(Error::NotStrictlyPositive(_))
            ));
        }
    }

    #[test]
    fn krein_k_matrix_equals_generic_coupled_k() {
        // the z=0-referenced Krein K matrix coincides with the generic
        // coupled K at (phi = 0, R = R_K)
        let p = JacobiParams::new(-0.5, -0.5);
        let r = krein_r(&p).unwrap();
        let z = c(0.7, 1.1);
        let ub_z = mweyl::u_boundary(&p, z).unwrap();
        let ub_0 = mweyl::u_boundary(&p, c(0.0, 0.0)).unwrap();
        let k1 = k_krein(&ub_z, &ub_0);
        let k2 = k_coupled(0.0, &r, &ub_z);
        assert!(
            k1.sub(&k2).frobenius_norm() < 1e-9 * k1.frobenius_norm(),
            "{k1:?} vs {k2:?}"
        );
    }

    #[test]
    fn krein_zero_modes_satisfy_coupled_condition() {
        use crate::solutions::{eval_solution, SolutionId};
        for (a, b) in [(-0.5, -0.5), (-0.3, 0.6), (0.6, -0.3), (0.0, -0.4), (-0.4, 0.0)] {
            let p = JacobiParams::new(a, b);
            let r = krein_r(&p).unwrap();
            // z = 0 kernel basis: the constant and the second closed-form solution
            let one = |_x: f64| Ok(crate::expr::SolutionValue::new(c(1.0, 0.0), c(0.0, 0.0)));
            let id2 = SolutionId::y2_for(-1, &p);
            let y2 = |x: f64| eval_solution(id2, &p, c(0.0, 0.0), x);
            for (label, bd) in [
                ("const", boundary::generalized_bv(&p, one).unwrap()),
                ("y2", boundary::generalized_bv(&p, y2).unwrap()),
            ] {
                let lhs = [bd.g_p1, bd.gp_p1];
                let rhs = [
                    r[0][0] * bd.g_m1 + r[0][1] * bd.gp_m1,
                    r[1][0] * bd.g_m1 + r[1][1] * bd.gp_m1,
                ];
                let scale = lhs[0].norm().max(lhs[1].norm()).max(1.0);
                for i in 0..2 {
                    assert!(
                        (lhs[i] - rhs[i]).norm() < 1e-9 * scale,
                        "({a},{b}) {label} row {i}: {} vs {}",
                        lhs[i],
                        rhs[i]
                    );
                }
            }
        }
    }

    #[test]
    fn extension_spec_validation() {
        let p = JacobiParams::new(0.3, 0.3);
        assert!(matches!(
            m_donoghue(
                &ExtensionSpec::Coupled { phi: 0.0, r: [[1.0, 0.5], [0.0, 1.5]] },
                &p,
                c(0.0, 2.0)
            ),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            m_donoghue(&ExtensionSpec::OneLc { gamma: 0.0 }, &p, c(0.0, 2.0)),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            m_donoghue(
                &ExtensionSpec::Separated { gamma: 0.0, delta: 0.0 },
                &JacobiParams::new(1.5, 0.0),
                c(0.0, 2.0)
            ),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            m_donoghue(
                &ExtensionSpec::Separated { gamma: 0.0, delta: 0.0 },
                &p,
                c(0.5, 0.0)
            ),
            Err(Error::Domain(_))
        ));
    }
}
