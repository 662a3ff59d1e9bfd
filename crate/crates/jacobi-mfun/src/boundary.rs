//! Connection formulas between the two endpoint hypergeometric systems,
//! closed-form generalized boundary values of the `-1`-seeded solutions at
//! both endpoints, numeric boundary-value extraction, and the phi/theta
//! system normalized at `-1`.
//!
//! Conventions: the connection matrix `C` acts on the w-level pairs
//! `(w1, w2)` of each endpoint, where `w1 = y1`, `w2 = 2^{beta} y2` at `-1`
//! (resp. `2^{alpha} y2` at `+1`) and `w2` is the logarithmic solution itself
//! when the local exponent vanishes. Four parameter cases are covered:
//!
//! * I:   `alpha` non-integer, `beta in (-1,1) \ {0}`;
//! * II:  `alpha = 0`, `beta` non-integer (log pair at `+1`);
//! * III: `beta = 0`, `alpha` non-integer (log pair at `-1`);
//! * IV:  `alpha = beta = 0` (log pairs at both ends; the map is an
//!   involution).
//!
//! Nonzero integer exponents produce poles in the would-be coefficients and
//! are rejected, not regularized.

use num_complex::Complex64;

use crate::expr::{JacobiParams, SolutionValue};
use crate::linalg::{lstsq_complex, Mat2};
use crate::solutions::{self, SolutionId};
use crate::specfun::{self, EULER_GAMMA};
use crate::{Error, Result};

/// Which Appendix case produced a connection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionCase {
    I,
    II,
    III,
    IV,
}

/// Connection matrix `C` with `(w_{1,0}, w_{2,0})^T = C (w_{1,1}, w_{2,1})^T`
/// (subscript 0: expansion at `xi = 0`, i.e. `x = -1`; subscript 1: at
/// `xi = 1`, i.e. `x = +1`; log variants take the slot of `w_2` where they
/// apply).
#[derive(Debug, Clone, Copy)]
pub struct ConnectionMatrix {
    pub case_tag: ConnectionCase,
    pub c: Mat2,
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Hypergeometric parameters of the Jacobi equation: `a`, `b`, `c` with
/// `a + b = 1 + alpha + beta`, `c = 1 + beta`.
fn abc(params: &JacobiParams, z: Complex64) -> (Complex64, Complex64, Complex64) {
    let sigma = params.sigma(z);
    let s = cx(1.0 + params.alpha + params.beta);
    ((s + sigma) / 2.0, (s - sigma) / 2.0, cx(1.0 + params.beta))
}

/// Builds the connection matrix for the parameter case selected by
/// `(alpha, beta)`.
pub fn connection_matrix(params: &JacobiParams, z: Complex64) -> Result<ConnectionMatrix> {
    let (alpha, beta) = (params.alpha, params.beta);
    let alpha_int = alpha.fract() == 0.0;
    let beta_int = beta.fract() == 0.0;
    let (a, b, c) = abc(params, z);
    let g = specfun::gamma;
    let rg = specfun::rgamma;
    let dpr = specfun::digamma_pair_rgamma;

    if alpha == 0.0 && beta == 0.0 {
        // involution built from sin(pi a) and psi sums; a + b = 1
        let pi = std::f64::consts::PI;
        let s = (pi * a).sin() / pi;
        let big_s = specfun::digamma(a)? + specfun::digamma(b)? + 2.0 * EULER_GAMMA;
        let sin2 = (pi * a).sin() * (pi * a).sin();
        let m = Mat2([
            [-s * big_s, -s],
            [s * (big_s * big_s - pi * pi / sin2), s * big_s],
        ]);
        return Ok(ConnectionMatrix { case_tag: ConnectionCase::IV, c: m });
    }
    if alpha == 0.0 && !beta_int {
        // forward map (w_{1,1}, w_{2,1}^log) in terms of (w_{1,0}, w_{2,0}),
        // inverted numerically; here a + b = c
        let a2 = g(cx(1.0) - c)? * rg(cx(1.0) - a) * rg(cx(1.0) - b);
        let b2 = g(c - 1.0)? * rg(a) * rg(b);
        let c2 = -g(cx(1.0) - c)? * dpr(cx(1.0) - a, cx(1.0) - b)?;
        let d2 = -g(c - 1.0)? * dpr(a, b)?;
        let m = Mat2([[a2, b2], [c2, d2]]);
        let inv = m.inverse().map_err(|_| {
            Error::Pole(format!("connection matrix degenerates at z = {z} (case II)"))
        })?;
        return Ok(ConnectionMatrix { case_tag: ConnectionCase::II, c: inv });
    }
    if beta == 0.0 && !alpha_int {
        // direct map with the log pair at -1; here c = 1
        let c11 = g(cx(1.0) - a - b)? * rg(cx(1.0) - a) * rg(cx(1.0) - b);
        let c12 = g(a + b - 1.0)? * rg(a) * rg(b);
        let c21 = -g(cx(1.0) - a - b)? * dpr(cx(1.0) - a, cx(1.0) - b)?;
        let c22 = -g(a + b - 1.0)? * dpr(a, b)?;
        let m = Mat2([[c11, c12], [c21, c22]]);
        return Ok(ConnectionMatrix { case_tag: ConnectionCase::III, c: m });
    }
    if !alpha_int && beta > -1.0 && beta < 1.0 && beta != 0.0 {
        let c11 = g(c)? * g(c - a - b)? * rg(c - a) * rg(c - b);
        let c12 = g(c)? * g(a + b - c)? * rg(a) * rg(b);
        let c21 = g(cx(2.0) - c)? * g(c - a - b)? * rg(cx(1.0) - a) * rg(cx(1.0) - b);
        let c22 = g(cx(2.0) - c)? * g(a + b - c)? * rg(a - c + 1.0) * rg(b - c + 1.0);
        let m = Mat2([[c11, c12], [c21, c22]]);
        return Ok(ConnectionMatrix { case_tag: ConnectionCase::I, c: m });
    }
    if alpha_int && alpha != 0.0 {
        return Err(Error::Degenerate(format!(
            "a+b-c = alpha = {alpha} is a nonzero integer; connection coefficients have poles"
        )));
    }
    Err(Error::Param(format!(
        "no connection case covers alpha = {alpha}, beta = {beta}"
    )))
}

/// Generalized boundary values `(g~, g~')` of one solution at one endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionBv {
    pub value: Complex64,
    pub deriv: Complex64,
}

/// Boundary values of the `-1`-seeded fundamental pair at one endpoint.
/// `y2` refers to the logarithmic variant when the relevant exponent is 0.
#[derive(Debug, Clone, Copy)]
pub struct EndpointBvTable {
    pub y1: SolutionBv,
    pub y2: SolutionBv,
}

/// The four generalized boundary values of a function in the maximal domain.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryData {
    pub g_m1: Complex64,
    pub gp_m1: Complex64,
    pub g_p1: Complex64,
    pub gp_p1: Complex64,
}

impl BoundaryData {
    pub fn conj(&self) -> Self {
        Self {
            g_m1: self.g_m1.conj(),
            gp_m1: self.gp_m1.conj(),
            g_p1: self.g_p1.conj(),
            gp_p1: self.gp_p1.conj(),
        }
    }

    /// Endpoint Wronskian through the boundary-value identity
    /// `W(f,g)(e) = f~ g~' - f~' g~`.
    pub fn wronskian_with(&self, other: &BoundaryData, endpoint: i8) -> Complex64 {
        if endpoint < 0 {
            self.g_m1 * other.gp_m1 - self.gp_m1 * other.g_m1
        } else {
            self.g_p1 * other.gp_p1 - self.gp_p1 * other.g_p1
        }
    }
}

/// Boundary values of `y_{1/2,alpha,beta,-1}` at `x = -1`; constants in `z`.
pub fn bv_table_minus1(params: &JacobiParams, _z: Complex64) -> Result<EndpointBvTable> {
    let (alpha, beta) = (params.alpha, params.beta);
    if !(-1.0 < beta && beta < 1.0) {
        return Err(Error::Param(format!("bv_table_minus1 needs beta in (-1,1), got {beta}")));
    }
    let zero = cx(0.0);
    let one = cx(1.0);
    let pow = cx(2.0f64.powf(alpha + 1.0));
    let table = if beta < 0.0 {
        EndpointBvTable {
            y1: SolutionBv { value: one, deriv: zero },
            y2: SolutionBv { value: zero, deriv: -beta * pow },
        }
    } else if beta == 0.0 {
        EndpointBvTable {
            y1: SolutionBv { value: zero, deriv: one },
            y2: SolutionBv { value: -pow, deriv: zero },
        }
    } else {
        EndpointBvTable {
            y1: SolutionBv { value: zero, deriv: one },
            y2: SolutionBv { value: beta * pow, deriv: zero },
        }
    };
    Ok(table)
}

/// Boundary values of `y_{1/2,alpha,beta,-1}` at `x = +1`, from the
/// Gamma/digamma closed forms; requires both parameters in `(-1,1)`.
pub fn bv_table_plus1(params: &JacobiParams, z: Complex64) -> Result<EndpointBvTable> {
    let (alpha, beta) = (params.alpha, params.beta);
    if !(-1.0 < alpha && alpha < 1.0) || !(-1.0 < beta && beta < 1.0) {
        return Err(Error::Param(format!(
            "bv_table_plus1 needs alpha, beta in (-1,1), got ({alpha}, {beta})"
        )));
    }
    let sigma = params.sigma(z);
    let g = specfun::gamma;
    let rg = specfun::rgamma;
    let dpr = specfun::digamma_pair_rgamma;
    let ap = |mu: f64, nu: f64, s: Complex64| (cx(1.0 + mu + nu) + s) / 2.0;

    let y1_value = if alpha < 0.0 {
        g(cx(1.0 + beta))? * g(cx(-alpha))?
            * rg(ap(-alpha, beta, sigma))
            * rg(ap(-alpha, beta, -sigma))
    } else {
        -cx(2.0f64.powf(1.0 + alpha + beta)) * g(cx(1.0 + alpha))? * g(cx(1.0 + beta))?
            * rg(ap(alpha, beta, sigma))
            * rg(ap(alpha, beta, -sigma))
    };
    let y1_deriv = if alpha < 0.0 {
        cx(2.0f64.powf(1.0 + alpha + beta)) * g(cx(1.0 + alpha))? * g(cx(1.0 + beta))?
            * rg(ap(alpha, beta, sigma))
            * rg(ap(alpha, beta, -sigma))
    } else if alpha == 0.0 {
        -g(cx(1.0 + beta))? * dpr(ap(0.0, beta, sigma), ap(0.0, beta, -sigma))?
    } else {
        g(cx(1.0 + beta))? * g(cx(-alpha))?
            * rg(ap(-alpha, beta, sigma))
            * rg(ap(-alpha, beta, -sigma))
    };

    let (y2_value, y2_deriv) = if beta != 0.0 {
        let v = if alpha < 0.0 {
            cx(2.0f64.powf(-beta)) * g(cx(1.0 - beta))? * g(cx(-alpha))?
                * rg(ap(-alpha, -beta, sigma))
                * rg(ap(-alpha, -beta, -sigma))
        } else {
            -cx(2.0f64.powf(alpha + 1.0)) * g(cx(1.0 + alpha))? * g(cx(1.0 - beta))?
                * rg(ap(alpha, -beta, sigma))
                * rg(ap(alpha, -beta, -sigma))
        };
        let d = if alpha < 0.0 {
            cx(2.0f64.powf(alpha + 1.0)) * g(cx(1.0 + alpha))? * g(cx(1.0 - beta))?
                * rg(ap(alpha, -beta, sigma))
                * rg(ap(alpha, -beta, -sigma))
        } else if alpha == 0.0 {
            -cx(2.0f64.powf(-beta)) * g(cx(1.0 - beta))?
                * dpr(ap(0.0, -beta, sigma), ap(0.0, -beta, -sigma))?
        } else {
            cx(2.0f64.powf(-beta)) * g(cx(1.0 - beta))? * g(cx(-alpha))?
                * rg(ap(-alpha, -beta, sigma))
                * rg(ap(-alpha, -beta, -sigma))
        };
        (v, d)
    } else {
        // beta = 0: boundary values of the logarithmic second solution
        let v = if alpha < 0.0 {
            -g(cx(-alpha))? * dpr(ap(-alpha, 0.0, sigma), ap(-alpha, 0.0, -sigma))?
        } else {
            cx(2.0f64.powf(alpha + 1.0)) * g(cx(1.0 + alpha))?
                * dpr(ap(alpha, 0.0, sigma), ap(alpha, 0.0, -sigma))?
        };
        let d = if alpha < 0.0 {
            -cx(2.0f64.powf(alpha + 1.0)) * g(cx(1.0 + alpha))?
                * dpr(ap(alpha, 0.0, sigma), ap(alpha, 0.0, -sigma))?
        } else if alpha == 0.0 {
            // removable 0*inf structure appears only on the real eigenvalue
            // lattice; off the real axis the direct form is stable
            let ha = (cx(1.0) + sigma) / 2.0;
            let hb = (cx(1.0) - sigma) / 2.0;
            -g(ha)? * g(hb)?
                + (cx(2.0 * EULER_GAMMA) + specfun::digamma(ha)? + specfun::digamma(hb)?)
                    .powi(2)
                    * rg(ha)
                    * rg(hb)
        } else {
            -g(cx(-alpha))? * dpr(ap(-alpha, 0.0, sigma), ap(-alpha, 0.0, -sigma))?
        };
        (v, d)
    };

    Ok(EndpointBvTable {
        y1: SolutionBv { value: y1_value, deriv: y1_deriv },
        y2: SolutionBv { value: y2_value, deriv: y2_deriv },
    })
}

// ---------------------------------------------------------------------------
// numeric boundary-value extraction
// ---------------------------------------------------------------------------

const BV_MESH_KMIN: i32 = 6;
const BV_MESH_KMAX: i32 = 20;

#[derive(Clone, Copy)]
enum BasisFn {
    One,
    Power(f64),
    /// ln(eps/2)
    Log,
    /// eps^e * ln(eps/2)
    PowerLog(f64),
}

impl BasisFn {
    fn eval(&self, eps: f64) -> f64 {
        match *self {
            BasisFn::One => 1.0,
            BasisFn::Power(e) => eps.powf(e),
            BasisFn::Log => (eps / 2.0).ln(),
            BasisFn::PowerLog(e) => eps.powf(e) * (eps / 2.0).ln(),
        }
    }
}

fn fit_on_mesh<F>(
    basis: &[BasisFn],
    samples: F,
) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in BV_MESH_KMIN..=BV_MESH_KMAX {
        let eps = 0.5f64.powi(k);
        a.push(basis.iter().map(|f| f.eval(eps)).collect());
        b.push(samples(eps)?);
    }
    lstsq_complex(&a, &b)
}

/// Numerically extracts the generalized boundary values of `g` at one
/// endpoint by least-squares extrapolation on the geometric mesh
/// `1 - |x| = 2^{-k}`, `k = 6..20`, using the case-split limit formulas and
/// the exponent ladder the endpoint's Frobenius structure dictates.
///
/// `g` must behave near the endpoint like an element of the maximal domain,
/// i.e. a combination of the endpoint's fundamental pair.
pub fn generalized_bv_at<F>(
    params: &JacobiParams,
    endpoint: i8,
    g: F,
) -> Result<(Complex64, Complex64)>
where
    F: Fn(f64) -> Result<SolutionValue>,
{
    let e = if endpoint < 0 { params.beta } else { params.alpha };
    let other = if endpoint < 0 { params.alpha } else { params.beta };
    if !(-1.0 < e && e < 1.0) {
        return Err(Error::Param(format!(
            "endpoint {endpoint} is limit point (exponent {e}); no boundary values"
        )));
    }
    let x_of = |eps: f64| if endpoint < 0 { -1.0 + eps } else { 1.0 - eps };

    if e < 0.0 {
        // regular endpoint: plain limits of g and g^{[1]}
        let basis = [
            BasisFn::One,
            BasisFn::Power(-e),
            BasisFn::Power(1.0),
            BasisFn::Power(1.0 - e),
            BasisFn::Power(2.0),
            BasisFn::Power(2.0 - e),
            BasisFn::Power(3.0),
        ];
        let coef = fit_on_mesh(&basis, |eps| g(x_of(eps)).map(|v| v.y))?;
        let value = coef[0];
        let basis_q = [
            BasisFn::One,
            BasisFn::Power(1.0 + e),
            BasisFn::Power(1.0),
            BasisFn::Power(2.0 + e),
            BasisFn::Power(2.0),
            BasisFn::Power(3.0),
        ];
        let coef_q = fit_on_mesh(&basis_q, |eps| g(x_of(eps)).map(|v| v.y_quasi))?;
        Ok((value, coef_q[0]))
    } else if e == 0.0 {
        let basis = [
            BasisFn::Log,
            BasisFn::One,
            BasisFn::PowerLog(1.0),
            BasisFn::Power(1.0),
            BasisFn::PowerLog(2.0),
            BasisFn::Power(2.0),
            BasisFn::PowerLog(3.0),
            BasisFn::Power(3.0),
        ];
        let coef = fit_on_mesh(&basis, |eps| g(x_of(eps)).map(|v| v.y))?;
        let scale = 2.0f64.powf(other + 1.0);
        let value = if endpoint < 0 { -scale * coef[0] } else { scale * coef[0] };
        Ok((value, coef[1]))
    } else {
        let basis = [
            BasisFn::Power(-e),
            BasisFn::One,
            BasisFn::Power(1.0 - e),
            BasisFn::Power(1.0),
            BasisFn::Power(2.0 - e),
            BasisFn::Power(2.0),
            BasisFn::Power(3.0 - e),
            BasisFn::Power(3.0),
        ];
        let coef = fit_on_mesh(&basis, |eps| g(x_of(eps)).map(|v| v.y))?;
        let scale = 2.0f64.powf(other + 1.0);
        let value = if endpoint < 0 {
            e * scale * coef[0]
        } else {
            -e * scale * coef[0]
        };
        Ok((value, coef[1]))
    }
}

/// All four generalized boundary values; both endpoints must carry them.
pub fn generalized_bv<F>(params: &JacobiParams, g: F) -> Result<BoundaryData>
where
    F: Fn(f64) -> Result<SolutionValue>,
{
    let (gm, gpm) = generalized_bv_at(params, -1, &g)?;
    let (gp, gpp) = generalized_bv_at(params, 1, &g)?;
    Ok(BoundaryData { g_m1: gm, gp_m1: gpm, g_p1: gp, gp_p1: gpp })
}

// ---------------------------------------------------------------------------
// the phi/theta system normalized at -1
// ---------------------------------------------------------------------------

/// Coefficients expressing `phi` and `theta` in the `-1` fundamental pair:
/// `phi = phi_coef * y_phi`, `theta = theta_coef * y_theta`.
pub(crate) fn phi_theta_composition(
    params: &JacobiParams,
) -> Result<((Complex64, SolutionId), (Complex64, SolutionId))> {
    let (alpha, beta) = (params.alpha, params.beta);
    if !(-1.0 < beta && beta < 1.0) {
        return Err(Error::Param(format!("phi/theta need beta in (-1,1), got {beta}")));
    }
    let scale = 2.0f64.powf(-alpha - 1.0);
    if beta < 0.0 {
        Ok((
            (cx(-scale / beta), SolutionId::y2(-1)),
            (cx(1.0), SolutionId::y1(-1)),
        ))
    } else if beta == 0.0 {
        Ok((
            (cx(1.0), SolutionId::y1(-1)),
            (cx(-scale), SolutionId::y2_log(-1)),
        ))
    } else {
        Ok((
            (cx(1.0), SolutionId::y1(-1)),
            (cx(scale / beta), SolutionId::y2(-1)),
        ))
    }
}

/// The solutions `phi(z,x)`, `theta(z,x)` with boundary data
/// `(phi~, phi~') = (0,1)` and `(theta~, theta~') = (1,0)` at `-1`.
pub fn phi_theta(
    params: &JacobiParams,
    z: Complex64,
    x: f64,
) -> Result<(SolutionValue, SolutionValue)> {
    let ((cp, idp), (ct, idt)) = phi_theta_composition(params)?;
    let vp = solutions::eval_solution(idp, params, z, x)?;
    let vt = solutions::eval_solution(idt, params, z, x)?;
    Ok((
        SolutionValue::new(cp * vp.y, cp * vp.y_quasi),
        SolutionValue::new(ct * vt.y, ct * vt.y_quasi),
    ))
}

/// Boundary values of `phi` and `theta` at `+1` (needs `alpha in (-1,1)`).
pub fn phi_theta_bv_plus1(
    params: &JacobiParams,
    z: Complex64,
) -> Result<(SolutionBv, SolutionBv)> {
    let table = bv_table_plus1(params, z)?;
    let ((cp, idp), (ct, idt)) = phi_theta_composition(params)?;
    let pick = |id: SolutionId| if id.index == 1 { table.y1 } else { table.y2 };
    let bp = pick(idp);
    let bt = pick(idt);
    Ok((
        SolutionBv { value: cp * bp.value, deriv: cp * bp.deriv },
        SolutionBv { value: ct * bt.value, deriv: ct * bt.deriv },
    ))
}
