//! Independent verification engines.
//!
//! Nothing here reuses the closed forms it is meant to check: transport is an
//! embedded Dormand-Prince 5(4) integration of the first-order quasi-derivative
//! system, inner products are Gauss-Jacobi quadratures with nodes and weights
//! from a symmetric tridiagonal QL eigen-solve, Weyl m-values are extracted
//! from the recessive direction of transported solutions, and spectra are
//! located by scan-plus-bisection on the reciprocal of a pole-carrying
//! function.

use num_complex::Complex64;

use crate::boundary;
use crate::expr::{JacobiParams, SolutionValue};
use crate::linalg::lstsq_complex;
use crate::{Error, Result};

/// Options for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct IvpOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Cap on |h|; 0 disables the cap.
    pub max_step: f64,
}

impl Default for IvpOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-13, max_step: 0.0 }
    }
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type State = [Complex64; 2];

fn rhs(params: &JacobiParams, z: Complex64, x: f64, s: &State) -> Result<State> {
    let (p, _, r) = params.coefficients(x)?;
    Ok([s[1] / p, -z * r * s[0]])
}

/// Transports `(y, y^{[1]})` from `x0` to `x1` through the first-order system
/// `y' = y^{[1]}/p`, `(y^{[1]})' = -z r y`, with embedded 5(4) error control.
pub fn integrate_ivp_opts(
    params: &JacobiParams,
    z: Complex64,
    x0: f64,
    init: SolutionValue,
    x1: f64,
    opts: IvpOptions,
) -> Result<SolutionValue> {
    for x in [x0, x1] {
        if !(-1.0 < x && x < 1.0) {
            return Err(Error::Domain(format!("integration endpoint {x} outside (-1,1)")));
        }
    }
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(init);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y: State = [init.y, init.y_quasi];
    let mut h = (span.abs() / 100.0).min(1e-3) * dir;
    if opts.max_step > 0.0 && h.abs() > opts.max_step {
        h = opts.max_step * dir;
    }
    let h_min = span.abs() * 1e-15;
    let mut k: [State; 7] = [[Complex64::new(0.0, 0.0); 2]; 7];
    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::StepFailure(format!("step budget exhausted near x = {x}")));
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        if h.abs() < h_min {
            return Err(Error::StepFailure(format!("step size collapsed near x = {x}")));
        }
        let mut stage_failed = false;
        k[0] = rhs(params, z, x, &y)?;
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = DP_A[stage][j] * h;
                ys[0] += a * kj[0];
                ys[1] += a * kj[1];
            }
            match rhs(params, z, x + DP_C[stage] * h, &ys) {
                Ok(v) => k[stage] = v,
                Err(_) => {
                    // stage point left the interval; retry with smaller h
                    stage_failed = true;
                    break;
                }
            }
        }
        if stage_failed {
            h *= 0.5;
            continue;
        }
        let mut y5: State = y;
        let mut y4: State = y;
        for j in 0..7 {
            y5[0] += h * DP_B5[j] * k[j][0];
            y5[1] += h * DP_B5[j] * k[j][1];
            y4[0] += h * DP_B4[j] * k[j][0];
            y4[1] += h * DP_B4[j] * k[j][1];
        }
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = opts.atol + opts.rtol * y[i].norm().max(y5[i].norm());
            err = err.max((y5[i] - y4[i]).norm() / scale);
        }
        if err <= 1.0 {
            x += h;
            y = y5;
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h *= factor.clamp(0.2, 5.0);
        if opts.max_step > 0.0 && h.abs() > opts.max_step {
            h = opts.max_step * dir;
        }
    }
    Ok(SolutionValue::new(y[0], y[1]))
}

/// [`integrate_ivp_opts`] with the default tolerances (rtol 1e-11).
pub fn integrate_ivp(
    params: &JacobiParams,
    z: Complex64,
    x0: f64,
    init: SolutionValue,
    x1: f64,
) -> Result<SolutionValue> {
    integrate_ivp_opts(params, z, x0, init, x1, IvpOptions::default())
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi quadrature
// ---------------------------------------------------------------------------

/// Gauss-Jacobi rule on (-1,1) with weight `(1-x)^alpha (1+x)^beta`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Symmetric tridiagonal QL with implicit shifts, accumulating only the first
/// row of the eigenvector matrix (all that Golub-Welsch weights require).
fn tridiag_ql(d: &mut [f64], e: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence("tridiagonal QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

impl GaussJacobi {
    /// Builds an `n`-point rule by Golub-Welsch on the monic Jacobi
    /// recurrence. Requires `alpha, beta > -1`.
    pub fn new(params: &JacobiParams, n: usize) -> Result<Self> {
        let (alpha, beta) = (params.alpha, params.beta);
        if alpha <= -1.0 || beta <= -1.0 {
            return Err(Error::Param(format!(
                "Gauss-Jacobi weight needs alpha, beta > -1, got ({alpha}, {beta})"
            )));
        }
        if n < 2 {
            return Err(Error::Param("need at least 2 quadrature nodes".into()));
        }
        let ab = alpha + beta;
        let mut d = vec![0.0f64; n];
        let mut e = vec![0.0f64; n];
        d[0] = (beta - alpha) / (ab + 2.0);
        for k in 1..n {
            let kf = k as f64;
            let denom = 2.0 * kf + ab;
            d[k] = (beta * beta - alpha * alpha) / (denom * (denom + 2.0));
            let b2 = if k == 1 {
                // the generic formula is 0/0 at alpha + beta = -1
                4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
            } else {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (denom * denom * (denom + 1.0) * (denom - 1.0))
            };
            e[k - 1] = b2.sqrt();
        }
        let mut first = vec![0.0f64; n];
        first[0] = 1.0;
        tridiag_ql(&mut d, &mut e, &mut first)?;

        // total mass 2^{a+b+1} B(a+1, b+1)
        let g = |x: f64| crate::specfun::gamma(Complex64::new(x, 0.0)).map(|v| v.re);
        let mu0 = 2.0f64.powf(ab + 1.0) * g(alpha + 1.0)? * g(beta + 1.0)? / g(ab + 2.0)?;

        let mut pairs: Vec<(f64, f64)> = d
            .iter()
            .zip(first.iter())
            .map(|(&x, &q)| (x, mu0 * q * q))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// Weighted inner product `(f, g) = int conj(f) g (1-x)^a (1+x)^b dx`.
    pub fn inner<F, G>(&self, mut f: F, mut g: G) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
        G: FnMut(f64) -> Result<Complex64>,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(self.weights.iter()) {
            acc += w * f(x)?.conj() * g(x)?;
        }
        Ok(acc)
    }
}

/// Convenience wrapper building a fresh rule for one inner product.
pub fn gauss_jacobi_inner<F, G>(
    params: &JacobiParams,
    f: F,
    g: G,
    n_nodes: usize,
) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
    G: FnMut(f64) -> Result<Complex64>,
{
    GaussJacobi::new(params, n_nodes)?.inner(f, g)
}

/// Values `P_0 .. P_n` at `x` by the three-term recurrence; stable at
/// degrees where the terminating sum cancels catastrophically.
pub fn jacobi_polys_upto(n: u32, params: &JacobiParams, x: f64) -> Vec<f64> {
    let (a, b) = (params.alpha, params.beta);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0);
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + a + b;
        let a1 = 2.0 * kf * (kf + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * c;
        let p = (a2 * out[k as usize - 1] - a3 * out[k as usize - 2]) / a1;
        out.push(p);
    }
    out
}

// ---------------------------------------------------------------------------
// endpoint-exact inner products of eigensolutions
// ---------------------------------------------------------------------------

/// Weighted inner product of two eigensolutions given by their coefficients
/// in the `-1` fundamental pair, `g = c_y1 y1(z,.) + c_y2 y2(z,.)`
/// (`alpha, beta` nonzero and non-integer in `(-1,1)`).
///
/// Direct Gauss-Jacobi quadrature converges slowly here: the integrand
/// carries endpoint exponents `(1 +/- x)^{+/- a, +/- b}` that the single
/// weight cannot match. Instead each half-interval is expanded in its own
/// endpoint basis and every cross term gets a quadrature rule with exactly
/// its exponent, so all smooth factors are analytic.
pub fn inner_product_quadrature(
    params: &JacobiParams,
    z1: Complex64,
    coef1: (Complex64, Complex64),
    z2: Complex64,
    coef2: (Complex64, Complex64),
    n_nodes: usize,
) -> Result<Complex64> {
    use crate::specfun::hyp2f1;
    let (alpha, beta) = (params.alpha, params.beta);
    if alpha == 0.0 || beta == 0.0 || alpha.fract() == 0.0 {
        return Err(Error::Param(
            "piecewise quadrature oracle needs nonzero, non-integer exponents".into(),
        ));
    }
    let ap = |mu: f64, nu: f64, s: Complex64| (Complex64::new(1.0 + mu + nu, 0.0) + s) / 2.0;

    // smooth hypergeometric parts at each endpoint
    let f_minus = |idx: u8, z: Complex64, x: f64| -> Result<Complex64> {
        let s = params.sigma(z);
        let xi = (1.0 + x) / 2.0;
        if idx == 1 {
            hyp2f1(ap(alpha, beta, s), ap(alpha, beta, -s), Complex64::new(1.0 + beta, 0.0), xi)
        } else {
            hyp2f1(ap(alpha, -beta, s), ap(alpha, -beta, -s), Complex64::new(1.0 - beta, 0.0), xi)
        }
    };
    let f_plus = |idx: u8, z: Complex64, x: f64| -> Result<Complex64> {
        let s = params.sigma(z);
        let xih = (1.0 - x) / 2.0;
        if idx == 1 {
            hyp2f1(ap(alpha, beta, s), ap(alpha, beta, -s), Complex64::new(1.0 + alpha, 0.0), xih)
        } else {
            hyp2f1(ap(-alpha, beta, s), ap(-alpha, beta, -s), Complex64::new(1.0 - alpha, 0.0), xih)
        }
    };

    // +1-side coefficients through the connection matrix:
    // u = c1 y1- + c2 y2- = [c1, c2 2^{-beta}] C (w11, W21)^T with
    // w11 = y1+, W21 = 2^{alpha} y2+
    let plus_coef = |z: Complex64, c: (Complex64, Complex64)| -> Result<(Complex64, Complex64)> {
        let conn = crate::boundary::connection_matrix(params, z)?;
        let wrow = [c.0, c.1 * 2.0f64.powf(-beta)];
        let e = wrow[0] * conn.c.0[0][0] + wrow[1] * conn.c.0[1][0];
        let f = (wrow[0] * conn.c.0[0][1] + wrow[1] * conn.c.0[1][1]) * 2.0f64.powf(alpha);
        Ok((e, f))
    };
    let pc1 = plus_coef(z1, coef1)?;
    let pc2 = plus_coef(z2, coef2)?;

    let mut total = Complex64::new(0.0, 0.0);

    // left half [-1, 0]: pieces (j,k) with weight exponent beta - (j==2) beta - (k==2) beta
    for j in [1u8, 2] {
        for k in [1u8, 2] {
            let cjk = (if j == 1 { coef1.0 } else { coef1.1 }).conj()
                * if k == 1 { coef2.0 } else { coef2.1 };
            if cjk.norm() == 0.0 {
                continue;
            }
            let w = beta
                - if j == 2 { beta } else { 0.0 }
                - if k == 2 { beta } else { 0.0 };
            let rule = GaussJacobi::new(&JacobiParams::new(0.0, w), n_nodes)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (&s, &wt) in rule.nodes.iter().zip(rule.weights.iter()) {
                let x = (s - 1.0) / 2.0;
                let smooth = f_minus(j, z1, x)?.conj()
                    * f_minus(k, z2, x)?
                    * (1.0 - x).powf(alpha);
                acc += wt * smooth;
            }
            total += cjk * acc * 2.0f64.powf(-w - 1.0);
        }
    }
    // right half [0, 1]: mirrored with the +1 basis and alpha exponents
    for j in [1u8, 2] {
        for k in [1u8, 2] {
            let cjk = (if j == 1 { pc1.0 } else { pc1.1 }).conj()
                * if k == 1 { pc2.0 } else { pc2.1 };
            if cjk.norm() == 0.0 {
                continue;
            }
            let w = alpha
                - if j == 2 { alpha } else { 0.0 }
                - if k == 2 { alpha } else { 0.0 };
            let rule = GaussJacobi::new(&JacobiParams::new(w, 0.0), n_nodes)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (&s, &wt) in rule.nodes.iter().zip(rule.weights.iter()) {
                let x = (s + 1.0) / 2.0;
                let smooth = f_plus(j, z1, x)?.conj()
                    * f_plus(k, z2, x)?
                    * (1.0 + x).powf(beta);
                acc += wt * smooth;
            }
            total += cjk * acc * 2.0f64.powf(-w - 1.0);
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// recessive-solution m extraction
// ---------------------------------------------------------------------------

/// Extracts the Weyl m-function at `z` (limit point at `+1`, boundary values
/// at `-1`) from the defining recessive property: transports the normalized
/// `theta` and `phi` from `x = -1/2` toward `+1` and extrapolates the ratio
/// `-theta/phi` over the cutoff ladder `1 - x = 2^{-k}`.
pub fn extract_m_recessive(params: &JacobiParams, z: Complex64) -> Result<Complex64> {
    let (alpha, beta) = (params.alpha, params.beta);
    if !(alpha <= -1.0 || alpha >= 1.0) || !(-1.0 < beta && beta < 1.0) {
        return Err(Error::Param(format!(
            "recessive extraction needs |alpha| >= 1 and beta in (-1,1), got ({alpha}, {beta})"
        )));
    }
    if z.im == 0.0 {
        return Err(Error::Domain("recessive extraction needs Im z != 0".into()));
    }
    let x_start = -0.5;
    let (phi0, theta0) = boundary::phi_theta(params, z, x_start)?;

    let k_min = 4;
    let k_max = 26;
    let mut phi = phi0;
    let mut theta = theta0;
    let mut x = x_start;
    let mut ratios = Vec::new();
    let mut eps_list = Vec::new();
    for k in k_min..=k_max {
        let x_next = 1.0 - 0.5f64.powi(k);
        phi = integrate_ivp(params, z, x, phi, x_next)?;
        theta = integrate_ivp(params, z, x, theta, x_next)?;
        x = x_next;
        if phi.y.norm() == 0.0 {
            continue;
        }
        ratios.push(-theta.y / phi.y);
        eps_list.push(0.5f64.powi(k));
    }
    if ratios.len() < 10 {
        return Err(Error::NonConvergence("too few usable cutoffs".into()));
    }
    // ratio error expands in powers eps^{|alpha| + j} (plus eps^{2|alpha|+j}
    // and logarithmic companions for integer alpha)
    let gap = alpha.abs();
    let mut exps = vec![gap, gap + 1.0, gap + 2.0, gap + 3.0, 2.0 * gap, 2.0 * gap + 1.0];
    exps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    exps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let with_logs = alpha.fract() == 0.0;
    let mut design = Vec::new();
    for &eps in &eps_list {
        let mut row = vec![1.0f64];
        for &e in &exps {
            row.push(eps.powf(e));
        }
        if with_logs {
            row.push(eps.powf(gap) * eps.ln());
            row.push(eps.powf(gap + 1.0) * eps.ln());
        }
        design.push(row);
    }
    let coef = lstsq_complex(&design, &ratios)?;
    Ok(coef[0])
}

// ---------------------------------------------------------------------------
// pole search
// ---------------------------------------------------------------------------

/// Locates real poles of `f` in `[lo, hi]` by scanning `1/f` for sign changes
/// and bisecting to its zeros. Sign changes where `1/f` stays large are jumps
/// across zeros of `f` and are discarded. Errors with `CountMismatch` when
/// the number found differs from `n_expected`.
pub fn find_poles<F>(f: F, window: (f64, f64), n_expected: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (lo, hi) = window;
    if hi <= lo {
        if n_expected == 0 {
            return Ok(Vec::new());
        }
        return Err(Error::CountMismatch { expected: n_expected, found: 0 });
    }
    let h = |x: f64| -> Option<f64> { f(x).ok().map(|v| (1.0 / v).re) };
    let n_scan = 4000usize;
    let dx = (hi - lo) / n_scan as f64;
    let mut poles: Vec<f64> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n_scan {
        let x = lo + dx * i as f64;
        let Some(hx) = h(x) else {
            // exact pole hit during the scan
            poles.push(x);
            prev = None;
            continue;
        };
        if let Some((xp, hp)) = prev {
            if hx != 0.0 && hp != 0.0 && hp.signum() != hx.signum() {
                let (mut a, mut b) = (xp, x);
                let mut ha = hp;
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    let Some(hm) = h(mid) else {
                        a = mid;
                        b = mid;
                        break;
                    };
                    if hm == 0.0 {
                        a = mid;
                        b = mid;
                        break;
                    }
                    if hm.signum() == ha.signum() {
                        a = mid;
                        ha = hm;
                    } else {
                        b = mid;
                    }
                    if (b - a).abs() <= 1e-13 * (1.0 + mid.abs()) {
                        break;
                    }
                }
                let root = 0.5 * (a + b);
                // classify: pole of f (h -> 0) vs zero of f (|h| stays large)
                match h(root).or_else(|| h(root + 1e-9)) {
                    None => poles.push(root),
                    Some(hr) if hr.abs() < 1e-4 * hp.abs().max(hx.abs()) => poles.push(root),
                    Some(_) => {}
                }
            } else if hx == 0.0 {
                poles.push(x);
            }
        }
        prev = Some((x, hx));
    }
    poles.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (1.0 + a.abs()));
    if poles.len() != n_expected {
        return Err(Error::CountMismatch { expected: n_expected, found: poles.len() });
    }
    Ok(poles)
}
