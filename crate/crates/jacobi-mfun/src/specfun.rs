//! Complex-argument special-function kernel.
//!
//! Provides the Gamma function (Lanczos approximation with reflection),
//! the digamma function (upward recurrence into a Bernoulli asymptotic
//! expansion), Pochhammer symbols, and the Gauss hypergeometric series
//! `F(a,b;c;xi)` on `xi in (0,1)` together with its logarithmic Frobenius
//! companion. Everything downstream (solutions, boundary tables,
//! m-functions) is assembled from these five primitives.

use num_complex::Complex64;

use crate::{Error, Result};

/// Euler-Mascheroni constant, gamma_E = -psi(1).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Series cap shared by the hypergeometric summations.
const SERIES_MAX_TERMS: usize = 10_000;
/// Relative tail bound; three consecutive terms below it stop the sum.
const SERIES_TOL: f64 = 1e-15;

/// Returns `Some(n)` when `z` equals the non-positive integer `-n` exactly.
pub fn as_nonpositive_integer(z: Complex64) -> Option<u32> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re >= -(u32::MAX as f64) {
        Some((-z.re) as u32)
    } else {
        None
    }
}

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set). Relative
// accuracy is ~1e-15 on the half-plane Re z >= 1/2.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

fn lanczos_gamma(z: Complex64) -> Complex64 {
    // valid for Re z >= 0.5
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powc(zm1 + 0.5) * (-t).exp() * acc
}

/// Gamma function for complex argument.
///
/// Uses the Lanczos rational approximation for `Re z >= 1/2` and the
/// reflection formula `Gamma(z) Gamma(1-z) = pi / sin(pi z)` otherwise.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if as_nonpositive_integer(z).is_some() {
        return Err(Error::Pole(format!("gamma({z}) at non-positive integer")));
    }
    if z.re >= 0.5 {
        Ok(lanczos_gamma(z))
    } else {
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        Ok(pi / (s * lanczos_gamma(1.0 - z)))
    }
}

/// Reciprocal Gamma function; entire, returns 0 at the poles of Gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    if as_nonpositive_integer(z).is_some() {
        Complex64::new(0.0, 0.0)
    } else if z.re >= 0.5 {
        1.0 / lanczos_gamma(z)
    } else {
        let pi = std::f64::consts::PI;
        (pi * z).sin() * lanczos_gamma(1.0 - z) / pi
    }
}

// B_{2k}/(2k) for k = 1..7; coefficients of the digamma asymptotic tail
// psi(w) ~ ln w - 1/(2w) - sum_k A_k / w^{2k}.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma function psi(z) = Gamma'(z)/Gamma(z) for complex argument.
///
/// Reflects into `Re z >= 1/2`, shifts upward by the recurrence
/// `psi(z+1) = psi(z) + 1/z` until `Re z >= 10`, then applies the
/// Bernoulli asymptotic expansion.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if as_nonpositive_integer(z).is_some() {
        return Err(Error::Pole(format!("digamma({z}) at non-positive integer")));
    }
    let pi = std::f64::consts::PI;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    if w.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z)
        shift -= pi * (pi * z).cos() / (pi * z).sin();
        w = 1.0 - z;
    }
    while w.re < 10.0 {
        shift -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for &a in DIGAMMA_ASYMP.iter() {
        tail += a * p;
        p *= inv2;
    }
    Ok(shift + w.ln() - 0.5 / w - tail)
}

/// Pochhammer symbol `(zeta)_n` computed as a finite product.
///
/// The product form stays valid at Gamma poles, which is what terminating
/// hypergeometric series (Jacobi polynomials) rely on.
pub fn pochhammer(zeta: Complex64, n: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..n {
        acc *= zeta + k as f64;
    }
    acc
}

/// `[2 gamma_E + psi(a) + psi(b)] / (Gamma(a) Gamma(b))`, evaluated stably.
///
/// The combination is entire in `a` and `b`: at `a = -n` the simple pole of
/// `psi` cancels the zero of `1/Gamma`, with `psi(a)/Gamma(a) -> -(-1)^n n!`.
/// Boundary-value tables and connection formulas rely on this limit when the
/// spectral parameter sits on (or hits numerically) an eigenvalue lattice.
pub fn digamma_pair_rgamma(a: Complex64, b: Complex64) -> Result<Complex64> {
    fn psi_rg_limit(n: u32) -> f64 {
        // lim_{a -> -n} psi(a) / Gamma(a) = -(-1)^n n!
        let mut f = 1.0f64;
        for k in 1..=n {
            f *= k as f64;
        }
        if n % 2 == 0 {
            -f
        } else {
            f
        }
    }
    match (as_nonpositive_integer(a), as_nonpositive_integer(b)) {
        (Some(_), Some(_)) => Ok(Complex64::new(0.0, 0.0)),
        (Some(n), None) => Ok(rgamma(b) * psi_rg_limit(n)),
        (None, Some(m)) => Ok(rgamma(a) * psi_rg_limit(m)),
        (None, None) => {
            let s = 2.0 * EULER_GAMMA + digamma(a)? + digamma(b)?;
            Ok(s * rgamma(a) * rgamma(b))
        }
    }
}

fn check_series_args(c: Complex64, xi: f64) -> Result<()> {
    if as_nonpositive_integer(c).is_some() {
        return Err(Error::Pole(format!("hyp2f1: c = {c} is a non-positive integer")));
    }
    if !(0.0..1.0).contains(&xi) {
        return Err(Error::Domain(format!("hyp2f1: xi = {xi} outside [0,1)")));
    }
    Ok(())
}

/// Gauss hypergeometric function `F(a,b;c;xi)` by direct series, `xi in [0,1)`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, xi: f64) -> Result<Complex64> {
    hyp2f1_with_deriv(a, b, c, xi).map(|(f, _)| f)
}

/// `F(a,b;c;xi)` together with its xi-derivative, from a single pass over the
/// series. The derivative is needed for quasi-derivatives of solutions; it is
/// summed term-wise, never by differencing.
pub fn hyp2f1_with_deriv(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    xi: f64,
) -> Result<(Complex64, Complex64)> {
    check_series_args(c, xi)?;
    if xi == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), a * b / c));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut small_count = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        let next = term * (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * xi;
        dsum += next * (nf + 1.0) / xi;
        sum += next;
        term = next;
        if term.norm() <= SERIES_TOL * sum.norm().max(1e-300) {
            small_count += 1;
            if small_count >= 3 {
                return Ok((sum, dsum));
            }
        } else {
            small_count = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "hyp2f1 series did not meet the tail bound in {SERIES_MAX_TERMS} terms (xi = {xi})"
    )))
}

/// Logarithmic Frobenius companion at unit third parameter:
///
/// ```text
/// w(xi) = F(a,b;1;xi) ln(xi)
///       + sum_{n>=1} (a)_n (b)_n / (n!)^2 * xi^n
///         * [psi(a+n)-psi(a)+psi(b+n)-psi(b)-2 psi(n+1)-2 gamma_E]
/// ```
///
/// Returns `(w, dw/dxi)`. The digamma differences are accumulated as partial
/// fraction sums, so no digamma evaluation happens inside the loop.
pub fn hyp2f1_log(a: Complex64, b: Complex64, xi: f64) -> Result<(Complex64, Complex64)> {
    if !(0.0..1.0).contains(&xi) || xi == 0.0 {
        return Err(Error::Domain(format!("hyp2f1_log: xi = {xi} outside (0,1)")));
    }
    // A parameter at exactly 0 pins the series to its finite limit: the
    // (zeta)_n zero cancels the psi(zeta) pole, leaving
    // sum (other)_n / (n n!) xi^n. Negative integers have no finite limit
    // (they sit on the spectral lattice) and stay errors.
    match (as_nonpositive_integer(a), as_nonpositive_integer(b)) {
        (Some(0), Some(0)) => {
            return Ok((Complex64::new(xi.ln(), 0.0), Complex64::new(1.0 / xi, 0.0)));
        }
        (Some(0), None) => return hyp2f1_log_zero_limit(b, xi),
        (None, Some(0)) => return hyp2f1_log_zero_limit(a, xi),
        (Some(n), _) | (_, Some(n)) if n > 0 => {
            return Err(Error::Pole(format!(
                "hyp2f1_log: parameter -{n} hits a digamma pole"
            )));
        }
        _ => {}
    }
    let one = Complex64::new(1.0, 0.0);
    let (f, df) = hyp2f1_with_deriv(a, b, one, xi)?;
    let ln_xi = xi.ln();

    // g_n = p_n * bracket_n with p_n = (a)_n (b)_n / (n!)^2 and
    // bracket_n = sum_{k<n} [1/(a+k) + 1/(b+k)] - 2 H_n.
    let mut p = Complex64::new(1.0, 0.0);
    let mut bracket = Complex64::new(0.0, 0.0);
    let mut xi_pow = 1.0;
    let mut g_sum = Complex64::new(0.0, 0.0);
    let mut dg_sum = Complex64::new(0.0, 0.0);
    let mut small_count = 0;
    let mut converged = false;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        p *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0));
        bracket += 1.0 / (a + nf) + 1.0 / (b + nf) - 2.0 / (nf + 1.0);
        xi_pow *= xi;
        let term = p * bracket * xi_pow;
        g_sum += term;
        dg_sum += p * bracket * (nf + 1.0) * xi_pow / xi;
        let scale = (g_sum.norm() + (f * ln_xi).norm()).max(1e-300);
        if term.norm() <= 1e-14 * scale {
            small_count += 1;
            if small_count >= 3 {
                converged = true;
                break;
            }
        } else {
            small_count = 0;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "hyp2f1_log series did not meet the tail bound in {SERIES_MAX_TERMS} terms (xi = {xi})"
        )));
    }
    let w = f * ln_xi + g_sum;
    let dw = df * ln_xi + f / xi + dg_sum;
    Ok((w, dw))
}

/// Limit of the logarithmic series when one parameter vanishes:
/// `w = ln(xi) + sum_{n>=1} (a)_n / (n n!) xi^n` (the vanishing Pochhammer
/// cancels the digamma pole term by term).
fn hyp2f1_log_zero_limit(a: Complex64, xi: f64) -> Result<(Complex64, Complex64)> {
    let mut p = Complex64::new(1.0, 0.0);
    let mut g_sum = Complex64::new(0.0, 0.0);
    let mut dg_sum = Complex64::new(0.0, 0.0);
    let mut xi_pow = 1.0;
    let mut small_count = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        p *= (a + nf) / (nf + 1.0);
        xi_pow *= xi;
        let term = p * xi_pow / (nf + 1.0);
        g_sum += term;
        dg_sum += p * xi_pow / xi;
        if term.norm() <= 1e-14 * g_sum.norm().max(1.0) {
            small_count += 1;
            if small_count >= 3 {
                return Ok((
                    g_sum + xi.ln(),
                    dg_sum + 1.0 / xi,
                ));
            }
        } else {
            small_count = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "hyp2f1_log zero-parameter limit did not converge (xi = {xi})"
    )))
}
