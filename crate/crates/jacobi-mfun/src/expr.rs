//! The Jacobi differential expression: coefficients, endpoint
//! classification, the spectral-parameter square root sigma, and
//! quasi-derivative/Wronskian bookkeeping.

use num_complex::Complex64;

use crate::{Error, Result};

/// Exponent pair `(alpha, beta)` of the Jacobi expression on `(-1,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

/// Endpoint classification. Regular endpoints are quasi-regular, i.e. they
/// belong to the limit-circle regime for the purpose of boundary conditions;
/// the three tags are mutually exclusive per endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointClass {
    Regular,
    LimitCircle,
    LimitPoint,
}

impl EndpointClass {
    /// Regular and limit-circle endpoints both carry boundary values.
    pub fn has_boundary_values(self) -> bool {
        !matches!(self, EndpointClass::LimitPoint)
    }
}

/// Value and quasi-derivative `y^{[1]} = p y'` of a solution at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionValue {
    pub y: Complex64,
    pub y_quasi: Complex64,
}

impl SolutionValue {
    pub fn new(y: Complex64, y_quasi: Complex64) -> Self {
        Self { y, y_quasi }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.y.conj(), self.y_quasi.conj())
    }
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// Coefficient triple `(p, q, r)` at `x`:
    /// `p = (1-x)^{a+1} (1+x)^{b+1}`, `q = 0`, `r = (1-x)^a (1+x)^b`.
    pub fn coefficients(&self, x: f64) -> Result<(f64, f64, f64)> {
        if !(-1.0..1.0).contains(&x) || x == -1.0 {
            return Err(Error::Domain(format!("x = {x} outside (-1,1)")));
        }
        let p = (1.0 - x).powf(self.alpha + 1.0) * (1.0 + x).powf(self.beta + 1.0);
        let r = (1.0 - x).powf(self.alpha) * (1.0 + x).powf(self.beta);
        Ok((p, 0.0, r))
    }

    /// Endpoint classification table. At `-1` the class is decided by `beta`
    /// (regular iff beta in (-1,0), limit circle iff beta in [0,1), limit
    /// point otherwise); at `+1` by `alpha`, mirrored.
    pub fn classify_endpoint(&self, endpoint: i8) -> EndpointClass {
        let e = if endpoint < 0 { self.beta } else { self.alpha };
        if e > -1.0 && e < 0.0 {
            EndpointClass::Regular
        } else if (0.0..1.0).contains(&e) {
            EndpointClass::LimitCircle
        } else {
            EndpointClass::LimitPoint
        }
    }

    /// Deficiency indices n_+ = n_-: the number of endpoints carrying
    /// boundary values (limit-circle or regular).
    pub fn deficiency_index(&self) -> u8 {
        let mut n = 0;
        for ep in [-1i8, 1] {
            if self.classify_endpoint(ep).has_boundary_values() {
                n += 1;
            }
        }
        n
    }

    /// `sigma_{a,b}(z) = [(1+a+b)^2 + 4z]^{1/2}`, principal branch.
    ///
    /// Every downstream formula pairs `+sigma` with `-sigma` symmetrically,
    /// so the branch choice is observationally irrelevant (and tested).
    pub fn sigma(&self, z: Complex64) -> Complex64 {
        let s = 1.0 + self.alpha + self.beta;
        (Complex64::new(s * s, 0.0) + 4.0 * z).sqrt()
    }

    /// The three shifted sigmas of the parameter-reflection identities:
    /// `sigma_{a,-b}(z+(1+a)b)`, `sigma_{-a,b}(z+(1+b)a)`,
    /// `sigma_{-a,-b}(z+a+b)`. Each equals `sigma_{a,b}(z)` up to the branch
    /// sign.
    pub fn sigma_shift_identity(&self, z: Complex64) -> [Complex64; 3] {
        let (a, b) = (self.alpha, self.beta);
        [
            JacobiParams::new(a, -b).sigma(z + (1.0 + a) * b),
            JacobiParams::new(-a, b).sigma(z + (1.0 + b) * a),
            JacobiParams::new(-a, -b).sigma(z + a + b),
        ]
    }
}

/// Wronskian `W(f,g) = f g^{[1]} - f^{[1]} g` from two solution values.
pub fn wronskian(f: &SolutionValue, g: &SolutionValue) -> Complex64 {
    f.y * g.y_quasi - f.y_quasi * g.y
}
