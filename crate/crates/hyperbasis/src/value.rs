use num_complex::Complex64;
use serde::Serialize;

/// Complex result with an optional absolute error estimate.
///
/// Every public evaluator returns this type so callers can propagate
/// accuracy information through composite computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    /// Estimated absolute error, when the algorithm can bound it.
    pub err: Option<f64>,
}

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im, err: None }
    }

    pub fn with_err(re: f64, im: f64, err: f64) -> Self {
        ComplexValue {
            re,
            im,
            err: Some(err),
        }
    }

    pub fn from_c(z: Complex64) -> Self {
        ComplexValue {
            re: z.re,
            im: z.im,
            err: None,
        }
    }

    pub fn from_c_err(z: Complex64, err: f64) -> Self {
        ComplexValue {
            re: z.re,
            im: z.im,
            err: Some(err),
        }
    }

    pub fn c(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.c().norm()
    }
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue::from_c(z)
    }
}

impl From<f64> for ComplexValue {
    fn from(x: f64) -> Self {
        ComplexValue::new(x, 0.0)
    }
}

/// Complex number stored as `val * exp(log_scale)`.
///
/// Used wherever exp(pi*rho/2)-type factors would overflow f64: the two
/// factors of a product carry opposite scales that cancel analytically.
#[derive(Debug, Clone, Copy)]
pub struct ScaledComplex {
    pub val: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn new(val: Complex64, log_scale: f64) -> Self {
        ScaledComplex { val, log_scale }
    }

    pub fn from_c(val: Complex64) -> Self {
        ScaledComplex {
            val,
            log_scale: 0.0,
        }
    }

    /// Collapse to a plain complex number; may overflow or underflow
    /// when `log_scale` is extreme.
    pub fn resolve(&self) -> Complex64 {
        self.val * Complex64::new(self.log_scale.exp(), 0.0)
    }

    pub fn mul(&self, other: &ScaledComplex) -> ScaledComplex {
        ScaledComplex {
            val: self.val * other.val,
            log_scale: self.log_scale + other.log_scale,
        }
    }

    /// Renormalize so |val| is O(1), pushing the magnitude into log_scale.
    pub fn normalized(&self) -> ScaledComplex {
        let m = self.val.norm();
        if m == 0.0 || !m.is_finite() {
            return *self;
        }
        ScaledComplex {
            val: self.val / m,
            log_scale: self.log_scale + m.ln(),
        }
    }
}
