//! Gauss hypergeometric function 2F1(a,b;c;z) for complex parameters and
//! real argument, with analytic continuation by the standard linear
//! transformations. Direct series inside |z| <= 0.75, argument mapped to
//! 1-z near the branch point and to 1/z outside the unit interval; powers
//! of (-z) and (1-z) take the principal branch with argument in (-pi, pi].

use crate::error::Error;
use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;

use super::gamma::log_gamma_c;

/// Parameter bundle for 2F1(a,b;c;z) with real argument z.
#[derive(Debug, Clone, Copy)]
pub struct Hyp2F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: f64,
}

const Z_SWITCH: f64 = 0.75;
const INT_TOL: f64 = 1e-9;
const MAX_TERMS: usize = 4000;

fn near_nonpositive_int(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    if z.im.abs() < INT_TOL && (z.re - r).abs() < INT_TOL && r <= 0.0 {
        Some(r as i64)
    } else {
        None
    }
}

fn near_int(z: Complex64) -> bool {
    z.im.abs() < INT_TOL && (z.re - z.re.round()).abs() < INT_TOL
}

/// Principal-branch power x^p for real x (arg x = pi when x < 0).
fn pow_principal(x: f64, p: Complex64) -> Complex64 {
    Complex64::new(x, 0.0).powc(p)
}

/// Gamma-ratio prefactor num1*num2/(den1*den2) that is zero (not a pole)
/// when a denominator gamma sits at a nonpositive integer.
fn gamma_prefactor(
    num: [Complex64; 2],
    den: [Complex64; 2],
) -> Result<Complex64> {
    if den.iter().any(|&d| near_nonpositive_int(d).is_some()) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut l = Complex64::new(0.0, 0.0);
    for n in num {
        l += log_gamma_c(n)?;
    }
    for d in den {
        l -= log_gamma_c(d)?;
    }
    Ok(l.exp())
}

/// The individual evaluation routes, public so consistency tests can pit
/// them against each other.
pub mod routes {
    use super::*;

    /// Direct power series; geometric convergence for |z| < 1.
    pub fn series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<ComplexValue> {
        if let Some(nc) = near_nonpositive_int(c) {
            // allowed only if the series terminates before the pole of 1/(c)_n
            let stops = [near_nonpositive_int(a), near_nonpositive_int(b)]
                .into_iter()
                .flatten()
                .any(|n| n > nc);
            if !stops {
                return Err(Error::pole(format!("2F1 lower parameter c = {c}")));
            }
        }
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut peak: f64 = 1.0;
        let mut small = 0;
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
            sum += term;
            peak = peak.max(sum.norm());
            if term.norm() <= 1e-17 * (1.0 + sum.norm()) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        if small < 3 && term.norm() > 1e-12 * (1.0 + sum.norm()) {
            return Err(Error::NoConvergence(format!(
                "2F1 series at z = {z}: last term {}",
                term.norm()
            )));
        }
        let err = 1e-15 * peak + term.norm();
        Ok(ComplexValue::from_c_err(sum, err))
    }

    /// Pfaff transformation z -> z/(z-1); maps z < 0 into (0,1).
    pub fn via_pfaff(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<ComplexValue> {
        let w = z / (z - 1.0);
        let inner = eval(a, c - b, c, w)?;
        let factor = pow_principal(1.0 - z, -a);
        let v = factor * inner.c();
        Ok(ComplexValue::from_c_err(
            v,
            inner.err.unwrap_or(0.0) * factor.norm() + 1e-15 * v.norm(),
        ))
    }

    /// Connection at z = 1: argument mapped to 1 - z.
    /// Requires c - a - b non-integer.
    pub fn via_1mz(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<ComplexValue> {
        let s = c - a - b;
        if near_int(s) {
            return Err(Error::Degenerate(format!(
                "2F1 connection at z=1 needs non-integer c-a-b, got {s}"
            )));
        }
        let w = 1.0 - z;
        let f1 = eval(a, b, a + b - c + 1.0, w)?;
        let f2 = eval(c - a, c - b, s + 1.0, w)?;
        let g1 = gamma_prefactor([c, s], [c - a, c - b])?;
        let g2 = gamma_prefactor([c, -s], [a, b])?;
        let p = pow_principal(w, s);
        let v = g1 * f1.c() + p * g2 * f2.c();
        let err = g1.norm() * f1.err.unwrap_or(0.0)
            + (p * g2).norm() * f2.err.unwrap_or(0.0)
            + 1e-14 * (g1 * f1.c()).norm().max((p * g2 * f2.c()).norm());
        Ok(ComplexValue::from_c_err(v, err))
    }

    /// Connection at infinity: argument mapped to 1/z.
    /// Requires b - a non-integer.
    pub fn via_recip(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<ComplexValue> {
        let d = b - a;
        if near_int(d) {
            return Err(Error::Degenerate(format!(
                "2F1 connection at infinity needs non-integer b-a, got {d}"
            )));
        }
        let w = 1.0 / z;
        let f1 = eval(a, 1.0 - c + a, 1.0 - d, w)?;
        let f2 = eval(b, 1.0 - c + b, 1.0 + d, w)?;
        let g1 = gamma_prefactor([c, d], [b, c - a])?;
        let g2 = gamma_prefactor([c, -d], [a, c - b])?;
        let pa = pow_principal(-z, -a);
        let pb = pow_principal(-z, -b);
        let v = pa * g1 * f1.c() + pb * g2 * f2.c();
        let err = (pa * g1).norm() * f1.err.unwrap_or(0.0)
            + (pb * g2).norm() * f2.err.unwrap_or(0.0)
            + 1e-14 * (pa * g1 * f1.c()).norm().max((pb * g2 * f2.c()).norm());
        Ok(ComplexValue::from_c_err(v, err))
    }

    /// Gauss summation at z = 1, Re(c - a - b) > 0.
    pub fn gauss_sum(a: Complex64, b: Complex64, c: Complex64) -> Result<ComplexValue> {
        let s = c - a - b;
        if s.re <= 0.0 && near_nonpositive_int(a).is_none() && near_nonpositive_int(b).is_none() {
            return Err(Error::domain(format!(
                "2F1 at z=1 diverges: Re(c-a-b) = {} <= 0",
                s.re
            )));
        }
        let v = gamma_prefactor([c, s], [c - a, c - b])?;
        Ok(ComplexValue::from_c_err(v, 1e-13 * v.norm()))
    }

    /// Recursive dispatcher shared by all routes.
    pub fn eval(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<ComplexValue> {
        if !z.is_finite() {
            return Err(Error::domain("2F1 argument must be finite".to_string()));
        }
        if z == 0.0 {
            return Ok(ComplexValue::with_err(1.0, 0.0, 0.0));
        }
        // terminating series works for any z
        if near_nonpositive_int(a).is_some() || near_nonpositive_int(b).is_some() {
            return series(a, b, c, z);
        }
        if z.abs() <= Z_SWITCH {
            series(a, b, c, z)
        } else if z < 0.0 {
            via_pfaff(a, b, c, z)
        } else if z < 1.0 {
            via_1mz(a, b, c, z)
        } else if z == 1.0 {
            gauss_sum(a, b, c)
        } else {
            via_recip(a, b, c, z)
        }
    }
}

/// 2F1(a,b;c;z) for real z with automatic analytic continuation.
pub fn hyp2f1(p: Hyp2F1Params) -> Result<ComplexValue> {
    routes::eval(p.a, p.b, p.c, p.z)
}

/// Convenience wrapper taking bare parameters and returning the bare value.
pub fn hyp2f1_c(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    Ok(routes::eval(a, b, c, z)?.c())
}
