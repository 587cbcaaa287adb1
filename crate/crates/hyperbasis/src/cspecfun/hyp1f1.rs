//! Confluent hypergeometric function 1F1(a;c;z) by power series, with the
//! Kummer transformation applied for Re z < 0 to avoid cancellation.

use crate::error::Error;
use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;

const INT_TOL: f64 = 1e-9;

fn series(a: Complex64, c: Complex64, z: Complex64) -> Result<ComplexValue> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak: f64 = 1.0;
    for n in 0..10_000 {
        let nf = n as f64;
        let d = c + nf;
        if d.norm() < 1e-14 {
            return Err(Error::pole(format!("1F1 lower parameter {c} hits zero")));
        }
        term *= (a + nf) / (d * (nf + 1.0)) * z;
        sum += term;
        peak = peak.max(sum.norm());
        if term.norm() < 1e-17 * (1.0 + sum.norm()) {
            return Ok(ComplexValue::from_c_err(sum, 1e-15 * peak + term.norm()));
        }
    }
    Err(Error::NoConvergence(format!("1F1 series at z = {z}")))
}

/// 1F1(a;c;z), complex parameters and argument.
pub fn hyp1f1(a: Complex64, c: Complex64, z: Complex64) -> Result<ComplexValue> {
    let r = c.re.round();
    if c.im.abs() < INT_TOL && (c.re - r).abs() < INT_TOL && r <= 0.0 {
        return Err(Error::pole(format!("1F1 lower parameter c = {c}")));
    }
    if z.re < 0.0 {
        // Kummer: 1F1(a;c;z) = e^z 1F1(c-a;c;-z)
        let inner = series(c - a, c, -z)?;
        let f = z.exp();
        let v = f * inner.c();
        Ok(ComplexValue::from_c_err(
            v,
            f.norm() * inner.err.unwrap_or(0.0) + 1e-15 * v.norm(),
        ))
    } else {
        series(a, c, z)
    }
}
