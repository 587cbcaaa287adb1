//! Wilson polynomials W_n(t^2; alpha, beta, gamma, delta): terminating
//! 4F3(1) with Pochhammer prefactors. Real valued for conjugate-paired
//! parameters and real t.

use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;

use super::pfq::hyp_pfq_terminating;

/// Parameter bundle for W_n(t^2; alpha, beta, gamma, delta).
#[derive(Debug, Clone, Copy)]
pub struct WilsonParams {
    pub n: u32,
    pub t: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

fn pochhammer(x: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |p, k| p * (x + k as f64))
}

/// W_n(t^2) = (a+b)_n (a+c)_n (a+d)_n
///            4F3(-n, n+a+b+c+d-1, a+it, a-it; a+b, a+c, a+d; 1).
pub fn wilson_polynomial(p: WilsonParams) -> Result<ComplexValue> {
    let WilsonParams {
        n,
        t,
        alpha: a,
        beta: b,
        gamma: g,
        delta: d,
    } = p;
    let it = Complex64::new(0.0, t);
    let nf = n as f64;
    let num = [
        Complex64::new(-nf, 0.0),
        a + b + g + d + (nf - 1.0),
        a + it,
        a - it,
    ];
    let den = [a + b, a + g, a + d];
    let f = hyp_pfq_terminating(&num, &den, Complex64::new(1.0, 0.0))?;
    let pre = pochhammer(a + b, n) * pochhammer(a + g, n) * pochhammer(a + d, n);
    let v = pre * f.c();
    Ok(ComplexValue::from_c_err(
        v,
        pre.norm() * f.err.unwrap_or(0.0) + 1e-14 * v.norm(),
    ))
}
