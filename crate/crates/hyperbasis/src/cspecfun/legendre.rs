//! Associated Legendre functions of complex degree and order: Q off the cut
//! (toroidal regime, z > 1), Ferrers P and Q on the cut x in (-1,1), and
//! off-cut P of integer order for the pseudo-spherical basis. All built on
//! hypergeometric representations.

use crate::error::Error;
use crate::value::{ComplexValue, ScaledComplex};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::log_gamma_c;
use super::hyp2f1::routes;

/// Degree nu, order mu, real argument (Ferrers branch |x| < 1, off-cut z > 1).
#[derive(Debug, Clone, Copy)]
pub struct LegendreParams {
    pub nu: Complex64,
    pub mu: Complex64,
    pub x: f64,
}

/// Q^mu_nu(z), z > 1, as value * exp(log_scale). The e^{i mu pi} factor of
/// the standard normalization is folded in; its growing modulus
/// exp(-pi Im mu) lives in the log scale.
pub fn legendre_q_offcut_scaled(p: LegendreParams) -> Result<ScaledComplex> {
    let LegendreParams { nu, mu, x: z } = p;
    if z <= 1.0 {
        return Err(Error::domain(format!(
            "off-cut Legendre Q needs z > 1, got {z}"
        )));
    }
    let lg_num = log_gamma_c(1.0 + nu + mu)?;
    let lg1 = log_gamma_c(1.0 + nu)?;
    let lg2 = log_gamma_c(2.0 + 2.0 * nu)?;
    let f = routes::eval(1.0 + nu - mu, 1.0 + nu, 2.0 + 2.0 * nu, 2.0 / (1.0 + z))?;
    // log of everything except e^{i mu pi}: 2^nu (z+1)^{-1-nu}
    // ((z+1)/(z-1))^{mu/2} Gamma(1+nu+mu) Gamma(1+nu) / Gamma(2+2nu)
    let lg_pow = nu * std::f64::consts::LN_2 - (1.0 + nu) * (z + 1.0).ln()
        + mu / 2.0 * ((z + 1.0).ln() - (z - 1.0).ln());
    let log_total = lg_pow + lg_num + lg1 - lg2;
    // e^{i mu pi} = e^{-pi Im mu} e^{i pi Re mu}
    let log_scale = -PI * mu.im + log_total.re;
    let phase = (Complex64::new(0.0, log_total.im + PI * mu.re)).exp();
    Ok(ScaledComplex::new(phase * f.c(), log_scale).normalized())
}

/// Q^mu_nu(z), z > 1; overflows for strongly imaginary mu, use the scaled
/// variant there.
pub fn legendre_q_offcut(p: LegendreParams) -> Result<ComplexValue> {
    let s = legendre_q_offcut_scaled(p)?;
    let v = s.resolve();
    Ok(ComplexValue::from_c_err(v, 1e-12 * v.norm()))
}

/// Ferrers function of the second kind on the cut, non-integer order.
pub fn legendre_q_oncut(p: LegendreParams) -> Result<ComplexValue> {
    let LegendreParams { nu, mu, x } = p;
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!("Ferrers Q needs |x| < 1, got {x}")));
    }
    if mu.im == 0.0 && (mu.re - mu.re.round()).abs() < 1e-12 && mu.re.round() != 0.0 {
        return Err(Error::pole(
            "Ferrers Q representation has Gamma(+-mu) poles at nonzero integer order".to_string(),
        ));
    }
    let w = (1.0 - x) / 2.0;
    let half_log_ratio = 0.5 * ((1.0 - x).ln() - (1.0 + x).ln());
    let t1 = (log_gamma_c(1.0 + nu + mu)? + log_gamma_c(-mu)? - log_gamma_c(1.0 + nu - mu)?
        + mu * half_log_ratio)
        .exp()
        / 2.0
        * routes::eval(-nu, nu + 1.0, 1.0 + mu, w)?.c();
    let t2 = (log_gamma_c(mu)? - mu * half_log_ratio).exp() / 2.0
        * (PI * mu).cos()
        * routes::eval(-nu, nu + 1.0, 1.0 - mu, w)?.c();
    let v = t1 + t2;
    Ok(ComplexValue::from_c_err(
        v,
        1e-13 * (t1.norm() + t2.norm()),
    ))
}

/// Ferrers function of the first kind on the cut, any complex order
/// (integer orders routed through the order-reflection connection).
pub fn legendre_p_oncut(p: LegendreParams) -> Result<ComplexValue> {
    let LegendreParams { nu, mu, x } = p;
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!("Ferrers P needs |x| < 1, got {x}")));
    }
    if mu.im == 0.0 && (mu.re - mu.re.round()).abs() < 1e-12 && mu.re.round() > 0.0 {
        // P^m = (-1)^m Gamma(nu+m+1)/Gamma(nu-m+1) P^{-m}
        let m = mu.re.round();
        let mut q = p;
        q.mu = Complex64::new(-m, 0.0);
        let base = legendre_p_oncut(q)?;
        let mut ratio = Complex64::new(1.0, 0.0);
        let mut t = nu - m + 1.0;
        while (t - (nu + m + 1.0)).norm() > 0.5 {
            ratio *= t;
            t += 1.0;
        }
        let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let v = sign * ratio * base.c();
        return Ok(ComplexValue::from_c_err(
            v,
            ratio.norm() * base.err.unwrap_or(0.0),
        ));
    }
    let w = (1.0 - x) / 2.0;
    let half_log_ratio = 0.5 * ((1.0 + x).ln() - (1.0 - x).ln());
    let f = routes::eval(-nu, nu + 1.0, 1.0 - mu, w)?;
    let v = (mu * half_log_ratio - log_gamma_c(1.0 - mu)?).exp() * f.c();
    Ok(ComplexValue::from_c_err(v, 1e-13 * v.norm()))
}

/// Off-cut P^m_nu(z), z > 1, nonnegative integer order m: the radial factor
/// of the pseudo-spherical basis.
pub fn legendre_p_offcut_int_order(m: u32, nu: Complex64, z: f64) -> Result<ComplexValue> {
    if z < 1.0 {
        return Err(Error::domain(format!("off-cut Legendre P needs z >= 1, got {z}")));
    }
    if z == 1.0 {
        return Ok(ComplexValue::new(if m == 0 { 1.0 } else { 0.0 }, 0.0));
    }
    // P^{-m}_nu(z) = ((z-1)/(z+1))^{m/2} / m! 2F1(-nu, nu+1; 1+m; (1-z)/2)
    let w = (1.0 - z) / 2.0;
    let f = routes::eval(-nu, nu + 1.0, Complex64::new(1.0 + m as f64, 0.0), w)?;
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= k as f64;
    }
    let pm = ((z - 1.0) / (z + 1.0)).powf(m as f64 / 2.0) / fact * f.c();
    // P^m = Gamma(nu+m+1)/Gamma(nu-m+1) P^{-m} = prod_{j=1}^{2m} (nu - m + j) P^{-m}
    let mut ratio = Complex64::new(1.0, 0.0);
    for j in 1..=(2 * m) {
        ratio *= nu - m as f64 + j as f64;
    }
    let v = ratio * pm;
    Ok(ComplexValue::from_c_err(
        v,
        ratio.norm() * ((z - 1.0) / (z + 1.0)).powf(m as f64 / 2.0) / fact * f.err.unwrap_or(0.0)
            + 1e-13 * v.norm(),
    ))
}

/// P^mu_nu(z) for z > 1 and general complex order away from the poles of
/// Gamma(1 - mu) (positive integer mu).
pub fn legendre_p_offcut(p: LegendreParams) -> Result<ComplexValue> {
    let LegendreParams { nu, mu, x: z } = p;
    if z <= 1.0 {
        return Err(Error::domain(format!("off-cut Legendre P needs z > 1, got {z}")));
    }
    if mu.im == 0.0 && (mu.re - mu.re.round()).abs() < 1e-12 && mu.re.round() > 0.0 {
        return Err(Error::pole(
            "positive integer order has a Gamma(1 - mu) pole; use the integer-order routine"
                .to_string(),
        ));
    }
    let f = routes::eval(-nu, nu + 1.0, 1.0 - mu, (1.0 - z) / 2.0)?;
    let half_log_ratio = 0.5 * ((z + 1.0).ln() - (z - 1.0).ln());
    let pre = (mu * half_log_ratio - log_gamma_c(1.0 - mu)?).exp();
    let v = pre * f.c();
    Ok(ComplexValue::from_c_err(
        v,
        pre.norm() * f.err.unwrap_or(0.0) + 1e-13 * v.norm(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn p_offcut_general_order_reference() {
        // frozen multiprecision values
        let v = legendre_p_offcut(LegendreParams {
            nu: c(-0.5, 1.1),
            mu: c(0.0, 0.8),
            x: 1.7,
        })
        .unwrap()
        .c();
        let want = c(1.182_417_334_013_757_1, 0.002_720_506_962_013_972_8);
        assert!((v - want).norm() < 1e-12 * want.norm(), "{v}");
        let v = legendre_p_offcut(LegendreParams {
            nu: c(-0.5, 0.9),
            mu: c(0.0, -0.9),
            x: 2.4,
        })
        .unwrap()
        .c();
        let want = c(1.201_923_106_020_930_6, 0.257_463_835_192_439_4);
        assert!((v - want).norm() < 1e-12 * want.norm(), "{v}");
        // integer nonpositive order agrees with the dedicated routine at m = 0
        let a = legendre_p_offcut(LegendreParams {
            nu: c(0.3, 0.4),
            mu: c(0.0, 0.0),
            x: 3.0,
        })
        .unwrap()
        .c();
        let b = legendre_p_offcut_int_order(0, c(0.3, 0.4), 3.0).unwrap().c();
        assert!((a - b).norm() < 1e-12 * b.norm());
    }

    #[test]
    fn ferrers_against_reference() {
        // frozen multiprecision values, nu = 0.8, mu = -i
        let p = LegendreParams {
            nu: c(0.8, 0.0),
            mu: c(0.0, -1.0),
            x: 0.3,
        };
        let vp = legendre_p_oncut(p).unwrap().c();
        let want_p = c(1.429_180_545_934_783_1, 0.506_807_380_252_115_6);
        assert!((vp - want_p).norm() < 1e-12 * want_p.norm(), "{vp}");
        let vq = legendre_q_oncut(p).unwrap().c();
        let want_q = c(-0.979_505_128_791_208_6, 2.153_441_076_444_496_3);
        assert!((vq - want_q).norm() < 1e-12 * want_q.norm(), "{vq}");
        let mut p2 = p;
        p2.x = -0.85;
        let vq2 = legendre_q_oncut(p2).unwrap().c();
        let want_q2 = c(-1.098_537_387_277_520_7, -2.445_493_076_184_036_3);
        assert!((vq2 - want_q2).norm() < 1e-11 * want_q2.norm(), "{vq2}");
    }

    #[test]
    fn offcut_p_against_reference() {
        let v = legendre_p_offcut_int_order(2, c(-0.5, 1.1), 1.7).unwrap().c();
        assert!((v.re - 0.557_717_910_048_600_3).abs() < 1e-11, "{v}");
        assert!(v.im.abs() < 1e-11);
        let v = legendre_p_offcut_int_order(0, c(-0.5, 1.1), 80.0).unwrap().c();
        assert!((v.re - -0.002_894_035_073_445_382_5).abs() < 1e-12, "{v}");
    }

    #[test]
    fn offcut_p_at_unit_argument() {
        let v = legendre_p_offcut_int_order(0, c(-0.5, 2.0), 1.0).unwrap();
        assert_eq!(v.re, 1.0);
        let v = legendre_p_offcut_int_order(3, c(-0.5, 2.0), 1.0).unwrap();
        assert_eq!(v.re, 0.0);
    }

    #[test]
    fn ferrers_p_at_unit_argument() {
        let p = LegendreParams {
            nu: c(-0.5, 1.3),
            mu: c(0.0, 0.0),
            x: 1.0 - 1e-12,
        };
        let v = legendre_p_oncut(p).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10 && v.im.abs() < 1e-12);
    }

    #[test]
    fn offcut_q_degree_recurrence() {
        // (2 nu + 1) z Q^mu_nu = (nu - mu + 1) Q^mu_{nu+1} + (nu + mu) Q^mu_{nu-1}
        let nu = c(0.8, 0.0); // -1/2 + 1.3
        let mu = c(0.0, -1.0);
        let z = 2.0;
        let q = |d: f64| {
            legendre_q_offcut(LegendreParams {
                nu: nu + d,
                mu,
                x: z,
            })
            .unwrap()
            .c()
        };
        let lhs = (2.0 * nu + 1.0) * z * q(0.0);
        let rhs = (nu - mu + 1.0) * q(1.0) + (nu + mu) * q(-1.0);
        let scale = lhs.norm().max(rhs.norm());
        assert!((lhs - rhs).norm() < 1e-10 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn ferrers_p_degree_recurrence() {
        let nu = c(-0.5, 0.9);
        let mu = c(0.0, -0.7);
        let x = 0.4;
        let p = |d: f64| {
            legendre_p_oncut(LegendreParams {
                nu: nu + d,
                mu,
                x,
            })
            .unwrap()
            .c()
        };
        let lhs = (2.0 * nu + 1.0) * x * p(0.0);
        let rhs = (nu - mu + 1.0) * p(1.0) + (nu + mu) * p(-1.0);
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(rhs.norm()));
    }

    #[test]
    fn offcut_q_large_argument_asymptotics() {
        // Q^mu_nu(z) ~ e^{i mu pi} sqrt(pi) Gamma(1+nu+mu) / ((2z)^{1+nu} Gamma(nu+3/2))
        let nu = c(0.8, 0.0);
        let mu = c(0.0, -1.3);
        let z = 1e4;
        let got = legendre_q_offcut(LegendreParams { nu, mu, x: z }).unwrap().c();
        let log_want = Complex64::new(0.0, PI) * mu + 0.5 * PI.ln()
            + log_gamma_c(1.0 + nu + mu).unwrap()
            - (1.0 + nu) * (2.0 * z).ln()
            - log_gamma_c(nu + 1.5).unwrap();
        let want = log_want.exp();
        assert!((got - want).norm() < 1e-3 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn scaled_consistency() {
        let p = LegendreParams {
            nu: c(0.5, 0.0),
            mu: c(0.0, -2.0),
            x: 3.0,
        };
        let plain = legendre_q_offcut(p).unwrap().c();
        let scaled = legendre_q_offcut_scaled(p).unwrap();
        assert!((scaled.resolve() - plain).norm() < 1e-12 * plain.norm());
    }

    #[test]
    fn domain_errors() {
        let p = LegendreParams {
            nu: c(0.5, 0.0),
            mu: c(0.0, -1.0),
            x: 0.5,
        };
        assert!(legendre_q_offcut(p).is_err());
        let mut p2 = p;
        p2.x = 1.5;
        assert!(legendre_q_oncut(p2).is_err());
        assert!(legendre_p_oncut(p2).is_err());
    }
}
