//! Normalized eigenfunctions of the Laplace-Beltrami operator on the upper
//! hyperboloid sheet in six coordinate systems, together with their
//! normalization constants and documented asymptotic forms.
//!
//! Every evaluator returns the delta-normalized wave function including all
//! phase factors. Gamma-heavy prefactors are assembled in log space and the
//! exp(pi rho)-sized factors of the radial special functions are carried as
//! explicit log scales, so evaluation stays finite for large rho.

use crate::cspecfun::{
    bessel_j_sum_imag_order_scaled, legendre_p_offcut_int_order,
    legendre_q_offcut_scaled, legendre_q_oncut, log_gamma_c, macdonald_imag_order_scaled, routes,
    LegendreParams,
};
use crate::error::Error;
use crate::value::{ComplexValue, ScaledComplex};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

const RHO_MIN: f64 = 1e-6;

/// Reflection parity of the two-branch continuous families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

/// A labeled eigenstate. `rho` is the principal quantum number; the other
/// fields are the separation constants of the respective system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumState {
    /// Semi-circular parabolic; branch 1 for a > 0, branch 2 for a < 0.
    Scp { rho: f64, a: f64 },
    /// Elliptic parabolic, continuous mu >= 0 with parity.
    Ep { rho: f64, mu: f64, parity: Parity },
    /// Hyperbolic parabolic, discrete ladder sigma = sigma0 + 2n.
    HpDiscrete { rho: f64, sigma: f64, sigma0: f64 },
    /// Hyperbolic parabolic, continuous sigma > 0.
    HpContinuous { rho: f64, sigma: f64 },
    /// Pseudo-spherical, integer angular momentum m.
    Ps { rho: f64, m: i32 },
    /// Equidistant, continuous nu with parity.
    Eq { rho: f64, nu: f64, parity: Parity },
    /// Horocyclic, continuous s != 0.
    Ho { rho: f64, s: f64 },
}

impl QuantumState {
    pub fn rho(&self) -> f64 {
        match *self {
            QuantumState::Scp { rho, .. }
            | QuantumState::Ep { rho, .. }
            | QuantumState::HpDiscrete { rho, .. }
            | QuantumState::HpContinuous { rho, .. }
            | QuantumState::Ps { rho, .. }
            | QuantumState::Eq { rho, .. }
            | QuantumState::Ho { rho, .. } => rho,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let rho = self.rho();
        if !(rho >= RHO_MIN) || !rho.is_finite() {
            return Err(Error::domain(format!(
                "principal quantum number rho must be >= {RHO_MIN}, got {rho}"
            )));
        }
        match *self {
            QuantumState::Scp { a, .. } => {
                if a == 0.0 || !a.is_finite() {
                    return Err(Error::domain(format!(
                        "separation constant must be nonzero, got {a}"
                    )));
                }
            }
            QuantumState::Ep { mu, .. } => {
                if !(mu >= 0.0) || !mu.is_finite() {
                    return Err(Error::domain(format!("mu must be >= 0, got {mu}")));
                }
            }
            QuantumState::HpDiscrete { sigma, sigma0, .. } => {
                if !(sigma0 > 0.0 && sigma0 <= 2.0) {
                    return Err(Error::domain(format!(
                        "ladder base must lie in (0, 2], got {sigma0}"
                    )));
                }
                let n = (sigma - sigma0) / 2.0;
                if n < -1e-9 || (n - n.round()).abs() > 1e-9 {
                    return Err(Error::domain(format!(
                        "sigma = {sigma} is not on the ladder {sigma0} + 2n"
                    )));
                }
            }
            QuantumState::HpContinuous { sigma, .. } => {
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::domain(format!("sigma must be > 0, got {sigma}")));
                }
            }
            QuantumState::Ps { .. } => {}
            QuantumState::Eq { nu, .. } => {
                if !nu.is_finite() {
                    return Err(Error::domain(format!("nu must be finite, got {nu}")));
                }
            }
            QuantumState::Ho { s, .. } => {
                if s == 0.0 || !s.is_finite() {
                    return Err(Error::domain(format!("s must be nonzero, got {s}")));
                }
            }
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ln sinh x for x > 0, stable for large x.
fn log_sinh(x: f64) -> f64 {
    x + (0.5 * (1.0 - (-2.0 * x).exp())).ln()
}

/// ln cosh x, stable for large |x|.
fn log_cosh(x: f64) -> f64 {
    x.abs() + (0.5 * (1.0 + (-2.0 * x.abs()).exp())).ln()
}

/// The scattering phase arg Gamma(1 - i rho).
pub fn delta_rho(rho: f64) -> f64 {
    log_gamma_c(c(1.0, -rho)).expect("no pole on this line").im
}

fn re_lg(x: f64, y: f64) -> f64 {
    log_gamma_c(c(x, y)).expect("gamma argument off the poles").re
}

// --- semi-circular parabolic -------------------------------------------

/// Overall prefactor of the SCP wave functions.
fn norm_scp(rho: f64, r: f64) -> f64 {
    (rho * (PI * rho / 2.0).tanh() / 2.0).sqrt() / (PI * r)
}

/// Normalized SCP wave function; branch 1 for a > 0 pairs the oscillatory
/// factor with xi, branch 2 for a < 0 swaps the roles of xi and eta.
pub fn eval_scp(rho: f64, a: f64, r: f64, xi: f64, eta: f64) -> Result<ComplexValue> {
    QuantumState::Scp { rho, a }.validate()?;
    if !(xi > 0.0 && eta > 0.0) {
        return Err(Error::domain(format!(
            "semi-circular parabolic coordinates must be positive, got ({xi}, {eta})"
        )));
    }
    let q = a.abs().sqrt();
    let (osc, dec) = if a > 0.0 { (xi, eta) } else { (eta, xi) };
    let j = bessel_j_sum_imag_order_scaled(rho, q * osc)?;
    let k = macdonald_imag_order_scaled(rho, q * dec)?;
    let v = j.mul(&k).resolve() * norm_scp(rho, r) * (xi * eta).sqrt();
    Ok(ComplexValue::from_c_err(v, 1e-10 * v.norm()))
}

/// The decaying radial factor sqrt(eta) K_{i rho}(q eta).
pub fn scp_radial_factor(rho: f64, q: f64, eta: f64) -> Result<ScaledComplex> {
    let k = macdonald_imag_order_scaled(rho, q * eta)?;
    Ok(ScaledComplex::new(k.val * eta.sqrt(), k.log_scale))
}

/// The oscillatory factor sqrt(xi) [J_{i rho} + J_{-i rho}](q xi).
pub fn scp_angular_factor(rho: f64, q: f64, xi: f64) -> Result<ScaledComplex> {
    let j = bessel_j_sum_imag_order_scaled(rho, q * xi)?;
    Ok(ScaledComplex::new(j.val * xi.sqrt(), j.log_scale))
}

/// Small-argument form of the decaying factor.
pub fn scp_radial_small(rho: f64, q: f64, eta: f64) -> f64 {
    let gm = re_lg(1.0, rho).exp();
    -PI / (PI * rho).sinh() * eta.sqrt() / gm * (rho * (q * eta / 2.0).ln() + delta_rho(rho)).sin()
}

/// Large-argument form of the decaying factor.
pub fn scp_radial_large(q: f64, eta: f64) -> f64 {
    (PI / (2.0 * q)).sqrt() * (-q * eta).exp()
}

/// Small-argument form of the oscillatory factor.
pub fn scp_angular_small(rho: f64, q: f64, xi: f64) -> f64 {
    let gm = re_lg(1.0, rho).exp();
    2.0 * xi.sqrt() / gm * (rho * (q * xi / 2.0).ln() + delta_rho(rho)).cos()
}

/// Large-argument form of the oscillatory factor (exp(pi rho/2) included).
pub fn scp_angular_large(rho: f64, q: f64, xi: f64) -> f64 {
    (8.0 / (PI * q)).sqrt() * (rho * PI / 2.0).cosh() * (q * xi - PI / 4.0).cos()
}

/// Finite-difference application of the SCP symmetry operator
/// -(xi^2 d^2/dxi^2 - eta^2 d^2/deta^2)/(xi^2 + eta^2).
pub fn symmetry_operator_fd<F>(f: &F, xi: f64, eta: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    if !(h > 0.0) || xi - h <= 0.0 || eta - h <= 0.0 {
        return Err(Error::domain(format!(
            "stencil of width {h} leaves the chart at ({xi}, {eta})"
        )));
    }
    let f0 = f(xi, eta)?;
    let dxx = (f(xi + h, eta)? - 2.0 * f0 + f(xi - h, eta)?) / (h * h);
    let dyy = (f(xi, eta + h)? - 2.0 * f0 + f(xi, eta - h)?) / (h * h);
    Ok(-(xi * xi * dxx - eta * eta * dyy) / (xi * xi + eta * eta))
}

// --- elliptic parabolic ------------------------------------------------

/// Hyperbolic factor of the EP wave function (argument a).
pub fn ep_psi_a(rho: f64, mu: f64, parity: Parity, a: f64) -> Result<Complex64> {
    let t = a.tanh();
    let (alpha, cc, pre) = match parity {
        Parity::Plus => (0.25, 0.5, 1.0),
        Parity::Minus => (0.75, 1.5, t),
    };
    let f = routes::eval(
        c(alpha, (rho + mu) / 2.0),
        c(alpha, (mu - rho) / 2.0),
        c(cc, 0.0),
        t * t,
    )?;
    Ok((c(0.0, -mu) * a.cosh().ln()).exp() * pre * f.c())
}

/// Trigonometric factor of the EP wave function (argument theta).
pub fn ep_psi_theta(rho: f64, mu: f64, parity: Parity, theta: f64) -> Result<Complex64> {
    if theta.abs() >= PI / 2.0 {
        return Err(Error::domain(format!("|theta| must be < pi/2, got {theta}")));
    }
    let t = theta.tan();
    let (alpha, cc, pre) = match parity {
        Parity::Plus => (0.25, 0.5, 1.0),
        Parity::Minus => (0.75, 1.5, t),
    };
    let f = routes::eval(
        c(alpha, (rho + mu) / 2.0),
        c(alpha, (mu - rho) / 2.0),
        c(cc, 0.0),
        -t * t,
    )?;
    Ok((c(0.0, -mu) * theta.cos().ln()).exp() * pre * f.c())
}

/// Normalization of the EP wave functions, computed in log space.
pub fn norm_ep(rho: f64, mu: f64, parity: Parity, r: f64) -> f64 {
    let (alpha, extra) = match parity {
        // 1/(2 sqrt(2) pi^3 R) and sqrt(2)/(pi^3 R)
        Parity::Plus => (0.25, -(2.0 * 2f64.sqrt() * PI.powi(3)).ln()),
        Parity::Minus => (0.75, 2f64.sqrt().ln() - PI.powi(3).ln()),
    };
    let log_n = 0.5 * (rho.ln() + mu.ln() + log_sinh(PI * rho) + log_sinh(PI * mu))
        + 2.0 * re_lg(alpha, (rho + mu) / 2.0)
        + 2.0 * re_lg(alpha, (rho - mu) / 2.0)
        + extra
        - r.ln();
    log_n.exp()
}

/// Normalized EP wave function.
pub fn eval_ep(rho: f64, mu: f64, parity: Parity, r: f64, a: f64, theta: f64) -> Result<ComplexValue> {
    QuantumState::Ep { rho, mu, parity }.validate()?;
    if a < 0.0 {
        return Err(Error::domain(format!("a must be >= 0, got {a}")));
    }
    let v = norm_ep(rho, mu, parity, r)
        * ep_psi_a(rho, mu, parity, a)?
        * ep_psi_theta(rho, mu, parity, theta)?;
    Ok(ComplexValue::from_c_err(v, 1e-9 * v.norm()))
}

fn inv_gamma(x: f64, y: f64) -> Complex64 {
    (-log_gamma_c(c(x, y)).expect("gamma argument off the poles")).exp()
}

/// Plane-wave form of the hyperbolic EP factor for large a.
pub fn ep_psi_a_large(rho: f64, mu: f64, parity: Parity, a: f64) -> Complex64 {
    let (alpha, half) = match parity {
        Parity::Plus => (0.25, 1.0),
        Parity::Minus => (0.75, 0.5),
    };
    let g_neg = (log_gamma_c(c(0.0, -mu)).unwrap()).exp();
    let g_pos = (log_gamma_c(c(0.0, mu)).unwrap()).exp();
    let two_pow = |p: Complex64| (p * std::f64::consts::LN_2).exp();
    let t1 = g_neg * (c(0.0, -mu * a)).exp() * two_pow(c(0.0, mu))
        * inv_gamma(alpha, -(rho + mu) / 2.0)
        * inv_gamma(alpha, (rho - mu) / 2.0);
    let t2 = g_pos * (c(0.0, mu * a)).exp() * two_pow(c(0.0, -mu))
        * inv_gamma(alpha, (rho + mu) / 2.0)
        * inv_gamma(alpha, -(rho - mu) / 2.0);
    PI.sqrt() * half * (t1 + t2)
}

/// Edge form of the trigonometric EP factor as theta approaches pi/2.
pub fn ep_psi_theta_edge(rho: f64, mu: f64, parity: Parity, theta: f64) -> Complex64 {
    let (alpha, half) = match parity {
        Parity::Plus => (0.25, 1.0),
        Parity::Minus => (0.75, 0.5),
    };
    let lc = theta.cos().ln();
    let g_neg = (log_gamma_c(c(0.0, -rho)).unwrap()).exp();
    let g_pos = (log_gamma_c(c(0.0, rho)).unwrap()).exp();
    let t1 = g_neg * (c(0.5, rho) * lc).exp()
        * inv_gamma(alpha, -(rho + mu) / 2.0)
        * inv_gamma(alpha, -(rho - mu) / 2.0);
    let t2 = g_pos * (c(0.5, -rho) * lc).exp()
        * inv_gamma(alpha, (rho + mu) / 2.0)
        * inv_gamma(alpha, (rho - mu) / 2.0);
    PI.sqrt() * half * (t1 + t2)
}

// --- hyperbolic parabolic ----------------------------------------------

/// Radial factor sqrt(sinh b) Q^{-i rho}_{-1/2+sigma}(cosh b) divided by
/// Gamma(1/2 + sigma - i rho); sigma is real for the discrete ladder and
/// i*|sigma| for the continuous spectrum.
pub fn hp_psi_radial(rho: f64, sigma: Complex64, b: f64) -> Result<ScaledComplex> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("b must be > 0, got {b}")));
    }
    let q = legendre_q_offcut_scaled(LegendreParams {
        nu: sigma - 0.5,
        mu: c(0.0, -rho),
        x: b.cosh(),
    })?;
    let lg = log_gamma_c(sigma + c(0.5, -rho))?;
    Ok(ScaledComplex::new(
        q.val * b.sinh().sqrt() * (c(0.0, -lg.im)).exp(),
        q.log_scale - lg.re,
    ))
}

/// Angular factor sqrt(sin theta) Q^{-i rho}_{-1/2+sigma}(cos theta)
/// divided by the same Gamma as the radial factor.
pub fn hp_psi_angular(rho: f64, sigma: Complex64, theta: f64) -> Result<Complex64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::domain(format!("theta must be in (0, pi), got {theta}")));
    }
    let q = legendre_q_oncut(LegendreParams {
        nu: sigma - 0.5,
        mu: c(0.0, -rho),
        x: theta.cos(),
    })?;
    let lg = log_gamma_c(sigma + c(0.5, -rho))?;
    Ok(q.c() * theta.sin().sqrt() * (-lg).exp())
}

/// Small-b form of the radial factor.
pub fn hp_radial_small(rho: f64, sigma: Complex64, b: f64) -> Complex64 {
    let sh = (b / 2.0).sinh().ln();
    let t1 = (log_gamma_c(c(0.0, rho)).unwrap() - log_gamma_c(sigma + c(0.5, rho)).unwrap()
        + c(0.5, -rho) * sh)
        .exp();
    let t2 = (log_gamma_c(c(0.0, -rho)).unwrap() - log_gamma_c(sigma + c(0.5, -rho)).unwrap()
        + c(0.5, rho) * sh)
        .exp();
    (PI * rho).exp() / 2f64.sqrt() * (t1 + t2)
}

/// Small-theta form of the angular factor.
pub fn hp_angular_small(rho: f64, sigma: Complex64, theta: f64) -> Complex64 {
    let sn = (theta / 2.0).sin().ln();
    let t1 = (log_gamma_c(c(0.0, rho)).unwrap() - log_gamma_c(sigma + c(0.5, rho)).unwrap()
        + c(0.5, -rho) * sn)
        .exp();
    let t2 = (PI * rho).cosh()
        * (log_gamma_c(c(0.0, -rho)).unwrap() - log_gamma_c(sigma + c(0.5, -rho)).unwrap()
            + c(0.5, rho) * sn)
            .exp();
    (t1 + t2) / 2f64.sqrt()
}

/// Form of the angular factor as theta approaches pi. The complex sine
/// covers both spectra (sigma real or imaginary).
pub fn hp_angular_near_pi(rho: f64, sigma: Complex64, theta: f64) -> Complex64 {
    let cs = (theta / 2.0).cos().ln();
    let t1 = (PI * sigma).sin()
        * (log_gamma_c(c(0.0, -rho)).unwrap() - log_gamma_c(sigma + c(0.5, -rho)).unwrap()
            + c(0.5, rho) * cs)
            .exp();
    let t2 = (PI * (sigma - c(0.0, rho))).sin()
        * (log_gamma_c(c(0.0, rho)).unwrap() - log_gamma_c(sigma + c(0.5, rho)).unwrap()
            + c(0.5, -rho) * cs)
            .exp();
    -(t1 + t2) / 2f64.sqrt()
}

/// Outgoing-wave form of the continuous radial factor for large b.
pub fn hp_radial_large_continuous(rho: f64, sigma: f64, b: f64) -> Complex64 {
    (PI * rho).exp() * PI.sqrt() / 2f64.sqrt()
        * (c(0.0, -sigma * b) - log_gamma_c(c(1.0, sigma)).unwrap()).exp()
}

/// Normalization of the discrete HP states as a log-scaled phase.
fn norm_hp_discrete(rho: f64, sigma: f64, r: f64) -> ScaledComplex {
    let lg = log_gamma_c(c(0.5 + sigma, rho)).expect("argument in right half plane");
    let log_abs = 2f64.ln() + 0.5 * (2.0 * rho * sigma * (PI * rho).tanh()).ln() - PI * rho
        - (PI * PI * r).ln();
    ScaledComplex::new(c(0.0, 2.0 * lg.im).exp(), log_abs)
}

/// Normalized discrete-spectrum HP wave function.
pub fn eval_hp_discrete(rho: f64, sigma: f64, sigma0: f64, r: f64, b: f64, theta: f64) -> Result<ComplexValue> {
    QuantumState::HpDiscrete { rho, sigma, sigma0 }.validate()?;
    let nd = norm_hp_discrete(rho, sigma, r);
    // assemble N * sqrt(sinh b sin th) * Q_radial * Q_angular; the psi
    // helpers carry 1/Gamma(1/2 + sigma - i rho) each, compensate twice
    let lg = log_gamma_c(c(0.5 + sigma, -rho))?;
    let pb = hp_psi_radial(rho, c(sigma, 0.0), b)?;
    let pt = hp_psi_angular(rho, c(sigma, 0.0), theta)?;
    let total = nd
        .mul(&pb)
        .mul(&ScaledComplex::new(pt * (c(0.0, 2.0 * lg.im)).exp(), 2.0 * lg.re));
    let v = total.resolve();
    Ok(ComplexValue::from_c_err(v, 1e-9 * v.norm()))
}

/// Normalization of the continuous HP states as a log-scaled phase.
fn norm_hp_continuous(rho: f64, sigma: f64, r: f64) -> ScaledComplex {
    let lg = log_gamma_c(c(0.5, sigma - rho)).expect("argument off the poles");
    // ln(sinh^2 pi rho + cosh^2 pi sigma)
    let la = 2.0 * log_sinh(PI * rho);
    let lb = 2.0 * log_cosh(PI * sigma);
    let lsum = la.max(lb) + (1.0 + (la.min(lb) - la.max(lb)).exp()).ln();
    let log_abs = 2f64.ln() - (PI * r).ln() - PI * rho - 2.0 * lg.re
        + 0.5
            * (rho.ln() + sigma.ln() + log_sinh(PI * rho)
                - log_sinh(PI * sigma)
                - lsum
                - log_cosh(PI * (rho - sigma)));
    ScaledComplex::new(c(0.0, -2.0 * lg.im).exp(), log_abs)
}

/// Normalized continuous-spectrum HP wave function.
pub fn eval_hp_continuous(rho: f64, sigma: f64, r: f64, b: f64, theta: f64) -> Result<ComplexValue> {
    QuantumState::HpContinuous { rho, sigma }.validate()?;
    let nc = norm_hp_continuous(rho, sigma, r);
    let lg = log_gamma_c(c(0.5, sigma - rho))?;
    let pb = hp_psi_radial(rho, c(0.0, sigma), b)?;
    let pt = hp_psi_angular(rho, c(0.0, sigma), theta)?;
    let total = nc
        .mul(&pb)
        .mul(&ScaledComplex::new(pt * (c(0.0, 2.0 * lg.im)).exp(), 2.0 * lg.re));
    let v = total.resolve();
    Ok(ComplexValue::from_c_err(v, 1e-9 * v.norm()))
}

// --- subgroup bases ----------------------------------------------------

/// Normalized pseudo-spherical wave function.
pub fn eval_ps(rho: f64, m: i32, r: f64, tau: f64, phi: f64) -> Result<ComplexValue> {
    QuantumState::Ps { rho, m }.validate()?;
    if tau < 0.0 {
        return Err(Error::domain(format!("tau must be >= 0, got {tau}")));
    }
    let ma = m.unsigned_abs();
    let p = legendre_p_offcut_int_order(ma, c(-0.5, rho), tau.cosh())?;
    let log_n = 0.5 * (rho.ln() + log_sinh(PI * rho) - PI.ln()) - r.ln()
        + re_lg(0.5 - ma as f64, rho);
    let v = log_n.exp() * p.c() * (c(0.0, m as f64 * phi)).exp() / (2.0 * PI).sqrt();
    Ok(ComplexValue::from_c_err(v, 1e-10 * v.norm()))
}

/// Equidistant tau1-factor.
pub fn eq_psi(rho: f64, nu: f64, parity: Parity, tau1: f64) -> Result<Complex64> {
    let sh = tau1.sinh();
    let (alpha, cc, pre) = match parity {
        Parity::Plus => (0.25, 0.5, 1.0),
        Parity::Minus => (0.75, 1.5, sh),
    };
    let f = routes::eval(
        c(alpha, -(rho - nu) / 2.0),
        c(alpha, (rho + nu) / 2.0),
        c(cc, 0.0),
        -sh * sh,
    )?;
    Ok((c(0.0, nu) * tau1.cosh().ln()).exp() * pre * f.c())
}

/// Normalization of the equidistant wave functions.
pub fn norm_eq(rho: f64, nu: f64, parity: Parity, r: f64) -> f64 {
    let (alpha, extra) = match parity {
        Parity::Plus => (0.25, -(2.0 * PI.powf(1.5)).ln()),
        Parity::Minus => (0.75, -PI.powf(1.5).ln()),
    };
    (re_lg(alpha, (rho + nu) / 2.0)
        + re_lg(alpha, (rho - nu) / 2.0)
        + 0.5 * (rho.ln() + log_sinh(PI * rho))
        + extra
        - r.ln())
    .exp()
}

/// Normalized equidistant wave function.
pub fn eval_eq(rho: f64, nu: f64, parity: Parity, r: f64, tau1: f64, tau2: f64) -> Result<ComplexValue> {
    QuantumState::Eq { rho, nu, parity }.validate()?;
    let v = norm_eq(rho, nu, parity, r)
        * eq_psi(rho, nu, parity, tau1)?
        * (c(0.0, nu * tau2)).exp()
        / (2.0 * PI).sqrt();
    Ok(ComplexValue::from_c_err(v, 1e-9 * v.norm()))
}

/// Normalized horocyclic wave function; coordinates (x, y), y > 0.
pub fn eval_ho(rho: f64, s: f64, r: f64, x: f64, y: f64) -> Result<ComplexValue> {
    QuantumState::Ho { rho, s }.validate()?;
    if !(y > 0.0) {
        return Err(Error::domain(format!("y must be > 0, got {y}")));
    }
    let k = macdonald_imag_order_scaled(rho, s.abs() * y)?;
    let log_n = 0.5 * ((2.0 * rho).ln() + log_sinh(PI * rho) - s.abs().ln()) - (PI * r).ln();
    let amp = ScaledComplex::new(k.val * (s.abs() * y).sqrt(), k.log_scale + log_n).resolve();
    let v = amp * (c(0.0, s * x)).exp() / (2.0 * PI).sqrt();
    Ok(ComplexValue::from_c_err(v, 1e-10 * v.norm()))
}

/// Evaluate any labeled state at chart coordinates (c1, c2) of its own
/// system: SCP (xi, eta), EP (a, theta), HP (b, theta), PS (tau, phi),
/// EQ (tau1, tau2), HO (x, y).
pub fn eval(state: &QuantumState, r: f64, c1: f64, c2: f64) -> Result<ComplexValue> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    match *state {
        QuantumState::Scp { rho, a } => eval_scp(rho, a, r, c1, c2),
        QuantumState::Ep { rho, mu, parity } => eval_ep(rho, mu, parity, r, c1, c2),
        QuantumState::HpDiscrete { rho, sigma, sigma0 } => {
            eval_hp_discrete(rho, sigma, sigma0, r, c1, c2)
        }
        QuantumState::HpContinuous { rho, sigma } => eval_hp_continuous(rho, sigma, r, c1, c2),
        QuantumState::Ps { rho, m } => eval_ps(rho, m, r, c1, c2),
        QuantumState::Eq { rho, nu, parity } => eval_eq(rho, nu, parity, r, c1, c2),
        QuantumState::Ho { rho, s } => eval_ho(rho, s, r, c1, c2),
    }
}
