//! Expansion coefficients connecting the non-subgroup bases (SCP, EP, HP)
//! to the subgroup bases (EQ, HO, PS) at fixed principal number rho, the
//! numeric synthesizers that rebuild one basis from another, and the
//! delta-type orthogonality checks for the coefficient families.
//!
//! Coefficients are pure closed forms. Delta contributions (which occur
//! only in the EP-EQ pair) are kept as explicit data and only folded in
//! analytically by the expansion evaluators.

use crate::bases::{self, Parity};
use crate::cspecfun::{
    bessel_j_sum_imag_order_scaled, hyp_pfq_terminating, hyp_pfq_z1, legendre_p_oncut,
    legendre_q_offcut_scaled, log_gamma_c, macdonald_imag_order, macdonald_imag_order_scaled,
    wilson_polynomial, LegendreParams, WilsonParams,
};
use crate::error::Error;
use crate::quad::{integrate, QuadratureSpec, Rule};
use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

const EPS_POLE: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lg(re: f64, im: f64) -> Complex64 {
    log_gamma_c(c(re, im)).expect("gamma argument off the poles")
}

/// A single Dirac-delta contribution: weight times delta(target - location).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTerm {
    pub location: f64,
    pub weight: Complex64,
}

/// Value of an interbasis coefficient: a smooth part plus (rarely) delta
/// contributions in the target label.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientValue {
    pub smooth: Complex64,
    pub delta_part: Vec<DeltaTerm>,
}

impl CoefficientValue {
    fn smooth_only(v: Complex64) -> Self {
        CoefficientValue { smooth: v, delta_part: Vec::new() }
    }
}

/// Which pair of bases a coefficient connects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTag {
    ScpEq,
    EqHo,
    ScpHo,
    EpPs,
    EpEq,
    HpEqDiscrete,
    HpEqContinuous,
}

/// A fully specified coefficient request. `source` is the constant of the
/// basis being expanded (A, mu, sigma), `target` the constant of the basis
/// expanded over (nu, s, m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientQuery {
    pub pair: PairTag,
    pub rho: f64,
    pub source: f64,
    pub target: f64,
    pub parity: Parity,
}

/// Evaluate any interbasis coefficient.
pub fn coeff(q: &CoefficientQuery) -> Result<CoefficientValue> {
    match q.pair {
        PairTag::ScpEq => coeff_scp_eq(q.rho, q.source, q.target, q.parity)
            .map(CoefficientValue::smooth_only),
        PairTag::EqHo => coeff_eq_ho(q.rho, q.source, q.target, q.parity)
            .map(CoefficientValue::smooth_only),
        PairTag::ScpHo => coeff_scp_ho(q.source, q.target).map(CoefficientValue::smooth_only),
        PairTag::EpPs => coeff_ep_ps(q.rho, q.source, q.target as i32, q.parity)
            .map(CoefficientValue::smooth_only),
        PairTag::EpEq => coeff_ep_eq(q.rho, q.source, q.target, q.parity),
        PairTag::HpEqDiscrete => coeff_hp_eq_discrete(q.rho, q.source, q.target, q.parity)
            .map(CoefficientValue::smooth_only),
        PairTag::HpEqContinuous => coeff_hp_eq_continuous(q.rho, q.source, q.target, q.parity)
            .map(CoefficientValue::smooth_only),
    }
}

/// The unit-modulus phase factor shared by the SCP-EQ and EQ-HO pairs:
/// a square root of a ratio of conjugate Gamma values.
pub fn f_phase(rho: f64, nu: f64, parity: Parity) -> Complex64 {
    let alpha = match parity {
        Parity::Plus => 0.25,
        Parity::Minus => 0.75,
    };
    let im = lg(alpha, (rho - nu) / 2.0).im - lg(alpha, (rho + nu) / 2.0).im;
    c(0.0, im).exp()
}

/// Coefficient of the SCP wave function over the equidistant basis.
pub fn coeff_scp_eq(rho: f64, a: f64, nu: f64, parity: Parity) -> Result<Complex64> {
    if a == 0.0 {
        return Err(Error::domain("separation constant must be nonzero"));
    }
    let half_a = (a.abs() / 2.0).ln();
    let beta = match parity {
        Parity::Plus => 0.75,
        Parity::Minus => 0.25,
    };
    let phase = nu * half_a - 2.0 * nu * std::f64::consts::LN_2 - 2.0 * lg(beta, nu / 2.0).im;
    let modulus = (-0.5 * half_a).exp() / (8.0 * PI).sqrt();
    Ok(modulus * c(0.0, phase).exp() * f_phase(rho, nu, parity))
}

/// Coefficient of the equidistant basis over the horocyclic basis.
pub fn coeff_eq_ho(rho: f64, nu: f64, s: f64, parity: Parity) -> Result<Complex64> {
    if s == 0.0 {
        return Err(Error::domain("s must be nonzero"));
    }
    let base = c(0.0, nu * (s.abs() / 2.0).ln()).exp() / (2.0 * (PI * s.abs()).sqrt());
    Ok(match parity {
        Parity::Plus => base * f_phase(rho, nu, Parity::Plus),
        Parity::Minus => c(0.0, s.signum()) * base * f_phase(rho, nu, Parity::Minus),
    })
}

/// Coefficient of the SCP wave function over the horocyclic basis. The
/// branch follows the sign of the separation constant; the value does not
/// depend on rho.
pub fn coeff_scp_ho(a: f64, s: f64) -> Result<Complex64> {
    if s == 0.0 || a == 0.0 {
        return Err(Error::domain("a and s must be nonzero"));
    }
    let half = a.abs() / (2.0 * s);
    let pre = c(0.0, -1.0) / (2.0 * PI.sqrt() * s);
    Ok(if a > 0.0 {
        pre * c(0.0, half).exp()
    } else {
        -pre * c(0.0, -half).exp()
    })
}

// --- EP over PS --------------------------------------------------------

/// Coefficient of the EP wave function over the pseudo-spherical basis,
/// in its terminating 4F3(1) form. Respects the reflection symmetry in m.
pub fn coeff_ep_ps(rho: f64, mu: f64, m: i32, parity: Parity) -> Result<Complex64> {
    if mu <= 0.0 {
        return Err(Error::pole(format!("mu must be positive, got {mu}")));
    }
    let ma = m.unsigned_abs() as f64;
    if parity == Parity::Minus && m == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // unit-modulus square root of conjugate Gamma ratio
    let sqrt_phase = c(0.0, -lg(0.5 - ma, rho).im).exp();
    match parity {
        Parity::Plus => {
            let log_pre = 2.0 * lg(0.25, (rho + mu) / 2.0).re + 2.0 * lg(0.25, (rho - mu) / 2.0).re
                - lg(0.0, mu).re
                - (2.0 * PI.powf(1.5)).ln();
            let f = hyp_pfq_terminating(
                &[
                    c(-ma, 0.0),
                    c(0.25, -(rho + mu) / 2.0),
                    c(0.25, -(rho - mu) / 2.0),
                    c(ma, 0.0),
                ],
                &[c(0.5, 0.0), c(0.5, -rho), c(0.5, 0.0)],
                c(1.0, 0.0),
            )?;
            Ok((log_pre - lg(0.5, -rho)).exp() * sqrt_phase * f.c())
        }
        Parity::Minus => {
            let log_pre = 2.0 * lg(0.75, (rho + mu) / 2.0).re + 2.0 * lg(0.75, (rho - mu) / 2.0).re
                - lg(0.0, mu).re
                + (2.0 / PI.powf(1.5)).ln();
            let f = hyp_pfq_terminating(
                &[
                    c(1.0 - ma, 0.0),
                    c(0.75, -(rho + mu) / 2.0),
                    c(0.75, -(rho - mu) / 2.0),
                    c(ma + 1.0, 0.0),
                ],
                &[c(1.5, 0.0), c(1.5, -rho), c(1.5, 0.0)],
                c(1.0, 0.0),
            )?;
            Ok(c(0.0, -(m as f64)) * (log_pre - lg(1.5, -rho)).exp() * sqrt_phase * f.c())
        }
    }
}

/// Same coefficient through the Wilson polynomial representation.
pub fn coeff_ep_ps_wilson(rho: f64, mu: f64, m: i32, parity: Parity) -> Result<Complex64> {
    if mu <= 0.0 {
        return Err(Error::pole(format!("mu must be positive, got {mu}")));
    }
    let ma = m.unsigned_abs();
    if parity == Parity::Minus && m == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (q, n) = match parity {
        Parity::Plus => (0.25, ma),
        Parity::Minus => (0.75, ma - 1),
    };
    let w = wilson_polynomial(WilsonParams {
        n,
        t: mu / 2.0,
        alpha: c(q, -rho / 2.0),
        beta: c(q, rho / 2.0),
        gamma: c(q, rho / 2.0),
        delta: c(q, -rho / 2.0),
    })?;
    let log_pre = 2.0 * lg(q, (rho + mu) / 2.0).re + 2.0 * lg(q, (rho - mu) / 2.0).re
        - lg(0.5 + ma as f64, rho).re
        - lg(0.0, mu).re
        - 2.0 * lg(0.5 + ma as f64, 0.0).re
        - (2.0 * PI.sqrt()).ln();
    // sign from the branch of the square-root Gamma ratio
    let pre = log_pre.exp() * if ma % 2 == 1 { -1.0 } else { 1.0 };
    Ok(match parity {
        Parity::Plus => pre * w.c(),
        Parity::Minus => c(0.0, -(m as f64)) * pre * w.c(),
    })
}

/// Same coefficient through its integral representation over the angular
/// variable, evaluated by quadrature after the substitution
/// cos(phi) = tanh(t) which removes the endpoint singularities.
pub fn coeff_ep_ps_integral(rho: f64, mu: f64, m: i32, parity: Parity) -> Result<Complex64> {
    if mu <= 0.0 {
        return Err(Error::pole(format!("mu must be positive, got {mu}")));
    }
    let ma = m.unsigned_abs() as f64;
    let sqrt_phase = c(0.0, -lg(0.5 - ma, rho).im).exp();
    // the even and odd coefficients carry a parity-dependent denominator,
    // sin(pi/4 + i chi) for even and cos(pi/4 + i chi)/i for odd, written
    // out through cosh and sinh of chi = pi (rho - mu) / 2
    let chi = PI * (rho - mu) / 2.0;
    let denom = match parity {
        Parity::Plus => c(chi.cosh(), chi.sinh()),
        Parity::Minus => c(-chi.sinh(), -chi.cosh()),
    };
    let pre = (lg(0.5, rho + mu) - c(0.0, rho * std::f64::consts::LN_2)).exp()
        / (PI.sqrt() * lg(0.0, mu).re.exp())
        * sqrt_phase
        / denom;
    let integrand = |t: f64| -> Complex64 {
        let x = t.tanh();
        let phi = x.acos();
        let p = legendre_p_oncut(LegendreParams {
            nu: c(-0.5, rho),
            mu: c(0.0, -mu),
            x,
        })
        .map(|v| v.c())
        .unwrap_or_default();
        let sech = 1.0 / t.cosh();
        let trig = match parity {
            Parity::Plus => (2.0 * ma * phi).cos(),
            Parity::Minus => (2.0 * ma * phi).sin(),
        };
        // (sin phi)^{1/2 - i rho} with sin phi = sech t
        p * trig * (c(0.5, -rho) * sech.ln()).exp()
    };
    // beyond |t| = T the factor 1 - |tanh t| loses relative precision, so
    // the remaining tails are closed analytically from the leading behavior
    // of P at the endpoints: near x = 1, P = e^{-i mu t} / Gamma(1 + i mu);
    // near x = -1 the connection formula gives two oscillatory components.
    let t_cap = 12.0;
    let iv = chunked_integral(|t| integrand(t), -t_cap, t_cap, 6.0, 1e-11)?;
    let sigma = c(0.0, -mu);
    let nu_deg = c(-0.5, rho);
    let c1 = ((nu_deg + sigma) * PI).cos();
    let c2 = ((nu_deg + sigma) * PI).sin() / (sigma * PI).sin();
    let g = (log_gamma_c(nu_deg + sigma + 1.0)? - log_gamma_c(nu_deg - sigma + 1.0)?).exp();
    let inv_gp = (-log_gamma_c(1.0 - sigma)?).exp();
    let big_a = (c1 - c2 * (sigma * PI).cos()) * inv_gp;
    let big_b = c2 * g * (-log_gamma_c(1.0 + sigma)?).exp();
    let two_pow = (c(0.5, -rho) * std::f64::consts::LN_2).exp();
    // int_T^inf e^{-(d - i(rho -/+ kappa)) t} dt for decay d and phase kappa
    let e_tail = |d: f64, kappa: f64| -> Complex64 {
        let w = c(d, -(rho - kappa));
        (-w * t_cap).exp() / w
    };
    let tails = match parity {
        Parity::Plus => {
            two_pow * (inv_gp * e_tail(0.5, mu) + big_a * e_tail(0.5, mu) + big_b * e_tail(0.5, -mu))
        }
        Parity::Minus => {
            4.0 * ma
                * two_pow
                * (inv_gp * e_tail(1.5, mu) - big_a * e_tail(1.5, mu) - big_b * e_tail(1.5, -mu))
        }
    };
    let sign = if m < 0 && parity == Parity::Minus { -1.0 } else { 1.0 };
    Ok(sign * pre * (iv + tails))
}

/// Truncated overlap of two EP-PS coefficient rows; converges to
/// (delta_{m,m'} +/- delta_{m,-m'})/2 as the cutoff grows.
pub fn ep_ps_coeff_overlap(rho: f64, m: i32, m2: i32, parity: Parity, cutoff: f64) -> Result<f64> {
    let spec = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: 1e-6,
        b: cutoff,
        rel_tol: 1e-8,
        abs_tol: 1e-12,
        max_evals: 4_000_000,
    };
    let v = integrate(
        |mu| {
            let e1 = coeff_ep_ps_wilson(rho, mu, m, parity).unwrap_or_default();
            let e2 = coeff_ep_ps_wilson(rho, mu, m2, parity).unwrap_or_default();
            e1 * e2.conj()
        },
        &spec,
    )?;
    Ok(v.re)
}

// --- EP over EQ --------------------------------------------------------

fn gamma_from_log(z: Complex64) -> Complex64 {
    log_gamma_c(z).map(|l| l.exp()).unwrap_or_default()
}

/// Coefficient of the EP wave function over the equidistant basis: four
/// 3F2(1) sums plus two delta contributions at nu = -mu and nu = +mu.
pub fn coeff_ep_eq(rho: f64, mu: f64, nu: f64, parity: Parity) -> Result<CoefficientValue> {
    if mu <= 0.0 {
        return Err(Error::pole(format!("mu must be positive, got {mu}")));
    }
    if (nu + mu).abs() < EPS_POLE || (nu - mu).abs() < EPS_POLE {
        return Err(Error::pole(format!(
            "principal-value pole at nu = -/+ mu (nu = {nu}, mu = {mu})"
        )));
    }
    let (alpha, cc) = match parity {
        Parity::Plus => (0.25, 0.5),
        Parity::Minus => (0.75, 1.5),
    };
    let a1 = c(alpha, (rho + mu) / 2.0);
    let b1 = c(alpha, (mu - rho) / 2.0);
    let gc = gamma_from_log(c(cc, 0.0));
    let a_1 = gc * gamma_from_log(c(0.0, -mu)) / (gamma_from_log(a1.conj()) * gamma_from_log(b1.conj()));
    let a_2 = gc * gamma_from_log(c(0.0, mu)) / (gamma_from_log(a1) * gamma_from_log(b1));
    let b_1 = gc * gamma_from_log(c(0.0, -rho)) / (gamma_from_log(a1.conj()) * gamma_from_log(b1));
    let b_2 = gc * gamma_from_log(c(0.0, rho)) / (gamma_from_log(a1) * gamma_from_log(b1.conj()));

    let j11 = -c(0.0, 1.0) / (nu + mu)
        * hyp_pfq_z1(
            &[a1, b1, c(0.0, (nu + mu) / 2.0)],
            &[c(1.0, mu), c(1.0, (nu + mu) / 2.0)],
        )?
        .c();
    let j12 = -c(0.0, 1.0) / (nu - mu)
        * hyp_pfq_z1(
            &[a1.conj(), b1.conj(), c(0.0, (nu - mu) / 2.0)],
            &[c(1.0, -mu), c(1.0, (nu - mu) / 2.0)],
        )?
        .c();
    let half = cc; // 1/2 or 3/2 in the rational prefactors
    let j21 = hyp_pfq_z1(
        &[a1, b1.conj(), c(alpha, (rho - nu) / 2.0)],
        &[c(1.0, rho), c(1.0 + alpha, (rho - nu) / 2.0)],
    )?
    .c()
        / c(half, rho - nu);
    let j22 = hyp_pfq_z1(
        &[a1.conj(), b1, c(alpha, -(rho + nu) / 2.0)],
        &[c(1.0, -rho), c(1.0 + alpha, -(rho + nu) / 2.0)],
    )?
    .c()
        / c(half, -(rho + nu));

    let nr = bases::norm_ep(rho, mu, parity, 1.0)
        / ((2.0 * PI).sqrt() * bases::norm_eq(rho, nu, parity, 1.0));
    let smooth = nr * (a_1 * j11 + a_2 * j12 + b_1 * j21 + b_2 * j22);
    // the delta weights carry the EQ norm at the delta location
    let nr_neg = bases::norm_ep(rho, mu, parity, 1.0)
        / ((2.0 * PI).sqrt() * bases::norm_eq(rho, -mu, parity, 1.0));
    let nr_pos = bases::norm_ep(rho, mu, parity, 1.0)
        / ((2.0 * PI).sqrt() * bases::norm_eq(rho, mu, parity, 1.0));
    Ok(CoefficientValue {
        smooth,
        delta_part: vec![
            DeltaTerm { location: -mu, weight: nr_neg * PI * a_1 },
            DeltaTerm { location: mu, weight: nr_pos * PI * a_2 },
        ],
    })
}

// --- HP over EQ --------------------------------------------------------

/// Coefficient of the discrete-spectrum HP wave function over the
/// equidistant basis.
pub fn coeff_hp_eq_discrete(rho: f64, sigma: f64, nu: f64, parity: Parity) -> Result<Complex64> {
    if sigma <= 0.0 {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    let gr = (lg(sigma / 2.0, nu / 2.0) - lg(1.0 + sigma / 2.0, -nu / 2.0)).exp();
    let amp = (0.5 * (sigma.ln() - PI.ln() - log_cosh(PI * rho))).exp();
    let arg = c(PI / 4.0 - sigma * PI / 2.0, rho * PI / 2.0);
    Ok(match parity {
        Parity::Plus => 0.5 * amp * gr * arg.sin() * f_phase(rho, nu, Parity::Plus),
        Parity::Minus => 0.5 * amp * gr * arg.cos() * f_phase(rho, nu, Parity::Minus),
    })
}

fn log_sinh(x: f64) -> f64 {
    x + (0.5 * (1.0 - (-2.0 * x).exp())).ln()
}

fn log_cosh(x: f64) -> f64 {
    x.abs() + (0.5 * (1.0 + (-2.0 * x.abs()).exp())).ln()
}

/// Coefficient of the continuous-spectrum HP wave function over the
/// equidistant basis.
pub fn coeff_hp_eq_continuous(rho: f64, sigma: f64, nu: f64, parity: Parity) -> Result<Complex64> {
    if sigma <= 0.0 {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    // ln(sinh^2 pi rho + cosh^2 pi sigma), stable for large arguments
    let la = 2.0 * log_sinh(PI * rho);
    let lb = 2.0 * log_cosh(PI * sigma);
    let lsum = la.max(lb) + (1.0 + (la.min(lb) - la.max(lb)).exp()).ln();
    let log_amp = 0.5 * (PI.ln() + sigma.ln() - log_sinh(PI * sigma))
        - 0.5 * lsum
        - 0.5 * log_cosh(PI * (rho - sigma));
    let exponent = c(-1.5 * std::f64::consts::LN_2, 0.0)
        + lg(0.0, (sigma + nu) / 2.0)
        - lg(1.0, (sigma - nu) / 2.0)
        - lg(0.5, sigma - rho)
        - lg(0.5, sigma + rho)
        + log_amp;
    let arg = c(PI / 4.0, PI * (rho - sigma) / 2.0);
    Ok(match parity {
        Parity::Plus => exponent.exp() * arg.sin() * f_phase(rho, nu, Parity::Plus),
        Parity::Minus => exponent.exp() * arg.cos() * f_phase(rho, nu, Parity::Minus),
    })
}

// --- oscillatory-tail helpers ------------------------------------------

/// Second-order stationary-phase tail of int_W^inf a(w) e^{i omega w} dw
/// for slowly varying a and linear phase, via integration by parts.
fn linear_phase_tail<F: Fn(f64) -> Complex64>(a: &F, omega: f64, w: f64) -> Complex64 {
    let h = 1e-4 * w.abs().max(1.0);
    let da = (a(w + h) - a(w - h)) / (2.0 * h);
    let iw = c(0.0, omega);
    let e = c(0.0, omega * w).exp();
    -a(w) * e / iw + da * e / (iw * iw)
}

/// Phase model for the logarithmic-phase coefficient products: theta(nu) =
/// nu ln(x) - 2 Im ln Gamma(beta + i nu / 2), with numeric derivatives.
fn log_phase(x_ln: f64, beta: f64, nu: f64) -> (f64, f64, f64) {
    let th = |v: f64| v * x_ln - 2.0 * lg(beta, v / 2.0).im;
    let h = 1e-3;
    let t0 = th(nu);
    let d1 = (th(nu + h) - th(nu - h)) / (2.0 * h);
    let d2 = (th(nu + h) - 2.0 * t0 + th(nu - h)) / (h * h);
    (t0, d1, d2)
}

/// Numeric convolution of the SCP-EQ and EQ-HO coefficient families over
/// nu, which must reproduce the closed SCP-HO coefficient. The integrand
/// has a log-divergent phase, so a finite window is integrated directly
/// and both tails are closed with two orders of integration by parts.
pub fn k_from_convolution(rho: f64, a: f64, s: f64) -> Result<Complex64> {
    let x_ln = (a.abs() / (4.0 * s.abs())).ln();
    let branch_sign = if a > 0.0 { 1.0 } else { -1.0 };
    let f = |nu: f64| -> Complex64 {
        let tp = coeff_scp_eq(rho, a, nu, Parity::Plus).unwrap();
        let tm = coeff_scp_eq(rho, a, nu, Parity::Minus).unwrap();
        let wp = coeff_eq_ho(rho, nu, s, Parity::Plus).unwrap().conj();
        let wm = coeff_eq_ho(rho, nu, s, Parity::Minus).unwrap().conj();
        tp * wp + branch_sign * tm * wm
    };
    // cutoff where the phase derivative reaches ~8 rad per unit nu
    let lam = (2.0 * x_ln.exp() * (8.0f64).exp()).max(60.0);
    let main = chunked_integral(|nu| f(nu), -lam, lam, 20.0, 1e-7)?;
    // each parity term carries its own logarithmic phase, so the tails are
    // closed per parity
    let flat = 1.0 / (4.0 * PI * (a.abs() * s.abs()).sqrt());
    let amp_p = c(flat, 0.0);
    let amp_m = -branch_sign * flat * c(0.0, s.signum());
    let tail = |beta: f64, nu: f64, right: bool| -> Complex64 {
        let (t0, d1, d2) = log_phase(x_ln, beta, nu);
        let e = c(0.0, t0).exp();
        let id1 = c(0.0, d1);
        let lead = e / id1;
        let corr = c(d2, 0.0) / (id1 * id1) * lead;
        if right { -(lead + corr) } else { lead + corr }
    };
    Ok(main
        + amp_p * (tail(0.75, lam, true) + tail(0.75, -lam, false))
        + amp_m * (tail(0.25, lam, true) + tail(0.25, -lam, false)))
}

// --- expansion synthesizers --------------------------------------------

/// Numeric truncation controls for expansion synthesis.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub cutoff: f64,
    pub rel_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { cutoff: 30.0, rel_tol: 1e-6 }
    }
}

/// Integrate over a long interval in fixed-width chunks so each chunk gets
/// its own adaptive refinement budget.
fn chunked_integral<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    width: f64,
    rel_tol: f64,
) -> Result<Complex64> {
    let mut total = Complex64::default();
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let step = (b - a) / n as f64;
    for k in 0..n {
        let lo = a + step * k as f64;
        let hi = if k + 1 == n { b } else { lo + step };
        let spec = QuadratureSpec {
            rule: Rule::AdaptivePanel,
            a: lo,
            b: hi,
            rel_tol,
            abs_tol: 1e-14,
            max_evals: 20_000_000,
        };
        total += integrate(&mut f, &spec)?.c();
    }
    Ok(total)
}

fn nu_integral<F: FnMut(f64) -> Complex64>(f: F, lam: f64, rel_tol: f64) -> Result<Complex64> {
    chunked_integral(f, -lam, lam, 10.0, rel_tol)
}

/// Rebuild the SCP wave function at an equidistant point from its
/// expansion over the equidistant basis.
pub fn expand_scp_in_eq(
    rho: f64,
    a: f64,
    r: f64,
    tau1: f64,
    tau2: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let sign = if a > 0.0 { 1.0 } else { -1.0 };
    let v = nu_integral(
        |nu| {
            let tp = coeff_scp_eq(rho, a, nu, Parity::Plus).unwrap();
            let tm = coeff_scp_eq(rho, a, nu, Parity::Minus).unwrap();
            let ep = bases::eval_eq(rho, nu, Parity::Plus, r, tau1, tau2)
                .map(|x| x.c())
                .unwrap_or_default();
            let em = bases::eval_eq(rho, nu, Parity::Minus, r, tau1, tau2)
                .map(|x| x.c())
                .unwrap_or_default();
            tp * ep + sign * tm * em
        },
        t.cutoff,
        t.rel_tol,
    )?;
    Ok(ComplexValue::from_c_err(v, t.rel_tol * v.norm()))
}

/// Rebuild the discrete HP wave function at an equidistant point.
pub fn expand_hp_in_eq_discrete(
    rho: f64,
    sigma: f64,
    r: f64,
    tau1: f64,
    tau2: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let v = nu_integral(
        |nu| {
            let ap = coeff_hp_eq_discrete(rho, sigma, nu, Parity::Plus).unwrap();
            let am = coeff_hp_eq_discrete(rho, sigma, nu, Parity::Minus).unwrap();
            let ep = bases::eval_eq(rho, nu, Parity::Plus, r, tau1, tau2)
                .map(|x| x.c())
                .unwrap_or_default();
            let em = bases::eval_eq(rho, nu, Parity::Minus, r, tau1, tau2)
                .map(|x| x.c())
                .unwrap_or_default();
            ap * ep + am * em
        },
        t.cutoff,
        t.rel_tol,
    )?;
    Ok(ComplexValue::from_c_err(v, t.rel_tol * v.norm()))
}

/// Rebuild the continuous HP wave function at an equidistant point. The
/// coefficient has a simple pole at nu = -sigma; the spectral label sits at
/// sigma + i0, so the nu-integral is the principal value plus i pi times
/// the residue there.
pub fn expand_hp_in_eq_continuous(
    rho: f64,
    sigma: f64,
    r: f64,
    tau1: f64,
    tau2: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let g = |nu: f64| -> Complex64 {
        let bp = match coeff_hp_eq_continuous(rho, sigma, nu, Parity::Plus) {
            Ok(v) => v,
            Err(_) => return Complex64::default(),
        };
        let bm = coeff_hp_eq_continuous(rho, sigma, nu, Parity::Minus).unwrap_or_default();
        let ep = bases::eval_eq(rho, nu, Parity::Plus, r, tau1, tau2)
            .map(|x| x.c())
            .unwrap_or_default();
        let em = bases::eval_eq(rho, nu, Parity::Minus, r, tau1, tau2)
            .map(|x| x.c())
            .unwrap_or_default();
        bp * ep + bm * em
    };
    let pole = -sigma;
    let lam = t.cutoff.max(sigma + 2.0);
    let d = 0.5f64.min((sigma / 2.0).max(0.1));
    let mut total = Complex64::default();
    for (a, b) in [(-lam, pole - d), (pole + d, lam)] {
        if b <= a {
            continue;
        }
        total += chunked_integral(&g, a, b, 10.0, t.rel_tol)?;
    }
    // symmetric fold cancels the singular part of the principal value
    let spec = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: 1e-7,
        b: d,
        rel_tol: t.rel_tol,
        abs_tol: 1e-14,
        max_evals: 20_000_000,
    };
    total += integrate(|u| g(pole + u) + g(pole - u), &spec)?.c();
    // residue of the simple pole, picked up with +i pi
    let h = 1e-4;
    let res = (g(pole + h) - g(pole - h)) * h / 2.0;
    total += c(0.0, PI) * res;
    Ok(ComplexValue::from_c_err(total, t.rel_tol * total.norm()))
}

/// Rebuild the EP wave function at a pseudo-spherical point from the
/// m-sum, stopping once three consecutive terms are negligible.
pub fn expand_ep_in_ps(
    rho: f64,
    mu: f64,
    parity: Parity,
    r: f64,
    tau: f64,
    phi: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let mut total = Complex64::default();
    let mut small_run = 0usize;
    let m_max = t.cutoff as i32;
    for m in 0..=m_max {
        let ms: &[i32] = if m == 0 { &[0] } else { &[m, -m] };
        let mut term = Complex64::default();
        for &mm in ms {
            let e = coeff_ep_ps(rho, mu, mm, parity)?;
            let psi = bases::eval_ps(rho, mm, r, tau, phi)?.c();
            term += e * psi;
        }
        total += term;
        if term.norm() < t.rel_tol * total.norm().max(1e-300) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(ComplexValue::from_c_err(total, t.rel_tol * total.norm()));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::domain(format!(
        "m-sum did not settle within |m| <= {m_max}"
    )))
}

/// Rebuild the EP wave function at an equidistant point: the two delta
/// contributions are added analytically and the smooth part is a
/// principal-value integral, folded symmetrically around its two poles.
pub fn expand_ep_in_eq(
    rho: f64,
    mu: f64,
    parity: Parity,
    r: f64,
    tau1: f64,
    tau2: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let sample = coeff_ep_eq(rho, mu, 0.0, parity)?;
    let mut total = Complex64::default();
    for d in &sample.delta_part {
        let psi = bases::eval_eq(rho, d.location, parity, r, tau1, tau2)?.c();
        total += d.weight * psi;
    }
    let g = |nu: f64| -> Complex64 {
        let l = match coeff_ep_eq(rho, mu, nu, parity) {
            Ok(v) => v.smooth,
            Err(_) => return Complex64::default(),
        };
        let psi = bases::eval_eq(rho, nu, parity, r, tau1, tau2)
            .map(|x| x.c())
            .unwrap_or_default();
        l * psi
    };
    let lam = t.cutoff.max(mu + 2.0);
    let d = 0.5f64.min((mu / 2.0).max(0.1));
    let mut segments: Vec<(f64, f64)> = vec![
        (-lam, -mu - d),
        (-mu + d, mu - d),
        (mu + d, lam),
    ];
    if 2.0 * d >= 2.0 * mu {
        // poles too close together for the simple segment split
        segments = vec![(-lam, -mu - d), (mu + d, lam)];
    }
    for (a, b) in segments {
        if b <= a {
            continue;
        }
        let spec = QuadratureSpec {
            rule: Rule::AdaptivePanel,
            a,
            b,
            rel_tol: t.rel_tol,
            abs_tol: 1e-14,
            max_evals: 20_000_000,
        };
        total += integrate(|nu| g(nu), &spec)?.c();
    }
    // principal-value windows around the poles: the singular parts cancel
    // in the symmetric sum g(p+u) + g(p-u)
    for p in [-mu, mu] {
        let spec = QuadratureSpec {
            rule: Rule::AdaptivePanel,
            a: 1e-7,
            b: d,
            rel_tol: t.rel_tol,
            abs_tol: 1e-14,
            max_evals: 20_000_000,
        };
        total += integrate(|u| g(p + u) + g(p - u), &spec)?.c();
    }
    Ok(ComplexValue::from_c_err(total, t.rel_tol * total.norm()))
}

/// Rebuild the SCP wave function at a horocyclic point from its expansion
/// over the horocyclic basis. The s-integral is folded to (0, inf), split
/// at s = 1/2 with the substitution s = 1/(2w) near the origin, and both
/// oscillatory tails are closed by integration by parts.
pub fn expand_scp_in_ho(
    rho: f64,
    a: f64,
    r: f64,
    x: f64,
    y: f64,
    t: &Truncation,
) -> Result<ComplexValue> {
    let g = |s: f64| -> Complex64 {
        let k = coeff_scp_ho(a, s).unwrap();
        let psi = bases::eval_ho(rho, s, r, x, y).map(|v| v.c()).unwrap_or_default();
        k * psi
    };
    // direct part: |s| in [1/2, s_hi] with exponential decay from the
    // MacDonald factor
    let s_hi = (60.0 / y).max(4.0);
    let mut total = Complex64::default();
    for (lo, hi) in [(0.5, s_hi), (-s_hi, -0.5)] {
        let spec = QuadratureSpec {
            rule: Rule::AdaptivePanel,
            a: lo,
            b: hi,
            rel_tol: t.rel_tol,
            abs_tol: 1e-16,
            max_evals: 20_000_000,
        };
        total += integrate(|s| g(s), &spec)?.c();
    }
    // near-origin part via s = sgn/(2w), linear phase |A| w from the
    // coefficient; amplitude decays like 1/w
    let w_cap = (2000.0f64 / a.abs()).max(400.0);
    for sgn in [1.0f64, -1.0] {
        // coefficient phase exp(+/- i|A|/(2s)) becomes exp(i omega w)
        let omega = if a > 0.0 { a.abs() * sgn } else { -a.abs() * sgn };
        let full = move |w: f64| -> Complex64 {
            let s = sgn / (2.0 * w);
            let k = coeff_scp_ho(a, s).unwrap();
            let psi = bases::eval_ho(rho, s, r, x, y).map(|v| v.c()).unwrap_or_default();
            k * psi / (2.0 * w * w)
        };
        let amp = move |w: f64| full(w) * c(0.0, -omega * w).exp();
        let spec = QuadratureSpec {
            rule: Rule::AdaptivePanel,
            a: 1.0,
            b: w_cap,
            rel_tol: t.rel_tol,
            abs_tol: 1e-16,
            max_evals: 20_000_000,
        };
        total += integrate(full, &spec)?.c();
        total += linear_phase_tail(&amp, omega, w_cap);
    }
    Ok(ComplexValue::from_c_err(total, t.rel_tol * total.norm()))
}

// --- integral identities -----------------------------------------------

/// Left side of the Bessel-MacDonald convolution identity: the oscillatory
/// integral over the horocyclic label at x = 0, folded to (0, inf).
pub fn bessel_macdonald_identity_lhs(rho: f64, abs_a: f64, y: f64) -> Result<Complex64> {
    // int ds/s K(y|s|) e^{i|A|/2s} = 2i int_0^inf K(y/(2w)) sin(|A| w) dw/w
    let w_lo = y / 80.0;
    let w_hi = 400.0 / abs_a;
    let amp = |w: f64| -> Complex64 {
        let k = macdonald_imag_order(rho, y / (2.0 * w)).map(|v| v.c()).unwrap_or_default();
        k / w
    };
    let spec = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: w_lo,
        b: w_hi,
        rel_tol: 1e-8,
        abs_tol: 1e-16,
        max_evals: 20_000_000,
    };
    let main = integrate(|w| amp(w) * (abs_a * w).sin(), &spec)?.c();
    // sin = (e^{i|A|w} - e^{-i|A|w}) / 2i
    let tail = (linear_phase_tail(&amp, abs_a, w_hi) - linear_phase_tail(&amp, -abs_a, w_hi))
        / c(0.0, 2.0);
    Ok(c(0.0, 2.0) * (main + tail))
}

/// Right side of the same identity.
pub fn bessel_macdonald_identity_rhs(rho: f64, abs_a: f64, y: f64) -> Result<Complex64> {
    let z = (abs_a * y).sqrt();
    let j = bessel_j_sum_imag_order_scaled(rho, z)?;
    let k = macdonald_imag_order_scaled(rho, z)?;
    Ok(c(0.0, PI / (PI * rho / 2.0).cosh()) * j.mul(&k).resolve())
}

/// Left side of the shifted identity with y = 1 and x = sinh(alpha).
pub fn bessel_macdonald_shifted_lhs(rho: f64, abs_a: f64, alpha: f64) -> Result<Complex64> {
    // 2i int_0^inf K(s) sin(|A|/(2s) + s sinh alpha) ds / s, split at s = 1
    let sh = alpha.sinh();
    let spec_outer = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: 1.0,
        b: 50.0,
        rel_tol: 1e-9,
        abs_tol: 1e-16,
        max_evals: 20_000_000,
    };
    let outer = integrate(
        |s| {
            let k = macdonald_imag_order(rho, s).map(|v| v.c()).unwrap_or_default();
            k * (abs_a / (2.0 * s) + s * sh).sin() / s
        },
        &spec_outer,
    )?
    .c();
    // inner region via s = 1/(2w): linear phase |A| w plus slow sh/(2w)
    let w_hi = 400.0 / abs_a;
    let amp_p = move |w: f64| -> Complex64 {
        let k = macdonald_imag_order(rho, 1.0 / (2.0 * w)).map(|v| v.c()).unwrap_or_default();
        k * c(0.0, sh / (2.0 * w)).exp() / w
    };
    let amp_m = move |w: f64| -> Complex64 {
        let k = macdonald_imag_order(rho, 1.0 / (2.0 * w)).map(|v| v.c()).unwrap_or_default();
        k * c(0.0, -sh / (2.0 * w)).exp() / w
    };
    let spec_inner = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: 0.5,
        b: w_hi,
        rel_tol: 1e-8,
        abs_tol: 1e-16,
        max_evals: 20_000_000,
    };
    let inner = integrate(
        |w| {
            let k = macdonald_imag_order(rho, 1.0 / (2.0 * w)).map(|v| v.c()).unwrap_or_default();
            k * (abs_a * w + sh / (2.0 * w)).sin() / w
        },
        &spec_inner,
    )?
    .c();
    let tail = (linear_phase_tail(&amp_p, abs_a, w_hi) - linear_phase_tail(&amp_m, -abs_a, w_hi))
        / c(0.0, 2.0);
    Ok(c(0.0, 2.0) * (outer + inner + tail))
}

/// Right side of the shifted identity.
pub fn bessel_macdonald_shifted_rhs(rho: f64, abs_a: f64, alpha: f64) -> Result<Complex64> {
    let j = bessel_j_sum_imag_order_scaled(rho, (abs_a * alpha.exp()).sqrt())?;
    let k = macdonald_imag_order_scaled(rho, (abs_a * (-alpha).exp()).sqrt())?;
    Ok(c(0.0, PI / (PI * rho / 2.0).cosh()) * j.mul(&k).resolve())
}

// --- delta-type orthogonality ------------------------------------------

/// Smeared delta test for the SCP-HO coefficient family: the coefficient
/// product integrated over s against a Gaussian in the other label must
/// reproduce the Gaussian. The Gaussian smearing over A' is performed
/// analytically (its Fourier transform), the s-integral numerically.
pub fn smeared_scp_ho_delta(a: f64, a0: f64, sigma: f64) -> Result<(f64, f64)> {
    // after s -> 1/(2t) the integrand is a damped cosine
    let t_hi = 10.0 / sigma;
    let spec = QuadratureSpec {
        rule: Rule::AdaptivePanel,
        a: 1e-9,
        b: t_hi,
        rel_tol: 1e-10,
        abs_tol: 1e-16,
        max_evals: 4_000_000,
    };
    let v = integrate(
        |t| {
            let s = 1.0 / (2.0 * t);
            let k = coeff_scp_ho(a, s).unwrap();
            // Gaussian-smeared conjugate partner at center a0
            let partner = c(0.0, 1.0) / (2.0 * PI.sqrt() * s)
                * c(0.0, -a0 / (2.0 * s)).exp()
                * (-sigma * sigma / (8.0 * s * s)).exp();
            // both signs of s contribute equally to the real part
            (k * partner) / (2.0 * t * t) * 2.0
        },
        &spec,
    )?;
    let expected = (-(a - a0) * (a - a0) / (2.0 * sigma * sigma)).exp()
        / (sigma * (2.0 * PI).sqrt());
    Ok((v.c().re, expected))
}

/// Closed form of the weighted Legendre-Q integral used by the HP-EQ
/// coefficient derivation, for degree nu, order mu and weight exponent
/// alpha - 1 on sinh.
pub fn legendre_q_weighted_integral_closed(
    nu: Complex64,
    mu: Complex64,
    alpha: Complex64,
) -> Result<Complex64> {
    let l = (c(0.0, 1.0) * mu * PI
        - (2.0 - mu) * std::f64::consts::LN_2)
        + log_gamma_c((alpha - mu) / 2.0)?
        + log_gamma_c((alpha + mu) / 2.0)?
        + log_gamma_c(nu / 2.0 + (mu + 1.0) / 2.0)?
        + log_gamma_c(nu / 2.0 - alpha / 2.0 + 1.0)?
        - log_gamma_c(nu / 2.0 - mu / 2.0 + 1.0)?
        - log_gamma_c(nu / 2.0 + (alpha + 1.0) / 2.0)?;
    Ok(l.exp())
}

/// The same integral by quadrature, using the scaled off-cut Legendre Q.
pub fn legendre_q_weighted_integral_numeric(
    nu: Complex64,
    mu: Complex64,
    alpha: Complex64,
) -> Result<Complex64> {
    // below t0 the argument cosh(t) - 1 ~ t^2/2 drops under f64 resolution
    // and Q comes back with a garbage phase, so the integral over (0, t0)
    // is closed from the local behavior Q ~ cm (t/2)^{-mu} + cp (t/2)^{mu},
    // with the two amplitudes fitted to Q at t0 and 2 t0
    let t0 = 1e-3;
    let qv = |t: f64| -> Result<Complex64> {
        legendre_q_offcut_scaled(LegendreParams { nu, mu, x: t.cosh() }).map(|v| v.resolve())
    };
    let (q1, q2) = (qv(t0)?, qv(2.0 * t0)?);
    let basis = |t: f64, s: f64| ((s * mu) * (t / 2.0).ln()).exp();
    let (b1m, b1p) = (basis(t0, -1.0), basis(t0, 1.0));
    let (b2m, b2p) = (basis(2.0 * t0, -1.0), basis(2.0 * t0, 1.0));
    let det = b1m * b2p - b1p * b2m;
    let cm = (q1 * b2p - q2 * b1p) / det;
    let cp = (b1m * q2 - b2m * q1) / det;
    let pw = |z: Complex64| (z * t0.ln()).exp();
    let ln2 = std::f64::consts::LN_2;
    let small = cm * (mu * ln2).exp() * pw(alpha - mu) / (alpha - mu)
        + cp * (-mu * ln2).exp() * pw(alpha + mu) / (alpha + mu);
    let spec = QuadratureSpec {
        rule: Rule::DoubleExponential,
        a: t0,
        b: 45.0,
        rel_tol: 1e-10,
        abs_tol: 1e-16,
        max_evals: 4_000_000,
    };
    let main = integrate(
        |t| {
            let q = legendre_q_offcut_scaled(LegendreParams { nu, mu, x: t.cosh() })
                .map(|v| v.resolve())
                .unwrap_or_default();
            q * ((alpha - 1.0) * t.sinh().ln()).exp()
        },
        &spec,
    )?;
    Ok(small + main.c())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scp_eq_coefficient_modulus_and_product() {
        let t = coeff_scp_eq(1.0, 2.0, 0.7, Parity::Plus).unwrap();
        assert!((t.norm() - 1.0 / (8.0 * PI).sqrt()).abs() < 1e-14);
        // product identity against a second separation constant
        let t2 = coeff_scp_eq(1.0, 0.6, 0.7, Parity::Plus).unwrap();
        let want = c(0.0, 0.7 * (2.0f64.ln() - 0.6f64.ln())).exp()
            / (4.0 * PI * (2.0f64 * 0.6).sqrt());
        let got = t * t2.conj();
        assert!((got - want).norm() < 1e-12 * want.norm(), "{got} vs {want}");
        // evenness in the separation constant
        let tm = coeff_scp_eq(1.0, -2.0, 0.7, Parity::Plus).unwrap();
        assert_eq!(t, tm);
    }

    #[test]
    fn eq_ho_coefficient_modulus_and_phase() {
        let w = coeff_eq_ho(1.0, 0.4, 1.7, Parity::Plus).unwrap();
        assert!((w.norm() - 1.0 / (2.0 * (PI * 1.7f64).sqrt())).abs() < 1e-14);
        let wm = coeff_eq_ho(1.0, 0.4, 1.7, Parity::Minus).unwrap();
        let wm_neg = coeff_eq_ho(1.0, 0.4, -1.7, Parity::Minus).unwrap();
        assert!((wm + wm_neg).norm() < 1e-14, "odd branch phase must flip");
        let f = f_phase(2.0, -1.3, Parity::Plus);
        assert!((f.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scp_ho_closed_form() {
        let k = coeff_scp_ho(2.0 * PI, 1.0).unwrap();
        let want = c(0.0, 1.0) / (2.0 * PI.sqrt());
        assert!((k - want).norm() < 1e-12);
        assert!((k.norm() - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-14);
        // branch 2 is the conjugate of branch 1
        let k2 = coeff_scp_ho(-2.0 * PI, 1.0).unwrap();
        assert_eq!(k2, k.conj());
    }

    #[test]
    fn scp_ho_matches_convolution() {
        for &(a, s) in &[(1.0, 1.0), (2.0, 0.7), (0.8, -1.3), (-1.5, 0.9), (3.0, 2.0)] {
            let direct = coeff_scp_ho(a, s).unwrap();
            let conv = k_from_convolution(1.0, a, s).unwrap();
            assert!(
                (direct - conv).norm() < 1e-4 * direct.norm(),
                "(A={a}, s={s}): {direct} vs {conv}"
            );
        }
    }

    #[test]
    fn ep_ps_symmetry_and_zero() {
        assert_eq!(coeff_ep_ps(1.0, 1.5, 0, Parity::Minus).unwrap(), c(0.0, 0.0));
        for m in 1..=6 {
            let p = coeff_ep_ps(1.0, 1.5, m, Parity::Plus).unwrap();
            let pm = coeff_ep_ps(1.0, 1.5, -m, Parity::Plus).unwrap();
            assert!((p - pm).norm() < 1e-12 * p.norm().max(1e-30));
            let q = coeff_ep_ps(1.0, 1.5, m, Parity::Minus).unwrap();
            let qm = coeff_ep_ps(1.0, 1.5, -m, Parity::Minus).unwrap();
            assert!((q + qm).norm() < 1e-12 * q.norm().max(1e-30));
        }
    }

    #[test]
    fn ep_ps_wilson_form_agreement() {
        for m in 0..=8 {
            for parity in [Parity::Plus, Parity::Minus] {
                let a = coeff_ep_ps(1.0, 1.5, m, parity).unwrap();
                let b = coeff_ep_ps_wilson(1.0, 1.5, m, parity).unwrap();
                assert!(
                    (a - b).norm() <= 1e-10 * a.norm().max(1e-30),
                    "m={m} {parity:?}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn ep_ps_integral_form_agreement() {
        let a = coeff_ep_ps(1.0, 1.5, 2, Parity::Plus).unwrap();
        let b = coeff_ep_ps_integral(1.0, 1.5, 2, Parity::Plus).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm(), "{a} vs {b}");
        let a = coeff_ep_ps(1.0, 1.5, 3, Parity::Minus).unwrap();
        let b = coeff_ep_ps_integral(1.0, 1.5, 3, Parity::Minus).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm(), "{a} vs {b}");
    }

    #[test]
    fn ep_ps_overlap_is_half_kronecker() {
        let same = ep_ps_coeff_overlap(1.0, 2, 2, Parity::Plus, 60.0).unwrap();
        assert!((same - 0.5).abs() < 1e-4, "{same}");
        let diff = ep_ps_coeff_overlap(1.0, 2, 3, Parity::Plus, 60.0).unwrap();
        assert!(diff.abs() < 1e-4, "{diff}");
    }

    #[test]
    fn ep_eq_delta_and_pole_structure() {
        let v = coeff_ep_eq(1.0, 1.0, 0.5, Parity::Plus).unwrap();
        assert_eq!(v.delta_part.len(), 2);
        assert_eq!(v.delta_part[0].location, -1.0);
        assert_eq!(v.delta_part[1].location, 1.0);
        assert!(v.smooth.norm().is_finite());
        // smooth part finite at nu = 0
        let v0 = coeff_ep_eq(1.0, 1.0, 0.0, Parity::Plus).unwrap();
        assert!(v0.smooth.norm().is_finite());
        // principal-value window rejected
        assert!(coeff_ep_eq(1.0, 1.0, 1.0 + 1e-9, Parity::Plus).is_err());
    }

    #[test]
    fn hp_eq_modulus_even_in_nu() {
        for parity in [Parity::Plus, Parity::Minus] {
            let a = coeff_hp_eq_discrete(1.0, 1.0, 0.8, parity).unwrap();
            let b = coeff_hp_eq_discrete(1.0, 1.0, -0.8, parity).unwrap();
            assert!((a.norm() - b.norm()).abs() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn hp_eq_continuous_branch_ratio() {
        let (rho, sig, nu) = (1.0, 0.6, 0.3);
        let bp = coeff_hp_eq_continuous(rho, sig, nu, Parity::Plus).unwrap();
        let bm = coeff_hp_eq_continuous(rho, sig, nu, Parity::Minus).unwrap();
        let arg = c(PI / 4.0, PI * (rho - sig) / 2.0);
        let want = arg.cos() / arg.sin() * f_phase(rho, nu, Parity::Minus)
            / f_phase(rho, nu, Parity::Plus);
        let got = bm / bp;
        assert!((got - want).norm() < 1e-12 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn hp_eq_quadrature_oracle() {
        // weighted Legendre-Q integral: numeric vs closed Gamma form
        let cases = [
            (c(0.5, 0.0), c(0.0, -1.0), c(1.5, -0.4)),
            (c(0.5, 0.0), c(0.0, -1.0), c(1.5, 0.9)),
            (c(1.2, 0.0), c(0.0, -0.7), c(1.5, -0.3)),
            (c(0.7, 0.0), c(0.0, -1.3), c(0.5, -0.6)),
            (c(1.5, 0.8), c(0.0, -1.0), c(1.5, -0.4)),
        ];
        for (nd, mu, alpha) in cases {
            let nu = nd - 0.5;
            let closed = legendre_q_weighted_integral_closed(nu, mu, alpha).unwrap();
            let numeric = legendre_q_weighted_integral_numeric(nu, mu, alpha).unwrap();
            assert!(
                (closed - numeric).norm() < 1e-6 * closed.norm(),
                "nu={nu} alpha={alpha}: {closed} vs {numeric}"
            );
        }
    }

    #[test]
    fn bessel_macdonald_identity() {
        let lhs = bessel_macdonald_identity_lhs(1.0, 1.0, 1.0).unwrap();
        let rhs = bessel_macdonald_identity_rhs(1.0, 1.0, 1.0).unwrap();
        assert!((lhs - rhs).norm() < 1e-5 * rhs.norm(), "{lhs} vs {rhs}");
    }

    #[test]
    fn bessel_macdonald_shifted_identity() {
        let lhs = bessel_macdonald_shifted_lhs(1.0, 1.0, 0.5).unwrap();
        let rhs = bessel_macdonald_shifted_rhs(1.0, 1.0, 0.5).unwrap();
        assert!((lhs - rhs).norm() < 1e-5 * rhs.norm(), "{lhs} vs {rhs}");
        // at alpha = 0 the shifted identity reduces to the plain one
        let l0 = bessel_macdonald_shifted_lhs(1.0, 1.0, 0.0).unwrap();
        let p0 = bessel_macdonald_identity_lhs(1.0, 1.0, 1.0).unwrap();
        assert!((l0 - p0).norm() < 1e-5 * p0.norm(), "{l0} vs {p0}");
    }

    #[test]
    fn smeared_scp_ho_delta_peak() {
        let (got, want) = smeared_scp_ho_delta(1.5, 1.5, 0.2).unwrap();
        assert!((got - want).abs() < 0.02 * want, "{got} vs {want}");
        let (off, want_off) = smeared_scp_ho_delta(1.9, 1.5, 0.2).unwrap();
        assert!((off - want_off).abs() < 0.02 * want, "{off} vs {want_off}");
    }

    #[test]
    fn expansion_rebuilds_scp_from_eq() {
        let (rho, a, r) = (1.0, 1.0, 1.0);
        let (tau1, tau2) = (0.4, 0.3);
        let p = crate::charts::cross_map(
            &crate::charts::ChartPoint::Eq { tau1, tau2 },
            crate::charts::Chart::Scp,
            r,
        )
        .unwrap();
        let (xi, eta) = p.coords();
        let direct = bases::eval_scp(rho, a, r, xi, eta).unwrap().c();
        let synth = expand_scp_in_eq(rho, a, r, tau1, tau2, &Truncation::default())
            .unwrap()
            .c();
        assert!((direct - synth).norm() < 1e-4 * direct.norm(), "{direct} vs {synth}");
    }

    #[test]
    fn expansion_rebuilds_hp_discrete_from_eq() {
        let (rho, sig, r) = (1.0, 1.0, 1.0);
        let hp = crate::charts::ChartPoint::Hp { b: 1.0, theta: 1.2, gamma: 1.0 };
        let eq = crate::charts::cross_map(&hp, crate::charts::Chart::Eq, r).unwrap();
        let (tau1, tau2) = eq.coords();
        let direct = bases::eval_hp_discrete(rho, sig, 1.0, r, 1.0, 1.2).unwrap().c();
        let synth = expand_hp_in_eq_discrete(rho, sig, r, tau1, tau2, &Truncation::default())
            .unwrap()
            .c();
        assert!((direct - synth).norm() < 1e-3 * direct.norm(), "{direct} vs {synth}");
    }

    #[test]
    fn expansion_rebuilds_hp_continuous_from_eq() {
        let (rho, sig, r) = (1.0, 1.0, 1.0);
        let hp = crate::charts::ChartPoint::Hp { b: 0.8, theta: 2.0, gamma: 1.0 };
        let eq = crate::charts::cross_map(&hp, crate::charts::Chart::Eq, r).unwrap();
        let (tau1, tau2) = eq.coords();
        let direct = bases::eval_hp_continuous(rho, sig, r, 0.8, 2.0).unwrap().c();
        let synth = expand_hp_in_eq_continuous(rho, sig, r, tau1, tau2, &Truncation::default())
            .unwrap()
            .c();
        assert!((direct - synth).norm() < 1e-3 * direct.norm(), "{direct} vs {synth}");
    }

    #[test]
    fn expansion_rebuilds_ep_from_ps() {
        let (rho, mu, r) = (1.0, 1.2, 1.0);
        let ep = crate::charts::ChartPoint::Ep { a: 0.8, theta: 0.5, gamma: 1.0 };
        let ps = crate::charts::cross_map(&ep, crate::charts::Chart::Ps, r).unwrap();
        let (tau, phi) = ps.coords();
        for parity in [Parity::Plus, Parity::Minus] {
            let direct = bases::eval_ep(rho, mu, parity, r, 0.8, 0.5).unwrap().c();
            let tr = Truncation { cutoff: 24.0, rel_tol: 1e-7 };
            let synth = expand_ep_in_ps(rho, mu, parity, r, tau, phi, &tr).unwrap().c();
            assert!(
                (direct - synth).norm() < 1e-4 * direct.norm(),
                "{parity:?}: {direct} vs {synth}"
            );
        }
    }

    #[test]
    fn expansion_rebuilds_ep_from_eq() {
        let (rho, mu, r) = (1.0, 1.2, 1.0);
        let ep = crate::charts::ChartPoint::Ep { a: 0.7, theta: 0.4, gamma: 1.0 };
        let eq = crate::charts::cross_map(&ep, crate::charts::Chart::Eq, r).unwrap();
        let (tau1, tau2) = eq.coords();
        for parity in [Parity::Plus, Parity::Minus] {
            let direct = bases::eval_ep(rho, mu, parity, r, 0.7, 0.4).unwrap().c();
            let tr = Truncation { cutoff: 40.0, rel_tol: 1e-7 };
            let synth = expand_ep_in_eq(rho, mu, parity, r, tau1, tau2, &tr).unwrap().c();
            assert!(
                (direct - synth).norm() < 1e-3 * direct.norm(),
                "{parity:?}: {direct} vs {synth}"
            );
        }
    }

    #[test]
    fn expansion_rebuilds_scp_from_ho() {
        let (rho, a, r) = (1.0, 1.0, 1.0);
        let ho = crate::charts::ChartPoint::Ho { x: 0.3, y: 1.0 };
        let scp = crate::charts::cross_map(&ho, crate::charts::Chart::Scp, r).unwrap();
        let (xi, eta) = scp.coords();
        let direct = bases::eval_scp(rho, a, r, xi, eta).unwrap().c();
        let synth = expand_scp_in_ho(rho, a, r, 0.3, 1.0, &Truncation::default())
            .unwrap()
            .c();
        assert!((direct - synth).norm() < 1e-4 * direct.norm(), "{direct} vs {synth}");
    }

    #[test]
    fn coefficient_query_dispatch() {
        let q = CoefficientQuery {
            pair: PairTag::ScpHo,
            rho: 0.5,
            source: 2.0 * PI,
            target: 1.0,
            parity: Parity::Plus,
        };
        let v1 = coeff(&q).unwrap();
        let v2 = coeff(&CoefficientQuery { rho: 5.0, ..q }).unwrap();
        // rho-independence of the SCP-HO family, bitwise
        assert_eq!(v1.smooth, v2.smooth);
        assert!(v1.delta_part.is_empty());
    }
}
