//! Large-radius limits onto the Euclidean plane: coordinate pullbacks at
//! finite R, the flat reference solutions the wave functions converge to,
//! the predicted limit forms with their R-dependent phases, and the flat
//! interbasis coefficients between parabolic and polar bases.

use crate::bases::{self, Parity};
use crate::bases::QuantumState;
use crate::charts::ChartPoint;
use crate::cspecfun::{bessel_j_int, hyp1f1, hyp_pfq_terminating, log_gamma_c};
use crate::error::Error;
use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn re_lg(x: f64, y: f64) -> f64 {
    log_gamma_c(c(x, y)).expect("gamma argument off the poles").re
}

/// (-i)^n for integer n >= 0.
fn minus_i_pow(n: u32) -> Complex64 {
    match n % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, -1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, 1.0),
    }
}

// --- flat reference solutions ------------------------------------------

/// A solution of the Helmholtz equation on the Euclidean plane, labeled by
/// the separation system it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlatState {
    /// Plane wave exp(i(k1 x + k2 y)) / 2 pi.
    Cartesian { k1: f64, k2: f64 },
    /// sqrt(k) J_|m|(k r) e^{i m phi} / sqrt(2 pi).
    Polar { k: f64, m: i32 },
    /// Parabolic-cylinder product in coordinates x = (xi^2 - eta^2)/2,
    /// y = xi eta; beta is half the parabolic separation constant.
    Parabolic { k: f64, beta: f64, parity: Parity },
}

impl FlatState {
    pub fn k(&self) -> f64 {
        match *self {
            FlatState::Cartesian { k1, k2 } => k1.hypot(k2),
            FlatState::Polar { k, .. } | FlatState::Parabolic { k, .. } => k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::domain(format!("wave number must be positive, got {k}")));
        }
        Ok(())
    }
}

/// Evaluate a flat basis function at its own chart coordinates:
/// Cartesian (x, y), polar (r, phi), parabolic (xi, eta).
pub fn flat_eval(fs: &FlatState, c1: f64, c2: f64) -> Result<ComplexValue> {
    fs.validate()?;
    match *fs {
        FlatState::Cartesian { k1, k2 } => {
            let v = c(0.0, k1 * c1 + k2 * c2).exp() / (2.0 * PI);
            Ok(ComplexValue::from_c_err(v, 1e-15))
        }
        FlatState::Polar { k, m } => {
            if c1 < 0.0 {
                return Err(Error::domain(format!("radius must be >= 0, got {c1}")));
            }
            let j = bessel_j_int(m.unsigned_abs(), k * c1);
            let v = k.sqrt() * j * c(0.0, m as f64 * c2).exp() / (2.0 * PI).sqrt();
            Ok(ComplexValue::from_c_err(v, 1e-12 * v.norm()))
        }
        FlatState::Parabolic { k, beta, parity } => {
            let (xi, eta) = (c1, c2);
            if xi < 0.0 {
                return Err(Error::domain(format!("xi must be >= 0, got {xi}")));
            }
            let (alpha, cc) = match parity {
                Parity::Plus => (0.25, 0.5),
                Parity::Minus => (0.75, 1.5),
            };
            let ap = c(alpha, beta / (2.0 * k));
            let f1 = hyp1f1(ap, c(cc, 0.0), c(0.0, k * xi * xi))?.c();
            let f2 = hyp1f1(ap, c(cc, 0.0), c(0.0, -k * eta * eta))?.c();
            let g2 = (2.0 * re_lg(alpha, beta / (2.0 * k))).exp();
            let pre = match parity {
                Parity::Plus => g2 / (2.0 * 2f64.sqrt() * PI * PI),
                Parity::Minus => xi * eta * (2.0 * k.powi(3)).sqrt() * g2 / (PI * PI),
            };
            let v = pre * c(0.0, k * (eta * eta - xi * xi) / 2.0).exp() * f1 * f2;
            Ok(ComplexValue::from_c_err(v, 1e-10 * v.norm()))
        }
    }
}

// --- contraction families ----------------------------------------------

/// Which hyperboloid family contracts onto which flat system, with the
/// flat quantum numbers that are held fixed as R grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContractionFamily {
    /// rho ~ kR, A ~ R^2 (k2^2 - k1^2); branch 1 needs |k2| > |k1|.
    ScpToCartesian { k1: f64, k2: f64 },
    /// rho ~ kR, mu ~ R sqrt(k^2 + 2 beta / R); gamma = 1 chart.
    EpToParabolic { k: f64, beta: f64, parity: Parity },
    /// rho ~ kR, mu ~ R sqrt(k^2 + k2^2); gamma = 1/2 chart.
    EpToCartesian { k1: f64, k2: f64, parity: Parity },
    /// rho ~ kR, sigma ~ R sqrt(|k2^2 - k1^2|); discrete for |k2| > |k1|,
    /// continuous for |k1| > |k2|.
    HpToCartesian { k1: f64, k2: f64 },
    /// rho ~ kR, m fixed.
    PsToPolar { k: f64, m: i32 },
}

/// A contraction family at a concrete radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionScaling {
    pub r: f64,
    pub family: ContractionFamily,
}

impl ContractionScaling {
    /// The hyperboloid state whose quantum numbers follow this scaling.
    pub fn hyperboloid_state(&self) -> Result<QuantumState> {
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(Error::domain(format!("radius must be positive, got {}", self.r)));
        }
        let r = self.r;
        let st = match self.family {
            ContractionFamily::ScpToCartesian { k1, k2 } => QuantumState::Scp {
                rho: k1.hypot(k2) * r,
                a: r * r * (k2 * k2 - k1 * k1),
            },
            ContractionFamily::EpToParabolic { k, beta, parity } => {
                let kappa2 = k * k + 2.0 * beta / r;
                if kappa2 <= 0.0 {
                    return Err(Error::domain(format!(
                        "beta = {beta} is too negative for k = {k} at this radius"
                    )));
                }
                QuantumState::Ep { rho: k * r, mu: r * kappa2.sqrt(), parity }
            }
            ContractionFamily::EpToCartesian { k1, k2, parity } => {
                let k = k1.hypot(k2);
                QuantumState::Ep { rho: k * r, mu: r * (k * k + k2 * k2).sqrt(), parity }
            }
            ContractionFamily::HpToCartesian { k1, k2 } => {
                let k = k1.hypot(k2);
                if k2.abs() > k1.abs() {
                    let sigma = r * (k2 * k2 - k1 * k1).sqrt();
                    let mut sigma0 = sigma % 2.0;
                    if sigma0 <= 0.0 {
                        sigma0 += 2.0;
                    }
                    QuantumState::HpDiscrete { rho: k * r, sigma, sigma0 }
                } else if k1.abs() > k2.abs() {
                    QuantumState::HpContinuous {
                        rho: k * r,
                        sigma: r * (k1 * k1 - k2 * k2).sqrt(),
                    }
                } else {
                    return Err(Error::domain(
                        "|k1| = |k2| sits between the discrete and continuous branches",
                    ));
                }
            }
            ContractionFamily::PsToPolar { k, m } => QuantumState::Ps { rho: k * r, m },
        };
        st.validate()?;
        Ok(st)
    }

    /// Pull flat coordinates back to the chart point at radius R. The flat
    /// coordinates follow the target system: Cartesian (x, y), parabolic
    /// (xi, eta), polar (r, phi).
    pub fn pullback(&self, c1: f64, c2: f64) -> Result<ChartPoint> {
        let r = self.r;
        let p = match self.family {
            ContractionFamily::ScpToCartesian { .. } => {
                let (x, y) = (c1, c2);
                ChartPoint::Scp {
                    xi: (1.0 + 2f64.sqrt() * y / r).sqrt(),
                    eta: (1.0 + 2f64.sqrt() * x / r).sqrt(),
                }
            }
            ContractionFamily::EpToParabolic { .. } => {
                let (xi, eta) = (c1, c2);
                ChartPoint::Ep {
                    a: (xi / r.sqrt()).asinh(),
                    theta: (eta / r.sqrt()).asin(),
                    gamma: 1.0,
                }
            }
            ContractionFamily::EpToCartesian { .. } => {
                let (x, y) = (c1, c2);
                ChartPoint::Ep {
                    a: (y / r).asinh(),
                    theta: PI / 4.0 - x / r,
                    gamma: 0.5,
                }
            }
            ContractionFamily::HpToCartesian { .. } => {
                let (x, y) = (c1, c2);
                ChartPoint::Hp {
                    b: (2f64.sqrt() * (1.0 + x / (2.0 * r))).acosh(),
                    theta: (y / (2f64.sqrt() * r)).acos(),
                    gamma: 1.0,
                }
            }
            ContractionFamily::PsToPolar { .. } => ChartPoint::Ps { tau: c1 / r, phi: c2 },
        };
        p.validate()?;
        Ok(p)
    }

    /// The hyperboloid wave function evaluated at the pulled-back point.
    pub fn hyperboloid_value(&self, c1: f64, c2: f64) -> Result<Complex64> {
        let st = self.hyperboloid_state()?;
        let p = self.pullback(c1, c2)?;
        let (q1, q2) = p.coords();
        Ok(bases::eval(&st, self.r, q1, q2)?.c())
    }

    /// The predicted limit form at the same flat point, including the
    /// R-dependent phases. Available for the families whose limit is a
    /// closed expression; the Cartesian-limit families use
    /// `matched_plane_wave` instead.
    pub fn predicted(&self, c1: f64, c2: f64) -> Result<Complex64> {
        let r = self.r;
        match self.family {
            ContractionFamily::ScpToCartesian { k1, k2 } => {
                let (x, y) = (c1, c2);
                scp_limit_form(k1, k2, r, x, y).map(|v| c(v, 0.0))
            }
            ContractionFamily::EpToParabolic { k, beta, parity } => {
                let flat = FlatState::Parabolic { k, beta, parity };
                Ok((k / r).sqrt() * flat_eval(&flat, c1, c2)?.c())
            }
            ContractionFamily::PsToPolar { k, m } => {
                let sign = if m.unsigned_abs() % 2 == 1 { -1.0 } else { 1.0 };
                let flat = FlatState::Polar { k, m };
                Ok(sign / r.sqrt() * flat_eval(&flat, c1, c2)?.c())
            }
            _ => Err(Error::domain(
                "no closed limit form for this family; fit a plane wave instead",
            )),
        }
    }

    /// For the Cartesian-limit families: fit A e^{i k1 x} + B e^{-i k1 x}
    /// to the hyperboloid function along x at fixed y, matching value and
    /// derivative at x = 0.
    pub fn matched_plane_wave(&self, y: f64) -> Result<(Complex64, Complex64)> {
        let k1 = match self.family {
            ContractionFamily::EpToCartesian { k1, .. }
            | ContractionFamily::HpToCartesian { k1, .. } => k1,
            _ => {
                return Err(Error::domain(
                    "plane-wave matching applies to the Cartesian-limit families",
                ))
            }
        };
        let h = 1e-3;
        let v0 = self.hyperboloid_value(0.0, y)?;
        let vp = self.hyperboloid_value(h, y)?;
        let vm = self.hyperboloid_value(-h, y)?;
        let d0 = (vp - vm) / (2.0 * h);
        Ok(plane_wave_fit(v0, d0, k1))
    }
}

/// Solve A + B = value, i k1 (A - B) = derivative.
pub fn plane_wave_fit(value: Complex64, deriv: Complex64, k1: f64) -> (Complex64, Complex64) {
    let t = deriv / c(0.0, k1);
    ((value + t) / 2.0, (value - t) / 2.0)
}

pub fn plane_wave_eval(a: Complex64, b: Complex64, k1: f64, x: f64) -> Complex64 {
    a * c(0.0, k1 * x).exp() + b * c(0.0, -k1 * x).exp()
}

/// Closed large-R form of the branch-1 wave function at the pulled-back
/// point: a standing-wave product with R-dependent phase offsets.
pub fn scp_limit_form(k1: f64, k2: f64, r: f64, x: f64, y: f64) -> Result<f64> {
    let k = k1.hypot(k2);
    let (klo, khi) = (k1.abs().min(k2.abs()), k1.abs().max(k2.abs()));
    if klo == khi || klo == 0.0 {
        return Err(Error::domain("needs distinct nonzero |k1|, |k2|"));
    }
    let cdiff = (khi * khi - klo * klo).sqrt();
    // phase offsets of the standing waves; the oscillatory factor carries
    // arsinh, the exponentially matched one arcosh
    let d_lo = 2f64.sqrt() * r * klo - r * k * (k / cdiff).acosh() - PI / 4.0;
    let d_hi = 2f64.sqrt() * r * khi - r * k * (k / cdiff).asinh() - PI / 4.0;
    let amp = -k.sqrt() / (PI * r * (klo * khi * r).sqrt());
    // branch 1 (|k2| > |k1|): sin along x, cos along y; branch 2 swaps them
    if k2.abs() > k1.abs() {
        Ok(amp * (klo * x + d_lo).sin() * (khi * y + d_hi).cos())
    } else {
        Ok(amp * (klo * y + d_lo).sin() * (khi * x + d_hi).cos())
    }
}

/// The rotated chart embedding whose large-R limit is aligned with the
/// flat Cartesian axes: u1' -> x, u2' -> -y.
pub fn rotated_scp_embed(r: f64, xi: f64, eta: f64) -> (f64, f64, f64) {
    let s = (eta * eta + xi * xi).powi(2);
    let u0 = r * (s + 4.0) / (8.0 * xi * eta);
    let odd = (eta * eta - xi * xi) / (2.0 * xi * eta);
    let even = (s - 4.0) / (8.0 * xi * eta);
    let h = 2f64.sqrt() / 2.0;
    (u0, r * h * (odd + even), r * h * (odd - even))
}

/// Large-R limit of the even/odd normalization constants at fixed (k, beta).
pub fn ep_norm_limit(k: f64, beta: f64, parity: Parity, r: f64) -> f64 {
    match parity {
        Parity::Plus => {
            2f64.sqrt() / (4.0 * PI * PI)
                * (k / r).sqrt()
                * (2.0 * re_lg(0.25, beta / (2.0 * k))).exp()
        }
        Parity::Minus => {
            (2.0 * k.powi(3) * r).sqrt() / (PI * PI)
                * (2.0 * re_lg(0.75, beta / (2.0 * k))).exp()
        }
    }
}

/// Closed large-R form of the angular factor sqrt(sin theta) Q(cos theta)
/// of the discrete family at cos theta = y / (sqrt(2) R), as a value whose
/// modulus carries the e^{pi rho / 2} growth in log space.
pub fn hp_angular_limit_log(k1: f64, k2: f64, r: f64, y: f64) -> Result<(Complex64, f64)> {
    let k = k1.hypot(k2);
    if k1.abs() >= k2.abs() {
        return Err(Error::domain("discrete branch needs |k2| > |k1|"));
    }
    let cdiff = (k2 * k2 - k1 * k1).sqrt();
    let ka = k2.abs();
    // unit-modulus factors: (e / (R |k2| sqrt 2))^{i k R} and the half-power
    // of the Moebius ratio of (i k +/- cdiff)
    let ph1 = k * r * (1.0 - (r * ka * 2f64.sqrt()).ln());
    let ratio = (c(-cdiff, k) / c(cdiff, k)).ln() * (r * cdiff / 2.0);
    let v = PI.sqrt() / (2f64.powf(1.75) * (ka * r).sqrt())
        * (c(0.0, PI / 4.0 + ph1 - ka * y) + ratio).exp();
    Ok((v, PI * k * r / 2.0))
}

// --- flat interbasis coefficients --------------------------------------

/// Expansion coefficients of the flat parabolic solutions over the polar
/// basis, in closed hypergeometric form.
pub fn contract_coeff_ep_ps(m: i32, k: f64, beta: f64, parity: Parity) -> Result<ComplexValue> {
    if !(k > 0.0) || !k.is_finite() || !beta.is_finite() {
        return Err(Error::domain(format!("need k > 0 and finite beta, got ({k}, {beta})")));
    }
    let ma = m.unsigned_abs();
    let maf = ma as f64;
    match parity {
        Parity::Plus => {
            let f = hyp_pfq_terminating(
                &[c(-maf, 0.0), c(maf, 0.0), c(0.25, beta / (2.0 * k))],
                &[c(0.5, 0.0), c(0.5, 0.0)],
                c(1.0, 0.0),
            )?;
            let pre = minus_i_pow(ma) / (2.0 * (PI.powi(3) * k).sqrt())
                * (2.0 * re_lg(0.25, beta / (2.0 * k))).exp();
            let v = pre * f.c();
            Ok(ComplexValue::from_c_err(v, 1e-12 * v.norm()))
        }
        Parity::Minus => {
            if m == 0 {
                return Ok(ComplexValue::from_c_err(c(0.0, 0.0), 0.0));
            }
            let f = hyp_pfq_terminating(
                &[c(1.0 - maf, 0.0), c(1.0 + maf, 0.0), c(0.75, beta / (2.0 * k))],
                &[c(1.5, 0.0), c(1.5, 0.0)],
                c(1.0, 0.0),
            )?;
            let pre = 2.0 * m as f64 * minus_i_pow(ma) / (PI.powi(3) * k).sqrt()
                * (2.0 * re_lg(0.75, beta / (2.0 * k))).exp();
            let v = pre * f.c();
            Ok(ComplexValue::from_c_err(v, 1e-12 * v.norm()))
        }
    }
}

/// Large-R limit of the hyperboloid EP-PS expansion coefficient at fixed
/// k and beta. Differs from contract_coeff_ep_ps by the phase and scale
/// conventions the hyperboloid coefficient inherits.
pub fn ep_ps_coeff_flat_limit(m: i32, k: f64, beta: f64, parity: Parity) -> Result<Complex64> {
    let ma = m.unsigned_abs();
    let maf = ma as f64;
    Ok(match parity {
        Parity::Plus => {
            let f = hyp_pfq_terminating(
                &[c(-maf, 0.0), c(0.25, beta / (2.0 * k)), c(maf, 0.0)],
                &[c(0.5, 0.0), c(0.5, 0.0)],
                c(1.0, 0.0),
            )?
            .c();
            minus_i_pow(ma).conj() / (2.0 * PI * PI.sqrt())
                * (2.0 * re_lg(0.25, beta / (2.0 * k))).exp()
                * f
        }
        Parity::Minus => {
            let f = hyp_pfq_terminating(
                &[c(1.0 - maf, 0.0), c(0.75, beta / (2.0 * k)), c(1.0 + maf, 0.0)],
                &[c(1.5, 0.0), c(1.5, 0.0)],
                c(1.0, 0.0),
            )?
            .c();
            2.0 * m as f64 * minus_i_pow(ma).conj() / (PI * PI.sqrt())
                * (2.0 * re_lg(0.75, beta / (2.0 * k))).exp()
                * f
        }
    })
}
