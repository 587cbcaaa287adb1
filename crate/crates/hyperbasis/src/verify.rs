//! Identity-certification harness. Groups the library's exact identities
//! into named suites, runs each check numerically, and reports pass/fail
//! with the measured differences. Reports serialize as line-delimited JSON.

use crate::bases::{self, Parity, QuantumState};
use crate::charts::{lb_apply_fd, ChartPoint};
use crate::contraction::{
    self, ContractionFamily, ContractionScaling, FlatState,
};
use crate::cspecfun::{
    bessel_j_int, gamma, hyp1f1, legendre_p_offcut, log_gamma_c, routes, LegendreParams,
};
use crate::error::Error;
use crate::interbasis;
use crate::quad::{integrate, QuadratureSpec};
use crate::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Outcome of a single identity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub evaluations: u64,
    pub wall_time: f64,
}

impl VerificationReport {
    /// Build a report from the two sides of an identity. For a rhs that is
    /// numerically zero the absolute difference is held to the tolerance
    /// instead of the relative one.
    pub fn from_sides(
        id: &str,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        evaluations: u64,
        wall_time: f64,
    ) -> Self {
        let abs_diff = (lhs - rhs).norm();
        let scale = rhs.norm();
        let rel_diff = if scale > 1e-300 { abs_diff / scale } else { f64::INFINITY };
        let pass = if scale <= 1e-14 {
            abs_diff <= tolerance
        } else {
            rel_diff <= tolerance
        };
        VerificationReport {
            id: id.to_string(),
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_diff,
            rel_diff,
            tolerance,
            pass,
            evaluations,
            wall_time,
        }
    }

    fn failed(id: &str, tolerance: f64, wall_time: f64) -> Self {
        VerificationReport {
            id: id.to_string(),
            lhs_re: f64::NAN,
            lhs_im: f64::NAN,
            rhs_re: f64::NAN,
            rhs_im: f64::NAN,
            abs_diff: f64::NAN,
            rel_diff: f64::NAN,
            tolerance,
            pass: false,
            evaluations: 0,
            wall_time,
        }
    }
}

/// Suite-wide knobs. `cases` scales the randomized families; `slow`
/// additionally runs the expensive synthesis checks.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub seed: u64,
    pub cases: usize,
    pub slow: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: 17, cases: 60, slow: false }
    }
}

/// All suite names accepted by run_suite.
pub const SUITE_IDS: [&str; 7] = [
    "specfun-consistency",
    "pde-residuals",
    "asymptotics",
    "ep-norm",
    "hp-orth",
    "interbasis-identities",
    "contraction-rates",
];

/// A completed suite: its name, the seed it ran with, and the reports
/// sorted by identity id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteRun {
    pub suite: String,
    pub seed: u64,
    pub reports: Vec<VerificationReport>,
}

impl SuiteRun {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    /// Keep only reports whose id contains the given substring.
    pub fn retain_only(&mut self, needle: &str) {
        self.reports.retain(|r| r.id.contains(needle));
    }

    /// One header line with the suite name and seed, then one JSON object
    /// per report.
    pub fn write_jsonl<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "{}",
            serde_json::json!({ "suite": self.suite, "seed": self.seed })
        )?;
        for r in &self.reports {
            writeln!(w, "{}", serde_json::to_string(r).expect("report serializes"))?;
        }
        Ok(())
    }
}

/// Parallelism cap from the HYPERBASIS_THREADS environment variable;
/// unset or unparsable means the rayon default.
pub fn thread_cap() -> usize {
    std::env::var("HYPERBASIS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(0)
}

type CheckFn = Box<dyn Fn() -> Result<(Complex64, Complex64, f64, u64)> + Send + Sync>;

struct Check {
    id: &'static str,
    f: CheckFn,
}

fn check<F>(id: &'static str, f: F) -> Check
where
    F: Fn() -> Result<(Complex64, Complex64, f64, u64)> + Send + Sync + 'static,
{
    Check { id, f: Box::new(f) }
}

fn run_checks(checks: Vec<Check>) -> Vec<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap())
        .build()
        .expect("thread pool");
    let mut reports: Vec<VerificationReport> = pool.install(|| {
        checks
            .par_iter()
            .map(|chk| {
                let t0 = Instant::now();
                match (chk.f)() {
                    Ok((lhs, rhs, tol, evals)) => VerificationReport::from_sides(
                        chk.id,
                        lhs,
                        rhs,
                        tol,
                        evals,
                        t0.elapsed().as_secs_f64(),
                    ),
                    Err(_) => VerificationReport::failed(chk.id, 0.0, t0.elapsed().as_secs_f64()),
                }
            })
            .collect()
    });
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

/// Run one named suite.
pub fn run_suite(suite: &str, params: &SuiteParams) -> Result<SuiteRun> {
    let checks = match suite {
        "specfun-consistency" => specfun_checks(params),
        "pde-residuals" => pde_checks(),
        "asymptotics" => asymptotics_checks(),
        "ep-norm" => ep_norm_checks(),
        "hp-orth" => hp_orth_checks(),
        "interbasis-identities" => interbasis_checks(params),
        "contraction-rates" => contraction_checks(),
        other => {
            return Err(Error::domain(format!(
                "unknown suite {other:?}; expected one of {SUITE_IDS:?}"
            )))
        }
    };
    Ok(SuiteRun {
        suite: suite.to_string(),
        seed: params.seed,
        reports: run_checks(checks),
    })
}

/// Run several suites in order.
pub fn run_selected(suites: &[&str], params: &SuiteParams) -> Result<Vec<SuiteRun>> {
    suites.iter().map(|s| run_suite(s, params)).collect()
}

/// Compare a smeared delta-family identity: the convolved kernel value
/// against the Gaussian it should reproduce. Tolerance grows with the
/// smearing width (bias is quadratic in sigma).
pub fn smeared_delta_check(id: &str, smeared: f64, expected: f64, sigma: f64) -> VerificationReport {
    let tol = (0.75 * sigma * sigma).max(1e-3);
    VerificationReport::from_sides(id, c(smeared, 0.0), c(expected, 0.0), tol, 1, 0.0)
}

// --- suite bodies -------------------------------------------------------

/// Track the worst-disagreeing pair across a randomized family.
struct Worst {
    lhs: Complex64,
    rhs: Complex64,
    rel: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { lhs: c(0.0, 0.0), rhs: c(0.0, 0.0), rel: -1.0 }
    }

    fn feed(&mut self, lhs: Complex64, rhs: Complex64) {
        let rel = (lhs - rhs).norm() / rhs.norm().max(1e-300);
        if rel > self.rel {
            *self = Worst { lhs, rhs, rel };
        }
    }

    fn done(self, tol: f64, evals: u64) -> (Complex64, Complex64, f64, u64) {
        (self.lhs, self.rhs, tol, evals)
    }
}

fn specfun_checks(params: &SuiteParams) -> Vec<Check> {
    let n = params.cases.max(1);
    let seed = params.seed;
    vec![
        check("gamma-duplication", move |
        | {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
            let mut w = Worst::new();
            for _ in 0..n {
                let z = c(rng.gen_range(0.1..2.5), rng.gen_range(-3.0..3.0));
                let lhs = gamma(2.0 * z)?;
                let rhs = (c(2.0, 0.0) * z - 1.0).expf(2.0) / PI.sqrt()
                    * gamma(z)?
                    * gamma(z + 0.5)?;
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-9, n as u64))
        }),
        check("hyp2f1-route-agreement", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
            let mut w = Worst::new();
            for _ in 0..n {
                let a = c(rng.gen_range(-1.0..1.5), rng.gen_range(-1.5..1.5));
                let b = c(rng.gen_range(-1.0..1.5), rng.gen_range(-1.5..1.5));
                let cc = c(rng.gen_range(0.3..2.5), rng.gen_range(-1.0..1.0));
                let z = rng.gen_range(-0.45..0.45);
                let lhs = routes::series(a, b, cc, z)?.c();
                let rhs = routes::via_pfaff(a, b, cc, z)?.c();
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-9, n as u64))
        }),
        check("hyp1f1-kummer-transform", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
            let mut w = Worst::new();
            for _ in 0..n {
                let a = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let cc = c(rng.gen_range(0.3..2.5), rng.gen_range(-1.0..1.0));
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let lhs = hyp1f1(a, cc, z)?.c();
                let rhs = z.exp() * hyp1f1(cc - a, cc, -z)?.c();
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-9, n as u64))
        }),
        check("legendre-degree-recurrence", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
            let mut w = Worst::new();
            for _ in 0..n {
                let nu = c(-0.5, rng.gen_range(0.2..2.0));
                let mu = c(0.0, rng.gen_range(-1.5..1.5));
                let x = rng.gen_range(1.05..3.0);
                let p = |nv: Complex64| legendre_p_offcut(LegendreParams { nu: nv, mu, x });
                let lhs = (nu - mu + 1.0) * p(nu + 1.0)?.c();
                let rhs = (2.0 * nu + 1.0) * x * p(nu)?.c() - (nu + mu) * p(nu - 1.0)?.c();
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-9, n as u64))
        }),
        check("bessel-j-recurrence", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
            // scale the residual by the term magnitudes, since either side
            // can sit at a node of the oscillation
            let mut worst = 0.0f64;
            for _ in 0..n {
                let m = rng.gen_range(1u32..10);
                let x = rng.gen_range(0.1..20.0);
                let (jl, jr) = (bessel_j_int(m - 1, x), bessel_j_int(m + 1, x));
                let jm = 2.0 * m as f64 / x * bessel_j_int(m, x);
                let scale = jl.abs() + jr.abs() + jm.abs();
                worst = worst.max((jl + jr - jm).abs() / scale);
            }
            Ok((c(worst, 0.0), c(0.0, 0.0), 1e-8, n as u64))
        }),
    ]
}

fn pde_case(name: &'static str, state: QuantumState, p: ChartPoint) -> Vec<Check> {
    let r = 1.0;
    let lam = (state.rho() * state.rho() + 0.25) / (r * r);
    let residual = move |h: f64| -> Result<(f64, f64)> {
        let f = |c1: f64, c2: f64| Ok(bases::eval(&state, r, c1, c2)?.c());
        let (c1, c2) = p.coords();
        let psi = bases::eval(&state, r, c1, c2)?.c();
        let lap = lb_apply_fd(&f, &p, r, h)?;
        Ok(((lap + lam * psi).norm(), lam * psi.norm()))
    };
    vec![
        check_named(name, "ratio", move || {
            let (r1, _) = residual(1e-2)?;
            let (r2, _) = residual(5e-3)?;
            Ok((c(r1 / r2, 0.0), c(4.0, 0.0), 0.25, 10))
        }),
        check_named(name, "small", move || {
            let (res, scale) = residual(1e-3)?;
            Ok((c(res / scale, 0.0), c(0.0, 0.0), 1e-4, 5))
        }),
    ]
}

// the two-part ids for the residual checks are produced from a static
// table so the closures can stay 'static
fn check_named<F>(base: &'static str, kind: &'static str, f: F) -> Check
where
    F: Fn() -> Result<(Complex64, Complex64, f64, u64)> + Send + Sync + 'static,
{
    const NAMES: [(&str, &str, &str); 12] = [
        ("scp", "ratio", "pde-scp-ratio"),
        ("scp", "small", "pde-scp-small"),
        ("ep", "ratio", "pde-ep-ratio"),
        ("ep", "small", "pde-ep-small"),
        ("hp", "ratio", "pde-hp-ratio"),
        ("hp", "small", "pde-hp-small"),
        ("ps", "ratio", "pde-ps-ratio"),
        ("ps", "small", "pde-ps-small"),
        ("eq", "ratio", "pde-eq-ratio"),
        ("eq", "small", "pde-eq-small"),
        ("ho", "ratio", "pde-ho-ratio"),
        ("ho", "small", "pde-ho-small"),
    ];
    let id = NAMES
        .iter()
        .find(|(b, k, _)| *b == base && *k == kind)
        .map(|(_, _, id)| *id)
        .expect("known residual id");
    check(id, f)
}

fn pde_checks() -> Vec<Check> {
    let rho = 1.0;
    let mut out = Vec::new();
    out.extend(pde_case(
        "scp",
        QuantumState::Scp { rho, a: 1.0 },
        ChartPoint::Scp { xi: 0.9, eta: 1.4 },
    ));
    out.extend(pde_case(
        "ep",
        QuantumState::Ep { rho, mu: 1.2, parity: Parity::Plus },
        ChartPoint::Ep { a: 0.8, theta: 0.5, gamma: 1.0 },
    ));
    out.extend(pde_case(
        "hp",
        QuantumState::HpDiscrete { rho, sigma: 1.0, sigma0: 1.0 },
        ChartPoint::Hp { b: 1.1, theta: 1.9, gamma: 1.0 },
    ));
    out.extend(pde_case(
        "ps",
        QuantumState::Ps { rho, m: 2 },
        ChartPoint::Ps { tau: 1.0, phi: 0.7 },
    ));
    out.extend(pde_case(
        "eq",
        QuantumState::Eq { rho, nu: 0.8, parity: Parity::Plus },
        ChartPoint::Eq { tau1: 0.6, tau2: -0.4 },
    ));
    out.extend(pde_case(
        "ho",
        QuantumState::Ho { rho, s: -1.3 },
        ChartPoint::Ho { x: 0.8, y: 1.1 },
    ));
    out
}

fn asymptotics_checks() -> Vec<Check> {
    vec![
        check("scp-radial-small", || {
            let (rho, q, eta) = (1.0, 1.0, 1e-3);
            let lhs = bases::scp_radial_factor(rho, q, eta)?.resolve();
            let rhs = c(bases::scp_radial_small(rho, q, eta), 0.0);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("scp-radial-large", || {
            let (rho, q, eta): (f64, f64, f64) = (1.0, 1.0, 40.0);
            let lhs = bases::scp_radial_factor(rho, q, eta)?.resolve();
            let rhs = c(bases::scp_radial_large(q, eta), 0.0);
            let corr = (4.0 * rho * rho + 1.0) / (8.0 * q * eta);
            Ok((lhs, rhs, 1.5 * corr, 2))
        }),
        check("scp-angular-small", || {
            let (rho, q, xi) = (1.0, 1.0, 1e-3);
            let lhs = bases::scp_angular_factor(rho, q, xi)?.resolve();
            let rhs = c(bases::scp_angular_small(rho, q, xi), 0.0);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("ep-a-large", || {
            let (rho, mu, a) = (1.0, 1.0, 6.0);
            let lhs = bases::ep_psi_a(rho, mu, Parity::Plus, a)?;
            let rhs = bases::ep_psi_a_large(rho, mu, Parity::Plus, a);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("ep-theta-edge", || {
            let (rho, mu, th) = (1.0, 1.0, PI / 2.0 - 1e-3);
            let lhs = bases::ep_psi_theta(rho, mu, Parity::Minus, th)?;
            let rhs = bases::ep_psi_theta_edge(rho, mu, Parity::Minus, th);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("hp-radial-small", || {
            let (rho, sig, b) = (1.0, c(1.0, 0.0), 1e-3);
            let lhs = bases::hp_psi_radial(rho, sig, b)?.resolve();
            let rhs = bases::hp_radial_small(rho, sig, b);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("hp-angular-small", || {
            let (rho, sig, th) = (1.0, c(1.0, 0.0), 1e-3);
            let lhs = bases::hp_psi_angular(rho, sig, th)?;
            let rhs = bases::hp_angular_small(rho, sig, th);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("hp-angular-near-pi", || {
            let (rho, sig, th) = (1.0, c(0.0, 0.9), PI - 1e-3);
            let lhs = bases::hp_psi_angular(rho, sig, th)?;
            let rhs = bases::hp_angular_near_pi(rho, sig, th);
            Ok((lhs, rhs, 1e-3, 2))
        }),
        check("hp-radial-wave", || {
            let (rho, sig, b) = (1.0, 1.0, 10.0);
            let lhs = bases::hp_psi_radial(rho, c(0.0, sig), b)?.resolve();
            let rhs = bases::hp_radial_large_continuous(rho, sig, b);
            Ok((lhs, rhs, 1e-3, 2))
        }),
    ]
}

fn ep_norm_direct(rho: f64, mu: f64, parity: Parity, r: f64) -> f64 {
    let g2 = |alpha: f64, t: f64| -> f64 {
        (2.0 * log_gamma_c(c(alpha, t)).expect("off poles").re).exp()
    };
    let base = (rho * mu * (PI * rho).sinh() * (PI * mu).sinh()).sqrt() / (PI.powi(3) * r);
    match parity {
        Parity::Plus => {
            base / (2.0 * 2f64.sqrt()) * g2(0.25, (rho + mu) / 2.0) * g2(0.25, (rho - mu) / 2.0)
        }
        Parity::Minus => {
            2f64.sqrt() * base * g2(0.75, (rho + mu) / 2.0) * g2(0.75, (rho - mu) / 2.0)
        }
    }
}

fn ep_norm_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("ep-norm-plus-closed-form", || {
        let mut w = Worst::new();
        for &(rho, mu) in &[(1.0, 1.2), (2.0, 0.7), (0.6, 2.4)] {
            let lhs = c(bases::norm_ep(rho, mu, Parity::Plus, 1.0), 0.0);
            let rhs = c(ep_norm_direct(rho, mu, Parity::Plus, 1.0), 0.0);
            w.feed(lhs, rhs);
        }
        Ok(w.done(1e-10, 3))
    }));
    out.push(check("ep-norm-minus-closed-form", || {
        let mut w = Worst::new();
        for &(rho, mu) in &[(1.0, 1.2), (2.0, 0.7), (0.6, 2.4)] {
            let lhs = c(bases::norm_ep(rho, mu, Parity::Minus, 1.0), 0.0);
            let rhs = c(ep_norm_direct(rho, mu, Parity::Minus, 1.0), 0.0);
            w.feed(lhs, rhs);
        }
        Ok(w.done(1e-10, 3))
    }));
    for (id, parity) in [
        ("ep-norm-plus-flat-limit", Parity::Plus),
        ("ep-norm-minus-flat-limit", Parity::Minus),
    ] {
        out.push(check(id, move || {
            let (k, beta, r): (f64, f64, f64) = (1.0, 0.6, 1e4);
            let kappa = (k * k + 2.0 * beta / r).sqrt();
            let lhs = c(bases::norm_ep(k * r, kappa * r, parity, r), 0.0);
            let rhs = c(contraction::ep_norm_limit(k, beta, parity, r), 0.0);
            Ok((lhs, rhs, 1e-2, 2))
        }));
    }
    out
}

/// Closed boundary form of the radial ladder overlap at equal spectral
/// parameter: the Wronskian limit whose vanishing for even-integer ladder
/// spacing expresses the discrete orthogonality.
fn hp_radial_boundary_closed(rho: f64, s1: f64, s2: f64) -> Complex64 {
    let g = |a: f64, b: f64| log_gamma_c(c(a, b)).expect("off poles");
    let t1 = (-g(0.5 + s1, -rho) - g(0.5 + s2, rho)).exp();
    let t2 = (-g(0.5 + s1, rho) - g(0.5 + s2, -rho)).exp();
    c(0.0, PI) * (2.0 * PI * rho).exp() / (2.0 * (PI * rho).sinh()) * (t1 - t2)
}

/// Closed boundary form of the angular ladder overlap at equal spectral
/// parameter.
fn hp_angular_boundary_closed(rho: f64, s1: f64, s2: f64) -> Complex64 {
    let g = |a: f64, b: f64| log_gamma_c(c(a, b)).expect("off poles");
    let sp = |x: Complex64| (PI * x).sin();
    let num1 = 1.0 + sp(c(s1, -rho)) * sp(c(s2, rho));
    let num2 = c((PI * rho).cosh().powi(2) + (PI * s1).sin() * (PI * s2).sin(), 0.0);
    let t1 = num1 * (-g(0.5 + s1, rho) - g(0.5 + s2, -rho)).exp();
    let t2 = num2 * (-g(0.5 + s1, -rho) - g(0.5 + s2, rho)).exp();
    c(0.0, PI) / (2.0 * (PI * rho).sinh()) * (t1 - t2)
}

fn hp_orth_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (id, s1, s2) in [
        ("hp-radial-orth-ladder-1-3", 1.0, 3.0),
        ("hp-radial-orth-ladder-07-27", 0.7, 2.7),
    ] {
        out.push(check(id, move || {
            let rho = 1.0;
            let bmax = 30.0 / (s1 + s2) + 4.0;
            let spec = QuadratureSpec::tanh_sinh(0.0, bmax, 1e-9);
            let iv = integrate(
                |b| {
                    let p1 = bases::hp_psi_radial(rho, c(s1, 0.0), b)
                        .map(|v| v.resolve())
                        .unwrap_or_default();
                    let p2 = bases::hp_psi_radial(rho, c(s2, 0.0), b)
                        .map(|v| v.resolve())
                        .unwrap_or_default();
                    p1 * p2.conj()
                },
                &spec,
            )?;
            let lhs = -(s1 * s1 - s2 * s2) * iv.c();
            let rhs = hp_radial_boundary_closed(rho, s1, s2);
            Ok((lhs, rhs, 1e-6, 4000))
        }));
    }
    for (id, s1, s2) in [
        ("hp-angular-orth-ladder-1-3", 1.0, 3.0),
        ("hp-angular-orth-ladder-07-27", 0.7, 2.7),
    ] {
        out.push(check(id, move || {
            let rho = 1.0;
            let spec = QuadratureSpec::tanh_sinh(0.0, PI, 1e-9);
            let iv = integrate(
                |th| {
                    let p1 = bases::hp_psi_angular(rho, c(s1, 0.0), th).unwrap_or_default();
                    let p2 = bases::hp_psi_angular(rho, c(s2, 0.0), th).unwrap_or_default();
                    p1 * p2.conj()
                },
                &spec,
            )?;
            let lhs = (s2 * s2 - s1 * s1) * iv.c();
            let rhs = hp_angular_boundary_closed(rho, s1, s2);
            Ok((lhs, rhs, 1e-6, 4000))
        }));
    }
    out
}

fn interbasis_checks(params: &SuiteParams) -> Vec<Check> {
    let slow = params.slow;
    let mut out = vec![
        check("kernel-vs-convolution", || {
            let mut w = Worst::new();
            for &(a, s) in &[(1.0, 1.0), (2.0, 0.7), (0.8, -1.3), (-1.5, 0.9), (3.0, 2.0)] {
                let lhs = interbasis::k_from_convolution(1.0, a, s)?;
                let rhs = interbasis::coeff_scp_ho(a, s)?;
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-4, 5))
        }),
        check("bessel-macdonald-product", || {
            let lhs = interbasis::bessel_macdonald_identity_lhs(1.0, 1.0, 1.0)?;
            let rhs = interbasis::bessel_macdonald_identity_rhs(1.0, 1.0, 1.0)?;
            Ok((lhs, rhs, 1e-5, 100_000))
        }),
        check("bessel-macdonald-shifted", || {
            let lhs = interbasis::bessel_macdonald_shifted_lhs(1.0, 1.0, 0.5)?;
            let rhs = interbasis::bessel_macdonald_shifted_rhs(1.0, 1.0, 0.5)?;
            Ok((lhs, rhs, 1e-5, 100_000))
        }),
        check("ep-ps-closed-vs-wilson", || {
            let mut w = Worst::new();
            for m in 0..=6 {
                for parity in [Parity::Plus, Parity::Minus] {
                    if m == 0 && parity == Parity::Minus {
                        continue;
                    }
                    let lhs = interbasis::coeff_ep_ps_wilson(1.0, 1.5, m, parity)?;
                    let rhs = interbasis::coeff_ep_ps(1.0, 1.5, m, parity)?;
                    w.feed(lhs, rhs);
                }
            }
            Ok(w.done(1e-9, 13))
        }),
        check("ep-ps-closed-vs-integral", || {
            let mut w = Worst::new();
            for (m, parity) in [(2, Parity::Plus), (3, Parity::Minus)] {
                let lhs = interbasis::coeff_ep_ps_integral(1.0, 1.5, m, parity)?;
                let rhs = interbasis::coeff_ep_ps(1.0, 1.5, m, parity)?;
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-6, 2))
        }),
        check("ep-ps-unitarity-diagonal", || {
            let v = interbasis::ep_ps_coeff_overlap(1.0, 2, 2, Parity::Plus, 60.0)?;
            Ok((c(v, 0.0), c(0.5, 0.0), 1e-4, 1000))
        }),
        check("ep-ps-unitarity-offdiag", || {
            let v = interbasis::ep_ps_coeff_overlap(1.0, 2, 3, Parity::Plus, 60.0)?;
            Ok((c(v, 0.0), c(0.0, 0.0), 1e-4, 1000))
        }),
        check("kernel-smeared-delta", || {
            let (got, want) = interbasis::smeared_scp_ho_delta(1.0, 1.0, 0.2)?;
            Ok((c(got, 0.0), c(want, 0.0), 0.02, 2000))
        }),
        check("kernel-smeared-mismatch", || {
            let (got, peak) = interbasis::smeared_scp_ho_delta(1.0, 1.0, 0.2)?;
            let (off, _) = interbasis::smeared_scp_ho_delta(2.0, 1.0, 0.2)?;
            let _ = got;
            Ok((c(off / peak, 0.0), c(0.0, 0.0), 1e-3, 4000))
        }),
    ];
    if slow {
        out.push(check("expansion-ep-from-ps", || {
            let (rho, mu, r) = (1.0, 1.2, 1.0);
            let ep = ChartPoint::Ep { a: 0.8, theta: 0.5, gamma: 1.0 };
            let ps = crate::charts::cross_map(&ep, crate::charts::Chart::Ps, r)?;
            let (tau, phi) = ps.coords();
            let tr = interbasis::Truncation { cutoff: 24.0, rel_tol: 1e-7 };
            let lhs = interbasis::expand_ep_in_ps(rho, mu, Parity::Plus, r, tau, phi, &tr)?.c();
            let rhs = bases::eval_ep(rho, mu, Parity::Plus, r, 0.8, 0.5)?.c();
            Ok((lhs, rhs, 1e-4, 48))
        }));
    }
    out
}

fn contraction_checks() -> Vec<Check> {
    fn rate(family: ContractionFamily, pt: (f64, f64), r1: f64) -> Result<Complex64> {
        let dev = |r: f64| -> Result<f64> {
            let cs = ContractionScaling { r, family };
            let v = cs.hyperboloid_value(pt.0, pt.1)?;
            let p = cs.predicted(pt.0, pt.1)?;
            Ok((v - p).norm() / p.norm())
        };
        Ok(c(dev(r1)? / dev(2.0 * r1)?, 0.0))
    }
    vec![
        check("rate-scp-cartesian", || {
            let lhs = rate(
                ContractionFamily::ScpToCartesian { k1: 0.3, k2: 0.8 },
                (0.5, 0.2),
                300.0,
            )?;
            Ok((lhs, c(2.0, 0.0), 0.2, 4))
        }),
        check("rate-ep-parabolic", || {
            let lhs = rate(
                ContractionFamily::EpToParabolic { k: 1.0, beta: 0.6, parity: Parity::Plus },
                (0.8, 0.5),
                400.0,
            )?;
            Ok((lhs, c(2.0, 0.0), 0.2, 4))
        }),
        check("rate-ps-polar", || {
            // the polar pullback is even in 1/R, so this family converges
            // at second order
            let lhs = rate(
                ContractionFamily::PsToPolar { k: 1.0, m: 2 },
                (0.9, 0.7),
                300.0,
            )?;
            Ok((lhs, c(4.0, 0.0), 0.25, 4))
        }),
        check("coefficient-flat-limit", || {
            let (k, beta, r): (f64, f64, f64) = (1.0, 0.4, 1e4);
            let kappa = (k * k + 2.0 * beta / r).sqrt();
            let mut w = Worst::new();
            for (m, parity) in [(2, Parity::Plus), (3, Parity::Minus)] {
                let lhs = interbasis::coeff_ep_ps(k * r, kappa * r, m, parity)?;
                let rhs = contraction::ep_ps_coeff_flat_limit(m, k, beta, parity)?;
                w.feed(lhs, rhs);
            }
            Ok(w.done(1e-2, 2))
        }),
        check("flat-parabolic-over-polar", || {
            let (k, beta): (f64, f64) = (1.0, 0.4);
            let (xi, eta): (f64, f64) = (0.9, 0.3);
            let x = (xi * xi - eta * eta) / 2.0;
            let y = xi * eta;
            let (rr, phi) = (x.hypot(y), y.atan2(x));
            let mut sum = c(0.0, 0.0);
            for m in -15..=15 {
                let wgt = contraction::contract_coeff_ep_ps(m, k, beta, Parity::Plus)?.c();
                let p = contraction::flat_eval(&FlatState::Polar { k, m }, rr, phi)?.c();
                sum += wgt * p;
            }
            let direct =
                contraction::flat_eval(&FlatState::Parabolic { k, beta, parity: Parity::Plus }, xi, eta)?
                    .c();
            Ok((sum, direct, 1e-4, 31))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_logic() {
        let r = VerificationReport::from_sides("x", c(1.0, 0.0), c(1.0 + 1e-8, 0.0), 1e-6, 1, 0.0);
        assert!(r.pass);
        let r = VerificationReport::from_sides("x", c(1.0, 0.0), c(1.1, 0.0), 1e-6, 1, 0.0);
        assert!(!r.pass);
        // near-zero rhs switches to the absolute criterion
        let r = VerificationReport::from_sides("x", c(1e-9, 0.0), c(0.0, 0.0), 1e-6, 1, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn jsonl_round_trip() {
        let run = SuiteRun {
            suite: "demo".into(),
            seed: 3,
            reports: vec![VerificationReport::from_sides(
                "a",
                c(1.0, 2.0),
                c(1.0, 2.0),
                1e-9,
                7,
                0.01,
            )],
        };
        let mut buf = Vec::new();
        run.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let head: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(head["suite"], "demo");
        assert_eq!(head["seed"], 3);
        let rec: VerificationReport = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(rec.id, "a");
        assert!(rec.pass);
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
    }

    #[test]
    fn determinism_same_seed() {
        let p = SuiteParams { cases: 10, ..Default::default() };
        let a = run_suite("specfun-consistency", &p).unwrap();
        let b = run_suite("specfun-consistency", &p).unwrap();
        for (x, y) in a.reports.iter().zip(&b.reports) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.lhs_re.to_bits(), y.lhs_re.to_bits());
            assert_eq!(x.rel_diff.to_bits(), y.rel_diff.to_bits());
        }
    }

    #[test]
    fn specfun_suite_passes() {
        let p = SuiteParams { cases: 40, ..Default::default() };
        let run = run_suite("specfun-consistency", &p).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn pde_suite_passes() {
        let run = run_suite("pde-residuals", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn asymptotics_suite_passes() {
        let run = run_suite("asymptotics", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn ep_norm_suite_passes() {
        let run = run_suite("ep-norm", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn hp_orth_suite_passes() {
        let run = run_suite("hp-orth", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn contraction_suite_passes() {
        let run = run_suite("contraction-rates", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn interbasis_suite_passes() {
        let run = run_suite("interbasis-identities", &SuiteParams::default()).unwrap();
        assert!(run.all_pass(), "{:?}", run.reports.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn only_filtering() {
        let mut run = run_suite("asymptotics", &SuiteParams::default()).unwrap();
        run.retain_only("scp");
        assert!(!run.reports.is_empty());
        assert!(run.reports.iter().all(|r| r.id.contains("scp")));
    }

    #[test]
    fn smeared_check_tolerance_scales() {
        let r = smeared_delta_check("s", 1.0, 1.01, 0.2);
        assert!(r.pass);
        assert!((r.tolerance - 0.03).abs() < 1e-12);
    }
}
