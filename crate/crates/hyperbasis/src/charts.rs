//! Coordinate charts on the upper sheet of the two-sheeted hyperboloid
//! u0^2 - u1^2 - u2^2 = R^2, u0 >= R: embeddings into the ambient
//! pseudo-Euclidean space, inverse and cross-chart maps, measure densities,
//! and a finite-difference Laplace-Beltrami operator for residual tests.

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

/// Chart tags. Ps, Eq, Ho are the subgroup systems (pseudo-spherical,
/// equidistant, horocyclic); Scp, Ep, Hp the parabolic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Ps,
    Eq,
    Ho,
    Scp,
    Ep,
    Hp,
}

/// A point in one of the six charts. The `gamma` field on Ep/Hp is the
/// family parameter of those coordinate systems (1 unless stated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint {
    /// tau >= 0, phi in [0, 2 pi)
    Ps { tau: f64, phi: f64 },
    /// tau1, tau2 real
    Eq { tau1: f64, tau2: f64 },
    /// x real, y > 0
    Ho { x: f64, y: f64 },
    /// xi, eta > 0
    Scp { xi: f64, eta: f64 },
    /// a >= 0, theta in (-pi/2, pi/2)
    Ep { a: f64, theta: f64, gamma: f64 },
    /// b > 0, theta in (0, pi)
    Hp { b: f64, theta: f64, gamma: f64 },
}

/// Cartesian coordinates in the ambient space, same units as R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
}

impl AmbientPoint {
    /// Residual of the hyperboloid constraint, relative to R^2.
    pub fn constraint_residual(&self, r: f64) -> f64 {
        (self.u0 * self.u0 - self.u1 * self.u1 - self.u2 * self.u2 - r * r) / (r * r)
    }
}

impl ChartPoint {
    pub fn chart(&self) -> Chart {
        match self {
            ChartPoint::Ps { .. } => Chart::Ps,
            ChartPoint::Eq { .. } => Chart::Eq,
            ChartPoint::Ho { .. } => Chart::Ho,
            ChartPoint::Scp { .. } => Chart::Scp,
            ChartPoint::Ep { .. } => Chart::Ep,
            ChartPoint::Hp { .. } => Chart::Hp,
        }
    }

    pub fn coords(&self) -> (f64, f64) {
        match *self {
            ChartPoint::Ps { tau, phi } => (tau, phi),
            ChartPoint::Eq { tau1, tau2 } => (tau1, tau2),
            ChartPoint::Ho { x, y } => (x, y),
            ChartPoint::Scp { xi, eta } => (xi, eta),
            ChartPoint::Ep { a, theta, .. } => (a, theta),
            ChartPoint::Hp { b, theta, .. } => (b, theta),
        }
    }

    /// Rebuild the point with different coordinate values, keeping the
    /// chart tag and gamma.
    pub fn with_coords(&self, c1: f64, c2: f64) -> ChartPoint {
        match *self {
            ChartPoint::Ps { .. } => ChartPoint::Ps { tau: c1, phi: c2 },
            ChartPoint::Eq { .. } => ChartPoint::Eq { tau1: c1, tau2: c2 },
            ChartPoint::Ho { .. } => ChartPoint::Ho { x: c1, y: c2 },
            ChartPoint::Scp { .. } => ChartPoint::Scp { xi: c1, eta: c2 },
            ChartPoint::Ep { gamma, .. } => ChartPoint::Ep {
                a: c1,
                theta: c2,
                gamma,
            },
            ChartPoint::Hp { gamma, .. } => ChartPoint::Hp {
                b: c1,
                theta: c2,
                gamma,
            },
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            ChartPoint::Ep { gamma, .. } | ChartPoint::Hp { gamma, .. } => gamma,
            _ => 1.0,
        }
    }

    /// Check the open-chart invariants.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::domain(msg));
        match *self {
            ChartPoint::Ps { tau, phi } => {
                if !(tau >= 0.0) || !tau.is_finite() {
                    return bad(format!("pseudo-spherical tau must be >= 0, got {tau}"));
                }
                if !phi.is_finite() {
                    return bad(format!("pseudo-spherical phi must be finite, got {phi}"));
                }
            }
            ChartPoint::Eq { tau1, tau2 } => {
                if !tau1.is_finite() || !tau2.is_finite() {
                    return bad(format!("equidistant coordinates must be finite, got ({tau1}, {tau2})"));
                }
            }
            ChartPoint::Ho { x, y } => {
                if !x.is_finite() || !(y > 0.0) || !y.is_finite() {
                    return bad(format!("horocyclic needs finite x and y > 0, got ({x}, {y})"));
                }
            }
            ChartPoint::Scp { xi, eta } => {
                if !(xi > 0.0) || !(eta > 0.0) || !xi.is_finite() || !eta.is_finite() {
                    return bad(format!("semi-circular parabolic needs xi, eta > 0, got ({xi}, {eta})"));
                }
            }
            ChartPoint::Ep { a, theta, gamma } => {
                if !(gamma > 0.0) {
                    return bad(format!("gamma must be positive, got {gamma}"));
                }
                if !(a >= 0.0) || !a.is_finite() {
                    return bad(format!("elliptic parabolic needs a >= 0, got {a}"));
                }
                if !(theta.abs() < std::f64::consts::FRAC_PI_2) {
                    return bad(format!(
                        "elliptic parabolic needs |theta| < pi/2, got {theta}"
                    ));
                }
            }
            ChartPoint::Hp { b, theta, gamma } => {
                if !(gamma > 0.0) {
                    return bad(format!("gamma must be positive, got {gamma}"));
                }
                if !(b > 0.0) || !b.is_finite() {
                    return bad(format!("hyperbolic parabolic needs b > 0, got {b}"));
                }
                if !(theta > 0.0 && theta < std::f64::consts::PI) {
                    return bad(format!(
                        "hyperbolic parabolic needs theta in (0, pi), got {theta}"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Embed a chart point into the ambient space.
pub fn to_ambient(p: &ChartPoint, r: f64) -> Result<AmbientPoint> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    p.validate()?;
    let u = match *p {
        ChartPoint::Ps { tau, phi } => AmbientPoint {
            u0: r * tau.cosh(),
            u1: r * tau.sinh() * phi.cos(),
            u2: r * tau.sinh() * phi.sin(),
        },
        ChartPoint::Eq { tau1, tau2 } => AmbientPoint {
            u0: r * tau1.cosh() * tau2.cosh(),
            u1: r * tau1.cosh() * tau2.sinh(),
            u2: r * tau1.sinh(),
        },
        ChartPoint::Ho { x, y } => AmbientPoint {
            u0: r * (x * x + y * y + 1.0) / (2.0 * y),
            u1: r * (x * x + y * y - 1.0) / (2.0 * y),
            u2: r * x / y,
        },
        ChartPoint::Scp { xi, eta } => {
            let s = xi * xi + eta * eta;
            AmbientPoint {
                u0: r * (s * s + 4.0) / (8.0 * xi * eta),
                u1: r * (s * s - 4.0) / (8.0 * xi * eta),
                u2: r * (xi * xi - eta * eta) / (2.0 * xi * eta),
            }
        }
        ChartPoint::Ep { a, theta, gamma } => {
            let q = a.cosh().powi(2) - theta.sin().powi(2);
            let d = 2.0 * theta.cos() * a.cosh() * gamma.sqrt();
            AmbientPoint {
                u0: r * (q + gamma) / d,
                u1: r * (q - gamma) / d,
                u2: r * theta.tan() * a.tanh(),
            }
        }
        ChartPoint::Hp { b, theta, gamma } => {
            let q = b.cosh().powi(2) - theta.sin().powi(2);
            let d = 2.0 * theta.sin() * b.sinh() * gamma.sqrt();
            if d <= 0.0 {
                return Err(Error::domain(
                    "hyperbolic parabolic embedding needs sin(theta) sinh(b) > 0".to_string(),
                ));
            }
            AmbientPoint {
                u0: r * (q + gamma) / d,
                u1: r * (q - gamma) / d,
                u2: r * theta.tan().recip() * b.tanh().recip(),
            }
        }
    };
    Ok(u)
}

/// Invert the embedding into the given chart. `gamma` is used only for
/// the Ep/Hp targets.
pub fn from_ambient(u: &AmbientPoint, target: Chart, gamma: f64, r: f64) -> Result<ChartPoint> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let res = u.constraint_residual(r);
    if res.abs() > 1e-10 || u.u0 < r * (1.0 - 1e-12) {
        return Err(Error::domain(format!(
            "point is off the upper sheet (residual {res:.3e}, u0/R = {})",
            u.u0 / r
        )));
    }
    // u0 - u1 > 0 holds on the whole upper sheet
    let p = match target {
        Chart::Ps => {
            let tau = (u.u0 / r).max(1.0).acosh();
            let mut phi = u.u2.atan2(u.u1);
            if phi < 0.0 {
                phi += 2.0 * std::f64::consts::PI;
            }
            ChartPoint::Ps { tau, phi }
        }
        Chart::Eq => ChartPoint::Eq {
            tau1: (u.u2 / r).asinh(),
            tau2: (u.u1 / u.u0).atanh(),
        },
        Chart::Ho => ChartPoint::Ho {
            x: u.u2 / (u.u0 - u.u1),
            y: r / (u.u0 - u.u1),
        },
        Chart::Scp => {
            let x = u.u2 / (u.u0 - u.u1);
            let y = r / (u.u0 - u.u1);
            let rr = x.hypot(y);
            let xi2 = rr + x;
            let eta2 = rr - x;
            if xi2 <= 0.0 || eta2 <= 0.0 {
                return Err(Error::domain(
                    "point is outside the open semi-circular parabolic chart".to_string(),
                ));
            }
            ChartPoint::Scp {
                xi: xi2.sqrt(),
                eta: eta2.sqrt(),
            }
        }
        Chart::Ep => {
            if !(gamma > 0.0) {
                return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
            }
            // cos(theta) cosh(a) = R sqrt(gamma)/(u0 - u1) =: p;
            // cos^2 + cosh^2 = 1 + gamma (u0 + u1)/(u0 - u1) =: s;
            // so cos^2 theta and cosh^2 a are the roots of
            // t^2 - s t + p^2 = 0
            let pp = r * gamma.sqrt() / (u.u0 - u.u1);
            let s = 1.0 + gamma * (u.u0 + u.u1) / (u.u0 - u.u1);
            let disc = s * s - 4.0 * pp * pp;
            if disc < 0.0 {
                return Err(Error::domain(
                    "point is outside the elliptic parabolic chart".to_string(),
                ));
            }
            let cos2 = 0.5 * (s - disc.sqrt());
            let cosh2 = 0.5 * (s + disc.sqrt());
            if cos2 <= 0.0 || cos2 > 1.0 + 1e-14 || cosh2 < 1.0 - 1e-14 {
                return Err(Error::domain(
                    "point is outside the elliptic parabolic chart".to_string(),
                ));
            }
            let a = cosh2.max(1.0).sqrt().acosh();
            let theta = u.u2.signum() * cos2.min(1.0).sqrt().acos();
            ChartPoint::Ep { a, theta, gamma }
        }
        Chart::Hp => {
            if !(gamma > 0.0) {
                return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
            }
            // sin(theta) sinh(b) = R sqrt(gamma)/(u0 - u1) =: p;
            // cosh^2 b - sin^2 theta = gamma (u0 + u1)/(u0 - u1) =: d;
            // eliminating cosh b gives s^2 + (d - 1) s - p^2 = 0 for
            // s = sin^2 theta
            let pp = r * gamma.sqrt() / (u.u0 - u.u1);
            let d = gamma * (u.u0 + u.u1) / (u.u0 - u.u1);
            let s = 0.5 * ((1.0 - d) + ((d - 1.0) * (d - 1.0) + 4.0 * pp * pp).sqrt());
            let cosh2 = d + s;
            if s <= 0.0 || s > 1.0 + 1e-14 || cosh2 <= 1.0 {
                return Err(Error::domain(
                    "point is outside the open hyperbolic parabolic chart".to_string(),
                ));
            }
            let b = cosh2.sqrt().acosh();
            // theta in (0, pi): sin > 0, the sign of cos follows u2
            let cos_theta = u.u2.signum() * (1.0 - s.min(1.0)).max(0.0).sqrt();
            let theta = cos_theta.acos();
            ChartPoint::Hp { b, theta, gamma }
        }
    };
    p.validate()?;
    Ok(p)
}

/// Map a point to another chart through the ambient space; gamma carries
/// over when the target has one.
pub fn cross_map(p: &ChartPoint, target: Chart, r: f64) -> Result<ChartPoint> {
    let u = to_ambient(p, r)?;
    from_ambient(&u, target, p.gamma(), r)
}

/// Measure density w(c1, c2) of the invariant surface element
/// dS = R^2 w dc1 dc2 in each chart.
pub fn metric_weight(p: &ChartPoint) -> Result<f64> {
    p.validate()?;
    let w = match *p {
        ChartPoint::Ps { tau, .. } => tau.sinh(),
        ChartPoint::Eq { tau1, .. } => tau1.cosh(),
        ChartPoint::Ho { y, .. } => 1.0 / (y * y),
        ChartPoint::Scp { xi, eta } => {
            (xi * xi + eta * eta) / (xi * xi * eta * eta)
        }
        ChartPoint::Ep { a, theta, .. } => {
            let c2 = theta.cos().powi(2);
            let ch2 = a.cosh().powi(2);
            (ch2 - c2) / (ch2 * c2)
        }
        ChartPoint::Hp { b, theta, .. } => {
            1.0 / theta.sin().powi(2) + 1.0 / b.sinh().powi(2)
        }
    };
    Ok(w)
}

/// Conformal factor g(c1, c2) such that in the parabolic charts
/// Delta_LB = g (d^2/dc1^2 + d^2/dc2^2) / R^2. Defined for Scp, Ep, Hp
/// (where the metric is conformally flat) as 1/w.
fn conformal_factor(p: &ChartPoint) -> Option<f64> {
    match *p {
        ChartPoint::Scp { .. } | ChartPoint::Ep { .. } | ChartPoint::Hp { .. } => {
            Some(1.0 / metric_weight(p).ok()?)
        }
        _ => None,
    }
}

/// Apply the Laplace-Beltrami operator to a field by second-order central
/// differences on a 5-point cross stencil. The field receives the two
/// chart coordinates. Error O(h^2).
pub fn lb_apply_fd<F>(f: &F, p: &ChartPoint, r: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    if !(h > 0.0) {
        return Err(Error::domain(format!("step must be positive, got {h}")));
    }
    let (c1, c2) = p.coords();
    // the whole stencil must stay inside the open chart
    for (d1, d2) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
        p.with_coords(c1 + d1, c2 + d2).validate().map_err(|_| {
            Error::domain(format!(
                "stencil of width {h} leaves the chart at ({c1}, {c2})"
            ))
        })?;
    }
    let f0 = f(c1, c2)?;
    let fp1 = f(c1 + h, c2)?;
    let fm1 = f(c1 - h, c2)?;
    let fp2 = f(c1, c2 + h)?;
    let fm2 = f(c1, c2 - h)?;
    let d11 = (fp1 - 2.0 * f0 + fm1) / (h * h);
    let d22 = (fp2 - 2.0 * f0 + fm2) / (h * h);
    let d1 = (fp1 - fm1) / (2.0 * h);
    let r2 = r * r;
    let v = match *p {
        ChartPoint::Ps { tau, .. } => {
            (d11 + d1 / tau.tanh() + d22 / tau.sinh().powi(2)) / r2
        }
        ChartPoint::Eq { tau1, .. } => {
            (d11 + d1 * tau1.tanh() + d22 / tau1.cosh().powi(2)) / r2
        }
        ChartPoint::Ho { y, .. } => {
            // coordinates are (x, y); the operator is y^2 (dxx + dyy)
            y * y * (d11 + d22) / r2
        }
        _ => {
            let g = conformal_factor(p).expect("parabolic charts are conformally flat");
            g * (d11 + d22) / r2
        }
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(chart: Chart, rng: &mut ChaCha8Rng) -> ChartPoint {
        match chart {
            Chart::Ps => ChartPoint::Ps {
                tau: rng.gen_range(0.01..3.0),
                phi: rng.gen_range(0.0..6.28),
            },
            Chart::Eq => ChartPoint::Eq {
                tau1: rng.gen_range(-2.5..2.5),
                tau2: rng.gen_range(-2.5..2.5),
            },
            Chart::Ho => ChartPoint::Ho {
                x: rng.gen_range(-4.0..4.0),
                y: rng.gen_range(0.05..6.0),
            },
            Chart::Scp => ChartPoint::Scp {
                xi: rng.gen_range(0.05..3.0),
                eta: rng.gen_range(0.05..3.0),
            },
            Chart::Ep => ChartPoint::Ep {
                a: rng.gen_range(0.01..2.5),
                theta: rng.gen_range(-1.5..1.5),
                gamma: 1.0,
            },
            Chart::Hp => ChartPoint::Hp {
                b: rng.gen_range(0.05..2.5),
                theta: rng.gen_range(0.05..3.09),
                gamma: 1.0,
            },
        }
    }

    const CHARTS: [Chart; 6] = [Chart::Ps, Chart::Eq, Chart::Ho, Chart::Scp, Chart::Ep, Chart::Hp];

    #[test]
    fn embedding_examples() {
        let u = to_ambient(
            &ChartPoint::Scp {
                xi: 2f64.sqrt(),
                eta: 2f64.sqrt(),
            },
            1.0,
        )
        .unwrap();
        assert!((u.u0 - 1.25).abs() < 1e-14);
        assert!((u.u1 - 0.75).abs() < 1e-14);
        assert!(u.u2.abs() < 1e-14);

        let u = to_ambient(
            &ChartPoint::Ep {
                a: 0.0,
                theta: 0.0,
                gamma: 1.0,
            },
            2.5,
        )
        .unwrap();
        assert!((u.u0 - 2.5).abs() < 1e-14 && u.u1.abs() < 1e-14 && u.u2.abs() < 1e-14);

        let u = to_ambient(&ChartPoint::Ho { x: 0.0, y: 1.0 }, 1.0).unwrap();
        assert!((u.u0 - 1.0).abs() < 1e-14 && u.u1.abs() < 1e-14 && u.u2.abs() < 1e-14);
    }

    #[test]
    fn constraint_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &chart in &CHARTS {
            for _ in 0..10_000 {
                let p = random_point(chart, &mut rng);
                let r = rng.gen_range(0.5..3.0);
                let u = to_ambient(&p, r).unwrap();
                assert!(
                    u.constraint_residual(r).abs() < 1e-10,
                    "{chart:?} {p:?} residual {}",
                    u.constraint_residual(r)
                );
                assert!(u.u0 >= r * (1.0 - 1e-12));
            }
        }
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &chart in &CHARTS {
            for _ in 0..400 {
                let p = random_point(chart, &mut rng);
                let r = rng.gen_range(0.5..3.0);
                let u = to_ambient(&p, r).unwrap();
                let q = from_ambient(&u, chart, p.gamma(), r).unwrap();
                let v = to_ambient(&q, r).unwrap();
                let tol = 1e-9 * r;
                assert!(
                    (u.u0 - v.u0).abs() < tol && (u.u1 - v.u1).abs() < tol && (u.u2 - v.u2).abs() < tol,
                    "{chart:?} {p:?} -> {q:?}"
                );
            }
        }
    }

    #[test]
    fn cross_map_commutes_with_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for &src in &CHARTS {
            for &dst in &CHARTS {
                for _ in 0..100 {
                    let p = random_point(src, &mut rng);
                    let r = rng.gen_range(0.5..3.0);
                    let q = match cross_map(&p, dst, r) {
                        Ok(q) => q,
                        // some images fall outside the open target chart
                        Err(_) => continue,
                    };
                    let u = to_ambient(&p, r).unwrap();
                    let v = to_ambient(&q, r).unwrap();
                    let tol = 1e-9 * r * u.u0.abs().max(1.0);
                    assert!(
                        (u.u0 - v.u0).abs() < tol
                            && (u.u1 - v.u1).abs() < tol
                            && (u.u2 - v.u2).abs() < tol,
                        "{src:?} -> {dst:?}: {p:?} vs {q:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn scp_ho_relation() {
        // xi^2 = sqrt(x^2 + y^2) + x, eta^2 = sqrt(x^2 + y^2) - x, the same
        // convention as parabolic coordinates on the Euclidean plane
        let p = ChartPoint::Scp { xi: 0.7, eta: 1.9 };
        let q = cross_map(&p, Chart::Ho, 1.0).unwrap();
        if let ChartPoint::Ho { x, y } = q {
            let rr = x.hypot(y);
            assert!(((rr + x).sqrt() - 0.7).abs() < 1e-12);
            assert!(((rr - x).sqrt() - 1.9).abs() < 1e-12);
            assert!((x - (0.7f64.powi(2) - 1.9f64.powi(2)) / 2.0).abs() < 1e-12);
            assert!((y - 0.7 * 1.9).abs() < 1e-12);
        } else {
            unreachable!()
        }
        let back = cross_map(&q, Chart::Scp, 1.0).unwrap();
        let (xi, eta) = back.coords();
        assert!((xi - 0.7).abs() < 1e-10 && (eta - 1.9).abs() < 1e-10);

        let q = cross_map(&ChartPoint::Scp { xi: 1.0, eta: 1.0 }, Chart::Ho, 1.0).unwrap();
        let (x, y) = q.coords();
        assert!(x.abs() < 1e-14 && (y - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ep_ps_relation() {
        // cos^2 theta = e^{-tau}/(cosh tau - sinh tau cos phi),
        // cosh^2 a the same with e^{+tau}
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let tau: f64 = rng.gen_range(0.0..2.0);
            let phi: f64 = rng.gen_range(0.0..6.28);
            if tau.cosh() - tau.sinh() * phi.cos() <= 0.0 {
                continue;
            }
            let p = ChartPoint::Ps { tau, phi };
            let q = match cross_map(&p, Chart::Ep, 1.0) {
                Ok(q) => q,
                Err(_) => continue,
            };
            let (a, theta) = q.coords();
            let den = tau.cosh() - tau.sinh() * phi.cos();
            assert!((theta.cos().powi(2) - (-tau).exp() / den).abs() < 1e-10);
            assert!((a.cosh().powi(2) - tau.exp() / den).abs() < 1e-9 * tau.exp() / den);
        }
        // the apex maps to the elliptic parabolic origin
        let q = cross_map(&ChartPoint::Ps { tau: 0.0, phi: 1.3 }, Chart::Ep, 1.0).unwrap();
        let (a, theta) = q.coords();
        assert!(a.abs() < 1e-7 && theta.abs() < 1e-7);
    }

    #[test]
    fn ep_eq_relation() {
        // cos^2 theta = (cosh tau2 - sqrt(sinh^2 tau2 + tanh^2 tau1)) e^{tau2}
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let tau1: f64 = rng.gen_range(-2.0..2.0);
            let tau2: f64 = rng.gen_range(-2.0..2.0);
            let p = ChartPoint::Eq { tau1, tau2 };
            let q = match cross_map(&p, Chart::Ep, 1.0) {
                Ok(q) => q,
                Err(_) => continue,
            };
            let (a, theta) = q.coords();
            let s = (tau2.sinh().powi(2) + tau1.tanh().powi(2)).sqrt();
            let c2 = (tau2.cosh() - s) * tau2.exp();
            let ch2 = (tau2.cosh() + s) * tau2.exp();
            assert!((theta.cos().powi(2) - c2).abs() < 1e-9, "({tau1}, {tau2})");
            assert!((a.cosh().powi(2) - ch2).abs() < 1e-9 * ch2.max(1.0));
        }
    }

    #[test]
    fn ep_eq_small_tau1_limits() {
        // at tau1 = 1e-4 the deviations from the tau1 = 0 profile are O(tau1^2)
        for &tau2 in &[-1.3, -0.4, 0.6, 1.7] {
            let tau1 = 1e-4;
            let q = cross_map(&ChartPoint::Eq { tau1, tau2 }, Chart::Ep, 1.0).unwrap();
            let (a, theta) = q.coords();
            let d1 = theta.cos().powi(2) / (tau2 - tau2.abs()).exp() - 1.0;
            let d2 = a.cosh().powi(2) / (tau2 + tau2.abs()).exp() - 1.0;
            assert!(d1.abs() < 10.0 * tau1 * tau1, "tau2 = {tau2}, d1 = {d1:e}");
            assert!(d2.abs() < 10.0 * tau1 * tau1, "tau2 = {tau2}, d2 = {d2:e}");
        }
    }

    #[test]
    fn hp_eq_relation() {
        // cos^2 theta = (u0 - sqrt(u1^2 + R^2))/(u0 - u1) and its cosh pair
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let p = random_point(Chart::Hp, &mut rng);
            let r = rng.gen_range(0.5..2.0);
            let u = to_ambient(&p, r).unwrap();
            let (b, theta) = p.coords();
            let s = (u.u1 * u.u1 + r * r).sqrt();
            assert!(
                (theta.cos().powi(2) - (u.u0 - s) / (u.u0 - u.u1)).abs() < 1e-9,
                "{p:?}"
            );
            let ch2 = (u.u0 + s) / (u.u0 - u.u1);
            assert!((b.cosh().powi(2) - ch2).abs() < 1e-9 * ch2.max(1.0));
        }
    }

    #[test]
    fn lb_constant_field() {
        let p = ChartPoint::Scp { xi: 0.9, eta: 1.4 };
        let v = lb_apply_fd(&|_, _| Ok(Complex64::new(3.5, -1.0)), &p, 1.0, 1e-3).unwrap();
        assert!(v.norm() < 1e-8);
    }

    #[test]
    fn lb_ambient_coordinate_eigenfield() {
        // Delta_LB u0 = 2 u0 / R^2 on the hyperboloid, in every chart
        let r = 1.3;
        let pts = [
            ChartPoint::Ps { tau: 1.0, phi: 0.7 },
            ChartPoint::Eq { tau1: 0.6, tau2: -0.4 },
            ChartPoint::Ho { x: 0.8, y: 1.1 },
            ChartPoint::Scp { xi: 0.9, eta: 1.4 },
            ChartPoint::Ep { a: 0.8, theta: 0.5, gamma: 1.0 },
            ChartPoint::Hp { b: 1.1, theta: 1.9, gamma: 1.0 },
        ];
        for p in pts {
            let f = |c1: f64, c2: f64| {
                Ok(Complex64::new(to_ambient(&p.with_coords(c1, c2), r)?.u0, 0.0))
            };
            let got = lb_apply_fd(&f, &p, r, 1e-4).unwrap();
            let want = 2.0 * to_ambient(&p, r).unwrap().u0 / (r * r);
            assert!(
                (got.re - want).abs() < 1e-6 * want.abs(),
                "{p:?}: {} vs {want}",
                got.re
            );
        }
    }

    #[test]
    fn lb_richardson_second_order() {
        // halving h divides the truncation error by about 4
        let r = 1.0;
        let p = ChartPoint::Ep { a: 0.8, theta: 0.5, gamma: 1.0 };
        let f = |c1: f64, c2: f64| {
            let u = to_ambient(&ChartPoint::Ep { a: c1, theta: c2, gamma: 1.0 }, r)?;
            // a non-eigen field with nontrivial fourth derivatives
            Ok(Complex64::new((u.u1 * u.u2).sin(), 0.0))
        };
        let exact_h = 1e-5;
        let ref_val = lb_apply_fd(&f, &p, r, exact_h).unwrap();
        let e1 = (lb_apply_fd(&f, &p, r, 2e-2).unwrap() - ref_val).norm();
        let e2 = (lb_apply_fd(&f, &p, r, 1e-2).unwrap() - ref_val).norm();
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn stencil_boundary_rejected() {
        let p = ChartPoint::Scp { xi: 5e-4, eta: 1.0 };
        let e = lb_apply_fd(&|_, _| Ok(Complex64::new(0.0, 0.0)), &p, 1.0, 1e-3);
        assert!(e.is_err());
    }
}
