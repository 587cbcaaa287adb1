//! Generalized hypergeometric sums pFq: exact finite sums for terminating
//! parameter sets, and tail-corrected partial sums for convergent
//! (q+1)Fq series at unit argument.

use crate::error::Error;
use crate::value::ComplexValue;
use crate::Result;
use num_complex::Complex64;

const INT_TOL: f64 = 1e-9;

fn terminating_index(num: &[Complex64]) -> Option<usize> {
    num.iter()
        .filter_map(|a| {
            let r = a.re.round();
            if a.im.abs() < INT_TOL && (a.re - r).abs() < INT_TOL && r <= 0.0 {
                Some((-r) as usize)
            } else {
                None
            }
        })
        .min()
}

fn finite_sum(num: &[Complex64], den: &[Complex64], z: Complex64, n_top: usize) -> Result<ComplexValue> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak: f64 = 1.0;
    for n in 0..n_top {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for a in num {
            ratio *= a + nf;
        }
        for b in den {
            let d = b + nf;
            if d.norm() < 1e-14 {
                return Err(Error::pole(format!("pFq lower parameter {b} hits zero")));
            }
            ratio /= d;
        }
        term *= ratio;
        sum += term;
        peak = peak.max(sum.norm());
    }
    Ok(ComplexValue::from_c_err(sum, 1e-15 * peak * (n_top as f64).sqrt().max(1.0)))
}

/// Convergent (q+1)Fq at z = 1: direct summation with an integral tail
/// correction exploiting the known algebraic decay term_n ~ C n^{-1-s},
/// s = 1 + sum(den) - sum(num).
pub fn hyp_pfq_z1(num: &[Complex64], den: &[Complex64]) -> Result<ComplexValue> {
    let s: Complex64 = den.iter().sum::<Complex64>() - num.iter().sum::<Complex64>();
    if s.re <= 0.05 {
        return Err(Error::domain(format!(
            "pFq at z=1 needs positive convergence excess, got Re = {}",
            s.re
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak: f64 = 1.0;
    let n_top: usize = 60_000;
    let mut n_stop = n_top;
    for n in 0..n_top {
        let nf = n as f64;
        let mut ratio = Complex64::new(1.0 / (nf + 1.0), 0.0);
        for a in num {
            ratio *= a + nf;
        }
        for b in den {
            let d = b + nf;
            if d.norm() < 1e-14 {
                return Err(Error::pole(format!("pFq lower parameter {b} hits zero")));
            }
            ratio /= d;
        }
        term *= ratio;
        sum += term;
        peak = peak.max(sum.norm());
        // once the algebraic regime is reached, the tail correction below
        // supplies the remaining digits
        if n > 200 && term.norm() * (nf / s.re) < 1e-13 * sum.norm() {
            n_stop = n + 1;
            break;
        }
    }
    let nf = n_stop as f64;
    // tail ~ integral of C x^{-1-s} from N+1/2, with C = term_N N^{1+s}
    let tail = term * nf / s * Complex64::new(1.0 + 0.5 / nf, 0.0).powc(-s);
    let v = sum + tail;
    let err = tail.norm() * (2.0 + s.norm()) / nf + 1e-15 * peak;
    Ok(ComplexValue::from_c_err(v, err))
}

/// pFq(num; den; z): exact for terminating numerator parameters (any z),
/// series for |z| < 1, tail-corrected summation for (q+1)Fq at z = 1.
pub fn hyp_pfq_terminating(num: &[Complex64], den: &[Complex64], z: Complex64) -> Result<ComplexValue> {
    if let Some(n) = terminating_index(num) {
        return finite_sum(num, den, z, n);
    }
    if (z - 1.0).norm() < 1e-14 && num.len() == den.len() + 1 {
        return hyp_pfq_z1(num, den);
    }
    if z.norm() < 1.0 && num.len() <= den.len() + 1 {
        // geometric regime: plain series
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut peak: f64 = 1.0;
        for n in 0..100_000 {
            let nf = n as f64;
            let mut ratio = z / (nf + 1.0);
            for a in num {
                ratio *= a + nf;
            }
            for b in den {
                let d = b + nf;
                if d.norm() < 1e-14 {
                    return Err(Error::pole(format!("pFq lower parameter {b} hits zero")));
                }
                ratio /= d;
            }
            term *= ratio;
            sum += term;
            peak = peak.max(sum.norm());
            if term.norm() < 1e-17 * (1.0 + sum.norm()) {
                return Ok(ComplexValue::from_c_err(sum, 1e-15 * peak + term.norm()));
            }
        }
        return Err(Error::NoConvergence("pFq series stalled".to_string()));
    }
    Err(Error::domain(
        "pFq: nonterminating series only supported for |z| < 1 or (q+1)Fq at z = 1".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn empty_sum_is_one() {
        let v = hyp_pfq_terminating(
            &[r(0.0), c(0.3, 0.1), r(2.0)],
            &[r(0.5), r(1.5)],
            r(1.0),
        )
        .unwrap();
        assert_eq!(v.c(), r(1.0));
    }

    #[test]
    fn two_term_sum_by_hand() {
        // 3F2(-1, x, y; u, v; 1) = 1 - x y / (u v)
        let x = c(0.3, 0.1);
        let y = r(2.0);
        let u = r(0.5);
        let v = r(1.5);
        let got = hyp_pfq_terminating(&[r(-1.0), x, y], &[u, v], r(1.0)).unwrap();
        let want = r(1.0) - x * y / (u * v);
        assert!((got.c() - want).norm() < 1e-14);
    }

    #[test]
    fn gauss_2f1_at_one_agrees() {
        // 2F1(a,b;c;1) closed form vs generic z=1 machinery
        use super::super::gamma::log_gamma_c;
        let (a, b, cc) = (c(0.25, 0.4), c(0.3, -0.2), r(2.1));
        let got = hyp_pfq_z1(&[a, b], &[cc]).unwrap();
        let want = (log_gamma_c(cc).unwrap() + log_gamma_c(cc - a - b).unwrap()
            - log_gamma_c(cc - a).unwrap()
            - log_gamma_c(cc - b).unwrap())
        .exp();
        let rel = (got.c() - want).norm() / want.norm();
        assert!(rel < 1e-9, "rel = {rel:e}");
    }

    #[test]
    fn saalschuetz_terminating() {
        // Saalschuetzian 3F2(-n, a, b; c, 1+a+b-c-n; 1) closed form, n = 3
        let a = c(0.4, 0.7);
        let b = r(0.9);
        let cc = c(1.2, -0.3);
        let n = 3.0;
        let d2 = a + b - cc - n + 1.0;
        let got = hyp_pfq_terminating(&[r(-n), a, b], &[cc, d2], r(1.0)).unwrap();
        // (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n)
        let poch = |x: Complex64| (0..3).fold(Complex64::new(1.0, 0.0), |p, k| p * (x + k as f64));
        let want = poch(cc - a) * poch(cc - b) / (poch(cc) * poch(cc - a - b));
        assert!((got.c() - want).norm() < 1e-11 * want.norm());
    }

    #[test]
    fn divergent_rejected() {
        let e = hyp_pfq_z1(&[r(1.0), r(1.0)], &[r(1.5)]);
        assert!(e.is_err());
    }
}
