//! Pochhammer products and the Gamma function.
//!
//! The Pochhammer family is generic over [`Scalar`] so the same code serves
//! exact vanishing tests and float limits. Gamma lives on `f64` only.

use std::f64::consts::PI;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalar::{one, Scalar};

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`; `(a)_0 = 1`.
pub fn poch_rising<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = one::<S>();
    let mut f = a.clone();
    for _ in 0..k {
        acc = acc * f.clone();
        f = f + S::one();
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn poch_falling<S: Scalar>(a: &S, k: usize) -> S {
    let mut acc = one::<S>();
    let mut f = a.clone();
    for _ in 0..k {
        acc = acc * f.clone();
        f = f - S::one();
    }
    acc
}

/// `(a +- x)_k = (a+x)_k (a-x)_k`.
pub fn poch_pm<S: Scalar>(a: &S, x: &S, k: usize) -> S {
    poch_rising(&(a.clone() + x.clone()), k) * poch_rising(&(a.clone() - x.clone()), k)
}

/// Generalized Pochhammer symbol `(a)_mu = prod_i (a - d/2 (i-1))_{mu_i}`.
pub fn gen_pochhammer(a: &BigRational, mu: &Partition, d: &BigRational) -> BigRational {
    let half_d = d / BigRational::from_integer(2.into());
    mu.parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let shift = &half_d * BigRational::from_integer((i as i64).into());
            poch_rising(&(a - shift), m)
        })
        .fold(BigRational::from_integer(1.into()), |acc, v| acc * v)
}

/// `ln |Gamma(t)|` together with the sign of `Gamma(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGamma {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogGamma {
    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi t)` with exact zeros at the integers.
pub fn sin_pi(t: f64) -> f64 {
    let n = t.round();
    let r = t - n;
    if r == 0.0 {
        return 0.0;
    }
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi t)` with exact zeros at the half-integers.
pub fn cos_pi(t: f64) -> f64 {
    sin_pi(t + 0.5)
}

fn is_nonpositive_integer(t: f64) -> bool {
    t <= 0.0 && t == t.round()
}

fn ln_gamma_positive(t: f64) -> f64 {
    // Valid for t >= 0.5.
    let x = t - 1.0;
    let mut series = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * w.ln() - w + series.ln()
}

/// `ln |Gamma(t)|` and its sign; reflection handles `t < 1/2`.
pub fn log_gamma(t: f64) -> Result<LogGamma> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {t}")));
    }
    if is_nonpositive_integer(t) {
        return Err(Error::Pole(format!("Gamma has a pole at {t}")));
    }
    if t >= 0.5 {
        return Ok(LogGamma {
            ln_abs: ln_gamma_positive(t),
            sign: 1.0,
        });
    }
    // Gamma(t) Gamma(1-t) = pi / sin(pi t)
    let s = sin_pi(t);
    Ok(LogGamma {
        ln_abs: PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - t),
        sign: s.signum(),
    })
}

pub fn gamma(t: f64) -> Result<f64> {
    log_gamma(t).map(LogGamma::value)
}

/// `1/Gamma(t)`, which is entire: zero at the poles of Gamma.
pub fn recip_gamma(t: f64) -> f64 {
    match log_gamma(t) {
        Ok(lg) => lg.sign * (-lg.ln_abs).exp(),
        Err(_) if is_nonpositive_integer(t) => 0.0,
        Err(_) => f64::NAN,
    }
}
