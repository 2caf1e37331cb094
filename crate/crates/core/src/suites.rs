//! Cross-formula verification suites over seeded random rational points.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::log_gamma;
use crate::limits::{c_l_sequence, crossing_point, r_limit, r_partial, s_div, s_m};
use crate::okounkov::{
    column_poly, column_poly_gf, det_formula_tau1, k_constant, k_constant_alt, okounkov_eval,
    rectangle_poly, verify_characterization, CheckReport, Params,
};
use crate::partitions::{enumerate_lambda, Partition};
use crate::rank2::{q_rank2, q_rank2_d2_partial};
use crate::scalar::{int, rat, Scalar};

/// Largest accepted `--budget`.
pub const MAX_BUDGET: usize = 8;
/// Random points drawn per shape in the sampled suites.
pub const POINTS_PER_SHAPE: usize = 100;
/// Random points per `(m_1, m_2, d, α)` in the rank-two suite.
pub const RANK2_POINTS: usize = 50;

/// Seeded source of small rationals `p/q`, `|p| <= 20`, `q ∈ {1,2,3,4}`.
#[derive(Debug, Clone)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let p = self.rng.gen_range(-20i64..=20);
        let q = self.rng.gen_range(1i64..=4);
        rat(p, q)
    }

    pub fn point(&mut self, n: usize) -> Vec<BigRational> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// A point whose squared coordinates are pairwise distinct.
    pub fn generic_point(&mut self, n: usize) -> Vec<BigRational> {
        loop {
            let pt = self.point(n);
            let sq: Vec<BigRational> = pt.iter().map(|x| x * x).collect();
            let distinct = (0..n).all(|i| (i + 1..n).all(|j| sq[i] != sq[j]));
            if distinct {
                return pt;
            }
        }
    }

    /// `k / 1000` with `k` uniform in `1..=999`.
    pub fn unit_interior(&mut self) -> BigRational {
        rat(self.rng.gen_range(1i64..=999), 1000)
    }
}

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Characterization,
    Tau1Det,
    Columns,
    Rectangles,
    Kmu,
    Rank2,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Characterization,
        Suite::Tau1Det,
        Suite::Columns,
        Suite::Rectangles,
        Suite::Kmu,
        Suite::Rank2,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Characterization => "characterization",
            Suite::Tau1Det => "tau1-det",
            Suite::Columns => "columns",
            Suite::Rectangles => "rectangles",
            Suite::Kmu => "kmu",
            Suite::Rank2 => "rank2",
            Suite::Limits => "limits",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// `{"suite", "checks", "failures"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report JSON is serializable")
    }
}

/// The `(τ, α)` pairs exercised by the characterization suite.
pub fn characterization_params() -> Vec<(BigRational, BigRational)> {
    vec![
        (int(1), rat(1, 2)),
        (rat(1, 2), int(1)),
        (int(1), rat(3, 2)),
        (int(2), int(1)),
    ]
}

fn tau1_alphas() -> [BigRational; 3] {
    [rat(1, 2), int(1), rat(3, 2)]
}

fn partitions_up_to(n: usize, budget: usize) -> Vec<Partition> {
    enumerate_lambda(n, budget)
}

/// Runs `suite` with shapes of size at most `budget`; sampled points come
/// from `seed`.
pub fn run_suite(suite: Suite, budget: usize, seed: u64) -> Result<SuiteReport> {
    if budget > MAX_BUDGET {
        return Err(Error::Domain(format!("budget {budget} exceeds the cap {MAX_BUDGET}")));
    }
    let report = match suite {
        Suite::Characterization => characterization(budget)?,
        Suite::Tau1Det => tau1_det(budget, seed)?,
        Suite::Columns => columns(budget, seed)?,
        Suite::Rectangles => rectangles(budget, seed)?,
        Suite::Kmu => kmu(budget)?,
        Suite::Rank2 => rank2(budget, seed)?,
        Suite::Limits => limits(budget, seed)?,
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        checks: report.checks,
        failures: report.failures,
    })
}

fn merge_all(parts: Vec<Result<CheckReport>>) -> Result<CheckReport> {
    let mut out = CheckReport::default();
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

fn characterization(budget: usize) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for (tau, alpha) in characterization_params() {
            let p = Params::new(n, tau, alpha)?;
            for lam in partitions_up_to(n, budget) {
                jobs.push((lam, p.clone()));
            }
        }
    }
    merge_all(
        jobs.par_iter()
            .map(|(lam, p)| verify_characterization(lam, p, 0))
            .collect(),
    )
}

fn tau1_det(budget: usize, seed: u64) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for alpha in tau1_alphas() {
            for lam in partitions_up_to(n, budget) {
                jobs.push((n, alpha.clone(), lam));
            }
        }
    }
    merge_all(
        jobs.par_iter()
            .enumerate()
            .map(|(k, (n, alpha, lam))| {
                let p = Params::new(*n, int(1), alpha.clone())?;
                let mut rng = RationalSampler::new(seed.wrapping_add(k as u64));
                let mut rep = CheckReport::default();
                for _ in 0..POINTS_PER_SHAPE {
                    let pt = rng.generic_point(*n);
                    let comb = okounkov_eval(lam, &pt, &p)?;
                    let det = det_formula_tau1(lam, &pt, alpha)?;
                    rep.record(comb == det, || {
                        format!("n={n} alpha={alpha} lambda={lam} at {pt:?}: {comb} vs {det}")
                    });
                }
                Ok(rep)
            })
            .collect(),
    )
}

fn sampled_params(n: usize) -> Result<Vec<Params>> {
    characterization_params()
        .into_iter()
        .map(|(t, a)| Params::new(n, t, a))
        .collect()
}

fn columns(budget: usize, seed: u64) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for p in sampled_params(n)? {
            for j in 1..=n.min(budget) {
                jobs.push((p.clone(), j));
            }
        }
    }
    merge_all(
        jobs.par_iter()
            .enumerate()
            .map(|(k, (p, j))| {
                let lam = Partition::column(*j);
                let mut rng = RationalSampler::new(seed.wrapping_add(k as u64));
                let mut rep = CheckReport::default();
                for _ in 0..POINTS_PER_SHAPE {
                    let pt = rng.point(p.n);
                    let want = okounkov_eval(&lam, &pt, p)?;
                    let a = column_poly(*j, &pt, p)?;
                    let b = column_poly_gf(*j, &pt, p)?;
                    rep.record(a == want, || format!("column {j}, {p:?} at {pt:?}: {a} vs {want}"));
                    rep.record(b == want, || {
                        format!("column generating function {j}, {p:?} at {pt:?}: {b} vs {want}")
                    });
                }
                Ok(rep)
            })
            .collect(),
    )
}

fn rectangles(budget: usize, seed: u64) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        for p in sampled_params(n)? {
            for l in 1..=budget / n {
                jobs.push((p.clone(), l));
            }
        }
    }
    merge_all(
        jobs.par_iter()
            .enumerate()
            .map(|(k, (p, l))| {
                let lam = Partition::rectangle(*l, p.n);
                let mut rng = RationalSampler::new(seed.wrapping_add(k as u64));
                let mut rep = CheckReport::default();
                for _ in 0..POINTS_PER_SHAPE {
                    let pt = rng.point(p.n);
                    let want = okounkov_eval(&lam, &pt, p)?;
                    let got = rectangle_poly(*l, &pt, p)?;
                    rep.record(got == want, || format!("rectangle {lam}, {p:?} at {pt:?}: {got} vs {want}"));
                }
                Ok(rep)
            })
            .collect(),
    )
}

fn kmu(budget: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    for n in 1..=3 {
        for d in [1i64, 2, 4] {
            for mu in partitions_up_to(n, budget) {
                let a = k_constant(&mu, &rat(d, 2));
                let b = k_constant_alt(&mu, &int(d), n)?;
                rep.record(a == b, || format!("k_{mu} for n={n} d={d}: {a} vs {b}"));
            }
        }
    }
    Ok(rep)
}

fn rank2(budget: usize, seed: u64) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for d in 1..=3u32 {
        for alpha in tau1_alphas() {
            for m1 in 0..=budget {
                for m2 in 0..=m1 {
                    jobs.push((d, alpha.clone(), m1, m2));
                }
            }
        }
    }
    merge_all(
        jobs.par_iter()
            .enumerate()
            .map(|(k, (d, alpha, m1, m2))| {
                let p = Params::new(2, rat(*d as i64, 2), alpha.clone())?;
                let rho = p.rho();
                let lam = Partition::new(vec![*m1, *m2])?;
                let sign = if (m1 + m2) % 2 == 0 { int(1) } else { int(-1) };
                let mut rng = RationalSampler::new(seed.wrapping_add(k as u64));
                let mut rep = CheckReport::default();
                for _ in 0..RANK2_POINTS {
                    let pt = rng.point(2);
                    let want = &sign * okounkov_eval(&lam, &pt, &p)?;
                    let got = q_rank2(*m1, *m2, &pt, *d, [&rho[0], &rho[1]])?;
                    rep.record(got == want, || {
                        format!("q_({m1},{m2}) d={d} alpha={alpha} at {pt:?}: {got} vs {want}")
                    });
                    if *d == 2 {
                        match q_rank2_d2_partial(*m1, *m2, &pt, [&rho[0], &rho[1]]) {
                            Ok(v) => rep.record(v == want, || {
                                format!("partial-sum form q_({m1},{m2}) at {pt:?}: {v} vs {want}")
                            }),
                            // The partial-sum form has poles the tableau sum lacks.
                            Err(Error::Pole(_)) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
                Ok(rep)
            })
            .collect(),
    )
}

/// Sample points `α + (u_1, u_2)` of the open square, `u_1 >= u_2`.
pub fn open_square_points(m: u32, count: usize, seed: u64) -> Vec<[BigRational; 2]> {
    let alpha = rat(m as i64 + 1, 2);
    let mut rng = RationalSampler::new(seed);
    (0..count)
        .map(|_| {
            let (a, b) = (rng.unit_interior(), rng.unit_interior());
            let (u1, u2) = if a >= b { (a, b) } else { (b, a) };
            [&alpha + u1, &alpha + u2]
        })
        .collect()
}

fn limits(budget: usize, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    for l in 1..=10i64 {
        let v = r_partial(l as usize, &int(1), &rat(1, 2));
        rep.record(v == rat(-(2 * l + 1), 2 * l - 1), || format!("r_{l}(1) = {v} for alpha = 1/2"));
    }
    let m_max = budget.min(3) as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 0..=m_max {
        let alpha = (m as f64 + 1.0) / 2.0;
        let g2 = log_gamma(alpha)?.value().powi(2);
        for _ in 0..100 {
            let t: f64 = rng.gen_range(-0.9..0.9);
            let lhs = r_limit(t + alpha, alpha);
            let rhs = -g2 / std::f64::consts::PI * s_m(t, m)?;
            rep.record((lhs - rhs).abs() < 1e-10, || format!("r(t+alpha) vs s_{m}(t) at t={t}: {lhs} vs {rhs}"));
        }
        let fact: f64 = (1..=m + 1).map(f64::from).product();
        let s11 = s_div(1.0, 1.0, m)?;
        rep.record((s11 + std::f64::consts::PI / fact).abs() < 1e-12, || format!("S(1,1) = {s11} for m={m}"));
        for pt in open_square_points(m, 20, seed.wrapping_add(m as u64)) {
            let f = [pt[0].to_f64(), pt[1].to_f64()];
            let seq = c_l_sequence(&f, m, 200)?;
            rep.record(seq.values.windows(2).all(|w| w[1] <= w[0]), || {
                format!("c_l not decreasing at {f:?}, m={m}")
            });
            rep.record(*seq.values.last().unwrap_or(&0.0) >= seq.limit - 1e-12, || {
                format!("c_200 below its limit at {f:?}, m={m}")
            });
        }
    }
    let mut prev = f64::INFINITY;
    for m in 0..=20 {
        let c = crossing_point(m);
        rep.record(c.residual < 1e-10 && c.monotone && c.c_m < prev, || {
            format!("crossing point {m}: {c:?}")
        });
        prev = c.c_m;
    }
    rep.record(crossing_point(0).c_m == 0.5, || "c_0 != 1/2".into());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<_> = {
            let mut s = RationalSampler::new(7);
            (0..20).map(|_| s.rational()).collect()
        };
        let mut s = RationalSampler::new(7);
        let b: Vec<_> = (0..20).map(|_| s.rational()).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.numer().bits() <= 5 && *x.denom() <= 4.into()));
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!(run_suite(Suite::Kmu, 9, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, 2, 0).unwrap();
            assert!(r.passed(), "{}: {:?}", s, r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn report_json() {
        let r = SuiteReport {
            suite: "kmu".into(),
            checks: 3,
            failures: vec![],
        };
        assert_eq!(r.to_json(), r#"{"suite":"kmu","checks":3,"failures":[]}"#);
    }
}
