//! Rank two: hypergeometric formulas for `q_{(m_1,m_2)}`, the boundary series
//! `R(x)` and the set `ℬ` that describes `𝒜₀`.

use std::f64::consts::PI;

use num_rational::BigRational;


use crate::error::{Error, Result};
use crate::exactnum::{gamma, poch_pm, recip_gamma};
use crate::scalar::{check_len, int, rat, Scalar, Sign};

/// Terms kept before extrapolating a balanced series.
const RICHARDSON_BASE: usize = 64;
/// Number of doublings of [`RICHARDSON_BASE`].
const RICHARDSON_LEVELS: usize = 9;
/// Cap for series whose terms decay factorially.
const MAX_TERMS: usize = 100_000;

/// `Σ_k (a_1..a_p)_k / ((b_1..b_q)_k k!)`, optionally truncated at `k = m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec<S> {
    pub upper: Vec<S>,
    pub lower: Vec<S>,
    pub truncation: Option<usize>,
}

fn nonpositive_integer<S: Scalar>(a: &S) -> Option<usize> {
    let f = a.to_f64();
    if f > 0.0 || f != f.round() {
        return None;
    }
    // Confirm exactly for exact types.
    if S::EXACT && S::from_int(f as i64) != *a {
        return None;
    }
    Some((-f) as usize)
}

impl<S: Scalar> HypSeriesSpec<S> {
    pub fn new(upper: Vec<S>, lower: Vec<S>) -> Self {
        HypSeriesSpec {
            upper,
            lower,
            truncation: None,
        }
    }

    pub fn truncated(mut self, m: usize) -> Self {
        self.truncation = Some(m);
        self
    }

    /// Ratio `term_{k+1} / term_k`, or `None` once an upper parameter has hit
    /// zero and every later term vanishes.
    fn step(&self, k: usize) -> Result<Option<S>> {
        let kk = S::from_int(k as i64);
        let mut num = S::one();
        for a in &self.upper {
            num = num * (a.clone() + kk.clone());
        }
        let mut den = S::from_int(k as i64 + 1);
        for b in &self.lower {
            den = den * (b.clone() + kk.clone());
        }
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "lower parameter reaches {} at k = {k}",
                -(k as i64)
            )));
        }
        if num.is_zero() {
            return Ok(None);
        }
        Ok(Some(num / den))
    }

    /// `F^{[m]}`, summed term by term (exact for exact scalars).
    pub fn partial_sum(&self, m: usize) -> Result<S> {
        Ok(self.partial_sum_with_scale(m)?.0)
    }

    fn partial_sum_with_scale(&self, m: usize) -> Result<(S, S)> {
        let mut term = S::one();
        let mut acc = S::one();
        let mut scale = S::one();
        for k in 0..m {
            match self.step(k)? {
                None => break,
                Some(r) => {
                    term = term * r;
                    acc = acc + term.clone();
                    scale = scale + term.abs();
                }
            }
        }
        Ok((acc, scale))
    }

    fn terminating_length(&self) -> Option<usize> {
        self.upper.iter().filter_map(nonpositive_integer).min()
    }

    /// The sum: a partial sum if truncated or terminating, otherwise an
    /// extrapolated float value.
    pub fn sum(&self) -> Result<S> {
        Ok(self.sum_with_scale()?.0)
    }

    /// The sum together with the sum of the absolute values of its terms.
    pub fn sum_with_scale(&self) -> Result<(S, S)> {
        if let Some(m) = self.truncation.or_else(|| self.terminating_length()) {
            return self.partial_sum_with_scale(m);
        }
        if S::EXACT {
            return Err(Error::InexactInfiniteSum);
        }
        let up: Vec<f64> = self.upper.iter().map(Scalar::to_f64).collect();
        let lo: Vec<f64> = self.lower.iter().map(Scalar::to_f64).collect();
        let (v, sc) = infinite_sum(&up, &lo)?;
        let conv = |x: f64| S::from_f64(x).ok_or_else(|| Error::Domain(format!("{x} not representable")));
        Ok((conv(v)?, conv(sc)?))
    }
}

/// Compensated running sum.
#[derive(Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

fn infinite_sum(upper: &[f64], lower: &[f64]) -> Result<(f64, f64)> {
    let spec = HypSeriesSpec::new(upper.to_vec(), lower.to_vec());
    let p = upper.len();
    let q = lower.len();
    if p > q + 1 {
        return Err(Error::Divergent(format!("{p}F{q} at unit argument")));
    }
    if p <= q {
        // Factorial decay: plain summation with a relative stop.
        let mut term = 1.0;
        let mut acc = Neumaier { sum: 1.0, comp: 0.0 };
        let mut scale = 1.0;
        for k in 0..MAX_TERMS {
            match spec.step(k)? {
                None => break,
                Some(r) => {
                    term *= r;
                    acc.add(term);
                    scale += term.abs();
                    if term.abs() < 1e-14 * (1.0 + acc.value().abs()) {
                        break;
                    }
                }
            }
        }
        return Ok((acc.value(), scale));
    }
    // Balanced: terms behave like k^{-1-s}, partial sums like S - K^{-s}(c_0 + c_1/K + ...).
    let s: f64 = lower.iter().sum::<f64>() - upper.iter().sum::<f64>();
    if s <= 0.0 {
        return Err(Error::Divergent(format!(
            "parameter excess {s} is not positive"
        )));
    }
    let mut checkpoints = Vec::with_capacity(RICHARDSON_LEVELS + 1);
    let mut next = RICHARDSON_BASE;
    let mut term = 1.0;
    let mut acc = Neumaier { sum: 1.0, comp: 0.0 };
    let mut scale = 1.0;
    let last = RICHARDSON_BASE << RICHARDSON_LEVELS;
    for k in 0..last {
        match spec.step(k)? {
            None => return Ok((acc.value(), scale)),
            Some(r) => {
                term *= r;
                acc.add(term);
                scale += term.abs();
            }
        }
        if k + 1 == next {
            checkpoints.push(acc.value());
            next *= 2;
        }
    }
    Ok((richardson(&checkpoints, s), scale))
}

/// Repeated Richardson extrapolation of sums at `K, 2K, 4K, ...` with error
/// exponents `s, s+1, s+2, ...`.
fn richardson(values: &[f64], s: f64) -> f64 {
    let mut row: Vec<f64> = values.to_vec();
    for j in 0..values.len() - 1 {
        let f = 2f64.powf(s + j as f64);
        row = row
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / (f - 1.0))
            .collect();
    }
    row[0]
}

/// `q_{(m_1,m_2)}(x)` for `n = 2`, `τ = d/2`, from the terminating `₄F₃`.
///
/// The prefactor `(m_2 + ρ_1 ± x_1)_{m_1-m_2}` is distributed into the sum as
/// `(m_2 + ρ_1 + k ± x_1)_{m_1-m_2-k}`, which keeps the value finite at points
/// where a lower parameter `m_2 + ρ_1 ± x_1` is a nonpositive integer.
pub fn q_rank2<S: Scalar>(m1: usize, m2: usize, pt: &[S], d: u32, rho: [&S; 2]) -> Result<S> {
    check_len(pt, 2)?;
    if m1 < m2 {
        return Err(Error::NotAPartition(format!("{m1},{m2}")));
    }
    let n = m1 - m2;
    let (x1, x2) = (&pt[0], &pt[1]);
    let half_d = S::ratio(d as i64, 2);
    let m2s = S::from_int(m2 as i64);
    let pre = poch_pm(rho[1], x1, m2) * poch_pm(rho[1], x2, m2);
    let a = m2s.clone() + rho[1].clone();
    let b = m2s + rho[0].clone();
    let mut coef = S::one();
    let mut acc = S::zero();
    for k in 0..=n {
        let kk = S::from_int(k as i64);
        acc = acc + coef.clone() * poch_pm(&(b.clone() + kk.clone()), x1, n - k);
        if k == n {
            break;
        }
        let low = S::from_int(1 - n as i64 + k as i64) - half_d.clone();
        if low.is_zero() {
            return Err(Error::Pole(format!("lower parameter 1-N-d/2 reaches 0 at k = {k}")));
        }
        coef = coef
            * S::from_int(k as i64 - n as i64)
            * poch_pm(&(a.clone() + kk.clone()), x2, 1)
            * (half_d.clone() + kk.clone())
            / (low * S::from_int(k as i64 + 1));
    }
    Ok(pre * acc)
}

/// The `d = 2` form
/// `(ρ_2 ± x_1, ρ_2 ± x_2)_{m_2} (m_2 + ρ_1 ± x_1)_N F^{[N]}(m_2 + ρ_2 ± x_2, 1; m_2 + ρ_1 ± x_1)`.
pub fn q_rank2_d2_partial<S: Scalar>(m1: usize, m2: usize, pt: &[S], rho: [&S; 2]) -> Result<S> {
    check_len(pt, 2)?;
    if m1 < m2 {
        return Err(Error::NotAPartition(format!("{m1},{m2}")));
    }
    let n = m1 - m2;
    let (x1, x2) = (&pt[0], &pt[1]);
    let m2s = S::from_int(m2 as i64);
    let a = m2s.clone() + rho[1].clone();
    let b = m2s + rho[0].clone();
    let spec = HypSeriesSpec::new(
        vec![a.clone() + x2.clone(), a - x2.clone(), S::one()],
        vec![b.clone() + x1.clone(), b.clone() - x1.clone()],
    );
    let pre = poch_pm(rho[1], x1, m2) * poch_pm(rho[1], x2, m2) * poch_pm(&b, x1, n);
    Ok(pre * spec.partial_sum(n)?)
}

fn r_spec(pt: &[f64], d: u32, rho: [f64; 2]) -> HypSeriesSpec<f64> {
    let (x1, x2) = (pt[0], pt[1]);
    HypSeriesSpec::new(
        vec![rho[1] + x2, rho[1] - x2, d as f64 / 2.0],
        vec![rho[0] + x1, rho[0] - x1],
    )
}

/// `R(x) = F(ρ_2 ± x_2, d/2; ρ_1 ± x_1)`.
pub fn r_series(pt: &[f64], d: u32, rho: [f64; 2]) -> Result<f64> {
    check_len(pt, 2)?;
    r_spec(pt, d, rho).sum()
}

/// `R(x)` and the sum of the absolute values of its terms.
pub fn r_series_with_scale(pt: &[f64], d: u32, rho: [f64; 2]) -> Result<(f64, f64)> {
    check_len(pt, 2)?;
    r_spec(pt, d, rho).sum_with_scale()
}

/// `R(x)` for `SU(2,2)` (`ρ = (3/2, 1/2)`, `d = 2`) as a Gamma quotient:
/// `π Γ(ρ_1 + x_1) Γ(ρ_1 - x_1) / (2 Γ((ρ_1+ρ_2 ± x_1 ± x_2)/2))`.
///
/// Poles of the denominator give an exact zero; a pole of `Γ(ρ_1 - x_1)` is
/// an error.
pub fn r_closed_form_b0(pt: &[f64]) -> Result<f64> {
    check_len(pt, 2)?;
    let (r1, r2, d) = (1.5, 0.5, 2);
    let (x1, x2) = (pt[0], pt[1]);
    let num = gamma(r1 + x1)? * gamma(r1 - x1)?;
    let s = r1 + r2;
    let den = recip_gamma((s + x1 + x2) / 2.0)
        * recip_gamma((s + x1 - x2) / 2.0)
        * recip_gamma((s - x1 + x2) / 2.0)
        * recip_gamma((s - x1 - x2) / 2.0);
    Ok(PI * num * den / 2f64.powi(d - 1))
}

/// `1 - (1/2)(2ρ_2 + 1/2)/(2ρ_2 + 1) Σ_{k=0}^{2ρ_2} 1/(1/2 + k)` with
/// `2ρ_2 = b + 1`: the value of `R` at the midpoint of the hypotenuse of `T_2`
/// for `d = 2`, exactly.
pub fn r_midpoint_telescoped_exact(b: u32) -> BigRational {
    let two_rho2 = b as i64 + 1;
    let harmonic: BigRational = (0..=two_rho2).map(|k| rat(2, 2 * k + 1)).sum();
    int(1) - rat(1, 2) * (int(two_rho2) + rat(1, 2)) / int(two_rho2 + 1) * harmonic
}

pub fn r_midpoint_telescoped(b: u32) -> f64 {
    Scalar::to_f64(&r_midpoint_telescoped_exact(b))
}

/// The triangles `T_1 = [0, ρ_2]^2 ∩ 𝒞` and
/// `T_2 = {x_1 >= x_2 >= ρ_2, x_1 + x_2 <= ρ_1 + ρ_2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Regions {
    pub rho1: BigRational,
    pub rho2: BigRational,
}

impl Rank2Regions {
    pub fn new(rho1: BigRational, rho2: BigRational) -> Self {
        Rank2Regions { rho1, rho2 }
    }

    pub fn in_t1<S: Scalar>(&self, pt: &[S]) -> bool {
        let r2 = S::from_rational(&self.rho2);
        pt[0] <= r2 && pt[0] >= pt[1] && pt[1] >= S::zero()
    }

    pub fn in_t2<S: Scalar>(&self, pt: &[S]) -> bool {
        let r2 = S::from_rational(&self.rho2);
        let sum = S::from_rational(&(&self.rho1 + &self.rho2));
        pt[0] >= pt[1] && pt[1] >= r2 && pt[0].clone() + pt[1].clone() <= sum
    }
}

/// `x ∈ ℬ = {q_{1,0} >= 0, q_{1,1} >= 0, R >= 0}` with float sign deadbands.
///
/// `R` is only summed once the two polynomial tests pass. The only pole of
/// `R` that survives them is `x = ρ`, where every `q_λ` vanishes; it counts
/// as a boundary point.
pub fn in_b(pt: &[f64], d: u32, rho: [f64; 2]) -> Result<bool> {
    check_len(pt, 2)?;
    let (x1, x2) = (pt[0], pt[1]);
    let (r1s, r2s) = (rho[0] * rho[0], rho[1] * rho[1]);
    let (y1, y2) = (x1 * x1, x2 * x2);
    let q10 = r1s + r2s - y1 - y2;
    if q10.sign_band(&(r1s + r2s + y1 + y2)) == Sign::Negative {
        return Ok(false);
    }
    let f1 = (r2s - y1).sign_band(&(r2s + y1));
    let f2 = (r2s - y2).sign_band(&(r2s + y2));
    let q11_negative = matches!(
        (f1, f2),
        (Sign::Negative, Sign::Positive) | (Sign::Positive, Sign::Negative)
    );
    if q11_negative {
        return Ok(false);
    }
    match r_series_with_scale(pt, d, rho) {
        Ok((v, scale)) => Ok(v.sign_band(&scale).is_nonnegative()),
        Err(Error::Pole(_)) => Ok(true),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::okounkov::{okounkov_eval, Params};
    use crate::partitions::Partition;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn partial_sum_examples() {
        let empty: HypSeriesSpec<BigRational> = HypSeriesSpec::new(vec![], vec![]).truncated(0);
        assert_eq!(empty.sum().unwrap(), int(1));
        let spec = HypSeriesSpec::new(vec![rat(3, 2), rat(-1, 2), int(1)], vec![rat(5, 2), rat(1, 2)]);
        assert_eq!(spec.partial_sum(2).unwrap(), rat(9, 35));
        assert_eq!(spec.clone().truncated(2).sum().unwrap(), rat(9, 35));
        assert_eq!(spec.sum(), Err(Error::InexactInfiniteSum));
        // terminating series are summed exactly
        let t = HypSeriesSpec::new(vec![int(-2), int(1)], vec![int(3)]);
        assert_eq!(t.sum().unwrap(), int(1) - rat(2, 3) + rat(1, 6));
        let pole = HypSeriesSpec::new(vec![int(1)], vec![int(-1)]);
        assert!(matches!(pole.partial_sum(3), Err(Error::Pole(_))));
        let div = HypSeriesSpec::new(vec![1.0, 1.0], vec![1.5]);
        assert!(matches!(div.sum(), Err(Error::Divergent(_))));
    }

    // Gauss: 2F1(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)).
    #[test]
    fn balanced_sum_matches_gauss() {
        for &(a, b, c) in &[
            (0.5, 0.5, 2.0),
            (0.3, -0.7, 0.9),
            (1.0, 1.0, 2.5),
            (0.25, 1.5, 2.3),
            (-0.5, 2.0, 3.0),
            (0.5, 0.5, 1.5),
            (0.7, 0.6, 1.8),
        ] {
            let got = HypSeriesSpec::new(vec![a, b], vec![c]).sum().unwrap();
            let want = gamma(c).unwrap() * gamma(c - a - b).unwrap()
                / (gamma(c - a).unwrap() * gamma(c - b).unwrap());
            assert!(close(got, want, 1e-12), "{a} {b} {c}: {got} vs {want}");
        }
    }

    #[test]
    fn factorial_decay_sum() {
        // 0F0(;;1) = e, 1F1(1;2;1) = e - 1
        let e = HypSeriesSpec::<f64>::new(vec![], vec![]).sum().unwrap();
        assert!(close(e, std::f64::consts::E, 1e-14));
        let v = HypSeriesSpec::new(vec![1.0], vec![2.0]).sum().unwrap();
        assert!(close(v, std::f64::consts::E - 1.0, 1e-14));
    }

    fn su22_rho() -> [BigRational; 2] {
        [rat(3, 2), rat(1, 2)]
    }

    #[test]
    fn low_degree_closed_forms() {
        let rho = su22_rho();
        let x = [rat(4, 3), rat(-2, 5)];
        let (r1s, r2s) = (&rho[0] * &rho[0], &rho[1] * &rho[1]);
        let (y1, y2) = (&x[0] * &x[0], &x[1] * &x[1]);
        assert_eq!(
            q_rank2(1, 0, &x, 2, [&rho[0], &rho[1]]).unwrap(),
            &r1s + &r2s - &y1 - &y2
        );
        assert_eq!(
            q_rank2(1, 1, &x, 2, [&rho[0], &rho[1]]).unwrap(),
            (&r2s - &y1) * (&r2s - &y2)
        );
    }

    #[test]
    fn q_rank2_matches_tableaux() {
        for d in 1..=3u32 {
            for alpha in [rat(1, 2), int(1)] {
                let pr = Params::new(2, rat(d as i64, 2), alpha).unwrap();
                let rho = pr.rho();
                let pts = [
                    [rat(1, 3), rat(7, 4)],
                    [rho[0].clone(), rho[1].clone()],
                    [rat(-5, 2), int(0)],
                    [&rho[0] + int(1), &rho[1] - int(2)],
                ];
                for m1 in 0..=4 {
                    for m2 in 0..=m1 {
                        let lam = Partition::new(vec![m1, m2]).unwrap();
                        for x in &pts {
                            let sign = if (m1 + m2) % 2 == 0 { int(1) } else { int(-1) };
                            let want = sign * okounkov_eval(&lam, x, &pr).unwrap();
                            let got = q_rank2(m1, m2, x, d, [&rho[0], &rho[1]]).unwrap();
                            assert_eq!(got, want, "d={d} ({m1},{m2}) at {x:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d2_partial_sum_form_agrees() {
        let rho = su22_rho();
        for x in [[rat(1, 3), rat(7, 4)], [rat(2, 7), rat(-1, 9)]] {
            for m1 in 0..=5 {
                for m2 in 0..=m1 {
                    assert_eq!(
                        q_rank2_d2_partial(m1, m2, &x, [&rho[0], &rho[1]]).unwrap(),
                        q_rank2(m1, m2, &x, 2, [&rho[0], &rho[1]]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn r_series_examples() {
        let rho = [1.5, 0.5];
        assert!(r_series(&[1.0, 1.0], 2, rho).unwrap().abs() < 1e-8);
        assert!(r_series(&[0.5, 0.5], 2, rho).unwrap() > 0.0);
        let rho3 = [2.0, 1.0];
        assert!(r_series(&[1.5, 1.5], 2, rho3).unwrap() < 0.0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(r_closed_form_b0(&[1.0, 1.0]).unwrap(), 0.0);
        let a = r_closed_form_b0(&[0.5, 0.5]).unwrap();
        assert!(close(a, r_series(&[0.5, 0.5], 2, [1.5, 0.5]).unwrap(), 1e-8));
        assert!(r_closed_form_b0(&[1.2, 0.9]).unwrap() < 0.0);
        assert!(matches!(r_closed_form_b0(&[1.5, 0.2]), Err(Error::Pole(_))));
    }

    #[test]
    fn closed_form_matches_series_on_grid() {
        let n = 50;
        for i in 0..n {
            for j in 0..=i {
                let x1 = 2.0 * i as f64 / (n - 1) as f64;
                let x2 = 2.0 * j as f64 / (n - 1) as f64;
                // skip the pole line x1 = 3/2 and its neighbourhood
                if (x1 - 1.5).abs() < 1e-3 {
                    continue;
                }
                let a = r_closed_form_b0(&[x1, x2]).unwrap();
                let b = r_series(&[x1, x2], 2, [1.5, 0.5]).unwrap();
                assert!((a - b).abs() <= 1e-8 * (1.0 + a.abs()), "({x1},{x2}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn midpoint_values() {
        assert_eq!(r_midpoint_telescoped_exact(0), int(0));
        for b in 1..=3 {
            assert!(r_midpoint_telescoped(b) < 0.0);
        }
        for b in 0..=3u32 {
            let rho2 = (b as f64 + 1.0) / 2.0;
            let mid = rho2 + 0.5;
            let s = r_series(&[mid, mid], 2, [rho2 + 1.0, rho2]).unwrap();
            assert!((s - r_midpoint_telescoped(b)).abs() < 1e-8, "b={b}");
        }
    }

    #[test]
    fn truncations_decrease_to_r() {
        let rho = [2.0, 1.0];
        for &(x1, x2) in &[(1.5, 1.2), (1.9, 1.1), (1.3, 1.3)] {
            let spec = r_spec(&[x1, x2], 2, rho);
            let r = spec.sum().unwrap();
            let mut prev = f64::INFINITY;
            for m in 0..60 {
                let f = spec.partial_sum(m).unwrap();
                assert!(f <= prev + 1e-15 && f >= r - 1e-12, "m={m}");
                prev = f;
            }
        }
    }

    #[test]
    fn su22_b_is_two_triangles() {
        let reg = Rank2Regions::new(rat(3, 2), rat(1, 2));
        let n = 60;
        for i in 0..n {
            for j in 0..=i {
                let x = [2.2 * i as f64 / (n - 1) as f64, 2.2 * j as f64 / (n - 1) as f64];
                let band = [(x[0] - 0.5).abs(), (x[1] - 0.5).abs(), (x[0] + x[1] - 2.0).abs()];
                if band.iter().any(|&b| b < 1e-6) {
                    continue;
                }
                let want = reg.in_t1(&x) || reg.in_t2(&x);
                assert_eq!(in_b(&x, 2, [1.5, 0.5]).unwrap(), want, "{x:?}");
            }
        }
        assert!(in_b(&[1.5, 0.5], 2, [1.5, 0.5]).unwrap());
        assert!(!in_b(&[1.5, 1.5], 2, [2.0, 1.0]).unwrap());
    }
}
