//! The rank-two sets of `U(m+2, 2)` through limits of rescaled polynomials:
//! the Gamma product identity, the sine quotient `s_m`, its divided difference
//! `S`, the region `W`, and the diagonal crossing point `c_m` of `S = 0`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{cos_pi, log_gamma, recip_gamma, sin_pi};
use crate::scalar::{check_len, Scalar, Sign};

/// Below this separation [`s_div`] switches to the analytic derivative.
pub const DIAGONAL_SWITCH: f64 = 1e-8;
/// Slack allowed when testing `S(x - α) >= 0`.
pub const W_SLACK: f64 = 1e-9;

/// `m` together with `α = (m+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitProfile {
    pub m: u32,
    pub alpha: BigRational,
}

impl LimitProfile {
    pub fn new(m: u32) -> Self {
        LimitProfile {
            m,
            alpha: BigRational::new((m as i64 + 1).into(), 2.into()),
        }
    }

    pub fn alpha_f64(&self) -> f64 {
        (self.m as f64 + 1.0) / 2.0
    }

    /// `ρ = (α + 1, α)`.
    pub fn rho(&self) -> [f64; 2] {
        let a = self.alpha_f64();
        [a + 1.0, a]
    }
}

fn signed_gamma_log(t: f64) -> Result<(f64, f64)> {
    let lg = log_gamma(t)?;
    Ok((lg.ln_abs, lg.sign))
}

/// `Γ(c)Γ(d) / (Γ(a)Γ(b))`, the value of `∏_{n>=0} (n+a)(n+b)/((n+c)(n+d))`
/// when `a + b = c + d`.
pub fn gamma_ratio_identity(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    if (a + b - c - d).abs() > 1e-12 {
        return Err(Error::Domain(format!("a + b = {} differs from c + d = {}", a + b, c + d)));
    }
    let (la, sa) = signed_gamma_log(a)?;
    let (lb, sb) = signed_gamma_log(b)?;
    let (lc, sc) = signed_gamma_log(c)?;
    let (ld, sd) = signed_gamma_log(d)?;
    Ok(sa * sb * sc * sd * (lc + ld - la - lb).exp())
}

/// `r_l(t) = ∏_{n<l} ((n+α)^2 - t^2) / (n+α)^2`.
pub fn r_partial<S: Scalar>(l: usize, t: &S, alpha: &S) -> S {
    let t2 = t.clone() * t.clone();
    let mut acc = S::one();
    for n in 0..l {
        let a = S::from_int(n as i64) + alpha.clone();
        let a2 = a.clone() * a;
        acc = acc * (a2.clone() - t2.clone()) / a2;
    }
    acc
}

/// `r(t) = Γ(α)^2 / (Γ(α+t)Γ(α-t))`, zero where either Gamma has a pole.
pub fn r_limit(t: f64, alpha: f64) -> f64 {
    let ga = log_gamma(alpha).map(|g| g.value()).unwrap_or(f64::NAN);
    ga * ga * recip_gamma(alpha + t) * recip_gamma(alpha - t)
}

fn pole_check(t: f64, m: u32) -> Result<()> {
    if (1..=m).any(|i| t + i as f64 == 0.0) {
        return Err(Error::Pole(format!("s_{m} has a pole at {t}")));
    }
    Ok(())
}

/// `g(t) = (t+1)⋯(t+m)` and `g'(t)`.
fn g_and_prime(t: f64, m: u32) -> (f64, f64) {
    let mut g = 1.0;
    let mut dg = 0.0;
    for i in 1..=m {
        let f = t + i as f64;
        dg = dg * f + g;
        g *= f;
    }
    (g, dg)
}

/// `s_m(t) = sin πt / ((t+1)⋯(t+m))`.
pub fn s_m(t: f64, m: u32) -> Result<f64> {
    pole_check(t, m)?;
    Ok(sin_pi(t) / g_and_prime(t, m).0)
}

/// `s_m'(t) = (π cos πt g - sin πt g') / g^2`.
pub fn s_m_prime(t: f64, m: u32) -> Result<f64> {
    pole_check(t, m)?;
    let (g, dg) = g_and_prime(t, m);
    Ok((PI * cos_pi(t) * g - sin_pi(t) * dg) / (g * g))
}

/// The divided difference `(s(x) - s(y)) / (x - y)`, or `s'` on the diagonal.
pub fn s_div(x: f64, y: f64, m: u32) -> Result<f64> {
    if (x - y).abs() < DIAGONAL_SWITCH {
        return s_m_prime((x + y) / 2.0, m);
    }
    Ok((s_m(x, m)? - s_m(y, m)?) / (x - y))
}

/// `[0, α]^2 ∩ 𝒞`.
pub fn in_t1(pt: &[f64], m: u32) -> bool {
    let a = LimitProfile::new(m).alpha_f64();
    pt[0] >= pt[1] && pt[1] >= 0.0 && pt[0] <= a
}

/// `[α, α+1]^2 ∩ 𝒞`.
pub fn in_t2(pt: &[f64], m: u32) -> bool {
    let a = LimitProfile::new(m).alpha_f64();
    pt[0] >= pt[1] && pt[1] >= a && pt[0] <= a + 1.0
}

/// `x ∈ W = {x ∈ T_2 : S(x - α) >= 0}`.
pub fn in_w(pt: &[f64], m: u32) -> bool {
    if pt.len() != 2 || !in_t2(pt, m) {
        return false;
    }
    let a = LimitProfile::new(m).alpha_f64();
    s_div(pt[0] - a, pt[1] - a, m).is_ok_and(|v| v >= -W_SLACK)
}

/// `x ∈ 𝒢₀ = T_1 ∪ {x ∈ T_2 : q_{1,0}(x) >= 0}` with `ρ = (α+1, α)`.
pub fn in_g0_rank2(pt: &[f64], m: u32) -> bool {
    if pt.len() != 2 {
        return false;
    }
    if in_t1(pt, m) {
        return true;
    }
    if !in_t2(pt, m) {
        return false;
    }
    let [r1, r2] = LimitProfile::new(m).rho();
    let pos = r1 * r1 + r2 * r2;
    let neg = pt[0] * pt[0] + pt[1] * pt[1];
    (pos - neg).sign_band(&(pos + neg)) != Sign::Negative
}

/// The decreasing sequence `c_0, …, c_{l_max}` at a point of the open square
/// `α < x_2 <= x_1 < α + 1`, and its limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClSequence<S> {
    pub values: Vec<S>,
    pub limit: f64,
}

/// `c_l(x) = q_{l,0}(x) / (-ψ_{l+1}(x_2))`, computed by the recurrence
/// `c_l = c_{l-1} f_l - 1/D_l` with `D_l = (l+α)^2 - x_2^2` and
/// `f_l = ((l+α)^2 - x_1^2) / D_l`, which stays accurate near the diagonal.
pub fn c_l_sequence<S: Scalar>(pt: &[S], m: u32, l_max: usize) -> Result<ClSequence<S>> {
    check_len(pt, 2)?;
    let prof = LimitProfile::new(m);
    let alpha = S::from_rational(&prof.alpha);
    let (x1, x2) = (pt[0].clone(), pt[1].clone());
    if !(x1 < alpha.clone() + S::one() && x1 >= x2 && x2 > alpha) {
        return Err(Error::Domain(format!(
            "({x1}, {x2}) is outside the open square α < x_2 <= x_1 < α + 1"
        )));
    }
    let (y1, y2) = (x1.clone() * x1.clone(), x2.clone() * x2.clone());
    let mut values = Vec::with_capacity(l_max + 1);
    let mut c = S::zero();
    for l in 0..=l_max {
        let a = S::from_int(l as i64) + alpha.clone();
        let a2 = a.clone() * a;
        let den = a2.clone() - y2.clone();
        c = (c * (a2 - y1.clone()) - S::one()) / den;
        values.push(c.clone());
    }
    let (u1, u2) = (x1.to_f64() - prof.alpha_f64(), x2.to_f64() - prof.alpha_f64());
    let limit = s_div(u1, u2, m)? / ((x1.to_f64() + x2.to_f64()) * s_m(u2, m)?);
    Ok(ClSequence { values, limit })
}

/// The root of `π cot πc = Σ_{i=1}^m 1/(c+i)` in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub c_m: f64,
    pub residual: f64,
    /// Whether the bracketed function was seen to decrease strictly on a
    /// sample of the bracket.
    pub monotone: bool,
}

fn crossing_fn(c: f64, m: u32) -> f64 {
    let sum: f64 = (1..=m).map(|i| 1.0 / (c + i as f64)).sum();
    PI * cos_pi(c) / sin_pi(c) - sum
}

/// Bisection on `[1e-6, 1 - 1e-6]`, to an interval width of `1e-13`.
pub fn crossing_point(m: u32) -> Crossing {
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    let mut mid = 0.5 * (lo + hi);
    while hi - lo > 1e-13 {
        mid = 0.5 * (lo + hi);
        let v = crossing_fn(mid, m);
        if v == 0.0 {
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    let samples: Vec<f64> = (0..=1000)
        .map(|i| crossing_fn(1e-6 + (1.0 - 2e-6) * i as f64 / 1000.0, m))
        .collect();
    Crossing {
        c_m: mid,
        residual: crossing_fn(mid, m).abs(),
        monotone: samples.windows(2).all(|w| w[1] < w[0]),
    }
}

/// One connected piece of a traced level set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ContourPolyline {
    pub points: Vec<(f64, f64)>,
}

/// The zero set of `(x, y) ↦ S(x, y)` on `[0, 1.2]^2`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Contour {
    pub components: Vec<ContourPolyline>,
}

/// Side of the square window traced by [`trace_contour`].
pub const CONTOUR_WINDOW: f64 = 1.2;

impl Contour {
    /// `x,y` rows with a blank line between components.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for (x, y) in &c.points {
                let _ = writeln!(out, "{x},{y}");
            }
        }
        out
    }

    /// Points where the traced curve meets the diagonal `x = y`.
    pub fn diagonal_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for c in &self.components {
            for w in c.points.windows(2) {
                let (p, q) = (w[0], w[1]);
                let (dp, dq) = (p.0 - p.1, q.0 - q.1);
                if dp == 0.0 {
                    out.push(p.0);
                } else if dp * dq < 0.0 {
                    let t = dp / (dp - dq);
                    out.push(p.0 + t * (q.0 - p.0));
                }
            }
            if let Some(&(x, y)) = c.points.last() {
                if x == y && c.points.len() > 1 {
                    out.push(x);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

/// Marching squares for `S_div(·, ·, m) = 0` on `[0, 1.2]^2` with `grid`
/// cells per side. Ambiguous cells are resolved by the value at the centre.
pub fn trace_contour(m: u32, grid: usize) -> Result<Contour> {
    if grid < 16 {
        return Err(Error::Domain(format!("grid {grid} is below 16")));
    }
    let h = CONTOUR_WINDOW / grid as f64;
    let coord = |i: usize| CONTOUR_WINDOW * i as f64 / grid as f64;
    let side = grid + 1;
    let values: Vec<f64> = (0..side * side)
        .into_par_iter()
        .map(|k| s_div(coord(k % side), coord(k / side), m))
        .collect::<Result<_>>()?;
    let val = |i: usize, j: usize| values[j * side + i];

    // Edge ids: horizontal edge (i,j)-(i+1,j) is j*grid + i, vertical edge
    // (i,j)-(i,j+1) is side*grid + j*side + i.
    let h_edge = |i: usize, j: usize| j * grid + i;
    let v_edge = |i: usize, j: usize| side * grid + j * side + i;
    let point_on = |id: usize| -> (f64, f64) {
        let (p0, p1) = if id < side * grid {
            let (i, j) = (id % grid, id / grid);
            ((i, j), (i + 1, j))
        } else {
            let r = id - side * grid;
            let (i, j) = (r % side, r / side);
            ((i, j), (i, j + 1))
        };
        let (a, b) = (val(p0.0, p0.1), val(p1.0, p1.1));
        let t = a / (a - b);
        (
            coord(p0.0) + t * (coord(p1.0) - coord(p0.0)),
            coord(p0.1) + t * (coord(p1.1) - coord(p0.1)),
        )
    };

    let cells: Vec<Vec<(usize, usize)>> = (0..grid * grid)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % grid, k / grid);
            // corners counterclockwise from (i,j); edges bottom, right, top, left
            let corners = [val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)];
            let edges = [h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)];
            let pos: Vec<bool> = corners.iter().map(|v| *v >= 0.0).collect();
            let crossing: Vec<usize> = (0..4).filter(|&e| pos[e] != pos[(e + 1) % 4]).collect();
            match crossing.len() {
                2 => vec![(edges[crossing[0]], edges[crossing[1]])],
                4 => {
                    let centre = s_div(coord(i) + h / 2.0, coord(j) + h / 2.0, m)
                        .map(|v| v >= 0.0)
                        .unwrap_or(pos[0]);
                    // Join each edge to the neighbour that separates the
                    // corners sharing the centre's sign from the rest.
                    if centre == pos[0] {
                        vec![(edges[0], edges[1]), (edges[2], edges[3])]
                    } else {
                        vec![(edges[3], edges[0]), (edges[1], edges[2])]
                    }
                }
                _ => Vec::new(),
            }
        })
        .collect();
    let segments: Vec<(usize, usize)> = cells.into_iter().flatten().collect();

    let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        by_edge.entry(a).or_default().push(s);
        by_edge.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut components = Vec::new();
    // Start open chains at edges used once, then sweep up the closed loops.
    let mut starts: Vec<usize> = (0..segments.len())
        .filter(|&s| {
            let (a, b) = segments[s];
            by_edge[&a].len() == 1 || by_edge[&b].len() == 1
        })
        .collect();
    starts.extend(0..segments.len());
    for s0 in starts {
        if used[s0] {
            continue;
        }
        let (a, b) = segments[s0];
        let (mut from, mut at) = if by_edge[&b].len() == 1 { (b, a) } else { (a, b) };
        let mut ids = vec![from, at];
        used[s0] = true;
        loop {
            let next = by_edge[&at].iter().copied().find(|&s| !used[s]);
            let Some(s) = next else { break };
            used[s] = true;
            let (p, q) = segments[s];
            from = at;
            at = if p == from { q } else { p };
            ids.push(at);
        }
        components.push(ContourPolyline {
            points: ids.into_iter().map(point_on).collect(),
        });
    }
    Ok(Contour { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::q_rank2;
    use crate::scalar::{int, rat};

    #[test]
    fn gamma_ratio_examples() {
        assert!((gamma_ratio_identity(0.3, 1.7, 0.3, 1.7).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_ratio_identity(1.5, -0.5, 0.5, 0.5).unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(gamma_ratio_identity(0.0, 1.0, 0.5, 0.5), Err(Error::Pole(_))));
        assert!(matches!(gamma_ratio_identity(1.0, 1.0, 0.5, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_ratio_against_product() {
        for &(a, b, c) in &[(0.7, 1.4, 0.9), (2.5, 0.25, 1.0), (1.2, 1.2, 2.1)] {
            let d = a + b - c;
            let mut p = 1.0;
            for n in 0..100_000 {
                let n = n as f64;
                p *= (n + a) * (n + b) / ((n + c) * (n + d));
            }
            let v = gamma_ratio_identity(a, b, c, d).unwrap();
            assert!((p - v).abs() < 1e-4, "{a} {b} {c}: {p} vs {v}");
        }
    }

    #[test]
    fn r_partial_examples() {
        assert_eq!(r_partial(0, &rat(3, 7), &rat(1, 2)), int(1));
        assert_eq!(r_partial(9, &int(0), &rat(3, 2)), int(1));
        for l in 1..=10i64 {
            assert_eq!(r_partial(l as usize, &int(1), &rat(1, 2)), rat(-(2 * l + 1), 2 * l - 1));
        }
        assert_eq!(r_limit(0.0, 1.5), 1.0);
        assert!((r_limit(1.0, 0.5) + 1.0).abs() < 1e-13);
        assert_eq!(r_limit(1.5, 0.5), 0.0);
    }

    #[test]
    fn r_partial_tends_to_limit() {
        for alpha in [0.5, 1.0, 1.5] {
            for k in 1..=9 {
                let t = k as f64 / 10.0;
                let d = r_partial(100_000, &t, &alpha) - r_limit(t, alpha);
                assert!(d.abs() < 1e-3, "α={alpha} t={t}: {d}");
            }
        }
    }

    #[test]
    fn limit_is_a_sine_quotient() {
        for m in 0..=3u32 {
            let alpha = (m as f64 + 1.0) / 2.0;
            let g2 = log_gamma(alpha).unwrap().value().powi(2);
            for k in -17..=17 {
                let t = k as f64 * 0.05 + 0.013;
                let lhs = r_limit(t + alpha, alpha);
                let rhs = -g2 / PI * s_m(t, m).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "m={m} t={t}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn sine_quotient_examples() {
        assert_eq!(s_m(0.5, 0).unwrap(), 1.0);
        for m in 0..5 {
            for t in 0..4 {
                assert_eq!(s_m(t as f64, m).unwrap(), 0.0);
            }
        }
        assert!(matches!(s_m(-2.0, 3), Err(Error::Pole(_))));
        let mut fact = 1.0;
        for m in 0..=3u32 {
            fact *= (m + 1) as f64;
            let want = -PI / fact;
            assert!((s_m_prime(1.0, m).unwrap() - want).abs() < 1e-14);
            assert!((s_div(1.0, 1.0, m).unwrap() - want).abs() < 1e-14);
        }
        assert_eq!(s_div(0.3, 0.8, 2).unwrap(), s_div(0.8, 0.3, 2).unwrap());
        // derivative against a central difference
        let (t, h) = (0.37, 1e-5);
        let fd = (s_m(t + h, 2).unwrap() - s_m(t - h, 2).unwrap()) / (2.0 * h);
        assert!((fd - s_m_prime(t, 2).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn w_examples() {
        for m in 0..=3u32 {
            let a = (m as f64 + 1.0) / 2.0;
            assert!(!in_w(&[a + 1.0, a + 0.4], m));
            assert!(in_w(&[a, a], m));
        }
        // m = 0: W is the triangle x_1 + x_2 <= 2α + 1
        let n = 40;
        for i in 0..=n {
            for j in 0..=i {
                let pt = [0.5 + i as f64 / n as f64, 0.5 + j as f64 / n as f64];
                if (pt[0] + pt[1] - 2.0).abs() < 1e-9 {
                    continue;
                }
                assert_eq!(in_w(&pt, 0), pt[0] + pt[1] < 2.0, "{pt:?}");
            }
        }
    }

    #[test]
    fn g0_examples() {
        for m in 0..=3u32 {
            let a = (m as f64 + 1.0) / 2.0;
            assert!(in_g0_rank2(&[a * 0.9, a * 0.3], m));
            assert!(!in_g0_rank2(&[a + 1.0, a + 1.0], m));
            assert!(in_g0_rank2(&[a + 1.0, a], m));
        }
    }

    #[test]
    fn c_l_matches_hypergeometric_q() {
        // q_{l,0} from the terminating 4F3 against c_l (-ψ_{l+1}(x_2)).
        for m in 0..=2u32 {
            let prof = LimitProfile::new(m);
            let alpha = prof.alpha.clone();
            let rho = [&alpha + int(1), alpha.clone()];
            for pt in [
                [&alpha + rat(3, 5), &alpha + rat(1, 7)],
                [&alpha + rat(1, 3), &alpha + rat(1, 3)],
            ] {
                let seq = c_l_sequence(&pt, m, 8).unwrap();
                for (l, c) in seq.values.iter().enumerate() {
                    let mut psi = int(1);
                    for n in 0..=l {
                        let a = int(n as i64) + &alpha;
                        psi *= &a * &a - &pt[1] * &pt[1];
                    }
                    let q = q_rank2(l, 0, &pt, 2, [&rho[0], &rho[1]]).unwrap();
                    assert_eq!(q, c * -psi, "m={m} l={l}");
                }
            }
        }
    }

    #[test]
    fn c_l_decreases_to_limit() {
        for m in 0..=2u32 {
            let a = (m as f64 + 1.0) / 2.0;
            for &(u1, u2) in &[(0.9, 0.2), (0.6, 0.55), (0.3, 0.3), (0.95, 0.9)] {
                let seq = c_l_sequence(&[a + u1, a + u2], m, 10_000).unwrap();
                assert!(seq.values.windows(2).all(|w| w[1] < w[0]));
                let last = *seq.values.last().unwrap();
                assert!(last >= seq.limit);
                // the gap behaves like b / l with b = s(x_1 - α)/s(x_2 - α)
                let b = s_m(u1, m).unwrap() / s_m(u2, m).unwrap();
                let gap = (last - seq.limit) * 10_000.0;
                assert!((gap - b).abs() < 0.05 * b + 1e-6, "m={m} ({u1},{u2}): {gap} vs {b}");
                if b < 1.0 {
                    assert!(last - seq.limit < 1e-4);
                }
            }
        }
        assert!(matches!(c_l_sequence(&[2.0, 0.5], 0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn crossing_examples() {
        let c0 = crossing_point(0);
        assert_eq!(c0.c_m, 0.5);
        assert!(c0.monotone);
        let c1 = crossing_point(1);
        assert!(c1.c_m > 0.0 && c1.c_m < 0.5 && c1.residual < 1e-10);
        let mut prev = 1.0;
        for m in 0..=20 {
            let c = crossing_point(m);
            assert!(c.monotone && c.c_m < prev);
            // the crossing point is where s_m' vanishes
            assert!(s_m_prime(c.c_m, m).unwrap().abs() < 1e-9);
            prev = c.c_m;
        }
    }

    #[test]
    fn contour_crosses_diagonal_at_c_m() {
        for m in 0..=3u32 {
            let grid = 120;
            let contour = trace_contour(m, grid).unwrap();
            let c = crossing_point(m).c_m;
            let hits = contour.diagonal_crossings();
            assert!(
                hits.iter().any(|x| (x - c).abs() < 2.0 / grid as f64),
                "m={m}: {hits:?} vs {c}"
            );
            // symmetric about the diagonal
            let pts: Vec<(f64, f64)> =
                contour.components.iter().flat_map(|c| c.points.clone()).collect();
            for &(x, y) in &pts {
                assert!(
                    pts.iter().any(|&(u, v)| (u - y).abs() < 1e-9 && (v - x).abs() < 1e-9),
                    "m={m}: no mirror for ({x},{y})"
                );
            }
        }
        let c0 = trace_contour(0, 64).unwrap();
        assert!(c0
            .components
            .iter()
            .flat_map(|c| &c.points)
            .any(|&(x, y)| (x - 0.5).abs() < 0.02 && (y - 0.5).abs() < 0.02));
        assert!(matches!(trace_contour(0, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn contour_csv_layout() {
        let c = Contour {
            components: vec![
                ContourPolyline { points: vec![(0.0, 1.0), (0.5, 0.5)] },
                ContourPolyline { points: vec![(1.0, 0.25)] },
            ],
        };
        assert_eq!(c.to_csv(), "x,y\n0,1\n0.5,0.5\n\n1,0.25\n");
    }
}
