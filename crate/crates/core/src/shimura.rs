//! Shimura operator eigenvalues and the positivity sets `𝒜` and `𝒢`.
//!
//! A Hermitian symmetric space of rank `n` with root multiplicities `d` and
//! `2b`, twisted by a line bundle of weight `p`, has interpolation parameters
//! `τ = d/2` and `α = (b + 1 + p)/2`. The eigenvalue of the Shimura operator
//! `L_μ` is `k_μ P_μ(x; τ, α)`; the sets are cut out by the signs of
//! `q_λ = (-1)^{|λ|} P_λ`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::okounkov::{for_each_subset, k_constant, okounkov_eval, InterpolationPoly, Params};
use crate::partitions::{enumerate_lambda, Partition};
use crate::scalar::{check_len, rat, Scalar, Sign};

/// Tolerance for landing on a Knapp–Speh segment `x_1 - x_2 = j`.
pub const SEGMENT_TOL: f64 = 1e-9;

/// Rank, multiplicities and line bundle twist of a Hermitian symmetric space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupData {
    pub n: usize,
    pub d: u32,
    pub b: u32,
    pub p: i64,
}

impl GroupData {
    pub fn new(n: usize, d: u32, b: u32, p: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        Ok(GroupData { n, d, b, p })
    }

    /// `U(m, 2)` for `m >= 2`, untwisted.
    pub fn u_m2(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("U({m},2) needs m >= 2")));
        }
        GroupData::new(2, 2, m - 2, 0)
    }

    pub fn with_twist(self, p: i64) -> Self {
        GroupData { p, ..self }
    }
}

impl FromStr for GroupData {
    type Err = Error;

    /// Parses `"n,d,b"`; the twist defaults to 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("group must be \"n,d,b\", got {s:?}"));
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match v[..] {
            [n, d, b] => GroupData::new(n as usize, d, b, 0),
            _ => Err(bad()),
        }
    }
}

/// `(τ, α) = (d/2, (b + 1 + p)/2)`.
pub fn group_params(g: &GroupData) -> Params {
    Params {
        n: g.n,
        tau: rat(g.d as i64, 2),
        alpha: rat(g.b as i64 + 1 + g.p, 2),
    }
}

/// What refutes membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A partition with `q_λ < 0`.
    Partition(Partition),
    /// A column index `j` with `φ_j < 0`.
    Column(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Partition(l) => write!(f, "{l}"),
            Witness::Column(j) => write!(f, "j={j}"),
        }
    }
}

impl Serialize for Witness {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.collect_str(self)
    }
}

/// A membership decision; a negative verdict always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub member: bool,
    pub witness: Option<Witness>,
    pub degree_checked: usize,
}

impl Verdict {
    fn accept(degree: usize) -> Self {
        Verdict {
            member: true,
            witness: None,
            degree_checked: degree,
        }
    }

    fn reject(w: Witness, degree: usize) -> Self {
        Verdict {
            member: false,
            witness: Some(w),
            degree_checked: degree,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict JSON is serializable")
    }
}

/// `η(L_μ) = k_μ P_μ(x; τ, α)`.
pub fn shimura_eigenvalue<S: Scalar>(mu: &Partition, pt: &[S], g: &GroupData) -> Result<S> {
    let p = group_params(g);
    let k = k_constant(mu, &p.tau);
    Ok(S::from_rational(&k) * okounkov_eval(mu, pt, &p)?)
}

/// `q_λ = (-1)^{|λ|} P_λ`.
pub fn q_poly<S: Scalar>(lambda: &Partition, pt: &[S], p: &Params) -> Result<S> {
    let v = okounkov_eval(lambda, pt, p)?;
    Ok(if lambda.weight().is_multiple_of(2) { v } else { -v })
}

/// `φ_j` and the sum of the absolute values of its terms.
fn phi_j_with_scale<S: Scalar>(j: usize, pt: &[S], p: &Params) -> Result<(S, S)> {
    if j == 0 || j > p.n {
        return Err(Error::Domain(format!("column index {j} outside 1..={}", p.n)));
    }
    check_len(pt, p.n)?;
    let rho2: Vec<S> = p.rho().iter().map(|r| S::from_rational(&(r * r))).collect();
    let mut acc = S::zero();
    let mut scale = S::zero();
    for_each_subset(p.n, j, |idx| {
        let mut t = S::one();
        let mut ta = S::one();
        for (k, &i) in idx.iter().enumerate() {
            let r = rho2[i + j - 1 - k].clone();
            let y = pt[i].clone() * pt[i].clone();
            t = t * (r.clone() - y.clone());
            ta = ta * (r + y);
        }
        acc = acc.clone() + t;
        scale = scale.clone() + ta;
    });
    Ok((acc, scale))
}

/// `φ_j(x) = Σ_{|I|=j} Π_k (ρ_{i_k+j-k}^2 - x_{i_k}^2)`.
pub fn phi_j<S: Scalar>(j: usize, pt: &[S], p: &Params) -> Result<S> {
    Ok(phi_j_with_scale(j, pt, p)?.0)
}

/// Membership in `𝒢 = {φ_j >= 0 for all j}`; the witness is the first failing `j`.
pub fn in_g<S: Scalar>(pt: &[S], p: &Params) -> Result<Verdict> {
    for j in 1..=p.n {
        let (v, scale) = phi_j_with_scale(j, pt, p)?;
        if v.sign_band(&scale) == Sign::Negative {
            return Ok(Verdict::reject(Witness::Column(j), p.n));
        }
    }
    Ok(Verdict::accept(p.n))
}

/// The polynomials `q_λ`, `0 < |λ| <= max_weight`, compiled once for
/// certifying many points.
#[derive(Debug, Clone)]
pub struct ACertifier<S> {
    max_weight: usize,
    polys: Vec<InterpolationPoly<S>>,
}

impl<S: Scalar> ACertifier<S> {
    pub fn new(p: &Params, max_weight: usize) -> Result<Self> {
        if max_weight == 0 {
            return Err(Error::Domain("max_weight must be at least 1".into()));
        }
        let polys = enumerate_lambda(p.n, max_weight)
            .iter()
            .skip(1)
            .map(|l| InterpolationPoly::compile(l, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ACertifier { max_weight, polys })
    }

    /// Rejects with the first `λ` (graded order) having `q_λ(pt) < 0`.
    pub fn verdict(&self, pt: &[S]) -> Result<Verdict> {
        for poly in &self.polys {
            let (v, scale) = poly.eval_with_scale(pt)?;
            let q = if poly.lambda().weight() % 2 == 0 { v } else { -v };
            if q.sign_band(&scale) == Sign::Negative {
                return Ok(Verdict::reject(
                    Witness::Partition(poly.lambda().clone()),
                    self.max_weight,
                ));
            }
        }
        Ok(Verdict::accept(self.max_weight))
    }
}

/// Membership in `𝒜` certified up to `|λ| <= max_weight`.
pub fn in_a_certified<S: Scalar>(pt: &[S], p: &Params, max_weight: usize) -> Result<Verdict> {
    ACertifier::new(p, max_weight)?.verdict(pt)
}

/// `pt ∈ [0, ρ_n]^n ∩ 𝒞`.
pub fn in_square<S: Scalar>(pt: &[S], p: &Params) -> Result<bool> {
    check_len(pt, p.n)?;
    let rn = S::from_rational(&p.rho_i(p.n));
    let decreasing = pt.windows(2).all(|w| w[0] >= w[1]);
    Ok(decreasing && pt.iter().all(|x| *x >= S::zero() && *x <= rn))
}

/// Membership in the Knapp–Speh region `𝒰₀` of `U(b+2, 2)`.
///
/// The region is the triangle `x_1 + x_2 <= 1`, the triangles `x_1 - x_2 >= j`,
/// `x_1 + x_2 <= j + 1` and the segments `x_1 - x_2 = j` for `j = 1..=k`,
/// `k = floor((b-1)/2)` (no `j` when `b <= 2`). Every piece is taken inside
/// `[0, ρ_2]^2 ∩ 𝒞`, `ρ_2 = (b+1)/2`.
pub fn in_u0_knapp_speh<S: Scalar>(pt: &[S], b: u32) -> Result<bool> {
    check_len(pt, 2)?;
    let (x1, x2) = (pt[0].clone(), pt[1].clone());
    let rho2 = S::ratio(b as i64 + 1, 2);
    if !(x1 >= x2 && x2 >= S::zero() && x1 <= rho2) {
        return Ok(false);
    }
    let sum = x1.clone() + x2.clone();
    let diff = x1 - x2;
    if sum <= S::one() {
        return Ok(true);
    }
    let k = b.saturating_sub(1) / 2;
    let tol = S::from_f64(SEGMENT_TOL).expect("tolerance is representable");
    for j in 1..=k as i64 {
        let jj = S::from_int(j);
        if diff >= jj && sum <= S::from_int(j + 1) {
            return Ok(true);
        }
        if (diff.clone() - jj).abs() <= tol {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `ρ` of a group as exact rationals.
pub fn group_rho(g: &GroupData) -> Vec<BigRational> {
    group_params(g).rho()
}

/// `ρ_i = (d(n-i) + 1 + b)/2` read off directly from the group data (`p = 0`).
pub fn half_sum_rho(g: &GroupData) -> Vec<BigRational> {
    (1..=g.n)
        .map(|i| rat(g.d as i64 * (g.n - i) as i64 + 1 + g.b as i64, 2) + rat(g.p, 2))
        .collect()
}
