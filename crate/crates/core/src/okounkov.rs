//! Okounkov BC_n interpolation polynomials.
//!
//! `P_λ(x; τ, α)` is the even symmetric polynomial of degree `2|λ|` with
//! `x^{2λ}` coefficient 1 that vanishes at `μ + ρ` for every `μ` not
//! containing `λ`. Here it is evaluated from the reverse tableau expansion,
//! either literally ([`okounkov_eval`]) or through the branching recursion
//! compiled in [`InterpolationPoly`], which sums the same terms grouped by the
//! chain `λ = λ^(0) ⊇ λ^(1) ⊇ ... ⊇ λ^(n) = ∅`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gen_pochhammer, poch_rising};
use crate::linalg;
use crate::partitions::{enumerate_lambda, psi_skew, psi_tableau, reverse_tableaux, Cell, Partition};
use crate::scalar::{check_len, int, Scalar};

/// Largest `|λ|` accepted by [`okounkov_expand`].
pub const EXPAND_LIMIT: usize = 8;

/// The interpolation parameters `(τ, α)` in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: usize,
    pub tau: BigRational,
    pub alpha: BigRational,
}

impl Params {
    pub fn new(n: usize, tau: BigRational, alpha: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        Ok(Params { n, tau, alpha })
    }

    /// `ρ_i = τ(n - i) + α`, 1-based `i`.
    pub fn rho_i(&self, i: usize) -> BigRational {
        &self.tau * int((self.n - i) as i64) + &self.alpha
    }

    pub fn rho(&self) -> Vec<BigRational> {
        (1..=self.n).map(|i| self.rho_i(i)).collect()
    }

    /// `μ + ρ`.
    pub fn shifted(&self, mu: &Partition) -> Vec<BigRational> {
        mu.shifted(&self.rho())
    }

    /// The shift in the factor of cell `s` when it carries entry `t`:
    /// `a'(s) + τ(n - t - l'(s)) + α`.
    fn cell_shift(&self, s: Cell, t: usize) -> BigRational {
        let coarm = int(s.col as i64 - 1);
        let coleg = s.row as i64 - 1;
        coarm + &self.tau * int(self.n as i64 - t as i64 - coleg) + &self.alpha
    }

    fn check_shape(&self, lambda: &Partition) -> Result<()> {
        if lambda.len() > self.n {
            return Err(Error::Domain(format!(
                "partition {lambda} has more than {} parts",
                self.n
            )));
        }
        Ok(())
    }
}

fn sq<S: Scalar>(x: &S) -> S {
    x.clone() * x.clone()
}

/// `P_λ(pt)` by the literal sum over reverse tableaux.
pub fn okounkov_eval<S: Scalar>(lambda: &Partition, pt: &[S], p: &Params) -> Result<S> {
    p.check_shape(lambda)?;
    check_len(pt, p.n)?;
    let y: Vec<S> = pt.iter().map(sq).collect();
    let mut acc = S::zero();
    for t in reverse_tableaux(lambda, p.n) {
        let mut term = S::from_rational(&psi_tableau(&t, &p.tau)?);
        for (s, e) in t.cells() {
            let c = p.cell_shift(s, e);
            term = term * (y[e - 1].clone() - S::from_rational(&(&c * &c)));
        }
        acc = acc + term;
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
struct Edge<S> {
    child: usize,
    psi: S,
    /// Squared shifts of the cells in the horizontal strip.
    shifts: Vec<S>,
}

/// `P_λ` compiled for repeated evaluation.
///
/// Level `i` holds the shapes `λ^(i)` reachable from `λ`; an edge from a shape
/// at level `i-1` to one at level `i` carries `ψ` of the horizontal strip
/// between them and the factors of its cells, which all use `x_i`.
#[derive(Debug, Clone)]
pub struct InterpolationPoly<S> {
    lambda: Partition,
    n: usize,
    levels: Vec<Vec<Vec<Edge<S>>>>,
}

/// Shapes `ν` with `κ / ν` a horizontal strip and at most `max_len` parts.
fn strip_children(kappa: &Partition, max_len: usize) -> Vec<Partition> {
    let k = kappa.parts();
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k.len());
    fn rec(k: &[usize], j: usize, max_len: usize, buf: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if j == k.len() {
            if buf.iter().filter(|&&v| v > 0).count() <= max_len {
                out.push(Partition::new(buf.clone()).expect("interlacing shapes are partitions"));
            }
            return;
        }
        let lo = k.get(j + 1).copied().unwrap_or(0);
        for v in lo..=k[j] {
            buf.push(v);
            rec(k, j + 1, max_len, buf, out);
            buf.pop();
        }
    }
    rec(k, 0, max_len, &mut buf, &mut out);
    out
}

impl<S: Scalar> InterpolationPoly<S> {
    pub fn compile(lambda: &Partition, p: &Params) -> Result<Self> {
        p.check_shape(lambda)?;
        let n = p.n;
        // Shapes per level, discovered top-down.
        let mut shapes: Vec<Vec<Partition>> = vec![vec![lambda.clone()]];
        let mut levels = Vec::with_capacity(n);
        for i in 1..=n {
            let mut index: HashMap<Partition, usize> = HashMap::new();
            let mut next: Vec<Partition> = Vec::new();
            let mut edges_here = Vec::new();
            for kappa in &shapes[i - 1] {
                let mut edges = Vec::new();
                for nu in strip_children(kappa, n - i) {
                    let child = *index.entry(nu.clone()).or_insert_with(|| {
                        next.push(nu.clone());
                        next.len() - 1
                    });
                    let psi = psi_skew(kappa, &nu, &p.tau)?;
                    let shifts = kappa
                        .cells()
                        .filter(|&s| !nu.has_cell(s))
                        .map(|s| {
                            let c = p.cell_shift(s, i);
                            S::from_rational(&(&c * &c))
                        })
                        .collect();
                    edges.push(Edge {
                        child,
                        psi: S::from_rational(&psi),
                        shifts,
                    });
                }
                edges_here.push(edges);
            }
            levels.push(edges_here);
            shapes.push(next);
        }
        Ok(InterpolationPoly {
            lambda: lambda.clone(),
            n,
            levels,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn eval(&self, pt: &[S]) -> Result<S> {
        Ok(self.run(pt, false)?.0)
    }

    /// The value together with the sum of the absolute values of all terms,
    /// which is the natural scale for a float sign test.
    pub fn eval_with_scale(&self, pt: &[S]) -> Result<(S, S)> {
        self.run(pt, true)
    }

    fn run(&self, pt: &[S], track: bool) -> Result<(S, S)> {
        check_len(pt, self.n)?;
        // The last level holds only the empty shape.
        let mut vals: Vec<(S, S)> = vec![(S::one(), S::one())];
        for i in (1..=self.n).rev() {
            let y = sq(&pt[i - 1]);
            let ya = y.abs();
            let level = &self.levels[i - 1];
            let mut out = Vec::with_capacity(level.len());
            for edges in level {
                let mut v = S::zero();
                let mut a = S::zero();
                for e in edges {
                    let mut t = e.psi.clone();
                    for c in &e.shifts {
                        t = t * (y.clone() - c.clone());
                    }
                    let (cv, ca) = &vals[e.child];
                    v = v + t * cv.clone();
                    if track {
                        let mut ta = e.psi.abs();
                        for c in &e.shifts {
                            ta = ta * (ya.clone() + c.abs());
                        }
                        a = a + ta * ca.clone();
                    }
                }
                out.push((v, a));
            }
            vals = out;
        }
        Ok(vals.swap_remove(0))
    }
}

/// An even symmetric polynomial stored on monomials in `y_i = x_i^2`.
///
/// The coefficient map is closed under permutation of exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEvenPoly<S> {
    n: usize,
    terms: BTreeMap<Vec<usize>, S>,
}

#[derive(Serialize)]
struct TermJson {
    exp: Vec<usize>,
    coeff: String,
}

#[derive(Serialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

/// All distinct permutations of `v`.
fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl<S: Scalar> SymEvenPoly<S> {
    pub fn zero(n: usize) -> Self {
        SymEvenPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `Σ_κ c_κ m_κ(y)` from monomial symmetric coordinates.
    pub fn from_monomial_symmetric(n: usize, coords: impl IntoIterator<Item = (Partition, S)>) -> Self {
        let mut poly = SymEvenPoly::zero(n);
        for (kappa, c) in coords {
            if c.is_zero() {
                continue;
            }
            for e in distinct_permutations(&kappa.padded(n)) {
                poly.terms.insert(e, c.clone());
            }
        }
        poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, exp: &[usize]) -> S {
        self.terms.get(exp).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero terms with exponent vectors in decreasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in `y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The homogeneous component of `y`-degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        SymEvenPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<usize>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval_y(&self, y: &[S]) -> Result<S> {
        check_len(y, self.n)?;
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (yi, &k) in y.iter().zip(e) {
                for _ in 0..k {
                    t = t * yi.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        let y: Vec<S> = x.iter().map(sq).collect();
        self.eval_y(&y)
    }

    pub fn to_json(&self) -> String {
        let poly = PolyJson {
            n: self.n,
            terms: self
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&poly).expect("polynomial JSON is serializable")
    }
}

/// The full coefficient map of `P_λ`, through its values on `Λ^{|λ|} + ρ`.
pub fn okounkov_expand(lambda: &Partition, p: &Params) -> Result<SymEvenPoly<BigRational>> {
    let w = lambda.weight();
    if w > EXPAND_LIMIT {
        return Err(Error::SizeGuard {
            weight: w,
            limit: EXPAND_LIMIT,
        });
    }
    let poly = InterpolationPoly::<BigRational>::compile(lambda, p)?;
    let values = enumerate_lambda(p.n, w)
        .into_iter()
        .map(|mu| Ok((mu.clone(), poly.eval(&p.shifted(&mu))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    interpolate_from_values(&values, w, p)
}

/// Coordinates `c_μ` with `Σ c_μ P_μ(ν + ρ) = values[ν]` on `Λ^d`, by
/// back-substitution in the graded order (`P_μ(ν + ρ) = 0` unless `μ ⊆ ν`).
pub fn p_basis_coordinates(
    values: &BTreeMap<Partition, BigRational>,
    d: usize,
    p: &Params,
) -> Result<Vec<(Partition, BigRational)>> {
    let grid = enumerate_lambda(p.n, d);
    let compiled = grid
        .iter()
        .map(|mu| InterpolationPoly::<BigRational>::compile(mu, p))
        .collect::<Result<Vec<_>>>()?;
    let mut coords: Vec<(Partition, BigRational)> = Vec::with_capacity(grid.len());
    for (k, nu) in grid.iter().enumerate() {
        let v = values
            .get(nu)
            .ok_or_else(|| Error::Domain(format!("no value given at {nu}")))?;
        let pt = p.shifted(nu);
        let mut rest = v.clone();
        for (mu, c) in &coords {
            if !c.is_zero() && nu.contains(mu) {
                let j = grid.iter().position(|g| g == mu).expect("earlier in grid");
                rest -= c * compiled[j].eval(&pt)?;
            }
        }
        let diag = compiled[k].eval(&pt)?;
        if diag.is_zero() {
            return Err(Error::SingularSystem(format!("P_{nu} vanishes at {nu} + rho")));
        }
        coords.push((nu.clone(), rest / diag));
    }
    Ok(coords)
}

fn monomial_symmetric_at(kappa: &Partition, y: &[BigRational]) -> BigRational {
    distinct_permutations(&kappa.padded(y.len()))
        .into_iter()
        .map(|e| {
            y.iter()
                .zip(&e)
                .fold(BigRational::one(), |acc, (yi, &k)| acc * num_traits::pow(yi.clone(), k))
        })
        .sum()
}

/// The unique polynomial of `y`-degree at most `d` taking the given values on
/// `Λ^d + ρ`.
///
/// The values are first resolved in the `P_μ` basis, which detects a
/// degenerate parameter point, and the coefficients are then read off by
/// solving the monomial symmetric system on the same nodes.
pub fn interpolate_from_values(
    values: &BTreeMap<Partition, BigRational>,
    d: usize,
    p: &Params,
) -> Result<SymEvenPoly<BigRational>> {
    p_basis_coordinates(values, d, p)?;
    let grid = enumerate_lambda(p.n, d);
    let matrix = grid
        .iter()
        .map(|nu| {
            let y: Vec<BigRational> = p.shifted(nu).iter().map(sq).collect();
            grid.iter().map(|kappa| monomial_symmetric_at(kappa, &y)).collect()
        })
        .collect();
    let rhs = grid.iter().map(|nu| values[nu].clone()).collect();
    let coords = linalg::solve(matrix, rhs)?;
    Ok(SymEvenPoly::from_monomial_symmetric(
        p.n,
        grid.into_iter().zip(coords),
    ))
}

/// The one-variable polynomial `p_l(x; α) = Π_{i<l} (x^2 - (i + α)^2)`.
pub fn rank1_poly<S: Scalar>(l: usize, x: &S, alpha: &S) -> S {
    let y = sq(x);
    (0..l).fold(S::one(), |acc, i| {
        acc * (y.clone() - sq(&(S::from_int(i as i64) + alpha.clone())))
    })
}

/// `P_λ(x; 1, α) = a_{λ+δ}(x; α) / a_δ(x)` with `a_δ = Π_{i<j} (x_i^2 - x_j^2)`.
pub fn det_formula_tau1(lambda: &Partition, pt: &[BigRational], alpha: &BigRational) -> Result<BigRational> {
    let n = pt.len();
    if lambda.len() > n {
        return Err(Error::Domain(format!("partition {lambda} has more than {n} parts")));
    }
    let mut vdm = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            vdm *= sq(&pt[i]) - sq(&pt[j]);
        }
    }
    if vdm.is_zero() {
        return Err(Error::SingularVandermonde);
    }
    let parts = lambda.padded(n);
    let matrix = pt
        .iter()
        .map(|x| {
            (0..n)
                .map(|j| rank1_poly(parts[j] + n - 1 - j, x, alpha))
                .collect()
        })
        .collect();
    Ok(linalg::det(matrix) / vdm)
}

/// Calls `f` on every `j`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, j: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..j).collect();
    if j > n {
        return;
    }
    loop {
        f(&idx);
        let Some(k) = (0..j).rev().find(|&k| idx[k] < n - j + k) else {
            return;
        };
        idx[k] += 1;
        for r in k + 1..j {
            idx[r] = idx[r - 1] + 1;
        }
    }
}

fn check_column(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::Domain(format!("column index {j} outside 1..={n}")));
    }
    Ok(())
}

/// `P_{1^j} = Σ_{i_1<...<i_j} Π_k (x_{i_k}^2 - ρ_{i_k+j-k}^2)`.
pub fn column_poly<S: Scalar>(j: usize, pt: &[S], p: &Params) -> Result<S> {
    check_column(j, p.n)?;
    check_len(pt, p.n)?;
    let rho2: Vec<S> = p.rho().iter().map(|r| S::from_rational(&(r * r))).collect();
    let mut acc = S::zero();
    for_each_subset(p.n, j, |idx| {
        // 0-based: i_k + j - k (1-based) becomes idx[k] + j - 1 - k
        let term = idx.iter().enumerate().fold(S::one(), |t, (k, &i)| {
            t * (sq(&pt[i]) - rho2[i + j - 1 - k].clone())
        });
        acc = acc.clone() + term;
    });
    Ok(acc)
}

/// The `t^j` coefficient of `Π_i (1 + t x_i^2) / Π_{i=j}^n (1 + t ρ_i^2)`.
pub fn column_poly_gf<S: Scalar>(j: usize, pt: &[S], p: &Params) -> Result<S> {
    check_column(j, p.n)?;
    check_len(pt, p.n)?;
    // truncated series in t, degree <= j
    let mut series = vec![S::zero(); j + 1];
    series[0] = S::one();
    for x in pt {
        let y = sq(x);
        for k in (1..=j).rev() {
            series[k] = series[k].clone() + y.clone() * series[k - 1].clone();
        }
    }
    for i in j..=p.n {
        let r = p.rho_i(i);
        let c = S::from_rational(&(&r * &r));
        // multiply by 1/(1 + c t): s_k <- s_k - c s_{k-1}, increasing k
        for k in 1..=j {
            series[k] = series[k].clone() - c.clone() * series[k - 1].clone();
        }
    }
    Ok(series.swap_remove(j))
}

/// `P_{l^n} = Π_{i<l} Π_j (x_j^2 - (i + α)^2)`.
pub fn rectangle_poly<S: Scalar>(l: usize, pt: &[S], p: &Params) -> Result<S> {
    check_len(pt, p.n)?;
    let alpha = S::from_rational(&p.alpha);
    Ok(pt
        .iter()
        .fold(S::one(), |acc, x| acc * rank1_poly(l, x, &alpha)))
}

/// `k_μ = Π_{s∈μ} (τ l(s) + a(s) + 1)`.
pub fn k_constant(mu: &Partition, tau: &BigRational) -> BigRational {
    mu.cells()
        .map(|s| {
            let a = int(mu.arm(s).expect("own cell") as i64);
            let l = int(mu.leg(s).expect("own cell") as i64);
            tau * l + a + BigRational::one()
        })
        .product()
}

/// `β_μ / ((d/2 (n-1) + 1)_μ P^Jac_μ(1^n))`, the coefficient of the monic Jack
/// polynomial `P^Jac_μ(y)` (parameter `d/2`) in `(y_1 + ... + y_n)^m / m!`.
pub fn jack_leading_constant(mu: &Partition, d: &BigRational, n: usize) -> Result<BigRational> {
    if !d.is_positive() {
        return Err(Error::Domain(format!("multiplicity d = {d} must be positive")));
    }
    if mu.len() > n {
        return Err(Error::Domain(format!("partition {mu} has more than {n} parts")));
    }
    let h = d / int(2);
    let m = mu.padded(n);
    let mut beta = BigRational::one();
    let mut jack_at_one = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            let diff = m[i] - m[j];
            let gap = int((j - i) as i64);
            beta *= (int(diff as i64) + &h * &gap) / (&h * &gap);
            beta *= poch_rising(&(&h * (&gap + int(1))), diff)
                / poch_rising(&(&h * (&gap - int(1)) + int(1)), diff);
            jack_at_one *= poch_rising(&(&h * (&gap + int(1))), diff) / poch_rising(&(&h * &gap), diff);
        }
    }
    let a = &h * int(n as i64 - 1) + int(1);
    Ok(beta / (gen_pochhammer(&a, mu, d) * jack_at_one))
}

/// `k_μ` assembled from `β_μ`, the generalized Pochhammer symbol and the
/// Jack evaluation at `1^n`; see [`jack_leading_constant`], whose reciprocal
/// this is.
pub fn k_constant_alt(mu: &Partition, d: &BigRational, n: usize) -> Result<BigRational> {
    Ok(jack_leading_constant(mu, d, n)?.recip())
}

/// Outcome of a batch of exact checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the vanishing characterization of `P_λ`:
/// zeros at `μ + ρ` for `μ ∈ Λ^{|λ|}`, `μ ≠ λ`; a nonzero value at `λ + ρ`;
/// and zeros at `μ + ρ` for every `μ ⊉ λ` with `|λ| < |μ| <= |λ| + extra`.
pub fn verify_characterization(lambda: &Partition, p: &Params, extra: usize) -> Result<CheckReport> {
    let poly = InterpolationPoly::<BigRational>::compile(lambda, p)?;
    let w = lambda.weight();
    let mut report = CheckReport::default();
    for mu in enumerate_lambda(p.n, w + extra) {
        let v = poly.eval(&p.shifted(&mu))?;
        if mu == *lambda {
            report.record(!v.is_zero(), || format!("P_{lambda} vanishes at its own node"));
        } else if mu.weight() <= w || !mu.contains(lambda) {
            report.record(v.is_zero(), || format!("P_{lambda}({mu} + rho) = {v}"));
        }
    }
    Ok(report)
}
