//! Partitions, Young diagrams and reverse tableaux.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::int;

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are dropped on construction, so `(1,0)` and `(1)` are the
/// same value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A box `(row, col)` of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(join(&parts)));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The column partition `1^j`.
    pub fn column(j: usize) -> Self {
        Partition { parts: vec![1; j] }
    }

    /// The rectangle `l^n`.
    pub fn rectangle(l: usize, n: usize) -> Self {
        if l == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![l; n] }
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n` (`n >= self.len()`).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Length of column `j` (1-based).
    pub fn column_len(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    pub fn has_cell(&self, s: Cell) -> bool {
        s.row >= 1 && s.col >= 1 && s.col <= self.part(s.row)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }

    fn check_cell(&self, s: Cell) -> Result<()> {
        if self.has_cell(s) {
            Ok(())
        } else {
            Err(Error::OutOfDiagram {
                row: s.row,
                col: s.col,
                shape: self.to_string(),
            })
        }
    }

    pub fn arm(&self, s: Cell) -> Result<usize> {
        self.check_cell(s)?;
        Ok(self.part(s.row) - s.col)
    }

    pub fn leg(&self, s: Cell) -> Result<usize> {
        self.check_cell(s)?;
        Ok(self.column_len(s.col) - s.row)
    }

    pub fn coarm(&self, s: Cell) -> Result<usize> {
        self.check_cell(s)?;
        Ok(s.col - 1)
    }

    pub fn coleg(&self, s: Cell) -> Result<usize> {
        self.check_cell(s)?;
        Ok(s.row - 1)
    }

    /// `mu ⊆ self`, i.e. `mu_i <= self_i` for all `i`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// `self + shift` componentwise in `n` coordinates.
    pub fn shifted(&self, shift: &[BigRational]) -> Vec<BigRational> {
        self.padded(shift.len())
            .iter()
            .zip(shift)
            .map(|(&p, r)| int(p as i64) + r)
            .collect()
    }
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions with at most `n` parts and weight at most `d`, graded by
/// weight and reverse-lexicographic within a weight.
pub fn enumerate_lambda(n: usize, d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for w in 0..=d {
        let mut buf = Vec::with_capacity(n);
        partitions_of(w, w, n, &mut buf, &mut out);
    }
    out
}

fn partitions_of(rem: usize, max: usize, slots: usize, buf: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: buf.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=max.min(rem)).rev() {
        buf.push(p);
        partitions_of(rem - p, p, slots - 1, buf, out);
        buf.pop();
    }
}

/// A filling of a diagram by `1..=n`, strictly decreasing down columns and
/// weakly decreasing along rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReverseTableau {
    shape: Partition,
    n: usize,
    /// Entries in row-major order.
    entries: Vec<usize>,
}

impl ReverseTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries in row-major cell order.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.shape.cells().zip(self.entries.iter().copied())
    }

    /// `lambda^(i) = { s : T(s) > i }`.
    pub fn sub_shape(&self, i: usize) -> Partition {
        let mut parts = Vec::with_capacity(self.shape.len());
        let mut k = 0;
        for &p in self.shape.parts() {
            parts.push(self.entries[k..k + p].iter().filter(|&&e| e > i).count());
            k += p;
        }
        Partition::new(parts).expect("reverse tableau sub-shapes are partitions")
    }

    /// The chain `lambda = lambda^(0) ⊇ lambda^(1) ⊇ ... ⊇ lambda^(n) = ∅`.
    pub fn chain(&self) -> Vec<Partition> {
        (0..=self.n).map(|i| self.sub_shape(i)).collect()
    }

    /// Rebuilds the tableau whose chain is `chain` (inverse of [`Self::chain`]).
    pub fn from_chain(chain: &[Partition]) -> Result<Self> {
        let n = chain.len().saturating_sub(1);
        let shape = chain
            .first()
            .cloned()
            .ok_or_else(|| Error::Domain("empty chain".into()))?;
        let entries = shape
            .cells()
            .map(|s| chain.iter().filter(|c| c.has_cell(s)).count())
            .collect::<Vec<_>>();
        let t = ReverseTableau { shape, n, entries };
        if t.chain() != chain || !t.is_valid() {
            return Err(Error::Domain("chain is not a tableau chain".into()));
        }
        Ok(t)
    }

    pub fn is_valid(&self) -> bool {
        let idx = |s: Cell| -> usize {
            self.shape.parts()[..s.row - 1].iter().sum::<usize>() + s.col - 1
        };
        self.shape.cells().all(|s| {
            let v = self.entries[idx(s)];
            let row_ok = s.col == 1 || self.entries[idx(Cell::new(s.row, s.col - 1))] >= v;
            let col_ok = s.row == 1 || self.entries[idx(Cell::new(s.row - 1, s.col))] > v;
            (1..=self.n).contains(&v) && row_ok && col_ok
        })
    }
}

/// Iterator over the reverse tableaux of a shape, in lexicographic order of
/// the row-major entry vectors.
#[derive(Debug, Clone)]
pub struct ReverseTableaux {
    shape: Partition,
    n: usize,
    cells: Vec<Cell>,
    /// For each cell, index of its left neighbour and of the cell above.
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    lower: Vec<usize>,
    current: Option<Vec<usize>>,
}

/// All reverse tableaux of shape `lambda` with entries in `1..=n`.
pub fn reverse_tableaux(lambda: &Partition, n: usize) -> ReverseTableaux {
    let cells: Vec<Cell> = lambda.cells().collect();
    let index = |s: Cell| lambda.parts()[..s.row - 1].iter().sum::<usize>() + s.col - 1;
    let left = cells
        .iter()
        .map(|s| (s.col > 1).then(|| index(Cell::new(s.row, s.col - 1))))
        .collect();
    let above = cells
        .iter()
        .map(|s| (s.row > 1).then(|| index(Cell::new(s.row - 1, s.col))))
        .collect();
    // A column of length c forces T(i,j) >= c - i + 1.
    let lower: Vec<usize> = cells
        .iter()
        .map(|s| lambda.column_len(s.col) - s.row + 1)
        .collect();
    let current = if lambda.len() <= n {
        Some(lower.clone())
    } else {
        None
    };
    ReverseTableaux {
        shape: lambda.clone(),
        n,
        cells,
        left,
        above,
        lower,
        current,
    }
}

impl ReverseTableaux {
    fn upper(&self, entries: &[usize], k: usize) -> usize {
        let mut u = self.n;
        if let Some(l) = self.left[k] {
            u = u.min(entries[l]);
        }
        if let Some(a) = self.above[k] {
            u = u.min(entries[a] - 1);
        }
        u
    }

    fn advance(&self, entries: &mut [usize]) -> bool {
        for k in (0..self.cells.len()).rev() {
            if entries[k] < self.upper(entries, k) {
                entries[k] += 1;
                for r in k + 1..self.cells.len() {
                    entries[r] = self.lower[r];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ReverseTableaux {
    type Item = ReverseTableau;

    fn next(&mut self) -> Option<ReverseTableau> {
        let entries = self.current.take()?;
        let mut succ = entries.clone();
        if self.advance(&mut succ) {
            self.current = Some(succ);
        }
        Some(ReverseTableau {
            shape: self.shape.clone(),
            n: self.n,
            entries,
        })
    }
}

fn b_ratio(
    lambda: &Partition,
    s: Cell,
    tau: &BigRational,
) -> Result<BigRational> {
    let a = int(lambda.arm(s)? as i64);
    let l = int(lambda.leg(s)? as i64);
    let base = tau * &l + a;
    let num = &base + tau;
    let den = &base + BigRational::one();
    if num.is_zero() || den.is_zero() {
        return Err(Error::DenominatorZero {
            row: s.row,
            col: s.col,
        });
    }
    Ok(num / den)
}

/// `psi_{lambda / mu} = prod b_mu(s) / b_lambda(s)` over the cells of `mu`
/// whose row meets `lambda / mu` but whose column does not.
pub fn psi_skew(lambda: &Partition, mu: &Partition, tau: &BigRational) -> Result<BigRational> {
    if !lambda.contains(mu) {
        return Err(Error::NotContained {
            inner: mu.to_string(),
            outer: lambda.to_string(),
        });
    }
    let mut acc = BigRational::one();
    for s in mu.cells() {
        if lambda.arm(s)? > mu.arm(s)? && lambda.leg(s)? == mu.leg(s)? {
            acc *= b_ratio(mu, s, tau)? / b_ratio(lambda, s, tau)?;
        }
    }
    Ok(acc)
}

/// `psi_T = prod_i psi_{lambda^(i-1) / lambda^(i)}`.
pub fn psi_tableau(t: &ReverseTableau, tau: &BigRational) -> Result<BigRational> {
    let chain = t.chain();
    chain
        .windows(2)
        .try_fold(BigRational::one(), |acc, w| Ok(acc * psi_skew(&w[0], &w[1], tau)?))
}
