//! Rasterization of the rank-two positivity sets over a window of the Weyl
//! chamber.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::{in_t1, in_w};
use crate::rank2::in_b;
use crate::scalar::{int, Scalar};
use crate::shimura::{group_params, in_g, in_square, in_u0_knapp_speh, ACertifier, GroupData};

/// Which set to rasterize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// `𝒢`, the column conditions `φ_j >= 0`.
    G,
    /// `𝒜` certified up to a weight bound.
    A,
    /// `ℬ = {q_{1,0} >= 0, q_{1,1} >= 0, R >= 0}`.
    Rank2B,
    /// The Knapp–Speh region `𝒰₀`.
    U0,
    /// `T_1 ∪ W`, the sine-quotient description of `𝒜₀`.
    W,
    /// `[0, ρ_2]^2 ∩ 𝒞`.
    Square,
}

impl FromStr for RegionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "G" => RegionKind::G,
            "A" => RegionKind::A,
            "rank2-B" => RegionKind::Rank2B,
            "U0" => RegionKind::U0,
            "W" => RegionKind::W,
            "square" => RegionKind::Square,
            _ => return Err(Error::Parse(format!("unknown region kind {s:?}"))),
        })
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionKind::G => "G",
            RegionKind::A => "A",
            RegionKind::Rank2B => "rank2-B",
            RegionKind::U0 => "U0",
            RegionKind::W => "W",
            RegionKind::Square => "square",
        })
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionRow {
    pub x: BigRational,
    pub y: BigRational,
    pub member: bool,
    pub witness: Option<String>,
}

/// A rasterized set: the points `(i L/(grid-1), j L/(grid-1))` with `i >= j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub kind: RegionKind,
    pub group: GroupData,
    pub grid: usize,
    pub window: BigRational,
    pub rows: Vec<RegionRow>,
}

/// `ρ_1 + 1`, the default side of the window.
pub fn default_window(g: &GroupData) -> BigRational {
    group_params(g).rho_i(1) + int(1)
}

enum Evaluator {
    G(crate::okounkov::Params),
    A(ACertifier<BigRational>),
    Rank2B { d: u32, rho: [f64; 2] },
    U0(u32),
    W(u32),
    Square(crate::okounkov::Params),
}

impl Evaluator {
    fn new(kind: RegionKind, g: &GroupData, max_weight: usize) -> Result<Self> {
        let p = group_params(g);
        Ok(match kind {
            RegionKind::G => Evaluator::G(p),
            RegionKind::A => Evaluator::A(ACertifier::new(&p, max_weight)?),
            RegionKind::Rank2B => {
                let rho = p.rho();
                Evaluator::Rank2B {
                    d: g.d,
                    rho: [rho[0].to_f64(), rho[1].to_f64()],
                }
            }
            RegionKind::U0 => Evaluator::U0(g.b),
            RegionKind::W => {
                if g.d != 2 {
                    return Err(Error::Domain("W is defined for d = 2".into()));
                }
                let m = u32::try_from(g.b as i64 + g.p)
                    .map_err(|_| Error::Domain("W needs b + p >= 0".into()))?;
                Evaluator::W(m)
            }
            RegionKind::Square => Evaluator::Square(p),
        })
    }

    fn eval(&self, pt: &[BigRational]) -> Result<(bool, Option<String>)> {
        let f = [pt[0].to_f64(), pt[1].to_f64()];
        Ok(match self {
            Evaluator::G(p) => {
                let v = in_g(pt, p)?;
                (v.member, v.witness.map(|w| w.to_string()))
            }
            Evaluator::A(c) => {
                let v = c.verdict(pt)?;
                (v.member, v.witness.map(|w| w.to_string()))
            }
            Evaluator::Rank2B { d, rho } => (in_b(&f, *d, *rho)?, None),
            Evaluator::U0(b) => (in_u0_knapp_speh(pt, *b)?, None),
            Evaluator::W(m) => (in_t1(&f, *m) || in_w(&f, *m), None),
            Evaluator::Square(p) => (in_square(pt, p)?, None),
        })
    }
}

/// Rasterizes `kind` for a rank-two group on `[0, window]^2 ∩ 𝒞`.
///
/// Grid coordinates are exact; the exact sets (`G`, `A`, `U0`, square) are
/// decided in rational arithmetic, the others in floating point.
pub fn rasterize(
    kind: RegionKind,
    g: &GroupData,
    grid: usize,
    max_weight: usize,
    window: Option<BigRational>,
) -> Result<RegionGrid> {
    if g.n != 2 {
        return Err(Error::Domain(format!("regions are rasterized in rank 2, got n = {}", g.n)));
    }
    if grid < 2 {
        return Err(Error::Domain(format!("grid {grid} is below 2")));
    }
    let window = window.unwrap_or_else(|| default_window(g));
    let ev = Evaluator::new(kind, g, max_weight)?;
    let step = &window / int(grid as i64 - 1);
    let coords: Vec<(usize, usize)> = (0..grid)
        .flat_map(|j| (j..grid).map(move |i| (i, j)))
        .collect();
    let rows = coords
        .par_iter()
        .map(|&(i, j)| {
            let x = &step * int(i as i64);
            let y = &step * int(j as i64);
            let (member, witness) = ev.eval(&[x.clone(), y.clone()])?;
            Ok(RegionRow { x, y, member, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        kind,
        group: *g,
        grid,
        window,
        rows,
    })
}

impl RegionGrid {
    /// `x,y,member,witness` rows, coordinates as decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,member,witness\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.x.to_f64(),
                r.y.to_f64(),
                r.member,
                r.witness.as_deref().unwrap_or("")
            );
        }
        out
    }

    /// Whether every member of `self` is a member of `other` (same grid).
    pub fn subset_of(&self, other: &RegionGrid) -> Result<bool> {
        if self.rows.len() != other.rows.len() || self.window != other.window {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                got: other.rows.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| !a.member || b.member))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn kinds_round_trip() {
        for k in ["G", "A", "rank2-B", "U0", "W", "square"] {
            assert_eq!(k.parse::<RegionKind>().unwrap().to_string(), k);
        }
        assert!("B".parse::<RegionKind>().is_err());
    }

    #[test]
    fn grid_layout() {
        let g = GroupData::u_m2(2).unwrap();
        let r = rasterize(RegionKind::Square, &g, 3, 1, None).unwrap();
        assert_eq!(r.window, rat(5, 2));
        let pts: Vec<_> = r.rows.iter().map(|r| (r.x.clone(), r.y.clone())).collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (int(0), int(0)));
        assert_eq!(pts[2], (rat(5, 2), int(0)));
        assert_eq!(pts[5], (rat(5, 2), rat(5, 2)));
        let csv = r.to_csv();
        assert!(csv.starts_with("x,y,member,witness\n0,0,true,\n1.25,0,false,\n"));
    }

    #[test]
    fn witnesses_are_reported() {
        let g = GroupData::u_m2(2).unwrap();
        let r = rasterize(RegionKind::G, &g, 6, 1, None).unwrap();
        assert!(r.rows.iter().all(|row| row.member == row.witness.is_none()));
        assert!(r.rows.iter().any(|row| row.witness.as_deref() == Some("j=1")));
    }

    #[test]
    fn square_inside_a_inside_g() {
        let g = GroupData::u_m2(3).unwrap();
        let sq = rasterize(RegionKind::Square, &g, 30, 4, None).unwrap();
        let a = rasterize(RegionKind::A, &g, 30, 4, None).unwrap();
        let gg = rasterize(RegionKind::G, &g, 30, 4, None).unwrap();
        let u0 = rasterize(RegionKind::U0, &g, 30, 4, None).unwrap();
        assert!(sq.subset_of(&a).unwrap());
        assert!(a.subset_of(&gg).unwrap());
        assert!(u0.subset_of(&gg).unwrap());
    }

    #[test]
    fn rank_check() {
        let g = GroupData::new(3, 2, 0, 0).unwrap();
        assert!(matches!(rasterize(RegionKind::G, &g, 4, 1, None), Err(Error::Domain(_))));
    }
}
