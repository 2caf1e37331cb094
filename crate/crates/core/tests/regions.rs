use shimura_core::grid::{rasterize, RegionKind};
use shimura_core::limits::{c_l_sequence, in_t1, in_t2, in_w};
use shimura_core::okounkov::InterpolationPoly;
use shimura_core::rank2::Rank2Regions;
use shimura_core::scalar::rat;
use shimura_core::shimura::{group_params, ACertifier, GroupData, Witness};
use shimura_core::{Partition, Scalar};

fn near_su22_lines(x: f64, y: f64, band: f64) -> bool {
    (x - 0.5).abs() < band || (y - 0.5).abs() < band || (x + y - 2.0).abs() < band
}

#[test]
fn b_and_w_descriptions_agree_for_su22() {
    let g = GroupData::u_m2(2).unwrap();
    let w = rasterize(RegionKind::W, &g, 100, 1, Some(rat(5, 2))).unwrap();
    let b = rasterize(RegionKind::Rank2B, &g, 100, 1, Some(rat(5, 2))).unwrap();
    let reg = Rank2Regions::new(rat(3, 2), rat(1, 2));
    let mut compared = 0;
    for (rw, rb) in w.rows.iter().zip(&b.rows) {
        let (x, y) = (rw.x.to_f64(), rw.y.to_f64());
        if near_su22_lines(x, y, 1e-6) {
            continue;
        }
        compared += 1;
        let pt = [rw.x.clone(), rw.y.clone()];
        let triangles = reg.in_t1(&pt) || reg.in_t2(&pt);
        assert_eq!(rw.member, rb.member, "({x},{y})");
        assert_eq!(rb.member, triangles, "({x},{y})");
    }
    assert!(compared > 4000);
}

#[test]
fn su22_b_grid_is_two_triangles() {
    let g = GroupData::u_m2(2).unwrap();
    let b = rasterize(RegionKind::Rank2B, &g, 111, 1, Some(rat(11, 5))).unwrap();
    let reg = Rank2Regions::new(rat(3, 2), rat(1, 2));
    for r in &b.rows {
        let (x, y) = (r.x.to_f64(), r.y.to_f64());
        if near_su22_lines(x, y, 1e-6) {
            continue;
        }
        let pt = [r.x.clone(), r.y.clone()];
        assert_eq!(r.member, reg.in_t1(&pt) || reg.in_t2(&pt), "({x},{y})");
    }
}

fn is_row(w: &Witness) -> bool {
    matches!(w, Witness::Partition(l) if l.len() == 1)
}

/// `𝒜₀ = T_1 ∪ W` against certification by `q_λ >= 0`, `|λ| <= 30`.
///
/// On `T_2` the rows `(l, 0)` decide membership: `q_{l,0} >= 0` for all `l`
/// iff `S(x - α) >= 0`. With finitely many rows the certificate misses the
/// points where `c_30 >= 0 > c`; these are checked to be rejected by the
/// first row with `c_l < 0`.
#[test]
fn certified_a_matches_sine_quotient_description() {
    const WEIGHT: usize = 30;
    let mut late = 0;
    for m in 0..=2u32 {
        let g = GroupData::new(2, 2, m, 0).unwrap();
        let p = group_params(&g);
        let cert = ACertifier::<f64>::new(&p, WEIGHT).unwrap();
        let grid = rasterize(RegionKind::W, &g, 30, 1, None).unwrap();
        let a = (m as f64 + 1.0) / 2.0;
        for r in &grid.rows {
            let f = [r.x.to_f64(), r.y.to_f64()];
            let v = cert.verdict(&f).unwrap();
            assert_eq!(r.member, in_t1(&f, m) || in_w(&f, m));
            if r.member {
                assert!(v.member && v.witness.is_none(), "m={m} {f:?}: {v:?}");
                continue;
            }
            let interior = f[0] < a + 1.0 && f[1] > a && in_t2(&f, m);
            if v.member {
                // Only interior points of T_2 with c_30 >= 0 > c can slip through.
                assert!(interior, "m={m} {f:?} accepted outside T_2");
                let seq = c_l_sequence(&f, m, 10_000).unwrap();
                assert!(seq.values[WEIGHT] >= 0.0 && seq.limit < 0.0, "m={m} {f:?}");
                let l = seq.values.iter().position(|c| *c < 0.0).expect("c_l turns negative");
                let q = |l: usize| {
                    let lam = Partition::new(vec![l]).unwrap();
                    let v = InterpolationPoly::<f64>::compile(&lam, &p).unwrap().eval(&f).unwrap();
                    if l.is_multiple_of(2) { v } else { -v }
                };
                assert!(l > WEIGHT && q(l) < 0.0 && q(l - 1) >= 0.0, "m={m} {f:?} l={l}");
                late += 1;
            } else if in_t2(&f, m) {
                let w = v.witness.unwrap();
                assert!(is_row(&w), "m={m} {f:?}: witness {w}");
            }
        }
    }
    // The grid contains one such point (m = 1, near (1.655, 1.241)).
    assert_eq!(late, 1);
}

#[test]
fn inclusion_chain_on_coarse_grids() {
    for m in [2u32, 3, 4, 5, 7] {
        let g = GroupData::u_m2(m).unwrap();
        let r = |k| rasterize(k, &g, 40, 5, None).unwrap();
        let (u0, gg, sq, a) = (r(RegionKind::U0), r(RegionKind::G), r(RegionKind::Square), r(RegionKind::A));
        assert!(u0.subset_of(&gg).unwrap(), "U({m},2)");
        assert!(sq.subset_of(&a).unwrap(), "U({m},2)");
        assert!(a.subset_of(&gg).unwrap(), "U({m},2)");
    }
}

#[test]
fn region_output_is_deterministic() {
    let g = GroupData::u_m2(3).unwrap();
    let a = rasterize(RegionKind::A, &g, 25, 4, None).unwrap().to_csv();
    let b = rasterize(RegionKind::A, &g, 25, 4, None).unwrap().to_csv();
    assert_eq!(a, b);
}
