use hypermod_core::crossratio_maps::{dual_hesse_map, Configuration};
use hypermod_core::exact_arith::{interpolate, random_rational, Matrix, Mobius, ProjPoint, Scalar};
use hypermod_core::generator::dual_hesse_index;
use hypermod_core::hesse_verify::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_coords(rng: &mut ChaCha8Rng) -> HesseCoordinates {
    HesseCoordinates {
        w: (0..9).map(|_| random_rational(rng)).collect(),
        u: random_rational(rng),
        v: random_rational(rng),
    }
}

fn eval_f(x: &[Scalar]) -> Vec<Scalar> {
    compute_f_at(&HesseCoordinates::from_map(x))
}

#[test]
fn coefficients_match_interpolation_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ts: Vec<Scalar> = (0..5).map(Scalar::from_int).collect();
    for _ in 0..10 {
        let c = random_coords(&mut rng);
        let f = compute_f_at(&c);
        assert_eq!(f.len(), 13);
        let ys: Vec<[Scalar; 3]> = ts
            .iter()
            .map(|t| RecoveryChain::new(&c.w, &c.u, &c.v, t).expressions(&c.w, &c.u, &c.v, t))
            .collect();
        for (k, (lo, deg)) in [(0usize, 2usize), (3, 4), (8, 4)].into_iter().enumerate() {
            let ys_k: Vec<Scalar> = ys.iter().map(|y| y[k].clone()).collect();
            let p = interpolate("t", &ts, &ys_k);
            assert_eq!(p.coeffs_high_first(deg), f[lo..=lo + deg].to_vec());
        }
    }
}

#[test]
fn f_vanishes_at_m0() {
    assert!(compute_f_at(&HesseCoordinates::m0()).iter().all(|x| x.is_zero()));
}

/// ∂f/∂x_j at x by interpolating s ↦ f(x + s e_j) through enough nodes to
/// cover its degree and reading off the linear coefficient.
fn partial_by_interpolation(x: &[Scalar], j: usize) -> Vec<Scalar> {
    let nodes: Vec<Scalar> = (0..14).map(Scalar::from_int).collect();
    let vals: Vec<Vec<Scalar>> = nodes
        .iter()
        .map(|s| {
            let mut y = x.to_vec();
            y[j] = &y[j] + s;
            eval_f(&y)
        })
        .collect();
    (0..13)
        .map(|i| {
            let ys: Vec<Scalar> = vals.iter().map(|v| v[i].clone()).collect();
            interpolate("s", &nodes, &ys).coeff(1)
        })
        .collect()
}

#[test]
fn jacobian_matches_reference_matrix_in_all_entries() {
    let computed = jacobian_at_m0();
    let reference = reference_jacobian().unwrap();
    assert_eq!((computed.nrows(), computed.ncols()), (13, 9));
    let mut checked = 0;
    for i in 0..13 {
        for j in 0..9 {
            assert_eq!(computed.get(i, j), reference.get(i, j), "entry ({}, {})", i + 1, j + 1);
            checked += 1;
        }
    }
    assert_eq!(checked, 117);
}

#[test]
fn jacobian_matches_interpolated_partials() {
    let m0 = HesseCoordinates::m0().to_vec();
    let full = full_jacobian(&HesseCoordinates::m0());
    for j in 0..11 {
        let col = partial_by_interpolation(&m0, j);
        for i in 0..13 {
            assert_eq!(full.get(i, j), &col[i], "entry ({}, {})", i + 1, j + 1);
        }
    }
    for i in 0..13 {
        assert!(full.get(i, 9).is_zero() && full.get(i, 10).is_zero());
    }
}

#[test]
fn reference_rank_and_independent_rows() {
    let p = reference_jacobian().unwrap();
    assert_eq!(p.rank(), 9);
    let rows: Vec<usize> = REFERENCE_INDEPENDENT_ROWS.iter().map(|r| r - 1).collect();
    let sub = p.select_rows(&rows);
    assert_eq!(sub.rank(), 9);
    assert!(!sub.determinant().is_zero());
}

#[test]
fn hessians_match_reference_and_are_independent() {
    let h = hessians_uv(&HesseCoordinates::m0());
    assert_eq!(h, reference_hessians());
    let rows: Vec<Vec<Scalar>> = h
        .iter()
        .map(|m| vec![m[0][0].clone(), m[0][1].clone(), m[1][1].clone()])
        .collect();
    assert_eq!(Matrix::from_rows(rows).rank(), 3);
    for m in &h {
        assert_eq!(m[0][1], m[1][0]);
    }
}

#[test]
fn full_report_passes() {
    let r = verify_tangent_cone().unwrap();
    assert!(r.f_vanish);
    assert!(r.jacobian_matches_reference && r.mismatched_entries.is_empty());
    assert!(r.uv_partials_vanish);
    assert_eq!(r.rank, 9);
    assert!(r.reference_rows_independent);
    assert!(r.dg_vanish);
    assert!(r.hessians_match_reference && r.hessians_independent);
    assert!(r.tangent_cone_zero_dimensional);
    assert!(r.pass);
}

#[test]
fn forward_then_recover_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let idx = |s: &str| dual_hesse_index(s) - 1;
    let mut done = 0;
    while done < 10 {
        let cfg = Configuration::random(12, &mut rng);
        // 1′ = ∞, m′ = 0, a′ = 1
        let g = Mobius::normalizing(&cfg.points[idx("m")], &cfg.points[idx("a")], &cfg.points[idx("1")]).unwrap();
        let cfg = cfg.apply(&g);
        let Ok(vals) = dual_hesse_map(&cfg) else { continue };
        let affine = |s: &str| -> Scalar {
            let p: &ProjPoint<Scalar> = &cfg.points[idx(s)];
            &p.x / &p.y
        };
        let c = HesseCoordinates::from_map(&vals);
        let t = affine("b");
        let chain = RecoveryChain::new(&c.w, &c.u, &c.v, &t);
        let Some(rec) = chain.recover(&c.w, &c.u, &t) else { continue };
        let expected: Vec<Scalar> = ["c", "γ", "2", "α", "3", "β"].iter().map(|s| affine(s)).collect();
        assert_eq!(rec.to_vec(), expected);
        done += 1;
    }
}

#[test]
fn conic_configurations_hit_the_fiber() {
    for seed in 1..=3 {
        let w = conic_rank_witness(seed).unwrap();
        assert_eq!(w.generic_rank, 9);
        assert!(w.conic_rank <= 8);
        assert!(w.f_at_conic_image.iter().all(|x| x.is_zero()));
        assert_eq!(w.conic_image, HesseCoordinates::m0());
    }
}

#[test]
fn recovery_formula_for_c_prime() {
    // (w₉ − 1)t / (w₉t − 1) at w₉ = −ω², t = 2, against hand arithmetic
    let m0 = HesseCoordinates::m0();
    let t = Scalar::from_int(2);
    let chain = RecoveryChain::new(&m0.w, &m0.u, &m0.v, &t);
    let c = chain.recover(&m0.w, &m0.u, &t).unwrap()[0].clone();
    // −ω² = 1 + ω, so the value is 2ω / (1 + 2ω) = 2ω(1 + 2ω²)/3 = (2ω + 4)/3
    let om = Scalar::omega();
    let expected = &(&(&Scalar::from_int(2) * &om) + &Scalar::from_int(4)) / &Scalar::from_int(3);
    assert_eq!(c, expected);
}
