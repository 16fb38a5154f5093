//! The dual Hesse exceptional conic: the polynomials f₁..f₁₃ cutting out the
//! positive-dimensional fibers, their Jacobian at m₀, the combinations
//! g₁, g₂, g₃ with their Hessians, and a geometric rank-drop witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crossratio_maps::{
    dual_hesse_map, dual_hesse_map_rank, project, Configuration, CrossRatioError,
};
use crate::exact_arith::{random_rational, DualScalar, Field, MPoly, Matrix, Poly1, Ring, Scalar};
use crate::generator::dual_hesse_index;
use crate::realization::{dual_hesse_realization, Realization};

/// Coordinates (w₁..w₉, u, v) on (M₀,₄)⁹ × M₀,₅.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HesseCoordinates {
    pub w: Vec<Scalar>,
    pub u: Scalar,
    pub v: Scalar,
}

impl HesseCoordinates {
    pub fn m0() -> Self {
        let om = Scalar::omega();
        let om2 = &om * &om;
        HesseCoordinates {
            w: vec![-&om2; 9],
            u: &Scalar::one() - &om,
            v: &Scalar::one() - &om2,
        }
    }

    /// Reads (w, u, v) off the dual Hesse map vector.
    pub fn from_map(vals: &[Scalar]) -> Self {
        HesseCoordinates {
            w: vals[..9].to_vec(),
            u: vals[9].clone(),
            v: vals[10].clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut out = self.w.clone();
        out.push(self.u.clone());
        out.push(self.v.clone());
        out
    }
}

/// A, B, C, D, M, N and the three left-hand sides, generic in the ring so
/// that t may be a number or the polynomial variable.
#[derive(Clone, Debug)]
pub struct RecoveryChain<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
    pub m: R,
    pub n: R,
}

impl<R: Ring> RecoveryChain<R> {
    pub fn new(w: &[R], u: &R, v: &R, t: &R) -> Self {
        let one = R::one();
        let wt = |i: usize| w[i - 1].clone();
        let l = wt(1).times(t).minus(u);
        let c = v
            .negate()
            .times(&wt(4).minus(&one))
            .times(&wt(1).minus(&one))
            .plus(&wt(4).minus(v).times(&l));
        let d = one
            .minus(&wt(4).times(v))
            .times(&wt(1).minus(&one))
            .plus(&wt(4).minus(&one).times(&l));
        let w9t = wt(9).times(t).minus(&one);
        let a = wt(6)
            .times(v)
            .times(&w9t)
            .minus(&wt(9).minus(&one).times(t));
        let b = wt(6).minus(&one).times(&w9t);
        let m = one.minus(&wt(8)).times(&l).times(&a);
        let n = wt(1)
            .minus(&one)
            .times(&a)
            .minus(&wt(8).times(&l).times(&b));
        RecoveryChain { a, b, c, d, m, n }
    }

    /// The three expressions that vanish for every t exactly over the
    /// positive-dimensional fibers.
    pub fn expressions(&self, w: &[R], u: &R, v: &R, t: &R) -> [R; 3] {
        let one = R::one();
        let wt = |i: usize| w[i - 1].clone();
        let (a, b, c, d, m, n) = (&self.a, &self.b, &self.c, &self.d, &self.m, &self.n);
        let w7m = wt(7).minus(&one);
        let e1 = a
            .minus(&u.times(b))
            .times(&wt(7).times(c).minus(&w7m.times(d)))
            .minus(
                &wt(3)
                    .times(&a.minus(b))
                    .times(&wt(7).times(c).minus(&u.times(&w7m).times(d))),
            );
        let e2 = wt(7)
            .times(c)
            .minus(&v.times(&w7m).times(d))
            .times(&m.minus(&t.times(n)))
            .minus(
                &wt(5)
                    .times(&m.minus(&v.times(n)))
                    .times(&wt(7).times(c).minus(&t.times(&w7m).times(d))),
            );
        let w9t = wt(9).times(t).minus(&one);
        let w9m = wt(9).minus(&one).times(t);
        let e3 = w9t
            .times(c)
            .minus(&w9m.times(d))
            .times(&m.minus(&u.times(n)))
            .minus(
                &wt(2)
                    .times(&w9t.times(m).minus(&w9m.times(n)))
                    .times(&c.minus(&u.times(d))),
            );
        [e1, e2, e3]
    }
}

impl<R: Field> RecoveryChain<R> {
    /// (c′, γ′, 2′, α′, 3′, β′) from the chain at parameter t = b′.
    pub fn recover(&self, w: &[R], u: &R, t: &R) -> Option<[R; 6]> {
        let one = R::one();
        let c = w[8]
            .minus(&one)
            .times(t)
            .divide(&w[8].times(t).minus(&one))?;
        let gamma = w[0].times(t).minus(u).divide(&w[0].minus(&one))?;
        let two = self.c.divide(&self.d)?;
        let alpha = self.a.divide(&self.b)?;
        let three = w[6].times(&two).divide(&w[6].minus(&one))?;
        let beta = self.m.divide(&self.n)?;
        Some([c, gamma, two, alpha, three, beta])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HesseError {
    #[error("expression {0} has degree {1} in t")]
    DegreeOverflow(usize, usize),
    #[error("bad fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    CrossRatio(#[from] CrossRatioError),
    #[error("no admissible conic parameter found")]
    DegenerateParameter,
}

/// f₁..f₁₃: coefficients in t, highest power first, of the three expressions.
pub fn compute_f<R: Ring>(w: &[R], u: &R, v: &R) -> Result<Vec<R>, HesseError> {
    let lift = |x: &R| Poly1::constant("t", x.clone());
    let wp: Vec<Poly1<R>> = w.iter().map(lift).collect();
    let (up, vp) = (lift(u), lift(v));
    let t = Poly1::x("t");
    let chain = RecoveryChain::new(&wp, &up, &vp, &t);
    let exprs = chain.expressions(&wp, &up, &vp, &t);
    let mut out = Vec::with_capacity(13);
    for (k, (e, deg)) in exprs.iter().zip([2usize, 4, 4]).enumerate() {
        if let Some(d) = e.degree() {
            if d > deg {
                return Err(HesseError::DegreeOverflow(k + 1, d));
            }
        }
        out.extend(e.coeffs_high_first(deg));
    }
    Ok(out)
}

pub fn compute_f_at(c: &HesseCoordinates) -> Vec<Scalar> {
    compute_f(&c.w, &c.u, &c.v).expect("degrees are bounded by construction")
}

fn dual_at(c: &HesseCoordinates, nvars: usize) -> (Vec<DualScalar>, DualScalar, DualScalar) {
    let all = c.to_vec();
    let var = |i: usize| {
        if i < nvars {
            DualScalar::variable(all[i].clone(), i)
        } else {
            DualScalar::constant(all[i].clone())
        }
    };
    ((0..9).map(var).collect(), var(9), var(10))
}

/// ∂f_i/∂(w₁..w₉, u, v) at a point, as a 13×11 matrix.
pub fn full_jacobian(c: &HesseCoordinates) -> Matrix {
    let (w, u, v) = dual_at(c, 11);
    let f = compute_f(&w, &u, &v).expect("bounded degrees");
    Matrix::from_rows(f.iter().map(|x| x.gradient(11)).collect())
}

/// The 13×9 block [∂f_i/∂w_j] at m₀.
pub fn jacobian_at_m0() -> Matrix {
    let full = full_jacobian(&HesseCoordinates::m0());
    Matrix::from_rows(
        full.to_rows()
            .into_iter()
            .map(|r| r[..9].to_vec())
            .collect(),
    )
}

const FIXTURE: &str = include_str!("../fixtures/hesse_jacobian.json");

#[derive(Deserialize)]
struct JacobianFixture {
    rows: Vec<Vec<Scalar>>,
}

/// The reference 13×9 Jacobian at m₀, from the checked-in fixture.
pub fn reference_jacobian() -> Result<Matrix, HesseError> {
    let f: JacobianFixture =
        serde_json::from_str(FIXTURE).map_err(|e| HesseError::Fixture(e.to_string()))?;
    if f.rows.len() != 13 || f.rows.iter().any(|r| r.len() != 9) {
        return Err(HesseError::Fixture("expected 13 rows of 9 entries".into()));
    }
    Ok(Matrix::from_rows(f.rows))
}

/// 1-based rows stated to be independent.
pub const REFERENCE_INDEPENDENT_ROWS: [usize; 9] = [1, 2, 3, 6, 7, 8, 11, 12, 13];

fn cyc(a: i64, b: i64) -> Scalar {
    Scalar::from_ints(3, &[a, b])
}

/// Coefficients of g₁, g₂, g₃ on f₁..f₁₃ (a + bω written as cyc(a, b)).
pub fn g_coefficients() -> [Vec<Scalar>; 3] {
    let z = || Scalar::zero();
    let mut g1 = vec![z(); 13];
    let mut g2 = vec![z(); 13];
    let mut g3 = vec![z(); 13];
    for (i, c) in [
        cyc(45, 0),
        cyc(27, 0),
        cyc(3, -6),
        cyc(-5, -10),
        cyc(-3, -6),
    ]
    .into_iter()
    .enumerate()
    {
        g1[3 + i] = c;
    }
    for (i, c) in [cyc(-18, 0), cyc(-6, 6), cyc(0, 6), cyc(2, 4), cyc(2, 2)]
        .into_iter()
        .enumerate()
    {
        g2[3 + i] = c;
    }
    for (i, c) in [
        cyc(126, 0),
        cyc(126, 63),
        cyc(126, 105),
        cyc(112, 161),
        cyc(42, 189),
    ]
    .into_iter()
    .enumerate()
    {
        g3[8 + i] = c;
    }
    [g1, g2, g3]
}

/// The reference Hessians in (u, v) of g₁, g₂, g₃ at m₀.
pub fn reference_hessians() -> [[[Scalar; 2]; 2]; 3] {
    let sym = |a: Scalar, b: Scalar, d: Scalar| [[a, b.clone()], [b, d]];
    [
        sym(cyc(-18, -18), cyc(-12, -30), cyc(54, -12)),
        sym(cyc(8, 4), cyc(8, 16), cyc(-16, 16)),
        sym(cyc(42, -126), cyc(84, 42), cyc(42, 42)),
    ]
}

fn combine<R: Ring>(coeffs: &[Scalar], f: &[R]) -> R {
    coeffs
        .iter()
        .zip(f)
        .filter(|(c, _)| !c.is_zero())
        .fold(R::zero(), |acc, (c, x)| {
            acc.plus(&R::from_scalar(c).times(x))
        })
}

/// Hessians of g₁, g₂, g₃ in (u, v) with w held at the given values,
/// computed from the f's as polynomials in u, v.
pub fn hessians_uv(c: &HesseCoordinates) -> [[[Scalar; 2]; 2]; 3] {
    let w: Vec<MPoly> = c.w.iter().cloned().map(MPoly::constant).collect();
    let f = compute_f(&w, &MPoly::var(0), &MPoly::var(1)).expect("bounded degrees");
    let at = [c.u.clone(), c.v.clone()];
    let gs = g_coefficients();
    let hess = |g: &MPoly| {
        let e = |i: usize, j: usize| g.derivative(i).derivative(j).eval(&at);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    [
        hess(&combine(&gs[0], &f)),
        hess(&combine(&gs[1], &f)),
        hess(&combine(&gs[2], &f)),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct HesseReport {
    pub m0: HesseCoordinates,
    pub f_at_m0: Vec<Scalar>,
    pub f_vanish: bool,
    pub jacobian: Vec<Vec<Scalar>>,
    pub jacobian_matches_reference: bool,
    pub mismatched_entries: Vec<(usize, usize)>,
    pub uv_partials_vanish: bool,
    pub rank: usize,
    pub reference_rows_independent: bool,
    pub dg_at_m0: Vec<Vec<Scalar>>,
    pub dg_vanish: bool,
    pub hessians: Vec<Vec<Vec<Scalar>>>,
    pub hessians_match_reference: bool,
    pub hessians_independent: bool,
    pub tangent_cone_zero_dimensional: bool,
    pub pass: bool,
}

pub fn verify_tangent_cone() -> Result<HesseReport, HesseError> {
    let m0 = HesseCoordinates::m0();
    let f0 = compute_f_at(&m0);
    let f_vanish = f0.iter().all(|x| x.is_zero());

    let full = full_jacobian(&m0);
    let jac = jacobian_at_m0();
    let reference = reference_jacobian()?;
    let mut mismatched = Vec::new();
    for i in 0..13 {
        for j in 0..9 {
            if jac.get(i, j) != reference.get(i, j) {
                mismatched.push((i + 1, j + 1));
            }
        }
    }
    let uv_partials_vanish = (0..13).all(|i| full.get(i, 9).is_zero() && full.get(i, 10).is_zero());
    let rank = jac.rank();
    let sel: Vec<usize> = REFERENCE_INDEPENDENT_ROWS.iter().map(|r| r - 1).collect();
    let reference_rows_independent = jac.select_rows(&sel).rank() == 9;

    let dg: Vec<Vec<Scalar>> = g_coefficients()
        .iter()
        .map(|g| {
            (0..11)
                .map(|k| {
                    combine(
                        g,
                        &(0..13).map(|i| full.get(i, k).clone()).collect::<Vec<_>>(),
                    )
                })
                .collect()
        })
        .collect();
    let dg_vanish = dg.iter().flatten().all(|x| x.is_zero());

    let hess = hessians_uv(&m0);
    let hessians_match_reference = hess == reference_hessians();
    let hessians_independent = Matrix::from_rows(
        hess.iter()
            .map(|h| vec![h[0][0].clone(), h[0][1].clone(), h[1][1].clone()])
            .collect(),
    )
    .rank()
        == 3;
    let tangent_cone_zero_dimensional = rank == 9 && dg_vanish && hessians_independent;
    let pass = f_vanish
        && mismatched.is_empty()
        && uv_partials_vanish
        && reference_rows_independent
        && hessians_match_reference
        && tangent_cone_zero_dimensional;
    Ok(HesseReport {
        m0,
        f_at_m0: f0,
        f_vanish,
        jacobian: jac.to_rows(),
        jacobian_matches_reference: mismatched.is_empty(),
        mismatched_entries: mismatched,
        uv_partials_vanish,
        rank,
        reference_rows_independent,
        dg_at_m0: dg,
        dg_vanish,
        hessians: hess
            .iter()
            .map(|h| h.iter().map(|r| r.to_vec()).collect())
            .collect(),
        hessians_match_reference,
        hessians_independent,
        tangent_cone_zero_dimensional,
        pass,
    })
}

/// Coefficients (x², xy, xz, y², yz, z²) of the conic through five points.
pub fn conic_through(real: &Realization, five: &[usize]) -> Option<Vec<Scalar>> {
    let rows = five
        .iter()
        .map(|&v| {
            let p = real.point(v);
            vec![
                &p[0] * &p[0],
                &p[0] * &p[1],
                &p[0] * &p[2],
                &p[1] * &p[1],
                &p[1] * &p[2],
                &p[2] * &p[2],
            ]
        })
        .collect();
    let k = Matrix::from_rows(rows).kernel();
    (k.len() == 1).then(|| k[0].clone())
}

fn conic_form(c: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Scalar {
    let two = Scalar::from_int(2);
    let a = [
        [&two * &c[0], c[1].clone(), c[2].clone()],
        [c[1].clone(), &two * &c[3], c[4].clone()],
        [c[2].clone(), c[4].clone(), &two * &c[5]],
    ];
    let mut s = Scalar::zero();
    for i in 0..3 {
        for j in 0..3 {
            s = &s + &(&(&x[i] * &a[i][j]) * &y[j]);
        }
    }
    s
}

/// Second intersection of the conic with the line through `m` in direction `d`.
pub fn conic_point(conic: &[Scalar], m: &[Scalar], d: &[Scalar]) -> Vec<Scalar> {
    let qdd = conic_form(conic, d, d);
    let qmd = conic_form(conic, m, d);
    let two = Scalar::from_int(2);
    (0..3)
        .map(|i| &(&qdd * &m[i]) - &(&(&two * &qmd) * &d[i]))
        .collect()
}

pub const CONIC_FIVE: [&str; 5] = ["m", "n", "p", "1", "a"];

#[derive(Clone, Debug, Serialize)]
pub struct ConicWitness {
    pub generic_rank: usize,
    /// projection of the dual Hesse configuration from a point off the conic
    pub off_conic_rank: usize,
    pub conic_rank: usize,
    pub conic_center: Vec<Scalar>,
    pub conic_image: HesseCoordinates,
    pub f_at_conic_image: Vec<Scalar>,
}

/// Ranks of the dual Hesse map at a random configuration, at a projection
/// from a random point and at a projection from a random point of the conic
/// through {m, n, p, 1, a}.
pub fn conic_rank_witness(seed: u64) -> Result<ConicWitness, HesseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = dual_hesse_realization();
    let five: Vec<usize> = CONIC_FIVE.iter().map(|s| dual_hesse_index(s)).collect();
    let conic = conic_through(&real, &five).ok_or(HesseError::DegenerateParameter)?;
    let m = real.point(dual_hesse_index("m")).to_vec();

    let generic_rank = dual_hesse_map_rank(&Configuration::random(12, &mut rng))?;
    let off_conic_rank = loop {
        let c: Vec<Scalar> = (0..3).map(|_| random_rational(&mut rng)).collect();
        if conic_form(&conic, &c, &c).is_zero() {
            continue;
        }
        match project(&real, &c) {
            Ok(cfg) => match dual_hesse_map_rank(&cfg) {
                Ok(r) => break r,
                Err(_) => continue,
            },
            Err(_) => continue,
        }
    };
    for _ in 0..64 {
        let d: Vec<Scalar> = (0..3).map(|_| random_rational(&mut rng)).collect();
        let center = conic_point(&conic, &m, &d);
        if center.iter().all(|x| x.is_zero()) {
            continue;
        }
        let Ok(cfg) = project(&real, &center) else {
            continue;
        };
        let Ok(vals) = dual_hesse_map(&cfg) else {
            continue;
        };
        let conic_rank = dual_hesse_map_rank(&cfg)?;
        let image = HesseCoordinates::from_map(&vals);
        return Ok(ConicWitness {
            generic_rank,
            off_conic_rank,
            conic_rank,
            conic_center: center,
            f_at_conic_image: compute_f_at(&image),
            conic_image: image,
        });
    }
    Err(HesseError::DegenerateParameter)
}
