use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hypermod_core::crossratio_maps::{cycle_basis, jacobian_rank, v_eval, Configuration};
use hypermod_core::divisor_classes::{exceptional_conic_class, kv_divisor};
use hypermod_core::generator::{
    build_named, dual_hesse, dual_hesse_index, enumerate_dagger_3graphs, enumerate_fibonacci,
    keel_vermeire, IsoClass, DUAL_HESSE_NAMES,
};
use hypermod_core::hesse_verify::{conic_rank_witness, verify_tangent_cone, CONIC_FIVE};
use hypermod_core::hypergraph::Hypergraph;
use hypermod_core::realization::{
    dual_hesse_realization, gamma_prime, local_dimension, w3_empty_certificate, w_filter,
    FieldSpec, RealizationError,
};
use hypermod_core::stability::{
    boundary_strata, gbi_check, kv_polytope_faces, omega_weights, three_edge_connected,
    QuasiStableModel,
};

use crate::report::{CliError, Outcome};
use crate::{Input, Mode};

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load(input: &Input) -> Result<Hypergraph, CliError> {
    match (&input.path, &input.named) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
            let raw: Hypergraph = serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
            Ok(Hypergraph::new(raw.n, raw.edges().to_vec()))
        }
        (None, Some(name)) => named(name),
        (None, None) => Err(CliError::usage("give a .hg.json path or --named NAME")),
        (Some(_), Some(_)) => Err(CliError::usage("give either a path or --named, not both")),
    }
}

fn named(name: &str) -> Result<Hypergraph, CliError> {
    if let Some(k) = name.strip_prefix("fibonacci:") {
        let n: usize = k
            .parse()
            .map_err(|_| CliError::usage(format!("bad size in {name:?}")))?;
        let classes = enumerate_fibonacci(n).map_err(|e| CliError::input(e.to_string()))?;
        return match classes.as_slice() {
            [c] => Ok(c.canonical_hypergraph()),
            _ => Err(CliError::input(format!(
                "{} Fibonacci classes for n = {n}; pass one as a file",
                classes.len()
            ))),
        };
    }
    build_named(name).map_err(|e| CliError::input(e.to_string()))
}

fn require_valid(h: &Hypergraph) -> Result<(), CliError> {
    let v = h.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(CliError::input(
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ))
    }
}

fn field(s: &str) -> Result<FieldSpec, CliError> {
    s.parse().map_err(CliError::usage)
}

pub fn validate(input: &Input) -> Result<Outcome, CliError> {
    let h = load(input)?;
    let violations = h.violations();
    let valid = violations.is_empty();
    let report = json!({
        "valid": valid,
        "violations": violations,
        "duplicate_edges": h.duplicate_edges(),
    });
    Ok(Outcome::new("validate", Some(&h), valid, report))
}

pub fn conditions(input: &Input) -> Result<Outcome, CliError> {
    let h = load(input)?;
    let err = |e: hypermod_core::hypergraph::ShapeError| CliError::input(e.to_string());
    let s = h.check_cond_s().map_err(err)?;
    let c = h.check_cond_c().map_err(err)?;
    let birational = h.check_birational().map_err(err)?;
    let dagger = if h.is_three_graph() && h.num_edges() + 2 == h.n {
        Some(h.check_cond_m().map_err(err)?)
    } else {
        None
    };
    let report = json!({
        "cond_s": s.holds,
        "cond_s_witness": s.witness,
        "cond_c": c.holds,
        "cond_c_witness": c.witness,
        "dimension_match": h.dimension_match(),
        "birational_dim": birational,
        "cond_m": dagger,
        "duplicate_edges": h.duplicate_edges(),
        "violations": h.violations(),
    });
    Ok(Outcome::new("conditions", Some(&h), s.holds, report))
}

pub fn genus(input: &Input) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let g = h.genus();
    let dg = h.dual_graph();
    let betti = dg.betti();
    let report = json!({
        "genus": g,
        "dual_graph": {
            "vertices": dg.components.len(),
            "edges": dg.edges.len(),
            "black": dg.num_black(),
            "betti": betti,
        },
        "agree": g == betti,
    });
    Ok(Outcome::new("genus", Some(&h), g == betti, report))
}

fn class_json(c: &IsoClass) -> Value {
    let h = c.canonical_hypergraph();
    json!({
        "hyperedges": h.edges(),
        "automorphisms": c.canonical.automorphisms,
    })
}

pub fn enumerate(
    mode: Mode,
    n: usize,
    filter: bool,
    node_limit: Option<usize>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let report = match mode {
        Mode::Fibonacci => {
            let classes = enumerate_fibonacci(n).map_err(|e| CliError::input(e.to_string()))?;
            json!({
                "mode": "fibonacci",
                "n": n,
                "count": classes.len(),
                "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
            })
        }
        Mode::Dagger => {
            let (classes, stats) = enumerate_dagger_3graphs(n, node_limit)
                .map_err(|e| CliError::input(e.to_string()))?;
            let mut v = json!({
                "mode": "dagger",
                "n": n,
                "count": classes.len(),
                "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
                "stats": stats,
            });
            if filter {
                let fib = enumerate_fibonacci(n).ok().unwrap_or_default();
                let survivors: Vec<Value> = classes
                    .iter()
                    .filter_map(|c| {
                        let rep = w_filter(&c.canonical_hypergraph(), seed);
                        rep.passes.then(|| {
                            let mut j = class_json(c);
                            j["fibonacci"] = json!(fib.iter().any(|f| f.canonical.edges == c.canonical.edges));
                            j["w_filter"] = to_json(&rep);
                            j
                        })
                    })
                    .collect();
                v["w_filter_survivors"] = json!(survivors.len());
                v["survivors"] = json!(survivors);
            }
            v
        }
    };
    Ok(Outcome::new("enumerate", None, true, report))
}

pub fn realize(
    input: &Input,
    r: usize,
    field_s: &str,
    budget: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let f = field(field_s)?;
    if budget == 0 {
        return Err(CliError::usage("budget must be positive"));
    }
    let (report, found) = match hypermod_core::realization::realize(&h, r, f, seed, budget) {
        Ok(rep) => (
            json!({"found": true, "field": f, "r": r, "result": rep}),
            true,
        ),
        Err(RealizationError::BadAmbient(r)) => {
            return Err(CliError::usage(format!("--r must be 2 or 3, got {r}")))
        }
        Err(e) => (
            json!({"found": false, "field": f, "r": r, "reason": e.to_string()}),
            false,
        ),
    };
    Ok(Outcome::new("realize", Some(&h), found, report))
}

pub fn dims(input: &Input, field_s: &str, budget: usize, seed: u64) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let f = field(field_s)?;
    match hypermod_core::realization::realize(&h, 2, f, seed, budget) {
        Ok(rep) => {
            let d = local_dimension(&rep.realization, &h)
                .map_err(|e| CliError::compute(e.to_string()))?;
            let report = json!({
                "found": true,
                "field": f,
                "attempts": rep.attempts,
                "local_dimension": d,
                "rigid": d.moduli_dim == 0,
                "realization": rep.realization,
                "note": "tangent-space dimension at the witness; the realization scheme is assumed reduced there",
            });
            Ok(Outcome::new("dims", Some(&h), true, report))
        }
        Err(e) => Ok(Outcome::new(
            "dims",
            Some(&h),
            false,
            json!({"found": false, "field": f, "reason": e.to_string()}),
        )),
    }
}

pub fn w3cert(input: &Input) -> Result<Outcome, CliError> {
    let h = load(input)?;
    let cert = w3_empty_certificate(&h);
    let val = h.valences();
    let primes: Vec<Value> = (1..=h.n)
        .filter(|&v| val[v] == 2)
        .filter_map(|v| {
            gamma_prime(&h, v)
                .map(|g| json!({"vertex": v, "certificate": w3_empty_certificate(&g)}))
        })
        .collect();
    let extra: Vec<bool> = (0..h.num_edges())
        .map(|a| w3_empty_certificate(&h.without_edges(&[a])).holds)
        .collect();
    let report = json!({
        "certificate": cert,
        "gamma_prime": primes,
        "extra_cond": extra,
    });
    Ok(Outcome::new("w3cert", Some(&h), cert.holds, report))
}

pub fn stability(input: &Input, degree: Option<&[i64]>, strata: bool) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let dg = h.dual_graph();
    let model = QuasiStableModel::stable(dg.clone());
    let deg = degree
        .map(<[i64]>::to_vec)
        .unwrap_or_else(|| model.canonical_multidegree());
    let weights = omega_weights(&model).map_err(|e| CliError::input(e.to_string()))?;
    let gbi = gbi_check(&model, &deg, true).map_err(|e| CliError::input(e.to_string()))?;
    let (conn, cut) = three_edge_connected(&dg);
    let mut pass = gbi.holds;
    let mut report = json!({
        "components": model.labels(),
        "weights": weights,
        "degree": deg,
        "strict": gbi,
        "three_edge_connected": conn,
        "two_edge_cut": cut,
    });
    if strata {
        let rep = boundary_strata(&h).map_err(|e| CliError::input(e.to_string()))?;
        pass &= rep.count == rep.expected;
        report["strata"] = to_json(&rep);
    }
    Ok(Outcome::new("stability", Some(&h), pass, report))
}

pub fn polytope() -> Result<Outcome, CliError> {
    let faces = kv_polytope_faces();
    let kv = keel_vermeire();
    let strata = boundary_strata(&kv).map_err(|e| CliError::compute(e.to_string()))?;
    let antipodal = faces.iter().all(|f| {
        faces
            .iter()
            .any(|g| g.normal.iter().zip(&f.normal).all(|(a, b)| *a == -*b))
    });
    let pass =
        faces.len() == 12 && faces.iter().all(|f| f.semistable) && strata.count == 12 && antipodal;
    let report = json!({
        "faces": faces,
        "count": faces.len(),
        "strata_count": strata.count,
        "antipodal": antipodal,
    });
    Ok(Outcome::new("polytope", Some(&kv), pass, report))
}

pub fn v_map(input: &Input, seed: u64) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let basis = cycle_basis(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = Configuration::random(h.n, &mut rng);
    let mut cycles = Vec::new();
    for c in &basis {
        let v = v_eval(c, &cfg).map_err(|e| CliError::compute(e.to_string()))?;
        cycles.push(json!({
            "points": c.points,
            "components": c.components.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "b": c.b,
            "edge_vector": c.edge_vector(&h),
            "value": v,
        }));
    }
    let pass = basis.len() as i64 == h.genus();
    let report = json!({
        "genus": h.genus(),
        "configuration": cfg,
        "cycles": cycles,
    });
    Ok(Outcome::new("v-map", Some(&h), pass, report))
}

pub fn map_rank(input: &Input, cone: bool, samples: u64, seed: u64) -> Result<Outcome, CliError> {
    let h = load(input)?;
    require_valid(&h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = if cone { h.n + 1 } else { h.n };
    let target: i64 = h
        .edges()
        .iter()
        .map(|e| e.len() as i64 + i64::from(cone) - 3)
        .sum();
    let domain = points as i64 - 3;
    let mut ranks = Vec::new();
    for _ in 0..samples.max(1) {
        let cfg = Configuration::random(points, &mut rng);
        ranks.push(
            jacobian_rank(&h, &cfg, cone.then_some(h.n + 1))
                .map_err(|e| CliError::compute(e.to_string()))?,
        );
    }
    let stable = ranks.windows(2).all(|w| w[0] == w[1]);
    let dominant = h.check_cond_s().map(|r| r.holds).unwrap_or(false);
    let expected = dominant.then(|| domain.min(target));
    let report = json!({
        "cone": cone,
        "domain_dim": domain,
        "target_dim": target,
        "ranks": ranks,
        "expected_if_dominant": expected,
    });
    Ok(Outcome::new("map-rank", Some(&h), stable, report))
}

pub fn map_rank_dual_hesse(samples: u64, seed: u64) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut pass = true;
    for k in 0..samples.max(1) {
        let w = conic_rank_witness(seed.wrapping_add(k))
            .map_err(|e| CliError::compute(e.to_string()))?;
        pass &= w.generic_rank == 9 && w.conic_rank <= 8;
        rows.push(w);
    }
    let report = json!({ "samples": rows });
    Ok(Outcome::new("map-rank", Some(&dual_hesse()), pass, report))
}

pub fn class_kv() -> Result<Outcome, CliError> {
    let d = kv_divisor();
    let pass = d.consistent && d.h_degree == 2;
    Ok(Outcome::new(
        "class",
        Some(&keel_vermeire()),
        pass,
        to_json(&d),
    ))
}

pub fn class_exc_conic() -> Result<Outcome, CliError> {
    let real = dual_hesse_realization();
    let five: Vec<usize> = CONIC_FIVE.iter().map(|s| dual_hesse_index(s)).collect();
    let class =
        exceptional_conic_class(&real, &five).map_err(|e| CliError::compute(e.to_string()))?;
    let names: BTreeMap<String, i64> = class
        .delta
        .iter()
        .map(|(l, c)| (l.named(&DUAL_HESSE_NAMES), *c))
        .collect();
    let report = json!({
        "five": CONIC_FIVE,
        "terms": class.num_terms(),
        "Delta": class.delta,
        "Delta_named": names,
    });
    Ok(Outcome::new(
        "class",
        Some(&dual_hesse()),
        class.num_terms() == 26,
        report,
    ))
}

pub fn hesse_verify(witness: u64, seed: u64) -> Result<Outcome, CliError> {
    let rep = verify_tangent_cone().map_err(|e| CliError::compute(e.to_string()))?;
    let mut pass = rep.pass;
    let mut report = to_json(&rep);
    if witness > 0 {
        let mut ws = Vec::new();
        for k in 0..witness {
            let w = conic_rank_witness(seed.wrapping_add(k))
                .map_err(|e| CliError::compute(e.to_string()))?;
            pass &= w.generic_rank == 9
                && w.conic_rank <= 8
                && w.f_at_conic_image.iter().all(|x| x.is_zero());
            ws.push(w);
        }
        report["conic_witness"] = to_json(&ws);
    }
    Ok(Outcome::new(
        "hesse-verify",
        Some(&dual_hesse()),
        pass,
        report,
    ))
}
