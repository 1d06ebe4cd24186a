//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nodal_cli::kummer::{kummer_search, KUMMER_NODES};
use nodal_cli::manifest::Manifest;
use nodal_cli::scenarios::{enumeration_checks, kummer_audit, CAYLEY_FIXTURE};
use nodal_core::cohomology::{
    check_chi_node_formula, chi_from_resolution, cohomology_table, duality_symmetry_check, hilbert_function_coker,
    GradedPresentation,
};
use nodal_core::enumerator::{enumerate_degree_types, explain_rejection, ConstraintProfile};
use nodal_core::groebner::{buchberger, macaulay_colength, staircase_colength, Colength, GroebnerConfig, Ideal};
use nodal_core::linalg;
use nodal_core::nodes::{
    affine_singular_ideal, count_nodes, coordinate_change, enumerate_rational_singular_points, hessian_rank_at_point,
    rank_drop_check, NodeReport,
};
use nodal_core::poly::{monomials_up_to_degree, Field, Polynomial, TermOrder};
use nodal_core::rng::SeededRng;
use nodal_core::symmat::{
    congruence_transform, determinant, random_block_congruence, random_symmetric_matrix, validate_degree_type,
    FieldJson, SurfaceFile, SurfaceSpec, SymmetricFormMatrix,
};
use rayon::prelude::*;

type Outcome = Result<Vec<String>, String>;

struct Instance {
    label: String,
    matrix: SymmetricFormMatrix,
    surface: SurfaceSpec,
    report: NodeReport,
}

fn field() -> Field {
    Field::Prime(Manifest::load().prime)
}

fn cfg() -> GroebnerConfig {
    GroebnerConfig::default()
}

fn ensure(ok: bool, failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn instances(ids: &[&str]) -> Result<Vec<Instance>, String> {
    let manifest = Manifest::load();
    let mut jobs = Vec::new();
    for id in ids {
        let case = manifest.case(id).ok_or(format!("no case {id}"))?;
        for &seed in &case.seeds {
            jobs.push((case.clone(), seed));
        }
    }
    jobs.par_iter()
        .map(|(case, seed)| {
            let dt = validate_degree_type(case.d, case.delta, &case.tuple).map_err(|e| e.to_string())?;
            let matrix = random_symmetric_matrix(&dt, field(), *seed);
            let surface = determinant(&matrix).map_err(|e| e.to_string())?;
            let report = count_nodes(&surface, *seed, &cfg()).map_err(|e| format!("{} seed {seed}: {e}", case.id))?;
            Ok(Instance { label: format!("{} seed {seed}", case.id), matrix, surface, report })
        })
        .collect()
}

fn expected_nodes(id: &str) -> usize {
    Manifest::load().case(id).expect("case").nodes
}

fn enumeration() -> Outcome {
    let start = Instant::now();
    let mut failures: Vec<String> = enumeration_checks()
        .into_iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: expected {}, observed {}", c.name, c.expected, c.observed))
        .collect();
    let quintic = enumerate_degree_types(5, 0, &ConstraintProfile::default());
    ensure(quintic.len() == 5, &mut failures, || format!("(5,0) lists {} types", quintic.len()));
    let why = explain_rejection(5, 0, &[-1, 1, 5], &ConstraintProfile::default());
    ensure(!why.is_empty(), &mut failures, || "(-1,1,5) admitted under {i, iii}".into());
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), &mut failures, || format!("took {elapsed:?}"));
    if failures.is_empty() {
        let reasons: Vec<String> = why.iter().map(|v| v.to_string()).collect();
        Ok(vec![format!("(-1,1,5) excluded by {}", reasons.join("; "))])
    } else {
        Err(failures.join("; "))
    }
}

fn quartic() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for inst in instances(&["d4-delta0-type22"])? {
        let start = Instant::now();
        let report = count_nodes(&inst.surface, inst.report.seed, &cfg()).map_err(|e| e.to_string())?;
        let rank = rank_drop_check(&inst.matrix, &report, &cfg()).map_err(|e| e.to_string())?;
        let p = GradedPresentation::surface(&inst.matrix).map_err(|e| e.to_string())?;
        let chi = chi_from_resolution(&p, 0);
        let formula = check_chi_node_formula(&p, &report).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(report.t == 8, &mut failures, || format!("{}: t = {}", inst.label, report.t));
        ensure(report.reduced_certified, &mut failures, || format!("{}: uncertified", inst.label));
        ensure(rank, &mut failures, || format!("{}: rank drop inconsistent", inst.label));
        ensure(chi == 0 && formula, &mut failures, || format!("{}: chi = {chi}", inst.label));
        ensure(elapsed < Duration::from_secs(60), &mut failures, || format!("{}: took {elapsed:?}", inst.label));
        notes.push(format!("{} {} ms", inst.label, elapsed.as_millis()));
    }
    if failures.is_empty() {
        Ok(notes)
    } else {
        Err(failures.join("; "))
    }
}

fn linear_symmetroids() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for id in ["cayley-cubic", "d4-delta1-type1111", "d5-type11111"] {
        let start = Instant::now();
        let expected = expected_nodes(id);
        for inst in instances(&[id])? {
            let chart =
                affine_singular_ideal(&inst.surface, &coordinate_change(field(), inst.report.charts[0].seed))
                    .map_err(|e| e.to_string())?;
            let oracle = macaulay_colength(&chart).map(|(n, _)| n);
            let rank = rank_drop_check(&inst.matrix, &inst.report, &cfg()).map_err(|e| e.to_string())?;
            ensure(inst.report.t == expected, &mut failures, || format!("{}: t = {}", inst.label, inst.report.t));
            ensure(oracle == Some(expected), &mut failures, || format!("{}: oracle {oracle:?}", inst.label));
            ensure(inst.report.reduced_certified, &mut failures, || format!("{}: uncertified", inst.label));
            ensure(rank, &mut failures, || format!("{}: rank drop inconsistent", inst.label));
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(300), &mut failures, || format!("{id}: took {elapsed:?}"));
        notes.push(format!("{id}: t = {expected} on 5 seeds, {} ms", elapsed.as_millis()));
    }
    let file: SurfaceFile = serde_json::from_str(CAYLEY_FIXTURE).map_err(|e| e.to_string())?;
    let f7 = SurfaceFile { field: FieldJson::Prime { fp: 7 }, ..file }.to_surface().map_err(|e| e.to_string())?;
    let points = enumerate_rational_singular_points(&f7).map_err(|e| e.to_string())?;
    ensure(points.len() == expected_nodes("cayley-cubic"), &mut failures, || format!("F_7 points {}", points.len()));
    for q in &points {
        let h = hessian_rank_at_point(&f7, q).map_err(|e| e.to_string())?;
        ensure(h.is_node(), &mut failures, || format!("F_7 point {q} is not a node"));
    }
    notes.push(format!("Cayley fixture over F_7: {} nodes", points.len()));
    if failures.is_empty() {
        Ok(notes)
    } else {
        Err(failures.join("; "))
    }
}

const SMOOTH_SECTION_CASES: [&str; 5] =
    ["d4-delta0-type22", "d4-delta1-type13", "d4-delta1-type1111", "d5-type113", "d5-type11111"];

fn cohomology() -> Outcome {
    let start = Instant::now();
    let manifest = Manifest::load();
    let mut failures = Vec::new();
    for id in SMOOTH_SECTION_CASES {
        let case = manifest.case(id).expect("case");
        let dt = validate_degree_type(case.d, case.delta, &case.tuple).map_err(|e| e.to_string())?;
        let m = random_symmetric_matrix(&dt, field(), case.seeds[0]);
        let section = GradedPresentation::plane_section(&m, case.section_seed).map_err(|e| e.to_string())?;
        let (lo, hi) = (case.range[0], case.range[1]);
        ensure(hi - lo + 1 >= 6, &mut failures, || format!("{id}: range too narrow"));
        let table = cohomology_table(&section, lo..=hi).map_err(|e| e.to_string())?;
        let dual = duality_symmetry_check(&section, lo..=hi).map_err(|e| e.to_string())?;
        ensure(dual, &mut failures, || format!("{id}: duality fails"));
        match id {
            "d4-delta0-type22" => {
                let r0 = table.row(0).expect("row");
                let r1 = table.row(1).expect("row");
                ensure(r0.h0 == 0, &mut failures, || format!("{id}: h0(0) = {}", r0.h0));
                ensure(r1.h0 == 2, &mut failures, || format!("{id}: h0(1) = {}", r1.h0));
                ensure(r1.h1 == Some(0), &mut failures, || format!("{id}: h1(1) = {:?}", r1.h1));
            }
            "d5-type113" => {
                let r1 = table.row(1).expect("row");
                ensure(r1.h0 <= 1, &mut failures, || format!("{id}: h0(1) = {}", r1.h0));
            }
            _ => {}
        }
        for p in [&section, &GradedPresentation::surface(&m).map_err(|e| e.to_string())?] {
            let stable = *p.source_degrees().iter().max().expect("nonempty");
            for k in stable..stable + 4 {
                let hf = hilbert_function_coker(p, k) as i64;
                let chi = chi_from_resolution(p, k);
                ensure(hf == chi, &mut failures, || format!("{id}: HF({k}) = {hf} but chi = {chi}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), &mut failures, || format!("took {elapsed:?}"));
    if failures.is_empty() {
        Ok(vec![format!("{} section types, {} ms", SMOOTH_SECTION_CASES.len(), elapsed.as_millis())])
    } else {
        Err(failures.join("; "))
    }
}

fn random_poly(ideal: &Ideal, degree: u32, rng: &mut SeededRng) -> Polynomial {
    let ring = ideal.ring();
    let mut terms = Vec::new();
    for m in monomials_up_to_degree(ring.nvars(), degree) {
        if rng.next_u64().is_multiple_of(4) {
            terms.push((m, rng.scalar(ring.field())));
        }
    }
    Polynomial::from_terms(ring, terms)
}

fn check_basis(ideal: &Ideal, t: usize, label: &str, seed: u64) -> Vec<String> {
    let mut failures = Vec::new();
    let basis = match buchberger(ideal, TermOrder::Grevlex, &cfg()) {
        Ok(b) => b,
        Err(e) => return vec![format!("{label}: {e}")],
    };
    let colength = staircase_colength(&basis);
    ensure(colength == Colength::Finite(t), &mut failures, || format!("{label}: colength {colength:?}"));
    let oracle = macaulay_colength(ideal).map(|(n, _)| n);
    ensure(oracle == Some(t), &mut failures, || format!("{label}: oracle {oracle:?}"));
    ensure(basis.audit(), &mut failures, || format!("{label}: S-polynomial audit"));
    let mut rng = SeededRng::new(seed);
    for i in 0..100 {
        let f = random_poly(ideal, 6, &mut rng);
        let nf = basis.normal_form(&f).expect("same ring");
        let again = basis.normal_form(&nf).expect("same ring");
        if nf != again {
            failures.push(format!("{label}: normal form not idempotent on input {i}"));
            break;
        }
    }
    failures
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let ids = ["d4-delta0-type22", "cayley-cubic", "d4-delta1-type1111", "d5-type11111"];
    let insts = instances(&ids)?;
    let mut jobs = Vec::new();
    for inst in &insts {
        let mut rng = SeededRng::new(inst.report.seed ^ 0x5eed);
        jobs.push((inst, inst.report.charts[0].seed, format!("{} chart", inst.label)));
        for k in 0..5 {
            jobs.push((inst, rng.next_u64(), format!("{} change {k}", inst.label)));
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map(|(inst, chart_seed, label)| {
            match affine_singular_ideal(&inst.surface, &coordinate_change(field(), *chart_seed)) {
                Ok(ideal) => check_basis(&ideal, inst.report.t, label, *chart_seed),
                Err(e) => vec![format!("{label}: {e}")],
            }
        })
        .collect();
    let elapsed = start.elapsed();
    let mut failures = failures;
    ensure(elapsed < Duration::from_secs(600), &mut failures, || format!("took {elapsed:?}"));
    if failures.is_empty() {
        Ok(vec![format!("{} bases, {} ms", jobs.len(), elapsed.as_millis())])
    } else {
        Err(failures.join("; "))
    }
}

fn congruence() -> Outcome {
    let types: [(u32, u8, &[i64]); 5] =
        [(4, 0, &[2, 2]), (4, 1, &[1, 3]), (3, 0, &[1, 1, 1]), (4, 1, &[1, 1, 1, 1]), (5, 0, &[1, 1, 3])];
    let failures: Vec<String> = (0..10u64)
        .into_par_iter()
        .filter_map(|i| {
            let (d, delta, tuple) = types[i as usize % types.len()];
            let label = format!("instance {i}");
            let run = || -> Result<Option<String>, String> {
                let dt = validate_degree_type(d, delta, tuple).map_err(|e| e.to_string())?;
                let m = random_symmetric_matrix(&dt, field(), 700 + i);
                let a = random_block_congruence(&dt, field(), 800 + i);
                let det_a = linalg::determinant(field(), &a);
                let n = congruence_transform(&m, &a).map_err(|e| e.to_string())?;
                let lhs = determinant(&n).map_err(|e| e.to_string())?;
                let rhs = determinant(&m).map_err(|e| e.to_string())?;
                if lhs.f != rhs.f.scale(&(&det_a * &det_a)).map_err(|e| e.to_string())? {
                    return Ok(Some(format!("{label}: det(A^T M A) != det(A)^2 det(M)")));
                }
                let t_m = count_nodes(&rhs, 900 + i, &cfg()).map_err(|e| e.to_string())?.t;
                let t_n = count_nodes(&lhs, 900 + i, &cfg()).map_err(|e| e.to_string())?.t;
                Ok((t_m != t_n).then(|| format!("{label}: t {t_m} vs {t_n}")))
            };
            match run() {
                Ok(r) => r,
                Err(e) => Some(format!("{label}: {e}")),
            }
        })
        .collect();
    if failures.is_empty() {
        Ok(vec!["10 instances".into()])
    } else {
        Err(failures.join("; "))
    }
}

fn substitutes() -> Outcome {
    let all = [
        "d4-delta0-type22",
        "d4-delta1-type13",
        "d4-delta1-type1111",
        "d5-type113",
        "d5-type11111",
        "cayley-cubic",
    ];
    let insts = instances(&all)?;
    let mut failures: Vec<String> = insts
        .par_iter()
        .filter_map(|inst| match rank_drop_check(&inst.matrix, &inst.report, &cfg()) {
            Ok(true) => None,
            Ok(false) => Some(format!("{}: rank drop inconsistent", inst.label)),
            Err(e) => Some(format!("{}: {e}", inst.label)),
        })
        .collect();
    let mut notes = vec![format!("(a) rank drop = singular locus on {} instances", insts.len())];
    let spec = Manifest::load().kummer;
    match kummer_search(Manifest::load().prime, spec.budget, spec.seed, &cfg()) {
        Ok(Some(hit)) => {
            ensure(hit.report.t == KUMMER_NODES, &mut failures, || format!("kummer t = {}", hit.report.t));
            match kummer_audit(&hit.surface, hit.report.seed, &cfg()) {
                Ok(checks) => failures.extend(
                    checks.iter().filter(|c| !c.pass).map(|c| format!("kummer {}: observed {}", c.name, c.observed)),
                ),
                Err(e) => failures.push(format!("kummer audit: {e}")),
            }
            notes.push(format!("(b) t = 16 quartic certified after {} draws", hit.attempts));
        }
        Ok(None) => notes.push(format!("(b) skipped: nothing found in {} draws", spec.budget)),
        Err(e) => failures.push(format!("kummer search: {e}")),
    }
    if failures.is_empty() {
        Ok(notes)
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("enumeration exactness", enumeration),
        ("quartic (2,2): t = 8, chi = 0", quartic),
        ("linear symmetroids: t = 4, 10, 20", linear_symmetroids),
        ("cohomology tables and duality", cohomology),
        ("oracle equivalence", oracle_equivalence),
        ("determinant and congruence identities", congruence),
        ("rank drop and 16-nodal quartic", substitutes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(notes) => println!("criterion {} PASS {name} ({ms} ms): {}", i + 1, notes.join(", ")),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
