//! End-to-end acceptance checks, one line of output per criterion.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use snc_cli::{run_command, RunReport};
use snc_core::complex::{suspend, DeltaComplex, SncConfiguration};
use snc_core::galois::{tower_map, LevelComplex};
use snc_core::homology::{
    engine, homology_group, induced_map_between, reduced_homology_group, universal_coefficient_order,
    Coefficients, HomologyResult,
};
use snc_core::linalg::snf;
use snc_core::random::{random_admissible_config, random_complex, random_matrix};

const FAST: Duration = Duration::from_secs(1);
const SUSPENSION_BUDGET: Duration = Duration::from_secs(30);
const UCT_MODULI: [u64; 4] = [2, 3, 4, 6];

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("snc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(std::iter::once("snc").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn cli_json(args: &[&str]) -> Result<RunReport, String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (_, out, err) = cli(&full);
    serde_json::from_str(&out).map_err(|e| format!("bad report for {args:?}: {e}; stderr {err}"))
}

fn example(name: &str, args: &[&str]) -> Result<String, String> {
    let path = scratch(name).to_string_lossy().into_owned();
    let mut full = vec!["example"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let (code, _, err) = cli(&full);
    ensure!(code == 0, "example {args:?} failed: {err}");
    Ok(path)
}

fn group(v: &Value) -> (Vec<i64>, u64) {
    let factors = v["invariant_factors"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_i64).collect())
        .unwrap_or_default();
    (factors, v["free_rank"].as_u64().unwrap_or(u64::MAX))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let path = example("rulings.json", &["rulings"])?;
    for ell in ["2", "3", "5"] {
        let r = cli_json(&["kernel", &path, "--ell", ell, "--sweep", "3"])?;
        ensure!(r.exit_status == 0, "kernel exit {}", r.exit_status);
        let reports = r.results["reports"].as_array().ok_or("no reports")?;
        ensure!(reports.len() == 3, "expected 3 reports");
        for rep in reports {
            let f = &rep["f"];
            ensure!(group(&rep["h1"]) == (vec![], 1), "H1 at f={f} is {}", rep["h1"]);
            ensure!(group(&rep["theta"]) == (vec![], 0), "Theta_{ell} at f={f} is {}", rep["theta"]);
            ensure!(rep["verdict"]["kind"] == "exact", "verdict at f={f}: {}", rep["verdict"]);
            ensure!(group(&rep["verdict"]["kernel"]) == (vec![], 0), "kernel at f={f}: {}", rep["verdict"]);
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < FAST, "took {elapsed:?}");
    Ok(format!("H1 = Z, Theta = 0 (l = 2, 3, 5), kernel 0 for f = 1..3 in {elapsed:?}"))
}

fn fermat_case(n: u64) -> Check {
    let start = Instant::now();
    let ns = n.to_string();
    let ell = ns.as_str();
    let quotient = example(&format!("fermat{n}.json"), &["fermat", "--n", ell])?;
    let cover = example(&format!("fermat{n}-cover.json"), &["fermat", "--n", ell, "--cover"])?;

    let c = cli_json(&["dual-complex", &cover])?;
    let m = 2 * n;
    ensure!(c.results["counts"] == json!([m, m]), "cover counts {}", c.results["counts"]);
    let h0 = cli_json(&["homology", &cover, "--degree", "0"])?;
    let h1 = cli_json(&["homology", &cover, "--degree", "1"])?;
    ensure!(
        group(&h0.results["group"]) == (vec![], 1) && group(&h1.results["group"]) == (vec![], 1),
        "cover is not a cycle"
    );
    let degrees_two = c.results["simplices"][0]
        .as_array()
        .ok_or("no vertices")?
        .iter()
        .all(|v| {
            let id = &v["id"];
            c.results["simplices"][1]
                .as_array()
                .map(|edges| edges.iter().filter(|e| e["vertices"].as_array().is_some_and(|vs| vs.contains(id))).count() == 2)
                .unwrap_or(false)
        });
    ensure!(degrees_two, "cover vertices do not all have degree 2");

    let q = cli_json(&["dual-complex", &quotient])?;
    ensure!(q.results["counts"] == json!([2, 2]), "quotient counts {}", q.results["counts"]);
    let qh = cli_json(&["homology", &quotient, "--degree", "1"])?;
    ensure!(group(&qh.results["group"]) == (vec![], 1), "quotient H1 {}", qh.results["group"]);

    let t = cli_json(&["theta", &quotient, "--ell", ell])?;
    ensure!(group(&t.results["theta"]) == (vec![n as i64], 0), "Theta {}", t.results["theta"]);
    ensure!(t.results["frobenius_trivial_on_torsion"] == true, "nontrivial action");
    let a = cli_json(&["alpha", &quotient, "--ell", ell])?;
    ensure!(a.results["surjective"] == true, "alpha not surjective");

    let k = cli_json(&["kernel", &quotient, "--ell", ell, "--sweep", "4"])?;
    ensure!(k.exit_status == 0, "kernel exit {}", k.exit_status);
    for rep in k.results["reports"].as_array().ok_or("no reports")? {
        ensure!(rep["verdict"]["kind"] == "exact", "verdict {}", rep["verdict"]);
        ensure!(group(&rep["verdict"]["kernel"]) == (vec![n as i64], 0), "kernel {}", rep["verdict"]);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < FAST, "n = {n} took {elapsed:?}");
    Ok(format!("n={n}: {elapsed:?}"))
}

fn criterion_2() -> Check {
    let mut parts = Vec::new();
    for n in [5, 3, 7] {
        parts.push(fermat_case(n)?);
    }
    Ok(format!("2n-cycle cover, 2-vertex quotient, Theta = alpha image = kernel = Z/n for f = 1..4 ({})", parts.join(", ")))
}

fn suspension_complexes() -> Vec<DeltaComplex> {
    let mut rng = StdRng::seed_from_u64(3);
    (0..50).map(|_| random_complex(&mut rng, 6, 2)).collect()
}

fn oracle_complexes() -> Vec<DeltaComplex> {
    let mut rng = StdRng::seed_from_u64(4);
    (0..100).map(|_| random_complex(&mut rng, 8, 2)).collect()
}

fn criterion_3(complexes: &[DeltaComplex]) -> Check {
    let start = Instant::now();
    for (i, c) in complexes.iter().enumerate() {
        let s = suspend(c, "apex0", "apexinf").map_err(|e| e.to_string())?;
        for n in UCT_MODULI {
            let coeff = Coefficients::Modulo(n);
            let top = homology_group(&s, 2, coeff).map_err(|e| e.to_string())?;
            let one = homology_group(c, 1, coeff).map_err(|e| e.to_string())?;
            ensure!(
                top.group.normal_form() == one.group.normal_form(),
                "complex {i}, n={n}: H2(S) = {} but H1 = {}",
                top.group.normal_form(),
                one.group.normal_form()
            );
        }
        for a in 0..=1 {
            let up = homology_group(&s, a + 1, Coefficients::Integers).map_err(|e| e.to_string())?;
            let down = reduced_homology_group(c, a, Coefficients::Integers).map_err(|e| e.to_string())?;
            ensure!(
                up.group.normal_form() == down.group.normal_form(),
                "complex {i}: H{}(S) = {} but reduced H{a} = {}",
                a + 1,
                up.group.normal_form(),
                down.group.normal_form()
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < SUSPENSION_BUDGET, "took {elapsed:?}");
    Ok(format!("{} complexes, n in {UCT_MODULI:?}, in {elapsed:?}", complexes.len()))
}

fn criterion_4(complexes: &[DeltaComplex]) -> Check {
    let gauss = engine("gauss").ok_or("no gauss engine")?;
    let pipelines = [engine("smith-modp").ok_or("no smith-modp")?, engine("smith-uct").ok_or("no smith-uct")?];
    let mut checks = 0;
    for (i, c) in complexes.iter().enumerate() {
        for p in [2, 3, 5] {
            for a in 0..=c.dimension().unwrap_or(0) + 1 {
                let expected = gauss.betti(c, a, p).map_err(|e| e.to_string())?;
                for e in &pipelines {
                    let got = e.betti(c, a, p).map_err(|e| e.to_string())?;
                    ensure!(got == expected, "complex {i}, p={p}, degree {a}: {} says {got}, oracle {expected}", e.name());
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{} complexes, {checks} comparisons, 0 mismatches", complexes.len()))
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for k in 0..200 {
        let (r, c) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let a = random_matrix(&mut rng, r, c, 9);
        let s = snf(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.d, "matrix {k}: UAV != D");
        ensure!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one(), "matrix {k}: transform not unimodular");
        let diag = s.nonzero_diagonal();
        ensure!(diag.iter().all(|d| d.is_positive()), "matrix {k}: nonpositive pivot");
        ensure!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), "matrix {k}: divisibility fails");
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || s.d[(i, j)].is_zero(), "matrix {k}: D not diagonal");
            }
        }
    }
    Ok("200 matrices up to 8x8, entries in [-9, 9]".into())
}

fn homology_at(cfg: &SncConfiguration, f: u64, a: usize) -> Result<HomologyResult, String> {
    let level = LevelComplex::build(cfg, f).map_err(|e| e.to_string())?;
    homology_group(&level.complex, a, Coefficients::Integers).map_err(|e| e.to_string())
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let mut towers = 0;
    for k in 0..20 {
        let e = [2u64, 3, 4, 6][k % 4];
        let cfg = random_admissible_config(&mut rng, e);
        // Degrees up to 2e, plus the geometric level 0 as the top of every tower.
        let levels: Vec<u64> = (0..=2 * e).collect();
        for &fp in &levels {
            for &f in &levels[1..] {
                // Level 0 lies over every finite level.
                if fp != 0 && fp % f != 0 {
                    continue;
                }
                let direct = tower_map(&cfg, fp, 1).map_err(|e| e.to_string())?;
                let upper = tower_map(&cfg, fp, f).map_err(|e| e.to_string())?;
                let lower = tower_map(&cfg, f, 1).map_err(|e| e.to_string())?;
                let composite = upper.then(&lower).map_err(|e| e.to_string())?;
                for a in 0..=1 {
                    ensure!(
                        direct.matrix(a) == composite.matrix(a),
                        "config {k} (e={e}), tower {fp} -> {f} -> 1: chains differ in dimension {a}"
                    );
                    let top = homology_at(&cfg, fp, a)?;
                    let mid = homology_at(&cfg, f, a)?;
                    let base = homology_at(&cfg, 1, a)?;
                    let d = induced_map_between(&direct, &top, &base).map_err(|e| e.to_string())?;
                    let u = induced_map_between(&upper, &top, &mid).map_err(|e| e.to_string())?;
                    let l = induced_map_between(&lower, &mid, &base).map_err(|e| e.to_string())?;
                    let c = u.then(&l).map_err(|e| e.to_string())?;
                    ensure!(d.agrees_with(&c), "config {k} (e={e}), tower {fp} -> {f} -> 1: H{a} maps differ");
                }
                towers += 1;
            }
        }
    }
    Ok(format!("20 actions, e in {{2, 3, 4, 6}}, {towers} towers checked on chains, H0, H1"))
}

fn criterion_7(suspension: &[DeltaComplex], oracle: &[DeltaComplex]) -> Check {
    let mut checked = 0;
    let mut all: Vec<DeltaComplex> = Vec::new();
    for c in suspension {
        all.push(c.clone());
        all.push(suspend(c, "apex0", "apexinf").map_err(|e| e.to_string())?);
    }
    all.extend(oracle.iter().cloned());
    for (i, c) in all.iter().enumerate() {
        let top = c.dimension().unwrap_or(0);
        let integral: Vec<HomologyResult> = (0..=top)
            .map(|a| homology_group(c, a, Coefficients::Integers).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        for n in UCT_MODULI {
            for a in 0..=top {
                let below = a.checked_sub(1).map(|b| integral[b].group.normal_form());
                let expected = universal_coefficient_order(integral[a].group.normal_form(), below, n);
                let got = homology_group(c, a, Coefficients::Modulo(n))
                    .map_err(|e| e.to_string())?
                    .group
                    .order()
                    .unwrap_or_else(BigInt::zero);
                ensure!(got == expected, "complex {i}, n={n}, degree {a}: |H| = {got}, universal coefficients give {expected}");
                checked += 1;
            }
        }
    }
    Ok(format!("{} complexes, {checked} identities", all.len()))
}

fn write_doc(name: &str, doc: &Value) -> String {
    let path = scratch(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn rejected(name: &str, doc: Value, needles: &[&str]) -> Result<(), String> {
    let path = write_doc(name, &doc);
    let (code, _, err) = cli(&["validate", &path]);
    ensure!(code == 1, "{name}: exit status {code}, stderr {err}");
    for needle in needles {
        ensure!(err.contains(needle), "{name}: '{needle}' missing from '{}'", err.trim());
    }
    Ok(())
}

fn criterion_8() -> Check {
    rejected(
        "collapse.json",
        json!({
            "name": "collapse",
            "components": [{"id": "A"}, {"id": "B"}],
            "strata": {"2": [{"id": "p", "on": ["A", "B"]}]},
            "frobenius": {"order": 2, "components": {"A": "B", "B": "A"}}
        }),
        &["not SNC after extension", "'p'"],
    )?;
    rejected(
        "cocycle.json",
        json!({
            "name": "triangle",
            "components": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
            "strata": {
                "2": [
                    {"id": "ab", "on": ["a", "b"]},
                    {"id": "bc", "on": ["b", "c"]},
                    {"id": "ac", "on": ["a", "c"]}
                ],
                "3": [{"id": "t", "on": ["a", "b", "c"]}]
            },
            "pi1_y0": {"generators": 1, "relations": [[4]]},
            "edge_labels": {"ab": [1]}
        }),
        &["labels do not descend to H1", "'t'"],
    )?;
    rejected(
        "equivariance.json",
        json!({
            "name": "swap",
            "components": [
                {"id": "A", "point_degrees": [1]},
                {"id": "B1", "point_degrees": [2]},
                {"id": "B2", "point_degrees": [2]}
            ],
            "strata": {"2": [
                {"id": "p1", "on": ["A", "B1"]},
                {"id": "p2", "on": ["A", "B2"]}
            ]},
            "frobenius": {
                "order": 2,
                "components": {"B1": "B2", "B2": "B1"},
                "strata": {"2": {"p1": "p2", "p2": "p1"}}
            },
            "pi1_y0": {"generators": 1, "relations": [[3]], "frobenius": [[2]]},
            "edge_labels": {"p1": [1], "p2": [1]}
        }),
        &["Frobenius", "'p1'"],
    )?;
    Ok("orbit collapse, cocycle violation and non-equivariant labels each exit 1 naming the object".into())
}

fn main() {
    let suspension = suspension_complexes();
    let oracle = oracle_complexes();
    let results: Vec<(u32, &str, Check)> = vec![
        (1, "rulings example end to end", criterion_1()),
        (2, "Fermat example end to end", criterion_2()),
        (3, "suspension isomorphism", criterion_3(&suspension)),
        (4, "oracle equivalence", criterion_4(&oracle)),
        (5, "Smith normal form contract", criterion_5()),
        (6, "norm-map tower functoriality", criterion_6()),
        (7, "universal coefficients", criterion_7(&suspension, &oracle)),
        (8, "validation negatives", criterion_8()),
    ];
    let mut failed = 0;
    for (k, title, result) in &results {
        match result {
            Ok(detail) => println!("criterion {k} PASS {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k} FAIL {title}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", results.len());
}
