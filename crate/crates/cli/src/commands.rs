use std::fmt::Write;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use snc_core::complex::{suspend, validate_config, DeltaComplex, SncConfiguration};
use snc_core::document::Document;
use snc_core::fixtures::{self, FixtureParams};
use snc_core::galois::{extension_complex, norm_map, LevelComplex};
use snc_core::homology::{engines, homology_group, reduced_homology_group, Coefficients, ORACLE_SIMPLEX_LIMIT};
use snc_core::random::random_complex;
use snc_core::reciprocity::{
    alpha_map, compute_theta, predict_kernel, sweep_extensions, EdgeLabelCochain, Experiment, KernelReport,
    Pi1Input, Verdict,
};

use crate::render;
use crate::{Command, Failure, Output, EXIT_INVALID};

const APEX_ZERO: &str = "Y0xO";
const APEX_INF: &str = "Y0xinf";

pub(crate) fn dispatch(command: &Command, input: Option<&str>) -> Result<Output, Failure> {
    let text = || input.expect("commands with a config argument receive its text");
    match command {
        Command::Validate { .. } => validate(text()),
        Command::DualComplex { f, .. } => dual_complex(&load_config(text())?, *f),
        Command::Homology {
            degree,
            coeff,
            reduced,
            f,
            ..
        } => homology(&load_config(text())?, *degree, parse_coeff(coeff)?, *reduced, *f),
        Command::Suspend { coeff, .. } => suspension(&load_config(text())?, parse_coeff(coeff)?),
        Command::Extend { f, .. } => extend(&load_config(text())?, *f),
        Command::Norm { degree, f, coeff, .. } => norm(&load_config(text())?, *degree, *f, parse_coeff(coeff)?),
        Command::Theta { ell, .. } => theta(&load_experiment(text())?, *ell),
        Command::Alpha { ell, .. } => alpha(&load_experiment(text())?, *ell),
        Command::Kernel { ell, sweep, f, .. } => kernel(&load_experiment(text())?, *ell, *sweep, *f),
        Command::Example { kind, n, out, cover } => example(kind, *n, out.as_deref(), *cover),
        Command::OracleCheck { random, seed, .. } => oracle_check(input, *random, *seed),
    }
}

fn parse_coeff(s: &str) -> Result<Coefficients, Failure> {
    s.parse::<Coefficients>().map_err(|e| Failure::Usage(e.to_string()))
}

fn load_config(text: &str) -> Result<SncConfiguration, Failure> {
    let cfg = Document::parse(text)?.config();
    validate_config(&cfg).into_result()?;
    Ok(cfg)
}

fn load_experiment(text: &str) -> Result<Experiment, Failure> {
    Ok(Document::parse(text)?.into_experiment()?)
}

fn validate(text: &str) -> Result<Output, Failure> {
    let exp = load_experiment(text)?;
    let complex = LevelComplex::build(&exp.config, 0)?.complex;
    let y0 = exp.pi1.y0.group().normal_form().clone();
    let results = json!({
        "valid": true,
        "name": exp.config.name,
        "counts": complex.counts(),
        "frobenius_order": exp.config.frobenius_order(),
        "pi1_y0": render::group(&y0),
        "component_maps": exp.pi1.component_maps.len(),
        "edge_labels": exp.labels.labels.len(),
    });
    let text = format!(
        "valid: '{}' with simplex counts {:?}, Frobenius order {}, y0 = {}\n",
        exp.config.name,
        complex.counts(),
        exp.config.frobenius_order(),
        y0
    );
    Ok(Output::ok(results, text))
}

fn dual_complex(cfg: &SncConfiguration, f: u64) -> Result<Output, Failure> {
    let level = LevelComplex::build(cfg, f)?;
    let mut results = render::complex(&level.complex);
    results["f"] = json!(f);
    let header = if f == 0 {
        "geometric dual complex\n".to_string()
    } else {
        format!("dual complex over the degree-{f} extension\n")
    };
    Ok(Output::ok(results, header + &render::complex_text(&level.complex)))
}

fn homology_payload(complex: &DeltaComplex, degree: usize, coeff: Coefficients, reduced: bool) -> Result<(Value, String), Failure> {
    let h = if reduced {
        reduced_homology_group(complex, degree, coeff)?
    } else {
        homology_group(complex, degree, coeff)?
    };
    let nf = h.group.normal_form();
    let ids: Vec<&str> = complex.simplices(degree).iter().map(|s| s.id.as_str()).collect();
    let value = json!({
        "degree": degree,
        "coefficients": coeff.to_string(),
        "reduced": reduced,
        "group": render::group(nf),
        "simplices": ids,
        "cycles": render::matrix(&h.cycles),
    });
    let label = if reduced { "reduced H" } else { "H" };
    Ok((value, format!("{label}_{degree}(Γ; {coeff}) = {nf}\n")))
}

fn homology(cfg: &SncConfiguration, degree: usize, coeff: Coefficients, reduced: bool, f: u64) -> Result<Output, Failure> {
    let level = LevelComplex::build(cfg, f)?;
    let (mut value, text) = homology_payload(&level.complex, degree, coeff, reduced)?;
    value["f"] = json!(f);
    Ok(Output::ok(value, text))
}

fn suspension(cfg: &SncConfiguration, coeff: Coefficients) -> Result<Output, Failure> {
    let base = LevelComplex::build(cfg, 0)?.complex;
    let s = suspend(&base, APEX_ZERO, APEX_INF)?;
    let top = s.dimension().unwrap_or(0);
    let mut degrees = Vec::new();
    let mut text = render::complex_text(&s);
    for a in 0..=top {
        let h = homology_group(&s, a, coeff)?;
        let nf = h.group.normal_form().clone();
        let shifted = match a {
            0 => None,
            _ => Some(reduced_homology_group(&base, a - 1, coeff)?.group.normal_form().clone()),
        };
        let _ = write!(text, "H_{a}(SΓ; {coeff}) = {nf}");
        if let Some(r) = &shifted {
            let _ = write!(text, "   reduced H_{}(Γ; {coeff}) = {r}", a - 1);
        }
        text.push('\n');
        degrees.push(json!({
            "degree": a,
            "group": render::group(&nf),
            "reduced_base_below": shifted.as_ref().map(render::group),
        }));
    }
    let results = json!({
        "coefficients": coeff.to_string(),
        "apexes": [APEX_ZERO, APEX_INF],
        "complex": render::complex(&s),
        "homology": degrees,
    });
    Ok(Output::ok(results, text))
}

fn extend(cfg: &SncConfiguration, f: u64) -> Result<Output, Failure> {
    let ext = extension_complex(cfg, f)?;
    let orbits = ext.level.orbit_ids(cfg)?;
    let complex = &ext.level.complex;
    let mut text = format!("dual complex over the degree-{f} extension\n");
    text += &render::complex_text(complex);
    let mut sigma = Vec::new();
    for a in 0..complex.counts().len() {
        let m = ext.sigma.matrix(a);
        let _ = writeln!(text, "  sigma in dimension {a}:");
        text += &render::matrix_text(&m);
        sigma.push(render::matrix(&m));
    }
    let results = json!({
        "f": f,
        "complex": render::complex(complex),
        "orbits": orbits,
        "sigma": sigma,
    });
    Ok(Output::ok(results, text))
}

fn norm(cfg: &SncConfiguration, degree: usize, f: u64, coeff: Coefficients) -> Result<Output, Failure> {
    let n = norm_map(cfg, f, degree, coeff)?;
    let coker = n.map.cokernel();
    let source = n.map.source().normal_form().clone();
    let target = n.map.target().normal_form().clone();
    let image = n.image.normal_form().clone();
    let results = json!({
        "degree": degree,
        "f": f,
        "coefficients": coeff.to_string(),
        "source": render::group(&source),
        "target": render::group(&target),
        "matrix": render::matrix(n.map.matrix()),
        "image": render::group(&image),
        "cokernel": render::group(coker.group.normal_form()),
        "surjective": n.is_surjective(),
    });
    let mut text = format!(
        "norm H_{degree}(Γ_geom; {coeff}) = {source} -> H_{degree}(Γ_{f}; {coeff}) = {target}\n"
    );
    text += &render::matrix_text(n.map.matrix());
    let _ = writeln!(text, "image {image}, cokernel {}", coker.group.normal_form());
    Ok(Output::ok(results, text))
}

fn theta(exp: &Experiment, ell: u64) -> Result<Output, Failure> {
    let t = compute_theta(&exp.config, &exp.pi1, ell)?;
    let local = t.local.group().normal_form().clone();
    let torsion = t.torsion.normal_form().clone();
    let trivial = t.local.fixes_all(&t.torsion.generators);
    let results = json!({
        "ell": ell,
        "theta_integral": render::group(t.full.group().normal_form()),
        "theta": render::group(&local),
        "theta_torsion": render::group(&torsion),
        "frobenius": render::matrix(t.local.frobenius()),
        "frobenius_trivial_on_torsion": trivial,
    });
    let text = format!(
        "Theta = {}\nTheta_{ell} = {local}\ntorsion {torsion}, Frobenius {} on it\n",
        t.full.group().normal_form(),
        if trivial { "trivial" } else { "nontrivial" }
    );
    Ok(Output::ok(results, text))
}

fn alpha(exp: &Experiment, ell: u64) -> Result<Output, Failure> {
    let a = alpha_map(&exp.config, &exp.labels, &exp.pi1, ell)?;
    let image = a.image_type(ell);
    let source = a.map.source().normal_form().clone();
    let target = a.theta.local.group().normal_form().clone();
    let results = json!({
        "ell": ell,
        "h1": render::group(&source),
        "theta": render::group(&target),
        "matrix": render::matrix(a.map.matrix()),
        "image": render::group(&image),
        "surjective": a.surjective,
        "image_in_torsion": a.in_torsion,
        "warnings": a.warnings,
    });
    let mut text = format!("alpha: H1 = {source} -> Theta_{ell} = {target}\n");
    text += &render::matrix_text(a.map.matrix());
    let _ = writeln!(text, "image {image}{}", if a.surjective { ", surjective" } else { "" });
    for w in &a.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    Ok(Output::ok(results, text))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_line(r: &KernelReport) -> String {
    let verdict = match &r.verdict {
        Verdict::Exact { kernel } => format!("exact, G(Y){{{}}} = {kernel}", r.ell),
        Verdict::Bound { bound } => format!("bound, G(Y){{{}}} is a subquotient of {bound}", r.ell),
    };
    let mut s = format!(
        "f={}  H1 = {}  Theta_{} = {}  torsion {}  (i) {}  (ii) {}  alpha image {}  {verdict}\n",
        r.f,
        r.h1,
        r.ell,
        r.theta,
        r.theta_torsion,
        yes(r.assumption_i),
        yes(r.assumption_ii),
        r.alpha_image
    );
    for w in &r.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    s
}

fn kernel(exp: &Experiment, ell: u64, sweep: Option<u64>, f: u64) -> Result<Output, Failure> {
    match sweep {
        Some(f_max) => {
            let s = sweep_extensions(exp, ell, f_max)?;
            let mut text: String = s.reports.iter().map(report_line).collect();
            let trend = serde_json::to_value(s.trend).expect("trend serializes");
            let _ = writeln!(text, "trend: {}", trend.as_str().unwrap_or_default().replace('_', " "));
            Ok(Output::ok(serde_json::to_value(&s).expect("sweeps serialize"), text))
        }
        None => {
            let r = predict_kernel(exp, ell, f)?;
            let text = report_line(&r);
            Ok(Output::ok(serde_json::to_value(&r).expect("reports serialize"), text))
        }
    }
}

fn example(kind: &str, n: Option<u64>, out: Option<&str>, cover: bool) -> Result<Output, Failure> {
    let generator = fixtures::generator(kind).ok_or_else(|| {
        let names: Vec<&str> = fixtures::generators().iter().map(|g| g.name()).collect();
        Failure::Usage(format!("unknown example '{kind}', expected one of: {}", names.join(", ")))
    })?;
    let fixture = generator.generate(&FixtureParams { n })?;
    let document = if cover {
        let config = fixture
            .cover
            .clone()
            .ok_or_else(|| Failure::Usage(format!("example '{kind}' has no cover")))?;
        Document::from_experiment(&Experiment {
            config,
            pi1: Pi1Input::trivial(),
            labels: EdgeLabelCochain::zero(),
        })
    } else {
        Document::from_experiment(&fixture.experiment)
    };
    let json_text = document.to_json() + "\n";
    let text = match out {
        Some(path) => {
            std::fs::write(path, &json_text).map_err(|e| Failure::Invalid(format!("cannot write '{path}': {e}")))?;
            format!("wrote {kind} example to {path}\n")
        }
        None => json_text,
    };
    let mut text = text;
    for note in &fixture.notes {
        if out.is_some() {
            let _ = writeln!(text, "note: {note}");
        }
    }
    let results = json!({
        "kind": kind,
        "n": n,
        "cover": cover,
        "document": serde_json::to_value(&document).expect("documents serialize"),
        "notes": fixture.notes,
    });
    Ok(Output::ok(results, text))
}

fn oracle_check(input: Option<&str>, random: usize, seed: u64) -> Result<Output, Failure> {
    let complexes: Vec<(String, DeltaComplex)> = match input {
        Some(text) => {
            let cfg = load_config(text)?;
            let base = LevelComplex::build(&cfg, 0)?.complex;
            let s = suspend(&base, APEX_ZERO, APEX_INF)?;
            vec![("dual complex".into(), base), ("suspension".into(), s)]
        }
        None => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..random)
                .map(|i| (format!("random #{i}"), random_complex(&mut rng, 8, 2)))
                .collect()
        }
    };
    let mut checks = 0usize;
    let mut mismatches = Vec::new();
    for (name, c) in &complexes {
        if c.total_simplices() > ORACLE_SIMPLEX_LIMIT {
            return Err(Failure::Usage(format!(
                "{name} has {} simplices, over the oracle limit {ORACLE_SIMPLEX_LIMIT}",
                c.total_simplices()
            )));
        }
        for p in [2u64, 3, 5] {
            for a in 0..=c.dimension().unwrap_or(0) + 1 {
                let values = engines()
                    .iter()
                    .map(|e| Ok((e.name(), e.betti(c, a, p)?)))
                    .collect::<Result<Vec<_>, snc_core::Error>>()?;
                checks += 1;
                if values.windows(2).any(|w| w[0].1 != w[1].1) {
                    mismatches.push(json!({ "complex": name, "degree": a, "p": p, "values": values }));
                }
            }
        }
    }
    let engine_names: Vec<&str> = engines().iter().map(|e| e.name()).collect();
    let results = json!({
        "engines": engine_names,
        "complexes": complexes.len(),
        "checks": checks,
        "mismatches": mismatches,
    });
    let text = format!(
        "{checks} checks over {} complexes with engines {}: {} mismatches\n",
        complexes.len(),
        engine_names.join(", "),
        mismatches.len()
    );
    let mut output = Output::ok(results, text);
    if !mismatches.is_empty() {
        output.status = EXIT_INVALID;
    }
    Ok(output)
}
