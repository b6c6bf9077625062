use std::path::Path;

use holokit::catalog::families::{so_basis, twisted_j, u_m_basis};
use holokit::catalog::generators::{g2_generators, spin7_generators};
use holokit::catalog::recipe::BUILTIN_RECIPES;
use holokit::catalog::symmetric::{ricci, verify_symmetric_pair, SymPair};
use holokit::catalog::{
    build_algebra, default_sweep, expected_dim, identify, FamilyId, FamilySpec, MetricRecipe,
    StandardFrame, UElem,
};
use holokit::curvspace::{
    curvature_space, image_span, invariant_curvature_space, is_berger, CurvatureTensor,
    CurvatureTensorJson,
};
use holokit::exactnum::parse_q;
use holokit::geometry::{
    holonomy, lg_curvature, lg_holonomy, lg_nabla, LieGroupData, LieGroupJson, MetricJson,
    PolynomialMetric,
};
use holokit::liealg::{
    weak_irreducibility_seeded, AlgebraJson, MatrixLieAlgebra, WeakIrreducibility,
};
use holokit::repro::{n0_table_rows, run_criterion, Check, ReproOptions, TITLES};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::expect::Expectation;
use crate::report::{subspace_json, to_value, CliError, CliResult, Inputs, Report};
use crate::{AlgebraCheck, CatalogCmd, Command, FamilyArgs, HSel, HolArgs, IdArgs, USel};

pub fn dispatch(cmd: &Command, output: Option<&Path>) -> CliResult<(Report, String)> {
    let mut inputs = Inputs::default();
    inputs.arg(&format!("{cmd:?}"));
    let (name, results, data, summary) = match cmd {
        Command::Holonomy { metric, hol, id } => cmd_holonomy(&mut inputs, metric, hol, id)?,
        Command::Liegroup { group, id } => cmd_liegroup(&mut inputs, group, id)?,
        Command::Algebra {
            check,
            algebra,
            seed,
        } => cmd_algebra(&mut inputs, *check, algebra, *seed)?,
        Command::Catalog { action } => cmd_catalog(&mut inputs, action, output)?,
        Command::Symmetric {
            pair,
            builtin,
            m,
            n,
            lambda5,
        } => cmd_symmetric(
            &mut inputs,
            pair.as_deref(),
            builtin.as_deref(),
            *m,
            *n,
            lambda5,
        )?,
        Command::Repro { criteria, seed } => cmd_repro(criteria, *seed)?,
    };
    let report = Report {
        command: name.to_string(),
        inputs_digest: inputs.digest(),
        results,
        data,
        timing_ms: None,
    };
    Ok((report, summary))
}

type Outcome = (&'static str, Vec<Check>, Value, String);

fn load_sweep(
    inputs: &mut Inputs,
    id: &IdArgs,
    frame: &StandardFrame,
) -> CliResult<Vec<FamilySpec>> {
    Ok(match &id.sweep {
        Some(p) => inputs.read_json(p)?,
        None => default_sweep(frame),
    })
}

/// Identification and `--expect` for a computed algebra.
fn identify_section(
    inputs: &mut Inputs,
    alg: &MatrixLieAlgebra,
    id: &IdArgs,
    checks: &mut Vec<Check>,
) -> CliResult<(Value, String)> {
    let expectation: Option<Expectation> = id.expect.as_deref().map(str::parse).transpose()?;
    if !id.identify && expectation.is_none() {
        return Ok((Value::Null, String::new()));
    }
    let Some(frame) = StandardFrame::recognize(alg.ambient().eta()) else {
        if let Some(e) = &expectation {
            checks.push(Check::eq(
                format!("expect {}", e.raw),
                e.raw.clone(),
                "no standard frame".into(),
            ));
        }
        return Ok((
            json!({"note": "the basepoint metric is not a standard frame"}),
            "; no standard frame".into(),
        ));
    };
    let sweep = load_sweep(inputs, id, &frame)?;
    let ident = identify(alg, &frame, &sweep)?;
    let mut summary = match ident.family() {
        Some(f) => format!("; identified {}", f.label()),
        None => "; not identified".to_string(),
    };
    if let Some(e) = &expectation {
        let (ok, found) = e.check(alg, &frame, &sweep)?;
        checks.push(Check {
            name: format!("expect {}", e.raw),
            expected: e.raw.clone(),
            computed: found,
            pass: ok,
        });
        summary += if ok {
            "; expectation met"
        } else {
            "; expectation NOT met"
        };
    }
    Ok((to_value(&ident), summary))
}

fn cmd_holonomy(
    inputs: &mut Inputs,
    path: &Path,
    hol: &HolArgs,
    id: &IdArgs,
) -> CliResult<Outcome> {
    if hol.max_order == 0 || hol.window == 0 {
        return Err(CliError::Usage(
            "--max-order and --window must be at least 1".into(),
        ));
    }
    let mj: MetricJson = inputs.read_json(path)?;
    let g = PolynomialMetric::from_json(&mj)?;
    let rep = holonomy(&g, hol.max_order, hol.window)?;
    let mut checks = Vec::new();
    let (identification, id_summary) = identify_section(inputs, &rep.algebra, id, &mut checks)?;
    let data = json!({
        "dim": rep.algebra.dim(),
        "stabilized": rep.stabilized,
        "max_order_used": rep.max_order_used,
        "stable_from_order": rep.stable_from_order,
        "span_dim": rep.span_dim,
        "closure_added": rep.closure_added,
        "algebra": to_value(&rep.algebra.to_json()),
        "generator_log": to_value(&rep.generator_log),
        "identification": identification,
    });
    let summary = format!(
        "holonomy: dim {}, {} (order {}){id_summary}",
        rep.algebra.dim(),
        if rep.stabilized {
            "stabilized"
        } else {
            "NOT stabilized"
        },
        rep.max_order_used
    );
    Ok(("holonomy", checks, data, summary))
}

fn cmd_liegroup(inputs: &mut Inputs, path: &Path, id: &IdArgs) -> CliResult<Outcome> {
    let lj: LieGroupJson = inputs.read_json(path)?;
    let d = LieGroupData::from_json(&lj)?;
    let nabla = lg_nabla(&d)?;
    let curv = lg_curvature(&d, &nabla);
    let alg = lg_holonomy(&d)?;
    let mut checks = Vec::new();
    let (identification, id_summary) = identify_section(inputs, &alg, id, &mut checks)?;
    let data = json!({
        "nabla": to_value(&nabla),
        "curvature": curv.iter().map(|((i, j), r)| json!({"a": i, "b": j, "matrix": to_value(r)})).collect::<Vec<_>>(),
        "dim": alg.dim(),
        "algebra": to_value(&alg.to_json()),
        "identification": identification,
    });
    Ok((
        "liegroup",
        checks,
        data,
        format!("liegroup: holonomy dim {}{id_summary}", alg.dim()),
    ))
}

fn cmd_algebra(
    inputs: &mut Inputs,
    check: AlgebraCheck,
    path: &Path,
    seed: u64,
) -> CliResult<Outcome> {
    let aj: AlgebraJson = inputs.read_json(path)?;
    let alg = MatrixLieAlgebra::from_json(aj)?;
    let (name, data, summary) = match check {
        AlgebraCheck::Berger => {
            let cs = curvature_space(&alg)?;
            let berger = is_berger(&alg)?;
            let data = json!({
                "berger": berger,
                "dim": alg.dim(),
                "curvature_space_dim": cs.dim(),
                "image_dim": image_span(&cs).dim(),
            });
            (
                "algebra berger",
                data,
                format!("berger: {berger} (dim R(g) = {})", cs.dim()),
            )
        }
        AlgebraCheck::Weakirr => {
            let rep = weak_irreducibility_seeded(&alg, seed)?;
            let (verdict, witness, heuristic) = match &rep.verdict {
                WeakIrreducibility::WeaklyIrreducible => {
                    ("weakly-irreducible", Value::Null, Value::Null)
                }
                WeakIrreducibility::ReducibleWitness(w) => {
                    ("reducible", subspace_json(w), Value::Null)
                }
                WeakIrreducibility::Inconclusive(h) => ("inconclusive", Value::Null, to_value(h)),
            };
            let data = json!({
                "verdict": verdict,
                "witness": witness,
                "heuristic": heuristic,
                "certified": rep.certified,
                "seed": rep.seed,
                "self_adjoint_commutant_dim": rep.self_adjoint_commutant_dim,
                "candidates_tried": rep.candidates_tried,
            });
            ("algebra weakirr", data, format!("weakirr: {verdict}"))
        }
        AlgebraCheck::Curvspace | AlgebraCheck::Invspace => {
            let (name, cs) = match check {
                AlgebraCheck::Curvspace => ("algebra curvspace", curvature_space(&alg)?),
                _ => ("algebra invspace", invariant_curvature_space(&alg)?),
            };
            let basis: Vec<CurvatureTensorJson> =
                cs.basis().iter().map(CurvatureTensor::to_json).collect();
            let data = json!({"dim": cs.dim(), "image_dim": image_span(&cs).dim(), "basis": to_value(&basis)});
            (name, data, format!("{name}: dim {}", cs.dim()))
        }
    };
    Ok((name, Vec::new(), data, summary))
}

fn qs(v: &[String]) -> CliResult<Vec<holokit::exactnum::Q>> {
    Ok(v.iter()
        .map(|s| parse_q(s))
        .collect::<holokit::Result<Vec<_>>>()?)
}

fn family_spec(inputs: &mut Inputs, a: &FamilyArgs) -> CliResult<FamilySpec> {
    if let Some(p) = &a.spec {
        return inputs.read_json(p);
    }
    let name = a
        .name
        .as_deref()
        .ok_or_else(|| CliError::Usage("a family id or --spec is required".into()))?;
    let family = FamilyId::parse(name)?;
    let mut s = FamilySpec::new(family, a.n);
    (s.m, s.k, s.l, s.r) = (a.m, a.k, a.l, a.r);
    s.lambda = parse_q(&a.lambda)?;
    s.gamma1 = parse_q(&a.gamma1)?;
    s.gamma2 = parse_q(&a.gamma2)?;
    use FamilyId::*;
    let size = match family {
        HolPsiKL | HolPsiKLR | TwirPsiKL | TwirPsiKLR | TwirZeroPsiK | TwirZeroPsiKZeta => a.k,
        _ => a.m,
    };
    let twir = family.name().starts_with("twir-");
    s.u_basis = match a.u {
        USel::None => Vec::new(),
        USel::J if twir => vec![twisted_j(a.n, size)],
        USel::J => vec![UElem::j_range(size, 1, size)],
        USel::Full => u_m_basis(size),
    };
    s.h_basis = match a.h {
        HSel::None => Vec::new(),
        HSel::So => so_basis(a.n),
        HSel::G2 => g2_generators(),
        HSel::Spin7 => spin7_generators(),
    };
    s.phi = qs(&a.phi)?;
    s.phi_hat = qs(&a.phi_hat)?;
    s.psi = a
        .psi
        .iter()
        .map(|row| qs(&row.split(',').map(str::to_string).collect::<Vec<_>>()))
        .collect::<CliResult<_>>()?;
    s.zeta = qs(&a.zeta)?;
    Ok(s)
}

fn write_artifact(output: Option<&Path>, artifact: Value) -> CliResult<Value> {
    match output {
        Some(p) => {
            let text = serde_json::to_string_pretty(&artifact).expect("artifact serializes") + "\n";
            std::fs::write(p, text).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(json!({"written_to": p.display().to_string()}))
        }
        None => Ok(artifact),
    }
}

fn cmd_catalog(
    inputs: &mut Inputs,
    action: &CatalogCmd,
    output: Option<&Path>,
) -> CliResult<Outcome> {
    match action {
        CatalogCmd::List => {
            let fams: Vec<Value> = FamilyId::all()
                .map(|f| json!({"id": f.name(), "description": f.description()}))
                .collect();
            let presets: Vec<String> = (1..=4).map(|k| format!("n0-row{k}")).collect();
            let data = json!({"families": fams, "metric_presets": presets, "builtin_recipes": BUILTIN_RECIPES});
            let summary = format!("catalog: {} families", fams.len());
            Ok(("catalog list", Vec::new(), data, summary))
        }
        CatalogCmd::BuildAlgebra(a) => {
            let spec = family_spec(inputs, a)?;
            let alg = build_algebra(&spec)?;
            let checks = vec![Check::eq(
                "dimension matches the parameter count",
                expected_dim(&spec),
                alg.dim(),
            )];
            let artifact = write_artifact(output, to_value(&alg.to_json()))?;
            let data = json!({"family": to_value(&spec), "label": spec.label(), "dim": alg.dim(), "algebra": artifact});
            Ok((
                "catalog build-algebra",
                checks,
                data,
                format!("{}: dim {}", spec.label(), alg.dim()),
            ))
        }
        CatalogCmd::BuildMetric(a) => {
            let (label, g) = build_metric(inputs, a)?;
            let artifact = write_artifact(output, to_value(&g.to_json()))?;
            let data = json!({"source": label, "dim": g.dim(), "metric": artifact});
            Ok((
                "catalog build-metric",
                Vec::new(),
                data,
                format!("{label}: metric on R^{}", g.dim()),
            ))
        }
    }
}

fn build_metric(inputs: &mut Inputs, a: &FamilyArgs) -> CliResult<(String, PolynomialMetric)> {
    if let Some(p) = &a.recipe {
        let r: MetricRecipe = inputs.read_json(p)?;
        return Ok((r.family().label(), r.build()?));
    }
    if let Some(name) = a.name.as_deref() {
        let preset = name
            .strip_prefix("n0-row")
            .or_else(|| name.strip_prefix("tabhol0-row"));
        if let Some(k) = preset {
            let rows = n0_table_rows()?;
            let row = k
                .parse::<usize>()
                .ok()
                .and_then(|k| k.checked_sub(1))
                .and_then(|i| rows.into_iter().nth(i))
                .ok_or_else(|| CliError::Usage(format!("no preset '{name}' (rows 1 to 4)")))?;
            return Ok((name.to_string(), row.1));
        }
        if BUILTIN_RECIPES.contains(&name) {
            return Ok((name.to_string(), MetricRecipe::builtin(name)?.build()?));
        }
    }
    let spec = family_spec(inputs, a)?;
    if spec.family.is_lorentz() {
        return Err(CliError::Usage(
            "Lorentzian metrics need the maps P_alpha; pass a MetricRecipe with --recipe".into(),
        ));
    }
    let label = spec.label();
    Ok((label, MetricRecipe::PseudoKaehler { family: spec }.build()?))
}

#[derive(Deserialize)]
struct PairJson {
    algebra: AlgebraJson,
    tensor: CurvatureTensorJson,
}

fn builtin_pair(name: &str) -> CliResult<SymPair> {
    let alias = match name {
        "hol1-pos" => "1a",
        "hol1-neg" => "1b",
        "hol2" => "2",
        "hol3" => "3",
        "hol3-neg" => "4",
        other => other,
    };
    Ok(SymPair::parse(alias)?)
}

fn cmd_symmetric(
    inputs: &mut Inputs,
    pair: Option<&Path>,
    builtin: Option<&str>,
    m: usize,
    n: usize,
    lambda5: &str,
) -> CliResult<Outcome> {
    let (label, frame, hol, r) = match (pair, builtin) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(CliError::Usage(
                "give exactly one of a pair file or --builtin".into(),
            ))
        }
        (None, Some(name)) => {
            let p = builtin_pair(name)?;
            let (f, h, r) = p.build(m, n, &parse_q(lambda5)?)?;
            (format!("pair {}", p.name()), Some(f), h, r)
        }
        (Some(path), None) => {
            let pj: PairJson = inputs.read_json(path)?;
            let hol = MatrixLieAlgebra::from_json(pj.algebra)?;
            let r = CurvatureTensor::from_json(pj.tensor)?;
            let frame = StandardFrame::recognize(hol.ambient().eta());
            (path.display().to_string(), frame, hol, r)
        }
    };
    let rep = verify_symmetric_pair(&hol, &r)?;
    let r0_dim = invariant_curvature_space(&hol)?.dim();
    let ric = match &frame {
        Some(f) if f.is_pseudo_kaehler() => to_value(&ricci(&r, f)?),
        _ => Value::Null,
    };
    let checks = vec![
        Check::holds("R in R0(hol)", rep.in_r0),
        Check::holds("R(wedge^2) = hol", rep.image_is_hol),
    ];
    let summary = format!(
        "symmetric {label}: R0 dim {r0_dim}, in R0 {}, image = hol {}",
        rep.in_r0, rep.image_is_hol
    );
    let data = json!({"pair": label, "report": to_value(&rep), "r0_dim": r0_dim, "ricci": ric});
    Ok(("symmetric", checks, data, summary))
}

fn cmd_repro(criteria: &[usize], seed: u64) -> CliResult<Outcome> {
    let ids: Vec<usize> = if criteria.is_empty() {
        (1..=TITLES.len()).collect()
    } else {
        criteria.to_vec()
    };
    let opts = ReproOptions { seed };
    let mut checks = Vec::new();
    let mut per = Vec::new();
    let mut lines = Vec::new();
    for id in ids {
        let rep = run_criterion(id, &opts)?;
        let verdict = if rep.pass() { "PASS" } else { "FAIL" };
        lines.push(format!("criterion {id:>2} {verdict}  {}", rep.title));
        per.push(
            json!({"id": id, "title": rep.title, "pass": rep.pass(), "checks": rep.checks.len()}),
        );
        checks.extend(rep.checks.into_iter().map(|mut c| {
            c.name = format!("[{id}] {}", c.name);
            c
        }));
    }
    Ok(("repro", checks, json!({"criteria": per}), lines.join("\n")))
}
