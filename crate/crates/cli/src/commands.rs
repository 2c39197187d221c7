use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::{json, Value};
use spinc_core::clifford::{build_spinor_rep, check_relations};
use spinc_core::format::write_factor;
use spinc_core::jmaps::{build_j, j0_j1_commute, verify_properties, JKind};
use spinc_core::models::{index_density, load_factor, save_factor, CharClassData, CircleModel, FlatTorusModel, ModelDescriptor};
use spinc_core::oracle::{
    build_product_dirac, check_lemma33_product, check_proposition, check_proposition_symbol, spectrum_of_detailed, FlatProductModel, PropositionReport,
};
use spinc_core::rational::{display, parse_rational};
use spinc_core::spectra::{assemble_product_spectrum, eta_partial, eta_zero_lattice, symmetry_verdict, FactorSpectralData, Parity, Spectrum, Verdict};
use spinc_core::{Error, Q};

pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub text: String,
    /// Set when a mathematical check failed.
    pub failure: Option<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Snapping { .. } | Error::NonHermitian(_) | Error::UnmatchedModes(_) => 1,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

fn rational(flag: &str, text: &str) -> Result<Q, CliError> {
    parse_rational(text).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn pair(flag: &str, text: &str) -> Result<(Q, Q), CliError> {
    let (a, b) = text.split_once(',').ok_or_else(|| usage(format!("--{flag} expects two comma-separated values, got {text:?}")))?;
    Ok((rational(flag, a)?, rational(flag, b)?))
}

fn sign_str(s: Option<i8>) -> String {
    match s {
        Some(1) => "+1".into(),
        Some(-1) => "-1".into(),
        Some(x) => x.to_string(),
        None => "none".into(),
    }
}

pub fn spectrum_json(spec: &Spectrum) -> Value {
    let entries: Vec<Value> = spec
        .iter()
        .map(|(l, m)| json!({ "value": l.to_string(), "sign": l.sign(), "radicand": display(&l.radicand()), "approx": l.value(), "multiplicity": m }))
        .collect();
    json!({ "cutoff": display(&spec.cutoff()), "entries": entries })
}

pub fn clifford_check(n: usize) -> CmdResult {
    let rep = build_spinor_rep(n)?;
    let m = rep.m();
    let relations = check_relations(&rep);
    let mut text = String::new();
    let mut failures = Vec::new();
    writeln!(text, "Cl({n}) acting on Δ of dimension {} (m = {m})", rep.dim()).unwrap();
    writeln!(
        text,
        "relations: {}  anticommutation {}, anti-Hermitian {}, unitary {}, volume {}",
        if relations.all_pass() { "pass" } else { "FAIL" },
        relations.anticommutation,
        relations.anti_hermitian,
        relations.unitary,
        relations.volume_relations
    )
    .unwrap();
    if !relations.all_pass() {
        failures.push("Clifford relations".to_string());
    }
    let mut jsons = Vec::new();
    for kind in [JKind::J0, JKind::J1] {
        let name = match kind {
            JKind::J0 => "j0",
            JKind::J1 => "j1",
        };
        let report = verify_properties(&rep, &build_j(kind, m)?)?;
        let signs: Vec<String> = report.signs.iter().map(|s| sign_str(*s)).collect();
        let square = report.square.map(|c| display(&c.re));
        writeln!(
            text,
            "{name}: {}  signs e1..e{n} [{}], square {}, norm-preserving {}",
            if report.all_pass() { "pass" } else { "FAIL" },
            signs.join(", "),
            square.clone().unwrap_or_else(|| "not scalar".into()),
            report.norm_preserving
        )
        .unwrap();
        if let Some(w) = &report.warning {
            writeln!(text, "  note: {w}").unwrap();
        }
        if !report.all_pass() {
            failures.push(format!("{name} properties"));
        }
        jsons.push(json!({
            "map": name,
            "pass": report.all_pass(),
            "signs": report.signs,
            "expected_signs": report.expected_signs,
            "square": square,
            "expected_square": report.expected_square,
            "norm_preserving": report.norm_preserving,
            "warning": report.warning,
        }));
    }
    let commute = j0_j1_commute(m)?;
    writeln!(text, "j0 j1 = j1 j0: {}", if commute { "pass" } else { "FAIL" }).unwrap();
    if !commute {
        failures.push("j0 j1 commutation".into());
    }
    Ok(Outcome {
        inputs: json!({ "dim": n }),
        results: json!({
            "m": m,
            "relations": {
                "pass": relations.all_pass(),
                "anticommutation": relations.anticommutation,
                "failed_pairs": relations.failed_pairs,
                "anti_hermitian": relations.anti_hermitian,
                "unitary": relations.unitary,
                "volume": relations.volume_relations,
                "balanced_chirality": relations.balanced_chirality,
            },
            "jmaps": jsons,
            "j0_j1_commute": commute,
        }),
        text,
        failure: (!failures.is_empty()).then(|| format!("failed: {}", failures.join(", "))),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "kind": v.kind.as_str(),
        "index": v.index,
        "witness": v.witness.as_ref().map(|w| json!({ "lambda": w.lambda.to_string(), "b1": w.b1, "b2": w.b2, "defect": w.defect })),
        "cutoff": display(&v.cutoff),
        "explanation": v.explanation,
    })
}

pub fn assemble(f1: &str, f2: &str, cutoff: &str, out: Option<PathBuf>) -> CmdResult {
    let cutoff = rational("cutoff", cutoff)?;
    let (d1, d2) = (ModelDescriptor::parse_shorthand(f1)?, ModelDescriptor::parse_shorthand(f2)?);
    let (fac1, fac2) = (d1.resolve(cutoff)?, d2.resolve(cutoff)?);
    let spectrum = assemble_product_spectrum(&fac1, &fac2, cutoff)?;
    let verdict = symmetry_verdict(&fac1, &fac2)?;
    let symmetric = spectrum.is_symmetric();
    let half = fac1.parity.dimension() / 2 + fac2.parity.dimension() / 2;
    let file_text = write_factor(&FactorSpectralData::odd(half, spectrum.clone()));
    if let Some(path) = &out {
        save_factor(path, &FactorSpectralData::odd(half, spectrum.clone()))?;
    }

    let mut failure = None;
    if verdict.kind.as_str() == "symmetric" && !symmetric {
        failure = Some("verdict says symmetric but the assembled spectrum is not".to_string());
    }
    let oracle = match (&d1, &d2) {
        (ModelDescriptor::FlatTorus(torus), ModelDescriptor::Circle(circle)) => {
            let model = FlatProductModel { torus: *torus, circle: *circle, cutoff };
            let report = spectrum_of_detailed(&build_product_dirac(&model)?, cutoff)?;
            let matches = report.spectrum == spectrum;
            if !matches {
                failure = Some("oracle spectrum differs from the assembled spectrum".into());
            }
            Some(json!({ "match": matches, "max_value_residual": report.max_value_residual }))
        }
        _ => None,
    };

    let mut text = String::new();
    match &out {
        Some(path) => writeln!(text, "spectrum written to {}", path.display()).unwrap(),
        None => text.push_str(&file_text),
    }
    writeln!(text, "symmetric: {symmetric}").unwrap();
    writeln!(text, "verdict: {} (index {})", verdict.kind.as_str(), verdict.index).unwrap();
    writeln!(text, "  {}", verdict.explanation).unwrap();
    if let Some(w) = &verdict.witness {
        writeln!(text, "  witness: λ = {}, b1 = {}, b2 = {}, mult(λ) - mult(-λ) = {}", w.lambda, w.b1, w.b2, w.defect).unwrap();
    }
    if let Some(o) = &oracle {
        writeln!(text, "oracle cross-check: {} (max value residual {:.1e})", if o["match"] == true { "match" } else { "MISMATCH" }, o["max_value_residual"].as_f64().unwrap_or(f64::NAN)).unwrap();
    }
    Ok(Outcome {
        inputs: json!({ "f1": f1, "f2": f2, "cutoff": display(&cutoff), "out": out.map(|p| p.display().to_string()) }),
        results: json!({
            "spectrum": spectrum_json(&spectrum),
            "spectrum_text": file_text,
            "symmetric": symmetric,
            "verdict": verdict_json(&verdict),
            "oracle": oracle,
        }),
        text,
        failure,
    })
}

pub struct EtaArgs {
    pub circle: Option<String>,
    pub spec: Option<PathBuf>,
    pub model: Option<String>,
    pub s: Option<f64>,
    pub zero: bool,
    pub cutoff: String,
}

pub fn eta(args: EtaArgs) -> CmdResult {
    let sources = [args.circle.is_some(), args.spec.is_some(), args.model.is_some()].iter().filter(|&&b| b).count();
    if sources != 1 {
        return Err(usage("give exactly one of --circle, --spec, --model"));
    }
    if args.s.is_none() && !args.zero {
        return Err(usage("nothing to compute: pass --s and/or --zero"));
    }
    let cutoff = rational("cutoff", &args.cutoff)?;
    let descriptor = match (&args.circle, &args.spec, &args.model) {
        (Some(a), _, _) => ModelDescriptor::Circle(CircleModel { a: rational("circle", a)? }),
        (_, Some(path), _) => ModelDescriptor::File(path.clone()),
        (_, _, Some(m)) => ModelDescriptor::parse_shorthand(m)?,
        _ => unreachable!(),
    };
    let lattice = match &descriptor {
        ModelDescriptor::Circle(c) => Some(c.a),
        _ => None,
    };
    if args.zero && lattice.is_none() {
        return Err(usage("--zero needs a circle lattice spectrum"));
    }
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    if let Some(s) = args.s {
        let factor = match &descriptor {
            ModelDescriptor::File(path) => load_factor(path)?,
            d => d.resolve(cutoff)?,
        };
        let spectrum = match factor.parity {
            Parity::Even(_) => factor.full_spectrum()?,
            Parity::Odd(_) => factor.spectrum.clone(),
        };
        let value = eta_partial(&spectrum, s);
        writeln!(text, "eta_partial(s = {s}) = {value:.12e} (cutoff {})", display(&spectrum.cutoff())).unwrap();
        results.insert("eta_partial".into(), json!({ "s": s, "value": value, "cutoff": display(&spectrum.cutoff()) }));
    }
    if args.zero {
        let value = eta_zero_lattice(lattice.unwrap());
        writeln!(text, "eta(0) = {}", display(&value)).unwrap();
        results.insert("eta_zero".into(), json!(display(&value)));
    }
    Ok(Outcome {
        inputs: json!({
            "circle": args.circle,
            "spec": args.spec.map(|p| p.display().to_string()),
            "model": args.model,
            "s": args.s,
            "zero": args.zero,
            "cutoff": display(&cutoff),
        }),
        results: Value::Object(results),
        text,
        failure: None,
    })
}

pub fn index(dim: u32, c1: Option<i64>, c1sq: Option<i64>, p1: Option<i64>, w2_zero: bool) -> CmdResult {
    let data = CharClassData { dim, c1, c1sq, p1, w2_zero };
    let value = index_density(&data)?;
    let integral = value.is_integer();
    let mut text = format!("index = {}\n", display(&value));
    if integral {
        text.push_str("integral: yes\n");
    } else {
        text.push_str("integral: no (these pairings cannot come from a spin^C structure)\n");
    }
    Ok(Outcome {
        inputs: json!({ "dim": dim, "c1": c1, "c1sq": c1sq, "p1": p1, "w2_zero": w2_zero }),
        results: json!({ "index": display(&value), "integral": integral }),
        text,
        failure: (!integral).then(|| format!("index {} is not an integer", display(&value))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Check {
    Spectrum,
    Lemma33,
    Prop1,
    Prop2,
    Prop3,
    Prop4,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Spectrum => "spectrum",
            Check::Lemma33 => "lemma33",
            Check::Prop1 => "prop1",
            Check::Prop2 => "prop2",
            Check::Prop3 => "prop3",
            Check::Prop4 => "prop4",
        }
    }
}

fn proposition_json(r: &PropositionReport) -> Value {
    json!({
        "part": r.part,
        "p": r.p,
        "q": r.q,
        "blocks": r.blocks,
        "pass": r.all_pass(),
        "max_residual": r.max_residual(),
        "residuals": r.checks.iter().map(|c| json!({ "identity": c.name, "max_residual": c.max_residual })).collect::<Vec<_>>(),
        "sign_table": r.sign_table.iter().map(|row| json!({
            "map": row.composite.name(),
            "measured": [row.measured.0, row.measured.1],
            "expected": [row.expected.0, row.expected.1],
        })).collect::<Vec<_>>(),
        "bijection_ok": r.bijection_ok,
    })
}

pub fn oracle(t2: &str, s1: &str, cutoff: &str, checks: &[Check], symbol: Option<&str>) -> CmdResult {
    let (a1, a2) = pair("t2", t2)?;
    let a3 = rational("s1", s1)?;
    let cutoff = rational("cutoff", cutoff)?;
    let symbol_pq = match symbol {
        Some(text) => {
            let (p, q) = text.split_once(',').ok_or_else(|| usage(format!("--symbol expects p,q, got {text:?}")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("--symbol expects integers, got {text:?}")));
            Some((parse(p)?, parse(q)?))
        }
        None => None,
    };
    let model = FlatProductModel { torus: FlatTorusModel { a1, a2 }, circle: CircleModel { a: a3 }, cutoff };
    let mut checks = checks.to_vec();
    if checks.is_empty() {
        checks.push(Check::Spectrum);
    }
    checks.sort();
    checks.dedup();

    let mut text = String::new();
    let mut results = serde_json::Map::new();
    let mut failures = Vec::new();
    for check in checks {
        match check {
            Check::Spectrum => {
                let report = spectrum_of_detailed(&build_product_dirac(&model)?, cutoff)?;
                let f1 = ModelDescriptor::FlatTorus(model.torus).resolve(cutoff)?;
                let f2 = ModelDescriptor::Circle(model.circle).resolve(cutoff)?;
                let assembled = assemble_product_spectrum(&f1, &f2, cutoff)?;
                let matches = report.spectrum == assembled && report.max_value_residual <= 1e-9;
                writeln!(
                    text,
                    "spectrum: {} ({} eigenvalues, max value residual {:.1e}, max snap residual {:.1e})",
                    if matches { "match" } else { "MISMATCH" },
                    report.spectrum.total_multiplicity(),
                    report.max_value_residual,
                    report.max_snap_residual
                )
                .unwrap();
                if !matches {
                    failures.push("spectrum");
                }
                results.insert(
                    "spectrum".into(),
                    json!({
                        "match": matches,
                        "eigenvalues": report.spectrum.total_multiplicity(),
                        "max_value_residual": report.max_value_residual,
                        "max_snap_residual": report.max_snap_residual,
                    }),
                );
            }
            Check::Lemma33 => {
                let report = check_lemma33_product(&model)?;
                writeln!(text, "lemma33: {} (n = {}, m = {}, {} mode pairs, {} by search)", if report.all_pass() { "pass" } else { "FAIL" }, report.n, report.m, report.pairs, report.fallback_pairs).unwrap();
                for e in &report.entries {
                    let name = if e.kind == JKind::J0 { "j0" } else { "j1" };
                    writeln!(text, "  D^-A {name} = ({}) {name} D^A  max residual {:.1e}", sign_str(Some(e.expected_sign)), e.max_residual).unwrap();
                }
                writeln!(text, "  Spec(D^A) = Spec(D^-A): {}; Spec(D^A) = -Spec(D^-A): {}", report.spectra_equal, report.spectra_negated).unwrap();
                if !report.all_pass() {
                    failures.push("lemma33");
                }
                results.insert(
                    "lemma33".into(),
                    json!({
                        "pass": report.all_pass(),
                        "n": report.n,
                        "m": report.m,
                        "pairs": report.pairs,
                        "fallback_pairs": report.fallback_pairs,
                        "entries": report.entries.iter().map(|e| json!({
                            "map": if e.kind == JKind::J0 { "j0" } else { "j1" },
                            "sign": e.expected_sign,
                            "max_residual": e.max_residual,
                        })).collect::<Vec<_>>(),
                        "spectra_equal": report.spectra_equal,
                        "spectra_negated": report.spectra_negated,
                    }),
                );
            }
            part => {
                let n = match part {
                    Check::Prop1 => 1,
                    Check::Prop2 => 2,
                    Check::Prop3 => 3,
                    _ => 4,
                };
                let report = match symbol_pq {
                    Some((p, q)) => check_proposition_symbol(p, q, n)?,
                    None => check_proposition(&model, n)?,
                };
                writeln!(text, "{}: {} (p = {}, q = {}, {} blocks, max residual {:.1e})", check.name(), if report.all_pass() { "pass" } else { "FAIL" }, report.p, report.q, report.blocks, report.max_residual()).unwrap();
                for c in &report.checks {
                    writeln!(text, "  {:<40} {:.1e}", c.name, c.max_residual).unwrap();
                }
                for row in &report.sign_table {
                    writeln!(
                        text,
                        "  {:<4} D+ sign {} (expected {}), D- sign {} (expected {})",
                        row.composite.name(),
                        sign_str(row.measured.0),
                        sign_str(Some(row.expected.0)),
                        sign_str(row.measured.1),
                        sign_str(Some(row.expected.1))
                    )
                    .unwrap();
                }
                if let Some(ok) = report.bijection_ok {
                    writeln!(text, "  mu1 D+ eigenspace bijection: {}", if ok { "pass" } else { "FAIL" }).unwrap();
                }
                if !report.all_pass() {
                    failures.push(check.name());
                }
                results.insert(check.name().into(), proposition_json(&report));
            }
        }
    }
    Ok(Outcome {
        inputs: json!({
            "t2": [display(&a1), display(&a2)],
            "s1": display(&a3),
            "cutoff": display(&cutoff),
            "symbol": symbol_pq.map(|(p, q)| [p, q]),
        }),
        results: Value::Object(results),
        text,
        failure: (!failures.is_empty()).then(|| format!("failed checks: {}", failures.join(", "))),
    })
}
