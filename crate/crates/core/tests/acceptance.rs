//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::hurwitz_zeta;
use spinc_core::clifford::{build_spinor_rep, check_relations, tensor_action, TensorFactorRoles};
use spinc_core::jmaps::{build_composite, build_j, j0_j1_commute, verify_properties, CompositeJKind, CompositeKind, JKind};
use spinc_core::models::{circle_factor, flat_torus_factor, index_density, CharClassData, CircleModel, FlatTorusModel};
use spinc_core::oracle::{
    build_product_dirac, check_lemma33_product, check_proposition, check_proposition_symbol, spectrum_of_detailed, FlatProductModel, RESIDUAL_TOL,
};
use spinc_core::rational::q;
use spinc_core::spectra::{
    assemble_product_spectrum, eta_partial, eta_zero_lattice, square_spectrum_sum, symmetry_verdict, AlgebraicEigenvalue, FactorSpectralData, Spectrum,
    VerdictKind,
};
use spinc_core::{Result, Q};

fn int(k: i64) -> Q {
    Q::from_integer(k)
}

/// Factor pairs and their assembled spectra, collected for criteria 4 and 8.
type Assembled = (FactorSpectralData, FactorSpectralData, Q, Spectrum);

struct Outcome {
    pass: bool,
    detail: String,
}

fn clifford_suite() -> Result<Outcome> {
    let mut failures = Vec::new();
    for n in 2..=8 {
        let rep = build_spinor_rep(n)?;
        if !check_relations(&rep).all_pass() {
            failures.push(format!("relations n={n}"));
        }
        let m = n / 2;
        for kind in [JKind::J0, JKind::J1] {
            if !verify_properties(&rep, &build_j(kind, m)?)?.all_pass() {
                failures.push(format!("{kind:?} n={n}"));
            }
        }
        if !j0_j1_commute(m)? {
            failures.push(format!("j0j1 m={m}"));
        }
    }
    Ok(Outcome { pass: failures.is_empty(), detail: if failures.is_empty() { "n=2..8 exact".into() } else { failures.join(", ") } })
}

fn oracle_equivalence(store: &mut Vec<Assembled>) -> Result<Outcome> {
    let params = [(int(0), int(0), int(0)), (int(0), int(0), q(3, 10)), (q(1, 2), int(0), q(1, 4)), (q(1, 3), q(2, 5), q(3, 10))];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for &(a1, a2, a3) in &params {
        for cutoff in [int(2), int(4), int(6)] {
            let model = FlatProductModel { torus: FlatTorusModel { a1, a2 }, circle: CircleModel { a: a3 }, cutoff };
            let oracle = spectrum_of_detailed(&build_product_dirac(&model)?, cutoff)?;
            let f1 = flat_torus_factor(&model.torus, cutoff)?;
            let f2 = circle_factor(&model.circle, cutoff)?;
            let assembled = assemble_product_spectrum(&f1, &f2, cutoff)?;
            worst = worst.max(oracle.max_value_residual);
            if oracle.spectrum != assembled || oracle.max_value_residual > 1e-9 {
                failures.push(format!("({a1},{a2},{a3}) Λ={cutoff}"));
            }
            store.push((f1, f2, cutoff, assembled));
        }
    }
    let detail = if failures.is_empty() { format!("12 cases, multiplicities exact, max value residual {worst:.1e}") } else { failures.join(", ") };
    Ok(Outcome { pass: failures.is_empty(), detail })
}

fn verdict_matrix(store: &mut Vec<Assembled>) -> Result<Outcome> {
    let cutoff = int(3);
    let base = flat_torus_factor(&FlatTorusModel { a1: int(0), a2: int(0) }, cutoff)?.spectrum;
    let odd = [(q(3, 10), false), (q(1, 2), true), (int(0), true)];
    let mut cells = Vec::new();
    let mut pass = true;
    for (a1, a2) in [(1u64, 1u64), (2, 0), (0, 3)] {
        let f1 = FactorSpectralData::even(1, base.clone(), a1, a2)?;
        for &(a, odd_symmetric) in &odd {
            let f2 = circle_factor(&CircleModel { a }, cutoff)?;
            let assembled = assemble_product_spectrum(&f1, &f2, cutoff)?;
            let expect = a1 == a2 || odd_symmetric;
            let verdict = symmetry_verdict(&f1, &f2)?;
            let verdict_ok = verdict.kind == if expect { VerdictKind::Symmetric } else { VerdictKind::Asymmetric };
            let ok = assembled.is_symmetric() == expect && verdict_ok;
            pass &= ok;
            cells.push(if ok { if expect { "S" } else { "A" } } else { "x" });
            store.push((f1.clone(), f2, cutoff, assembled));
        }
    }
    let rows: Vec<String> = cells.chunks(3).map(|r| r.concat()).collect();
    Ok(Outcome { pass, detail: format!("rows (1,1),(2,0),(0,3) x circle 0.3,0.5,0: {}", rows.join("/")) })
}

fn mirror_defect(store: &[Assembled]) -> Result<Outcome> {
    let mut checked = 0usize;
    let mut pass = true;
    for (f1, f2, _, assembled) in store {
        let p = f1.parity.dimension() / 2;
        let index = f1.index();
        for (lambda, mult) in assembled.iter().filter(|(l, _)| !l.is_zero()) {
            let flipped = if p % 2 == 0 { *lambda } else { -*lambda };
            let m2 = |x: AlgebraicEigenvalue| f2.spectrum.multiplicity(&x).map(|m| m as i64);
            let lhs = mult as i64 - assembled.multiplicity(&-*lambda)? as i64;
            let rhs = index * (m2(flipped)? - m2(-flipped)?);
            pass &= lhs == rhs;
            checked += 1;
        }
    }
    Ok(Outcome { pass, detail: format!("{checked} nonzero eigenvalues over {} spectra", store.len()) })
}

fn eta() -> Result<Outcome> {
    let closed = eta_zero_lattice(q(3, 10)) == q(2, 5) && eta_zero_lattice(q(1, 2)) == int(0);
    let spec = circle_factor(&CircleModel { a: q(3, 10) }, int(10_000))?.spectrum;
    let partial = eta_partial(&spec, 3.0);
    let reference = hurwitz_zeta(3.0, 0.3) - hurwitz_zeta(3.0, 0.7);
    let err = (partial - reference).abs();
    Ok(Outcome { pass: closed && err < 1e-6, detail: format!("η(0)=2/5 and 0 exact: {closed}; |η(3) - Hurwitz| = {err:.1e}") })
}

fn index() -> Result<Outcome> {
    let cases = [
        (CharClassData { dim: 2, c1: Some(0), ..Default::default() }, int(0)),
        (CharClassData { dim: 2, c1: Some(4), ..Default::default() }, int(2)),
        (CharClassData { dim: 4, c1sq: Some(0), p1: Some(-48), ..Default::default() }, int(2)),
    ];
    let mut got = Vec::new();
    let mut pass = true;
    for (data, expect) in cases {
        let value = index_density(&data)?;
        pass &= value == expect;
        got.push(value.to_string());
    }
    Ok(Outcome { pass, detail: format!("values {}", got.join(", ")) })
}

fn identities_and_signs() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut pass = true;
    let params = [(int(0), int(0), int(0)), (int(0), int(0), q(3, 10)), (q(1, 2), int(0), q(1, 4)), (q(1, 3), q(2, 5), q(3, 10))];
    for (a1, a2, a3) in params {
        let model = FlatProductModel { torus: FlatTorusModel { a1, a2 }, circle: CircleModel { a: a3 }, cutoff: int(5) };
        let prop = check_proposition(&model, 1)?;
        let lemma = check_lemma33_product(&model)?;
        worst = worst.max(prop.max_residual()).max(lemma.max_residual());
        pass &= prop.all_pass() && lemma.all_pass();
    }
    let mut table = Vec::new();
    for (p, qq) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let rep = tensor_action(TensorFactorRoles { p, k2: 2 * qq + 1, even_factor_first: true }, &build_spinor_rep(2 * p)?, &build_spinor_rep(2 * qq + 1)?)?;
        for kind in CompositeKind::ALL {
            let spec = CompositeJKind { kind, p, q: qq };
            if !kind.is_well_defined(p, qq) {
                pass &= build_composite(spec).is_err();
                continue;
            }
            let ok = verify_properties(&rep, &build_composite(spec)?)?.all_pass();
            pass &= ok;
            table.push(ok);
        }
        for part in 2..=4u8 {
            if let Ok(report) = check_proposition_symbol(p, qq, part) {
                pass &= report.all_pass();
                worst = worst.max(report.max_residual());
            }
        }
    }
    pass &= worst <= RESIDUAL_TOL;
    Ok(Outcome { pass, detail: format!("max residual {worst:.1e} at Λ=5; {} sign tables exact", table.iter().filter(|&&b| b).count()) })
}

fn squares_shadow(store: &[Assembled]) -> Result<Outcome> {
    let mut pass = true;
    for (f1, f2, cutoff, assembled) in store {
        let sum = square_spectrum_sum(&f1.full_spectrum()?.squared(), &f2.spectrum.squared(), cutoff * cutoff)?;
        pass &= assembled.squared() == sum;
    }
    Ok(Outcome { pass, detail: format!("{} assembled spectra", store.len()) })
}

fn report(number: u32, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(o) => {
            let in_time = limit.is_none_or(|l| elapsed < l);
            (o.pass && in_time, if in_time { o.detail } else { format!("{} (over time limit)", o.detail) })
        }
        Err(e) => (false, format!("error: {e}")),
    };
    println!("criterion {number} [{}] {name}: {detail} ({:.2}s)", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    pass
}

fn main() {
    let mut store = Vec::new();
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        report(1, "clifford and j-structure suite", secs(5), clifford_suite),
        report(2, "oracle-assembly equivalence", secs(30), || oracle_equivalence(&mut store)),
        report(3, "symmetry verdict matrix", None, || verdict_matrix(&mut store)),
        report(4, "mirror-defect formula", None, || mirror_defect(&store)),
        report(5, "eta values", secs(5), eta),
        report(6, "index values", None, index),
        report(7, "operator identities and sign tables", None, identities_and_signs),
        report(8, "squares-sum shadow", None, || squares_shadow(&store)),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
