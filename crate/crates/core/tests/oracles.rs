//! Library results against reference computations written independently in test code.

mod common;

use common::{graded_product_eigenvalues, hurwitz_zeta};
use num_traits::Zero;
use spinc_core::clifford::{build_spinor_rep, chirality_projector, tensor_action, Chirality, TensorFactorRoles};
use spinc_core::jmaps::{build_j, JKind};
use spinc_core::linalg::{gq_int, GMat};
use spinc_core::models::{circle_factor, flat_torus_factor, index_density, CharClassData, CircleModel, FlatTorusModel};
use spinc_core::oracle::{build_product_dirac, build_torus_dirac, spectrum_of, ConnectionSign, FlatProductModel};
use spinc_core::rational::q;
use spinc_core::spectra::{
    assemble_product_spectrum, eta_partial, eta_zero_lattice, square_spectrum_sum, AlgebraicEigenvalue, FactorSpectralData, Spectrum,
};
use spinc_core::Q;

fn int(k: i64) -> Q {
    Q::from_integer(k)
}

fn ev(x: Q) -> AlgebraicEigenvalue {
    AlgebraicEigenvalue::from_rational(x)
}

#[test]
fn anticommutation_by_direct_multiplication() {
    for n in 1..=8 {
        let rep = build_spinor_rep(n).unwrap();
        let id = GMat::identity(rep.dim());
        let mut checked = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (a, b) = (rep.generator(i), rep.generator(j));
                let sum = &(a * b) + &(b * a);
                let expect = if i == j { id.scale(&gq_int(-2, 0)) } else { GMat::zeros(rep.dim(), rep.dim()) };
                assert_eq!(sum, expect, "n={n} ({i},{j})");
                checked += 1;
            }
        }
        assert_eq!(checked, n * n);
    }
}

#[test]
fn volume_form_and_chirality() {
    for p in 1..=4 {
        let rep = build_spinor_rep(2 * p).unwrap();
        let mu = rep.volume();
        for e in rep.generators() {
            assert!((&(mu * e) + &(e * mu)).is_zero());
        }
        let plus = chirality_projector(&rep, Chirality::Positive).unwrap();
        let minus = chirality_projector(&rep, Chirality::Negative).unwrap();
        assert_eq!(&plus * &plus, plus);
        assert_eq!(&plus + &minus, GMat::identity(rep.dim()));
        // Σ⁺ and Σ⁻ have equal rank: the trace of P⁺ is half the dimension
        assert_eq!(plus.trace(), gq_int((rep.dim() / 2) as i64, 0));
    }
}

#[test]
fn combined_volume_at_one_one() {
    let rep = tensor_action(TensorFactorRoles { p: 1, k2: 3, even_factor_first: true }, &build_spinor_rep(2).unwrap(), &build_spinor_rep(3).unwrap()).unwrap();
    let gens = rep.generators();
    let mu1 = &gens[0] * &gens[1];
    let mu2 = gens[2..].iter().fold(GMat::identity(rep.dim()), |acc, g| &acc * g);
    let total = gens.iter().fold(GMat::identity(rep.dim()), |acc, g| &acc * g);
    assert_eq!(total, &mu1 * &mu2);
    // the product volume of a 5-dimensional Clifford module is a scalar
    assert!(total.scalar_multiple_of(&GMat::identity(rep.dim())).is_some());
}

#[test]
fn j_squares_by_hand() {
    for m in 1..=4 {
        let expect = if (m * (m + 1) / 2) % 2 == 0 { 1 } else { -1 };
        for kind in [JKind::J0, JKind::J1] {
            let j = build_j(kind, m).unwrap();
            let square = &j.matrix * &j.matrix.conj();
            assert_eq!(square, GMat::identity(1 << m).scale(&gq_int(expect, 0)), "{kind:?} m={m}");
        }
    }
}

#[test]
fn square_sum_by_enumeration() {
    let s1 = Spectrum::from_entries(int(2), [(ev(int(0)), 2), (ev(int(1)), 2)]).unwrap();
    let s2 = Spectrum::from_entries(int(2), [(ev(int(0)), 1), (ev(int(1)), 2)]).unwrap();
    let got = square_spectrum_sum(&s1, &s2, int(2)).unwrap();
    // all four (χ, ν) pairs: 0+0 (2·1), 0+1 (2·2), 1+0 (2·1), 1+1 (2·2)
    let expect = Spectrum::from_entries(int(2), [(ev(int(0)), 2), (ev(int(1)), 6), (ev(int(2)), 4)]).unwrap();
    assert_eq!(got, expect);
}

fn assert_matches_dense(assembled: &Spectrum, dense: &[f64], cutoff: f64) {
    let mut expected: Vec<f64> = dense.iter().copied().filter(|x| x.abs() <= cutoff + 1e-9).collect();
    expected.sort_by(f64::total_cmp);
    let got: Vec<f64> = assembled.iter().flat_map(|(l, m)| std::iter::repeat_n(l.value(), m as usize)).collect();
    assert_eq!(got.len(), expected.len(), "{got:?} vs {expected:?}");
    for (g, e) in got.iter().zip(&expected) {
        assert!((g - e).abs() <= 1e-9, "{got:?} vs {expected:?}");
    }
}

#[test]
fn small_assembly_against_tensor_matrix() {
    let f1 = FactorSpectralData::even(1, Spectrum::from_entries(int(2), [(ev(int(1)), 1)]).unwrap(), 1, 0).unwrap();
    let f2 = FactorSpectralData::odd(0, Spectrum::from_entries(int(2), [(ev(int(-1)), 1), (ev(int(0)), 1), (ev(int(1)), 1)]).unwrap());
    let assembled = assemble_product_spectrum(&f1, &f2, int(2)).unwrap();
    let dense = graded_product_eigenvalues(&[1.0], 1, 0, 1, &[-1.0, 0.0, 1.0]);
    assert_matches_dense(&assembled, &dense, 2.0);
    let text: Vec<String> = assembled.iter().map(|(l, m)| format!("{l}:{m}")).collect();
    assert_eq!(text, ["-√(2):2", "-1:2", "0:1", "1:2", "√(2):2"]);
}

#[test]
fn assembly_against_tensor_matrix_even_p() {
    // p = 2: harmonic spinors keep the sign of ν
    let f1 = FactorSpectralData::even(2, Spectrum::from_entries(int(3), [(ev(int(1)), 2), (ev(int(2)), 1)]).unwrap(), 2, 1).unwrap();
    let nu = [q(-7, 10), q(3, 10), q(13, 10), q(-17, 10)];
    let f2 = FactorSpectralData::odd(1, Spectrum::from_entries(int(3), nu.iter().map(|&x| (ev(x), 1))).unwrap());
    let assembled = assemble_product_spectrum(&f1, &f2, int(3)).unwrap();
    let nu_f: Vec<f64> = nu.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect();
    let dense = graded_product_eigenvalues(&[1.0, 1.0, 2.0], 2, 1, 2, &nu_f);
    assert_matches_dense(&assembled, &dense, 3.0);
}

#[test]
fn torus_factor_against_two_by_two_blocks() {
    // per-mode 2x2 diagonalisation at a = (0,0), Λ = 1: v ∈ {(±1,0),(0,±1)} and the zero mode
    let model = FlatTorusModel { a1: int(0), a2: int(0) };
    let f = flat_torus_factor(&model, int(1)).unwrap();
    assert_eq!(f.spectrum.iter().map(|(l, m)| (l.to_string(), m)).collect::<Vec<_>>(), [("1".to_string(), 4)]);
    let oracle = spectrum_of(&build_torus_dirac(&model, int(1), ConnectionSign::Plus).unwrap(), int(1)).unwrap();
    assert_eq!(oracle, f.full_spectrum().unwrap());
    // harmonic chirality: on the zero mode, both kernel directions, one in each of Σ^±
    let rep = build_spinor_rep(2).unwrap();
    let plus = chirality_projector(&rep, Chirality::Positive).unwrap();
    assert_eq!(plus.trace(), gq_int(1, 0));
    assert_eq!((f.a1, f.a2), (1, 1));
}

#[test]
fn product_oracle_small_cutoff() {
    let model = FlatProductModel { torus: FlatTorusModel { a1: int(0), a2: int(0) }, circle: CircleModel { a: int(0) }, cutoff: int(1) };
    let oracle = spectrum_of(&build_product_dirac(&model).unwrap(), int(1)).unwrap();
    // zero mode (0,0,0) gives 0 twice; |v| = 1 or |n| = 1 modes give ±1
    assert_eq!(oracle.multiplicity(&AlgebraicEigenvalue::ZERO).unwrap(), 2);
    assert_eq!(oracle.multiplicity(&ev(int(1))).unwrap(), 6);
    assert_eq!(oracle.multiplicity(&ev(int(-1))).unwrap(), 6);
    let f1 = flat_torus_factor(&model.torus, int(1)).unwrap();
    let f2 = circle_factor(&model.circle, int(1)).unwrap();
    assert_eq!(oracle, assemble_product_spectrum(&f1, &f2, int(1)).unwrap());
}

#[test]
fn eta_against_hurwitz() {
    let spec = circle_factor(&CircleModel { a: q(3, 10) }, int(1000)).unwrap().spectrum;
    let reference = hurwitz_zeta(3.0, 0.3) - hurwitz_zeta(3.0, 0.7);
    assert!((eta_partial(&spec, 3.0) - reference).abs() < 1e-6);
    // sanity of the reference itself: ζ(2, 1) = π²/6
    assert!((hurwitz_zeta(2.0, 1.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn eta_zero_from_hurwitz_at_zero() {
    // η(0) = ζ(0, â) - ζ(0, 1 - â) with ζ(0, a) = 1/2 - a
    for (num, den) in [(3, 10), (1, 4), (1, 3), (7, 8)] {
        let a = num as f64 / den as f64;
        let reference = (0.5 - a) - (0.5 - (1.0 - a));
        let got = eta_zero_lattice(q(num, den));
        assert!((*got.numer() as f64 / *got.denom() as f64 - reference).abs() < 1e-15);
    }
    assert!(eta_zero_lattice(int(0)).is_zero());
}

#[test]
fn index_from_expansion() {
    // (e^{c/2} Â)[M] in dim 2 is c/2; in dim 4 it is c²/8 - p₁/24
    for c1 in [-4i64, 0, 2, 4, 6] {
        let got = index_density(&CharClassData { dim: 2, c1: Some(c1), ..Default::default() }).unwrap();
        assert_eq!(got * int(2), int(c1));
    }
    let k3 = index_density(&CharClassData { dim: 4, c1sq: Some(0), p1: Some(-48), ..Default::default() }).unwrap();
    assert_eq!(k3, int(2));
    let cp2 = index_density(&CharClassData { dim: 4, c1sq: Some(9), p1: Some(3), ..Default::default() }).unwrap();
    // CP² with its anticanonical spin^C structure carries one harmonic spinor (Todd genus)
    assert_eq!(cp2, int(1));
}
