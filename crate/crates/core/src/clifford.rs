//! Explicit matrix representations of the complex Clifford algebra `Cl(R^n; C)` on the
//! spinor space `Δ_n = C^{2^m}`, `m = ⌊n/2⌋`.
//!
//! Generators are Kronecker products of fixed 2x2 blocks
//!
//! ```text
//! g1 = diag(i, -i)    g2 = [[0, i], [i, 0]]    T = [[0, -i], [i, 0]]
//! e_{2α-1} = T^{⊗(α-1)} ⊗ g1 ⊗ I^{⊗(m-α)}
//! e_{2α}   = T^{⊗(α-1)} ⊗ g2 ⊗ I^{⊗(m-α)}
//! e_{2m+1} = i · T^{⊗m}                          (n odd)
//! ```
//!
//! In this realisation the vectors `u(ε) = (1, -εi)/√2` are the `T`-eigenvectors, so the
//! antilinear structures defined on the `u(ε₁,…,ε_m)` basis (see [`crate::jmaps`]) have the
//! classical commutation signs with every generator.

use num_traits::{One, Zero};

use crate::linalg::{gq, gq_int, i_pow, kron_all, GMat, Gq};
use crate::rational::{q, Q};
use crate::{Error, Result};

pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorRep {
    n: usize,
    m: usize,
    generators: Vec<GMat>,
    volume: GMat,
}

impl SpinorRep {
    /// Wraps an explicit list of generators; the volume element is their ordered product.
    pub fn from_generators(generators: Vec<GMat>) -> Result<Self> {
        let n = generators.len();
        let first = generators.first().ok_or(Error::DimensionOutOfRange(0, "n >= 1"))?;
        let dim = first.rows();
        if !dim.is_power_of_two() || generators.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::DimensionMismatch(format!("generators must be square of size 2^m, got {dim}")));
        }
        let m = dim.trailing_zeros() as usize;
        if m != n / 2 {
            return Err(Error::DimensionMismatch(format!("{n} generators on a space of dimension {dim}")));
        }
        let volume = generators.iter().fold(GMat::identity(dim), |acc, e| &acc * e);
        Ok(SpinorRep { n, m, generators, volume })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn generators(&self) -> &[GMat] {
        &self.generators
    }

    /// Generator `e_k`, 1-based.
    pub fn generator(&self, k: usize) -> &GMat {
        &self.generators[k - 1]
    }

    pub fn volume(&self) -> &GMat {
        &self.volume
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }
}

fn block_g1() -> GMat {
    GMat::diag(vec![gq_int(0, 1), gq_int(0, -1)])
}

fn block_g2() -> GMat {
    GMat::from_rows(vec![vec![Gq::zero(), gq_int(0, 1)], vec![gq_int(0, 1), Gq::zero()]])
}

fn block_t() -> GMat {
    GMat::from_rows(vec![vec![Gq::zero(), gq_int(0, -1)], vec![gq_int(0, 1), Gq::zero()]])
}

/// Spinor representation of `Cl(R^n; C)` for `1 <= n <= 8`.
pub fn build_spinor_rep(n: usize) -> Result<SpinorRep> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange(n, "1 <= n <= 8"));
    }
    let m = n / 2;
    let (g1, g2, t, id) = (block_g1(), block_g2(), block_t(), GMat::identity(2));
    let mut generators = Vec::with_capacity(n);
    for alpha in 1..=m {
        for g in [&g1, &g2] {
            let mut factors = vec![t.clone(); alpha - 1];
            factors.push(g.clone());
            factors.extend(std::iter::repeat_n(id.clone(), m - alpha));
            generators.push(kron_all(&factors));
        }
    }
    if n % 2 == 1 {
        generators.push(kron_all(&vec![t; m]).scale(&gq_int(0, 1)));
    }
    SpinorRep::from_generators(generators)
}

/// Sign vector `(ε₁,…,ε_m)`, each `ε_α = ±1`, labelling the `u(ε)` basis of `Δ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(Vec<i8>);

impl BasisIndex {
    pub fn new(epsilons: Vec<i8>) -> Result<Self> {
        if epsilons.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Invalid(format!("basis signs must be ±1, got {epsilons:?}")));
        }
        Ok(BasisIndex(epsilons))
    }

    pub fn epsilons(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        BasisIndex(self.0.iter().map(|e| -e).collect())
    }

    /// Position in the canonical order: lexicographic with `+1` before `-1`.
    pub fn position(&self) -> usize {
        self.0.iter().fold(0, |acc, &e| 2 * acc + usize::from(e == -1))
    }

    /// All `2^m` indices in canonical order.
    pub fn enumerate(m: usize) -> Vec<BasisIndex> {
        (0..1usize << m)
            .map(|bits| BasisIndex((0..m).map(|a| if bits >> (m - 1 - a) & 1 == 0 { 1 } else { -1 }).collect()))
            .collect()
    }
}

/// `u(ε₁,…,ε_m)` stored as `scaled / √2^m` with `scaled` over the Gaussian integers.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub scaled: Vec<Gq>,
    pub sqrt2_power: u32,
}

impl BasisVector {
    /// Exact Hermitian inner product `⟨self, other⟩ = Σ self_k · conj(other_k)`.
    pub fn inner(&self, other: &BasisVector) -> Gq {
        let raw = self.scaled.iter().zip(&other.scaled).fold(Gq::zero(), |acc, (a, b)| acc + a * b.conj());
        let denom = Q::from_integer(1i64 << ((self.sqrt2_power + other.sqrt2_power) / 2));
        gq(raw.re / denom, raw.im / denom)
    }

    pub fn to_c64(&self) -> Vec<num_complex::Complex64> {
        let s = std::f64::consts::SQRT_2.powi(self.sqrt2_power as i32);
        self.scaled.iter().map(|z| crate::linalg::gq_to_c64(z) / s).collect()
    }
}

pub fn basis_vector(idx: &BasisIndex) -> BasisVector {
    let mut scaled = vec![Gq::one()];
    for &e in idx.epsilons() {
        let u = [gq_int(1, 0), gq_int(0, -i64::from(e))];
        scaled = scaled.iter().flat_map(|a| u.iter().map(move |b| a * b)).collect();
    }
    BasisVector { scaled, sqrt2_power: idx.len() as u32 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    Positive,
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i64 {
        match self {
            Chirality::Positive => 1,
            Chirality::Negative => -1,
        }
    }
}

/// `P^± = ½(I ± (-i)^p μ)` on `Δ_{2p}`; projects onto `{φ : μφ = ±i^p φ}`.
pub fn chirality_projector(rep: &SpinorRep, chirality: Chirality) -> Result<GMat> {
    if !rep.is_even() {
        return Err(Error::Parity(format!("chirality needs even n, got {}", rep.n())));
    }
    let p = rep.m() as i64;
    let half = gq(q(1, 2), Q::zero());
    let coeff = i_pow(-p) * Q::from_integer(chirality.sign());
    let mu_part = rep.volume().scale(&coeff);
    Ok((&GMat::identity(rep.dim()) + &mu_part).scale(&half))
}

pub fn chirality_project(rep: &SpinorRep, v: &[Gq], chirality: Chirality) -> Result<Vec<Gq>> {
    if v.len() != rep.dim() {
        return Err(Error::DimensionMismatch(format!("spinor of length {} on Δ of dimension {}", v.len(), rep.dim())));
    }
    Ok(chirality_projector(rep, chirality)?.apply(v))
}

/// Which factor of a product carries the even dimension `2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorFactorRoles {
    pub p: usize,
    pub k2: usize,
    pub even_factor_first: bool,
}

/// Clifford action of `Cl(R^{k1+k2})` on `Δ_{k1} ⊗ Δ_{k2}`.
///
/// With the even factor first (`k1 = 2p`): `E_t ↦ e_t ⊗ I` and `F_l ↦ i^p μ1 ⊗ f_l`.
/// With the even factor second (`k2 = 2p`): `E_t ↦ e_t ⊗ i^p μ2` and `F_l ↦ I ⊗ f_l`.
/// Generators are returned in the order `E_1, …, E_{k1}, F_1, …, F_{k2}`.
pub fn tensor_action(roles: TensorFactorRoles, rep1: &SpinorRep, rep2: &SpinorRep) -> Result<SpinorRep> {
    if roles.p == 0 {
        return Err(Error::Parity("even factor must have p >= 1".into()));
    }
    if rep2.n() != roles.k2 {
        return Err(Error::DimensionMismatch(format!("second factor has n = {}, roles say k2 = {}", rep2.n(), roles.k2)));
    }
    let phase = i_pow(roles.p as i64);
    let (id1, id2) = (GMat::identity(rep1.dim()), GMat::identity(rep2.dim()));
    let generators: Vec<GMat> = if roles.even_factor_first {
        if rep1.n() != 2 * roles.p {
            return Err(Error::Parity(format!("first factor must have n = 2p = {}, got {}", 2 * roles.p, rep1.n())));
        }
        let twisted = rep1.volume().scale(&phase);
        rep1.generators()
            .iter()
            .map(|e| e.kron(&id2))
            .chain(rep2.generators().iter().map(|f| twisted.kron(f)))
            .collect()
    } else {
        if rep2.n() != 2 * roles.p {
            return Err(Error::Parity(format!("second factor must have n = 2p = {}, got {}", 2 * roles.p, rep2.n())));
        }
        let twisted = rep2.volume().scale(&phase);
        rep1.generators()
            .iter()
            .map(|e| e.kron(&twisted))
            .chain(rep2.generators().iter().map(|f| id1.kron(f)))
            .collect()
    };
    if generators.len() > 2 * MAX_DIM + 1 {
        return Err(Error::DimensionOutOfRange(generators.len(), "k1 + k2 <= 17"));
    }
    SpinorRep::from_generators(generators)
}

/// Outcome of the Clifford relation suite on one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub n: usize,
    /// `e_i e_j + e_j e_i = -2 δ_ij I` for every pair.
    pub anticommutation: bool,
    pub failed_pairs: Vec<(usize, usize)>,
    pub anti_hermitian: bool,
    pub unitary: bool,
    /// `μ² = (-1)^p I` and `μ e_i = -e_i μ` (even n) or `μ e_i = e_i μ` (odd n).
    pub volume_relations: bool,
    /// Even n only: the `±i^p` eigenspaces of `μ` both have dimension `2^{m-1}`.
    pub balanced_chirality: Option<bool>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.anticommutation
            && self.anti_hermitian
            && self.unitary
            && self.volume_relations
            && self.balanced_chirality.unwrap_or(true)
    }
}

pub fn check_relations(rep: &SpinorRep) -> RelationReport {
    let dim = rep.dim();
    let id = GMat::identity(dim);
    let minus_two = id.scale(&gq_int(-2, 0));
    let zero = GMat::zeros(dim, dim);
    let gens = rep.generators();
    let mut failed_pairs = Vec::new();
    for (i, ei) in gens.iter().enumerate() {
        for (j, ej) in gens.iter().enumerate().skip(i) {
            let expected = if i == j { &minus_two } else { &zero };
            if ei.anticommutator(ej) != *expected {
                failed_pairs.push((i + 1, j + 1));
            }
        }
    }
    let anti_hermitian = gens.iter().all(|e| e.adjoint() == -e);
    let unitary = gens.iter().all(|e| &e.adjoint() * e == id);
    let mu = rep.volume();
    let volume_relations = if rep.is_even() {
        let sign = if rep.m().is_multiple_of(2) { 1 } else { -1 };
        mu.pow(2) == id.scale(&gq_int(sign, 0)) && gens.iter().all(|e| mu.anticommutator(e).is_zero())
    } else {
        gens.iter().all(|e| mu.commutator(e).is_zero())
    };
    let balanced_chirality = rep.is_even().then(|| {
        let half = Q::from_integer(1i64 << rep.m().saturating_sub(1));
        [Chirality::Positive, Chirality::Negative].iter().all(|&c| {
            chirality_projector(rep, c).map(|pr| pr.trace() == gq(half, Q::zero())).unwrap_or(false)
        })
    });
    RelationReport {
        n: rep.n(),
        anticommutation: failed_pairs.is_empty(),
        failed_pairs,
        anti_hermitian,
        unitary,
        volume_relations,
        balanced_chirality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_dimensions() {
        assert!(build_spinor_rep(0).is_err());
        assert!(build_spinor_rep(9).is_err());
    }

    #[test]
    fn n2_generators_square_to_minus_identity_and_anticommute() {
        let rep = build_spinor_rep(2).unwrap();
        let (g1, g2) = (rep.generator(1), rep.generator(2));
        let minus_id = GMat::identity(2).scale(&gq_int(-1, 0));
        assert_eq!(g1.pow(2), minus_id);
        assert_eq!(g2.pow(2), minus_id);
        assert_eq!(g1 * g2, -&(g2 * g1));
        assert_eq!(rep.volume().pow(2), minus_id);
    }

    #[test]
    fn n4_all_sixteen_relations_by_direct_multiplication() {
        let rep = build_spinor_rep(4).unwrap();
        let mut checked = 0;
        for i in 1..=4 {
            for j in 1..=4 {
                let lhs = &(rep.generator(i) * rep.generator(j)) + &(rep.generator(j) * rep.generator(i));
                let rhs = if i == j { GMat::identity(4).scale(&gq_int(-2, 0)) } else { GMat::zeros(4, 4) };
                assert_eq!(lhs, rhs, "({i},{j})");
                checked += 1;
            }
        }
        assert_eq!(checked, 16);
    }

    #[test]
    fn every_dimension_passes_relation_suite() {
        for n in 1..=MAX_DIM {
            let report = check_relations(&build_spinor_rep(n).unwrap());
            assert!(report.all_pass(), "n = {n}: {report:?}");
        }
    }

    #[test]
    fn u_epsilon_matches_definition() {
        let plus = basis_vector(&BasisIndex::new(vec![1]).unwrap());
        assert_eq!(plus.scaled, vec![gq_int(1, 0), gq_int(0, -1)]);
        assert_eq!(plus.sqrt2_power, 1);
        let minus = basis_vector(&BasisIndex::new(vec![-1]).unwrap());
        assert_eq!(minus.scaled, vec![gq_int(1, 0), gq_int(0, 1)]);
        let c = minus.to_c64();
        assert!((c[1].im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn u_basis_is_orthonormal_up_to_m3() {
        for m in 1..=3 {
            let basis = BasisIndex::enumerate(m);
            for a in &basis {
                for b in &basis {
                    let expected = if a == b { Gq::one() } else { Gq::zero() };
                    assert_eq!(basis_vector(a).inner(&basis_vector(b)), expected, "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_plus_first() {
        let order = BasisIndex::enumerate(2);
        let eps: Vec<&[i8]> = order.iter().map(|b| b.epsilons()).collect();
        assert_eq!(eps, vec![&[1, 1][..], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert!(order.iter().enumerate().all(|(k, b)| b.position() == k));
    }

    #[test]
    fn n2_projectors() {
        let rep = build_spinor_rep(2).unwrap();
        let pp = chirality_projector(&rep, Chirality::Positive).unwrap();
        let pm = chirality_projector(&rep, Chirality::Negative).unwrap();
        let half = gq(q(1, 2), Q::zero());
        let i_mu = rep.volume().scale(&gq_int(0, 1));
        assert_eq!(pp, (&GMat::identity(2) - &i_mu).scale(&half));
        assert_eq!(&pp + &pm, GMat::identity(2));
        assert!((&pp * &pm).is_zero());
        assert_eq!(&pp * &pp, pp);
    }

    #[test]
    fn chirality_of_eigenvectors() {
        for n in [2, 4, 6] {
            let rep = build_spinor_rep(n).unwrap();
            let p = rep.m() as i64;
            let pp = chirality_projector(&rep, Chirality::Positive).unwrap();
            // every column of P+ is a positive spinor
            for col in 0..rep.dim() {
                let v: Vec<Gq> = (0..rep.dim()).map(|r| pp[(r, col)]).collect();
                let mu_v = rep.volume().apply(&v);
                let expected: Vec<Gq> = v.iter().map(|x| x * i_pow(p)).collect();
                assert_eq!(mu_v, expected);
                assert_eq!(chirality_project(&rep, &v, Chirality::Positive).unwrap(), v);
                assert!(chirality_project(&rep, &v, Chirality::Negative).unwrap().iter().all(Zero::is_zero));
            }
        }
        let odd = build_spinor_rep(3).unwrap();
        assert!(chirality_projector(&odd, Chirality::Positive).is_err());
    }

    #[test]
    fn tensor_action_p1_k1_matches_formula() {
        let rep1 = build_spinor_rep(2).unwrap();
        let rep2 = build_spinor_rep(1).unwrap();
        let roles = TensorFactorRoles { p: 1, k2: 1, even_factor_first: true };
        let t = tensor_action(roles, &rep1, &rep2).unwrap();
        let f1 = rep2.generator(1)[(0, 0)];
        assert_eq!(*t.generator(3), rep1.volume().scale(&(gq_int(0, 1) * f1)));
        assert!(check_relations(&t).all_pass());
    }

    #[test]
    fn tensor_action_anticommutation_p1_k3() {
        let rep1 = build_spinor_rep(2).unwrap();
        let rep2 = build_spinor_rep(3).unwrap();
        let t = tensor_action(TensorFactorRoles { p: 1, k2: 3, even_factor_first: true }, &rep1, &rep2).unwrap();
        for e in &t.generators()[..2] {
            for f in &t.generators()[2..] {
                assert!(e.anticommutator(f).is_zero());
            }
        }
        assert!(check_relations(&t).all_pass());
    }

    #[test]
    fn tensor_action_second_variant() {
        let rep1 = build_spinor_rep(3).unwrap();
        let rep2 = build_spinor_rep(4).unwrap();
        let t = tensor_action(TensorFactorRoles { p: 2, k2: 4, even_factor_first: false }, &rep1, &rep2).unwrap();
        assert_eq!(t.n(), 7);
        assert!(check_relations(&t).all_pass());
    }

    #[test]
    fn tensor_action_parity_errors() {
        let odd = build_spinor_rep(3).unwrap();
        let even = build_spinor_rep(2).unwrap();
        assert!(tensor_action(TensorFactorRoles { p: 1, k2: 2, even_factor_first: true }, &odd, &even).is_err());
        assert!(tensor_action(TensorFactorRoles { p: 1, k2: 3, even_factor_first: false }, &even, &odd).is_err());
    }
}
