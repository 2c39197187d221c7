//! Exact spectra, product assembly, the symmetry verdict and eta sums.
//!
//! Eigenvalues are kept as `sign·√r` with `r` rational. The product assembly only ever adds
//! radicands (`√(μ² + ν²)`) or passes odd-factor values through, so coincidences between
//! branches are detected exactly and multiplicities never depend on float ties.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Roots;
use num_traits::{Signed, Zero};

use crate::rational::{display, frac_part, to_f64, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicEigenvalue {
    sign: i8,
    radicand: Q,
}

impl AlgebraicEigenvalue {
    pub const ZERO: AlgebraicEigenvalue = AlgebraicEigenvalue { sign: 0, radicand: Q::ZERO };

    pub fn new(sign: i8, radicand: Q) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Invalid(format!("negative radicand {radicand}")));
        }
        match sign {
            0 if radicand.is_zero() => Ok(Self::ZERO),
            1 | -1 if !radicand.is_zero() => Ok(AlgebraicEigenvalue { sign, radicand }),
            _ => Err(Error::Invalid(format!("sign {sign} inconsistent with radicand {radicand}"))),
        }
    }

    /// The rational number `x` as `sign(x)·√(x²)`.
    pub fn from_rational(x: Q) -> Self {
        let sign = if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
        AlgebraicEigenvalue { sign, radicand: x * x }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> Q {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn abs(&self) -> Self {
        AlgebraicEigenvalue { sign: self.sign.abs(), radicand: self.radicand }
    }

    pub fn value(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.radicand).sqrt()
    }

    /// The value itself when `√radicand` is rational.
    pub fn exact_value(&self) -> Option<Q> {
        let root = |k: i64| {
            let r = k.sqrt();
            (r * r == k).then_some(r)
        };
        let (n, d) = (root(*self.radicand.numer())?, root(*self.radicand.denom())?);
        Some(Q::new(n, d) * Q::from_integer(self.sign.into()))
    }

    /// `|self| <= bound`.
    pub fn within(&self, bound: &Q) -> bool {
        !bound.is_negative() && self.radicand <= bound * bound
    }
}

impl std::ops::Neg for AlgebraicEigenvalue {
    type Output = AlgebraicEigenvalue;
    fn neg(self) -> Self {
        AlgebraicEigenvalue { sign: -self.sign, radicand: self.radicand }
    }
}

impl Ord for AlgebraicEigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sign.cmp(&other.sign).then_with(|| match self.sign {
            1 => self.radicand.cmp(&other.radicand),
            -1 => other.radicand.cmp(&self.radicand),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for AlgebraicEigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlgebraicEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.exact_value() {
            return write!(f, "{}", display(&x));
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}√({})", display(&self.radicand))
    }
}

/// Finite multiset of eigenvalues, exhaustive for `|λ| <= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    entries: BTreeMap<AlgebraicEigenvalue, u64>,
    cutoff: Q,
}

impl Spectrum {
    pub fn new(cutoff: Q) -> Result<Self> {
        if !cutoff.is_positive() {
            return Err(Error::Invalid(format!("cutoff must be positive, got {cutoff}")));
        }
        Ok(Spectrum { entries: BTreeMap::new(), cutoff })
    }

    pub fn from_entries(cutoff: Q, entries: impl IntoIterator<Item = (AlgebraicEigenvalue, u64)>) -> Result<Self> {
        let mut s = Spectrum::new(cutoff)?;
        for (lambda, mult) in entries {
            s.insert(lambda, mult)?;
        }
        Ok(s)
    }

    pub fn cutoff(&self) -> Q {
        self.cutoff
    }

    /// Adds `mult` copies of `lambda`, merging with an existing entry.
    pub fn insert(&mut self, lambda: AlgebraicEigenvalue, mult: u64) -> Result<()> {
        if !lambda.within(&self.cutoff) {
            return Err(Error::BeyondCutoff(format!("{lambda} exceeds cutoff {}", display(&self.cutoff))));
        }
        if mult > 0 {
            *self.entries.entry(lambda).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, lambda: &AlgebraicEigenvalue) -> Result<u64> {
        if !lambda.within(&self.cutoff) {
            return Err(Error::BeyondCutoff(format!("{lambda} exceeds cutoff {}", display(&self.cutoff))));
        }
        Ok(self.entries.get(lambda).copied().unwrap_or(0))
    }

    /// Ascending by value.
    pub fn iter(&self) -> impl Iterator<Item = (&AlgebraicEigenvalue, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Every nonzero `λ` has `mult(-λ) = mult(λ)`; the zero entry is ignored.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// Smallest-|λ| positive-side witness of asymmetry, as `(λ, mult(λ), mult(-λ))`.
    pub fn first_asymmetry(&self) -> Option<(AlgebraicEigenvalue, u64, u64)> {
        let mut by_abs: BTreeMap<Q, (u64, u64)> = BTreeMap::new();
        for (lambda, mult) in self.iter().filter(|(l, _)| !l.is_zero()) {
            let slot = by_abs.entry(lambda.radicand()).or_default();
            if lambda.sign() > 0 {
                slot.0 += mult;
            } else {
                slot.1 += mult;
            }
        }
        by_abs.into_iter().find(|(_, (pos, neg))| pos != neg).map(|(r, (pos, neg))| {
            (AlgebraicEigenvalue { sign: 1, radicand: r }, pos, neg)
        })
    }

    /// Restriction to `|λ| <= bound`, which must not exceed the current cutoff.
    pub fn truncate(&self, bound: Q) -> Result<Spectrum> {
        if bound > self.cutoff {
            return Err(Error::InsufficientCutoff(format!("cannot extend cutoff {} to {}", display(&self.cutoff), display(&bound))));
        }
        Spectrum::from_entries(bound, self.iter().filter(|(l, _)| l.within(&bound)).map(|(l, m)| (*l, m)))
    }

    /// Spectrum of the squared operator: `λ ↦ λ²`, with cutoff `Λ²`.
    pub fn squared(&self) -> Spectrum {
        let mut entries: BTreeMap<AlgebraicEigenvalue, u64> = BTreeMap::new();
        for (lambda, mult) in self.iter() {
            *entries.entry(AlgebraicEigenvalue::from_rational(lambda.radicand())).or_insert(0) += mult;
        }
        Spectrum { entries, cutoff: self.cutoff * self.cutoff }
    }

    /// `λ ↦ -λ`.
    pub fn negated(&self) -> Spectrum {
        Spectrum { entries: self.entries.iter().map(|(k, &v)| (-*k, v)).collect(), cutoff: self.cutoff }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Dimension `2p`.
    Even(usize),
    /// Dimension `2q + 1`.
    Odd(usize),
}

impl Parity {
    pub fn dimension(self) -> usize {
        match self {
            Parity::Even(p) => 2 * p,
            Parity::Odd(q) => 2 * q + 1,
        }
    }
}

/// One factor's spectral summary.
///
/// Even factors store only the positive part of the spectrum (the rest is implied by
/// symmetry) plus the chirality split `a1 = dim Γ₀⁺`, `a2 = dim Γ₀⁻` of the kernel.
/// Odd factors store the full spectrum, zero included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpectralData {
    pub parity: Parity,
    pub spectrum: Spectrum,
    pub a1: u64,
    pub a2: u64,
    /// Closed-form knowledge of whether the *untruncated* spectrum is symmetric.
    pub known_symmetric: Option<bool>,
}

impl FactorSpectralData {
    pub fn even(p: usize, spectrum: Spectrum, a1: u64, a2: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::Parity("even factor needs p >= 1".into()));
        }
        if let Some((bad, _)) = spectrum.iter().find(|(l, _)| l.sign() <= 0) {
            return Err(Error::Invalid(format!("even factor stores positive eigenvalues only, found {bad}")));
        }
        Ok(FactorSpectralData { parity: Parity::Even(p), spectrum, a1, a2, known_symmetric: Some(true) })
    }

    pub fn odd(q: usize, spectrum: Spectrum) -> Self {
        FactorSpectralData { parity: Parity::Odd(q), spectrum, a1: 0, a2: 0, known_symmetric: None }
    }

    pub fn with_known_symmetry(mut self, symmetric: Option<bool>) -> Self {
        self.known_symmetric = symmetric;
        self
    }

    pub fn cutoff(&self) -> Q {
        self.spectrum.cutoff()
    }

    /// `a1 - a2`, the index of the positive-chirality operator.
    pub fn index(&self) -> i64 {
        self.a1 as i64 - self.a2 as i64
    }

    /// Full spectrum including mirrored negatives and the kernel for even factors.
    pub fn full_spectrum(&self) -> Result<Spectrum> {
        match self.parity {
            Parity::Odd(_) => Ok(self.spectrum.clone()),
            Parity::Even(_) => {
                let mut full = self.spectrum.clone();
                for (lambda, mult) in self.spectrum.iter() {
                    full.insert(-*lambda, mult)?;
                }
                full.insert(AlgebraicEigenvalue::ZERO, self.a1 + self.a2)?;
                Ok(full)
            }
        }
    }
}

/// `{χ + ν ↦ Σ m₁(χ) m₂(ν)}` over pairs with `χ + ν <= bound`, for spectra of squared
/// operators. `bound` is a bound on the squared values (i.e. `Λ²`).
pub fn square_spectrum_sum(s1: &Spectrum, s2: &Spectrum, bound: Q) -> Result<Spectrum> {
    for (name, s) in [("first", s1), ("second", s2)] {
        if s.cutoff() < bound {
            return Err(Error::InsufficientCutoff(format!("{name} squared spectrum known to {}, need {}", display(&s.cutoff()), display(&bound))));
        }
    }
    let values = |s: &Spectrum| -> Result<Vec<(Q, u64)>> {
        s.iter()
            .map(|(l, m)| match l.exact_value() {
                Some(x) if !x.is_negative() => Ok((x, m)),
                _ => Err(Error::Invalid(format!("{l} is not a value of a squared operator"))),
            })
            .collect()
    };
    let (v1, v2) = (values(s1)?, values(s2)?);
    let mut out = Spectrum::new(bound)?;
    for (chi, m1) in &v1 {
        for (nu, m2) in &v2 {
            let sum = chi + nu;
            if sum <= bound {
                out.insert(AlgebraicEigenvalue::from_rational(sum), m1 * m2)?;
            }
        }
    }
    Ok(out)
}

/// Spectrum of the product Dirac operator on `M1^{2p} x M2^{2q+1}` up to `|λ| <= cutoff`.
///
/// * paired branch: each `μ > 0` of `M1` and each `ν` of `M2` give `±√(μ² + ν²)`, each with
///   multiplicity `m₁(μ)·m₂(ν)`;
/// * harmonic branch: each `ν` of `M2` gives `(-1)^p ν` with multiplicity `a1·m₂(ν)` and
///   `-(-1)^p ν` with multiplicity `a2·m₂(ν)`.
pub fn assemble_product_spectrum(f1: &FactorSpectralData, f2: &FactorSpectralData, cutoff: Q) -> Result<Spectrum> {
    let p = match (f1.parity, f2.parity) {
        (Parity::Even(p), Parity::Odd(_)) => p,
        _ => return Err(Error::Parity(format!("expected (even, odd) factors, got dimensions ({}, {})", f1.parity.dimension(), f2.parity.dimension()))),
    };
    for (name, f) in [("first", f1), ("second", f2)] {
        if f.cutoff() < cutoff {
            return Err(Error::InsufficientCutoff(format!("{name} factor known to {}, need {}", display(&f.cutoff()), display(&cutoff))));
        }
    }
    let bound = cutoff * cutoff;
    let mut out = Spectrum::new(cutoff)?;
    for (mu, m1) in f1.spectrum.iter() {
        for (nu, m2) in f2.spectrum.iter() {
            let radicand = mu.radicand() + nu.radicand();
            if radicand <= bound {
                let lambda = AlgebraicEigenvalue::new(1, radicand)?;
                out.insert(lambda, m1 * m2)?;
                out.insert(-lambda, m1 * m2)?;
            }
        }
    }
    let flip = |nu: AlgebraicEigenvalue| if p % 2 == 0 { nu } else { -nu };
    for (nu, m2) in f2.spectrum.iter() {
        if nu.within(&cutoff) {
            out.insert(flip(*nu), f1.a1 * m2)?;
            out.insert(-flip(*nu), f1.a2 * m2)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Symmetric,
    Asymmetric,
    UndecidableAtCutoff,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Symmetric => "symmetric",
            VerdictKind::Asymmetric => "asymmetric",
            VerdictKind::UndecidableAtCutoff => "undecidable-at-cutoff",
        }
    }
}

/// `λ` with `b₁ = dim Γ_{(-1)^p λ}(D₂) ≠ b₂ = dim Γ_{-(-1)^p λ}(D₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub lambda: AlgebraicEigenvalue,
    pub b1: u64,
    pub b2: u64,
    /// `mult(λ) - mult(-λ)` in the product, `(a1 - a2)(b1 - b2)`.
    pub defect: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub index: i64,
    pub witness: Option<Witness>,
    pub cutoff: Q,
    pub explanation: String,
}

/// Symmetric iff the index `a1 - a2` vanishes or the odd factor's spectrum is symmetric.
pub fn symmetry_verdict(f1: &FactorSpectralData, f2: &FactorSpectralData) -> Result<Verdict> {
    let p = match (f1.parity, f2.parity) {
        (Parity::Even(p), Parity::Odd(_)) => p,
        _ => return Err(Error::Parity(format!("expected (even, odd) factors, got dimensions ({}, {})", f1.parity.dimension(), f2.parity.dimension()))),
    };
    let index = f1.index();
    let cutoff = f2.cutoff();
    let verdict = |kind, witness, explanation: String| Verdict { kind, index, witness, cutoff, explanation };
    if index == 0 {
        return Ok(verdict(VerdictKind::Symmetric, None, "index a1 - a2 = 0: harmonic branch mirrors itself".into()));
    }
    if f2.known_symmetric == Some(true) {
        return Ok(verdict(VerdictKind::Symmetric, None, format!("index {index} ≠ 0 but the odd factor's spectrum is symmetric (closed form)")));
    }
    if let Some((nu, pos, neg)) = f2.spectrum.first_asymmetry() {
        // λ = (-1)^p ν so that b1 = m₂(ν), b2 = m₂(-ν)
        let lambda = if p % 2 == 0 { nu } else { -nu };
        let (b1, b2) = (pos, neg);
        let witness = Witness { lambda, b1, b2, defect: index * (b1 as i64 - b2 as i64) };
        return Ok(verdict(
            VerdictKind::Asymmetric,
            Some(witness),
            format!("index {index} ≠ 0 and the odd factor is asymmetric at |ν| = {}: λ = {lambda} has b1 = {b1}, b2 = {b2}", nu),
        ));
    }
    if f2.known_symmetric == Some(false) {
        return Ok(verdict(
            VerdictKind::Asymmetric,
            None,
            format!("index {index} ≠ 0 and the odd factor is asymmetric (closed form); no witness below cutoff {}", display(&cutoff)),
        ));
    }
    Ok(verdict(
        VerdictKind::UndecidableAtCutoff,
        None,
        format!("index {index} ≠ 0 and the odd factor is symmetric only up to cutoff {}", display(&cutoff)),
    ))
}

/// `Σ_{λ≠0} sign(λ)·mult(λ)·|λ|^{-s}` over the stored entries.
///
/// Terms are accumulated in ascending `|λ|`; at each `|λ|` the integer net multiplicity
/// (positive minus negative) is formed first, so symmetric spectra give exactly `0`.
pub fn eta_partial(spec: &Spectrum, s: f64) -> f64 {
    let mut net: BTreeMap<Q, i64> = BTreeMap::new();
    for (lambda, mult) in spec.iter().filter(|(l, _)| !l.is_zero()) {
        *net.entry(lambda.radicand()).or_insert(0) += i64::from(lambda.sign()) * mult as i64;
    }
    net.into_iter()
        .filter(|&(_, w)| w != 0)
        .fold(0.0, |acc, (r, w)| acc + w as f64 * to_f64(&r).powf(-s / 2.0))
}

/// Eta invariant of the circle lattice spectrum `{n + a : n ∈ Z}`: `1 - 2â` with
/// `â = a mod 1 ∈ [0, 1)`, and `0` when `â = 0`.
pub fn eta_zero_lattice(a: Q) -> Q {
    let reduced = frac_part(&a);
    if reduced.is_zero() {
        Q::zero()
    } else {
        Q::from_integer(1) - reduced * Q::from_integer(2)
    }
}
