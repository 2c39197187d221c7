//! Antilinear `j0`/`j1` structures on `Δ_n` and their product composites.
//!
//! On the `u(ε)` basis
//!
//! ```text
//! j0 u(ε₁,…,ε_m) = i^{Σ α ε_α}         u(-ε₁,…,-ε_m)
//! j1 u(ε₁,…,ε_m) = i^{Σ (m-α+1) ε_α}   u(-ε₁,…,-ε_m)
//! ```
//!
//! An antilinear map is stored as a matrix `J` acting by `v ↦ J·conj(v)`. Since
//! `conj(u(ε)) = u(-ε)`, `J = Σ_ε i^{φ(ε)} u(-ε) u(-ε)^*`, which has Gaussian-rational
//! entries.

use crate::clifford::{basis_vector, BasisIndex, SpinorRep};
use crate::linalg::{gq, i_pow, GMat, Gq};
use crate::rational::Q;
use crate::{Error, Result};

pub const MAX_M: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JKind {
    J0,
    J1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CompositeKind {
    /// `j0 ⊗ j1`
    JStar,
    /// `j1 ⊗ j0`
    JHatStar,
    /// `j0 ⊗ j0`
    J0Star,
    /// `j1 ⊗ j1`
    J1Star,
}

impl CompositeKind {
    pub const ALL: [CompositeKind; 4] = [CompositeKind::JStar, CompositeKind::JHatStar, CompositeKind::J0Star, CompositeKind::J1Star];

    pub fn factors(self) -> (JKind, JKind) {
        match self {
            CompositeKind::JStar => (JKind::J0, JKind::J1),
            CompositeKind::JHatStar => (JKind::J1, JKind::J0),
            CompositeKind::J0Star => (JKind::J0, JKind::J0),
            CompositeKind::J1Star => (JKind::J1, JKind::J1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CompositeKind::JStar => "j*",
            CompositeKind::JHatStar => "ĵ*",
            CompositeKind::J0Star => "j0*",
            CompositeKind::J1Star => "j1*",
        }
    }

    /// `ĵ*` and `j0*` put `j0` on `Δ_{2q+1}`, which is only globally defined for `q` odd.
    pub fn is_well_defined(self, p: usize, q: usize) -> bool {
        p >= 1 && q >= 1 && (matches!(self, CompositeKind::JStar | CompositeKind::J1Star) || q % 2 == 1)
    }

    /// Signs `(s_E, s_F)` with `j∘E_k = s_E E_k∘j` and `j∘F_l = s_F F_l∘j` on the
    /// tensor representation of `Δ_{2p} ⊗ Δ_{2q+1}`.
    pub fn expected_signs(self, p: usize, q: usize) -> (i8, i8) {
        match self {
            CompositeKind::JStar => (1, parity_sign(p + q + 1)),
            CompositeKind::JHatStar => (parity_sign(p + 1), parity_sign(p)),
            CompositeKind::J0Star => (1, parity_sign(p)),
            CompositeKind::J1Star => (parity_sign(p + 1), parity_sign(p + q + 1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositeJKind {
    pub kind: CompositeKind,
    pub p: usize,
    pub q: usize,
}

/// What a map was built as; drives the expected sign table in [`verify_properties`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JLabel {
    Single { kind: JKind, m: usize },
    Composite(CompositeJKind),
    Unlabelled,
}

pub fn parity_sign(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^{m(m+1)/2}`
pub fn square_sign(m: usize) -> i8 {
    parity_sign(m * (m + 1) / 2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearMap {
    pub matrix: GMat,
    pub antilinear: bool,
    pub label: JLabel,
}

impl AntilinearMap {
    pub fn linear(matrix: GMat) -> Self {
        AntilinearMap { matrix, antilinear: false, label: JLabel::Unlabelled }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Gq]) -> Vec<Gq> {
        if self.antilinear {
            let conj: Vec<Gq> = v.iter().map(|z| z.conj()).collect();
            self.matrix.apply(&conj)
        } else {
            self.matrix.apply(v)
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AntilinearMap) -> AntilinearMap {
        let rhs = if self.antilinear { other.matrix.conj() } else { other.matrix.clone() };
        AntilinearMap {
            matrix: &self.matrix * &rhs,
            antilinear: self.antilinear != other.antilinear,
            label: JLabel::Unlabelled,
        }
    }

    pub fn compose_linear(&self, m: &GMat) -> AntilinearMap {
        self.compose(&AntilinearMap::linear(m.clone()))
    }

    pub fn scale(&self, c: &Gq) -> AntilinearMap {
        AntilinearMap { matrix: self.matrix.scale(c), antilinear: self.antilinear, label: JLabel::Unlabelled }
    }

    /// Kronecker product of two maps of the same linearity type.
    pub fn kron(&self, other: &AntilinearMap) -> AntilinearMap {
        assert_eq!(self.antilinear, other.antilinear, "kron of mixed linearity");
        AntilinearMap { matrix: self.matrix.kron(&other.matrix), antilinear: self.antilinear, label: JLabel::Unlabelled }
    }
}

fn phase_exponent(kind: JKind, eps: &[i8]) -> i64 {
    let m = eps.len();
    eps.iter()
        .enumerate()
        .map(|(a, &e)| {
            let alpha = a + 1;
            let weight = match kind {
                JKind::J0 => alpha,
                JKind::J1 => m - alpha + 1,
            };
            weight as i64 * i64::from(e)
        })
        .sum()
}

pub fn build_j(kind: JKind, m: usize) -> Result<AntilinearMap> {
    if !(1..=MAX_M).contains(&m) {
        return Err(Error::DimensionOutOfRange(m, "1 <= m <= 4"));
    }
    let dim = 1usize << m;
    let norm = Q::from_integer(1i64 << m);
    let mut matrix = GMat::zeros(dim, dim);
    for idx in BasisIndex::enumerate(m) {
        let phase = i_pow(phase_exponent(kind, idx.epsilons()));
        let w = basis_vector(&idx.negated()).scaled;
        for r in 0..dim {
            for c in 0..dim {
                let term = phase * w[r] * w[c].conj();
                matrix[(r, c)] += gq(term.re / norm, term.im / norm);
            }
        }
    }
    Ok(AntilinearMap { matrix, antilinear: true, label: JLabel::Single { kind, m } })
}

pub fn build_composite(spec: CompositeJKind) -> Result<AntilinearMap> {
    let CompositeJKind { kind, p, q } = spec;
    if p < 1 || q < 1 {
        return Err(Error::IllDefined(format!("{} needs p >= 1 and q >= 1, got ({p}, {q})", kind.name())));
    }
    if !kind.is_well_defined(p, q) {
        return Err(Error::IllDefined(format!("{} requires q odd, got q = {q}", kind.name())));
    }
    let (first, second) = kind.factors();
    let map = build_j(first, p)?.kron(&build_j(second, q)?);
    Ok(AntilinearMap { label: JLabel::Composite(spec), ..map })
}

/// Sign `s` with `j∘e = s·e∘j`, if any.
pub fn commutation_sign(j: &AntilinearMap, e: &GMat) -> Option<i8> {
    let je = j.compose_linear(e).matrix;
    let ej = AntilinearMap::linear(e.clone()).compose(j).matrix;
    if je == ej {
        Some(1)
    } else if je == -&ej {
        Some(-1)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub n: usize,
    pub label: JLabel,
    /// Observed sign per generator (`None` when neither commuting nor anticommuting).
    pub signs: Vec<Option<i8>>,
    pub expected_signs: Option<Vec<i8>>,
    /// `j∘j = c·Id` for this scalar, if it is scalar.
    pub square: Option<Gq>,
    pub expected_square: Option<i8>,
    /// `conj(J)ᵀ J = I`, i.e. `⟨jψ, jφ⟩ = ⟨φ, ψ⟩`.
    pub norm_preserving: bool,
    /// Pointwise identities are checked even where the map does not globalise.
    pub warning: Option<String>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        let signs_ok = match &self.expected_signs {
            Some(exp) => self.signs.iter().zip(exp).all(|(s, e)| *s == Some(*e)) && self.signs.len() == exp.len(),
            None => self.signs.iter().all(Option::is_some),
        };
        let square_ok = match (self.square, self.expected_square) {
            (Some(c), Some(e)) => c == gq(Q::from_integer(e.into()), Q::from_integer(0)),
            (Some(_), None) => true,
            (None, _) => false,
        };
        signs_ok && square_ok && self.norm_preserving
    }
}

pub fn verify_properties(rep: &SpinorRep, jmap: &AntilinearMap) -> Result<PropertyReport> {
    if rep.dim() != jmap.dim() {
        return Err(Error::DimensionMismatch(format!("representation of dimension {} vs map of dimension {}", rep.dim(), jmap.dim())));
    }
    if !jmap.antilinear {
        return Err(Error::Invalid("verify_properties expects an antilinear map".into()));
    }
    let n = rep.n();
    let signs: Vec<Option<i8>> = rep.generators().iter().map(|e| commutation_sign(jmap, e)).collect();
    let square = jmap.compose(jmap).matrix.scalar_multiple_of(&GMat::identity(rep.dim()));
    let norm_preserving = &jmap.matrix.adjoint() * &jmap.matrix == GMat::identity(rep.dim());

    let (expected_signs, expected_square, warning) = match jmap.label {
        JLabel::Single { kind, m } => {
            if rep.m() != m {
                return Err(Error::DimensionMismatch(format!("j built for m = {m}, representation has m = {}", rep.m())));
            }
            let odd_sign = parity_sign(m + 1);
            let signs = (1..=n)
                .map(|k| match kind {
                    JKind::J0 if k <= 2 * m => 1,
                    JKind::J0 => odd_sign,
                    JKind::J1 => odd_sign,
                })
                .collect();
            let warning = (kind == JKind::J0 && n % 4 == 1)
                .then(|| format!("j0 does not globalise for n = {n} ≡ 1 mod 4; identities checked pointwise only"));
            (Some(signs), Some(square_sign(m)), warning)
        }
        JLabel::Composite(CompositeJKind { kind, p, q }) => {
            if n != 2 * p + 2 * q + 1 {
                return Err(Error::DimensionMismatch(format!("{} for (p, q) = ({p}, {q}) needs the tensor representation with n = {}", kind.name(), 2 * p + 2 * q + 1)));
            }
            let (se, sf) = kind.expected_signs(p, q);
            let signs = (0..n).map(|k| if k < 2 * p { se } else { sf }).collect();
            // j0 and j1 square to the same sign, so only the factor sizes matter
            (Some(signs), Some(square_sign(p) * square_sign(q)), None)
        }
        JLabel::Unlabelled => (None, None, None),
    };
    Ok(PropertyReport { n, label: jmap.label, signs, expected_signs, square, expected_square, norm_preserving, warning })
}

/// `j0∘j1 == j1∘j0` on `Δ` with half-dimension `m`.
pub fn j0_j1_commute(m: usize) -> Result<bool> {
    let (j0, j1) = (build_j(JKind::J0, m)?, build_j(JKind::J1, m)?);
    Ok(j0.compose(&j1).matrix == j1.compose(&j0).matrix)
}
