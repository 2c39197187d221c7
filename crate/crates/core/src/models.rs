//! Closed-form factor data and the characteristic-number index.
//!
//! The flat torus is `R²/(2πZ)²`, so a Fourier mode `v ∈ Z²` twisted by a flat connection
//! with holonomy parameters `(a1, a2)` contributes eigenvalues `±|v + a|` with no `2π`
//! factors. The circle `R/2πZ` with connection `-ia dθ` has spectrum `{n + a : n ∈ Z}`.

use std::path::{Path, PathBuf};

use num_traits::{Signed, Zero};

use crate::format::{read_factor, write_factor};
use crate::rational::{display, integer_range, parse_rational, Q};
use crate::spectra::{AlgebraicEigenvalue, FactorSpectralData, Spectrum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleModel {
    pub a: Q,
}

impl CircleModel {
    /// The full lattice `Z + a` is symmetric iff `2a ∈ Z`.
    pub fn is_symmetric(&self) -> bool {
        (self.a * Q::from_integer(2)).is_integer()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatTorusModel {
    pub a1: Q,
    pub a2: Q,
}

impl FlatTorusModel {
    /// Kernel is one spinor of each chirality when the connection is trivialisable.
    pub fn harmonic_counts(&self) -> (u64, u64) {
        if self.a1.is_integer() && self.a2.is_integer() {
            (1, 1)
        } else {
            (0, 0)
        }
    }
}

fn require_positive(cutoff: Q) -> Result<()> {
    if cutoff.is_positive() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("cutoff must be positive, got {}", display(&cutoff))))
    }
}

pub fn circle_factor(model: &CircleModel, cutoff: Q) -> Result<FactorSpectralData> {
    require_positive(cutoff)?;
    let mut spectrum = Spectrum::new(cutoff)?;
    for n in integer_range(&model.a, &-cutoff, &cutoff) {
        spectrum.insert(AlgebraicEigenvalue::from_rational(Q::from_integer(n) + model.a), 1)?;
    }
    Ok(FactorSpectralData::odd(0, spectrum).with_known_symmetry(Some(model.is_symmetric())))
}

/// Positive part `|v + a| ↦ #{v}` of the flat 2-torus spectrum and its kernel split.
pub fn flat_torus_factor(model: &FlatTorusModel, cutoff: Q) -> Result<FactorSpectralData> {
    require_positive(cutoff)?;
    let bound = cutoff * cutoff;
    let mut spectrum = Spectrum::new(cutoff)?;
    for v1 in integer_range(&model.a1, &-cutoff, &cutoff) {
        let x1 = Q::from_integer(v1) + model.a1;
        for v2 in integer_range(&model.a2, &-cutoff, &cutoff) {
            let x2 = Q::from_integer(v2) + model.a2;
            let r = x1 * x1 + x2 * x2;
            if !r.is_zero() && r <= bound {
                spectrum.insert(AlgebraicEigenvalue::new(1, r)?, 1)?;
            }
        }
    }
    let (a1, a2) = model.harmonic_counts();
    FactorSpectralData::even(1, spectrum, a1, a2)
}

pub fn load_factor(path: &Path) -> Result<FactorSpectralData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_factor(&text)
}

pub fn save_factor(path: &Path, data: &FactorSpectralData) -> Result<()> {
    std::fs::write(path, write_factor(data)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Characteristic numbers of the even factor `M1` and its line bundle `L1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CharClassData {
    pub dim: u32,
    /// `⟨c₁(L₁), [M₁]⟩`, dimension 2.
    pub c1: Option<i64>,
    /// `⟨c₁(L₁)², [M₁]⟩`, dimension 4.
    pub c1sq: Option<i64>,
    /// `⟨p₁(TM₁), [M₁]⟩`, dimension 4.
    pub p1: Option<i64>,
    /// Declares `w₂(M₁) = 0`, in which case `c₁` must be even (checked in dimension 2).
    pub w2_zero: bool,
}

/// `(e^{c₁(L₁)/2} Â(M₁))[M₁]`: `c₁/2` in dimension 2, `c₁²/8 - p₁/24` in dimension 4.
pub fn index_density(data: &CharClassData) -> Result<Q> {
    let missing = |name: &str| Error::Invalid(format!("dimension {} needs the {name} pairing", data.dim));
    match data.dim {
        2 => {
            let c1 = data.c1.ok_or_else(|| missing("c1"))?;
            if data.w2_zero && c1 % 2 != 0 {
                return Err(Error::Invalid(format!("c1 = {c1} must be even when w2 = 0")));
            }
            Ok(Q::new(c1, 2))
        }
        4 => {
            let c1sq = data.c1sq.ok_or_else(|| missing("c1^2"))?;
            let p1 = data.p1.ok_or_else(|| missing("p1"))?;
            Ok(Q::new(c1sq, 8) - Q::new(p1, 24))
        }
        d => Err(Error::DimensionOutOfRange(d as usize, "index density supports dim 2 or 4")),
    }
}

/// Where a factor's spectral data comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDescriptor {
    Circle(CircleModel),
    FlatTorus(FlatTorusModel),
    File(PathBuf),
}

impl ModelDescriptor {
    /// `circle:<a>`, `torus:<a1>,<a2>`, `file:<path>` or `config:<path>`.
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let (kind, rest) = text.split_once(':').ok_or_else(|| Error::Invalid(format!("model descriptor {text:?} needs a `kind:` prefix")))?;
        match kind {
            "circle" => Ok(ModelDescriptor::Circle(CircleModel { a: parse_rational(rest)? })),
            "torus" | "flat_torus" => {
                let (a1, a2) = rest.split_once(',').ok_or_else(|| Error::Invalid(format!("torus descriptor {text:?} needs `a1,a2`")))?;
                Ok(ModelDescriptor::FlatTorus(FlatTorusModel { a1: parse_rational(a1)?, a2: parse_rational(a2)? }))
            }
            "file" => Ok(ModelDescriptor::File(PathBuf::from(rest))),
            "config" => {
                let path = Path::new(rest);
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                Self::parse_config(&text, path.parent())
            }
            other => Err(Error::Invalid(format!("unknown model kind {other:?}"))),
        }
    }

    /// Key-value descriptor: `model = circle|flat_torus|file`, `a = …`, `a1 = …`, `a2 = …`,
    /// `path = …`. Relative paths resolve against `base`.
    pub fn parse_config(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut model = None;
        let (mut a, mut a1, mut a2, mut path) = (None, None, None, None);
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse { line, msg: format!("expected `key = value`, got {trimmed:?}") })?;
            let value = value.trim();
            let rational = |v: &str| parse_rational(v).map_err(|e| Error::Parse { line, msg: e.to_string() });
            match key.trim() {
                "model" => model = Some(value.to_string()),
                "a" => a = Some(rational(value)?),
                "a1" => a1 = Some(rational(value)?),
                "a2" => a2 = Some(rational(value)?),
                "path" => path = Some(value.to_string()),
                other => return Err(Error::Parse { line, msg: format!("unknown key {other:?}") }),
            }
        }
        let need = |what: &str| Error::Parse { line: 0, msg: format!("descriptor is missing `{what}`") };
        match model.as_deref() {
            Some("circle") => Ok(ModelDescriptor::Circle(CircleModel { a: a.ok_or_else(|| need("a"))? })),
            Some("flat_torus") | Some("torus") => Ok(ModelDescriptor::FlatTorus(FlatTorusModel {
                a1: a1.ok_or_else(|| need("a1"))?,
                a2: a2.ok_or_else(|| need("a2"))?,
            })),
            Some("file") => {
                let p = PathBuf::from(path.ok_or_else(|| need("path"))?);
                Ok(ModelDescriptor::File(match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                }))
            }
            Some(other) => Err(Error::Parse { line: 0, msg: format!("unknown model {other:?}") }),
            None => Err(need("model")),
        }
    }

    /// Factor data complete up to `cutoff` (files are used as stored).
    pub fn resolve(&self, cutoff: Q) -> Result<FactorSpectralData> {
        match self {
            ModelDescriptor::Circle(m) => circle_factor(m, cutoff),
            ModelDescriptor::FlatTorus(m) => flat_torus_factor(m, cutoff),
            ModelDescriptor::File(path) => load_factor(path),
        }
    }
}
