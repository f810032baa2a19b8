//! JSON presentation of a finite-dimensional algebra with coproduct, and the
//! registry of built-in presets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ComplexVector};
use crate::presets::{self, coproduct_from_entries, PRESET_NAMES};

pub const SCHEMA_VERSION: u32 = 1;

/// Coefficients with modulus below this are dropped when serializing.
const EMIT_CUTOFF: f64 = 1e-13;

/// `(i, j, k, re, im)`: `e_i e_j` (or `Δ(e_i)`) contains `(re + i·im)·e_j⊗e_k`
/// resp. `e_k`.
pub type Triple = (usize, usize, usize, f64, f64);
/// `(i, j, re, im)`: the image of `e_i` contains `(re + i·im)·e_j`.
pub type Pair = (usize, usize, f64, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: u32,
    pub name: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Triple>,
    pub comult: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<(f64, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<(f64, f64)>>,
}

/// The in-memory objects described by a file.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub algebra: FiniteDimAlgebra,
    pub coproduct: ComplexMatrix,
    pub declared_antipode: Option<ComplexMatrix>,
    pub declared_counit: Option<ComplexVector>,
}

fn backticked(msg: &str) -> Option<String> {
    let start = msg.find('`')? + 1;
    let len = msg[start..].find('`')?;
    Some(msg[start..start + len].to_string())
}

pub fn parse(text: &str) -> Result<AlgebraFile> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => {
                let msg = e.to_string();
                Error::Schema { field: backticked(&msg).unwrap_or_else(|| "<document>".into()), message: msg }
            }
            _ => Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() },
        }
    })?;
    file.validate()?;
    Ok(file)
}

pub fn serialize(file: &AlgebraFile) -> String {
    serde_json::to_string_pretty(file).expect("algebra file serializes")
}

fn check_index(field: &str, entry: usize, index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        Err(Error::Range { field: field.into(), entry, index, dim })
    } else {
        Ok(())
    }
}

fn check_finite(field: &str, entry: usize, re: f64, im: f64) -> Result<()> {
    if re.is_finite() && im.is_finite() {
        Ok(())
    } else {
        Err(Error::Schema { field: field.into(), message: format!("entry {entry} is not a finite number") })
    }
}

impl AlgebraFile {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema {
                field: "schema_version".into(),
                message: format!("expected {SCHEMA_VERSION}, found {}", self.schema_version),
            });
        }
        let n = self.dimension;
        if n == 0 {
            return Err(Error::Schema { field: "dimension".into(), message: "must be positive".into() });
        }
        if self.basis.len() != n {
            return Err(Error::Schema {
                field: "basis".into(),
                message: format!("{} labels for dimension {n}", self.basis.len()),
            });
        }
        for (field, entries) in [("mult", &self.mult), ("comult", &self.comult)] {
            for (e, &(i, j, k, re, im)) in entries.iter().enumerate() {
                for idx in [i, j, k] {
                    check_index(field, e, idx, n)?;
                }
                check_finite(field, e, re, im)?;
            }
        }
        for (field, entries) in [("star", &self.star), ("antipode", &self.antipode)] {
            for (e, &(i, j, re, im)) in entries.iter().flatten().enumerate() {
                check_index(field, e, i, n)?;
                check_index(field, e, j, n)?;
                check_finite(field, e, re, im)?;
            }
        }
        for (field, v) in [("unit", &self.unit), ("counit", &self.counit)] {
            if let Some(v) = v {
                if v.len() != n {
                    return Err(Error::Schema { field: field.into(), message: format!("{} coefficients for dimension {n}", v.len()) });
                }
                for (e, &(re, im)) in v.iter().enumerate() {
                    check_finite(field, e, re, im)?;
                }
            }
        }
        Ok(())
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        self.validate()?;
        let n = self.dimension;
        let cx = |re, im| Complex64::new(re, im);
        let mut algebra = FiniteDimAlgebra::from_structure_constants(
            self.basis.clone(),
            self.mult.iter().map(|&(i, j, k, re, im)| (i, j, k, cx(re, im))),
        )?;
        let pair_matrix = |entries: &[Pair]| {
            let mut m = ComplexMatrix::zeros(n, n);
            for &(i, j, re, im) in entries {
                m[(j, i)] += cx(re, im);
            }
            m
        };
        let vector = |v: &[(f64, f64)]| ComplexVector::from_iterator(n, v.iter().map(|&(re, im)| cx(re, im)));
        if let Some(s) = &self.star {
            algebra = algebra.with_star(pair_matrix(s))?;
        }
        if let Some(u) = &self.unit {
            algebra = algebra.with_unit(vector(u))?;
        }
        let coproduct = coproduct_from_entries(n, self.comult.iter().map(|&(i, j, k, re, im)| (i, j, k, cx(re, im))));
        Ok(Presentation {
            name: self.name.clone(),
            algebra,
            coproduct,
            declared_antipode: self.antipode.as_deref().map(pair_matrix),
            declared_counit: self.counit.as_deref().map(vector),
        })
    }

    /// Sparse description of an algebra with coproduct.
    pub fn from_structures(name: &str, algebra: &FiniteDimAlgebra, coproduct: &ComplexMatrix) -> Self {
        let n = algebra.dim();
        let keep = |z: Complex64| z.norm() > EMIT_CUTOFF;
        let clean = |x: f64| if x.abs() > EMIT_CUTOFF { x } else { 0.0 };
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let z = algebra.structure_constant(i, j, k);
                    if keep(z) {
                        mult.push((i, j, k, clean(z.re), clean(z.im)));
                    }
                }
            }
        }
        let mut comult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let z = coproduct[(j * n + k, i)];
                    if keep(z) {
                        comult.push((i, j, k, clean(z.re), clean(z.im)));
                    }
                }
            }
        }
        let star = algebra.star_matrix().map(|s| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let z = s[(j, i)];
                    if keep(z) {
                        out.push((i, j, clean(z.re), clean(z.im)));
                    }
                }
            }
            out
        });
        let unit = algebra.unit().map(|u| u.iter().map(|z| (clean(z.re), clean(z.im))).collect());
        Self {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            dimension: n,
            basis: algebra.labels().to_vec(),
            mult,
            comult,
            star,
            unit,
            antipode: None,
            counit: None,
        }
    }
}

/// A named built-in example.
#[derive(Debug, Clone)]
pub enum Preset {
    Finite(AlgebraFile),
    /// Finitely supported functions on `ℤ`, handled by the discrete backend.
    IntegersDiscrete,
}

pub fn preset(name: &str) -> Result<Preset> {
    if name == "z_discrete" {
        return Ok(Preset::IntegersDiscrete);
    }
    let (a, d) = presets::finite_preset(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    Ok(Preset::Finite(AlgebraFile::from_structures(name, &a, &d)))
}

pub fn preset_names() -> &'static [&'static str] {
    &PRESET_NAMES
}
