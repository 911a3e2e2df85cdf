//! Scenario files and the built-in catalog.

use std::path::Path;

use jbeta_core::arith::Rat;
use jbeta_core::centralizer_embed::{decompose_beta, decompose_beta_gl, standard_point, BetaDecomposition, BlockPoint, CentralBuildingPoint};
use jbeta_core::field_tower::{EMat, FieldTower};
use jbeta_core::herm_forms::HermForm;
use jbeta_core::latt_fun::LatticeFunction;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::{rat, ElemJson, FunctionJson, PointJson};

pub const CATALOG: [(&str, &str); 6] = [
    ("sp2-ramified", include_str!("../scenarios/sp2-ramified.json")),
    ("sp2-split-gl", include_str!("../scenarios/sp2-split-gl.json")),
    ("u2-unramified", include_str!("../scenarios/u2-unramified.json")),
    ("o2-anisotropic", include_str!("../scenarios/o2-anisotropic.json")),
    ("sp4-mixed", include_str!("../scenarios/sp4-mixed.json")),
    ("gl2-ramified", include_str!("../scenarios/gl2-ramified.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// The isometry group of an ε-hermitian form.
    Classical,
    /// `GL_n(F)` with no form.
    Gl,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridJson {
    pub denominator: u32,
    pub radius: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ExpectedJson {
    /// `j_β` of the scenario point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embed: Option<FunctionJson>,
    /// Offsets of every point the search should return.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub name: String,
    pub prime: u64,
    /// `F = Q(√d)`; absent for `F = Q`.
    #[serde(default)]
    pub d: Option<i64>,
    pub group: Group,
    #[serde(default)]
    pub eps: Option<i32>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<ElemJson>>>,
    pub beta: Vec<Vec<ElemJson>>,
    /// Defaults to the standard point.
    #[serde(default)]
    pub point: Option<PointJson>,
    pub grid: GridJson,
    /// Extra values of `r` at which profiles are printed.
    #[serde(default)]
    pub r_samples: Vec<String>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub expected: ExpectedJson,
}

/// A parsed scenario with its decomposition.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub tower: FieldTower,
    pub form: Option<HermForm>,
    pub decomp: BetaDecomposition,
    pub point: CentralBuildingPoint,
    pub denominator: u32,
    pub radius: Rat,
}

fn matrix(rows: &[Vec<ElemJson>], d: i64) -> CliResult<EMat> {
    let m = rows.iter().map(|r| r.iter().map(|e| e.to_elem(d)).collect::<CliResult<Vec<_>>>()).collect::<CliResult<Vec<_>>>()?;
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(CliError::Parse("matrix is not square".into()));
    }
    Ok(EMat::from_rows(m, d))
}

/// The point of a `GL` scenario: one `o_{E_i}`-function with offset zero per block.
fn gl_point(decomp: &BetaDecomposition) -> CentralBuildingPoint {
    let parts = decomp
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| BlockPoint {
            block: k,
            function: LatticeFunction::new(b.basis.clone(), vec![Rat::from_integer(0.into()); b.basis.len()], b.layer.clone()),
            shift: Rat::from_integer(0.into()),
        })
        .collect();
    CentralBuildingPoint { parts }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> CliResult<ScenarioFile> {
        Ok(serde_json::from_str(text)?)
    }

    /// A catalog name or a path to a JSON file.
    pub fn load(name: &str) -> CliResult<ScenarioFile> {
        if let Some((_, text)) = CATALOG.iter().find(|(n, _)| *n == name) {
            return ScenarioFile::parse(text);
        }
        let path = Path::new(name);
        if !path.exists() {
            return Err(CliError::Parse(format!("{name} is neither a catalog scenario nor a file")));
        }
        ScenarioFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn build(self) -> CliResult<Scenario> {
        let tower = match self.d {
            None | Some(0) => FieldTower::rational(self.prime)?,
            Some(d) => FieldTower::quadratic(self.prime, d)?,
        };
        let d = tower.f.d;
        let beta = matrix(&self.beta, d)?;
        let (form, decomp) = match self.group {
            Group::Classical => {
                let gram = self.gram.as_ref().ok_or_else(|| CliError::Parse("classical scenario without a Gram matrix".into()))?;
                let eps = self.eps.ok_or_else(|| CliError::Parse("classical scenario without eps".into()))?;
                let form = HermForm::ambient(&tower, eps, matrix(gram, d)?)?;
                let decomp = decompose_beta(&form, &beta)?;
                (Some(form), decomp)
            }
            Group::Gl => (None, decompose_beta_gl(&tower, &beta)?),
        };
        let point = match (&self.point, self.group) {
            (Some(p), _) => p.to_point(&decomp)?,
            (None, Group::Classical) => standard_point(&decomp)?,
            (None, Group::Gl) => gl_point(&decomp),
        };
        if self.grid.denominator == 0 {
            return Err(CliError::Parse("grid denominator must be positive".into()));
        }
        let radius = rat(&self.grid.radius)?;
        Ok(Scenario { denominator: self.grid.denominator, radius, tower, form, decomp, point, file: self })
    }
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn is_gl(&self) -> bool {
        self.file.group == Group::Gl
    }
}

/// Every catalog scenario, built.
pub fn catalog() -> CliResult<Vec<Scenario>> {
    CATALOG.iter().map(|(_, text)| ScenarioFile::parse(text)?.build()).collect()
}
