//! JSON forms of rationals, field elements, lattices, lattice functions,
//! filtration profiles and points of the centralizer building.

use jbeta_core::arith::{fmt_rat, parse_rat, Rat};
use jbeta_core::centralizer_embed::{BetaDecomposition, BlockPoint, CentralBuildingPoint};
use jbeta_core::endo_filt::FiltrationProfile;
use jbeta_core::field_tower::Elem;
use jbeta_core::latt_fun::{DvrLattice, Layer, LatticeFunction};
use jbeta_core::linalg::QVec;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn rat(s: &str) -> CliResult<Rat> {
    parse_rat(s).ok_or_else(|| CliError::Parse(format!("not a rational number: {s:?}")))
}

pub fn rats(v: &[String]) -> CliResult<Vec<Rat>> {
    v.iter().map(|s| rat(s)).collect()
}

pub fn rat_strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

/// A field entry: an integer, a rational `"a/b"`, or a pair `[a, c]` for
/// `a + c√d`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Rat(String),
    Pair([String; 2]),
}

impl ElemJson {
    pub fn to_elem(&self, d: i64) -> CliResult<Elem> {
        let e = match self {
            ElemJson::Int(n) => Elem::from_int(*n),
            ElemJson::Rat(s) => Elem::rational(rat(s)?),
            ElemJson::Pair([a, c]) => {
                if d == 0 && !rat(c)?.is_zero() {
                    return Err(CliError::Parse("irrational entry over the rationals".into()));
                }
                Elem::new(rat(a)?, rat(c)?, d)
            }
        };
        Ok(e.with_layer(d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub basis: Vec<Vec<String>>,
    pub offsets: Vec<String>,
    pub layer: String,
}

impl FunctionJson {
    pub fn of(f: &LatticeFunction) -> FunctionJson {
        FunctionJson { basis: f.basis.iter().map(|b| rat_strs(b)).collect(), offsets: rat_strs(&f.offsets), layer: f.layer.name.clone() }
    }

    /// Reads the function back, resolving the layer by name.
    pub fn to_function(&self, layers: &[Layer]) -> CliResult<LatticeFunction> {
        let layer = layers
            .iter()
            .find(|l| l.name == self.layer)
            .ok_or_else(|| CliError::Parse(format!("unknown layer {:?}", self.layer)))?;
        let basis = self.basis.iter().map(|b| rats(b)).collect::<CliResult<Vec<QVec>>>()?;
        if basis.len() != self.offsets.len() {
            return Err(CliError::Parse("basis and offsets differ in length".into()));
        }
        Ok(LatticeFunction::new(basis, rats(&self.offsets)?, layer.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub basis: Vec<Vec<String>>,
}

impl LatticeJson {
    pub fn of(l: &DvrLattice) -> LatticeJson {
        LatticeJson { basis: l.basis().iter().map(|b| rat_strs(b)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpJson {
    pub r: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub jumps: Vec<JumpJson>,
    pub period: String,
}

impl ProfileJson {
    pub fn of(p: &FiltrationProfile) -> ProfileJson {
        let jumps = p
            .function
            .jumps
            .iter()
            .map(|(r, l)| JumpJson { r: fmt_rat(r), basis: LatticeJson::of(l).basis })
            .collect();
        ProfileJson { jumps, period: fmt_rat(&p.period()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPointJson {
    pub i: i32,
    pub kind: String,
    pub function: FunctionJson,
    pub shift: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub blocks: Vec<BlockPointJson>,
}

impl PointJson {
    pub fn of(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> PointJson {
        let blocks = x
            .parts
            .iter()
            .map(|p| {
                let b = &decomp.blocks[p.block];
                BlockPointJson { i: b.label, kind: b.kind.name().into(), function: FunctionJson::of(&p.function), shift: fmt_rat(&p.shift) }
            })
            .collect();
        PointJson { blocks }
    }

    pub fn to_point(&self, decomp: &BetaDecomposition) -> CliResult<CentralBuildingPoint> {
        let layers: Vec<Layer> = decomp.blocks.iter().map(|b| b.layer.clone()).collect();
        let parts = self
            .blocks
            .iter()
            .map(|bp| {
                let block = decomp
                    .blocks
                    .iter()
                    .position(|b| b.label == bp.i)
                    .ok_or_else(|| CliError::Parse(format!("no block with label {}", bp.i)))?;
                if decomp.blocks[block].kind.name() != bp.kind {
                    return Err(CliError::Parse(format!("block {} is not of kind {}", bp.i, bp.kind)));
                }
                Ok(BlockPoint { block, function: bp.function.to_function(&layers)?, shift: rat(&bp.shift)? })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(CentralBuildingPoint { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jbeta_core::arith::int;
    use jbeta_core::endo_filt::rational_layer;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-1/4", "7", "3/2"] {
            assert_eq!(fmt_rat(&rat(s).unwrap()), s);
        }
        assert!(rat("1/0").is_err());
        assert!(rat("x").is_err());
    }

    #[test]
    fn functions_round_trip() {
        let layer = rational_layer(3);
        let f = LatticeFunction::new(vec![vec![int(1), int(0)], vec![int(0), int(3)]], vec![int(0), Rat::new((-1).into(), 2.into())], layer.clone());
        let j = FunctionJson::of(&f);
        assert_eq!(j.offsets, vec!["0", "-1/2"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: FunctionJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_function(&[layer]).unwrap().same(&f));
    }

    #[test]
    fn elements() {
        let e: ElemJson = serde_json::from_str(r#"["1", "-2"]"#).unwrap();
        assert_eq!(e.to_elem(2).unwrap(), Elem::new(int(1), int(-2), 2));
        let e: ElemJson = serde_json::from_str("5").unwrap();
        assert_eq!(e.to_elem(0).unwrap(), Elem::from_int(5));
        let e: ElemJson = serde_json::from_str(r#""1/3""#).unwrap();
        assert_eq!(e.to_elem(0).unwrap(), Elem::rational(Rat::new(1.into(), 3.into())));
        let e: ElemJson = serde_json::from_str(r#"["0", "1"]"#).unwrap();
        assert!(e.to_elem(0).is_err());
    }
}
