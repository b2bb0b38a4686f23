//! Declarative TOML description of an algebra.
//!
//! ```toml
//! name = "S5"
//! torus_rank = 3
//! relations = ["z1*z1^* + z2*z2^* + z3*z3^* - 1"]
//!
//! [[generators]]
//! name = "z1"
//! weight = [1, 0, 0]
//!
//! [[deformation]]
//! row = 1
//! col = 2
//! form = "theta12"
//! ```
//!
//! Deformation indices are 1-based; the transposed entry is implied.

use serde::{Deserialize, Serialize};

use super::spec::AlgebraSpec;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct SpecFile {
    name: String,
    torus_rank: usize,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    generators: Vec<GeneratorEntry>,
    #[serde(default)]
    deformation: Vec<DeformationEntry>,
    #[serde(default)]
    central: Vec<CentralEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GeneratorEntry {
    name: String,
    weight: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DeformationEntry {
    row: usize,
    col: usize,
    form: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CentralEntry {
    name: String,
    denominator: String,
}

impl AlgebraSpec {
    pub fn from_toml(src: &str) -> Result<AlgebraSpec> {
        let file: SpecFile = toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let mut b = AlgebraSpec::builder(&file.name, file.torus_rank);
        for g in &file.generators {
            b = b.generator(&g.name, g.weight.clone());
        }
        for d in &file.deformation {
            if d.row == 0 || d.col == 0 {
                return Err(Error::Parse("deformation indices start at 1".into()));
            }
            b = b.deform(d.row - 1, d.col - 1, d.form.parse()?);
        }
        for r in &file.relations {
            b = b.relation(r);
        }
        for c in &file.central {
            b = b.central_symbol(&c.name, &c.denominator);
        }
        b.build()
    }

    pub fn to_toml(&self) -> String {
        let file = SpecFile {
            name: self.name().to_string(),
            torus_rank: self.torus_rank(),
            relations: self.relations().iter().map(|r| self.render(r)).collect(),
            generators: self
                .generators()
                .iter()
                .filter(|g| !g.central)
                .map(|g| GeneratorEntry { name: g.name.clone(), weight: g.weight.clone() })
                .collect(),
            deformation: self
                .deformation()
                .iter()
                .enumerate()
                .flat_map(|(j, row)| {
                    row.iter().enumerate().skip(j + 1).filter(|(_, f)| !f.is_zero()).map(move |(k, f)| {
                        DeformationEntry { row: j + 1, col: k + 1, form: f.to_string() }
                    })
                })
                .collect(),
            central: self
                .central_symbols()
                .iter()
                .map(|c| CentralEntry {
                    name: self.generators()[c.generator].name.clone(),
                    denominator: self.render(&c.denominator),
                })
                .collect(),
        };
        toml::to_string(&file).expect("spec file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S5: &str = r#"
name = "S5"
torus_rank = 3
relations = ["z1*z1^* + z2*z2^* + z3*z3^* - 1"]

[[generators]]
name = "z1"
weight = [1, 0, 0]

[[generators]]
name = "z2"
weight = [0, 1, 0]

[[generators]]
name = "z3"
weight = [0, 0, 1]

[[deformation]]
row = 1
col = 2
form = "theta12"
"#;

    #[test]
    fn parses_and_round_trips() {
        let s = AlgebraSpec::from_toml(S5).unwrap();
        assert_eq!(s.generators().len(), 3);
        assert_eq!(s.deformation()[1][0].to_string(), "-theta12");
        assert_eq!(s.rules().len(), 1);
        let back = AlgebraSpec::from_toml(&s.to_toml()).unwrap();
        assert_eq!(back.deformation(), s.deformation());
        assert_eq!(back.relations(), s.relations());
    }

    #[test]
    fn rejects_bad_input() {
        let bad = S5.replace("weight = [0, 0, 1]", "weight = [0, 1]");
        assert!(matches!(AlgebraSpec::from_toml(&bad), Err(Error::DimensionMismatch { .. })));
        let inhom = S5.replace("- 1\"]", "- z1\"]");
        assert!(matches!(AlgebraSpec::from_toml(&inhom), Err(Error::InhomogeneousRelation(_))));
    }
}
