//! JSON algebra files: `{"dim", "basis", "brackets": [[i, j, [[k, "p/q"], ...]], ...]}`
//! with 1-based indices and `i < j`.

use serde::{Deserialize, Serialize, Serializer};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

fn parse_error(err: &serde_json::Error) -> Error {
    Error::Parse { line: err.line(), reason: err.to_string() }
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let mut brackets = Vec::new();
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let v = l.bracket_basis(i, j);
                if !v.is_empty() {
                    brackets.push((i + 1, j + 1, v.iter().map(|(k, c)| (k + 1, c.clone())).collect()));
                }
            }
        }
        AlgebraFile { dim: l.dim(), basis: l.labels().to_vec(), brackets }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let reject = |reason: String| Error::Parse { line: 0, reason };
        if self.basis.len() != self.dim {
            return Err(reject(format!("basis has {} labels but dim is {}", self.basis.len(), self.dim)));
        }
        let mut entries = Vec::new();
        for (n, (i, j, v)) in self.brackets.iter().enumerate() {
            if *i == 0 || *j == 0 || *i > self.dim || *j > self.dim {
                return Err(reject(format!("bracket entry {}: index out of range", n + 1)));
            }
            if i >= j {
                return Err(reject(format!("bracket entry {}: requires i < j, got ({i}, {j})", n + 1)));
            }
            let mut comps = Vec::new();
            for (k, c) in v {
                if *k == 0 || *k > self.dim {
                    return Err(reject(format!("bracket entry {}: component index {k} out of range", n + 1)));
                }
                comps.push((k - 1, c.clone()));
            }
            entries.push((i - 1, j - 1, comps));
        }
        LieAlgebra::new(self.basis.clone(), entries)
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraFile::from_algebra(self).serialize(s)
    }
}

impl LieAlgebra {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from_algebra(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<LieAlgebra> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
        file.to_algebra()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_rejections() {
        let text = r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[1, 2, [[3, "1/2"]]]]}"#;
        let l = LieAlgebra::from_json(text).unwrap();
        assert_eq!(l.bracket_basis(0, 1), &vec![(2, Rational::new(1, 2))]);
        assert_eq!(LieAlgebra::from_json(&l.to_json()).unwrap(), l);
        let bad = r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[2, 1, [[3, "1"]]]]}"#;
        assert!(matches!(LieAlgebra::from_json(bad), Err(Error::Parse { .. })));
        let bad = r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[1, 4, [[3, "1"]]]]}"#;
        assert!(matches!(LieAlgebra::from_json(bad), Err(Error::Parse { .. })));
        let bad = "{\"dim\": 3,\n \"basis\": [\"x\" \"y\"]}";
        assert!(matches!(LieAlgebra::from_json(bad), Err(Error::Parse { line: 2, .. })));
    }
}
