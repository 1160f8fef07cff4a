use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Poset;
use crate::error::{Error, Result};

/// On-disk poset format: `{"name": .., "elements": [..], "le": [[lower, upper], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetFile {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

impl PosetFile {
    pub fn into_poset(self) -> Result<Poset> {
        Poset::build(&self.name, &self.elements, &self.le)
    }
}

impl Poset {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_poset()
    }

    /// Serializes using the covering pairs only.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            name: self.name().to_string(),
            elements: self.names().to_vec(),
            le: self
                .covers()
                .into_iter()
                .map(|(p, q)| (self.element_name(p).to_string(), self.element_name(q).to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("poset file serializes")
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {:?} {{", self.name());
        let _ = writeln!(out, "  rankdir=BT;");
        for n in self.names() {
            let _ = writeln!(out, "  {n:?};");
        }
        for (p, q) in self.covers() {
            let _ = writeln!(out, "  {:?} -> {:?};", self.element_name(p), self.element_name(q));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{rado_prefix, v3};

    #[test]
    fn json_roundtrip() {
        let text = r#"{"name":"V3","elements":["a","b","c"],"le":[["a","c"],["b","c"]]}"#;
        let p = Poset::from_json(text).unwrap();
        assert_eq!(p, v3());
        let r = rado_prefix(4).unwrap();
        assert_eq!(Poset::from_json(&r.to_json()).unwrap(), r);
        assert!(matches!(Poset::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn dot_uses_covers() {
        let p = Poset::build("c3", &["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(!dot.contains("\"0\" -> \"2\""));
        assert_eq!(v3().to_dot().matches("->").count(), 2);
    }
}
