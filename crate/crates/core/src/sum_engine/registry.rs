use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::closed_forms::InvariantKey;
use crate::error::{Error, Result};

/// Values for invariants no closed form determines, keyed by canonical
/// [`InvariantKey`] strings. Read-only during evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    entries: BTreeMap<String, Rational>,
    source_path: Option<PathBuf>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn source_path(&self) -> Option<&Path> {
        self.source_path.as_deref()
    }

    pub fn insert(&mut self, key: &InvariantKey, value: Rational) {
        self.entries.insert(key.canonical(), value);
    }

    pub fn get(&self, key: &InvariantKey) -> Option<&Rational> {
        self.entries.get(&key.canonical())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (InvariantKey, &Rational)> {
        self.entries.iter().map(|(k, v)| {
            (
                k.parse::<InvariantKey>()
                    .expect("registry keys are validated on insert"),
                v,
            )
        })
    }

    /// Parses a JSON object `{key: "p/q"}`. Keys are canonicalized; two
    /// spellings of the same key are rejected.
    pub fn from_json_str(text: &str, origin: &Path) -> Result<Self> {
        let fail = |reason: String| Error::Registry {
            path: origin.to_path_buf(),
            reason,
        };
        let value: Value = serde_json::from_str(text).map_err(|e| fail(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(fail("top level must be a JSON object".into()));
        };
        let mut entries = BTreeMap::new();
        for (raw, v) in map {
            let key: InvariantKey = raw.parse().map_err(|e: Error| fail(e.to_string()))?;
            let s = v
                .as_str()
                .ok_or_else(|| fail(format!("value for {raw} must be a \"p/q\" string")))?;
            let q = parse_rational(s).map_err(|e| fail(format!("{raw}: {e}")))?;
            if entries.insert(key.canonical(), q).is_some() {
                return Err(fail(format!("duplicate key {}", key.canonical())));
            }
        }
        Ok(Self {
            entries,
            source_path: Some(origin.to_path_buf()),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Registry {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::from_json_str(&text, path)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.entries {
            m.insert(k.clone(), Value::String(format_rational(v)));
        }
        Value::Object(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        fs::write(path, text + "\n").map_err(|e| Error::Registry {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::closed_forms::SpinKey;

    #[test]
    fn json_round_trip() {
        let mut r = Registry::new();
        r.insert(
            &InvariantKey::contact_two(SpinKey::genus_zero()),
            rat(-7, 3),
        );
        let text = r.to_json().to_string();
        let back = Registry::from_json_str(&text, Path::new("mem")).unwrap();
        assert_eq!(back.entries, r.entries);
    }

    #[test]
    fn rejects_bad_input() {
        let p = Path::new("mem");
        assert!(Registry::from_json_str("[1]", p).is_err());
        assert!(Registry::from_json_str(r#"{"nope": "1"}"#, p).is_err());
        assert!(
            Registry::from_json_str(r#"{"GT|loc|h=0|p=+|d=2|m1=(2)|m2=-|ins=phi:": 3}"#, p)
                .is_err()
        );
        assert!(Registry::from_json_str(
            r#"{"GT|loc|h=0|p=+|d=2|m1=(2)|m2=-|ins=phi:": "1/0"}"#,
            p
        )
        .is_err());
        let dup = r#"{"GT|F0|d=1|m1=(1)|m2=(1)|ins=phi:1,2": "1",
                      "GT|F0|d=1|m1=(1)|m2=(1)|ins=phi:2,1": "2"}"#;
        assert!(Registry::from_json_str(dup, p).is_err());
    }
}
