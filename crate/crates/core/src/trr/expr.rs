use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Whether the invariant is absolute or relative to two fibers with full
/// transverse contact `(1^d)` on each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Absolute,
    Relative,
}

impl Flavor {
    fn tag(self) -> &'static str {
        match self {
            Flavor::Absolute => "abs",
            Flavor::Relative => "rel",
        }
    }
}

/// A genus-`g`, degree-`d` invariant of the genus-zero spin geometry with
/// insertions `tau_s phi^t (F*)`, stored as `(s, t)` pairs sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedExpr {
    degree: u32,
    genus: u32,
    insertions: Vec<(u32, u32)>,
    flavor: Flavor,
}

impl MixedExpr {
    pub fn new(
        degree: u32,
        genus: u32,
        mut insertions: Vec<(u32, u32)>,
        flavor: Flavor,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        insertions.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            degree,
            genus,
            insertions,
            flavor,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn insertions(&self) -> &[(u32, u32)] {
        &self.insertions
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    /// Total descendant weight `sum (s_i + t_i)`.
    pub fn weight(&self) -> u32 {
        self.insertions.iter().map(|(s, t)| s + t).sum()
    }

    /// `sum s_i`, which every recursion step lowers.
    pub fn tau_weight(&self) -> u32 {
        self.insertions.iter().map(|(s, _)| s).sum()
    }

    /// Dimension constraint `sum (s_i + t_i) = d + g - 1`.
    pub fn is_on_shell(&self) -> bool {
        self.weight() + 1 == self.degree + self.genus
    }

    pub fn is_pure_phi(&self) -> bool {
        self.insertions.iter().all(|&(s, _)| s == 0)
    }

    /// Indices of insertions with `s >= 1`.
    pub fn descendant_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.insertions[i].0 > 0)
            .collect()
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        Self {
            flavor,
            ..self.clone()
        }
    }

    pub(crate) fn with_degree(&self, degree: u32) -> Self {
        Self {
            degree,
            ..self.clone()
        }
    }

    /// Copy with insertion `index` replaced by `value`, re-sorted.
    pub(crate) fn replace(&self, index: usize, value: (u32, u32)) -> Self {
        let mut ins = self.insertions.clone();
        ins[index] = value;
        ins.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            insertions: ins,
            ..self.clone()
        }
    }

    pub(crate) fn push(&self, value: (u32, u32)) -> Self {
        let mut ins = self.insertions.clone();
        ins.push(value);
        ins.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            insertions: ins,
            ..self.clone()
        }
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MixedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GW|{}|d={}|g={}|ins=",
            self.flavor.tag(),
            self.degree,
            self.genus
        )?;
        for (i, (s, t)) in self.insertions.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "({s},{t})")?;
        }
        Ok(())
    }
}

impl FromStr for MixedExpr {
    type Err = Error;

    fn from_str(key: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseExpr {
            key: key.to_string(),
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = key.split('|').collect();
        let [head, flavor, d, g, ins] = fields[..] else {
            return Err(bad("expected 5 '|'-separated fields"));
        };
        if head != "GW" {
            return Err(bad("expected prefix GW"));
        }
        let flavor = match flavor {
            "abs" => Flavor::Absolute,
            "rel" => Flavor::Relative,
            _ => return Err(bad("flavor must be abs or rel")),
        };
        let num = |field: &str, name: &str| -> Result<u32> {
            field
                .strip_prefix(name)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(&format!("bad field {name}")))
        };
        let degree = num(d, "d=")?;
        let genus = num(g, "g=")?;
        let ins = ins
            .strip_prefix("ins=")
            .ok_or_else(|| bad("missing ins="))?;
        let mut insertions = Vec::new();
        if !ins.is_empty() {
            for pair in ins.split(';') {
                let inner = pair
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(|| bad("insertions must look like (s,t)"))?;
                let (s, t) = inner
                    .split_once(',')
                    .ok_or_else(|| bad("insertion needs s,t"))?;
                let s = s.parse().map_err(|_| bad("bad s"))?;
                let t = t.parse().map_err(|_| bad("bad t"))?;
                insertions.push((s, t));
            }
        }
        let expr = MixedExpr::new(degree, genus, insertions, flavor)?;
        if expr.to_string() != key {
            return Err(bad("not in canonical form"));
        }
        Ok(expr)
    }
}

/// An opaque pure-`phi` invariant: a [`MixedExpr`] with every `s_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PurePhiSymbol(MixedExpr);

impl PurePhiSymbol {
    pub fn new(expr: MixedExpr) -> Option<Self> {
        expr.is_pure_phi().then_some(Self(expr))
    }

    pub fn expr(&self) -> &MixedExpr {
        &self.0
    }

    /// The `t`-powers, descending.
    pub fn t_powers(&self) -> Vec<u32> {
        self.0.insertions.iter().map(|&(_, t)| t).collect()
    }
}

impl fmt::Display for PurePhiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PurePhiSymbol {
    type Err = Error;

    fn from_str(key: &str) -> Result<Self> {
        let expr: MixedExpr = key.parse()?;
        Self::new(expr).ok_or_else(|| Error::ParseExpr {
            key: key.to_string(),
            reason: "has a tau insertion".into(),
        })
    }
}
