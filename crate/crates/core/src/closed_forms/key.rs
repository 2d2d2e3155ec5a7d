use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Parity of a spin curve: `h^0(N) mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `(-1)^p`.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    /// Addition mod 2.
    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Parity::Even => '+',
            Parity::Odd => '-',
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "even" => Ok(Parity::Even),
            "-" | "odd" => Ok(Parity::Odd),
            _ => Err(Error::ParseParity(s.to_string())),
        }
    }
}

/// Genus and parity of a spin curve. `(0, odd)` does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinKey {
    genus: u32,
    parity: Parity,
}

impl SpinKey {
    pub fn new(genus: u32, parity: Parity) -> Result<Self> {
        if genus == 0 && parity == Parity::Odd {
            return Err(Error::OddGenusZero);
        }
        Ok(Self { genus, parity })
    }

    /// The genus zero (even) spin curve.
    pub fn genus_zero() -> Self {
        Self {
            genus: 0,
            parity: Parity::Even,
        }
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    pub fn parity(self) -> Parity {
        self.parity
    }

    pub fn sign(self) -> i64 {
        self.parity.sign()
    }

    /// Every valid key with `genus <= h_max`, genus ascending, even first.
    pub fn sweep(h_max: u32) -> Vec<SpinKey> {
        (0..=h_max)
            .flat_map(|h| [Parity::Even, Parity::Odd].map(|p| SpinKey::new(h, p)))
            .filter_map(Result::ok)
            .collect()
    }
}

impl fmt::Display for SpinKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.genus, self.parity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    /// Local invariants of a spin curve.
    Local(SpinKey),
    /// The ruled surface P^1 x P^1 relative to fibers; the first contact
    /// partition carries point constraints.
    F0,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Contact {
    Absolute,
    OneSided(Partition),
    TwoSided(Partition, Partition),
}

impl Contact {
    pub fn partitions(&self) -> Vec<&Partition> {
        match self {
            Contact::Absolute => vec![],
            Contact::OneSided(m) => vec![m],
            Contact::TwoSided(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InsertionKind {
    /// Cotangent-line descendants `tau_k(F*)`.
    Tau,
    /// Pulled-back relative cotangent classes `phi^k(F*)`.
    Phi,
}

impl InsertionKind {
    fn name(self) -> &'static str {
        match self {
            InsertionKind::Tau => "tau",
            InsertionKind::Phi => "phi",
        }
    }
}

/// Canonical identity of a GT invariant.
///
/// Canonical form: insertion exponents sorted ascending; with no insertions the
/// kind is `Tau` for absolute keys and `Phi` for relative ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantKey {
    target: Target,
    degree: u32,
    contact: Contact,
    insertions: Vec<u32>,
    kind: InsertionKind,
}

impl InvariantKey {
    pub fn new(
        target: Target,
        degree: u32,
        contact: Contact,
        kind: InsertionKind,
        mut insertions: Vec<u32>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        for m in contact.partitions() {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    partition: m.to_string(),
                    found: m.degree(),
                    expected: degree,
                });
            }
        }
        if target == Target::F0 && contact == Contact::Absolute {
            return Err(Error::ParseKey {
                key: format!("F0 degree {degree}"),
                reason: "F0 invariants are relative".into(),
            });
        }
        insertions.sort_unstable();
        let kind = if insertions.is_empty() {
            match contact {
                Contact::Absolute => InsertionKind::Tau,
                _ => InsertionKind::Phi,
            }
        } else {
            kind
        };
        Ok(Self {
            target,
            degree,
            contact,
            insertions,
            kind,
        })
    }

    pub fn absolute(spin: SpinKey, degree: u32) -> Result<Self> {
        Self::new(
            Target::Local(spin),
            degree,
            Contact::Absolute,
            InsertionKind::Tau,
            vec![],
        )
    }

    pub fn one_sided(spin: SpinKey, m: Partition) -> Result<Self> {
        let d = m.degree();
        Self::new(
            Target::Local(spin),
            d,
            Contact::OneSided(m),
            InsertionKind::Phi,
            vec![],
        )
    }

    pub fn two_sided(spin: SpinKey, m1: Partition, m2: Partition) -> Result<Self> {
        let d = m1.degree();
        Self::new(
            Target::Local(spin),
            d,
            Contact::TwoSided(m1, m2),
            InsertionKind::Phi,
            vec![],
        )
    }

    pub fn f0(m1: Partition, m2: Option<Partition>) -> Result<Self> {
        let d = m1.degree();
        let contact = match m2 {
            Some(m2) => Contact::TwoSided(m1, m2),
            None => Contact::OneSided(m1),
        };
        Self::new(Target::F0, d, contact, InsertionKind::Phi, vec![])
    }

    /// The relative invariant `GT_(2)^{loc,h,p}`: degree 2, single contact of order 2.
    pub fn contact_two(spin: SpinKey) -> Self {
        Self::one_sided(spin, Partition::new(vec![2]).expect("(2) is a partition"))
            .expect("(2) has degree 2")
    }

    pub fn with_insertions(self, kind: InsertionKind, insertions: Vec<u32>) -> Result<Self> {
        Self::new(self.target, self.degree, self.contact, kind, insertions)
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn spin(&self) -> Option<SpinKey> {
        match self.target {
            Target::Local(s) => Some(s),
            Target::F0 => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn contact(&self) -> &Contact {
        &self.contact
    }

    pub fn insertions(&self) -> &[u32] {
        &self.insertions
    }

    pub fn kind(&self) -> InsertionKind {
        self.kind
    }

    pub fn is_dimension_zero_shape(&self) -> bool {
        self.insertions.is_empty()
    }

    /// Canonical serialization, used as the symbol identity everywhere.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.target {
            Target::Local(s) => write!(f, "GT|loc|h={}|p={}", s.genus, s.parity)?,
            Target::F0 => write!(f, "GT|F0")?,
        }
        write!(f, "|d={}", self.degree)?;
        let (m1, m2) = match &self.contact {
            Contact::Absolute => ("-".to_string(), "-".to_string()),
            Contact::OneSided(m) => (m.to_string(), "-".to_string()),
            Contact::TwoSided(a, b) => (a.to_string(), b.to_string()),
        };
        let ins: Vec<String> = self.insertions.iter().map(u32::to_string).collect();
        write!(
            f,
            "|m1={m1}|m2={m2}|ins={}:{}",
            self.kind.name(),
            ins.join(",")
        )
    }
}

impl FromStr for InvariantKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseKey {
            key: s.to_string(),
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = s.split('|').collect();
        let (target, rest) = match fields.as_slice() {
            ["GT", "loc", h, p, rest @ ..] => {
                let h = h
                    .strip_prefix("h=")
                    .and_then(|v| v.parse::<u32>().ok())
                    .ok_or_else(|| bad("expected h=<genus>"))?;
                let p = p
                    .strip_prefix("p=")
                    .ok_or_else(|| bad("expected p=<+/->"))?
                    .parse::<Parity>()
                    .map_err(|_| bad("parity must be + or -"))?;
                let spin = SpinKey::new(h, p).map_err(|e| bad(&e.to_string()))?;
                (Target::Local(spin), rest)
            }
            ["GT", "F0", rest @ ..] => (Target::F0, rest),
            _ => return Err(bad("expected prefix GT|loc|h=..|p=.. or GT|F0")),
        };
        let [d, m1, m2, ins] = rest else {
            return Err(bad("expected fields d, m1, m2, ins"));
        };
        let degree = d
            .strip_prefix("d=")
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| bad("expected d=<degree>"))?;
        let part = |field: &str, name: &str| -> Result<Option<Partition>> {
            let v = field
                .strip_prefix(name)
                .ok_or_else(|| bad(&format!("expected {name}<partition or ->")))?;
            if v == "-" {
                Ok(None)
            } else {
                v.parse::<Partition>()
                    .map(Some)
                    .map_err(|e| bad(&e.to_string()))
            }
        };
        let contact = match (part(m1, "m1=")?, part(m2, "m2=")?) {
            (None, None) => Contact::Absolute,
            (Some(a), None) => Contact::OneSided(a),
            (Some(a), Some(b)) => Contact::TwoSided(a, b),
            (None, Some(_)) => return Err(bad("m2 given without m1")),
        };
        let (kind, list) = ins
            .strip_prefix("ins=")
            .and_then(|v| v.split_once(':'))
            .ok_or_else(|| bad("expected ins=<tau|phi>:<k1,k2,..>"))?;
        let kind = match kind {
            "tau" => InsertionKind::Tau,
            "phi" => InsertionKind::Phi,
            _ => return Err(bad("insertion kind must be tau or phi")),
        };
        let insertions = if list.is_empty() {
            vec![]
        } else {
            list.split(',')
                .map(|k| k.parse::<u32>().map_err(|_| bad("bad insertion exponent")))
                .collect::<Result<Vec<_>>>()?
        };
        InvariantKey::new(target, degree, contact, kind, insertions)
            .map_err(|e| bad(&e.to_string()))
    }
}
