use num_traits::{One, Zero};

use super::key::{Contact, InsertionKind, InvariantKey, SpinKey, Target};
use crate::algebra::{factorial, pow2, rat, Rational};
use crate::error::{Error, Result};

fn sign(s: SpinKey) -> Rational {
    rat(s.sign(), 1)
}

fn check_low_degree(d: u32) -> Result<()> {
    match d {
        1 | 2 => Ok(()),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// Dimension-zero connected local invariant `GW_d^{loc,h,p}`, d = 1, 2.
pub fn gw_dim0(d: u32, s: SpinKey) -> Result<Rational> {
    check_low_degree(d)?;
    Ok(match d {
        1 => sign(s),
        _ => (sign(s) * pow2(s.genus() as i64) - Rational::one()) / rat(2, 1),
    })
}

/// Dimension-zero local invariant `GT_d^{loc,h,p}`, d = 1, 2.
pub fn gt_dim0(d: u32, s: SpinKey) -> Result<Rational> {
    check_low_degree(d)?;
    Ok(match d {
        1 => sign(s),
        _ => sign(s) * pow2(s.genus() as i64 - 1),
    })
}

/// `GT_d^{loc,h,p}(prod tau_{k_i}(F*))` for d = 1, 2.
///
/// The empty insertion list gives the empty product, so the d = 2 prefactor
/// is `(-1)^p 2^{h-1}`.
pub fn mp_descendant(d: u32, s: SpinKey, ks: &[u32]) -> Result<Rational> {
    check_low_degree(d)?;
    let mut acc = sign(s);
    if d == 2 {
        acc *= pow2(s.genus() as i64 + ks.len() as i64 - 1);
    }
    for &k in ks {
        let ratio = Rational::new(factorial(k), factorial(2 * k + 1));
        let mag = pow2(k as i64);
        let minus = if k % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        // (-2)^{-k} for d = 1, (-2)^{k} for d = 2
        let power = if d == 1 { minus / mag } else { minus * mag };
        acc *= ratio * power;
    }
    Ok(acc)
}

/// Dimension-zero relative invariants of `F0` with all contacts `(1^d)`:
/// one-sided value 1, two-sided value `d!`.
pub fn f0_relative(d: u32, two_sided: bool) -> Result<Rational> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(if two_sided {
        Rational::from_integer(factorial(d))
    } else {
        Rational::one()
    })
}

/// Rewrites a dimension-zero local relative key as `factor * value(reduced)`.
///
/// * `((1^d),(1^d))` -> `(d!)^2 * GT_d`
/// * `(1^d)` -> `d! * GT_d`
/// * `(m,(1^d))` or `((1^d),m)` -> `d! * GT_m`
/// * a one-sided `m != (1^d)` is already reduced: `(1, key)`
pub fn normalize_relative(key: &InvariantKey) -> Result<(Rational, InvariantKey)> {
    let not_covered = || Error::NotNormalizable(key.to_string());
    let Target::Local(spin) = key.target() else {
        return Err(not_covered());
    };
    if !key.insertions().is_empty() {
        return Err(not_covered());
    }
    let d = key.degree();
    let d_fact = Rational::from_integer(factorial(d));
    match key.contact() {
        Contact::Absolute => Err(not_covered()),
        Contact::OneSided(m) if m.is_all_ones() => Ok((d_fact, InvariantKey::absolute(spin, d)?)),
        Contact::OneSided(_) => Ok((Rational::one(), key.clone())),
        Contact::TwoSided(a, b) => match (a.is_all_ones(), b.is_all_ones()) {
            (true, true) => Ok((&d_fact * &d_fact, InvariantKey::absolute(spin, d)?)),
            (true, false) => Ok((d_fact, InvariantKey::one_sided(spin, b.clone())?)),
            (false, true) => Ok((d_fact, InvariantKey::one_sided(spin, a.clone())?)),
            (false, false) => Err(not_covered()),
        },
    }
}

/// Euler characteristic forced by the dimension constraint of `key`.
pub fn dimension_chi(key: &InvariantKey) -> i64 {
    let d = key.degree() as i64;
    let weight: i64 = key.insertions().iter().map(|&k| k as i64).sum();
    match key.target() {
        Target::Local(s) => {
            let h = s.genus() as i64;
            let shift: i64 = key
                .contact()
                .partitions()
                .iter()
                .map(|m| m.len() as i64 - d)
                .sum();
            2 * (d * (1 - h) + shift - weight)
        }
        Target::F0 => match key.contact() {
            Contact::TwoSided(_, m2) => 2 * (m2.len() as i64 - weight),
            _ => 2 * (d - weight),
        },
    }
}

/// Value of `key` when a closed form determines it, else `None`.
///
/// Covers local dimension-zero and descendant keys of degree 1, 2, local
/// relative keys that normalize to those, and dimension-zero F0 keys whose
/// second contact is `(1^d)`.
pub fn closed_value(key: &InvariantKey) -> Option<Rational> {
    let d = key.degree();
    match (key.target(), key.contact()) {
        (Target::Local(s), Contact::Absolute) => match key.kind() {
            InsertionKind::Tau => mp_descendant(d, s, key.insertions()).ok(),
            InsertionKind::Phi => None,
        },
        (Target::Local(_), _) => {
            let (factor, reduced) = normalize_relative(key).ok()?;
            if &reduced == key {
                return None;
            }
            closed_value(&reduced).map(|v| factor * v)
        }
        (Target::F0, contact) => {
            if !key.insertions().is_empty() {
                return None;
            }
            match contact {
                Contact::OneSided(m) if m.is_all_ones() => f0_relative(d, false).ok(),
                Contact::TwoSided(m1, m2) if m2.is_all_ones() => {
                    if m1.is_all_ones() {
                        f0_relative(d, true).ok()
                    } else {
                        // only (1^d) survives the dimension count
                        Some(Rational::zero())
                    }
                }
                _ => None,
            }
        }
    }
}

/// Display name for a symbol atom: invariant keys in subscript notation,
/// anything else verbatim.
pub fn pretty_symbol(atom: &str) -> String {
    let Ok(key) = atom.parse::<InvariantKey>() else {
        return atom.to_string();
    };
    let sub = match key.contact() {
        Contact::Absolute => key.degree().to_string(),
        Contact::OneSided(m) => m.to_string(),
        Contact::TwoSided(a, b) => format!("{a},{b}"),
    };
    let mut out = match key.target() {
        Target::Local(s) => format!("GT_{sub}^{{loc,{},{}}}", s.genus(), s.parity()),
        Target::F0 => format!("GT^{{F0}}_{sub}"),
    };
    if !key.insertions().is_empty() {
        let ins: Vec<String> = key
            .insertions()
            .iter()
            .map(|k| match key.kind() {
                InsertionKind::Tau => format!("tau_{k}"),
                InsertionKind::Phi => format!("phi^{k}"),
            })
            .collect();
        out.push_str(&format!("({})", ins.join(" ")));
    }
    out
}
