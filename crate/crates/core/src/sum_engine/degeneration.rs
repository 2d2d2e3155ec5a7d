//! Degree-two degenerations of spin curves: the separating split, the
//! nonseparating descent, the local `F1` contributions, and the genus
//! reduction of `GT_(2)^{loc,h,p}` to the genus-zero symbol.

use num_traits::{One, Zero};

use super::trace::ReductionTrace;
use crate::algebra::{pow2, rat, Rational, SymbolicCombo};
use crate::closed_forms::{closed_value, Contact, InvariantKey, Parity, SpinKey, Target};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

/// Canonical symbol of `GT_(2)^{loc,h,p}`.
pub fn contact_two_symbol(s: SpinKey) -> String {
    InvariantKey::contact_two(s).canonical()
}

/// Canonical symbol of `GT_(2)^{loc,0,+}`.
pub fn genus_zero_symbol() -> String {
    contact_two_symbol(SpinKey::genus_zero())
}

fn gt2(s: SpinKey) -> SymbolicCombo {
    SymbolicCombo::symbol(contact_two_symbol(s))
}

/// `(-1)^p 2^h`.
fn signed_pow(s: SpinKey) -> Rational {
    rat(s.sign(), 1) * pow2(s.genus() as i64)
}

/// Spin key of a `GT_(2)` atom, if `atom` is one.
fn contact_two_spin(atom: &str) -> Option<SpinKey> {
    let key: InvariantKey = atom.parse().ok()?;
    match (key.target(), key.contact()) {
        (Target::Local(s), Contact::OneSided(m))
            if m.parts() == [2] && key.insertions().is_empty() =>
        {
            Some(s)
        }
        _ => None,
    }
}

/// Right-hand side of the separating split `h = h1 + h2`, `p = p1 + p2`:
///
/// `(-1)^{p1} 2^{h1} GT_(2)^{h2,p2} + (-1)^{p2} 2^{h2} GT_(2)^{h1,p1} - (-1)^p 2^h GT_(2)^{0,+}`.
pub fn separating_split(k1: SpinKey, k2: SpinKey) -> Result<SymbolicCombo> {
    let total = SpinKey::new(k1.genus() + k2.genus(), k1.parity().plus(k2.parity()))?;
    Ok(gt2(k2)
        .scale(&signed_pow(k1))
        .add(&gt2(k1).scale(&signed_pow(k2)))
        .sub(&gt2(SpinKey::genus_zero()).scale(&signed_pow(total))))
}

/// Right-hand side of the nonseparating descent, valid for `h >= 2` or
/// `(h, p) = (1, +)`:
///
/// `4 GT_(2)^{h-1,p} - (-1)^p 2^h GT_(2)^{0,+}`.
pub fn nonseparating_descent(s: SpinKey) -> Result<SymbolicCombo> {
    let ok = s.genus() >= 2 || (s.genus() == 1 && s.parity() == Parity::Even);
    if !ok {
        return Err(Error::HypothesisViolation(format!(
            "nonseparating descent needs h >= 2 or (h,p) = (1,+), got ({s})"
        )));
    }
    let lower = SpinKey::new(s.genus() - 1, s.parity())?;
    Ok(gt2(lower)
        .scale(&rat(4, 1))
        .sub(&gt2(SpinKey::genus_zero()).scale(&signed_pow(s))))
}

/// Local contribution of the zero section of `F1` with contact `(2)` along the
/// middle fiber and contacts `m1`, `m2` along the outer fibers.
pub fn f1_contribution(m1: &Partition, m2: &Partition) -> Result<SymbolicCombo> {
    for m in [m1, m2] {
        if m.degree() != 2 {
            return Err(Error::NotDegreeTwo(m.to_string()));
        }
    }
    Ok(match (m1.is_all_ones(), m2.is_all_ones()) {
        (false, false) => SymbolicCombo::zero(),
        (true, false) | (false, true) => SymbolicCombo::constant(Rational::one()),
        (true, true) => gt2(SpinKey::genus_zero()).scale(&rat(-4, 1)),
    })
}

fn one_sided_local(s: SpinKey, m: &Partition) -> Result<SymbolicCombo> {
    let key = InvariantKey::one_sided(s, m.clone())?;
    Ok(match closed_value(&key) {
        Some(v) => SymbolicCombo::constant(v),
        None => SymbolicCombo::symbol(key.canonical()),
    })
}

/// The separating split evaluated from its defining partition sum
/// `sum_{m1,m2 |- 2} |m1||m2|/(m1! m2!) GT_{m1}^{h1,p1} [F1 contribution] GT_{m2}^{h2,p2}`.
pub fn separating_split_from_sum(k1: SpinKey, k2: SpinKey) -> Result<SymbolicCombo> {
    SpinKey::new(k1.genus() + k2.genus(), k1.parity().plus(k2.parity()))?;
    let parts = partitions_of(2)?;
    let mut out = SymbolicCombo::zero();
    for m1 in &parts {
        for m2 in &parts {
            let weight = Rational::new(m1.product() * m2.product(), m1.aut() * m2.aut());
            let term = one_sided_local(k1, m1)?
                .mul(&f1_contribution(m1, m2)?)
                .mul(&one_sided_local(k2, m2)?);
            out = out.add(&term.scale(&weight));
        }
    }
    Ok(out)
}

/// Solves `relation = 0` for `atom`, which must occur linearly.
fn solve_for(relation: &SymbolicCombo, atom: &str) -> Option<SymbolicCombo> {
    let c = relation.coeff_of(atom);
    if c.is_zero() {
        return None;
    }
    let rest = relation.sub(&SymbolicCombo::symbol(atom).scale(&c));
    Some(rest.scale(&(-Rational::one() / c)))
}

/// Rewrite rule for `GT_(2)^{h,p}`, `h >= 1`, built from the split and descent
/// formulas.
fn genus_rule(s: SpinKey) -> Result<(String, SymbolicCombo)> {
    let one_even = SpinKey::new(1, Parity::Even)?;
    let one_odd = SpinKey::new(1, Parity::Odd)?;
    if s.genus() >= 2 {
        let lower = SpinKey::new(s.genus() - 1, s.parity())?;
        let rhs = separating_split(lower, one_even)?;
        return Ok((format!("separating split ({lower}) + (1,+)"), rhs));
    }
    if s == one_odd {
        // both splits of genus 2 into two genus-1 halves give GT_(2)^{2,+}
        let relation =
            separating_split(one_even, one_even)?.sub(&separating_split(one_odd, one_odd)?);
        let rhs = solve_for(&relation, &contact_two_symbol(one_odd))
            .expect("odd genus-one symbol occurs in the relation");
        return Ok((
            "genus-one parity flip from (1,+)+(1,+) = (1,-)+(1,-)".into(),
            rhs,
        ));
    }
    Ok((
        "nonseparating descent at (1,+)".into(),
        nonseparating_descent(one_even)?,
    ))
}

/// Coefficient `c` with `GT_(2)^{h,p} = c GT_(2)^{0,+}`, obtained by
/// replaying the split/descent rewrites down to genus zero.
pub fn reduce_genus_zero(s: SpinKey) -> (Rational, ReductionTrace) {
    let x0 = genus_zero_symbol();
    let mut trace = ReductionTrace::new();
    let mut cur = gt2(s);
    if s == SpinKey::genus_zero() {
        trace.push("genus-zero base", cur.clone(), cur.clone());
        return (Rational::one(), trace);
    }
    loop {
        let next_atom = cur
            .atoms()
            .into_iter()
            .filter(|a| *a != x0)
            .filter_map(|a| contact_two_spin(&a).map(|k| (k, a)))
            .max_by_key(|(k, _)| (k.genus(), k.parity() == Parity::Odd));
        let Some((spin, atom)) = next_atom else { break };
        let (rule, rhs) = genus_rule(spin).expect("genus >= 1 keys have a rule");
        let next = cur.substitute(&atom, &rhs);
        trace.push(rule, cur, next.clone());
        cur = next;
    }
    debug_assert!(cur.atoms().iter().all(|a| *a == x0));
    (cur.coeff_of(&x0), trace)
}

/// Replaces every `GT_(2)^{h,p}` atom by its genus-zero reduction.
pub fn substitute_genus_zero(combo: &SymbolicCombo) -> SymbolicCombo {
    let x0 = genus_zero_symbol();
    let mut out = combo.clone();
    for atom in combo.atoms() {
        if atom == x0 {
            continue;
        }
        if let Some(s) = contact_two_spin(&atom) {
            let (c, _) = reduce_genus_zero(s);
            out = out.substitute(&atom, &SymbolicCombo::symbol(x0.clone()).scale(&c));
        }
    }
    out
}
