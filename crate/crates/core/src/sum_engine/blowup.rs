//! Sum formula for the degeneration of `P_h` by blow-up into `P_h` and `F0`:
//!
//! `GT_d(prod tau_{k_i}) = 1/(d!)^2 sum_{m |- d} |m|/m! GT_{(1^d),m}(phi^{k_1..k_n1}) GT^{F0}_{m,(1^d)}(phi^{k_n1+1..})`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::registry::Registry;
use crate::algebra::{factorial, Rational, SymbolicCombo};
use crate::closed_forms::{closed_value, normalize_relative, InsertionKind, InvariantKey, SpinKey};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

struct Term {
    weight: Rational,
    local: InvariantKey,
    f0: InvariantKey,
}

fn terms(d: u32, s: SpinKey, ks: &[u32], split: (usize, usize)) -> Result<Vec<Term>> {
    let (n1, n2) = split;
    if n1 + n2 != ks.len() {
        return Err(Error::BadSplit {
            len: ks.len(),
            n1,
            n2,
        });
    }
    let ones = Partition::ones(d)?;
    let d_fact = factorial(d);
    let norm = Rational::new(BigInt::one(), &d_fact * &d_fact);
    partitions_of(d)?
        .into_iter()
        .map(|m| {
            let weight = &norm * Rational::new(m.product(), m.aut());
            let local = InvariantKey::two_sided(s, ones.clone(), m.clone())?
                .with_insertions(InsertionKind::Phi, ks[..n1].to_vec())?;
            let f0 = InvariantKey::f0(m, Some(ones.clone()))?
                .with_insertions(InsertionKind::Phi, ks[n1..].to_vec())?;
            Ok(Term { weight, local, f0 })
        })
        .collect()
}

/// A factor as a combination: its closed value, or its normalized opaque
/// symbol, or the key itself as an opaque symbol.
fn factor_combo(key: &InvariantKey) -> SymbolicCombo {
    if let Some(v) = closed_value(key) {
        return SymbolicCombo::constant(v);
    }
    match normalize_relative(key) {
        Ok((c, reduced)) if &reduced != key => factor_combo(&reduced).scale(&c),
        _ => SymbolicCombo::symbol(key.canonical()),
    }
}

/// Closed forms first, then the registry under the key itself, then the
/// registry under its normalized form.
fn factor_value(key: &InvariantKey, reg: &Registry) -> Result<Rational> {
    if let Some(v) = closed_value(key) {
        return Ok(v);
    }
    if let Some(v) = reg.get(key) {
        return Ok(v.clone());
    }
    if let Ok((c, reduced)) = normalize_relative(key) {
        if &reduced != key {
            if let Some(v) = reg.get(&reduced) {
                return Ok(c * v);
            }
        }
    }
    Err(Error::MissingRegistryEntry(key.canonical()))
}

/// Right-hand side of the blow-up sum with undetermined factors kept as
/// opaque symbols.
pub fn blowup_sum_symbolic(
    d: u32,
    s: SpinKey,
    ks: &[u32],
    split: (usize, usize),
) -> Result<SymbolicCombo> {
    let mut out = SymbolicCombo::zero();
    for t in terms(d, s, ks, split)? {
        let f0 = factor_combo(&t.f0);
        if f0.is_zero() {
            continue;
        }
        out = out.add(&factor_combo(&t.local).mul(&f0).scale(&t.weight));
    }
    Ok(out)
}

/// Numeric right-hand side of the blow-up sum. Terms whose `F0` factor
/// vanishes are skipped without consulting the local factor.
pub fn blowup_sum_rhs(
    d: u32,
    s: SpinKey,
    ks: &[u32],
    split: (usize, usize),
    reg: &Registry,
) -> Result<Rational> {
    let mut acc = Rational::zero();
    for t in terms(d, s, ks, split)? {
        let f0 = factor_value(&t.f0, reg)?;
        if f0.is_zero() {
            continue;
        }
        acc += t.weight * factor_value(&t.local, reg)? * f0;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::closed_forms::{gt_dim0, Parity};

    #[test]
    fn dimension_zero_needs_no_registry() {
        let reg = Registry::new();
        for s in SpinKey::sweep(6) {
            for d in [1, 2] {
                assert_eq!(
                    blowup_sum_rhs(d, s, &[], (0, 0), &reg).unwrap(),
                    gt_dim0(d, s).unwrap()
                );
                let sym = blowup_sum_symbolic(d, s, &[], (0, 0)).unwrap();
                assert_eq!(sym.as_constant(), Some(gt_dim0(d, s).unwrap()));
            }
        }
    }

    #[test]
    fn degree_one_with_f0_descendant_from_registry() {
        let a = rat(3, 7);
        let f0 = InvariantKey::f0(
            Partition::ones(1).unwrap(),
            Some(Partition::ones(1).unwrap()),
        )
        .unwrap()
        .with_insertions(InsertionKind::Phi, vec![2])
        .unwrap();
        let mut reg = Registry::new();
        reg.insert(&f0, a.clone());
        for s in SpinKey::sweep(4) {
            let v = blowup_sum_rhs(1, s, &[2], (0, 1), &reg).unwrap();
            assert_eq!(v, rat(s.sign(), 1) * &a);
        }
    }

    #[test]
    fn missing_entry_names_the_key() {
        let s = SpinKey::new(1, Parity::Odd).unwrap();
        let err = blowup_sum_rhs(1, s, &[1], (1, 0), &Registry::new()).unwrap_err();
        match err {
            // the F0 factor is closed (value 1); the local one is missing
            Error::MissingRegistryEntry(k) => {
                assert_eq!(k, "GT|loc|h=1|p=-|d=1|m1=(1)|m2=(1)|ins=phi:1")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_split() {
        let s = SpinKey::genus_zero();
        assert!(matches!(
            blowup_sum_rhs(1, s, &[1, 2], (1, 0), &Registry::new()),
            Err(Error::BadSplit { .. })
        ));
    }
}
