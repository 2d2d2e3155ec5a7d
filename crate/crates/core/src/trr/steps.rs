//! Single rewriting steps: the absolute and relative topological recursion
//! at one insertion, and the divisor axiom for plain `F*` insertions.

use num_bigint::BigInt;
use num_traits::One;

use super::base::{base_absolute, base_relative};
use super::expr::{Flavor, MixedExpr};
use crate::algebra::{binomial, Rational, SymbolicCombo};
use crate::error::{Error, Result};

fn check_step(e: &MixedExpr, j: usize, flavor: Flavor) -> Result<u32> {
    if e.flavor() != flavor {
        return Err(Error::FlavorMismatch(e.canonical()));
    }
    if e.len() < 3 {
        return Err(Error::TooFewInsertions(e.len()));
    }
    let Some(&(s, _)) = e.insertions().get(j) else {
        return Err(Error::BadIndex {
            index: j,
            len: e.len(),
        });
    };
    if s == 0 {
        return Err(Error::NoDescendant { index: j });
    }
    Ok(s)
}

/// Shift `(s_j, t_j) -> (s_j - 1, t_j + 1)` plus, when `0 < s_j < d`, the
/// correction `coeff * [degree d - s_j, insertion j -> (0, t_j)]`.
fn step(e: &MixedExpr, j: usize, correction: impl Fn(u32, u32) -> Rational) -> SymbolicCombo {
    let (s, t) = e.insertions()[j];
    let mut out = SymbolicCombo::symbol(e.replace(j, (s - 1, t + 1)).canonical());
    let d = e.degree();
    if s < d {
        let lower = e.with_degree(d - s).replace(j, (0, t));
        out = out.add(&SymbolicCombo::symbol(lower.canonical()).scale(&correction(d, s)));
    }
    out
}

/// Absolute recursion at insertion `j`; the correction coefficient is
/// `-(-1)^{k-1}/k!` with `k = s_j`.
pub fn trr_absolute_step(e: &MixedExpr, j: usize) -> Result<SymbolicCombo> {
    check_step(e, j, Flavor::Absolute)?;
    Ok(step(e, j, |_, k| -base_absolute(k)))
}

/// Relative recursion at insertion `j`; the correction coefficient is
/// `-(-1)^{k-1} k! C(d,k)^2` with `k = s_j`.
pub fn trr_relative_step(e: &MixedExpr, j: usize) -> Result<SymbolicCombo> {
    check_step(e, j, Flavor::Relative)?;
    Ok(step(e, j, |d, k| {
        let c = Rational::from_integer(binomial(d, k));
        -base_relative(k) * &c * &c
    }))
}

/// The recursion step matching the flavor of `e`.
pub fn trr_step(e: &MixedExpr, j: usize) -> Result<SymbolicCombo> {
    match e.flavor() {
        Flavor::Absolute => trr_absolute_step(e, j),
        Flavor::Relative => trr_relative_step(e, j),
    }
}

/// Appends a plain `F*` insertion: `value(e') = d * value(e)`.
pub fn append_divisor(e: &MixedExpr) -> (Rational, MixedExpr) {
    (
        Rational::from_integer(BigInt::from(e.degree())),
        e.push((0, 0)),
    )
}

/// Removes one plain `F*` insertion: `value(e') = value(e) / d`.
pub fn remove_divisor(e: &MixedExpr) -> Result<(Rational, MixedExpr)> {
    let j = e
        .insertions()
        .iter()
        .rposition(|&p| p == (0, 0))
        .ok_or(Error::NoPlainInsertion)?;
    let mut ins = e.insertions().to_vec();
    ins.remove(j);
    let reduced = MixedExpr::new(e.degree(), e.genus(), ins, e.flavor())?;
    Ok((
        Rational::one() / Rational::from_integer(BigInt::from(e.degree())),
        reduced,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn expr(d: u32, ins: &[(u32, u32)], flavor: Flavor) -> MixedExpr {
        MixedExpr::new(d, 0, ins.to_vec(), flavor).unwrap()
    }

    fn correction_coeff(c: &SymbolicCombo, e: &MixedExpr, j: usize) -> Option<Rational> {
        let (s, t) = e.insertions()[j];
        if s >= e.degree() {
            return None;
        }
        let lower = e.with_degree(e.degree() - s).replace(j, (0, t));
        Some(c.coeff_of(&lower.canonical()))
    }

    #[test]
    fn absolute_examples() {
        let e = expr(2, &[(1, 0), (0, 0), (0, 0)], Flavor::Absolute);
        let c = trr_absolute_step(&e, 0).unwrap();
        assert_eq!(
            c.coeff_of("GW|abs|d=2|g=0|ins=(0,1);(0,0);(0,0)"),
            rat(1, 1)
        );
        assert_eq!(
            c.coeff_of("GW|abs|d=1|g=0|ins=(0,0);(0,0);(0,0)"),
            rat(-1, 1)
        );
        assert_eq!(c.len(), 2);

        let e = expr(2, &[(3, 0), (0, 0), (0, 0)], Flavor::Absolute);
        assert_eq!(trr_absolute_step(&e, 0).unwrap().len(), 1);

        let e = expr(3, &[(2, 1), (0, 0), (0, 0)], Flavor::Absolute);
        let c = trr_absolute_step(&e, 0).unwrap();
        assert_eq!(correction_coeff(&c, &e, 0), Some(rat(1, 2)));
    }

    #[test]
    fn relative_examples() {
        let e = expr(2, &[(1, 0), (0, 0), (0, 0)], Flavor::Relative);
        let c = trr_relative_step(&e, 0).unwrap();
        assert_eq!(correction_coeff(&c, &e, 0), Some(rat(-4, 1)));

        let e = expr(3, &[(2, 0), (0, 0), (0, 0)], Flavor::Relative);
        let c = trr_relative_step(&e, 0).unwrap();
        assert_eq!(correction_coeff(&c, &e, 0), Some(rat(18, 1)));

        let e = expr(2, &[(2, 0), (0, 0), (0, 0)], Flavor::Relative);
        assert_eq!(trr_relative_step(&e, 0).unwrap().len(), 1);
    }

    #[test]
    fn no_correction_when_s_reaches_degree() {
        for d in 1..=5 {
            for s in d..=6 {
                for flavor in [Flavor::Absolute, Flavor::Relative] {
                    let e = expr(d, &[(s, 0), (0, 1), (0, 0)], flavor);
                    let c = trr_step(&e, 0).unwrap();
                    assert_eq!(c.len(), 1, "d={d} s={s}");
                }
            }
        }
    }

    #[test]
    fn step_errors() {
        let short = expr(2, &[(1, 0), (0, 0)], Flavor::Absolute);
        assert_eq!(
            trr_absolute_step(&short, 0),
            Err(Error::TooFewInsertions(2))
        );
        let e = expr(2, &[(1, 0), (0, 0), (0, 0)], Flavor::Absolute);
        assert_eq!(
            trr_absolute_step(&e, 1),
            Err(Error::NoDescendant { index: 1 })
        );
        assert_eq!(
            trr_absolute_step(&e, 3),
            Err(Error::BadIndex { index: 3, len: 3 })
        );
        assert!(matches!(
            trr_relative_step(&e, 0),
            Err(Error::FlavorMismatch(_))
        ));
    }

    #[test]
    fn divisor_factors() {
        let e = expr(2, &[(1, 0)], Flavor::Relative);
        let (f1, e1) = append_divisor(&e);
        let (f2, e2) = append_divisor(&e1);
        assert_eq!(f1 * f2, rat(4, 1));
        assert_eq!(e2.insertions(), &[(1, 0), (0, 0), (0, 0)]);
        let (g, back) = remove_divisor(&e2).unwrap();
        assert_eq!((g, back), (rat(1, 2), e1));

        let one = expr(1, &[(0, 0)], Flavor::Absolute);
        assert_eq!(append_divisor(&one).0, rat(1, 1));

        let k = 4;
        let e = expr(k, &[(k - 1, 0), (0, 0)], Flavor::Absolute);
        assert_eq!(append_divisor(&e).0, rat(k as i64, 1));

        let descended = expr(2, &[(1, 0), (0, 1)], Flavor::Absolute);
        assert_eq!(remove_divisor(&descended), Err(Error::NoPlainInsertion));
    }
}
