//! Equivalence of descendant and relative invariants: after full reduction,
//! `1/(d!)^2 GW^{rel}_d = GW^{abs}_d` once every relative pure-`phi` symbol
//! of degree `d'` is identified with `(d'!)^2` times its absolute counterpart.

use num_traits::One;

use super::expr::{Flavor, MixedExpr, PurePhiSymbol};
use super::reduce::Reducer;
use crate::algebra::{factorial, Rational, SymbolicCombo};
use crate::error::Result;
use crate::sum_engine::ReductionTrace;

#[derive(Clone, Debug, PartialEq)]
pub struct RelEquivalence {
    pub holds: bool,
    pub absolute: SymbolicCombo,
    /// Relative reduction after identification and the `1/(d!)^2` scaling.
    pub relative: SymbolicCombo,
    pub trace: ReductionTrace,
}

fn fact_sq(d: u32) -> Rational {
    let f = Rational::from_integer(factorial(d));
    &f * &f
}

/// Rewrites each relative pure-`phi` symbol `Y[d', g, t]` as `(d'!)^2 X[d', g, t]`.
pub fn identify_relative(combo: &SymbolicCombo) -> Result<SymbolicCombo> {
    let mut out = SymbolicCombo::zero();
    for (sym, c) in combo.iter() {
        let y: PurePhiSymbol = sym.factors()[0].parse()?;
        let x = y.expr().with_flavor(Flavor::Absolute);
        out = out.add(&SymbolicCombo::symbol(x.canonical()).scale(&(c * fact_sq(x.degree()))));
    }
    Ok(out)
}

pub fn verify_rel_equivalence(d: u32, g: u32, insertions: &[(u32, u32)]) -> Result<RelEquivalence> {
    verify_rel_equivalence_with(&Reducer::default(), d, g, insertions)
}

/// As [`verify_rel_equivalence`], sharing the memo of `reducer`.
pub fn verify_rel_equivalence_with(
    reducer: &Reducer,
    d: u32,
    g: u32,
    insertions: &[(u32, u32)],
) -> Result<RelEquivalence> {
    let abs = MixedExpr::new(d, g, insertions.to_vec(), Flavor::Absolute)?;
    let rel = abs.with_flavor(Flavor::Relative);
    let absolute = reducer.reduce(&abs)?;
    let reduced = reducer.reduce(&rel)?;
    let identified = identify_relative(&reduced)?;
    let relative = identified.scale(&(Rational::one() / fact_sq(d)));

    let mut trace = ReductionTrace::new();
    trace.push(
        "relative recursion to pure phi",
        SymbolicCombo::symbol(rel.canonical()),
        reduced.clone(),
    );
    trace.push(
        "identify relative with (d'!)^2 absolute",
        reduced,
        identified.clone(),
    );
    trace.push("divide by (d!)^2", identified, relative.clone());

    Ok(RelEquivalence {
        holds: relative == absolute,
        absolute,
        relative,
        trace,
    })
}

/// Multisets of `n` insertions `(s, t)` of total weight exactly `weight`,
/// each listed in descending order.
pub fn insertion_multisets(n: usize, weight: u32) -> Vec<Vec<(u32, u32)>> {
    let mut pairs: Vec<(u32, u32)> = (0..=weight)
        .flat_map(|s| (0..=weight - s).map(move |t| (s, t)))
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fill(&pairs, 0, n, weight, &mut cur, &mut out);
    out
}

fn fill(
    pairs: &[(u32, u32)],
    from: usize,
    n: usize,
    rest: u32,
    cur: &mut Vec<(u32, u32)>,
    out: &mut Vec<Vec<(u32, u32)>>,
) {
    if cur.len() == n {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for (i, &(s, t)) in pairs.iter().enumerate().skip(from) {
        if s + t <= rest {
            cur.push((s, t));
            fill(pairs, i, n, rest - s - t, cur, out);
            cur.pop();
        }
    }
}

/// Every on-shell absolute expression with `d <= d_max`, `n` in `ns` and
/// weight `d + g - 1 <= w_max`.
pub fn on_shell_exprs(d_max: u32, ns: &[usize], w_max: u32) -> Vec<MixedExpr> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        for w in d.saturating_sub(1)..=w_max {
            let g = w + 1 - d;
            for &n in ns {
                for ins in insertion_multisets(n, w) {
                    out.push(MixedExpr::new(d, g, ins, Flavor::Absolute).expect("d >= 1"));
                }
            }
        }
    }
    out
}

/// Every genus-zero expression of either flavor with `d <= d_max`, `n` in
/// `ns` and weight at most `w_max`.
pub fn bounded_exprs(d_max: u32, ns: &[usize], w_max: u32) -> Vec<MixedExpr> {
    let mut out = Vec::new();
    for flavor in [Flavor::Absolute, Flavor::Relative] {
        for d in 1..=d_max {
            for w in 0..=w_max {
                for &n in ns {
                    for ins in insertion_multisets(n, w) {
                        out.push(MixedExpr::new(d, 0, ins, flavor).expect("d >= 1"));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn degree_two_one_step() {
        let r = verify_rel_equivalence(2, 0, &[(1, 0), (0, 0), (0, 0)]).unwrap();
        assert!(r.holds);
        assert_eq!(
            r.absolute.coeff_of("GW|abs|d=1|g=0|ins=(0,0);(0,0);(0,0)"),
            rat(-1, 1)
        );
        assert_eq!(r.trace.len(), 3);
        assert!(r.trace.is_chained());
    }

    #[test]
    fn pure_phi_is_trivial() {
        let r = verify_rel_equivalence(3, 1, &[(0, 2), (0, 1), (0, 0)]).unwrap();
        assert!(r.holds);
        assert_eq!(r.absolute.len(), 1);
    }

    #[test]
    fn degree_four_weight_three() {
        let r = verify_rel_equivalence(4, 0, &[(2, 0), (1, 0), (0, 0)]).unwrap();
        assert!(r.holds);
        let r = verify_rel_equivalence(4, 2, &[(1, 1), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn multiset_counts() {
        // pairs of weight <= 1: (1,0),(0,1),(0,0); 3 insertions of total weight 1
        assert_eq!(insertion_multisets(3, 1).len(), 2);
        assert_eq!(insertion_multisets(3, 0), vec![vec![(0, 0); 3]]);
        for ins in insertion_multisets(4, 3) {
            assert_eq!(ins.iter().map(|(s, t)| s + t).sum::<u32>(), 3);
            assert!(ins.windows(2).all(|w| w[0] >= w[1]));
        }
        assert!(on_shell_exprs(4, &[3, 4, 5], 5)
            .iter()
            .all(MixedExpr::is_on_shell));
    }
}
