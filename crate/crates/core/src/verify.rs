//! Verification suites: every identity the engines are expected to satisfy,
//! swept over configurable bounds and reported one instance at a time.

use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{
    factorial, format_rational, parse_rational, pow2, rat, DegreeSeries, Rational, SymbolicCombo,
};
use crate::closed_forms::{
    closed_value, gt_dim0, gw_dim0, mp_descendant, Contact, InvariantKey, Parity, SpinKey, Target,
};
use crate::exec::Execution;
use crate::partitions::{partitions_of, Partition};
use crate::sum_engine::{
    blowup_sum_rhs, contact_two_symbol, genus_zero_symbol, nonseparating_descent,
    reduce_genus_zero, separating_split, separating_split_from_sum, substitute_genus_zero,
    verify_mp_reduction, Registry,
};
use crate::trr::{
    base_absolute, base_relative, bounded_exprs, on_shell_exprs, trr_step,
    verify_rel_equivalence_with, Flavor, MixedExpr, Reducer, Strategy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Algebra,
    Partitions,
    Closed,
    Sums,
    Reduction,
    Trr,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Algebra,
        Suite::Partitions,
        Suite::Closed,
        Suite::Sums,
        Suite::Reduction,
        Suite::Trr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Partitions => "partitions",
            Suite::Closed => "closed",
            Suite::Sums => "sums",
            Suite::Reduction => "reduction",
            Suite::Trr => "trr",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweep bounds: genus, degree and descendant weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub h_max: u32,
    pub d_max: u32,
    pub w_max: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            h_max: 16,
            d_max: 4,
            w_max: 5,
        }
    }
}

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub suite: Suite,
    pub name: String,
    /// The instance checked, named by its canonical key or parameters.
    pub key: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub identities: Vec<Identity>,
}

impl Report {
    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Identity> {
        self.identities.iter().filter(|i| !i.holds)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        if failed == 0 {
            format!("PASS, {} identities", self.len())
        } else {
            format!("FAIL, {failed} of {} identities failed", self.len())
        }
    }

    /// Per-suite counts, each failed instance, then the summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for suite in Suite::EACH {
            let (n, bad) = self
                .identities
                .iter()
                .filter(|i| i.suite == suite)
                .fold((0, 0), |(n, bad), i| (n + 1, bad + usize::from(!i.holds)));
            if n > 0 {
                let status = if bad == 0 { "ok" } else { "FAILED" };
                out.push_str(&format!(
                    "{:<11} {n:>6} identities  {status}\n",
                    suite.name()
                ));
            }
        }
        for i in self.failures() {
            out.push_str(&format!("FAIL [{}] {}: {}\n", i.suite, i.name, i.key));
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> Value {
        let ids: Vec<Value> = self
            .identities
            .iter()
            .map(|i| json!({"suite": i.suite.name(), "identity": i.name, "key": i.key, "holds": i.holds}))
            .collect();
        json!({
            "passed": self.passed(),
            "total": self.len(),
            "failed": self.failures().count(),
            "identities": ids,
        })
    }

    /// CSV with header `suite,identity,key,holds`; fields are quoted.
    pub fn render_csv(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = String::from("suite,identity,key,holds\n");
        for i in &self.identities {
            out.push_str(&format!(
                "{},{},{},{}\n",
                i.suite,
                quote(&i.name),
                quote(&i.key),
                i.holds
            ));
        }
        out
    }
}

struct Collector {
    suite: Suite,
    out: Vec<Identity>,
}

impl Collector {
    fn check(&mut self, name: &str, key: impl Into<String>, holds: bool) {
        self.out.push(Identity {
            suite: self.suite,
            name: name.to_string(),
            key: key.into(),
            holds,
        });
    }

    fn extend(&mut self, name: &str, results: Vec<(String, bool)>) {
        for (key, holds) in results {
            self.check(name, key, holds);
        }
    }
}

/// Runs `suite` (or every suite for [`Suite::All`]). Registry entries are
/// checked against the closed forms and the genus reduction as part of the
/// `closed` suite.
pub fn run(suite: Suite, bounds: Bounds, registry: Option<&Registry>, exec: Execution) -> Report {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut report = Report::default();
    for s in suites {
        let mut c = Collector {
            suite: s,
            out: Vec::new(),
        };
        match s {
            Suite::Algebra => algebra(&mut c),
            Suite::Partitions => partitions(&mut c),
            Suite::Closed => {
                closed(&mut c, bounds);
                if let Some(reg) = registry {
                    registry_checks(&mut c, reg);
                }
            }
            Suite::Sums => sums(&mut c, bounds, exec),
            Suite::Reduction => reduction(&mut c, bounds),
            Suite::Trr => trr(&mut c, bounds, exec),
            Suite::All => unreachable!("expanded above"),
        }
        report.identities.extend(c.out);
    }
    report
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> DegreeSeries {
    let coeffs: Vec<(usize, Rational)> = (1..=order).map(|d| (d, small_rational(rng))).collect();
    DegreeSeries::from_coeffs(order, coeffs).expect("order >= 1")
}

fn random_combo(rng: &mut ChaCha8Rng) -> SymbolicCombo {
    let mut c = SymbolicCombo::zero();
    for atom in ["A", "B", "C", "D"] {
        if rng.gen_bool(0.7) {
            c = c.add(&SymbolicCombo::symbol(atom).scale(&small_rational(rng)));
        }
    }
    c
}

fn algebra(c: &mut Collector) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for order in 1..=12 {
        for sample in 0..4 {
            let s = random_series(&mut rng, order);
            c.check(
                "log(exp(s)) = s",
                format!("T={order} sample={sample}"),
                s.exp().log() == s,
            );
        }
    }
    for order in 1..=8 {
        for sample in 0..4 {
            let a = random_series(&mut rng, order);
            let b = random_series(&mut rng, order);
            c.check(
                "exp(a + b) = (1 + exp a)(1 + exp b) - 1",
                format!("T={order} sample={sample}"),
                a.add(&b).exp() == a.exp().one_plus_product(&b.exp()),
            );
        }
    }
    for sample in 0..16 {
        let (a, b) = (random_combo(&mut rng), random_combo(&mut rng));
        let (c1, c2) = (small_rational(&mut rng), small_rational(&mut rng));
        let key = format!("sample={sample}");
        c.check(
            "(c1 + c2) a = c1 a + c2 a",
            key.clone(),
            a.scale(&(&c1 + &c2)) == a.scale(&c1).add(&a.scale(&c2)),
        );
        c.check("a + b = b + a", key.clone(), a.add(&b) == b.add(&a));
        c.check("a - a = 0", key.clone(), a.sub(&a).is_zero());
        let x = small_rational(&mut rng);
        let y = small_rational(&mut rng);
        let mut ok = true;
        for v in [&x + &y, &x - &y, &x * &y] {
            ok &= parse_rational(&format_rational(&v)).as_ref() == Ok(&v);
        }
        if !y.is_zero() {
            let q = &x / &y;
            ok &= parse_rational(&format_rational(&q)).as_ref() == Ok(&q);
        }
        c.check("rational results round-trip in canonical form", key, ok);
    }
}

/// Partition numbers by Euler's pentagonal recurrence.
fn pentagonal_counts(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * &p[n - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * &p[n - g2];
            }
        }
        p[n] = acc;
    }
    p
}

fn partitions(c: &mut Collector) {
    for d in 1..=12u32 {
        let total: BigInt = partitions_of(d)
            .unwrap()
            .iter()
            .map(Partition::ordered_count)
            .sum();
        c.check(
            "sum of l(m)!/m! over m |- d = 2^(d-1)",
            format!("d={d}"),
            total == BigInt::one() << (d - 1),
        );
    }
    let oracle = pentagonal_counts(30);
    for d in 1..=30u32 {
        c.check(
            "partition count matches the pentagonal recurrence",
            format!("d={d}"),
            BigInt::from(partitions_of(d).unwrap().len()) == oracle[d as usize],
        );
    }
    for d in 1..=20u32 {
        c.check(
            "aut((1^d)) = d!",
            format!("d={d}"),
            Partition::ones(d).unwrap().aut() == factorial(d),
        );
    }
}

fn closed(c: &mut Collector, b: Bounds) {
    for s in SpinKey::sweep(b.h_max) {
        let gw = DegreeSeries::from_coeffs(
            2,
            [(1, gw_dim0(1, s).unwrap()), (2, gw_dim0(2, s).unwrap())],
        )
        .unwrap();
        let gt = DegreeSeries::from_coeffs(
            2,
            [(1, gt_dim0(1, s).unwrap()), (2, gt_dim0(2, s).unwrap())],
        )
        .unwrap();
        c.check(
            "exp of dimension-zero GW gives GT",
            format!("({s})"),
            gw.exp() == gt,
        );
        let sign = rat(s.sign(), 1);
        let expected2 = &sign * pow2(s.genus() as i64 - 1);
        c.check(
            "GT_1 = (-1)^p and GT_2 = (-1)^p 2^(h-1)",
            format!("({s})"),
            gt_dim0(1, s).unwrap() == sign && gt_dim0(2, s).unwrap() == expected2,
        );
        for d in [1, 2] {
            c.check(
                "MP formula without insertions gives GT_d",
                InvariantKey::absolute(s, d).unwrap().canonical(),
                mp_descendant(d, s, &[]).ok() == gt_dim0(d, s).ok(),
            );
            c.check(
                "MP formula is symmetric in the insertions",
                format!("({s}) d={d} k=[3,0,1]"),
                mp_descendant(d, s, &[3, 0, 1]).ok() == mp_descendant(d, s, &[0, 1, 3]).ok(),
            );
        }
    }
    c.check(
        "spin key (0,-) is rejected",
        "h=0 p=-",
        SpinKey::new(0, Parity::Odd).is_err(),
    );
}

fn registry_checks(c: &mut Collector, reg: &Registry) {
    let x0 = genus_zero_symbol()
        .parse::<InvariantKey>()
        .expect("canonical key");
    let x0_value = reg.get(&x0).cloned();
    for (key, value) in reg.iter() {
        if let Some(v) = closed_value(&key) {
            c.check(
                "registry entry agrees with its closed form",
                key.canonical(),
                &v == value,
            );
            continue;
        }
        let contact_two = matches!(
            (key.target(), key.contact()),
            (Target::Local(_), Contact::OneSided(m)) if m.parts() == [2] && key.insertions().is_empty()
        );
        if let (true, Some(x0v), Target::Local(s)) = (contact_two, &x0_value, key.target()) {
            let (coeff, _) = reduce_genus_zero(s);
            c.check(
                "registry GT_(2) entry agrees with the genus reduction",
                key.canonical(),
                &(coeff * x0v) == value,
            );
        }
    }
}

fn gt2(s: SpinKey) -> SymbolicCombo {
    SymbolicCombo::symbol(contact_two_symbol(s))
}

fn sums(c: &mut Collector, b: Bounds, exec: Execution) {
    let empty = Registry::new();
    let spins = SpinKey::sweep(b.h_max);
    for &s in &spins {
        for d in [1, 2] {
            c.check(
                "blow-up sum without insertions reproduces GT_d",
                InvariantKey::absolute(s, d).unwrap().canonical(),
                blowup_sum_rhs(d, s, &[], (0, 0), &empty).ok() == gt_dim0(d, s).ok(),
            );
        }
        c.check(
            "separating split with (0,+) is neutral",
            format!("({s})"),
            separating_split(s, SpinKey::genus_zero()).ok() == Some(gt2(s)),
        );
        if let Ok(rhs) = nonseparating_descent(s) {
            c.check(
                "nonseparating descent is consistent with the genus reduction",
                format!("({s})"),
                substitute_genus_zero(&rhs) == substitute_genus_zero(&gt2(s)),
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb5);
    for _ in 0..200 {
        let h1 = rng.gen_range(0..=b.h_max);
        let h2 = rng.gen_range(0..=b.h_max - h1);
        let pick = |h: u32, odd: bool| {
            let p = if odd && h > 0 {
                Parity::Odd
            } else {
                Parity::Even
            };
            SpinKey::new(h, p).unwrap()
        };
        let k1 = pick(h1, rng.gen_bool(0.5));
        let k2 = pick(h2, rng.gen_bool(0.5));
        c.check(
            "separating split is symmetric",
            format!("({k1}) + ({k2})"),
            separating_split(k1, k2).ok() == separating_split(k2, k1).ok(),
        );
    }
    let mut pairs = Vec::new();
    for &k1 in &spins {
        for &k2 in &spins {
            if k1.genus() + k2.genus() <= b.h_max {
                pairs.push((k1, k2));
            }
        }
    }
    let results = exec.map(pairs, |(k1, k2)| {
        let split = separating_split(k1, k2).unwrap();
        let total = SpinKey::new(k1.genus() + k2.genus(), k1.parity().plus(k2.parity())).unwrap();
        let consistent = substitute_genus_zero(&split) == substitute_genus_zero(&gt2(total));
        let from_sum = (k1.genus() <= 8 && k2.genus() <= 8)
            .then(|| separating_split_from_sum(k1, k2).ok() == Some(split));
        (format!("({k1}) + ({k2})"), consistent, from_sum)
    });
    for (key, consistent, from_sum) in results {
        c.check(
            "separating split is consistent with the genus reduction",
            key.clone(),
            consistent,
        );
        if let Some(ok) = from_sum {
            c.check(
                "separating split equals its partition-sum evaluation",
                key,
                ok,
            );
        }
    }
    let mut cases = Vec::new();
    for &s in &spins {
        for d in [1, 2] {
            for ks in [vec![], vec![0], vec![1], vec![2, 0], vec![1, 1, 3]] {
                cases.push((s, d, ks));
            }
        }
    }
    let results = exec.map(cases, |(s, d, ks)| {
        let holds = verify_mp_reduction(s, d, &ks)
            .map(|r| r.holds)
            .unwrap_or(false);
        (format!("({s}) d={d} k={ks:?}"), holds)
    });
    c.extend(
        "MP formula reduces to genus zero through the blow-up sum",
        results,
    );
}

fn reduction(c: &mut Collector, b: Bounds) {
    for h in 0..=b.h_max {
        for p in [Parity::Even, Parity::Odd] {
            match SpinKey::new(h, p) {
                Ok(s) => {
                    let (coeff, trace) = reduce_genus_zero(s);
                    let expected = rat(s.sign(), 1) * pow2(h as i64);
                    c.check(
                        "GT_(2)^{h,p} = (-1)^p 2^h GT_(2)^{0,+}",
                        contact_two_symbol(s),
                        coeff == expected && trace.len() as u32 >= h.max(1) && trace.is_chained(),
                    );
                }
                Err(_) => c.check(
                    "genus zero has no odd theta characteristic",
                    format!("h={h} p={}", p.symbol()),
                    h == 0,
                ),
            }
        }
    }
}

fn trr(c: &mut Collector, b: Bounds, exec: Execution) {
    for k in 1..=12u32 {
        let sign = if k % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
        let f = Rational::from_integer(factorial(k));
        c.check(
            "absolute base value (-1)^(k-1)/k!",
            format!("k={k}"),
            base_absolute(k) == &sign / &f,
        );
        c.check(
            "relative base value (-1)^(k-1) k!",
            format!("k={k}"),
            base_relative(k) == &sign * &f,
        );
        c.check(
            "base values multiply to 1",
            format!("k={k}"),
            base_absolute(k) * base_relative(k) == Rational::one(),
        );
    }
    for d in 1..=5 {
        for s in 1..=6 {
            for flavor in [Flavor::Absolute, Flavor::Relative] {
                let e = MixedExpr::new(d, 0, vec![(s, 0), (0, 0), (0, 0)], flavor).unwrap();
                let terms = trr_step(&e, 0).map(|r| r.len()).unwrap_or(0);
                let expected = if s < d { 2 } else { 1 };
                c.check(
                    "recursion correction appears iff s_j < d",
                    e.canonical(),
                    terms == expected,
                );
            }
        }
    }
    let shared = Reducer::default();
    let exprs = on_shell_exprs(b.d_max, &[3, 4, 5], b.w_max);
    let results = exec.map(exprs, |e| {
        let holds = verify_rel_equivalence_with(&shared, e.degree(), e.genus(), e.insertions())
            .map(|r| r.holds)
            .unwrap_or(false);
        (e.canonical(), holds)
    });
    c.extend(
        "relative and descendant invariants agree up to (d!)^2",
        results,
    );

    let left = Reducer::new(Strategy::LeftmostFirst);
    let right = Reducer::new(Strategy::RightmostFirst);
    let random = Reducer::new(Strategy::Seeded(17));
    let exprs = bounded_exprs(b.d_max, &[3, 4, 5], b.w_max);
    let results = exec.map(exprs, |e| {
        let a = left.reduce(&e).ok();
        let holds = a.is_some() && a == right.reduce(&e).ok() && a == random.reduce(&e).ok();
        (e.canonical(), holds)
    });
    c.extend(
        "full reduction is independent of the rewrite order",
        results,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_suite_counts_both_parities() {
        let r = run(
            Suite::Reduction,
            Bounds::default(),
            None,
            Execution::Sequential,
        );
        assert_eq!(r.len(), 34);
        assert!(r.passed());
        assert_eq!(r.summary(), "PASS, 34 identities");
    }

    #[test]
    fn small_bounds_all_pass() {
        let b = Bounds {
            h_max: 3,
            d_max: 3,
            w_max: 3,
        };
        let r = run(Suite::All, b, None, Execution::default());
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn corrupted_registry_entry_is_named() {
        let mut reg = Registry::new();
        let key = InvariantKey::absolute(SpinKey::new(2, Parity::Odd).unwrap(), 2).unwrap();
        reg.insert(&key, rat(5, 1));
        let b = Bounds {
            h_max: 2,
            ..Bounds::default()
        };
        let r = run(Suite::Closed, b, Some(&reg), Execution::Sequential);
        assert!(!r.passed());
        let failed: Vec<_> = r.failures().collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].key, key.canonical());
        assert!(r.render_text().contains(&key.canonical()));
    }

    #[test]
    fn pentagonal_oracle_small_values() {
        let p = pentagonal_counts(10);
        let small: Vec<i64> = vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(p, small.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
