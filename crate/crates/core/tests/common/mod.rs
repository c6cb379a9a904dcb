#![allow(dead_code)]

use fuzzylos::fis::{Clause, OutputVariable, Term};
use fuzzylos::{AndOperator, FuzzyVariable, Interval, Rule, SugenoFis, TrapezoidMF};
use proptest::prelude::*;

/// Naive evaluator used as an oracle: recomputes every degree from the
/// breakpoints with a min/max formula and averages in rule order.
pub fn brute_force(fis: &SugenoFis, input: &[f64]) -> (f64, usize) {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut fired = 0;
    for rule in fis.rules() {
        let mut w = 1.0_f64;
        for clause in &rule.antecedent {
            let i = fis.inputs().iter().position(|v| v.name() == clause.variable).unwrap();
            let [a, b, c, d] = fis.inputs()[i].term(&clause.term).unwrap().mf.breakpoints();
            let mu = trapezoid(a, b, c, d, input[i]);
            w = match fis.and_operator() {
                AndOperator::Min => w.min(mu),
                AndOperator::Product => w * mu,
            };
        }
        if w > 0.0 {
            fired += 1;
            num += w * rule.consequent;
            den += w;
        }
    }
    if fired == 0 {
        (0.0, 0)
    } else {
        (num / den, fired)
    }
}

pub fn trapezoid(a: f64, b: f64, c: f64, d: f64, x: f64) -> f64 {
    let rise = if a == b {
        if x >= a {
            1.0
        } else {
            0.0
        }
    } else {
        (x - a) / (b - a)
    };
    let fall = if c == d {
        if x <= d {
            1.0
        } else {
            0.0
        }
    } else {
        (d - x) / (d - c)
    };
    rise.min(fall).clamp(0.0, 1.0)
}

pub fn breakpoints(lo: f64, hi: f64) -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(lo..=hi).prop_map(|mut p| {
        p.sort_by(f64::total_cmp);
        p
    })
}

fn variable(name: &'static str, max_terms: usize) -> impl Strategy<Value = FuzzyVariable> {
    let unit = prop::option::of(prop::sample::select(vec!["km/h", "veh/h", "m/s"]));
    (-50.0..50.0f64, 1.0..5000.0f64, unit).prop_flat_map(move |(lo, span, unit)| {
        let hi = lo + span;
        prop::collection::vec(breakpoints(lo, hi), 1..=max_terms).prop_map(move |bps| {
            let terms = bps
                .iter()
                .enumerate()
                .map(|(i, &[a, b, c, d])| Term {
                    name: format!("T{i}"),
                    mf: TrapezoidMF::new(a, b, c, d).unwrap(),
                })
                .collect();
            FuzzyVariable::new(name, unit.map(String::from), Interval::new(lo, hi).unwrap(), terms).unwrap()
        })
    })
}

fn consequent() -> impl Strategy<Value = f64> {
    prop_oneof![(1u8..=6).prop_map(f64::from), 0.0..=6.0f64]
}

/// Two-input systems over output `LoS` in [0, 6] with a random subset of
/// pair rules and single-clause rules.
pub fn random_fis() -> impl Strategy<Value = SugenoFis> {
    (variable("Flow", 5), variable("Speed", 5), any::<bool>()).prop_flat_map(|(x, y, product)| {
        let mut keys: Vec<(Option<usize>, Option<usize>)> = Vec::new();
        for i in 0..x.terms().len() {
            keys.push((Some(i), None));
            for j in 0..y.terms().len() {
                keys.push((Some(i), Some(j)));
            }
        }
        for j in 0..y.terms().len() {
            keys.push((None, Some(j)));
        }
        let n = keys.len();
        (
            Just((x, y, product)),
            prop::sample::subsequence(keys, 1..=n).prop_shuffle(),
            prop::collection::vec(consequent(), n),
        )
            .prop_map(|((x, y, product), keys, cons)| {
                let rules = keys
                    .iter()
                    .zip(cons)
                    .map(|(&(i, j), c)| {
                        let mut ante = Vec::new();
                        if let Some(i) = i {
                            ante.push(Clause::new("Flow", x.terms()[i].name.clone()));
                        }
                        if let Some(j) = j {
                            ante.push(Clause::new("Speed", y.terms()[j].name.clone()));
                        }
                        Rule::new(ante, c)
                    })
                    .collect();
                let op = if product {
                    AndOperator::Product
                } else {
                    AndOperator::Min
                };
                let output = OutputVariable {
                    name: "LoS".into(),
                    domain: Interval::new(0.0, 6.0).unwrap(),
                };
                SugenoFis::new(vec![x, y], output, rules, op).unwrap()
            })
    })
}

/// A system together with an in-domain input point.
pub fn fis_and_point() -> impl Strategy<Value = (SugenoFis, [f64; 2])> {
    random_fis().prop_flat_map(|fis| {
        let f = fis.inputs()[0].domain();
        let s = fis.inputs()[1].domain();
        (Just(fis), f.lo()..=f.hi(), s.lo()..=s.hi()).prop_map(|(fis, x, y)| (fis, [x, y]))
    })
}
