use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::CaseLabel;
use crate::lp::{build_l, build_m, solve_grid_program, ProgramKind};
use crate::rational::{int, round_to_step, Rational};
use crate::report::{ser_rational, Num};

/// Comparison recorded in a certificate step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Cmp {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Cmp::Le => lhs <= rhs,
            Cmp::Lt => lhs < rhs,
            Cmp::Eq => lhs == rhs,
            Cmp::Ge => lhs >= rhs,
            Cmp::Gt => lhs > rhs,
        }
    }
}

/// Identifies the argument a step checks; serialized in snake case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    CaseSelection,
    SmallDimensionSums,
    LeaderRadius,
    RemainderNormalization,
    NormalTailCore,
    RemainderCoreMass,
    MirrorTailCap,
    JointFailure,
    EscapeDichotomy,
    ReflectionSymmetry,
    GridRounding,
    SevenIntervalProgram,
    FiveIntervalProgram,
    ProgramFeasibility,
    ExceedanceIdentity,
    ExceedanceBelowProgram,
    FirstBand,
    SecondBand,
    CentralMass,
    TripleSplit,
    BigSmallSplit,
    PrefixSum,
    BigTermCount,
    SmallTermChoice,
    LowerBound,
}

/// A fact taken as proven rather than re-verified by this run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    /// The theorem applied to a shorter vector.
    Induction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    #[serde(serialize_with = "ser_rational")]
    pub lhs: Rational,
    pub relation: Cmp,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
}

fn ser_named<S: Serializer>(items: &[(String, Rational)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(items.len()))?;
    for (k, v) in items {
        map.serialize_entry(k, &Num::of(v))?;
    }
    map.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub lemma: Lemma,
    #[serde(serialize_with = "ser_named")]
    pub inputs: Vec<(String, Rational)>,
    #[serde(serialize_with = "ser_named")]
    pub values: Vec<(String, Rational)>,
    pub inequality: Inequality,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise: Option<Premise>,
}

fn named(items: Vec<(&str, Rational)>) -> Vec<(String, Rational)> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Step {
    pub fn check(
        lemma: Lemma,
        inputs: Vec<(&str, Rational)>,
        values: Vec<(&str, Rational)>,
        lhs: Rational,
        relation: Cmp,
        rhs: Rational,
    ) -> Self {
        let holds = relation.holds(&lhs, &rhs);
        Self {
            lemma,
            inputs: named(inputs),
            values: named(values),
            inequality: Inequality { lhs, relation, rhs },
            holds,
            premise: None,
        }
    }

    pub fn with_premise(mut self, premise: Premise) -> Self {
        self.premise = Some(premise);
        self
    }

    pub fn input(&self, name: &str) -> Option<&Rational> {
        self.inputs.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn value(&self, name: &str) -> Option<&Rational> {
        self.values.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// Whether the bound was compared against the exact probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Soundness {
    Sound,
    Unsound,
    NotChecked,
}

impl Serialize for Soundness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Soundness::Sound => s.serialize_bool(true),
            Soundness::Unsound => s.serialize_bool(false),
            Soundness::NotChecked => s.serialize_str("not checked"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofCertificate {
    pub case: CaseLabel,
    pub weights: Vec<Rational>,
    pub steps: Vec<Step>,
    pub lower_bound: Rational,
    pub exact_probability: Option<Rational>,
    pub sound: Soundness,
}

impl Serialize for ProofCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProofCertificate", 6)?;
        st.serialize_field("case", &self.case)?;
        st.serialize_field("weights", &self.weights.iter().map(Num::of).collect::<Vec<_>>())?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("lower_bound", &Num::of(&self.lower_bound))?;
        if let Some(p) = &self.exact_probability {
            st.serialize_field("exact_probability", &Num::of(p))?;
        } else {
            st.skip_field("exact_probability")?;
        }
        st.serialize_field("sound", &self.sound)?;
        st.end()
    }
}

/// A replay disagreement: the step index and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayFailure {
    pub step: usize,
    pub lemma: Lemma,
    pub reason: String,
}

impl ProofCertificate {
    pub fn all_steps_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn meets_target(&self) -> bool {
        self.lower_bound >= super::target()
    }

    /// Every step holds, the bound reaches the target, and the oracle (if
    /// run) did not refute it.
    pub fn is_valid(&self) -> bool {
        self.all_steps_hold() && self.meets_target() && self.sound != Soundness::Unsound
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    /// Re-derives each step from its recorded inputs: the inequality is
    /// re-evaluated, derived quantities that are cheap to recompute (sums,
    /// roundings, grid programs) are recomputed and compared, and the final
    /// bound must match the certificate's bound.
    pub fn replay(&self) -> Result<(), ReplayFailure> {
        for (i, step) in self.steps.iter().enumerate() {
            let fail = |reason: String| ReplayFailure {
                step: i,
                lemma: step.lemma,
                reason,
            };
            let ineq = &step.inequality;
            let holds = ineq.relation.holds(&ineq.lhs, &ineq.rhs);
            if holds != step.holds {
                return Err(fail(format!("recorded holds={} but re-evaluates to {holds}", step.holds)));
            }
            if !holds {
                return Err(fail("inequality does not hold".into()));
            }
            recompute(step).map_err(fail)?;
        }
        match self.steps.last() {
            Some(last) if last.lemma == Lemma::LowerBound => {
                if last.inequality.lhs != self.lower_bound {
                    return Err(ReplayFailure {
                        step: self.steps.len() - 1,
                        lemma: last.lemma,
                        reason: "final step does not carry the certified bound".into(),
                    });
                }
                Ok(())
            }
            _ => Err(ReplayFailure {
                step: self.steps.len(),
                lemma: Lemma::LowerBound,
                reason: "certificate does not end with the bound".into(),
            }),
        }
    }
}

fn need<'a>(step: &'a Step, name: &str) -> Result<&'a Rational, String> {
    step.input(name)
        .or_else(|| step.value(name))
        .ok_or_else(|| format!("missing {name}"))
}

fn expect_eq(what: &str, recorded: &Rational, recomputed: &Rational) -> Result<(), String> {
    if recorded == recomputed {
        Ok(())
    } else {
        Err(format!("{what}: recorded {recorded}, recomputed {recomputed}"))
    }
}

fn recompute(step: &Step) -> Result<(), String> {
    let lhs = &step.inequality.lhs;
    match step.lemma {
        Lemma::SmallDimensionSums => {
            // lhs is the largest modulus among the listed cross-signed sums
            let weights: Vec<&Rational> = step.inputs.iter().map(|(_, v)| v).collect();
            let sums: Vec<Rational> = match weights.as_slice() {
                [a1] => vec![(*a1).clone()],
                [a1, a2] => vec![*a1 - *a2],
                [a1, a2, a3] => vec![
                    *a1 - *a2 + *a3,
                    -(*a1) + *a2 + *a3,
                    -(*a1) + *a2 - *a3,
                    *a1 - *a2 - *a3,
                ],
                _ => return Err("expected one to three weights".into()),
            };
            for (k, s) in sums.iter().enumerate() {
                let recorded = step.values.get(k).map(|(_, v)| v).ok_or("missing sum")?;
                expect_eq("signed sum", recorded, s)?;
            }
            let max = sums.iter().map(|s| if s < &int(0) { -s } else { s.clone() }).max().unwrap();
            expect_eq("largest modulus", lhs, &max)
        }
        Lemma::LeaderRadius => {
            let a1 = need(step, "a1")?;
            let radius = need(step, "radius")?;
            let point = need(step, "tail_point")?;
            expect_eq("radius squared", lhs, &(radius * radius))?;
            expect_eq("scaled tail point", &step.inequality.rhs, &(point * point * (int(1) - a1 * a1)))
        }
        Lemma::GridRounding => {
            let step_size = need(step, "grid_step")?;
            let mut worst = int(0);
            for (name, rounded_name) in [("a1", "a1_rounded"), ("second", "second_rounded")] {
                let x = need(step, name)?;
                let r = round_to_step(x, step_size);
                expect_eq(rounded_name, need(step, rounded_name)?, &r)?;
                let d = x - &r;
                let d = if d < int(0) { -d } else { d };
                worst = worst.max(d);
            }
            expect_eq("largest rounding distance", lhs, &worst)
        }
        Lemma::SevenIntervalProgram | Lemma::FiveIntervalProgram => {
            let kind = if step.lemma == Lemma::SevenIntervalProgram {
                ProgramKind::L
            } else {
                ProgramKind::M
            };
            let solution = solve_grid_program(kind, need(step, "a1_rounded")?, need(step, "second_rounded")?, need(step, "margin")?)
                .map_err(|e| e.to_string())?;
            expect_eq("program optimum", lhs, &solution.optimal_value)
        }
        Lemma::PrefixSum => {
            let mut total = int(0);
            let terms: Vec<&Rational> = step
                .inputs
                .iter()
                .filter(|(k, _)| k.starts_with("a_"))
                .map(|(_, v)| v)
                .collect();
            let (last, init) = terms.split_last().ok_or("no terms")?;
            for t in init {
                total += *t;
            }
            total += *last * int(2);
            expect_eq("prefix sum", lhs, &total)
        }
        Lemma::ProgramFeasibility => {
            let a1 = need(step, "a1")?;
            let second = need(step, "second")?;
            let p: Vec<Rational> = step.values.iter().map(|(_, v)| v.clone()).collect();
            let lp = match p.len() {
                7 => build_l(a1, second),
                5 => build_m(a1, second),
                other => return Err(format!("{other} interval masses")),
            }
            .map_err(|e| e.to_string())?;
            let violated = lp.constraints.iter().filter(|c| !c.is_satisfied(&p)).count();
            expect_eq("violated rows", lhs, &int(violated as i64))
        }
        Lemma::BigTermCount => {
            let a1 = need(step, "a1")?;
            expect_eq("count bound", &step.inequality.rhs, &((int(1) + a1) / (int(1) - a1)))
        }
        _ => Ok(()),
    }
}
