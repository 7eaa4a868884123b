//! Runs a scenario's expected values through the engine.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use edgereg_core::closure::{
    enumerate_intermediate_ideals, integral_closure_edge_power, is_normal_edge, newton_membership, symbolic_power,
};
use edgereg_core::regularity::{mixed_sum_regularity, takayama_regularity_with, RegOptions};
use edgereg_core::{FieldSpec, Graph, MonomialIdeal, SimplicialComplex};

use crate::error::CliError;
use crate::registry::{Expected, Quantity, Scenario};

/// Upper bound on the intermediate ideals checked per power.
pub const INTERMEDIATE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub expected: Expected,
    pub computed: u64,
    pub pass: bool,
    /// Extra explanation, e.g. the spread of regularities among intermediates.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub scenario: String,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn to_json_value(&self) -> Value {
        let results: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut v = serde_json::to_value(&o.expected).expect("expected serializes");
                let map = v.as_object_mut().expect("object");
                let expected = map.remove("value").expect("value");
                map.insert("expected".into(), expected);
                map.insert("computed".into(), json!(o.computed));
                map.insert("pass".into(), json!(o.pass));
                if let Some(d) = &o.detail {
                    map.insert("detail".into(), json!(d));
                }
                v
            })
            .collect();
        json!({ "scenario": self.scenario, "pass": self.pass(), "results": results })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("scenario {}: {}\n", self.scenario, if self.pass() { "PASS" } else { "FAIL" });
        for o in &self.outcomes {
            let e = &o.expected;
            let mut label = format!("{:?}", e.quantity);
            if let Some(s) = e.power {
                label += &format!(" s={s}");
            }
            if !e.with.is_empty() {
                label += &format!(" +({})", e.with.join(","));
            }
            if let Some(f) = &e.field {
                label += &format!(" [{f}]");
            }
            out += &format!(
                "  {:<4} {:<40} expected {:>3}  computed {:>3}  ({:?})\n",
                if o.pass { "ok" } else { "FAIL" },
                label,
                e.value,
                o.computed,
                e.provenance
            );
            if let Some(d) = &o.detail {
                out += &format!("       {d}\n");
            }
        }
        out
    }
}

/// Evaluates every expected value of `scenario`, restricted to `field` for
/// field-dependent quantities when one is given.
pub fn verify(
    scenario: &Scenario,
    field: Option<FieldSpec>,
    allow_slow: bool,
    opts: RegOptions,
) -> Result<Report, CliError> {
    if scenario.slow && !allow_slow {
        return Err(CliError::Input(format!("scenario {} is slow; rerun with --allow-slow", scenario.name)));
    }
    let ideal = scenario.ideal()?;
    let graph = scenario.graph()?;
    let mut outcomes = Vec::new();
    for e in &scenario.expected {
        let entry_field = match &e.field {
            Some(label) => Some(label.parse::<FieldSpec>()?),
            None => None,
        };
        if let (Some(want), Some(have)) = (field, entry_field) {
            if want != have {
                continue;
            }
        }
        let ctx = Ctx { scenario, ideal: &ideal, graph: graph.as_ref(), opts };
        let (computed, detail) = ctx.evaluate(e, entry_field)?;
        let pass = computed == e.value && detail.is_none();
        outcomes.push(Outcome { expected: e.clone(), computed, pass, detail });
    }
    Ok(Report { scenario: scenario.name.clone(), outcomes })
}

struct Ctx<'a> {
    scenario: &'a Scenario,
    ideal: &'a MonomialIdeal,
    graph: Option<&'a Graph>,
    opts: RegOptions,
}

impl Ctx<'_> {
    fn graph(&self, q: Quantity) -> Result<&Graph, CliError> {
        self.graph.ok_or_else(|| CliError::Input(format!("{q:?} needs a graph payload")))
    }

    fn reg(&self, ideal: &MonomialIdeal, field: FieldSpec) -> Result<u64, CliError> {
        Ok(takayama_regularity_with(ideal, field, self.opts)?.0 as u64)
    }

    fn evaluate(&self, e: &Expected, field: Option<FieldSpec>) -> Result<(u64, Option<String>), CliError> {
        let q = e.quantity;
        let s = || e.power.ok_or_else(|| CliError::Input(format!("{q:?} needs a power")));
        let field = || field.ok_or_else(|| CliError::Input(format!("{q:?} needs a field")));
        let plain = |v: u64| Ok((v, None));
        match q {
            Quantity::RegPower => plain(self.reg(&self.ideal.power(s()?)?, field()?)?),
            Quantity::RegClosure => {
                let cl = integral_closure_edge_power(self.graph(q)?, s()?)?;
                plain(self.reg(&cl.closure, field()?)?)
            }
            Quantity::RegIntermediates => {
                let all = enumerate_intermediate_ideals(self.graph(q)?, s()?, INTERMEDIATE_CAP, 0)?;
                let mut regs = BTreeSet::new();
                for j in &all {
                    regs.insert(self.reg(j, field()?)?);
                }
                let top = *regs.iter().next_back().expect("I^s itself is listed");
                let detail = (regs.len() > 1).then(|| format!("regularities differ across intermediates: {regs:?}"));
                Ok((top, detail))
            }
            Quantity::RegPlus => {
                let mut extra = Vec::new();
                for w in &e.with {
                    extra.push(self.scenario.extra(w).expect("validated"));
                }
                plain(self.reg(&self.ideal.power(s()?)?.with_generators(&extra)?, field()?)?)
            }
            Quantity::RegSymbolic => plain(self.reg(&symbolic_power(self.graph(q)?, s()?)?, field()?)?),
            Quantity::RegMixedSum => {
                let g = self.graph(q)?;
                let comps: Vec<_> = g.components().into_iter().filter(|c| c.len() > 1).collect();
                if comps.len() < 2 {
                    return Err(CliError::Input("mixed sum needs at least two components with edges".into()));
                }
                let rest = comps[1..].iter().fold(edgereg_core::VertexSet::EMPTY, |acc, c| acc.union(*c));
                let (ga, _) = g.induced_subgraph(comps[0]);
                let (gb, _) = g.induced_subgraph(rest);
                let s = s()?;
                let f = field()?;
                let powers = |h: &Graph| -> Result<Vec<u32>, CliError> {
                    let i = MonomialIdeal::edge_ideal(h);
                    (1..=s).map(|k| Ok(self.reg(&i.power(k)?, f)? as u32)).collect()
                };
                plain(mixed_sum_regularity(&powers(&ga)?, &powers(&gb)?, s)? as u64)
            }
            Quantity::ExtraGenerators => plain(integral_closure_edge_power(self.graph(q)?, s()?)?.extra.len() as u64),
            Quantity::Normal => plain(is_normal_edge(self.graph(q)?).normal as u64),
            Quantity::ComplexGirth => {
                let delta = SimplicialComplex::sr_complex(&self.ideal.radical())?;
                plain(delta.one_skeleton().girth().unwrap_or(0) as u64)
            }
            Quantity::ExtrasInClosure => {
                let base = self.ideal.power(s()?)?;
                let mut count = 0;
                for w in &e.with {
                    let x = self.scenario.extra(w).expect("validated");
                    if !base.contains(&x)? && newton_membership(&base, &x)? {
                        count += 1;
                    }
                }
                plain(count)
            }
        }
    }
}
