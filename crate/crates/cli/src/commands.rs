//! Subcommand bodies. Each returns an [`Output`] holding both renderings.

use std::path::Path;

use serde_json::{json, Value};

use edgereg_core::closure::{
    integral_closure_edge_power, intermediate_ideals, is_normal_edge, symbolic_power, ExtraGenerator,
};
use edgereg_core::regularity::{degree_complex, takayama_regularity_with, RegOptions};
use edgereg_core::{ExponentVec, FieldSpec, Graph, MonomialIdeal, SimplicialComplex};

use crate::error::CliError;
use crate::registry::{self, Scenario};

pub struct Output {
    pub json: Value,
    pub table: String,
}

/// Where the graph or ideal comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Graph(String),
    Ideal(String),
    Scenario(String),
}

pub struct Loaded {
    pub graph: Option<Graph>,
    pub ideal: MonomialIdeal,
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn load(source: &Source) -> Result<Loaded, CliError> {
    match source {
        Source::Graph(p) => {
            let g = Graph::from_json(&read(p)?)?;
            Ok(Loaded { ideal: MonomialIdeal::edge_ideal(&g), graph: Some(g) })
        }
        Source::Ideal(p) => Ok(Loaded { graph: None, ideal: MonomialIdeal::from_json(&read(p)?)? }),
        Source::Scenario(name) => {
            let s = registry::find(name)?;
            Ok(Loaded { graph: s.graph()?, ideal: s.ideal()? })
        }
    }
}

fn need_graph(loaded: Loaded) -> Result<Graph, CliError> {
    loaded.graph.ok_or_else(|| CliError::Input("this subcommand needs a graph (--graph or a graph scenario)".into()))
}

fn power_of(ideal: &MonomialIdeal, power: Option<u32>) -> Result<MonomialIdeal, CliError> {
    match power {
        None | Some(1) => Ok(ideal.clone()),
        Some(s) => Ok(ideal.power(s)?),
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

pub fn cmd_reg(loaded: Loaded, power: Option<u32>, field: FieldSpec, opts: RegOptions) -> Result<Output, CliError> {
    let ideal = power_of(&loaded.ideal, power)?;
    let (reg, cert) = takayama_regularity_with(&ideal, field, opts)?;
    let table = format!(
        "reg = {reg} over {}\ncertificate: a = {:?}, i = {}, face = {:?}, dim H~_{} = {}\n",
        field.label(),
        cert.a.as_slice(),
        cert.i,
        one_based(&cert.face.to_vec()),
        cert.i as i32 - 1,
        cert.hom_dim
    );
    Ok(Output { json: cert.to_json_value(), table })
}

fn extra_json(x: &ExtraGenerator) -> Value {
    json!({
        "exponent": x.exponent.as_slice(),
        "cycles": x.cycles.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
        "edges": x.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
    })
}

/// `I^s ⊆ closure ⊆ I^(s)`.
fn chain_json(g: &Graph, s: u32, closure: &MonomialIdeal) -> Result<Value, CliError> {
    let base = MonomialIdeal::edge_ideal(g).power(s)?;
    let symbolic = symbolic_power(g, s)?;
    Ok(json!({
        "power_in_closure": base.is_subset_of(closure)?,
        "closure_in_symbolic": closure.is_subset_of(&symbolic)?,
    }))
}

pub fn cmd_closure(loaded: Loaded, s: u32) -> Result<Output, CliError> {
    let g = need_graph(loaded)?;
    let cl = integral_closure_edge_power(&g, s)?;
    let verdict = is_normal_edge(&g);
    let witness = verdict.witness.as_ref().map(|(a, b)| json!([one_based(a), one_based(b)]));
    let chain = chain_json(&g, s, &cl.closure)?;
    let mut table = format!(
        "closure of I^{s}: {} generators, {} outside I^{s}\nnormal: {}\n",
        cl.closure.gens().len(),
        cl.extra.len(),
        verdict.normal
    );
    for x in &cl.extra {
        table += &format!(
            "  {}  cycles {:?}  edges {:?}\n",
            x.exponent,
            x.cycles.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
            x.edges.iter().map(|&(i, j)| (i + 1, j + 1)).collect::<Vec<_>>()
        );
    }
    table += &format!("chain I^s <= closure <= symbolic: {}\n", chain_ok(&chain));
    let json = json!({
        "power": s,
        "normal": verdict.normal,
        "normal_witness": witness,
        "extra_count": cl.extra.len(),
        "extra": cl.extra.iter().map(extra_json).collect::<Vec<_>>(),
        "closure": cl.closure.to_json_value(),
        "chain": chain,
    });
    Ok(Output { json, table })
}

fn chain_ok(chain: &Value) -> bool {
    chain["power_in_closure"] == json!(true) && chain["closure_in_symbolic"] == json!(true)
}

pub fn cmd_symbolic(loaded: Loaded, s: u32) -> Result<Output, CliError> {
    let g = need_graph(loaded)?;
    let sym = symbolic_power(&g, s)?;
    let cl = integral_closure_edge_power(&g, s)?;
    let chain = chain_json(&g, s, &cl.closure)?;
    let table = format!(
        "I^({s}) = {sym}\n{} generators\nchain I^s <= closure <= symbolic: {}\n",
        sym.gens().len(),
        chain_ok(&chain)
    );
    Ok(Output { json: json!({ "power": s, "ideal": sym.to_json_value(), "chain": chain }), table })
}

pub fn cmd_intermediate(
    loaded: Loaded,
    s: u32,
    cap: usize,
    seed: u64,
    reg_field: Option<FieldSpec>,
    opts: RegOptions,
) -> Result<Output, CliError> {
    let g = need_graph(loaded)?;
    let cl = integral_closure_edge_power(&g, s)?;
    let extra: Vec<ExponentVec> = cl.extra.iter().map(|x| x.exponent.clone()).collect();
    let all = intermediate_ideals(&cl.base, &extra, cap, seed)?;
    let mut table = format!("{} extra generators, {} intermediate ideals\n", extra.len(), all.len());
    let mut items = Vec::new();
    for (k, j) in all.iter().enumerate() {
        let added: Vec<Vec<u32>> =
            extra.iter().filter(|x| j.gens().contains(x)).map(|x| x.as_slice().to_vec()).collect();
        let mut item = json!({ "added": added, "generators": j.gens().len() });
        table += &format!("  #{k}: {} added", added.len());
        if let Some(f) = reg_field {
            let (r, _) = takayama_regularity_with(j, f, opts)?;
            item["reg"] = json!(r);
            table += &format!(", reg = {r}");
        }
        table += "\n";
        items.push(item);
    }
    let json = json!({ "power": s, "extra_count": extra.len(), "count": all.len(), "ideals": items });
    Ok(Output { json, table })
}

pub fn cmd_degree_complex(loaded: Loaded, power: Option<u32>, a: &[u32]) -> Result<Output, CliError> {
    let ideal = power_of(&loaded.ideal, power)?;
    let delta = degree_complex(&ideal, &ExponentVec::new(a.to_vec()))?;
    let json = delta.to_json_value();
    let table = format!(
        "state {:?}, facets {:?}\n",
        delta.state(),
        delta.facets().iter().map(|f| one_based(&f.to_vec())).collect::<Vec<_>>()
    );
    Ok(Output { json, table })
}

pub fn cmd_homology(path: &str, field: FieldSpec) -> Result<Output, CliError> {
    let delta = SimplicialComplex::from_json(&read(path)?)?;
    let dims = delta.reduced_homology_dims(field);
    let euler_f: i64 =
        delta.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { -(f as i64) } else { f as i64 }).sum();
    let euler_h: i64 = dims.iter().map(|(&d, &h)| if d % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
    let mut table = format!("reduced homology over {}\n", field.label());
    for (d, h) in &dims {
        table += &format!("  H~_{d} = {h}\n");
    }
    let json = json!({
        "field": field.label(),
        "state": delta.state(),
        "homology": dims.iter().map(|(d, h)| json!({ "degree": d, "dim": h })).collect::<Vec<_>>(),
        "euler_consistent": euler_f == euler_h || dims.is_empty(),
    });
    Ok(Output { json, table })
}

pub fn cmd_list() -> Output {
    let all: Vec<Scenario> = registry::registry();
    let mut table = String::new();
    for s in &all {
        table += &format!("{:<22} {:<5} {}\n", s.name, if s.slow { "slow" } else { "" }, s.description);
    }
    let json = Value::Array(
        all.iter()
            .map(
                |s| json!({ "name": s.name, "description": s.description, "slow": s.slow, "checks": s.expected.len() }),
            )
            .collect(),
    );
    Output { json, table }
}
