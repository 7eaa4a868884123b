//! Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.
//!
//! Gated scenarios run when `EDGEREG_ALLOW_SLOW` is set or `--allow-slow` is passed.

use std::cell::Cell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use edgereg_cli::registry::{self, Payload};
use edgereg_cli::verify::{verify, Report};
use edgereg_core::closure::{
    enumerate_intermediate_ideals, integral_closure_edge_power, is_normal_edge, newton_closure_edge_power,
    symbolic_power,
};
use edgereg_core::regularity::{
    criterion_in_power_check, degree_complex, extremal_exponents, mixed_sum_regularity, takayama_regularity,
    takayama_regularity_with, RegOptions,
};
use edgereg_core::simplicial::HomologyDims;
use edgereg_core::{ExponentVec, FieldSpec, Graph, MonomialIdeal, SimplicialComplex, VertexSet};

type Outcome = Result<String, String>;
type Check = Box<dyn Fn() -> Outcome>;

const FIELDS: [FieldSpec; 2] = [FieldSpec::RATIONALS, FieldSpec::GF2];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn allow_slow() -> bool {
    std::env::var_os("EDGEREG_ALLOW_SLOW").is_some() || std::env::args().any(|a| a == "--allow-slow")
}

fn reg(i: &MonomialIdeal, f: FieldSpec) -> Result<u32, String> {
    Ok(e(takayama_regularity(i, f))?.0)
}

fn two_triangles() -> Graph {
    let t = Graph::complete(3).unwrap();
    t.disjoint_union(&t).unwrap()
}

fn run_scenarios(names: &[&str]) -> Outcome {
    let mut lines = Vec::new();
    for name in names {
        let s = e(registry::find(name))?;
        let report: Report = e(verify(&s, None, true, RegOptions::default()))?;
        if !report.pass() {
            return Err(report.to_table());
        }
        lines.push(format!("{name} ({} checks)", report.outcomes.len()));
    }
    Ok(lines.join(", "))
}

fn rigidity_s3() -> Outcome {
    let g = two_triangles();
    let s = 3;
    let power = e(MonomialIdeal::edge_ideal(&g).power(s))?;
    let cl = e(integral_closure_edge_power(&g, s))?;
    let inter = e(enumerate_intermediate_ideals(&g, s, 64, 0))?;
    let tri = MonomialIdeal::edge_ideal(&Graph::complete(3).unwrap());
    for f in FIELDS {
        ensure(reg(&power, f)? == 7, || format!("reg I^3 over {} != 7", f.label()))?;
        ensure(reg(&cl.closure, f)? == 7, || format!("reg of closure over {} != 7", f.label()))?;
        for j in &inter {
            ensure(reg(j, f)? == 7, || format!("an intermediate ideal has reg != 7 over {}", f.label()))?;
        }
        let per: Vec<u32> = (1..=s).map(|k| reg(&e(tri.power(k))?, f)).collect::<Result<_, _>>()?;
        let mixed = e(mixed_sum_regularity(&per, &per, s))?;
        ensure(mixed == 7, || format!("mixed-sum path gives {mixed} over {}", f.label()))?;
    }
    Ok(format!("reg = 7 for I^3, closure and {} intermediates over Q and GF(2); mixed sum agrees", inter.len()))
}

fn rigidity_s4() -> Outcome {
    let g = Graph::complete(3).unwrap().disjoint_union(&Graph::cycle(5).unwrap()).unwrap();
    let cl = e(integral_closure_edge_power(&g, 4))?;
    let all = ExponentVec::indicator(8, VertexSet::full(8));
    let expected = e(cl.base.with_generators(&[all]))?;
    ensure(cl.closure == expected, || "closure of I^4 is not I^4 + (x1...x8)".into())?;
    ensure(cl.closure == e(newton_closure_edge_power(&g, 4))?, || "LP closure differs".into())?;
    let mut vals = Vec::new();
    for f in FIELDS {
        let (a, b) = (reg(&cl.base, f)?, reg(&cl.closure, f)?);
        ensure(a == b, || format!("reg I^4 = {a} but reg of closure = {b} over {}", f.label()))?;
        vals.push(format!("{}: {a}", f.label()));
    }
    Ok(format!("closure = I^4 + (x1...x8); reg I^4 = reg closure ({})", vals.join(", ")))
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=max_n);
        let p = [0.3, 0.45, 0.6, 0.8][rng.gen_range(0..4)];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::new(n, &edges).unwrap();
        }
    }
}

/// Two disjoint odd cycles on at most 8 vertices plus sparse random edges, relabelled.
fn planted_graph(rng: &mut ChaCha8Rng) -> Graph {
    let (a, b) = [(3, 3), (3, 5)][rng.gen_range(0..2)];
    let n = rng.gen_range(a + b..=8);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
    edges.extend((0..b).map(|i| (a + i, a + (i + 1) % b)));
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.15) && !edges.contains(&(i, j)) && !edges.contains(&(j, i)) {
                edges.push((i, j));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    Graph::new(n, &edges).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs = 200;
    let mut non_normal = 0;
    let mut compared = 0;
    for k in 0..graphs {
        let g = if k % 2 == 0 { random_graph(&mut rng, 8) } else { planted_graph(&mut rng) };
        for s in 1..=3 {
            let cl = e(integral_closure_edge_power(&g, s))?;
            let lp = e(newton_closure_edge_power(&g, s))?;
            ensure(cl.closure == lp, || format!("graph #{k} {:?}, s = {s}: cycle and LP closures differ", g.edges()))?;
            compared += 1;
        }
        let verdict = is_normal_edge(&g);
        let mut closed = true;
        for s in 1..=4 {
            closed &= e(integral_closure_edge_power(&g, s))?.extra.is_empty();
        }
        ensure(verdict.normal == closed, || format!("graph #{k} {:?}: normality verdict disagrees", g.edges()))?;
        non_normal += usize::from(!verdict.normal);
    }
    Ok(format!("{graphs} graphs, {compared} closure comparisons, {non_normal} non-normal, 0 mismatches"))
}

fn random_ideal(rng: &mut ChaCha8Rng, max_n: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_n);
        let k = rng.gen_range(1..=5);
        let gens: Vec<ExponentVec> = (0..k)
            .map(|_| ExponentVec::new((0..n).map(|_| rng.gen_range(0..=3)).collect()))
            .filter(|g| (1..=5).contains(&g.degree()))
            .collect();
        if !gens.is_empty() {
            return MonomialIdeal::minimalize(n, gens).unwrap();
        }
    }
}

/// Homology with the Euler characteristic cross-check applied to every call.
struct Homology {
    calls: Cell<usize>,
}

impl Homology {
    fn dims(&self, c: &SimplicialComplex, f: FieldSpec) -> Result<HomologyDims, String> {
        self.calls.set(self.calls.get() + 1);
        let dims = c.reduced_homology_dims(f);
        if !c.is_void() {
            let from_faces: i64 =
                c.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { -(n as i64) } else { n as i64 }).sum();
            let from_dims: i64 = dims.iter().map(|(&d, &h)| if d % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
            ensure(from_faces == from_dims, || format!("Euler mismatch on {:?}", c.facets()))?;
        }
        Ok(dims)
    }
}

fn property_suite(slow: bool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let hom = Homology { calls: Cell::new(0) };
    let mut summary = Vec::new();

    // degree complex against the radical colon
    for _ in 0..500 {
        let i = random_ideal(&mut rng, 6);
        let a = ExponentVec::new((0..i.ambient()).map(|_| rng.gen_range(0..4)).collect());
        let delta = e(degree_complex(&i, &a))?;
        let rc = e(i.radical_colon(&a))?;
        let same = if delta.is_void() { rc.is_unit() } else { e(delta.sr_ideal())? == rc };
        ensure(same, || format!("degree complex and radical colon disagree for {i} at {a}"))?;
    }
    summary.push("500 degree-complex pairs".to_string());

    // containment chain and partial degree bound on every graph scenario
    let mut chains = 0;
    for sc in registry::registry().into_iter().filter(|sc| slow || !sc.slow) {
        let g = match &sc.payload {
            Payload::Graph(_) => e(sc.graph())?.expect("graph payload"),
            Payload::Ideal(_) => continue,
        };
        let mut powers: Vec<u32> = sc.expected.iter().filter_map(|x| x.power).chain([1]).collect();
        powers.sort();
        powers.dedup();
        for s in powers {
            let cl = e(integral_closure_edge_power(&g, s))?;
            let sym = e(symbolic_power(&g, s))?;
            ensure(e(cl.base.is_subset_of(&cl.closure))? && e(cl.closure.is_subset_of(&sym))?, || {
                format!("chain fails for {} at s = {s}", sc.name)
            })?;
            ensure(cl.closure.rho_vector().iter().all(|&r| r <= s), || {
                format!("partial degree above {s} in closure for {}", sc.name)
            })?;
            chains += 1;
        }
    }
    for _ in 0..100 {
        let g = random_graph(&mut rng, 8);
        let s = rng.gen_range(1..=4);
        let cl = e(integral_closure_edge_power(&g, s))?;
        ensure(cl.closure.rho_vector().iter().all(|&r| r <= s), || format!("rho bound fails on {:?}", g.edges()))?;
        ensure(e(cl.closure.is_subset_of(&e(symbolic_power(&g, s))?))?, || format!("chain fails on {:?}", g.edges()))?;
    }
    summary.push(format!("{chains} scenario chains + 100 random"));

    // cones
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=5);
        let facets: Vec<VertexSet> = (0..k).map(|_| VertexSet(rng.gen_range(1..1u64 << n))).collect();
        let coned = e(SimplicialComplex::from_facets(n + 1, facets.iter().map(|f| f.with(n)).collect()))?;
        for f in FIELDS {
            ensure(e(coned.cone_acyclicity_check(n, f))?, || format!("cone over {facets:?} not acyclic"))?;
            ensure(hom.dims(&coned, f)?.values().all(|&h| h == 0), || "cone has homology".into())?;
        }
    }
    summary.push("100 cones".to_string());

    // full box against the gamma box, extremal certificates, colon variables
    let mut small = 0;
    let mut certs = 0;
    let mut small_ideals: Vec<MonomialIdeal> =
        (1..=3).map(|k| MonomialIdeal::edge_ideal(&Graph::complete(3).unwrap()).power(k).unwrap()).collect();
    small_ideals.extend((0..150).map(|_| random_ideal(&mut rng, 5)));
    for i in &small_ideals {
        for f in FIELDS {
            let (r, cert) = e(takayama_regularity(i, f))?;
            for prune in [true, false] {
                let full = e(takayama_regularity_with(i, f, RegOptions { prune, extended_box: true }))?.0;
                ensure(full == r, || format!("full box gives {full}, gamma box {r} for {i}"))?;
            }
            ensure(e(cert.verify(i))?, || format!("certificate rejected for {i}"))?;
            for c in e(extremal_exponents(i, f))? {
                certs += 1;
                ensure(c.quotient_reg() + 1 == r, || format!("extremal certificate off for {i}"))?;
                let link = e(e(degree_complex(i, &c.a))?.link(c.face))?;
                let dims = hom.dims(&link, f)?;
                let top = c.i as i32 - 1;
                ensure(dims.get(&top).copied().unwrap_or(0) > 0, || format!("certificate link is acyclic for {i}"))?;
                let rc = e(i.radical_colon(&c.a))?;
                for t in 0..i.ambient() {
                    let xt = ExponentVec::unit(i.ambient(), t);
                    if c.a[t] == 0 && e(rc.contains(&xt))? {
                        let bigger = e(i.with_generators(&[xt]))?;
                        ensure(reg(&bigger, f)? == r, || {
                            format!("adding a colon variable changes reg for {i}, variable {}", t + 1)
                        })?;
                    }
                }
            }
        }
        small += 1;
    }
    summary.push(format!("{small} ideals box-checked, {certs} extremal certificates"));

    // criterion against membership
    for _ in 0..500 {
        let g = random_graph(&mut rng, 7);
        let n = g.n();
        let s = rng.gen_range(1..=3);
        let a = ExponentVec::new((0..n).map(|_| rng.gen_range(0..=3)).collect());
        let mut face = VertexSet::EMPTY;
        for v in VertexSet(rng.gen_range(0..1u64 << n)).iter() {
            if g.neighbors(v).is_disjoint(face) {
                face = face.with(v);
            }
        }
        let rc = e(e(MonomialIdeal::edge_ideal(&g).power(s))?.radical_colon(&a))?;
        let member = e(rc.contains(&ExponentVec::indicator(n, face)))?;
        ensure(e(criterion_in_power_check(&g, s, &a, face))? == member, || {
            format!("criterion disagrees on {:?}, s = {s}, a = {a}, F = {:?}", g.edges(), face.to_vec())
        })?;
    }
    summary.push("500 criterion instances".to_string());

    // random complexes, Euler check over three fields
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let facets: Vec<VertexSet> =
            (0..rng.gen_range(1..=6)).map(|_| VertexSet(rng.gen_range(1..1u64 << n))).collect();
        let c = e(SimplicialComplex::from_facets(n, facets))?;
        for f in [FieldSpec::RATIONALS, FieldSpec::GF2, FieldSpec::GF3] {
            hom.dims(&c, f)?;
        }
    }
    summary.push(format!("{} homology computations Euler-checked", hom.calls.get()));
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let slow = allow_slow();
    let criteria: Vec<(&str, Check)> = vec![
        ("rigidity, two triangles, s = 3", Box::new(rigidity_s3)),
        ("rigidity, triangle and pentagon, s = 4", Box::new(rigidity_s4)),
        ("dimension one, girth 3", Box::new(|| run_scenarios(&["dim1-girth3-s0", "dim1-girth3-s1"]))),
        (
            "dimension one, girth 4",
            Box::new(move || {
                if slow {
                    run_scenarios(&["dim1-girth4-s0", "dim1-girth4-s1"])
                } else {
                    run_scenarios(&["dim1-girth4-s0"]).map(|m| m + "; dim1-girth4-s1 skipped (slow)")
                }
            }),
        ),
        (
            "characteristic dependence",
            Box::new(move || {
                if slow {
                    run_scenarios(&["dk16", "char-dependence-s1", "char-dependence-s2"])
                } else {
                    run_scenarios(&["dk16", "char-dependence-s1"]).map(|m| m + "; char-dependence-s2 skipped (slow)")
                }
            }),
        ),
        ("eleven-vertex square", Box::new(|| run_scenarios(&["katzman11"]))),
        ("closure oracles and normality", Box::new(oracle_equivalence)),
        ("property suite", Box::new(move || property_suite(slow))),
    ];

    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} PASS  {title}: {msg} [{secs:.1}s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {title}: {msg} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
