use clap::{Parser, Subcommand, ValueEnum};
use dimer_core::bipartite::{self, HeightBasis};
use dimer_core::dimer::{enumerate, first_configuration, partial_partition_oracle, partition_oracle, BoundaryCondition, DimerConfiguration, WeightSystem};
use dimer_core::gf2::BitVec;
use dimer_core::json::{parse_graph, GraphFile};
use dimer_core::kasteleyn::{self, classes, construct};
use dimer_core::qft::{self, bitstring, Method};
use dimer_core::surgery::{self, CutCurve, GluingMap};
use dimer_core::{rational, suite, verify, DimerError, HomologyClass, Rational, SurfaceGraph, Variant};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dimers", version, about = "Dimer models on surface graphs with boundary")]
struct Cli {
    /// Print numbers as floating point instead of exact p/q.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Pfaffian,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Topology of the surface and basic counts.
    Info { graph: String },
    /// Enumerate dimer configurations.
    Matchings {
        graph: String,
        /// Matched boundary vertices, comma separated (empty for none).
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Partition function.
    Partition {
        graph: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Homology class relative to the reference configuration, as bits.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Kasteleyn orientation, its classes, quadratic forms and Arf invariants.
    Kasteleyn {
        graph: String,
        #[arg(long)]
        list_classes: bool,
        #[arg(long)]
        forms: bool,
        #[arg(long)]
        arf: bool,
    },
    /// Cut along edges or a curve of crossings.
    Cut {
        graph: String,
        /// Edges, named by either half-edge, comma separated.
        #[arg(long, conflicts_with = "curve")]
        edges: Option<String>,
        /// Crossed half-edges in order, comma separated.
        #[arg(long)]
        curve: Option<String>,
        /// Treat the curve as an arc between holes.
        #[arg(long)]
        arc: bool,
        /// Splitting parameters, one per cut edge (default 1).
        #[arg(long)]
        t: Option<String>,
    },
    /// Glue boundary vertices pairwise.
    Glue {
        graph: String,
        /// Pairs x:y of boundary vertex names, comma separated.
        #[arg(long)]
        map: String,
        #[arg(long)]
        closed: bool,
    },
    /// Boundary vectors, gluing checks and the Grassmann form.
    Qft {
        graph: String,
        #[arg(long)]
        vector: bool,
        #[arg(long, requires = "map")]
        glue_check: bool,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        fermionic: bool,
        /// One sign per boundary vertex, e.g. "+-+".
        #[arg(long)]
        signs: Option<String>,
        #[arg(long, value_enum, default_value = "pfaffian")]
        method: MethodArg,
    },
    /// Height functions of a bipartite graph.
    Heights {
        graph: String,
        /// Index of the reference configuration in enumeration order.
        #[arg(long, default_value_t = 0)]
        d0: usize,
        /// Anchor faces, one per component, comma separated.
        #[arg(long)]
        f0: Option<String>,
        #[arg(long)]
        measure_check: bool,
    },
    /// Run every self-check over the reference graphs.
    Verify {
        /// Run a single numbered check.
        #[arg(long)]
        only: Option<usize>,
    },
    /// List the reference graphs, or print one as a graph file.
    Suite { name: Option<String> },
}

enum Failure {
    Input(String),
    Infeasible(String),
    Check(String),
}

impl From<DimerError> for Failure {
    fn from(e: DimerError) -> Self {
        match e {
            DimerError::Parse(_) | DimerError::InvalidGraph { .. } => Failure::Input(e.to_string()),
            DimerError::Internal(_) => Failure::Check(e.to_string()),
            _ => Failure::Infeasible(e.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    float: bool,
}

impl Ctx {
    fn num(&self, x: &Rational) -> Value {
        if self.float {
            json!(rational::to_f64(x))
        } else {
            json!(rational::format(x))
        }
    }
}

fn load(source: &str) -> Result<(SurfaceGraph, WeightSystem), Failure> {
    if let Some(name) = source.strip_prefix("suite:") {
        let g = suite::by_name(name).ok_or_else(|| Failure::Input(format!("unknown reference graph {name}")))?;
        let w = WeightSystem::unit(&g);
        return Ok((g, w));
    }
    let text = std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    // accept the output of `cut` and `glue` directly
    if let Ok(Value::Object(mut m)) = serde_json::from_str::<Value>(&text) {
        if let Some(inner) = m.remove("graph") {
            return Ok(parse_graph(&inner.to_string())?);
        }
    }
    Ok(parse_graph(&text)?)
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn vertex(g: &SurfaceGraph, name: &str) -> Result<usize, Failure> {
    g.vertex_by_name(name).ok_or_else(|| Failure::Input(format!("unknown vertex {name}")))
}

fn half_edge(g: &SurfaceGraph, name: &str) -> Result<usize, Failure> {
    g.half_edge_by_name(name).ok_or_else(|| Failure::Input(format!("unknown half-edge {name}")))
}

fn boundary_condition(g: &SurfaceGraph, list: &str) -> Result<BoundaryCondition, Failure> {
    let vs = names(list).into_iter().map(|n| vertex(g, n)).collect::<Result<Vec<_>, _>>()?;
    if let Some(&v) = vs.iter().find(|&&v| !g.is_boundary_vertex(v)) {
        return Err(Failure::Input(format!("{} is not a boundary vertex", g.vertex_name(v))));
    }
    Ok(BoundaryCondition::new(vs))
}

fn rationals(list: &str) -> Result<Vec<Rational>, Failure> {
    names(list).into_iter().map(|s| rational::parse(s).map_err(Failure::from)).collect()
}

fn gluing_map(g: &SurfaceGraph, list: &str, closed: bool) -> Result<GluingMap, Failure> {
    let pairs = names(list)
        .into_iter()
        .map(|p| {
            let (x, y) = p.split_once(':').ok_or_else(|| Failure::Input(format!("expected x:y, got {p}")))?;
            Ok((vertex(g, x)?, vertex(g, y)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(GluingMap { pairs, closed })
}

/// Matched edges, each named by its first half-edge.
fn matching_json(g: &SurfaceGraph, d: &DimerConfiguration) -> Value {
    json!(d.edges.iter().map(|&e| g.half_edge_name(g.halves(e)[0])).collect::<Vec<_>>())
}

fn info(g: &SurfaceGraph) -> Outcome {
    let comps: Vec<Value> = g
        .components()
        .iter()
        .map(|c| {
            json!({
                "vertices": c.vertices.len(),
                "genus": c.genus,
                "holes": c.holes.len(),
                "euler_characteristic": c.euler_characteristic(),
            })
        })
        .collect();
    Ok(json!({
        "vertices": g.n_vertices(),
        "edges": g.graph_edges().len(),
        "boundary_edges": g.boundary_edges().len(),
        "boundary_vertices": g.boundary_vertices().iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
        "faces": g.internal_faces().len(),
        "holes": g.hole_faces().len(),
        "b0": g.b0(),
        "b1": g.b1(),
        "b2": g.b2(),
        "genus": g.genus(),
        "euler_characteristic": g.euler_characteristic(),
        "bipartite": bipartite::bipartite_structure(g).is_ok(),
        "components": comps,
    }))
}

fn matchings(ctx: &Ctx, g: &SurfaceGraph, w: &WeightSystem, boundary: Option<&str>) -> Outcome {
    let bc = boundary.map(|b| boundary_condition(g, b)).transpose()?;
    let ds = enumerate(g, bc.as_ref());
    let list: Vec<Value> = ds
        .iter()
        .map(|d| json!({ "edges": matching_json(g, d), "weight": ctx.num(&w.weight(d)) }))
        .collect();
    Ok(json!({ "count": ds.len(), "configurations": list }))
}

fn pfaffian_total(g: &SurfaceGraph, w: &WeightSystem) -> Result<Rational, Failure> {
    let mut z = Rational::from_integer(0.into());
    for bc in BoundaryCondition::all(g) {
        z += kasteleyn::partition_z_bc(g, w, &bc)?;
    }
    Ok(z)
}

fn partition(ctx: &Ctx, g: &SurfaceGraph, w: &WeightSystem, method: MethodArg, alpha: Option<&str>, boundary: Option<&str>) -> Outcome {
    let bc = boundary.map(|b| boundary_condition(g, b)).transpose()?;
    let (oracle, formula) = if let Some(bits) = alpha {
        let bc = match bc {
            Some(bc) => bc,
            None => enumerate(g, None).first().ok_or(DimerError::NoConfiguration)?.boundary(g),
        };
        let d0 = first_configuration(g, &bc)?;
        let coords: Vec<bool> = bits.chars().map(|c| c == '1').collect();
        if coords.len() != g.b1() || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(Failure::Input(format!("--alpha needs {} binary digits", g.b1())));
        }
        let alpha = HomologyClass {
            variant: Variant::Absolute,
            coords: BitVec::from_bools(&coords),
        };
        let oracle = matches!(method, MethodArg::Oracle | MethodArg::Both)
            .then(|| partial_partition_oracle(g, w, &alpha, &d0))
            .transpose()?;
        let formula = matches!(method, MethodArg::Pfaffian | MethodArg::Both)
            .then(|| kasteleyn::partition_z_alpha(g, w, &alpha, &d0))
            .transpose()?;
        (oracle, formula)
    } else {
        let oracle = matches!(method, MethodArg::Oracle | MethodArg::Both).then(|| partition_oracle(g, w, bc.as_ref()));
        let formula = match (&method, &bc) {
            (MethodArg::Oracle, _) => None,
            (_, Some(bc)) => Some(kasteleyn::partition_z_bc(g, w, bc)?),
            (_, None) => Some(pfaffian_total(g, w)?),
        };
        (oracle, formula)
    };
    let mut out = serde_json::Map::new();
    if let Some(x) = &oracle {
        out.insert("oracle".into(), ctx.num(x));
    }
    if let Some(x) = &formula {
        out.insert("pfaffian".into(), ctx.num(x));
    }
    if let (Some(a), Some(b)) = (&oracle, &formula) {
        out.insert("agree".into(), json!(a == b));
        if a != b {
            println!("{}", serde_json::to_string_pretty(&Value::Object(out)).expect("json"));
            return Err(Failure::Check(format!("oracle {a} differs from Pfaffian formula {b}")));
        }
    }
    Ok(Value::Object(out))
}

fn kasteleyn_cmd(g: &SurfaceGraph, list_classes: bool, forms: bool, arf: bool) -> Outcome {
    let k0 = construct(g, None)?;
    let mut out = serde_json::Map::new();
    out.insert("orientation".into(), k0.to_json(g));
    if !(list_classes || forms || arf) {
        return Ok(Value::Object(out));
    }
    let ks = classes(g, &k0)?;
    out.insert("class_count".into(), json!(ks.len()));
    let d0 = enumerate(g, None).into_iter().next().ok_or(DimerError::NoConfiguration)?;
    let mut list = Vec::new();
    for k in &ks {
        let mut entry = serde_json::Map::new();
        if list_classes {
            entry.insert("orientation".into(), k.to_json(g));
        }
        let q = kasteleyn::quadratic_form(g, k, &d0);
        if forms {
            let values: serde_json::Map<String, Value> = HomologyClass::all(Variant::Absolute, g.b1())
                .iter()
                .map(|a| {
                    let key: String = a.coords.to_bools().iter().map(|&b| if b { '1' } else { '0' }).collect();
                    (key, json!(u8::from(q.eval(&a.coords))))
                })
                .collect();
            entry.insert("form".into(), Value::Object(values));
        }
        if arf {
            entry.insert("arf".into(), json!(q.arf()));
        }
        list.push(Value::Object(entry));
    }
    out.insert("classes".into(), json!(list));
    Ok(Value::Object(out))
}

fn map_json(g: &SurfaceGraph, phi: &GluingMap) -> Value {
    json!({
        "pairs": phi.pairs.iter().map(|&(x, y)| json!([g.vertex_name(x), g.vertex_name(y)])).collect::<Vec<_>>(),
        "closed": phi.closed,
    })
}

fn cut(g: &SurfaceGraph, w: &WeightSystem, edges: Option<&str>, curve: Option<&str>, arc: bool, t: Option<&str>) -> Outcome {
    let cut = match (edges, curve) {
        (Some(list), None) => {
            let es = names(list)
                .into_iter()
                .map(|n| half_edge(g, n).map(|h| g.edge_of(h)))
                .collect::<Result<Vec<_>, _>>()?;
            let ts = t.map(rationals).transpose()?.unwrap_or_else(|| vec![rational::one(); es.len()]);
            surgery::cut_edges(g, w, &es, &ts, None)?
        }
        (None, Some(list)) => {
            let hs = names(list).into_iter().map(|n| half_edge(g, n)).collect::<Result<Vec<_>, _>>()?;
            let c = if arc { CutCurve::arc(hs) } else { CutCurve::closed(hs) };
            c.validate(g)?;
            let ts = t.map(rationals).transpose()?.unwrap_or_else(|| vec![rational::one(); c.interior().len()]);
            surgery::cut_along_curve(g, w, &c, &ts, None)?
        }
        _ => return Err(Failure::Input("give exactly one of --edges and --curve".into())),
    };
    let file = GraphFile::from_graph(&cut.graph, &cut.weights);
    Ok(json!({
        "graph": serde_json::to_value(&file).expect("json"),
        "regluing": cut.regluing.iter().map(|m| map_json(&cut.graph, m)).collect::<Vec<_>>(),
    }))
}

fn glue(g: &SurfaceGraph, w: &WeightSystem, map: &str, closed: bool) -> Outcome {
    let phi = gluing_map(g, map, closed)?;
    let glued = surgery::glue(g, w, &phi, None)?;
    let mut out = serde_json::Map::new();
    out.insert(
        "graph".into(),
        serde_json::to_value(GraphFile::from_graph(&glued.graph, &glued.weights)).expect("json"),
    );
    if let Ok(k) = construct(g, None) {
        let case = surgery::gluing_case(g, &phi, &k)?;
        out.insert(
            "case".into(),
            json!({
                "case": case.case,
                "injective": case.injective,
                "surjective": case.surjective,
                "obstruction_vanishes": case.obstruction_vanishes,
            }),
        );
    }
    Ok(Value::Object(out))
}

#[allow(clippy::too_many_arguments)]
fn qft_cmd(
    ctx: &Ctx,
    g: &SurfaceGraph,
    w: &WeightSystem,
    vector: bool,
    glue_check: bool,
    map: Option<&str>,
    closed: bool,
    fermionic: bool,
    signs: Option<&str>,
    method: MethodArg,
) -> Outcome {
    let method = match method {
        MethodArg::Oracle => Method::Oracle,
        _ => Method::Pfaffian,
    };
    let nb = g.boundary_vertices().len();
    let signs: Vec<i8> = match signs {
        Some(s) => s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Failure::Input(format!("bad sign {c}"))),
            })
            .collect::<Result<_, _>>()?,
        None => vec![1; nb],
    };
    let amplitudes = |v: &qft::BoundaryVector| -> Value {
        let m: serde_json::Map<String, Value> = v
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != rational::zero())
            .map(|(i, a)| (bitstring(i, v.len()), ctx.num(a)))
            .collect();
        json!({ "vertices": v.vertices, "signs": v.signs, "amplitudes": m })
    };
    let mut out = serde_json::Map::new();
    if vector || !(glue_check || fermionic) {
        let v = qft::boundary_vector(g, w, &signs, method)?;
        out.insert("vector".into(), amplitudes(&v));
    }
    if glue_check {
        let phi = gluing_map(g, map.unwrap_or(""), closed)?;
        let r = qft::gluing_axiom_check(g, w, &phi, method)?;
        out.insert(
            "glue_check".into(),
            json!({ "contracted": amplitudes(&r.contracted), "glued": amplitudes(&r.glued), "holds": r.holds() }),
        );
        if !r.holds() {
            println!("{}", serde_json::to_string_pretty(&Value::Object(out)).expect("json"));
            return Err(Failure::Check("gluing axiom fails".into()));
        }
    }
    if fermionic {
        let order = g.boundary_vertices();
        let f = qft::fermionic_vector(g, w, &order)?;
        let m: serde_json::Map<String, Value> =
            f.terms().iter().map(|(&mask, c)| (bitstring(mask as usize, nb), ctx.num(c))).collect();
        out.insert(
            "fermionic".into(),
            json!({ "generators": order.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(), "coefficients": m }),
        );
    }
    Ok(Value::Object(out))
}

fn heights(g: &SurfaceGraph, w: &WeightSystem, d0: usize, f0: Option<&str>, measure_check: bool) -> Outcome {
    let bip = bipartite::bipartite_structure(g)?;
    let ds = enumerate(g, None);
    let d0 = ds
        .get(d0)
        .ok_or_else(|| Failure::Input(format!("--d0 {d0} out of range ({} configurations)", ds.len())))?;
    let anchors = match f0 {
        Some(list) => names(list)
            .into_iter()
            .map(|s| s.parse::<usize>().map_err(|e| Failure::Input(format!("face {s}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?,
        None => bipartite::default_anchors(g),
    };
    let gamma = HeightBasis::standard(g);
    let mut list = Vec::new();
    for d in &ds {
        let s = bipartite::height_general(g, &bip, &gamma, d, d0, &anchors)?;
        list.push(json!({ "edges": matching_json(g, d), "height": s.to_json(g) }));
    }
    let mut out = serde_json::Map::new();
    out.insert("reference".into(), matching_json(g, d0));
    out.insert("heights".into(), json!(list));
    if measure_check {
        let r = bipartite::measure_check(g, &bip, w, d0, &gamma, &anchors, None)?;
        out.insert(
            "measure_check".into(),
            json!({
                "configurations": r.configurations,
                "weight_identity": r.weight_identity,
                "conditional": r.conditional,
                "boundary_heights_determined": r.boundary_heights_determined,
                "reference_shift": r.reference_shift,
                "anchor_independent": r.anchor_independent,
                "parameter_count": [r.parameter_count.0, r.parameter_count.1],
                "holds": r.holds(),
            }),
        );
        if !r.holds() {
            println!("{}", serde_json::to_string_pretty(&Value::Object(out)).expect("json"));
            return Err(Failure::Check("height measure check fails".into()));
        }
    }
    Ok(Value::Object(out))
}

fn verify_cmd(only: Option<usize>) -> Result<(), Failure> {
    let checks = match only {
        Some(id) if (1..=verify::TITLES.len()).contains(&id) => vec![verify::run(id)],
        Some(id) => return Err(Failure::Input(format!("no check {id}"))),
        None => verify::run_all(),
    };
    let mut failed = 0;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("check {} {}: {status} ({})", c.id, c.title, c.detail);
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} checks failed")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Option<Value>, Failure> {
    let ctx = Ctx { float: cli.float };
    let value = match cli.command {
        Command::Info { graph } => info(&load(&graph)?.0)?,
        Command::Matchings { graph, boundary } => {
            let (g, w) = load(&graph)?;
            matchings(&ctx, &g, &w, boundary.as_deref())?
        }
        Command::Partition {
            graph,
            method,
            alpha,
            boundary,
        } => {
            let (g, w) = load(&graph)?;
            partition(&ctx, &g, &w, method, alpha.as_deref(), boundary.as_deref())?
        }
        Command::Kasteleyn {
            graph,
            list_classes,
            forms,
            arf,
        } => kasteleyn_cmd(&load(&graph)?.0, list_classes, forms, arf)?,
        Command::Cut {
            graph,
            edges,
            curve,
            arc,
            t,
        } => {
            let (g, w) = load(&graph)?;
            cut(&g, &w, edges.as_deref(), curve.as_deref(), arc, t.as_deref())?
        }
        Command::Glue { graph, map, closed } => {
            let (g, w) = load(&graph)?;
            glue(&g, &w, &map, closed)?
        }
        Command::Qft {
            graph,
            vector,
            glue_check,
            map,
            closed,
            fermionic,
            signs,
            method,
        } => {
            let (g, w) = load(&graph)?;
            qft_cmd(&ctx, &g, &w, vector, glue_check, map.as_deref(), closed, fermionic, signs.as_deref(), method)?
        }
        Command::Heights {
            graph,
            d0,
            f0,
            measure_check,
        } => {
            let (g, w) = load(&graph)?;
            heights(&g, &w, d0, f0.as_deref(), measure_check)?
        }
        Command::Verify { only } => {
            verify_cmd(only)?;
            return Ok(None);
        }
        Command::Suite { name: None } => json!(suite::NAMES),
        Command::Suite { name: Some(name) } => {
            let g = suite::by_name(&name).ok_or_else(|| Failure::Input(format!("unknown reference graph {name}")))?;
            serde_json::to_value(GraphFile::from_graph(&g, &WeightSystem::unit(&g))).expect("json")
        }
    };
    Ok(Some(value))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(v)) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error for a filter-style tool
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (1, m),
                Failure::Infeasible(m) => (2, m),
                Failure::Check(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
