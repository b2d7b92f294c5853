//! Self-test sweep over the reference graphs: formulas against brute-force
//! oracles and structural invariants, grouped into numbered checks.

use crate::bipartite::{self, HeightBasis};
use crate::dimer::{self, enumerate, partial_partition_oracle, partition_oracle, BoundaryCondition, DimerConfiguration, WeightSystem};
use crate::gf2::BitVec;
use crate::grassmann;
use crate::kasteleyn::{self, classes, construct, is_kasteleyn, KasteleynOrientation};
use crate::pfaffian::{pf, SkewMatrix};
use crate::qft::{self, Method};
use crate::rational::{self, Rational};
use crate::suite;
use crate::surface_graph::{HomologyClass, SurfaceGraph, Variant};
use crate::surgery::{self, CutSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 8] = [
    "Pfaffian formula equals the oracle",
    "class-resolved sums equal the oracle",
    "Kasteleyn class count",
    "quadratic forms",
    "Arf invariants",
    "surgery",
    "boundary vectors and gluing",
    "height functions",
];

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(id: usize) -> Check {
    let outcome = match id {
        1 => pfaffian_formula(),
        2 => class_resolved(),
        3 => class_count(),
        4 => quadratic_forms(),
        5 => arf_invariants(),
        6 => surgery_checks(),
        7 => qft_checks(),
        8 => height_checks(),
        _ => Err(format!("no check {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

pub fn run_all() -> Vec<Check> {
    (1..=TITLES.len()).map(run).collect()
}

fn suite_graphs() -> Vec<(&'static str, SurfaceGraph)> {
    suite::NAMES.iter().map(|n| (*n, suite::by_name(n).expect("listed"))).collect()
}

fn pfaffian_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    for (name, g) in suite_graphs() {
        for _ in 0..3 {
            let w = WeightSystem::random(&g, &mut rng);
            for bc in BoundaryCondition::all(&g) {
                let formula = kasteleyn::partition_z_bc(&g, &w, &bc).map_err(err)?;
                let oracle = partition_oracle(&g, &w, Some(&bc));
                ensure(formula == oracle, || format!("{name}: {formula} != {oracle}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} partition functions"))
}

fn class_resolved() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut n = 0;
    for name in ["annulus-ladder", "torus-2v", "torus-4x4"] {
        let g = suite::by_name(name).expect("listed");
        let w = WeightSystem::random(&g, &mut rng);
        let configs = enumerate(&g, None);
        for d0 in [&configs[0], &configs[configs.len() / 2]] {
            for alpha in HomologyClass::all(Variant::Absolute, g.b1()) {
                let lhs = kasteleyn::partition_z_alpha(&g, &w, &alpha, d0).map_err(err)?;
                let rhs = partial_partition_oracle(&g, &w, &alpha, d0).map_err(err)?;
                ensure(lhs == rhs, || format!("{name}: {lhs} != {rhs}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} classes"))
}

/// Orbits of Kasteleyn orientations under vertex flips, found by listing
/// every orientation of every edge.
fn brute_force_classes(g: &SurfaceGraph) -> usize {
    let m = g.n_edges();
    let reference = KasteleynOrientation::reference(g);
    let code = |k: &KasteleynOrientation| (0..m).fold(0u64, |c, e| c | (u64::from(k.reversed.get(e)) << e));
    let decode = |c: u64| reference.flip_edges(&BitVec::from_indices(m, (0..m).filter(|e| c >> e & 1 == 1)));
    let kast: BTreeSet<u64> = (0..1u64 << m).filter(|&c| is_kasteleyn(g, &decode(c))).collect();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &c in &kast {
        if seen.contains(&c) {
            continue;
        }
        orbits += 1;
        seen.insert(c);
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            for v in 0..g.n_vertices() {
                let y = code(&decode(x).flip_vertex(g, v));
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    orbits
}

fn class_count() -> Outcome {
    let mut checked = Vec::new();
    for (name, g) in suite_graphs() {
        if g.n_edges() > 8 {
            continue;
        }
        let found = brute_force_classes(&g);
        ensure(found == 1 << g.b1(), || format!("{name}: {found} classes, b1 = {}", g.b1()))?;
        checked.push(format!("{name}:{found}"));
    }
    Ok(checked.join(" "))
}

fn quadratic_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, g) in suite_graphs() {
        let k0 = construct(&g, None).map_err(err)?;
        let configs = enumerate(&g, None);
        let all = HomologyClass::all(Variant::Absolute, g.b1());
        if g.b1() <= 6 {
            for k in classes(&g, &k0).map_err(err)? {
                let q = kasteleyn::quadratic_form(&g, &k, &configs[0]);
                for a in &all {
                    for b in &all {
                        let s = a.add(b).map_err(err)?;
                        let want = q.eval(&a.coords) ^ q.eval(&b.coords) ^ g.class_intersection(a, b);
                        ensure(q.eval(&s.coords) == want, || format!("{name}: polarization"))?;
                    }
                }
            }
        }
        if g.b1() > 0 {
            let d = &configs[rng.gen_range(0..configs.len())];
            let q = kasteleyn::quadratic_form(&g, &k0, d);
            for _ in 0..20 {
                let coords = BitVec::from_indices(g.b1(), (0..g.b1()).filter(|_| rng.gen()));
                let mut cycle = g.lift(&HomologyClass {
                    variant: Variant::Absolute,
                    coords: coords.clone(),
                });
                for f in g.internal_faces() {
                    if rng.gen_bool(0.4) {
                        cycle.xor_assign(&g.face_chain(f));
                    }
                }
                let v = kasteleyn::cycle_value(&g, &k0, d, &cycle).map_err(err)?;
                ensure(v == q.eval(&coords), || format!("{name}: representative dependence"))?;
            }
        }
        for d in configs.iter().take(5) {
            for d2 in configs.iter().take(5) {
                if d.boundary(&g) != d2.boundary(&g) {
                    continue;
                }
                let q1 = kasteleyn::quadratic_form(&g, &k0, d);
                let q2 = kasteleyn::quadratic_form(&g, &k0, d2);
                let delta = dimer::delta_absolute(&g, d, d2).map_err(err)?;
                for a in &all {
                    ensure(
                        q1.eval(&a.coords) ^ q2.eval(&a.coords) == g.class_intersection(a, &delta),
                        || format!("{name}: difference of forms"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{} graphs", suite::NAMES.len()))
}

fn arf_invariants() -> Outcome {
    let mut n = 0;
    for (name, g) in suite_graphs() {
        let k0 = construct(&g, None).map_err(err)?;
        let holes: Vec<HomologyClass> = g
            .hole_faces()
            .into_iter()
            .map(|f| g.class_of(&g.face_chain(f), Variant::Absolute))
            .collect::<crate::Result<_>>()
            .map_err(err)?;
        for k in classes(&g, &k0).map_err(err)? {
            for bc in BoundaryCondition::all(&g) {
                let ds = enumerate(&g, Some(&bc));
                let mut measure = None;
                for d in &ds {
                    let q = kasteleyn::quadratic_form(&g, &k, d);
                    let arf = q.arf();
                    ensure([-1, 0, 1].contains(&arf), || format!("{name}: Arf {arf}"))?;
                    let boundary_nonzero = holes.iter().any(|h| q.eval(&h.coords));
                    ensure((arf == 0) == boundary_nonzero, || format!("{name}: Arf zero iff boundary class"))?;
                    let m = arf * kasteleyn::epsilon(&g, &k, d).map_err(err)?;
                    ensure(*measure.get_or_insert(m) == m, || format!("{name}: Arf·ε depends on D0"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} forms"))
}

fn weights_by_name(g: &SurfaceGraph, w: &WeightSystem, other: &SurfaceGraph, ow: &WeightSystem) -> bool {
    (0..g.n_edges()).all(|e| {
        other
            .half_edge_by_name(g.half_edge_name(g.halves(e)[0]))
            .is_some_and(|h| w.get(e) == ow.get(other.edge_of(h)))
    })
}

fn dimer_names(g: &SurfaceGraph, d: &DimerConfiguration) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = d
        .edges
        .iter()
        .map(|&e| {
            let [a, b] = g.halves(e);
            let (a, b) = (g.half_edge_name(a).to_string(), g.half_edge_name(b).to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    v.sort();
    v
}

fn orientation_by_name(g: &SurfaceGraph, k: &KasteleynOrientation, other: &SurfaceGraph) -> Option<KasteleynOrientation> {
    let mut out = KasteleynOrientation::reference(other);
    for e in 0..other.n_edges() {
        let h = other.halves(e)[0];
        let gh = g.half_edge_by_name(other.half_edge_name(h))?;
        out.reversed.set(e, !k.along(g, gh));
    }
    Some(out)
}

fn surgery_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ts = [rational::frac(1, 3), rational::one(), rational::int(2)];
    let mut trips = 0;
    for (name, g) in suite_graphs() {
        let w = WeightSystem::random(&g, &mut rng);
        let k = construct(&g, None).map_err(err)?;
        let configs = enumerate(&g, None);
        let d = &configs[rng.gen_range(0..configs.len())];
        let edges: Vec<usize> = g.graph_edges().into_iter().take(2).collect();
        let cut = surgery::cut_edges(&g, &w, &edges, &ts[..edges.len()], Some(d)).map_err(err)?;
        let (back, bw, bd) = surgery::glue_all(&cut.graph, &cut.weights, &cut.regluing, cut.dimer.as_ref()).map_err(err)?;
        ensure(back.same_embedding(&g) && weights_by_name(&g, &w, &back, &bw), || format!("{name}: edge cut round trip"))?;
        ensure(bd.is_some_and(|bd| dimer_names(&back, &bd) == dimer_names(&g, d)), || format!("{name}: dimer round trip"))?;
        trips += 1;
        let mut curves = surgery::closed_curves(&g, 3);
        curves.truncate(3);
        curves.extend(surgery::arcs(&g, 2).into_iter().take(3));
        for c in curves {
            let t: Vec<Rational> = (0..c.interior().len()).map(|i| ts[i % 3].clone()).collect();
            let cut = surgery::cut_along_curve(&g, &w, &c, &t, Some(d)).map_err(err)?;
            let glued = surgery::glue(&cut.graph, &cut.weights, &cut.regluing[0], cut.dimer.as_ref()).map_err(err)?;
            ensure(
                glued.graph.same_embedding(&g) && weights_by_name(&g, &w, &glued.graph, &glued.weights),
                || format!("{name}: curve cut round trip"),
            )?;
            ensure(
                glued.dimer.as_ref().is_some_and(|gd| dimer_names(&glued.graph, gd) == dimer_names(&g, d)),
                || format!("{name}: dimer round trip along a curve"),
            )?;
            let kc = surgery::cut_kasteleyn(&g, &c, &k).map_err(err)?;
            ensure(is_kasteleyn(&cut.graph, &kc), || format!("{name}: cut orientation"))?;
            let (gp, ks) = surgery::glue_kasteleyn(&cut.graph, &cut.regluing[0], &kc).map_err(err)?;
            let k_back = orientation_by_name(&g, &k, &gp).ok_or_else(|| format!("{name}: names lost"))?;
            let mut hit = false;
            for x in &ks {
                hit |= kasteleyn::equivalent(&gp, x, &k_back).map_err(err)?;
            }
            ensure(hit, || format!("{name}: reglued classes miss the original"))?;
            trips += 1;
        }
    }

    let mut identities = 0;
    let mut instances: Vec<(SurfaceGraph, CutSpec)> = vec![
        (suite::theta(), CutSpec::Edges(vec![0])),
        (suite::four_cycle(), CutSpec::Edges(vec![0, 2])),
    ];
    let torus = suite::torus_two_vertex();
    for c in surgery::closed_curves(&torus, 2).into_iter().take(3) {
        instances.push((torus.clone(), CutSpec::Curve(c)));
    }
    let ann = suite::annulus_ladder();
    for c in surgery::arcs(&ann, 2).into_iter().take(2) {
        instances.push((ann.clone(), CutSpec::Curve(c)));
    }
    for (g, spec) in &instances {
        let w = WeightSystem::random(g, &mut rng);
        let n = match spec {
            CutSpec::Edges(e) => e.len(),
            CutSpec::Curve(c) => c.interior().len(),
        };
        for t in &ts {
            for bc in BoundaryCondition::all(g).into_iter().take(4) {
                let r = surgery::verify_cut_identity(g, &w, &bc, spec, &vec![t.clone(); n]).map_err(err)?;
                ensure(r.holds(), || format!("cut identity: {r:?}"))?;
                identities += 1;
            }
        }
    }

    let g = suite::four_cycle();
    let w = WeightSystem::random(&g, &mut rng);
    let r = surgery::pfaffian_derivative_check(&g, &w, &[0]).map_err(err)?;
    ensure(r.n == 4 && r.holds(), || format!("derivative n=4: {r:?}"))?;
    let g = suite::planar_grid(3, 2);
    let w = WeightSystem::random(&g, &mut rng);
    let d = enumerate(&g, None).remove(0);
    for k in 1..=2 {
        let r = surgery::pfaffian_derivative_check(&g, &w, &d.edges[..k]).map_err(err)?;
        ensure(r.n == 6 && r.holds(), || format!("derivative n=6: {r:?}"))?;
    }
    Ok(format!("{trips} round trips, {identities} cut identities, derivatives n=4,6"))
}

fn random_skew<R: Rng>(rng: &mut R, n: usize) -> SkewMatrix {
    let upper: Vec<Rational> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| rational::frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    SkewMatrix::from_upper(n, &upper)
}

fn qft_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut glued = 0;
    let mut kinds = BTreeSet::new();
    for name in ["theta", "four-cycle", "annulus-ladder", "torus-2v"] {
        let g = suite::by_name(name).expect("listed");
        let w = WeightSystem::random(&g, &mut rng);
        let mut cs = surgery::closed_curves(&g, 3);
        cs.truncate(2);
        cs.extend(surgery::arcs(&g, 2).into_iter().take(2));
        for c in cs {
            let t = vec![rational::frac(3, 2); c.interior().len()];
            let cut = surgery::cut_along_curve(&g, &w, &c, &t, None).map_err(err)?;
            for method in [Method::Oracle, Method::Pfaffian] {
                let r = qft::gluing_axiom_check(&cut.graph, &cut.weights, &cut.regluing[0], method).map_err(err)?;
                ensure(r.holds(), || format!("{name}: gluing axiom"))?;
            }
            glued += 1;
            kinds.insert(name);
        }
    }
    ensure(glued >= 5 && kinds.len() >= 3, || "too few gluing instances".into())?;

    let mut fermionic = 0;
    let mut graphs: Vec<(SurfaceGraph, WeightSystem)> = Vec::new();
    for (_, g) in suite_graphs() {
        let w = WeightSystem::random(&g, &mut rng);
        for c in surgery::arcs(&g, 2).into_iter().take(1).chain(surgery::closed_curves(&g, 2).into_iter().take(1)) {
            let t = vec![rational::int(2); c.interior().len()];
            let cut = surgery::cut_along_curve(&g, &w, &c, &t, None).map_err(err)?;
            graphs.push((cut.graph, cut.weights));
        }
        graphs.push((g, w));
    }
    for (g, w) in &graphs {
        let order = g.boundary_vertices();
        if order.len() > 6 || g.n_vertices() > 20 {
            continue;
        }
        let bos = qft::boundary_vector(g, w, &vec![1; order.len()], Method::Oracle).map_err(err)?;
        let f = qft::fermionic_vector(g, w, &order).map_err(err)?;
        for (m, a) in bos.amplitudes.iter().enumerate() {
            ensure(&f.coefficient(m as u64) == a, || "fermionic coefficient differs from amplitude".into())?;
        }
        fermionic += 1;
    }

    for i in 0..50 {
        let n = i % 9;
        let a = random_skew(&mut rng, n);
        let via_grassmann = grassmann::quadratic(&a).exp().map_err(err)?.integral();
        ensure(via_grassmann == pf(&a), || format!("Grassmann Pfaffian differs at n = {n}"))?;
    }
    Ok(format!("{glued} gluings, {fermionic} fermionic vectors, 50 Pfaffians"))
}

fn height_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let planar = [
        ("four-cycle", suite::four_cycle()),
        ("grid-3x3", suite::planar_grid(4, 4)),
        ("grid-3x2", suite::planar_grid(4, 3)),
    ];
    for (name, g) in &planar {
        let bip = bipartite::bipartite_structure(g).map_err(err)?;
        let ds = enumerate(g, None);
        for anchors in [bipartite::default_anchors(g), bipartite::alternate_anchors(g)] {
            let adm = bipartite::admissible_heights(g, &bip, &ds[0], &anchors).map_err(err)?;
            ensure(adm.len() == ds.len(), || format!("{name}: {} heights, {} configurations", adm.len(), ds.len()))?;
            let mut hit = BTreeSet::new();
            for h in &adm {
                let d = bipartite::configuration_from_height(g, &bip, &ds[0], h).ok_or("no configuration")?;
                hit.insert(d);
            }
            ensure(hit.len() == ds.len(), || format!("{name}: not a bijection"))?;
        }
    }

    let mut bip_graphs = 0;
    for (name, g) in suite_graphs() {
        let Ok(bip) = bipartite::bipartite_structure(&g) else { continue };
        let (lhs, rhs) = bipartite::parameter_count(&g);
        ensure(lhs == rhs, || format!("{name}: parameter count {lhs} != {rhs}"))?;
        let ds = enumerate(&g, None);
        if ds.len() > 400 {
            bip_graphs += 1;
            continue;
        }
        let w = WeightSystem::random(&g, &mut rng);
        let gamma = HeightBasis::standard(&g);
        let anchors = bipartite::default_anchors(&g);
        for d0 in [&ds[0], &ds[ds.len() - 1]] {
            let r = bipartite::measure_check(&g, &bip, &w, d0, &gamma, &anchors, None).map_err(err)?;
            ensure(r.holds(), || format!("{name}: {r:?}"))?;
        }
        bip_graphs += 1;
    }

    let g = suite::annulus_ladder();
    let bip = bipartite::bipartite_structure(&g).map_err(err)?;
    let w = WeightSystem::random(&g, &mut rng);
    let ds = enumerate(&g, None);
    let v = bipartite::bipartite_qft_vector(&g, &bip, &w, &ds[0], &HeightBasis::standard(&g), &bipartite::default_anchors(&g))
        .map_err(err)?;
    ensure(v.holds() && v.total() == partition_oracle(&g, &w, None), || "annulus boundary vector".into())?;
    Ok(format!("3 planar bijections, {bip_graphs} bipartite graphs, annulus vector with {} amplitudes", v.amplitudes.len()))
}
