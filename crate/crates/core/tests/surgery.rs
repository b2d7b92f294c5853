use dimer_core::dimer::{delta, enumerate, BoundaryCondition, DimerConfiguration, WeightSystem};
use dimer_core::kasteleyn::{classes, construct, equivalent, is_kasteleyn, KasteleynOrientation};
use dimer_core::rational::{frac, int, one};
use dimer_core::suite;
use dimer_core::surgery::*;
use dimer_core::{Rational, SurfaceGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ones(n: usize) -> Vec<Rational> {
    vec![one(); n]
}

/// Curves of every suite graph small enough to cut quickly.
fn curves(g: &SurfaceGraph) -> Vec<CutCurve> {
    let mut cs = closed_curves(g, 4);
    cs.extend(arcs(g, 3));
    cs.truncate(24);
    cs
}

fn weight_by_name(g: &SurfaceGraph, w: &WeightSystem, other: &SurfaceGraph, ow: &WeightSystem) -> bool {
    (0..g.n_edges()).all(|e| {
        let h = other.half_edge_by_name(g.half_edge_name(g.halves(e)[0])).unwrap();
        w.get(e) == ow.get(other.edge_of(h))
    })
}

fn dimer_by_name(g: &SurfaceGraph, d: &DimerConfiguration, other: &SurfaceGraph, od: &DimerConfiguration) -> bool {
    let names = |g: &SurfaceGraph, d: &DimerConfiguration| {
        let mut v: Vec<(String, String)> = d
            .edges
            .iter()
            .map(|&e| {
                let [a, b] = g.halves(e);
                let (a, b) = (g.half_edge_name(a).to_string(), g.half_edge_name(b).to_string());
                if a < b { (a, b) } else { (b, a) }
            })
            .collect();
        v.sort();
        v
    };
    names(g, d) == names(other, od)
}

/// The same orientation expressed on another graph with the same names.
fn orientation_by_name(g: &SurfaceGraph, k: &KasteleynOrientation, other: &SurfaceGraph) -> KasteleynOrientation {
    let mut out = KasteleynOrientation::reference(other);
    for e in 0..other.n_edges() {
        let h = other.halves(e)[0];
        let gh = g.half_edge_by_name(other.half_edge_name(h)).unwrap();
        out.reversed.set(e, !k.along(g, gh));
    }
    out
}

fn all_suite() -> Vec<(&'static str, SurfaceGraph)> {
    suite::NAMES.iter().map(|n| (*n, suite::by_name(n).unwrap())).collect()
}

#[test]
fn cut_edge_weights() {
    let g = suite::single_edge();
    let w = WeightSystem::from_values(&g, vec![int(1)]).unwrap();
    let cut = cut_edges(&g, &w, &[0], &[int(2)], None).unwrap();
    let mut ws: Vec<Rational> = cut.graph.graph_edges().iter().map(|&e| cut.weights.get(e).clone()).collect();
    ws.sort();
    assert_eq!(ws, vec![frac(1, 2), int(2)]);
    // with t = 2 the split of w = 4 is symmetric
    let w = WeightSystem::from_values(&g, vec![int(4)]).unwrap();
    let cut = cut_edges(&g, &w, &[0], &[int(2)], None).unwrap();
    for e in cut.graph.graph_edges() {
        assert_eq!(cut.weights.get(e), &int(2));
    }
    assert_eq!(cut.graph.boundary_vertices().len(), 2);
}

#[test]
fn cut_edges_rejects_boundary_edges() {
    let g = suite::edge_disk();
    let w = WeightSystem::unit(&g);
    let b = g.boundary_edges()[0];
    assert!(cut_edges(&g, &w, &[b], &ones(1), None).is_err());
}

#[test]
fn cut_edges_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, g) in all_suite() {
        let w = WeightSystem::random(&g, &mut rng);
        let configs = enumerate(&g, None);
        let d = &configs[rng.gen_range(0..configs.len())];
        let edges: Vec<usize> = g.graph_edges().into_iter().take(2).collect();
        let t = [frac(1, 3), int(2)];
        let cut = cut_edges(&g, &w, &edges, &t[..edges.len()], Some(d)).unwrap();
        let (back, bw, bd) = glue_all(&cut.graph, &cut.weights, &cut.regluing, cut.dimer.as_ref()).unwrap();
        assert!(back.same_embedding(&g), "{name}");
        assert!(weight_by_name(&g, &w, &back, &bw), "{name}");
        assert!(dimer_by_name(&g, d, &back, &bd.unwrap()), "{name}");
    }
}

#[test]
fn curve_cut_topology() {
    // a circle around the only edge of the sphere graph splits off a disk
    let g = suite::single_edge();
    let c = closed_curves(&g, 1).remove(0);
    let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(1), None).unwrap();
    assert_eq!(cut.crossed, vec![0]);
    assert_eq!(cut.graph.b0(), 2);
    for comp in cut.graph.components() {
        assert_eq!((comp.genus, comp.holes.len()), (0, 1));
    }
    // a non-separating curve opens the torus into an annulus
    let g = suite::torus_two_vertex();
    let mut found = false;
    for c in closed_curves(&g, 2) {
        let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(c.interior().len()), None).unwrap();
        if cut.graph.b0() == 1 {
            assert_eq!((g.b1(), cut.graph.b1()), (2, 1));
            assert_eq!(cut.graph.components()[0].holes.len(), 2);
            found = true;
        }
    }
    assert!(found);
}

#[test]
fn invalid_curves_are_rejected() {
    let g = suite::four_cycle();
    // consecutive crossings must share a face
    let bad = CutCurve::closed(vec![0, 4]);
    let r = bad.validate(&g);
    assert!(r.is_err());
    // an edge crossed twice
    let h = 0;
    assert!(CutCurve::closed(vec![h, g.twin(h)]).validate(&g).is_err());
    assert!(CutCurve::closed(vec![]).validate(&g).is_err());
}

#[test]
fn curve_round_trip_and_transport() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in all_suite() {
        let w = WeightSystem::random(&g, &mut rng);
        let k = construct(&g, None).unwrap();
        let configs = enumerate(&g, None);
        for c in curves(&g) {
            let n = c.interior().len();
            let t: Vec<Rational> = (0..n).map(|i| [frac(1, 3), one(), int(2)][i % 3].clone()).collect();
            let d = &configs[rng.gen_range(0..configs.len())];
            let cut = cut_along_curve(&g, &w, &c, &t, Some(d)).unwrap();
            let glued = glue(&cut.graph, &cut.weights, &cut.regluing[0], cut.dimer.as_ref()).unwrap();
            assert!(glued.graph.same_embedding(&g), "{name}");
            assert!(weight_by_name(&g, &w, &glued.graph, &glued.weights), "{name}");
            assert!(dimer_by_name(&g, d, &glued.graph, glued.dimer.as_ref().unwrap()), "{name}");

            // orientations
            let kc = cut_kasteleyn(&g, &c, &k).unwrap();
            assert!(is_kasteleyn(&cut.graph, &kc), "{name}");
            let v = rng.gen_range(0..g.n_vertices());
            let kc2 = cut_kasteleyn(&g, &c, &k.flip_vertex(&g, v)).unwrap();
            assert!(equivalent(&cut.graph, &kc, &kc2).unwrap(), "{name}");
            let (gp, ks) = glue_kasteleyn(&cut.graph, &cut.regluing[0], &kc).unwrap();
            let k_back = orientation_by_name(&g, &k, &gp);
            assert!(
                ks.iter().any(|x| equivalent(&gp, x, &k_back).unwrap()),
                "{name}: reglued classes miss the original"
            );

            // class transfer
            let d2 = &configs[rng.gen_range(0..configs.len())];
            let cut2 = cut_along_curve(&g, &w, &c, &t, Some(d2)).unwrap();
            let lhs = delta(&cut.graph, cut.dimer.as_ref().unwrap(), cut2.dimer.as_ref().unwrap()).unwrap();
            let rhs = transfer_class(&g, &cut, &delta(&g, d, d2).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{name}");
            let zero = dimer_core::HomologyClass::zero(dimer_core::Variant::Relative, g.b1());
            assert!(transfer_class(&g, &cut, &zero).unwrap().is_zero());
        }
    }
}

/// Checks the case against the rank of i* and the number of glued classes
/// against the case for every orientation class of `g`.
fn audit_gluing(g: &SurfaceGraph, phi: &GluingMap) -> u8 {
    let k0 = construct(g, None).unwrap();
    let mut case = 0;
    for k in classes(g, &k0).unwrap() {
        let gc = gluing_case(g, phi, &k).unwrap();
        assert_eq!((gc.injective, gc.surjective), (gc.rank_injective, gc.rank_surjective));
        let (gp, ks) = glue_kasteleyn(g, phi, &k).unwrap();
        let expected = match (gc.case, gc.obstruction_vanishes) {
            _ if gc.odd_closed_component => 0,
            (1, _) => 1,
            (2, _) => 2,
            (3, Some(v)) => usize::from(v),
            (4, Some(v)) => 2 * usize::from(v),
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(ks.len(), expected, "case {}", gc.case);
        for i in 0..ks.len() {
            for j in 0..i {
                assert!(!equivalent(&gp, &ks[i], &ks[j]).unwrap());
            }
        }
        case = gc.case;
    }
    case
}

#[test]
fn gluing_cases_on_regluing() {
    for (name, g) in all_suite() {
        for c in curves(&g).into_iter().take(6) {
            let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(c.interior().len()), None).unwrap();
            let case = audit_gluing(&cut.graph, &cut.regluing[0]);
            if g.b2() == 1 && cut.graph.b0() == g.b0() {
                assert_eq!(case, 2, "{name}: non-separating curve of a closed surface");
            }
        }
    }
}

fn hole_circle(g: &SurfaceGraph, v0: usize) -> Vec<usize> {
    let f = g
        .rotation(v0)
        .into_iter()
        .map(|h| g.face_of(h))
        .find(|&f| g.face(f).hole)
        .unwrap();
    let walk = &g.face(f).walk;
    let start = walk.iter().position(|&h| g.vertex(h) == v0).unwrap();
    (0..walk.len()).map(|i| g.vertex(walk[(start + i) % walk.len()])).collect()
}

/// Zips a boundary circle of even length onto itself, folding at `c[0]`.
fn zip_map(g: &SurfaceGraph, v0: usize) -> GluingMap {
    let c = hole_circle(g, v0);
    let n = c.len();
    assert_eq!(n % 2, 0);
    let j = n / 2;
    GluingMap {
        pairs: (1..=j).map(|i| (c[i], c[(n + 1 - i) % n])).collect(),
        closed: false,
    }
}

#[test]
fn folded_gluings() {
    // cut an annulus along its core, then zip one new circle: disk, case 3
    let g = suite::annulus_ladder();
    let core = closed_curves(&g, 4)
        .into_iter()
        .find(|c| {
            let cut = cut_along_curve(&g, &WeightSystem::unit(&g), c, &ones(c.interior().len()), None).unwrap();
            c.interior().len() % 2 == 0
                && cut.graph.b0() == 2
                && cut.graph.components().iter().all(|comp| comp.holes.len() == 2)
        })
        .expect("core curve");
    let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &core, &ones(core.interior().len()), None).unwrap();
    let h = &cut.graph;
    assert_eq!(audit_gluing(h, &cut.regluing[0]), 3);
    let phi = zip_map(h, cut.new_pairs[0].0);
    let glued = glue(h, &WeightSystem::unit(h), &phi, None).unwrap();
    assert_eq!(glued.graph.b0(), 2);
    assert_eq!(audit_gluing(h, &phi), 3);

    // zipping the circle of a disk closes it into a sphere: case 1
    let g = suite::planar_grid(3, 3);
    let c = closed_curves(&g, 4)
        .into_iter()
        .find(|c| c.interior().len() == 4)
        .unwrap();
    let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(4), None).unwrap();
    let h = &cut.graph;
    let mut zipped = 0;
    for v in hole_circle(h, cut.new_pairs[0].0) {
        let phi = zip_map(h, v);
        // folding may pair two stems of one corner vertex into a loop
        let Ok(glued) = glue(h, &WeightSystem::unit(h), &phi, None) else { continue };
        assert_eq!(glued.graph.b2(), 1);
        assert_eq!(audit_gluing(h, &phi), 1);
        zipped += 1;
    }
    assert!(zipped > 0);
}

#[test]
fn case_four_on_holed_torus() {
    // drill a hole into the torus, then cut a non-separating curve: pants
    let g = suite::torus_grid(2);
    let cut = closed_curves(&g, 4)
        .into_iter()
        .map(|c| cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(c.interior().len()), None).unwrap())
        .find(|cut| cut.graph.b0() == 2)
        .expect("separating curve");
    let h = cut.graph;
    let mut seen = false;
    for c2 in closed_curves(&h, 4) {
        let cut2 = cut_along_curve(&h, &WeightSystem::unit(&h), &c2, &ones(c2.interior().len()), None).unwrap();
        if cut2.graph.b0() == h.b0() && cut2.graph.genus() < h.genus() {
            assert_eq!(audit_gluing(&cut2.graph, &cut2.regluing[0]), 4);
            seen = true;
            break;
        }
    }
    assert!(seen);
}

#[test]
fn gluing_two_disks_along_arcs() {
    let g = suite::planar_grid(3, 3);
    let c = closed_curves(&g, 4)
        .into_iter()
        .find(|c| c.interior().len() == 4)
        .unwrap();
    let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(4), None).unwrap();
    let h = &cut.graph;
    // one vertex of each new circle, paired as a segment
    let (x, y) = cut.new_pairs[0];
    let phi = GluingMap { pairs: vec![(x, y)], closed: false };
    let glued = glue(h, &WeightSystem::unit(h), &phi, None).unwrap();
    let gp = &glued.graph;
    assert_eq!((gp.b0(), gp.genus(), gp.hole_faces().len()), (1, 0, 1));
    assert_eq!(gp.euler_characteristic(), 1);
    assert_eq!(audit_gluing(h, &phi), 1);
}

#[test]
fn invalid_gluings() {
    let g = suite::planar_grid(3, 3);
    let c = closed_curves(&g, 4)
        .into_iter()
        .find(|c| c.interior().len() == 4)
        .unwrap();
    let cut = cut_along_curve(&g, &WeightSystem::unit(&g), &c, &ones(4), None).unwrap();
    let h = &cut.graph;
    let (x, y) = cut.new_pairs[0];
    let w = WeightSystem::unit(h);
    assert!(glue(h, &w, &GluingMap { pairs: vec![], closed: false }, None).is_err());
    assert!(glue(h, &w, &GluingMap { pairs: vec![(x, x)], closed: false }, None).is_err());
    let interior = (0..h.n_vertices()).find(|&v| !h.is_boundary_vertex(v)).unwrap();
    assert!(glue(h, &w, &GluingMap { pairs: vec![(x, interior)], closed: false }, None).is_err());
    // same direction instead of opposite
    let (x2, _) = cut.new_pairs[1];
    let (_, y2) = cut.new_pairs[1];
    assert!(glue(h, &w, &GluingMap { pairs: vec![(x, y2), (x2, y)], closed: false }, None).is_err());
    // incompatible dimers
    let bc = BoundaryCondition::new(vec![x]);
    if let Some(d) = enumerate(h, Some(&bc)).first() {
        let phi = GluingMap { pairs: vec![(x, y)], closed: false };
        assert!(glue(h, &w, &phi, Some(d)).is_err());
    }
}

#[test]
fn cut_identity() {
    let ts = [frac(1, 3), one(), int(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut instances: Vec<(SurfaceGraph, CutSpec)> = Vec::new();
    let theta = suite::theta();
    instances.push((theta.clone(), CutSpec::Edges(vec![])));
    instances.push((theta.clone(), CutSpec::Edges(vec![0])));
    instances.push((suite::four_cycle(), CutSpec::Edges(vec![0, 2])));
    let torus = suite::torus_two_vertex();
    for c in closed_curves(&torus, 2).into_iter().take(3) {
        instances.push((torus.clone(), CutSpec::Curve(c)));
    }
    let ann = suite::annulus_ladder();
    for c in arcs(&ann, 2).into_iter().take(2) {
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
                let r = verify_cut_identity(g, &w, &bc, spec, &vec![t.clone(); n]).unwrap();
                assert!(r.holds(), "{r:?}");
                assert_eq!(r.subsets, 1 << n);
            }
        }
    }
    // theta at one edge: the two terms are the configurations avoiding and
    // using the edge
    let w = WeightSystem::unit(&theta);
    let bc = BoundaryCondition::new(vec![]);
    let r = verify_cut_identity(&theta, &w, &bc, &CutSpec::Edges(vec![0]), &[one()]).unwrap();
    assert_eq!((r.lhs_oracle, r.subsets), (int(3), 2));
}

#[test]
fn pfaffian_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = suite::four_cycle();
    let w = WeightSystem::random(&g, &mut rng);
    let r = pfaffian_derivative_check(&g, &w, &[0]).unwrap();
    assert_eq!(r.n, 4);
    assert!(r.holds(), "{r:?}");
    let g = suite::planar_grid(3, 2);
    let w = WeightSystem::random(&g, &mut rng);
    let d = enumerate(&g, None).remove(0);
    for k in 1..=2 {
        let r = pfaffian_derivative_check(&g, &w, &d.edges[..k]).unwrap();
        assert_eq!(r.n, 6);
        assert!(r.holds(), "{r:?}");
    }
}
