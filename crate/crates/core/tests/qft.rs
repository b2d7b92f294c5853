use dimer_core::dimer::{enumerate, partition_oracle, BoundaryCondition, WeightSystem};
use dimer_core::kasteleyn::{classes, construct, epsilon, quadratic_form};
use dimer_core::qft::*;
use dimer_core::rational::{frac, int, one, zero};
use dimer_core::suite;
use dimer_core::surgery::{arcs, closed_curves, cut_along_curve, cut_edges, GluingMap};
use dimer_core::{Rational, SurfaceGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn plus(g: &SurfaceGraph) -> Vec<i8> {
    vec![1; g.boundary_vertices().len()]
}

#[test]
fn closed_graph_is_scalar() {
    let g = suite::theta();
    let w = WeightSystem::unit(&g);
    for method in [Method::Oracle, Method::Pfaffian] {
        let v = boundary_vector(&g, &w, &[], method).unwrap();
        assert!(v.is_empty());
        assert_eq!(v.amplitudes, vec![int(3)]);
    }
}

#[test]
fn edge_disk_amplitudes() {
    let g = suite::edge_disk();
    let w = WeightSystem::from_values(&g, vec![int(5); g.n_edges()]).unwrap();
    let v = boundary_vector(&g, &w, &plus(&g), Method::Pfaffian).unwrap();
    assert_eq!(v.len(), 1);
    let e = w.get(g.graph_edges()[0]).clone();
    assert_eq!(v.amplitudes, vec![zero(), e]);
    assert_eq!(v.to_json()["amplitudes"]["1"], "5/1");
}

#[test]
fn methods_agree_on_cut_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["theta", "four-cycle", "annulus-ladder", "torus-2v"] {
        let g = suite::by_name(name).unwrap();
        let w = WeightSystem::random(&g, &mut rng);
        for c in closed_curves(&g, 4).into_iter().chain(arcs(&g, 3)).take(6) {
            let cut = cut_along_curve(&g, &w, &c, &vec![int(2); c.interior().len()], None).unwrap();
            let s = plus(&cut.graph);
            let a = boundary_vector(&cut.graph, &cut.weights, &s, Method::Oracle).unwrap();
            let b = boundary_vector(&cut.graph, &cut.weights, &s, Method::Pfaffian).unwrap();
            assert_eq!(a, b, "{name}");
            assert_eq!(a.amplitude(0), &partition_oracle(&cut.graph, &cut.weights, Some(&BoundaryCondition::new(vec![]))));
        }
    }
}

/// Two copies of the edge disk, as one graph.
fn two_edges() -> SurfaceGraph {
    let g = suite::single_edge();
    let w = WeightSystem::unit(&g);
    let cut = cut_edges(&g, &w, &[0], &[one()], None).unwrap();
    cut.graph
}

#[test]
fn disjoint_union_is_tensor_product() {
    let g = suite::four_cycle();
    let w = WeightSystem::from_values(&g, vec![int(2), int(3), int(5), int(7)]).unwrap();
    let cut = cut_edges(&g, &w, &[0, 2], &[one(), one()], None).unwrap();
    assert_eq!(cut.graph.b0(), 2);
    let whole = boundary_vector(&cut.graph, &cut.weights, &plus(&cut.graph), Method::Pfaffian).unwrap();
    let parts = components(&cut.graph, &cut.weights).unwrap();
    let vs: Vec<BoundaryVector> = parts
        .iter()
        .map(|(h, hw)| boundary_vector(h, hw, &plus(h), Method::Oracle).unwrap())
        .collect();
    let prod = vs[0].tensor(&vs[1]).permuted(&whole.vertices).unwrap();
    assert_eq!(prod, whole);

    let g = two_edges();
    let w = WeightSystem::unit(&g);
    let v = boundary_vector(&g, &w, &plus(&g), Method::Oracle).unwrap();
    // both end points of the single edge are boundary: only the full
    // condition carries weight
    assert_eq!(v.len(), 2);
    assert_eq!(v.amplitudes, vec![zero(), zero(), zero(), one()]);
}

#[test]
fn contraction_basics() {
    let g = suite::four_cycle();
    let w = WeightSystem::from_values(&g, vec![int(2), int(3), int(5), int(7)]).unwrap();
    let cut = cut_edges(&g, &w, &[0, 2], &[one(), one()], None).unwrap();
    let mut v = boundary_vector(&cut.graph, &cut.weights, &plus(&cut.graph), Method::Oracle).unwrap();
    assert_eq!(v.contract(&[]).unwrap(), v);
    let slot = |v: &BoundaryVector, n: usize| {
        let g = &cut.graph;
        v.vertices.iter().position(|x| x == g.vertex_name(n)).unwrap()
    };
    let mut pairs = Vec::new();
    for phi in &cut.regluing {
        for &(x, y) in &phi.pairs {
            pairs.push((slot(&v, x), slot(&v, y)));
        }
    }
    assert_eq!(v.contract(&pairs), Err(dimer_core::DimerError::SignMismatch(pairs[0].0)));
    for &(_, y) in &pairs {
        v.signs[y] = -1;
    }
    let full = v.contract(&pairs).unwrap();
    assert_eq!(full.amplitudes, vec![partition_oracle(&g, &w, None)]);
    assert_eq!(full.amplitudes, vec![int(2 * 5 + 3 * 7)]);
}

#[test]
fn theta_full_contraction() {
    let g = suite::theta();
    let w = WeightSystem::unit(&g);
    let cut = cut_edges(&g, &w, &[0, 1, 2], &[one(), one(), one()], None).unwrap();
    let mut v = boundary_vector(&cut.graph, &cut.weights, &plus(&cut.graph), Method::Pfaffian).unwrap();
    let slot = |n: usize| v.vertices.iter().position(|x| x == cut.graph.vertex_name(n)).unwrap();
    let pairs: Vec<(usize, usize)> =
        cut.regluing.iter().flat_map(|phi| phi.pairs.iter().map(|&(x, y)| (slot(x), slot(y)))).collect();
    for &(_, y) in &pairs {
        v.signs[y] = -1;
    }
    assert_eq!(v.contract(&pairs).unwrap().amplitudes, vec![int(3)]);
}

#[test]
fn relabeling_permutes_amplitudes() {
    let g = suite::annulus_ladder();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = WeightSystem::random(&g, &mut rng);
    let v = boundary_vector(&g, &w, &plus(&g), Method::Pfaffian).unwrap();
    let mut order = v.vertices.clone();
    order.reverse();
    order.rotate_left(1);
    let p = v.permuted(&order).unwrap();
    for bc in BoundaryCondition::all(&g) {
        let names: Vec<&str> = bc.matched_vertices(&g).into_iter().filter(|&x| g.is_boundary_vertex(x)).map(|x| g.vertex_name(x)).collect();
        assert_eq!(v.amplitude_of(&names), p.amplitude_of(&names));
    }
    assert_eq!(p.permuted(&v.vertices).unwrap(), v);
}

/// Amplitudes of the glued graph do not depend on the embedding.
#[test]
fn gluing_axiom_on_regluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = Vec::new();
    for name in ["theta", "four-cycle", "annulus-ladder", "torus-2v", "torus-4x4"] {
        let g = suite::by_name(name).unwrap();
        let w = WeightSystem::random(&g, &mut rng);
        let mut cs = closed_curves(&g, 4);
        cs.truncate(3);
        cs.extend(arcs(&g, 3).into_iter().take(3));
        for c in cs {
            let cut = cut_along_curve(&g, &w, &c, &vec![frac(3, 2); c.interior().len()], None).unwrap();
            if cut.graph.boundary_vertices().len() > 12 {
                continue;
            }
            let r = gluing_axiom_check(&cut.graph, &cut.weights, &cut.regluing[0], Method::Oracle).unwrap();
            assert!(r.holds(), "{name}");
            let r = gluing_axiom_check(&cut.graph, &cut.weights, &cut.regluing[0], Method::Pfaffian).unwrap();
            assert!(r.holds(), "{name}");
            checked.push(name);
        }
    }
    for name in ["theta", "annulus-ladder", "torus-2v"] {
        assert!(checked.contains(&name), "{name} had no instance");
    }
    assert!(checked.len() >= 5);
}

#[test]
fn empty_and_partial_gluings() {
    let g = suite::annulus_ladder();
    let w = WeightSystem::unit(&g);
    let empty = GluingMap { pairs: vec![], closed: false };
    let r = gluing_axiom_check(&g, &w, &empty, Method::Oracle).unwrap();
    assert!(r.holds());

    // multi-edge segments: closed curves on a grid, then arcs across the
    // resulting hole
    let g = suite::planar_grid(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let w = WeightSystem::random(&g, &mut rng);
    let mut done = 0;
    for c in closed_curves(&g, 4) {
        if c.interior().len() < 3 || done == 2 {
            continue;
        }
        let t: Vec<Rational> = (1..=c.interior().len() as i64).map(int).collect();
        let cut = cut_along_curve(&g, &w, &c, &t, None).unwrap();
        let r = gluing_axiom_check(&cut.graph, &cut.weights, &cut.regluing[0], Method::Pfaffian).unwrap();
        assert!(r.holds());
        for a in arcs(&cut.graph, 4).into_iter().filter(|a| a.interior().len() >= 2).take(2) {
            let t: Vec<Rational> = (1..=a.interior().len() as i64).map(int).collect();
            let cut2 = cut_along_curve(&cut.graph, &cut.weights, &a, &t, None).unwrap();
            let r = gluing_axiom_check(&cut2.graph, &cut2.weights, &cut2.regluing[0], Method::Pfaffian).unwrap();
            assert!(r.holds());
            done += 1;
        }
    }
    assert!(done > 0);
}

fn check_fermionic(g: &SurfaceGraph, w: &WeightSystem) {
    let order = g.boundary_vertices();
    let bos = boundary_vector(g, w, &plus(g), Method::Oracle).unwrap();
    let mut rev = order.clone();
    rev.reverse();
    for ord in [order.clone(), rev] {
        let f = fermionic_vector(g, w, &ord).unwrap();
        for m in 0..1usize << ord.len() {
            let names: Vec<&str> = (0..ord.len()).filter(|i| m >> i & 1 == 1).map(|i| g.vertex_name(ord[i])).collect();
            assert_eq!(&f.coefficient(m as u64), bos.amplitude_of(&names).unwrap());
        }
    }
}

#[test]
fn fermionic_matches_bosonic() {
    let g = suite::theta();
    let w = WeightSystem::unit(&g);
    let f = fermionic_vector(&g, &w, &[]).unwrap();
    assert_eq!(f.coefficient(0), int(3));

    let g = suite::edge_disk();
    let w = WeightSystem::from_values(&g, vec![int(4); g.n_edges()]).unwrap();
    let f = fermionic_vector(&g, &w, &g.boundary_vertices()).unwrap();
    assert_eq!((f.coefficient(0), f.coefficient(1)), (zero(), int(4)));

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut n = 0;
    for name in ["theta", "four-cycle", "annulus-ladder", "torus-2v", "torus-4x4", "genus2"] {
        let g = suite::by_name(name).unwrap();
        let w = WeightSystem::random(&g, &mut rng);
        if g.boundary_vertices().len() <= 6 && g.n_vertices() <= 20 {
            check_fermionic(&g, &w);
            n += 1;
        }
        for c in closed_curves(&g, 4).into_iter().take(2).chain(arcs(&g, 3).into_iter().take(2)) {
            let cut = cut_along_curve(&g, &w, &c, &vec![int(2); c.interior().len()], None).unwrap();
            if cut.graph.boundary_vertices().len() <= 6 && cut.graph.n_vertices() <= 20 {
                check_fermionic(&cut.graph, &cut.weights);
                n += 1;
            }
        }
    }
    assert!(n >= 8, "{n}");
}

#[test]
fn measure_is_independent_of_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["four-cycle", "torus-2v", "annulus-ladder"] {
        let g = suite::by_name(name).unwrap();
        let _ = WeightSystem::random(&g, &mut rng);
        let k0 = construct(&g, None).unwrap();
        for k in classes(&g, &k0).unwrap() {
            for bc in BoundaryCondition::all(&g) {
                let ds = enumerate(&g, Some(&bc));
                let values: Vec<i32> = ds
                    .iter()
                    .map(|d| quadratic_form(&g, &k, d).arf() * epsilon(&g, &k, d).unwrap())
                    .collect();
                assert!(values.windows(2).all(|p| p[0] == p[1]), "{name}");
            }
        }
    }
}

/// Pairing the Grassmann vectors of the two halves of a separated graph
/// gives the partition function of the whole.
#[test]
fn fermionic_pairing_reglues() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cases: Vec<(SurfaceGraph, Vec<usize>)> =
        vec![(suite::four_cycle(), vec![0, 2]), (suite::theta(), vec![0, 1, 2]), (suite::planar_grid(3, 2), vec![])];
    for (g, mut edges) in cases {
        let w = WeightSystem::random(&g, &mut rng);
        if edges.is_empty() {
            // the edges between the two columns of the grid
            let left: Vec<bool> = (0..g.n_vertices()).map(|v| g.vertex_name(v).starts_with("0_")).collect();
            edges = (0..g.n_edges())
                .filter(|&e| {
                    let [a, b] = g.halves(e);
                    left[g.vertex(a)] != left[g.vertex(b)]
                })
                .collect();
        }
        let ts: Vec<Rational> = edges.iter().map(|_| int(2)).collect();
        let cut = cut_edges(&g, &w, &edges, &ts, None).unwrap();
        assert_eq!(cut.graph.b0(), 2, "cut must separate");
        let parts = components(&cut.graph, &cut.weights).unwrap();
        // pair generators: x in one component, y in the other, same index
        let pairs: Vec<(usize, usize)> = cut.regluing.iter().flat_map(|p| p.pairs.clone()).collect();
        let side = |v: usize| cut.graph.component_of(v);
        let mut order0 = Vec::new();
        let mut order1 = Vec::new();
        for (x, y) in pairs {
            let (a, b) = if side(x) == 0 { (x, y) } else { (y, x) };
            order0.push(parts[0].0.vertex_by_name(cut.graph.vertex_name(a)).unwrap());
            order1.push(parts[1].0.vertex_by_name(cut.graph.vertex_name(b)).unwrap());
        }
        let f0 = fermionic_vector(&parts[0].0, &parts[0].1, &order0).unwrap();
        let f1 = fermionic_vector(&parts[1].0, &parts[1].1, &order1).unwrap();
        let z = partition_oracle(&g, &w, None);
        assert_eq!(fermionic_pairing(&f0, &f1).unwrap(), z);
    }
}
