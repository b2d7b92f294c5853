use dimer_core::dimer::{self, enumerate, partial_partition_oracle, partition_oracle, WeightSystem};
use dimer_core::gf2::BitVec;
use dimer_core::kasteleyn::{self, construct, QuadraticForm};
use dimer_core::{suite, HomologyClass, SurfaceGraph, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn suite_graphs() -> Vec<(&'static str, SurfaceGraph)> {
    suite::NAMES
        .iter()
        .map(|n| (*n, suite::by_name(n).unwrap()))
        .collect()
}

#[test]
fn class_resolved_sums_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["annulus-ladder", "torus-2v", "torus-4x4", "genus2", "edge-disk"] {
        let g = suite::by_name(name).unwrap();
        let w = WeightSystem::random(&g, &mut rng);
        let configs = enumerate(&g, None);
        let d0 = &configs[rng.gen_range(0..configs.len())];
        for alpha in HomologyClass::all(Variant::Absolute, g.b1()) {
            let lhs = kasteleyn::partition_z_alpha(&g, &w, &alpha, d0).unwrap();
            let rhs = partial_partition_oracle(&g, &w, &alpha, d0).unwrap();
            assert_eq!(lhs, rhs, "{name} alpha={:?}", alpha.coords);
        }
    }
}

#[test]
fn full_partition_matches_oracle_with_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in suite_graphs() {
        for _ in 0..3 {
            let w = WeightSystem::random(&g, &mut rng);
            for bc in dimer::BoundaryCondition::all(&g) {
                let Ok(d0) = dimer::first_configuration(&g, &bc) else { continue };
                assert_eq!(
                    kasteleyn::partition_z(&g, &w, &d0).unwrap(),
                    partition_oracle(&g, &w, Some(&bc)),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn corollary_difference_is_intersection_with_delta() {
    for (name, g) in suite_graphs() {
        let k = construct(&g, None).unwrap();
        let configs = enumerate(&g, None);
        for d in configs.iter().take(6) {
            for d2 in configs.iter().take(6) {
                if d.boundary(&g) != d2.boundary(&g) {
                    continue;
                }
                let q1 = kasteleyn::quadratic_form(&g, &k, d);
                let q2 = kasteleyn::quadratic_form(&g, &k, d2);
                let delta = dimer::delta_absolute(&g, d, d2).unwrap();
                for alpha in HomologyClass::all(Variant::Absolute, g.b1()) {
                    assert_eq!(
                        q1.eval(&alpha.coords) ^ q2.eval(&alpha.coords),
                        g.class_intersection(&alpha, &delta),
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn form_is_representative_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, g) in suite_graphs() {
        if g.b1() == 0 {
            continue;
        }
        let k = construct(&g, None).unwrap();
        let configs = enumerate(&g, None);
        let d = &configs[0];
        let q = kasteleyn::quadratic_form(&g, &k, d);
        let faces = g.internal_faces();
        for _ in 0..20 {
            let alpha = HomologyClass {
                variant: Variant::Absolute,
                coords: BitVec::from_indices(g.b1(), (0..g.b1()).filter(|_| rng.gen())),
            };
            let mut cycle = g.lift(&alpha);
            for &f in &faces {
                if rng.gen_bool(0.4) {
                    cycle.xor_assign(&g.face_chain(f));
                }
            }
            assert_eq!(
                kasteleyn::cycle_value(&g, &k, d, &cycle).unwrap(),
                q.eval(&alpha.coords),
                "{name}"
            );
        }
    }
}

#[test]
fn polarization_and_arf_values() {
    for (_, g) in suite_graphs() {
        let k = construct(&g, None).unwrap();
        let d = &enumerate(&g, None)[0];
        for k in kasteleyn::classes(&g, &k).unwrap() {
            let q = kasteleyn::quadratic_form(&g, &k, d);
            for a in HomologyClass::all(Variant::Absolute, g.b1()) {
                for b in HomologyClass::all(Variant::Absolute, g.b1()) {
                    let s = a.add(&b).unwrap();
                    assert_eq!(
                        q.eval(&s.coords),
                        q.eval(&a.coords) ^ q.eval(&b.coords) ^ g.class_intersection(&a, &b)
                    );
                }
            }
            assert!([-1, 0, 1].contains(&q.arf()));
        }
    }
    let odd = QuadraticForm {
        values: BitVec::from_bools(&[true, true]),
        gram: vec![BitVec::from_bools(&[false, true]), BitVec::from_bools(&[true, false])],
    };
    assert_eq!(odd.arf(), -1);
}
