//! Small reference surface graphs used by tests, benchmarks and the CLI.

use crate::surface_graph::{Builder, SurfaceGraph};

pub const NAMES: &[&str] = &[
    "single-edge",
    "theta",
    "four-cycle",
    "edge-disk",
    "annulus-ladder",
    "torus-2v",
    "torus-4x4",
    "genus2",
    "grid-3x3",
];

pub fn by_name(name: &str) -> Option<SurfaceGraph> {
    Some(match name {
        "single-edge" => single_edge(),
        "theta" => theta(),
        "four-cycle" => four_cycle(),
        "edge-disk" => edge_disk(),
        "annulus-ladder" => annulus_ladder(),
        "torus-2v" => torus_two_vertex(),
        "torus-4x4" => torus_grid(4),
        "genus2" => genus_two(),
        "grid-3x3" => planar_grid(4, 4),
        _ => return None,
    })
}

fn finish(b: Builder) -> SurfaceGraph {
    b.build().expect("reference graph is valid")
}

/// One edge on the sphere.
pub fn single_edge() -> SurfaceGraph {
    let mut b = Builder::new();
    let (u, v) = (b.vertex("u"), b.vertex("v"));
    b.edge(u, 0.0, v, 180.0);
    finish(b)
}

/// Two vertices joined by three parallel edges on the sphere.
pub fn theta() -> SurfaceGraph {
    let mut b = Builder::new();
    let (u, v) = (b.vertex("u"), b.vertex("v"));
    for a in [30.0, 0.0, -30.0] {
        b.edge(u, a, v, 180.0 - a);
    }
    finish(b)
}

/// Square 0-1-2-3 on the sphere; edge k joins k and k+1.
pub fn four_cycle() -> SurfaceGraph {
    let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let mut b = Builder::new();
    let vs = b.vertices(["0", "1", "2", "3"]);
    for k in 0..4 {
        b.straight_edge(vs[k], pts[k], vs[(k + 1) % 4], pts[(k + 1) % 4]);
    }
    finish(b)
}

/// Disk containing one edge `u-b` with `b` on the boundary circle.
pub fn edge_disk() -> SurfaceGraph {
    let mut b = Builder::new();
    let (u, v) = (b.vertex("u"), b.vertex("b"));
    b.edge(u, 0.0, v, 180.0);
    b.boundary_edge(v, 90.0, v, 270.0);
    finish(b)
}

/// Two concentric 4-cycles joined by rungs, with one boundary vertex
/// hanging off each ring into the adjacent hole.
pub fn annulus_ladder() -> SurfaceGraph {
    let mut b = Builder::new();
    let pos = |r: f64, k: usize| {
        let a = (k as f64) * std::f64::consts::FRAC_PI_2;
        (r * a.cos(), r * a.sin())
    };
    let o: Vec<usize> = (0..4).map(|k| b.vertex(format!("o{k}"))).collect();
    let i: Vec<usize> = (0..4).map(|k| b.vertex(format!("i{k}"))).collect();
    for k in 0..4 {
        let n = (k + 1) % 4;
        b.straight_edge(o[k], pos(2.0, k), o[n], pos(2.0, n));
    }
    for k in 0..4 {
        let n = (k + 1) % 4;
        b.straight_edge(i[k], pos(1.0, k), i[n], pos(1.0, n));
    }
    for k in 0..4 {
        b.straight_edge(o[k], pos(2.0, k), i[k], pos(1.0, k));
    }
    let bo = b.vertex("b_out");
    let bi = b.vertex("b_in");
    b.edge(o[0], 0.0, bo, 180.0);
    b.boundary_edge(bo, 90.0, bo, 270.0);
    b.edge(i[0], 180.0, bi, 0.0);
    b.boundary_edge(bi, 90.0, bi, 270.0);
    finish(b)
}

/// Square lattice modulo the sublattice spanned by (1,1) and (1,-1): two
/// vertices, four edges, two faces on the torus.
pub fn torus_two_vertex() -> SurfaceGraph {
    let mut b = Builder::new();
    let (u, v) = (b.vertex("u"), b.vertex("v"));
    b.edge(u, 0.0, v, 180.0);
    b.edge(u, 90.0, v, 270.0);
    b.edge(u, 180.0, v, 0.0);
    b.edge(u, 270.0, v, 90.0);
    finish(b)
}

/// Square-tiled surface: `right[s]` and `up[s]` give the neighbours of unit
/// square `s`, each square carries an `m x m` grid of vertices.
pub fn origami(right: &[usize], up: &[usize], m: usize) -> SurfaceGraph {
    let mut b = Builder::new();
    let n = right.len();
    let id = |s: usize, x: usize, y: usize| (s * m + y) * m + x;
    for s in 0..n {
        for y in 0..m {
            for x in 0..m {
                b.vertex(format!("s{s}_{x}_{y}"));
            }
        }
    }
    for s in 0..n {
        for y in 0..m {
            for x in 0..m {
                let east = if x + 1 < m { id(s, x + 1, y) } else { id(right[s], 0, y) };
                b.edge(id(s, x, y), 0.0, east, 180.0);
                let north = if y + 1 < m { id(s, x, y + 1) } else { id(up[s], x, 0) };
                b.edge(id(s, x, y), 90.0, north, 270.0);
            }
        }
    }
    finish(b)
}

/// `m x m` square grid on the torus.
pub fn torus_grid(m: usize) -> SurfaceGraph {
    origami(&[0], &[0], m)
}

/// Three-square origami of genus two with a 2x2 grid per square.
pub fn genus_two() -> SurfaceGraph {
    origami(&[1, 0, 2], &[2, 1, 0], 2)
}

/// Planar `w x h` vertex grid.
pub fn planar_grid(w: usize, h: usize) -> SurfaceGraph {
    let mut b = Builder::new();
    for y in 0..h {
        for x in 0..w {
            b.vertex(format!("{x}_{y}"));
        }
    }
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            let p = (x as f64, y as f64);
            if x + 1 < w {
                b.straight_edge(v, p, v + 1, (p.0 + 1.0, p.1));
            }
            if y + 1 < h {
                b.straight_edge(v, p, v + w, (p.0, p.1 + 1.0));
            }
        }
    }
    finish(b)
}

/// Triangle on the sphere (not bipartite).
pub fn triangle() -> SurfaceGraph {
    let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    let mut b = Builder::new();
    let vs = b.vertices(["0", "1", "2"]);
    for k in 0..3 {
        b.straight_edge(vs[k], pts[k], vs[(k + 1) % 3], pts[(k + 1) % 3]);
    }
    finish(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(g: &SurfaceGraph) -> (usize, usize, usize, usize, usize) {
        (g.n_vertices(), g.n_edges(), g.faces().len(), g.genus(), g.b1())
    }

    #[test]
    fn euler_data() {
        assert_eq!(shape(&single_edge()), (2, 1, 1, 0, 0));
        assert_eq!(shape(&theta()), (2, 3, 3, 0, 0));
        assert_eq!(shape(&four_cycle()), (4, 4, 2, 0, 0));
        assert_eq!(shape(&edge_disk()), (2, 2, 2, 0, 0));
        assert_eq!(shape(&annulus_ladder()), (10, 16, 8, 0, 1));
        assert_eq!(shape(&torus_two_vertex()), (2, 4, 2, 1, 2));
        assert_eq!(shape(&torus_grid(4)), (16, 32, 16, 1, 2));
        assert_eq!(shape(&genus_two()), (12, 24, 10, 2, 4));
        assert_eq!(shape(&planar_grid(4, 4)), (16, 24, 10, 0, 0));
        let a = annulus_ladder();
        assert_eq!(a.hole_faces().len(), 2);
        assert_eq!(a.euler_characteristic(), 0);
        assert_eq!(edge_disk().euler_characteristic(), 1);
    }

    #[test]
    fn intersection_forms() {
        for g in [torus_two_vertex(), torus_grid(4), genus_two()] {
            let gram = g.intersection_gram();
            assert_eq!(crate::gf2::rank(gram), g.b1());
            for (i, row) in gram.iter().enumerate() {
                assert!(!row.get(i));
                for j in 0..g.b1() {
                    assert_eq!(row.get(j), gram[j].get(i));
                }
            }
        }
        assert_eq!(annulus_ladder().intersection_gram()[0].count_ones(), 0);
    }
}
