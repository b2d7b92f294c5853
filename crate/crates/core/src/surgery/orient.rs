//! Kasteleyn orientations under cutting and gluing.

use super::{cut_curve_with, glue_with, hole_halves, CutCurve, Cut, GluingMap, Glued};
use crate::dimer::WeightSystem;
use crate::error::{DimerError, Result};
use crate::gf2::{self, BitVec};
use crate::kasteleyn::{is_kasteleyn, vertex_star, walk_against, Cohomology, KasteleynOrientation};
use crate::rational;
use crate::surface_graph::SurfaceGraph;

/// Orients every new boundary edge so that its internal face is odd.
pub(crate) fn fix_new_boundary(cut: &mut Cut) {
    let g = &cut.graph;
    for &e in &cut.new_boundary {
        let f = g
            .halves(e)
            .into_iter()
            .map(|h| g.face_of(h))
            .find(|&f| !g.face(f).hole)
            .expect("new boundary edge borders an internal face");
        if walk_against(g, &cut.orientation, &g.face(f).walk).is_multiple_of(2) {
            cut.orientation.reversed.flip(e);
        }
    }
}

/// The orientation induced on the cut graph.
pub fn cut_kasteleyn(g: &SurfaceGraph, curve: &CutCurve, k: &KasteleynOrientation) -> Result<KasteleynOrientation> {
    let w = WeightSystem::unit(g);
    let t = vec![rational::one(); curve.interior().len()];
    let cut = cut_curve_with(g, &w, curve, &t, None, Some(k))?;
    if !is_kasteleyn(&cut.graph, &cut.orientation) {
        return Err(DimerError::Internal(format!("cut orientation not Kasteleyn for {:?} closed={}", curve.crossings.iter().map(|&h| g.half_edge_name(h)).collect::<Vec<_>>(), curve.closed)));
    }
    Ok(cut.orientation)
}

/// Orientation on the glued graph read off from `k`, merged edges taking
/// the orientation of their first half.
fn transfer(g: &SurfaceGraph, glued: &Glued, k: &KasteleynOrientation) -> KasteleynOrientation {
    let gp = &glued.graph;
    let mut out = KasteleynOrientation::reference(gp);
    let mut done = BitVec::zeros(gp.n_edges());
    let firsts = glued.merged.iter().map(|p| p.0);
    for h in firsts.chain(0..g.n_half_edges()) {
        let Some(nh) = glued.half_map[h] else { continue };
        let e = gp.edge_of(nh);
        if done.get(e) {
            continue;
        }
        done.set(e, true);
        let a = k.along(g, h);
        out.reversed.set(e, (gp.halves(e)[1] == nh) == a);
    }
    out
}

/// Defects of `k` with respect to gluing: disagreement on merged pairs and
/// even internal faces of the glued graph.
fn defects(g: &SurfaceGraph, glued: &Glued, k: &KasteleynOrientation) -> (BitVec, KasteleynOrientation) {
    let kp = transfer(g, glued, k);
    let gp = &glued.graph;
    let mut bits = Vec::new();
    for &(u, v) in &glued.merged {
        bits.push(k.along(g, u) == k.along(g, v));
    }
    for f in gp.internal_faces() {
        bits.push(walk_against(gp, &kp, &gp.face(f).walk).is_multiple_of(2));
    }
    (BitVec::from_bools(&bits), kp)
}

fn flip_vertices(g: &SurfaceGraph, k: &KasteleynOrientation, s: &BitVec) -> KasteleynOrientation {
    let mut x = BitVec::zeros(g.n_edges());
    for v in s.ones() {
        x.xor_assign(&vertex_star(g, v));
    }
    k.flip_edges(&x)
}

/// Representatives of the distinct classes on the glued graph induced by
/// orientations equivalent to `k` that agree along the gluing. Empty when
/// the parity obstruction does not vanish.
pub fn glue_kasteleyn(
    g: &SurfaceGraph,
    phi: &GluingMap,
    k: &KasteleynOrientation,
) -> Result<(SurfaceGraph, Vec<KasteleynOrientation>)> {
    let w = WeightSystem::unit(g);
    let (glued, _) = glue_with(g, &w, phi, None, None)?;
    let nv = g.n_vertices();
    let (base, _) = defects(g, &glued, k);
    let cols: Vec<BitVec> = (0..nv)
        .map(|v| defects(g, &glued, &k.flip_vertex(g, v)).0.xor(&base))
        .collect();
    let rows: Vec<(BitVec, bool)> = (0..base.len())
        .map(|j| (BitVec::from_bools(&cols.iter().map(|c| c.get(j)).collect::<Vec<_>>()), base.get(j)))
        .collect();
    let gp = glued.graph.clone();
    let Some((s0, kernel)) = gf2::solve_affine(&rows, nv) else {
        return Ok((gp, Vec::new()));
    };
    let k0 = transfer(g, &glued, &flip_vertices(g, k, &s0));
    let coh = Cohomology::new(&gp)?;
    let mut twists: Vec<BitVec> = Vec::new();
    let mut coords: Vec<BitVec> = Vec::new();
    for kv in &kernel {
        let kk = transfer(g, &glued, &flip_vertices(g, k, &s0.xor(kv)));
        let x = kk.reversed.xor(&k0.reversed);
        let c = coh
            .class_of(&x)
            .ok_or_else(|| DimerError::Internal("glued twist is not a cocycle".into()))?;
        let mut trial = coords.clone();
        trial.push(c.clone());
        if gf2::rank(&trial) > coords.len() {
            coords.push(c);
            twists.push(x);
        }
    }
    let mut out = Vec::new();
    for mask in 0..1usize << twists.len() {
        let mut x = BitVec::zeros(gp.n_edges());
        for (i, t) in twists.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.xor_assign(t);
            }
        }
        let kk = k0.flip_edges(&x);
        if !is_kasteleyn(&gp, &kk) {
            return Err(DimerError::Internal("glued orientation fails the face condition".into()));
        }
        out.push(kk);
    }
    Ok((gp, out))
}

/// Classification of a gluing by the restriction map `i*` from the
/// cohomology of the glued surface to that of the original one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCase {
    /// 1: isomorphism, 2: onto with kernel, 3: into with cokernel, 4: neither.
    pub case: u8,
    pub injective: bool,
    pub surjective: bool,
    /// Injectivity and surjectivity from the rank of `i*` itself.
    pub rank_injective: bool,
    pub rank_surjective: bool,
    /// For cases 3 and 4: whether the parity obstruction vanishes for the
    /// given orientation.
    pub obstruction_vanishes: Option<bool>,
    /// The glued surface has a closed component with an odd number of
    /// vertices, which admits no Kasteleyn orientation at all.
    pub odd_closed_component: bool,
}

fn case_number(injective: bool, surjective: bool) -> u8 {
    match (injective, surjective) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    }
}

/// Whether the start and end of a segment gluing are folds.
fn folds(g: &SurfaceGraph, phi: &GluingMap) -> (bool, bool) {
    if phi.closed {
        return (false, false);
    }
    let (x1, y1) = phi.pairs[0];
    let (xk, yk) = phi.pairs[phi.pairs.len() - 1];
    let start = g.edge_of(hole_halves(g, x1).1) == g.edge_of(hole_halves(g, y1).0);
    let end = g.edge_of(hole_halves(g, xk).0) == g.edge_of(hole_halves(g, yk).1);
    (start, end)
}

/// Number of edges of a boundary circle run along the hole walk from
/// `from` for `len` steps that point against `k`.
fn hole_run_against(g: &SurfaceGraph, k: &KasteleynOrientation, from: usize, len: usize) -> usize {
    let mut v = from;
    let mut n = 0;
    for _ in 0..len {
        let h = hole_halves(g, v).0;
        if !k.along(g, h) {
            n += 1;
        }
        v = g.head(h);
    }
    n
}

fn circle_len(g: &SurfaceGraph, v: usize) -> usize {
    g.face(g.face_of(hole_halves(g, v).0)).walk.len()
}

pub fn gluing_case(g: &SurfaceGraph, phi: &GluingMap, k: &KasteleynOrientation) -> Result<GluingCase> {
    let w = WeightSystem::unit(g);
    let (glued, _) = glue_with(g, &w, phi, None, None)?;
    let gp = &glued.graph;
    let (x1, y1) = phi.pairs[0];
    let (fs, fe) = folds(g, phi);
    let disjoint = !fs && !fe;
    let same = g.component_of(x1) == g.component_of(y1);
    let cycle = phi.closed || (fs && fe);
    let survivor = g.head(g.stem(x1).expect("stem"));
    let glued_closed = {
        let v = gp
            .vertex_by_name(g.vertex_name(survivor))
            .expect("stem neighbour survives gluing");
        gp.components()[gp.component_of(v)].is_closed()
    };
    let injective = !(disjoint && same);
    let surjective = !(cycle && !glued_closed);

    // i* directly: pull back a basis of H^1 of the glued graph.
    let coh = Cohomology::new(g)?;
    let coh_p = Cohomology::new(gp)?;
    // Merged boundary edges also absorb a segment of the glued curve, so
    // like removed edges they are solved for from the face conditions.
    let mut second = BitVec::zeros(g.n_edges());
    let mut absorbs = BitVec::zeros(g.n_edges());
    for &(u, v) in &glued.merged {
        second.set(g.edge_of(v), true);
        if g.is_boundary_edge(g.edge_of(u)) {
            absorbs.set(g.edge_of(u), true);
            absorbs.set(g.edge_of(v), true);
        }
    }
    let unknown: Vec<usize> = (0..g.n_edges())
        .filter(|&e| glued.edge_map[e].is_none() || absorbs.get(e))
        .collect();
    let mut images = Vec::new();
    for x in coh_p.basis() {
        // A merged edge is pulled back onto its first piece only.
        let mut y = BitVec::zeros(g.n_edges());
        for e in 0..g.n_edges() {
            if let Some(ne) = glued.edge_map[e] {
                if !second.get(e) && !absorbs.get(e) {
                    y.set(e, x.get(ne));
                }
            }
        }
        let rows: Vec<(BitVec, bool)> = g
            .internal_faces()
            .iter()
            .map(|&f| {
                let chain = g.face_chain(f);
                let coeffs: Vec<bool> = unknown.iter().map(|&e| chain.get(e)).collect();
                (BitVec::from_bools(&coeffs), chain.dot(&y))
            })
            .collect();
        let (sol, _) = gf2::solve_affine(&rows, unknown.len())
            .ok_or_else(|| DimerError::Internal("pullback has no cocycle extension".into()))?;
        for (i, &e) in unknown.iter().enumerate() {
            y.set(e, sol.get(i));
        }
        images.push(
            coh.class_of(&y)
                .ok_or_else(|| DimerError::Internal("pullback is not a cocycle".into()))?,
        );
    }
    let rank = gf2::rank(&images);
    let rank_injective = rank == coh_p.dim();
    let rank_surjective = rank == coh.dim();

    let obstruction_vanishes = if surjective {
        None
    } else if disjoint {
        let xs = hole_run_against(g, k, x1, circle_len(g, x1));
        let ys = hole_run_against(g, k, y1, circle_len(g, y1));
        Some((xs + ys).is_multiple_of(2))
    } else {
        let len = circle_len(g, x1);
        Some(hole_run_against(g, k, x1, len) % 2 == 1)
    };
    let odd_closed_component = gp
        .components()
        .iter()
        .any(|c| c.is_closed() && c.vertices.len() % 2 == 1);
    Ok(GluingCase {
        odd_closed_component,
        case: case_number(injective, surjective),
        injective,
        surjective,
        rank_injective,
        rank_surjective,
        obstruction_vanishes,
    })
}
