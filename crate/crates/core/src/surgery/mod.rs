//! Cutting surface graphs along edges and curves, gluing them along
//! boundary segments, and transporting weights, dimers and orientations.

mod editor;
mod identity;
mod orient;

pub use identity::{pfaffian_derivative_check, verify_cut_identity, CutIdentityReport, CutSpec, DerivativeReport};
pub use orient::{cut_kasteleyn, glue_kasteleyn, gluing_case, GluingCase};

use crate::dimer::{DimerConfiguration, WeightSystem};
use crate::error::{DimerError, Result};
use crate::gf2::BitVec;
use crate::kasteleyn::KasteleynOrientation;
use crate::rational::Rational;
use crate::surface_graph::{HomologyClass, SurfaceGraph, Variant};
use editor::Editor;
use num_traits::Zero;

/// Curve in general position, recorded by the half-edges it crosses in
/// order. Crossing `h` goes from the face of `h` to the face of its twin,
/// so the head of `h` lies on the left of the curve.
///
/// An arc starts by crossing a boundary edge out of a hole and ends by
/// crossing one into a hole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCurve {
    pub crossings: Vec<usize>,
    pub closed: bool,
}

impl CutCurve {
    pub fn closed(crossings: Vec<usize>) -> Self {
        CutCurve { crossings, closed: true }
    }

    pub fn arc(crossings: Vec<usize>) -> Self {
        CutCurve { crossings, closed: false }
    }

    /// Crossings of graph edges (boundary ends of an arc excluded).
    pub fn interior(&self) -> &[usize] {
        if self.closed {
            &self.crossings
        } else if self.crossings.len() >= 2 {
            &self.crossings[1..self.crossings.len() - 1]
        } else {
            &[]
        }
    }

    pub fn validate(&self, g: &SurfaceGraph) -> Result<()> {
        let bad = |m: String| Err(DimerError::InvalidCurve(m));
        let hs = &self.crossings;
        if hs.iter().any(|&h| h >= g.n_half_edges()) {
            return bad("unknown half-edge".into());
        }
        if self.interior().is_empty() {
            return bad("curve crosses no edge of the graph".into());
        }
        for &h in self.interior() {
            if g.is_boundary_edge(g.edge_of(h)) {
                return bad(format!("crossing {} is a boundary edge", g.half_edge_name(h)));
            }
        }
        if !self.closed {
            let (first, last) = (hs[0], hs[hs.len() - 1]);
            if !g.is_boundary_edge(g.edge_of(first)) || !g.face(g.face_of(first)).hole {
                return bad("arc must start by crossing a boundary edge out of a hole".into());
            }
            if !g.is_boundary_edge(g.edge_of(last)) || !g.face(g.face_of(g.twin(last))).hole {
                return bad("arc must end by crossing a boundary edge into a hole".into());
            }
        }
        let mut edges: Vec<usize> = hs.iter().map(|&h| g.edge_of(h)).collect();
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return bad("an edge is crossed more than once".into());
        }
        let n = hs.len();
        let steps = if self.closed { n } else { n - 1 };
        let mut faces = Vec::new();
        for i in 0..steps {
            let f = g.face_of(g.twin(hs[i]));
            if f != g.face_of(hs[(i + 1) % n]) {
                return bad(format!(
                    "crossings {} and {} do not share a face",
                    g.half_edge_name(hs[i]),
                    g.half_edge_name(hs[(i + 1) % n])
                ));
            }
            faces.push(f);
        }
        faces.sort_unstable();
        if faces.windows(2).any(|w| w[0] == w[1]) {
            return bad("curve meets a face in more than one segment".into());
        }
        Ok(())
    }
}

/// Orientation-reversing identification of two boundary segments.
/// `pairs[i] = (x_i, y_i)`: the `x_i` follow each other along the hole
/// walk, the `y_i` against it. A closed map identifies two whole boundary
/// circles; otherwise each segment extends to the middle of the boundary
/// edges beyond its end vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingMap {
    pub pairs: Vec<(usize, usize)>,
    pub closed: bool,
}

/// Output of a cut.
#[derive(Clone, Debug)]
pub struct Cut {
    pub graph: SurfaceGraph,
    pub weights: WeightSystem,
    pub dimer: Option<DimerConfiguration>,
    /// Edges of the original graph that were cut.
    pub crossed: Vec<usize>,
    /// Original edge -> edges of the cut graph it became.
    pub edge_map: Vec<Vec<usize>>,
    /// New boundary vertex pairs `(tail side, head side)`, one per crossed
    /// edge, in the order of `crossed`.
    pub new_pairs: Vec<(usize, usize)>,
    /// Gluings undoing the cut, applied in order.
    pub regluing: Vec<GluingMap>,
    pub(crate) orientation: KasteleynOrientation,
    pub(crate) new_boundary: Vec<usize>,
}

/// Output of a gluing.
#[derive(Clone, Debug)]
pub struct Glued {
    pub graph: SurfaceGraph,
    pub weights: WeightSystem,
    pub dimer: Option<DimerConfiguration>,
    /// Original edge -> edge of the glued graph, if it survives.
    pub edge_map: Vec<Option<usize>>,
    pub(crate) half_map: Vec<Option<usize>>,
    /// Half-edges of the original graph that became twins.
    pub(crate) merged: Vec<(usize, usize)>,
}

fn check_edges(g: &SurfaceGraph, edges: &[usize]) -> Result<()> {
    for &e in edges {
        if e >= g.n_edges() {
            return Err(DimerError::UnknownEdge(e));
        }
        if g.is_boundary_edge(e) {
            return Err(DimerError::BoundaryEdge(e));
        }
    }
    let mut s = edges.to_vec();
    s.sort_unstable();
    if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
        return Err(DimerError::RepeatedIndex(w[0]));
    }
    Ok(())
}

fn check_t(t: &[Rational], n: usize) -> Result<()> {
    if t.len() != n || t.iter().any(|x| x <= &Rational::zero()) {
        return Err(DimerError::InvalidGluing(
            "cut parameters must be one positive rational per cut edge".into(),
        ));
    }
    Ok(())
}

/// Splits the piece of the edge through `h` at a new vertex placed next to
/// the tail of `h`: `h` keeps its vertex, the new half-edge starts at the
/// returned vertex. The cut-off remainder is the old twin, left dangling.
fn split(ed: &mut Editor, h: usize, vbase: &str, hbase: &str) -> (usize, usize) {
    let v = ed.add_vertex(vbase);
    let b = ed.add_half(v, hbase, false);
    let along = !ed.along[h];
    ed.pair(h, b);
    ed.along[b] = along;
    ed.weight[b] = ed.weight[h].clone();
    ed.dimer[b] = ed.dimer[h];
    (v, b)
}

fn edge_map(g: &SurfaceGraph, cut: &SurfaceGraph, half_map: &[Option<usize>]) -> Vec<Vec<usize>> {
    (0..g.n_edges())
        .map(|e| {
            let mut v: Vec<usize> = g
                .halves(e)
                .iter()
                .filter_map(|&h| half_map[h].map(|x| cut.edge_of(x)))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}

/// Cuts every edge of `edges` in two. The piece at the tail of the
/// reference half-edge gets weight `t`, the other `w/t`. Each new vertex
/// becomes a boundary vertex sitting on a small new boundary circle.
pub fn cut_edges(
    g: &SurfaceGraph,
    w: &WeightSystem,
    edges: &[usize],
    t: &[Rational],
    d: Option<&DimerConfiguration>,
) -> Result<Cut> {
    check_edges(g, edges)?;
    check_t(t, edges.len())?;
    if let Some(d) = d {
        d.validate(g)?;
    }
    let k = KasteleynOrientation::reference(g);
    let mut ed = Editor::new(g, w, d, Some(&k));
    let mut new_vertices = Vec::new();
    let mut loops = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let [h0, h1] = g.halves(e);
        let name = g.half_edge_name(h0).to_string();
        let mut ends = [0; 2];
        for (j, h) in [h0, h1].into_iter().enumerate() {
            let side = if j == 0 { "'" } else { "''" };
            let (v, b) = split(&mut ed, h, &format!("{name}{side}"), &format!("{name}{side}.s"));
            ed.weight[h] = if j == 0 { t[i].clone() } else { w.get(e) / &t[i] };
            ed.weight[b] = ed.weight[h].clone();
            let la = ed.add_half(v, &format!("{name}{side}.a"), true);
            let lb = ed.add_half(v, &format!("{name}{side}.b"), true);
            ed.pair_boundary(la, lb);
            ed.rotation[v] = vec![b, la, lb];
            loops.push(la);
            ends[j] = v;
        }
        new_vertices.push(ends);
    }
    let built = ed.build()?;
    let vmap = |v: usize| {
        built
            .graph
            .vertex_by_name(&ed.vertex_names[v])
            .expect("new vertex survives")
    };
    let new_pairs: Vec<(usize, usize)> = new_vertices.iter().map(|[a, b]| (vmap(*a), vmap(*b))).collect();
    let new_boundary = loops
        .iter()
        .map(|&h| built.graph.edge_of(built.half_map[h].expect("alive")))
        .collect();
    Ok(Cut {
        edge_map: edge_map(g, &built.graph, &built.half_map),
        weights: built.weights,
        dimer: d.map(|_| built.dimer),
        crossed: edges.to_vec(),
        regluing: new_pairs
            .iter()
            .map(|&p| GluingMap { pairs: vec![p], closed: true })
            .collect(),
        new_pairs,
        orientation: built.orientation,
        new_boundary,
        graph: built.graph,
    })
}

/// Cuts along a curve. Each crossed edge is split, the piece at the tail
/// of the crossing half-edge getting weight `t` and the other `w/t`; the
/// two sides of the curve become new boundary.
pub fn cut_along_curve(
    g: &SurfaceGraph,
    w: &WeightSystem,
    curve: &CutCurve,
    t: &[Rational],
    d: Option<&DimerConfiguration>,
) -> Result<Cut> {
    cut_curve_with(g, w, curve, t, d, None)
}

pub(crate) fn cut_curve_with(
    g: &SurfaceGraph,
    w: &WeightSystem,
    curve: &CutCurve,
    t: &[Rational],
    d: Option<&DimerConfiguration>,
    k: Option<&KasteleynOrientation>,
) -> Result<Cut> {
    curve.validate(g)?;
    let inner = curve.interior().to_vec();
    check_t(t, inner.len())?;
    if let Some(d) = d {
        d.validate(g)?;
    }
    let reference = KasteleynOrientation::reference(g);
    let mut ed = Editor::new(g, w, d, Some(k.unwrap_or(&reference)));
    let n = inner.len();
    let (mut l, mut r, mut a, mut b) = (vec![], vec![], vec![], vec![]);
    for (i, &h) in inner.iter().enumerate() {
        let ht = g.twin(h);
        let e = g.edge_of(h);
        let (ri, bi) = split(&mut ed, h, &format!("cut.r{i}"), &format!("cut.r{i}.s"));
        let (li, ai) = split(&mut ed, ht, &format!("cut.l{i}"), &format!("cut.l{i}.s"));
        ed.weight[h] = t[i].clone();
        ed.weight[bi] = t[i].clone();
        ed.weight[ht] = w.get(e) / &t[i];
        ed.weight[ai] = ed.weight[ht].clone();
        l.push(li);
        r.push(ri);
        a.push(ai);
        b.push(bi);
    }
    // lf[i]/rf[i]: boundary half-edge from l_i/r_i forward; lb[i]/rb[i]: back.
    let mut lf = vec![0; n];
    let mut lb = vec![0; n];
    let mut rf = vec![0; n];
    let mut rb = vec![0; n];
    let mut new_halves = Vec::new();
    for i in 0..n {
        lf[i] = ed.add_half(l[i], &format!("cut.l{i}.f"), true);
        rf[i] = ed.add_half(r[i], &format!("cut.r{i}.f"), true);
        lb[i] = ed.add_half(l[i], &format!("cut.l{i}.b"), true);
        rb[i] = ed.add_half(r[i], &format!("cut.r{i}.b"), true);
    }
    if curve.closed {
        for i in 0..n {
            let j = (i + 1) % n;
            ed.pair_boundary(lf[i], lb[j]);
            ed.pair_boundary(rf[i], rb[j]);
            new_halves.push(lf[i]);
            new_halves.push(rf[i]);
        }
    } else {
        let h0 = curve.crossings[0];
        let he = *curve.crossings.last().expect("nonempty");
        let t0 = g.twin(h0);
        let te = g.twin(he);
        let (along_h0, along_he) = (ed.along[h0], ed.along[he]);
        ed.pair(lb[0], t0);
        ed.pair(rb[0], h0);
        ed.pair(lf[n - 1], te);
        ed.pair(rf[n - 1], he);
        ed.along[rb[0]] = !along_h0;
        ed.along[lb[0]] = along_h0;
        ed.along[rf[n - 1]] = !along_he;
        ed.along[lf[n - 1]] = along_he;
        new_halves.extend([lb[0], rb[0], lf[n - 1], rf[n - 1]]);
        for i in 0..n - 1 {
            ed.pair_boundary(lf[i], lb[i + 1]);
            ed.pair_boundary(rf[i], rb[i + 1]);
            new_halves.push(lf[i]);
            new_halves.push(rf[i]);
        }
    }
    for i in 0..n {
        ed.rotation[l[i]] = vec![a[i], lb[i], lf[i]];
        ed.rotation[r[i]] = vec![b[i], rf[i], rb[i]];
    }
    let built = ed.build()?;
    let cg = &built.graph;
    let vmap = |v: usize| cg.vertex_by_name(&ed.vertex_names[v]).expect("new vertex survives");
    let new_pairs: Vec<(usize, usize)> = (0..n).map(|i| (vmap(r[i]), vmap(l[i]))).collect();
    let new_boundary = new_halves
        .iter()
        .map(|&h| cg.edge_of(built.half_map[h].expect("alive")))
        .collect();
    let mut cut = Cut {
        edge_map: edge_map(g, cg, &built.half_map),
        weights: built.weights,
        dimer: d.map(|_| built.dimer),
        crossed: inner.iter().map(|&h| g.edge_of(h)).collect(),
        regluing: vec![GluingMap {
            pairs: new_pairs.clone(),
            closed: curve.closed,
        }],
        new_pairs,
        orientation: built.orientation,
        new_boundary,
        graph: built.graph,
    };
    orient::fix_new_boundary(&mut cut);
    Ok(cut)
}

/// The class `β_C` on the cut graph of a relative class `β`.
pub fn transfer_class(g: &SurfaceGraph, cut: &Cut, beta: &HomologyClass) -> Result<HomologyClass> {
    let beta = match beta.variant {
        Variant::Relative => beta.clone(),
        Variant::Absolute => g.to_relative(beta)?,
    };
    let chain = g.lift(&beta);
    cut.graph.class_of(&transfer_chain(cut, &chain), Variant::Relative)
}

/// Image of an edge chain of the original graph in the cut graph.
pub fn transfer_chain(cut: &Cut, chain: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(cut.graph.n_edges());
    for e in chain.ones() {
        for &x in &cut.edge_map[e] {
            out.flip(x);
        }
    }
    out
}

/// Boundary vertex data used by gluing: the boundary half-edge at `v`
/// running along the hole walk, and the other one.
fn hole_halves(g: &SurfaceGraph, v: usize) -> (usize, usize) {
    let bs: Vec<usize> = g
        .rotation(v)
        .into_iter()
        .filter(|&h| g.is_boundary_edge(g.edge_of(h)))
        .collect();
    if g.face(g.face_of(bs[0])).hole {
        (bs[0], bs[1])
    } else {
        (bs[1], bs[0])
    }
}

fn hole_succ(g: &SurfaceGraph, v: usize) -> usize {
    g.head(hole_halves(g, v).0)
}

impl GluingMap {
    pub fn validate(&self, g: &SurfaceGraph) -> Result<()> {
        let bad = |m: &str| Err(DimerError::InvalidGluing(m.to_string()));
        let k = self.pairs.len();
        if k == 0 {
            return bad("empty gluing map");
        }
        let mut all: Vec<usize> = self.pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        if all.iter().any(|&v| v >= g.n_vertices() || !g.is_boundary_vertex(v)) {
            return bad("glued vertices must be boundary vertices");
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return bad("a vertex appears twice in the gluing map");
        }
        let xs: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        let ys: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        for i in 0..k - 1 {
            if hole_succ(g, xs[i]) != xs[i + 1] {
                return bad("first segment is not consecutive along its boundary circle");
            }
            if hole_succ(g, ys[i + 1]) != ys[i] {
                return bad("second segment does not run against the first");
            }
        }
        let face = |v: usize| g.face_of(hole_halves(g, v).0);
        if self.closed {
            if hole_succ(g, xs[k - 1]) != xs[0] || hole_succ(g, ys[0]) != ys[k - 1] {
                return bad("closed gluing needs two whole boundary circles");
            }
            if face(xs[0]) == face(ys[0]) {
                return bad("closed gluing of a circle to itself");
            }
        } else {
            let p = g.head(hole_halves(g, xs[0]).1);
            let p2 = hole_succ(g, xs[k - 1]);
            if xs.contains(&p) || xs.contains(&p2) {
                return bad("segment covers a whole boundary circle; use a closed gluing");
            }
            let q = hole_succ(g, ys[0]);
            let q2 = g.head(hole_halves(g, ys[k - 1]).1);
            let stray = |v: usize, allowed: usize, set: &[usize]| set.contains(&v) && v != allowed;
            if stray(p, ys[0], &ys) || stray(p2, ys[k - 1], &ys) || stray(q, xs[0], &xs) || stray(q2, xs[k - 1], &xs)
            {
                return bad("segments overlap");
            }
        }
        for &v in &all {
            let s = g.stem(v).expect("boundary vertex has a stem");
            if all.contains(&g.head(s)) {
                return bad("an edge joins two glued vertices");
            }
        }
        Ok(())
    }
}

/// Identifies the two segments of `phi`. Paired boundary vertices vanish,
/// their edges merge with weight equal to the product.
pub fn glue(
    g: &SurfaceGraph,
    w: &WeightSystem,
    phi: &GluingMap,
    d: Option<&DimerConfiguration>,
) -> Result<Glued> {
    glue_with(g, w, phi, d, None).map(|(glued, _)| glued)
}

pub(crate) fn glue_with(
    g: &SurfaceGraph,
    w: &WeightSystem,
    phi: &GluingMap,
    d: Option<&DimerConfiguration>,
    k: Option<&KasteleynOrientation>,
) -> Result<(Glued, KasteleynOrientation)> {
    phi.validate(g)?;
    if let Some(d) = d {
        d.validate(g)?;
        let bc = d.boundary(g);
        if phi.pairs.iter().any(|&(x, y)| bc.is_matched(x) != bc.is_matched(y)) {
            return Err(DimerError::IncompatibleDimer);
        }
    }
    let reference = KasteleynOrientation::reference(g);
    let mut ed = Editor::new(g, w, d, Some(k.unwrap_or(&reference)));
    let mut merged = Vec::new();
    for &(x, y) in &phi.pairs {
        let nx = g.twin(g.stem(x).expect("stem"));
        let ny = g.twin(g.stem(y).expect("stem"));
        let weight = w.get(g.edge_of(nx)) * w.get(g.edge_of(ny));
        let dimer = ed.dimer[nx];
        let along = ed.along[nx];
        ed.pair(nx, ny);
        ed.set_edge(nx, weight, dimer, along);
        merged.push((nx, ny));
    }
    if !phi.closed {
        let (x1, xk) = (phi.pairs[0].0, phi.pairs[phi.pairs.len() - 1].0);
        let (y1, yk) = (phi.pairs[0].1, phi.pairs[phi.pairs.len() - 1].1);
        // start: edge p -> x1 merges with y1 -> q
        let a = g.twin(hole_halves(g, x1).1);
        let b = g.twin(hole_halves(g, y1).0);
        // end: x_k -> p' merges with q' -> y_k
        let c = g.twin(hole_halves(g, xk).0);
        let dd = g.twin(hole_halves(g, yk).1);
        for (u, v) in [(a, b), (c, dd)] {
            if g.edge_of(u) == g.edge_of(v) {
                continue; // fold: the edge lies inside the glued segments
            }
            let along = ed.along[u];
            ed.pair(u, v);
            ed.set_edge(u, crate::rational::one(), false, along);
            merged.push((u, v));
        }
    }
    for &(x, y) in &phi.pairs {
        ed.kill_vertex(x);
        ed.kill_vertex(y);
    }
    let built = ed.build()?;
    let edge_map = (0..g.n_edges())
        .map(|e| built.half_map[g.halves(e)[0]].or(built.half_map[g.halves(e)[1]]).map(|h| built.graph.edge_of(h)))
        .collect();
    Ok((
        Glued {
            weights: built.weights,
            dimer: d.map(|_| built.dimer),
            edge_map,
            half_map: built.half_map,
            merged,
            graph: built.graph,
        },
        built.orientation,
    ))
}

/// Applies the gluings of `maps` one after another, translating vertex
/// ids through each intermediate graph by name.
pub fn glue_all(
    g: &SurfaceGraph,
    w: &WeightSystem,
    maps: &[GluingMap],
    d: Option<&DimerConfiguration>,
) -> Result<(SurfaceGraph, WeightSystem, Option<DimerConfiguration>)> {
    let mut cur = (g.clone(), w.clone(), d.cloned());
    for phi in maps {
        let name = |v: usize| g.vertex_name(v).to_string();
        let find = |h: &SurfaceGraph, v: usize| {
            h.vertex_by_name(&name(v))
                .ok_or_else(|| DimerError::InvalidGluing(format!("vertex {} no longer exists", name(v))))
        };
        let pairs = phi
            .pairs
            .iter()
            .map(|&(x, y)| Ok((find(&cur.0, x)?, find(&cur.0, y)?)))
            .collect::<Result<Vec<_>>>()?;
        let local = GluingMap { pairs, closed: phi.closed };
        let glued = glue(&cur.0, &cur.1, &local, cur.2.as_ref())?;
        cur = (glued.graph, glued.weights, glued.dimer);
    }
    Ok(cur)
}

/// All closed curves in general position crossing at most `max_len` graph
/// edges, each listed once per direction, starting at its lowest edge.
pub fn closed_curves(g: &SurfaceGraph, max_len: usize) -> Vec<CutCurve> {
    let mut out = Vec::new();
    for h1 in 0..g.n_half_edges() {
        if g.is_boundary_edge(g.edge_of(h1)) {
            continue;
        }
        let mut path = vec![h1];
        let mut faces = vec![g.face_of(g.twin(h1))];
        curve_dfs(g, max_len, g.face_of(h1), &mut path, &mut faces, &mut out, None);
    }
    out
}

/// All arcs from a hole to a hole crossing between 1 and `max_len` graph
/// edges.
pub fn arcs(g: &SurfaceGraph, max_len: usize) -> Vec<CutCurve> {
    let mut out = Vec::new();
    for h0 in 0..g.n_half_edges() {
        if !g.is_boundary_edge(g.edge_of(h0)) || !g.face(g.face_of(h0)).hole {
            continue;
        }
        let mut path = vec![h0];
        let mut faces = vec![g.face_of(g.twin(h0))];
        curve_dfs(g, max_len, usize::MAX, &mut path, &mut faces, &mut out, Some(h0));
    }
    out
}

fn curve_dfs(
    g: &SurfaceGraph,
    max_len: usize,
    start_face: usize,
    path: &mut Vec<usize>,
    faces: &mut Vec<usize>,
    out: &mut Vec<CutCurve>,
    arc: Option<usize>,
) {
    let c = *faces.last().expect("nonempty");
    let interior = if arc.is_some() { path.len() - 1 } else { path.len() };
    let min_edge = g.edge_of(path[0]);
    let used = |path: &[usize], h: usize| path.iter().any(|&x| g.edge_of(x) == g.edge_of(h));
    if arc.is_none() && c == start_face {
        out.push(CutCurve::closed(path.clone()));
        return;
    }
    if faces[..faces.len() - 1].contains(&c) || (arc.is_none() && faces.len() > 1 && c == faces[0]) {
        return;
    }
    for &h in &g.face(c).walk {
        if used(path, h) {
            continue;
        }
        let boundary = g.is_boundary_edge(g.edge_of(h));
        if boundary {
            if arc.is_some() && interior >= 1 && g.face(g.face_of(g.twin(h))).hole {
                let mut p = path.clone();
                p.push(h);
                out.push(CutCurve::arc(p));
            }
            continue;
        }
        if interior >= max_len || (arc.is_none() && g.edge_of(h) < min_edge) {
            continue;
        }
        path.push(h);
        faces.push(g.face_of(g.twin(h)));
        curve_dfs(g, max_len, start_face, path, faces, out, arc);
        path.pop();
        faces.pop();
    }
}
