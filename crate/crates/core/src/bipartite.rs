//! Bipartite structures, integer composition cycles, height functions and
//! volume weights.

use crate::dimer::{enumerate, BoundaryCondition, DimerConfiguration, WeightSystem};
use crate::error::{DimerError, Result};
use crate::rational::{self, Rational};
use crate::surface_graph::SurfaceGraph;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteStructure {
    pub black: Vec<bool>,
}

impl BipartiteStructure {
    /// The 0-chain Σ black − Σ white.
    pub fn beta(&self) -> Vec<i64> {
        self.black.iter().map(|&b| if b { 1 } else { -1 }).collect()
    }

    /// +1 when `h` runs from a white vertex to a black one.
    pub fn half_sign(&self, g: &SurfaceGraph, h: usize) -> i64 {
        if self.black[g.head(h)] {
            1
        } else {
            -1
        }
    }

    /// Sign of the bipartite orientation relative to the reference
    /// direction of `e`.
    pub fn edge_sign(&self, g: &SurfaceGraph, e: usize) -> i64 {
        self.half_sign(g, g.halves(e)[0])
    }
}

/// Two-coloring by breadth-first search; the first vertex of each component
/// is black.
pub fn bipartite_structure(g: &SurfaceGraph) -> Result<BipartiteStructure> {
    let n = g.n_vertices();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].expect("queued vertices are colored");
            for h in g.rotation(v) {
                if g.is_boundary_edge(g.edge_of(h)) {
                    continue;
                }
                let u = g.head(h);
                match color[u] {
                    None => {
                        color[u] = Some(!c);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == c => return Err(DimerError::NotBipartite(u)),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(BipartiteStructure {
        black: color.into_iter().map(|c| c.expect("all colored")).collect(),
    })
}

/// D − D′ as an integer chain in reference directions, dimers oriented from
/// white to black.
pub fn int_composition(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    d: &DimerConfiguration,
    d2: &DimerConfiguration,
) -> Vec<i64> {
    let mut chain = vec![0i64; g.n_edges()];
    for &e in &d.edges {
        chain[e] += bip.edge_sign(g, e);
    }
    for &e in &d2.edges {
        chain[e] -= bip.edge_sign(g, e);
    }
    chain
}

/// Boundary of an integer edge chain, per vertex.
pub fn chain_boundary(g: &SurfaceGraph, chain: &[i64]) -> Vec<i64> {
    let mut div = vec![0i64; g.n_vertices()];
    for e in g.graph_edges() {
        let (a, b) = g.endpoints(e);
        div[a] -= chain[e];
        div[b] += chain[e];
    }
    div
}

/// Curves γ_i, as integer edge chains, representing a basis of
/// H_1(Σ, ∂Σ; Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBasis {
    pub chains: Vec<Vec<i64>>,
    /// Coordinates in this basis from coordinates in the standard one.
    to_self: Vec<Vec<i64>>,
}

impl HeightBasis {
    pub fn standard(g: &SurfaceGraph) -> Self {
        let n = g.rel_h1_int_basis().len();
        HeightBasis {
            chains: g.rel_h1_int_basis().gammas.clone(),
            to_self: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    /// A user basis; rejected unless its chains are relative cycles forming
    /// a unimodular change of basis.
    pub fn custom(g: &SurfaceGraph, chains: Vec<Vec<i64>>) -> Result<Self> {
        let std = g.rel_h1_int_basis();
        if chains.len() != std.len() {
            return Err(DimerError::Parse(format!("expected {} basis curves, got {}", std.len(), chains.len())));
        }
        for c in &chains {
            if c.len() != g.n_edges() || g.boundary_edges().iter().any(|&e| c[e] != 0) {
                return Err(DimerError::NotACycle { variant: "relative" });
            }
        }
        // row i = standard coordinates of chain i
        let m: Vec<Vec<i64>> = chains.iter().map(|c| std.coords(g, c)).collect::<Result<_>>()?;
        let inv = invert_unimodular(&m)
            .ok_or_else(|| DimerError::Parse("basis curves do not span H_1(Σ, ∂Σ; Z)".into()))?;
        Ok(HeightBasis { chains, to_self: inv })
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Coefficients of a relative cycle in this basis.
    pub fn coords(&self, g: &SurfaceGraph, chain: &[i64]) -> Result<Vec<i64>> {
        let s = g.rel_h1_int_basis().coords(g, chain)?;
        Ok((0..self.len())
            .map(|j| (0..s.len()).map(|i| s[i] * self.to_self[i][j]).sum())
            .collect())
    }
}

/// Inverse of an integer matrix with determinant ±1, or `None`.
fn invert_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| rational::int(x))
                .chain((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    let inv: Vec<Vec<Rational>> = a.into_iter().map(|row| row[n..].to_vec()).collect();
    if inv.iter().flatten().any(|x| !x.is_integer()) {
        return None;
    }
    Some(
        inv.iter()
            .map(|row| row.iter().map(|x| i64::try_from(x.to_integer()).expect("small entries")).collect())
            .collect(),
    )
}

/// One face per component of the cellular decomposition: the lowest
/// boundary face when the component has boundary, else the lowest face.
pub fn default_anchors(g: &SurfaceGraph) -> Vec<usize> {
    pick_anchors(g, |fs| fs.iter().min().copied())
}

/// Like [`default_anchors`] with the highest index instead.
pub fn alternate_anchors(g: &SurfaceGraph) -> Vec<usize> {
    pick_anchors(g, |fs| fs.iter().max().copied())
}

fn pick_anchors(g: &SurfaceGraph, choose: impl Fn(&[usize]) -> Option<usize>) -> Vec<usize> {
    g.components()
        .iter()
        .map(|c| {
            let inner: Vec<usize> = c.faces.iter().copied().filter(|&f| !g.face(f).hole).collect();
            let boundary: Vec<usize> = inner.iter().copied().filter(|&f| g.is_boundary_face(f)).collect();
            choose(if boundary.is_empty() { &inner } else { &boundary }).expect("component has a face")
        })
        .collect()
}

fn check_anchors(g: &SurfaceGraph, anchors: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.b0()];
    for &f in anchors {
        if f >= g.faces().len() || g.face(f).hole {
            return Err(DimerError::Parse(format!("anchor {f} is not an internal face")));
        }
        let c = g.face(f).component;
        if seen[c] {
            return Err(DimerError::Parse(format!("two anchors in component {c}")));
        }
        seen[c] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(DimerError::Parse("one anchor face per component expected".into()));
    }
    Ok(())
}

/// Height function h with its curve coefficients a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightState {
    /// Value per face, indexed like `g.faces()`; holes carry 0.
    pub h: Vec<i64>,
    pub a: Vec<i64>,
    pub anchors: Vec<usize>,
}

impl HeightState {
    pub fn to_json(&self, g: &SurfaceGraph) -> serde_json::Value {
        let h: BTreeMap<String, i64> = g.internal_faces().iter().map(|&f| (f.to_string(), self.h[f])).collect();
        serde_json::json!({ "h": h, "a": self.a, "anchors": self.anchors })
    }
}

/// Faces on the two sides of a graph edge: left of the reference half
/// first.
fn sides(g: &SurfaceGraph, e: usize) -> (usize, usize) {
    let [h0, h1] = g.halves(e);
    (g.face_of(h0), g.face_of(h1))
}

/// 2-chain σ with ∂σ = `residual` on every graph edge and σ = 0 on the
/// anchors, by integration over a breadth-first dual tree.
fn integrate(g: &SurfaceGraph, residual: &[i64], anchors: &[usize]) -> Result<Vec<i64>> {
    let nf = g.faces().len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
    for e in g.graph_edges() {
        let (l, r) = sides(g, e);
        // σ(l) − σ(r) = residual(e)
        adj[l].push((r, -residual[e]));
        adj[r].push((l, residual[e]));
    }
    let mut h: Vec<Option<i64>> = vec![None; nf];
    let mut queue = VecDeque::new();
    for &f in anchors {
        h[f] = Some(0);
        queue.push_back(f);
    }
    while let Some(f) = queue.pop_front() {
        let hf = h[f].expect("queued");
        for &(u, d) in &adj[f] {
            if h[u].is_none() {
                h[u] = Some(hf + d);
                queue.push_back(u);
            }
        }
    }
    let out: Vec<i64> = h.iter().map(|x| x.unwrap_or(0)).collect();
    for e in g.graph_edges() {
        let (l, r) = sides(g, e);
        if h[l].is_none() || out[l] - out[r] != residual[e] {
            return Err(DimerError::Internal(format!("residual is not a boundary at edge {e}")));
        }
    }
    Ok(out)
}

/// Height function of (D, D′) with respect to the basis `gamma`,
/// normalized to vanish on `anchors`.
pub fn height_general(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    gamma: &HeightBasis,
    d: &DimerConfiguration,
    d2: &DimerConfiguration,
    anchors: &[usize],
) -> Result<HeightState> {
    check_anchors(g, anchors)?;
    let c = int_composition(g, bip, d, d2);
    let a = gamma.coords(g, &c)?;
    let mut residual = c;
    for (ai, gi) in a.iter().zip(&gamma.chains) {
        for (r, x) in residual.iter_mut().zip(gi) {
            *r -= ai * x;
        }
    }
    let h = integrate(g, &residual, anchors)?;
    Ok(HeightState {
        h,
        a,
        anchors: anchors.to_vec(),
    })
}

fn check_planar(g: &SurfaceGraph) -> Result<()> {
    match g.components().iter().position(|c| !c.is_closed() || c.genus > 0) {
        Some(c) => Err(DimerError::NotPlanar(c)),
        None => Ok(()),
    }
}

/// Height function on a union of spheres, jumping by one across each
/// composition cycle crossed from its left to its right.
pub fn height_planar(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    d: &DimerConfiguration,
    d2: &DimerConfiguration,
    anchors: &[usize],
) -> Result<HeightState> {
    check_planar(g)?;
    height_general(g, bip, &HeightBasis::standard(g), d, d2, anchors)
}

/// ∂σ for the 2-chain dual to `h`, on graph edges.
pub fn height_chain(g: &SurfaceGraph, h: &[i64]) -> Vec<i64> {
    let mut chain = vec![0i64; g.n_edges()];
    for e in g.graph_edges() {
        let (l, r) = sides(g, e);
        chain[e] = h[l] - h[r];
    }
    chain
}

/// Distances between internal faces in the dual graph.
pub fn dual_distances(g: &SurfaceGraph) -> Vec<Vec<Option<usize>>> {
    let nf = g.faces().len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for e in g.graph_edges() {
        let (l, r) = sides(g, e);
        adj[l].push(r);
        adj[r].push(l);
    }
    (0..nf)
        .map(|s| {
            let mut d = vec![None; nf];
            if g.face(s).hole {
                return d;
            }
            d[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                for &u in &adj[f] {
                    if d[u].is_none() {
                        d[u] = Some(d[f].expect("visited") + 1);
                        queue.push_back(u);
                    }
                }
            }
            d
        })
        .collect()
}

/// |h(f₁) − h(f₂)| ≤ d(f₁, f₂) for all pairs of internal faces.
pub fn is_lipschitz(g: &SurfaceGraph, h: &[i64]) -> bool {
    let dist = dual_distances(g);
    let faces = g.internal_faces();
    faces.iter().all(|&a| {
        faces
            .iter()
            .all(|&b| dist[a][b].is_none_or(|d| (h[a] - h[b]).unsigned_abs() <= d as u64))
    })
}

/// Every Lipschitz height function vanishing on the anchors of a union of
/// spheres.
pub fn lipschitz_heights(g: &SurfaceGraph, anchors: &[usize]) -> Result<Vec<Vec<i64>>> {
    check_planar(g)?;
    check_anchors(g, anchors)?;
    let nf = g.faces().len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nf];
    for e in g.graph_edges() {
        let (l, r) = sides(g, e);
        if l != r {
            adj[l].insert(r);
            adj[r].insert(l);
        }
    }
    // breadth-first order so that each face after the anchors has an
    // earlier neighbour
    let mut order = Vec::new();
    let mut seen = vec![false; nf];
    let mut queue: VecDeque<usize> = anchors.iter().copied().collect();
    for &f in anchors {
        seen[f] = true;
    }
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &u in &adj[f] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    let mut out = Vec::new();
    let mut h = vec![0i64; nf];
    let mut set = vec![false; nf];
    for &f in anchors {
        set[f] = true;
    }
    fn go(
        i: usize,
        order: &[usize],
        adj: &[BTreeSet<usize>],
        h: &mut Vec<i64>,
        set: &mut Vec<bool>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == order.len() {
            out.push(h.clone());
            return;
        }
        let f = order[i];
        if set[f] {
            // anchors come first and sit in distinct components
            go(i + 1, order, adj, h, set, out);
            return;
        }
        let parent = adj[f].iter().copied().find(|&u| set[u]).expect("breadth-first order");
        for v in h[parent] - 1..=h[parent] + 1 {
            if adj[f].iter().all(|&u| !set[u] || (h[u] - v).abs() <= 1) {
                h[f] = v;
                set[f] = true;
                go(i + 1, order, adj, h, set, out);
                set[f] = false;
                h[f] = 0;
            }
        }
    }
    go(0, &order, &adj, &mut h, &mut set, &mut out);
    Ok(out)
}

/// The configuration D with h_{D,D₀} = h when C(h) is a union of disjoint
/// simple cycles alternating with D₀ and oriented like D − D₀.
pub fn configuration_from_height(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    d0: &DimerConfiguration,
    h: &[i64],
) -> Option<DimerConfiguration> {
    let c = height_chain(g, h);
    let mut degree = vec![0usize; g.n_vertices()];
    for e in g.graph_edges() {
        if c[e] == 0 {
            continue;
        }
        // D edges run white to black, D₀ edges black to white
        let want = if d0.contains(e) { -bip.edge_sign(g, e) } else { bip.edge_sign(g, e) };
        if c[e] != want {
            return None;
        }
        let (a, b) = g.endpoints(e);
        degree[a] += 1;
        degree[b] += 1;
    }
    if degree.iter().any(|&k| k != 0 && k != 2) {
        return None;
    }
    for &e in &d0.edges {
        let (a, b) = g.endpoints(e);
        if (degree[a] > 0 || degree[b] > 0) && c[e] == 0 {
            return None;
        }
    }
    let edges = g
        .graph_edges()
        .into_iter()
        .filter(|&e| d0.contains(e) != (c[e] != 0))
        .collect();
    Some(DimerConfiguration::new(edges))
}

/// Lipschitz height functions whose cycles are admissible for D₀.
pub fn admissible_heights(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    d0: &DimerConfiguration,
    anchors: &[usize],
) -> Result<Vec<Vec<i64>>> {
    Ok(lipschitz_heights(g, anchors)?
        .into_iter()
        .filter(|h| configuration_from_height(g, bip, d0, h).is_some())
        .collect())
}

/// w_β of a half-edge: w(e) along the bipartite orientation, 1/w(e)
/// against it, 1 on boundary edges.
fn w_beta(g: &SurfaceGraph, bip: &BipartiteStructure, w: &WeightSystem, h: usize) -> Rational {
    let e = g.edge_of(h);
    if g.is_boundary_edge(e) {
        Rational::one()
    } else if bip.half_sign(g, h) == 1 {
        w.get(e).clone()
    } else {
        w.get(e).recip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeWeights {
    /// q_f per face, `None` for holes.
    pub faces: Vec<Option<Rational>>,
    /// q_i per basis curve.
    pub curves: Vec<Rational>,
    /// Internal faces adjacent to the surface boundary.
    pub boundary_faces: Vec<usize>,
}

pub fn volume_weights(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    w: &WeightSystem,
    gamma: &HeightBasis,
) -> VolumeWeights {
    let faces = g
        .faces()
        .iter()
        .map(|f| (!f.hole).then(|| f.walk.iter().map(|&h| w_beta(g, bip, w, h)).product()))
        .collect();
    let curves = gamma
        .chains
        .iter()
        .map(|c| {
            (0..g.n_edges())
                .filter(|&e| c[e] != 0)
                .map(|e| rational::pow(&w_beta(g, bip, w, g.halves(e)[0]), c[e]))
                .product()
        })
        .collect();
    let boundary_faces = g.internal_faces().into_iter().filter(|&f| g.is_boundary_face(f)).collect();
    VolumeWeights {
        faces,
        curves,
        boundary_faces,
    }
}

impl VolumeWeights {
    /// q(h, a): product over internal non-boundary faces and curves.
    pub fn q(&self, s: &HeightState) -> Rational {
        let mut x = Rational::one();
        for (f, q) in self.faces.iter().enumerate() {
            if let Some(q) = q {
                if !self.boundary_faces.contains(&f) {
                    x *= rational::pow(q, s.h[f]);
                }
            }
        }
        for (q, &a) in self.curves.iter().zip(&s.a) {
            x *= rational::pow(q, a);
        }
        x
    }

    /// Product of q_f^{h(f)} over boundary faces.
    pub fn boundary_factor(&self, s: &HeightState) -> Rational {
        self.boundary_faces
            .iter()
            .map(|&f| rational::pow(self.faces[f].as_ref().expect("internal"), s.h[f]))
            .product()
    }

    pub fn boundary_key(&self, s: &HeightState) -> Vec<i64> {
        self.boundary_faces.iter().map(|&f| s.h[f]).collect()
    }
}

/// |E| − |V| + b₀ against |F ∖ F_∂| + b₁ − b₂.
pub fn parameter_count(g: &SurfaceGraph) -> (i64, i64) {
    let lhs = g.graph_edges().len() as i64 - g.n_vertices() as i64 + g.b0() as i64;
    let inner = g.internal_faces().into_iter().filter(|&f| !g.is_boundary_face(f)).count();
    let rhs = inner as i64 + g.b1() as i64 - g.b2() as i64;
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub configurations: usize,
    /// w(D) = w(D₀) q(h, a) Π_{F_∂} q_f^{h(f)} for every D.
    pub weight_identity: bool,
    /// Conditional probabilities agree in each block of equal ∂h.
    pub conditional: bool,
    /// ∂h is a function of the dimer boundary condition.
    pub boundary_heights_determined: bool,
    /// Cocycle shift to other references preserves heights and measure.
    pub reference_shift: bool,
    /// Probabilities do not depend on the anchor faces.
    pub anchor_independent: bool,
    pub parameter_count: (i64, i64),
}

impl MeasureReport {
    pub fn holds(&self) -> bool {
        self.weight_identity
            && self.conditional
            && self.reference_shift
            && self.anchor_independent
            && self.parameter_count.0 == self.parameter_count.1
    }
}

/// Conditional probability of each configuration given its block of equal
/// ∂h, computed from heights.
fn height_probabilities(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    vw: &VolumeWeights,
    gamma: &HeightBasis,
    ds: &[DimerConfiguration],
    d0: &DimerConfiguration,
    anchors: &[usize],
) -> Result<(Vec<HeightState>, Vec<Rational>)> {
    let states: Vec<HeightState> = ds
        .iter()
        .map(|d| height_general(g, bip, gamma, d, d0, anchors))
        .collect::<Result<_>>()?;
    let mut totals: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let qs: Vec<Rational> = states.iter().map(|s| vw.q(s)).collect();
    for (s, q) in states.iter().zip(&qs) {
        *totals.entry(vw.boundary_key(s)).or_insert_with(Rational::zero) += q;
    }
    let probs = states.iter().zip(&qs).map(|(s, q)| q / &totals[&vw.boundary_key(s)]).collect();
    Ok((states, probs))
}

/// Checks the height-function form of the Gibbs measure on all
/// configurations with boundary condition `bc` (all configurations when
/// `None`).
pub fn measure_check(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    w: &WeightSystem,
    d0: &DimerConfiguration,
    gamma: &HeightBasis,
    anchors: &[usize],
    bc: Option<&BoundaryCondition>,
) -> Result<MeasureReport> {
    let ds = enumerate(g, bc);
    let vw = volume_weights(g, bip, w, gamma);
    let (states, probs) = height_probabilities(g, bip, &vw, gamma, &ds, d0, anchors)?;
    let w0 = w.weight(d0);

    let weight_identity = ds
        .iter()
        .zip(&states)
        .all(|(d, s)| w.weight(d) == &w0 * vw.q(s) * vw.boundary_factor(s));

    let mut blocks: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut keys_by_bc: BTreeMap<BoundaryCondition, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for (d, s) in ds.iter().zip(&states) {
        *blocks.entry(vw.boundary_key(s)).or_insert_with(Rational::zero) += w.weight(d);
        keys_by_bc.entry(d.boundary(g)).or_default().insert(vw.boundary_key(s));
    }
    let conditional = ds
        .iter()
        .zip(&states)
        .zip(&probs)
        .all(|((d, s), p)| &(w.weight(d) / &blocks[&vw.boundary_key(s)]) == p);
    let boundary_heights_determined = keys_by_bc.values().all(|k| k.len() == 1);

    let mut reference_shift = true;
    for d1 in ds.iter().take(3) {
        let shift = height_general(g, bip, gamma, d0, d1, anchors)?;
        let (states1, probs1) = height_probabilities(g, bip, &vw, gamma, &ds, d1, anchors)?;
        for ((s, s1), (p, p1)) in states.iter().zip(&states1).zip(probs.iter().zip(&probs1)) {
            let h_ok = s.h.iter().zip(&shift.h).zip(&s1.h).all(|((x, y), z)| x + y == *z);
            let a_ok = s.a.iter().zip(&shift.a).zip(&s1.a).all(|((x, y), z)| x + y == *z);
            reference_shift &= h_ok && a_ok && p == p1;
        }
    }

    let other = alternate_anchors(g);
    let (_, probs2) = height_probabilities(g, bip, &vw, gamma, &ds, d0, &other)?;
    let anchor_independent = probs == probs2;

    Ok(MeasureReport {
        configurations: ds.len(),
        weight_identity,
        conditional,
        boundary_heights_determined,
        reference_shift,
        anchor_independent,
        parameter_count: parameter_count(g),
    })
}

/// The boundary vector indexed by boundary heights ∂h, next to the
/// configuration sums it must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteVector {
    pub boundary_faces: Vec<usize>,
    /// ∂h ↦ w(D₀) Z^γ(X; q | ∂h) Π_{F_∂} q_f^{h(f)}.
    pub amplitudes: BTreeMap<Vec<i64>, Rational>,
    /// ∂h ↦ Σ w(D) over configurations with those boundary heights.
    pub direct: BTreeMap<Vec<i64>, Rational>,
    /// Boundary heights reached by each dimer boundary condition.
    pub keys_by_condition: BTreeMap<BoundaryCondition, BTreeSet<Vec<i64>>>,
}

impl BipartiteVector {
    pub fn holds(&self) -> bool {
        self.amplitudes == self.direct
    }

    pub fn total(&self) -> Rational {
        self.amplitudes.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let amps: Vec<serde_json::Value> = self
            .amplitudes
            .iter()
            .map(|(k, v)| serde_json::json!({ "boundary_heights": k, "amplitude": rational::format(v) }))
            .collect();
        serde_json::json!({ "boundary_faces": self.boundary_faces, "amplitudes": amps })
    }
}

pub fn bipartite_qft_vector(
    g: &SurfaceGraph,
    bip: &BipartiteStructure,
    w: &WeightSystem,
    d0: &DimerConfiguration,
    gamma: &HeightBasis,
    anchors: &[usize],
) -> Result<BipartiteVector> {
    let ds = enumerate(g, None);
    let vw = volume_weights(g, bip, w, gamma);
    let w0 = w.weight(d0);
    let mut z: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut direct: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut factor: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut keys_by_condition: BTreeMap<BoundaryCondition, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for d in &ds {
        let s = height_general(g, bip, gamma, d, d0, anchors)?;
        let key = vw.boundary_key(&s);
        *z.entry(key.clone()).or_insert_with(Rational::zero) += vw.q(&s);
        *direct.entry(key.clone()).or_insert_with(Rational::zero) += w.weight(d);
        factor.entry(key.clone()).or_insert_with(|| vw.boundary_factor(&s));
        keys_by_condition.entry(d.boundary(g)).or_default().insert(key);
    }
    let amplitudes = z.into_iter().map(|(k, v)| {
        let a = &w0 * v * &factor[&k];
        (k, a)
    });
    Ok(BipartiteVector {
        boundary_faces: vw.boundary_faces.clone(),
        amplitudes: amplitudes.collect(),
        direct,
        keys_by_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_inverse() {
        let m = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(invert_unimodular(&m), Some(vec![vec![1, -1], vec![-1, 2]]));
        assert_eq!(invert_unimodular(&[vec![2]]), None);
    }
}
