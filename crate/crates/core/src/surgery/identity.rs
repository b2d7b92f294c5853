//! The cut identity: Z of a graph as a sum over which cut edges carry a
//! dimer, and its Pfaffian-derivative form.

use super::{cut_along_curve, cut_edges, transfer_class, Cut, CutCurve};
use crate::dimer::{
    delta, enumerate, first_configuration, partial_partition_oracle_relative, partition_oracle, BoundaryCondition,
    DimerConfiguration, WeightSystem,
};
use crate::error::{DimerError, Result};
use crate::kasteleyn::{construct, epsilon, kasteleyn_matrix, partition_z_alpha, partition_z_bc};
use crate::pfaffian::{pf_derivative, pf_minor};
use crate::rational::{self, Rational};
use crate::surface_graph::{HomologyClass, SurfaceGraph, Variant};
use num_traits::Zero;

/// What to cut.
#[derive(Clone, Debug)]
pub enum CutSpec {
    Edges(Vec<usize>),
    Curve(CutCurve),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutIdentityReport {
    pub lhs_oracle: Rational,
    pub lhs_formula: Rational,
    pub rhs_oracle: Rational,
    pub rhs_formula: Rational,
    pub subsets: usize,
    /// Relative classes of the cut surface checked in the refined identity
    /// (0 for edge cuts or when the boundary condition admits no
    /// configuration).
    pub classes: usize,
    pub refined_ok: bool,
}

impl CutIdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs_oracle == self.lhs_formula
            && self.lhs_oracle == self.rhs_oracle
            && self.rhs_oracle == self.rhs_formula
            && self.refined_ok
    }
}

/// Boundary condition on the cut graph: `bc` carried over by vertex name,
/// plus both new vertices of every crossed edge selected by `mask`.
fn lifted_bc(g: &SurfaceGraph, cut: &Cut, bc: &BoundaryCondition, mask: usize) -> BoundaryCondition {
    let mut matched: Vec<usize> = bc
        .matched
        .iter()
        .map(|&v| cut.graph.vertex_by_name(g.vertex_name(v)).expect("vertices survive a cut"))
        .collect();
    for (i, &(a, b)) in cut.new_pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            matched.push(a);
            matched.push(b);
        }
    }
    BoundaryCondition::new(matched)
}

/// Z_β relative to `d1` from the class-resolved Pfaffian formula with the
/// reference configuration `d0`.
fn relative_formula(
    g: &SurfaceGraph,
    w: &WeightSystem,
    beta: &HomologyClass,
    d0: &DimerConfiguration,
    d1: &DimerConfiguration,
) -> Result<Rational> {
    let target = beta.add(&delta(g, d0, d1)?)?;
    let mut z = Rational::zero();
    for alpha in HomologyClass::all(Variant::Absolute, g.b1()) {
        if g.to_relative(&alpha)? == target {
            z += partition_z_alpha(g, w, &alpha, d0)?;
        }
    }
    Ok(z)
}

/// Checks Z(G; w | bc) = Σ_I Z(G_E; w_E^t | bc^I), by enumeration and by the
/// Pfaffian formula, and its refinement by relative homology class.
pub fn verify_cut_identity(
    g: &SurfaceGraph,
    w: &WeightSystem,
    bc: &BoundaryCondition,
    spec: &CutSpec,
    t: &[Rational],
) -> Result<CutIdentityReport> {
    let d1 = match first_configuration(g, bc) {
        Ok(d) => Some(d),
        Err(DimerError::NoConfiguration) => None,
        Err(e) => return Err(e),
    };
    let cut = match spec {
        CutSpec::Edges(edges) => cut_edges(g, w, edges, t, d1.as_ref())?,
        CutSpec::Curve(c) => cut_along_curve(g, w, c, t, d1.as_ref())?,
    };
    let cw = &cut.weights;
    let subsets = 1usize << cut.crossed.len();
    let bcs: Vec<BoundaryCondition> = (0..subsets).map(|m| lifted_bc(g, &cut, bc, m)).collect();
    let mut rhs_oracle = Rational::zero();
    let mut rhs_formula = Rational::zero();
    for b in &bcs {
        rhs_oracle += partition_oracle(&cut.graph, cw, Some(b));
        rhs_formula += partition_z_bc(&cut.graph, cw, b)?;
    }
    let mut refined_ok = true;
    let mut classes = 0;
    // The class refinement follows a curve; cutting bare edges drills new
    // holes and changes the topology.
    let refine = matches!(spec, CutSpec::Curve(_));
    if let (true, Some(d1), Some(d1c)) = (refine, &d1, &cut.dimer) {
        // (class, weight) of every configuration of the cut graph, per I.
        let mut binned = Vec::new();
        for b in &bcs {
            for d in enumerate(&cut.graph, Some(b)) {
                binned.push((delta(&cut.graph, &d, d1c)?, cw.weight(&d)));
            }
        }
        let refs: Vec<Option<DimerConfiguration>> =
            bcs.iter().map(|b| first_configuration(&cut.graph, b).ok()).collect();
        // The transfer H_1(Σ, ∂Σ) -> H_1(Σ_C, ∂Σ_C) kills the class of the
        // curve, so the identity holds fibrewise.
        let mut lhs_by = Vec::new();
        for beta in HomologyClass::all(Variant::Relative, g.b1()) {
            lhs_by.push((
                transfer_class(g, &cut, &beta)?,
                partial_partition_oracle_relative(g, w, &beta, d1)?,
                relative_formula(g, w, &beta, d1, d1)?,
            ));
        }
        for target in HomologyClass::all(Variant::Relative, cut.graph.b1()) {
            classes += 1;
            let fibre = lhs_by.iter().filter(|(c, _, _)| *c == target);
            let lhs: Rational = fibre.clone().map(|x| x.1.clone()).sum();
            let lhs_f: Rational = fibre.map(|x| x.2.clone()).sum();
            let rhs: Rational = binned.iter().filter(|(c, _)| *c == target).map(|(_, x)| x.clone()).sum();
            let mut rhs_f = Rational::zero();
            for d0 in refs.iter().flatten() {
                rhs_f += relative_formula(&cut.graph, cw, &target, d0, d1c)?;
            }
            refined_ok &= lhs == lhs_f && lhs == rhs && rhs == rhs_f;
        }
    }
    Ok(CutIdentityReport {
        lhs_oracle: partition_oracle(g, w, Some(bc)),
        lhs_formula: partition_z_bc(g, w, bc)?,
        rhs_oracle,
        rhs_formula,
        subsets,
        classes,
        refined_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeReport {
    /// Size of the Kasteleyn matrix.
    pub n: usize,
    /// Π w(e) · ∂^k Z / ∂w(e_1)⋯∂w(e_k) through the complementary minor.
    pub via_minor: Rational,
    /// The same derivative by inclusion-exclusion on the matrix entries.
    pub via_entries: Rational,
    /// Z of the graph cut at the edges, all new vertices matched.
    pub cut_oracle: Rational,
}

impl DerivativeReport {
    pub fn holds(&self) -> bool {
        self.via_minor == self.via_entries && self.via_minor == self.cut_oracle
    }
}

/// On a closed planar graph, where Z = ε(D0) Pf(A^K), the configurations
/// containing all of `edges` are weighted by a mixed derivative of the
/// Pfaffian, which must match Z of the graph cut at those edges.
pub fn pfaffian_derivative_check(g: &SurfaceGraph, w: &WeightSystem, edges: &[usize]) -> Result<DerivativeReport> {
    if g.b1() != 0 || !g.boundary_vertices().is_empty() {
        return Err(DimerError::InvalidGluing(
            "derivative check needs a closed graph of genus zero".into(),
        ));
    }
    let bc = BoundaryCondition::new(Vec::new());
    let d0 = first_configuration(g, &bc)?;
    let k = construct(g, None)?;
    let eps = rational::int(i64::from(epsilon(g, &k, &d0)?));
    let (a, verts) = kasteleyn_matrix(g, &k, w, &bc);
    let pos = |v: usize| verts.binary_search(&v).expect("every vertex is matched");
    let mut idx = Vec::new();
    let mut entries = Vec::new();
    let mut prod = rational::one();
    for &e in edges {
        let (t, h) = k.direction(g, e);
        idx.extend([pos(t), pos(h)]);
        entries.push((pos(t), pos(h)));
        prod *= w.get(e);
    }
    let (sign, minor) = pf_minor(&a, &idx)?;
    let via_minor = &eps * &prod * rational::int(i64::from(sign)) * minor;
    let via_entries = &eps * &prod * pf_derivative(&a, &entries);
    let t = vec![rational::one(); edges.len()];
    let cut = cut_edges(g, w, edges, &t, None)?;
    let all = lifted_bc(g, &cut, &bc, (1 << edges.len()) - 1);
    Ok(DerivativeReport {
        n: verts.len(),
        via_minor,
        via_entries,
        cut_oracle: partition_oracle(&cut.graph, &cut.weights, Some(&all)),
    })
}
