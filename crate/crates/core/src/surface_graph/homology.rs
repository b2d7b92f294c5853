//! Z/2 homology (absolute and relative to the boundary) and the free part of
//! integer relative homology.

use super::{OrientedCurve, SurfaceGraph};
use crate::error::{DimerError, Result};
use crate::gf2::{BitVec, QuotientSpace};
use crate::snf;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// H_1(Σ; Z/2)
    Absolute,
    /// H_1(Σ, ∂Σ; Z/2)
    Relative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub variant: Variant,
    pub coords: BitVec,
}

impl HomologyClass {
    pub fn zero(variant: Variant, dim: usize) -> Self {
        HomologyClass {
            variant,
            coords: BitVec::zeros(dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        if self.variant != other.variant || self.coords.len() != other.coords.len() {
            return Err(DimerError::WrongClass);
        }
        Ok(HomologyClass {
            variant: self.variant,
            coords: self.coords.xor(&other.coords),
        })
    }

    /// All classes of the given dimension, in binary counting order.
    pub fn all(variant: Variant, dim: usize) -> Vec<HomologyClass> {
        assert!(dim < 32, "too many classes to enumerate");
        (0u64..1 << dim)
            .map(|m| HomologyClass {
                variant,
                coords: BitVec::from_indices(dim, (0..dim).filter(|i| m >> i & 1 == 1)),
            })
            .collect()
    }
}

/// Basis of the free part of H_1(Σ, ∂Σ; Z) together with a coordinate
/// solver.
#[derive(Clone, Debug, Default)]
pub struct IntRelBasis {
    /// Integer edge chains (reference directions), zero on boundary edges.
    pub gammas: Vec<Vec<i64>>,
    nontree: Vec<usize>,
    col_transform: Vec<Vec<i128>>,
    rank: usize,
}

impl IntRelBasis {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Coefficients of an integer relative cycle in the basis.
    pub fn coords(&self, g: &SurfaceGraph, chain: &[i64]) -> Result<Vec<i64>> {
        if chain.len() != g.n_edges() || !g.is_relative_int_cycle(chain) {
            return Err(DimerError::NotACycle { variant: "relative" });
        }
        let n = self.nontree.len();
        let y: Vec<i128> = (0..n)
            .map(|j| {
                self.nontree
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| chain[e] as i128 * self.col_transform[i][j])
                    .sum()
            })
            .collect();
        Ok(y[self.rank..].iter().map(|&v| v as i64).collect())
    }
}

#[derive(Clone, Debug, Default)]
pub(super) struct Homology {
    abs: QuotientSpace,
    rel: QuotientSpace,
    int: IntRelBasis,
    abs_curves: Vec<Vec<OrientedCurve>>,
    gram: Vec<BitVec>,
}

/// Spanning forest over `nodes` where each edge joins `ends[e]`. Returns
/// (parent edge and parent node per node, depth per node, non-tree edges).
struct Forest {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    nontree: Vec<usize>,
}

fn forest(nnodes: usize, edges: &[usize], ends: impl Fn(usize) -> (usize, usize)) -> Forest {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nnodes];
    for &e in edges {
        let (a, b) = ends(e);
        adj[a].push((e, b));
        if a != b {
            adj[b].push((e, a));
        }
    }
    let mut seen = vec![false; nnodes];
    let mut parent = vec![None; nnodes];
    let mut depth = vec![0; nnodes];
    let mut tree = vec![false; edges.iter().max().map_or(0, |m| m + 1)];
    for s in 0..nnodes {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((e, x));
                    depth[y] = depth[x] + 1;
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let nontree = edges.iter().copied().filter(|&e| !tree[e]).collect();
    Forest {
        parent,
        depth,
        nontree,
    }
}

impl Homology {
    pub(super) fn compute(g: &SurfaceGraph) -> Result<Self> {
        let ne = g.n_edges();
        let b1 = g.b1();

        // absolute
        let all_edges: Vec<usize> = (0..ne).collect();
        let f = forest(g.n_vertices(), &all_edges, |e| g.endpoints(e));
        let fund: Vec<BitVec> = f
            .nontree
            .iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e);
                let mut c = BitVec::unit(ne, e);
                for x in tree_path(&f, a, b) {
                    c.flip(x);
                }
                c
            })
            .collect();
        let faces: Vec<BitVec> = g.internal_faces().iter().map(|&f| g.face_chain(f)).collect();
        let abs = QuotientSpace::new(ne, &faces, &fund);
        if abs.rank() != b1 {
            return Err(DimerError::Internal(format!(
                "absolute homology rank {} differs from b1 = {b1}",
                abs.rank()
            )));
        }

        let int = int_relative(g)?;
        let mut rel_sub: Vec<BitVec> = faces
            .iter()
            .map(|c| {
                let mut c = c.clone();
                for e in g.boundary_edges() {
                    c.set(e, false);
                }
                c
            })
            .collect();
        rel_sub.extend(g.boundary_edges().into_iter().map(|e| BitVec::unit(ne, e)));
        let gamma2: Vec<BitVec> = int.gammas.iter().map(|c| mod2(c)).collect();
        let rel = QuotientSpace::new(ne, &rel_sub, &gamma2);
        if rel.rank() != b1 {
            return Err(DimerError::Internal(format!(
                "relative homology rank {} differs from b1 = {b1}",
                rel.rank()
            )));
        }

        let mut h = Homology {
            abs,
            rel,
            int,
            abs_curves: Vec::new(),
            gram: Vec::new(),
        };
        for rep in h.abs.representatives() {
            h.abs_curves.push(g.decompose_to_simple(rep)?);
        }
        h.gram = (0..b1)
            .map(|i| {
                BitVec::from_bools(
                    &(0..b1)
                        .map(|j| g.family_intersection(&h.abs_curves[i], &h.abs_curves[j]))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Ok(h)
    }
}

/// Edges on the tree path between `a` and `b`.
fn tree_path(f: &Forest, mut a: usize, mut b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while a != b {
        if f.depth[a] >= f.depth[b] {
            let (e, p) = f.parent[a].expect("nodes in the same tree");
            out.push(e);
            a = p;
        } else {
            let (e, p) = f.parent[b].expect("nodes in the same tree");
            out.push(e);
            b = p;
        }
    }
    out
}

pub(crate) fn mod2(chain: &[i64]) -> BitVec {
    BitVec::from_indices(
        chain.len(),
        chain.iter().enumerate().filter(|(_, c)| *c % 2 != 0).map(|(i, _)| i),
    )
}

fn int_relative(g: &SurfaceGraph) -> Result<IntRelBasis> {
    let nv = g.n_vertices();
    let ne = g.n_edges();
    // boundary vertices of one component collapse to a single node
    let node = |v: usize| {
        if g.is_boundary_vertex(v) {
            nv + g.component_of(v)
        } else {
            v
        }
    };
    let edges = g.graph_edges();
    let ends = |e: usize| {
        let (a, b) = g.endpoints(e);
        (node(a), node(b))
    };
    let f = forest(nv + g.b0(), &edges, ends);
    // oriented tree path from a node up to its root
    let root_path = |mut x: usize| -> Vec<i64> {
        let mut c = vec![0i64; ne];
        while let Some((t, p)) = f.parent[x] {
            c[t] += if ends(t).0 == x { 1 } else { -1 };
            x = p;
        }
        c
    };
    let fundamental = |e: usize| -> Vec<i64> {
        let (a, b) = ends(e);
        let (pa, pb) = (root_path(a), root_path(b));
        let mut c: Vec<i64> = pb.iter().zip(&pa).map(|(x, y)| x - y).collect();
        c[e] += 1;
        c
    };
    let n = f.nontree.len();
    let fund: Vec<Vec<i64>> = f.nontree.iter().map(|&e| fundamental(e)).collect();
    let relations: Vec<Vec<i128>> = g
        .internal_faces()
        .iter()
        .map(|&face| {
            let mut chain = vec![0i64; ne];
            for &h in &g.face(face).walk {
                let e = g.edge_of(h);
                if !g.is_boundary_edge(e) {
                    chain[e] += g.sign(h);
                }
            }
            f.nontree.iter().map(|&e| chain[e] as i128).collect()
        })
        .collect();
    let d = snf::diagonalize(&relations, n);
    if d.has_torsion() {
        return Err(DimerError::Internal(
            "torsion in relative integer homology".into(),
        ));
    }
    let rank = d.rank();
    let gammas: Vec<Vec<i64>> = (rank..n)
        .map(|t| {
            let mut c = vec![0i64; ne];
            for (j, fj) in fund.iter().enumerate() {
                let k = d.col_transform_inv[t][j] as i64;
                if k != 0 {
                    for (ce, fe) in c.iter_mut().zip(fj) {
                        *ce += k * fe;
                    }
                }
            }
            c
        })
        .collect();
    if gammas.len() != g.b1() {
        return Err(DimerError::Internal(format!(
            "integer relative rank {} differs from b1 = {}",
            gammas.len(),
            g.b1()
        )));
    }
    Ok(IntRelBasis {
        gammas,
        nontree: f.nontree,
        col_transform: d.col_transform,
        rank,
    })
}

impl SurfaceGraph {
    /// Basis of H_1(Σ; Z/2), each element a family of simple closed curves.
    pub fn h1_basis(&self) -> &[Vec<OrientedCurve>] {
        &self.homology.abs_curves
    }

    /// The same basis as edge chains.
    pub fn h1_basis_chains(&self) -> &[BitVec] {
        self.homology.abs.representatives()
    }

    /// Intersection numbers of the absolute basis.
    pub fn intersection_gram(&self) -> &[BitVec] {
        &self.homology.gram
    }

    pub fn rel_h1_int_basis(&self) -> &IntRelBasis {
        &self.homology.int
    }

    pub fn class_of(&self, chain: &BitVec, variant: Variant) -> Result<HomologyClass> {
        if chain.len() != self.n_edges() {
            return Err(DimerError::WrongClass);
        }
        let space = match variant {
            Variant::Absolute => &self.homology.abs,
            Variant::Relative => &self.homology.rel,
        };
        let name = match variant {
            Variant::Absolute => "absolute",
            Variant::Relative => "relative",
        };
        space
            .coords(chain)
            .map(|coords| HomologyClass { variant, coords })
            .ok_or(DimerError::NotACycle { variant: name })
    }

    /// A chain representing the class.
    pub fn lift(&self, class: &HomologyClass) -> BitVec {
        match class.variant {
            Variant::Absolute => self.homology.abs.lift(&class.coords),
            Variant::Relative => self.homology.rel.lift(&class.coords),
        }
    }

    /// The map H_1(Σ) -> H_1(Σ, ∂Σ).
    pub fn to_relative(&self, class: &HomologyClass) -> Result<HomologyClass> {
        match class.variant {
            Variant::Relative => Ok(class.clone()),
            Variant::Absolute => self.class_of(&self.lift(class), Variant::Relative),
        }
    }

    /// Intersection pairing of two absolute classes.
    pub fn class_intersection(&self, a: &HomologyClass, b: &HomologyClass) -> bool {
        let mut s = false;
        for i in a.coords.ones() {
            s ^= self.homology.gram[i].dot(&b.coords);
        }
        s
    }

    pub fn is_relative_int_cycle(&self, chain: &[i64]) -> bool {
        let mut div = vec![0i64; self.n_vertices()];
        for e in self.graph_edges() {
            let (a, b) = self.endpoints(e);
            div[a] -= chain[e];
            div[b] += chain[e];
        }
        (0..self.n_vertices()).all(|v| self.is_boundary_vertex(v) || div[v] == 0)
    }
}
