//! Finite Grassmann algebras over the rationals.

use crate::error::{DimerError, Result};
use crate::pfaffian::SkewMatrix;
use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Element of the Grassmann algebra on generators φ_0, ..., φ_{n-1}; a
/// monomial is a bit mask multiplied in increasing generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<u64, Rational>,
}

/// Sign of `φ_a φ_b` relative to the increasing-order monomial `a | b`.
fn merge_sign(a: u64, b: u64) -> bool {
    let mut odd = false;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        odd ^= (a >> (j + 1)).count_ones() % 2 == 1;
    }
    odd
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "at most 64 generators");
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::monomial(n, 1 << i, Rational::one())
    }

    /// `c` times the increasing-order product of the generators in `mask`.
    pub fn monomial(n: usize, mask: u64, c: Rational) -> Self {
        let mut x = Self::zero(n);
        x.add_term(mask, c);
        x
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, mask: u64) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mask: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (&m, x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(DimerError::GeneratorMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                out.add_term(a | b, if merge_sign(a, b) { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Exponential of a nilpotent element (no constant term).
    pub fn exp(&self) -> Result<Self> {
        if self.terms.contains_key(&0) {
            return Err(DimerError::NotNilpotent);
        }
        let mut total = Self::scalar(self.n, Rational::one());
        let mut power = total.clone();
        let mut k = 1i64;
        loop {
            power = power.mul(self)?.scale(&rational::frac(1, k));
            if power.is_zero() {
                return Ok(total);
            }
            total = total.add(&power)?;
            k += 1;
        }
    }

    /// Coefficient of the top monomial φ_0 φ_1 ... φ_{n-1}.
    pub fn integral(&self) -> Rational {
        let top = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.coefficient(top)
    }

    /// Integrates out the generators in `vars`: the result keeps only
    /// monomials containing all of them and removes them, with the sign of
    /// moving them to the right end in increasing order.
    pub fn integrate_out(&self, vars: u64) -> Self {
        let mut out = Self::zero(self.n);
        for (&m, c) in &self.terms {
            if m & vars != vars {
                continue;
            }
            let rest = m & !vars;
            // φ_m = ± φ_rest φ_vars
            let c = if merge_sign(rest, vars) { -c.clone() } else { c.clone() };
            out.add_term(rest, c);
        }
        out
    }

    /// Reindexes generator `i` to `map[i]` in an algebra on `n` generators,
    /// keeping track of reordering signs.
    pub fn relabel(&self, map: &[usize], n: usize) -> Self {
        let mut out = Self::zero(n);
        for (&m, c) in &self.terms {
            let mut acc = Self::scalar(n, c.clone());
            for i in (0..self.n).filter(|i| m >> i & 1 == 1) {
                acc = acc.mul(&Self::generator(n, map[i])).expect("same size");
            }
            for (&k, v) in &acc.terms {
                out.add_term(k, v.clone());
            }
        }
        out
    }
}

/// `Σ_{i<j} a_ij φ_i φ_j`, i.e. half of `Σ_{i,j} φ_i a_ij φ_j`.
pub fn quadratic(a: &SkewMatrix) -> GrassmannElement {
    let n = a.dim();
    let mut x = GrassmannElement::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            x.add_term((1 << i) | (1 << j), a.get(i, j).clone());
        }
    }
    x
}

/// `⟨F, G⟩ = ∫ exp(Σ φ_i ψ_i) F(φ) G(ψ)` in the algebra on φ_0, ψ_0, φ_1,
/// ψ_1, ... with top monomial φ_0 ψ_0 φ_1 ψ_1 .... The ψ-copy of `G` is
/// taken through the order-reversing anti-automorphism, which makes the
/// monomial basis orthonormal.
pub fn pairing(f: &GrassmannElement, g: &GrassmannElement) -> Result<Rational> {
    f.check(g)?;
    let n = f.n;
    assert!(2 * n <= 64, "pairing supports at most 32 generators");
    let phi: Vec<usize> = (0..n).map(|i| 2 * i).collect();
    let psi: Vec<usize> = (0..n).map(|i| 2 * i + 1).collect();
    let mut kinetic = GrassmannElement::zero(2 * n);
    for i in 0..n {
        kinetic.add_term((1 << phi[i]) | (1 << psi[i]), Rational::one());
    }
    let fphi = f.relabel(&phi, 2 * n);
    let gpsi = reversed(g).relabel(&psi, 2 * n);
    Ok(kinetic.exp()?.mul(&fphi)?.mul(&gpsi)?.integral())
}

/// Image under the anti-automorphism reversing products.
pub fn reversed(x: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero(x.n);
    for (&m, c) in &x.terms {
        let k = m.count_ones() as usize;
        let flip = (k * k.saturating_sub(1) / 2) % 2 == 1;
        out.add_term(m, if flip { -c.clone() } else { c.clone() });
    }
    out
}
