use dimer_core::grassmann::{self, GrassmannElement};
use dimer_core::pfaffian::{self, SkewMatrix};
use dimer_core::rational::{frac, int};
use dimer_core::Rational;
use proptest::prelude::*;

/// Pfaffian as a signed sum over perfect matchings of {0..n}, expanding
/// along the first index.
fn pf_oracle(m: &SkewMatrix, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return int(1);
    }
    if idx.len() % 2 == 1 {
        return int(0);
    }
    let mut total = int(0);
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let term = m.get(idx[0], idx[k]).clone() * pf_oracle(m, &rest);
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn skew(max_n: usize) -> impl Strategy<Value = SkewMatrix> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-5i64..=5, 1i64..=4), n * n.saturating_sub(1) / 2).prop_map(move |v| {
            let upper: Vec<Rational> = v.into_iter().map(|(p, q)| frac(p, q)).collect();
            SkewMatrix::from_upper(n, &upper)
        })
    })
}

#[test]
fn known_values() {
    let m = SkewMatrix::from_upper(4, &[int(1), int(2), int(3), int(4), int(5), int(6)]);
    // a01 a23 - a02 a13 + a03 a12
    assert_eq!(pfaffian::pf(&m), int(6 - 10 + 12));
    assert_eq!(pfaffian::pf(&SkewMatrix::zeros(0)), int(1));
    assert_eq!(pfaffian::pf(&SkewMatrix::zeros(3)), int(0));
}

#[test]
fn rejects_non_skew() {
    assert!(SkewMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).is_err());
    assert!(SkewMatrix::from_rows(vec![vec![int(0), int(1)]]).is_err());
}

#[test]
fn permutation_signs() {
    assert_eq!(pfaffian::permutation_sign(&[0, 1, 2]), 1);
    assert_eq!(pfaffian::permutation_sign(&[1, 0, 2]), -1);
    assert_eq!(pfaffian::permutation_sign(&[1, 2, 0]), 1);
}

#[test]
fn grassmann_signs() {
    let (a, b) = (GrassmannElement::generator(3, 0), GrassmannElement::generator(3, 2));
    let ab = a.mul(&b).unwrap();
    let ba = b.mul(&a).unwrap();
    assert_eq!(ab, ba.scale(&int(-1)));
    assert!(a.mul(&a).unwrap().is_zero());
    assert_eq!(ab.integrate_out(0b101).coefficient(0), int(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elimination_matches_expansion(m in skew(8)) {
        let idx: Vec<usize> = (0..m.dim()).collect();
        prop_assert_eq!(pfaffian::pf(&m), pf_oracle(&m, &idx));
    }

    #[test]
    fn square_is_determinant(m in skew(7)) {
        let p = pfaffian::pf(&m);
        prop_assert_eq!(p.clone() * p, pfaffian::det(m.rows()));
    }

    #[test]
    fn grassmann_gaussian_is_pfaffian(m in skew(8)) {
        let gauss = grassmann::quadratic(&m).exp().unwrap().integral();
        prop_assert_eq!(gauss, pfaffian::pf(&m));
    }

    #[test]
    fn minors_are_signed_oracle(m in skew(6), mask in 0u32..64) {
        let idx: Vec<usize> = (0..m.dim()).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() % 2 == 1 {
            prop_assert!(pfaffian::pf_minor(&m, &idx).is_err());
            return Ok(());
        }
        let rest: Vec<usize> = (0..m.dim()).filter(|i| mask >> i & 1 == 0).collect();
        let (sign, value) = pfaffian::pf_minor(&m, &idx).unwrap();
        prop_assert!(sign == 1 || sign == -1);
        prop_assert_eq!(value, pf_oracle(&m, &rest));
    }

    #[test]
    fn congruence_preserves_pfaffian(m in skew(6), c in -4i64..=4, i in 0usize..6, j in 0usize..6) {
        // adding c times row/column j to row/column i leaves the Pfaffian unchanged
        let n = m.dim();
        prop_assume!(n >= 2 && i < n && j < n && i != j);
        let mut rows = m.rows().to_vec();
        for k in 0..n {
            let add = rows[j][k].clone() * int(c);
            rows[i][k] += add;
        }
        for k in 0..n {
            let add = rows[k][j].clone() * int(c);
            rows[k][i] += add;
        }
        let t = SkewMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(pfaffian::pf(&t), pfaffian::pf(&m));
    }
}
