mod common;

use cubiclat::lattice::{
    count_short_vectors, default_corpus, ok_vector_from_coords, trace_transfer, verify_count_bound, GramMatrix,
    OkGramMatrix, DEFAULT_PRECISION_BITS,
};
use cubiclat::{CubicOrder, Family, OrderElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// Inverse by Gauss-Jordan over Q.
fn inverse(g: &GramMatrix) -> Vec<Vec<BigRational>> {
    let n = g.rank();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(g.get(i, j).clone())
                    } else {
                        BigRational::from_integer(BigInt::from(u8::from(j - n == i)))
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular");
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Brute force over the box `|x_i| <= sqrt(n (G^-1)_ii)`, which contains
/// every vector of norm at most `n`.
fn naive_count(g: &GramMatrix, n: u64) -> u64 {
    let inv = inverse(g);
    let r = g.rank();
    let bounds: Vec<i64> = (0..r)
        .map(|i| {
            let t = &inv[i][i] * BigRational::from_integer(n.into());
            (t.to_f64().unwrap().sqrt() + 1.0).floor() as i64
        })
        .collect();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let target = BigInt::from(n);
    let mut count = 0;
    loop {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        if g.quadratic_value(&v) == target {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == r {
                return count;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

#[test]
fn corpus_counts_match_naive_enumeration() {
    let corpus = default_corpus();
    assert_eq!(corpus.len(), 20);
    assert!(corpus.iter().all(|g| g.rank() <= 5));
    for g in &corpus {
        for n in 1..=10 {
            let fp = count_short_vectors(g, n, false).unwrap().count;
            assert_eq!(fp, naive_count(g, n), "gram\n{g}norm {n}");
        }
    }
}

#[test]
fn corpus_respects_count_bound() {
    for g in default_corpus() {
        for n in 1..=10 {
            let check = verify_count_bound(&g, n, DEFAULT_PRECISION_BITS).unwrap();
            assert!(check.holds, "gram\n{g}norm {n}: {check:?}");
        }
    }
}

#[test]
fn identity_lattices_meet_small_norm_bounds() {
    for r in [3usize, 6, 9, 12] {
        let id = GramMatrix::identity(r);
        let r64 = r as u64;
        assert_eq!(count_short_vectors(&id, 1, false).unwrap().count, 2 * r64);
        assert_eq!(count_short_vectors(&id, 2, false).unwrap().count, 2 * r64 * (r64 - 1));
        for n in 1..=2 {
            assert!(verify_count_bound(&id, n, DEFAULT_PRECISION_BITS).unwrap().holds);
        }
    }
}

fn random_gram() -> impl Strategy<Value = GramMatrix> {
    (1usize..=4)
        .prop_flat_map(|r| (Just(r), prop::collection::vec(-3i64..=3, r * r)))
        .prop_map(|(r, m)| {
            // M^T M + I is positive definite
            let rows: Vec<Vec<BigInt>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            let dot: i64 = (0..r).map(|k| m[k * r + i] * m[k * r + j]).sum();
                            BigInt::from(dot + i64::from(i == j))
                        })
                        .collect()
                })
                .collect();
            GramMatrix::new(rows).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fincke_pohst_matches_naive(g in random_gram(), n in 1u64..=6) {
        prop_assert_eq!(count_short_vectors(&g, n, false).unwrap().count, naive_count(&g, n));
    }

    #[test]
    fn listed_vectors_have_the_right_norm(g in random_gram(), n in 1u64..=6) {
        let sv = count_short_vectors(&g, n, true).unwrap();
        let vs = sv.vectors.unwrap();
        prop_assert_eq!(vs.len() as u64, sv.count);
        let mut sorted = vs.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &vs);
        for v in &vs {
            let b: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
            prop_assert_eq!(g.quadratic_value(&b), BigInt::from(n));
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            prop_assert!(vs.binary_search(&neg).is_ok());
        }
    }

    #[test]
    fn ldl_determinant_matches_bareiss(g in random_gram()) {
        let ldl = g.ldl().unwrap();
        prop_assert_eq!(ldl.determinant(), BigRational::from_integer(g.determinant()));
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Shanks), Just(Family::Ennola), Just(Family::Family3)]
}

/// `beta^2 + 1` is totally positive.
fn tp(order: &CubicOrder, b: [i64; 3]) -> OrderElement {
    let beta = OrderElement::from(b);
    &order.mul(&beta, &beta) + &OrderElement::one()
}

/// `M^T diag(d) M` with `M` unimodular upper triangular and `d` totally
/// positive: a totally positive definite O_K-Gram matrix.
fn ok_gram(order: &CubicOrder, diag: &[[i64; 3]], upper: &[i64]) -> OkGramMatrix {
    let r = diag.len();
    let d: Vec<OrderElement> = diag.iter().map(|&b| tp(order, b)).collect();
    let mut m = vec![vec![0i64; r]; r];
    let mut it = upper.iter();
    for i in 0..r {
        m[i][i] = 1;
        for j in (i + 1)..r {
            m[i][j] = *it.next().unwrap_or(&0);
        }
    }
    let entries = (0..r)
        .map(|s| {
            (0..r)
                .map(|t| {
                    (0..r).fold(OrderElement::zero(), |acc, k| {
                        let c = BigInt::from(m[k][s] * m[k][t]);
                        &acc + &d[k].scale(&c)
                    })
                })
                .collect()
        })
        .collect();
    OkGramMatrix::new(order, entries).unwrap()
}

#[test]
fn unit_lattice_transfer_for_shanks_seven() {
    let o = CubicOrder::new(Family::Shanks, 7).unwrap();
    let l = OkGramMatrix::new(&o, vec![vec![OrderElement::one()]]).unwrap();
    let t = trace_transfer(&o, &l, &OrderElement::one()).unwrap();
    assert_eq!(t.gram, GramMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 7], &[1, 7, 59]]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transfer_is_symmetric_and_matches_numeric_trace(
        f in family(),
        a in 7i64..25,
        diag in prop::collection::vec(prop::array::uniform3(-2i64..=2), 1..=3),
        upper in prop::collection::vec(-2i64..=2, 3),
        h in prop::array::uniform3(-6i64..=6),
    ) {
        let o = CubicOrder::new(f, a).unwrap();
        let l = ok_gram(&o, &diag, &upper);
        let h = OrderElement::from(h);
        let t = trace_transfer(&o, &l, &h).unwrap();
        let g = &t.gram;
        let n = g.rank();
        prop_assert_eq!(n, 3 * l.rank());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(g.get(i, j), g.get(j, i));
                let (s, ti, s2, tj) = (i / 3, i % 3, j / 3, j % 3);
                let b = &l.entries()[s][s2];
                let numeric = common::roots(f, a).iter().map(|&r| {
                    common::embed(b, r) * r.powi((ti + tj) as i32) * common::embed(&h, r) / common::fprime(f, a, r)
                }).sum::<f64>();
                let exact = g.get(i, j).to_f64().unwrap();
                prop_assert!((exact - numeric).abs() < 1e-6 * numeric.abs().max(1.0));
            }
        }
        // The trace form evaluated on a coordinate vector equals Tr(delta Q(u)).
        let coords: Vec<BigInt> = (0..n as i64).map(|i| BigInt::from(i % 3 - 1)).collect();
        let u = ok_vector_from_coords(&coords);
        let q = l.quadratic_value(&o, &u);
        prop_assert_eq!(g.quadratic_value(&coords), o.dual_trace_pairing(&q, &h));
    }

    #[test]
    fn transfer_is_positive_definite_iff_delta_is_totally_positive(
        f in family(),
        a in 7i64..25,
        diag in prop::collection::vec(prop::array::uniform3(-2i64..=2), 1..=3),
        upper in prop::collection::vec(-2i64..=2, 3),
        gamma in prop::array::uniform3(-3i64..=3),
        h in prop::array::uniform3(-6i64..=6),
        use_tp_delta in any::<bool>(),
    ) {
        let o = CubicOrder::new(f, a).unwrap();
        let l = ok_gram(&o, &diag, &upper);
        // delta = gamma^2 + 1 when h = f'(rho) (gamma^2 + 1)
        let h = if use_tp_delta { o.mul(&o.fprime_at_rho(), &tp(&o, gamma)) } else { OrderElement::from(h) };
        prop_assume!(!h.is_zero());
        let t = trace_transfer(&o, &l, &h).unwrap();
        prop_assert_eq!(t.positive_definite, t.delta_totally_positive);
        if use_tp_delta {
            prop_assert!(t.positive_definite);
        }
        let det = t.gram.determinant();
        if t.positive_definite {
            prop_assert!(det.is_positive());
        }
    }
}
