use dcp_core::linalg::{int, smith_normal_form, IntMatrix, RatMatrix, Subspace};
use num_bigint::BigInt;
use proptest::prelude::*;

const N: usize = 4;

fn rows_strategy(max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, N), 0..=max_rows)
}

fn subspace(rows: &[Vec<i64>]) -> Subspace {
    Subspace::from_i64_rows(N, rows).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

/// A unimodular matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            m.swap(i, (i + 1) % n);
            continue;
        }
        let source = m[j].clone();
        for (x, s) in m[i].iter_mut().zip(&source) {
            *x += k * s;
        }
    }
    m
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_key_is_independent_of_spanning_set(rows in rows_strategy(4), mix in prop::collection::vec(-2i64..=2, 16)) {
        let a = subspace(&rows);
        // replace each row by a combination with later rows, then reverse
        let mut other: Vec<Vec<i64>> = rows.clone();
        for i in 0..other.len() {
            for j in i + 1..rows.len() {
                let k = mix[(i * 4 + j) % mix.len()];
                for c in 0..N {
                    other[i][c] += k * rows[j][c];
                }
            }
        }
        other.reverse();
        other.extend(rows.iter().take(1).map(|r| r.iter().map(|x| 2 * x).collect::<Vec<_>>()));
        let b = subspace(&other);
        prop_assert_eq!(a.key(), b.key());
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn key_round_trips(rows in rows_strategy(4)) {
        let a = subspace(&rows);
        let back = Subspace::from_key(a.key()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dimension_formula_and_modular_law(x in rows_strategy(3), y in rows_strategy(3), z in rows_strategy(2)) {
        let (a, b) = (subspace(&x), subspace(&y));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        // modular law: if A ⊆ C then A + (B ∩ C) = (A + B) ∩ C
        let c = a.sum(&subspace(&z)).unwrap();
        let lhs = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let rhs = a.sum(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_along_identity_and_composition(rows in rows_strategy(3), f in prop::collection::vec(-2i64..=2, N * N), g in prop::collection::vec(-2i64..=2, N * N)) {
        let s = subspace(&rows);
        prop_assert_eq!(s.pullback(&RatMatrix::identity(N)).unwrap(), s.clone());
        let to_matrix = |v: &[i64]| RatMatrix::from_i64(&v.chunks(N).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap();
        let (f, g) = (to_matrix(&f), to_matrix(&g));
        // (g ∘ f)^* = f^* ∘ g^*
        let direct = s.pullback(&g.compose(&f).unwrap()).unwrap();
        let staged = s.pullback(&g).unwrap().pullback(&f).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn snf_is_invariant_under_unimodular_change(m in matrix_strategy(), left in prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..6), right in prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..6)) {
        let (r, c) = (m.len(), m[0].len());
        let changed = mul(&mul(&unimodular(r, &left), &m), &unimodular(c, &right));
        let a = smith_normal_form(&IntMatrix::from_dense(&m));
        let b = smith_normal_form(&IntMatrix::from_dense(&changed));
        prop_assert_eq!(&a, &b);
        for w in a.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert!(a.factors.iter().all(|f| *f > BigInt::from(0)));
    }

    #[test]
    fn snf_of_transpose_and_permutation(m in matrix_strategy(), seed in 0usize..100) {
        let im = IntMatrix::from_dense(&m);
        let a = smith_normal_form(&im);
        prop_assert_eq!(&a, &smith_normal_form(&im.transpose()));
        let (r, c) = (im.nrows(), im.ncols());
        let rp: Vec<usize> = (0..r).map(|i| (i + seed) % r).collect();
        let cp: Vec<usize> = (0..c).map(|j| (j * 7 + seed) % c).collect();
        let cp = if is_permutation(&cp) { cp } else { (0..c).rev().collect() };
        prop_assert_eq!(&a, &smith_normal_form(&im.permuted(&rp, &cp)));
    }

    #[test]
    fn snf_determinant_of_square(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3)) {
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        let s = smith_normal_form(&IntMatrix::from_dense(&m));
        if det == 0 {
            prop_assert!(s.rank() < 3);
        } else {
            let prod: BigInt = s.factors.iter().product();
            prop_assert_eq!(prod, BigInt::from(det.abs()));
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

#[test]
fn rational_entries_reduce() {
    let s = Subspace::from_rows(2, vec![vec![int(2), int(4)]]).unwrap();
    assert_eq!(s.key(), "2:1,2");
}
