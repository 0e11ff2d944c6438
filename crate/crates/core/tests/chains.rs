use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toric_mirror::chains::snf::{dense_det, dense_mul, smith_normal_form_dense};
use toric_mirror::chains::{
    cohomology, cone_acyclic, verify_complex, ChainMap, ChainsError, FreeComplex, SparseMatrix,
};

fn complex(lo: i32, dims: &[usize], d: &[Vec<Vec<i64>>]) -> FreeComplex<usize> {
    let basis = dims.iter().map(|&n| (0..n).collect()).collect();
    let d = d
        .iter()
        .zip(dims.windows(2))
        .map(|(m, w)| {
            if m.is_empty() {
                SparseMatrix::zeros(w[1], w[0])
            } else {
                SparseMatrix::from_dense(m)
            }
        })
        .collect();
    FreeComplex::new(lo, basis, d).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn zero_differential() {
    let c: FreeComplex<usize> =
        FreeComplex::zero_differential(0, vec![vec![0, 1], vec![], vec![0]]);
    verify_complex(&c).unwrap();
    let h = cohomology(&c);
    assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (2, 0, 1));
    assert_eq!(h.euler_characteristic(), 3);
}

#[test]
fn interval_relative_to_both_ends() {
    let c = complex(0, &[1, 2], &[vec![vec![1], vec![1]]]);
    verify_complex(&c).unwrap();
    let h = cohomology(&c);
    assert_eq!((h.rank(0), h.rank(1)), (0, 1));
    assert!(h.torsion(1).is_empty());
}

#[test]
fn interval_absolute() {
    let c = complex(0, &[2, 1], &[vec![vec![-1, 1]]]);
    let h = cohomology(&c);
    assert_eq!((h.rank(0), h.rank(1)), (1, 0));
}

#[test]
fn torsion_is_detected() {
    let c = complex(0, &[1, 1], &[vec![vec![2]]]);
    let h = cohomology(&c);
    assert_eq!(h.rank(0) + h.rank(1), 0);
    assert_eq!(h.torsion(1), big(&[2]).as_slice());
    assert_eq!(h.to_string(), "H^1=Z/2");
}

#[test]
fn corrupted_sign_is_located() {
    // the boundary of a triangle, coboundary form, with one sign flipped
    let good = complex(
        0,
        &[3, 3, 1],
        &[
            vec![vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]],
            vec![vec![1, 1, -1]],
        ],
    );
    verify_complex(&good).unwrap();
    let bad = complex(
        0,
        &[3, 3, 1],
        &[
            vec![vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]],
            vec![vec![1, -1, -1]],
        ],
    );
    assert_eq!(
        verify_complex(&bad),
        Err(ChainsError::NotSquareZero {
            degree: 0,
            column: 1
        })
    );
    assert!(matches!(
        cone_acyclic(&ChainMap::identity(bad)),
        Err(ChainsError::NotSquareZero { .. })
    ));
}

#[test]
fn shape_mismatch_is_an_error() {
    let err = FreeComplex::new(
        0,
        vec![vec![0usize], vec![0, 1]],
        vec![SparseMatrix::zeros(1, 1)],
    )
    .unwrap_err();
    assert!(matches!(err, ChainsError::Shape { .. }));
}

#[test]
fn identity_is_a_quasi_isomorphism() {
    let c = complex(0, &[1, 2], &[vec![vec![1], vec![1]]]);
    assert!(cone_acyclic(&ChainMap::identity(c)).unwrap());
}

#[test]
fn zero_map_is_not() {
    let c = complex(0, &[2, 1], &[vec![vec![-1, 1]]]);
    let z = ChainMap::new(c.clone(), c.clone(), |k| {
        SparseMatrix::zeros(c.rank(k), c.rank(k))
    })
    .unwrap();
    assert!(!cone_acyclic(&z).unwrap());
}

#[test]
fn non_chain_map_is_rejected() {
    let a = complex(0, &[1, 1], &[vec![vec![1]]]);
    let b: FreeComplex<usize> = FreeComplex::zero_differential(0, vec![vec![0], vec![0]]);
    let f = ChainMap::new(a, b, |k| {
        if k == 1 {
            SparseMatrix::identity(1)
        } else {
            SparseMatrix::zeros(1, 1)
        }
    })
    .unwrap();
    assert!(matches!(
        cone_acyclic(&f),
        Err(ChainsError::NotChainMap { .. })
    ));
}

fn check_snf(m: Vec<Vec<BigInt>>) -> Result<(), TestCaseError> {
    let s = smith_normal_form_dense(m.clone(), true);
    let u = s.u.clone().unwrap();
    let v = s.v.clone().unwrap();
    prop_assert_eq!(dense_mul(&dense_mul(&u, &m), &v), s.diagonal_matrix());
    prop_assert!(dense_det(&u).abs().is_one());
    prop_assert!(dense_det(&v).abs().is_one());
    prop_assert!(s.divisors.iter().all(|d| d > &BigInt::zero()));
    prop_assert!(s.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    Ok(())
}

#[test]
fn snf_of_a_dense_pm3_matrix() {
    // entries overflow 64 bits in naive elimination
    let m: Vec<Vec<BigInt>> = (0..12)
        .map(|i| {
            (0..12)
                .map(|j| BigInt::from(((i * 7 + j * 5 + i * j) % 7) as i64 - 3))
                .collect()
        })
        .collect();
    check_snf(m).unwrap();
}

// A complex with known cohomology: a direct sum of `Z` in degree k and of
// `Z --m--> Z` from degree k to k+1, in a scrambled basis.
#[derive(Clone, Debug)]
enum Block {
    Free(usize),
    Pair(usize, i64),
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut inv = p.clone();
    for &(a, b, q) in ops {
        if n < 2 {
            break;
        }
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        // p <- E p with E = I + q e_ab; inv <- inv E^{-1}
        let src = p[b].clone();
        for (x, y) in p[a].iter_mut().zip(&src) {
            *x += q * y;
        }
        for row in inv.iter_mut() {
            row[b] -= q * row[a];
        }
    }
    (p, inv)
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], rows: usize, cols: usize) -> Vec<Vec<i64>> {
    let inner = b.len();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn blocks() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec(
        prop_oneof![
            (0usize..3).prop_map(Block::Free),
            (0usize..2, prop::sample::select(vec![1i64, 2, 4, 8]))
                .prop_map(|(k, m)| Block::Pair(k, m)),
        ],
        0..6,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_identity(rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec(-9i64..=9, 36)) {
        let m: Vec<Vec<BigInt>> = (0..rows).map(|i| big(&entries[i * cols..i * cols + cols])).collect();
        check_snf(m)?;
    }

    #[test]
    fn cohomology_of_scrambled_blocks(blocks in blocks(), ops in prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..12)) {
        let mut dims = [0usize; 3];
        let mut entries: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); 2];
        let mut free = [0usize; 3];
        let mut torsion: Vec<Vec<i64>> = vec![Vec::new(); 3];
        for b in &blocks {
            match *b {
                Block::Free(k) => {
                    dims[k] += 1;
                    free[k] += 1;
                }
                Block::Pair(k, m) => {
                    entries[k].push((dims[k + 1], dims[k], m));
                    dims[k] += 1;
                    dims[k + 1] += 1;
                    if m > 1 {
                        torsion[k + 1].push(m);
                    }
                }
            }
        }
        let changes: Vec<_> = (0..3).map(|k| unimodular(dims[k], &ops)).collect();
        let d: Vec<Vec<Vec<i64>>> = (0..2)
            .map(|k| {
                let mut m = vec![vec![0i64; dims[k]]; dims[k + 1]];
                for &(r, c, v) in &entries[k] {
                    m[r][c] = v;
                }
                let left = matmul(&changes[k + 1].0, &m, dims[k + 1], dims[k]);
                matmul(&left, &changes[k].1, dims[k + 1], dims[k])
            })
            .collect();
        let basis = dims.iter().map(|&n| (0..n).collect()).collect();
        let mats = d.iter().zip(dims.windows(2)).map(|(m, w)| {
            let t = m.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
            SparseMatrix::from_triplets(w[1], w[0], t.collect::<Vec<_>>())
        }).collect();
        let c: FreeComplex<usize> = FreeComplex::new(0, basis, mats).unwrap();
        prop_assert!(verify_complex(&c).is_ok());
        let h = cohomology(&c);
        for k in 0..3 {
            prop_assert_eq!(h.rank(k as i32), free[k]);
            let mut t = torsion[k].clone();
            t.sort();
            prop_assert_eq!(h.torsion(k as i32).to_vec(), big(&t));
        }
        prop_assert_eq!(h.euler_characteristic(), c.euler_characteristic());
        prop_assert!(cone_acyclic(&ChainMap::identity(c)).unwrap());
    }
}
