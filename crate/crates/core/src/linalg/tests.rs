use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::{PrimeField, RationalField};

fn random_matrix<F: Field>(f: &F, rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix<F::Elem> {
    // product of random rows x rank and rank x cols factors
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Vec<F::Elem>> = (0..rows).map(|_| (0..rank).map(|_| f.random(&mut rng)).collect()).collect();
    let b: Vec<Vec<F::Elem>> = (0..rank).map(|_| (0..cols).map(|_| f.random(&mut rng)).collect()).collect();
    let mut m = Matrix::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = (0..rank).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j])));
            m.set(i, j, v);
        }
    }
    m
}

#[test]
fn identity_and_zero() {
    let f = PrimeField::new(101).unwrap();
    let mut id = Matrix::zeros(&f, 3, 3);
    for i in 0..3 {
        id.set(i, i, 1);
    }
    assert!(kernel(&f, &id).is_empty());
    assert_eq!(kernel(&f, &Matrix::zeros(&f, 2, 5)).len(), 5);
    assert_eq!(rank(&f, &Matrix::zeros(&f, 0, 4)), 0);
}

#[test]
fn fast_kernel_matches_generic() {
    for (p, seed) in [(3u64, 1u64), (101, 2), (crate::field::DEFAULT_PRIMES[0], 3), (4_294_967_291, 4)] {
        let f = PrimeField::new(p).unwrap();
        for (rows, cols, r) in [(5, 7, 3), (40, 30, 30), (60, 80, 45), (300, 300, 290)] {
            let m = random_matrix(&f, rows, cols, r, seed + rows as u64);
            for full in [false, true] {
                let mut a = m.clone();
                let mut b = m.clone();
                let pa = f.row_reduce(&mut a, full);
                let pb = generic_row_reduce(&f, &mut b, full);
                assert_eq!(pa, pb);
                if full {
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn rank_nullity_and_kernel_vectors() {
    let f = PrimeField::new(crate::field::DEFAULT_PRIMES[1]).unwrap();
    for seed in 0..10 {
        let m = random_matrix(&f, 12, 15, (seed % 12) as usize, seed);
        let ker = kernel(&f, &m);
        assert_eq!(rank(&f, &m) + ker.len(), 15);
        for v in &ker {
            assert!(m.mul_vec(&f, v).unwrap().iter().all(|x| *x == 0));
        }
    }
}

#[test]
fn rational_elimination() {
    let q = RationalField::new(0);
    let m = random_matrix(&q, 6, 8, 4, 7);
    let ker = kernel(&q, &m);
    assert_eq!(ker.len(), 4);
    for v in &ker {
        assert!(m.mul_vec(&q, v).unwrap().iter().all(|x| q.is_zero(x)));
    }
}

#[test]
fn spans() {
    let f = PrimeField::new(10007).unwrap();
    let a = vec![vec![1, 2, 3], vec![0, 1, 1]];
    let b = vec![vec![1, 3, 4], vec![2, 5, 7]];
    assert!(span_equal(&f, &a, &a, 3).unwrap());
    assert!(span_equal(&f, &a, &b, 3).unwrap());
    assert!(span_contains(&f, &a, &[2, 5, 7]).unwrap());
    assert!(!span_contains(&f, &a, &[0, 0, 1]).unwrap());
    assert!(span_equal(&f, &a, &[vec![1, 2]], 3).is_err());
    let sol = solve_in_span(&f, &a, &[vec![2, 5, 7], vec![0, 0, 1]], 3).unwrap();
    assert_eq!(sol[0], Some(vec![2, 1]));
    assert_eq!(sol[1], None);
    assert!(solve_in_span(&f, &[vec![1, 1, 1], vec![2, 2, 2]], &[], 3).is_err());
}

#[test]
fn dump_format() {
    let f = PrimeField::new(7).unwrap();
    let m = Matrix::from_rows(vec![vec![1, 6], vec![0, 3]], 2).unwrap();
    assert_eq!(dump(&f, &m), "2 2\n1 -1\n0 3\n");
    assert!(Matrix::from_rows(vec![vec![1u64]], 2).is_err());
}
