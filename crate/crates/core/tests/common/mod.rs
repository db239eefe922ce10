//! Test-side oracles that share no code with the library's determinant and
//! pseudoinverse routines, plus seeded random generators.

#![allow(dead_code)]

use num_traits::Zero;
use qmp::{QMatrix, Quaternion, Rational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion(rng: &mut impl Rng, lo: i64, hi: i64) -> Quaternion {
    Quaternion::from_ints(
        rng.gen_range(lo..=hi),
        rng.gen_range(lo..=hi),
        rng.gen_range(lo..=hi),
        rng.gen_range(lo..=hi),
    )
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize) -> QMatrix {
    QMatrix::from_fn(m, n, |_, _| random_quaternion(rng, -2, 2))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> QMatrix {
    let upper = random_matrix(rng, n, n);
    QMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => upper.entry(i, j).clone(),
        std::cmp::Ordering::Greater => upper.entry(j, i).conj(),
        std::cmp::Ordering::Equal => Quaternion::real(upper.entry(i, i).w.clone()),
    })
}

/// Random matrix of exactly rank `r` built as a product of an `m×r` and an `r×n` factor,
/// retried until the exact rank oracle confirms `r`.
pub fn random_of_rank(rng: &mut impl Rng, m: usize, n: usize, r: usize) -> QMatrix {
    loop {
        let b = random_matrix(rng, m, r);
        let c = random_matrix(rng, r, n);
        let a = &b * &c;
        if rank(&a) == r {
            return a;
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Direct reading of the row determinant: cycles through `i` first, the rest led by
/// their minimum in increasing order, each producing `a[s][σ(s)]` along the cycle.
pub fn brute_rdet(a: &QMatrix, i: usize) -> Quaternion {
    let n = a.rows();
    let mut total = Quaternion::zero();
    for sigma in all_permutations(n) {
        let mut done = vec![false; n];
        let mut leaders = vec![i - 1];
        leaders.extend((0..n).filter(|&s| s != i - 1));
        let mut product = Quaternion::from_ints(1, 0, 0, 0);
        let mut cycles = 0;
        for start in leaders {
            if done[start] {
                continue;
            }
            cycles += 1;
            let mut s = start;
            loop {
                done[s] = true;
                product = &product * a.entry(s + 1, sigma[s] + 1);
                s = sigma[s];
                if s == start {
                    break;
                }
            }
        }
        if (n - cycles) % 2 == 1 {
            total -= &product;
        } else {
            total += &product;
        }
    }
    total
}

/// Direct reading of the column determinant: the cycle through `j` is multiplied last,
/// the remaining cycles come before it by decreasing minimum.
pub fn brute_cdet(a: &QMatrix, j: usize) -> Quaternion {
    let n = a.rows();
    let mut total = Quaternion::zero();
    for sigma in all_permutations(n) {
        let mut done = vec![false; n];
        let mut walks: Vec<Vec<usize>> = Vec::new();
        for start in std::iter::once(j - 1).chain(0..n) {
            if done[start] {
                continue;
            }
            let mut walk = vec![];
            let mut s = start;
            while !done[s] {
                done[s] = true;
                walk.push(s);
                s = sigma[s];
            }
            walks.push(walk);
        }
        let anchored = walks.remove(0);
        walks.sort_by_key(|w| std::cmp::Reverse(w[0]));
        walks.push(anchored);
        let cycles = walks.len();
        let mut product = Quaternion::from_ints(1, 0, 0, 0);
        for s in walks.into_iter().flatten() {
            product = &product * a.entry(s + 1, sigma[s] + 1);
        }
        if (n - cycles) % 2 == 1 {
            total -= &product;
        } else {
            total += &product;
        }
    }
    total
}

/// Reduced row echelon form over the quaternions using left-multiplied row
/// operations. Returns the reduced rows and the pivot columns (0-based).
pub fn rref(a: &QMatrix) -> (Vec<Vec<Quaternion>>, Vec<usize>) {
    let (m, n) = a.shape();
    let mut rows: Vec<Vec<Quaternion>> = (1..=m).map(|i| a.row_entries(i).unwrap()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..n {
        let Some(p) = (next..m).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][c].inv().unwrap();
        rows[next] = rows[next].iter().map(|v| &inv * v).collect();
        for r in 0..m {
            if r != next && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let pivot_row = rows[next].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *v -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        next += 1;
        if next == m {
            break;
        }
    }
    (rows, pivots)
}

pub fn rank(a: &QMatrix) -> usize {
    rref(a).1.len()
}

/// Two-sided inverse by Gauss-Jordan elimination.
pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.rows();
    let (rows, pivots) = rref(&a.hstack(&QMatrix::identity(n)).unwrap());
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(QMatrix::from_fn(n, n, |i, j| {
        rows[i - 1][n + j - 1].clone()
    }))
}

/// `A⁺ = C*(CC*)⁻¹(B*B)⁻¹B*` from the full-rank factorisation `A = BC`, where `B`
/// holds the pivot columns of `A` and `C` the nonzero rows of its reduced form.
pub fn pinv_by_factorisation(a: &QMatrix) -> QMatrix {
    let (m, n) = a.shape();
    let (rows, pivots) = rref(a);
    let r = pivots.len();
    if r == 0 {
        return QMatrix::zeros(n, m);
    }
    let b = QMatrix::from_fn(m, r, |i, k| a.entry(i, pivots[k - 1] + 1).clone());
    let c = QMatrix::from_fn(r, n, |k, j| rows[k - 1][j - 1].clone());
    assert_eq!(&b * &c, *a, "full-rank factorisation");
    let bs = b.adjoint();
    let cs = c.adjoint();
    let left = inverse(&(&c * &cs)).expect("CC* invertible");
    let right = inverse(&(&bs * &b)).expect("B*B invertible");
    &(&(&cs * &left) * &right) * &bs
}

/// Rational points `0, 1, …` and Lagrange interpolation of a polynomial through them,
/// coefficients from the highest degree down.
pub fn interpolate(values: &[Rational]) -> Vec<Rational> {
    let n = values.len();
    let xs: Vec<Rational> = (0..n as i64).map(|x| qmp::ratio(x, 1)).collect();
    // coefficients from degree 0 upward while building
    let mut coeffs = vec![Rational::zero(); n];
    for (k, yk) in values.iter().enumerate() {
        let mut basis = vec![Rational::from_integer(1.into())];
        let mut denom = Rational::from_integer(1.into());
        for (l, xl) in xs.iter().enumerate() {
            if l == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c.clone();
                next[d] -= c.clone() * xl.clone();
            }
            basis = next;
            denom *= xs[k].clone() - xl.clone();
        }
        for (d, c) in basis.into_iter().enumerate() {
            coeffs[d] += c * yk.clone() / denom.clone();
        }
    }
    coeffs.reverse();
    coeffs
}
