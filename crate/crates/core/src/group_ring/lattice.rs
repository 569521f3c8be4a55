//! Test whether a set of integer vectors spans `Z^d` as a group.
//!
//! The vectors span the full lattice exactly when the Smith normal form of
//! the matrix they stack into has `d` elementary divisors all equal to 1.
//! Since the divisors satisfy `delta_1 * ... * delta_k = D_k` with `D_k` the
//! gcd of all `k x k` minors, that holds if and only if the gcd of all
//! `d x d` minors is 1, which is what we compute.

use alloc::vec::Vec;

/// Whether `rows` generate `Z^dim` as a group.
pub(crate) fn spans_lattice(rows: &[Vec<i64>], dim: usize) -> bool {
    if dim == 0 {
        return true;
    }
    let rows: Vec<&Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&e| e != 0)).collect();
    if rows.len() < dim {
        return false;
    }
    let mut gcd_minors: i128 = 0;
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let det = minor_det(&rows, &subset);
        gcd_minors = gcd(gcd_minors, det.abs());
        if gcd_minors == 1 {
            return true;
        }
        if !next_combination(&mut subset, rows.len()) {
            break;
        }
    }
    false
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Advance `subset` to the next k-combination of `0..n`; false when done.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact determinant of the square submatrix picked by `subset`, via
/// fraction-free (Bareiss) elimination in i128.
fn minor_det(rows: &[&Vec<i64>], subset: &[usize]) -> i128 {
    let d = subset.len();
    let mut m: Vec<Vec<i128>> = subset
        .iter()
        .map(|&r| rows[r].iter().map(|&e| e as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..d {
        if m[k][k] == 0 {
            let swap = (k + 1..d).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[d - 1][d - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn standard_basis_spans() {
        let rows = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(spans_lattice(&rows, 3));
    }

    #[test]
    fn laplacian_support_spans() {
        let rows = vec![
            vec![0, 0],
            vec![1, 0],
            vec![-1, 0],
            vec![0, 1],
            vec![0, -1],
        ];
        assert!(spans_lattice(&rows, 2));
    }

    #[test]
    fn sublattice_rejected() {
        // 2Z x Z: index 2.
        assert!(!spans_lattice(&vec![vec![2, 0], vec![0, 1]], 2));
        // rank deficient
        assert!(!spans_lattice(&vec![vec![1, 0], vec![-1, 0], vec![0, 0]], 2));
        // (1,1) and (1,-1) generate the even-checkerboard sublattice.
        assert!(!spans_lattice(&vec![vec![1, 1], vec![1, -1]], 2));
    }

    #[test]
    fn non_obvious_spanning_set() {
        // (2,1) and (3,2): determinant 1.
        assert!(spans_lattice(&vec![vec![2, 1], vec![3, 2]], 2));
        // (2,0) and (3,1) and (0,5): minors 2, 10, 15 -> gcd 1.
        assert!(spans_lattice(&vec![vec![2, 0], vec![3, 1], vec![0, 5]], 2));
    }
}
