//! Integer and modular arithmetic, plus the small amount of linear algebra
//! over `Z` and `F_p` that reparametrization needs.

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Reduces an `i128` into `[0, m)`.
#[inline]
pub fn reduce_wide(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Representative of `x mod m` with the least absolute value, in `(-m/2, m/2]`.
pub fn least_abs_residue(x: i64, m: u64) -> i64 {
    let r = reduce(x, m) as i64;
    if 2 * r > m as i64 {
        r - m as i64
    } else {
        r
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// `floor(sqrt(n))`, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Rows reduced mod `p`.
pub fn reduce_rows(rows: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|row| row.iter().map(|&v| reduce(v, p)).collect())
        .collect()
}

/// Incremental row-echelon basis over `F_p`, used to test independence.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    p: u64,
    // (pivot column, normalized row)
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u64) -> Self {
        Self { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn residual(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (col, row) in &self.rows {
            let c = v[*col];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + p - (c * r) % p) % p;
                }
            }
        }
        v
    }

    /// Whether `v` lies in the span of the rows inserted so far.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns false (and changes nothing) when `v` is dependent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut res = self.residual(v);
        let Some(col) = res.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inv(res[col], p).expect("nonzero residue is invertible mod a prime");
        for x in res.iter_mut() {
            *x = (*x * inv) % p;
        }
        // keep the basis fully reduced so that residuals stay canonical
        for (_, row) in self.rows.iter_mut() {
            let c = row[col];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&res) {
                    *x = (*x + p - (c * r) % p) % p;
                }
            }
        }
        self.rows.push((col, res));
        true
    }
}

/// Rank of integer rows over `F_p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut basis = EchelonBasis::new(p);
    for row in reduce_rows(rows, p) {
        basis.insert(&row);
    }
    basis.rank()
}

/// Indices of a maximal independent subset of `rows` over `F_p`, chosen greedily in order.
pub fn independent_subset(rows: &[Vec<i64>], p: u64) -> Vec<usize> {
    let mut basis = EchelonBasis::new(p);
    reduce_rows(rows, p)
        .iter()
        .enumerate()
        .filter_map(|(i, row)| basis.insert(row).then_some(i))
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn det(matrix: &[Vec<i128>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate `A` of a square integer matrix `B`, so that `A·B = B·A = det(B)·I`.
pub fn adjugate(matrix: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = matrix.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = matrix
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let cof = if (i + j) % 2 == 0 { det(&minor) } else { -det(&minor) };
            // transpose of the cofactor matrix
            adj[j][i] = cof;
        }
    }
    adj
}

/// Inverse of a square matrix over `F_p`, if it is invertible.
pub fn mat_inv_mod_p(matrix: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|&v| v % p).collect();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| a[i][col] != 0)?;
        a.swap(col, pivot);
        let inv = mod_inv(a[col][col], p)?;
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let c = row[col];
            if i != col && c != 0 {
                for (x, &r) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - c * r % p) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Product of matrices over `F_p`.
pub fn mat_mul_mod_p(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(&x, bk)| x * bk[j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(reduce(-1, 5), 4);
        assert_eq!(least_abs_residue(9, 13), -4);
        assert_eq!(least_abs_residue(3, 5), -2);
        assert_eq!(least_abs_residue(2, 5), 2);
        assert_eq!(mod_inv(3, 13), Some(9));
        assert_eq!(mod_inv(4, 8), None);
        assert_eq!(mod_pow(3, 12, 13), 1);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_between(5, 20), vec![5, 7, 11, 13, 17, 19]);
        assert!(is_prime(199) && !is_prime(200) && is_prime(211));
        assert_eq!(isqrt(1500), 38);
        assert_eq!(isqrt(1521), 39);
    }

    #[test]
    fn rank_of_four_ap() {
        let rows = vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]];
        assert_eq!(rank_mod_p(&rows, 5), 2);
        assert_eq!(independent_subset(&rows, 5), vec![0, 1]);
        // (1,2) and (2,4) are proportional
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 7), 1);
    }

    #[test]
    fn adjugate_identity() {
        let b = vec![vec![2i128, -1, 3], vec![0, 4, 1], vec![5, 2, -2]];
        let d = det(&b);
        let a = adjugate(&b);
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| a[i][k] * b[k][j]).sum();
                assert_eq!(s, if i == j { d } else { 0 });
            }
        }
        assert_eq!(d, 2 * (-8 - 2) + 1 * (0 - 5) + 3 * (0 - 20));
    }

    #[test]
    fn modular_inverse_matrix() {
        let b = vec![vec![1, 0, 2], vec![3, 1, 4], vec![0, 5, 6]];
        let inv = mat_inv_mod_p(&b, 7).unwrap();
        let prod = mat_mul_mod_p(&b, &inv, 7);
        for (i, row) in prod.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, u64::from(i == j));
            }
        }
        assert!(mat_inv_mod_p(&[vec![1, 2], vec![2, 4]], 5).is_none());
    }
}
