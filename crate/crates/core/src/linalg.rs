//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::algebra::Rat;

pub type Matrix = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// Row-reduces in place and returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn det(m: &Matrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&a), rat(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]])), rat(-3));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        let x = solve(&a, &[rat(1), rat(2)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![rat(1), rat(2)]);
        assert!(solve(&a, &[rat(1), rat(3)]).is_none());
        assert_eq!(rank(&a), 1);
    }
}

/// The commutative ring operations needed to evaluate representations on
/// matrices with symbolic entries.
pub trait Ring: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_rat(c: &Rat) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn is_nil(&self) -> bool;

    fn scaled(&self, c: &Rat) -> Self {
        self.times(&Self::from_rat(c))
    }
}

impl Ring for Rat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rat(c: &Rat) -> Self {
        c.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn scaled(&self, c: &Rat) -> Self {
        self * c
    }
}

/// Determinant by cofactor expansion, for small matrices over any ring.
pub fn det_ring<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::unit();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::nil();
    for c in 0..n {
        if m[0][c].is_nil() {
            continue;
        }
        let minor: Vec<Vec<R>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let mut t = m[0][c].times(&det_ring(&minor));
        if c % 2 == 1 {
            t = t.scaled(&-Rat::one());
        }
        acc = acc.plus(&t);
    }
    acc
}

/// The adjugate, so that `m * adj(m) = det(m) * I`.
pub fn adjugate<R: Ring>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![R::unit()]];
    }
    let mut out = vec![vec![R::nil(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<R>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let mut t = det_ring(&minor);
            if (i + j) % 2 == 1 {
                t = t.scaled(&-Rat::one());
            }
            out[j][i] = t;
        }
    }
    out
}

pub fn mat_mul_ring<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(R::nil(), |acc, (x, brow)| {
                        if x.is_nil() || brow[j].is_nil() {
                            acc
                        } else {
                            acc.plus(&x.times(&brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod ring_tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn adjugate_identity() {
        let a: Matrix = vec![vec![rat(2), rat(1), rat(0)], vec![rat(1), rat(3), rat(1)], vec![rat(0), rat(1), rat(4)]];
        let d = det_ring(&a);
        assert_eq!(d, det(&a));
        let prod = mat_mul_ring(&a, &adjugate(&a));
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { d.clone() } else { rat(0) });
            }
        }
    }
}
