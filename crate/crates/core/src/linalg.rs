//! Exact linear algebra over Q and Z: echelon forms, kernels, Hermite and Smith
//! normal forms, and full-rank lattices in Q^n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMat = Vec<Vec<BigRational>>;
pub type ZMat = Vec<Vec<BigInt>>;

pub fn zero_q(rows: usize, cols: usize) -> QMat {
    vec![vec![BigRational::zero(); cols]; rows]
}

pub fn identity_q(n: usize) -> QMat {
    let mut m = zero_q(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn identity_z(n: usize) -> ZMat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn q_mul(a: &QMat, b: &QMat) -> QMat {
    a.iter().map(|row| row_times(row, b)).collect()
}

/// Row vector times matrix.
pub fn row_times(x: &[BigRational], m: &QMat) -> Vec<BigRational> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigRational::zero(); cols];
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            if !v.is_zero() {
                *o += xi * v;
            }
        }
    }
    out
}

pub fn z_row_times(x: &[BigInt], m: &ZMat) -> Vec<BigInt> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigInt::zero(); cols];
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            *o += xi * v;
        }
    }
    out
}

pub fn to_q(m: &ZMat) -> QMat {
    m.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (top, bottom) = if i < r {
                    let (x, y) = a.split_at_mut(r);
                    (&mut x[i], &y[0])
                } else {
                    let (x, y) = a.split_at_mut(i);
                    (&mut y[0], &x[r])
                };
                for (t, b) in top.iter_mut().zip(bottom) {
                    if !b.is_zero() {
                        *t -= &f * b;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

pub fn det(m: &QMat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
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

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_z(m: &ZMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n - 1 {
        if a[c][c].is_zero() {
            let Some(p) = (c + 1..n).find(|&i| !a[i][c].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = &a[i][j] * &a[c][c] - &a[i][c] * &a[c][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis (as rows) of `{x : A x = 0}`.
pub fn right_kernel(a: &QMat) -> QMat {
    let cols = a.first().map_or(0, |r| r.len());
    let (r, piv) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Basis (as rows) of `{x : x A = 0}`.
pub fn left_kernel(a: &QMat) -> QMat {
    right_kernel(&transpose(a))
}

/// Some `x` with `x A = b`, if one exists.
pub fn solve_row(a: &QMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut aug = transpose(a);
    if aug.is_empty() {
        aug = vec![Vec::new(); b.len()];
    }
    for (row, bi) in aug.iter_mut().zip(b) {
        row.push(bi.clone());
    }
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&rows) {
        return None;
    }
    let mut x = vec![BigRational::zero(); rows];
    for (i, &pc) in piv.iter().enumerate() {
        x[pc] = r[i][rows].clone();
    }
    Some(x)
}

/// Repeated `x A = b` solves against a fixed full-row-rank `A`.
#[derive(Debug, Clone)]
pub struct RowSolver {
    matrix: QMat,
    columns: Vec<usize>,
    inverse: QMat,
}

impl RowSolver {
    pub fn new(a: &QMat) -> Option<RowSolver> {
        let (_, piv) = rref(&transpose(a));
        if piv.len() != a.len() {
            return None;
        }
        // pivots of A^T index rows; we need independent columns of A
        let (_, cols) = rref(a);
        let square: QMat = a
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        Some(RowSolver {
            matrix: a.clone(),
            inverse: inverse(&square)?,
            columns: cols,
        })
    }

    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let bj: Vec<BigRational> = self.columns.iter().map(|&c| b[c].clone()).collect();
        let x = row_times(&bj, &self.inverse);
        (row_times(&x, &self.matrix) == b).then_some(x)
    }
}

fn row_combine(m: &mut ZMat, r: usize, i: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    // (row_r, row_i) <- (s*row_r + t*row_i, u*row_r + v*row_i)
    let (a, b) = if r < i {
        let (x, y) = m.split_at_mut(i);
        (&mut x[r], &mut y[0])
    } else {
        let (x, y) = m.split_at_mut(r);
        (&mut y[0], &mut x[i])
    };
    for (p, q) in a.iter_mut().zip(b.iter_mut()) {
        let np = s * &*p + t * &*q;
        let nq = u * &*p + v * &*q;
        *p = np;
        *q = nq;
    }
}

fn row_sub_multiple(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (x, y) = m.split_at_mut(src);
        (&mut x[target], &y[0])
    } else {
        let (x, y) = m.split_at_mut(target);
        (&mut y[0], &x[src])
    };
    for (a, b) in t.iter_mut().zip(s) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with `U A = H`,
/// `U` unimodular, nonzero rows of `H` first, pivots positive and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf_with_transform(a: &ZMat) -> (ZMat, ZMat) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity_z(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let (g, s, t) = ext_gcd(&h[r][c], &h[i][c]);
            let ag = &h[r][c] / &g;
            let bg = &h[i][c] / &g;
            let nbg = -bg;
            row_combine(&mut h, r, i, &s, &t, &nbg, &ag);
            row_combine(&mut u, r, i, &s, &t, &nbg, &ag);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_sub_multiple(&mut h, i, r, &q);
            row_sub_multiple(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form of the row lattice of `a`.
pub fn hnf(a: &ZMat) -> ZMat {
    let (h, _) = hnf_with_transform(a);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of the integer left kernel `{x in Z^m : x A = 0}`.
pub fn integer_left_kernel(a: &ZMat) -> ZMat {
    let (h, u) = hnf_with_transform(a);
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|x| x.is_zero()))
        .map(|(_, t)| t)
        .collect()
}

/// Some integer `x` with `x A = b`, or `None` if there is none.
pub fn solve_integer_row(a: &ZMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(a);
    let mut rest = b.to_vec();
    let mut x = vec![BigInt::zero(); a.len()];
    for (row, t) in h.iter().zip(&u) {
        let Some(c) = row.iter().position(|v| !v.is_zero()) else {
            break;
        };
        let (q, r) = rest[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        for (ri, hi) in rest.iter_mut().zip(row) {
            *ri -= &q * hi;
        }
        for (xi, ti) in x.iter_mut().zip(t) {
            *xi += &q * ti;
        }
    }
    rest.iter().all(|v| v.is_zero()).then_some(x)
}

/// Smith normal form `U A V = D`, with `V^{-1}` kept alongside.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub u: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
}

pub fn snf(a: &ZMat) -> Snf {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity_z(m);
    let mut v = identity_z(n);
    let mut vi = identity_z(n);
    let col_sub = |d: &mut ZMat, j: usize, t: usize, q: &BigInt| {
        for row in d.iter_mut() {
            let x = &row[t] * q;
            row[j] -= x;
        }
    };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(d, u, v, vi);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            if bj != t {
                for row in d.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
                vi.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub_multiple(&mut d, i, t, &q);
                row_sub_multiple(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = d[t][j].div_floor(&d[t][t]);
                if q.is_zero() {
                    clean &= d[t][j].is_zero();
                    continue;
                }
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                // inverse operation on V^{-1}: row_t += q * row_j
                let nq = -q;
                row_sub_multiple(&mut vi, t, j, &nq);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let piv = d[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &piv).is_zero()));
            if let Some(i) = bad {
                let mone = -BigInt::one();
                row_sub_multiple(&mut d, t, i, &mone);
                row_sub_multiple(&mut u, t, i, &mone);
                continue;
            }
            break;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish_snf(d, u, v, vi)
}

fn finish_snf(d: ZMat, u: ZMat, v: ZMat, v_inv: ZMat) -> Snf {
    let k = d.len().min(d.first().map_or(0, |r| r.len()));
    let diagonal = (0..k).map(|i| d[i][i].abs()).collect();
    Snf {
        diagonal,
        u,
        v,
        v_inv,
    }
}

/// A full-rank lattice `(1/den) * rowspan(hnf)` in Q^n, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    den: BigInt,
    hnf: ZMat,
}

impl Lattice {
    /// Lattice spanned by rational generators; `None` if not of full rank `dim`.
    pub fn from_generators(rows: &[Vec<BigRational>], dim: usize) -> Option<Lattice> {
        let den = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let z: ZMat = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &den).to_integer()).collect())
            .collect();
        Lattice::from_integer_rows(&z, den, dim)
    }

    pub fn from_integer_rows(rows: &ZMat, den: BigInt, dim: usize) -> Option<Lattice> {
        let h = hnf(rows);
        if h.len() != dim {
            return None;
        }
        let mut l = Lattice { den, hnf: h };
        l.canonicalize();
        Some(l)
    }

    fn canonicalize(&mut self) {
        let g = self
            .hnf
            .iter()
            .flatten()
            .fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            self.den /= &g;
            for x in self.hnf.iter_mut().flatten() {
                *x /= &g;
            }
        }
    }

    pub fn standard(dim: usize) -> Lattice {
        Lattice {
            den: BigInt::one(),
            hnf: identity_z(dim),
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn hnf(&self) -> &ZMat {
        &self.hnf
    }

    pub fn dim(&self) -> usize {
        self.hnf.len()
    }

    pub fn basis(&self) -> QMat {
        self.hnf
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(x.clone(), self.den.clone()))
                    .collect()
            })
            .collect()
    }

    /// Covolume relative to Z^n.
    pub fn covolume(&self) -> BigRational {
        let d = self
            .hnf
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, r)| acc * &r[i]);
        BigRational::new(d, self.den.pow(self.dim() as u32))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` in the HNF basis.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let n = self.dim();
        let mut rest: Vec<BigRational> = v.iter().map(|x| x * &self.den).collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let q = &rest[i] / BigRational::from_integer(self.hnf[i][i].clone());
            if !q.is_integer() {
                return None;
            }
            let q = q.to_integer();
            for (r, h) in rest.iter_mut().zip(&self.hnf[i]).skip(i) {
                *r -= BigRational::from_integer(&q * h);
            }
            out.push(q);
        }
        Some(out)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut rows = self.basis();
        rows.extend(other.basis());
        Lattice::from_generators(&rows, self.dim()).expect("sum of full-rank lattices")
    }

    pub fn dual(&self) -> Lattice {
        let inv = inverse(&self.basis()).expect("full rank");
        Lattice::from_generators(&transpose(&inv), self.dim()).expect("dual has full rank")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis().iter().all(|r| other.contains(r))
    }

    pub fn scale(&self, k: &BigRational) -> Lattice {
        let rows: QMat = self
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| x * k).collect())
            .collect();
        Lattice::from_generators(&rows, self.dim()).expect("nonzero scale")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn q(rows: &[&[i64]]) -> QMat {
        to_q(&z(rows))
    }

    #[test]
    fn hnf_of_small_lattice() {
        let h = hnf(&z(&[&[2, 4], &[3, 5]]));
        assert_eq!(h, z(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn transform_is_consistent() {
        let a = z(&[&[4, 6, 2], &[2, 3, 1], &[1, 0, 5]]);
        let (h, u) = hnf_with_transform(&a);
        let prod: ZMat = u.iter().map(|r| z_row_times(r, &a)).collect();
        assert_eq!(prod, h);
        let k = integer_left_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(z_row_times(&k[0], &a).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn smith_form() {
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let uav: ZMat = s
            .u
            .iter()
            .map(|r| z_row_times(&z_row_times(r, &a), &s.v))
            .collect();
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        let vvi: ZMat = s.v.iter().map(|r| z_row_times(r, &s.v_inv)).collect();
        assert_eq!(vvi, identity_z(3));
    }

    #[test]
    fn rational_solves() {
        let a = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(det(&a), BigRational::from_integer(BigInt::from(-2)));
        let inv = inverse(&a).unwrap();
        assert_eq!(q_mul(&a, &inv), identity_q(2));
        let b = vec![BigRational::from_integer(5.into()), BigRational::from_integer(6.into())];
        let x = solve_row(&a, &b).unwrap();
        assert_eq!(row_times(&x, &a), b);
        let sing = q(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&sing).is_none());
        assert_eq!(left_kernel(&sing).len(), 1);
    }

    #[test]
    fn lattice_intersection() {
        let l1 = Lattice::from_integer_rows(&z(&[&[2, 0], &[0, 1]]), BigInt::one(), 2).unwrap();
        let l2 = Lattice::from_integer_rows(&z(&[&[3, 0], &[0, 1]]), BigInt::one(), 2).unwrap();
        let i = l1.intersect(&l2);
        assert_eq!(i.hnf(), &z(&[&[6, 0], &[0, 1]]));
        let s = l1.sum(&l2);
        assert_eq!(s, Lattice::standard(2));
        let half = l1.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.denominator(), &BigInt::from(2));
    }
}
