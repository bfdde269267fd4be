//! Exact integer and rational linear algebra.
//!
//! Everything downstream (root data, fundamental groups, coset descriptors)
//! reduces to a handful of primitives implemented here over arbitrary-precision
//! integers: row Hermite normal form with a certified unimodular transform,
//! Smith normal form with certified transforms on both sides, integer and
//! rational linear solvers, and canonical operations on row lattices
//! (membership, equality, canonical coset representatives, quotient structure).
//!
//! Canonicity matters more than speed here: two equal lattices must produce
//! byte-identical canonical bases, because higher layers compare serialized
//! descriptors for exact equality. Matrices are small (rank <= ~12), so the
//! classical algorithms are more than fast enough.

use crate::{Int, Rat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Int>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Build from explicit rows; panics on ragged input (programming error).
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        IMat { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    /// Build from columns.
    pub fn from_cols(cols: Vec<Vec<Int>>) -> Self {
        IMat::from_rows(cols).transpose()
    }

    /// Test helper: build from i64 literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Int> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.get(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = lik * other.get(k, j);
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + add);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Matrix times rational column vector.
    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| Rat::from_integer(a.clone()) * b)
                    .fold(Rat::zero(), |s, x| s + x)
            })
            .collect()
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j) - other.get(i, j);
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j) + other.get(i, j);
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_i -= q * row_j
    fn row_sub_mul(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(i, c) - q * self.get(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i -= q * col_j
    fn col_sub_mul(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, i) - q * self.get(r, j);
            self.set(r, i, v);
        }
    }

    /// row_i += row_j
    fn row_add(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let v = self.get(i, c) + self.get(j, c);
            self.set(i, c, v);
        }
    }

    /// Inverse of a unimodular matrix, if it is one.
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        if self.rows != self.cols {
            return None;
        }
        let h = row_hnf(self);
        if h.h.is_identity() {
            Some(h.u)
        } else {
            None
        }
    }

    /// |det| = 1 test.
    pub fn is_unimodular(&self) -> bool {
        self.inverse_unimodular().is_some()
    }
}

/// Row Hermite normal form: `u * a = h` with `u` unimodular, `h` in row HNF
/// (pivot columns strictly increasing, positive pivots, entries above a pivot
/// reduced into `[0, pivot)`, zero rows at the bottom).
pub struct RowHnf {
    pub h: IMat,
    pub u: IMat,
    /// (row, col) of each pivot, top to bottom.
    pub pivots: Vec<(usize, usize)>,
}

pub fn row_hnf(a: &IMat) -> RowHnf {
    let mut h = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == h.rows {
            break;
        }
        loop {
            let mut piv: Option<usize> = None;
            for i in r..h.rows {
                if !h.get(i, c).is_zero()
                    && piv.map_or(true, |p| h.get(i, c).abs() < h.get(p, c).abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut settled = true;
            for i in (r + 1)..h.rows {
                if !h.get(i, c).is_zero() {
                    let q = h.get(i, c).div_floor(h.get(r, c));
                    h.row_sub_mul(i, r, &q);
                    u.row_sub_mul(i, r, &q);
                    if !h.get(i, c).is_zero() {
                        settled = false;
                    }
                }
            }
            if settled {
                if h.get(r, c).is_negative() {
                    h.neg_row(r);
                    u.neg_row(r);
                }
                for i in 0..r {
                    let q = h.get(i, c).div_floor(h.get(r, c));
                    h.row_sub_mul(i, r, &q);
                    u.row_sub_mul(i, r, &q);
                }
                pivots.push((r, c));
                r += 1;
                break;
            }
        }
    }
    RowHnf { h, u, pivots }
}

/// Basis of the right kernel {x : a x = 0}, canonicalized.
pub fn kernel_basis(a: &IMat) -> Vec<Vec<Int>> {
    let at = a.transpose();
    let hnf = row_hnf(&at);
    let rank = hnf.pivots.len();
    let gens: Vec<Vec<Int>> = (rank..at.rows).map(|i| hnf.u.row_vec(i)).collect();
    lattice_canon(&gens, a.cols)
}

/// One integer solution of `a x = b`, if any.
pub fn solve_int(a: &IMat, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch in solve");
    let at = a.transpose();
    let hnf = row_hnf(&at);
    // h = u * a^T, so h^T = a * u^T; solve h^T y = b by forward substitution
    // over the pivots of h, then x = u^T y.
    let mut y = vec![Int::zero(); a.cols];
    for &(k, ck) in &hnf.pivots {
        // equation row ck of h^T: sum_{j<=k} h[j][ck] * y_j = b[ck]
        let mut rhs = b[ck].clone();
        for j in 0..k {
            rhs -= hnf.h.get(j, ck) * &y[j];
        }
        let p = hnf.h.get(k, ck);
        let (q, rem) = rhs.div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        y[k] = q;
    }
    let x = hnf.u.transpose().mul_vec(&y);
    if a.mul_vec(&x) == b { Some(x) } else { None }
}

/// One rational solution of `a x = b`, if any (Gaussian elimination).
pub fn solve_rat(a: &IMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch in solve");
    let mut m: Vec<Vec<Rat>> = (0..a.rows)
        .map(|i| {
            let mut row: Vec<Rat> =
                a.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let rows = a.rows;
    let cols = a.cols;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in c..=cols {
            let v = &m[r][j] / &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // inconsistent row check
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for &(pr, pc) in &pivots {
        x[pc] = m[pr][cols].clone();
    }
    Some(x)
}

/// Solve `sum_i c_i gens[i] = target` over the rationals.
pub fn rat_combination(gens: &[Vec<Int>], target: &[Rat]) -> Option<Vec<Rat>> {
    if gens.is_empty() {
        return if target.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
    }
    let a = IMat::from_cols(gens.to_vec());
    assert_eq!(a.rows, target.len(), "dimension mismatch in combination solve");
    solve_rat(&a, target)
}

/// Smith normal form: `u * a * v = diag(d)` with `u`, `v` unimodular,
/// `d[i] >= 0` and `d[i] | d[i+1]`.
pub struct Snf {
    pub d: Vec<Int>,
    pub u: IMat,
    pub v: IMat,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let mut m = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    for t in 0..n {
        'fix: loop {
            // locate a minimal nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !m.get(i, j).is_zero()
                        && best.map_or(true, |(bi, bj)| m.get(i, j).abs() < m.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'fix };
            m.swap_rows(t, bi);
            u.swap_rows(t, bi);
            m.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut dirty = false;
            for i in (t + 1)..a.rows {
                if !m.get(i, t).is_zero() {
                    let q = m.get(i, t).div_floor(m.get(t, t));
                    m.row_sub_mul(i, t, &q);
                    u.row_sub_mul(i, t, &q);
                    if !m.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..a.cols {
                if !m.get(t, j).is_zero() {
                    let q = m.get(t, j).div_floor(m.get(t, t));
                    m.col_sub_mul(j, t, &q);
                    v.col_sub_mul(j, t, &q);
                    if !m.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'fix;
            }
            // row & column t clean; enforce divisibility of the trailing block
            for i in (t + 1)..a.rows {
                for j in (t + 1)..a.cols {
                    if !(m.get(i, j) % m.get(t, t)).is_zero() {
                        m.row_add(t, i);
                        u.row_add(t, i);
                        continue 'fix;
                    }
                }
            }
            break 'fix;
        }
        if m.get(t, t).is_negative() {
            m.neg_row(t);
            u.neg_row(t);
        }
    }
    let d: Vec<Int> = (0..n).map(|i| m.get(i, i).clone()).collect();
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    // certified result: check the factorization and the divisibility chain
    let prod = u.mul(a).mul(&v);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let expect = if i == j && i < n { d[i].clone() } else { Int::zero() };
            assert_eq!(*prod.get(i, j), expect, "smith normal form factorization failed");
        }
    }
    for i in 1..n {
        if !d[i - 1].is_zero() {
            assert!(
                (&d[i] % &d[i - 1]).is_zero(),
                "smith normal form divisibility chain failed"
            );
        } else {
            assert!(d[i].is_zero(), "smith normal form zero ordering failed");
        }
    }
    Snf { d, u, v, rank }
}

/// Canonical basis (HNF rows) of the lattice spanned by `gens` inside Z^dim.
pub fn lattice_canon(gens: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    for g in gens {
        assert_eq!(g.len(), dim, "generator has wrong dimension");
    }
    if gens.is_empty() {
        return vec![];
    }
    let hnf = row_hnf(&IMat::from_rows(gens.to_vec()));
    (0..hnf.pivots.len()).map(|i| hnf.h.row_vec(i)).collect()
}

fn pivot_col(row: &[Int]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("zero row in canonical basis")
}

/// Coordinates of `v` over a canonical (HNF) row basis; None when `v` is not
/// in the lattice.
pub fn lattice_coords(canon: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let mut w = v.to_vec();
    let mut coords = Vec::with_capacity(canon.len());
    for row in canon {
        let c = pivot_col(row);
        let (q, rem) = w[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..w.len() {
            w[j] = &w[j] - &q * &row[j];
        }
        coords.push(q);
    }
    if w.iter().all(|x| x.is_zero()) { Some(coords) } else { None }
}

pub fn lattice_contains(canon: &[Vec<Int>], v: &[Int]) -> bool {
    lattice_coords(canon, v).is_some()
}

/// Canonical representative of `v + L` for a canonical (HNF) basis of L:
/// at each pivot column the representative lies in `[0, pivot)`.
pub fn lattice_mod_reduce(canon: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    let mut w = v.to_vec();
    for row in canon {
        let c = pivot_col(row);
        let q = w[c].div_floor(&row[c]);
        for j in 0..w.len() {
            w[j] = &w[j] - &q * &row[j];
        }
    }
    w
}

/// Structure of span(big)/span(small) as (free rank, invariant factors > 1).
/// Errors unless span(small) is contained in span(big).
pub fn quotient_structure(
    big: &[Vec<Int>],
    small: &[Vec<Int>],
    dim: usize,
) -> Result<(usize, Vec<Int>)> {
    let b = lattice_canon(big, dim);
    let mut coord_rows = Vec::new();
    for s in small {
        let c = lattice_coords(&b, s).ok_or_else(|| {
            Error::Precondition("quotient_structure: small lattice not inside big one".into())
        })?;
        coord_rows.push(c);
    }
    let k = b.len();
    if coord_rows.is_empty() {
        return Ok((k, vec![]));
    }
    let snf = smith_normal_form(&IMat::from_rows(coord_rows));
    let torsion: Vec<Int> =
        snf.d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
    Ok((k - snf.rank, torsion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;
    use proptest::prelude::*;

    #[test]
    fn hnf_small_example() {
        let a = IMat::from_i64(&[&[2, 4], &[1, 1]]);
        let hnf = row_hnf(&a);
        assert_eq!(hnf.h, IMat::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(hnf.u.mul(&a), hnf.h);
        assert!(hnf.u.is_unimodular());
        assert_eq!(hnf.pivots, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn hnf_zero_and_rectangular() {
        let a = IMat::zero(2, 3);
        let hnf = row_hnf(&a);
        assert!(hnf.pivots.is_empty());
        assert!(hnf.h.is_zero());

        let a = IMat::from_i64(&[&[0, 3, 1], &[0, 6, 0]]);
        let hnf = row_hnf(&a);
        assert_eq!(hnf.u.mul(&a), hnf.h);
        assert_eq!(hnf.pivots.len(), 2);
    }

    #[test]
    fn snf_small_examples() {
        let a = IMat::from_i64(&[&[2, 4], &[1, 1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, ivec(&[1, 2]));
        let a = IMat::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, ivec(&[1, 6]));
        let a = IMat::from_i64(&[&[2, 0], &[0, 0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, ivec(&[2, 0]));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IMat::from_i64(&[&[1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }

        let a = IMat::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(solve_int(&a, &ivec(&[2, 4])), Some(ivec(&[1, 2])));
        assert_eq!(solve_int(&a, &ivec(&[1, 0])), None);

        let a = IMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_int(&a, &ivec(&[1, 2])), Some(ivec(&[1, 0])));
        assert_eq!(solve_int(&a, &ivec(&[1, 3])), None);
    }

    #[test]
    fn rational_solver() {
        let a = IMat::from_i64(&[&[2, 0], &[0, 3]]);
        let b = vec![crate::rat(1, 1), crate::rat(1, 1)];
        let x = solve_rat(&a, &b).unwrap();
        assert_eq!(x, vec![crate::rat(1, 2), crate::rat(1, 3)]);
        let a = IMat::from_i64(&[&[1, 1], &[1, 1]]);
        let b = vec![crate::rat(0, 1), crate::rat(1, 1)];
        assert!(solve_rat(&a, &b).is_none());
    }

    #[test]
    fn lattice_ops() {
        let canon = lattice_canon(&[ivec(&[2, 0]), ivec(&[0, 3]), ivec(&[2, 3])], 2);
        assert_eq!(canon, vec![ivec(&[2, 0]), ivec(&[0, 3])]);
        assert!(lattice_contains(&canon, &ivec(&[4, 3])));
        assert!(!lattice_contains(&canon, &ivec(&[1, 0])));
        assert_eq!(lattice_mod_reduce(&canon, &ivec(&[5, -4])), ivec(&[1, 2]));

        let (free, tors) =
            quotient_structure(&[ivec(&[1, 0]), ivec(&[0, 1])], &[ivec(&[2, 0]), ivec(&[0, 3])], 2)
                .unwrap();
        assert_eq!(free, 0);
        assert_eq!(tors, ivec(&[6]));

        let (free, tors) =
            quotient_structure(&[ivec(&[1, 0]), ivec(&[0, 1])], &[ivec(&[1, 1])], 2).unwrap();
        assert_eq!(free, 1);
        assert!(tors.is_empty());

        assert!(quotient_structure(&[ivec(&[2, 0])], &[ivec(&[1, 0])], 2).is_err());
    }

    fn arb_mat() -> impl Strategy<Value = IMat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c)
                .prop_map(move |v| IMat { rows: r, cols: c, a: v.into_iter().map(Int::from).collect() })
        })
    }

    proptest! {
        #[test]
        fn hnf_certified(a in arb_mat()) {
            let hnf = row_hnf(&a);
            prop_assert_eq!(hnf.u.mul(&a), hnf.h.clone());
            prop_assert!(hnf.u.is_unimodular());
            // pivot shape: strictly increasing columns, positive pivots,
            // entries above a pivot are reduced
            let mut last_col = None;
            for &(r, c) in &hnf.pivots {
                prop_assert!(last_col.map_or(true, |lc| c > lc));
                last_col = Some(c);
                prop_assert!(hnf.h.get(r, c).is_positive());
                for i in 0..r {
                    prop_assert!(!hnf.h.get(i, c).is_negative());
                    prop_assert!(hnf.h.get(i, c) < hnf.h.get(r, c));
                }
            }
        }

        #[test]
        fn snf_certified(a in arb_mat()) {
            // the constructor asserts u a v = diag(d) and the divisibility chain
            let s = smith_normal_form(&a);
            prop_assert!(s.u.is_unimodular());
            prop_assert!(s.v.is_unimodular());
            prop_assert_eq!(s.rank, row_hnf(&a).pivots.len());
        }

        #[test]
        fn solve_finds_constructed_solutions(a in arb_mat(), xs in proptest::collection::vec(-5i64..6, 1..5)) {
            let x: Vec<Int> = xs.into_iter().take(a.cols).map(Int::from).collect();
            if x.len() == a.cols {
                let b = a.mul_vec(&x);
                let sol = solve_int(&a, &b);
                prop_assert!(sol.is_some());
                prop_assert_eq!(a.mul_vec(&sol.unwrap()), b);
            }
        }

        #[test]
        fn kernel_complete(a in arb_mat()) {
            let k = kernel_basis(&a);
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(k.len(), a.cols - row_hnf(&a).pivots.len());
        }

        #[test]
        fn mod_reduce_canonical(a in arb_mat(), v in proptest::collection::vec(-9i64..10, 1..5)) {
            // reducing twice is idempotent and the difference stays in the lattice
            let gens: Vec<Vec<Int>> = a.rows_iter().map(|r| r.to_vec()).collect();
            let canon = lattice_canon(&gens, a.cols);
            if v.len() == a.cols {
                let v: Vec<Int> = v.into_iter().map(Int::from).collect();
                let r1 = lattice_mod_reduce(&canon, &v);
                let r2 = lattice_mod_reduce(&canon, &r1);
                prop_assert_eq!(&r1, &r2);
                let diff: Vec<Int> = v.iter().zip(&r1).map(|(x, y)| x - y).collect();
                prop_assert!(lattice_contains(&canon, &diff));
            }
        }
    }
}
