//! Subgroups of `Z^n`, canonicalized by row Hermite normal form.
//!
//! Convention: basis rows are in echelon form with strictly increasing pivot columns,
//! pivots positive, and every entry above a pivot reduced into `[0, pivot)`.
//! Two subgroups are equal iff their bases are identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{binomial, Multivector};

pub type Row = Vec<BigInt>;

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `x*a + y*b = g`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn leading(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// `target -= factor * source`
fn sub_multiple(target: &mut [BigInt], source: &[BigInt], factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

/// Incremental row Hermite normal form.
#[derive(Clone, Debug)]
pub struct HnfBuilder {
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl HnfBuilder {
    pub fn new(ncols: usize) -> Self {
        HnfBuilder {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a generator. Returns whether the spanned subgroup changed.
    pub fn insert(&mut self, mut v: Row) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        let Some(mut lead) = leading(&v) else {
            return false;
        };
        let mut changed = false;
        let mut i = 0;
        while i < self.rows.len() {
            let c = self.pivots[i];
            if lead < c {
                break;
            }
            if lead == c {
                let p = self.rows[i][c].clone();
                let q = v[c].div_floor(&p);
                sub_multiple(&mut v, &self.rows[i], &q);
                if !v[c].is_zero() {
                    // unimodular 2x2 combination putting gcd into the pivot row
                    let (g, x, y) = extended_gcd(&p, &v[c]);
                    let a = &p / &g;
                    let b = &v[c] / &g;
                    let row = &self.rows[i];
                    let new_row: Row = row.iter().zip(&v).map(|(r, s)| &x * r + &y * s).collect();
                    let new_v: Row = row.iter().zip(&v).map(|(r, s)| &b * r - &a * s).collect();
                    self.rows[i] = new_row;
                    v = new_v;
                    changed = true;
                }
                debug_assert!(v[c].is_zero());
                match leading(&v) {
                    Some(l) => lead = l,
                    None => {
                        if changed {
                            self.normalize();
                        }
                        return changed;
                    }
                }
            }
            i += 1;
        }
        if v[lead].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        self.rows.insert(i, v);
        self.pivots.insert(i, lead);
        self.normalize();
        true
    }

    fn normalize(&mut self) {
        for j in 0..self.rows.len() {
            let c = self.pivots[j];
            if self.rows[j][c].is_negative() {
                self.rows[j].iter_mut().for_each(|x| *x = -&*x);
            }
            let (above, rest) = self.rows.split_at_mut(j);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let q = row[c].div_floor(&pivot_row[c]);
                sub_multiple(row, pivot_row, &q);
            }
        }
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut Row) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let q = v[c].div_floor(&row[c]);
                sub_multiple(v, row, &q);
            }
        }
    }

    pub fn finish(self) -> Vec<Row> {
        self.rows
    }
}

/// Row Hermite normal form of the span of `rows`, zero rows dropped.
pub fn hnf(ncols: usize, rows: impl IntoIterator<Item = Row>) -> Vec<Row> {
    let mut b = HnfBuilder::new(ncols);
    for r in rows {
        b.insert(r);
    }
    b.finish()
}

/// Basis of `{x in Z^q : A x = 0}` where `A` has the given rows of length `q`.
pub fn integer_kernel(q: usize, rows: &[Row]) -> Vec<Row> {
    let p = rows.len();
    // HNF of [A^T | I_q]; rows with zero A^T-part carry a kernel basis in the identity part.
    let mut b = HnfBuilder::new(p + q);
    for j in 0..q {
        let mut r = vec![BigInt::zero(); p + q];
        for (i, row) in rows.iter().enumerate() {
            r[i] = row[j].clone();
        }
        r[p + j] = BigInt::one();
        b.insert(r);
    }
    b.finish()
        .into_iter()
        .filter(|r| r[..p].iter().all(Zero::is_zero))
        .map(|r| r[p..].to_vec())
        .collect()
}

/// Diagonal form `P A Q = D` of an integer matrix, keeping `Q^{-1}` and the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries in order of discovery (positive).
    pub diagonal: Vec<BigInt>,
    /// `Q^{-1}`; its first `diagonal.len()` rows span the saturation of the row space of `A`,
    /// and the remaining rows complete them to a basis of `Z^n`.
    pub q_inverse: Vec<Row>,
}

impl SmithForm {
    /// Invariant factors with the divisibility chain restored (`d_1 | d_2 | ...`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut d = self.diagonal.clone();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
        d
    }
}

pub fn smith_form(ncols: usize, matrix: &[Row]) -> SmithForm {
    let mut a: Vec<Row> = matrix.to_vec();
    let m = a.len();
    let n = ncols;
    let mut qinv: Vec<Row> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect();
    let mut diagonal = Vec::new();

    for t in 0..m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            qinv.swap(t, pj);
        }
        loop {
            let mut clean = true;
            // clear column t with row operations
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                clean = false;
                if a[i][t].is_multiple_of(&a[t][t]) {
                    let q = &a[i][t] / &a[t][t];
                    let top = a[t].clone();
                    sub_multiple(&mut a[i], &top, &q);
                    continue;
                }
                let (g, x, y) = extended_gcd(&a[t][t], &a[i][t]);
                let p = &a[t][t] / &g;
                let s = &a[i][t] / &g;
                let (top, bottom) = (a[t].clone(), a[i].clone());
                a[t] = top
                    .iter()
                    .zip(&bottom)
                    .map(|(u, v)| &x * u + &y * v)
                    .collect();
                a[i] = top
                    .iter()
                    .zip(&bottom)
                    .map(|(u, v)| &s * u - &p * v)
                    .collect();
            }
            // clear row t with column operations, tracked in Q^{-1}
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                clean = false;
                if a[t][j].is_multiple_of(&a[t][t]) {
                    // col_j -= q col_t, so row_t of Q^{-1} += q row_j
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut() {
                        let u = row[t].clone();
                        row[j] -= &q * u;
                    }
                    let rj = qinv[j].clone();
                    sub_multiple(&mut qinv[t], &rj, &-&q);
                    continue;
                }
                let (g, x, y) = extended_gcd(&a[t][t], &a[t][j]);
                let p = &a[t][t] / &g;
                let s = &a[t][j] / &g;
                for row in a.iter_mut() {
                    let (u, v) = (row[t].clone(), row[j].clone());
                    row[t] = &x * &u + &y * &v;
                    row[j] = &p * &v - &s * &u;
                }
                // inverse of [[x, -s], [y, p]] acting on rows t, j
                let (rt, rj) = (qinv[t].clone(), qinv[j].clone());
                qinv[t] = rt.iter().zip(&rj).map(|(u, v)| &p * u + &s * v).collect();
                qinv[j] = rt.iter().zip(&rj).map(|(u, v)| &x * v - &y * u).collect();
            }
            if clean {
                break;
            }
        }
        diagonal.push(a[t][t].abs());
    }
    SmithForm {
        diagonal,
        q_inverse: qinv,
    }
}

/// Fraction-free determinant of a square integer matrix.
pub fn determinant(matrix: &[Row]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A subgroup of `Z^n` given by its canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeSubgroup {
    ambient_rank: usize,
    basis: Vec<Row>,
}

impl LatticeSubgroup {
    pub fn zero(ambient_rank: usize) -> Self {
        LatticeSubgroup {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::span(
            ambient_rank,
            (0..ambient_rank).map(|i| {
                let mut r = vec![BigInt::zero(); ambient_rank];
                r[i] = BigInt::one();
                r
            }),
        )
    }

    pub fn span(ambient_rank: usize, rows: impl IntoIterator<Item = Row>) -> Self {
        LatticeSubgroup {
            ambient_rank,
            basis: hnf(ambient_rank, rows),
        }
    }

    pub fn span_i64(ambient_rank: usize, rows: &[Vec<i64>]) -> Self {
        Self::span(
            ambient_rank,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect()),
        )
    }

    /// Span of multivectors inside `∧^degree Z^ambient`.
    pub fn span_multivectors<'a>(
        ambient: usize,
        degree: usize,
        generators: impl IntoIterator<Item = &'a Multivector>,
    ) -> Result<Self> {
        let n = binomial(ambient, degree);
        let mut b = HnfBuilder::new(n);
        for g in generators {
            if g.ambient() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: g.ambient(),
                });
            }
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            b.insert(g.coordinates());
        }
        Ok(LatticeSubgroup {
            ambient_rank: n,
            basis: b.finish(),
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank
            && self.basis.iter().enumerate().all(|(i, r)| r[i].is_one())
    }

    /// Basis rows as multivectors of `∧^degree Z^ambient`.
    pub fn basis_multivectors(&self, ambient: usize, degree: usize) -> Vec<Multivector> {
        assert_eq!(binomial(ambient, degree), self.ambient_rank);
        self.basis
            .iter()
            .map(|r| Multivector::from_coordinates(ambient, degree, r))
            .collect()
    }

    fn builder(&self) -> HnfBuilder {
        HnfBuilder {
            ncols: self.ambient_rank,
            pivots: self.basis.iter().map(|r| leading(r).unwrap()).collect(),
            rows: self.basis.clone(),
        }
    }

    fn check_ambient(&self, other: &LatticeSubgroup) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientMismatch {
                left: self.ambient_rank,
                right: other.ambient_rank,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        let mut v = v.to_vec();
        self.builder().reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_multivector(&self, v: &Multivector) -> bool {
        binomial(v.ambient(), v.degree()) == self.ambient_rank && self.contains(&v.coordinates())
    }

    /// `self ⊆ other`
    pub fn is_subgroup_of(&self, other: &LatticeSubgroup) -> Result<bool> {
        other.check_ambient(self)?;
        Ok(self.basis.iter().all(|r| other.contains(r)))
    }

    /// Exact equality, not rank equality.
    pub fn equals(&self, other: &LatticeSubgroup) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    /// First basis vector of either subgroup that the other one lacks.
    pub fn difference_witness(&self, other: &LatticeSubgroup) -> Option<(Row, bool)> {
        if let Some(r) = self.basis.iter().find(|r| !other.contains(r)) {
            return Some((r.clone(), true));
        }
        other
            .basis
            .iter()
            .find(|r| !self.contains(r))
            .map(|r| (r.clone(), false))
    }

    pub fn sum(&self, other: &LatticeSubgroup) -> Result<LatticeSubgroup> {
        self.check_ambient(other)?;
        let mut b = self.builder();
        for r in &other.basis {
            b.insert(r.clone());
        }
        Ok(LatticeSubgroup {
            ambient_rank: self.ambient_rank,
            basis: b.finish(),
        })
    }

    /// `self ∩ other`, from the left kernel of the stacked bases.
    pub fn intersect(&self, other: &LatticeSubgroup) -> Result<LatticeSubgroup> {
        self.check_ambient(other)?;
        let r1 = self.rank();
        let stacked: Vec<&Row> = self.basis.iter().chain(&other.basis).collect();
        let q = stacked.len();
        // rows of the transposed stack: one per ambient coordinate
        let transposed: Vec<Row> = (0..self.ambient_rank)
            .map(|j| stacked.iter().map(|r| r[j].clone()).collect())
            .collect();
        let kernel = integer_kernel(q, &transposed);
        let generators = kernel.into_iter().map(|coeffs| {
            let mut x = vec![BigInt::zero(); self.ambient_rank];
            for (c, row) in coeffs[..r1].iter().zip(&self.basis) {
                if !c.is_zero() {
                    sub_multiple(&mut x, row, &-c);
                }
            }
            x
        });
        Ok(LatticeSubgroup::span(self.ambient_rank, generators))
    }

    /// All functionals on `Z^n` (in the dual basis) vanishing on the subgroup.
    pub fn annihilator(&self) -> LatticeSubgroup {
        LatticeSubgroup::span(
            self.ambient_rank,
            integer_kernel(self.ambient_rank, &self.basis),
        )
    }

    pub fn smith(&self) -> SmithForm {
        smith_form(self.ambient_rank, &self.basis)
    }

    /// `(self ⊗ Q) ∩ Z^n`.
    pub fn saturate(&self) -> LatticeSubgroup {
        let s = self.smith();
        let r = s.diagonal.len();
        LatticeSubgroup::span(self.ambient_rank, s.q_inverse.into_iter().take(r))
    }

    pub fn is_saturated(&self) -> bool {
        self.smith().diagonal.iter().all(One::is_one)
    }

    /// Elementary divisors greater than one of `Z^n / self`, i.e. its torsion.
    pub fn quotient_torsion(&self) -> Vec<BigInt> {
        self.smith()
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    /// Vectors completing a basis of the saturation to a basis of `Z^n`; their classes form a
    /// basis of the free part of `Z^n / self`.
    pub fn complement_basis(&self) -> Vec<Row> {
        let s = self.smith();
        let r = s.diagonal.len();
        s.q_inverse.into_iter().skip(r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(n: usize, rows: &[Vec<i64>]) -> LatticeSubgroup {
        LatticeSubgroup::span_i64(n, rows)
    }

    fn row(xs: &[i64]) -> Row {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn span_examples() {
        let l = lat(2, &[vec![2, 4], vec![1, 2]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis(), &[row(&[1, 2])]);
        assert!(lat(3, &[]).is_zero());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = lat(3, &[vec![2, 3, 5], vec![0, 4, 1], vec![1, 1, 1]]);
        let b = lat(
            3,
            &[vec![1, 1, 1], vec![3, 4, 6], vec![0, 4, 1], vec![5, 10, 9]],
        );
        assert_eq!(a, b);
        for (i, r) in a.basis().iter().enumerate() {
            let c = leading(r).unwrap();
            assert!(r[c].is_positive());
            for earlier in &a.basis()[..i] {
                assert!(!earlier[c].is_negative() && earlier[c] < r[c]);
            }
        }
    }

    #[test]
    fn equality_is_exact() {
        let a = lat(2, &[vec![2, 0]]);
        let b = lat(2, &[vec![1, 0]]);
        assert_eq!(a.rank(), b.rank());
        assert!(!a.equals(&b).unwrap());
        assert!(a.is_subgroup_of(&b).unwrap());
        assert!(!b.is_subgroup_of(&a).unwrap());
        assert_eq!(a.difference_witness(&b), Some((row(&[1, 0]), false)));
    }

    #[test]
    fn sum_and_intersection() {
        let l = lat(3, &[vec![1, 2, 3], vec![0, 2, 2]]);
        assert!(l.intersect(&l).unwrap().equals(&l).unwrap());
        assert!(l
            .sum(&LatticeSubgroup::zero(3))
            .unwrap()
            .equals(&l)
            .unwrap());
        let full = lat(2, &[vec![1, 0], vec![0, 1]]);
        let diag = lat(2, &[vec![1, 1]]);
        assert_eq!(full.intersect(&diag).unwrap(), diag);
        // 2Z x Z ∩ Z x 3Z = 2Z x 3Z
        let a = lat(2, &[vec![2, 0], vec![0, 1]]);
        let b = lat(2, &[vec![1, 0], vec![0, 3]]);
        assert_eq!(a.intersect(&b).unwrap(), lat(2, &[vec![2, 0], vec![0, 3]]));
        assert!(matches!(
            a.intersect(&lat(3, &[])),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn annihilator_examples() {
        let ann = lat(3, &[vec![1, 1, 1]]).annihilator();
        assert_eq!(ann.rank(), 2);
        assert_eq!(ann, lat(3, &[vec![1, -1, 0], vec![0, 1, -1]]));
        assert!(LatticeSubgroup::zero(4).annihilator().is_full());
        assert!(LatticeSubgroup::full(4).annihilator().is_zero());
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(
            lat(2, &[vec![2, 0], vec![0, 1]]).saturate(),
            LatticeSubgroup::full(2)
        );
        assert_eq!(lat(2, &[vec![2, 4]]).saturate(), lat(2, &[vec![1, 2]]));
        let s = lat(3, &[vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(s.saturate(), s);
        assert!(s.is_saturated());
        assert!(!lat(2, &[vec![2, 4]]).is_saturated());
    }

    #[test]
    fn torsion_and_complement() {
        let l = lat(3, &[vec![2, 0, 0], vec![0, 6, 0]]);
        assert_eq!(l.quotient_torsion(), vec![BigInt::from(2), BigInt::from(6)]);
        let l = lat(2, &[vec![4, 0], vec![0, 6]]);
        assert_eq!(
            l.quotient_torsion(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
        let l = lat(3, &[vec![1, 1, 1]]);
        let comp = l.complement_basis();
        assert_eq!(comp.len(), 2);
        let mut all = l.basis().to_vec();
        all.extend(comp);
        assert!(determinant(&all).abs().is_one());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[row(&[2, 1]), row(&[7, 4])]), BigInt::from(1));
        assert_eq!(
            determinant(&[row(&[0, 1, 0]), row(&[1, 0, 0]), row(&[0, 0, 3])]),
            BigInt::from(-3)
        );
        assert_eq!(determinant(&[row(&[1, 2]), row(&[2, 4])]), BigInt::zero());
    }

    #[test]
    fn kernel_is_exact() {
        // x + 2y + 3z = 0
        let k = integer_kernel(3, &[row(&[1, 2, 3])]);
        let l = LatticeSubgroup::span(3, k);
        assert_eq!(l.rank(), 2);
        assert!(l.is_saturated());
        assert!(l.contains(&row(&[1, 1, -1])));
    }
}
