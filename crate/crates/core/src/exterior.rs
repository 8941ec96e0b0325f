//! Exterior algebra of a free abelian group of finite rank, with integer coefficients.
//!
//! A basis monomial `x_{i_1} ^ ... ^ x_{i_k}` (with `i_1 < ... < i_k`) is stored as a bitmask.
//! Coordinates of `∧^k Z^m` are indexed by the lexicographic order of the sorted index sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest ambient rank supported by the bitmask representation.
pub const MAX_AMBIENT: usize = 63;

/// A sorted index set, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(indices.iter().fold(0u64, |acc, &i| acc | (1u64 << i)))
    }

    pub fn indices(self) -> Vec<usize> {
        bits(self.0).collect()
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
}

/// Lexicographic order of the sorted index sets: the set holding the smallest
/// element of the symmetric difference comes first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Iterates the set bits of a mask in ascending order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `0..m` as monomials, in lexicographic order.
pub fn basis(m: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(binomial(m, k));
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if current.len() == k {
            out.push(Monomial::from_indices(current));
            return;
        }
        let remaining = k - current.len();
        for i in start..=(m - remaining) {
            current.push(i);
            rec(i + 1, m, k, current, out);
            current.pop();
        }
    }
    if k <= m {
        rec(0, m, k, &mut current, &mut out);
    }
    out
}

/// Position of a k-subset of `0..m` in the lexicographic basis order.
pub fn lex_index(m: usize, mono: Monomial) -> usize {
    let k = mono.degree();
    let mut index = 0;
    let mut next = 0;
    for (pos, c) in bits(mono.0).enumerate() {
        for j in next..c {
            index += binomial(m - 1 - j, k - 1 - pos);
        }
        next = c + 1;
    }
    index
}

/// Sign of sorting the concatenation `a · b` of two disjoint index sets.
pub fn shuffle_sign(a: Monomial, b: Monomial) -> i32 {
    let inversions: u32 = bits(b.0).map(|j| (a.0 >> j >> 1).count_ones()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of `∧^k Z^m` with sparse integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    ambient: usize,
    degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Multivector {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        assert!(ambient <= MAX_AMBIENT, "ambient rank {ambient} too large");
        Multivector {
            ambient,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-0 element `n`.
    pub fn scalar(ambient: usize, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(ambient, 0);
        out.add_term(Monomial(0), n.into());
        out
    }

    /// The basis monomial on the given indices, sorted ascending with the sign of the sort.
    pub fn monomial(ambient: usize, indices: &[usize]) -> Self {
        let mut out = Self::zero(ambient, indices.len());
        let mut sorted = indices.to_vec();
        let mut sign = 1;
        // bubble sort to track the permutation sign; index lists are tiny
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                match sorted[j].cmp(&sorted[j + 1]) {
                    Ordering::Greater => {
                        sorted.swap(j, j + 1);
                        sign = -sign;
                    }
                    Ordering::Equal => return out,
                    Ordering::Less => {}
                }
            }
        }
        assert!(sorted.iter().all(|&i| i < ambient), "index out of range");
        out.add_term(Monomial::from_indices(&sorted), BigInt::from(sign));
        out
    }

    /// The degree-1 vector with the given integer coordinates.
    pub fn vector<T: Into<BigInt> + Clone>(coords: &[T]) -> Self {
        let mut out = Self::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(Monomial(1 << i), c.clone().into());
        }
        out
    }

    /// `x_J = sum_{j in J} x_j`.
    pub fn indicator(ambient: usize, set: &[usize]) -> Self {
        let mut out = Self::zero(ambient, 1);
        for &j in set {
            out.add_term(Monomial(1 << j), BigInt::one());
        }
        out
    }

    pub fn from_coordinates(ambient: usize, degree: usize, coords: &[BigInt]) -> Self {
        let mut out = Self::zero(ambient, degree);
        for (mono, c) in basis(ambient, degree).into_iter().zip(coords) {
            out.add_term(mono, c.clone());
        }
        out
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mono: Monomial) -> BigInt {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        debug_assert_eq!(mono.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Dense coordinates in the lexicographic basis of `∧^k Z^m`.
    pub fn coordinates(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); binomial(self.ambient, self.degree)];
        for (mono, c) in &self.terms {
            out[lex_index(self.ambient, *mono)] = c.clone();
        }
        out
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_ambient(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> Multivector {
        let mut out = Multivector::zero(self.ambient, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, c * factor);
        }
        out
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&BigInt::from(-1))
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_ambient(other)?;
        let mut out = Multivector::zero(self.ambient, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.0 & b.0 != 0 {
                    continue;
                }
                let c = ca * cb * shuffle_sign(*a, *b);
                out.add_term(Monomial(a.0 | b.0), c);
            }
        }
        Ok(out)
    }

    /// The alternating contraction `x_{i_0}^...^x_{i_k} -> sum_s (-1)^s (term with x_{i_s} omitted)`.
    /// Degree-0 input maps to zero.
    pub fn boundary(&self) -> Multivector {
        if self.degree == 0 {
            return Multivector::zero(self.ambient, 0);
        }
        let mut out = Multivector::zero(self.ambient, self.degree - 1);
        for (mono, c) in &self.terms {
            for (s, i) in bits(mono.0).enumerate() {
                let term = if s % 2 == 0 { c.clone() } else { -c };
                out.add_term(Monomial(mono.0 & !(1 << i)), term);
            }
        }
        out
    }

    /// `x_M ^ self`, where `x_M` is the sum of all basis vectors. Adjoint to [`Self::boundary`].
    pub fn wedge_top(&self) -> Multivector {
        let mut out = Multivector::zero(self.ambient, self.degree + 1);
        for (mono, c) in &self.terms {
            for j in 0..self.ambient {
                if mono.contains(j) {
                    continue;
                }
                let below = (mono.0 & ((1u64 << j) - 1)).count_ones();
                let term = if below.is_multiple_of(2) {
                    c.clone()
                } else {
                    -c
                };
                out.add_term(Monomial(mono.0 | 1 << j), term);
            }
        }
        out
    }

    /// Image in `∧^k (Z^m / <x_M>)`, coordinatized by the classes of `x_1, ..., x_{m-1}`
    /// (new index `i - 1`), using `x_0 = -(x_1 + ... + x_{m-1})`.
    pub fn project_mod_top(&self) -> Multivector {
        assert!(self.ambient >= 1);
        let target = self.ambient - 1;
        let mut out = Multivector::zero(target, self.degree);
        let rest: Vec<BigInt> = vec![BigInt::from(-1); target];
        let x0 = Multivector::vector(&rest);
        for (mono, c) in &self.terms {
            let shifted = Monomial(mono.0 >> 1);
            if !mono.contains(0) {
                out.add_term(shifted, c.clone());
            } else {
                let mut tail = Multivector::zero(target, self.degree - 1);
                tail.add_term(shifted, c.clone());
                let image = x0.wedge(&tail).expect("same ambient");
                for (m, v) in image.terms {
                    out.add_term(m, v);
                }
            }
        }
        out
    }

    /// Determinant pairing between dual bases: `<x_I, y_J> = [I = J]`.
    pub fn pairing(&self, other: &Multivector) -> Result<BigInt> {
        self.check_ambient(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(self
            .terms
            .iter()
            .filter_map(|(m, c)| other.terms.get(m).map(|d| c * d))
            .sum())
    }

    /// Signed sum of monomials, e.g. `+1*f1^f2 -1*f1^f3`.
    pub fn to_text(&self, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let sign = if c.is_negative() { "-" } else { "+" };
                let body = if mono.0 == 0 {
                    String::new()
                } else {
                    let names: Vec<String> = bits(mono.0).map(|i| format!("{symbol}{i}")).collect();
                    format!("*{}", names.join("^"))
                };
                format!("{sign}{}{body}", c.abs())
            })
            .collect();
        parts.join(" ")
    }

    fn check_ambient(&self, other: &Multivector) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("e"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ambient: usize, idx: &[usize]) -> Multivector {
        Multivector::monomial(ambient, idx)
    }

    fn sum(parts: &[Multivector]) -> Multivector {
        parts[1..]
            .iter()
            .fold(parts[0].clone(), |acc, p| acc.add(p).unwrap())
    }

    #[test]
    fn lex_order_and_index_agree() {
        for m in 0..8 {
            for k in 0..=m {
                let b = basis(m, k);
                assert_eq!(b.len(), binomial(m, k));
                for (i, mono) in b.iter().enumerate() {
                    assert_eq!(lex_index(m, *mono), i);
                }
                assert!(b.windows(2).all(|w| w[0] < w[1]));
                let as_vecs: Vec<Vec<usize>> = b.iter().map(|x| x.indices()).collect();
                let mut sorted = as_vecs.clone();
                sorted.sort();
                assert_eq!(as_vecs, sorted);
            }
        }
    }

    #[test]
    fn wedge_examples() {
        // e1 ^ e4 = E_14
        let e1 = f(5, &[1]);
        let e4 = f(5, &[4]);
        assert_eq!(e1.wedge(&e4).unwrap(), f(5, &[1, 4]));
        let a = Multivector::vector(&[3, -1, 2, 0]);
        assert!(a.wedge(&a).unwrap().is_zero());
        // (e1+e2+e3) ^ e1 = -E_12 - E_13
        let s = Multivector::indicator(4, &[1, 2, 3]);
        let got = s.wedge(&f(4, &[1])).unwrap();
        assert_eq!(got, sum(&[f(4, &[1, 2]).neg(), f(4, &[1, 3]).neg()]));
        assert!(matches!(
            e1.wedge(&f(4, &[1])),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn monomial_sorts_with_sign() {
        assert_eq!(f(4, &[3, 1]), f(4, &[1, 3]).neg());
        assert!(f(4, &[2, 2]).is_zero());
        assert_eq!(f(4, &[2, 0, 1]), f(4, &[0, 1, 2]));
    }

    #[test]
    fn boundary_examples() {
        // d F_123 = F_12 + F_23 + F_31
        let d = f(5, &[1, 2, 3]).boundary();
        assert_eq!(d, sum(&[f(5, &[1, 2]), f(5, &[2, 3]), f(5, &[3, 1])]));
        assert!(f(5, &[1, 2, 3, 4]).boundary().boundary().is_zero());
        let d = f(7, &[1, 2, 5]).boundary();
        assert_eq!(d, sum(&[f(7, &[1, 2]), f(7, &[2, 5]), f(7, &[5, 1])]));
        // degree-1 basis element maps to the integer 1
        assert_eq!(f(3, &[2]).boundary(), Multivector::scalar(3, 1));
        assert!(Multivector::scalar(3, 5).boundary().is_zero());
    }

    #[test]
    fn wedge_top_examples() {
        let e_m = Multivector::indicator(4, &[0, 1, 2, 3]);
        assert_eq!(Multivector::scalar(4, 1).wedge_top(), e_m);
        assert!(e_m.wedge_top().is_zero());
        let x = f(4, &[1, 3]);
        assert_eq!(x.wedge_top(), e_m.wedge(&x).unwrap());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            f(5, &[1, 4]).pairing(&f(5, &[1, 4])).unwrap(),
            BigInt::one()
        );
        let d123 = f(5, &[1, 2, 3]).boundary();
        assert_eq!(f(5, &[1, 4]).pairing(&d123).unwrap(), BigInt::zero());
        assert_eq!(f(5, &[1, 2]).pairing(&d123).unwrap(), BigInt::one());
        assert!(matches!(
            f(5, &[1]).pairing(&d123),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn adjointness_exhaustive() {
        for m in 1..=6 {
            for k in 0..m {
                for x in basis(m, k) {
                    let mut ex = Multivector::zero(m, k);
                    ex.add_term(x, BigInt::one());
                    for y in basis(m, k + 1) {
                        let mut fy = Multivector::zero(m, k + 1);
                        fy.add_term(y, BigInt::one());
                        assert_eq!(
                            ex.wedge_top().pairing(&fy).unwrap(),
                            ex.pairing(&fy.boundary()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn project_mod_top_examples() {
        let n = 4;
        let e_m = Multivector::indicator(n + 1, &[0, 1, 2, 3, 4]);
        assert!(e_m.project_mod_top().is_zero());
        assert_eq!(f(n + 1, &[1]).project_mod_top(), f(n, &[0]));
        // e0 ^ e1 -> -(e2 + ... + eN) ^ e1, new labels shifted down by one
        let got = f(n + 1, &[0, 1]).project_mod_top();
        let expected = Multivector::indicator(n, &[1, 2, 3])
            .neg()
            .wedge(&f(n, &[0]))
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn text_format() {
        let d = f(4, &[1, 2, 3]).boundary();
        assert_eq!(d.to_text("f"), "+1*f1^f2 -1*f1^f3 +1*f2^f3");
        assert_eq!(Multivector::zero(3, 2).to_text("f"), "0");
        assert_eq!(Multivector::scalar(3, -2).to_text("f"), "-2");
    }

    #[test]
    fn coordinates_round_trip() {
        let x = sum(&[f(5, &[0, 3]).scale(&BigInt::from(7)), f(5, &[2, 4]).neg()]);
        let c = x.coordinates();
        assert_eq!(Multivector::from_coordinates(5, 2, &c), x);
    }
}
