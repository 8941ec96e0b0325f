//! Degree pieces of the Orlik-Solomon ideal of a matroid, its restriction to a flat,
//! and its projective version inside `∧ W₀`.
//!
//! `W` has basis `f_0, ..., f_N`; `W₀` is coordinatized by `g_i = f_i - f_0` for `i = 1..N`
//! (coordinate index `i - 1`), the basis dual to the classes of `e_1, ..., e_N` in `V / <e_M>`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{basis, binomial, bits, Monomial, Multivector};
use crate::lattice::LatticeSubgroup;
use crate::matroid::{Flat, Matroid};

/// Which `∂F_I` (with `|I| = k + 1`) generate the degree-`k` piece alongside the `F_I`
/// with `I` dependent of size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorPolicy {
    AllDependent,
    /// Only `I` of rank exactly `k`; the others are already sums of dependent monomials.
    RankExact,
}

#[derive(Clone, Debug)]
pub struct OsIdealDegree {
    pub degree: usize,
    pub generators: Vec<Multivector>,
    pub subgroup: LatticeSubgroup,
}

/// Degree piece of the projective ideal, computed by two independent routes.
#[derive(Clone, Debug)]
pub struct ProjectiveIdealDegree {
    pub degree: usize,
    /// `∂F_I` for dependent `I` of size `k + 1`, in the `g` basis.
    pub generators: Vec<Multivector>,
    /// The affine ideal intersected with `∧^k W₀`.
    pub subgroup: LatticeSubgroup,
    /// Span of `generators`.
    pub boundary_span: LatticeSubgroup,
}

impl ProjectiveIdealDegree {
    pub fn routes_agree(&self) -> bool {
        self.subgroup == self.boundary_span
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeFragment {
    pub degree: usize,
    pub os_rank: usize,
    pub os0_rank: usize,
    pub ideal_rank: usize,
    #[serde(serialize_with = "crate::report::serialize_ints")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsAlgebraSummary {
    /// `rank OS^k` for `k = 0..=rank(M)`.
    pub graded_ranks: Vec<usize>,
    /// `rank OS₀^k` for `k = 0..=rank(M)`.
    pub projective_ranks: Vec<usize>,
    /// Whether `∧^k W / OS^k` or `∧^k W₀ / OS₀^k` has torsion.
    pub torsion_note: Vec<bool>,
    pub degrees: Vec<DegreeFragment>,
}

fn f_monomial(ambient: usize, mask: u64) -> Multivector {
    let mut x = Multivector::zero(ambient, mask.count_ones() as usize);
    x.add_term(Monomial(mask), BigInt::from(1));
    x
}

/// Generators of the degree-`k` ideal piece per the chosen policy.
pub fn os_generators(m: &Matroid, k: usize, policy: GeneratorPolicy) -> Vec<Multivector> {
    let n = m.ground_size();
    let mut out: Vec<Multivector> = m
        .dependent_sets(k)
        .into_iter()
        .map(|i| f_monomial(n, i))
        .collect();
    out.extend(
        m.dependent_sets(k + 1)
            .into_iter()
            .filter(|&i| policy == GeneratorPolicy::AllDependent || m.rank_mask(i) == k)
            .map(|i| f_monomial(n, i).boundary()),
    );
    out
}

pub fn os_ideal_degree(m: &Matroid, k: usize) -> OsIdealDegree {
    os_ideal_degree_with(m, k, GeneratorPolicy::AllDependent)
}

pub fn os_ideal_degree_with(m: &Matroid, k: usize, policy: GeneratorPolicy) -> OsIdealDegree {
    let generators = os_generators(m, k, policy);
    let subgroup = LatticeSubgroup::span_multivectors(m.ground_size(), k, &generators)
        .expect("generators share degree");
    OsIdealDegree {
        degree: k,
        generators,
        subgroup,
    }
}

fn check_oracle_size(m: &Matroid, limit: usize) -> Result<()> {
    if m.ground_size() > limit {
        return Err(Error::SizeLimitExceeded {
            size: m.ground_size(),
            limit,
        });
    }
    Ok(())
}

/// Brute-force degree-`k` piece of the ideal generated by `∂F_I` over all dependent `I`:
/// the span of every product `F_K ^ ∂F_I` of total degree `k`.
pub fn os_ideal_oracle(m: &Matroid, k: usize, limit: usize) -> Result<LatticeSubgroup> {
    check_oracle_size(m, limit)?;
    let n = m.ground_size();
    let mut products = Vec::new();
    for size in 1..=(k + 1).min(n) {
        for dep in m.dependent_sets(size) {
            let d = f_monomial(n, dep).boundary();
            for mono in basis(n, k + 1 - size) {
                let p = f_monomial(n, mono.0).wedge(&d).expect("ambient");
                if !p.is_zero() {
                    products.push(p);
                }
            }
        }
    }
    LatticeSubgroup::span_multivectors(n, k, &products)
}

/// Degree-`k` piece of the ideal generated by `∂F_I` for dependent `I ⊆ J` and by the
/// `f_i` with `i ∉ J`.
pub fn os_restricted_ideal(m: &Matroid, flat: &Flat, k: usize) -> Result<LatticeSubgroup> {
    let j = flat.mask();
    if !m.is_flat_mask(j) {
        return Err(Error::NotAFlat {
            elements: flat.elements.clone(),
        });
    }
    let n = m.ground_size();
    let inside = |s: &u64| s & !j == 0;
    let mut generators: Vec<Multivector> = m
        .dependent_sets(k)
        .into_iter()
        .filter(inside)
        .map(|i| f_monomial(n, i))
        .collect();
    generators.extend(
        m.dependent_sets(k + 1)
            .into_iter()
            .filter(inside)
            .map(|i| f_monomial(n, i).boundary()),
    );
    generators.extend(
        basis(n, k)
            .into_iter()
            .filter(|mono| !inside(&mono.0))
            .map(|mono| f_monomial(n, mono.0)),
    );
    LatticeSubgroup::span_multivectors(n, k, &generators)
}

/// Image of a `g`-basis multivector of `∧ W₀` in `∧ W`, via `g_i = f_i - f_0`.
pub fn embed_w0(x: &Multivector) -> Multivector {
    let n = x.ambient() + 1;
    let g = |i: usize| {
        let mut v = Multivector::zero(n, 1);
        v.add_term(Monomial(1 << (i + 1)), BigInt::from(1));
        v.add_term(Monomial(1), BigInt::from(-1));
        v
    };
    let mut out = Multivector::zero(n, x.degree());
    for (mono, c) in x.terms() {
        let product = bits(mono.0).fold(Multivector::scalar(n, 1), |acc, i| {
            acc.wedge(&g(i)).expect("ambient")
        });
        out = out.add(&product.scale(c)).expect("same degree");
    }
    out
}

/// Coordinates in the `g` basis of an element of `∧ W` lying in `∧ W₀`; `None` otherwise.
pub fn restrict_to_w0(x: &Multivector) -> Option<Multivector> {
    let n = x.ambient();
    let mut y = Multivector::zero(n - 1, x.degree());
    for (mono, c) in x.terms() {
        if !mono.contains(0) {
            y.add_term(Monomial(mono.0 >> 1), c.clone());
        }
    }
    (embed_w0(&y) == *x).then_some(y)
}

/// `∧^k W₀` as a subgroup of `∧^k W`.
pub fn w0_sublattice(ground_size: usize, k: usize) -> LatticeSubgroup {
    let images: Vec<Multivector> = basis(ground_size - 1, k)
        .into_iter()
        .map(|mono| {
            let mut g = Multivector::zero(ground_size - 1, k);
            g.add_term(mono, BigInt::from(1));
            embed_w0(&g)
        })
        .collect();
    LatticeSubgroup::span_multivectors(ground_size, k, &images).expect("degree")
}

pub fn os0_ideal_degree(m: &Matroid, k: usize) -> ProjectiveIdealDegree {
    let n = m.ground_size();
    let affine = os_ideal_degree(m, k).subgroup;
    let meet = affine
        .intersect(&w0_sublattice(n, k))
        .expect("same ambient");
    let restricted: Vec<Multivector> = meet
        .basis_multivectors(n, k)
        .iter()
        .map(|x| restrict_to_w0(x).expect("intersection lies in ∧W₀"))
        .collect();
    let subgroup = LatticeSubgroup::span_multivectors(n - 1, k, &restricted).expect("degree");

    let generators: Vec<Multivector> = m
        .dependent_sets(k + 1)
        .into_iter()
        .map(|i| restrict_to_w0(&f_monomial(n, i).boundary()).expect("∂ lands in ∧W₀"))
        .collect();
    let boundary_span = LatticeSubgroup::span_multivectors(n - 1, k, &generators).expect("degree");
    ProjectiveIdealDegree {
        degree: k,
        generators,
        subgroup,
        boundary_span,
    }
}

/// Ranks and torsion of `OS^k` and `OS₀^k` from the degree-`k` ideal pieces.
pub fn degree_fragment(
    ground_size: usize,
    k: usize,
    ideal: &LatticeSubgroup,
    projective_ideal: Option<&LatticeSubgroup>,
) -> DegreeFragment {
    let mut torsion = ideal.quotient_torsion();
    let os0_rank = match projective_ideal {
        Some(ideal0) => {
            torsion.extend(ideal0.quotient_torsion());
            binomial(ground_size - 1, k) - ideal0.rank()
        }
        None => 0,
    };
    torsion.sort();
    DegreeFragment {
        degree: k,
        os_rank: binomial(ground_size, k) - ideal.rank(),
        os0_rank,
        ideal_rank: ideal.rank(),
        torsion,
    }
}

pub fn os_summary(m: &Matroid) -> OsAlgebraSummary {
    let n = m.ground_size();
    let degrees: Vec<DegreeFragment> = (0..=m.rank())
        .map(|k| {
            let ideal = os_ideal_degree(m, k).subgroup;
            let ideal0 = (k < n).then(|| os0_ideal_degree(m, k).subgroup);
            degree_fragment(n, k, &ideal, ideal0.as_ref())
        })
        .collect();
    OsAlgebraSummary {
        graded_ranks: degrees.iter().map(|d| d.os_rank).collect(),
        projective_ranks: degrees.iter().map(|d| d.os0_rank).collect(),
        torsion_note: degrees.iter().map(|d| !d.torsion.is_empty()).collect(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1() -> Matroid {
        Matroid::from_circuits(4, &[vec![0, 1, 2]]).unwrap()
    }

    fn m2() -> Matroid {
        Matroid::from_graph(4, &[(2, 3), (1, 3), (0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    fn f(n: usize, idx: &[usize]) -> Multivector {
        Multivector::monomial(n, idx)
    }

    // Paper labels are 1-based; shift down by one.
    fn d(n: usize, labels: &[usize]) -> Multivector {
        let idx: Vec<usize> = labels.iter().map(|x| x - 1).collect();
        f(n, &idx).boundary()
    }

    #[test]
    fn m2_degree_two_generators() {
        let ideal = os_ideal_degree(&m2(), 2);
        for gen in [&[1, 2, 5][..], &[1, 4, 6], &[2, 3, 6], &[3, 4, 5]] {
            assert!(ideal.generators.contains(&d(6, gen)));
        }
        assert_eq!(ideal.subgroup.rank(), 4);
    }

    #[test]
    fn simple_matroid_has_no_degree_one_ideal() {
        assert!(os_ideal_degree(&m2(), 1).subgroup.is_zero());
        assert!(os0_ideal_degree(&m2(), 1).subgroup.is_zero());
    }

    #[test]
    fn m1_degree_two_is_one_boundary() {
        let ideal = os_ideal_degree(&m1(), 2);
        let expected = LatticeSubgroup::span_multivectors(4, 2, &[d(4, &[1, 2, 3])]).unwrap();
        assert_eq!(ideal.subgroup, expected);
        let proj = os0_ideal_degree(&m1(), 2);
        let g = restrict_to_w0(&d(4, &[1, 2, 3])).unwrap();
        let expected = LatticeSubgroup::span_multivectors(3, 2, &[g]).unwrap();
        assert_eq!(proj.subgroup, expected);
        assert!(proj.routes_agree());
    }

    #[test]
    fn oracle_matches_generators() {
        let free = Matroid::from_circuits(4, &[]).unwrap();
        for m in [m1(), m2(), free.clone()] {
            for k in 0..=m.ground_size() + 1 {
                let oracle = os_ideal_oracle(&m, k, 8).unwrap();
                assert_eq!(os_ideal_degree(&m, k).subgroup, oracle, "k = {k}");
            }
        }
        for k in 0..=4 {
            assert!(os_ideal_oracle(&free, k, 8).unwrap().is_zero());
        }
        assert_eq!(
            os_ideal_oracle(&m2(), 2, 5).unwrap_err(),
            Error::SizeLimitExceeded { size: 6, limit: 5 }
        );
    }

    #[test]
    fn rank_exact_policy_agrees() {
        for m in [m1(), m2()] {
            for k in 0..=m.ground_size() {
                assert_eq!(
                    os_ideal_degree_with(&m, k, GeneratorPolicy::RankExact).subgroup,
                    os_ideal_degree(&m, k).subgroup
                );
            }
        }
    }

    #[test]
    fn restricted_ideals() {
        let m = m2();
        let full = m.flat_of_mask(m.ground_mask());
        for k in 0..=3 {
            assert_eq!(
                os_restricted_ideal(&m, &full, k).unwrap(),
                os_ideal_degree(&m, k).subgroup
            );
        }
        // J = {5,6} in 1-based labels
        let j = m.closure(&[4, 5]);
        let got = os_restricted_ideal(&m, &j, 1).unwrap();
        let expected = LatticeSubgroup::span_multivectors(
            6,
            1,
            &[f(6, &[0]), f(6, &[1]), f(6, &[2]), f(6, &[3])],
        )
        .unwrap();
        assert_eq!(got, expected);
        let mut meet = LatticeSubgroup::full(15);
        for j in m.flats(2) {
            meet = meet
                .intersect(&os_restricted_ideal(&m, &j, 2).unwrap())
                .unwrap();
        }
        assert_eq!(meet, os_ideal_degree(&m, 2).subgroup);
        let not_flat = Flat {
            elements: vec![0, 1],
            rank: 2,
        };
        assert!(matches!(
            os_restricted_ideal(&m, &not_flat, 1),
            Err(Error::NotAFlat { .. })
        ));
    }

    #[test]
    fn w0_coordinates() {
        let x = f(3, &[0, 2]);
        let y = embed_w0(&x);
        assert_eq!(y.ambient(), 4);
        assert_eq!(restrict_to_w0(&y), Some(x));
        assert_eq!(restrict_to_w0(&f(4, &[1])), None);
        assert_eq!(w0_sublattice(4, 2).rank(), 3);
    }

    #[test]
    fn projective_m2() {
        let p = os0_ideal_degree(&m2(), 2);
        assert_eq!(p.subgroup.rank(), 4);
        assert!(p.routes_agree());
        for k in 0..6 {
            assert!(os0_ideal_degree(&m2(), k).routes_agree());
        }
    }

    #[test]
    fn summaries() {
        let s = os_summary(&m2());
        assert_eq!(s.projective_ranks, vec![1, 5, 6, 0]);
        assert_eq!(s.graded_ranks, vec![1, 6, 11, 6]);
        assert!(s.torsion_note.iter().all(|t| !t));
        let s = os_summary(&m1());
        assert_eq!(s.projective_ranks, vec![1, 3, 2, 0]);
        assert_eq!(s.degrees[2].ideal_rank, 1);
    }
}
