//! Integral simplicial fans, the fans `Σ(M)` and `Σ₀(M)` of a matroid, and their
//! tropical homology groups `F_k` inside the exterior powers of the ambient lattice.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, Multivector};
use crate::lattice::{LatticeSubgroup, Row};
use crate::matroid::{FlagOfFlats, Matroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FanKind {
    General,
    BergmanAffine,
    BergmanProjective,
}

#[derive(Clone, Debug)]
pub struct Cone {
    /// Primitive ray generators, degree-1 multivectors.
    pub rays: Vec<Multivector>,
    /// Basis of the lattice `<σ>_Z` of integer points in the linear span of the cone.
    pub span_basis: Vec<Multivector>,
    pub label: Option<FlagOfFlats>,
}

impl Cone {
    pub fn dimension(&self) -> usize {
        self.span_basis.len()
    }

    fn key(&self) -> Vec<Row> {
        let mut k: Vec<Row> = self.rays.iter().map(Multivector::coordinates).collect();
        k.sort();
        k
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    ambient_rank: usize,
    /// `cones[d]` lists the `d`-dimensional cones; `cones[0]` is the origin.
    cones: Vec<Vec<Cone>>,
    /// `(dimension, index)` of the maximal cones.
    maximal: Vec<(usize, usize)>,
    kind: FanKind,
    /// Rays `e_J` with `J` a connected flat; the others lie in the span of a coarser cone.
    connected_rays: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanStats {
    pub ambient_rank: usize,
    pub kind: FanKind,
    pub rays: usize,
    /// Rays of the coarse structure (connected flats), for fans built from a matroid.
    pub connected_rays: Option<usize>,
    pub cones_by_dimension: Vec<usize>,
    /// Number of distinct `k`-vectors spanned by the `k`-cones, up to sign.
    pub distinct_cone_multivectors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub rank: usize,
    /// Pairing of the Hermite basis of `F_k` against a basis of `∧^k (Z^m)^* / F_k^⊥`.
    #[serde(serialize_with = "crate::report::serialize_matrix")]
    pub pairing_matrix: Vec<Row>,
    #[serde(serialize_with = "crate::report::serialize_ints")]
    pub torsion: Vec<BigInt>,
}

fn primitive(v: Row) -> Row {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn wedge_all(vectors: &[&Multivector], ambient: usize) -> Multivector {
    vectors
        .iter()
        .fold(Multivector::scalar(ambient, 1), |acc, v| {
            acc.wedge(v).expect("same ambient")
        })
}

/// All `k`-subsets of `0..n`, lexicographic.
fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::exterior::basis(n, k)
        .into_iter()
        .map(|m| m.indices())
        .collect()
}

/// Degree-`k` span of the given multivectors, discarding repeats up to sign.
fn span_dedup(
    ambient: usize,
    k: usize,
    generators: impl IntoIterator<Item = Multivector>,
) -> LatticeSubgroup {
    let mut seen = HashSet::new();
    let unique: Vec<Multivector> = generators
        .into_iter()
        .filter(|g| !g.is_zero())
        .filter(|g| {
            let canon = match g.terms().next() {
                Some((_, c)) if c.is_negative() => g.neg(),
                _ => g.clone(),
            };
            seen.insert(canon.coordinates())
        })
        .collect();
    LatticeSubgroup::span_multivectors(ambient, k, &unique).expect("consistent degree")
}

impl Fan {
    /// The fan `Σ(M)` in `Z^{N+1}`: one cone per flag of nonempty flats, rays `e_J`.
    pub fn affine(m: &Matroid) -> Fan {
        Self::from_flags(m, false)
    }

    /// The Bergman fan `Σ₀(M)` in `Z^{N+1} / <e_M>`, coordinatized by the classes of
    /// `e_1, ..., e_N`: one cone per flag of proper nonempty flats.
    pub fn bergman(m: &Matroid) -> Fan {
        Self::from_flags(m, true)
    }

    fn from_flags(m: &Matroid, projective: bool) -> Fan {
        let n = m.ground_size();
        let ambient = if projective { n - 1 } else { n };
        let top = if projective {
            m.rank().saturating_sub(1)
        } else {
            m.rank()
        };
        let ray = |elements: &[usize]| {
            let e = Multivector::indicator(n, elements);
            if projective {
                e.project_mod_top()
            } else {
                e
            }
        };
        let cones: Vec<Vec<Cone>> = (0..=top)
            .map(|k| {
                m.flags(k, projective, false)
                    .into_iter()
                    .map(|flag| {
                        let rays: Vec<Multivector> =
                            flag.chain.iter().map(|j| ray(&j.elements)).collect();
                        Cone {
                            span_basis: rays.clone(),
                            rays,
                            label: Some(flag),
                        }
                    })
                    .collect()
            })
            .collect();
        // flat lattices are graded, so every maximal flag has full length
        let maximal = (0..cones[top].len()).map(|i| (top, i)).collect();
        let connected_rays = cones.get(1).map_or(0, |rays| {
            rays.iter()
                .filter_map(|c| c.label.as_ref())
                .filter(|flag| m.is_connected_mask(flag.chain[0].mask()))
                .count()
        });
        Fan {
            ambient_rank: ambient,
            cones,
            maximal,
            kind: if projective {
                FanKind::BergmanProjective
            } else {
                FanKind::BergmanAffine
            },
            connected_rays: Some(connected_rays),
        }
    }

    /// A simplicial fan given by its maximal cones; every face is added.
    pub fn from_maximal_cones(ambient_rank: usize, cones: &[Vec<Vec<i64>>]) -> Result<Fan> {
        let mut by_key: Vec<HashMap<Vec<Row>, usize>> = vec![HashMap::new()];
        let mut graded: Vec<Vec<Cone>> = vec![vec![Cone {
            rays: vec![],
            span_basis: vec![],
            label: None,
        }]];
        by_key[0].insert(vec![], 0);
        let mut maximal = Vec::new();
        for (index, rays) in cones.iter().enumerate() {
            let mut prim: Vec<Row> = Vec::with_capacity(rays.len());
            for r in rays {
                if r.len() != ambient_rank {
                    return Err(Error::InvalidInput(format!(
                        "cone {index}: ray {r:?} has length {} but ambient_rank is {ambient_rank}",
                        r.len()
                    )));
                }
                if r.iter().all(|&x| x == 0) {
                    return Err(Error::InvalidInput(format!("cone {index}: zero ray")));
                }
                prim.push(primitive(r.iter().map(|&x| BigInt::from(x)).collect()));
            }
            prim.sort();
            if LatticeSubgroup::span(ambient_rank, prim.clone()).rank() != prim.len() {
                return Err(Error::NonSimplicialCone { index });
            }
            let d = prim.len();
            for k in 0..=d {
                if graded.len() <= k {
                    graded.push(Vec::new());
                    by_key.push(HashMap::new());
                }
                for subset in index_subsets(d, k) {
                    let face: Vec<Row> = subset.iter().map(|&i| prim[i].clone()).collect();
                    if by_key[k].contains_key(&face) {
                        continue;
                    }
                    let span = LatticeSubgroup::span(ambient_rank, face.clone()).saturate();
                    let cone = Cone {
                        rays: face.iter().map(|r| Multivector::vector(r)).collect(),
                        span_basis: span
                            .basis()
                            .iter()
                            .map(|r| Multivector::vector(r))
                            .collect(),
                        label: None,
                    };
                    by_key[k].insert(face, graded[k].len());
                    graded[k].push(cone);
                }
            }
            maximal.push((d, by_key[d][&prim]));
        }
        if cones.is_empty() {
            maximal.push((0, 0));
        }
        maximal.sort();
        maximal.dedup();
        Ok(Fan {
            ambient_rank,
            cones: graded,
            maximal,
            kind: FanKind::General,
            connected_rays: None,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn kind(&self) -> FanKind {
        self.kind
    }

    pub fn cones(&self, dimension: usize) -> &[Cone] {
        self.cones.get(dimension).map_or(&[], Vec::as_slice)
    }

    pub fn max_dimension(&self) -> usize {
        self.cones.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(|&(d, i)| &self.cones[d][i])
    }

    /// Wedge products `v_1 ^ ... ^ v_k` of the `k`-cones' ray generators.
    pub fn cone_multivectors(&self, k: usize) -> Vec<Multivector> {
        self.cones(k)
            .iter()
            .map(|c| wedge_all(&c.rays.iter().collect::<Vec<_>>(), self.ambient_rank))
            .collect()
    }

    pub fn stats(&self) -> FanStats {
        let top = self.max_dimension();
        FanStats {
            ambient_rank: self.ambient_rank,
            kind: self.kind,
            rays: self.cones(1).len(),
            connected_rays: self.connected_rays,
            cones_by_dimension: (0..=top).map(|d| self.cones(d).len()).collect(),
            distinct_cone_multivectors: (0..=top)
                .map(|k| {
                    let mut seen = HashSet::new();
                    for w in self.cone_multivectors(k) {
                        let negative = w.terms().next().is_some_and(|(_, c)| c.is_negative());
                        let canon = if negative { w.neg() } else { w };
                        seen.insert(canon.coordinates());
                    }
                    seen.len()
                })
                .collect(),
        }
    }

    /// `F_k`: the subgroup of `∧^k Z^m` generated by wedges of `k` vectors from a single
    /// cone's lattice `<σ>_Z`. Generated by `k`-subsets of the maximal cones' span bases.
    pub fn fk_lattice(&self, k: usize) -> LatticeSubgroup {
        let m = self.ambient_rank;
        if k > m {
            return LatticeSubgroup::zero(0);
        }
        let generators = self.maximal_cones().flat_map(|cone| {
            let basis: Vec<&Multivector> = cone.span_basis.iter().collect();
            index_subsets(basis.len(), k)
                .into_iter()
                .map(move |subset| {
                    let vs: Vec<&Multivector> = subset.iter().map(|&i| basis[i]).collect();
                    wedge_all(&vs, m)
                })
        });
        span_dedup(m, k, generators)
    }

    pub fn fk_cohomology(&self, k: usize) -> Cohomology {
        let fk = self.fk_lattice(k);
        let ann = fk.annihilator();
        let complement = ann.complement_basis();
        let pairing_matrix = fk
            .basis()
            .iter()
            .map(|b| complement.iter().map(|c| dot(b, c)).collect())
            .collect();
        Cohomology {
            rank: fk.rank(),
            pairing_matrix,
            torsion: ann.quotient_torsion(),
        }
    }

    /// A degree `k` and an element of `F_k^⊥` whose product with some `f_i` leaves `F_{k+1}^⊥`,
    /// if the annihilators fail to form an ideal.
    pub fn ideal_property_witness(&self) -> Option<(usize, Multivector)> {
        let m = self.ambient_rank;
        let mut ann = self.fk_lattice(0).annihilator();
        for k in 0..m {
            let next = self.fk_lattice(k + 1).annihilator();
            for alpha in ann.basis_multivectors(m, k) {
                for i in 0..m {
                    let product = alpha
                        .wedge(&Multivector::monomial(m, &[i]))
                        .expect("ambient");
                    if !next.contains_multivector(&product) {
                        return Some((k, alpha));
                    }
                }
            }
            ann = next;
        }
        None
    }

    /// Whether `F_•^⊥` is an ideal of the exterior algebra of the dual lattice.
    pub fn check_ideal_property(&self) -> bool {
        self.ideal_property_witness().is_none()
    }

    /// Balancing with all weights 1: around every codimension-one cone `τ`, the primitive
    /// generators of `σ/τ` over the adjacent top cones `σ` sum to zero modulo `<τ>_Z`.
    pub fn check_balanced(&self) -> Result<bool> {
        let mut dims: Vec<usize> = self.maximal.iter().map(|&(d, _)| d).collect();
        dims.sort();
        dims.dedup();
        if dims.len() > 1 {
            return Err(Error::NotPure { dimensions: dims });
        }
        let d = dims.first().copied().unwrap_or(0);
        if d == 0 {
            return Ok(true);
        }
        let mut adjacent: HashMap<Vec<Row>, Vec<Row>> = HashMap::new();
        for sigma in self.cones(d) {
            let key = sigma.key();
            for omit in 0..key.len() {
                let mut face = key.clone();
                let extra = face.remove(omit);
                adjacent.entry(face).or_default().push(extra);
            }
        }
        for tau in self.cones(d - 1) {
            let span = LatticeSubgroup::span(
                binomial(self.ambient_rank, 1),
                tau.span_basis.iter().map(Multivector::coordinates),
            );
            // the annihilator basis identifies Z^m / <τ>_Z with Z^(m - d + 1)
            let quotient = span.annihilator();
            let mut total = vec![BigInt::zero(); quotient.rank()];
            for v in adjacent.get(&tau.key()).map_or(&[][..], Vec::as_slice) {
                let image = primitive(quotient.basis().iter().map(|a| dot(a, v)).collect());
                for (t, x) in total.iter_mut().zip(image) {
                    *t += x;
                }
            }
            if total.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Subgroup generated by `e_{J_1} ^ ... ^ e_{J_k}` over consecutive-rank flags only
/// (proper flags, projected to `Z^N`, when `projective`).
pub fn fk_flag_generators(m: &Matroid, k: usize, projective: bool) -> LatticeSubgroup {
    flag_span(m, &m.flags(k, projective, true), k, projective)
}

/// Subgroup generated by the flag monomials of every length-`k` flag.
pub fn fk_all_flags(m: &Matroid, k: usize, projective: bool) -> LatticeSubgroup {
    flag_span(m, &m.flags(k, projective, false), k, projective)
}

/// `e_{J_1} ^ ... ^ e_{J_k}` in `∧^k Z^{N+1}`.
pub fn flag_monomial(m: &Matroid, flag: &FlagOfFlats) -> Multivector {
    let n = m.ground_size();
    let rays: Vec<Multivector> = flag
        .chain
        .iter()
        .map(|j| Multivector::indicator(n, &j.elements))
        .collect();
    wedge_all(&rays.iter().collect::<Vec<_>>(), n)
}

fn flag_span(m: &Matroid, flags: &[FlagOfFlats], k: usize, projective: bool) -> LatticeSubgroup {
    let ambient = if projective {
        m.ground_size() - 1
    } else {
        m.ground_size()
    };
    let generators = flags.iter().map(|f| {
        let w = flag_monomial(m, f);
        if projective {
            w.project_mod_top()
        } else {
            w
        }
    });
    span_dedup(ambient, k, generators)
}
