//! Built-in matroids.
//!
//! `m1` and `m2` are line arrangements in the projective plane with elements labeled
//! `1..4` and `1..6`, stored as `0..3` and `0..5`. As matroids both have rank 3, one more
//! than the dimension of the plane; [`Matroid::rank`] reports 3.

use crate::error::{Error, Result};
use crate::exterior::basis;
use crate::matroid::{Matroid, Source};

pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const FIXTURES: &[FixtureInfo] = &[
    FixtureInfo {
        name: "u_<r>_<n>",
        description: "uniform matroid of rank r on n elements, e.g. u_2_4",
    },
    FixtureInfo {
        name: "m1",
        description: "4 lines in the plane, three concurrent; circuit {1,2,3}; labels 1..4 -> 0..3",
    },
    FixtureInfo {
        name: "m2",
        description: "6 lines of a complete quadrilateral (graphic K4); labels 1..6 -> 0..5",
    },
    FixtureInfo {
        name: "k4",
        description: "graphic matroid of K4, edges labeled so that it equals m2",
    },
    FixtureInfo {
        name: "fano",
        description: "Fano plane F7 (not realizable over Q)",
    },
    FixtureInfo {
        name: "nonfano",
        description: "non-Fano configuration: nonzero 0/1 vectors of Z^3",
    },
];

/// The fixture matroids exercised by the acceptance battery.
pub const STANDARD: &[&str] = &[
    "u_1_1", "u_2_2", "u_2_3", "u_2_4", "u_3_4", "u_3_6", "m1", "m2", "fano", "nonfano",
];

/// Edges of K4 on vertices 0..3, in element order, chosen so that the triangles are the
/// circuits 125, 146, 236, 345 in 1-based labels.
pub const K4_EDGES: [(usize, usize); 6] = [(2, 3), (1, 3), (0, 1), (0, 2), (1, 2), (0, 3)];

fn shifted(sets: &[&[usize]]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.iter().map(|x| x - 1).collect())
        .collect()
}

pub fn m1() -> Matroid {
    Matroid::from_circuits(4, &shifted(&[&[1, 2, 3]]))
        .expect("valid fixture")
        .with_source(Source::Builtin)
}

pub fn m2() -> Matroid {
    let circuits = shifted(&[
        &[1, 2, 5],
        &[1, 4, 6],
        &[2, 3, 6],
        &[3, 4, 5],
        &[1, 2, 3, 4],
        &[1, 3, 5, 6],
        &[2, 4, 5, 6],
    ]);
    Matroid::from_circuits(6, &circuits)
        .expect("valid fixture")
        .with_source(Source::Builtin)
}

pub fn k4() -> Matroid {
    Matroid::from_graph(4, &K4_EDGES)
        .expect("valid fixture")
        .with_source(Source::Builtin)
}

pub fn uniform(rank: usize, size: usize) -> Result<Matroid> {
    if rank == 0 || rank > size {
        return Err(Error::InvalidInput(format!(
            "uniform matroid needs 1 <= r <= n, got r = {rank}, n = {size}"
        )));
    }
    let circuits: Vec<Vec<usize>> = if rank < size {
        basis(size, rank + 1)
            .into_iter()
            .map(|m| m.indices())
            .collect()
    } else {
        Vec::new()
    };
    Ok(Matroid::from_circuits(size, &circuits)?.with_source(Source::Builtin))
}

/// Simple rank-3 matroid whose 3-point lines are `lines`: circuits are the lines and the
/// 4-sets containing no line.
pub fn rank3_from_lines(size: usize, lines: &[[usize; 3]]) -> Result<Matroid> {
    let line_masks: Vec<u64> = lines
        .iter()
        .map(|l| l.iter().fold(0u64, |acc, &i| acc | 1 << i))
        .collect();
    let mut circuits: Vec<Vec<usize>> = lines.iter().map(|l| l.to_vec()).collect();
    for quad in basis(size, 4) {
        if line_masks.iter().all(|&l| quad.0 & l != l) {
            circuits.push(quad.indices());
        }
    }
    Matroid::from_circuits(size, &circuits)
}

pub fn fano() -> Matroid {
    let lines: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
    rank3_from_lines(7, &lines)
        .expect("valid fixture")
        .with_source(Source::Builtin)
}

pub fn nonfano() -> Matroid {
    Matroid::from_matrix(&[
        vec![1, 0, 0, 1, 1, 0, 1],
        vec![0, 1, 0, 1, 0, 1, 1],
        vec![0, 0, 1, 0, 1, 1, 1],
    ])
    .expect("valid fixture")
    .with_source(Source::Builtin)
}

/// Looks up a built-in matroid by name.
pub fn fixture(name: &str) -> Option<Result<Matroid>> {
    match name {
        "m1" => Some(Ok(m1())),
        "m2" => Some(Ok(m2())),
        "k4" => Some(Ok(k4())),
        "fano" => Some(Ok(fano())),
        "nonfano" => Some(Ok(nonfano())),
        _ => {
            let rest = name.strip_prefix("u_")?;
            let (r, n) = rest.split_once('_')?;
            let (r, n) = (r.parse().ok()?, n.parse().ok()?);
            Some(uniform(r, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_equals_m2() {
        assert_eq!(k4(), m2());
    }

    #[test]
    fn fano_and_nonfano() {
        let f = fano();
        assert_eq!(f.rank(), 3);
        assert_eq!(f.circuits().iter().filter(|c| c.len() == 3).count(), 7);
        assert_eq!(f.circuits().iter().filter(|c| c.len() == 4).count(), 7);
        let nf = nonfano();
        assert_eq!(nf.rank(), 3);
        assert_eq!(nf.circuits().iter().filter(|c| c.len() == 3).count(), 6);
        assert_ne!(f, nf);
        // the non-Fano lines, read off the matrix columns
        let lines = [
            [0, 1, 3],
            [0, 2, 4],
            [1, 2, 5],
            [0, 5, 6],
            [1, 4, 6],
            [2, 3, 6],
        ];
        assert_eq!(rank3_from_lines(7, &lines).unwrap(), nf);
    }

    #[test]
    fn uniform_matroids() {
        let u = uniform(2, 4).unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(u.circuits().len(), 4);
        assert!(uniform(1, 1).unwrap().circuits().is_empty());
        assert!(uniform(0, 3).is_err());
        assert_eq!(fixture("u_3_6").unwrap().unwrap().circuits().len(), 15);
        assert!(fixture("u_x").is_none());
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn standard_fixtures_resolve() {
        for name in STANDARD {
            assert!(fixture(name).unwrap().is_ok(), "{name}");
        }
    }
}
