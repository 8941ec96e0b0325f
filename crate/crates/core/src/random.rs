//! Seeded random linear matroids for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matroid::Matroid;

/// Matroid of an `rows x elements` integer matrix with entries in `[-3, 3]`;
/// zero columns are redrawn.
pub fn random_linear_matroid<R: Rng>(rng: &mut R, rows: usize, elements: usize) -> Matroid {
    let mut matrix = vec![vec![0i64; elements]; rows];
    for j in 0..elements {
        loop {
            for row in matrix.iter_mut() {
                row[j] = rng.gen_range(-3..=3);
            }
            if matrix.iter().any(|r| r[j] != 0) {
                break;
            }
        }
    }
    Matroid::from_matrix(&matrix).expect("no zero columns")
}

/// `count` matroids on 3 to `max_elements` elements, reproducible from `seed`.
pub fn seeded_linear_matroids(seed: u64, count: usize, max_elements: usize) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let elements = rng.gen_range(3..=max_elements.max(3));
            let rows = rng.gen_range(1..=elements.min(4));
            random_linear_matroid(&mut rng, rows, elements)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = seeded_linear_matroids(7, 5, 7);
        let b = seeded_linear_matroids(7, 5, 7);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|m| m.ground_size() <= 7 && m.ground_size() >= 3));
    }
}
