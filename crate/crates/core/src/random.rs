//! Seeded random instances: small simplicial complexes, their face posets,
//! and arbitrary small posets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::Poset;
use crate::simplicial::{face_poset, SimplicialComplex};

/// A complex of dimension exactly `dim` on at most `max_vertices` vertices
/// (`v00`, `v01`, ...) with three to eight facets. Lower-dimensional facets
/// appear occasionally.
pub fn random_complex(seed: u64, dim: usize, max_vertices: usize) -> SimplicialComplex {
    assert!(max_vertices > dim, "need at least dim + 1 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(dim + 1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let facets = rng.gen_range(3..=8);
    let mut out: Vec<Vec<String>> = Vec::with_capacity(facets);
    for k in 0..facets {
        let size = if k == 0 || rng.gen_bool(0.75) {
            dim + 1
        } else {
            rng.gen_range(1..=dim)
        };
        let mut idx = sample(&mut rng, n, size).into_vec();
        idx.sort_unstable();
        out.push(idx.into_iter().map(|i| names[i].clone()).collect());
    }
    SimplicialComplex::from_facets(out).expect("generated names are valid")
}

/// Face poset of [`random_complex`].
pub fn random_face_poset(seed: u64, dim: usize, max_vertices: usize) -> Poset {
    face_poset(&random_complex(seed, dim, max_vertices)).expect("complex is nonempty")
}

/// A poset on `e00..` (at most `max_elements`) whose order is a random
/// relation compatible with index order, reduced to its covers.
pub fn random_poset(seed: u64, max_elements: usize, density: f64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_elements.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("e{i:02}")).collect();
    // less[i][j] for i < j, closed transitively.
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            less[i][j] = rng.gen_bool(density);
        }
    }
    for j in 0..n {
        for i in (0..j).rev() {
            if less[i][j] {
                continue;
            }
            less[i][j] = (i + 1..j).any(|k| less[i][k] && less[k][j]);
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if less[i][j] && !(i + 1..j).any(|k| less[i][k] && less[k][j]) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Poset::new(names, covers).expect("reduction yields covers")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        for seed in 0..20 {
            let k = random_complex(seed, 3, 12);
            assert_eq!(k.dimension(), 3);
            assert!(k.vertices().len() <= 12);
            assert_eq!(k, random_complex(seed, 3, 12));
            let p = random_poset(seed, 12, 0.3);
            assert!(p.len() <= 12);
            assert_eq!(p, random_poset(seed, 12, 0.3));
        }
    }
}
