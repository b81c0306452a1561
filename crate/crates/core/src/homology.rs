//! Chain complexes, integer homology and explicit sphere generators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, smith_normal_form, DenseMatrix, SparseMatrix};
use crate::par;
use crate::poset::Poset;
use crate::simplicial::{order_complex, SimplicialComplex};

/// A bounded complex of free abelian groups with chosen ordered bases.
///
/// `differential(p)` maps `C_p -> C_{p-1}`; the lowest degree maps to the
/// zero group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    min_degree: i64,
    bases: Vec<Vec<String>>,
    differentials: Vec<SparseMatrix>,
    augmented: bool,
}

impl ChainComplex {
    /// `bases[i]` and `differentials[i]` belong to degree `min_degree + i`.
    pub fn new(
        min_degree: i64,
        bases: Vec<Vec<String>>,
        differentials: Vec<SparseMatrix>,
        augmented: bool,
    ) -> Result<Self, String> {
        if bases.len() != differentials.len() {
            return Err("one differential per degree is required".into());
        }
        for (i, d) in differentials.iter().enumerate() {
            let below = if i == 0 { 0 } else { bases[i - 1].len() };
            if d.cols() != bases[i].len() || d.rows() != below {
                return Err(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    min_degree + i as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    bases[i].len()
                ));
            }
        }
        Ok(Self {
            min_degree,
            bases,
            differentials,
            augmented,
        })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.bases.len() as i64 - 1
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    fn slot(&self, p: i64) -> Option<usize> {
        (p >= self.min_degree && p <= self.max_degree()).then(|| (p - self.min_degree) as usize)
    }

    /// Basis labels in degree `p` (empty outside the range).
    pub fn basis(&self, p: i64) -> &[String] {
        self.slot(p).map(|i| self.bases[i].as_slice()).unwrap_or(&[])
    }

    /// `d_p: C_p -> C_{p-1}`; a zero matrix outside the range.
    pub fn differential(&self, p: i64) -> SparseMatrix {
        match self.slot(p) {
            Some(i) => self.differentials[i].clone(),
            None => SparseMatrix::zeros(self.basis(p - 1).len(), self.basis(p).len()),
        }
    }

    /// Fails with the first degree where `d_{p} ∘ d_{p+1} ≠ 0`.
    pub fn check_d_squared(&self) -> Result<()> {
        for i in 1..self.differentials.len() {
            if !self.differentials[i - 1].mul(&self.differentials[i]).is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.min_degree + i as i64 - 1,
                });
            }
        }
        Ok(())
    }

    /// JSON dump: per degree the basis labels and the differential as
    /// row-major `[row, col, value]` triples.
    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> = (self.min_degree..=self.max_degree())
            .map(|p| {
                let d = self.differential(p);
                let triples: Vec<Value> = d
                    .triples_row_major()
                    .into_iter()
                    .map(|(r, c, v)| json!([r, c, int_json(&v)]))
                    .collect();
                (
                    p.to_string(),
                    json!({
                        "basis": self.basis(p),
                        "differential": {
                            "rows": d.rows(),
                            "cols": d.cols(),
                            "entries": triples,
                        },
                    }),
                )
            })
            .collect();
        json!({ "augmented": self.augmented, "degrees": degrees })
    }
}

/// One homology group `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one, ascending, each dividing the next.
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology of a chain complex by degree.
///
/// Degrees `0..=dim` are always listed; degree `-1` only when nonzero (the
/// reduced homology of the empty complex). Equality ignores zero groups.
#[derive(Debug, Clone, Eq)]
pub struct HomologySummary {
    pub reduced: bool,
    pub groups: BTreeMap<i64, HomologyGroup>,
}

impl PartialEq for HomologySummary {
    fn eq(&self, other: &Self) -> bool {
        let nonzero = |s: &Self| -> Vec<(i64, HomologyGroup)> {
            s.groups
                .iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(p, g)| (*p, g.clone()))
                .collect()
        };
        self.reduced == other.reduced && nonzero(self) == nonzero(other)
    }
}

impl HomologySummary {
    pub fn group(&self, p: i64) -> HomologyGroup {
        self.groups.get(&p).cloned().unwrap_or_default()
    }

    pub fn betti(&self, p: i64) -> usize {
        self.groups.get(&p).map_or(0, |g| g.betti)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_zero)
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|g| !g.torsion.is_empty())
    }

    /// Integer homology of a `dim`-sphere: `Z` in degree `dim`, zero elsewhere.
    pub fn is_sphere(&self, dim: i64) -> bool {
        self.groups.iter().all(|(p, g)| {
            if *p == dim {
                g.betti == 1 && g.torsion.is_empty()
            } else {
                g.is_zero()
            }
        }) && self.betti(dim) == 1
    }

    /// Betti numbers for degrees `0..=top`.
    pub fn betti_vector(&self, top: usize) -> Vec<usize> {
        (0..=top as i64).map(|p| self.betti(p)).collect()
    }

    pub fn to_json(&self) -> Value {
        let groups: serde_json::Map<String, Value> = self
            .groups
            .iter()
            .map(|(p, g)| {
                (
                    p.to_string(),
                    json!({
                        "betti": g.betti,
                        "torsion": g.torsion.iter().map(int_json).collect::<Vec<_>>(),
                    }),
                )
            })
            .collect();
        json!({ "reduced": self.reduced, "groups": groups })
    }
}

pub(crate) fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(int_json))
}

/// Integers serialize as JSON numbers when they fit 64 bits, else as
/// decimal strings.
pub(crate) fn int_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => json!(v.to_string()),
    }
}

/// Homology of `complex` from Smith normal forms of its differentials.
pub fn homology(complex: &ChainComplex) -> Result<HomologySummary> {
    complex.check_d_squared()?;
    let factors: Vec<Vec<BigInt>> = par::map(&complex.differentials, invariant_factors);
    let mut groups = BTreeMap::new();
    for (i, basis) in complex.bases.iter().enumerate() {
        let p = complex.min_degree + i as i64;
        let rank_out = factors[i].len();
        let incoming: &[BigInt] = factors.get(i + 1).map(Vec::as_slice).unwrap_or(&[]);
        let group = HomologyGroup {
            betti: basis.len() - rank_out - incoming.len(),
            torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
        };
        if p >= 0 || !group.is_zero() {
            groups.insert(p, group);
        }
    }
    Ok(HomologySummary {
        reduced: complex.augmented,
        groups,
    })
}

/// `H_*(K(X))`, reduced or not.
pub fn poset_homology(poset: &Poset, reduced: bool) -> HomologySummary {
    homology(&order_complex(poset).chain_complex(reduced)).expect("simplicial complexes satisfy d∘d = 0")
}

/// A complex whose reduced homology in one degree is infinite cyclic,
/// together with a normalized generator and the coordinate functional that
/// reads off a cycle's class as a multiple of it.
#[derive(Debug, Clone)]
pub struct SphereClass {
    degree: i64,
    labels: Vec<String>,
    generator: Vec<BigInt>,
    functional: Vec<BigInt>,
}

impl SphereClass {
    /// Requires reduced `H_p(K) ≅ Z`.
    pub fn new(complex: &SimplicialComplex, p: i64) -> Result<Self> {
        let n = complex.chain_rank(p, true);
        let not_cyclic = Error::NotInfiniteCyclic { degree: p };
        if n == 0 {
            return Err(not_cyclic);
        }
        let outgoing = complex.boundary_matrix(p, true).to_dense();
        let incoming = complex.boundary_matrix(p + 1, true).to_dense();
        let cycles = smith_normal_form(&outgoing);
        let r = cycles.rank;
        let k = n - r;
        if k == 0 {
            return Err(not_cyclic);
        }
        // Cycles Z_p have basis right[:, r..]; boundaries in those
        // coordinates are rows r.. of right_inverse * d_{p+1}.
        let moved = cycles.right_inverse.mul(&incoming);
        let mut coords = DenseMatrix::zeros(k, moved.cols());
        for i in 0..k {
            for j in 0..moved.cols() {
                coords[(i, j)] = moved[(r + i, j)].clone();
            }
        }
        let quotient = smith_normal_form(&coords);
        if quotient.rank + 1 != k || quotient.diagonal.iter().any(|d| !d.is_one()) {
            return Err(not_cyclic);
        }
        let free = k - 1;
        let lift = quotient.left_inverse.column(free);
        let mut generator = vec![BigInt::zero(); n];
        for (j, c) in lift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, g) in generator.iter_mut().enumerate() {
                *g += c * &cycles.right[(i, r + j)];
            }
        }
        let mut functional = vec![BigInt::zero(); n];
        for (j, c) in quotient.left.row(free).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, f) in functional.iter_mut().enumerate() {
                *f += c * &cycles.right_inverse[(r + j, i)];
            }
        }
        let first = generator.iter().find(|c| !c.is_zero()).expect("generator is nonzero");
        if first.is_negative() {
            for v in generator.iter_mut().chain(functional.iter_mut()) {
                *v = -std::mem::take(v);
            }
        }
        Ok(Self {
            degree: p,
            labels: complex.basis_labels(p, true),
            generator,
            functional,
        })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Labels of the degree-`p` basis the generator is written in.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Generator coefficients aligned with [`SphereClass::labels`].
    pub fn generator(&self) -> &[BigInt] {
        &self.generator
    }

    /// The multiple `m` with `[z] = m·[generator]`. `z` must be a cycle.
    pub fn coordinate(&self, z: &[BigInt]) -> BigInt {
        self.functional.iter().zip(z).map(|(a, b)| a * b).sum()
    }

    /// Replaces the generator by its negative.
    pub fn flip(&mut self) {
        for v in self.generator.iter_mut().chain(self.functional.iter_mut()) {
            *v = -std::mem::take(v);
        }
    }
}

/// A cycle generating reduced `H_p(K) ≅ Z`, normalized so that its first
/// nonzero coefficient (in lexicographic simplex order) is positive.
pub fn sphere_generator(complex: &SimplicialComplex, p: i64) -> Result<Vec<BigInt>> {
    Ok(SphereClass::new(complex, p)?.generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::simplex_boundary;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn point_is_reduced_acyclic() {
        let k = SimplicialComplex::from_facets([["a"]]).unwrap();
        assert!(homology(&k.chain_complex(true)).unwrap().is_acyclic());
        let h = homology(&k.chain_complex(false)).unwrap();
        assert_eq!(h.betti(0), 1);
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let h = homology(&SimplicialComplex::empty().chain_complex(true)).unwrap();
        assert!(h.is_sphere(-1));
        assert_eq!(h.betti(-1), 1);
    }

    #[test]
    fn sphere_boundaries() {
        for n in 1..=4 {
            let h = homology(&simplex_boundary(n).chain_complex(true)).unwrap();
            assert!(h.is_sphere(n as i64 - 1), "n = {n}: {h:?}");
        }
    }

    #[test]
    fn projective_plane_has_torsion() {
        // Six-vertex real projective plane.
        let facets = [
            ["1", "2", "3"],
            ["1", "3", "4"],
            ["1", "4", "5"],
            ["1", "5", "6"],
            ["1", "2", "6"],
            ["2", "3", "5"],
            ["2", "4", "5"],
            ["2", "4", "6"],
            ["3", "4", "6"],
            ["3", "5", "6"],
        ];
        let k = SimplicialComplex::from_facets(facets).unwrap();
        let h = homology(&k.chain_complex(false)).unwrap();
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.group(1), HomologyGroup { betti: 0, torsion: ints(&[2]) });
        assert!(h.group(2).is_zero());
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let d1 = SparseMatrix::from_triples(1, 1, [(0, 0, BigInt::one())]);
        let d2 = SparseMatrix::from_triples(1, 1, [(0, 0, BigInt::one())]);
        let c = ChainComplex::new(
            0,
            vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
            vec![SparseMatrix::zeros(0, 1), d1, d2],
            false,
        )
        .unwrap();
        assert_eq!(homology(&c).unwrap_err(), Error::NotAComplex { degree: 1 });
    }

    #[test]
    fn zero_sphere_generator() {
        let k = SimplicialComplex::from_facets([["a"], ["b"]]).unwrap();
        assert_eq!(sphere_generator(&k, 0).unwrap(), ints(&[1, -1]));
    }

    #[test]
    fn four_cycle_generator() {
        // Edges in lexicographic order: A.p, A.q, B.p, B.q.
        let k = SimplicialComplex::from_facets([["A", "p"], ["A", "q"], ["B", "p"], ["B", "q"]]).unwrap();
        assert_eq!(sphere_generator(&k, 1).unwrap(), ints(&[1, -1, -1, 1]));
    }

    #[test]
    fn triangle_boundary_generator() {
        // Edges v0.v1, v0.v2, v1.v2; the cycle is v0v1 - v0v2 + v1v2.
        let k = simplex_boundary(2);
        let g = sphere_generator(&k, 1).unwrap();
        assert_eq!(g, ints(&[1, -1, 1]));
        assert!(k.boundary_matrix(1, true).apply(&g).iter().all(Zero::is_zero));
    }

    #[test]
    fn coordinate_of_generator_is_one() {
        let k = simplex_boundary(3);
        let mut class = SphereClass::new(&k, 2).unwrap();
        assert_eq!(class.coordinate(&class.generator.clone()), BigInt::one());
        let twice: Vec<BigInt> = class.generator().iter().map(|v| v * 2).collect();
        assert_eq!(class.coordinate(&twice), BigInt::from(2));
        class.flip();
        assert_eq!(class.coordinate(&twice), BigInt::from(-2));
    }

    #[test]
    fn generator_requires_infinite_cyclic() {
        let k = SimplicialComplex::from_facets([["a", "b"]]).unwrap();
        assert_eq!(
            sphere_generator(&k, 1).unwrap_err(),
            Error::NotInfiniteCyclic { degree: 1 }
        );
        let wedge = SimplicialComplex::from_facets([["a"], ["b"], ["c"]]).unwrap();
        assert!(sphere_generator(&wedge, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let h = homology(&simplex_boundary(2).chain_complex(true)).unwrap();
        assert_eq!(
            h.to_json().to_string(),
            r#"{"groups":{"0":{"betti":0,"torsion":[]},"1":{"betti":1,"torsion":[]}},"reduced":true}"#
        );
    }
}
