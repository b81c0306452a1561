//! Abstract simplicial complexes, order complexes and face posets.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::linalg::SparseMatrix;
use crate::poset::{validate_identifier, Poset};

/// Label of the empty simplex spanning the augmentation degree.
pub const EMPTY_SIMPLEX: &str = "∅";

/// A finite abstract simplicial complex.
///
/// Vertices are sorted lexicographically; a simplex is the ascending list of
/// its vertex indices, and simplices of each dimension are kept in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `simplices`; non-maximal ones are dropped.
    pub fn from_facets<I, F, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let raw: Vec<Vec<String>> = simplices
            .into_iter()
            .map(|f| f.into_iter().map(|v| v.as_ref().to_string()).collect())
            .collect();
        let mut names = BTreeSet::new();
        for v in raw.iter().flatten() {
            validate_identifier(v)?;
            names.insert(v.clone());
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut facets: Vec<Vec<usize>> = raw
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| {
                let mut s: Vec<usize> = f.iter().map(|v| index[v.as_str()]).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        facets.dedup();
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            if !maximal.iter().any(|g| is_subset(&f, g)) {
                maximal.push(f);
            }
        }
        Ok(Self::from_maximal(vertices, maximal))
    }

    /// `facets` must already be pairwise non-contained and cover every vertex.
    pub(crate) fn from_maximal(vertices: Vec<String>, mut facets: Vec<Vec<usize>>) -> Self {
        facets.sort();
        let top = facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
        for f in &facets {
            for mask in 1u64..(1u64 << f.len()) {
                let s: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                by_dim[s.len() - 1].insert(s);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let lookup = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Self {
            vertices,
            facets,
            simplices,
            lookup,
        }
    }

    pub fn empty() -> Self {
        Self::from_maximal(Vec::new(), Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Maximal simplices in lexicographic order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Facets as vertex-name lists.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    /// Simplices of dimension `dim` in lexicographic order.
    pub fn simplices(&self, dim: i64) -> &[Vec<usize>] {
        if dim < 0 {
            return &[];
        }
        self.simplices
            .get(dim as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        let dim = simplex.len().checked_sub(1)?;
        self.lookup.get(dim)?.get(simplex).copied()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// Vertex names joined by `.`.
    pub fn label(&self, simplex: &[usize]) -> String {
        if simplex.is_empty() {
            return EMPTY_SIMPLEX.to_string();
        }
        simplex
            .iter()
            .map(|&v| self.vertices[v].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Number of basis chains in degree `p`, counting the empty simplex in
    /// degree `-1` when `augmented`.
    pub fn chain_rank(&self, p: i64, augmented: bool) -> usize {
        match p {
            -1 if augmented => 1,
            p if p < 0 => 0,
            p => self.simplices(p).len(),
        }
    }

    /// Basis labels of degree `p`.
    pub fn basis_labels(&self, p: i64, augmented: bool) -> Vec<String> {
        if p == -1 {
            return if augmented {
                vec![EMPTY_SIMPLEX.to_string()]
            } else {
                Vec::new()
            };
        }
        self.simplices(p).iter().map(|s| self.label(s)).collect()
    }

    /// Simplicial boundary `C_p -> C_{p-1}`: omitting the `i`-th vertex of the
    /// sorted vertex list carries sign `(-1)^i`. With `augmented`, vertices map
    /// to the empty simplex with coefficient 1.
    pub fn boundary_matrix(&self, p: i64, augmented: bool) -> SparseMatrix {
        let rows = self.chain_rank(p - 1, augmented);
        let cols = self.chain_rank(p, augmented);
        if p <= 0 {
            if p == 0 && augmented {
                return SparseMatrix::from_triples(
                    rows,
                    cols,
                    (0..cols).map(|c| (0, c, BigInt::one())),
                );
            }
            return SparseMatrix::zeros(rows, cols);
        }
        let faces = &self.lookup[p as usize - 1];
        let mut triples = Vec::with_capacity(cols * (p as usize + 1));
        for (c, s) in self.simplices(p).iter().enumerate() {
            let mut face = Vec::with_capacity(s.len() - 1);
            for omit in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|(k, _)| *k != omit).map(|(_, &v)| v));
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                triples.push((faces[&face], c, BigInt::from(sign)));
            }
        }
        SparseMatrix::from_triples(rows, cols, triples)
    }

    /// Simplicial chain complex in degrees `0..=dim` (plus `-1` when augmented).
    pub fn chain_complex(&self, augmented: bool) -> ChainComplex {
        let min = if augmented { -1 } else { 0 };
        let top = self.dimension().max(min);
        let bases = (min..=top).map(|p| self.basis_labels(p, augmented)).collect();
        let differentials = (min..=top)
            .map(|p| self.boundary_matrix(p, augmented))
            .collect();
        ChainComplex::new(min, bases, differentials, augmented)
            .expect("simplicial boundary matrices have matching shapes")
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// `K(X)`: the simplicial complex of nonempty chains of `poset`. Vertex
/// indices coincide with element indices of `poset`.
pub fn order_complex(poset: &Poset) -> SimplicialComplex {
    let mut facets = Vec::new();
    let mut stack = Vec::new();
    for m in poset.minimal_elements() {
        extend_chains(poset, m, &mut stack, &mut facets);
    }
    SimplicialComplex::from_maximal(poset.names().to_vec(), facets)
}

fn extend_chains(poset: &Poset, x: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    stack.push(x);
    let ups = poset.upper_covers(x);
    if ups.is_empty() {
        let mut chain = stack.clone();
        chain.sort_unstable();
        out.push(chain);
    } else {
        for &y in ups {
            extend_chains(poset, y, stack, out);
        }
    }
    stack.pop();
}

/// `X(K)`: simplices ordered by inclusion, named by their `.`-joined vertex
/// lists.
pub fn face_poset(complex: &SimplicialComplex) -> Result<Poset> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for dim in 0..=complex.dimension() {
        for s in complex.simplices(dim) {
            let label = complex.label(s);
            if s.len() > 1 {
                for omit in 0..s.len() {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != omit)
                        .map(|(_, &v)| v)
                        .collect();
                    covers.push((complex.label(&face), label.clone()));
                }
            }
            names.push(label);
        }
    }
    Poset::new(names, covers)
}

/// The boundary of the standard `n`-simplex on vertices `v0..vn`.
pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    let verts: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<String>> = (0..=n)
        .map(|omit| {
            verts
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != omit)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(facets).expect("generated names are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    fn chain3() -> Poset {
        Poset::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn order_complex_of_chain_is_simplex() {
        let k = order_complex(&chain3());
        assert_eq!(k.facet_names(), vec![vec!["a", "b", "c"]]);
    }

    #[test]
    fn order_complex_of_square_is_four_cycle() {
        let s0 = Poset::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        let t0 = Poset::new(["c", "d"], Vec::<(&str, &str)>::new()).unwrap();
        let k = order_complex(&s0.join(&t0).unwrap());
        assert_eq!(k.facets().len(), 4);
        assert!(k.facets().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn non_maximal_facets_are_dropped() {
        let k = SimplicialComplex::from_facets([vec!["a", "b"], vec!["a"], vec!["b", "a", "c"]]).unwrap();
        assert_eq!(k.facet_names(), vec![vec!["a", "b", "c"]]);
        assert_eq!(k.simplex_count(), 7);
    }

    #[test]
    fn face_poset_sizes() {
        let tri = SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["c", "a"]]).unwrap();
        let x = face_poset(&tri).unwrap();
        assert_eq!(x.len(), 6);
        assert_eq!(x.cover_count(), 6);
        let edge = face_poset(&SimplicialComplex::from_facets([["a", "b"]]).unwrap()).unwrap();
        assert_eq!(edge.names(), ["a", "a.b", "b"]);
        assert_eq!(edge.cover_count(), 2);
        assert_eq!(face_poset(&simplex_boundary(3)).unwrap().len(), 14);
        assert_eq!(face_poset(&SimplicialComplex::empty()).unwrap_err(), Error::EmptyComplex);
    }

    #[test]
    fn four_cycle_boundary_rank() {
        let k = SimplicialComplex::from_facets([["A", "p"], ["A", "q"], ["B", "p"], ["B", "q"]]).unwrap();
        let d1 = k.boundary_matrix(1, false);
        assert_eq!((d1.rows(), d1.cols()), (4, 4));
        assert_eq!(crate::linalg::rank(&d1), 3);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = simplex_boundary(2);
        let c = k.chain_complex(true);
        c.check_d_squared().unwrap();
        let k = simplex_boundary(4);
        k.chain_complex(true).check_d_squared().unwrap();
    }

    #[test]
    fn barycentric_subdivision_keeps_homology() {
        let k = SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["c", "a"], ["c", "d"]]).unwrap();
        let sd = order_complex(&face_poset(&k).unwrap());
        assert_eq!(
            homology(&k.chain_complex(true)).unwrap(),
            homology(&sd.chain_complex(true)).unwrap()
        );
    }
}
