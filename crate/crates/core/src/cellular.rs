//! Cellular chain complexes of cellular posets.
//!
//! Incidence numbers come from the Mayer–Vietoris connecting map of the
//! covering `Ût x = (Ût x − {w}) ∪ Û w`: split the stored generator of
//! `Ût x` into the simplices containing `w` (β) and the rest, and read `∂β`
//! as a multiple of the stored generator of `Ût w`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{homology, poset_homology, ChainComplex, HomologyGroup, SphereClass};
use crate::linalg::SparseMatrix;
use crate::matching::require_cellular;
use crate::par;
use crate::poset::{IntervalKind, Poset};
use crate::simplicial::{order_complex, SimplicialComplex, EMPTY_SIMPLEX};

#[derive(Debug, Clone)]
struct Entry {
    link: SimplicialComplex,
    class: SphereClass,
}

/// One generator of reduced `H_{p-1}(K(Ût x)) ≅ Z` per element of degree
/// `p ≥ 1`. Degree-0 elements use the formal `(-1)`-sphere.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    degrees: Vec<usize>,
    entries: Vec<Option<Entry>>,
}

impl GeneratorTable {
    /// Fails with `NotCellular` unless every `Ût x` has sphere homology of
    /// dimension `deg x - 1`.
    pub fn new(poset: &Poset) -> Result<Self> {
        let degrees = require_cellular(poset)?;
        let entries = par::map_range(poset.len(), |x| {
            if degrees[x] == 0 {
                return Ok(None);
            }
            let link = order_complex(&poset.induced(&poset.interval_set(x, IntervalKind::LowerOpen)));
            let class = SphereClass::new(&link, degrees[x] as i64 - 1)
                .map_err(|_| Error::NotCellular(poset.name(x).to_string()))?;
            Ok(Some(Entry { link, class }))
        });
        Ok(Self {
            degrees,
            entries: entries.into_iter().collect::<Result<_>>()?,
        })
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degrees[x]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// The stored generator of element `x` as `(simplex label, coefficient)`
    /// pairs; `None` for degree 0.
    pub fn generator(&self, x: usize) -> Option<Vec<(String, BigInt)>> {
        self.entries[x].as_ref().map(|e| {
            e.class
                .labels()
                .iter()
                .cloned()
                .zip(e.class.generator().iter().cloned())
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
    }

    /// Negates the stored generator of `x` (no effect in degree 0).
    pub fn flip(&mut self, x: usize) {
        if let Some(e) = &mut self.entries[x] {
            e.class.flip();
        }
    }
}

/// `ε(x, w)` for a cover `w ≺ x` of a cellular poset.
pub fn incidence(poset: &Poset, x: &str, w: &str, table: &GeneratorTable) -> Result<BigInt> {
    let (xi, wi) = (poset.require(x)?, poset.require(w)?);
    if !poset.is_cover(wi, xi) {
        return Err(Error::NotACover(w.to_string(), x.to_string()));
    }
    incidence_by_index(poset, xi, wi, table)
}

pub(crate) fn incidence_by_index(poset: &Poset, x: usize, w: usize, table: &GeneratorTable) -> Result<BigInt> {
    let p = table.degree(x);
    let gx = table.entries[x].as_ref().expect("degree >= 1 has a generator");
    if p == 1 {
        // ∂β is a multiple of the empty simplex, whose class generates
        // the (-1)-sphere; ε is the coefficient of w in g_x. The normalized
        // generator is `first - second`.
        let v = gx.link.vertices().binary_search_by(|v| v.as_str().cmp(poset.name(w))).expect("w lies below x");
        return Ok(gx.class.generator()[v].clone());
    }
    let failure = |reason: String| Error::SolveFailure {
        x: poset.name(x).to_string(),
        w: poset.name(w).to_string(),
        reason,
    };
    let gw = table.entries[w].as_ref().expect("degree >= 1 has a generator");
    let kx = &gx.link;
    let kw = &gw.link;
    let w_name = poset.name(w);
    let w_vertex = kx
        .vertices()
        .binary_search_by(|v| v.as_str().cmp(w_name))
        .expect("w lies below x");
    // ∂β, accumulated in the basis of K(Ût w) in degree p - 2.
    let mut boundary = vec![BigInt::zero(); kw.chain_rank(p as i64 - 2, true)];
    let mut face = Vec::with_capacity(p);
    for (s, c) in kx.simplices(p as i64 - 1).iter().zip(gx.class.generator()) {
        if c.is_zero() || s.binary_search(&w_vertex).is_err() {
            continue;
        }
        for omit in 0..s.len() {
            face.clear();
            let mut inside = true;
            for (k, &v) in s.iter().enumerate() {
                if k == omit {
                    continue;
                }
                match kw.vertices().binary_search(&kx.vertices()[v]) {
                    Ok(i) => face.push(i),
                    Err(_) => inside = false,
                }
            }
            let sign = if omit % 2 == 0 { c.clone() } else { -c.clone() };
            if !inside {
                // Faces containing w (or leaving Û w) must cancel; checked below.
                continue;
            }
            let Some(idx) = kw.simplex_index(&face) else {
                return Err(failure(format!("face {} is not a chain below w", kw.label(&face))));
            };
            boundary[idx] += sign;
        }
    }
    check_cancellation(kx, gx.class.generator(), w_vertex, kw, p).map_err(failure)?;
    Ok(gw.class.coordinate(&boundary))
}

/// Verifies that the faces of β outside `K(Ût w)` cancel, i.e. `∂β` is
/// supported in `K(Ût w)`.
fn check_cancellation(
    kx: &SimplicialComplex,
    g: &[BigInt],
    w_vertex: usize,
    kw: &SimplicialComplex,
    p: usize,
) -> std::result::Result<(), String> {
    let mut stray: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for (s, c) in kx.simplices(p as i64 - 1).iter().zip(g) {
        if c.is_zero() || s.binary_search(&w_vertex).is_err() {
            continue;
        }
        for omit in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|(k, _)| *k != omit).map(|(_, &v)| v).collect();
            let inside = face.iter().all(|&v| kw.vertices().binary_search(&kx.vertices()[v]).is_ok());
            if inside {
                continue;
            }
            let sign = if omit % 2 == 0 { c.clone() } else { -c.clone() };
            *stray.entry(face).or_default() += sign;
        }
    }
    match stray.iter().find(|(_, v)| !v.is_zero()) {
        Some((face, _)) => Err(format!("∂β leaves the lower link at {}", kx.label(face))),
        None => Ok(()),
    }
}

/// Cellular chain complex with one generator per element; see
/// [`cellular_chain_complex_with`].
pub fn cellular_chain_complex(poset: &Poset, augmented: bool) -> Result<ChainComplex> {
    let table = GeneratorTable::new(poset)?;
    cellular_chain_complex_with(poset, &table, augmented)
}

/// `C_p` has the degree-`p` elements in identifier order as basis and
/// `d(x) = Σ_{w≺x} ε(x, w) w`. With `augmented`, degree `-1` holds `∅` and
/// each degree-0 element maps to it with coefficient 1.
pub fn cellular_chain_complex_with(poset: &Poset, table: &GeneratorTable, augmented: bool) -> Result<ChainComplex> {
    let degrees = table.degrees();
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (i, &d) in degrees.iter().enumerate() {
        by_degree[d].push(i);
    }
    let mut position = vec![0usize; poset.len()];
    for members in &by_degree {
        for (k, &i) in members.iter().enumerate() {
            position[i] = k;
        }
    }
    let covers = poset.covers();
    let eps = par::map(&covers, |&(w, x)| incidence_by_index(poset, x, w, table));
    let mut triples: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); top + 1];
    for (&(w, x), e) in covers.iter().zip(eps) {
        triples[degrees[x]].push((position[w], position[x], e?));
    }
    let mut bases = Vec::new();
    let mut differentials = Vec::new();
    if augmented {
        bases.push(vec![EMPTY_SIMPLEX.to_string()]);
        differentials.push(SparseMatrix::zeros(0, 1));
    }
    for (p, members) in by_degree.iter().enumerate() {
        let rows = if p == 0 {
            usize::from(augmented)
        } else {
            by_degree[p - 1].len()
        };
        let d = if p == 0 {
            SparseMatrix::from_triples(rows, members.len(), (0..members.len()).filter(|_| augmented).map(|c| (0, c, BigInt::one())))
        } else {
            SparseMatrix::from_triples(rows, members.len(), std::mem::take(&mut triples[p]))
        };
        bases.push(members.iter().map(|&i| poset.name(i).to_string()).collect());
        differentials.push(d);
    }
    let min = if augmented { -1 } else { 0 };
    let complex = ChainComplex::new(min, bases, differentials, augmented).expect("shapes follow the degree partition");
    complex.check_d_squared().map_err(|e| match e {
        Error::NotAComplex { degree } => Error::ChainRuleViolation(degree),
        other => other,
    })?;
    Ok(complex)
}

/// One comparison between the homology of a skeleton and of the whole poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonCheck {
    pub skeleton: usize,
    pub degree: i64,
    /// `"equal"` for `r < p`, `"vanishes"` for `r > p`.
    pub relation: &'static str,
    pub skeleton_group: HomologyGroup,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonScan {
    pub checks: Vec<SkeletonCheck>,
    pub all_pass: bool,
}

/// Compares reduced `H_r(K(X^p))` with `H_r(K(X))` for `r < p` and checks it
/// vanishes for `r > p`, over every skeleton.
pub fn skeleton_homology_scan(poset: &Poset) -> Result<SkeletonScan> {
    let degrees = require_cellular(poset)?;
    let top = degrees.iter().copied().max().unwrap_or(0);
    let whole = poset_homology(poset, true);
    let skeleta: Vec<usize> = (0..=top).collect();
    let per_skeleton = par::map(&skeleta, |&p| -> Result<_> {
        let sk = poset.skeleton(p)?;
        Ok(homology(&order_complex(&sk).chain_complex(true)).expect("simplicial"))
    });
    let mut checks = Vec::new();
    for (p, h) in skeleta.iter().zip(per_skeleton) {
        let h = h?;
        for r in -1..=top as i64 {
            let (relation, holds) = match r.cmp(&(*p as i64)) {
                std::cmp::Ordering::Less => ("equal", h.group(r) == whole.group(r)),
                std::cmp::Ordering::Greater => ("vanishes", h.group(r).is_zero()),
                std::cmp::Ordering::Equal => continue,
            };
            checks.push(SkeletonCheck {
                skeleton: *p,
                degree: r,
                relation,
                skeleton_group: h.group(r),
                holds,
            });
        }
    }
    let all_pass = checks.iter().all(|c| c.holds);
    Ok(SkeletonScan { checks, all_pass })
}
