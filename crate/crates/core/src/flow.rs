//! Discrete gradient flow, the Morse complex of critical cells, and the
//! Morse inequalities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cellular::{cellular_chain_complex_with, incidence_by_index, GeneratorTable};
use crate::error::{Error, Result};
use crate::homology::{homology, int_json, poset_homology, ChainComplex, HomologySummary};
use crate::linalg::{smith_normal_form, solve_full_column_rank, DenseMatrix, SparseMatrix};
use crate::matching::{morse_check, resolve, Matching, Resolved};
use crate::par;
use crate::poset::Poset;
use crate::simplicial::EMPTY_SIMPLEX;

/// `V`, `φ = 1 + dV + Vd` and its stable power, per degree `0..=top` of the
/// (unaugmented) cellular chain complex.
#[derive(Debug, Clone)]
pub struct FlowData {
    /// Cellular basis per degree.
    pub bases: Vec<Vec<String>>,
    /// Cellular differential `d_p: C_p -> C_{p-1}` per degree.
    pub differential: Vec<SparseMatrix>,
    /// `V_p: C_p -> C_{p+1}`.
    pub v: Vec<SparseMatrix>,
    pub phi: Vec<SparseMatrix>,
    /// `φ^N` with `φ^{N+1} = φ^N`.
    pub phi_stable: Vec<SparseMatrix>,
    pub n_stable: Vec<usize>,
}

impl FlowData {
    pub fn top_degree(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    fn d(&self, p: usize) -> &SparseMatrix {
        &self.differential[p]
    }
}

struct Prepared {
    table: GeneratorTable,
    matching: Resolved,
}

/// Cellularity, the Morse condition and admissibility of every pair.
fn prepare(poset: &Poset, matching: &Matching) -> Result<Prepared> {
    let table = GeneratorTable::new(poset)?;
    let report = morse_check(poset, matching);
    if !report.is_matching {
        return Err(Error::NotMorse(report.matching_errors.join("; ")));
    }
    if let Some(cycle) = report.cycle_witness {
        return Err(Error::NotMorse(format!("cycle {}", cycle.join(" -> "))));
    }
    if let Some((w, x)) = report.inadmissible_edges.into_iter().next() {
        return Err(Error::InadmissiblePair(w, x));
    }
    let (resolved, _) = resolve(poset, matching);
    Ok(Prepared { table, matching: resolved })
}

/// Builds `V` and `φ` from the cellular complex and iterates `φ` until two
/// consecutive powers agree. The iteration bound is `|X|²` per degree.
pub fn build_flow(poset: &Poset, matching: &Matching) -> Result<FlowData> {
    let prepared = prepare(poset, matching)?;
    flow_from(poset, &prepared)
}

fn flow_from(poset: &Poset, prepared: &Prepared) -> Result<FlowData> {
    let table = &prepared.table;
    let complex = cellular_chain_complex_with(poset, table, false)?;
    let top = complex.max_degree().max(0) as usize;
    let bases: Vec<Vec<String>> = (0..=top).map(|p| complex.basis(p as i64).to_vec()).collect();
    let differential: Vec<SparseMatrix> = (0..=top).map(|p| complex.differential(p as i64)).collect();
    let degrees = table.degrees();
    let mut position = vec![0usize; poset.len()];
    for basis in &bases {
        for (k, name) in basis.iter().enumerate() {
            position[poset.index_of(name).expect("basis names are elements")] = k;
        }
    }
    let mut v_triples: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); top + 1];
    for (x, y) in prepared.matching.pairs() {
        let eps = incidence_by_index(poset, y, x, table)?;
        v_triples[degrees[x]].push((position[y], position[x], -eps));
    }
    let v: Vec<SparseMatrix> = (0..=top)
        .map(|p| {
            let rows = bases.get(p + 1).map_or(0, Vec::len);
            SparseMatrix::from_triples(rows, bases[p].len(), std::mem::take(&mut v_triples[p]))
        })
        .collect();
    let phi: Vec<SparseMatrix> = (0..=top)
        .map(|p| {
            let n = bases[p].len();
            let mut m = SparseMatrix::identity(n);
            if p < top {
                m = m.add(&differential[p + 1].mul(&v[p]));
            }
            if p > 0 {
                m = m.add(&v[p - 1].mul(&differential[p]));
            }
            m
        })
        .collect();
    let bound = poset.len() * poset.len();
    let stable = par::map(&phi, |f| stabilize(f, bound.max(1)));
    let mut phi_stable = Vec::with_capacity(stable.len());
    let mut n_stable = Vec::with_capacity(stable.len());
    for s in stable {
        let (m, n) = s?;
        phi_stable.push(m);
        n_stable.push(n);
    }
    Ok(FlowData {
        bases,
        differential,
        v,
        phi,
        phi_stable,
        n_stable,
    })
}

/// Smallest `N ≥ 1` with `φ^{N+1} = φ^N`, and that power.
fn stabilize(phi: &SparseMatrix, bound: usize) -> Result<(SparseMatrix, usize)> {
    let mut power = phi.clone();
    for n in 1..=bound {
        let next = phi.mul(&power);
        if next == power {
            return Ok((power, n));
        }
        power = next;
    }
    Err(Error::StabilizationOverrun(bound))
}

/// The Morse complex on the stabilized images of critical cells.
#[derive(Debug, Clone)]
pub struct MorseComplexResult {
    /// Critical elements per degree, in identifier order.
    pub critical_basis: Vec<Vec<String>>,
    /// Augmented complex on the critical basis (degree `-1` is `∅`).
    pub complex: ChainComplex,
    /// Reduced homology of the Morse complex.
    pub homology: HomologySummary,
    pub morse_counts: Vec<usize>,
    pub flow: FlowData,
}

impl MorseComplexResult {
    /// `d_p` on the critical basis.
    pub fn differential(&self, p: i64) -> SparseMatrix {
        self.complex.differential(p)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "critical_basis": self.critical_basis,
            "morse_counts": self.morse_counts,
            "complex": self.complex.to_json(),
            "homology": self.homology.to_json(),
            "n_stable": self.flow.n_stable,
        })
    }
}

/// Expresses the cellular differential on `{φ^N(x) : x critical}` by exact
/// integer solving.
pub fn morse_complex(poset: &Poset, matching: &Matching) -> Result<MorseComplexResult> {
    let prepared = prepare(poset, matching)?;
    let flow = flow_from(poset, &prepared)?;
    let top = flow.top_degree();
    let critical_idx: Vec<Vec<usize>> = (0..=top)
        .map(|p| {
            flow.bases[p]
                .iter()
                .enumerate()
                .filter(|(_, name)| !prepared.matching.is_matched(poset.index_of(name).expect("element")))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    // Columns φ^N(x) for critical x, per degree.
    let images: Vec<Vec<Vec<BigInt>>> = (0..=top)
        .map(|p| critical_idx[p].iter().map(|&k| flow.phi_stable[p].column_dense(k)).collect())
        .collect();
    let degrees: Vec<usize> = (0..=top).collect();
    let ranks = par::map(&degrees, |&p| rank(&dense_from_columns(flow.bases[p].len(), &images[p])));
    if let Some(p) = degrees.iter().position(|&p| ranks[p] < images[p].len()) {
        return Err(Error::BasisDegenerate(p as i64));
    }
    let solved = par::map(&degrees, |&p| -> Result<SparseMatrix> {
        let cols = images[p].len();
        if p == 0 {
            // Augmentation of φ^N(x): the sum of its coefficients.
            let triples = images[0]
                .iter()
                .enumerate()
                .map(|(c, col)| (0, c, col.iter().sum::<BigInt>()));
            return Ok(SparseMatrix::from_triples(1, cols, triples));
        }
        let below = &images[p - 1];
        let rows = below.len();
        let basis = dense_from_columns(flow.bases[p - 1].len(), below);
        let mut triples = Vec::new();
        for (c, col) in images[p].iter().enumerate() {
            let target = flow.d(p).apply(col);
            match solve_full_column_rank(&basis, &target) {
                Err(_) => return Err(Error::BasisDegenerate(p as i64 - 1)),
                Ok(None) => {
                    return Err(Error::SolveFailure {
                        x: flow.bases[p][critical_idx[p][c]].clone(),
                        w: format!("critical basis of degree {}", p - 1),
                        reason: "boundary has no integral expansion".into(),
                    })
                }
                Ok(Some(x)) => triples.extend(x.into_iter().enumerate().map(|(r, v)| (r, c, v))),
            }
        }
        Ok(SparseMatrix::from_triples(rows, cols, triples))
    });
    let mut bases = vec![vec![EMPTY_SIMPLEX.to_string()]];
    let mut differentials = vec![SparseMatrix::zeros(0, 1)];
    let critical_basis: Vec<Vec<String>> = (0..=top)
        .map(|p| critical_idx[p].iter().map(|&k| flow.bases[p][k].clone()).collect())
        .collect();
    for (p, d) in solved.into_iter().enumerate() {
        bases.push(critical_basis[p].clone());
        differentials.push(d?);
    }
    let complex = ChainComplex::new(-1, bases, differentials, true).expect("shapes follow the critical basis");
    let homology = homology(&complex)?;
    Ok(MorseComplexResult {
        morse_counts: critical_basis.iter().map(Vec::len).collect(),
        critical_basis,
        complex,
        homology,
        flow,
    })
}

fn rank(m: &DenseMatrix) -> usize {
    smith_normal_form(m).rank
}

fn dense_from_columns(rows: usize, columns: &[Vec<BigInt>]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[(r, c)] = v.clone();
        }
    }
    m
}

/// Critical counts against unreduced Betti numbers of `K(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    /// `m_p`: critical elements of height `p`.
    pub m: Vec<usize>,
    /// `b_p`: unreduced Betti numbers of `K(X)`.
    pub b: Vec<usize>,
    /// Torsion coefficients per degree (not used in the verdicts).
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
    /// `m_p ≥ b_p` per degree.
    pub weak: Vec<bool>,
    /// `Σ_{i≤k} (-1)^{k-i} m_i ≥ Σ_{i≤k} (-1)^{k-i} b_i` per `k`.
    pub strong: Vec<bool>,
    pub euler_m: i64,
    pub euler_b: i64,
    pub weak_holds: bool,
    pub strong_holds: bool,
    pub euler_holds: bool,
    /// `m = b` in every degree.
    pub perfect: bool,
}

fn serialize_torsion<S: serde::Serializer>(
    t: &BTreeMap<i64, Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let map: serde_json::Map<String, Value> = t
        .iter()
        .map(|(k, v)| (k.to_string(), Value::Array(v.iter().map(int_json).collect())))
        .collect();
    serde::Serialize::serialize(&map, s)
}

/// Weak, strong and Euler–Poincaré comparisons for a Morse matching whose
/// pairs are all homologically admissible. Critical elements are counted by
/// height, so cellularity is not required.
pub fn morse_inequalities(poset: &Poset, matching: &Matching) -> Result<InequalityReport> {
    let report = morse_check(poset, matching);
    if !report.is_matching {
        return Err(Error::NotMorse(report.matching_errors.join("; ")));
    }
    if let Some(cycle) = &report.cycle_witness {
        return Err(Error::NotMorse(format!("cycle {}", cycle.join(" -> "))));
    }
    if let Some((w, x)) = report.inadmissible_edges.first() {
        return Err(Error::InadmissiblePair(w.clone(), x.clone()));
    }
    let h = poset_homology(poset, false);
    let top_m = report.critical_heights.values().copied().max();
    let top_b = h.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(&p, _)| p as usize).max();
    let len = top_m.max(top_b).map_or(0, |t| t + 1);
    let mut m = vec![0usize; len];
    for &hgt in report.critical_heights.values() {
        m[hgt] += 1;
    }
    let b: Vec<usize> = (0..len).map(|p| h.betti(p as i64)).collect();
    let torsion = h
        .groups
        .iter()
        .filter(|(_, g)| !g.torsion.is_empty())
        .map(|(&p, g)| (p, g.torsion.clone()))
        .collect();
    let weak: Vec<bool> = m.iter().zip(&b).map(|(mi, bi)| mi >= bi).collect();
    let alternating = |v: &[usize], k: usize| -> i64 {
        (0..=k).map(|i| if (k - i) % 2 == 0 { v[i] as i64 } else { -(v[i] as i64) }).sum()
    };
    let strong: Vec<bool> = (0..len).map(|k| alternating(&m, k) >= alternating(&b, k)).collect();
    let euler = |v: &[usize]| -> i64 {
        v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    };
    let (euler_m, euler_b) = (euler(&m), euler(&b));
    Ok(InequalityReport {
        weak_holds: weak.iter().all(|&w| w),
        strong_holds: strong.iter().all(|&s| s),
        euler_holds: euler_m == euler_b,
        perfect: m == b,
        m,
        b,
        torsion,
        weak,
        strong,
        euler_m,
        euler_b,
    })
}
